//! Tensor products with a Clifford factor, the periodicity isomorphism
//! C(2m+n,2k) ≅ C(2m) ⊗ C(n,2k), the splitting of odd Clifford algebras and
//! matrix realizations M_r(A).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::{Algebra, CwAlgebra, Module, SuperAlgebra};
use crate::clifford;
use crate::cw::{CwElement, CwMonomial, Signature};
use crate::error::{Error, Result};
use crate::reps::{rep_matrix, RepDescriptor, ScalarMatrix};
use crate::scalar::{GaussRat, Scalar};
use crate::star::star;
use crate::words::{eval_hom, Gen};

/// How the two factors of a tensor product interact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorMode {
    /// (a⊗b)(a′⊗b′) = (aa′)⊗(bb′).
    Plain,
    /// (a⊗b)(a′⊗b′) = (−1)^{|b||a′|}(aa′)⊗(bb′), gradings by Z-degree mod 2.
    Graded,
}

/// C(left_n) ⊗ B. The periodicity isomorphisms use the plain product: their
/// generator images already carry the factor z that makes Bose and Fermi
/// generators anticommute across the factors.
#[derive(Clone, Debug)]
pub struct CliffordTensor<B: SuperAlgebra> {
    pub left_n: usize,
    pub right: B,
    pub mode: TensorMode,
}

/// Σ ω^K ⊗ e_K, keyed by the left Clifford monomial.
#[derive(Clone, PartialEq)]
pub struct TensorElement<E> {
    terms: BTreeMap<u64, E>,
}

impl<E> TensorElement<E> {
    pub fn terms(&self) -> impl Iterator<Item = (u64, &E)> {
        self.terms.iter().map(|(k, e)| (*k, e))
    }
}

impl<E: fmt::Display> fmt::Display for TensorElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let left = CwMonomial::new(*k, &[], &[]);
            write!(f, "{left} (x) ({e})")?;
        }
        Ok(())
    }
}

impl<E: fmt::Display> fmt::Debug for TensorElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: SuperAlgebra> CliffordTensor<B> {
    pub fn new(left_n: usize, right: B, mode: TensorMode) -> Self {
        CliffordTensor { left_n, right, mode }
    }

    /// ω^left ⊗ right.
    pub fn pure(&self, left: u64, right: B::Elem) -> TensorElement<B::Elem> {
        let mut t = TensorElement { terms: BTreeMap::new() };
        self.add_into(&mut t, left, &right);
        t
    }

    pub fn left_gen(&self, i: usize) -> TensorElement<B::Elem> {
        self.pure(1 << (i - 1), self.right.one())
    }

    pub fn right_elem(&self, e: B::Elem) -> TensorElement<B::Elem> {
        self.pure(0, e)
    }

    fn add_into(&self, t: &mut TensorElement<B::Elem>, left: u64, e: &B::Elem) {
        if self.right.is_zero(e) {
            return;
        }
        let sum = match t.terms.get(&left) {
            Some(x) => self.right.add(x, e),
            None => e.clone(),
        };
        if self.right.is_zero(&sum) {
            t.terms.remove(&left);
        } else {
            t.terms.insert(left, sum);
        }
    }
}

impl<B: SuperAlgebra> Algebra for CliffordTensor<B> {
    type Elem = TensorElement<B::Elem>;

    fn zero(&self) -> Self::Elem {
        TensorElement { terms: BTreeMap::new() }
    }
    fn one(&self) -> Self::Elem {
        self.pure(0, self.right.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (k, e) in &b.terms {
            self.add_into(&mut out, *k, e);
        }
        out
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TensorElement { terms: a.terms.iter().map(|(k, e)| (*k, self.right.neg(e))).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (ka, ea) in &a.terms {
            let parts = match self.mode {
                TensorMode::Plain => None,
                TensorMode::Graded => Some(self.right.parity_parts(ea)),
            };
            for (kb, eb) in &b.terms {
                let (sign, k) = clifford::product(*ka, *kb);
                let left_odd = kb.count_ones() % 2 == 1;
                let lhs = match (&parts, left_odd) {
                    (Some([even, odd]), true) => self.right.sub(even, odd),
                    _ => ea.clone(),
                };
                let prod = self.right.mul(&lhs, eb);
                let prod = if sign < 0 { self.right.neg(&prod) } else { prod };
                self.add_into(&mut out, k, &prod);
            }
        }
        out
    }
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (k, e) in &a.terms {
            self.add_into(&mut out, *k, &self.right.scale(c, e));
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
}

/// The product in a tensor algebra (plain or graded according to `alg`).
pub fn tensor_star<B: SuperAlgebra>(
    alg: &CliffordTensor<B>,
    x: &TensorElement<B::Elem>,
    y: &TensorElement<B::Elem>,
) -> TensorElement<B::Elem> {
    alg.mul(x, y)
}

fn check_sig(x: &CwElement, n_fermi: usize, k: usize) -> Result<()> {
    let s = x.signature();
    if s.n_fermi != n_fermi || s.n_bose_pairs != k {
        return Err(Error::SignatureMismatch {
            left: s.to_string(),
            right: Signature::new(n_fermi, k).to_string(),
        });
    }
    Ok(())
}

/// z = i^m ω₁⋯ω_{2m} as a coefficient and a left monomial.
fn z_factor(m: usize) -> (Scalar, u64) {
    (Scalar::constant(GaussRat::i_pow(m as i64)), clifford::full(2 * m))
}

/// The algebra C(2m) ⊗ C(n,2k) used by the first periodicity lemma.
pub fn periodicity1_target(m: usize, n: usize, k: usize) -> CliffordTensor<CwAlgebra> {
    CliffordTensor::new(2 * m, CwAlgebra::new(Signature::new(n, k)), TensorMode::Plain)
}

/// C(2m+n,2k) → C(2m) ⊗ C(n,2k): ω_j ↦ ω_j⊗1 (j ≤ 2m), ω_{2m+j} ↦ z⊗ω′_j,
/// p_j ↦ z⊗p_j, q_j ↦ z⊗q_j, with z = i^m ω₁⋯ω_{2m}.
pub fn periodicity1_forward(m: usize, n: usize, k: usize, x: &CwElement) -> Result<TensorElement<CwElement>> {
    check_sig(x, 2 * m + n, k)?;
    let target = periodicity1_target(m, n, k);
    let small = target.right.sig.clone();
    let (zc, zm) = z_factor(m);
    let image = |g: Gen| -> TensorElement<CwElement> {
        let twisted = |e: CwElement| target.pure(zm, e.scale(&zc));
        match g {
            Gen::W(j) if j <= 2 * m => target.left_gen(j),
            Gen::W(j) => twisted(CwElement::omega(&small, j - 2 * m).expect("generator in range")),
            Gen::P(j) => twisted(CwElement::p(&small, j).expect("generator in range")),
            Gen::Q(j) => twisted(CwElement::q(&small, j).expect("generator in range")),
        }
    };
    eval_hom(x, &target, image)
}

/// The inverse: ω_j⊗1 ↦ ω̃_j, 1⊗ω′_j ↦ z̃ ⋆ ω̃_{2m+j}, 1⊗p_j ↦ z̃ ⋆ p̃_j,
/// 1⊗q_j ↦ z̃ ⋆ q̃_j, with z̃ = i^m ω̃₁⋯ω̃_{2m}.
pub fn periodicity1_inverse(m: usize, n: usize, k: usize, y: &TensorElement<CwElement>) -> Result<CwElement> {
    let big = Signature::new(2 * m + n, k);
    let big_alg = CwAlgebra::new(big.clone());
    let (zc, zm) = z_factor(m);
    let z = CwElement::monomial(&big, CwMonomial { cliff: zm, ..CwMonomial::unit(k) }, zc);
    let image = |g: Gen| -> CwElement {
        let e = match g {
            Gen::W(j) => CwElement::omega(&big, 2 * m + j),
            Gen::P(j) => CwElement::p(&big, j),
            Gen::Q(j) => CwElement::q(&big, j),
        }
        .expect("generator in range");
        star(&z, &e).expect("same signature")
    };
    let mut out = CwElement::zero(&big);
    for (left, e) in y.terms() {
        check_sig(e, n, k)?;
        let psi = eval_hom(e, &big_alg, &image)?;
        let l = CwElement::monomial(&big, CwMonomial { cliff: left, ..CwMonomial::unit(k) }, Scalar::one());
        out = out.add(&star(&l, &psi)?)?;
    }
    Ok(out)
}

/// Square matrix with entries in an algebra.
#[derive(Clone, PartialEq)]
pub struct AlgebraMatrix<E> {
    pub size: usize,
    pub entries: Vec<E>,
}

impl<E> AlgebraMatrix<E> {
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.size + c]
    }
}

impl<E: fmt::Display> fmt::Display for AlgebraMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.size {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.size {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<E: fmt::Display> fmt::Debug for AlgebraMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// M_size(A), the entry algebra carried along as its tag.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra<A: Algebra> {
    pub size: usize,
    pub base: A,
}

impl<A: Algebra> MatrixAlgebra<A> {
    pub fn new(size: usize, base: A) -> Self {
        MatrixAlgebra { size, base }
    }

    pub fn from_fn(&self, f: impl Fn(usize, usize) -> A::Elem) -> AlgebraMatrix<A::Elem> {
        let n = self.size;
        AlgebraMatrix { size: n, entries: (0..n * n).map(|i| f(i / n, i % n)).collect() }
    }

    /// The elementary matrix a·E_{rc}.
    pub fn elementary(&self, r: usize, c: usize, a: A::Elem) -> AlgebraMatrix<A::Elem> {
        self.from_fn(|i, j| if (i, j) == (r, c) { a.clone() } else { self.base.zero() })
    }

    /// Embeds a scalar matrix.
    pub fn from_scalar_matrix(&self, m: &ScalarMatrix) -> AlgebraMatrix<A::Elem> {
        self.from_fn(|r, c| self.base.scale(m.get(r, c), &self.base.one()))
    }

    /// Σ m ⊗ a for scalar matrix m and entry a: entrywise m_rc · a.
    pub fn scalar_times(&self, m: &ScalarMatrix, a: &A::Elem) -> AlgebraMatrix<A::Elem> {
        self.from_fn(|r, c| self.base.scale(m.get(r, c), a))
    }
}

impl<A: Algebra> Algebra for MatrixAlgebra<A> {
    type Elem = AlgebraMatrix<A::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_fn(|_, _| self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.from_fn(|r, c| if r == c { self.base.one() } else { self.base.zero() })
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_fn(|r, c| self.base.add(a.get(r, c), b.get(r, c)))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.from_fn(|r, c| self.base.neg(a.get(r, c)))
    }
    /// (aM)⋆(a′M′) = (a⋆a′)MM′: the matrix product with entrywise star.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_fn(|r, c| {
            let mut acc = self.base.zero();
            for k in 0..self.size {
                let (x, y) = (a.get(r, k), b.get(k, c));
                if self.base.is_zero(x) || self.base.is_zero(y) {
                    continue;
                }
                acc = self.base.add(&acc, &self.base.mul(x, y));
            }
            acc
        })
    }
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem {
        self.from_fn(|r, col| self.base.scale(c, a.get(r, col)))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.entries.iter().all(|e| self.base.is_zero(e))
    }
}

/// Product in M_r(A), checking sizes.
pub fn matrix_star<A: Algebra>(
    alg: &MatrixAlgebra<A>,
    a: &AlgebraMatrix<A::Elem>,
    b: &AlgebraMatrix<A::Elem>,
) -> Result<AlgebraMatrix<A::Elem>> {
    for m in [a, b] {
        if m.size != alg.size || m.entries.len() != alg.size * alg.size {
            return Err(Error::SizeMismatch { expected: alg.size, found: m.size });
        }
    }
    Ok(alg.mul(a, b))
}

/// An A-module V turned into the M_r(A)-module V^r: (M·v)_i = Σ_j M_ij·v_j.
#[derive(Clone, Debug)]
pub struct TransportedModule<M> {
    pub inner: M,
    pub r: usize,
}

pub fn module_transport<M>(inner: M, r: usize) -> TransportedModule<M> {
    TransportedModule { inner, r }
}

impl<A: Algebra, M: Module<A>> Module<MatrixAlgebra<A>> for TransportedModule<M> {
    type Vector = Vec<M::Vector>;

    fn act(&self, a: &AlgebraMatrix<A::Elem>, v: &Self::Vector) -> Self::Vector {
        (0..self.r)
            .map(|i| {
                (0..self.r).fold(self.inner.zero(), |acc, j| self.inner.add(&acc, &self.inner.act(a.get(i, j), &v[j])))
            })
            .collect()
    }
    fn add(&self, u: &Self::Vector, v: &Self::Vector) -> Self::Vector {
        u.iter().zip(v).map(|(x, y)| self.inner.add(x, y)).collect()
    }
    fn zero(&self) -> Self::Vector {
        vec![self.inner.zero(); self.r]
    }
}

/// Realizes C(2m) ⊗ B as M_{2^m}(B) through the spin representation of the
/// left factor.
pub fn tensor_to_matrix<B: SuperAlgebra>(
    alg: &CliffordTensor<B>,
    x: &TensorElement<B::Elem>,
) -> Result<AlgebraMatrix<B::Elem>> {
    if alg.left_n % 2 == 1 {
        return Err(Error::InvalidParameter("matrix realization needs an even Clifford factor".into()));
    }
    let ell = alg.left_n / 2;
    let rep = RepDescriptor::Spin { ell };
    let left_sig = rep.signature();
    let mats = MatrixAlgebra::new(1 << ell, alg.right.clone());
    let mut out = mats.zero();
    for (k, e) in x.terms() {
        let spin = rep_matrix(&rep, &CwElement::monomial(&left_sig, CwMonomial::new(k, &[], &[]), Scalar::one()))?;
        out = mats.add(&out, &mats.scalar_times(&spin, e));
    }
    Ok(out)
}

/// C(2m+n,2k) → M_{2^m}(C(n,2k)) in one periodicity step.
pub fn reduce_to_matrix(m: usize, n: usize, k: usize, x: &CwElement) -> Result<AlgebraMatrix<CwElement>> {
    let t = periodicity1_forward(m, n, k, x)?;
    tensor_to_matrix(&periodicity1_target(m, n, k), &t)
}

/// C(2n,2k) ≅ M_{2ⁿ}(W_{2k}).
pub fn cw_to_matrix(n: usize, k: usize, x: &CwElement) -> Result<AlgebraMatrix<CwElement>> {
    reduce_to_matrix(n, 0, k, x)
}

/// C(2m+n,2k) → M_{2^m}(C(n,2k)) by m single steps (m = 1 each),
/// flattening M_2(M_r(A)) to M_{2r}(A) after every step.
pub fn reduce_iterated(m: usize, n: usize, k: usize, x: &CwElement) -> Result<AlgebraMatrix<CwElement>> {
    let mut current = AlgebraMatrix { size: 1, entries: vec![x.clone()] };
    for step in 0..m {
        let rest = 2 * (m - step - 1) + n;
        let blocks: Vec<AlgebraMatrix<CwElement>> =
            current.entries.iter().map(|e| reduce_to_matrix(1, rest, k, e)).collect::<Result<_>>()?;
        let outer = current.size;
        let size = 2 * outer;
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                let block = &blocks[(r / 2) * outer + c / 2];
                entries.push(block.get(r % 2, c % 2).clone());
            }
        }
        current = AlgebraMatrix { size, entries };
    }
    Ok(current)
}

/// C(2n+1) ≅ C(2n) × C(2n): writes x = u + v⋆z with u, v ∈ C(2n) and
/// z = ω₁⋯ω_{2n+1} central, and returns the components u ± i^{−n}v in the
/// ideals z± ⋆ C(2n+1), z± = ½(1 ± iⁿz).
pub fn odd_split(n: usize, x: &CwElement) -> Result<(CwElement, CwElement)> {
    check_sig(x, 2 * n + 1, 0)?;
    let small = Signature::new(2 * n, 0);
    let last = 1u64 << (2 * n);
    let mut u = CwElement::zero(&small);
    let mut v = CwElement::zero(&small);
    // ω^J ω_{2n+1} = (−1)ⁿ ω^J ⋆ w ⋆ z with w = ω₁⋯ω_{2n}, since w² = (−1)ⁿ.
    let w = CwElement::monomial(&small, CwMonomial::new(clifford::full(2 * n), &[], &[]), Scalar::one());
    let sign_n = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    for (m, c) in x.terms() {
        let j = CwElement::monomial(&small, CwMonomial::new(m.cliff & !last, &[], &[]), c.clone());
        if m.cliff & last == 0 {
            u = u.add(&j)?;
        } else {
            v = v.add(&star(&j, &w)?.scale(&sign_n))?;
        }
    }
    let v = v.scale(&Scalar::constant(GaussRat::i_pow(-(n as i64))));
    Ok((u.add(&v)?, u.sub(&v)?))
}
