//! Concrete faithful representations: spin (on Grassmann polynomials),
//! metaplectic (on polynomials) and spin-metaplectic (on their tensor
//! product), plus the Clifford operator-to-symbol map.
//!
//! Generators act by
//! ω_{2j−1} = Q_j + P_j, ω_{2j} = i(Q_j − P_j), Q_j = ξ_j ∧, P_j = ∂/∂ξ_j,
//! ω_{2ℓ+1} = ±(parity) in the odd case, and p_j = ε ∂/∂x_j, q_j = ε x_j,
//! where ε = (−1)^{Grassmann degree} makes Bose and Fermi generators
//! anticommute. General elements act through their word expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::Algebra;
use crate::clifford;
use crate::cw::{CwElement, Exponents, Signature};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{GaussRat, Scalar};
use crate::star::star;
use crate::words::{element_words, Gen};

/// A basis vector ξ^g ⊗ x^e of the spin-metaplectic carrier.
pub type GrassPolyKey = (u64, Exponents);

/// Finite combination of Grassmann–polynomial basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassPolyVector {
    pub ell: usize,
    pub k: usize,
    terms: BTreeMap<GrassPolyKey, Scalar>,
}

impl GrassPolyVector {
    pub fn zero(ell: usize, k: usize) -> Self {
        GrassPolyVector { ell, k, terms: BTreeMap::new() }
    }

    /// The basis vector ξ^grass x^poly.
    pub fn basis(ell: usize, grass: u64, poly: &[u32]) -> Self {
        let mut v = GrassPolyVector::zero(ell, poly.len());
        v.add_term((grass, SmallVec::from_slice(poly)), &Scalar::one());
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrassPolyKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &GrassPolyKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: GrassPolyKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &GrassPolyVector) -> GrassPolyVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GrassPolyVector {
        let mut out = GrassPolyVector::zero(self.ell, self.k);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Splits by parity of the total degree (Grassmann plus polynomial).
    pub fn parity_parts(&self) -> [GrassPolyVector; 2] {
        let mut parts = [GrassPolyVector::zero(self.ell, self.k), GrassPolyVector::zero(self.ell, self.k)];
        for ((g, e), c) in &self.terms {
            let d = (g.count_ones() + e.iter().sum::<u32>()) % 2;
            parts[d as usize].add_term((*g, e.clone()), c);
        }
        parts
    }

    fn map_terms(&self, f: impl Fn(u64, &Exponents) -> Option<(Scalar, u64, Exponents)>) -> GrassPolyVector {
        let mut out = GrassPolyVector::zero(self.ell, self.k);
        for ((g, e), c) in &self.terms {
            if let Some((s, g2, e2)) = f(*g, e) {
                out.add_term((g2, e2), &(c * &s));
            }
        }
        out
    }
}

impl fmt::Display for GrassPolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|((g, e), c)| {
            let mut parts: Vec<String> = clifford_bits(*g).map(|j| format!("xi{}", j + 1)).collect();
            for (j, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => parts.push(format!("x{}", j + 1)),
                    _ => parts.push(format!("x{}^{a}", j + 1)),
                }
            }
            c.fmt_term(&parts.join("*"))
        });
        f.write_str(&crate::scalar::join_terms(terms))
    }
}

fn clifford_bits(g: u64) -> impl Iterator<Item = usize> {
    crate::cw::bits(g)
}

/// Which representation to use. `ell` counts Grassmann variables, `k`
/// polynomial variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepDescriptor {
    /// C(2ℓ) on Λ(ξ₁…ξ_ℓ).
    Spin { ell: usize },
    /// C(2ℓ+1) with ω_{2ℓ+1} = +parity.
    SpinPlus { ell: usize },
    /// C(2ℓ+1) with ω_{2ℓ+1} = −parity.
    SpinMinus { ell: usize },
    /// C(0,2k) on C[x₁…x_k].
    Metaplectic { k: usize },
    /// C(2ℓ,2k).
    SpinMetaplectic { ell: usize, k: usize },
    /// C(2ℓ+1,2k), ω_{2ℓ+1} = +parity.
    SpinMetaplecticPlus { ell: usize, k: usize },
    /// C(2ℓ+1,2k), ω_{2ℓ+1} = −parity.
    SpinMetaplecticMinus { ell: usize, k: usize },
}

impl RepDescriptor {
    pub fn ell(&self) -> usize {
        match *self {
            RepDescriptor::Spin { ell }
            | RepDescriptor::SpinPlus { ell }
            | RepDescriptor::SpinMinus { ell }
            | RepDescriptor::SpinMetaplectic { ell, .. }
            | RepDescriptor::SpinMetaplecticPlus { ell, .. }
            | RepDescriptor::SpinMetaplecticMinus { ell, .. } => ell,
            RepDescriptor::Metaplectic { .. } => 0,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            RepDescriptor::Metaplectic { k }
            | RepDescriptor::SpinMetaplectic { k, .. }
            | RepDescriptor::SpinMetaplecticPlus { k, .. }
            | RepDescriptor::SpinMetaplecticMinus { k, .. } => k,
            _ => 0,
        }
    }

    /// +1 / −1 for the odd kinds, `None` for the even ones.
    pub fn odd_sign(&self) -> Option<i8> {
        match self {
            RepDescriptor::SpinPlus { .. } | RepDescriptor::SpinMetaplecticPlus { .. } => Some(1),
            RepDescriptor::SpinMinus { .. } | RepDescriptor::SpinMetaplecticMinus { .. } => Some(-1),
            _ => None,
        }
    }

    pub fn n_fermi(&self) -> usize {
        2 * self.ell() + usize::from(self.odd_sign().is_some())
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.n_fermi(), self.k())
    }

    pub fn is_finite(&self) -> bool {
        self.k() == 0
    }

    /// Dimension of the carrier when finite.
    pub fn dim(&self) -> Option<usize> {
        self.is_finite().then(|| 1 << self.ell())
    }

    fn check(&self, sig: &Signature) -> Result<()> {
        if sig.n_fermi != self.n_fermi() || sig.n_bose_pairs != self.k() {
            return Err(Error::SignatureMismatch { left: format!("{self}"), right: sig.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?} on {}", self.signature())
    }
}

fn parity_sign(g: u64) -> i8 {
    clifford::parity_sign(g.count_ones())
}

fn signed(s: i8) -> Scalar {
    Scalar::from_int(i64::from(s))
}

/// Action of one generator.
pub fn act_gen(rep: &RepDescriptor, g: Gen, v: &GrassPolyVector) -> GrassPolyVector {
    let ell = rep.ell();
    match g {
        Gen::W(i) if i <= 2 * ell => {
            let j = (i - 1) / 2; // bit index of ξ_{j+1}
            let q = v.map_terms(|g, e| {
                clifford::wedge(1 << j, g).map(|(s, g2)| (signed(s), g2, e.clone()))
            });
            let p = v.map_terms(|g, e| clifford::left_derivative(g, j).map(|(s, g2)| (signed(s), g2, e.clone())));
            if i % 2 == 1 {
                q.add(&p)
            } else {
                q.add(&p.scale(&-Scalar::one())).scale(&Scalar::i())
            }
        }
        Gen::W(_) => {
            let s = rep.odd_sign().unwrap_or(1);
            // total parity: Grassmann degree plus polynomial degree
            v.map_terms(|g, e| {
                let d: u32 = g.count_ones() + e.iter().sum::<u32>();
                Some((signed(s * clifford::parity_sign(d)), g, e.clone()))
            })
        }
        Gen::P(j) => v.map_terms(|g, e| {
            let a = e[j - 1];
            (a > 0).then(|| {
                let mut e2 = e.clone();
                e2[j - 1] -= 1;
                (Scalar::from_int(i64::from(a) * i64::from(parity_sign(g))), g, e2)
            })
        }),
        Gen::Q(j) => v.map_terms(|g, e| {
            let mut e2 = e.clone();
            e2[j - 1] += 1;
            Some((signed(parity_sign(g)), g, e2))
        }),
    }
}

/// Action of an arbitrary element (t must be 1).
pub fn act(rep: &RepDescriptor, a: &CwElement, v: &GrassPolyVector) -> Result<GrassPolyVector> {
    rep.check(a.signature())?;
    if v.ell != rep.ell() || v.k != rep.k() {
        return Err(Error::InvalidParameter(format!("vector does not live in the carrier of {rep}")));
    }
    let mut out = GrassPolyVector::zero(rep.ell(), rep.k());
    for (c, word) in element_words(a)? {
        let mut w = v.clone();
        for g in word.iter().rev() {
            w = act_gen(rep, *g, &w);
            if w.is_zero() {
                break;
            }
        }
        out = out.add(&w.scale(&c));
    }
    Ok(out)
}

/// Exact matrix with [`Scalar`] entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let entries = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| f(r, c)).collect();
        ScalarMatrix { rows, cols, entries }
    }

    /// Matrix from rows of Gaussian rationals.
    pub fn from_gauss_rows(rows: &[Vec<GaussRat>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        ScalarMatrix::from_fn(n, m, |r, c| Scalar::constant(rows[r][c].clone()))
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != o.rows {
            return Err(Error::SizeMismatch { expected: self.cols, found: o.rows });
        }
        let mut out = ScalarMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * o.cols + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &ScalarMatrix) -> Result<ScalarMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::SizeMismatch { expected: self.rows * self.cols, found: o.rows * o.cols });
        }
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMatrix {
        ScalarMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Kronecker product; `self` indexes the outer blocks.
    pub fn kron(&self, o: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols) * o.get(r % o.rows, c % o.cols)
        })
    }

    pub fn commutator(&self, o: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
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

/// Square scalar matrices of one size, as an algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRing {
    pub size: usize,
}

impl Algebra for MatrixRing {
    type Elem = ScalarMatrix;

    fn zero(&self) -> ScalarMatrix {
        ScalarMatrix::zeros(self.size, self.size)
    }
    fn one(&self) -> ScalarMatrix {
        ScalarMatrix::identity(self.size)
    }
    fn add(&self, a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix::add(a, b).expect("matrices of one size")
    }
    fn neg(&self, a: &ScalarMatrix) -> ScalarMatrix {
        a.scale(&-Scalar::one())
    }
    fn mul(&self, a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix::mul(a, b).expect("matrices of one size")
    }
    fn scale(&self, c: &Scalar, a: &ScalarMatrix) -> ScalarMatrix {
        a.scale(c)
    }
    fn is_zero(&self, a: &ScalarMatrix) -> bool {
        ScalarMatrix::is_zero(a)
    }
}

/// Position of ξ^g in the lexicographic basis (ξ₁ is the most significant
/// bit, so for ℓ = 2 the order is 1, ξ₂, ξ₁, ξ₁ξ₂).
pub fn basis_index(ell: usize, g: u64) -> usize {
    (0..ell).filter(|j| g >> j & 1 == 1).map(|j| 1 << (ell - 1 - j)).sum()
}

pub fn basis_bits(ell: usize, idx: usize) -> u64 {
    (0..ell).filter(|j| idx >> (ell - 1 - j) & 1 == 1).map(|j| 1u64 << j).sum()
}

/// The matrix of `act(a, ·)` in the lexicographic basis, column action.
pub fn rep_matrix(rep: &RepDescriptor, a: &CwElement) -> Result<ScalarMatrix> {
    if !rep.is_finite() {
        return Err(Error::InfiniteCarrier(rep.to_string()));
    }
    let ell = rep.ell();
    let dim = 1usize << ell;
    let mut m = ScalarMatrix::zeros(dim, dim);
    for col in 0..dim {
        let v = GrassPolyVector::basis(ell, basis_bits(ell, col), &[]);
        let image = act(rep, a, &v)?;
        for ((g, _), c) in image.terms() {
            m.set(basis_index(ell, *g), col, c.clone());
        }
    }
    Ok(m)
}

/// Applies a 2ⁿ×2ⁿ matrix to the Grassmann basis vector ξ^g.
fn apply_to_basis(t: &ScalarMatrix, n: usize, g: u64) -> BTreeMap<u64, Scalar> {
    let col = basis_index(n, g);
    (0..t.rows)
        .filter(|r| !t.get(*r, col).is_zero())
        .map(|r| (basis_bits(n, r), t.get(r, col).clone()))
        .collect()
}

/// The Clifford element of C(2n) whose spin action is `t`.
///
/// Every operator on Λ(ξ₁…ξ_n) is a differential operator
/// T = Σ_I (−1)^{θ(I,I)} L(g_I) ∘ ∂^I with
/// g_I = Σ_{J⊆I} ε(J) T(ξ^J) ∧ S(ξ^{I∖J}), where ξ^I = ε(J) ξ^J ∧ ξ^{I∖J},
/// S(ξ^K) = (−1)^{|K|} ξ^K is the antipode, θ(I,I) = |I|(|I|−1)/2 counts
/// pairs r > s in I, L is left multiplication and ∂^I = ∂_{i₁}∘⋯∘∂_{i_p}.
/// Q_j = ξ_j∧ and P_j = ∂_j are then rewritten through
/// Q_j = (ω_{2j−1} − iω_{2j})/2 and P_j = (ω_{2j−1} + iω_{2j})/2.
pub fn clifford_op_to_symbol(n: usize, t: &ScalarMatrix) -> Result<CwElement> {
    let dim = 1usize << n;
    if t.rows != dim || t.cols != dim {
        return Err(Error::SizeMismatch { expected: dim, found: t.rows.max(t.cols) });
    }
    let sig = Signature::new(2 * n, 0);
    let half = Scalar::ratio(1, 2);
    let mut q_ops = Vec::with_capacity(n);
    let mut p_ops = Vec::with_capacity(n);
    for j in 1..=n {
        let odd = CwElement::omega(&sig, 2 * j - 1)?;
        let even = CwElement::omega(&sig, 2 * j)?.scale(&Scalar::i());
        q_ops.push(odd.sub(&even)?.scale(&half));
        p_ops.push(odd.add(&even)?.scale(&half));
    }
    let ordered_product = |ops: &[CwElement], set: u64| -> Result<CwElement> {
        let mut acc = CwElement::one(&sig);
        for j in crate::cw::bits(set) {
            acc = star(&acc, &ops[j])?;
        }
        Ok(acc)
    };
    let mut out = CwElement::zero(&sig);
    for big_i in 0..(1u64 << n) {
        let mut g: BTreeMap<u64, Scalar> = BTreeMap::new();
        // subsets J of I
        let mut j_set = big_i;
        loop {
            let rest = big_i & !j_set;
            let (eps, _) = clifford::wedge(j_set, rest).expect("disjoint");
            let antipode = clifford::parity_sign(rest.count_ones());
            for (m, c) in apply_to_basis(t, n, j_set) {
                if let Some((s, prod)) = clifford::wedge(m, rest) {
                    let coeff = c.scale(&GaussRat::from_int(i64::from(eps * antipode * s)));
                    let slot = g.entry(prod).or_default();
                    *slot += &coeff;
                }
            }
            if j_set == 0 {
                break;
            }
            j_set = (j_set - 1) & big_i;
        }
        let theta = clifford::reversal_sign(big_i.count_ones());
        let derivative = ordered_product(&p_ops, big_i)?;
        for (m, c) in g {
            if c.is_zero() {
                continue;
            }
            let term = star(&ordered_product(&q_ops, m)?, &derivative)?;
            out = out.add(&term.scale(&c.scale(&GaussRat::from_int(i64::from(theta)))))?;
        }
    }
    Ok(out)
}

/// Checks that ω₁⋯ω_{2n+1} acts as +iⁿ on Φ⁺ and −iⁿ on Φ⁻.
pub fn spin_rep_odd_sign_check(n: usize) -> Result<Report> {
    let mut report = Report::new("spin-odd-sign");
    let sig = Signature::new(2 * n + 1, 0);
    let z = crate::star::omega_product(&sig, 1..=2 * n + 1)?;
    for (rep, sign) in [(RepDescriptor::SpinPlus { ell: n }, 1), (RepDescriptor::SpinMinus { ell: n }, -1)] {
        let lhs = rep_matrix(&rep, &z)?;
        let value = Scalar::constant(GaussRat::i_pow(n as i64)).scale(&GaussRat::from_int(sign));
        let rhs = ScalarMatrix::identity(1 << n).scale(&value);
        report.check_eq(format!("{rep:?}"), &lhs, &rhs);
    }
    Ok(report)
}

/// The parity operator on Λ(ξ₁…ξ_n) as a matrix.
pub fn parity_matrix(n: usize) -> ScalarMatrix {
    ScalarMatrix::from_fn(1 << n, 1 << n, |r, c| {
        if r == c {
            signed(parity_sign(basis_bits(n, r)))
        } else {
            Scalar::zero()
        }
    })
}

/// Checks ω₁ ⋆ ⋯ ⋆ ω_{2n} = iⁿ P as matrices on the spin module.
pub fn spin_lemma_check(n: usize) -> Result<Report> {
    let mut report = Report::new("spin-lemma");
    let sig = Signature::new(2 * n, 0);
    let v = crate::star::omega_product(&sig, 1..=2 * n)?;
    let lhs = rep_matrix(&RepDescriptor::Spin { ell: n }, &v)?;
    let rhs = parity_matrix(n).scale(&Scalar::constant(GaussRat::i_pow(n as i64)));
    report.check_eq(format!("n={n}"), &lhs, &rhs);
    Ok(report)
}
