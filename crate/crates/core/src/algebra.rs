//! Minimal interface shared by the concrete algebras so that matrix
//! algebras, cochains and probes can be written once.

use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::cw::{CwElement, Signature};
use crate::scalar::Scalar;
use crate::star;

/// An associative unital algebra over the Λ-polynomial scalars. Elements
/// passed to the methods must belong to the algebra.
pub trait Algebra: Clone + Debug {
    type Elem: Clone + PartialEq + Debug + Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// C(n,2k) with the star product.
#[derive(Clone, Debug, PartialEq)]
pub struct CwAlgebra {
    pub sig: Signature,
}

impl CwAlgebra {
    pub fn new(sig: Signature) -> Self {
        CwAlgebra { sig }
    }
}

impl Algebra for CwAlgebra {
    type Elem = CwElement;

    fn zero(&self) -> CwElement {
        CwElement::zero(&self.sig)
    }
    fn one(&self) -> CwElement {
        CwElement::one(&self.sig)
    }
    fn add(&self, a: &CwElement, b: &CwElement) -> CwElement {
        a.add(b).expect("elements of one algebra")
    }
    fn neg(&self, a: &CwElement) -> CwElement {
        a.neg()
    }
    fn mul(&self, a: &CwElement, b: &CwElement) -> CwElement {
        star::star(a, b).expect("elements of one algebra")
    }
    fn scale(&self, c: &Scalar, a: &CwElement) -> CwElement {
        a.scale(c)
    }
    fn is_zero(&self, a: &CwElement) -> bool {
        a.is_zero()
    }
}

/// The scalars themselves, as a commutative algebra.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScalarRing;

impl Algebra for ScalarRing {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn scale(&self, c: &Scalar, a: &Scalar) -> Scalar {
        c * a
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
}

/// A left module over an algebra.
pub trait Module<A: Algebra> {
    type Vector: Clone + PartialEq + Debug;

    fn act(&self, a: &A::Elem, v: &Self::Vector) -> Self::Vector;
    fn add(&self, u: &Self::Vector, v: &Self::Vector) -> Self::Vector;
    fn zero(&self) -> Self::Vector;
}

/// An algebra with a Z₂-grading, used for Koszul signs in graded tensor
/// products.
pub trait SuperAlgebra: Algebra {
    /// Splits an element into its even and odd parts.
    fn parity_parts(&self, a: &Self::Elem) -> [Self::Elem; 2];
}

impl SuperAlgebra for CwAlgebra {
    /// Graded by total Z-degree mod 2.
    fn parity_parts(&self, a: &CwElement) -> [CwElement; 2] {
        let mut parts = a.split_by(|m| m.z_degree() % 2);
        let odd = parts.remove(&1).unwrap_or_else(|| self.zero());
        let even = parts.remove(&0).unwrap_or_else(|| self.zero());
        [even, odd]
    }
}
