//! Exact coefficients: Gaussian rationals and polynomials over them in the
//! central parameter Λ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// `re + im·i` from small integer fractions.
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    /// `i^e` for any integer exponent.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => -GaussRat::one(),
            _ => -GaussRat::i(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Splits off the sign for printing: returns `(negative, magnitude)` when
    /// the number is real or purely imaginary, with the magnitude having a
    /// positive leading part.
    fn signed_parts(&self) -> (bool, GaussRat) {
        if self.im.is_zero() {
            (self.re.is_negative(), GaussRat::new(self.re.abs(), BigRational::zero()))
        } else if self.re.is_zero() {
            (self.im.is_negative(), GaussRat::new(BigRational::zero(), self.im.abs()))
        } else {
            (false, self.clone())
        }
    }

    /// Formats `self * rest` as a term with a separated sign. `rest` is a
    /// product of factors already rendered (possibly empty).
    pub(crate) fn fmt_term(&self, rest: &str) -> (bool, String) {
        let (neg, mag) = self.signed_parts();
        let body = if mag.is_one() && !rest.is_empty() {
            rest.to_string()
        } else {
            let c = mag.fmt_magnitude();
            if rest.is_empty() {
                c
            } else {
                format!("{c}*{rest}")
            }
        };
        (neg, body)
    }

    fn fmt_magnitude(&self) -> String {
        if self.im.is_zero() {
            fmt_rat(&self.re)
        } else if self.re.is_zero() {
            if self.im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rat(&self.im))
            }
        } else {
            let (op, im) = if self.im.is_negative() {
                ("-", self.im.abs())
            } else {
                ("+", self.im.clone())
            };
            let im_s = if im.is_one() { "i".to_string() } else { format!("{}*i", fmt_rat(&im)) };
            format!("({} {} {})", fmt_rat(&self.re), op, im_s)
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_int(1)
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::from_int(v)
    }
}

impl From<BigRational> for GaussRat {
    fn from(v: BigRational) -> Self {
        GaussRat::new(v, BigRational::zero())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::new(&self.re * &o.re, BigRational::zero());
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        &self - &o
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: &GaussRat) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = self.fmt_term("");
        if neg {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type RatPair = [[String; 2]; 2];

fn rat_to_pair(r: &BigRational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn pair_to_rat(p: &[String; 2]) -> Result<BigRational, String> {
    let n: BigInt = p[0].parse().map_err(|e| format!("bad numerator {:?}: {e}", p[0]))?;
    let d: BigInt = p[1].parse().map_err(|e| format!("bad denominator {:?}: {e}", p[1]))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pair: RatPair = [rat_to_pair(&self.re), rat_to_pair(&self.im)];
        pair.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pair = RatPair::deserialize(d)?;
        let re = pair_to_rat(&pair[0]).map_err(serde::de::Error::custom)?;
        let im = pair_to_rat(&pair[1]).map_err(serde::de::Error::custom)?;
        Ok(GaussRat::new(re, im))
    }
}

/// Polynomial in Λ with Gaussian-rational coefficients, kept in canonical
/// sparse form (no zero coefficient is ever stored).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coeffs: BTreeMap<u32, GaussRat>,
}

impl Scalar {
    pub fn constant(c: GaussRat) -> Self {
        Scalar::monomial(c, 0)
    }

    /// `c·Λ^power`.
    pub fn monomial(c: GaussRat, power: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        Scalar { coeffs }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::constant(GaussRat::from_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::constant(GaussRat::ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::constant(GaussRat::i())
    }

    /// The formal parameter Λ.
    pub fn lambda() -> Self {
        Scalar::monomial(GaussRat::one(), 1)
    }

    pub fn coeff(&self, power: u32) -> GaussRat {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRat)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The value when no Λ occurs.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.coeffs.len() {
            0 => Some(GaussRat::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Substitutes Λ ← value.
    pub fn eval(&self, value: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (p, c) in &self.coeffs {
            acc += &(c * &value.pow(*p));
        }
        acc
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { coeffs: self.coeffs.iter().map(|(p, v)| (*p, v * c)).collect() }
    }

    /// Multiplies by Λ^shift.
    pub fn shift(&self, shift: u32) -> Scalar {
        Scalar { coeffs: self.coeffs.iter().map(|(p, v)| (p + shift, v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn add_term(&mut self, power: u32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    /// Renders `self * rest` as a signed term.
    pub(crate) fn fmt_term(&self, rest: &str) -> (bool, String) {
        if self.coeffs.len() == 1 {
            let (&p, c) = self.coeffs.iter().next().unwrap();
            let lam = lambda_factor(p);
            let joined = join_factors(&[lam.as_str(), rest]);
            return c.fmt_term(&joined);
        }
        let inner = self.to_string();
        if rest.is_empty() {
            (false, format!("({inner})"))
        } else {
            (false, format!("({inner})*{rest}"))
        }
    }
}

fn lambda_factor(p: u32) -> String {
    match p {
        0 => String::new(),
        1 => "L".to_string(),
        _ => format!("L^{p}"),
    }
}

pub(crate) fn join_factors(parts: &[&str]) -> String {
    parts.iter().filter(|s| !s.is_empty()).copied().collect::<Vec<_>>().join("*")
}

/// Joins signed terms into `a + b - c` form; empty input renders as `0`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (p, a) in &self.coeffs {
            for (q, b) in &o.coeffs {
                out.add_term(p + q, &(a * b));
            }
        }
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { coeffs: self.coeffs.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (p, c) in &o.coeffs {
            self.add_term(*p, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (p, c) in &o.coeffs {
            self.add_term(*p, &-c);
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(p, c)| c.fmt_term(&lambda_factor(*p)));
        f.write_str(&join_terms(terms))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized densely: entry `r` is the coefficient of Λ^r.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dense: Vec<GaussRat> = match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|p| self.coeff(p)).collect(),
        };
        dense.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dense = Vec::<GaussRat>::deserialize(d)?;
        let mut out = Scalar::zero();
        for (p, c) in dense.iter().enumerate() {
            out.add_term(p as u32, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
        let mut s = Scalar::zero();
        for p in 0..rng.gen_range(0..3u32) {
            let c = GaussRat::complex(
                (rng.gen_range(-4..=4), rng.gen_range(1..=3)),
                (rng.gen_range(-2..=2), rng.gen_range(1..=2)),
            );
            s.add_term(p, &c);
        }
        s
    }

    #[test]
    fn ring_laws_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            let c = random_scalar(&mut rng);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &Scalar::one(), a);
            assert_eq!(&a + &Scalar::zero(), a);
            assert!((&a - &a).is_zero());
        }
    }

    #[test]
    fn no_zero_coefficient_is_stored() {
        let mut s = Scalar::lambda();
        s -= &Scalar::lambda();
        assert!(s.is_zero());
        assert_eq!(s.degree(), None);
        let t = Scalar::monomial(GaussRat::zero(), 3);
        assert!(t.is_zero());
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussRat::complex((1, 2), (-3, 4));
        assert_eq!(&z * &z.inv().unwrap(), GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
        assert_eq!(GaussRat::i_pow(-1), -GaussRat::i());
        assert_eq!(GaussRat::i_pow(6), -GaussRat::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::complex((1, 2), (1, 2)).to_string(), "(1/2 + 1/2*i)");
        assert_eq!((-GaussRat::i()).to_string(), "-i");
        let s = &Scalar::ratio(1, 4) - &Scalar::lambda();
        assert_eq!(s.to_string(), "1/4 - L");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let s = &Scalar::ratio(-3, 7) + &Scalar::monomial(GaussRat::complex((0, 1), (5, 2)), 2);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"[[["-3","7"],["0","1"]],[["0","1"],["0","1"]],[["0","1"],["5","2"]]]"#);
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
