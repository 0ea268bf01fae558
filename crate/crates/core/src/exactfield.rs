//! Exact arithmetic in the cyclotomic field Q(z), z a primitive 12th root of
//! unity, stored in the power basis 1, z, z^2, z^3 modulo z^4 - z^2 + 1.
//!
//! The fixed complex embedding sends z to exp(2 pi i / 12). The cube and sixth
//! roots used throughout the crate are z^4 and z^2 respectively.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Reduction of z^k (k in 0..12) in the power basis.
const POWER_TABLE: [[i8; 4]; 12] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 1, 0],
    [0, -1, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, 0, -1, 0],
    [0, 1, 0, -1],
];

/// The Galois group of Q(z)/Q acts by z -> z^k for these k.
pub const GALOIS_EXPONENTS: [u32; 4] = [1, 5, 7, 11];

/// Subfields of Q(z) that appear in the notation of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subfield {
    Q,
    Zeta3,
    Zeta6,
    Zeta12,
}

impl Subfield {
    /// Order of the root of unity generating the subfield.
    pub fn order(self) -> u32 {
        match self {
            Subfield::Q => 1,
            Subfield::Zeta3 => 3,
            Subfield::Zeta6 => 6,
            Subfield::Zeta12 => 12,
        }
    }

    /// Exponent e with zeta_n = z^e.
    fn generator_exponent(self) -> u32 {
        12 / self.order()
    }
}

/// Element of Q(z), z = zeta_12.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    c: [Rational; 4],
}

impl CycElem {
    pub fn from_coeffs(c: [Rational; 4]) -> Self {
        CycElem { c }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycElem {
            c: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// z^k for any integer k.
    pub fn zeta12_pow(k: i64) -> Self {
        let row = POWER_TABLE[k.rem_euclid(12) as usize];
        CycElem {
            c: row.map(|x| Rational::from_integer(BigInt::from(x))),
        }
    }

    /// zeta_n^k for n dividing 12.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0 && 12 % n == 0, "root of unity of order {n} is not in Q(zeta_12)");
        Self::zeta12_pow(k * (12 / n as i64))
    }

    pub fn zeta3() -> Self {
        Self::zeta12_pow(4)
    }

    pub fn zeta6() -> Self {
        Self::zeta12_pow(2)
    }

    pub fn zeta12() -> Self {
        Self::zeta12_pow(1)
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    /// Image under the automorphism z -> z^k (k coprime to 12).
    pub fn galois(&self, k: u32) -> Self {
        assert!(GALOIS_EXPONENTS.contains(&(k % 12)), "z -> z^{k} is not an automorphism");
        let mut out: [Rational; 4] = Default::default();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let row = POWER_TABLE[(i as u32 * k % 12) as usize];
            for (o, r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += ci * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        CycElem { c: out }
    }

    /// Field norm to Q.
    pub fn norm(&self) -> Rational {
        let p = GALOIS_EXPONENTS
            .iter()
            .fold(CycElem::one(), |acc, &k| &acc * &self.galois(k));
        debug_assert!(p.is_rational());
        p.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // a^{-1} = (product of the other conjugates) / N(a)
        let cof = GALOIS_EXPONENTS[1..]
            .iter()
            .fold(CycElem::one(), |acc, &k| &acc * &self.galois(k));
        let n = (&cof * self).c[0].clone();
        Ok(cof.scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycElem {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the fixed embedding z -> exp(2 pi i / 12).
    pub fn embed(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zk = Complex64::new(1.0, 0.0);
        for ci in &self.c {
            if !ci.is_zero() {
                acc += zk * rational_to_f64(ci);
            }
            zk *= z;
        }
        acc
    }

    /// Image under z -> exp(2 pi i k / 12), i.e. the embedding twisted by a
    /// Galois automorphism.
    pub fn embed_conjugate(&self, k: u32) -> Complex64 {
        self.galois(k).embed()
    }

    /// Canonical inclusion of `value`, written in the subfield generated by
    /// zeta_n, into Q(z). `value` holds coordinates with respect to the powers
    /// 1, zeta_n, zeta_n^2, ... of the subfield generator.
    pub fn coerce(tag: Subfield, value: &[Rational]) -> Self {
        let e = tag.generator_exponent() as i64;
        value
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .fold(CycElem::zero(), |acc, (k, r)| {
                acc + Self::zeta12_pow(e * k as i64).scale(r)
            })
    }

    /// Smallest subfield containing the element.
    pub fn subfield(&self) -> Subfield {
        if self.is_rational() {
            Subfield::Q
        } else if self.galois(7) == *self {
            // fixed by z -> z^7 = -z: lies in Q(z^2) = Q(zeta_6) = Q(zeta_3)
            Subfield::Zeta6
        } else {
            Subfield::Zeta12
        }
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.c
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }

    pub(crate) fn to_integral(&self, mult: &BigInt) -> ZCyc {
        ZCyc {
            c: self.c.clone().map(|r| {
                let t = r * Rational::from_integer(mult.clone());
                debug_assert!(t.is_integer());
                t.to_integer()
            }),
        }
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // extreme magnitudes: fall back to a scaled quotient
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d;
        if shift > 1000 {
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            0.0
        }
    })
}

impl Zero for CycElem {
    fn zero() -> Self {
        CycElem { c: Default::default() }
    }
    fn is_zero(&self) -> bool {
        CycElem::is_zero(self)
    }
}

impl One for CycElem {
    fn one() -> Self {
        CycElem::from_int(1)
    }
}

impl Default for CycElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycElem {
    fn from(n: i64) -> Self {
        CycElem::from_int(n)
    }
}

impl From<Rational> for CycElem {
    fn from(r: Rational) -> Self {
        CycElem::from_rational(r)
    }
}

impl<'a> Add<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn add(self, o: &CycElem) -> CycElem {
        CycElem {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl Add for CycElem {
    type Output = CycElem;
    fn add(self, o: CycElem) -> CycElem {
        &self + &o
    }
}

impl AddAssign<&CycElem> for CycElem {
    fn add_assign(&mut self, o: &CycElem) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn sub(self, o: &CycElem) -> CycElem {
        CycElem {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl Sub for CycElem {
    type Output = CycElem;
    fn sub(self, o: CycElem) -> CycElem {
        &self - &o
    }
}

impl SubAssign<&CycElem> for CycElem {
    fn sub_assign(&mut self, o: &CycElem) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

impl<'a> Mul<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn mul(self, o: &CycElem) -> CycElem {
        if self.is_rational() {
            return o.scale(&self.c[0]);
        }
        if o.is_rational() {
            return self.scale(&o.c[0]);
        }
        let mut t: [Rational; 7] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    t[i + j] += a * b;
                }
            }
        }
        reduce_product(t)
    }
}

/// Folds a degree-6 product back into the power basis using z^4 = z^2 - 1,
/// z^5 = z^3 - z and z^6 = -1.
fn reduce_product(t: [Rational; 7]) -> CycElem {
    let [t0, t1, t2, t3, t4, t5, t6] = t;
    CycElem {
        c: [t0 - &t4 - t6, t1 - &t5, t2 + t4, t3 + t5],
    }
}

impl Mul for CycElem {
    type Output = CycElem;
    fn mul(self, o: CycElem) -> CycElem {
        &self * &o
    }
}

impl MulAssign<&CycElem> for CycElem {
    fn mul_assign(&mut self, o: &CycElem) {
        *self = &*self * o;
    }
}

impl Div for &CycElem {
    type Output = CycElem;
    /// Panics on division by zero; use [`CycElem::checked_div`] to get an error instead.
    fn div(self, o: &CycElem) -> CycElem {
        self.checked_div(o).expect("division by zero in Q(zeta_12)")
    }
}

impl Div for CycElem {
    type Output = CycElem;
    fn div(self, o: CycElem) -> CycElem {
        &self / &o
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycElem {
    /// Rationals print bare (`-3/2`); anything else prints as a parenthesised
    /// polynomial in `z`, e.g. `(5*z^2-5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(r));
        }
        let mut s = String::new();
        for k in (0..4).rev() {
            let r = &self.c[k];
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let a = r.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mag = fmt_rational(&a);
            match k {
                0 => s.push_str(&mag),
                _ => {
                    if !a.is_one() {
                        s.push_str(&mag);
                        s.push('*');
                    }
                    s.push('z');
                    if k > 1 {
                        s.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        write!(f, "({s})")
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CycElem {
    type Err = Error;
    /// Parses the coefficient syntax: integers, fractions `a/b`, `z` with `^`
    /// powers, sums, products and parentheses, e.g. `(5*z^2-5)`.
    fn from_str(s: &str) -> Result<Self> {
        let ring = crate::multipoly::Ring::new("coeff", &[], crate::multipoly::MonOrder::Grevlex);
        let p = crate::multipoly::parse::parse_poly(&ring, s)?;
        match p.terms().len() {
            0 => Ok(CycElem::zero()),
            1 => Ok(p.terms()[0].1.clone()),
            _ => unreachable!("zero-variable ring has one monomial"),
        }
    }
}

/// Element of Z[z] used by the fraction-free Groebner kernels.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct ZCyc {
    pub(crate) c: [BigInt; 4],
}

impl ZCyc {
    pub fn from_int(n: BigInt) -> Self {
        ZCyc {
            c: [n, BigInt::zero(), BigInt::zero(), BigInt::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn mul(&self, o: &ZCyc) -> ZCyc {
        if self.is_integer() {
            return o.scale(&self.c[0]);
        }
        if o.is_integer() {
            return self.scale(&o.c[0]);
        }
        let mut t: [BigInt; 7] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    t[i + j] += a * b;
                }
            }
        }
        let [t0, t1, t2, t3, t4, t5, t6] = t;
        ZCyc {
            c: [t0 - &t4 - t6, t1 - &t5, t2 + t4, t3 + t5],
        }
    }

    pub fn scale(&self, n: &BigInt) -> ZCyc {
        ZCyc {
            c: std::array::from_fn(|i| {
                if self.c[i].is_zero() {
                    BigInt::zero()
                } else {
                    &self.c[i] * n
                }
            }),
        }
    }

    pub fn div_exact(&self, n: &BigInt) -> ZCyc {
        ZCyc {
            c: std::array::from_fn(|i| &self.c[i] / n),
        }
    }

    /// self * a - other * b, the core step of fraction-free reduction.
    pub fn sub(&self, o: &ZCyc) -> ZCyc {
        ZCyc {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }

    pub fn neg(&self) -> ZCyc {
        ZCyc {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }

    pub fn galois(&self, k: u32) -> ZCyc {
        let mut out: [BigInt; 4] = Default::default();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let row = POWER_TABLE[(i as u32 * k % 12) as usize];
            for (o, r) in out.iter_mut().zip(row) {
                match r {
                    1 => *o += ci,
                    -1 => *o -= ci,
                    _ => {}
                }
            }
        }
        ZCyc { c: out }
    }

    /// Product of the non-identity conjugates: `self * cofactor` is an integer.
    pub fn norm_cofactor(&self) -> ZCyc {
        GALOIS_EXPONENTS[1..]
            .iter()
            .fold(ZCyc::from_int(BigInt::one()), |acc, &k| acc.mul(&self.galois(k)))
    }

    pub fn to_cyc(&self) -> CycElem {
        CycElem {
            c: self.c.clone().map(Rational::from_integer),
        }
    }

    pub fn signum_leading(&self) -> i32 {
        for x in self.c.iter() {
            if !x.is_zero() {
                return if x.is_negative() { -1 } else { 1 };
            }
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_by_cyclotomic_polynomial() {
        assert_eq!(CycElem::zeta12().pow(4), &CycElem::zeta12_pow(2) - &CycElem::one());
        assert_eq!(CycElem::zeta6().pow(3), CycElem::from_int(-1));
        assert_eq!(&CycElem::zeta3() + &CycElem::zeta3().pow(2), CycElem::from_int(-1));
        assert_eq!(CycElem::zeta12().pow(12), CycElem::one());
    }

    #[test]
    fn embedding_values() {
        let e = CycElem::one().embed();
        assert!((e - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z6 = CycElem::zeta6().embed();
        assert!((z6 - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let w = (&CycElem::zeta12_pow(2) - &CycElem::one()).embed();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn coerce_subfields() {
        let one = Rational::one();
        let zero = Rational::zero();
        assert_eq!(CycElem::coerce(Subfield::Zeta6, &[zero.clone(), one.clone()]), CycElem::zeta12_pow(2));
        assert_eq!(
            CycElem::coerce(Subfield::Zeta3, &[zero, one]),
            &CycElem::zeta12_pow(2) - &CycElem::one()
        );
        assert_eq!(
            CycElem::coerce(Subfield::Q, &[Rational::from_integer(5.into())]),
            CycElem::from_int(5)
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(CycElem::one().checked_div(&CycElem::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_of_non_rational() {
        let a: CycElem = "(5*z^2-5)".parse().unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let n = a.norm();
        assert!(n.is_integer());
    }

    #[test]
    fn display_and_parse() {
        for s in ["(5*z^2-5)", "-3/2", "(z^3+1/2*z-7)", "0", "(-z)"] {
            let a: CycElem = s.parse().unwrap();
            assert_eq!(a.to_string().parse::<CycElem>().unwrap(), a);
        }
        assert_eq!("(5*z^2-5)".parse::<CycElem>().unwrap().to_string(), "(5*z^2-5)");
    }

    #[test]
    fn subfield_detection() {
        assert_eq!(CycElem::from_int(3).subfield(), Subfield::Q);
        assert_eq!(CycElem::zeta3().subfield(), Subfield::Zeta6);
        assert_eq!(CycElem::zeta12().subfield(), Subfield::Zeta12);
    }

    #[test]
    fn integral_cofactor_gives_integer_norm() {
        let a: CycElem = "(3*z^3-2*z+7)".parse().unwrap();
        let za = a.to_integral(&BigInt::one());
        let p = za.mul(&za.norm_cofactor());
        assert!(p.is_integer());
        assert_eq!(Rational::from_integer(p.c[0].clone()), a.norm());
    }
}
