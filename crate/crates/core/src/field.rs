//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate runs over one of these two kinds of
//! fields. There is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use std::fmt;

use crate::error::CoreError;

/// The ground field: either the rationals or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, CoreError> {
        if !is_prime(p) {
            return Err(CoreError::Field(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Fp { value: 1 % *p, modulus: *p },
        }
    }

    /// Scalar from a signed integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let p = *p as i128;
                let v = ((n as i128 % p) + p) % p;
                Scalar::Fp { value: v as u64, modulus: p as u64 }
            }
        }
    }

    /// Scalar from a numerator/denominator pair.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, CoreError> {
        if den == 0 {
            return Err(CoreError::Field("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Prime(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(CoreError::Field(format!(
                        "denominator {den} vanishes in F_{}",
                        self.characteristic()
                    )));
                }
                Ok(self.from_i64(num).mul(&d.inv().unwrap()))
            }
        }
    }

    /// Uniform random nonzero-biased scalar from a small symmetric box,
    /// used by seeded sampling procedures.
    pub fn random_small<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-9..=9)),
            FieldSpec::Prime(p) => Scalar::Fp { value: rng.gen_range(0..*p), modulus: *p },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Prime-field values are reduced eagerly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, modulus } => *value == 1 % *modulus,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("mixed field kinds"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("mixed field kinds"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: mod_pow(*value, *modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Exact square root, when one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Fp { value, modulus } => fp_sqrt(*value, *modulus)
                .map(|v| Scalar::Fp { value: v, modulus: *modulus }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Tonelli–Shanks square root in F_p.
fn fp_sqrt(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a % 2);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    // Tonelli–Shanks for p ≡ 1 (mod 4).
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % p as u128) as u64;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = (b as u128 * b as u128 % p as u128) as u64;
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    // Deterministic Miller–Rabin for u64.
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = FieldSpec::Rationals;
        let half = f.from_ratio(1, 2).unwrap();
        let third = f.from_ratio(1, 3).unwrap();
        let sum = half.add(&third);
        assert_eq!(sum, f.from_ratio(5, 6).unwrap());
        assert!(half.mul(&half.inv().unwrap()).is_one());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(101).unwrap();
        for n in 1..20 {
            let x = f.from_i64(n);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(97).is_ok());
    }

    #[test]
    fn square_roots() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.from_ratio(9, 4).unwrap().sqrt(), Some(f.from_ratio(3, 2).unwrap()));
        assert_eq!(f.from_i64(2).sqrt(), None);
        let g = FieldSpec::prime(13).unwrap();
        let s = g.from_i64(4).sqrt().unwrap();
        assert_eq!(s.mul(&s), g.from_i64(4));
    }
}
