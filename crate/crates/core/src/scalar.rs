//! Exact scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every value is kept in canonical form (reduced fraction with positive
//! denominator, or residue in `[0, p)`), so equality is structural and
//! there is no floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgError, Result};

/// The ground field: Q or GF(p) for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validates the prime in `GF(p)`.
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(AlgError::InputError(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Mod { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Mod { p: *p, v: 1 % *p },
        }
    }

    /// Embeds an integer into the field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { p: *p, v: m }
            }
        }
    }

    /// Deterministic pairwise-distinct scalars: the embedding of 0, 1, 2, ...
    ///
    /// Fails with `NotEnoughElements` when `count > p` over GF(p); the caller
    /// (e.g. the Vandermonde oracle) treats that as "field too small".
    pub fn distinct_scalars(&self, count: usize) -> Result<Vec<Scalar>> {
        if let FieldSpec::PrimeField(p) = self {
            if count as u128 > *p as u128 {
                return Err(AlgError::NotEnoughElements {
                    requested: count,
                    available: *p as usize,
                });
            }
        }
        Ok((0..count).map(|n| self.from_int(n as i64)).collect())
    }

    /// All field elements, in order 0, 1, ..., p-1. Only for prime fields.
    pub fn all_elements(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(AlgError::InputError(
                "cannot enumerate the elements of an infinite field".into(),
            )),
            FieldSpec::PrimeField(p) => Ok((0..*p).map(|v| Scalar::Mod { p: *p, v }).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Rationals are stored reduced with positive
/// denominator (num-rational maintains this); GF(p) values are canonical
/// residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u64, v: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { p, v } => *v == 1 % *p,
        }
    }

    /// Rational from an integer pair; reduces and normalizes the sign.
    pub fn rat(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The checked field operation of the public surface. Verifies the two
    /// operands share a field and refuses division by zero.
    pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
        if a.field() != b.field() {
            return Err(AlgError::FieldMismatch(
                a.field().to_string(),
                b.field().to_string(),
            ));
        }
        match op {
            ArithOp::Add => Ok(a.add(b)),
            ArithOp::Sub => Ok(a.sub(b)),
            ArithOp::Mul => Ok(a.mul(b)),
            ArithOp::Div => a.div(b),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { p: q, v: b }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Mod {
                    p: *p,
                    v: (a + b) % p,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, v } => Scalar::Mod {
                p: *p,
                v: (p - v) % p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, v: a }, Scalar::Mod { p: q, v: b }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Mod {
                    p: *p,
                    v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { p, v } => Scalar::Mod {
                p: *p,
                v: mod_inverse(*v, *p),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// a^n for n >= 0.
    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Inverse of v mod prime p by the extended Euclidean algorithm.
fn mod_inverse(v: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{v} not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn rational_addition_reduces() {
        let r = Scalar::arith(&Scalar::rat(1, 2), &Scalar::rat(1, 3), ArithOp::Add).unwrap();
        assert_eq!(r, Scalar::rat(5, 6));
    }

    #[test]
    fn gf2_one_plus_one_is_zero() {
        let one = gf(2).one();
        assert_eq!(
            Scalar::arith(&one, &one, ArithOp::Add).unwrap(),
            gf(2).zero()
        );
    }

    #[test]
    fn gf7_division() {
        // 3/4 = 6 in GF(7); checked against the full multiplication table.
        let three = gf(7).from_int(3);
        let four = gf(7).from_int(4);
        let r = Scalar::arith(&three, &four, ArithOp::Div).unwrap();
        let mut expected = None;
        for c in 0..7 {
            let cand = gf(7).from_int(c);
            if four.mul(&cand) == three {
                expected = Some(cand);
            }
        }
        assert_eq!(r, expected.unwrap());
        assert_eq!(r, gf(7).from_int(6));
    }

    #[test]
    fn division_by_zero_rejected() {
        let err = Scalar::arith(&q().one(), &q().zero(), ArithOp::Div).unwrap_err();
        assert_eq!(err, AlgError::DivisionByZero);
    }

    #[test]
    fn field_mismatch_rejected() {
        let err = Scalar::arith(&q().one(), &gf(2).one(), ArithOp::Add).unwrap_err();
        assert!(matches!(err, AlgError::FieldMismatch(_, _)));
    }

    #[test]
    fn distinct_scalars_embedding() {
        assert_eq!(
            q().distinct_scalars(3).unwrap(),
            vec![q().from_int(0), q().from_int(1), q().from_int(2)]
        );
        assert_eq!(gf(5).distinct_scalars(5).unwrap().len(), 5);
        assert_eq!(
            gf(2).distinct_scalars(3).unwrap_err(),
            AlgError::NotEnoughElements {
                requested: 3,
                available: 2
            }
        );
    }

    #[test]
    fn fermat_little_theorem_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for a in gf(p).all_elements().unwrap() {
                assert_eq!(a.pow(p as u32), a, "a^p = a fails in GF({p})");
            }
        }
    }

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(13).is_ok());
        assert!(FieldSpec::prime_field(1).is_err());
        assert!(FieldSpec::prime_field(15).is_err());
    }

    #[test]
    fn canonical_form_kept_by_ops() {
        // gcd(num, den) = 1 after arithmetic.
        let a = Scalar::rat(2, 4);
        assert_eq!(a, Scalar::rat(1, 2));
        let b = Scalar::rat(-1, -2);
        assert_eq!(b, Scalar::rat(1, 2));
        let prod = Scalar::rat(2, 3).mul(&Scalar::rat(3, 2));
        assert!(prod.is_one());
    }
}
