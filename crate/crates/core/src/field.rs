//! Exact coefficients: arbitrary-precision rationals or residues mod a prime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix scalars from different fields")]
    MixedFields,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected rational or prime:<p>)")]
    Unknown(String),
}

/// Coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldKind {
    #[default]
    Rational,
    Prime(u32),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldKind::Prime(p as u32))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldScalar {
        match *self {
            FieldKind::Rational => FieldScalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => FieldScalar::Mod { value: v.rem_euclid(p as i64) as u32, modulus: p },
        }
    }
}

impl FromStr for FieldKind {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(FieldKind::Rational);
        }
        let p = s
            .strip_prefix("prime:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| FieldError::Unknown(s.to_string()))?;
        FieldKind::prime(p)
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => f.write_str("rational"),
            FieldKind::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// Trial division; adequate below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element. `BigRational` keeps itself in lowest terms with a
/// positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Mod { value: u32, modulus: u32 },
}

impl FieldScalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldScalar::Rational(_) => FieldKind::Rational,
            FieldScalar::Mod { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_zero(),
            FieldScalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Rational(q) => FieldScalar::Rational(-q),
            FieldScalar::Mod { value, modulus } => {
                FieldScalar::Mod { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn add(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => Ok(FieldScalar::Rational(a + b)),
            (FieldScalar::Mod { value: a, modulus: p }, FieldScalar::Mod { value: b, modulus: q }) if p == q => {
                Ok(FieldScalar::Mod { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p })
            }
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn sub(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => Ok(FieldScalar::Rational(a * b)),
            (FieldScalar::Mod { value: a, modulus: p }, FieldScalar::Mod { value: b, modulus: q }) if p == q => {
                Ok(FieldScalar::Mod { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p })
            }
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn inv(&self) -> Result<FieldScalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldScalar::Rational(q) => FieldScalar::Rational(q.recip()),
            FieldScalar::Mod { value, modulus } => {
                FieldScalar::Mod { value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32, modulus: *modulus }
            }
        })
    }

    pub fn div(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        if self.kind() != rhs.kind() {
            return Err(FieldError::MixedFields);
        }
        self.mul(&rhs.inv()?)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            FieldScalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            FieldScalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FieldScalar {
    /// Denominator is positive and coprime to the numerator, or residue in range.
    pub fn is_canonical(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => {
                q.denom().is_positive() && num_integer::Integer::gcd(q.numer(), q.denom()).is_one()
            }
            FieldScalar::Mod { value, modulus } => value < modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn morse_cancellations_vanish() {
        let q = FieldKind::Rational;
        let one = q.one();
        let m1 = q.from_int(-1);
        // 1 - (1*1)/1
        assert!(one.sub(&one.mul(&one).unwrap().div(&one).unwrap()).unwrap().is_zero());
        // (-1) - (1*(-1))/1
        assert!(m1.sub(&one.mul(&m1).unwrap().div(&one).unwrap()).unwrap().is_zero());
        let f2 = FieldKind::prime(2).unwrap();
        assert!(f2.one().add(&f2.one()).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let q = FieldKind::Rational;
        assert_eq!(q.one().div(&q.zero()), Err(FieldError::DivisionByZero));
        let f3 = FieldKind::Prime(3);
        assert_eq!(q.one().add(&f3.one()), Err(FieldError::MixedFields));
        assert_eq!(f3.one().mul(&FieldKind::Prime(5).one()), Err(FieldError::MixedFields));
        assert_eq!(FieldKind::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldKind::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldKind::prime(1 << 31), Err(FieldError::NotPrime(1 << 31)));
        assert_eq!(FieldKind::prime(2_147_483_647).unwrap(), FieldKind::Prime(2_147_483_647));
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("rational".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert_eq!("prime:7".parse::<FieldKind>().unwrap(), FieldKind::Prime(7));
        assert!("prime:8".parse::<FieldKind>().is_err());
        assert!("real".parse::<FieldKind>().is_err());
        assert_eq!(FieldKind::Prime(7).to_string(), "prime:7");
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldKind::Rational;
        let x = q.from_int(6).div(&q.from_int(-4)).unwrap();
        assert!(x.is_canonical());
        assert_eq!(x.to_string(), "-3/2");
    }

    fn scalar(kind: FieldKind) -> impl Strategy<Value = FieldScalar> {
        match kind {
            FieldKind::Rational => (-50i64..50, 1i64..20)
                .prop_map(|(a, b)| FieldScalar::Rational(BigRational::new(a.into(), b.into())))
                .boxed(),
            FieldKind::Prime(p) => (0..p).prop_map(move |v| FieldScalar::Mod { value: v, modulus: p }).boxed(),
        }
    }

    fn check_axioms(a: &FieldScalar, b: &FieldScalar, c: &FieldScalar) -> Result<(), TestCaseError> {
        prop_assert_eq!(a.add(&b.add(c)?)?, a.add(b)?.add(c)?);
        prop_assert_eq!(a.mul(&b.mul(c)?)?, a.mul(b)?.mul(c)?);
        prop_assert_eq!(a.mul(&b.add(c)?)?, a.mul(b)?.add(&a.mul(c)?)?);
        prop_assert_eq!(a.add(b)?, b.add(a)?);
        prop_assert!(a.add(&a.neg())?.is_zero());
        prop_assert_eq!(a.is_unit(), !a.is_zero());
        if a.is_unit() {
            prop_assert_eq!(a.mul(&a.inv()?)?, a.kind().one());
            prop_assert_eq!(b.div(a)?.mul(a)?, b.clone());
        }
        for x in [a, b, c] {
            prop_assert!(x.is_canonical());
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn rational_axioms(a in scalar(FieldKind::Rational), b in scalar(FieldKind::Rational), c in scalar(FieldKind::Rational)) {
            check_axioms(&a, &b, &c)?;
        }

        #[test]
        fn prime_axioms(a in scalar(FieldKind::Prime(7)), b in scalar(FieldKind::Prime(7)), c in scalar(FieldKind::Prime(7))) {
            check_axioms(&a, &b, &c)?;
        }

        #[test]
        fn large_prime_axioms(
            a in scalar(FieldKind::Prime(2_147_483_629)),
            b in scalar(FieldKind::Prime(2_147_483_629)),
            c in scalar(FieldKind::Prime(2_147_483_629)),
        ) {
            check_axioms(&a, &b, &c)?;
        }
    }
}
