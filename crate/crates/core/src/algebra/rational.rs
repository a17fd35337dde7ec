use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{AlgebraError, Field, Ring};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"` with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let err = || AlgebraError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| err())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Image of `q` in `F_p`, or `NegativeOrder` when `p` divides the
/// denominator.
pub fn reduce_rational_mod_p(q: &Rational, p: u64) -> Result<u64, AlgebraError> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(AlgebraError::NegativeOrder {
            value: q.to_string(),
            prime: p,
        });
    }
    let num = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
    let den = den.to_u64().expect("residue fits");
    let den_inv = super::prime_field::inv_mod(den, p).expect("nonzero residue");
    Ok(super::prime_field::mul_mod(num, den_inv, p))
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// True when `q` is an integer.
pub fn is_integral(q: &Rational) -> bool {
    q.is_integer()
}
