//! Exact arithmetic: the field tower used throughout the crate and the
//! linear algebra built on top of it.
//!
//! Rings and fields are *descriptors*: a value implementing [`Ring`] knows
//! how to combine elements of its associated [`Ring::Elem`] type. Elements
//! are plain data and carry no context, so `Matrix`, `Polynomial` and the
//! differential-system types all hold the descriptor next to their entries.
//! Descriptors are cheap to clone (a unit struct, a modulus, or an `Arc`).

use std::fmt::Debug;

mod conjugacy;
mod cyclotomic;
mod matrix;
mod poly;
mod prime_field;
mod quotient;
mod ratfunc;
mod rational;

pub use conjugacy::{simultaneous_conjugacy, ConjugacySearch};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicField, NamedEmbeddings};
pub use matrix::Matrix;
pub use poly::{BezoutTriple, PolyRing, Polynomial};
pub use prime_field::{is_prime, primes_in, PrimeField};
pub use quotient::{echelon_span, quotient_action, span_eq, Quotient};
pub use ratfunc::{RationalFunction, RationalFunctionField};
pub use rational::{is_integral, parse_rational, rat, reduce_rational_mod_p, Rational, Rationals};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The prime divides the denominator, so the value has no reduction.
    #[error("negative p-adic order: {value} has no reduction modulo {prime}")]
    NegativeOrder { value: String, prime: u64 },
    #[error("matrix {0} does not leave the subspace invariant")]
    NotInvariant(usize),
    #[error("a nonzero intertwiner space of dimension {dim} exists but no invertible element was found within the search bound")]
    Exhausted { dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Field characteristic (0 for characteristic zero).
    fn characteristic(&self) -> u64;
}
