use std::sync::Arc;

use num_integer::Integer;

use super::{rat, Field, PolyRing, Polynomial, Rational, Rationals, Ring};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Phi_n` over the rationals, from `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Polynomial<Rational> {
    assert!(n >= 1);
    let r = PolyRing::new(Rationals);
    let mut acc = r.sub(&r.monomial(rat(1, 1), n as usize), &r.one());
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        acc = r.div_exact(&acc, &cyclotomic_polynomial(d));
    }
    acc
}

#[derive(Debug)]
struct CyclotomicData {
    conductor: u64,
    modulus: Polynomial<Rational>,
    degree: usize,
}

/// `Q(zeta_n)`, elements stored as dense coefficient vectors of length
/// `phi(n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    data: Arc<CyclotomicData>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.data.conductor == other.data.conductor
    }
}

/// Square roots and roots of unity inside `Q(zeta_60)` with the embedding
/// `zeta_60 = exp(2 pi i / 60)`.
#[derive(Debug, Clone)]
pub struct NamedEmbeddings {
    /// `zeta_60^15`
    pub i: Vec<Rational>,
    /// `zeta_60^5 + zeta_60^-5`
    pub sqrt3: Vec<Rational>,
    /// `zeta_60^12 - zeta_60^24 - zeta_60^36 + zeta_60^48`
    pub sqrt5: Vec<Rational>,
    /// `zeta_60^10`
    pub zeta6: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.degree().unwrap();
        CyclotomicField {
            data: Arc::new(CyclotomicData {
                conductor: n,
                modulus,
                degree,
            }),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.data.conductor
    }

    /// `phi(n)`, the degree over `Q`.
    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn modulus(&self) -> &Polynomial<Rational> {
        &self.data.modulus
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Vec<Rational> {
        let n = self.conductor() as i64;
        let e = k.rem_euclid(n) as usize;
        let r = PolyRing::new(Rationals);
        self.reduce(r.monomial(rat(1, 1), e))
    }

    pub fn zeta(&self) -> Vec<Rational> {
        self.zeta_pow(1)
    }

    /// Embeds a rational.
    pub fn rational(&self, q: Rational) -> Vec<Rational> {
        let mut v = vec![rat(0, 1); self.degree()];
        v[0] = q;
        v
    }

    /// Builds an element from `(coefficient, exponent)` pairs:
    /// `sum c_j * zeta^(e_j)`.
    pub fn combination(&self, terms: &[(Rational, i64)]) -> Vec<Rational> {
        terms.iter().fold(self.zero(), |acc, (c, e)| {
            self.add(
                &acc,
                &self.mul(&self.rational(c.clone()), &self.zeta_pow(*e)),
            )
        })
    }

    /// The fixed square roots and roots of unity when `60 | n`; each is
    /// checked by squaring.
    pub fn named_embeddings(&self) -> Option<NamedEmbeddings> {
        let n = self.conductor() as i64;
        if n % 60 != 0 {
            return None;
        }
        let s = n / 60;
        let z = |k: i64| self.zeta_pow(k * s);
        let one = rat(1, 1);
        let i = z(15);
        let sqrt3 = self.add(&z(5), &z(-5));
        let sqrt5 = self.combination(&[
            (one.clone(), 12 * s),
            (-one.clone(), 24 * s),
            (-one.clone(), 36 * s),
            (one, 48 * s),
        ]);
        let zeta6 = z(10);
        assert_eq!(self.mul(&i, &i), self.from_int(-1));
        assert_eq!(self.mul(&sqrt3, &sqrt3), self.from_int(3));
        assert_eq!(self.mul(&sqrt5, &sqrt5), self.from_int(5));
        assert!(self.is_one(&self.pow(&zeta6, 6)));
        Some(NamedEmbeddings {
            i,
            sqrt3,
            sqrt5,
            zeta6,
        })
    }

    fn reduce(&self, p: Polynomial<Rational>) -> Vec<Rational> {
        let r = PolyRing::new(Rationals);
        let rem = r.rem(&p, self.modulus());
        let mut v = rem.into_coeffs();
        v.resize(self.degree(), rat(0, 1));
        v
    }

    fn as_poly(&self, a: &[Rational]) -> Polynomial<Rational> {
        PolyRing::new(Rationals).from_coeffs(a.to_vec())
    }
}

impl Ring for CyclotomicField {
    type Elem = Vec<Rational>;

    fn zero(&self) -> Self::Elem {
        vec![rat(0, 1); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.rational(rat(1, 1))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        let mut prod = vec![rat(0, 1); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if num_traits::Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !num_traits::Zero::is_zero(y) {
                    prod[i + j] += x * y;
                }
            }
        }
        // Reduce by the monic modulus from the top down.
        let m = self.modulus().coeffs();
        for k in (d..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], rat(0, 1));
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            for (j, mj) in m.iter().enumerate().take(d) {
                prod[k - d + j] -= &c * mj;
            }
        }
        prod.truncate(d);
        prod
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(num_traits::Zero::is_zero)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.rational(rat(n, 1))
    }
    fn format(&self, a: &Self::Elem) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl Field for CyclotomicField {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let r = PolyRing::new(Rationals);
        // Phi_n is irreducible, so gcd(a, Phi_n) = 1 and s*a = 1 mod Phi_n.
        let (g, s, _) = r.ext_gcd(&self.as_poly(a), self.modulus());
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.reduce(s))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Totient by prime factorization, independent of the gcd count.
    fn phi_by_factorization(mut n: u64) -> u64 {
        let mut result = n;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                while n.is_multiple_of(p) {
                    n /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if n > 1 {
            result -= result / n;
        }
        result
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=72 {
            assert_eq!(
                cyclotomic_polynomial(n).degree().unwrap() as u64,
                phi_by_factorization(n),
                "n = {n}"
            );
        }
        assert_eq!(CyclotomicField::new(60).degree(), 16);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let c = |v: &[i64]| {
            PolyRing::new(Rationals).from_coeffs(v.iter().map(|&x| rat(x, 1)).collect())
        };
        assert_eq!(cyclotomic_polynomial(1), c(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(6), c(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), c(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn named_roots_square_correctly() {
        let k = CyclotomicField::new(60);
        let e = k.named_embeddings().unwrap();
        assert_eq!(k.mul(&e.sqrt5, &e.sqrt5), k.from_int(5));
        assert_eq!(k.mul(&e.sqrt3, &e.sqrt3), k.from_int(3));
        assert_eq!(k.mul(&e.i, &e.i), k.from_int(-1));
        assert!(k.is_one(&k.zeta_pow(60)));
        assert!(k.is_one(&k.pow(&k.zeta(), 60)));
        assert!(!k.is_one(&k.pow(&k.zeta(), 30)));
        assert!(CyclotomicField::new(12).named_embeddings().is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = CyclotomicField::new(60);
        let e = k.named_embeddings().unwrap();
        let x = k.add(&e.sqrt5, &k.mul(&e.i, &e.sqrt3));
        let xi = k.inv(&x).unwrap();
        assert!(k.is_one(&k.mul(&x, &xi)));
        assert_eq!(k.inv(&k.zero()), None);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn field_axioms(
            a in proptest::collection::vec(-3i64..4, 4),
            b in proptest::collection::vec(-3i64..4, 4),
            c in proptest::collection::vec(-3i64..4, 4),
        ) {
            let k = CyclotomicField::new(12);
            let el = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
            let (a, b, c) = (el(&a), el(&b), el(&c));
            proptest::prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            proptest::prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            if let Some(ai) = k.inv(&a) {
                proptest::prop_assert!(k.is_one(&k.mul(&a, &ai)));
            }
        }
    }
}
