use super::{Field, PolyRing, Polynomial, Ring};

/// A reduced fraction of polynomials: `gcd(num, den) = 1`, `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<E> {
    num: Polynomial<E>,
    den: Polynomial<E>,
}

impl<E> RationalFunction<E> {
    pub fn numerator(&self) -> &Polynomial<E> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<E> {
        &self.den
    }
}

/// The rational function field `F(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunctionField<F> {
    polys: PolyRing<F>,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F) -> Self {
        RationalFunctionField {
            polys: PolyRing::new(base),
        }
    }

    pub fn base(&self) -> &F {
        self.polys.base()
    }

    pub fn polys(&self) -> &PolyRing<F> {
        &self.polys
    }

    /// `num / den` brought to normal form. Panics on a zero denominator.
    pub fn fraction(
        &self,
        num: Polynomial<F::Elem>,
        den: Polynomial<F::Elem>,
    ) -> RationalFunction<F::Elem> {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = self.polys.gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                self.polys.div_exact(&num, &g),
                self.polys.div_exact(&den, &g),
            )
        };
        let lead = self.base().inv(den.leading().unwrap()).unwrap();
        RationalFunction {
            num: self.polys.scale(&num, &lead),
            den: self.polys.scale(&den, &lead),
        }
    }

    pub fn from_poly(&self, p: Polynomial<F::Elem>) -> RationalFunction<F::Elem> {
        RationalFunction {
            num: p,
            den: self.polys.one(),
        }
    }

    pub fn constant(&self, c: F::Elem) -> RationalFunction<F::Elem> {
        self.from_poly(self.polys.constant(c))
    }

    /// `c / (t - a)`.
    pub fn simple_pole(&self, c: F::Elem, a: &F::Elem) -> RationalFunction<F::Elem> {
        self.fraction(self.polys.constant(c), self.polys.linear(a))
    }

    /// `d/dt`, reduced.
    pub fn derivative(&self, f: &RationalFunction<F::Elem>) -> RationalFunction<F::Elem> {
        let p = &self.polys;
        // (n/d)' = (n'd - nd')/d^2
        let num = p.sub(
            &p.mul(&p.derivative(&f.num), &f.den),
            &p.mul(&f.num, &p.derivative(&f.den)),
        );
        self.fraction(num, p.mul(&f.den, &f.den))
    }
}

impl<F: Field> Ring for RationalFunctionField<F> {
    type Elem = RationalFunction<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(self.polys.zero())
    }
    fn one(&self) -> Self::Elem {
        self.from_poly(self.polys.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.polys;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.fraction(p.add(&a.num, &b.num), a.den.clone());
        }
        let g = p.gcd(&a.den, &b.den);
        let bd = p.div_exact(&b.den, &g);
        let ad = p.div_exact(&a.den, &g);
        let num = p.add(&p.mul(&a.num, &bd), &p.mul(&b.num, &ad));
        self.fraction(num, p.mul(&a.den, &bd))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.polys;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        // Cross-cancel so the product is already coprime.
        let g1 = p.gcd(&a.num, &b.den);
        let g2 = p.gcd(&b.num, &a.den);
        let num = p.mul(&p.div_exact(&a.num, &g1), &p.div_exact(&b.num, &g2));
        let den = p.mul(&p.div_exact(&a.den, &g2), &p.div_exact(&b.den, &g1));
        let lead = self.base().inv(den.leading().unwrap()).unwrap();
        RationalFunction {
            num: p.scale(&num, &lead),
            den: p.scale(&den, &lead),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RationalFunction {
            num: self.polys.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base().from_int(n))
    }
    fn format(&self, a: &Self::Elem) -> String {
        if a.den.degree() == Some(0) {
            self.polys.format(&a.num)
        } else {
            format!(
                "({})/({})",
                self.polys.format(&a.num),
                self.polys.format(&a.den)
            )
        }
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            None
        } else {
            Some(self.fraction(a.den.clone(), a.num.clone()))
        }
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, PrimeField, Rational, Rationals};

    fn field() -> RationalFunctionField<Rationals> {
        RationalFunctionField::new(Rationals)
    }

    fn poly(c: &[i64]) -> Polynomial<Rational> {
        PolyRing::new(Rationals).from_coeffs(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn derivative_examples() {
        let k = field();
        // 1/(t-1) -> -1/(t-1)^2
        let f = k.fraction(poly(&[1]), poly(&[-1, 1]));
        let expect = k.fraction(poly(&[-1]), poly(&[1, -2, 1]));
        assert_eq!(k.derivative(&f), expect);
        // constants
        assert!(k.is_zero(&k.derivative(&k.constant(rat(7, 3)))));
        // t^2/(t-1) -> (t^2-2t)/(t-1)^2
        let f = k.fraction(poly(&[0, 0, 1]), poly(&[-1, 1]));
        let expect = k.fraction(poly(&[0, -2, 1]), poly(&[1, -2, 1]));
        assert_eq!(k.derivative(&f), expect);
    }

    #[test]
    fn normal_form() {
        let k = field();
        // (2t-2)/(4t^2-4) = (1/2)/(t+1)
        let f = k.fraction(poly(&[-2, 2]), poly(&[-4, 0, 4]));
        assert_eq!(f.denominator(), &poly(&[1, 1]));
        assert_eq!(f.numerator(), &PolyRing::new(Rationals).constant(rat(1, 2)));
    }

    #[test]
    fn partial_fractions_recombine() {
        let k = field();
        // 1/(t-1) - 1/t = 1/(t(t-1))
        let a = k.simple_pole(rat(1, 1), &rat(1, 1));
        let b = k.simple_pole(rat(1, 1), &rat(0, 1));
        assert_eq!(k.sub(&a, &b), k.fraction(poly(&[1]), poly(&[0, -1, 1])));
    }

    proptest::proptest! {
        #[test]
        fn field_axioms_mod_p(
            a in proptest::collection::vec(0u64..7, 0..4),
            b in proptest::collection::vec(0u64..7, 1..4),
            c in proptest::collection::vec(0u64..7, 0..4),
            d in proptest::collection::vec(0u64..7, 1..4),
        ) {
            let f = PrimeField::new(7);
            let k = RationalFunctionField::new(f);
            let pr = k.polys().clone();
            let (bp, dp) = (pr.from_coeffs(b), pr.from_coeffs(d));
            proptest::prop_assume!(!bp.is_zero() && !dp.is_zero());
            let x = k.fraction(pr.from_coeffs(a), bp);
            let y = k.fraction(pr.from_coeffs(c), dp);
            if let Some(xi) = k.inv(&x) {
                proptest::prop_assert!(k.is_one(&k.mul(&x, &xi)));
            }
            let lhs = k.mul(&x, &k.add(&x, &y));
            let rhs = k.add(&k.mul(&x, &x), &k.mul(&x, &y));
            proptest::prop_assert_eq!(lhs, rhs);
            // Leibniz rule
            let dxy = k.derivative(&k.mul(&x, &y));
            let leib = k.add(&k.mul(&k.derivative(&x), &y), &k.mul(&x, &k.derivative(&y)));
            proptest::prop_assert_eq!(dxy, leib);
        }
    }
}
