use super::{Field, Ring};

/// Dense univariate polynomial, lowest degree first. The coefficient vector
/// never has a trailing zero; the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

impl<E> Polynomial<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// `(g, s, t)` as returned by [`PolyRing::ext_gcd`].
pub type BezoutTriple<E> = (Polynomial<E>, Polynomial<E>, Polynomial<E>);

/// Polynomials over a base ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Builds a polynomial from coefficients (lowest first), trimming zeros.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Polynomial<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Polynomial<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn var(&self) -> Polynomial<R::Elem> {
        self.from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    /// `t - a`.
    pub fn linear(&self, a: &R::Elem) -> Polynomial<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    /// `c * t^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Polynomial<R::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.from_coeffs(v)
    }

    pub fn scale(&self, a: &Polynomial<R::Elem>, c: &R::Elem) -> Polynomial<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn eval(&self, a: &Polynomial<R::Elem>, x: &R::Elem) -> R::Elem {
        a.coeffs.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, x), c)
        })
    }

    pub fn derivative(&self, a: &Polynomial<R::Elem>) -> Polynomial<R::Elem> {
        self.from_coeffs(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| self.base.mul(&self.base.from_int(k as i64), c))
                .collect(),
        )
    }

    pub fn map_base<S: Ring>(
        &self,
        target: &PolyRing<S>,
        a: &Polynomial<R::Elem>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Polynomial<S::Elem> {
        target.from_coeffs(a.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> PolyRing<F> {
    /// Euclidean division `a = q*b + r` with `deg r < deg b`.
    ///
    /// Panics when `b` is zero.
    pub fn div_rem(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
    ) -> (Polynomial<F::Elem>, Polynomial<F::Elem>) {
        let f = &self.base;
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(b.leading().unwrap()).unwrap();
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + db], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, bj));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn rem(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.div_rem(a, b).1
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, a: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match a.leading() {
            None => a.clone(),
            Some(l) if self.base.is_one(l) => a.clone(),
            Some(l) => self.scale(a, &self.base.inv(l).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
    ) -> BezoutTriple<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(l).unwrap();
                (
                    self.scale(&r0, &li),
                    self.scale(&s0, &li),
                    self.scale(&t0, &li),
                )
            }
        }
    }

    /// Exact division; panics if `b` does not divide `a`.
    pub fn div_exact(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
    ) -> Polynomial<F::Elem> {
        let (q, r) = self.div_rem(a, b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Polynomial<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Polynomial { coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = self.base.add(o, s);
        }
        self.from_coeffs(out)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Polynomial {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn format(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let c = self.base.format(c);
            terms.push(match k {
                0 => c,
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            });
        }
        terms.join(" + ")
    }
}
