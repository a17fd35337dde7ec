//! The explicit monodromy tuples: the integral `G_2` pair and Krammer's
//! tuple over `Q(zeta_60)` with its middle convolution.

use std::fmt;

use crate::algebra::{
    cyclotomic_polynomial, euler_phi, rat, simultaneous_conjugacy, ConjugacySearch,
    CyclotomicField, Matrix, PolyRing, Polynomial, Rational, Rationals, Ring,
};

use super::{mc_tuple, tensor_tuple, MatrixTuple, TupleError};

fn scalar_tuple(a: i64, b: i64) -> MatrixTuple<Rationals> {
    MatrixTuple::new(
        Rationals,
        vec![
            Matrix::from_ints(Rationals, &[&[a]]),
            Matrix::from_ints(Rationals, &[&[b]]),
        ],
    )
    .expect("nonzero scalars")
}

/// Result of the `G_2` tuple construction.
#[derive(Debug, Clone)]
pub struct G2Construction {
    pub tuple: MatrixTuple<Rationals>,
    /// Rank before the first convolution and after each of the six.
    pub dimensions: Vec<usize>,
}

/// `V_2 (x) MC_{-1}(V_1 (x) MC_{-1}(V_2 (x) MC_{-1}(V_1 (x) MC_{-1}(V_2 (x)
/// MC_{-1}(V_1 (x) MC_{-1}(V_0))))))` with `V_0 = (-1, -1)`, `V_1 = (1, -1)`
/// and `V_2 = (-1, 1)`.
pub fn build_g2_tuple() -> Result<G2Construction, TupleError> {
    let (v0, v1, v2) = (
        scalar_tuple(-1, -1),
        scalar_tuple(1, -1),
        scalar_tuple(-1, 1),
    );
    let lambda = rat(-1, 1);
    let mut dimensions = vec![v0.size()];
    let mut current = mc_tuple(&v0, &lambda)?.middle;
    dimensions.push(current.size());
    for twist in [&v1, &v2, &v1, &v2, &v1] {
        current = mc_tuple(&tensor_tuple(twist, &current)?, &lambda)?.middle;
        dimensions.push(current.size());
    }
    Ok(G2Construction {
        tuple: tensor_tuple(&v2, &current)?,
        dimensions,
    })
}

/// The displayed integral pair generating the `G_2` monodromy.
pub fn g2_display_pair() -> MatrixTuple<Rationals> {
    let p1 = Matrix::from_ints(
        Rationals,
        &[
            &[1, 0, 0, 2, 2, 0, 0],
            &[0, 1, 0, -2, 0, 2, 0],
            &[0, 0, 1, 2, 2, 2, 2],
            &[0, 0, 0, -1, 0, 0, 0],
            &[0, 0, 0, 0, -1, 0, 0],
            &[0, 0, 0, 0, 0, -1, 0],
            &[0, 0, 0, 0, 0, 0, -1],
        ],
    );
    let p2 = Matrix::from_ints(
        Rationals,
        &[
            &[1, 0, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0, 0],
            &[2, 0, 0, 1, 0, 0, 0],
            &[0, 2, 0, 0, 1, 0, 0],
            &[0, 0, 2, 0, 0, 1, 0],
            &[0, 0, 0, 2, 4, 4, 1],
        ],
    );
    MatrixTuple::new(Rationals, vec![p1, p2]).expect("unimodular")
}

/// Sign choices for the embeddings of `i`, `sqrt 3` and `sqrt 5`; `true`
/// negates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Twist {
    pub i: bool,
    pub sqrt3: bool,
    pub sqrt5: bool,
}

impl Twist {
    pub fn all() -> impl Iterator<Item = Twist> {
        (0..8u8).map(|b| Twist {
            i: b & 1 != 0,
            sqrt3: b & 2 != 0,
            sqrt5: b & 4 != 0,
        })
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |neg: bool| if neg { '-' } else { '+' };
        write!(
            f,
            "i={}i sqrt3={}sqrt3 sqrt5={}sqrt5",
            s(self.i),
            s(self.sqrt3),
            s(self.sqrt5)
        )
    }
}

fn q60() -> CyclotomicField {
    CyclotomicField::new(60)
}

fn mat2(k: &CyclotomicField, e: [Vec<Rational>; 4]) -> Matrix<CyclotomicField> {
    let [a, b, c, d] = e;
    Matrix::from_rows(k.clone(), vec![vec![a, b], vec![c, d]])
}

/// Krammer's monodromy tuple over `Q(zeta_60)` under the given twist.
pub fn krammer_monodromy(twist: Twist) -> MatrixTuple<CyclotomicField> {
    let k = q60();
    let e = k.named_embeddings().expect("60 | 60");
    let sign = |x: &Vec<Rational>, neg: bool| if neg { k.neg(x) } else { x.clone() };
    let i = sign(&e.i, twist.i);
    let r3 = sign(&e.sqrt3, twist.sqrt3);
    let r5 = sign(&e.sqrt5, twist.sqrt5);
    let r15 = k.mul(&r3, &r5);
    let half = k.rational(rat(1, 2));
    let one = k.one();
    let int = |n: i64| k.from_int(n);
    let a1 = mat2(
        &k,
        [
            k.zero(),
            k.neg(&k.mul(&k.add(&r5, &one), &half)),
            k.mul(&k.sub(&r5, &one), &half),
            k.zero(),
        ],
    );
    let a2 = mat2(
        &k,
        [k.neg(&r3), k.add(&one, &r5), k.sub(&one, &r5), r3.clone()],
    );
    let a3 = mat2(
        &k,
        [
            k.mul(&k.add(&r3, &r15), &half),
            int(-2),
            int(2),
            k.mul(&k.sub(&r3, &r15), &half),
        ],
    );
    MatrixTuple::new(k.clone(), vec![a1.scale(&i), a2.scale(&i), a3.scale(&i)]).expect("invertible")
}

/// `sum c_j zeta_60^(e_j)` with integer coefficients.
fn z60(k: &CyclotomicField, terms: &[(i64, i64)]) -> Vec<Rational> {
    k.combination(
        &terms
            .iter()
            .map(|&(c, e)| (rat(c, 1), e))
            .collect::<Vec<_>>(),
    )
}

/// The displayed `MC_{zeta_6}(A) = (B_1, B_2, B_3)`.
pub fn krammer_displayed_b() -> MatrixTuple<CyclotomicField> {
    let k = q60();
    let e = k.named_embeddings().expect("60 | 60");
    let fifth = k.rational(rat(1, 5));
    let r5 = &e.sqrt5;
    let b1 = mat2(
        &k,
        [
            k.mul(
                &fifth,
                &k.add(r5, &z60(&k, &[(3, 10), (6, 8), (-6, 2), (-3, 0)])),
            ),
            k.mul(
                &fifth,
                &k.add(
                    &k.mul(&k.from_int(-6), r5),
                    &z60(&k, &[(-10, 10), (-10, 8), (10, 2), (10, 0)]),
                ),
            ),
            k.mul(
                &fifth,
                &z60(
                    &k,
                    &[(1, 14), (2, 10), (-1, 8), (-1, 6), (-1, 4), (1, 2), (1, 0)],
                ),
            ),
            k.mul(&fifth, &k.sub(&z60(&k, &[(-3, 10), (-6, 8)]), r5)),
        ],
    );
    let b2 = mat2(
        &k,
        [
            z60(&k, &[(-1, 10)]),
            z60(&k, &[(2, 10)]),
            k.zero(),
            z60(&k, &[(1, 10), (-1, 0)]),
        ],
    );
    let b3 = mat2(
        &k,
        [
            z60(&k, &[(1, 10), (-1, 0)]),
            k.zero(),
            z60(&k, &[(-1, 10), (1, 0)]),
            z60(&k, &[(-1, 10)]),
        ],
    );
    let zeta6 = e.zeta6;
    MatrixTuple::new(
        k.clone(),
        vec![b1.scale(&zeta6), b2.scale(&zeta6), b3.scale(&zeta6)],
    )
    .expect("invertible")
}

/// The displayed `B~ = B_1 B_2 B_1`.
pub fn krammer_displayed_b_tilde() -> Matrix<CyclotomicField> {
    let k = q60();
    mat2(
        &k,
        [
            z60(&k, &[(2, 10), (-1, 0)]),
            z60(&k, &[(-4, 10), (-2, 8), (2, 2)]),
            z60(&k, &[(-1, 14), (1, 8), (1, 6), (1, 4), (-1, 2), (-1, 0)]),
            z60(&k, &[(2, 14), (-2, 10), (-2, 6), (-2, 4), (3, 0)]),
        ],
    )
}

/// `f = X^4 - 2X^3 - 2X^2 - 2X + 1` over `Q`.
pub fn quartic_f() -> Polynomial<Rational> {
    PolyRing::new(Rationals).from_coeffs([1, -2, -2, -2, 1].iter().map(|&c| rat(c, 1)).collect())
}

/// One named check of [`verify_krammer_monodromy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: &'static str,
    /// Informational checks do not affect [`MonodromyReport::passed`].
    pub required: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct MonodromyReport {
    pub checks: Vec<SubCheck>,
    /// Twist under which `MC_{zeta_6}(A)` matched the displayed tuple.
    pub matched_twist: Option<Twist>,
    /// Size of `MC_{zeta_6}(A)` for each twist.
    pub middle_sizes: Vec<(Twist, usize)>,
}

impl MonodromyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.passed)
    }

    /// Names of the failed required checks.
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.required && !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

fn trace_is_one_plus_minus_sqrt5(m: &Matrix<CyclotomicField>) -> bool {
    let k = m.ring();
    let r5 = k.named_embeddings().expect("60 | 60").sqrt5;
    let tr = m.trace();
    m.rows() == 2 && (tr == k.add(&k.one(), &r5) || tr == k.sub(&k.one(), &r5))
}

fn annihilated_by_f(m: &Matrix<CyclotomicField>) -> bool {
    let k = m.ring().clone();
    let f = PolyRing::new(Rationals).map_base(&PolyRing::new(k.clone()), &quartic_f(), |c| {
        k.rational(c.clone())
    });
    m.eval_poly(&f).is_zero()
}

/// Cyclotomic polynomials of degree at most 4 dividing `f`.
fn cyclotomic_factors_of_f() -> Vec<u64> {
    let polys = PolyRing::new(Rationals);
    (1..=12)
        .filter(|&m| euler_phi(m) <= 4)
        .filter(|&m| polys.rem(&quartic_f(), &cyclotomic_polynomial(m)).is_zero())
        .collect()
}

/// Recomputes `MC_{zeta_6}` of Krammer's tuple under every twist, looks for
/// a conjugacy to the displayed `(B_1, B_2, B_3)` and checks trace, quartic
/// and cyclotomic-factor claims for `B~ = B_1 B_2 B_1`.
pub fn verify_krammer_monodromy(search: ConjugacySearch) -> Result<MonodromyReport, TupleError> {
    let k = q60();
    let zeta6 = k.zeta_pow(10);
    let displayed = krammer_displayed_b();
    let mut middle_sizes = Vec::new();
    let mut matched = None;
    let mut computed_b_tilde = None;
    for twist in Twist::all() {
        let data = mc_tuple(&krammer_monodromy(twist), &zeta6)?;
        let mid = data.middle;
        middle_sizes.push((twist, mid.size()));
        let m = mid.matrices();
        if computed_b_tilde.is_none() {
            computed_b_tilde = Some(m[0].mul(&m[1]).mul(&m[0]));
        }
        if mid.size() != displayed.size() {
            continue;
        }
        if let Ok(Some(x)) = simultaneous_conjugacy(m, displayed.matrices(), search) {
            let xinv = x.inverse().expect("verified invertible");
            let conj: Vec<_> = m.iter().map(|a| x.mul(a).mul(&xinv)).collect();
            computed_b_tilde = Some(conj[0].mul(&conj[1]).mul(&conj[0]));
            matched = Some(twist);
            break;
        }
    }
    let b_tilde = computed_b_tilde.expect("eight twists tried");
    let sizes: Vec<String> = middle_sizes
        .iter()
        .map(|(t, s)| format!("[{t}] {s}"))
        .collect();
    let db = displayed.matrices();
    let displayed_product = db[0].mul(&db[1]).mul(&db[0]);
    let displayed_tilde = krammer_displayed_b_tilde();
    let cyclo = cyclotomic_factors_of_f();
    let checks = vec![
        SubCheck {
            name: "conjugacy",
            required: true,
            passed: matched.is_some(),
            detail: match matched {
                Some(t) => format!("matched under twist {t}"),
                None => format!("no twist matched; sizes of MC: {}", sizes.join(", ")),
            },
        },
        SubCheck {
            name: "trace",
            required: true,
            passed: trace_is_one_plus_minus_sqrt5(&b_tilde),
            detail: format!("B~ from MC is {}x{}", b_tilde.rows(), b_tilde.cols()),
        },
        SubCheck {
            name: "quartic",
            required: true,
            passed: annihilated_by_f(&b_tilde),
            detail: "f(B~) = 0 for B~ from MC".into(),
        },
        SubCheck {
            name: "cyclotomic",
            required: true,
            passed: cyclo.is_empty(),
            detail: format!("Phi_m dividing f for phi(m) <= 4: {cyclo:?}"),
        },
        SubCheck {
            name: "displayed-product",
            required: false,
            passed: displayed_product == displayed_tilde,
            detail: "displayed B_1 B_2 B_1 equals displayed B~".into(),
        },
        SubCheck {
            name: "displayed-trace",
            required: false,
            passed: trace_is_one_plus_minus_sqrt5(&displayed_tilde),
            detail: "trace of displayed B~ is 1 +- sqrt 5".into(),
        },
        SubCheck {
            name: "displayed-quartic",
            required: false,
            passed: annihilated_by_f(&displayed_tilde),
            detail: "f(displayed B~) = 0".into(),
        },
    ];
    Ok(MonodromyReport {
        checks,
        matched_twist: matched,
        middle_sizes,
    })
}
