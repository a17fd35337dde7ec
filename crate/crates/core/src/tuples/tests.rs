use super::*;
use crate::algebra::{
    cyclotomic_polynomial, is_integral, rat, simultaneous_conjugacy, ConjugacySearch,
    CyclotomicField, PolyRing, Rational, Rationals, Ring,
};
use proptest::prelude::*;

fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
    Matrix::from_ints(Rationals, rows)
}

fn tuple(ms: Vec<Matrix<Rationals>>) -> MatrixTuple<Rationals> {
    MatrixTuple::new(Rationals, ms).unwrap()
}

#[test]
fn rejects_bad_tuples() {
    assert_eq!(
        MatrixTuple::<Rationals>::new(Rationals, vec![]).unwrap_err(),
        TupleError::Empty
    );
    assert_eq!(
        MatrixTuple::new(Rationals, vec![q(&[&[1]]), q(&[&[0]])]).unwrap_err(),
        TupleError::NotInvertible(1)
    );
    let m = tuple(vec![q(&[&[2]])]);
    assert_eq!(
        mc_tuple(&m, &rat(0, 1)).unwrap_err(),
        TupleError::ZeroParameter
    );
}

#[test]
fn identity_tuple_convolves_to_nothing() {
    let i2 = Matrix::identity(Rationals, 2);
    let m = tuple(vec![i2.clone(), i2.clone(), i2]);
    let data = mc_tuple(&m, &rat(1, 1)).unwrap();
    assert_eq!(data.ksub.len(), 6);
    assert_eq!(data.middle.size(), 0);
}

#[test]
fn scalar_tuple_of_length_one() {
    let m = tuple(vec![q(&[&[3]])]);
    let data = mc_tuple(&m, &rat(2, 1)).unwrap();
    assert_eq!(data.naive.matrices(), &[q(&[&[6]])]);
    assert!(data.ksub.is_empty() && data.lsub.is_empty());
    assert_eq!(data.middle.matrices(), &[q(&[&[6]])]);
}

#[test]
fn n_k_differs_from_identity_only_in_row_k() {
    let m = tuple(vec![
        q(&[&[1, 1], &[0, 1]]),
        q(&[&[2, 0], &[1, 1]]),
        q(&[&[0, 1], &[-1, 0]]),
    ]);
    let ns = naive_tuple(&m, &rat(3, 1));
    for (k, nk) in ns.iter().enumerate() {
        for b in (0..3).filter(|&b| b != k) {
            assert_eq!(
                nk.block(2 * b, 0, 2, 6),
                Matrix::identity(Rationals, 6).block(2 * b, 0, 2, 6)
            );
        }
    }
    assert_eq!(
        ns[1].block(2, 0, 2, 2),
        m.matrices()[0].add_scalar(&rat(-1, 1))
    );
    assert_eq!(ns[1].block(2, 2, 2, 2), m.matrices()[1].scale(&rat(3, 1)));
    assert_eq!(
        ns[1].block(2, 4, 2, 2),
        m.matrices()[2].add_scalar(&rat(-1, 1)).scale(&rat(3, 1))
    );
}

#[test]
fn tensor_examples() {
    let ones = tuple(vec![q(&[&[1]]), q(&[&[1]])]);
    let m = tuple(vec![q(&[&[1, 1], &[0, 1]]), q(&[&[2, 0], &[1, 1]])]);
    assert_eq!(tensor_tuple(&ones, &m).unwrap(), m);
    let a = tuple(vec![q(&[&[-1]]), q(&[&[1]])]);
    let b = tuple(vec![q(&[&[1]]), q(&[&[-1]])]);
    assert_eq!(
        tensor_tuple(&a, &b).unwrap(),
        tuple(vec![q(&[&[-1]]), q(&[&[-1]])])
    );
    assert_eq!(tensor_tuple(&m, &m).unwrap().size(), 4);
    assert_eq!(
        tensor_tuple(&a, &tuple(vec![q(&[&[1]])])).unwrap_err(),
        TupleError::SizeMismatch(2, 1)
    );
}

#[test]
fn g2_tuple_matches_display() {
    let g = build_g2_tuple().unwrap();
    assert_eq!(g.dimensions, vec![1, 2, 3, 4, 5, 6, 7]);
    for m in g.tuple.matrices() {
        assert!(m.entries().iter().all(is_integral));
        let d = m.det();
        assert!(d == rat(1, 1) || d == rat(-1, 1));
    }
    let display = g2_display_pair();
    let x = simultaneous_conjugacy(
        g.tuple.matrices(),
        display.matrices(),
        ConjugacySearch::default(),
    )
    .unwrap();
    assert!(x.is_some());
}

#[test]
fn g2_display_pair_facts() {
    let pair = g2_display_pair();
    let p1 = &pair.matrices()[0];
    assert_eq!(p1.trace(), rat(-1, 1));
    assert_eq!(p1.mul(p1), Matrix::identity(Rationals, 7));
}

#[test]
fn krammer_tuple_facts() {
    let a = krammer_monodromy(Twist::default());
    let k = a.field().clone();
    let a1 = &a.matrices()[0];
    // i^2 ((sqrt5 + 1)/2)((sqrt5 - 1)/2) = -1
    assert_eq!(a1.det(), k.from_int(-1));
    assert_eq!(a1.mul(a1), Matrix::identity(k.clone(), 2));
    assert_eq!(a.matrices()[1].det(), k.from_int(-1));
    // A_3 has eigenvalues e^{i pi/3}, e^{2 i pi/3}: trace i sqrt3, det -1
    let e = k.named_embeddings().unwrap();
    let a3 = &a.matrices()[2];
    assert_eq!(a3.trace(), k.mul(&e.i, &e.sqrt3));
    assert_eq!(a3.det(), k.from_int(-1));
    assert_eq!(krammer_monodromy(Twist::default()), a);
}

#[test]
fn displayed_b_tilde_satisfies_the_quartic() {
    let report = verify_krammer_monodromy(ConjugacySearch::default()).unwrap();
    let get = |name| {
        report
            .checks
            .iter()
            .find(|c| c.name == name)
            .unwrap()
            .passed
    };
    assert!(get("displayed-trace"));
    assert!(get("displayed-quartic"));
    assert!(get("cyclotomic"));
    assert_eq!(report.middle_sizes.len(), 8);
}

#[test]
fn quartic_has_no_small_cyclotomic_factor() {
    let polys = PolyRing::new(Rationals);
    for m in [1, 2, 3, 4, 5, 6, 8, 10, 12] {
        assert!(
            !polys.rem(&quartic_f(), &cyclotomic_polynomial(m)).is_zero(),
            "m = {m}"
        );
    }
    // control: X^4 - 1 is divisible by Phi_4
    let x4 = polys.from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
    assert!(polys.rem(&x4, &cyclotomic_polynomial(4)).is_zero());
}

#[test]
fn cyclotomic_intersection_equals_product_kernel() {
    let k = CyclotomicField::new(12);
    let z = k.zeta();
    let m = MatrixTuple::new(
        k.clone(),
        vec![
            Matrix::from_rows(
                k.clone(),
                vec![vec![z.clone(), k.one()], vec![k.zero(), k.one()]],
            ),
            Matrix::from_rows(
                k.clone(),
                vec![vec![k.one(), k.zero()], vec![k.one(), k.neg(&k.one())]],
            ),
        ],
    )
    .unwrap();
    let data = mc_tuple(&m, &k.zeta_pow(4)).unwrap();
    for (nk, mk) in data.naive.matrices().iter().zip(data.middle.matrices()) {
        assert_eq!(data.projection.mul(nk), mk.mul(&data.projection));
    }
}

fn invertible_2x2() -> impl Strategy<Value = Matrix<Rationals>> {
    proptest::collection::vec(-3i64..=3, 4)
        .prop_map(|v| Matrix::new(Rationals, 2, 2, v.into_iter().map(|x| rat(x, 1)).collect()))
        .prop_filter("invertible", |m| m.is_invertible())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quotient_commutes(ms in proptest::collection::vec(invertible_2x2(), 1..=3), lambda in nonzero_rational()) {
        let m = MatrixTuple::new(Rationals, ms).unwrap();
        let data = mc_tuple(&m, &lambda).unwrap();
        prop_assert_eq!(
            data.middle.size(),
            2 * m.len() - crate::algebra::echelon_span(&Rationals, 2 * m.len(),
                &data.ksub.iter().chain(&data.lsub).cloned().collect::<Vec<_>>()).0.len()
        );
        for (nk, mk) in data.naive.matrices().iter().zip(data.middle.matrices()) {
            prop_assert_eq!(data.projection.mul(nk), mk.mul(&data.projection));
        }
    }
}
