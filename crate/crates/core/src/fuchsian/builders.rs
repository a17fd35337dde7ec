//! The explicit systems: Krammer's rank-two system `K`, its middle
//! convolution `H`, the rank-one systems `F_0, F_1, F_2` and the rank-seven
//! `G_2` system `G` together with its construction.

use crate::algebra::{rat, AlgebraError, Matrix, Rational, Rationals};

use super::FuchsianSystem;

fn qmat(rows: &[&[(i64, i64)]]) -> Matrix<Rationals> {
    Matrix::from_rows(
        Rationals,
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
            .collect(),
    )
}

fn halves(rows: &[&[i64]]) -> Matrix<Rationals> {
    Matrix::from_ints(Rationals, rows).scale(&rat(1, 2))
}

fn system(points: &[i64], residues: Vec<Matrix<Rationals>>) -> FuchsianSystem<Rationals> {
    FuchsianSystem::new(
        Rationals,
        points.iter().map(|&t| rat(t, 1)).collect(),
        residues,
    )
    .expect("built-in system is well formed")
}

/// Krammer's system, singular at `0, 1, 81`.
pub fn krammer_k() -> FuchsianSystem<Rationals> {
    system(
        &[0, 1, 81],
        vec![
            qmat(&[&[(0, 1), (0, 1)], &[(-1, 2), (-1, 2)]]),
            qmat(&[&[(0, 1), (0, 1)], &[(4, 9), (-1, 2)]]),
            qmat(&[&[(0, 1), (1, 1)], &[(0, 1), (1, 2)]]),
        ],
    )
}

/// The displayed form of `mc_{1/6}(K)`.
pub fn target_h() -> FuchsianSystem<Rationals> {
    system(
        &[0, 1, 81],
        vec![
            qmat(&[&[(-19, 30), (19, 10)], &[(-1, 10), (3, 10)]]),
            qmat(&[&[(-1, 3), (-7, 18)], &[(0, 1), (0, 1)]]),
            qmat(&[&[(0, 1), (0, 1)], &[(-1, 2), (2, 3)]]),
        ],
    )
}

/// The displayed rank-seven system with differential Galois group `G_2`.
pub fn target_g() -> FuchsianSystem<Rationals> {
    system(
        &[0, 1],
        vec![
            halves(&[
                &[-2, 0, 0, 0, 0, 0, 0],
                &[0, -2, 0, 0, 0, 0, 0],
                &[0, 0, -2, 0, 0, 0, 0],
                &[0, 0, -1, -1, 0, 0, 0],
                &[-1, 0, 0, 0, -1, 0, 0],
                &[0, -1, 0, 0, 0, -1, 0],
                &[0, 0, -1, 0, 0, 0, -1],
            ]),
            halves(&[
                &[0, 0, 0, 0, -2, 1, 1],
                &[0, 0, 0, 0, 0, 0, -1],
                &[0, 0, 0, 0, -1, 0, 0],
                &[0, 0, 0, -2, 0, 0, 0],
                &[0, 0, 0, 0, -2, 0, 0],
                &[0, 0, 0, 0, 0, -2, 0],
                &[0, 0, 0, -1, 1, -1, -2],
            ]),
        ],
    )
}

/// Rank-one systems on `P^1 - {0, 1, oo}`:
/// `F_0 = -1/(2t) - 1/(2(t-1))`, `F_1 = 1/(2(t-1))`, `F_2 = 1/(2t)`.
///
/// Panics for `which > 2`.
pub fn rank_one(which: usize) -> FuchsianSystem<Rationals> {
    let (a0, a1) = match which {
        0 => (rat(-1, 2), rat(-1, 2)),
        1 => (rat(0, 1), rat(1, 2)),
        2 => (rat(1, 2), rat(0, 1)),
        _ => panic!("no rank-one system F_{which}"),
    };
    let one = |x: Rational| Matrix::from_rows(Rationals, vec![vec![x]]);
    system(&[0, 1], vec![one(a0), one(a1)])
}

/// Result of evaluating the `G_2` construction.
#[derive(Debug, Clone)]
pub struct GConstruction {
    pub system: FuchsianSystem<Rationals>,
    /// Rank before the first convolution and after each of the six.
    pub dimensions: Vec<usize>,
}

/// `F_2* (x) mc_{-1/2}(F_1* (x) mc_{1/2}(F_2* (x) mc_{-1/2}(F_1 (x)
/// mc_{1/2}(F_2 (x) mc_{-1/2}(F_1* (x) mc_{1/2}(F_0))))))`, innermost first.
pub fn build_g_sequence() -> Result<GConstruction, AlgebraError> {
    let (f0, f1, f2) = (rank_one(0), rank_one(1), rank_one(2));
    let (f1d, f2d) = (f1.dual(), f2.dual());
    let half = rat(1, 2);
    let steps: [(&Rational, &FuchsianSystem<Rationals>); 6] = [
        (&half, &f1d),
        (&-&half, &f2),
        (&half, &f1),
        (&-&half, &f2d),
        (&half, &f1d),
        (&-&half, &f2d),
    ];
    let mut dimensions = vec![f0.size()];
    let mut current = f0;
    for (mu, twist) in steps {
        let convolved = current.middle_convolution(mu)?.middle;
        dimensions.push(convolved.size());
        current = twist
            .tensor(&convolved)
            .expect("all factors live on the points 0, 1");
    }
    Ok(GConstruction {
        system: current,
        dimensions,
    })
}
