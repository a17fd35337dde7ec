use super::{AlgebraError, Field, Matrix};

/// Induced action on `V / W`.
#[derive(Debug, Clone)]
pub struct Quotient<F: Field> {
    /// Matrices of the induced maps in the complement basis.
    pub induced: Vec<Matrix<F>>,
    /// `pi: V -> V/W`, of shape `(dim V - dim W) x dim V`.
    pub projection: Matrix<F>,
    /// Reduced echelon basis of `W`.
    pub subspace: Vec<Vec<F::Elem>>,
    /// Standard coordinates spanning the complement (non-pivot columns).
    pub complement: Vec<usize>,
}

/// Reduced echelon basis of the span of `vectors` in `F^dim`, with the
/// pivot column of each basis vector.
pub fn echelon_span<F: Field>(
    field: &F,
    dim: usize,
    vectors: &[Vec<F::Elem>],
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let m = Matrix::from_rows(field.clone(), vectors.to_vec());
    assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref();
    let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    (basis, pivots)
}

/// Whether two families span the same subspace.
pub fn span_eq<F: Field>(field: &F, dim: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> bool {
    echelon_span(field, dim, a).0 == echelon_span(field, dim, b).0
}

/// Action of each `M` in `ms` on `F^dim / span(w)`.
///
/// The quotient basis is the images of the standard vectors `e_c` for the
/// non-pivot columns `c` of the echelon form of `w`. Invariance of `span(w)`
/// under every `M` is checked, not assumed.
pub fn quotient_action<F: Field>(
    field: &F,
    dim: usize,
    ms: &[Matrix<F>],
    w: &[Vec<F::Elem>],
) -> Result<Quotient<F>, AlgebraError> {
    for m in ms {
        if m.rows() != dim || m.cols() != dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "expected {dim}x{dim}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let (basis, pivots) = echelon_span(field, dim, w);
    let complement: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();

    // v = sum_j v[piv_j] * w_j + sum_c b_c e_c, so
    // b_c = v[c] - sum_j v[piv_j] * w_j[c].
    let mut projection = Matrix::zeros(field.clone(), complement.len(), dim);
    for (row, &c) in complement.iter().enumerate() {
        projection.set(row, c, field.one());
        for (wj, &pj) in basis.iter().zip(&pivots) {
            projection.set(row, pj, field.neg(&wj[c]));
        }
    }
    let section = Matrix::from_fn(field.clone(), dim, complement.len(), |i, j| {
        if i == complement[j] {
            field.one()
        } else {
            field.zero()
        }
    });

    let mut induced = Vec::with_capacity(ms.len());
    for (k, m) in ms.iter().enumerate() {
        for wj in &basis {
            let image = m.mul_vec(wj);
            if projection.mul_vec(&image).iter().any(|x| !field.is_zero(x)) {
                return Err(AlgebraError::NotInvariant(k));
            }
        }
        induced.push(projection.mul(m).mul(&section));
    }
    Ok(Quotient {
        induced,
        projection,
        subspace: basis,
        complement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_ints(Rationals, rows)
    }

    #[test]
    fn trivial_subspace_leaves_matrices_unchanged() {
        let ms = vec![q(&[&[1, 2], &[3, 4]]), q(&[&[0, 1], &[1, 0]])];
        let quo = quotient_action(&Rationals, 2, &ms, &[]).unwrap();
        assert_eq!(quo.induced, ms);
        assert_eq!(quo.projection, Matrix::identity(Rationals, 2));
    }

    #[test]
    fn full_subspace_gives_empty_quotient() {
        let ms = vec![q(&[&[1, 2], &[3, 4]])];
        let w = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]];
        let quo = quotient_action(&Rationals, 2, &ms, &w).unwrap();
        assert_eq!(quo.induced[0].rows(), 0);
        assert_eq!(quo.projection.rows(), 0);
    }

    #[test]
    fn detects_non_invariant_subspace() {
        let ms = vec![q(&[&[1, 0], &[0, 1]]), q(&[&[0, 1], &[1, 0]])];
        let w = vec![vec![rat(1, 1), rat(0, 1)]];
        assert_eq!(
            quotient_action(&Rationals, 2, &ms, &w).unwrap_err(),
            AlgebraError::NotInvariant(1)
        );
    }

    #[test]
    fn projection_intertwines() {
        // upper triangular block: span(e1, e2) is invariant
        let ms = vec![
            q(&[&[1, 2, 3], &[4, 5, 6], &[0, 0, 9]]),
            q(&[&[0, 1, 1], &[1, 0, 1], &[0, 0, 2]]),
        ];
        let w = vec![
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(-1, 1), rat(0, 1)],
        ];
        let quo = quotient_action(&Rationals, 3, &ms, &w).unwrap();
        assert_eq!(quo.complement, vec![2]);
        for (m, mt) in ms.iter().zip(&quo.induced) {
            assert_eq!(quo.projection.mul(m), mt.mul(&quo.projection));
        }
        assert_eq!(quo.induced[0], q(&[&[9]]));
    }
}
