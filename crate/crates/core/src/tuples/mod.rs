//! Monodromy tuples and their middle convolution `MC_lambda`.

use thiserror::Error;

use crate::algebra::{quotient_action, span_eq, AlgebraError, Field, Matrix};

mod builders;

pub use builders::{
    build_g2_tuple, g2_display_pair, krammer_displayed_b, krammer_displayed_b_tilde,
    krammer_monodromy, quartic_f, verify_krammer_monodromy, G2Construction, MonodromyReport,
    SubCheck, Twist,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TupleError {
    #[error("a tuple needs at least one matrix")]
    Empty,
    #[error("matrix {index} is {rows}x{cols}, expected {size}x{size}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        size: usize,
    },
    #[error("matrix {0} is not invertible")]
    NotInvertible(usize),
    #[error("tuples of lengths {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("the convolution parameter must be nonzero")]
    ZeroParameter,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(M_1, ..., M_r)`, invertible and of a common size.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple<F: Field> {
    field: F,
    matrices: Vec<Matrix<F>>,
}

impl<F: Field> MatrixTuple<F> {
    pub fn new(field: F, matrices: Vec<Matrix<F>>) -> Result<Self, TupleError> {
        let size = matrices.first().ok_or(TupleError::Empty)?.rows();
        for (index, m) in matrices.iter().enumerate() {
            if m.rows() != size || m.cols() != size {
                return Err(TupleError::Shape {
                    index,
                    rows: m.rows(),
                    cols: m.cols(),
                    size,
                });
            }
            if !m.is_invertible() {
                return Err(TupleError::NotInvertible(index));
            }
        }
        Ok(MatrixTuple { field, matrices })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    pub fn size(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `M_r ... M_1`.
    pub fn product(&self) -> Matrix<F> {
        self.matrices
            .iter()
            .skip(1)
            .fold(self.matrices[0].clone(), |acc, m| m.mul(&acc))
    }
}

/// Output of [`mc_tuple`].
#[derive(Debug, Clone)]
pub struct ConvolutionTupleData<F: Field> {
    pub lambda: F::Elem,
    /// `(N_1, ..., N_r)` on `V^r`.
    pub naive: MatrixTuple<F>,
    /// Spanning vectors of `K = (+) K_k`.
    pub ksub: Vec<Vec<F::Elem>>,
    /// Basis of `L = ker(N_r ... N_1 - 1)`.
    pub lsub: Vec<Vec<F::Elem>>,
    pub projection: Matrix<F>,
    /// `MC_lambda(M)`.
    pub middle: MatrixTuple<F>,
}

/// `N_k`: identity outside block row `k`, whose blocks are
/// `(M_1 - 1, ..., M_{k-1} - 1, lambda M_k, lambda (M_{k+1} - 1), ..., lambda (M_r - 1))`.
pub fn naive_tuple<F: Field>(m: &MatrixTuple<F>, lambda: &F::Elem) -> Vec<Matrix<F>> {
    let f = &m.field;
    let (n, r) = (m.size(), m.len());
    let minus_one = f.neg(&f.one());
    (0..r)
        .map(|k| {
            let mut big = Matrix::identity(f.clone(), n * r);
            for (j, mj) in m.matrices.iter().enumerate() {
                let shifted = mj.add_scalar(&minus_one);
                let block = match j.cmp(&k) {
                    std::cmp::Ordering::Less => shifted,
                    std::cmp::Ordering::Equal => mj.scale(lambda),
                    std::cmp::Ordering::Greater => shifted.scale(lambda),
                };
                big.set_block(k * n, j * n, &block);
            }
            big
        })
        .collect()
}

/// The middle convolution `MC_lambda(M)`: the action of `(N_1, ..., N_r)`
/// on `V^r / (K + L)`.
pub fn mc_tuple<F: Field>(
    m: &MatrixTuple<F>,
    lambda: &F::Elem,
) -> Result<ConvolutionTupleData<F>, TupleError> {
    let f = &m.field;
    if f.is_zero(lambda) {
        return Err(TupleError::ZeroParameter);
    }
    let (n, r) = (m.size(), m.len());
    let minus_one = f.neg(&f.one());
    let ns = naive_tuple(m, lambda);
    let mut ksub = Vec::new();
    for (k, mk) in m.matrices.iter().enumerate() {
        for v in mk.add_scalar(&minus_one).kernel_basis() {
            let mut w = vec![f.zero(); n * r];
            w[k * n..(k + 1) * n].clone_from_slice(&v);
            ksub.push(w);
        }
    }
    let product = ns
        .iter()
        .skip(1)
        .fold(ns[0].clone(), |acc, nk| nk.mul(&acc));
    let lsub = product.add_scalar(&minus_one).kernel_basis();
    let stacked = Matrix::from_rows(
        f.clone(),
        ns.iter()
            .flat_map(|nk| nk.add_scalar(&minus_one).to_rows())
            .collect(),
    );
    let intersection = stacked.kernel_basis();
    assert!(
        span_eq(f, n * r, &intersection, &lsub),
        "intersection of ker(N_k - 1) differs from ker(N_r...N_1 - 1)"
    );
    let spanning: Vec<_> = ksub.iter().chain(&lsub).cloned().collect();
    let quotient = quotient_action(f, n * r, &ns, &spanning)?;
    let middle = MatrixTuple {
        field: f.clone(),
        matrices: quotient.induced,
    };
    Ok(ConvolutionTupleData {
        lambda: lambda.clone(),
        naive: MatrixTuple {
            field: f.clone(),
            matrices: ns,
        },
        ksub,
        lsub,
        projection: quotient.projection,
        middle,
    })
}

/// Componentwise Kronecker product.
pub fn tensor_tuple<F: Field>(
    m: &MatrixTuple<F>,
    s: &MatrixTuple<F>,
) -> Result<MatrixTuple<F>, TupleError> {
    if m.len() != s.len() {
        return Err(TupleError::SizeMismatch(m.len(), s.len()));
    }
    Ok(MatrixTuple {
        field: m.field.clone(),
        matrices: m
            .matrices
            .iter()
            .zip(&s.matrices)
            .map(|(a, b)| a.kronecker(b))
            .collect(),
    })
}

#[cfg(test)]
mod tests;
