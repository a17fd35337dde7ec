//! Fuchsian systems `Y' = sum_i A_i / (t - t_i) * Y` and the operations on
//! them: naive and middle convolution, Okubo normal form, tensor product
//! and dual.

use thiserror::Error;

use crate::algebra::{quotient_action, AlgebraError, Field, Matrix, RationalFunctionField, Ring};

pub mod builders;

pub use builders::{build_g_sequence, krammer_k, rank_one, target_g, target_h, GConstruction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuchsianError {
    #[error("a Fuchsian system needs at least one singular point")]
    NoPoints,
    #[error("{points} points but {residues} residue matrices")]
    CountMismatch { points: usize, residues: usize },
    #[error("singular points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("residue {index} is {rows}x{cols}, expected {size}x{size}")]
    ResidueShape {
        index: usize,
        rows: usize,
        cols: usize,
        size: usize,
    },
    #[error("systems have different singular points")]
    PointMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Y' = sum_i A_i / (t - t_i) * Y` with pairwise distinct finite points.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianSystem<F: Field> {
    field: F,
    points: Vec<F::Elem>,
    residues: Vec<Matrix<F>>,
}

impl<F: Field> FuchsianSystem<F> {
    pub fn new(
        field: F,
        points: Vec<F::Elem>,
        residues: Vec<Matrix<F>>,
    ) -> Result<Self, FuchsianError> {
        if points.is_empty() {
            return Err(FuchsianError::NoPoints);
        }
        if points.len() != residues.len() {
            return Err(FuchsianError::CountMismatch {
                points: points.len(),
                residues: residues.len(),
            });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(FuchsianError::DuplicatePoint(i, j));
                }
            }
        }
        let size = residues[0].rows();
        for (index, a) in residues.iter().enumerate() {
            if a.rows() != size || a.cols() != size {
                return Err(FuchsianError::ResidueShape {
                    index,
                    rows: a.rows(),
                    cols: a.cols(),
                    size,
                });
            }
        }
        Ok(FuchsianSystem {
            field,
            points,
            residues,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[F::Elem] {
        &self.points
    }

    pub fn residues(&self) -> &[Matrix<F>] {
        &self.residues
    }

    /// Rank `n` of the system.
    pub fn size(&self) -> usize {
        self.residues[0].rows()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Same points, new residues of a common (possibly different) size.
    fn with_residues(&self, residues: Vec<Matrix<F>>) -> Self {
        FuchsianSystem {
            field: self.field.clone(),
            points: self.points.clone(),
            residues,
        }
    }

    /// The naive convolution `c_mu`: block row `k` of `B_k` is
    /// `(A_1, ..., A_k + mu, ..., A_r)`, all other rows zero.
    pub fn naive_convolution(&self, mu: &F::Elem) -> Self {
        let (n, r) = (self.size(), self.num_points());
        let residues = (0..r)
            .map(|k| {
                let mut b = Matrix::zeros(self.field.clone(), n * r, n * r);
                for (j, a) in self.residues.iter().enumerate() {
                    let block = if j == k { a.add_scalar(mu) } else { a.clone() };
                    b.set_block(k * n, j * n, &block);
                }
                b
            })
            .collect();
        self.with_residues(residues)
    }

    /// The middle convolution `mc_mu`: the naive convolution modulo
    /// `k + l`, where `k_k = ker(A_k)` in slot `k` and `l = ker(B_1+...+B_r)`.
    pub fn middle_convolution(&self, mu: &F::Elem) -> Result<ConvolutionData<F>, AlgebraError> {
        let f = &self.field;
        let (n, r) = (self.size(), self.num_points());
        let naive = self.naive_convolution(mu);
        let mut ksub = Vec::new();
        for (k, a) in self.residues.iter().enumerate() {
            for v in a.kernel_basis() {
                let mut w = vec![f.zero(); n * r];
                w[k * n..(k + 1) * n].clone_from_slice(&v);
                ksub.push(w);
            }
        }
        let total = naive
            .residues
            .iter()
            .skip(1)
            .fold(naive.residues[0].clone(), |acc, b| acc.add(b));
        let lsub = total.kernel_basis();
        let spanning: Vec<_> = ksub.iter().chain(&lsub).cloned().collect();
        let quotient = quotient_action(f, n * r, &naive.residues, &spanning)?;
        let middle = self.with_residues(quotient.induced);
        Ok(ConvolutionData {
            mu: mu.clone(),
            naive,
            ksub,
            lsub,
            projection: quotient.projection,
            middle,
        })
    }

    /// Okubo form of `c_mu(F)`: `T = diag(t_1 (n times), ..., t_r (n times))`
    /// and `B` with block row `k` equal to `(A_1, ..., A_k + mu, ..., A_r)`.
    pub fn to_okubo(&self, mu: &F::Elem) -> OkuboSystem<F> {
        let n = self.size();
        let naive = self.naive_convolution(mu);
        let b = naive
            .residues
            .iter()
            .skip(1)
            .fold(naive.residues[0].clone(), |acc, m| acc.add(m));
        let tdiag = self
            .points
            .iter()
            .flat_map(|t| std::iter::repeat_n(t.clone(), n))
            .collect();
        OkuboSystem {
            field: self.field.clone(),
            tdiag,
            b,
        }
    }

    /// Okubo presentation of this very system, available when every row of
    /// the coefficient matrix has poles at one point at most (as for naive
    /// convolutions).
    pub fn as_okubo(&self) -> Option<OkuboSystem<F>> {
        let n = self.size();
        let mut tdiag = Vec::with_capacity(n);
        let mut b = Matrix::zeros(self.field.clone(), n, n);
        for row in 0..n {
            let mut owners = self
                .residues
                .iter()
                .enumerate()
                .filter(|(_, a)| a.row(row).iter().any(|x| !self.field.is_zero(x)));
            let owner = owners.next();
            if owners.next().is_some() {
                return None;
            }
            let k = owner.map_or(0, |(k, _)| k);
            tdiag.push(self.points[k].clone());
            for col in 0..n {
                b.set(row, col, self.residues[k].get(row, col).clone());
            }
        }
        Some(OkuboSystem {
            field: self.field.clone(),
            tdiag,
            b,
        })
    }

    /// Residues `A_i (x) 1 + 1 (x) B_i`; points must agree position by
    /// position.
    pub fn tensor(&self, other: &Self) -> Result<Self, FuchsianError> {
        if self.points != other.points {
            return Err(FuchsianError::PointMismatch);
        }
        let (n, m) = (self.size(), other.size());
        let id_n = Matrix::identity(self.field.clone(), n);
        let id_m = Matrix::identity(self.field.clone(), m);
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .map(|(a, b)| a.kronecker(&id_m).add(&id_n.kronecker(b)))
            .collect();
        Ok(self.with_residues(residues))
    }

    /// `Y' = -C^T Y`: residues `-A_i^T`.
    pub fn dual(&self) -> Self {
        self.with_residues(self.residues.iter().map(|a| a.transpose().neg()).collect())
    }

    /// `-(A_1 + ... + A_r)`.
    pub fn residue_at_infinity(&self) -> Matrix<F> {
        self.residues.iter().fold(
            Matrix::zeros(self.field.clone(), self.size(), self.size()),
            |acc, a| acc.sub(a),
        )
    }

    /// `C(t) = sum_i A_i / (t - t_i)` over `F(t)`.
    pub fn coefficient_matrix(&self) -> Matrix<RationalFunctionField<F>> {
        let k = RationalFunctionField::new(self.field.clone());
        let n = self.size();
        let mut c = Matrix::zeros(k.clone(), n, n);
        for (t, a) in self.points.iter().zip(&self.residues) {
            c = c.add(&a.map(k.clone(), |x| k.simple_pole(x.clone(), t)));
        }
        c
    }

    /// Entrywise change of field, re-validating the point condition.
    pub fn try_map<G: Field, E>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, E>,
    ) -> Result<Result<FuchsianSystem<G>, FuchsianError>, E> {
        let points = self.points.iter().map(&f).collect::<Result<Vec<_>, E>>()?;
        let residues = self
            .residues
            .iter()
            .map(|a| a.try_map(target.clone(), &f))
            .collect::<Result<Vec<_>, E>>()?;
        Ok(FuchsianSystem::new(target, points, residues))
    }
}

/// Output of [`FuchsianSystem::middle_convolution`].
#[derive(Debug, Clone)]
pub struct ConvolutionData<F: Field> {
    pub mu: F::Elem,
    /// `c_mu(F)`, of size `n r`.
    pub naive: FuchsianSystem<F>,
    /// Spanning vectors of `k = (+) k_k`.
    pub ksub: Vec<Vec<F::Elem>>,
    /// Basis of `l = ker(B_1 + ... + B_r)`.
    pub lsub: Vec<Vec<F::Elem>>,
    /// Projection from `F^{nr}` onto the quotient.
    pub projection: Matrix<F>,
    /// `mc_mu(F)`.
    pub middle: FuchsianSystem<F>,
}

/// `Y' = (t - T)^{-1} B Y` with `T` diagonal (repetitions allowed).
#[derive(Debug, Clone, PartialEq)]
pub struct OkuboSystem<F: Field> {
    field: F,
    tdiag: Vec<F::Elem>,
    b: Matrix<F>,
}

impl<F: Field> OkuboSystem<F> {
    pub fn new(field: F, tdiag: Vec<F::Elem>, b: Matrix<F>) -> Result<Self, FuchsianError> {
        if !b.is_square() || b.rows() != tdiag.len() {
            return Err(FuchsianError::ResidueShape {
                index: 0,
                rows: b.rows(),
                cols: b.cols(),
                size: tdiag.len(),
            });
        }
        Ok(OkuboSystem { field, tdiag, b })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn tdiag(&self) -> &[F::Elem] {
        &self.tdiag
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.tdiag.len()
    }

    /// `(t - T)^{-1}` over `F(t)`.
    pub fn resolvent(&self) -> Matrix<RationalFunctionField<F>> {
        let k = RationalFunctionField::new(self.field.clone());
        let n = self.size();
        Matrix::from_fn(k.clone(), n, n, |i, j| {
            if i == j {
                k.simple_pole(self.field.one(), &self.tdiag[i])
            } else {
                k.zero()
            }
        })
    }

    /// `(t - T)^{-1} B` over `F(t)`.
    pub fn coefficient_matrix(&self) -> Matrix<RationalFunctionField<F>> {
        let k = RationalFunctionField::new(self.field.clone());
        self.resolvent()
            .mul(&self.b.map(k.clone(), |x| k.constant(x.clone())))
    }

    pub fn try_map<G: Field, E>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, E>,
    ) -> Result<OkuboSystem<G>, E> {
        Ok(OkuboSystem {
            tdiag: self.tdiag.iter().map(&f).collect::<Result<_, E>>()?,
            b: self.b.try_map(target.clone(), &f)?,
            field: target,
        })
    }
}
