use super::{AlgebraError, Field, Matrix};

/// Bounds for the search for an invertible intertwiner inside the solution
/// space of `X A_i = B_i X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugacySearch {
    /// Integer coefficients range over `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Largest number of basis elements combined at once.
    pub max_terms: usize,
}

impl Default for ConjugacySearch {
    fn default() -> Self {
        ConjugacySearch {
            coeff_bound: 3,
            max_terms: 2,
        }
    }
}

/// Finds an invertible `X` with `X A_i X^-1 = B_i` for all `i`.
///
/// Returns `Ok(None)` when some pair has different characteristic
/// polynomials or no nonzero intertwiner exists (the tuples are certainly
/// not conjugate) and `Err(Exhausted)` when intertwiners exist but
/// none of the enumerated combinations is invertible.
pub fn simultaneous_conjugacy<F: Field>(
    a: &[Matrix<F>],
    b: &[Matrix<F>],
    search: ConjugacySearch,
) -> Result<Option<Matrix<F>>, AlgebraError> {
    if a.len() != b.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "tuples of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    let Some(first) = a.first() else {
        return Err(AlgebraError::DimensionMismatch("empty tuples".into()));
    };
    let n = first.rows();
    if a.iter().chain(b).any(|m| m.rows() != n || m.cols() != n) {
        return Err(AlgebraError::DimensionMismatch(format!(
            "all matrices must be {n}x{n}"
        )));
    }
    if a.iter()
        .zip(b)
        .any(|(ai, bi)| ai.charpoly() != bi.charpoly())
    {
        return Ok(None);
    }
    let field = first.ring().clone();
    let basis = intertwiners(&field, n, a, b);
    if basis.is_empty() {
        return Ok(None);
    }

    let valid =
        |x: &Matrix<F>| x.is_invertible() && a.iter().zip(b).all(|(ai, bi)| x.mul(ai) == bi.mul(x));
    for x in &basis {
        if valid(x) {
            return Ok(Some(x.clone()));
        }
    }
    let coeffs: Vec<i64> = (1..=search.coeff_bound).flat_map(|c| [c, -c]).collect();
    for terms in 2..=search.max_terms.min(basis.len()) {
        let mut found = None;
        for_each_subset(basis.len(), terms, &mut |subset| {
            for_each_tuple(coeffs.len(), terms, &mut |choice| {
                let x = subset
                    .iter()
                    .zip(choice)
                    .fold(Matrix::zeros(field.clone(), n, n), |acc, (&idx, &ci)| {
                        acc.add(&basis[idx].scale(&field.from_int(coeffs[ci])))
                    });
                if valid(&x) {
                    found = Some(x);
                    return true;
                }
                false
            })
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Err(AlgebraError::Exhausted { dim: basis.len() })
}

/// Basis of `{X : X A_i = B_i X for all i}`.
fn intertwiners<F: Field>(field: &F, n: usize, a: &[Matrix<F>], b: &[Matrix<F>]) -> Vec<Matrix<F>> {
    // Unknown X_{pq} sits at column p*n + q. Equation (i, j) of pair k:
    // sum_q X_{iq} A_{qj} - sum_p B_{ip} X_{pj} = 0.
    let mut rows = Vec::with_capacity(a.len() * n * n);
    for (ak, bk) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..n {
                let mut eq = vec![field.zero(); n * n];
                for q in 0..n {
                    eq[i * n + q] = field.add(&eq[i * n + q], ak.get(q, j));
                }
                for p in 0..n {
                    eq[p * n + j] = field.sub(&eq[p * n + j], bk.get(i, p));
                }
                rows.push(eq);
            }
        }
    }
    Matrix::from_rows(field.clone(), rows)
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::new(field.clone(), n, n, v))
        .collect()
}

/// Calls `f` on each increasing `k`-subset of `0..n` until it returns true.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Calls `f` on each `k`-tuple over `0..n` in lexicographic order until it
/// returns true.
fn for_each_tuple(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut cur = vec![0; k];
    loop {
        if f(&cur) {
            return true;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < n {
                break;
            }
            cur[pos] = 0;
        }
    }
}
