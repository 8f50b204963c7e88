//! Triad/pair coupling coefficients and the Gram matrix `M = CᵀC`.
//!
//! `C` is the signed incidence of triads on pairs read off
//! `Δ_ijk = a_ij + a_jk - a_ik`: column `(i,j,k)` holds `+1` at `(i,j)`,
//! `+1` at `(j,k)` and `-1` at `(i,k)`. Consequently `Δ = Cᵀa` for the
//! upper-triangle entries `a`, and `I_geom = ΔᵀMΔ = ‖CΔ‖²`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{pair_count, pair_index, triad_index, triads};
use crate::pc::DeviationVector;

/// Largest `n` for which [`CouplingMatrix::build`] materializes dense `M`.
pub const DEFAULT_MAX_DENSE_N: usize = 24;

/// Default relative eigenvalue threshold for numerical rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Sparse signed incidence, three nonzeros per triad column.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMap {
    n: usize,
    columns: Vec<[(usize, f64); 3]>,
}

impl CouplingMap {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall { n, min: 3 });
        }
        let columns = triads(n)
            .map(|(i, j, k)| {
                [
                    (pair_index(n, i, j), 1.0),
                    (pair_index(n, j, k), 1.0),
                    (pair_index(n, i, k), -1.0),
                ]
            })
            .collect();
        Ok(Self { n, columns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        pair_count(self.n)
    }

    pub fn triad_count(&self) -> usize {
        self.columns.len()
    }

    /// Coefficient `C_kl^{ijk}` (0-based, both tuples increasing).
    pub fn get(&self, pair: (usize, usize), triad: (usize, usize, usize)) -> f64 {
        let p = pair_index(self.n, pair.0, pair.1);
        let t = triad_index(self.n, triad.0, triad.1, triad.2);
        self.columns[t].iter().find(|(q, _)| *q == p).map_or(0.0, |(_, c)| *c)
    }

    /// Nonzero entries as `(pair position, triad position, coefficient)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(t, col)| col.iter().map(move |&(p, c)| (p, t, c)))
    }

    /// `C·d`: maps triad-space values to pair space.
    pub fn apply(&self, d: &[f64]) -> Result<Vec<f64>> {
        if d.len() != self.triad_count() {
            return Err(Error::DimensionMismatch { expected: self.triad_count(), found: d.len() });
        }
        let mut out = vec![0.0; self.pair_count()];
        for (col, &dt) in self.columns.iter().zip(d) {
            for &(p, c) in col {
                out[p] += c * dt;
            }
        }
        Ok(out)
    }

    /// `Cᵀ·x`: maps pair-space values to triad space. With `x` the upper
    /// triangle of an additive matrix this yields its triad deviations.
    pub fn apply_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.pair_count() {
            return Err(Error::DimensionMismatch { expected: self.pair_count(), found: x.len() });
        }
        Ok(self.columns.iter().map(|col| col.iter().map(|&(p, c)| c * x[p]).sum()).collect())
    }
}

/// Dense symmetric `T × T` Gram matrix of the incidence columns, possibly
/// shifted by `λI`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    n: usize,
    lambda: f64,
    values: DMatrix<f64>,
}

impl CouplingMatrix {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_cap(n, DEFAULT_MAX_DENSE_N)
    }

    pub fn build_with_cap(n: usize, max_n: usize) -> Result<Self> {
        if n > max_n {
            return Err(Error::UnsupportedSize { n, allowed: "n <= dense cap" });
        }
        let map = CouplingMap::new(n)?;
        let t = map.triad_count();
        // triads incident to each pair, with signs
        let mut incident: Vec<Vec<(usize, f64)>> = vec![Vec::new(); map.pair_count()];
        for (p, tri, c) in map.nonzeros() {
            incident[p].push((tri, c));
        }
        let mut values = DMatrix::zeros(t, t);
        for column in &incident {
            for &(s, cs) in column {
                for &(r, cr) in column {
                    values[(s, r)] += cs * cr;
                }
            }
        }
        Ok(Self { n, lambda: 0.0, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.values.nrows()
    }

    /// Diagonal shift applied by [`regularize`](Self::regularize), 0 otherwise.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.values[(s, t)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// `dᵀMd`.
    pub fn quadratic_form(&self, d: &DeviationVector) -> Result<f64> {
        if d.len() != self.size() || d.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.size(), found: d.len() });
        }
        let v = DVector::from_column_slice(d.values());
        Ok(v.dot(&(&self.values * &v)))
    }

    /// `M + λI` with `λ > 0`.
    pub fn regularize(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonPositiveLambda(lambda));
        }
        let mut values = self.values.clone();
        for i in 0..values.nrows() {
            values[(i, i)] += lambda;
        }
        Ok(Self { n: self.n, lambda: self.lambda + lambda, values })
    }

    /// Symmetric eigendecomposition with rank and kernel.
    pub fn diagnose(&self, rank_tol: f64) -> Result<SpectralDiagnosis> {
        if !(rank_tol > 0.0) {
            return Err(Error::InvalidTolerance(rank_tol));
        }
        let size = self.size();
        let eig = SymmetricEigen::new(self.values.clone());
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let lambda_max = eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        let threshold = rank_tol * lambda_max;
        let rank = eigenvalues.iter().filter(|&&l| l > threshold).count();
        let kernel_basis = order
            .iter()
            .filter(|&&i| eig.eigenvalues[i] <= threshold)
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        Ok(SpectralDiagnosis {
            n: self.n,
            size,
            lambda: self.lambda,
            rank,
            degenerate: rank < size,
            eigenvalues,
            kernel_basis,
        })
    }
}

/// Spectrum of a coupling matrix, eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDiagnosis {
    pub n: usize,
    pub size: usize,
    pub lambda: f64,
    pub rank: usize,
    pub degenerate: bool,
    pub eigenvalues: Vec<f64>,
    pub kernel_basis: Vec<Vec<f64>>,
}

impl SpectralDiagnosis {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Expected numerical rank of `M`, `(n-1)(n-2)/2`.
pub fn expected_rank(n: usize) -> usize {
    n.saturating_sub(1) * n.saturating_sub(2) / 2
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::triad_count;
    use proptest::prelude::*;

    #[test]
    fn coefficient_examples() {
        let c = CouplingMap::new(3).unwrap();
        assert_eq!(c.triad_count(), 1);
        assert_eq!(c.get((0, 1), (0, 1, 2)), 1.0);
        assert_eq!(c.get((1, 2), (0, 1, 2)), 1.0);
        assert_eq!(c.get((0, 2), (0, 1, 2)), -1.0);
        assert_eq!(CouplingMap::new(4).unwrap().nonzeros().count(), 12);
        assert_eq!(CouplingMap::new(2), Err(Error::TooSmall { n: 2, min: 3 }));
    }

    #[test]
    fn gram_examples() {
        let m = CouplingMatrix::build(3).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.get(0, 0), 3.0);

        let m = CouplingMatrix::build(4).unwrap();
        let (t123, t124, t134) = (triad_index(4, 0, 1, 2), triad_index(4, 0, 1, 3), triad_index(4, 0, 2, 3));
        assert!((0..4).all(|i| m.get(i, i) == 3.0));
        assert_eq!(m.get(t123, t124), 1.0);
        assert_eq!(m.get(t123, t134), -1.0);
        assert!(matches!(CouplingMatrix::build(2), Err(Error::TooSmall { .. })));
        assert!(matches!(CouplingMatrix::build_with_cap(10, 8), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn quadratic_form_examples() {
        let m = CouplingMatrix::build(3).unwrap();
        assert_eq!(m.quadratic_form(&DeviationVector::new(3, vec![-1.0]).unwrap()).unwrap(), 3.0);
        let m4 = CouplingMatrix::build(4).unwrap();
        assert_eq!(m4.quadratic_form(&DeviationVector::new(4, vec![0.0; 4]).unwrap()).unwrap(), 0.0);
        let d = DeviationVector::new(4, vec![1.0; 4]).unwrap();
        let via_m = m4.quadratic_form(&d).unwrap();
        let cd = CouplingMap::new(4).unwrap().apply(d.values()).unwrap();
        assert_eq!(via_m, cd.iter().map(|x| x * x).sum::<f64>());
        assert!(matches!(m.quadratic_form(&d), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn diagnosis_examples() {
        let d = CouplingMatrix::build(3).unwrap().diagnose(DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.rank, d.degenerate), (1, false));
        let d = CouplingMatrix::build(4).unwrap().diagnose(DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.rank, d.size, d.degenerate, d.kernel_dim()), (3, 4, true, 1));
        let d = CouplingMatrix::build(5).unwrap().diagnose(DEFAULT_RANK_TOL).unwrap();
        assert_eq!((d.rank, d.size), (6, 10));
    }

    #[test]
    fn regularization_examples() {
        let m4 = CouplingMatrix::build(4).unwrap();
        let r = m4.regularize(0.01).unwrap();
        assert!((r.diagnose(DEFAULT_RANK_TOL).unwrap().min_eigenvalue() - 0.01).abs() < 1e-10);
        assert_eq!(m4.regularize(0.0), Err(Error::NonPositiveLambda(0.0)));
        assert_eq!(CouplingMatrix::build(3).unwrap().regularize(1.0).unwrap().get(0, 0), 4.0);
    }

    #[test]
    fn structural_laws_up_to_eight() {
        for n in 3..=8 {
            let m = CouplingMatrix::build(n).unwrap();
            let a = m.as_matrix();
            assert_eq!(a, &a.transpose());
            let d = m.diagnose(DEFAULT_RANK_TOL).unwrap();
            assert!(d.min_eigenvalue() >= -1e-10 * d.max_eigenvalue());
            assert_eq!(d.rank, expected_rank(n));
            assert_eq!(d.degenerate, n >= 4);
            assert_eq!(d.rank + d.kernel_dim(), d.size);

            // eigen-solver accuracy contract and kernel orthonormality
            let eig = SymmetricEigen::new(a.clone());
            for (i, lambda) in eig.eigenvalues.iter().enumerate() {
                let x = eig.eigenvectors.column(i);
                assert!((a * x - x * *lambda).norm() <= 1e-8 * d.max_eigenvalue());
            }
            for (i, u) in d.kernel_basis.iter().enumerate() {
                for (j, v) in d.kernel_basis.iter().enumerate() {
                    let dot: f64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() <= 1e-9);
                }
            }
            let shifted = m.regularize(0.5).unwrap().diagnose(DEFAULT_RANK_TOL).unwrap();
            for (x, y) in shifted.eigenvalues.iter().zip(&d.eigenvalues) {
                assert!((x - y - 0.5).abs() <= 1e-9);
            }
        }
    }

    proptest! {
        #[test]
        fn gram_identity((n, d) in (3usize..8).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(-10.0f64..10.0, triad_count(n)))
        })) {
            let m = CouplingMatrix::build(n).unwrap();
            let dv = DeviationVector::new(n, d.clone()).unwrap();
            let q = m.quadratic_form(&dv).unwrap();
            let cd = CouplingMap::new(n).unwrap().apply(&d).unwrap();
            let norm2: f64 = cd.iter().map(|x| x * x).sum();
            prop_assert!((q - norm2).abs() <= 1e-9 * norm2.max(1e-300));
        }

        #[test]
        fn realizable_deviations_avoid_kernel((n, a) in (4usize..8).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(-10.0f64..10.0, pair_count(n)))
        })) {
            let map = CouplingMap::new(n).unwrap();
            let d = map.apply_transpose(&a).unwrap();
            let diag = CouplingMatrix::build(n).unwrap().diagnose(DEFAULT_RANK_TOL).unwrap();
            let scale = d.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
            for k in &diag.kernel_basis {
                let dot: f64 = k.iter().zip(&d).map(|(x, y)| x * y).sum();
                prop_assert!(dot.abs() <= 1e-9 * scale);
            }
        }
    }
}
