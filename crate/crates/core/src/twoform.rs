//! Constant-coefficient 2-forms `ω = Σ p_kl dx_k ∧ dx_l`.
//!
//! A PC matrix is attached to `ω = dx_1 ∧ dx_2` evaluated against the
//! planar vectors `(s_i, 1, 0, …)`. Closedness is read discretely: the
//! matrix is a 1-cochain on the complete graph and it is closed when its
//! coboundary, the family of triad deviations, vanishes.

use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::exterior::{TwoVector, VectorN};
use crate::index::pairs;
use crate::pc::AdditiveMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    coefficients: TwoVector,
    matrix_view: Vec<f64>,
}

impl TwoForm {
    pub fn from_plucker(p: TwoVector) -> Self {
        let n = p.n();
        let mut matrix_view = vec![0.0; n * n];
        for (pos, (k, l)) in pairs(n).enumerate() {
            let c = p.coords()[pos];
            matrix_view[k * n + l] = c;
            matrix_view[l * n + k] = -c;
        }
        Self { coefficients: p, matrix_view }
    }

    /// `dx_1 ∧ dx_2` on `Rⁿ`.
    pub fn planar(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        Ok(Self::from_plucker(TwoVector::basis(n, 0, 1)))
    }

    pub fn n(&self) -> usize {
        self.coefficients.n()
    }

    pub fn coefficients(&self) -> &TwoVector {
        &self.coefficients
    }

    /// Entry `P_kl` of the skew matrix view.
    pub fn matrix_entry(&self, k: usize, l: usize) -> f64 {
        self.matrix_view[k * self.n() + l]
    }

    fn check(&self, u: &VectorN, v: &VectorN) -> Result<()> {
        for w in [u, v] {
            if w.dim() != self.n() {
                return Err(Error::DimensionMismatch { expected: self.n(), found: w.dim() });
            }
        }
        Ok(())
    }

    /// `ω(u, v) = Σ_{k<l} p_kl (u_k v_l - u_l v_k)`.
    pub fn evaluate(&self, u: &VectorN, v: &VectorN) -> Result<f64> {
        self.check(u, v)?;
        let (u, v) = (u.as_slice(), v.as_slice());
        Ok(pairs(self.n())
            .zip(self.coefficients.coords())
            .map(|((k, l), p)| p * (u[k] * v[l] - u[l] * v[k]))
            .sum())
    }

    /// `uᵀPv` through the matrix view.
    pub fn evaluate_matrix(&self, u: &VectorN, v: &VectorN) -> Result<f64> {
        self.check(u, v)?;
        let n = self.n();
        let (u, v) = (u.as_slice(), v.as_slice());
        Ok((0..n)
            .map(|k| u[k] * (0..n).map(|l| self.matrix_view[k * n + l] * v[l]).sum::<f64>())
            .sum())
    }
}

/// Discrete closedness: every triad deviation within `tol`.
pub fn is_closed_discrete(a: &AdditiveMatrix, tol: f64) -> bool {
    a.is_consistent(tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRow {
    pub i: usize,
    pub j: usize,
    pub omega: f64,
    pub a_ij: f64,
}

/// `ω(v_i, v_j)` against `a_ij` for `i < j`, with `ω = dx_1 ∧ dx_2` and the
/// planar embedding of the row-mean scores. Rows agree exactly when the
/// matrix is consistent.
pub fn evaluation_table(a: &AdditiveMatrix) -> Result<Vec<EvaluationRow>> {
    let (scores, _) = a.recover_scores();
    let embedding = Embedding::planar(&scores)?;
    let omega = TwoForm::planar(a.n())?;
    pairs(a.n())
        .map(|(i, j)| {
            let v = embedding.vectors();
            Ok(EvaluationRow { i, j, omega: omega.evaluate(&v[i], &v[j])?, a_ij: a.get(i, j) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::wedge;
    use crate::pc::{ScoreVector, DEFAULT_TOL};
    use proptest::prelude::*;

    fn vn(v: &[f64]) -> VectorN {
        VectorN::new(v.to_vec()).unwrap()
    }

    #[test]
    fn form_examples() {
        let w = TwoForm::from_plucker(TwoVector::new(3, vec![1.0, 0.0, 0.0]).unwrap());
        let expect = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
        for k in 0..3 {
            for l in 0..3 {
                assert_eq!(w.matrix_entry(k, l), expect[k][l]);
            }
        }
        let z = TwoForm::from_plucker(TwoVector::zeros(4));
        assert!((0..16).all(|i| z.matrix_view[i] == 0.0));

        let p = wedge(&vn(&[1.0, 2.0, 3.0, 4.0]), &vn(&[5.0, 6.0, 7.0, 8.0])).unwrap();
        let w = TwoForm::from_plucker(p);
        let upper: Vec<f64> = pairs(4).map(|(k, l)| w.matrix_entry(k, l)).collect();
        assert_eq!(upper, vec![-4.0, -8.0, -12.0, -4.0, -8.0, -4.0]);
    }

    #[test]
    fn evaluation_examples() {
        let w = TwoForm::planar(3).unwrap();
        assert_eq!(w.evaluate(&vn(&[1.0, 0.0, 0.0]), &vn(&[0.0, 1.0, 0.0])).unwrap(), 1.0);
        let u = vn(&[0.3, -1.2, 4.0]);
        assert_eq!(w.evaluate(&u, &u).unwrap(), 0.0);

        let e = Embedding::planar(&ScoreVector::new(vec![1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(w.evaluate(&e.vectors()[0], &e.vectors()[1]).unwrap(), 1.0);
        assert!(matches!(w.evaluate(&vn(&[1.0, 0.0]), &u), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closedness_examples() {
        let paper = AdditiveMatrix::new(&[[0.0, 1.0, 0.0], [-1.0, 0.0, -1.0], [0.0, 1.0, 0.0]], DEFAULT_TOL).unwrap();
        let prime = AdditiveMatrix::new(&[[0.0, 1.0, 3.0], [-1.0, 0.0, 1.0], [-3.0, -1.0, 0.0]], DEFAULT_TOL).unwrap();
        assert!(is_closed_discrete(&paper, 1e-9));
        assert!(!is_closed_discrete(&prime, 1e-9));
        assert!(is_closed_discrete(&AdditiveMatrix::zeros(3).unwrap(), 1e-9));

        let table = evaluation_table(&paper).unwrap();
        assert!(table.iter().all(|r| (r.omega - r.a_ij).abs() <= 1e-15));
        let table = evaluation_table(&prime).unwrap();
        assert!(table.iter().any(|r| (r.omega - r.a_ij).abs() > 0.1));
    }

    fn form_and_vectors() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
        (2usize..7).prop_flat_map(|n| {
            let v = prop::collection::vec(-5.0f64..5.0, n);
            (prop::collection::vec(-5.0f64..5.0, n * (n - 1) / 2), v.clone(), v.clone(), v)
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_bilinear_and_antisymmetric(
            (p, u, v, w) in form_and_vectors(),
            alpha in -3.0f64..3.0,
            beta in -3.0f64..3.0,
        ) {
            let n = u.len();
            let form = TwoForm::from_plucker(TwoVector::new(n, p).unwrap());
            let (u, v, w) = (vn(&u), vn(&v), vn(&w));
            let lhs = form.evaluate(&u.combine(alpha, &w, beta).unwrap(), &v).unwrap();
            let rhs = alpha * form.evaluate(&u, &v).unwrap() + beta * form.evaluate(&w, &v).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs().max(rhs.abs())));
            prop_assert_eq!(form.evaluate(&u, &v).unwrap(), -form.evaluate(&v, &u).unwrap());
            let via_matrix = form.evaluate_matrix(&u, &v).unwrap();
            let direct = form.evaluate(&u, &v).unwrap();
            prop_assert!((via_matrix - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
        }

        #[test]
        fn planar_form_reproduces_consistent_entries(s in prop::collection::vec(-10.0f64..10.0, 2..9)) {
            let a = AdditiveMatrix::from_scores(&ScoreVector::new(s).unwrap()).unwrap();
            for row in evaluation_table(&a).unwrap() {
                prop_assert!((row.omega - row.a_ij).abs() <= 1e-12);
            }
        }
    }
}
