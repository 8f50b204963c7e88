//! Wedge products in `Λ²(Rⁿ)`, Plücker coordinates and the quadratic
//! Plücker relations cutting out `G(2, n)`.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{pair_count, pair_index, pairs, quads};

/// Finite vector in `Rⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorN(Vec<f64>);

impl VectorN {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if let Some(i) = components.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { i, j: 0 });
        }
        Ok(Self(components))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// The `i`-th standard basis vector scaled by `scale`.
    pub fn axis(n: usize, i: usize, scale: f64) -> Self {
        let mut v = vec![0.0; n];
        v[i] = scale;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self(self.0.iter().map(|x| c * x).collect())
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &VectorN, beta: f64) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(x, y)| alpha * x + beta * y).collect()))
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Coordinates of a 2-vector over `{e_k ∧ e_l : k < l}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoVector {
    n: usize,
    coords: Vec<f64>,
}

impl TwoVector {
    pub fn new(n: usize, coords: Vec<f64>) -> Result<Self> {
        same_dim(pair_count(n), coords.len())?;
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { i, j: 0 });
        }
        Ok(Self { n, coords })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, coords: vec![0.0; pair_count(n)] }
    }

    /// The basis element `e_k ∧ e_l` (0-based, `k < l`).
    pub fn basis(n: usize, k: usize, l: usize) -> Self {
        let mut p = Self::zeros(n);
        p.coords[pair_index(n, k, l)] = 1.0;
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `p_kl` for `k < l` (0-based); antisymmetric extension otherwise.
    pub fn get(&self, k: usize, l: usize) -> f64 {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.coords[pair_index(self.n, k, l)],
            std::cmp::Ordering::Greater => -self.coords[pair_index(self.n, l, k)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    pub fn squared_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.squared_norm().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { n: self.n, coords: self.coords.iter().map(|x| c * x).collect() }
    }

    fn zip_with(&self, other: &TwoVector, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        same_dim(self.n, other.n)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { n: self.n, coords })
    }

    pub fn try_add(&self, other: &TwoVector) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &TwoVector) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Evaluates every quadruple Plücker relation.
    pub fn plucker_residuals(&self) -> PluckerResidualSet {
        let residuals = quads(self.n)
            .map(|[k, l, m, q]| {
                let r = self.get(k, l) * self.get(m, q) - self.get(k, m) * self.get(l, q)
                    + self.get(k, q) * self.get(l, m);
                ([k, l, m, q], r)
            })
            .collect();
        PluckerResidualSet { n: self.n, residuals }
    }

    /// True iff every Plücker residual is within `tol * max(1, ‖p‖²)`.
    ///
    /// The zero 2-vector passes; it is not a Grassmannian point, which
    /// [`normalize_grassmann`](Self::normalize_grassmann) reports.
    pub fn is_decomposable(&self, tol: f64) -> bool {
        let bound = tol * self.squared_norm().max(1.0);
        self.plucker_residuals().max_abs() <= bound
    }

    /// Unit-norm representative whose first nonzero coordinate is positive.
    pub fn normalize_grassmann(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroTwoVector);
        }
        let lead = self.coords.iter().copied().find(|&c| c != 0.0).unwrap_or(1.0);
        let scale = lead.signum() / norm;
        Ok(self.scaled(scale))
    }

    /// Euclidean distance between the sign-fixed unit representatives.
    pub fn chordal_distance(&self, other: &TwoVector) -> Result<f64> {
        same_dim(self.n, other.n)?;
        let (p, q) = (self.normalize_grassmann()?, other.normalize_grassmann()?);
        Ok(p.try_sub(&q)?.norm())
    }
}

impl Neg for &TwoVector {
    type Output = TwoVector;

    fn neg(self) -> TwoVector {
        self.scaled(-1.0)
    }
}

impl Add for &TwoVector {
    type Output = TwoVector;

    /// Panics on dimension mismatch; use [`TwoVector::try_add`] otherwise.
    fn add(self, rhs: &TwoVector) -> TwoVector {
        self.try_add(rhs).expect("2-vector dimensions differ")
    }
}

impl Sub for &TwoVector {
    type Output = TwoVector;

    fn sub(self, rhs: &TwoVector) -> TwoVector {
        self.try_sub(rhs).expect("2-vector dimensions differ")
    }
}

/// `u ∧ v`, with `p_kl = u_k v_l - u_l v_k`.
pub fn wedge(u: &VectorN, v: &VectorN) -> Result<TwoVector> {
    same_dim(u.dim(), v.dim())?;
    let (u, v) = (u.as_slice(), v.as_slice());
    let n = u.len();
    let coords = pairs(n).map(|(k, l)| u[k] * v[l] - u[l] * v[k]).collect();
    Ok(TwoVector { n, coords })
}

/// Residual of each relation `p_kl p_mq - p_km p_lq + p_kq p_lm` for `k<l<m<q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PluckerResidualSet {
    n: usize,
    residuals: Vec<([usize; 4], f64)>,
}

impl PluckerResidualSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `(quadruple, residual)` pairs, quadruples 0-based and lexicographic.
    pub fn residuals(&self) -> &[([usize; 4], f64)] {
        &self.residuals
    }

    pub fn get(&self, quad: [usize; 4]) -> Option<f64> {
        self.residuals.iter().find(|(q, _)| *q == quad).map(|(_, r)| *r)
    }

    pub fn len(&self) -> usize {
        self.residuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, (_, r)| m.max(r.abs()))
    }
}
