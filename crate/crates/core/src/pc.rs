//! Additive and multiplicative pairwise-comparison matrices.
//!
//! An additive matrix is stored as its strict upper triangle in
//! lexicographic pair order; the lower triangle is always the exact
//! negation, so skew-symmetry holds structurally.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{pair_count, pair_index, pairs, triad_count, triads};

/// Default absolute tolerance for validating skew-symmetry on construction.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Per-alternative scalar scores; `a_ij = s_i - s_j` for consistent matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { i, j: 0 });
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Triad deviations `a_ij + a_jk - a_ik`, one per lexicographic triad `i<j<k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationVector {
    n: usize,
    values: Vec<f64>,
}

impl DeviationVector {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        let expected = triad_count(n);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of squares, accumulated in lexicographic order.
    pub fn squared_norm(&self) -> f64 {
        self.values.iter().map(|d| d * d).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Skew-symmetric additive pairwise-comparison matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveMatrix {
    n: usize,
    upper: Vec<f64>,
}

fn check_square<R: AsRef<[f64]>>(raw: &[R]) -> Result<usize> {
    let n = raw.len();
    for (row, r) in raw.iter().enumerate() {
        let len = r.as_ref().len();
        if len != n {
            return Err(Error::NonSquare { row, len, expected: n });
        }
    }
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    for (i, r) in raw.iter().enumerate() {
        if let Some(j) = r.as_ref().iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { i, j });
        }
    }
    Ok(n)
}

impl AdditiveMatrix {
    /// Validates a dense `n x n` matrix and keeps its upper triangle.
    ///
    /// Fails with `NotSkewSymmetric` if `|a_ii| > tol` or `|a_ij + a_ji| > tol`.
    pub fn new<R: AsRef<[f64]>>(raw: &[R], tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        let n = check_square(raw)?;
        for i in 0..n {
            let row = raw[i].as_ref();
            if row[i].abs() > tol {
                return Err(Error::NotSkewSymmetric { i, j: i, sum: 2.0 * row[i] });
            }
            for j in i + 1..n {
                let sum = row[j] + raw[j].as_ref()[i];
                if sum.abs() > tol {
                    return Err(Error::NotSkewSymmetric { i, j, sum });
                }
            }
        }
        let upper = pairs(n).map(|(i, j)| raw[i].as_ref()[j]).collect();
        Ok(Self { n, upper })
    }

    /// Builds a matrix from its strict upper triangle in lexicographic order.
    pub fn from_upper(n: usize, upper: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        if upper.len() != pair_count(n) {
            return Err(Error::DimensionMismatch { expected: pair_count(n), found: upper.len() });
        }
        if let Some((pos, _)) = upper.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            let (i, j) = pairs(n).nth(pos).expect("position within pair range");
            return Err(Error::NonFiniteEntry { i, j });
        }
        Ok(Self { n, upper })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_upper(n, vec![0.0; pair_count(n)])
    }

    /// `a_ij = s_i - s_j`. Always consistent.
    pub fn from_scores(s: &ScoreVector) -> Result<Self> {
        let s = s.as_slice();
        if let Some(i) = s.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { i, j: 0 });
        }
        let n = s.len();
        Self::from_upper(n, pairs(n).map(|(i, j)| s[i] - s[j]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict upper triangle in lexicographic pair order.
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Entry `a_ij` (0-based). Panics if an index is out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.n, i, j)],
            std::cmp::Ordering::Greater => -self.upper[pair_index(self.n, j, i)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Elementwise `m_ij = exp(a_ij)`.
    pub fn to_multiplicative(&self) -> Result<MultiplicativeMatrix> {
        let n = self.n;
        let mut entries = vec![1.0; n * n];
        for (pos, (i, j)) in pairs(n).enumerate() {
            let a = self.upper[pos];
            let (up, down) = (a.exp(), (-a).exp());
            if !up.is_finite() || up == 0.0 {
                return Err(Error::Overflow { i, j });
            }
            if !down.is_finite() || down == 0.0 {
                return Err(Error::Overflow { i: j, j: i });
            }
            entries[i * n + j] = up;
            entries[j * n + i] = down;
        }
        Ok(MultiplicativeMatrix { n, entries })
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n {
            Err(Error::IndexOutOfRange { index, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `a_ij + a_jk + a_ki` for any indices, without ordering checks.
    ///
    /// Equals `a_ij + a_jk - a_ik`; swapping two indices flips the sign.
    #[inline]
    pub fn cyclic_sum(&self, i: usize, j: usize, k: usize) -> f64 {
        self.get(i, j) + self.get(j, k) - self.get(i, k)
    }

    /// `Δ_ijk = a_ij + a_jk - a_ik` for `i < j < k` (0-based).
    pub fn triad_deviation(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        if !(i < j && j < k) {
            return Err(Error::NonIncreasingTriad { i, j, k });
        }
        Ok(self.cyclic_sum(i, j, k))
    }

    pub fn all_triad_deviations(&self) -> DeviationVector {
        let values = triads(self.n).map(|(i, j, k)| self.cyclic_sum(i, j, k)).collect();
        DeviationVector { n: self.n, values }
    }

    /// `I_alg`: sum of squared deviations over lexicographic triads.
    pub fn algebraic_inconsistency(&self) -> f64 {
        triads(self.n)
            .map(|(i, j, k)| {
                let d = self.cyclic_sum(i, j, k);
                d * d
            })
            .sum()
    }

    pub fn max_abs_deviation(&self) -> f64 {
        triads(self.n).fold(0.0, |m, (i, j, k)| m.max(self.cyclic_sum(i, j, k).abs()))
    }

    pub fn is_consistent(&self, tol: f64) -> bool {
        self.max_abs_deviation() <= tol
    }

    /// Row-mean scores and the residual `a_ij - (s_i - s_j)`.
    pub fn recover_scores(&self) -> (ScoreVector, AdditiveMatrix) {
        let n = self.n;
        let scale = 1.0 / n as f64;
        let s: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).sum::<f64>() * scale)
            .collect();
        let residual = pairs(n)
            .zip(&self.upper)
            .map(|((i, j), a)| a - (s[i] - s[j]))
            .collect();
        (ScoreVector(s), AdditiveMatrix { n, upper: residual })
    }

    /// Frobenius distance over the full matrix (both triangles).
    pub fn frobenius_distance(&self, other: &AdditiveMatrix) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let half: f64 = self.upper.iter().zip(&other.upper).map(|(a, b)| (a - b).powi(2)).sum();
        Ok((2.0 * half).sqrt())
    }

    /// Relabels alternatives: entry `(i, j)` of the result is `a_{perm[i], perm[j]}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_index(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("index {} repeated in permutation", p + 1)));
            }
        }
        let upper = pairs(self.n).map(|(i, j)| self.get(perm[i], perm[j])).collect();
        Ok(Self { n: self.n, upper })
    }
}

/// Positive reciprocal matrix, `m_ij * m_ji = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicativeMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl MultiplicativeMatrix {
    /// Validates positivity, unit diagonal and reciprocity (relative `tol`).
    pub fn new<R: AsRef<[f64]>>(raw: &[R], tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        let n = check_square(raw)?;
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.as_ref().iter().enumerate() {
                if v <= 0.0 {
                    return Err(Error::NonPositiveEntry { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            let d = raw[i].as_ref()[i];
            if (d - 1.0).abs() > tol {
                return Err(Error::NotReciprocal { i, j: i, product: d * d });
            }
            for j in i + 1..n {
                let product = raw[i].as_ref()[j] * raw[j].as_ref()[i];
                if (product - 1.0).abs() > tol {
                    return Err(Error::NotReciprocal { i, j, product });
                }
            }
        }
        let entries = raw.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Elementwise `a_ij = ln(m_ij)` taken from the upper triangle.
    pub fn to_additive(&self) -> Result<AdditiveMatrix> {
        let n = self.n;
        let mut upper = Vec::with_capacity(pair_count(n));
        for (i, j) in pairs(n) {
            let m = self.get(i, j);
            if !(m > 0.0) {
                return Err(Error::NonPositiveEntry { i, j, value: m });
            }
            upper.push(m.ln());
        }
        AdditiveMatrix::from_upper(n, upper)
    }
}
