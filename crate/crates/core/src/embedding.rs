//! Embeddings of alternatives into `Rⁿ`, the pair subspaces
//! `w_ij = v_i ∧ v_j`, and geometric inconsistency.
//!
//! Two sign conventions are supported for the triad deviation:
//! [`Convention::Cyclic`] uses `w_ij + w_jk + w_ki`, which mirrors the
//! additive cocycle condition, and [`Convention::Paper`] uses
//! `w_ij + w_jk - w_ki` as displayed in the source formula.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{wedge, TwoVector, VectorN};
use crate::index::{pair_index, pairs, triads};
use crate::pc::{AdditiveMatrix, ScoreVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Cyclic,
    Paper,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Cyclic => "cyclic",
            Convention::Paper => "paper",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Convention::Cyclic),
            "paper" => Ok(Convention::Paper),
            other => Err(Error::InvalidArgument(format!("unknown convention '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Orthogonal,
    #[default]
    Planar,
    Custom,
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingKind::Orthogonal => "orthogonal",
            EmbeddingKind::Planar => "planar",
            EmbeddingKind::Custom => "custom",
        })
    }
}

impl FromStr for EmbeddingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orthogonal" => Ok(EmbeddingKind::Orthogonal),
            "planar" => Ok(EmbeddingKind::Planar),
            "custom" => Ok(EmbeddingKind::Custom),
            other => Err(Error::InvalidArgument(format!("unknown embedding kind '{other}'"))),
        }
    }
}

/// One vector per alternative, all of dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    kind: EmbeddingKind,
    vectors: Vec<VectorN>,
}

/// A pair subspace together with its degeneracy flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSubspace {
    pub pair: (usize, usize),
    pub value: TwoVector,
    /// `v_i ∧ v_j` vanished (parallel or zero vectors). Not fatal.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricDeviation {
    pub triad: (usize, usize, usize),
    pub value: TwoVector,
}

impl Embedding {
    /// `v_i = b_i e_i`. Every coefficient must be nonzero.
    pub fn orthogonal(b: &[f64]) -> Result<Self> {
        let n = b.len();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        for (index, &bi) in b.iter().enumerate() {
            if !bi.is_finite() {
                return Err(Error::NonFiniteEntry { i: index, j: 0 });
            }
            if bi == 0.0 {
                return Err(Error::ZeroCoefficient { index });
            }
        }
        let vectors = b.iter().enumerate().map(|(i, &bi)| VectorN::axis(n, i, bi)).collect();
        Ok(Self { kind: EmbeddingKind::Orthogonal, vectors })
    }

    /// Orthogonal embedding with `b_i = exp(s_i / 2)`.
    pub fn orthogonal_from_scores(s: &ScoreVector) -> Result<Self> {
        let b: Vec<f64> = s.as_slice().iter().map(|x| (x / 2.0).exp()).collect();
        Self::orthogonal(&b)
    }

    /// `v_i = (s_i, 1, 0, …, 0)`, so that `v_i ∧ v_j = (s_i - s_j) e_1 ∧ e_2`.
    pub fn planar(s: &ScoreVector) -> Result<Self> {
        let n = s.len();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        let vectors = s
            .as_slice()
            .iter()
            .map(|&si| {
                let mut v = vec![0.0; n];
                v[0] = si;
                v[1] = 1.0;
                VectorN::new(v)
            })
            .collect::<Result<_>>()?;
        Ok(Self { kind: EmbeddingKind::Planar, vectors })
    }

    /// Arbitrary vectors; there must be exactly `n` of them, each of length `n`.
    pub fn custom(vectors: Vec<VectorN>) -> Result<Self> {
        let n = vectors.len();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        Ok(Self { kind: EmbeddingKind::Custom, vectors })
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn vectors(&self) -> &[VectorN] {
        &self.vectors
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n() })
        }
    }

    /// `w_ij = v_i ∧ v_j` (0-based, `i != j`).
    pub fn pair_subspace(&self, i: usize, j: usize) -> Result<PairSubspace> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::RepeatedIndex { i, j });
        }
        let value = wedge(&self.vectors[i], &self.vectors[j])?;
        let degenerate = value.is_zero();
        Ok(PairSubspace { pair: (i, j), value, degenerate })
    }

    /// All `w_ij` for `i < j`, in lexicographic order.
    pub fn pair_subspaces(&self) -> PairField {
        let n = self.n();
        let wedges = pairs(n)
            .map(|(i, j)| wedge(&self.vectors[i], &self.vectors[j]).expect("equal dimensions"))
            .collect();
        PairField { n, dim: n, wedges }
    }

    pub fn geometric_deviation(
        &self,
        i: usize,
        j: usize,
        k: usize,
        convention: Convention,
    ) -> Result<GeometricDeviation> {
        for index in [i, j, k] {
            self.check_index(index)?;
        }
        if !(i < j && j < k) {
            return Err(Error::NonIncreasingTriad { i, j, k });
        }
        let w = |a: usize, b: usize| wedge(&self.vectors[a], &self.vectors[b]).expect("equal dimensions");
        let value = combine(&w(i, j), &w(j, k), &w(k, i), convention);
        Ok(GeometricDeviation { triad: (i, j, k), value })
    }

    /// `I_geom`: sum over lexicographic triads of `‖Δ_geom‖²`.
    pub fn geometric_inconsistency(&self, convention: Convention) -> f64 {
        self.pair_subspaces().geometric_inconsistency(convention)
    }
}

fn combine(wij: &TwoVector, wjk: &TwoVector, wki: &TwoVector, convention: Convention) -> TwoVector {
    let head = wij + wjk;
    match convention {
        Convention::Cyclic => &head + wki,
        Convention::Paper => &head - wki,
    }
}

/// A 2-vector attached to every pair `i < j` of `n` alternatives, living in
/// `Λ²(R^dim)`. `w_ji` is taken as `-w_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairField {
    n: usize,
    dim: usize,
    wedges: Vec<TwoVector>,
}

impl PairField {
    /// Pairwise planar realization of an arbitrary additive matrix:
    /// `w_ij = (a_ij, 1, 0, …) ∧ e_2 = a_ij e_1 ∧ e_2`.
    ///
    /// For consistent matrices this coincides with the planar embedding of
    /// the recovered scores; for inconsistent ones the cyclic triad
    /// deviation is `Δ_ijk e_1 ∧ e_2`, so cyclic `I_geom` equals `I_alg`.
    pub fn planar_from_matrix(a: &AdditiveMatrix) -> Self {
        let n = a.n();
        let e2 = VectorN::axis(n, 1, 1.0);
        let wedges = pairs(n)
            .map(|(i, j)| {
                let mut u = vec![0.0; n];
                u[0] = a.get(i, j);
                u[1] = 1.0;
                wedge(&VectorN::new(u).expect("finite entries"), &e2).expect("equal dimensions")
            })
            .collect();
        Self { n, dim: n, wedges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension of the 2-vectors.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> TwoVector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.wedges[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.wedges[pair_index(self.n, j, i)],
            std::cmp::Ordering::Equal => TwoVector::zeros(self.dim),
        }
    }

    /// `(i, j, w_ij)` for `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &TwoVector)> {
        pairs(self.n).zip(&self.wedges).map(|((i, j), w)| (i, j, w))
    }

    pub fn deviation(&self, i: usize, j: usize, k: usize, convention: Convention) -> TwoVector {
        combine(&self.get(i, j), &self.get(j, k), &self.get(k, i), convention)
    }

    pub fn deviations(&self, convention: Convention) -> Vec<GeometricDeviation> {
        triads(self.n)
            .map(|(i, j, k)| GeometricDeviation {
                triad: (i, j, k),
                value: self.deviation(i, j, k, convention),
            })
            .collect()
    }

    pub fn geometric_inconsistency(&self, convention: Convention) -> f64 {
        triads(self.n)
            .map(|(i, j, k)| self.deviation(i, j, k, convention).squared_norm())
            .sum()
    }
}
