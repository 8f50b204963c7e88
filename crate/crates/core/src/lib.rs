//! Additive pairwise-comparison (PC) matrices and their geometry.
//!
//! An additive PC matrix `A` is skew-symmetric; it is consistent when every
//! triad deviation `Δ_ijk = a_ij + a_jk - a_ik` vanishes, i.e. when
//! `a_ij = s_i - s_j` for some score vector `s`. This crate provides:
//!
//! - [`pc`]: additive/multiplicative matrices, triad deviations, `I_alg`.
//! - [`exterior`]: wedge products, Plücker coordinates and relations on `G(2, n)`.
//! - [`embedding`]: vectors per alternative, pair subspaces `v_i ∧ v_j`, `I_geom`.
//! - [`coupling`]: the triad/pair incidence `C`, Gram matrix `M = CᵀC`, spectra.
//! - [`reduction`]: least-squares projection and descent on the `M`-form.
//! - [`twoform`]: constant 2-forms and discrete closedness.
//! - [`io`]: JSON/CSV file formats.
//!
//! Indices are 0-based throughout the API; files and diagnostics use 1-based.
//!
//! ```
//! use pcgrass::{AdditiveMatrix, DEFAULT_TOL};
//!
//! let a = AdditiveMatrix::new(&[[0.0, 1.0, 3.0], [-1.0, 0.0, 1.0], [-3.0, -1.0, 0.0]], DEFAULT_TOL)?;
//! assert_eq!(a.triad_deviation(0, 1, 2)?, -1.0);
//! let (projected, _) = pcgrass::project_consistent(&a);
//! assert!(projected.is_consistent(DEFAULT_TOL));
//! # Ok::<(), pcgrass::Error>(())
//! ```

pub mod coupling;
pub mod embedding;
pub mod error;
pub mod exterior;
pub mod index;
pub mod io;
pub mod pc;
pub mod reduction;
pub mod twoform;

pub use coupling::{CouplingMap, CouplingMatrix, SpectralDiagnosis, DEFAULT_RANK_TOL};
pub use embedding::{Convention, Embedding, EmbeddingKind, GeometricDeviation, PairField, PairSubspace};
pub use error::{Error, Result};
pub use exterior::{wedge, PluckerResidualSet, TwoVector, VectorN};
pub use pc::{AdditiveMatrix, DeviationVector, MultiplicativeMatrix, ScoreVector, DEFAULT_TOL};
pub use reduction::{
    nearest_consistent_oracle, project_consistent, reduce_iterative, ReduceOptions, ReductionTrajectory,
    StepRecord,
};
pub use twoform::{is_closed_discrete, TwoForm};

/// Library version, stamped into every CLI report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
