//! Distances and fidelities between finite-dimensional quantum states.
//!
//! The crate covers three families of state metrics:
//!
//! - closed forms: trace metric, Uhlmann fidelity, Bures metric, the
//!   A-fidelity `[Tr(√ρ√σ)]²`, and the Schatten family
//!   `D_p(ρ, σ) = [Tr |ρ^{1/p} − σ^{1/p}|^p]^{1/p}`;
//! - the measurement supremum `d_p(ρ, σ)`, the largest p-norm of
//!   p-th-root probability differences over projective measurements,
//!   computed by a multi-start simplex search over orthonormal bases;
//! - property campaigns (contractivity under CPT maps, joint convexity,
//!   weak majorization, geometric entanglement) that check or refute the
//!   expected behaviour of each family on random instances.
//!
//! Everything is dense and double precision. Dimensions up to 16 are
//! supported; the optimizers are tuned for 2 to 4.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod closed;
pub mod entanglement;
pub mod error;
pub mod io;
pub mod lab;
pub mod majorization;
pub mod matcalc;
pub mod optim;
pub mod rng;
pub mod states;
pub mod supremum;

pub use channels::{KrausChannel, NamedChannel};
pub use closed::{a_fidelity, brother_metric, bures_metric, fidelity, trace_metric, MetricId};
pub use error::{Error, Result};
pub use matcalc::{CMatrix, Hermitian, Spectrum, C64};
pub use states::{BipartiteShape, DensityMatrix, Subsystem};
pub use supremum::{dp_supremum, DpResult, ProjectionFamily, SupOptions};

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 16;
