//! Density matrices, random ensembles, and bipartite structure.

use crate::error::{domain, Error, Result};
use crate::matcalc::{eigh, kron, CMatrix, Hermitian, Spectrum, C64, PSD_TOL};
use crate::rng;
use crate::MAX_DIM;

/// Tolerance for `Tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-10;

/// A validated quantum state: Hermitian, PSD, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Hermitian,
    label: Option<String>,
}

impl DensityMatrix {
    /// Validates every state invariant.
    ///
    /// Eigenvalues in `[-1e-10, 0)` are clamped to zero and the matrix is
    /// renormalized, unless they are at roundoff level. Anything further from
    /// the state space is rejected with an error naming the failed invariant.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let dim = entries.nrows();
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.ncols(),
            });
        }
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let h = Hermitian::new(entries)?;
        let tr = h.trace();
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::Trace(tr));
        }
        let e = eigh(&h);
        let min = e.spectrum.min();
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        // below this the eigensolver cannot tell the value from zero, and
        // rebuilding the matrix would add more error than it removes
        let roundoff = 64.0 * f64::EPSILON * e.spectrum.max().abs();
        if min < -roundoff {
            let clamped = e.apply(|x| x.max(0.0));
            let t = clamped.trace();
            return Ok(DensityMatrix::from_trusted(clamped.scale(1.0 / t)));
        }
        Ok(DensityMatrix::from_trusted(h))
    }

    /// Wraps a matrix that is a state by construction (convex mixtures,
    /// channel outputs already validated, normalized Gram matrices).
    pub(crate) fn from_trusted(mat: Hermitian) -> Self {
        DensityMatrix { mat, label: None }
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        DensityMatrix::new(Hermitian::from_real_diagonal(probs).into_matrix())
    }

    /// Real-entry state, rows given explicitly.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
        }
        DensityMatrix::new(crate::matcalc::real_matrix(rows))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix::from_trusted(Hermitian::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        self.mat.matrix()
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.mat
    }

    pub fn spectrum(&self) -> Spectrum {
        self.mat.eigenvalues()
    }

    pub fn purity(&self) -> f64 {
        let m = self.matrix();
        m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `λ·a + (1−λ)·b`. Panics on dimension mismatch, callers check first.
    pub fn mix(lambda: f64, a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
        assert_eq!(a.dim(), b.dim(), "mixing states of different dimension");
        DensityMatrix::from_trusted(a.mat.scale(lambda).add(&b.mat.scale(1.0 - lambda)))
    }

    /// `U ρ U†` for a unitary `U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix::from_trusted(self.mat.conjugate_by(u))
    }

    pub(crate) fn check_same_dim(&self, other: &DensityMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// Normalized projector `|φ⟩⟨φ|`.
pub fn pure_state(amplitudes: &[C64]) -> Result<DensityMatrix> {
    let n = amplitudes.len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
        return domain("pure state needs a nonzero finite vector");
    }
    let m = CMatrix::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj() / norm_sqr);
    Ok(DensityMatrix::from_trusted(Hermitian::from_hermitian_part(&m)))
}

pub fn pure_state_real(amplitudes: &[f64]) -> Result<DensityMatrix> {
    let v: Vec<C64> = amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect();
    pure_state(&v)
}

/// `G·G† / Tr(G·G†)` with `G` a seeded `dim × rank` Ginibre matrix.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    if rank == 0 || rank > dim {
        return domain(format!("rank must lie in 1..={dim}, got {rank}"));
    }
    let mut r = rng::seeded(seed);
    let g = rng::ginibre(dim, rank, &mut r);
    let gram = Hermitian::from_hermitian_part(&(&g * g.adjoint()));
    let t = gram.trace();
    Ok(DensityMatrix::from_trusted(gram.scale(1.0 / t)))
}

/// `a ⊗ b`; `a` is the slow index.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let d = a.dim() * b.dim();
    if d > MAX_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(DensityMatrix::from_trusted(Hermitian::from_hermitian_part(&kron(
        a.matrix(),
        b.matrix(),
    ))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Factorization `dim = dim_a · dim_b`, basis index `i_a · dim_b + i_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteShape {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteShape {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        BipartiteShape { dim_a, dim_b }
    }

    pub fn qubits() -> Self {
        BipartiteShape { dim_a: 2, dim_b: 2 }
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        if self.dim_a == 0 || self.dim_b == 0 || self.dim() != dim {
            return domain(format!(
                "bipartite shape {}x{} does not factor dimension {dim}",
                self.dim_a, self.dim_b
            ));
        }
        Ok(())
    }
}

/// Reduced state on the kept subsystem.
pub fn partial_trace(rho: &DensityMatrix, shape: BipartiteShape, keep: Subsystem) -> Result<DensityMatrix> {
    shape.check(rho.dim())?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    let m = rho.matrix();
    let out = match keep {
        Subsystem::A => CMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()),
        Subsystem::B => CMatrix::from_fn(db, db, |k, l| (0..da).map(|i| m[(i * db + k, i * db + l)]).sum()),
    };
    Ok(DensityMatrix::from_trusted(Hermitian::from_hermitian_part(&out)))
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    pure_state_real(&[s, 0.0, 0.0, s]).expect("fixed vector")
}
