//! Majorization comparators and the spectral inequalities built on them.

use crate::error::{domain, Result};
use crate::matcalc::{mat_power, Hermitian, Spectrum};
use crate::states::{partial_trace, BipartiteShape, DensityMatrix, Subsystem};

/// Prefix gaps below this count as violations.
pub const PREFIX_TOL: f64 = 1e-10;

/// Result of comparing two descending vectors prefix by prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    /// The candidate majorizer.
    pub lhs: Spectrum,
    pub rhs: Spectrum,
    /// `Σ_{i≤k} lhs_i − Σ_{i≤k} rhs_i`.
    pub prefix_gaps: Vec<f64>,
    pub holds: bool,
}

impl MajorizationReport {
    pub fn worst_gap(&self) -> f64 {
        self.prefix_gaps.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// First prefix length (1-based) where the comparison fails.
    pub fn first_failure(&self) -> Option<usize> {
        self.prefix_gaps.iter().position(|&g| g < -PREFIX_TOL).map(|k| k + 1)
    }
}

/// Does `x` weakly majorize `y` (`y ≺_w x`)? Shorter inputs are zero-padded.
pub fn weak_majorizes(x: &Spectrum, y: &Spectrum) -> MajorizationReport {
    let n = x.len().max(y.len());
    let (x, y) = (x.padded(n), y.padded(n));
    let mut gaps = Vec::with_capacity(n);
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in x.values().iter().zip(y.values()) {
        sx += a;
        sy += b;
        gaps.push(sx - sy);
    }
    let holds = gaps.iter().all(|&g| g >= -PREFIX_TOL);
    MajorizationReport {
        lhs: x,
        rhs: y,
        prefix_gaps: gaps,
        holds,
    }
}

/// Full majorization `y ≺ x`: weak majorization plus equal totals.
pub fn majorizes(x: &Spectrum, y: &Spectrum) -> bool {
    weak_majorizes(x, y).holds && (x.sum() - y.sum()).abs() <= PREFIX_TOL
}

/// `λ(|ρ^{1/p} − σ^{1/p}|^p)`, descending.
pub fn root_difference_spectrum(rho: &DensityMatrix, sigma: &DensityMatrix, p: f64) -> Result<Spectrum> {
    rho.check_same_dim(sigma)?;
    let diff = if p == 1.0 {
        rho.hermitian().sub(sigma.hermitian())
    } else {
        mat_power(rho.hermitian(), 1.0 / p)?.sub(&mat_power(sigma.hermitian(), 1.0 / p)?)
    };
    Ok(diff.eigenvalues().map(|x| x.abs().powf(p)))
}

/// Weak majorization between exponents `p ≤ q`, with the induced ordering of trace sums.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDifferenceReport {
    /// `λ(|ρ^{1/p} − σ^{1/p}|^p)` against `λ(|ρ^{1/q} − σ^{1/q}|^q)`.
    pub majorization: MajorizationReport,
    /// `D_p(ρ, σ)^p`.
    pub dp_pow_p: f64,
    /// `D_q(ρ, σ)^q`.
    pub dq_pow_q: f64,
    /// `D_q^q ≤ D_p^p + 1e-9`.
    pub norm_order_holds: bool,
}

impl RootDifferenceReport {
    pub fn holds(&self) -> bool {
        self.majorization.holds && self.norm_order_holds
    }
}

/// Checks `λ(|ρ^{1/q} − σ^{1/q}|^q) ≺_w λ(|ρ^{1/p} − σ^{1/p}|^p)` for `1 ≤ p ≤ q`.
pub fn root_difference_check(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    p: f64,
    q: f64,
) -> Result<RootDifferenceReport> {
    if !(p >= 1.0) || !(q >= p) || !q.is_finite() {
        return domain(format!("need 1 <= p <= q, got p = {p}, q = {q}"));
    }
    let lp = root_difference_spectrum(rho, sigma, p)?;
    let lq = root_difference_spectrum(rho, sigma, q)?;
    let (dp_pow_p, dq_pow_q) = (lp.sum(), lq.sum());
    let majorization = weak_majorizes(&lp, &lq);
    Ok(RootDifferenceReport {
        majorization,
        dp_pow_p,
        dq_pow_q,
        norm_order_holds: dq_pow_q <= dp_pow_p + 1e-9,
    })
}

fn check_psd_pair(a: &Hermitian, b: &Hermitian) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(crate::Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    for m in [a, b] {
        let min = m.eigenvalues().min();
        if min < -crate::matcalc::PSD_TOL {
            return Err(crate::Error::NotPsd(min));
        }
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return domain(format!("power must lie in (0, 1], got {r}"));
    }
    Ok(())
}

/// Power-function case of Ando's inequality: is
/// `λ(|A^r − B^r|) ≺_w λ(|A − B|^r)` for PSD `A, B` and `0 < r ≤ 1`?
///
/// The report's `lhs` is `λ(|A − B|^r)`, the expected majorizer.
pub fn ando_check(a: &Hermitian, b: &Hermitian, r: f64) -> Result<MajorizationReport> {
    check_r(r)?;
    check_psd_pair(a, b)?;
    let outer = a.sub(b).eigenvalues().map(|x| x.abs().powf(r));
    let inner = if r == 1.0 {
        a.sub(b).eigenvalues().map(f64::abs)
    } else {
        mat_power(a, r)?.sub(&mat_power(b, r)?).eigenvalues().map(f64::abs)
    };
    Ok(weak_majorizes(&outer, &inner))
}

/// `Tr |A^r − B^r|^q − Tr |A − B|^{rq}`, nonpositive when Ando's inequality
/// holds and `q ≥ 1`.
pub fn ando_schatten_gap(a: &Hermitian, b: &Hermitian, r: f64, q: f64) -> Result<f64> {
    check_r(r)?;
    check_psd_pair(a, b)?;
    if !(q >= 1.0) {
        return domain(format!("Schatten exponent must be >= 1, got {q}"));
    }
    let lhs: f64 = mat_power(a, r)?
        .sub(&mat_power(b, r)?)
        .eigenvalues()
        .values()
        .iter()
        .map(|x| x.abs().powf(q))
        .sum();
    let rhs: f64 = a
        .sub(b)
        .eigenvalues()
        .values()
        .iter()
        .map(|x| x.abs().powf(r * q))
        .sum();
    Ok(lhs - rhs)
}

/// Outcome of the reduced-state majorization test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NielsenVerdict {
    ConsistentWithSeparable,
    EntangledDetected,
}

/// Separable states are majorized by both marginals; failure of either
/// comparison certifies entanglement. Passing proves nothing.
pub fn nielsen_criterion(rho: &DensityMatrix, shape: BipartiteShape) -> Result<NielsenVerdict> {
    shape.check(rho.dim())?;
    let joint = rho.spectrum();
    let ra = partial_trace(rho, shape, Subsystem::A)?.spectrum();
    let rb = partial_trace(rho, shape, Subsystem::B)?.spectrum();
    if majorizes(&ra, &joint) && majorizes(&rb, &joint) {
        Ok(NielsenVerdict::ConsistentWithSeparable)
    } else {
        Ok(NielsenVerdict::EntangledDetected)
    }
}
