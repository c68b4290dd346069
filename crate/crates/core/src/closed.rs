//! Closed-form distances and fidelities.
//!
//! Fidelity is unsquared throughout: `F(ρ, σ) = Tr √(√ρ σ √ρ)`, so for pure
//! states `F = |⟨φ|ψ⟩|` while the A-fidelity equals `|⟨φ|ψ⟩|⁴`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::matcalc::{mat_power, schatten_norm, trace, Hermitian};
use crate::states::DensityMatrix;

/// Names one of the supported state metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum MetricId {
    #[serde(rename = "trace")]
    Trace,
    #[serde(rename = "bures")]
    Bures,
    #[serde(rename = "fidelity")]
    Fidelity,
    #[serde(rename = "a_fidelity")]
    AFidelity,
    /// Schatten family `D_p`.
    #[serde(rename = "D_p")]
    Brother { p: f64 },
    /// Measurement supremum `d_p`.
    #[serde(rename = "d_p")]
    Supremum { p: f64 },
}

impl MetricId {
    pub fn p(&self) -> Option<f64> {
        match self {
            MetricId::Brother { p } | MetricId::Supremum { p } => Some(*p),
            _ => None,
        }
    }

    /// Fidelities grow as states approach each other; distances shrink.
    pub fn is_similarity(&self) -> bool {
        matches!(self, MetricId::Fidelity | MetricId::AFidelity)
    }

    pub fn validate(&self) -> Result<()> {
        match self.p() {
            Some(p) if !(p >= 1.0) || !p.is_finite() => domain(format!("metric exponent must be >= 1, got {p}")),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for MetricId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricId::Trace => write!(f, "trace"),
            MetricId::Bures => write!(f, "bures"),
            MetricId::Fidelity => write!(f, "fidelity"),
            MetricId::AFidelity => write!(f, "a_fidelity"),
            MetricId::Brother { p } => write!(f, "D_{p}"),
            MetricId::Supremum { p } => write!(f, "d_{p}"),
        }
    }
}

fn same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return domain(format!("metric exponent must be >= 1, got {p}"));
    }
    Ok(())
}

fn sqrt_state(rho: &DensityMatrix) -> Hermitian {
    mat_power(rho.hermitian(), 0.5).expect("states are PSD")
}

/// `½ Tr |ρ − σ|`.
pub fn trace_metric(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let diff = rho.hermitian().sub(sigma.hermitian());
    Ok(0.5 * diff.eigenvalues().values().iter().map(|x| x.abs()).sum::<f64>())
}

/// Uhlmann fidelity `Tr √(√ρ σ √ρ)`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let s = sqrt_state(rho);
    let inner = Hermitian::from_hermitian_part(&(s.matrix() * sigma.matrix() * s.matrix()));
    let lam = inner.eigenvalues();
    let floor = 64.0 * f64::EPSILON * lam.max().max(0.0);
    let f: f64 = lam.values().iter().filter(|&&x| x > floor).map(|x| x.sqrt()).sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Fidelity through the trace norm of `√ρ √σ`.
pub fn fidelity_product_form(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    schatten_norm(&(sqrt_state(rho).matrix() * sqrt_state(sigma).matrix()), 1.0)
}

/// `√(2 − 2F)` with the radicand clamped at 0.
pub fn bures_metric(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok((2.0 - 2.0 * f).max(0.0).sqrt())
}

/// `Tr(√ρ √σ)`, real and in `[0, 1]`.
pub fn root_overlap(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    Ok(trace(&(sqrt_state(rho).matrix() * sqrt_state(sigma).matrix())).re)
}

/// A-fidelity `[Tr(√ρ √σ)]²`.
pub fn a_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let t = root_overlap(rho, sigma)?.clamp(0.0, 1.0);
    Ok(t * t)
}

/// `Tr |ρ^{1/p} − σ^{1/p}|^p`, i.e. `D_p(ρ, σ)^p`.
///
/// Computed from the eigenvalues of the Hermitian difference.
pub fn brother_metric_pow(rho: &DensityMatrix, sigma: &DensityMatrix, p: f64) -> Result<f64> {
    same_dim(rho, sigma)?;
    check_p(p)?;
    let diff = if p == 1.0 {
        rho.hermitian().sub(sigma.hermitian())
    } else {
        let r = mat_power(rho.hermitian(), 1.0 / p)?;
        let s = mat_power(sigma.hermitian(), 1.0 / p)?;
        r.sub(&s)
    };
    Ok(diff.eigenvalues().values().iter().map(|x| x.abs().powf(p)).sum())
}

/// `D_p(ρ, σ) = [Tr |ρ^{1/p} − σ^{1/p}|^p]^{1/p}`.
pub fn brother_metric(rho: &DensityMatrix, sigma: &DensityMatrix, p: f64) -> Result<f64> {
    let s = brother_metric_pow(rho, sigma, p)?;
    Ok(if p == 1.0 { s } else { s.powf(1.0 / p) })
}

/// Evaluates any closed-form metric. `d_p` needs an optimizer and is
/// rejected here; see [`crate::supremum::dp_supremum`].
pub fn evaluate_closed(metric: &MetricId, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    metric.validate()?;
    match *metric {
        MetricId::Trace => trace_metric(rho, sigma),
        MetricId::Bures => bures_metric(rho, sigma),
        MetricId::Fidelity => fidelity(rho, sigma),
        MetricId::AFidelity => a_fidelity(rho, sigma),
        MetricId::Brother { p } => brother_metric(rho, sigma, p),
        MetricId::Supremum { .. } => domain("d_p has no closed form; use the supremum optimizer"),
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::channels::random_channel;
    use crate::rng;
    use crate::states::random_density;
    use proptest::prelude::*;

    fn triple(dim: usize, seed: u64) -> [DensityMatrix; 3] {
        std::array::from_fn(|k| {
            random_density(dim, 1 + (seed as usize + k) % dim, rng::derive_seed(seed, k as u64)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn brother_metric_axioms(dim in 2usize..=3, pi in 0usize..4, seed in any::<u64>()) {
            let p = [1.0, 1.5, 2.0, 3.0][pi];
            let [r, s, t] = triple(dim, seed);
            let d = |a: &DensityMatrix, b: &DensityMatrix| brother_metric(a, b, p).unwrap();
            prop_assert!((d(&r, &s) - d(&s, &r)).abs() <= 1e-10);
            prop_assert!(d(&r, &t) <= d(&r, &s) + d(&s, &t) + 1e-9);
            prop_assert!(d(&r, &r) <= 1e-8);
            if trace_metric(&r, &s).unwrap() >= 1e-8 {
                prop_assert!(d(&r, &s) > 0.0);
            }
        }

        #[test]
        fn brother_metric_unitary_invariance(dim in 2usize..=4, p in 1.0f64..4.0, seed in any::<u64>()) {
            let [r, s, _] = triple(dim, seed);
            let u = rng::haar_unitary(dim, &mut rng::seeded(seed));
            let moved = brother_metric(&r.conjugate_by(&u), &s.conjugate_by(&u), p).unwrap();
            prop_assert!((moved - brother_metric(&r, &s, p).unwrap()).abs() <= 1e-9);
        }

        #[test]
        fn closed_form_identities(dim in 2usize..=4, seed in any::<u64>()) {
            let [r, s, _] = triple(dim, seed);
            prop_assert!((brother_metric(&r, &s, 1.0).unwrap() - 2.0 * trace_metric(&r, &s).unwrap()).abs() <= 1e-9);
            let d2 = brother_metric(&r, &s, 2.0).unwrap();
            prop_assert!((d2 * d2 - (2.0 - 2.0 * root_overlap(&r, &s).unwrap())).abs() <= 1e-9);
        }

        #[test]
        fn a_fidelity_never_drops_under_channels(dim in 2usize..=3, env in 1usize..=3, seed in any::<u64>()) {
            let [r, s, _] = triple(dim, seed);
            let ch = random_channel(dim, env, seed).unwrap();
            let after = a_fidelity(&ch.apply(&r).unwrap(), &ch.apply(&s).unwrap()).unwrap();
            prop_assert!(after >= a_fidelity(&r, &s).unwrap() - 1e-9);
        }

        #[test]
        fn fidelity_forms_agree(dim in 2usize..=4, seed in any::<u64>()) {
            let [r, s, _] = triple(dim, seed);
            prop_assert!((fidelity(&r, &s).unwrap() - fidelity_product_form(&r, &s).unwrap()).abs() <= 1e-9);
        }
    }
}
