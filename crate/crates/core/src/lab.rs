//! Joint-convexity and contractivity experiments.
//!
//! Gaps are signed so that a positive value is a violation for distances:
//! `M(mixture) − mixture of M` for convexity, `M(T ρ, T σ) − M(ρ, σ)` for
//! contractivity. Fidelities are similarities, so for them the expected sign
//! flips and a negative contractivity gap is the violation.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{random_channel, KrausChannel};
use crate::closed::{brother_metric, evaluate_closed, trace_metric, MetricId};
use crate::error::{domain, Error, Result};
use crate::matcalc::{eigh, is_psd, CMatrix, Hermitian};
use crate::rng::{self, derive_seed};
use crate::states::{pure_state, random_density, DensityMatrix};
use crate::supremum::{divergence_term, dp_supremum, ProjectionFamily, SupOptions};

/// Gaps must exceed this to count as a witness.
pub const WITNESS_THRESHOLD: f64 = 1e-6;

/// Step of the mixing-weight grid used with the two-point protocol.
pub const LAMBDA_STEP: f64 = 0.05;

/// A stored counterexample that can be re-evaluated from its own fields.
///
/// Convexity witnesses hold `[ρ1, σ1, ρ2, σ2]` and a mixing weight;
/// contractivity witnesses hold `[ρ, σ]` and a channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub metric: MetricId,
    pub states: Vec<DensityMatrix>,
    pub channel: Option<KrausChannel>,
    pub lambda: Option<f64>,
    pub gap: f64,
    /// Seed handed to every `d_p` evaluation.
    pub seed: u64,
    pub trial: u64,
}

impl Witness {
    /// Recomputes the gap from the stored inputs.
    pub fn recompute(&self) -> Result<f64> {
        match (&self.channel, self.lambda, self.states.as_slice()) {
            (None, Some(l), [r1, s1, r2, s2]) => joint_convexity_gap(&self.metric, r1, s1, r2, s2, l, self.seed),
            (Some(ch), None, [r, s]) => contractivity_gap(&self.metric, r, s, ch, self.seed),
            _ => Err(Error::Format(
                "witness needs either four states and a lambda, or two states and a channel".into(),
            )),
        }
    }

    /// True when the recomputed gap is within `tol` of the stored one.
    pub fn reproduces(&self, tol: f64) -> Result<bool> {
        Ok((self.recompute()? - self.gap).abs() <= tol)
    }
}

/// Evaluates any metric, running the supremum search for `d_p`.
pub fn metric_value(metric: &MetricId, rho: &DensityMatrix, sigma: &DensityMatrix, seed: u64) -> Result<f64> {
    metric_value_with(metric, rho, sigma, &SupOptions::for_dim(rho.dim(), seed))
}

fn metric_value_with(metric: &MetricId, rho: &DensityMatrix, sigma: &DensityMatrix, opts: &SupOptions) -> Result<f64> {
    match metric {
        MetricId::Supremum { p } => Ok(dp_supremum(rho, sigma, *p, opts)?.value),
        m => evaluate_closed(m, rho, sigma),
    }
}

/// The quantity whose convexity is in question: `M^p` for the two
/// p-families, `M` itself for trace and Bures.
fn convexity_exponent(metric: &MetricId) -> Result<f64> {
    metric.validate()?;
    match metric {
        MetricId::Brother { p } | MetricId::Supremum { p } => Ok(*p),
        MetricId::Trace | MetricId::Bures => Ok(1.0),
        m => domain(format!(
            "joint convexity is not defined here for the similarity measure {m}"
        )),
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return domain(format!("mixing weight must lie in [0, 1], got {lambda}"));
    }
    Ok(())
}

/// `M(λρ1+(1−λ)ρ2, λσ1+(1−λ)σ2)^e − λ·M(ρ1,σ1)^e − (1−λ)·M(ρ2,σ2)^e`
/// with `e = p` for `D_p`/`d_p` and `e = 1` for trace and Bures.
pub fn joint_convexity_gap(
    metric: &MetricId,
    rho1: &DensityMatrix,
    sigma1: &DensityMatrix,
    rho2: &DensityMatrix,
    sigma2: &DensityMatrix,
    lambda: f64,
    seed: u64,
) -> Result<f64> {
    let e = convexity_exponent(metric)?;
    check_lambda(lambda)?;
    for s in [sigma1, rho2, sigma2] {
        rho1.check_same_dim(s)?;
    }
    if lambda == 0.0 || lambda == 1.0 {
        return Ok(0.0);
    }
    let powered = |r: &DensityMatrix, s: &DensityMatrix| -> Result<f64> {
        let v = metric_value(metric, r, s, seed)?;
        Ok(if e == 1.0 { v } else { v.powf(e) })
    };
    let mixed = powered(
        &DensityMatrix::mix(lambda, rho1, rho2),
        &DensityMatrix::mix(lambda, sigma1, sigma2),
    )?;
    Ok(mixed - lambda * powered(rho1, sigma1)? - (1.0 - lambda) * powered(rho2, sigma2)?)
}

/// Starting bases for the input-side search, pulled back from the
/// output-side optimum: eigenbases of each `T*(X_k)` and of a generic
/// combination of them.
pub fn pullback_starts(channel: &KrausChannel, family: &ProjectionFamily) -> Result<Vec<CMatrix>> {
    let pulled = family
        .projections()
        .iter()
        .map(|x| channel.adjoint_apply(&Hermitian::from_hermitian_part(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut starts: Vec<CMatrix> = pulled.iter().map(|y| eigh(y).basis).collect();
    let mut combo = Hermitian::from_hermitian_part(&CMatrix::zeros(channel.dim(), channel.dim()));
    for (k, y) in pulled.iter().enumerate() {
        combo = combo.add(&y.scale(1.0 + k as f64 * std::f64::consts::FRAC_1_SQRT_2));
    }
    starts.push(eigh(&combo).basis);
    Ok(starts)
}

/// `M(T ρ, T σ) − M(ρ, σ)`.
///
/// For `d_p` both sides share the seed and the input side also starts from
/// the pullback of the output side's optimal family, so an optimizer miss on
/// the input side cannot pose as a violation as easily.
pub fn contractivity_gap(
    metric: &MetricId,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    channel: &KrausChannel,
    seed: u64,
) -> Result<f64> {
    metric.validate()?;
    rho.check_same_dim(sigma)?;
    if channel.dim_in() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.dim_in(),
            found: rho.dim(),
        });
    }
    let (tr, ts) = (channel.apply(rho)?, channel.apply(sigma)?);
    match metric {
        MetricId::Supremum { p } => {
            let mut opts = SupOptions::for_dim(rho.dim(), seed);
            let out = dp_supremum(&tr, &ts, *p, &opts)?;
            opts.extra_starts = pullback_starts(channel, &out.family)?;
            let inp = dp_supremum(rho, sigma, *p, &opts)?;
            Ok(out.value - inp.value)
        }
        m => Ok(evaluate_closed(m, &tr, &ts)? - evaluate_closed(m, rho, sigma)?),
    }
}

/// Random state for the searches: pure with the given flag, otherwise of
/// uniformly random rank.
fn sample_state<R: Rng>(dim: usize, pure: bool, g: &mut R) -> Result<DensityMatrix> {
    let rank = if pure { 1 } else { g.random_range(1..=dim) };
    random_density(dim, rank, g.random())
}

/// `[ρ1, σ1, ρ2, σ2]` and λ for one random convexity trial.
///
/// With `diagonal` all four states are diagonal in a common basis, drawn
/// flat from the probability simplex.
pub fn random_convexity_tuple(trial_seed: u64, dims: &[usize], diagonal: bool) -> Result<(Vec<DensityMatrix>, f64)> {
    let mut g = rng::seeded(trial_seed);
    let dim = pick_dim(dims, &mut g)?;
    let states = if diagonal {
        (0..4)
            .map(|_| DensityMatrix::from_diagonal(&rng::flat_simplex(dim, &mut g)))
            .collect::<Result<Vec<_>>>()?
    } else {
        let pure = g.random_bool(0.5);
        (0..4)
            .map(|_| sample_state(dim, pure, &mut g))
            .collect::<Result<Vec<_>>>()?
    };
    Ok((states, g.random::<f64>()))
}

/// `(ρ, σ, T)` for one random contractivity trial; the channel's
/// environment dimension is drawn from `{1, 2, 3}`.
pub fn random_contractivity_triple(
    trial_seed: u64,
    dims: &[usize],
) -> Result<(DensityMatrix, DensityMatrix, KrausChannel)> {
    let mut g = rng::seeded(trial_seed);
    let dim = pick_dim(dims, &mut g)?;
    let pure = g.random_bool(0.5);
    let rho = sample_state(dim, pure, &mut g)?;
    let sigma = sample_state(dim, pure, &mut g)?;
    let env = g.random_range(1..=3);
    let ch = random_channel(dim, env, g.random())?;
    Ok((rho, sigma, ch))
}

fn pick_dim<R: Rng>(dims: &[usize], g: &mut R) -> Result<usize> {
    if dims.is_empty() {
        return domain("at least one dimension is required");
    }
    Ok(dims[g.random_range(0..dims.len())])
}

/// Runs `eval` on trial indices `0..count` and returns the hit with the
/// lowest index. Work is sharded across the rayon pool in blocks, so the
/// answer does not depend on scheduling.
fn first_hit<F>(count: u64, eval: F) -> Result<Option<Witness>>
where
    F: Fn(u64) -> Result<Option<Witness>> + Sync,
{
    let block = 64 * rayon::current_num_threads() as u64;
    let mut start = 0;
    while start < count {
        let end = (start + block).min(count);
        let hits = (start..end).into_par_iter().map(&eval).collect::<Result<Vec<_>>>()?;
        if let Some(w) = hits.into_iter().flatten().next() {
            return Ok(Some(w));
        }
        start = end;
    }
    Ok(None)
}

/// Diagonal two-point protocol: `diag(0.2, 0.8)` against `diag(0.4, 0.6)`,
/// paired with its coordinate swap both ways round, on the λ grid.
pub fn protocol_tuples() -> Vec<(Vec<DensityMatrix>, f64)> {
    let d = |a: f64| DensityMatrix::from_diagonal(&[a, 1.0 - a]).expect("valid diagonal state");
    let (r1, s1, r2, s2) = (d(0.2), d(0.4), d(0.8), d(0.6));
    let pairings = [
        vec![r1.clone(), s1.clone(), r2.clone(), s2.clone()],
        vec![r1, s1, s2, r2],
    ];
    let steps = (1.0 / LAMBDA_STEP).round() as usize;
    let mut out = Vec::new();
    for states in pairings {
        for k in 0..=steps {
            out.push((states.clone(), k as f64 * LAMBDA_STEP));
        }
    }
    out
}

/// Searches for a joint-convexity violation with gap above
/// [`WITNESS_THRESHOLD`].
///
/// The protocol tuples come first (trial indices `0..P`), then `trials`
/// random tuples in dimensions 2 and 3. For `d_p` every tuple is diagonal,
/// where the supremum is exact. All `d_p` evaluations use `seed`.
pub fn find_convexity_violation(metric: &MetricId, trials: u64, seed: u64) -> Result<Option<Witness>> {
    convexity_exponent(metric)?;
    if trials == 0 {
        return domain("at least one trial is required");
    }
    let protocol = protocol_tuples();
    let np = protocol.len() as u64;
    let diagonal = matches!(metric, MetricId::Supremum { .. });
    first_hit(np + trials, |t| {
        let (states, lambda) = if t < np {
            protocol[t as usize].clone()
        } else {
            random_convexity_tuple(derive_seed(seed, t - np), &[2, 3], diagonal)?
        };
        let gap = joint_convexity_gap(metric, &states[0], &states[1], &states[2], &states[3], lambda, seed)?;
        Ok((gap > WITNESS_THRESHOLD).then_some(Witness {
            metric: *metric,
            states,
            channel: None,
            lambda: Some(lambda),
            gap,
            seed,
            trial: t,
        }))
    })
}

/// Exponents swept by [`convexity_survey`] away from the convex cases.
pub const SURVEY_EXPONENTS: [f64; 6] = [1.2, 1.5, 1.8, 2.5, 3.0, 4.0];

/// Outcome of one exponent in a survey.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub p: f64,
    pub witness: Option<Witness>,
}

/// Runs [`find_convexity_violation`] at each exponent in `ps` for the
/// `D_p` family (`supremum = false`) or the `d_p` family. Reports what was
/// found per exponent; an empty entry says nothing beyond the budget.
pub fn convexity_survey(supremum: bool, ps: &[f64], trials: u64, seed: u64) -> Result<Vec<SurveyEntry>> {
    ps.iter()
        .map(|&p| {
            let metric = if supremum {
                MetricId::Supremum { p }
            } else {
                MetricId::Brother { p }
            };
            Ok(SurveyEntry {
                p,
                witness: find_convexity_violation(&metric, trials, seed)?,
            })
        })
        .collect()
}

/// Which monotonicity failure a contractivity search looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `D_p(Tρ, Tσ) > D_p(ρ, σ)`: contractivity fails.
    Increase,
    /// `D_p(Tρ, Tσ) < D_p(ρ, σ)`: expansiveness fails.
    Decrease,
}

/// Random search for a `D_p` contractivity violation over dimensions 2–3.
///
/// Returns the lowest-index trial whose gap exceeds [`WITNESS_THRESHOLD`]
/// in the requested direction. The stored gap keeps its sign.
pub fn find_contractivity_violation(p: f64, trials: u64, seed: u64, direction: Direction) -> Result<Option<Witness>> {
    let metric = MetricId::Brother { p };
    metric.validate()?;
    if trials == 0 {
        return domain("at least one trial is required");
    }
    first_hit(trials, |t| {
        let (rho, sigma, ch) = random_contractivity_triple(derive_seed(seed, t), &[2, 3])?;
        let gap = contractivity_gap(&metric, &rho, &sigma, &ch, seed)?;
        let hit = match direction {
            Direction::Increase => gap > WITNESS_THRESHOLD,
            Direction::Decrease => gap < -WITNESS_THRESHOLD,
        };
        Ok(hit.then(|| Witness {
            metric,
            states: vec![rho, sigma],
            channel: Some(ch),
            lambda: None,
            gap,
            seed,
            trial: t,
        }))
    })
}

/// Per-trial outcome of a property campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialGap {
    pub trial: u64,
    pub dim: usize,
    /// Signed so that positive means the expected inequality failed.
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub trials: Vec<TrialGap>,
    pub tolerance: f64,
}

impl CampaignSummary {
    pub fn worst(&self) -> Option<&TrialGap> {
        self.trials
            .iter()
            .max_by(|a, b| a.violation.total_cmp(&b.violation).then(b.trial.cmp(&a.trial)))
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| t.violation > self.tolerance).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Contractivity of any metric on random `(ρ, σ, T)` triples. For
/// fidelities the violation is `F(ρ, σ) − F(Tρ, Tσ)` (expansiveness).
pub fn contractivity_campaign(
    metric: &MetricId,
    trials: u64,
    seed: u64,
    dims: &[usize],
    tolerance: f64,
) -> Result<CampaignSummary> {
    metric.validate()?;
    let sign = if metric.is_similarity() { -1.0 } else { 1.0 };
    let gaps = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (rho, sigma, ch) = random_contractivity_triple(derive_seed(seed, t), dims)?;
            let gap = contractivity_gap(metric, &rho, &sigma, &ch, seed)?;
            Ok(TrialGap {
                trial: t,
                dim: rho.dim(),
                violation: sign * gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CampaignSummary {
        trials: gaps,
        tolerance,
    })
}

/// Joint convexity of `metric` on random tuples.
pub fn convexity_campaign(
    metric: &MetricId,
    trials: u64,
    seed: u64,
    dims: &[usize],
    diagonal: bool,
    tolerance: f64,
) -> Result<CampaignSummary> {
    convexity_exponent(metric)?;
    let gaps = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (s, lambda) = random_convexity_tuple(derive_seed(seed, t), dims, diagonal)?;
            let gap = joint_convexity_gap(metric, &s[0], &s[1], &s[2], &s[3], lambda, seed)?;
            Ok(TrialGap {
                trial: t,
                dim: s[0].dim(),
                violation: gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CampaignSummary {
        trials: gaps,
        tolerance,
    })
}

/// Worst deviations from the metric axioms of `D_p` over random triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomReport {
    pub p: f64,
    pub trials: u64,
    /// Largest `|D(ρ,σ) − D(σ,ρ)|`.
    pub symmetry: f64,
    /// Largest `D(ρ,τ) − D(ρ,σ) − D(σ,τ)`.
    pub triangle: f64,
    /// Largest `D(ρ,ρ)`.
    pub identity: f64,
    /// Smallest `D(ρ,σ)` among pairs at trace distance ≥ 1e-8.
    pub separation: f64,
}

impl AxiomReport {
    pub fn holds(&self, slack: f64) -> bool {
        self.symmetry <= 1e-10 && self.triangle <= slack && self.identity <= 1e-8 && self.separation > 0.0
    }
}

/// Symmetry, identity and triangle checks for `D_p` on `trials` random
/// triples with mixed ranks.
pub fn axiom_campaign(p: f64, trials: u64, seed: u64, dims: &[usize]) -> Result<AxiomReport> {
    MetricId::Brother { p }.validate()?;
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut g = rng::seeded(derive_seed(seed, t));
            let dim = pick_dim(dims, &mut g)?;
            let [a, b, c] = [0u64, 1, 2].map(|k| {
                let rank = g.random_range(1..=dim);
                random_density(dim, rank, derive_seed(seed ^ 0x5a5a, 3 * t + k))
            });
            let (a, b, c) = (a?, b?, c?);
            let d = |x: &DensityMatrix, y: &DensityMatrix| brother_metric(x, y, p);
            let ab = d(&a, &b)?;
            let sep = if trace_metric(&a, &b)? >= 1e-8 {
                ab
            } else {
                f64::INFINITY
            };
            Ok([(ab - d(&b, &a)?).abs(), d(&a, &c)? - ab - d(&b, &c)?, d(&a, &a)?, sep])
        })
        .collect::<Result<Vec<_>>>()?;
    let max = |k: usize| rows.iter().map(|r| r[k]).fold(f64::NEG_INFINITY, f64::max);
    Ok(AxiomReport {
        p,
        trials,
        symmetry: max(0),
        triangle: max(1),
        identity: max(2),
        separation: rows.iter().map(|r| r[3]).fold(f64::INFINITY, f64::min),
    })
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.iter().any(|&x| !(x >= 0.0)) {
        return domain("probabilities must be nonnegative");
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > 1e-12 {
        return domain(format!("probabilities must sum to 1, got {s}"));
    }
    Ok(())
}

fn classical_pow(a: &[f64], b: &[f64], p: f64) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| divergence_term(x, y, p)).sum()
}

/// Mixture inequality for four outcome distributions:
///
/// `Σ_j |[λP1+(1−λ)P2]_j^{1/p} − [λP3+(1−λ)P4]_j^{1/p}|^p
///   − λ Σ_j |P1_j^{1/p} − P3_j^{1/p}|^p − (1−λ) Σ_j |P2_j^{1/p} − P4_j^{1/p}|^p`.
///
/// Two-outcome distributions are the stated case; longer ones are accepted
/// as an extension.
pub fn mixture_gap(p1: &[f64], p2: &[f64], p3: &[f64], p4: &[f64], lambda: f64, p: f64) -> Result<f64> {
    MetricId::Brother { p }.validate()?;
    check_lambda(lambda)?;
    let n = p1.len();
    if n < 2 || [p2, p3, p4].iter().any(|q| q.len() != n) {
        return domain("distributions must share a length of at least 2");
    }
    for q in [p1, p2, p3, p4] {
        check_distribution(q)?;
    }
    let mix =
        |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect() };
    let lhs = classical_pow(&mix(p1, p2), &mix(p3, p4), p);
    Ok(lhs - lambda * classical_pow(p1, p3, p) - (1.0 - lambda) * classical_pow(p2, p4, p))
}

/// Largest [`mixture_gap`] over a random scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureScan {
    pub samples: u64,
    pub max_gap: f64,
    pub argmax: [Vec<f64>; 4],
    pub lambda: f64,
}

/// Samples `samples` tuples of `outcomes`-point distributions (flat on the
/// simplex, λ uniform) and reports the worst gap.
pub fn mixture_scan(p: f64, outcomes: usize, samples: u64, seed: u64) -> Result<MixtureScan> {
    if samples == 0 {
        return domain("at least one sample is required");
    }
    let rows = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut g = rng::seeded(derive_seed(seed, t));
            let ps: [Vec<f64>; 4] = std::array::from_fn(|_| rng::flat_simplex(outcomes, &mut g));
            let lambda = g.random::<f64>();
            let gap = mixture_gap(&ps[0], &ps[1], &ps[2], &ps[3], lambda, p)?;
            Ok((gap, ps, lambda))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = &rows[0];
    for r in &rows {
        if r.0 > best.0 {
            best = r;
        }
    }
    Ok(MixtureScan {
        samples,
        max_gap: best.0,
        argmax: best.1.clone(),
        lambda: best.2,
    })
}

fn check_open_unit(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0) {
        return domain(format!("need 0 < a, b < 1, got a = {a}, b = {b}"));
    }
    Ok(())
}

/// `f(a, b) = (√a − √b)² + (√(1−a) − √(1−b))²`.
pub fn convexity_kernel(a: f64, b: f64) -> f64 {
    (a.sqrt() - b.sqrt()).powi(2) + ((1.0 - a).sqrt() - (1.0 - b).sqrt()).powi(2)
}

/// Hessian of [`convexity_kernel`] from the closed-form second derivatives,
/// as `[[f_aa, f_ab], [f_ab, f_bb]]`.
pub fn hessian_f(a: f64, b: f64) -> Result<[[f64; 2]; 2]> {
    check_open_unit(a, b)?;
    let (a1, b1) = (1.0 - a, 1.0 - b);
    let faa = 0.5 * a.powf(-1.5) * b.sqrt() + 0.5 * a1.powf(-1.5) * b1.sqrt();
    let fab = -0.5 / (a * b).sqrt() - 0.5 / (a1 * b1).sqrt();
    let fbb = 0.5 * b.powf(-1.5) * a.sqrt() + 0.5 * b1.powf(-1.5) * a1.sqrt();
    Ok([[faa, fab], [fab, fbb]])
}

pub fn hessian_is_psd(h: &[[f64; 2]; 2], tol: f64) -> bool {
    let m = Hermitian::from_real(&[&h[0], &h[1]]).expect("symmetric 2x2");
    is_psd(&m, tol)
}

/// Pure-state sampler used by the fidelity property checks.
pub fn random_pure_state<R: Rng>(dim: usize, g: &mut R) -> Result<DensityMatrix> {
    let amps: Vec<_> = (0..dim).map(|_| rng::complex_gaussian(g)).collect();
    pure_state(&amps)
}
