use serde_json::{json, Value};

use qmetric_core::closed::{evaluate_closed, MetricId};
use qmetric_core::entanglement::{geometric_entanglement, ppt_check, random_separable, MAX_TERMS};
use qmetric_core::io::{read_state, write_json};
use qmetric_core::lab::{
    axiom_campaign, contractivity_campaign, convexity_kernel, convexity_survey, find_contractivity_violation,
    find_convexity_violation, hessian_f, hessian_is_psd, mixture_gap, mixture_scan, random_contractivity_triple,
    random_pure_state, Direction, Witness, SURVEY_EXPONENTS,
};
use qmetric_core::majorization::{nielsen_criterion, root_difference_check, NielsenVerdict};
use qmetric_core::rng::{self, derive_seed};
use qmetric_core::states::{bell_state, random_density};
use qmetric_core::{dp_supremum, BipartiteShape, DensityMatrix, Error, Result, SupOptions};

use crate::report::RunReport;
use crate::{Check, DirectionArg, EntanglementArgs, Family, MetricArgs, MetricName, SearchArgs, Target, VerifyArgs};

const CONTRACT_TOL: f64 = 2e-4;
const AXIOM_SLACK: f64 = 1e-9;
const PREFIX_TOL: f64 = 1e-10;
const NORM_SLACK: f64 = 1e-9;
const MIXTURE_TOL: f64 = 1e-12;
const HESSIAN_REL: f64 = 1e-4;
const AFID_SLACK: f64 = 1e-9;
const PURE_TOL: f64 = 1e-10;

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn metric_id(name: MetricName, p: f64) -> MetricId {
    match name {
        MetricName::Trace => MetricId::Trace,
        MetricName::Bures => MetricId::Bures,
        MetricName::Fidelity => MetricId::Fidelity,
        MetricName::AFidelity => MetricId::AFidelity,
        MetricName::BigDp => MetricId::Brother { p },
        MetricName::SmallDp => MetricId::Supremum { p },
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable record")
}

fn is_convex_exponent(p: f64) -> bool {
    p == 1.0 || p == 2.0
}

/// Random pair with independently drawn ranks.
fn random_pair(dims: &[usize], seed: u64) -> Result<(DensityMatrix, DensityMatrix)> {
    let dim = dims[(derive_seed(seed, 0) % dims.len() as u64) as usize];
    let r1 = 1 + (derive_seed(seed, 1) % dim as u64) as usize;
    let r2 = 1 + (derive_seed(seed, 2) % dim as u64) as usize;
    Ok((
        random_density(dim, r1, derive_seed(seed, 3))?,
        random_density(dim, r2, derive_seed(seed, 4))?,
    ))
}

pub fn metric(a: &MetricArgs, seed: u64) -> Result<RunReport> {
    let id = metric_id(a.metric, a.p);
    id.validate()?;
    let rho = read_state(&a.state_a)?;
    let sigma = read_state(&a.state_b)?;
    let mut report = RunReport::new("metric", seed);
    report
        .input("state_a", &a.state_a)
        .input("state_b", &a.state_b)
        .input("metric", id)
        .input("restarts", a.restarts);
    match id {
        MetricId::Supremum { p } => {
            let mut opts = SupOptions::for_dim(rho.dim(), seed);
            if let Some(r) = a.restarts {
                opts = opts.with_restarts(r);
            }
            let res = dp_supremum(&rho, &sigma, p, &opts)?;
            report.output(json!({
                "metric": id.to_string(),
                "value": res.value,
                "partition": res.family.partition(),
                "shape": res.family.shape(),
                "converged": res.converged,
                "restarts_used": res.restarts_used,
            }));
        }
        _ => {
            let value = evaluate_closed(&id, &rho, &sigma)?;
            report.output(json!({ "metric": id.to_string(), "value": value }));
        }
    }
    Ok(report)
}

pub fn verify(a: &VerifyArgs, seed: u64) -> Result<RunReport> {
    if a.dims.is_empty() || a.dims.contains(&0) {
        return Err(usage("--dims needs at least one positive dimension"));
    }
    let name = format!("{:?}", a.check).to_lowercase();
    let mut report = RunReport::new(&format!("verify {name}"), seed);
    report
        .input("dims", &a.dims)
        .input("expect_violation", a.expect_violation);
    let ps = |default: &[f64]| if a.p.is_empty() { default.to_vec() } else { a.p.clone() };
    let violated = match a.check {
        Check::T1 => verify_t1(a, &ps(&[1.0, 1.5, 2.0, 3.0]), seed, &mut report)?,
        Check::T2 => verify_t2(a, &ps(&[1.0, 2.0]), seed, &mut report)?,
        Check::T3 => {
            let trials = a.trials.unwrap_or(200);
            report.input("trials", trials).input("slack", AXIOM_SLACK);
            let mut bad = false;
            for p in ps(&[1.0, 1.5, 2.0, 3.0]) {
                let r = axiom_campaign(p, trials, seed, &a.dims)?;
                bad |= !r.holds(AXIOM_SLACK);
                report.output(to_value(&r));
            }
            bad
        }
        Check::T4 => verify_t4(a, seed, &mut report)?,
        Check::Eq8 => {
            let samples = a.trials.unwrap_or(100_000);
            report.input("samples", samples).input("tolerance", MIXTURE_TOL);
            let mut bad = false;
            for p in ps(&[1.0, 2.0]) {
                let scan = mixture_scan(p, 2, samples, seed)?;
                let swap = mixture_gap(&[0.2, 0.8], &[0.8, 0.2], &[0.4, 0.6], &[0.6, 0.4], 0.5, p)?;
                bad |= scan.max_gap > MIXTURE_TOL || swap > MIXTURE_TOL;
                report.output(json!({
                    "p": p,
                    "samples": samples,
                    "max_gap": scan.max_gap,
                    "argmax": scan.argmax,
                    "lambda": scan.lambda,
                    "swap_tuple_gap": swap,
                }));
            }
            bad
        }
        Check::Hessian => {
            let n = a.trials.unwrap_or(99) as usize;
            report.input("grid", n).input("tolerance", HESSIAN_REL);
            let (worst, psd) = hessian_grid(n)?;
            report.output(json!({ "grid": n, "max_relative_deviation": worst, "psd": psd }));
            worst > HESSIAN_REL || !psd
        }
        Check::Afid => verify_afid(a, seed, &mut report)?,
        Check::Nielsen => {
            let trials = a.trials.unwrap_or(1000);
            report.input("trials", trials);
            let shape = BipartiteShape::qubits();
            let mut false_positives = Vec::new();
            for t in 0..trials {
                let terms = 1 + (t as usize % MAX_TERMS);
                let rho = random_separable(terms, derive_seed(seed, t))?.assemble()?;
                if nielsen_criterion(&rho, shape)? == NielsenVerdict::EntangledDetected {
                    false_positives.push(t);
                }
            }
            let bell = nielsen_criterion(&bell_state(), shape)?;
            report.output(json!({
                "trials": trials,
                "false_positives": false_positives,
                "bell": bell,
            }));
            !false_positives.is_empty() || bell != NielsenVerdict::EntangledDetected
        }
    };
    report.status = if violated == a.expect_violation {
        "met"
    } else {
        "violated"
    }
    .to_string();
    Ok(report)
}

fn verify_t1(a: &VerifyArgs, ps: &[f64], seed: u64, report: &mut RunReport) -> Result<bool> {
    let trials = a.trials.unwrap_or(200);
    report
        .input("trials", trials)
        .input("p", ps)
        .input("tolerance", CONTRACT_TOL);
    let mut bad = false;
    for &p in ps {
        let metric = MetricId::Supremum { p };
        let s = contractivity_campaign(&metric, trials, seed, &a.dims, CONTRACT_TOL)?;
        let worst = s.worst().cloned();
        let witness = match &worst {
            Some(w) if w.violation > CONTRACT_TOL => {
                let (rho, sigma, ch) = random_contractivity_triple(derive_seed(seed, w.trial), &a.dims)?;
                Some(Witness {
                    metric,
                    states: vec![rho, sigma],
                    channel: Some(ch),
                    lambda: None,
                    gap: w.violation,
                    seed,
                    trial: w.trial,
                })
            }
            _ => None,
        };
        bad |= !s.passed();
        report.output(json!({
            "p": p,
            "trials": trials,
            "failures": s.failures(),
            "worst": worst,
            "gaps": s.trials.iter().map(|t| t.violation).collect::<Vec<_>>(),
            "witness": witness,
        }));
    }
    Ok(bad)
}

fn verify_t2(a: &VerifyArgs, ps: &[f64], seed: u64, report: &mut RunReport) -> Result<bool> {
    let trials = a.trials.unwrap_or(10_000);
    report.input("trials", trials).input("p", ps);
    let mut found = Vec::new();
    for &p in ps {
        for metric in [MetricId::Supremum { p }, MetricId::Brother { p }] {
            let w = find_convexity_violation(&metric, trials, seed)?;
            found.push(w.is_some());
            report.output(json!({ "metric": metric.to_string(), "p": p, "trials": trials, "witness": w }));
        }
    }
    // under --expect-violation every searched case must produce a witness
    Ok(if a.expect_violation {
        found.iter().all(|&f| f)
    } else {
        found.iter().any(|&f| f)
    })
}

fn verify_t4(a: &VerifyArgs, seed: u64, report: &mut RunReport) -> Result<bool> {
    let pairs: Vec<(f64, f64)> = match a.q {
        Some(q) if !a.p.is_empty() => a.p.iter().map(|&p| (p, q)).collect(),
        Some(_) => return Err(usage("--q needs --p")),
        None if !a.p.is_empty() => return Err(usage("--p needs --q for t4")),
        None => vec![(1.0, 2.0), (1.0, 3.0), (2.0, 3.0), (1.5, 2.5)],
    };
    let trials = a.trials.unwrap_or(500);
    report
        .input("trials", trials)
        .input("pairs", &pairs)
        .input("prefix_tolerance", PREFIX_TOL);
    let mut stats: Vec<(u64, f64, f64, u64)> = vec![(0, f64::INFINITY, f64::NEG_INFINITY, 0); pairs.len()];
    for t in 0..trials {
        let k = (t % pairs.len() as u64) as usize;
        let (p, q) = pairs[k];
        let (rho, sigma) = random_pair(&a.dims, derive_seed(seed, t))?;
        let rep = root_difference_check(&rho, &sigma, p, q)?;
        let st = &mut stats[k];
        st.0 += 1;
        st.1 = st.1.min(rep.majorization.worst_gap());
        st.2 = st.2.max(rep.dq_pow_q - rep.dp_pow_p);
        if rep.majorization.worst_gap() < -PREFIX_TOL || rep.dq_pow_q > rep.dp_pow_p + NORM_SLACK {
            st.3 += 1;
        }
    }
    for (&(p, q), &(n, prefix, norm, failures)) in pairs.iter().zip(&stats) {
        report.output(json!({
            "p": p,
            "q": q,
            "trials": n,
            "min_prefix_gap": prefix,
            "max_norm_gap": norm,
            "failures": failures,
        }));
    }
    Ok(stats.iter().any(|s| s.3 > 0))
}

fn hessian_grid(n: usize) -> Result<(f64, bool)> {
    if n == 0 {
        return Err(usage("hessian grid needs at least one point per side"));
    }
    let f = convexity_kernel;
    let mut worst = 0.0f64;
    let mut psd = true;
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (i as f64 / (n + 1) as f64, j as f64 / (n + 1) as f64);
            let exact = hessian_f(a, b)?;
            psd &= hessian_is_psd(&exact, 1e-12);
            let h = 1e-4 * a.min(b).min(1.0 - a).min(1.0 - b);
            let faa = (f(a + h, b) - 2.0 * f(a, b) + f(a - h, b)) / (h * h);
            let fbb = (f(a, b + h) - 2.0 * f(a, b) + f(a, b - h)) / (h * h);
            let fab = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4.0 * h * h);
            let fd = [[faa, fab], [fab, fbb]];
            let scale = exact.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((exact[r][c] - fd[r][c]).abs() / scale);
                }
            }
        }
    }
    Ok((worst, psd))
}

fn verify_afid(a: &VerifyArgs, seed: u64, report: &mut RunReport) -> Result<bool> {
    let trials = a.trials.unwrap_or(500);
    let pure_pairs = 200u64;
    report
        .input("trials", trials)
        .input("pure_pairs", pure_pairs)
        .input("slack", AFID_SLACK);
    let s = contractivity_campaign(&MetricId::AFidelity, trials, seed, &a.dims, AFID_SLACK)?;
    report.output(json!({
        "property": "expansive_under_channels",
        "trials": trials,
        "failures": s.failures(),
        "worst": s.worst(),
    }));
    let mut worst_pure = 0.0f64;
    let mut worst_trial = 0u64;
    for t in 0..pure_pairs {
        let mut g = rng::seeded(derive_seed(seed ^ 0xaf1d, t));
        let dim = a.dims[(t % a.dims.len() as u64) as usize];
        let phi = random_pure_state(dim, &mut g)?;
        let psi = random_pure_state(dim, &mut g)?;
        let overlap_sq = (phi.matrix() * psi.matrix()).trace().re;
        let dev = (qmetric_core::a_fidelity(&phi, &psi)? - overlap_sq).abs();
        if dev > worst_pure {
            worst_pure = dev;
            worst_trial = t;
        }
    }
    report.output(json!({
        "property": "pure_state_equals_overlap_squared",
        "pairs": pure_pairs,
        "max_deviation": worst_pure,
        "worst_trial": worst_trial,
        "tolerance": PURE_TOL,
    }));
    Ok(!s.passed() || worst_pure > PURE_TOL)
}

pub fn search(a: &SearchArgs, seed: u64) -> Result<RunReport> {
    let target = format!("{:?}", a.target).to_lowercase();
    let mut report = RunReport::new(&format!("search {target}"), seed);
    report.input("trials", a.trials).input("out", &a.out);
    if a.survey {
        if a.target != Target::Convexity {
            return Err(usage("--survey applies to convexity searches only"));
        }
        let supremum = a.family == Family::SmallDp;
        report
            .input("family", if supremum { "d_p" } else { "D_p" })
            .input("p", SURVEY_EXPONENTS);
        let entries = convexity_survey(supremum, &SURVEY_EXPONENTS, a.trials, seed)?;
        for e in &entries {
            report.output(json!({
                "p": e.p,
                "found": e.witness.is_some(),
                "gap": e.witness.as_ref().map(|w| w.gap),
                "trial": e.witness.as_ref().map(|w| w.trial),
            }));
        }
        write_json(&a.out, &entries)?;
        return Ok(report);
    }
    report.input("p", a.p);
    let (witness, expected) = match a.target {
        Target::Contractivity => {
            let direction = match a.direction {
                DirectionArg::Increase => Direction::Increase,
                DirectionArg::Decrease => Direction::Decrease,
            };
            report.input("direction", direction);
            let w = find_contractivity_violation(a.p, a.trials, seed, direction)?;
            (w, direction == Direction::Decrease || !is_convex_exponent(a.p))
        }
        Target::Convexity => {
            let metric = match a.family {
                Family::BigDp => MetricId::Brother { p: a.p },
                Family::SmallDp => MetricId::Supremum { p: a.p },
            };
            report.input("metric", metric);
            (
                find_convexity_violation(&metric, a.trials, seed)?,
                !is_convex_exponent(a.p),
            )
        }
    };
    if let Some(w) = &witness {
        write_json(&a.out, w)?;
    }
    report.output(json!({
        "found": witness.is_some(),
        "expected": expected,
        "gap": witness.as_ref().map(|w| w.gap),
        "trial": witness.as_ref().map(|w| w.trial),
        "witness_file": witness.as_ref().map(|_| &a.out),
    }));
    if witness.is_some() != expected {
        report.status = "violated".to_string();
    }
    Ok(report)
}

pub fn entanglement(a: &EntanglementArgs, seed: u64) -> Result<RunReport> {
    let metric = metric_id(a.metric, a.p);
    let rho = read_state(&a.state)?;
    let mut report = RunReport::new("entanglement", seed);
    report
        .input("state", &a.state)
        .input("metric", metric)
        .input("restarts", a.restarts)
        .input("out", &a.out);
    let res = geometric_entanglement(&rho, &metric, a.restarts, seed)?;
    let closest = res.closest.assemble()?;
    write_json(&a.out, &res.closest)?;
    report.output(json!({
        "metric": metric.to_string(),
        "value": res.value,
        "converged": res.converged,
        "terms": res.closest.len(),
        "closest_is_ppt": ppt_check(&closest, BipartiteShape::qubits())?,
        "closest_file": &a.out,
    }));
    Ok(report)
}
