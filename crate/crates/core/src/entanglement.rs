//! Two-qubit separability and the geometric entanglement measure
//! `E(ρ) = min_{σ separable} D(ρ, σ)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{evaluate_closed, MetricId};
use crate::error::{domain, Error, Result};
use crate::matcalc::{eigh, CMatrix, Hermitian, C64};
use crate::optim::NelderMead;
use crate::rng::{self, derive_seed};
use crate::states::{BipartiteShape, DensityMatrix, Subsystem};

/// Longest decomposition accepted.
pub const MAX_TERMS: usize = 16;
/// Terms used by the minimizer's chart.
pub const SEARCH_TERMS: usize = 4;
pub const DEFAULT_RESTARTS: usize = 24;
pub const EVALS_PER_RESTART: usize = 2000;
/// Partial-transpose eigenvalues above `−PPT_TOL` count as nonnegative.
pub const PPT_TOL: f64 = 1e-10;

/// Transpose on one factor, `index = i_a · dim_b + i_b`.
pub fn partial_transpose(rho: &DensityMatrix, shape: BipartiteShape, on: Subsystem) -> Result<Hermitian> {
    shape.check(rho.dim())?;
    let (da, db) = (shape.dim_a, shape.dim_b);
    let m = rho.matrix();
    let out = CMatrix::from_fn(da * db, da * db, |r, c| {
        let (ia, ib, ja, jb) = (r / db, r % db, c / db, c % db);
        match on {
            Subsystem::A => m[(ja * db + ib, ia * db + jb)],
            Subsystem::B => m[(ia * db + jb, ja * db + ib)],
        }
    });
    Ok(Hermitian::from_hermitian_part(&out))
}

fn check_qubits(shape: BipartiteShape, dim: usize) -> Result<()> {
    shape.check(dim)?;
    if shape != BipartiteShape::qubits() {
        return domain(format!(
            "only 2x2 systems are supported, got {}x{}",
            shape.dim_a, shape.dim_b
        ));
    }
    Ok(())
}

/// Peres-Horodecki test; exact separability criterion on two qubits.
pub fn ppt_check(rho: &DensityMatrix, shape: BipartiteShape) -> Result<bool> {
    check_qubits(shape, rho.dim())?;
    Ok(partial_transpose(rho, shape, Subsystem::B)?.eigenvalues().min() >= -PPT_TOL)
}

/// `Σ_i w_i |a_i⟩⟨a_i| ⊗ |b_i⟩⟨b_i|` with qubit factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableDecomposition {
    pub weights: Vec<f64>,
    pub factors_a: Vec<[C64; 2]>,
    pub factors_b: Vec<[C64; 2]>,
}

fn normalized(v: [C64; 2]) -> Result<[C64; 2]> {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if !(n > 0.0) || !n.is_finite() {
        return domain("factor vector must be nonzero and finite");
    }
    Ok([v[0] / n, v[1] / n])
}

impl SeparableDecomposition {
    /// Validates lengths and weights; factors are normalized.
    pub fn new(weights: Vec<f64>, factors_a: Vec<[C64; 2]>, factors_b: Vec<[C64; 2]>) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > MAX_TERMS || factors_a.len() != n || factors_b.len() != n {
            return domain(format!(
                "decomposition needs 1..={MAX_TERMS} terms with matching factor lists"
            ));
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return domain("weights must be nonnegative");
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > 1e-10 {
            return domain(format!("weights must sum to 1, got {s}"));
        }
        let factors_a = factors_a.into_iter().map(normalized).collect::<Result<Vec<_>>>()?;
        let factors_b = factors_b.into_iter().map(normalized).collect::<Result<Vec<_>>>()?;
        Ok(SeparableDecomposition {
            weights,
            factors_a,
            factors_b,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn assemble(&self) -> Result<DensityMatrix> {
        let mut m = CMatrix::zeros(4, 4);
        for ((w, a), b) in self.weights.iter().zip(&self.factors_a).zip(&self.factors_b) {
            let v = product_vector(a, b);
            m += (&v * v.adjoint()) * C64::new(*w, 0.0);
        }
        DensityMatrix::new(m)
    }
}

/// Column vector `a ⊗ b`.
pub fn product_vector(a: &[C64; 2], b: &[C64; 2]) -> CMatrix {
    CMatrix::from_fn(4, 1, |r, _| a[r / 2] * b[r % 2])
}

fn haar_qubit<R: Rng>(g: &mut R) -> [C64; 2] {
    let u = rng::haar_unitary(2, g);
    [u[(0, 0)], u[(1, 0)]]
}

/// Flat simplex weights with Haar-random pure factors.
pub fn random_separable(terms: usize, seed: u64) -> Result<SeparableDecomposition> {
    if terms == 0 || terms > MAX_TERMS {
        return domain(format!("terms must lie in 1..={MAX_TERMS}, got {terms}"));
    }
    let mut g = rng::seeded(seed);
    let weights = rng::flat_simplex(terms, &mut g);
    let factors_a = (0..terms).map(|_| haar_qubit(&mut g)).collect();
    let factors_b = (0..terms).map(|_| haar_qubit(&mut g)).collect();
    SeparableDecomposition::new(weights, factors_a, factors_b)
}

/// Best separable approximation found by [`geometric_entanglement`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementResult {
    /// `D(ρ, closest)`; an upper bound on `E(ρ)`.
    pub value: f64,
    pub closest: SeparableDecomposition,
    pub metric: MetricId,
    pub converged: bool,
}

/// Product-state decomposition of a two-qubit state through Wootters'
/// construction.
///
/// Exact when the concurrence vanishes, i.e. when `ρ` is separable. For
/// entangled input the phase condition cannot be met and each term is
/// replaced by its nearest product vector, which still gives a useful
/// separable starting point.
pub fn product_decomposition(rho: &DensityMatrix) -> Result<SeparableDecomposition> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    // ρ = V V†
    let e = eigh(rho.hermitian());
    let floor = 64.0 * f64::EPSILON * e.spectrum.max();
    let amp = |l: f64| if l > floor { l.sqrt() } else { 0.0 };
    let v = CMatrix::from_fn(4, 4, |r, c| e.basis[(r, c)] * amp(e.spectrum.values()[c]));
    // σ_y ⊗ σ_y is real: antidiagonal (−1, 1, 1, −1)
    let yy = CMatrix::from_fn(4, 4, |r, c| match (r, c) {
        (0, 3) | (3, 0) => C64::new(-1.0, 0.0),
        (1, 2) | (2, 1) => C64::new(1.0, 0.0),
        _ => C64::new(0.0, 0.0),
    });
    let tau = (v.transpose() * &yy * &v).map(|z| z.conj());
    let (w, lambdas) = takagi(&tau);
    let x = &v * &w;

    let phases = closing_phases(&lambdas);
    let signs = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ];
    let mut weights = Vec::new();
    let mut fa = Vec::new();
    let mut fb = Vec::new();
    for row in signs {
        let mut z = [C64::new(0.0, 0.0); 4];
        for (j, s) in row.iter().enumerate() {
            let c = C64::from_polar(0.5 * s, phases[j] / 2.0);
            for (r, zr) in z.iter_mut().enumerate() {
                *zr += c * x[(r, j)];
            }
        }
        let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq <= 1e-15 {
            continue;
        }
        let (a, b) = nearest_product(&z);
        weights.push(norm_sq);
        fa.push(a);
        fb.push(b);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    SeparableDecomposition::new(weights, fa, fb)
}

/// `τ = W diag(λ) Wᵀ` for complex symmetric `τ`, `W` unitary, `λ ≥ 0`
/// sorted descending.
fn takagi(tau: &CMatrix) -> (CMatrix, Vec<f64>) {
    let n = tau.nrows();
    // real embedding [[A, B], [B, −A]] of τ = A + iB; its eigenvectors
    // (x; y) at +λ give Takagi vectors x + iy
    let emb = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, c| {
        let t = tau[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) => t.re,
            (false, false) => -t.re,
            _ => t.im,
        }
    });
    let e = emb.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[b].total_cmp(&e.eigenvalues[a]));
    let scale = e.eigenvalues.amax().max(1e-300);
    let mut cols: Vec<Vec<C64>> = Vec::new();
    let mut lambdas = Vec::new();
    for &k in &order {
        let l = e.eigenvalues[k];
        if l <= 1e-12 * scale || cols.len() == n {
            break;
        }
        let vk: Vec<C64> = (0..n)
            .map(|i| C64::new(e.eigenvectors[(i, k)], e.eigenvectors[(i + n, k)]))
            .collect();
        let nrm = vk.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        cols.push(vk.into_iter().map(|c| c / nrm).collect());
        lambdas.push(l);
    }
    // complete with an orthonormal basis of the null part
    for unit in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v: Vec<C64> = (0..n)
            .map(|i| C64::new(if i == unit { 1.0 } else { 0.0 }, 0.0))
            .collect();
        for c in &cols {
            let ip: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(c).for_each(|(x, y)| *x -= ip * y);
        }
        let nrm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 1e-6 {
            cols.push(v.into_iter().map(|c| c / nrm).collect());
            lambdas.push(0.0);
        }
    }
    (CMatrix::from_fn(n, n, |r, c| cols[c][r]), lambdas)
}

/// Angles `φ_j` with `Σ λ_j e^{iφ_j} = 0` for descending `λ`, or the
/// closest approach when `λ_1 > λ_2 + λ_3 + λ_4`.
fn closing_phases(l: &[f64]) -> [f64; 4] {
    let [l1, l2, l3, l4] = [l[0], l[1], l[2], l[3]];
    let cos_between = |side: f64, a: f64, b: f64| -> f64 {
        if a * b <= 0.0 {
            0.0
        } else {
            ((side * side - a * a - b * b) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
        }
    };
    // merge λ3, λ4 into one side of length s, then close the triangle λ1, λ2, s
    let s = (l1 - l2).max(l3 - l4).min(l3 + l4);
    let gamma = cos_between(s, l3, l4);
    let alpha = cos_between(s, l1, l2);
    let u = C64::new(l1, 0.0) + C64::from_polar(l2, alpha);
    let c = C64::new(l3, 0.0) + C64::from_polar(l4, gamma);
    let psi = if c.norm() > 0.0 { (-u).arg() - c.arg() } else { 0.0 };
    [0.0, alpha, psi, gamma + psi]
}

/// Factors of a two-qubit vector `z ≈ a ⊗ b`, both normalized. Exact when
/// `z` is a product; otherwise `b` follows the heavier row of `z` viewed
/// as a 2x2 matrix.
fn nearest_product(z: &[C64; 4]) -> ([C64; 2], [C64; 2]) {
    let row = |r: usize| [z[2 * r], z[2 * r + 1]];
    let weight = |v: &[C64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
    let (r0, r1) = (row(0), row(1));
    let heavy = if weight(&r0) >= weight(&r1) { r0 } else { r1 };
    let nb = weight(&heavy).sqrt();
    let b = [heavy[0] / nb, heavy[1] / nb];
    let a = [r0, r1].map(|r| r[0] * b[0].conj() + r[1] * b[1].conj());
    let na = weight(&a).sqrt();
    ([a[0] / na, a[1] / na], b)
}

/// Chart from unconstrained parameters to decompositions with `terms`
/// entries: weights are normalized squares, factors are
/// `(cos t, e^{iφ} sin t)`.
struct Chart {
    terms: usize,
}

impl Chart {
    fn n_params(&self) -> usize {
        5 * self.terms
    }

    fn decode(&self, x: &[f64]) -> Option<SeparableDecomposition> {
        let k = self.terms;
        let sq: Vec<f64> = x[..k].iter().map(|v| v * v).collect();
        let total: f64 = sq.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return None;
        }
        let qubit = |t: f64, phi: f64| [C64::new(t.cos(), 0.0), C64::from_polar(t.sin(), phi)];
        let a = (0..k).map(|i| qubit(x[k + 4 * i], x[k + 4 * i + 1])).collect();
        let b = (0..k).map(|i| qubit(x[k + 4 * i + 2], x[k + 4 * i + 3])).collect();
        SeparableDecomposition::new(sq.iter().map(|s| s / total).collect(), a, b).ok()
    }

    fn encode(&self, d: &SeparableDecomposition) -> Vec<f64> {
        let k = self.terms;
        let mut x = vec![0.0; self.n_params()];
        let angles = |v: &[C64; 2]| (v[1].norm().atan2(v[0].norm()), v[1].arg() - v[0].arg());
        for i in 0..k.min(d.len()) {
            x[i] = d.weights[i].sqrt();
            let (ta, pa) = angles(&d.factors_a[i]);
            let (tb, pb) = angles(&d.factors_b[i]);
            x[k + 4 * i..k + 4 * i + 4].copy_from_slice(&[ta, pa, tb, pb]);
        }
        x
    }

    fn random_start(&self, seed: u64) -> Result<Vec<f64>> {
        Ok(self.encode(&random_separable(self.terms, seed)?))
    }
}

fn check_metric(metric: &MetricId) -> Result<()> {
    metric.validate()?;
    match metric {
        MetricId::Trace | MetricId::Bures | MetricId::Brother { .. } => Ok(()),
        MetricId::Supremum { .. } => domain("d_p is not supported here: each evaluation is itself an optimization"),
        m => domain(format!("{m} is a similarity, not a distance")),
    }
}

/// Minimizes `D(ρ, σ)` over separable `σ` by simplex descent from
/// `restarts` starts. Start 0 is the product decomposition of `ρ` itself
/// (exact for separable input); the rest are seeded random decompositions.
pub fn geometric_entanglement(
    rho: &DensityMatrix,
    metric: &MetricId,
    restarts: usize,
    seed: u64,
) -> Result<EntanglementResult> {
    check_qubits(BipartiteShape::qubits(), rho.dim())?;
    check_metric(metric)?;
    if restarts == 0 {
        return domain("at least one restart is required");
    }
    let chart = Chart { terms: SEARCH_TERMS };
    let warm = product_decomposition(rho)?;
    let mut starts = vec![chart.encode(&warm)];
    for r in 1..restarts {
        starts.push(chart.random_start(derive_seed(seed, r as u64))?);
    }
    let objective = |x: &[f64]| -> f64 {
        chart
            .decode(x)
            .and_then(|d| d.assemble().ok())
            .and_then(|s| evaluate_closed(metric, rho, &s).ok())
            .unwrap_or(f64::INFINITY)
    };
    let nm = NelderMead {
        max_evals: EVALS_PER_RESTART,
        f_tol: 1e-12,
        initial_step: 0.3,
        polish_rounds: 1,
    };
    let runs: Vec<_> = starts.par_iter().map(|x0| nm.minimize(objective, x0)).collect();

    // the warm start is kept as a candidate in its own right
    let warm_value = evaluate_closed(metric, rho, &warm.assemble()?)?;
    let mut best = Some((warm_value, warm, true));
    for run in &runs {
        let Some(d) = chart.decode(&run.x) else { continue };
        let v = evaluate_closed(metric, rho, &d.assemble()?)?;
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, d, run.converged));
        }
    }
    let (value, closest, converged) = best.expect("warm start always present");
    Ok(EntanglementResult {
        value,
        closest,
        metric: *metric,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::bures_metric;
    use crate::matcalc::kron;
    use crate::states::{bell_state, partial_trace, random_density, tensor};
    use approx::assert_abs_diff_eq;

    fn bures() -> MetricId {
        MetricId::Bures
    }

    #[test]
    fn ppt_examples() {
        let shape = BipartiteShape::qubits();
        let prod = tensor(&random_density(2, 2, 1).unwrap(), &random_density(2, 1, 2).unwrap()).unwrap();
        assert!(ppt_check(&prod, shape).unwrap());
        assert!(!ppt_check(&bell_state(), shape).unwrap());
        let pt = partial_transpose(&bell_state(), shape, Subsystem::B).unwrap();
        assert_abs_diff_eq!(pt.eigenvalues().min(), -0.5, epsilon = 1e-12);
        assert!(ppt_check(&DensityMatrix::maximally_mixed(4), shape).unwrap());
        assert!(ppt_check(&random_density(6, 6, 0).unwrap(), BipartiteShape::new(2, 3)).is_err());
    }

    #[test]
    fn partial_transposes_agree_in_spectrum() {
        let rho = random_density(4, 3, 5).unwrap();
        let a = partial_transpose(&rho, BipartiteShape::qubits(), Subsystem::A)
            .unwrap()
            .eigenvalues();
        let b = partial_transpose(&rho, BipartiteShape::qubits(), Subsystem::B)
            .unwrap()
            .eigenvalues();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_separable_examples() {
        let one = random_separable(1, 3).unwrap().assemble().unwrap();
        for keep in [Subsystem::A, Subsystem::B] {
            assert_abs_diff_eq!(
                partial_trace(&one, BipartiteShape::qubits(), keep).unwrap().purity(),
                1.0,
                epsilon = 1e-12
            );
        }
        for seed in 0..1000 {
            let d = random_separable(1 + seed as usize % MAX_TERMS, seed).unwrap();
            assert!(ppt_check(&d.assemble().unwrap(), BipartiteShape::qubits()).unwrap());
        }
        assert_eq!(random_separable(5, 9).unwrap(), random_separable(5, 9).unwrap());
        assert!(random_separable(0, 0).is_err());
        assert!(random_separable(17, 0).is_err());
    }

    #[test]
    fn decomposition_validation() {
        let q = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        assert!(SeparableDecomposition::new(vec![0.5, 0.4], vec![q; 2], vec![q; 2]).is_err());
        assert!(SeparableDecomposition::new(vec![1.0], vec![q; 2], vec![q]).is_err());
        assert!(SeparableDecomposition::new(vec![1.0], vec![[C64::new(0.0, 0.0); 2]], vec![q]).is_err());
    }

    #[test]
    fn product_decomposition_reproduces_separable_states() {
        for seed in 0..200 {
            let rho = random_separable(1 + seed as usize % MAX_TERMS, seed)
                .unwrap()
                .assemble()
                .unwrap();
            let d = product_decomposition(&rho).unwrap();
            assert!(d.len() <= 4);
            let back = d.assemble().unwrap();
            // rank-2 inputs put two Takagi values within roundoff of each
            // other, which costs a few digits
            let err = crate::matcalc::max_abs_diff(back.matrix(), rho.matrix());
            assert!(err < 1e-7, "seed {seed}: {err:e}");
        }
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!(bures_metric(&product_decomposition(&mixed).unwrap().assemble().unwrap(), &mixed).unwrap() < 1e-7);
    }

    /// Largest `⟨a⊗b|ρ|a⊗b⟩` by dense sampling over product pure states,
    /// polished by a simplex search from the best sample.
    fn best_product_overlap(rho: &DensityMatrix) -> f64 {
        let overlap = |x: &[f64]| {
            let a = [C64::new(x[0].cos(), 0.0), C64::from_polar(x[0].sin(), x[1])];
            let b = [C64::new(x[2].cos(), 0.0), C64::from_polar(x[2].sin(), x[3])];
            let v = product_vector(&a, &b);
            (v.adjoint() * rho.matrix() * &v)[(0, 0)].re
        };
        let n = 24;
        let mut best = (f64::NEG_INFINITY, vec![0.0; 4]);
        for i in 0..=n {
            for j in 0..n {
                for k in 0..=n {
                    for l in 0..n {
                        let x = [
                            i as f64 * std::f64::consts::FRAC_PI_2 / n as f64,
                            j as f64 * std::f64::consts::TAU / n as f64,
                            k as f64 * std::f64::consts::FRAC_PI_2 / n as f64,
                            l as f64 * std::f64::consts::TAU / n as f64,
                        ];
                        let v = overlap(&x);
                        if v > best.0 {
                            best = (v, x.to_vec());
                        }
                    }
                }
            }
        }
        let nm = NelderMead {
            max_evals: 4000,
            f_tol: 1e-14,
            initial_step: 0.05,
            polish_rounds: 2,
        };
        -nm.minimize(|x| -overlap(x), &best.1).value
    }

    #[test]
    fn bell_state_bures_value() {
        let bell = bell_state();
        let m = best_product_overlap(&bell);
        assert_abs_diff_eq!(m, 0.5, epsilon = 1e-6);
        let oracle = (2.0 - 2.0 * m.sqrt()).sqrt();
        let res = geometric_entanglement(&bell, &bures(), DEFAULT_RESTARTS, 0).unwrap();
        assert_abs_diff_eq!(res.value, oracle, epsilon = 5e-3);
        assert_abs_diff_eq!(res.value, (2.0 - 2f64.sqrt()).sqrt(), epsilon = 5e-3);
        let closest = res.closest.assemble().unwrap();
        assert!(ppt_check(&closest, BipartiteShape::qubits()).unwrap());
        assert_abs_diff_eq!(bures_metric(&bell, &closest).unwrap(), res.value, epsilon = 1e-6);
    }

    #[test]
    fn separable_inputs_give_zero() {
        for seed in 0..10 {
            let rho = random_separable(1 + (seed as usize * 5) % MAX_TERMS, 100 + seed)
                .unwrap()
                .assemble()
                .unwrap();
            let res = geometric_entanglement(&rho, &bures(), 4, seed).unwrap();
            assert!(res.value <= 1e-4, "seed {seed}: {}", res.value);
        }
    }

    #[test]
    fn werner_like_state_is_intermediate() {
        let bell = bell_state();
        let w = DensityMatrix::mix(0.9, &bell, &DensityMatrix::maximally_mixed(4));
        let e_w = geometric_entanglement(&w, &bures(), 8, 1).unwrap().value;
        let e_b = geometric_entanglement(&bell, &bures(), 8, 1).unwrap().value;
        assert!(e_w > 1e-3 && e_w < e_b, "{e_w} vs {e_b}");
    }

    #[test]
    fn local_unitary_invariance() {
        let mut g = rng::seeded(4);
        let u = kron(&rng::haar_unitary(2, &mut g), &rng::haar_unitary(2, &mut g));
        let rho = DensityMatrix::mix(0.8, &bell_state(), &random_density(4, 4, 2).unwrap());
        let e1 = geometric_entanglement(&rho, &bures(), 12, 0).unwrap().value;
        let e2 = geometric_entanglement(&rho.conjugate_by(&u), &bures(), 12, 0)
            .unwrap()
            .value;
        assert_abs_diff_eq!(e1, e2, epsilon = 5e-3);
    }

    #[test]
    fn bures_and_d2_agree_on_bell() {
        let bell = bell_state();
        let b = geometric_entanglement(&bell, &bures(), 12, 3).unwrap().value;
        let d = geometric_entanglement(&bell, &MetricId::Brother { p: 2.0 }, 12, 3)
            .unwrap()
            .value;
        assert_abs_diff_eq!(b, d, epsilon = 5e-3);
    }

    #[test]
    fn unsupported_inputs() {
        let bell = bell_state();
        assert!(geometric_entanglement(&bell, &MetricId::Supremum { p: 2.0 }, 2, 0).is_err());
        assert!(geometric_entanglement(&bell, &MetricId::Fidelity, 2, 0).is_err());
        assert!(geometric_entanglement(&bell, &bures(), 0, 0).is_err());
        assert!(geometric_entanglement(&random_density(3, 3, 0).unwrap(), &bures(), 2, 0).is_err());
    }

    #[test]
    fn result_json_carries_decomposition() {
        let res = geometric_entanglement(&bell_state(), &bures(), 2, 0).unwrap();
        let v: serde_json::Value = serde_json::to_value(&res).unwrap();
        assert_eq!(v["metric"]["family"], "bures");
        assert_eq!(v["closest"]["weights"].as_array().unwrap().len(), res.closest.len());
        let back: EntanglementResult = serde_json::from_value(v).unwrap();
        assert_eq!(back, res);
    }
}
