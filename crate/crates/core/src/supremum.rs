//! The measurement-supremum metric
//!
//! ```text
//! d_p(ρ, σ) = sup_{P} ( Σ_k | (Tr ρP_k)^{1/p} − (Tr σP_k)^{1/p} |^p )^{1/p}
//! ```
//!
//! over finite families of mutually orthogonal projections summing to the
//! identity. Every such family is an orthonormal basis together with a
//! set partition of its indices, so the search runs over
//! `(unitary, partition)` pairs: partitions are enumerated, bases are found
//! by multi-start Nelder-Mead on a local exponential chart of the unitary
//! group.
//!
//! The reported value is always attained by the returned family, so it is a
//! lower bound on the true supremum. Inputs that commute are handled
//! exactly: a PVM applied to commuting states is classical post-processing
//! of their joint eigenbasis distribution, and the summand is a jointly
//! convex, degree-one homogeneous function of the two probabilities, so
//! no family beats the joint eigenbasis.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::matcalc::{eigh, exp_i, max_abs_diff, unitarity_defect, CMatrix, Hermitian, C64};
use crate::optim::NelderMead;
use crate::rng;
use crate::states::DensityMatrix;

/// Tolerance for the projection-family invariants.
pub const FAMILY_TOL: f64 = 1e-9;
/// Probabilities in `[-PROB_CLAMP, 0)` are rounded up to zero.
pub const PROB_CLAMP: f64 = 1e-12;
/// Commutator size below which the joint-eigenbasis shortcut applies.
pub const COMMUTE_TOL: f64 = 1e-12;

/// Mutually orthogonal projections summing to the identity, built from an
/// orthonormal basis and a partition of its column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionFamily {
    dim: usize,
    basis: CMatrix,
    partition: Vec<Vec<usize>>,
    projections: Vec<CMatrix>,
}

impl ProjectionFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn projections(&self) -> &[CMatrix] {
        &self.projections
    }

    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    /// Block sizes, largest first.
    pub fn shape(&self) -> Vec<usize> {
        partition_shape(&self.partition)
    }

    /// `Tr(ρ P_k)` for every projection, clamped into `[0, 1]`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Vec<f64> {
        basis_probabilities(rho.matrix(), &self.basis, &self.partition)
    }

    /// Checks idempotence, self-adjointness, orthogonality, completeness.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let mut sum = CMatrix::zeros(n, n);
        for (j, pj) in self.projections.iter().enumerate() {
            if pj.nrows() != n || pj.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: pj.nrows(),
                });
            }
            if max_abs_diff(&(pj * pj), pj) > FAMILY_TOL {
                return domain(format!("family member {j} is not idempotent"));
            }
            if max_abs_diff(&pj.adjoint(), pj) > FAMILY_TOL {
                return domain(format!("family member {j} is not self-adjoint"));
            }
            for (k, pk) in self.projections.iter().enumerate().skip(j + 1) {
                if (pj * pk).iter().any(|z| z.norm() > FAMILY_TOL) {
                    return domain(format!("family members {j} and {k} are not orthogonal"));
                }
            }
            sum += pj;
        }
        if max_abs_diff(&sum, &CMatrix::identity(n, n)) > FAMILY_TOL {
            return domain("family does not sum to the identity");
        }
        Ok(())
    }
}

fn check_partition(dim: usize, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; dim];
    for block in partition {
        if block.is_empty() {
            return domain("partition contains an empty block");
        }
        for &i in block {
            if i >= dim {
                return domain(format!("partition index {i} out of range for dimension {dim}"));
            }
            if seen[i] {
                return domain(format!("partition blocks overlap at index {i}"));
            }
            seen[i] = true;
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return domain(format!("partition does not cover index {i}"));
    }
    Ok(())
}

/// `P_k = Σ_{i ∈ block_k} |u_i⟩⟨u_i|` for the columns `u_i` of `basis`.
pub fn family_from_basis(basis: &CMatrix, partition: &[Vec<usize>]) -> Result<ProjectionFamily> {
    if !basis.is_square() {
        return Err(Error::NotSquare {
            rows: basis.nrows(),
            cols: basis.ncols(),
        });
    }
    let dim = basis.nrows();
    check_partition(dim, partition)?;
    let defect = unitarity_defect(basis);
    if defect > FAMILY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let projections = partition
        .iter()
        .map(|block| {
            let mut p = CMatrix::zeros(dim, dim);
            for &i in block {
                let u = basis.column(i);
                p += u * u.adjoint();
            }
            p
        })
        .collect();
    Ok(ProjectionFamily {
        dim,
        basis: basis.clone(),
        partition: partition.to_vec(),
        projections,
    })
}

/// Sorted block sizes of a partition, largest first.
pub fn partition_shape(partition: &[Vec<usize>]) -> Vec<usize> {
    let mut s: Vec<usize> = partition.iter().map(Vec::len).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// All set partitions of `{0, …, n−1}` (Bell-number many), finest first.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (idx, &b) in rgs.iter().enumerate() {
                blocks[b].push(idx);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            grow(i + 1, n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    grow(0, n, &mut Vec::with_capacity(n), 0, &mut out);
    out.sort_by_key(|p| std::cmp::Reverse(p.len()));
    out
}

/// Block probabilities `Σ_{i∈block} ⟨u_i|ρ|u_i⟩`, clamped into `[0, 1]`.
fn basis_probabilities(rho: &CMatrix, basis: &CMatrix, partition: &[Vec<usize>]) -> Vec<f64> {
    let ru = rho * basis;
    let diag: Vec<f64> = (0..basis.ncols())
        .map(|i| {
            basis
                .column(i)
                .iter()
                .zip(ru.column(i).iter())
                .map(|(u, v)| (u.conj() * v).re)
                .sum()
        })
        .collect();
    partition
        .iter()
        .map(|block| {
            let s: f64 = block.iter().map(|&i| diag[i]).sum();
            clamp_probability(s)
        })
        .collect()
}

fn clamp_probability(x: f64) -> f64 {
    if (-PROB_CLAMP..0.0).contains(&x) {
        0.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

/// `|a^{1/p} − b^{1/p}|^p`.
pub fn divergence_term(a: f64, b: f64, p: f64) -> f64 {
    if p == 1.0 {
        (a - b).abs()
    } else {
        (a.powf(1.0 / p) - b.powf(1.0 / p)).abs().powf(p)
    }
}

/// `(Σ_k |a_k^{1/p} − b_k^{1/p}|^p)^{1/p}` for two probability lists.
pub fn classical_dp(a: &[f64], b: &[f64], p: f64) -> f64 {
    let s: f64 = a.iter().zip(b).map(|(&x, &y)| divergence_term(x, y, p)).sum();
    if p == 1.0 {
        s
    } else {
        s.powf(1.0 / p)
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return domain(format!("metric exponent must be >= 1, got {p}"));
    }
    Ok(())
}

/// Value of the supremum's objective for one projection family.
pub fn dp_objective(rho: &DensityMatrix, sigma: &DensityMatrix, family: &ProjectionFamily, p: f64) -> Result<f64> {
    rho.check_same_dim(sigma)?;
    check_p(p)?;
    if family.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: family.dim(),
        });
    }
    family.validate()?;
    Ok(classical_dp(
        &family.probabilities(rho),
        &family.probabilities(sigma),
        p,
    ))
}

/// Hermitian generator from `dim²` reals: `dim` diagonal entries, then a
/// (real, imaginary) pair for each upper-triangular entry in row order.
fn generator(dim: usize, diag: Option<&[f64]>, offdiag: &[f64]) -> Hermitian {
    let mut h = CMatrix::zeros(dim, dim);
    if let Some(d) = diag {
        for i in 0..dim {
            h[(i, i)] = C64::new(d[i], 0.0);
        }
    }
    let mut k = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let z = C64::new(offdiag[k], offdiag[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    Hermitian::from_hermitian_part(&h)
}

/// `exp(i·H(θ))` for `θ` of length `dim²`.
pub fn unitary_from_params(dim: usize, theta: &[f64]) -> Result<CMatrix> {
    if theta.len() != dim * dim {
        return domain(format!(
            "expected {} parameters for dimension {dim}, got {}",
            dim * dim,
            theta.len()
        ));
    }
    Ok(exp_i(&generator(dim, Some(&theta[..dim]), &theta[dim..])))
}

/// Search settings for [`dp_supremum`].
#[derive(Debug, Clone)]
pub struct SupOptions {
    /// Starting points per partition shape; the first is the eigenbasis of `ρ − σ`.
    pub restarts: usize,
    pub seed: u64,
    /// Objective evaluations per local search; `None` means `400·dim²`.
    pub evals_per_restart: Option<usize>,
    pub f_tol: f64,
    /// Additional starting bases, searched with the finest partition.
    pub extra_starts: Vec<CMatrix>,
}

impl SupOptions {
    pub fn for_dim(dim: usize, seed: u64) -> Self {
        SupOptions {
            restarts: default_restarts(dim),
            seed,
            evals_per_restart: None,
            f_tol: 1e-8,
            extra_starts: Vec::new(),
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

pub fn default_restarts(dim: usize) -> usize {
    if dim <= 2 {
        16
    } else {
        48
    }
}

/// Outcome of the supremum search.
#[derive(Debug, Clone)]
pub struct DpResult {
    pub value: f64,
    pub family: ProjectionFamily,
    /// Starting points tried per partition shape (0 on the commuting shortcut).
    pub restarts_used: usize,
    /// Whether the winning local search met its tolerance.
    pub converged: bool,
}

struct Job {
    partition: usize,
    base: CMatrix,
}

struct JobResult {
    value: f64,
    basis: CMatrix,
    partition: usize,
    converged: bool,
}

/// Partitions searched, relative to the eigenbasis of `ρ − σ`.
fn candidate_partitions(dim: usize, diff_spectrum: &[f64]) -> Vec<Vec<Vec<usize>>> {
    if dim <= 4 {
        return set_partitions(dim);
    }
    let finest: Vec<Vec<usize>> = (0..dim).map(|i| vec![i]).collect();
    let mut out = vec![finest];
    for i in 0..dim - 1 {
        let mut p: Vec<Vec<usize>> = (0..dim).filter(|&j| j != i && j != i + 1).map(|j| vec![j]).collect();
        p.insert(0, vec![i, i + 1]);
        out.push(p);
    }
    let pos: Vec<usize> = (0..dim).filter(|&i| diff_spectrum[i] > 0.0).collect();
    let rest: Vec<usize> = (0..dim).filter(|&i| diff_spectrum[i] <= 0.0).collect();
    if !pos.is_empty() && !rest.is_empty() {
        out.push(vec![pos, rest]);
    }
    out.push(vec![(0..dim).collect()]);
    out
}

fn commutes(a: &CMatrix, b: &CMatrix) -> bool {
    max_abs_diff(&(a * b), &(b * a)) <= COMMUTE_TOL
}

/// Joint eigenbasis of two commuting Hermitian matrices.
fn joint_eigenbasis(a: &Hermitian, b: &Hermitian) -> CMatrix {
    // a generic combination splits degeneracies of either matrix
    let mix = a.add(&b.scale(std::f64::consts::FRAC_1_SQRT_2 + 0.1));
    eigh(&mix).basis
}

/// Searches for the projection family maximizing the `d_p` objective.
pub fn dp_supremum(rho: &DensityMatrix, sigma: &DensityMatrix, p: f64, opts: &SupOptions) -> Result<DpResult> {
    rho.check_same_dim(sigma)?;
    check_p(p)?;
    if opts.restarts == 0 {
        return domain("at least one restart is required");
    }
    let dim = rho.dim();
    let finest: Vec<Vec<usize>> = (0..dim).map(|i| vec![i]).collect();

    if rho.matrix() == sigma.matrix() {
        let family = family_from_basis(&CMatrix::identity(dim, dim), &finest)?;
        return Ok(DpResult {
            value: 0.0,
            family,
            restarts_used: 0,
            converged: true,
        });
    }
    if commutes(rho.matrix(), sigma.matrix()) {
        let basis = joint_eigenbasis(rho.hermitian(), sigma.hermitian());
        let family = family_from_basis(&basis, &finest)?;
        let value = classical_dp(&family.probabilities(rho), &family.probabilities(sigma), p);
        return Ok(DpResult {
            value,
            family,
            restarts_used: 0,
            converged: true,
        });
    }

    let diff = eigh(&rho.hermitian().sub(sigma.hermitian()));
    let anchor = diff.basis.clone();
    let partitions = candidate_partitions(dim, diff.spectrum.values());

    // one representative per block-size shape: relabeling basis columns maps
    // partitions of equal shape onto each other, so random starts on one
    // representative cover them all
    let mut reps: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (i, part) in partitions.iter().enumerate() {
        if part.len() > 1 {
            reps.entry(partition_shape(part)).or_insert(i);
        }
    }
    let mut rep_list: Vec<(usize, Vec<usize>)> = reps.into_iter().map(|(shape, i)| (i, shape)).collect();
    rep_list.sort();

    let mut jobs: Vec<Job> = Vec::new();
    for (i, part) in partitions.iter().enumerate() {
        if part.len() > 1 {
            jobs.push(Job {
                partition: i,
                base: anchor.clone(),
            });
        }
    }
    let finest_idx = 0;
    for base in &opts.extra_starts {
        if base.nrows() != dim || unitarity_defect(base) > 1e-8 {
            return domain("extra starting basis must be a unitary of matching dimension");
        }
        jobs.push(Job {
            partition: finest_idx,
            base: base.clone(),
        });
    }
    for (shape_no, (part_idx, _)) in rep_list.iter().enumerate() {
        for r in 1..opts.restarts {
            let s = rng::derive_seed(opts.seed, (shape_no as u64) << 32 | r as u64);
            let mut g = rng::seeded(s);
            jobs.push(Job {
                partition: *part_idx,
                base: rng::haar_unitary(dim, &mut g),
            });
        }
    }

    let nm = NelderMead {
        max_evals: opts.evals_per_restart.unwrap_or(400 * dim * dim),
        f_tol: opts.f_tol,
        initial_step: 0.5,
        polish_rounds: 1,
    };
    let results: Vec<JobResult> = jobs
        .par_iter()
        .map(|job| local_search(rho.matrix(), sigma.matrix(), p, &partitions[job.partition], job, &nm))
        .collect();

    // trivial partition {I} gives 0; anything positive beats it
    let mut best: Option<&JobResult> = None;
    for r in &results {
        if best.is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    let (value, basis, part, converged) = match best {
        Some(b) if b.value > 0.0 => (b.value, b.basis.clone(), &partitions[b.partition], b.converged),
        _ => (
            0.0,
            CMatrix::identity(dim, dim),
            partitions.last().expect("nonempty"),
            true,
        ),
    };
    let family = family_from_basis(&basis, part)?;
    Ok(DpResult {
        value,
        family,
        restarts_used: opts.restarts,
        converged,
    })
}

fn local_search(
    rho: &CMatrix,
    sigma: &CMatrix,
    p: f64,
    partition: &[Vec<usize>],
    job: &Job,
    nm: &NelderMead,
) -> JobResult {
    let dim = rho.nrows();
    let n_params = dim * (dim - 1);
    let basis_at = |theta: &[f64]| -> CMatrix { &job.base * exp_i(&generator(dim, None, theta)) };
    let value_at = |u: &CMatrix| -> f64 {
        classical_dp(
            &basis_probabilities(rho, u, partition),
            &basis_probabilities(sigma, u, partition),
            p,
        )
    };
    let start = vec![0.0; n_params];
    let m = nm.minimize(|theta| -value_at(&basis_at(theta)), &start);
    let basis = basis_at(&m.x);
    JobResult {
        value: value_at(&basis),
        basis,
        partition: job.partition,
        converged: m.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::{bures_metric, trace_metric};
    use crate::matcalc::real_matrix;
    use crate::states::random_density;
    use approx::assert_abs_diff_eq;

    fn example_pair() -> (DensityMatrix, DensityMatrix) {
        (
            DensityMatrix::from_diagonal(&[0.2, 0.8]).unwrap(),
            DensityMatrix::from_diagonal(&[0.4, 0.6]).unwrap(),
        )
    }

    fn singletons(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![i]).collect()
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(set_partitions(2).len(), 2);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(set_partitions(4)[0], singletons(4));
    }

    #[test]
    fn family_examples() {
        let f = family_from_basis(&CMatrix::identity(2, 2), &singletons(2)).unwrap();
        assert_eq!(
            f.projections()[0],
            Hermitian::from_real_diagonal(&[1.0, 0.0]).into_matrix()
        );
        assert_eq!(
            f.projections()[1],
            Hermitian::from_real_diagonal(&[0.0, 1.0]).into_matrix()
        );
        let whole = family_from_basis(&CMatrix::identity(3, 3), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(whole.len(), 1);
        assert!(max_abs_diff(&whole.projections()[0], &CMatrix::identity(3, 3)) < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = real_matrix(&[&[s, s], &[s, -s]]);
        let f = family_from_basis(&h, &singletons(2)).unwrap();
        let plus = real_matrix(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let minus = real_matrix(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        assert!(max_abs_diff(&f.projections()[0], &plus) < 1e-15);
        assert!(max_abs_diff(&f.projections()[1], &minus) < 1e-15);
        f.validate().unwrap();
    }

    #[test]
    fn bad_partitions_rejected() {
        let id = CMatrix::identity(3, 3);
        assert!(family_from_basis(&id, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(family_from_basis(&id, &[vec![0], vec![1]]).is_err());
        assert!(family_from_basis(&id, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(family_from_basis(&(id * C64::new(2.0, 0.0)), &singletons(3)).is_err());
    }

    #[test]
    fn objective_examples() {
        let (r, s) = example_pair();
        let eig = family_from_basis(&CMatrix::identity(2, 2), &singletons(2)).unwrap();
        let whole = family_from_basis(&CMatrix::identity(2, 2), &[vec![0, 1]]).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            assert_eq!(dp_objective(&r, &r, &eig, p).unwrap(), 0.0);
            assert_eq!(dp_objective(&r, &s, &whole, p).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(dp_objective(&r, &s, &eig, 1.0).unwrap(), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn unitary_chart() {
        let u = unitary_from_params(3, &[0.0; 9]).unwrap();
        assert!(max_abs_diff(&u, &CMatrix::identity(3, 3)) < 1e-15);
        assert!(unitary_from_params(3, &[0.0; 8]).is_err());

        // H = (π/2)·Y, parameters: diag (0, 0), upper entry -i·π/2
        let half_pi = std::f64::consts::FRAC_PI_2;
        let u = unitary_from_params(2, &[0.0, 0.0, 0.0, -half_pi]).unwrap();
        let out = u.column(0);
        assert_abs_diff_eq!(out[0].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(out[1].norm(), 1.0, epsilon = 1e-14);

        let mut g = rng::seeded(1);
        use rand::Rng;
        for _ in 0..1000 {
            let d = g.random_range(1..=4);
            let theta: Vec<f64> = (0..d * d).map(|_| g.random_range(-4.0..4.0)).collect();
            assert!(unitarity_defect(&unitary_from_params(d, &theta).unwrap()) <= 1e-10);
        }
    }

    #[test]
    fn identical_states_give_zero() {
        let r = random_density(3, 3, 4).unwrap();
        let res = dp_supremum(&r, &r, 2.5, &SupOptions::for_dim(3, 0)).unwrap();
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn commuting_inputs_use_joint_eigenbasis() {
        let (r, s) = example_pair();
        let res = dp_supremum(&r, &s, 1.0, &SupOptions::for_dim(2, 0)).unwrap();
        assert_abs_diff_eq!(res.value, 0.4, epsilon = 1e-14);
        let res = dp_supremum(&r, &s, 2.0, &SupOptions::for_dim(2, 0)).unwrap();
        assert_abs_diff_eq!(res.value, bures_metric(&r, &s).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn trace_and_bures_oracles_on_qubits() {
        for seed in 0..10 {
            let r = random_density(2, 2, seed).unwrap();
            let s = random_density(2, 1 + seed as usize % 2, seed + 77).unwrap();
            let opts = SupOptions::for_dim(2, seed);
            let d1 = dp_supremum(&r, &s, 1.0, &opts).unwrap();
            assert_abs_diff_eq!(d1.value, 2.0 * trace_metric(&r, &s).unwrap(), epsilon = 1e-6);
            let d2 = dp_supremum(&r, &s, 2.0, &opts).unwrap();
            assert_abs_diff_eq!(d2.value, bures_metric(&r, &s).unwrap(), epsilon = 1e-4);
            assert_abs_diff_eq!(dp_objective(&r, &s, &d2.family, 2.0).unwrap(), d2.value, epsilon = 1e-9);
        }
    }

    #[test]
    fn more_restarts_never_hurt() {
        let r = random_density(3, 3, 8).unwrap();
        let s = random_density(3, 2, 9).unwrap();
        let mut prev = 0.0;
        for k in 1..=4 {
            let v = dp_supremum(&r, &s, 3.0, &SupOptions::for_dim(3, 5).with_restarts(k))
                .unwrap()
                .value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn refinement_never_decreases_objective_at_p1() {
        let mut g = rng::seeded(3);
        for seed in 0..50 {
            let r = random_density(4, 4, seed).unwrap();
            let s = random_density(4, 2, seed + 9).unwrap();
            let u = rng::haar_unitary(4, &mut g);
            let coarse = family_from_basis(&u, &[vec![0, 1, 2], vec![3]]).unwrap();
            let mid = family_from_basis(&u, &[vec![0, 1], vec![2], vec![3]]).unwrap();
            let fine = family_from_basis(&u, &singletons(4)).unwrap();
            let c = dp_objective(&r, &s, &coarse, 1.0).unwrap();
            let m = dp_objective(&r, &s, &mid, 1.0).unwrap();
            let f = dp_objective(&r, &s, &fine, 1.0).unwrap();
            assert!(c <= m + 1e-15 && m <= f + 1e-15);
        }
    }
}
