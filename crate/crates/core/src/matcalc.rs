//! Functional calculus on Hermitian matrices.
//!
//! All routines go through a single eigendecomposition: spectra are sorted
//! in descending order (stable, so ties keep the solver's order) and every
//! matrix function is applied as `V · diag(f(λ)) · V†`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::error::{domain, Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Max-entry tolerance for `A = A†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are numerical drift and get clamped to 0.
pub const PSD_TOL: f64 = 1e-10;

/// Real eigenvalues (or singular values) in descending order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts descending. The sort is stable, so equal values keep input order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.0.last().copied().unwrap_or(f64::INFINITY)
    }

    pub fn max(&self) -> f64 {
        self.0.first().copied().unwrap_or(f64::NEG_INFINITY)
    }

    /// Zero-pads to `len` entries and restores descending order.
    pub fn padded(&self, len: usize) -> Spectrum {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0.0);
        }
        Spectrum::from_unsorted(v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Spectrum {
        Spectrum::from_unsorted(self.0.iter().map(|&x| f(x)).collect())
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// A square complex matrix known to equal its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian(CMatrix);

impl Hermitian {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] and symmetrizes.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let asym = hermitian_defect(&m);
        if !(asym <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Hermitian::from_hermitian_part(&m))
    }

    /// Keeps `(m + m†)/2`. Exact for inputs that are already Hermitian.
    pub fn from_hermitian_part(m: &CMatrix) -> Self {
        let n = m.nrows();
        let mut h = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            }
        }
        Hermitian(h)
    }

    pub fn identity(dim: usize) -> Self {
        Hermitian(CMatrix::identity(dim, dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Hermitian(m)
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = C64::new(x, 0.0);
            }
        }
        Hermitian::new(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn eigenvalues(&self) -> Spectrum {
        Spectrum::from_unsorted(self.0.clone().symmetric_eigenvalues().iter().copied().collect())
    }

    pub fn sub(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 - &other.0)
    }

    pub fn add(&self, other: &Hermitian) -> Hermitian {
        Hermitian(&self.0 + &other.0)
    }

    pub fn scale(&self, s: f64) -> Hermitian {
        Hermitian(self.0.map(|z| z * s))
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Hermitian {
        Hermitian::from_hermitian_part(&(u * &self.0 * u.adjoint()))
    }
}

/// Largest entry of `|m − m†|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition `H = basis · diag(spectrum) · basis†`.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub spectrum: Spectrum,
    /// Unitary with eigenvectors as columns, in spectrum order.
    pub basis: CMatrix,
}

impl Eigh {
    /// `basis · diag(f(λ)) · basis†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Hermitian {
        let n = self.basis.nrows();
        let mut scaled = self.basis.clone();
        for (j, &lam) in self.spectrum.values().iter().enumerate() {
            let w = f(lam);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        Hermitian::from_hermitian_part(&(scaled * self.basis.adjoint()))
    }

    pub fn reconstruct(&self) -> Hermitian {
        self.apply(|x| x)
    }
}

/// Eigendecomposition with descending eigenvalues.
pub fn eigh(h: &Hermitian) -> Eigh {
    let eig = SymmetricEigen::new(h.0.clone());
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut basis = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        values.push(eig.eigenvalues[k]);
        basis.set_column(col, &eig.eigenvectors.column(k));
    }
    Eigh {
        spectrum: Spectrum(values),
        basis,
    }
}

/// `A^r` for PSD `A` and `r > 0`.
pub fn mat_power(a: &Hermitian, r: f64) -> Result<Hermitian> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("matrix power exponent must be positive, got {r}"));
    }
    if r == 1.0 {
        return Ok(a.clone());
    }
    let e = eigh(a);
    let min = e.spectrum.min();
    if min < -PSD_TOL {
        return Err(Error::NotPsd(min));
    }
    // eigenvalues at roundoff level are zero; their fractional powers are not small
    let floor = 64.0 * f64::EPSILON * e.spectrum.max().max(0.0);
    Ok(e.apply(|x| if x > floor { x.powf(r) } else { 0.0 }))
}

/// Operator absolute value `|H| = √(H²)`.
pub fn mat_abs(h: &Hermitian) -> Hermitian {
    eigh(h).apply(f64::abs)
}

/// `(Σ s_i^p)^{1/p}` over a list of nonnegative magnitudes.
pub fn schatten_from_values(values: impl IntoIterator<Item = f64>, p: f64) -> f64 {
    if p == 1.0 {
        return values.into_iter().map(f64::abs).sum();
    }
    values.into_iter().map(|s| s.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Schatten p-norm from the singular values of an arbitrary complex matrix.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return domain(format!("Schatten exponent must be >= 1, got {p}"));
    }
    let sv = a.clone().singular_values();
    Ok(schatten_from_values(sv.iter().copied(), p))
}

/// Schatten p-norm of a Hermitian matrix from its eigenvalues.
pub fn schatten_norm_hermitian(h: &Hermitian, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return domain(format!("Schatten exponent must be >= 1, got {p}"));
    }
    Ok(schatten_from_values(h.eigenvalues().into_vec(), p))
}

/// Minimum eigenvalue is at least `-tol`.
pub fn is_psd(h: &Hermitian, tol: f64) -> bool {
    h.eigenvalues().min() >= -tol
}

/// `exp(i·H)`, unitary for Hermitian `H`.
pub fn exp_i(h: &Hermitian) -> CMatrix {
    let e = eigh(h);
    let n = h.dim();
    let mut scaled = e.basis.clone();
    for (j, &lam) in e.spectrum.values().iter().enumerate() {
        let phase = C64::from_polar(1.0, lam);
        for i in 0..n {
            scaled[(i, j)] *= phase;
        }
    }
    scaled * e.basis.adjoint()
}

/// Largest entry of `|U†U − I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    let g = u.adjoint() * u;
    max_abs_diff(&g, &CMatrix::identity(n, n))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Kronecker product, first factor as the slow index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0))
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;

    fn random_hermitian(dim: usize, seed: u64) -> Hermitian {
        let g = rng::ginibre(dim, dim, &mut rng::seeded(seed));
        Hermitian::from_hermitian_part(&(&g + g.adjoint()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn eigh_reconstructs(dim in 1usize..=5, seed in any::<u64>()) {
            let h = random_hermitian(dim, seed);
            let e = eigh(&h);
            prop_assert!(max_abs_diff(e.reconstruct().matrix(), h.matrix()) <= 1e-10);
            prop_assert!(e.spectrum.values().windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn schatten_triangle(dim in 1usize..=4, p in 1.0f64..4.0, seed in any::<u64>()) {
            let mut g = rng::seeded(seed);
            let a = rng::ginibre(dim, dim, &mut g);
            let b = rng::ginibre(dim, dim, &mut g);
            let lhs = schatten_norm(&(&a + &b), p).unwrap();
            prop_assert!(lhs <= schatten_norm(&a, p).unwrap() + schatten_norm(&b, p).unwrap() + 1e-10);
        }

        #[test]
        fn schatten_unitary_invariance(dim in 1usize..=4, p in 1.0f64..4.0, seed in any::<u64>()) {
            let mut g = rng::seeded(seed);
            let a = rng::ginibre(dim, dim, &mut g);
            let u = rng::haar_unitary(dim, &mut g);
            let v = rng::haar_unitary(dim, &mut g);
            let moved = schatten_norm(&(&u * &a * &v), p).unwrap();
            prop_assert!((moved - schatten_norm(&a, p).unwrap()).abs() <= 1e-10);
        }

        #[test]
        fn power_composition(dim in 1usize..=4, r in 0.1f64..2.0, s in 0.1f64..2.0, seed in any::<u64>()) {
            let g = rng::ginibre(dim, dim, &mut rng::seeded(seed));
            let a = Hermitian::from_hermitian_part(&(&g * g.adjoint()));
            let lhs = mat_power(&a, r).unwrap().matrix() * mat_power(&a, s).unwrap().matrix();
            prop_assert!(max_abs_diff(&lhs, mat_power(&a, r + s).unwrap().matrix()) <= 1e-9 * (1.0 + a.eigenvalues().max().powf(r + s)));
        }
    }
}
