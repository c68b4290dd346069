//! CPT maps in Kraus form and their Hilbert-Schmidt adjoints.

use crate::error::{domain, Error, Result};
use crate::matcalc::{max_abs_diff, unitarity_defect, CMatrix, Hermitian, C64};
use crate::rng;
use crate::states::DensityMatrix;
use crate::MAX_DIM;

/// Tolerance for `Σ K†K = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// A trace-preserving completely positive map `ρ ↦ Σ K ρ K†` on a single
/// dimension (input and output spaces coincide).
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<CMatrix>,
}

/// Standard channel families.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedChannel {
    /// `ρ ↦ (1−p)ρ + p·I/d`.
    Depolarizing(f64),
    /// Qubit decay `|1⟩ → |0⟩` with probability γ.
    AmplitudeDamping(f64),
    /// `ρ ↦ (1−p)ρ + p·diag(ρ)`.
    Dephasing(f64),
    Unitary(CMatrix),
}

impl KrausChannel {
    /// Validates shapes and completeness.
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Domain("channel needs at least one Kraus operator".into()))?;
        let dim = first.nrows();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        for k in &kraus {
            if !k.is_square() {
                return Err(Error::NotSquare {
                    rows: k.nrows(),
                    cols: k.ncols(),
                });
            }
            if k.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.nrows(),
                });
            }
        }
        let ch = KrausChannel { dim, kraus };
        let defect = ch.completeness_defect();
        if !(defect <= COMPLETENESS_TOL) {
            return Err(Error::NotTracePreserving(defect));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel {
            dim,
            kraus: vec![CMatrix::identity(dim, dim)],
        }
    }

    pub fn named(kind: &NamedChannel, dim: usize) -> Result<Self> {
        let in_unit = |x: f64, what: &str| -> Result<()> {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                domain(format!("{what} parameter must lie in [0,1], got {x}"))
            }
        };
        let c = |x: f64| C64::new(x, 0.0);
        match kind {
            NamedChannel::Depolarizing(p) => {
                in_unit(*p, "depolarizing")?;
                depolarizing(*p, dim)
            }
            NamedChannel::AmplitudeDamping(g) => {
                in_unit(*g, "amplitude damping")?;
                if dim != 2 {
                    return domain("amplitude damping is defined for qubits only");
                }
                let k0 = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c((1.0 - g).sqrt())]);
                let k1 = CMatrix::from_row_slice(2, 2, &[c(0.0), c(g.sqrt()), c(0.0), c(0.0)]);
                KrausChannel::new(vec![k0, k1])
            }
            NamedChannel::Dephasing(p) => {
                in_unit(*p, "dephasing")?;
                let mut kraus = vec![CMatrix::identity(dim, dim) * c((1.0 - p).sqrt())];
                for i in 0..dim {
                    let mut k = CMatrix::zeros(dim, dim);
                    k[(i, i)] = c(p.sqrt());
                    kraus.push(k);
                }
                KrausChannel::new(kraus)
            }
            NamedChannel::Unitary(u) => {
                if u.nrows() != dim || !u.is_square() {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: u.nrows(),
                    });
                }
                let defect = unitarity_defect(u);
                if !(defect <= COMPLETENESS_TOL) {
                    return Err(Error::NotUnitary(defect));
                }
                KrausChannel::new(vec![u.clone()])
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dim_in(&self) -> usize {
        self.dim
    }

    pub fn dim_out(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// Max entry of `|Σ K†K − I|`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            sum += k.adjoint() * k;
        }
        max_abs_diff(&sum, &CMatrix::identity(self.dim, self.dim))
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }

    /// `Σ K† X K`, the Hilbert-Schmidt adjoint. Unital for trace-preserving maps.
    pub fn adjoint_apply(&self, x: &Hermitian) -> Result<Hermitian> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out += k.adjoint() * x.matrix() * k;
        }
        Ok(Hermitian::from_hermitian_part(&out))
    }

    fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        Hermitian::from_hermitian_part(&out).into_matrix()
    }
}

/// Kraus set from the `d²` Weyl operators `X^a Z^b`.
fn depolarizing(p: f64, dim: usize) -> Result<KrausChannel> {
    let d = dim as f64;
    let omega = |k: usize| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d);
    let mut kraus = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let w = if a == 0 && b == 0 {
                1.0 - p + p / (d * d)
            } else {
                p / (d * d)
            };
            if w == 0.0 {
                continue;
            }
            let mut k = CMatrix::zeros(dim, dim);
            for j in 0..dim {
                // X^a Z^b |j⟩ = ω^{bj} |j+a⟩
                k[((j + a) % dim, j)] = omega((b * j) % dim) * w.sqrt();
            }
            kraus.push(k);
        }
    }
    KrausChannel::new(kraus)
}

/// Kraus blocks of a seeded Haar-like isometry `dim → dim·env_dim`.
pub fn random_channel(dim: usize, env_dim: usize, seed: u64) -> Result<KrausChannel> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    if env_dim == 0 {
        return domain("environment dimension must be at least 1");
    }
    let mut r = rng::seeded(seed);
    let v = rng::haar_isometry(dim, env_dim, &mut r);
    let kraus = (0..env_dim).map(|k| v.rows(k * dim, dim).into_owned()).collect();
    KrausChannel::new(kraus)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::states::random_density;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn apply_preserves_states(dim in 1usize..=4, env in 1usize..=4, rank in 1usize..=4, seed in any::<u64>()) {
            let ch = random_channel(dim, env, seed).unwrap();
            let out = ch.apply(&random_density(dim, rank.min(dim), seed ^ 1).unwrap()).unwrap();
            prop_assert!((out.hermitian().trace() - 1.0).abs() <= 1e-10);
            prop_assert!(out.spectrum().min() >= -1e-9);
        }

        #[test]
        fn adjoint_is_unital_and_positive(dim in 1usize..=4, env in 1usize..=4, seed in any::<u64>()) {
            let ch = random_channel(dim, env, seed).unwrap();
            let id = ch.adjoint_apply(&Hermitian::identity(dim)).unwrap();
            prop_assert!(max_abs_diff(id.matrix(), &CMatrix::identity(dim, dim)) <= 1e-10);
            let x = random_density(dim, dim, seed ^ 2).unwrap();
            prop_assert!(ch.adjoint_apply(x.hermitian()).unwrap().eigenvalues().min() >= -1e-12);
        }
    }
}
