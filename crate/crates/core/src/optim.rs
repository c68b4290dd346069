//! Derivative-free local minimization (Nelder-Mead simplex).
//!
//! Coefficients follow the dimension-adaptive choice of Gao and Han, which
//! behaves better than the textbook constants once the parameter count
//! passes four or five.

/// Simplex search settings.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Hard cap on objective evaluations.
    pub max_evals: usize,
    /// Converged when `f(worst) − f(best)` falls to this level.
    pub f_tol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Rebuilds after convergence; guards against a collapsed simplex.
    pub polish_rounds: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_evals: 2000,
            f_tol: 1e-8,
            initial_step: 0.5,
            polish_rounds: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let n = x0.len();
        if n == 0 {
            let value = eval(x0, &mut evals);
            return Minimum {
                x: Vec::new(),
                value,
                evals,
                converged: true,
            };
        }

        let mut best_x = x0.to_vec();
        let mut best_v = eval(x0, &mut evals);
        let mut step = self.initial_step;
        let mut converged = false;
        for round in 0..=self.polish_rounds {
            let run = self.run(&mut eval, &best_x, best_v, step, &mut evals);
            let improved = best_v - run.1;
            if run.1 <= best_v {
                best_x = run.0;
                best_v = run.1;
            }
            converged = run.2;
            if !converged || evals >= self.max_evals {
                break;
            }
            if round > 0 && improved <= self.f_tol {
                break;
            }
            step *= 0.1;
        }
        Minimum {
            x: best_x,
            value: best_v,
            evals,
            converged,
        }
    }

    fn run<E: FnMut(&[f64], &mut usize) -> f64>(
        &self,
        eval: &mut E,
        x0: &[f64],
        f0: f64,
        step: f64,
        evals: &mut usize,
    ) -> (Vec<f64>, f64, bool) {
        let n = x0.len();
        let nf = n as f64;
        let alpha = 1.0;
        let gamma = 1.0 + 2.0 / nf;
        let rho = 0.75 - 1.0 / (2.0 * nf);
        let sigma = 1.0 - 1.0 / nf;

        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        let mut vals: Vec<f64> = Vec::with_capacity(n + 1);
        pts.push(x0.to_vec());
        vals.push(f0);
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            vals.push(eval(&x, evals));
            pts.push(x);
        }

        let mut order: Vec<usize> = (0..=n).collect();
        let mut centroid = vec![0.0; n];
        let mut trial = vec![0.0; n];
        let mut trial2 = vec![0.0; n];
        loop {
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            let (ib, iw, isw) = (order[0], order[n], order[n - 1]);
            if vals[iw] - vals[ib] <= self.f_tol {
                return (pts[ib].clone(), vals[ib], true);
            }
            if *evals >= self.max_evals {
                return (pts[ib].clone(), vals[ib], false);
            }

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for &k in &order[..n] {
                for (c, x) in centroid.iter_mut().zip(&pts[k]) {
                    *c += x / nf;
                }
            }
            let along = |t: f64, from: &[f64], out: &mut Vec<f64>, c: &[f64]| {
                for ((o, &ci), &fi) in out.iter_mut().zip(c).zip(from) {
                    *o = ci + t * (ci - fi);
                }
            };

            along(alpha, &pts[iw], &mut trial, &centroid);
            let fr = eval(&trial, evals);
            if fr < vals[ib] {
                along(alpha * gamma, &pts[iw], &mut trial2, &centroid);
                let fe = eval(&trial2, evals);
                if fe < fr {
                    pts[iw].copy_from_slice(&trial2);
                    vals[iw] = fe;
                } else {
                    pts[iw].copy_from_slice(&trial);
                    vals[iw] = fr;
                }
                continue;
            }
            if fr < vals[isw] {
                pts[iw].copy_from_slice(&trial);
                vals[iw] = fr;
                continue;
            }
            let (coef, bound) = if fr < vals[iw] {
                (alpha * rho, fr)
            } else {
                (-rho, vals[iw])
            };
            along(coef, &pts[iw], &mut trial2, &centroid);
            let fc = eval(&trial2, evals);
            if fc < bound {
                pts[iw].copy_from_slice(&trial2);
                vals[iw] = fc;
                continue;
            }
            // shrink toward the best vertex
            let xb = pts[ib].clone();
            for &k in &order[1..] {
                for (x, b) in pts[k].iter_mut().zip(&xb) {
                    *x = b + sigma * (*x - b);
                }
                vals[k] = eval(&pts[k], evals);
            }
        }
    }
}
