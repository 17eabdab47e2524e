//! Derivative-free Nelder–Mead ascent.
//!
//! Coordinates are `f64`; objective values can be any ordered type so that
//! comparisons happen at the objective's own precision.

use rug::Float;

use crate::Result;

/// Ordered objective value with a scalar gap used for the stopping rule.
pub trait SimplexValue: Clone + PartialOrd {
    fn gap(&self, other: &Self) -> f64;
}

impl SimplexValue for f64 {
    fn gap(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl SimplexValue for Float {
    fn gap(&self, other: &Self) -> f64 {
        Float::with_val(self.prec(), self - other).abs().to_f64()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    pub initial_step: f64,
    pub coord_tolerance: f64,
    pub value_tolerance: f64,
    pub max_evals: usize,
}

#[derive(Clone, Debug)]
pub struct SimplexOutcome<V> {
    pub x: Vec<f64>,
    pub value: V,
    pub evals: usize,
    pub converged: bool,
}

/// Maximises `f` starting from an axis-aligned simplex around `x0`.
///
/// Stops once every vertex is within `coord_tolerance` (max-norm) of the best
/// one and the value spread is below `value_tolerance`.
pub fn maximize<V, F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> Result<SimplexOutcome<V>>
where
    V: SimplexValue,
    F: FnMut(&[f64]) -> Result<V>,
{
    let n = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, V)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evals)?));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let v = eval(&x, &mut evals)?;
        simplex.push((x, v));
    }

    // Adaptive coefficients for the dimension (Gao & Han).
    let dim = n as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / dim);
    let (rho, sigma) = (0.75 - 1.0 / (2.0 * dim), 1.0 - 1.0 / dim);

    let mut converged = false;
    while evals < opts.max_evals {
        // Best first; ties keep the earlier vertex for determinism.
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));

        let best = &simplex[0];
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&best.0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let spread = simplex[1..]
            .iter()
            .map(|(_, v)| best.1.gap(v))
            .fold(0.0, f64::max);
        if diameter <= opts.coord_tolerance && spread <= opts.value_tolerance {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / dim)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let vr = eval(&xr, &mut evals)?;
        if vr > simplex[0].1 {
            let xe = along(alpha * gamma);
            let ve = eval(&xe, &mut evals)?;
            simplex[n] = if ve > vr { (xe, ve) } else { (xr, vr) };
            continue;
        }
        if vr > simplex[n - 1].1 {
            simplex[n] = (xr, vr);
            continue;
        }
        let (xc, vc) = if vr > worst.1 {
            let xc = along(alpha * rho);
            let vc = eval(&xc, &mut evals)?;
            (xc, vc)
        } else {
            let xc = along(-rho);
            let vc = eval(&xc, &mut evals)?;
            (xc, vc)
        };
        if vc > worst.1 && (vc > vr || vr <= worst.1) {
            simplex[n] = (xc, vc);
            continue;
        }
        // Shrink towards the best vertex.
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best_x
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + sigma * (v - b))
                .collect();
            let v = eval(&x, &mut evals)?;
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, value) = simplex.swap_remove(0);
    Ok(SimplexOutcome {
        x,
        value,
        evals,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_peak() {
        let opts = SimplexOptions {
            initial_step: 0.1,
            coord_tolerance: 1e-10,
            value_tolerance: 1e-18,
            max_evals: 10_000,
        };
        let f = |x: &[f64]| -> Result<f64> {
            Ok(-(x[0] - 0.3).powi(2) - 2.0 * (x[1] + 0.2).powi(2) - (x[0] - 0.3) * (x[1] + 0.2))
        };
        let out = maximize(f, &[0.0, 0.0], &opts).unwrap();
        assert!(out.converged);
        assert!((out.x[0] - 0.3).abs() < 1e-8 && (out.x[1] + 0.2).abs() < 1e-8);
    }

    #[test]
    fn respects_evaluation_budget() {
        let opts = SimplexOptions {
            initial_step: 0.5,
            coord_tolerance: 0.0,
            value_tolerance: 0.0,
            max_evals: 50,
        };
        let out = maximize(|x: &[f64]| Ok(-x[0].abs()), &[3.0], &opts).unwrap();
        assert!(!out.converged);
        assert!(out.evals <= 52);
    }
}
