//! `Theta_Max`: the supremum of `sqrt(<s(t), s(t)>)` over the Jacobian torus.
//!
//! The search is a deterministic lattice-coordinate grid screened in `f64`,
//! followed by Nelder–Mead ascents at working precision from the best grid
//! local maxima. Coordinates are periodic, so the simplex moves freely in
//! `R^{2g}` and the argmax is wrapped back into `[0,1)^{2g}` at the end.

use rayon::prelude::*;
use rug::Float;

use crate::numeric::Real;
use crate::simplex::{self, SimplexOptions, SimplexValue};
use crate::theta::{PeriodMatrix, PrecisionConfig, ThetaEvaluator};
use crate::{Error, Result};

/// Largest admissible grid size `grid_points_per_dim^{2g}`.
pub const GRID_BUDGET: u64 = 100_000_000;

const SCREEN_TARGET: f64 = 1e-10;
const MAX_SIMPLEX_EVALS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub grid_points_per_dim: usize,
    pub refine_starts: usize,
    pub coord_tolerance: f64,
    pub value_tolerance: f64,
    /// Grid offset in units of one cell; `0.5` evaluates cell midpoints.
    pub grid_offset: f64,
}

impl OptimizerConfig {
    /// 32 points per axis for `g >= 2` and 256 for `g = 1`.
    pub fn for_genus(g: usize) -> Self {
        OptimizerConfig {
            grid_points_per_dim: if g == 1 { 256 } else { 32 },
            refine_starts: 4,
            coord_tolerance: 1e-12,
            value_tolerance: 1e-26,
            grid_offset: 0.0,
        }
    }

    /// [`Self::for_genus`] with tolerances loosened to what `bits` can resolve.
    pub fn for_precision(g: usize, bits: u32) -> Self {
        let value_tolerance = 2f64.powi(-(bits as i32 - 12)).max(1e-26);
        OptimizerConfig {
            value_tolerance,
            coord_tolerance: value_tolerance.sqrt().max(1e-12),
            ..Self::for_genus(g)
        }
    }

    pub fn validate(&self, g: usize) -> Result<()> {
        if self.grid_points_per_dim < 8 {
            return Err(Error::ConfigRejected(
                "grid_points_per_dim must be at least 8".into(),
            ));
        }
        if self.refine_starts < 4 {
            return Err(Error::ConfigRejected("refine_starts must be at least 4".into()));
        }
        if !(self.coord_tolerance > 0.0 && self.value_tolerance > 0.0) {
            return Err(Error::ConfigRejected("tolerances must be positive".into()));
        }
        let exponent = 2 * g as u32;
        let size = (self.grid_points_per_dim as u64).checked_pow(exponent);
        match size {
            Some(s) if s <= GRID_BUDGET => Ok(()),
            _ => Err(Error::ConfigRejected(format!(
                "grid of {}^{} points exceeds the budget of {GRID_BUDGET}",
                self.grid_points_per_dim, exponent
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMaxResult {
    pub value: Float,
    /// Lattice coordinates `(a, b)` of the maximiser, `z = a + tau*b`.
    pub argmax_coords: Vec<f64>,
    /// Best screened grid value, re-evaluated at working precision.
    pub grid_best: Float,
}

fn grid_coords(index: usize, n: usize, dims: usize, offset: f64) -> Vec<f64> {
    let mut rest = index;
    let mut coords = vec![0.0; dims];
    for c in coords.iter_mut().rev() {
        *c = ((rest % n) as f64 + offset) / n as f64;
        rest /= n;
    }
    coords
}

/// Indices of grid points that are not beaten by any of their `3^{dims} - 1`
/// periodic neighbours.
fn grid_local_maxima(values: &[f64], n: usize, dims: usize) -> Vec<usize> {
    let neighbour_offsets: Vec<Vec<i64>> = (0..3usize.pow(dims as u32))
        .map(|k| {
            let mut r = k;
            (0..dims)
                .map(|_| {
                    let d = (r % 3) as i64 - 1;
                    r /= 3;
                    d
                })
                .collect::<Vec<i64>>()
        })
        .filter(|d| d.iter().any(|&x| x != 0))
        .collect();
    (0..values.len())
        .into_par_iter()
        .filter(|&idx| {
            let mut digits = vec![0i64; dims];
            let mut r = idx;
            for d in digits.iter_mut().rev() {
                *d = (r % n) as i64;
                r /= n;
            }
            neighbour_offsets.iter().all(|off| {
                let mut j = 0usize;
                for (d, o) in digits.iter().zip(off) {
                    j = j * n + (d + o).rem_euclid(n as i64) as usize;
                }
                values[j] <= values[idx]
            })
        })
        .collect()
}

fn refine<R: Real + SimplexValue>(
    ev: &ThetaEvaluator<R>,
    starts: &[Vec<f64>],
    step: f64,
    ocfg: &OptimizerConfig,
) -> Result<(Vec<f64>, R)> {
    let opts = SimplexOptions {
        initial_step: step,
        coord_tolerance: ocfg.coord_tolerance,
        value_tolerance: ocfg.value_tolerance,
        max_evals: MAX_SIMPLEX_EVALS,
    };
    let outcomes = starts
        .par_iter()
        .map(|x0| simplex::maximize(|x: &[f64]| ev.norm_at_coords(x).map(|v| v.sqrt()), x0, &opts))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(Vec<f64>, R)> = None;
    for out in outcomes {
        let better = match &best {
            None => true,
            Some((_, v)) => out.value > *v,
        };
        if better {
            best = Some((out.x, out.value));
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no refinement starts".into()))
}

/// Computes `Theta_Max(tau)`.
pub fn theta_max(
    tau: &PeriodMatrix,
    ocfg: &OptimizerConfig,
    cfg: &PrecisionConfig,
) -> Result<ThetaMaxResult> {
    cfg.validate()?;
    let g = tau.genus();
    ocfg.validate(g)?;
    let dims = 2 * g;
    let n = ocfg.grid_points_per_dim;
    let total = n.pow(dims as u32);

    let screen = ThetaEvaluator::<f64>::with_precision(tau, SCREEN_TARGET, 53)?;
    let values = (0..total)
        .into_par_iter()
        .map(|idx| {
            screen
                .norm_at_coords(&grid_coords(idx, n, dims, ocfg.grid_offset))
                .map(f64::sqrt)
        })
        .collect::<Result<Vec<f64>>>()?;

    // Candidates: grid local maxima by decreasing value, ties to the lowest
    // index, topped up with the best remaining cells.
    let by_value = |a: &usize, b: &usize| values[*b].total_cmp(&values[*a]).then(a.cmp(b));
    let mut candidates = grid_local_maxima(&values, n, dims);
    candidates.sort_by(by_value);
    candidates.truncate(ocfg.refine_starts);
    if candidates.len() < ocfg.refine_starts {
        let mut all: Vec<usize> = (0..total).collect();
        all.sort_by(by_value);
        for idx in all {
            if candidates.len() == ocfg.refine_starts {
                break;
            }
            if !candidates.contains(&idx) {
                candidates.push(idx);
            }
        }
    }
    let starts: Vec<Vec<f64>> = candidates
        .iter()
        .map(|&idx| grid_coords(idx, n, dims, ocfg.grid_offset))
        .collect();
    let grid_best_coords = starts[0].clone();
    let step = 0.5 / n as f64;
    let out_bits = cfg.working_precision_bits;

    let (x, value, grid_best) = if cfg.is_double() {
        let (x, v) = refine(&screen, &starts, step, ocfg)?;
        let gb = values[candidates[0]];
        (x, Float::with_val(out_bits, v), Float::with_val(out_bits, gb))
    } else {
        let ev = ThetaEvaluator::<Float>::new(tau, cfg)?;
        let (x, v) = refine(&ev, &starts, step, ocfg)?;
        let gb = ev.norm_at_coords(&grid_best_coords)?.sqrt();
        (x, Float::with_val(out_bits, v), Float::with_val(out_bits, gb))
    };

    let (argmax_coords, value) = if value >= grid_best {
        (x, value)
    } else {
        (grid_best_coords, grid_best.clone())
    };
    Ok(ThetaMaxResult {
        value,
        argmax_coords: argmax_coords
            .iter()
            .map(|c| {
                let w = c.rem_euclid(1.0);
                if w >= 1.0 {
                    0.0
                } else {
                    w
                }
            })
            .collect(),
        grid_best,
    })
}

/// `sup` of `Theta_Max` over the complex embeddings, one period matrix each.
pub fn theta_max_over_embeddings(
    taus: &[PeriodMatrix],
    ocfg: &OptimizerConfig,
    cfg: &PrecisionConfig,
) -> Result<Float> {
    if taus.is_empty() {
        return Err(Error::InvalidInput("no period matrices supplied".into()));
    }
    let mut best: Option<Float> = None;
    for tau in taus {
        let v = theta_max(tau, ocfg, cfg)?.value;
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    Ok(best.expect("non-empty list"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{theta_norm, ThetaPoint};

    fn quick(n: usize) -> OptimizerConfig {
        OptimizerConfig {
            grid_points_per_dim: n,
            refine_starts: 4,
            coord_tolerance: 1e-8,
            value_tolerance: 1e-13,
            grid_offset: 0.0,
        }
    }

    #[test]
    fn rejects_oversized_grid() {
        let tau = PeriodMatrix::bost_mestre(128);
        let cfg = OptimizerConfig {
            grid_points_per_dim: 101,
            ..quick(8)
        };
        assert!(matches!(
            theta_max(&tau, &cfg, &PrecisionConfig::double()),
            Err(Error::ConfigRejected(_))
        ));
        assert!(matches!(
            theta_max(&tau, &quick(4), &PrecisionConfig::double()),
            Err(Error::ConfigRejected(_))
        ));
    }

    #[test]
    fn grid_coordinates_are_lexicographic() {
        assert_eq!(grid_coords(0, 4, 2, 0.0), vec![0.0, 0.0]);
        assert_eq!(grid_coords(1, 4, 2, 0.0), vec![0.0, 0.25]);
        assert_eq!(grid_coords(4, 4, 2, 0.5), vec![0.375, 0.125]);
    }

    /// Dense 100 x 100 grid of independent brute-force sums followed by
    /// alternating golden-section refinement.
    fn genus_one_oracle(tau_im: f64) -> f64 {
        let pi = std::f64::consts::PI;
        let norm = |a: f64, b: f64| {
            let (mut sr, mut si) = (0.0, 0.0);
            for m in -40i32..=40 {
                let m = m as f64;
                // exponent 2 pi i (m^2 tau / 2 + m (a + tau b)) with tau = i*tau_im
                let re = m * a;
                let im = tau_im * (0.5 * m * m + m * b);
                let modulus = (-2.0 * pi * im).exp();
                sr += modulus * (2.0 * pi * re).cos();
                si += modulus * (2.0 * pi * re).sin();
            }
            (tau_im.sqrt() * (-2.0 * pi * tau_im * b * b).exp() * (sr * sr + si * si)).sqrt()
        };
        let (mut ba, mut bb, mut best) = (0.0, 0.0, 0.0);
        for i in 0..100 {
            for j in 0..100 {
                let (a, b) = (i as f64 / 100.0, j as f64 / 100.0);
                let v = norm(a, b);
                if v > best {
                    (ba, bb, best) = (a, b, v);
                }
            }
        }
        let golden = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
            let r = (5f64.sqrt() - 1.0) / 2.0;
            let (mut lo, mut hi) = (lo, hi);
            for _ in 0..200 {
                let x1 = hi - r * (hi - lo);
                let x2 = lo + r * (hi - lo);
                if f(x1) < f(x2) {
                    lo = x1;
                } else {
                    hi = x2;
                }
            }
            0.5 * (lo + hi)
        };
        for _ in 0..20 {
            ba = golden(&|a| norm(a, bb), ba - 0.01, ba + 0.01);
            bb = golden(&|b| norm(ba, b), bb - 0.01, bb + 0.01);
        }
        norm(ba, bb)
    }

    #[test]
    fn genus_one_matches_dense_oracle() {
        let tau = PeriodMatrix::from_f64(1, &[(0.0, 1.0)]).unwrap();
        let res = theta_max(&tau, &OptimizerConfig::for_genus(1), &PrecisionConfig::default())
            .unwrap();
        let oracle = genus_one_oracle(1.0);
        assert!((res.value.to_f64() - oracle).abs() < 1e-8, "{} vs {oracle}", res.value);
        assert!(res.value >= res.grid_best);
        assert!(res.argmax_coords.iter().all(|c| (0.0..1.0).contains(c)));
    }

    #[test]
    fn block_diagonal_factorises() {
        let t1 = PeriodMatrix::from_f64(1, &[(0.0, 1.0)]).unwrap();
        let t2 = PeriodMatrix::from_f64(1, &[(0.3, 1.4)]).unwrap();
        let t = PeriodMatrix::block_diagonal(&[&t1, &t2]).unwrap();
        let cfg = PrecisionConfig::double();
        let m1 = theta_max(&t1, &quick(64), &cfg).unwrap().value.to_f64();
        let m2 = theta_max(&t2, &quick(64), &cfg).unwrap().value.to_f64();
        let m = theta_max(&t, &quick(12), &cfg).unwrap().value.to_f64();
        assert!((m - m1 * m2).abs() < 1e-6 * m, "{m} vs {}", m1 * m2);
    }

    #[test]
    fn embeddings_take_the_maximum() {
        let cfg = PrecisionConfig::double();
        let ocfg = quick(64);
        let a = PeriodMatrix::from_f64(1, &[(0.0, 1.0)]).unwrap();
        let b = PeriodMatrix::from_f64(1, &[(0.5, 0.8)]).unwrap();
        let ma = theta_max(&a, &ocfg, &cfg).unwrap().value;
        let mb = theta_max(&b, &ocfg, &cfg).unwrap().value;
        let single = theta_max_over_embeddings(std::slice::from_ref(&a), &ocfg, &cfg).unwrap();
        assert_eq!(single, ma);
        let twice = theta_max_over_embeddings(&[a.clone(), a.clone()], &ocfg, &cfg).unwrap();
        assert_eq!(twice, ma);
        let both = theta_max_over_embeddings(&[a, b], &ocfg, &cfg).unwrap();
        assert_eq!(both, if ma > mb { ma } else { mb });
        assert!(theta_max_over_embeddings(&[], &ocfg, &cfg).is_err());
    }

    #[test]
    fn probes_never_beat_the_maximum() {
        use rand::{Rng, SeedableRng};
        let tau = PeriodMatrix::from_f64(2, &[(0.1, 1.0), (0.2, 0.3), (0.2, 0.3), (-0.1, 0.9)])
            .unwrap();
        let cfg = PrecisionConfig::double();
        let ocfg = quick(12);
        let best = theta_max(&tau, &ocfg, &cfg).unwrap().value.to_f64();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let c: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..1.0)).collect();
            let z = ThetaPoint::from_lattice_coords(&tau, &c, 128).unwrap();
            let v = theta_norm(&tau, &z, &cfg).unwrap().to_f64().sqrt();
            assert!(v <= best + ocfg.value_tolerance.max(1e-12), "{v} > {best}");
        }
    }

    #[test]
    fn budget_monotone_and_shift_stable() {
        let tau = PeriodMatrix::bost_mestre(128);
        let cfg = PrecisionConfig::double();
        let coarse = theta_max(&tau, &quick(8), &cfg).unwrap().value.to_f64();
        let fine = theta_max(&tau, &quick(16), &cfg).unwrap().value.to_f64();
        assert!(fine >= coarse - quick(16).value_tolerance);
        let shifted = theta_max(
            &tau,
            &OptimizerConfig {
                grid_offset: 0.5,
                ..quick(16)
            },
            &cfg,
        )
        .unwrap()
        .value
        .to_f64();
        assert!((shifted - fine).abs() < 10.0 * quick(16).value_tolerance, "{shifted} vs {fine}");
    }
}
