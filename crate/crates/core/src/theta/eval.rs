use crate::linalg;
use crate::numeric::{Cx, Real};
use crate::{Error, Result};

use super::{PeriodMatrix, PrecisionConfig};

/// Largest truncation radius the evaluator will accept before declaring the
/// period matrix numerically unusable.
const MAX_RADIUS: usize = 4096;

/// Decomposition `z = z0 + tau*m + n` with `z0` in the fundamental cell.
#[derive(Clone, Debug)]
pub struct Reduced<R> {
    pub z0: Vec<Cx<R>>,
    /// Lattice coordinates `(a, b)` of `z0`, i.e. `z0 = a + tau*b`.
    pub coords: Vec<R>,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub log_multiplier: Cx<R>,
}

/// Precomputed data for repeated theta evaluations with one period matrix at
/// one precision.
#[derive(Clone, Debug)]
pub struct ThetaEvaluator<R> {
    g: usize,
    prec: u32,
    tau: Vec<Cx<R>>,
    im_tau: Vec<R>,
    sqrt_det_im: R,
    lambda_min: f64,
    ln_target: f64,
    pi: R,
    snap_tol: f64,
}

impl<R: Real> ThetaEvaluator<R> {
    /// Builds an evaluator at `prec` bits (ignored for `f64`).
    pub fn with_precision(tau: &PeriodMatrix, target_abs_error: f64, prec: u32) -> Result<Self> {
        let g = tau.genus();
        let entries: Vec<Cx<R>> = tau.entries().iter().map(|e| e.convert(prec)).collect();
        let im_tau: Vec<R> = entries.iter().map(|e| e.im.clone()).collect();
        let chol = linalg::cholesky(&im_tau, g).ok_or_else(|| {
            Error::InvalidPeriodMatrix("imaginary part is not positive definite".into())
        })?;
        let det = linalg::cholesky_det(&chol, g);
        let lambda_min = linalg::symmetric_eigenvalues(&im_tau, g)[0].to_f64();
        if lambda_min <= 1e-20 {
            return Err(Error::InvalidPeriodMatrix(format!(
                "smallest eigenvalue of Im(tau) is {lambda_min:e}"
            )));
        }
        let eff_prec = entries[0].re.prec();
        Ok(ThetaEvaluator {
            g,
            prec,
            sqrt_det_im: det.sqrt(),
            tau: entries,
            im_tau,
            lambda_min,
            ln_target: target_abs_error.ln(),
            pi: R::pi(prec),
            snap_tol: 2f64.powi(-(eff_prec as i32 - 24)),
        })
    }

    pub fn new(tau: &PeriodMatrix, cfg: &PrecisionConfig) -> Result<Self> {
        Self::with_precision(tau, cfg.target_abs_error, cfg.internal_bits())
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    fn tau(&self, i: usize, j: usize) -> &Cx<R> {
        &self.tau[i * self.g + j]
    }

    fn zero(&self) -> R {
        R::from_f64(0.0, self.prec)
    }

    /// `2*pi*i*w`
    fn two_pi_i(&self, w: &Cx<R>) -> Cx<R> {
        w.rotate().scale(&self.pi).scale_f64(2.0)
    }

    /// Smallest box radius `R` such that the geometric majorant of the
    /// neglected tail `sum_{|m|_inf > R} exp(-pi*lmin*|m|^2 + 2*pi*|y|*|m|)`
    /// is below the target error.
    pub fn truncation_radius(&self, y_norm: f64) -> Result<usize> {
        let g = self.g as f64;
        let lam = self.lambda_min;
        let pi = std::f64::consts::PI;
        let ln_term = |r: f64| {
            (2.0 * g).ln() + (g - 1.0) * (2.0 * r + 1.0).ln() - pi * lam * r * r
                + 2.0 * pi * y_norm * r
        };
        let start = ((y_norm / lam).ceil() as usize).max(1);
        for radius in start..=MAX_RADIUS {
            let r1 = (radius + 1) as f64;
            let ln_ratio = (g - 1.0) * ((2.0 * r1 + 3.0) / (2.0 * r1 + 1.0)).ln()
                - pi * lam * (2.0 * r1 + 1.0)
                + 2.0 * pi * y_norm;
            if ln_ratio >= 0.0 {
                continue;
            }
            let ln_tail = ln_term(r1) - (-ln_ratio.exp()).ln_1p();
            if ln_tail < self.ln_target {
                return Ok(radius);
            }
        }
        Err(Error::Precision(format!(
            "no truncation radius below {MAX_RADIUS} reaches the target error"
        )))
    }

    /// Lattice sum truncated to `|m|_inf <= radius`, without any reduction.
    pub fn lattice_sum(&self, z: &[Cx<R>], radius: usize) -> Cx<R> {
        let g = self.g;
        let last = g - 1;
        let r = radius as i64;
        let mut total = Cx::zero(self.prec);

        let q_step = self.two_pi_i(self.tau(last, last)).exp();
        let half_diag = self.tau(last, last).scale_f64(0.5);

        // Odometer over the first g-1 coordinates; the last one is swept by
        // multiplicative recurrences along each line.
        let mut outer = vec![-r; last];
        loop {
            let mut quad = Cx::zero(self.prec);
            let mut lin = Cx::zero(self.prec);
            let mut cross = Cx::zero(self.prec);
            for i in 0..last {
                let mi = outer[i] as f64;
                lin = lin.plus(&z[i].scale_f64(mi));
                cross = cross.plus(&self.tau(last, i).scale_f64(mi));
                for j in 0..last {
                    let mj = outer[j] as f64;
                    quad = quad.plus(&self.tau(i, j).scale_f64(0.5 * mi * mj));
                }
            }
            let start = self.two_pi_i(&quad.plus(&lin)).exp();
            let shift = cross.plus(&z[last]);
            let up = self.two_pi_i(&shift.plus(&half_diag)).exp();
            let down = self.two_pi_i(&half_diag.minus(&shift)).exp();

            total = total.plus(&start);
            let mut term = start.clone();
            let mut ratio = up;
            for _ in 0..r {
                term = term.times(&ratio);
                total = total.plus(&term);
                ratio = ratio.times(&q_step);
            }
            let mut term = start;
            let mut ratio = down;
            for _ in 0..r {
                term = term.times(&ratio);
                total = total.plus(&term);
                ratio = ratio.times(&q_step);
            }

            let mut k = 0;
            while k < last {
                outer[k] += 1;
                if outer[k] <= r {
                    break;
                }
                outer[k] = -r;
                k += 1;
            }
            if k == last {
                break;
            }
        }
        total
    }

    /// Point `a + tau*b` from lattice coordinates `(a, b)`.
    pub fn point_from_coords(&self, coords: &[R]) -> Vec<Cx<R>> {
        let g = self.g;
        (0..g)
            .map(|i| {
                let mut zi = Cx::from_real(coords[i].clone());
                for j in 0..g {
                    zi = zi.plus(&self.tau(i, j).scale(&coords[g + j]));
                }
                zi
            })
            .collect()
    }

    fn snap(&self, x: &R) -> R {
        let r = x.round();
        let scale = x.to_f64().abs().max(1.0);
        if x.minus(&r).to_f64().abs() <= self.snap_tol * scale {
            r
        } else {
            x.floor()
        }
    }

    /// Writes `z = z0 + tau*m + n` with lattice coordinates of `z0` in `[0,1)^{2g}`.
    pub fn reduce(&self, z: &[Cx<R>]) -> Reduced<R> {
        let g = self.g;
        let y: Vec<R> = z.iter().map(|zi| zi.im.clone()).collect();
        let chol = linalg::cholesky(&self.im_tau, g).expect("validated at construction");
        let y_inv = linalg::cholesky_inverse(&chol, g);
        let b: Vec<R> = (0..g)
            .map(|i| {
                (0..g).fold(self.zero(), |acc, j| acc.plus(&y_inv[i * g + j].times(&y[j])))
            })
            .collect();
        let m_real: Vec<R> = b.iter().map(|bi| self.snap(bi)).collect();
        let b0: Vec<R> = b.iter().zip(&m_real).map(|(bi, mi)| bi.minus(mi)).collect();

        let z1: Vec<Cx<R>> = (0..g)
            .map(|i| {
                (0..g).fold(z[i].clone(), |acc, j| acc.minus(&self.tau(i, j).scale(&m_real[j])))
            })
            .collect();
        let a: Vec<R> = (0..g)
            .map(|i| {
                (0..g).fold(z1[i].re.clone(), |acc, j| {
                    acc.minus(&self.tau(i, j).re.times(&b0[j]))
                })
            })
            .collect();
        let n_real: Vec<R> = a.iter().map(|ai| self.snap(ai)).collect();
        let a0: Vec<R> = a.iter().zip(&n_real).map(|(ai, ni)| ai.minus(ni)).collect();

        let mut coords = a0;
        coords.extend(b0);
        let z0 = self.point_from_coords(&coords);

        let mut quad = Cx::zero(self.prec);
        let mut lin = Cx::zero(self.prec);
        for i in 0..g {
            lin = lin.plus(&z0[i].scale(&m_real[i]));
            for j in 0..g {
                quad = quad.plus(&self.tau(i, j).scale(&m_real[i].times(&m_real[j])));
            }
        }
        let log_multiplier = self.two_pi_i(&quad.scale_f64(0.5).plus(&lin)).negate();

        Reduced {
            z0,
            coords,
            m: m_real.iter().map(|v| v.to_f64() as i64).collect(),
            n: n_real.iter().map(|v| v.to_f64() as i64).collect(),
            log_multiplier,
        }
    }

    fn y_norm(z: &[Cx<R>]) -> f64 {
        z.iter().map(|zi| zi.im.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    /// Theta at a point assumed to lie in (or near) the fundamental cell.
    pub fn theta_in_cell(&self, z0: &[Cx<R>]) -> Result<Cx<R>> {
        let radius = self.truncation_radius(Self::y_norm(z0))?;
        Ok(self.lattice_sum(z0, radius))
    }

    pub fn theta(&self, z: &[Cx<R>]) -> Result<Cx<R>> {
        let red = self.reduce(z);
        let value = self.theta_in_cell(&red.z0)?;
        Ok(red.log_multiplier.exp().times(&value))
    }

    /// `det(Y)^{1/2} exp(-2 pi b^T Y b) |theta(a + tau b)|^2` for lattice
    /// coordinates `(a, b)` of a point in the cell; `b^T Y b = y^T Y^{-1} y`.
    fn norm_from_coords(&self, coords: &[R]) -> Result<R> {
        let g = self.g;
        let z0 = self.point_from_coords(coords);
        let theta = self.theta_in_cell(&z0)?;
        let mut quad = self.zero();
        for i in 0..g {
            for j in 0..g {
                quad = quad.plus(&self.im_tau[i * g + j].times(&coords[g + i]).times(&coords[g + j]));
            }
        }
        let gauss = quad.times(&self.pi).times_f64(-2.0).exp();
        Ok(self.sqrt_det_im.times(&gauss).times(&theta.norm_sqr()))
    }

    pub fn norm(&self, z: &[Cx<R>]) -> Result<R> {
        let red = self.reduce(z);
        self.norm_from_coords(&red.coords)
    }

    /// Norm at lattice coordinates given in `f64`, taken modulo 1.
    pub fn norm_at_coords(&self, coords: &[f64]) -> Result<R> {
        let wrapped: Vec<R> = coords
            .iter()
            .map(|c| R::from_f64(c.rem_euclid(1.0), self.prec))
            .collect();
        self.norm_from_coords(&wrapped)
    }
}
