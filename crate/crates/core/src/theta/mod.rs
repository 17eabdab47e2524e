//! Riemann theta function
//!
//! `theta(z, tau) = sum_{m in Z^g} exp(2 pi i (m^T tau m / 2 + m^T z))`
//!
//! and the translation-invariant norm of the canonical section of `O(Theta)`
//!
//! `<s(z), s(z)> = det(Im tau)^{1/2} exp(-2 pi y^T (Im tau)^{-1} y) |theta(x + iy, tau)|^2`,
//!
//! whose torus average is `2^{-g/2}`.
//!
//! Evaluation always reduces `z` to the fundamental cell of the lattice
//! `Z^g + tau Z^g` first and truncates the sum to a box `|m|_inf <= R`, where
//! `R` is the smallest radius whose geometric tail majorant (driven by the
//! smallest eigenvalue of `Im tau`) is below the requested absolute error.

mod eval;

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

use crate::linalg;
use crate::numeric::{Cx, Real, F64_BITS};
use crate::{Error, Result};

pub use eval::{Reduced, ThetaEvaluator};

/// Extra bits carried internally on top of the working precision.
pub const GUARD_BITS: u32 = 32;

/// A `g x g` complex symmetric matrix with positive-definite imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix {
    g: usize,
    tau: Vec<Cx<Float>>,
}

impl PeriodMatrix {
    /// Validates and wraps a row-major `g x g` matrix.
    pub fn new(g: usize, tau: Vec<Cx<Float>>) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidPeriodMatrix("genus must be positive".into()));
        }
        if tau.len() != g * g {
            return Err(Error::InvalidPeriodMatrix(format!(
                "expected {} entries, got {}",
                g * g,
                tau.len()
            )));
        }
        let finite = tau.iter().all(|e| e.re.is_finite() && e.im.is_finite());
        if !finite {
            return Err(Error::InvalidPeriodMatrix("non-finite entry".into()));
        }
        let max_abs = tau.iter().map(|e| e.abs().to_f64()).fold(0.0, f64::max);
        for i in 0..g {
            for j in (i + 1)..g {
                let d = tau[i * g + j].minus(&tau[j * g + i]).abs().to_f64();
                if d > 1e-10 * max_abs {
                    return Err(Error::InvalidPeriodMatrix(format!(
                        "not symmetric: |tau[{i}][{j}] - tau[{j}][{i}]| = {d:e}"
                    )));
                }
            }
        }
        let im: Vec<Float> = tau.iter().map(|e| e.im.clone()).collect();
        if linalg::cholesky(&im, g).is_none() {
            return Err(Error::InvalidPeriodMatrix(
                "imaginary part is not positive definite".into(),
            ));
        }
        let lambda_min = linalg::symmetric_eigenvalues(&im, g)[0].to_f64();
        if lambda_min <= 1e-20 {
            return Err(Error::InvalidPeriodMatrix(format!(
                "smallest eigenvalue of Im(tau) is {lambda_min:e}"
            )));
        }
        Ok(PeriodMatrix { g, tau })
    }

    pub fn from_f64(g: usize, entries: &[(f64, f64)]) -> Result<Self> {
        let tau = entries
            .iter()
            .map(|&(re, im)| Cx::<Float>::from_f64(re, im, 128))
            .collect();
        Self::new(g, tau)
    }

    /// Parses decimal strings at `prec` bits, avoiding binary-float ingestion.
    pub fn parse(g: usize, entries: &[(String, String)], prec: u32) -> Result<Self> {
        let parse = |s: &str| {
            Float::parse(s.trim())
                .map(|p| Float::with_val(prec, p))
                .map_err(|e| Error::InvalidPeriodMatrix(format!("cannot parse {s:?}: {e}")))
        };
        let tau = entries
            .iter()
            .map(|(re, im)| Ok(Cx::new(parse(re)?, parse(im)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, tau)
    }

    /// Period matrix of `y^2 + y = x^5` in the symplectic basis built from
    /// `zeta = exp(2 pi i / 5)`:
    /// `[[-zeta^4, zeta^2 + 1], [zeta^2 + 1, zeta^2 - zeta^3]]`.
    pub fn bost_mestre(prec: u32) -> Self {
        let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
        let zeta_pow = |k: u32| {
            let angle = Float::with_val(prec, &two_pi * k) / 5u32;
            let (s, c) = angle.sin_cos(Float::new(prec));
            Cx::new(c, s)
        };
        let one = Cx::<Float>::one(prec);
        let t11 = zeta_pow(4).negate();
        let t12 = zeta_pow(2).plus(&one);
        let t22 = zeta_pow(2).minus(&zeta_pow(3));
        Self::new(2, vec![t11, t12.clone(), t12, t22]).expect("preset period matrix is valid")
    }

    /// Block-diagonal matrix `diag(blocks...)`.
    pub fn block_diagonal(blocks: &[&PeriodMatrix]) -> Result<Self> {
        let g: usize = blocks.iter().map(|b| b.g).sum();
        let prec = blocks.iter().map(|b| b.tau[0].re.prec()).max().unwrap_or(128);
        let mut tau = vec![Cx::<Float>::zero(prec); g * g];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.g {
                for j in 0..b.g {
                    tau[(off + i) * g + off + j] = b.tau[i * b.g + j].clone();
                }
            }
            off += b.g;
        }
        Self::new(g, tau)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &[Cx<Float>] {
        &self.tau
    }

    pub fn entry(&self, i: usize, j: usize) -> &Cx<Float> {
        &self.tau[i * self.g + j]
    }
}

/// Argument of the theta function.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPoint {
    pub z: Vec<Cx<Float>>,
}

impl ThetaPoint {
    pub fn new(z: Vec<Cx<Float>>) -> Result<Self> {
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite theta argument".into()));
        }
        Ok(ThetaPoint { z })
    }

    pub fn from_f64(z: &[(f64, f64)]) -> Result<Self> {
        Self::new(z.iter().map(|&(re, im)| Cx::from_f64(re, im, 256)).collect())
    }

    pub fn zero(g: usize) -> Self {
        ThetaPoint {
            z: vec![Cx::zero(256); g],
        }
    }

    /// The point `a + tau*b` for lattice coordinates `coords = (a, b)`.
    pub fn from_lattice_coords(tau: &PeriodMatrix, coords: &[f64], prec: u32) -> Result<Self> {
        let g = tau.genus();
        if coords.len() != 2 * g {
            return Err(Error::InvalidInput(format!(
                "expected {} lattice coordinates",
                2 * g
            )));
        }
        let z = (0..g)
            .map(|i| {
                let mut zi = Cx::<Float>::from_f64(coords[i], 0.0, prec);
                for j in 0..g {
                    let b = Float::with_val(prec, coords[g + j]);
                    zi = zi.plus(&tau.entry(i, j).convert::<Float>(prec).scale(&b));
                }
                zi
            })
            .collect();
        Self::new(z)
    }

    pub fn negate(&self) -> Self {
        ThetaPoint {
            z: self.z.iter().map(Cx::negate).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.z.len()
    }

    fn precision(&self) -> u32 {
        self.z.iter().map(|c| c.re.prec()).max().unwrap_or(128)
    }
}

/// Working precision and the absolute error target for truncated sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionConfig {
    pub working_precision_bits: u32,
    pub target_abs_error: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_precision_bits: 128,
            target_abs_error: 1e-30,
        }
    }
}

impl PrecisionConfig {
    pub fn new(working_precision_bits: u32, target_abs_error: f64) -> Result<Self> {
        let cfg = PrecisionConfig {
            working_precision_bits,
            target_abs_error,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Plain double precision; used for screening passes.
    pub fn double() -> Self {
        PrecisionConfig {
            working_precision_bits: F64_BITS,
            target_abs_error: 1e-12,
        }
    }

    /// Default error target for a given precision: 2^-(bits - 24).
    pub fn with_bits(bits: u32) -> Result<Self> {
        if bits == F64_BITS {
            return Ok(Self::double());
        }
        Self::new(bits, 2f64.powi(-(bits as i32 - 24)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_precision_bits < F64_BITS {
            return Err(Error::ConfigRejected(format!(
                "working precision must be at least {F64_BITS} bits"
            )));
        }
        if !(self.target_abs_error.is_finite() && self.target_abs_error > 0.0) {
            return Err(Error::ConfigRejected("target error must be positive".into()));
        }
        let floor_bits = self.working_precision_bits - 8;
        if self.target_abs_error <= 2f64.powi(-(floor_bits as i32)) {
            return Err(Error::PrecisionTooLow {
                requested: self.target_abs_error,
                bits: self.working_precision_bits,
                floor_bits,
            });
        }
        Ok(())
    }

    /// Whether evaluation can run in plain `f64`.
    pub fn is_double(&self) -> bool {
        self.working_precision_bits == F64_BITS
    }

    pub(crate) fn internal_bits(&self) -> u32 {
        if self.is_double() {
            F64_BITS
        } else {
            self.working_precision_bits + GUARD_BITS
        }
    }
}

fn check_genus(tau: &PeriodMatrix, z: &ThetaPoint) -> Result<()> {
    if tau.genus() != z.genus() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates but genus is {}",
            z.genus(),
            tau.genus()
        )));
    }
    Ok(())
}

fn to_working<R: Real>(z: &ThetaPoint, prec: u32) -> Vec<Cx<R>> {
    z.z.iter().map(|c| c.convert(prec)).collect()
}

/// `theta(z, tau)` with truncation error at most `cfg.target_abs_error`
/// (relative to the reduced point; the quasi-periodic multiplier is exact).
pub fn theta(tau: &PeriodMatrix, z: &ThetaPoint, cfg: &PrecisionConfig) -> Result<Cx<Float>> {
    cfg.validate()?;
    check_genus(tau, z)?;
    let out_bits = cfg.working_precision_bits;
    if cfg.is_double() {
        let ev = ThetaEvaluator::<f64>::new(tau, cfg)?;
        let v = ev.theta(&to_working::<f64>(z, F64_BITS))?;
        Ok(v.convert(out_bits))
    } else {
        let ev = ThetaEvaluator::<Float>::new(tau, cfg)?;
        let v = ev.theta(&to_working::<Float>(z, cfg.internal_bits()))?;
        Ok(v.convert(out_bits))
    }
}

/// Result of [`reduce_to_fundamental`].
#[derive(Clone, Debug)]
pub struct FundamentalReduction {
    pub z0: ThetaPoint,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub log_multiplier: Cx<Float>,
}

/// Writes `z = z0 + tau*m + n` with `z0` in the fundamental cell, so that
/// `theta(z) = exp(log_multiplier) * theta(z0)`. Runs at the precision of `z`.
pub fn reduce_to_fundamental(tau: &PeriodMatrix, z: &ThetaPoint) -> Result<FundamentalReduction> {
    check_genus(tau, z)?;
    let prec = z.precision().max(64);
    let ev = ThetaEvaluator::<Float>::with_precision(tau, 1e-10, prec)?;
    let red = ev.reduce(&to_working::<Float>(z, prec));
    Ok(FundamentalReduction {
        z0: ThetaPoint::new(red.z0)?,
        m: red.m,
        n: red.n,
        log_multiplier: red.log_multiplier,
    })
}

/// The invariant norm `<s(z), s(z)>`.
pub fn theta_norm(tau: &PeriodMatrix, z: &ThetaPoint, cfg: &PrecisionConfig) -> Result<Float> {
    cfg.validate()?;
    check_genus(tau, z)?;
    let out_bits = cfg.working_precision_bits;
    if cfg.is_double() {
        let ev = ThetaEvaluator::<f64>::new(tau, cfg)?;
        let v = ev.norm(&to_working::<f64>(z, F64_BITS))?;
        Ok(Float::with_val(out_bits, v))
    } else {
        let ev = ThetaEvaluator::<Float>::new(tau, cfg)?;
        let v = ev.norm(&to_working::<Float>(z, cfg.internal_bits()))?;
        Ok(Float::with_val(out_bits, v))
    }
}

/// Points of the additive recurrence `frac(1/2 + i*alpha)` with `alpha_k =
/// phi_d^{-k}`, `phi_d` the unique positive root of `x^{d+1} = x + 1`.
pub fn kronecker_points(dim: usize, count: usize) -> Vec<Vec<f64>> {
    let mut phi: f64 = 2.0;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=dim).map(|k| phi.powi(-(k as i32)).fract()).collect();
    (0..count)
        .map(|i| {
            alpha
                .iter()
                .map(|a| (0.5 + a * i as f64).fract())
                .collect()
        })
        .collect()
}

fn average_norm<R: Real>(ev: &ThetaEvaluator<R>, points: &[Vec<f64>]) -> Result<f64> {
    let values = points
        .par_iter()
        .map(|c| ev.norm_at_coords(c).map(|v| v.to_f64()))
        .collect::<Result<Vec<f64>>>()?;
    // Kahan summation in a fixed order keeps the estimate schedule-independent.
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in &values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum / values.len() as f64)
}

/// Torus average of [`theta_norm`] in lattice coordinates, returned with the
/// exact value `2^{-g/2}`. Genus 1 uses the tensor grid with
/// `floor(sqrt(budget))` nodes per axis; higher genus uses `budget`
/// Kronecker points.
pub fn theta_norm_normalization_check(
    tau: &PeriodMatrix,
    sample_budget: usize,
    cfg: &PrecisionConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if sample_budget < 1000 {
        return Err(Error::InvalidInput("sample budget must be at least 1000".into()));
    }
    let g = tau.genus();
    let points = if g == 1 {
        let n = (sample_budget as f64).sqrt().floor() as usize;
        (0..n * n)
            .map(|k| vec![(k / n) as f64 / n as f64, (k % n) as f64 / n as f64])
            .collect::<Vec<_>>()
    } else {
        kronecker_points(2 * g, sample_budget)
    };
    let estimate = if cfg.is_double() {
        average_norm(&ThetaEvaluator::<f64>::new(tau, cfg)?, &points)?
    } else {
        average_norm(&ThetaEvaluator::<Float>::new(tau, cfg)?, &points)?
    };
    Ok((estimate, 2f64.powf(-(g as f64) / 2.0)))
}
