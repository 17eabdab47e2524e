//! Arakelov-side constants: the normalised degree of the restricted metrized
//! bundle, the constant `D`, Faltings heights from Γ-products, and the
//! hypothesis checklist for the distance bound.

use std::collections::BTreeSet;

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::bounds::{admissible_prime, is_prime};
use crate::theta::{PeriodMatrix, GUARD_BITS};
use crate::{Error, Result};

/// Arithmetic invariants of a curve over `K₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveArithData {
    pub g: u32,
    pub deg_k0: u32,
    /// Néron–Tate height of `j(ω_C)`.
    pub nt_omega: Float,
    /// Faltings height of the Jacobian.
    pub h_fal: Float,
    pub theta_max: Float,
    pub bad_primes: BTreeSet<u64>,
    /// `|D_{K₀/Q}|`, or any integer with the same prime support.
    pub disc: Integer,
    /// Lcm of the component-group exponents, `n_{K₀}`.
    pub component_lcm: Integer,
    pub good_reduction_everywhere: bool,
    pub semistable: bool,
    pub base_point_hyperelliptic_fixed: bool,
}

impl CurveArithData {
    pub fn validate(&self) -> Result<()> {
        let reject = |msg: String| Err(Error::ConfigRejected(msg));
        if self.g < 2 {
            return reject(format!("genus {} < 2", self.g));
        }
        if self.deg_k0 == 0 {
            return reject("field degree must be positive".into());
        }
        if !self.nt_omega.is_finite() || self.nt_omega < 0 {
            return reject(format!("Néron–Tate height must be >= 0, got {}", self.nt_omega));
        }
        if !self.h_fal.is_finite() {
            return reject("Faltings height must be finite".into());
        }
        if !self.theta_max.is_finite() || self.theta_max <= 0 {
            return reject(format!("theta maximum must be positive, got {}", self.theta_max));
        }
        if self.disc < 1 || self.component_lcm < 1 {
            return reject("discriminant and component lcm must be positive".into());
        }
        if let Some(l) = self.bad_primes.iter().find(|l| !is_prime(**l)) {
            return reject(format!("bad prime {l} is not prime"));
        }
        if self.good_reduction_everywhere && (!self.bad_primes.is_empty() || self.component_lcm != 1) {
            return reject("good reduction everywhere needs no bad primes and component lcm 1".into());
        }
        if self.g == 2 && self.base_point_hyperelliptic_fixed && !self.nt_omega.is_zero() {
            return reject(
                "a hyperelliptic-fixed base point in genus 2 forces a zero Néron–Tate height".into(),
            );
        }
        Ok(())
    }

    fn prec(&self) -> u32 {
        self.theta_max.prec().max(self.h_fal.prec()).max(self.nt_omega.prec())
    }
}

/// `¼·NT(j(ω_C)) + ½·h_Fal + (g/4)·log(4π)`; requires good reduction everywhere.
pub fn zar_degree(data: &CurveArithData) -> Result<Float> {
    if !data.good_reduction_everywhere {
        return Err(Error::HypothesisViolated(
            "the degree formula needs good reduction everywhere".into(),
        ));
    }
    let prec = data.prec();
    let work = prec + GUARD_BITS;
    let four_pi = Float::with_val(work, rug::float::Constant::Pi) * 4u32;
    let mut acc = Float::with_val(work, &data.nt_omega) / 4u32;
    acc += Float::with_val(work, &data.h_fal) / 2u32;
    acc += Float::with_val(work, four_pi.ln() * data.g) / 4u32;
    Ok(Float::with_val(prec, acc))
}

/// `log Θ_Max + zar_degree`, the quantity whose absolute value enters `D`.
pub fn combined_constant(data: &CurveArithData) -> Result<Float> {
    let prec = data.prec();
    let zar = zar_degree(data)?;
    let log_theta = Float::with_val(prec + GUARD_BITS, &data.theta_max).ln();
    Ok(Float::with_val(prec, log_theta + zar))
}

/// `D = 2·[K₀:Q]·|log Θ_Max + zar_degree|`.
pub fn constant_d(data: &CurveArithData) -> Result<Float> {
    let c = combined_constant(data)?;
    Ok(c.abs() * (2 * data.deg_k0))
}

/// `constant_part − ½·Σ e·log Γ(a)` evaluated at `prec` bits.
pub fn faltings_height_gamma(terms: &[(Rational, i64)], constant_part: &Float, prec: u32) -> Result<Float> {
    let work = prec + GUARD_BITS;
    let mut sum = Float::with_val(work, 0);
    for (a, e) in terms {
        if *a <= 0 || *a >= 1 {
            return Err(Error::InvalidInput(format!("Γ argument {a} outside (0,1)")));
        }
        let lg = Float::with_val(work, a).ln_gamma();
        sum += lg * *e;
    }
    Ok(Float::with_val(prec, Float::with_val(work, constant_part) - sum / 2u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Satisfied,
    Violated,
    Unknown,
}

impl Flag {
    fn from_option(b: Option<bool>) -> Flag {
        match b {
            Some(true) => Flag::Satisfied,
            Some(false) => Flag::Violated,
            None => Flag::Unknown,
        }
    }

    fn from_bool(b: bool) -> Flag {
        Self::from_option(Some(b))
    }
}

/// Status of the six hypotheses of the distance bound plus admissibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// (1) semistable reduction over `K₀`.
    pub semistable: Flag,
    /// (2) `p > 2`.
    pub p_odd: Flag,
    /// (3) good reduction at the place above `p`.
    pub good_reduction_at_p: Flag,
    /// (4) `p` unramified.
    pub unramified_at_p: Flag,
    /// (5) the torsion order is prime to `p`.
    pub torsion_order_coprime: Flag,
    /// (6) the point reduces into the neutral component.
    pub neutral_component: Flag,
    pub p_admissible: bool,
}

impl HypothesisReport {
    pub fn flags(&self) -> [(&'static str, Flag); 6] {
        [
            ("semistable", self.semistable),
            ("p_odd", self.p_odd),
            ("good_reduction_at_p", self.good_reduction_at_p),
            ("unramified_at_p", self.unramified_at_p),
            ("torsion_order_coprime", self.torsion_order_coprime),
            ("neutral_component", self.neutral_component),
        ]
    }

    pub fn violations(&self) -> Vec<&'static str> {
        self.flags()
            .into_iter()
            .filter(|(_, f)| *f == Flag::Violated)
            .map(|(name, _)| name)
            .collect()
    }
}

/// Maps the supplied data onto the hypothesis flags; absent inputs give
/// [`Flag::Unknown`].
pub fn check_hypotheses(
    data: &CurveArithData,
    p: u64,
    torsion_order: Option<&Integer>,
    neutral_component: Option<bool>,
    good_at_p: Option<bool>,
    unramified_at_p: Option<bool>,
) -> HypothesisReport {
    HypothesisReport {
        semistable: Flag::from_bool(data.semistable),
        p_odd: Flag::from_bool(p > 2),
        good_reduction_at_p: Flag::from_option(good_at_p),
        unramified_at_p: Flag::from_option(unramified_at_p),
        torsion_order_coprime: Flag::from_option(
            torsion_order.map(|n| Integer::from(n.gcd_ref(&Integer::from(p))) == 1),
        ),
        neutral_component: Flag::from_option(neutral_component),
        p_admissible: admissible_prime(p, data),
    }
}

pub const BOST_MESTRE_NAME: &str = "bost-mestre-y2+y=x5";

/// The genus-2 curve `y² + y = x⁵` (equivalently `z² = t⁵ + 1`) over a
/// degree-40 field, with good reduction everywhere.
#[derive(Clone, Debug)]
pub struct CurvePreset {
    pub name: &'static str,
    pub g: u32,
    pub deg_k0: u32,
    pub ramified_primes: Vec<u64>,
    pub nt_omega: Float,
    pub tau: PeriodMatrix,
    pub gamma_terms: Vec<(Rational, i64)>,
    pub gamma_constant: Float,
    /// Coefficients of the monic quintic `f`, constant term first.
    pub model: Vec<i64>,
}

impl CurvePreset {
    pub fn bost_mestre(prec: u32) -> Self {
        let work = prec + GUARD_BITS;
        let two_pi = Float::with_val(work, rug::float::Constant::Pi) * 2u32;
        CurvePreset {
            name: BOST_MESTRE_NAME,
            g: 2,
            deg_k0: 40,
            ramified_primes: vec![2, 5],
            nt_omega: Float::with_val(prec, 0),
            tau: PeriodMatrix::bost_mestre(prec),
            gamma_terms: vec![
                (Rational::from((1, 5)), 5),
                (Rational::from((2, 5)), 3),
                (Rational::from((3, 5)), 1),
                (Rational::from((4, 5)), -1),
            ],
            gamma_constant: Float::with_val(prec, two_pi.ln() * 2u32),
            model: vec![1, 0, 0, 0, 0, 1],
        }
    }

    pub fn h_fal(&self, prec: u32) -> Result<Float> {
        faltings_height_gamma(&self.gamma_terms, &self.gamma_constant, prec)
    }

    /// Assembles the arithmetic data once `Θ_Max` is known.
    pub fn arith_data(&self, theta_max: Float, prec: u32) -> Result<CurveArithData> {
        let disc = self.ramified_primes.iter().fold(Integer::from(1), |acc, l| acc * *l);
        let data = CurveArithData {
            g: self.g,
            deg_k0: self.deg_k0,
            nt_omega: self.nt_omega.clone(),
            h_fal: self.h_fal(prec)?,
            theta_max,
            bad_primes: BTreeSet::new(),
            disc,
            component_lcm: Integer::from(1),
            good_reduction_everywhere: true,
            semistable: true,
            base_point_hyperelliptic_fixed: true,
        };
        data.validate()?;
        Ok(data)
    }
}
