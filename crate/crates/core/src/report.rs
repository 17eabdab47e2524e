//! The end-to-end pipeline and its canonical JSON report.
//!
//! `Θ_Max → zar_degree → D → H_p → exponents → optional p-adic table`.
//! Every number in the report is a decimal string tagged with the binary
//! precision it was computed at, so the serialized form is byte-stable.

use std::collections::BTreeSet;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arakelov::{
    check_hypotheses, combined_constant, constant_d, faltings_height_gamma, zar_degree, CurveArithData,
    CurvePreset, HypothesisReport, BOST_MESTRE_NAME,
};
use crate::bounds::{
    admissible_prime, h_bound, is_prime, tate_voloch_exponent_main, tate_voloch_exponent_sharp, BoundParams,
    LogScaledReal, LOG_PREC,
};
use crate::jacobian::{verify_bound, HyperellipticCurve, Jacobian, RationalDivisor, Valuation, Verdict};
use crate::theta::{PeriodMatrix, PrecisionConfig};
use crate::theta_max::{theta_max, OptimizerConfig};
use crate::{Error, Result};

pub const TOOL_NAME: &str = "tvbound";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Classes whose order exceeds this are reported as rejected rows.
pub const ORDER_SEARCH_BOUND: u64 = 100;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const DEFAULT_JMAX: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexString {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTerm {
    /// Rational argument in `(0,1)`, e.g. `"2/5"`.
    pub a: String,
    pub e: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineCurve {
    pub g: u32,
    /// Row-major `g×g` entries.
    pub period_matrix: Vec<Vec<ComplexString>>,
    pub deg_k0: u32,
    pub nt_omega: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_fal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_terms: Option<Vec<GammaTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_constant: Option<String>,
    #[serde(default)]
    pub bad_primes: Vec<u64>,
    pub disc: String,
    pub component_lcm: String,
    pub good_reduction_everywhere: bool,
    pub semistable: bool,
    pub base_point_hyperelliptic_fixed: bool,
    /// Monic quintic `f` of `z² = f(t)`, constant term first; needed for
    /// verification only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Preset(String),
    Inline(Box<InlineCurve>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorStrings {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub curve: CurveSpec,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_degree: Option<u32>,
    #[serde(default = "default_precision")]
    pub precision_bits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points_per_dim: Option<usize>,
    #[serde(default = "default_jmax")]
    pub jmax: u32,
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_list: Option<Vec<DivisorStrings>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION_BITS
}

fn default_jmax() -> u32 {
    DEFAULT_JMAX
}

impl RunConfig {
    pub fn preset(p: u64) -> Self {
        RunConfig {
            curve: CurveSpec::Preset(BOST_MESTRE_NAME.into()),
            p,
            residue_degree: None,
            precision_bits: DEFAULT_PRECISION_BITS,
            grid_points_per_dim: None,
            jmax: DEFAULT_JMAX,
            verify: false,
            torsion_list: None,
            output_path: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigRejected(format!("bad config: {e}")))
    }
}

/// A real number as a decimal string plus its binary precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decimal {
    pub value: String,
    pub precision_bits: u32,
}

impl Decimal {
    pub fn from_float(x: &Float) -> Self {
        let digits = ((f64::from(x.prec()) * std::f64::consts::LOG10_2).floor() as usize).max(1);
        Decimal {
            value: x.to_string_radix(10, Some(digits)),
            precision_bits: x.prec(),
        }
    }

    pub fn to_float(&self) -> Result<Float> {
        Float::parse(&self.value)
            .map(|p| Float::with_val(self.precision_bits, p))
            .map_err(|e| Error::InvalidInput(format!("bad decimal {:?}: {e}", self.value)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogScaledJson {
    pub sign: i8,
    /// Natural log of the magnitude; absent for zero.
    pub ln: Option<Decimal>,
    pub log10: Option<Decimal>,
}

impl LogScaledJson {
    pub fn from_value(x: &LogScaledReal) -> Self {
        LogScaledJson {
            sign: x.sign(),
            ln: x.ln().map(Decimal::from_float),
            log10: x.log10().as_ref().map(Decimal::from_float),
        }
    }

    pub fn to_value(&self) -> Result<LogScaledReal> {
        match &self.ln {
            None => Ok(LogScaledReal::zero()),
            Some(ln) => Ok(LogScaledReal::from_parts(self.sign, ln.to_float()?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaMaxJson {
    pub value: Decimal,
    pub argmax_coords: Vec<String>,
    pub grid_best: Decimal,
    pub grid_points_per_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBoundJson {
    /// The bound is `p^{−exponent}`.
    pub p: u64,
    pub exponent: LogScaledJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesesJson {
    pub semistable: String,
    pub p_odd: String,
    pub good_reduction_at_p: String,
    pub unramified_at_p: String,
    pub torsion_order_coprime: String,
    pub neutral_component: String,
    pub p_admissible: bool,
}

impl HypothesesJson {
    fn from_report(h: &HypothesisReport) -> Self {
        let s = |f| {
            serde_json::to_value(f)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default()
        };
        HypothesesJson {
            semistable: s(h.semistable),
            p_odd: s(h.p_odd),
            good_reduction_at_p: s(h.good_reduction_at_p),
            unramified_at_p: s(h.unramified_at_p),
            torsion_order_coprime: s(h.torsion_order_coprime),
            neutral_component: s(h.neutral_component),
            p_admissible: h.p_admissible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub divisor: DivisorStrings,
    pub order: Option<u64>,
    /// `"infinite"`, `">=j"`, or the exact value.
    pub v_p: Option<String>,
    /// Exponent of `p` in `d_p`, i.e. `−v_p`; absent when `d_p = 0`.
    pub d_p_exponent: Option<i64>,
    pub bound_exponent_log10: Option<Decimal>,
    pub verdict: String,
    pub inequality_holds: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub tool: ToolInfo,
    pub status: String,
    pub violations: Vec<String>,
    pub input: RunConfig,
    pub curve: String,
    pub genus: u32,
    pub deg_k0: u32,
    pub theta_max: ThetaMaxJson,
    pub h_fal: Decimal,
    pub zar_degree: Decimal,
    pub combined_constant: Decimal,
    pub constant_d: Decimal,
    pub residue_degree: u32,
    pub h_p: LogScaledJson,
    pub main_exponent: LogScaledJson,
    pub sharp_exponent: LogScaledJson,
    pub distance_bound: DistanceBoundJson,
    pub admissible: bool,
    pub hypotheses: HypothesesJson,
    pub verification: Vec<VerificationJson>,
}

impl BoundReport {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    /// Process exit status for this report.
    pub fn exit_code(&self) -> i32 {
        if self.is_ok() {
            0
        } else {
            3
        }
    }
}

/// Process exit status for a pipeline error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidPeriodMatrix(_)
        | Error::ConfigRejected(_)
        | Error::InvalidInput(_)
        | Error::NotPIntegral(_) => 2,
        Error::HypothesisViolated(_) | Error::UnsupportedPrime(_) => 3,
        Error::BudgetExceeded(_) => 4,
        Error::PrecisionTooLow { .. } | Error::Precision(_) | Error::RepresentationDegenerate(_) => 5,
    }
}

struct Resolved {
    name: String,
    tau: PeriodMatrix,
    data_without_theta: CurveArithData,
    model: Option<HyperellipticCurve>,
    default_torsion: Vec<RationalDivisor>,
}

fn parse_decimal(s: &str, prec: u32, what: &str) -> Result<Float> {
    Float::parse(s.trim())
        .map(|p| Float::with_val(prec, p))
        .map_err(|e| Error::ConfigRejected(format!("cannot parse {what} {s:?}: {e}")))
}

fn parse_integer(s: &str, what: &str) -> Result<Integer> {
    s.trim()
        .parse::<Integer>()
        .map_err(|e| Error::ConfigRejected(format!("cannot parse {what} {s:?}: {e}")))
}

fn resolve_curve(spec: &CurveSpec, prec: u32) -> Result<Resolved> {
    match spec {
        CurveSpec::Preset(name) => {
            if name != BOST_MESTRE_NAME && name != "bost-mestre" {
                return Err(Error::ConfigRejected(format!("unknown preset {name:?}")));
            }
            let preset = CurvePreset::bost_mestre(prec);
            // Θ_Max is filled in later; 1 is a placeholder that passes validation.
            let data = preset.arith_data(Float::with_val(prec, 1), prec)?;
            let model = HyperellipticCurve::new(preset.model.clone())?;
            let jac = Jacobian::rational(&model);
            let base = jac.point(Rational::from(0), Rational::from(1))?;
            let mut torsion = Vec::new();
            let mut acc = base.clone();
            while !jac.is_zero(&acc) {
                if acc.degree() == 2 {
                    torsion.push(acc.clone());
                }
                acc = jac.add(&acc, &base)?;
            }
            Ok(Resolved {
                name: BOST_MESTRE_NAME.into(),
                tau: preset.tau,
                data_without_theta: data,
                model: Some(model),
                default_torsion: torsion,
            })
        }
        CurveSpec::Inline(c) => {
            if c.g < 2 {
                return Err(Error::ConfigRejected(format!("genus {} < 2 is not supported", c.g)));
            }
            let g = c.g as usize;
            if c.period_matrix.len() != g || c.period_matrix.iter().any(|row| row.len() != g) {
                return Err(Error::ConfigRejected(format!("period matrix must be {g}x{g}")));
            }
            let entries: Vec<(String, String)> = c
                .period_matrix
                .iter()
                .flatten()
                .map(|z| (z.re.clone(), z.im.clone()))
                .collect();
            let tau = PeriodMatrix::parse(g, &entries, prec)?;
            let h_fal = match (&c.h_fal, &c.gamma_terms) {
                (Some(h), None) => parse_decimal(h, prec, "h_fal")?,
                (None, Some(terms)) => {
                    let parsed = terms
                        .iter()
                        .map(|t| {
                            t.a.trim()
                                .parse::<Rational>()
                                .map(|a| (a, t.e))
                                .map_err(|e| Error::ConfigRejected(format!("bad Γ argument {:?}: {e}", t.a)))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let constant = match &c.gamma_constant {
                        Some(s) => parse_decimal(s, prec, "gamma_constant")?,
                        None => Float::new(prec),
                    };
                    faltings_height_gamma(&parsed, &constant, prec).map_err(|e| match e {
                        Error::InvalidInput(m) => Error::ConfigRejected(m),
                        other => other,
                    })?
                }
                _ => {
                    return Err(Error::ConfigRejected(
                        "give exactly one of h_fal and gamma_terms".into(),
                    ))
                }
            };
            let data = CurveArithData {
                g: c.g,
                deg_k0: c.deg_k0,
                nt_omega: parse_decimal(&c.nt_omega, prec, "nt_omega")?,
                h_fal,
                theta_max: Float::with_val(prec, 1),
                bad_primes: c.bad_primes.iter().copied().collect::<BTreeSet<_>>(),
                disc: parse_integer(&c.disc, "disc")?,
                component_lcm: parse_integer(&c.component_lcm, "component_lcm")?,
                good_reduction_everywhere: c.good_reduction_everywhere,
                semistable: c.semistable,
                base_point_hyperelliptic_fixed: c.base_point_hyperelliptic_fixed,
            };
            data.validate()?;
            let model = c
                .model
                .as_ref()
                .map(|f| HyperellipticCurve::new(f.clone()).map_err(|e| Error::ConfigRejected(e.to_string())))
                .transpose()?;
            Ok(Resolved {
                name: "inline".into(),
                tau,
                data_without_theta: data,
                model,
                default_torsion: Vec::new(),
            })
        }
    }
}

fn verification_rows(
    cfg: &RunConfig,
    resolved: &Resolved,
    data: &CurveArithData,
    violations: &mut Vec<String>,
) -> Result<(Vec<VerificationJson>, Option<Integer>)> {
    if !cfg.verify {
        return Ok((Vec::new(), None));
    }
    let model = resolved
        .model
        .as_ref()
        .ok_or_else(|| Error::ConfigRejected("verification needs a curve model".into()))?;
    if model.f().len() != 6 || data.g != 2 {
        return Err(Error::ConfigRejected("verification supports genus-2 quintic models only".into()));
    }
    let torsion = match &cfg.torsion_list {
        Some(list) => list
            .iter()
            .map(|d| RationalDivisor::parse(&d.u, &d.v).map_err(|e| Error::ConfigRejected(e.to_string())))
            .collect::<Result<Vec<_>>>()?,
        None => resolved.default_torsion.clone(),
    };
    if !admissible_prime(cfg.p, data) || !model.has_good_reduction(cfg.p) {
        violations.push("verification_skipped_inadmissible_prime".into());
        return Ok((Vec::new(), None));
    }
    let rows = verify_bound(model, data, &torsion, cfg.p, cfg.jmax, ORDER_SEARCH_BOUND)?;
    let mut lcm = Some(Integer::from(1));
    let out = rows
        .iter()
        .map(|row| {
            lcm = match (lcm.take(), row.order) {
                (Some(l), Some(n)) => Some(l.lcm(&Integer::from(n))),
                _ => None,
            };
            let (u, v) = row.divisor.to_strings();
            VerificationJson {
                divisor: DivisorStrings { u, v },
                order: row.order,
                v_p: row.distance.map(|d| match d.vp {
                    Valuation::Infinite => "infinite".into(),
                    Valuation::AtLeast(j) => format!(">={j}"),
                    Valuation::Exact(j) => j.to_string(),
                }),
                d_p_exponent: row.distance.and_then(|d| d.distance_exponent()),
                bound_exponent_log10: row.bound_exponent.log10().as_ref().map(Decimal::from_float),
                verdict: serde_json::to_value(row.verdict)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default(),
                inequality_holds: row.verdict == Verdict::Holds,
                reason: row.reason.clone(),
            }
        })
        .collect();
    Ok((out, lcm))
}

/// Runs the whole pipeline. Violated hypotheses produce a report with
/// status `"hypothesis-violated"` rather than an error.
pub fn run(cfg: &RunConfig) -> Result<BoundReport> {
    if !is_prime(cfg.p) {
        return Err(Error::ConfigRejected(format!("p = {} is not prime", cfg.p)));
    }
    if cfg.jmax == 0 {
        return Err(Error::ConfigRejected("jmax must be at least 1".into()));
    }
    let prec = cfg.precision_bits;
    let pcfg = PrecisionConfig::with_bits(prec)?;
    let resolved = resolve_curve(&cfg.curve, prec)?;
    let g = resolved.data_without_theta.g;
    let deg = resolved.data_without_theta.deg_k0;
    let residue_degree = cfg.residue_degree.unwrap_or(deg);
    let params = BoundParams::new(g, deg, cfg.p, residue_degree).map_err(|e| match e {
        Error::InvalidInput(m) => Error::ConfigRejected(m),
        other => other,
    })?;

    let mut ocfg = OptimizerConfig::for_precision(g as usize, prec);
    if let Some(n) = cfg.grid_points_per_dim {
        ocfg.grid_points_per_dim = n;
    }
    let tm = theta_max(&resolved.tau, &ocfg, &pcfg)?;

    let mut data = resolved.data_without_theta.clone();
    data.theta_max = tm.value.clone();
    data.validate()?;
    let zar = zar_degree(&data)?;
    let combined = combined_constant(&data)?;
    let d = constant_d(&data)?;
    let h_p = h_bound(cfg.p, g, deg)?;
    let main = tate_voloch_exponent_main(&Float::with_val(LOG_PREC.max(prec), &d), &h_p)?;
    let sharp = tate_voloch_exponent_sharp(&params, &Float::with_val(prec, combined.abs_ref()))?;

    let mut violations = Vec::new();
    let (verification, torsion_lcm) = verification_rows(cfg, &resolved, &data, &mut violations)?;

    let good_at_p = !data.bad_primes.contains(&cfg.p)
        && resolved.model.as_ref().is_none_or(|m| m.has_good_reduction(cfg.p))
        || data.good_reduction_everywhere;
    let hyp = check_hypotheses(
        &data,
        cfg.p,
        torsion_lcm.as_ref(),
        good_at_p.then_some(true),
        Some(good_at_p),
        Some(!data.disc.is_divisible(&Integer::from(cfg.p))),
    );
    let mut all_violations: Vec<String> = hyp.violations().into_iter().map(str::to_owned).collect();
    if !hyp.p_admissible {
        all_violations.push("p_admissible".into());
    }
    all_violations.extend(violations);
    if verification.iter().any(|r| r.verdict == "fails") {
        all_violations.push("bound_fails".into());
    }

    Ok(BoundReport {
        tool: ToolInfo {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        },
        status: if all_violations.is_empty() { "ok" } else { "hypothesis-violated" }.into(),
        violations: all_violations,
        input: cfg.clone(),
        curve: resolved.name,
        genus: g,
        deg_k0: deg,
        theta_max: ThetaMaxJson {
            value: Decimal::from_float(&tm.value),
            argmax_coords: tm.argmax_coords.iter().map(|c| format!("{c:.17e}")).collect(),
            grid_best: Decimal::from_float(&tm.grid_best),
            grid_points_per_dim: ocfg.grid_points_per_dim,
        },
        h_fal: Decimal::from_float(&data.h_fal),
        zar_degree: Decimal::from_float(&zar),
        combined_constant: Decimal::from_float(&combined),
        constant_d: Decimal::from_float(&d),
        residue_degree,
        h_p: LogScaledJson::from_value(&h_p),
        main_exponent: LogScaledJson::from_value(&main),
        sharp_exponent: LogScaledJson::from_value(&sharp),
        distance_bound: DistanceBoundJson {
            p: cfg.p,
            exponent: LogScaledJson::from_value(&main),
        },
        admissible: hyp.p_admissible,
        hypotheses: HypothesesJson::from_report(&hyp),
        verification,
    })
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn serialize_report(report: &BoundReport) -> String {
    let value = serde_json::to_value(report).expect("report is always serializable");
    let mut text = serde_json::to_string_pretty(&value).expect("value is always serializable");
    text.push('\n');
    text
}

pub fn parse_report(text: &str) -> Result<BoundReport> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad report: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_preset(p: u64) -> RunConfig {
        RunConfig {
            precision_bits: 64,
            grid_points_per_dim: Some(12),
            ..RunConfig::preset(p)
        }
    }

    #[test]
    fn config_round_trip_and_defaults() {
        let cfg = RunConfig::from_json(r#"{"curve": "bost-mestre", "p": 3}"#).unwrap();
        assert_eq!(cfg.precision_bits, 128);
        assert_eq!(cfg.jmax, 4);
        assert!(!cfg.verify);
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
        assert!(matches!(
            RunConfig::from_json(r#"{"curve": "bost-mestre", "p": 3, "bogus": 1}"#),
            Err(Error::ConfigRejected(_))
        ));
    }

    #[test]
    fn report_round_trip() {
        let mut cfg = fast_preset(3);
        cfg.verify = true;
        let report = run(&cfg).unwrap();
        assert!(report.is_ok(), "{:?}", report.violations);
        assert_eq!(report.verification.len(), 2);
        assert!(report.verification.iter().all(|r| r.inequality_holds));
        let text = serialize_report(&report);
        assert_eq!(parse_report(&text).unwrap(), report);
        assert_eq!(serialize_report(&parse_report(&text).unwrap()), text);
    }

    #[test]
    fn empty_verification_is_present() {
        let report = run(&fast_preset(3)).unwrap();
        let text = serialize_report(&report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["verification"], serde_json::json!([]));
    }

    #[test]
    fn exponent_assembly_is_consistent() {
        let report = run(&fast_preset(7)).unwrap();
        let main = report.main_exponent.to_value().unwrap();
        let h = report.h_p.to_value().unwrap();
        let d = LogScaledReal::from_float(&report.constant_d.to_float().unwrap());
        let dh = d.mul(&h);
        let gap = Float::with_val(128, main.ln().unwrap() - dh.ln().unwrap());
        assert!(gap.clone().abs() < 1e-30 * dh.ln().unwrap().to_f64().abs(), "{gap}");
        let sharp = report.sharp_exponent.to_value().unwrap();
        assert!(sharp <= main);
    }

    #[test]
    fn p_two_violates_condition_two() {
        let report = run(&fast_preset(2)).unwrap();
        assert_eq!(report.exit_code(), 3);
        assert!(report.violations.contains(&"p_odd".to_string()));
        assert_eq!(report.hypotheses.p_odd, "violated");
    }

    #[test]
    fn inline_genus_one_rejected() {
        let text = r#"{
            "curve": {"g": 1, "period_matrix": [[{"re": "0", "im": "1"}]], "deg_k0": 1,
                      "nt_omega": "0", "h_fal": "0", "disc": "1", "component_lcm": "1",
                      "good_reduction_everywhere": true, "semistable": true,
                      "base_point_hyperelliptic_fixed": false},
            "p": 3
        }"#;
        let cfg = RunConfig::from_json(text).unwrap();
        let err = run(&cfg).unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn oversized_grid_rejected() {
        let mut cfg = fast_preset(3);
        cfg.grid_points_per_dim = Some(128);
        assert_eq!(exit_code(&run(&cfg).unwrap_err()), 2);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Float::with_val(128, Float::parse("-1.4525092396456446503177070418").unwrap());
        let d = Decimal::from_float(&x);
        assert_eq!(d.to_float().unwrap(), x);
    }
}
