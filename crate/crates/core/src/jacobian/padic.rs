use rug::{Integer, Rational};
use serde::Serialize;

use super::poly;
use super::ring::{IntegersMod, Ring};
use super::{HyperellipticCurve, Jacobian, MumfordDivisor, RationalDivisor};
use crate::arakelov::{constant_d, CurveArithData};
use crate::bounds::{admissible_prime, h_bound, tate_voloch_exponent_main, LogScaledReal};
use crate::{Error, Result};

/// Largest `p^j` the enumeration oracle accepts.
pub const ENUMERATION_BUDGET: u64 = 10_000;

fn check_prime(curve: &HyperellipticCurve, p: u64) -> Result<()> {
    if !crate::bounds::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if !curve.has_good_reduction(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

/// Coefficient-wise image of a rational class in `Z/p^j`.
pub fn reduce_mod(
    curve: &HyperellipticCurve,
    d: &RationalDivisor,
    p: u64,
    j: u32,
) -> Result<MumfordDivisor<u64>> {
    check_prime(curve, p)?;
    let ring = IntegersMod::new(p, j)?;
    let red = |xs: &[Rational]| -> Result<Vec<u64>> {
        let out = xs.iter().map(|x| ring.reduce_rational(x)).collect::<Result<Vec<_>>>()?;
        Ok(poly::trim(&ring, out))
    };
    Ok(MumfordDivisor {
        u: red(&d.u)?,
        v: red(&d.v)?,
    })
}

/// Whether a class over `Z/p^j` is the image of a point of the embedded
/// curve: the zero class (the base point) or some `(t − α, β)`.
pub fn on_curve_mod(
    curve: &HyperellipticCurve,
    dmod: &MumfordDivisor<u64>,
    p: u64,
    j: u32,
) -> Result<bool> {
    let jac = Jacobian::residue(curve, p, j)?;
    let ring = *jac.ring();
    if !jac.is_valid(dmod) {
        return Err(Error::InvalidInput("not a reduced Mumford pair".into()));
    }
    match dmod.degree() {
        0 | 1 => Ok(true),
        _ if j == 1 => {
            // A double root α of u with v(α) = 0 is a conjugate pair over α,
            // whose class is that of the smaller divisor left after removing it.
            let (u0, u1) = (dmod.u[0], dmod.u[1]);
            let disc = ring.sub(&ring.mul(&u1, &u1), &ring.mul(&4, &u0));
            if ring.is_zero(&disc) {
                let alpha = ring.neg(&ring.mul(&u1, &ring.inv(&2)?));
                return Ok(ring.is_zero(&poly::eval(&ring, &dmod.v, &alpha)));
            }
            Ok(false)
        }
        _ => Ok(false),
    }
}

/// All points `(α, β)` of `β² = f(α)` over `Z/p^j` as `(t − α, β)`, plus the
/// zero class first. Solutions are lifted one power of `p` at a time.
pub fn enumerate_curve_points_mod(
    curve: &HyperellipticCurve,
    p: u64,
    j: u32,
) -> Result<Vec<MumfordDivisor<u64>>> {
    if !crate::bounds::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    match p.checked_pow(j) {
        Some(m) if m <= ENUMERATION_BUDGET && j >= 1 => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "enumerating points modulo {p}^{j} exceeds {ENUMERATION_BUDGET}"
            )))
        }
    }
    let mut sols: Vec<(u64, u64)> = Vec::new();
    let f_at = |ring: &IntegersMod, a: u64| {
        let fp: Vec<u64> = curve.f().iter().map(|&c| ring.from_i64(c)).collect();
        poly::eval(ring, &fp, &a)
    };
    let base = IntegersMod::new(p, 1)?;
    for a in 0..p {
        let fa = f_at(&base, a);
        for b in 0..p {
            if base.mul(&b, &b) == fa {
                sols.push((a, b));
            }
        }
    }
    let mut step = p;
    for level in 2..=j {
        let ring = IntegersMod::new(p, level)?;
        let mut next = Vec::new();
        for &(a, b) in &sols {
            for da in 0..p {
                let a2 = a + da * step;
                let fa = f_at(&ring, a2);
                for db in 0..p {
                    let b2 = b + db * step;
                    if ring.mul(&b2, &b2) == fa {
                        next.push((a2, b2));
                    }
                }
            }
        }
        sols = next;
        step *= p;
    }
    sols.sort_unstable();
    let jac = Jacobian::residue(curve, p, j)?;
    let mut out = vec![jac.zero()];
    for (a, b) in sols {
        out.push(jac.point_elem(a, b)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    /// The class is a point of the curve itself.
    Infinite,
    /// Membership held up to the scan limit.
    AtLeast(u32),
    Exact(u32),
}

/// `v_p` together with `d_p = p^{−v_p}` kept as the pair `(p, −v_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicDistance {
    pub p: u64,
    pub vp: Valuation,
}

impl PadicDistance {
    /// Exponent of `p` in `d_p`; `None` when the distance is zero.
    pub fn distance_exponent(&self) -> Option<i64> {
        match self.vp {
            Valuation::Infinite => None,
            Valuation::AtLeast(j) | Valuation::Exact(j) => Some(-i64::from(j)),
        }
    }
}

/// Largest `j ≤ j_max` at which the reduction of `D` lies on the curve.
pub fn vp_distance(curve: &HyperellipticCurve, d: &RationalDivisor, p: u64, j_max: u32) -> Result<PadicDistance> {
    check_prime(curve, p)?;
    if j_max == 0 {
        return Err(Error::InvalidInput("j_max must be at least 1".into()));
    }
    if !Jacobian::rational(curve).is_valid(d) {
        return Err(Error::InvalidInput("not a reduced Mumford pair over Q".into()));
    }
    if d.degree() <= 1 {
        return Ok(PadicDistance { p, vp: Valuation::Infinite });
    }
    let mut last = 0;
    for j in 1..=j_max {
        let on = on_curve_mod(curve, &reduce_mod(curve, d, p, j)?, p, j)?;
        if on {
            assert_eq!(last, j - 1, "membership must be monotone in j");
            last = j;
        }
    }
    let vp = if last == j_max {
        Valuation::AtLeast(j_max)
    } else {
        Valuation::Exact(last)
    };
    Ok(PadicDistance { p, vp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The class is on the curve; the inequality only concerns points off it.
    OnCurve,
    /// `v_p` reached the scan limit, so the comparison cannot be decided.
    Inconclusive,
    Rejected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRow {
    pub divisor: RationalDivisor,
    pub order: Option<u64>,
    pub distance: Option<PadicDistance>,
    pub bound_exponent: LogScaledReal,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

/// Checks `v_p(T) ≤ 1 + D·H_p` for each listed class, comparing exponents in
/// log scale.
pub fn verify_bound(
    curve: &HyperellipticCurve,
    data: &CurveArithData,
    torsion: &[RationalDivisor],
    p: u64,
    j_max: u32,
    order_search_bound: u64,
) -> Result<Vec<VerificationRow>> {
    if !admissible_prime(p, data) {
        return Err(Error::HypothesisViolated(format!(
            "p = {p} divides 2·disc·n·∏S and is not admissible"
        )));
    }
    check_prime(curve, p)?;
    let exponent = tate_voloch_exponent_main(&constant_d(data)?, &h_bound(p, data.g, data.deg_k0)?)?;
    let jac = Jacobian::rational(curve);
    let p_int = Integer::from(p);
    torsion
        .iter()
        .map(|t| {
            let mut row = VerificationRow {
                divisor: t.clone(),
                order: None,
                distance: None,
                bound_exponent: exponent.clone(),
                verdict: Verdict::Rejected,
                reason: None,
            };
            if !jac.is_valid(t) {
                row.reason = Some("not a reduced Mumford pair".into());
                return Ok(row);
            }
            row.order = jac.order_of(t, order_search_bound)?;
            match row.order {
                None => {
                    row.reason = Some(format!("order exceeds the search bound {order_search_bound}"));
                    return Ok(row);
                }
                Some(n) if Integer::from(n).gcd(&p_int) != 1 => {
                    row.reason = Some(format!("order {n} is not prime to p"));
                    return Ok(row);
                }
                Some(_) => {}
            }
            let dist = match vp_distance(curve, t, p, j_max) {
                Ok(d) => d,
                Err(Error::NotPIntegral(msg)) => {
                    row.reason = Some(msg);
                    return Ok(row);
                }
                Err(e) => return Err(e),
            };
            row.distance = Some(dist);
            row.verdict = match dist.vp {
                Valuation::Infinite => Verdict::OnCurve,
                Valuation::AtLeast(_) => Verdict::Inconclusive,
                Valuation::Exact(v) => {
                    if LogScaledReal::from_u64(u64::from(v)) <= exponent {
                        Verdict::Holds
                    } else {
                        Verdict::Fails
                    }
                }
            };
            Ok(row)
        })
        .collect()
}
