//! The combinatorial bound chain: `Bu_m`, `L_{n,m}`, `H_m`, the Hasse–Weil
//! cardinality bound, the torsion-order and degree bounds, and the final
//! distance exponents.
//!
//! Everything past `Bu_m` is astronomically large and is carried as a
//! [`LogScaledReal`].

mod logscaled;

pub use logscaled::{LogScaledReal, LOG_PREC};

use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::arakelov::CurveArithData;
use crate::{Error, Result};

/// Parameters of one bound evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub g: u32,
    pub deg_k0: u32,
    pub p: u64,
    /// Residue field cardinality `p^f`.
    pub q: Integer,
}

impl BoundParams {
    /// Residue degree `f`, so `q = p^f`.
    pub fn new(g: u32, deg_k0: u32, p: u64, residue_degree: u32) -> Result<Self> {
        if residue_degree == 0 {
            return Err(Error::InvalidInput("residue degree must be positive".into()));
        }
        let q = Integer::from(p).pow(residue_degree);
        Self::with_q(g, deg_k0, p, q)
    }

    pub fn with_q(g: u32, deg_k0: u32, p: u64, q: Integer) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidInput(format!("genus {g} < 2")));
        }
        if deg_k0 == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let f = residue_degree_of(&q, p)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a power of {p}")))?;
        if f > deg_k0 {
            return Err(Error::InvalidInput(format!(
                "residue degree {f} exceeds field degree {deg_k0}"
            )));
        }
        Ok(BoundParams { g, deg_k0, p, q })
    }

    /// The `f` with `q = p^f`.
    pub fn residue_degree(&self) -> u32 {
        residue_degree_of(&self.q, self.p).expect("validated on construction")
    }
}

fn residue_degree_of(q: &Integer, p: u64) -> Option<u32> {
    if *q < 2 {
        return None;
    }
    let p = Integer::from(p);
    let mut rest = q.clone();
    let mut f = 0;
    while rest.is_divisible(&p) {
        rest /= &p;
        f += 1;
    }
    (rest == 1).then_some(f)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && Integer::from(p).is_probably_prime(40) != IsPrime::No
}

/// `Bu_m = (m(2g−2)+6g)·m^{2g}·3^g·g!`, exactly.
pub fn bu(m: u64, g: u32) -> Result<Integer> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    if g == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()));
    }
    let g64 = u64::from(g);
    let lead = Integer::from(m) * (2 * g64 - 2) + 6 * g64;
    let power = Integer::from(m).pow(2 * g);
    let three = Integer::from(Integer::u_pow_u(3, g));
    let fact = Integer::from(Integer::factorial(g));
    Ok(lead * power * three * fact)
}

fn lfloat<T>(x: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(LOG_PREC, x)
}

/// `2^{2g} − 2g − 1`, the coefficient of the middle Weil term.
fn middle_coefficient(g: u32) -> Integer {
    Integer::from(Integer::u_pow_u(2, 2 * g)) - 2 * g - 1
}

/// `ln[n^{e·g} + (2^{2g}−2g−1)·n^{e(g−1)} + 2g·n^{e(g−½)}]` from `ln n`.
fn weil_sum(ln_n: &Float, e: &Float, g: u32) -> LogScaledReal {
    let g_f = lfloat(g);
    let scaled = lfloat(ln_n * e);
    let t1 = LogScaledReal::from_ln(lfloat(&scaled * &g_f));
    let t2 = LogScaledReal::from_integer(&middle_coefficient(g))
        .mul(&LogScaledReal::from_ln(lfloat(&scaled * lfloat(&g_f - 1u32))));
    let t3 = LogScaledReal::from_u64(2 * u64::from(g))
        .mul(&LogScaledReal::from_ln(lfloat(&scaled * lfloat(&g_f - 0.5))));
    LogScaledReal::sum([&t1, &t2, &t3])
}

/// `L_{n,m} = [n^{Bu_m·g} + (2^{2g}−2g−1)n^{Bu_m(g−1)} + 2g·n^{Bu_m(g−½)}]^{4g²}`.
pub fn l_bound(n: &LogScaledReal, m: u64, g: u32) -> Result<LogScaledReal> {
    let two = lfloat(2).ln();
    let ok = n.sign() > 0 && n.ln().is_some_and(|l| *l >= Float::with_val(LOG_PREC, &two - 1e-30));
    if !ok {
        return Err(Error::InvalidInput(format!("l_bound requires n >= 2, got {n:?}")));
    }
    let b = lfloat(&bu(m, g)?);
    let inner = weil_sum(n.ln().expect("positive"), &b, g);
    Ok(inner.powu(4 * u64::from(g) * u64::from(g)))
}

pub fn l_bound_int(n: &Integer, m: u64, g: u32) -> Result<LogScaledReal> {
    if *n < 2 {
        return Err(Error::InvalidInput(format!("l_bound requires n >= 2, got {n}")));
    }
    l_bound(&LogScaledReal::from_integer(n), m, g)
}

/// `H_m = L_{m^{[K₀:Q]}, m}`.
pub fn h_bound(m: u64, g: u32, deg_k0: u32) -> Result<LogScaledReal> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("h_bound requires m >= 2, got {m}")));
    }
    if deg_k0 == 0 {
        return Err(Error::InvalidInput("field degree must be positive".into()));
    }
    let n = LogScaledReal::from_u64(m).powu(u64::from(deg_k0));
    l_bound(&n, m, g)
}

/// Upper bound `q^{dg} + (2^{2g}−2g−1)q^{d(g−1)} + 2g·q^{d(g−½)}` on the
/// number of `F_{q^d}`-points of the Jacobian.
pub fn hasse_weil_card_bound(q: &Integer, d: &Integer, g: u32) -> Result<LogScaledReal> {
    if *q < 2 {
        return Err(Error::InvalidInput(format!("q must be >= 2, got {q}")));
    }
    if *d < 1 {
        return Err(Error::InvalidInput(format!("d must be >= 1, got {d}")));
    }
    if g == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()));
    }
    let ln_q = LogScaledReal::from_integer(q);
    Ok(weil_sum(ln_q.ln().expect("positive"), &lfloat(d), g))
}

/// Bound on the order of torsion points coprime to `p`: the Weil bound with
/// `d = Bu_p`.
pub fn order_bound(params: &BoundParams) -> Result<LogScaledReal> {
    hasse_weil_card_bound(&params.q, &bu(params.p, params.g)?, params.g)
}

/// `N^{4g²}`, bounding `#GL_{2g}(Z/NZ)`.
pub fn degree_bound(n: &LogScaledReal, g: u32) -> Result<LogScaledReal> {
    let ok = n.sign() > 0 && n.ln().is_some_and(|l| !l.is_sign_negative() || l.is_zero());
    if !ok {
        return Err(Error::InvalidInput(format!("degree_bound requires N >= 1, got {n:?}")));
    }
    Ok(n.powu(4 * u64::from(g) * u64::from(g)))
}

/// `1 + D·H_p`; the distance bound is `p^{−exponent}`.
pub fn tate_voloch_exponent_main(d: &Float, h_p: &LogScaledReal) -> Result<LogScaledReal> {
    if d.is_nan() || *d < 0 {
        return Err(Error::InvalidInput(format!("D must be >= 0, got {d}")));
    }
    Ok(LogScaledReal::one().add(&LogScaledReal::from_float(d).mul(h_p)))
}

/// `1 + 2·L_{q,p}·[K₀:Q]·arak_const` with `q` the actual residue cardinality.
pub fn tate_voloch_exponent_sharp(params: &BoundParams, arak_const: &Float) -> Result<LogScaledReal> {
    if arak_const.is_nan() || *arak_const < 0 {
        return Err(Error::InvalidInput(format!(
            "arakelov constant must be >= 0, got {arak_const}"
        )));
    }
    let l_q = l_bound_int(&params.q, params.p, params.g)?;
    let factor = LogScaledReal::from_u64(2 * u64::from(params.deg_k0))
        .mul(&LogScaledReal::from_float(arak_const));
    Ok(LogScaledReal::one().add(&factor.mul(&l_q)))
}

/// Whether `p` is coprime to `R = 2·|D_{K₀/Q}|·n_{K₀}·∏_{l∈S} l`.
pub fn admissible_prime(p: u64, data: &CurveArithData) -> bool {
    if !is_prime(p) || p == 2 {
        return false;
    }
    let p_int = Integer::from(p);
    !data.disc.is_divisible(&p_int)
        && !data.component_lcm.is_divisible(&p_int)
        && !data.bad_primes.contains(&p)
}

#[cfg(test)]
mod tests;
