use std::cmp::Ordering;
use std::fmt;

use rug::{Float, Integer};

/// Bits of the natural-log mantissa.
pub const LOG_PREC: u32 = 128;

/// A real number stored as `sign * exp(ln)`.
///
/// Bound values such as `H_p` have tens of millions of digits, so they only
/// ever exist in this form. `ln` is meaningless (and kept at zero) when the
/// sign is zero.
#[derive(Clone, PartialEq)]
pub struct LogScaledReal {
    sign: i8,
    ln: Float,
}

impl fmt::Debug for LogScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "LogScaledReal(0)"),
            s => write!(f, "LogScaledReal({}exp({}))", if s < 0 { "-" } else { "" }, self.ln),
        }
    }
}

fn lf<T>(x: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(LOG_PREC, x)
}

impl LogScaledReal {
    pub fn zero() -> Self {
        LogScaledReal { sign: 0, ln: lf(0) }
    }

    pub fn one() -> Self {
        LogScaledReal { sign: 1, ln: lf(0) }
    }

    /// `sign * exp(ln)`; a zero sign discards `ln`.
    pub fn from_parts(sign: i8, ln: Float) -> Self {
        match sign.signum() {
            0 => Self::zero(),
            s => LogScaledReal {
                sign: s,
                ln: Float::with_val(LOG_PREC, ln),
            },
        }
    }

    /// A positive value given by its natural log.
    pub fn from_ln(ln: Float) -> Self {
        Self::from_parts(1, ln)
    }

    pub fn from_integer(n: &Integer) -> Self {
        match n.cmp0() {
            Ordering::Equal => Self::zero(),
            ord => {
                // Exact conversion before the log keeps the full 128 bits.
                let exact = Float::with_val(n.significant_bits().max(LOG_PREC), n);
                LogScaledReal {
                    sign: if ord == Ordering::Less { -1 } else { 1 },
                    ln: lf(exact.abs().ln_ref()),
                }
            }
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    pub fn from_float(x: &Float) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        LogScaledReal {
            sign: if x.is_sign_negative() { -1 } else { 1 },
            ln: lf(Float::with_val(x.prec().max(LOG_PREC), x).abs().ln_ref()),
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Natural log of the magnitude; `None` for zero.
    pub fn ln(&self) -> Option<&Float> {
        (self.sign != 0).then_some(&self.ln)
    }

    pub fn log10(&self) -> Option<Float> {
        self.ln()
            .map(|l| Float::with_val(LOG_PREC, l / lf(10).ln()))
    }

    pub fn log2(&self) -> Option<Float> {
        self.ln().map(|l| Float::with_val(LOG_PREC, l / lf(2).ln()))
    }

    /// The value itself; overflows to infinity for huge magnitudes.
    pub fn to_float(&self, prec: u32) -> Float {
        match self.sign {
            0 => Float::with_val(prec, 0),
            s => Float::with_val(prec, self.ln.exp_ref()) * i32::from(s),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::zero();
        }
        LogScaledReal {
            sign: self.sign * rhs.sign,
            ln: lf(&self.ln + &rhs.ln),
        }
    }

    /// `self^k` for a non-negative real exponent; the base must be positive
    /// unless `k` is zero.
    pub fn pow(&self, k: &Float) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        assert!(self.sign >= 0, "real power of a negative value");
        if self.sign == 0 {
            return Self::zero();
        }
        LogScaledReal {
            sign: 1,
            ln: lf(&self.ln * k),
        }
    }

    pub fn powu(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let sign = if self.sign < 0 && k % 2 == 1 { -1 } else { self.sign.abs() };
        if sign == 0 {
            return Self::zero();
        }
        LogScaledReal {
            sign,
            ln: lf(&self.ln * k),
        }
    }

    /// Sum via log-sum-exp.
    pub fn add(&self, rhs: &Self) -> Self {
        if self.sign == 0 {
            return rhs.clone();
        }
        if rhs.sign == 0 {
            return self.clone();
        }
        let (big, small) = if self.ln >= rhs.ln { (self, rhs) } else { (rhs, self) };
        let delta = lf(&small.ln - &big.ln).exp();
        if self.sign == rhs.sign {
            LogScaledReal {
                sign: big.sign,
                ln: lf(&big.ln + delta.ln_1p()),
            }
        } else {
            if delta == 1 {
                return Self::zero();
            }
            LogScaledReal {
                sign: big.sign,
                ln: lf(&big.ln + lf(-delta).ln_1p()),
            }
        }
    }

    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a LogScaledReal>) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, t| acc.add(t))
    }
}

impl PartialOrd for LogScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln.partial_cmp(&other.ln),
                _ => other.ln.partial_cmp(&self.ln),
            },
            ord => Some(ord),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_err(a: &Float, b: &Float) -> f64 {
        Float::with_val(256, a - b).abs().to_f64() / b.to_f64().abs().max(1e-300)
    }

    #[test]
    fn integer_round_trip_is_faithful() {
        let n = Integer::from(Integer::u_pow_u(10, 299)) * 7u32 + 12345u32;
        let l = LogScaledReal::from_integer(&n);
        let back = l.to_float(256);
        let exact = Float::with_val(1200, &n);
        assert!(rel_err(&back, &exact) < 1e-30);
    }

    #[test]
    fn add_matches_exact_integers() {
        let a = Integer::from(Integer::u_pow_u(3, 150));
        let b = Integer::from(Integer::u_pow_u(2, 200));
        let sum = LogScaledReal::from_integer(&a).add(&LogScaledReal::from_integer(&b));
        let exact = LogScaledReal::from_integer(&Integer::from(&a + &b));
        assert!(rel_err(sum.ln().unwrap(), exact.ln().unwrap()) < 1e-35);
        let diff = LogScaledReal::from_integer(&a).add(&LogScaledReal::from_integer(&-b.clone()));
        let exact = LogScaledReal::from_integer(&Integer::from(&a - &b));
        assert_eq!(diff.sign(), exact.sign());
        assert!(rel_err(diff.ln().unwrap(), exact.ln().unwrap()) < 1e-35);
    }

    #[test]
    fn cancellation_gives_zero() {
        let a = LogScaledReal::from_u64(17);
        let b = LogScaledReal::from_parts(-1, a.ln().unwrap().clone());
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn ordering_handles_signs() {
        let neg = LogScaledReal::from_parts(-1, lf(5));
        let small_neg = LogScaledReal::from_parts(-1, lf(1));
        assert!(neg < small_neg);
        assert!(small_neg < LogScaledReal::zero());
        assert!(LogScaledReal::zero() < LogScaledReal::one());
    }

    proptest! {
        #[test]
        fn mul_and_pow_are_exact_on_integers(a in 1u64..1_000_000, b in 1u64..1_000_000, k in 0u64..40) {
            let prod = LogScaledReal::from_u64(a).mul(&LogScaledReal::from_u64(b));
            let exact = LogScaledReal::from_integer(&(Integer::from(a) * b));
            prop_assert!(Float::with_val(256, prod.ln().unwrap() - exact.ln().unwrap()).abs() < 1e-35);
            let p = LogScaledReal::from_u64(a).powu(k);
            let exact = LogScaledReal::from_integer(&Integer::from(Integer::u_pow_u(a as u32, k as u32)));
            if a <= u32::MAX as u64 {
                prop_assert!(Float::with_val(256, p.ln().unwrap() - exact.ln().unwrap()).abs() < 1e-33);
            }
        }

        #[test]
        fn addition_is_monotone(a in 1u64..1_000_000, b in 1u64..1_000_000, c in 1u64..1_000_000) {
            let la = LogScaledReal::from_u64(a);
            let lb = LogScaledReal::from_u64(b);
            let lc = LogScaledReal::from_u64(c);
            prop_assert!(la.add(&lc) > la);
            if a < b {
                prop_assert!(la.add(&lc) < lb.add(&lc));
            }
        }
    }
}
