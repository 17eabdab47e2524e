//! Dense univariate polynomials over a [`Ring`], coefficients lowest degree
//! first and trimmed of trailing zeros.

use super::ring::Ring;
use crate::{Error, Result};

pub type Poly<E> = Vec<E>;

pub fn trim<R: Ring>(r: &R, mut a: Poly<R::Elem>) -> Poly<R::Elem> {
    while a.last().is_some_and(|c| r.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<R: Ring>(r: &R, c: R::Elem) -> Poly<R::Elem> {
    trim(r, vec![c])
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Poly<R::Elem> {
    let n = a.len().max(b.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(r, out)
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Poly<R::Elem> {
    let n = a.len().max(b.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(r, out)
}

pub fn neg<R: Ring>(r: &R, a: &[R::Elem]) -> Poly<R::Elem> {
    a.iter().map(|c| r.neg(c)).collect()
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Poly<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim(r, out)
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], k: &R::Elem) -> Poly<R::Elem> {
    trim(r, a.iter().map(|c| r.mul(c, k)).collect())
}

pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    a.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
pub fn divrem<R: Ring>(
    r: &R,
    a: &[R::Elem],
    b: &[R::Elem],
) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
    let db = degree(b).ok_or_else(|| Error::RepresentationDegenerate("division by the zero polynomial".into()))?;
    let lead_inv = r.inv(&b[db])?;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return Ok((Vec::new(), trim(r, rem)));
    }
    let mut quot = vec![r.zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = r.mul(&rem[k + db], &lead_inv);
        if !r.is_zero(&c) {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] = r.sub(&rem[k + i], &r.mul(&c, bi));
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    Ok((trim(r, quot), trim(r, rem)))
}

pub fn rem<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Poly<R::Elem>> {
    divrem(r, a, b).map(|(_, rm)| rm)
}

/// Quotient of an exact division; a nonzero remainder is an error.
pub fn exact_div<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Poly<R::Elem>> {
    let (q, rm) = divrem(r, a, b)?;
    if !rm.is_empty() {
        return Err(Error::RepresentationDegenerate("inexact polynomial division".into()));
    }
    Ok(q)
}

pub fn make_monic<R: Ring>(r: &R, a: &[R::Elem]) -> Result<Poly<R::Elem>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lead) => {
            let inv = r.inv(lead)?;
            Ok(scale(r, a, &inv))
        }
    }
}

/// Monic `d = gcd(a, b)` with `s·a + t·b = d`.
///
/// Over `Z/p^j` every remainder met on the way must have a unit leading
/// coefficient; otherwise the gcd is not well defined and the call fails
/// with `RepresentationDegenerate`.
pub fn xgcd<R: Ring>(
    r: &R,
    a: &[R::Elem],
    b: &[R::Elem],
) -> Result<(Poly<R::Elem>, Poly<R::Elem>, Poly<R::Elem>)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (constant(r, r.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(r, r.one()));
    while !r1.is_empty() {
        let (q, rm) = divrem(r, &r0, &r1)?;
        let s2 = sub(r, &s0, &mul(r, &q, &s1));
        let t2 = sub(r, &t0, &mul(r, &q, &t1));
        (r0, r1) = (r1, rm);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    match r0.last() {
        None => Ok((Vec::new(), Vec::new(), Vec::new())),
        Some(lead) => {
            let inv = r.inv(lead)?;
            Ok((scale(r, &r0, &inv), scale(r, &s0, &inv), scale(r, &t0, &inv)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::ring::{IntegersMod, Rationals};
    use rug::Rational;

    fn q(xs: &[i64]) -> Poly<Rational> {
        trim(&Rationals, xs.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = q(&[1, 0, 0, 0, 0, 1]);
        let b = q(&[3, -2, 1]);
        let (qt, rm) = divrem(&Rationals, &a, &b).unwrap();
        assert_eq!(add(&Rationals, &mul(&Rationals, &qt, &b), &rm), a);
        assert!(rm.len() < b.len());
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = mul(&Rationals, &q(&[-1, 1]), &q(&[2, 1]));
        let b = mul(&Rationals, &q(&[-1, 1]), &q(&[5, 0, 1]));
        let (d, s, t) = xgcd(&Rationals, &a, &b).unwrap();
        assert_eq!(d, q(&[-1, 1]));
        let combo = add(&Rationals, &mul(&Rationals, &s, &a), &mul(&Rationals, &t, &b));
        assert_eq!(combo, d);
    }

    #[test]
    fn non_unit_leading_coefficient_is_degenerate() {
        let z9 = IntegersMod::new(3, 2).unwrap();
        let a = vec![1u64, 0, 1];
        let b = vec![1u64, 3];
        assert!(matches!(divrem(&z9, &a, &b), Err(Error::RepresentationDegenerate(_))));
    }
}
