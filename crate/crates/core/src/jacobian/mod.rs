//! Genus-2 Jacobian arithmetic for `z² = f(t)` with `f` monic of degree 5,
//! over the rationals and over `Z/p^j`, plus the `p`-adic distance of a
//! divisor class to the embedded curve.
//!
//! Classes are kept in reduced Mumford form `(u, v)`: `u` monic of degree at
//! most 2, `deg v < deg u`, and `u | v² − f`. The base point of the
//! embedding is the point at infinity, so `[P − ∞]` is `(t − x(P), y(P))`.

mod padic;
pub mod poly;
pub mod ring;

pub use padic::{
    enumerate_curve_points_mod, on_curve_mod, reduce_mod, verify_bound, vp_distance, PadicDistance,
    Valuation, Verdict, VerificationRow,
};
pub use ring::{IntegersMod, Rationals, Ring};

use rug::{Integer, Rational};

use crate::{Error, Result};
use poly::Poly;

/// `z² = f(t)`, `f` monic quintic with integer coefficients and nonzero
/// discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    f: Vec<i64>,
    disc: Integer,
}

impl HyperellipticCurve {
    /// `f` is given constant term first.
    pub fn new(f: Vec<i64>) -> Result<Self> {
        if f.len() != 6 || f[5] != 1 {
            return Err(Error::InvalidInput(
                "the model must be a monic polynomial of degree exactly 5".into(),
            ));
        }
        let disc = discriminant(&f);
        if disc == 0 {
            return Err(Error::InvalidInput("f is not squarefree".into()));
        }
        Ok(HyperellipticCurve { f, disc })
    }

    pub fn f(&self) -> &[i64] {
        &self.f
    }

    pub fn disc(&self) -> &Integer {
        &self.disc
    }

    /// Odd primes not dividing the discriminant.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        p > 2 && !self.disc.is_divisible(&Integer::from(p))
    }

    pub fn eval(&self, t: &Integer) -> Integer {
        self.f.iter().rev().fold(Integer::new(), |acc, c| acc * t + *c)
    }
}

/// Discriminant of a monic polynomial, via a fraction-free determinant of
/// the Sylvester matrix of `f` and `f'`.
fn discriminant(f: &[i64]) -> Integer {
    let n = f.len() - 1;
    let df: Vec<i64> = (1..=n).map(|k| f[k] * k as i64).collect();
    let size = 2 * n - 1;
    let mut m = vec![vec![Integer::new(); size]; size];
    for row in 0..n - 1 {
        for (k, c) in f.iter().rev().enumerate() {
            m[row][row + k] = Integer::from(*c);
        }
    }
    for row in 0..n {
        for (k, c) in df.iter().rev().enumerate() {
            m[n - 1 + row][row + k] = Integer::from(*c);
        }
    }
    let res = bareiss_det(m);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = val / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    prev * sign
}

/// A divisor class in Mumford form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor<E> {
    pub u: Poly<E>,
    pub v: Poly<E>,
}

pub type RationalDivisor = MumfordDivisor<Rational>;

impl MumfordDivisor<Rational> {
    /// Parses coefficient lists (constant term first) of `"num/den"` strings.
    pub fn parse(u: &[String], v: &[String]) -> Result<Self> {
        let parse = |xs: &[String]| -> Result<Vec<Rational>> {
            let parsed = xs
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rational>()
                        .map_err(|e| Error::InvalidInput(format!("bad rational '{s}': {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(poly::trim(&Rationals, parsed))
        };
        Ok(MumfordDivisor {
            u: parse(u)?,
            v: parse(v)?,
        })
    }

    pub fn to_strings(&self) -> (Vec<String>, Vec<String>) {
        let fmt = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect();
        (fmt(&self.u), fmt(&self.v))
    }
}

impl<E> MumfordDivisor<E> {
    pub fn degree(&self) -> usize {
        self.u.len().saturating_sub(1)
    }
}

/// Group law on the Jacobian over a coefficient ring.
#[derive(Clone, Debug)]
pub struct Jacobian<R: Ring> {
    ring: R,
    f: Poly<R::Elem>,
}

impl Jacobian<Rationals> {
    pub fn rational(curve: &HyperellipticCurve) -> Self {
        let f = curve.f().iter().map(|&c| Rational::from(c)).collect();
        Jacobian { ring: Rationals, f }
    }

    /// `[(x, y) − ∞]` for a rational point.
    pub fn point(&self, x: Rational, y: Rational) -> Result<RationalDivisor> {
        self.point_elem(x, y)
    }
}

impl Jacobian<IntegersMod> {
    pub fn residue(curve: &HyperellipticCurve, p: u64, j: u32) -> Result<Self> {
        let ring = IntegersMod::new(p, j)?;
        let f = poly::trim(&ring, curve.f().iter().map(|&c| ring.from_i64(c)).collect());
        Ok(Jacobian { ring, f })
    }
}

impl<R: Ring> Jacobian<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn f(&self) -> &[R::Elem] {
        &self.f
    }

    pub fn zero(&self) -> MumfordDivisor<R::Elem> {
        MumfordDivisor {
            u: poly::constant(&self.ring, self.ring.one()),
            v: Vec::new(),
        }
    }

    pub fn is_zero(&self, d: &MumfordDivisor<R::Elem>) -> bool {
        d.u.len() == 1
    }

    pub fn point_elem(&self, x: R::Elem, y: R::Elem) -> Result<MumfordDivisor<R::Elem>> {
        let r = &self.ring;
        let d = MumfordDivisor {
            u: vec![r.neg(&x), r.one()],
            v: poly::constant(r, y),
        };
        if !self.is_valid(&d) {
            return Err(Error::InvalidInput(format!("{d:?} is not a point of the curve")));
        }
        Ok(d)
    }

    /// The reduced Mumford invariants.
    pub fn is_valid(&self, d: &MumfordDivisor<R::Elem>) -> bool {
        let r = &self.ring;
        let monic = d.u.last().is_some_and(|c| *c == r.one());
        if !monic || d.u.len() > 3 || d.v.len() >= d.u.len() {
            return false;
        }
        if d.v.last().is_some_and(|c| r.is_zero(c)) {
            return false;
        }
        let lhs = poly::sub(r, &poly::mul(r, &d.v, &d.v), &self.f);
        matches!(poly::rem(r, &lhs, &d.u), Ok(rm) if rm.is_empty())
    }

    pub fn neg(&self, d: &MumfordDivisor<R::Elem>) -> MumfordDivisor<R::Elem> {
        MumfordDivisor {
            u: d.u.clone(),
            v: poly::trim(&self.ring, poly::neg(&self.ring, &d.v)),
        }
    }

    /// Cantor composition followed by reduction.
    pub fn add(
        &self,
        d1: &MumfordDivisor<R::Elem>,
        d2: &MumfordDivisor<R::Elem>,
    ) -> Result<MumfordDivisor<R::Elem>> {
        let r = &self.ring;
        let (d0, e1, e2) = poly::xgcd(r, &d1.u, &d2.u)?;
        let vsum = poly::add(r, &d1.v, &d2.v);
        let (d, c1, c2) = poly::xgcd(r, &d0, &vsum)?;
        let s1 = poly::mul(r, &c1, &e1);
        let s2 = poly::mul(r, &c1, &e2);
        let s3 = c2;

        let d_sq = poly::mul(r, &d, &d);
        let u = poly::exact_div(r, &poly::mul(r, &d1.u, &d2.u), &d_sq)?;
        let numer = poly::add(
            r,
            &poly::add(
                r,
                &poly::mul(r, &s1, &poly::mul(r, &d1.u, &d2.v)),
                &poly::mul(r, &s2, &poly::mul(r, &d2.u, &d1.v)),
            ),
            &poly::mul(r, &s3, &poly::add(r, &poly::mul(r, &d1.v, &d2.v), &self.f)),
        );
        let v = poly::rem(r, &poly::exact_div(r, &numer, &d)?, &u)?;
        self.reduce(u, v)
    }

    fn reduce(&self, mut u: Poly<R::Elem>, mut v: Poly<R::Elem>) -> Result<MumfordDivisor<R::Elem>> {
        let r = &self.ring;
        while u.len() > 3 {
            let num = poly::sub(r, &self.f, &poly::mul(r, &v, &v));
            let next = poly::make_monic(r, &poly::exact_div(r, &num, &u)?)?;
            v = poly::rem(r, &poly::neg(r, &v), &next)?;
            u = next;
        }
        let v = poly::rem(r, &v, &u)?;
        Ok(MumfordDivisor { u, v })
    }

    pub fn double(&self, d: &MumfordDivisor<R::Elem>) -> Result<MumfordDivisor<R::Elem>> {
        self.add(d, d)
    }

    /// `n·D` by double-and-add; negative `n` goes through [`Self::neg`].
    pub fn scalar_mul(&self, n: i64, d: &MumfordDivisor<R::Elem>) -> Result<MumfordDivisor<R::Elem>> {
        let base = if n < 0 { self.neg(d) } else { d.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.zero();
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `n ≥ 1` with `n·D = 0`, if at most `search_bound`.
    pub fn order_of(&self, d: &MumfordDivisor<R::Elem>, search_bound: u64) -> Result<Option<u64>> {
        let mut acc = d.clone();
        for n in 1..=search_bound {
            if self.is_zero(&acc) {
                return Ok(Some(n));
            }
            acc = self.add(&acc, d)?;
        }
        Ok(None)
    }
}
