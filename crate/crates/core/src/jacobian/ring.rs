use std::fmt::Debug;

use rug::{Integer, Rational};

use crate::{Error, Result};

/// Coefficient ring for Mumford arithmetic.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit; non-units give `RepresentationDegenerate`.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn one(&self) -> Rational {
        Rational::from(1)
    }
    fn from_i64(&self, x: i64) -> Rational {
        Rational::from(x)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a - b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Rational::from(-a)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.cmp0().is_eq()
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if self.is_zero(a) {
            return Err(Error::RepresentationDegenerate("division by zero".into()));
        }
        Ok(a.clone().recip())
    }
}

/// `Z/p^j`, with `p^j < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    p: u64,
    j: u32,
    modulus: u64,
}

impl IntegersMod {
    pub fn new(p: u64, j: u32) -> Result<Self> {
        if p < 2 || j == 0 {
            return Err(Error::InvalidInput(format!("invalid residue ring Z/{p}^{j}")));
        }
        let modulus = p
            .checked_pow(j)
            .filter(|m| *m < 1 << 63)
            .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{j} does not fit a machine word")))?;
        Ok(IntegersMod { p, j, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn reduce_integer(&self, x: &Integer) -> u64 {
        let r = Integer::from(x % self.modulus);
        let r = if r < 0 { r + self.modulus } else { r };
        r.to_u64().expect("residue fits")
    }

    /// Image of a `p`-integral rational.
    pub fn reduce_rational(&self, x: &Rational) -> Result<u64> {
        let den = self.reduce_integer(x.denom());
        if !self.is_unit(den) {
            return Err(Error::NotPIntegral(format!("{x} has denominator divisible by {}", self.p)));
        }
        Ok(self.mul(&self.reduce_integer(x.numer()), &self.inv(&den)?))
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.modulus)) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if !self.is_unit(*a) {
            return Err(Error::RepresentationDegenerate(format!(
                "{a} is not a unit modulo {}",
                self.modulus
            )));
        }
        let inv = Integer::from(*a)
            .invert(&Integer::from(self.modulus))
            .map_err(|_| Error::RepresentationDegenerate(format!("{a} not invertible")))?;
        Ok(inv.to_u64().expect("residue fits"))
    }
}
