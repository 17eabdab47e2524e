//! Scalar abstraction shared by the theta machinery.
//!
//! Every numerical routine that must run both as a fast screening pass and at
//! a configurable working precision is written once against [`Real`], which is
//! implemented for `f64` and for MPFR-backed [`rug::Float`].

use std::fmt;

use rug::float::Constant;
use rug::Float;

/// Precision reported by the `f64` implementation.
pub const F64_BITS: u32 = 53;

pub trait Real: Clone + Send + Sync + fmt::Debug + PartialOrd + 'static {
    fn from_f64(x: f64, prec: u32) -> Self;
    fn from_float(x: &Float, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn to_float(&self, prec: u32) -> Float;
    fn prec(&self) -> u32;
    fn pi(prec: u32) -> Self;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn divide(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times_f64(&self, k: f64) -> Self;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    fn round(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);

    fn zero_like(&self) -> Self {
        Self::from_f64(0.0, self.prec())
    }

    fn one_like(&self) -> Self {
        Self::from_f64(1.0, self.prec())
    }

    fn is_zero(&self) -> bool {
        self.to_f64() == 0.0
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _prec: u32) -> Self {
        x
    }
    fn from_float(x: &Float, _prec: u32) -> Self {
        x.to_f64()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, *self)
    }
    fn prec(&self) -> u32 {
        F64_BITS
    }
    fn pi(_prec: u32) -> Self {
        std::f64::consts::PI
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn times_f64(&self, k: f64) -> Self {
        self * k
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn round(&self) -> Self {
        f64::round(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
}

impl Real for Float {
    fn from_f64(x: f64, prec: u32) -> Self {
        Float::with_val(prec, x)
    }
    fn from_float(x: &Float, prec: u32) -> Self {
        Float::with_val(prec, x)
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
    fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self)
    }
    fn prec(&self) -> u32 {
        Float::prec(self)
    }
    fn pi(prec: u32) -> Self {
        Float::with_val(prec, Constant::Pi)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self + rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self - rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self * rhs)
    }
    fn divide(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self / rhs)
    }
    fn negate(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn times_f64(&self, k: f64) -> Self {
        Float::with_val(self.prec(), self * k)
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn ln(&self) -> Self {
        self.clone().ln()
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn abs(&self) -> Self {
        self.clone().abs()
    }
    fn floor(&self) -> Self {
        self.clone().floor()
    }
    fn round(&self) -> Self {
        self.clone().round()
    }
    fn sin_cos(&self) -> (Self, Self) {
        self.clone().sin_cos(Float::new(self.prec()))
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
}

/// A complex number over any [`Real`].
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cx::new(R::from_f64(re, prec), R::from_f64(im, prec))
    }

    pub fn zero(prec: u32) -> Self {
        Cx::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Cx::from_f64(1.0, 0.0, prec)
    }

    pub fn from_real(re: R) -> Self {
        let im = re.zero_like();
        Cx { re, im }
    }

    pub fn convert<S: Real>(&self, prec: u32) -> Cx<S> {
        Cx::new(
            S::from_float(&self.re.to_float(prec), prec),
            S::from_float(&self.im.to_float(prec), prec),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        Cx::new(self.re.plus(&rhs.re), self.im.plus(&rhs.im))
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        Cx::new(self.re.minus(&rhs.re), self.im.minus(&rhs.im))
    }

    pub fn times(&self, rhs: &Self) -> Self {
        let re = self.re.times(&rhs.re).minus(&self.im.times(&rhs.im));
        let im = self.re.times(&rhs.im).plus(&self.im.times(&rhs.re));
        Cx::new(re, im)
    }

    pub fn scale(&self, k: &R) -> Self {
        Cx::new(self.re.times(k), self.im.times(k))
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        Cx::new(self.re.times_f64(k), self.im.times_f64(k))
    }

    pub fn negate(&self) -> Self {
        Cx::new(self.re.negate(), self.im.negate())
    }

    /// Multiplication by `i`.
    pub fn rotate(&self) -> Self {
        Cx::new(self.im.negate(), self.re.clone())
    }

    pub fn norm_sqr(&self) -> R {
        self.re.times(&self.re).plus(&self.im.times(&self.im))
    }

    pub fn abs(&self) -> R {
        self.norm_sqr().sqrt()
    }

    pub fn exp(&self) -> Self {
        let modulus = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx::new(modulus.times(&c), modulus.times(&s))
    }
}
