//! A small scalar abstraction so the certifier can run identically over
//! plain rationals and over ℚ(√5).

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use crate::sqrt5::Sqrt5;

/// Exact field scalar with ordering and decimal rendering.
pub trait Scalar: Clone + PartialEq + Send + Sync {
    fn from_rational(q: BigRational) -> Self;
    fn from_u64(n: u64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn pow(&self, e: u64) -> Self;
    fn cmp_rational(&self, q: &BigRational) -> Ordering;
    /// Total order (all our scalars embed in ℝ).
    fn cmp_scalar(&self, o: &Self) -> Ordering;
    /// Decimal rendering with `sig` significant digits.
    fn render_significant(&self, sig: usize) -> String;
    /// Exact token for certificate files (`p/q`, or `a+b*sqrt5` form).
    fn render_exact(&self) -> String;

    fn is_ge_one(&self) -> bool {
        self.cmp_rational(&BigRational::from_integer(1.into())) != Ordering::Less
    }
}

impl Scalar for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero());
        self / o
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = BigRational::from_integer(1.into());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
    fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.cmp(q)
    }
    fn cmp_scalar(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
    fn render_significant(&self, sig: usize) -> String {
        crate::rational::render_significant(self, sig)
    }
    fn render_exact(&self) -> String {
        crate::rational::render_exact(self)
    }
}

impl Scalar for Sqrt5 {
    fn from_rational(q: BigRational) -> Self {
        Sqrt5::from_rational(q)
    }
    fn add(&self, o: &Self) -> Self {
        Sqrt5::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Sqrt5::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Sqrt5::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        Sqrt5::div(self, o)
    }
    fn pow(&self, e: u64) -> Self {
        Sqrt5::pow(self, e)
    }
    fn cmp_rational(&self, q: &BigRational) -> Ordering {
        Sqrt5::cmp_rational(self, q)
    }
    fn cmp_scalar(&self, o: &Self) -> Ordering {
        Sqrt5::cmp(self, o)
    }
    fn render_significant(&self, sig: usize) -> String {
        Sqrt5::render_significant(self, sig)
    }
    fn render_exact(&self) -> String {
        Sqrt5::render_exact(self)
    }
}
