//! Exact arithmetic in the quadratic field ℚ(√5).
//!
//! The golden-ratio certificate parameters `x = (3+√5)/2` and `s = 3−√5`
//! are irrational, so their inequality sweep cannot run over plain
//! rationals. Field elements are kept as `a + b√5` with rational `a`, `b`;
//! comparisons reduce to exact sign analysis (squaring with case analysis),
//! and decimal rendering goes through an integer square root with guard
//! digits, so printed values are correctly rounded.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat, rat_i};

/// An element `a + b·√5` of ℚ(√5).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt5 { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Sqrt5 { a, b: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// `(3+√5)/2`, the Idea-1 certificate value of `x`.
    pub fn golden_x() -> Self {
        Sqrt5::new(rat(3, 2), rat(1, 2))
    }

    /// `3−√5`, the Idea-1 certificate value of `s`
    /// (the simplified form of `(6+2√5)/(7+3√5)`).
    pub fn golden_s() -> Self {
        Sqrt5::new(rat_i(3), rat_i(-1))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Sqrt5::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Sqrt5::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        Sqrt5::new(-self.a.clone(), -self.b.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a1 + b1√5)(a2 + b2√5) = a1a2 + 5 b1b2 + (a1b2 + b1a2)√5
        Sqrt5::new(
            &self.a * &o.a + (&self.b * &o.b) * rat_i(5),
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    /// Division via the conjugate: 1/(a+b√5) = (a−b√5)/(a²−5b²).
    pub fn div(&self, o: &Self) -> Self {
        let norm = &o.a * &o.a - (&o.b * &o.b) * rat_i(5);
        assert!(!norm.is_zero(), "division by zero in Q(sqrt5)");
        let conj = Sqrt5::new(o.a.clone(), -o.b.clone());
        let p = self.mul(&conj);
        Sqrt5::new(p.a / &norm, p.b / &norm)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Sqrt5::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact sign of `a + b√5`: squares away the radical with case analysis
    /// on the signs of `a` and `b`.
    pub fn sign(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Opposite signs: compare a² with 5b²; the term with the larger
            // square dominates.
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b25 = (&self.b * &self.b) * rat_i(5);
                match a2.cmp(&b25) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.sub(&Sqrt5::from_rational(q.clone())).sign()
    }

    pub fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }

    /// A rational approximation with absolute error below `10^-digits`,
    /// built from an exact integer square root of `5·10^(2k)`.
    pub fn to_rational_approx(&self, digits: u32) -> BigRational {
        let k = digits + 8;
        let scale = BigInt::from(10u32).pow(k);
        let root = (BigInt::from(5) * &scale * &scale).sqrt();
        let sqrt5 = BigRational::new(root, scale);
        &self.a + &self.b * sqrt5
    }

    /// Decimal rendering with `sig` significant digits. Uses enough guard
    /// digits that the rounding of table-scale values is exact.
    pub fn render_significant(&self, sig: usize) -> String {
        if self.b.is_zero() {
            return crate::rational::render_significant(&self.a, sig);
        }
        let approx = self.to_rational_approx(sig as u32 + 40);
        crate::rational::render_significant(&approx, sig)
    }

    /// Exact token: `"p/q"` for rational elements, else `"p/q+r/t*sqrt5"`
    /// (the `+` becomes `-` for negative radical parts).
    pub fn render_exact(&self) -> String {
        if self.b.is_zero() {
            return crate::rational::render_exact(&self.a);
        }
        let b_abs = self.b.abs();
        let sign = if self.b.is_negative() { '-' } else { '+' };
        format!(
            "{}{}{}*sqrt5",
            crate::rational::render_exact(&self.a),
            sign,
            crate::rational::render_exact(&b_abs)
        )
    }
}

fn sign_of(q: &BigRational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_s_is_the_simplified_quotient() {
        // (6+2√5)/(7+3√5) = 3−√5
        let num = Sqrt5::new(rat_i(6), rat_i(2));
        let den = Sqrt5::new(rat_i(7), rat_i(3));
        assert_eq!(num.div(&den), Sqrt5::golden_s());
    }

    #[test]
    fn sign_analysis_squares_correctly() {
        // 9/4 − √5 > 0 since (9/4)² = 81/16 > 5
        assert_eq!(Sqrt5::new(rat(9, 4), rat_i(-1)).sign(), Ordering::Greater);
        // 2 − √5 < 0
        assert_eq!(Sqrt5::new(rat_i(2), rat_i(-1)).sign(), Ordering::Less);
        // √5 − 2 > 0
        assert_eq!(Sqrt5::new(rat_i(-2), rat_i(1)).sign(), Ordering::Greater);
        // 0 exactly
        assert_eq!(Sqrt5::zero().sign(), Ordering::Equal);
        // (1+√5)² = 6 + 2√5
        let phi2 = Sqrt5::new(rat_i(1), rat_i(1)).pow(2);
        assert_eq!(phi2, Sqrt5::new(rat_i(6), rat_i(2)));
    }

    #[test]
    fn golden_x_times_golden_s() {
        // (3+√5)/2 · (3−√5) = (9−5)·... = (3+√5)(3−√5)/2 = 2
        let p = Sqrt5::golden_x().mul(&Sqrt5::golden_s());
        assert_eq!(p, Sqrt5::from_rational(rat_i(2)));
    }

    #[test]
    fn renders_sqrt5_decimals() {
        let root5 = Sqrt5::new(rat_i(0), rat_i(1));
        assert_eq!(root5.render_significant(15), "2.23606797749979");
        assert_eq!(
            Sqrt5::golden_x().render_significant(15),
            "2.61803398874989"
        );
        assert_eq!(Sqrt5::golden_x().render_exact(), "3/2+1/2*sqrt5");
        assert_eq!(Sqrt5::golden_s().render_exact(), "3-1*sqrt5");
    }
}
