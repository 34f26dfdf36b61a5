//! Fixed-precision big floats with directed rounding, and the positive
//! intervals built from them. Used by the circuit-interval certifier when
//! exact rationals would grow without bound; every interval is a rigorous
//! enclosure, so a margin test on the lower endpoint stays a proof.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Mantissa precision in bits.
pub const PRECISION: u64 = 256;

/// Rounding direction: toward −∞ or +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mant · 2^exp` with `|mant| < 2^PRECISION`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_bigint(n: BigInt, dir: Round) -> Self {
        normalize(n, 0, dir)
    }

    pub fn from_u64(n: u64, dir: Round) -> Self {
        Self::from_bigint(BigInt::from(n), dir)
    }

    /// Directed conversion of an exact rational.
    pub fn from_rational(q: &BigRational, dir: Round) -> Self {
        div_int(q.numer().clone(), q.denom().clone(), dir)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn add(&self, o: &Self, dir: Round) -> Self {
        let (a, b) = (self, o);
        let exp = a.exp.min(b.exp);
        let am = &a.mant << u64::try_from(a.exp - exp).expect("exponent gap");
        let bm = &b.mant << u64::try_from(b.exp - exp).expect("exponent gap");
        normalize(am + bm, exp, dir)
    }

    pub fn sub(&self, o: &Self, dir: Round) -> Self {
        self.add(&o.neg(), dir)
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn mul(&self, o: &Self, dir: Round) -> Self {
        normalize(&self.mant * &o.mant, self.exp + o.exp, dir)
    }

    pub fn div(&self, o: &Self, dir: Round) -> Result<Self> {
        if o.mant.is_zero() {
            return Err(Error::Domain("big-float division by zero".into()));
        }
        let q = div_int(self.mant.clone(), o.mant.clone(), dir);
        Ok(BigFloat {
            mant: q.mant,
            exp: q.exp + self.exp - o.exp,
        })
    }

    /// Exact comparison with a rational (no rounding).
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        // mant·2^exp vs p/q  ⇔  mant·q·2^exp vs p (q > 0 canonical).
        let lhs = &self.mant * q.denom();
        let rhs = q.numer().clone();
        if self.exp >= 0 {
            (lhs << u64::try_from(self.exp).expect("exp fits")).cmp(&rhs)
        } else {
            lhs.cmp(&(rhs << u64::try_from(-self.exp).expect("exp fits")))
        }
    }

    /// Exact rational value of `mant * 2^exp` (every BigFloat is dyadic).
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            let num = self.mant.clone() << u64::try_from(self.exp).expect("exp fits");
            BigRational::from_integer(num)
        } else {
            let den = BigInt::from(1) << u64::try_from(-self.exp).expect("exp fits");
            BigRational::new(self.mant.clone(), den)
        }
    }

    /// Nearest-ish `f64` view for reporting (not used in proofs).
    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.mant.clone(), BigInt::from(1));
        crate::rational::to_f64(&r) * 2f64.powi(self.exp.clamp(-1000, 1000) as i32)
    }
}

fn normalize(mant: BigInt, exp: i64, dir: Round) -> BigFloat {
    let bits = mant.bits();
    if bits <= PRECISION {
        return BigFloat { mant, exp };
    }
    let drop = bits - PRECISION;
    // Work on the magnitude: truncating it rounds toward zero, so only an
    // outward-directed inexact result needs a bump.
    let (sign, mag) = mant.into_parts();
    let kept = &mag >> drop;
    let inexact = (&kept << drop) != mag;
    let outward = matches!(
        (dir, sign),
        (Round::Up, Sign::Plus) | (Round::Down, Sign::Minus)
    );
    let kept = if inexact && outward { kept + 1u32 } else { kept };
    BigFloat {
        mant: BigInt::from_biguint(sign, kept),
        exp: exp + i64::try_from(drop).expect("drop fits"),
    }
}

/// Directed `num / den` as a big float (den ≠ 0).
fn div_int(num: BigInt, den: BigInt, dir: Round) -> BigFloat {
    if num.is_zero() {
        return BigFloat::zero();
    }
    // Work with a positive denominator.
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    let target = den.bits() + PRECISION + 2;
    let shift = target.saturating_sub(num.bits().min(target));
    let scaled = &num << shift;
    let (q, r) = num_integer::Integer::div_rem(&scaled, &den);
    let inexact = !r.is_zero();
    // div_rem truncates toward zero; fix the directed rounding.
    let q = match (dir, num.is_negative(), inexact) {
        (Round::Up, false, true) => q + 1,
        (Round::Down, true, true) => q - 1,
        _ => q,
    };
    normalize(q, -i64::try_from(shift).expect("shift fits"), dir)
}

/// A rigorous enclosure `[lo, hi]` of a positive real.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Interval {
    pub fn from_rational(q: &BigRational) -> Self {
        Interval {
            lo: BigFloat::from_rational(q, Round::Down),
            hi: BigFloat::from_rational(q, Round::Up),
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Interval {
            lo: BigFloat::from_u64(n, Round::Down),
            hi: BigFloat::from_u64(n, Round::Up),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval {
            lo: self.lo.add(&o.lo, Round::Down),
            hi: self.hi.add(&o.hi, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval {
            lo: self.lo.sub(&o.hi, Round::Down),
            hi: self.hi.sub(&o.lo, Round::Up),
        }
    }

    /// Product, assuming both operands are non-negative intervals (all the
    /// sweep's factors are).
    pub fn mul_nonneg(&self, o: &Self) -> Result<Self> {
        if self.lo.is_negative() || o.lo.is_negative() {
            return Err(Error::Internal(
                "interval product requires non-negative operands".into(),
            ));
        }
        Ok(Interval {
            lo: self.lo.mul(&o.lo, Round::Down),
            hi: self.hi.mul(&o.hi, Round::Up),
        })
    }

    /// Quotient by a strictly positive interval.
    pub fn div_pos(&self, o: &Self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::Internal(
                "interval quotient requires a non-negative numerator".into(),
            ));
        }
        if o.lo.cmp_rational(&BigRational::zero()) != Ordering::Greater {
            return Err(Error::Domain(
                "interval quotient requires a strictly positive divisor".into(),
            ));
        }
        Ok(Interval {
            lo: self.lo.div(&o.hi, Round::Down)?,
            hi: self.hi.div(&o.lo, Round::Up)?,
        })
    }

    /// `self^e` for a non-negative interval, by repeated squaring.
    pub fn pow_nonneg(&self, mut e: u64) -> Result<Self> {
        let mut acc = Interval::from_u64(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_nonneg(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_nonneg(&base)?;
            }
        }
        Ok(acc)
    }

    /// Whole interval ≥ q?
    pub fn entirely_ge(&self, q: &BigRational) -> bool {
        self.lo.cmp_rational(q) != Ordering::Less
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo.cmp_rational(q) != Ordering::Greater && self.hi.cmp_rational(q) != Ordering::Less
    }
}
