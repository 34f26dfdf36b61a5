//! Exact-rational plumbing: decimal-string parsing and fixed-significance
//! rendering. Certificate arithmetic never round-trips through binary
//! floats; everything here is integer based.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational from an `i64`.
pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d` from `i64` parts.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a parameter string into an exact rational.
///
/// Accepted forms: plain integers (`"3"`, `"-12"`), decimals (`"2.355"`,
/// `".78"`, `"-0.5"`), and fractions (`"471/200"`). Decimals convert
/// exactly: `2.355` becomes `471/200`, not the nearest binary float.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty numeric string".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, body) = match t.as_bytes()[0] {
        b'-' => (-1, &t[1..]),
        b'+' => (1, &t[1..]),
        _ => (1, t),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in {t:?}")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("non-digit character in {t:?}")));
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().expect("digits only")
    };
    let mut den = BigInt::one();
    for b in frac_part.bytes() {
        num = num * 10 + (b - b'0');
        den *= 10;
    }
    Ok(BigRational::new(num * sign, den))
}

/// `"p/q"`, or just `"p"` when the denominator is one.
pub fn render_exact(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Lossy conversion for reporting and numeric cross-checks.
pub fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `floor(log10(|v|))` for nonzero `v`.
fn floor_log10(v: &BigRational) -> i64 {
    let num = v.numer().abs();
    let den = v.denom().clone();
    // Bit lengths give an estimate within one; fix up by exact comparison.
    let mut e = ((num.bits() as i64 - den.bits() as i64) as f64 * 0.30103).floor() as i64 - 1;
    // Raise e while 10^(e+1) <= |v|.
    while cmp_abs_pow10(&num, &den, e + 1) != std::cmp::Ordering::Less {
        e += 1;
    }
    while cmp_abs_pow10(&num, &den, e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    e
}

/// Compares `num/den` against `10^k` (all positive).
fn cmp_abs_pow10(num: &BigInt, den: &BigInt, k: i64) -> std::cmp::Ordering {
    if k >= 0 {
        num.cmp(&(den * BigInt::from(10u32).pow(k as u32)))
    } else {
        (num * BigInt::from(10u32).pow((-k) as u32)).cmp(den)
    }
}

/// Renders `v` with exactly `sig` significant digits, rounding half away
/// from zero. This is the table-rendering convention: values in `[1,10)`
/// print with `sig − 1` decimals, e.g. `1.04089600000000` for `sig = 15`.
pub fn render_significant(v: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if v.is_zero() {
        return "0".into();
    }
    let neg = v.is_negative();
    let num = v.numer().abs();
    let den = v.denom().clone();
    let e = floor_log10(v);
    let mut decimals = sig as i64 - 1 - e;
    let mut q = round_scaled(&num, &den, decimals);
    // A carry like 9.99... -> 10.0 gains a digit; drop one decimal.
    if count_digits(&q) > sig as u64 {
        decimals -= 1;
        q /= 10;
    }
    let body = if decimals <= 0 {
        format!("{}{}", q, "0".repeat((-decimals) as usize))
    } else {
        let mut digits = q.to_string();
        let need = decimals as usize + 1;
        if digits.len() < need {
            digits = format!("{}{}", "0".repeat(need - digits.len()), digits);
        }
        let point = digits.len() - decimals as usize;
        format!("{}.{}", &digits[..point], &digits[point..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Rounds `num/den · 10^decimals` to the nearest integer, half away from
/// zero (inputs positive).
fn round_scaled(num: &BigInt, den: &BigInt, decimals: i64) -> BigInt {
    let (scaled_num, scaled_den) = if decimals >= 0 {
        (num * BigInt::from(10u32).pow(decimals as u32), den.clone())
    } else {
        (num.clone(), den * BigInt::from(10u32).pow((-decimals) as u32))
    };
    let (mut q, r) = scaled_num.div_rem(&scaled_den);
    if &r * 2 >= scaled_den {
        q += 1;
    }
    q
}

fn count_digits(n: &BigInt) -> u64 {
    if n.is_zero() {
        1
    } else {
        n.abs().to_string().len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("2.355").unwrap(), rat(471, 200));
        assert_eq!(parse_rational("0.78").unwrap(), rat(39, 50));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("471/200").unwrap(), rat(471, 200));
        assert_eq!(parse_rational("7").unwrap(), rat_i(7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn renders_fifteen_significant_digits() {
        assert_eq!(render_significant(&rat(130112, 125000), 15), "1.04089600000000");
        assert_eq!(render_significant(&rat(1, 2), 15), "0.500000000000000");
        assert_eq!(render_significant(&rat_i(1), 15), "1.00000000000000");
        assert_eq!(render_significant(&rat(2, 3), 5), "0.66667");
        assert_eq!(render_significant(&rat(-2, 3), 5), "-0.66667");
        // Carry across the leading digit.
        assert_eq!(render_significant(&rat(9999999, 1000000), 5), "10.000");
        // Large value: integer with trailing zeros.
        assert_eq!(render_significant(&rat_i(123456789), 4), "123500000");
    }

    #[test]
    fn exact_form() {
        assert_eq!(render_exact(&rat(471, 200)), "471/200");
        assert_eq!(render_exact(&rat_i(-3)), "-3");
    }
}
