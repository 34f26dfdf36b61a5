//! Exact bivariate polynomials with rational coefficients: the common
//! currency of every Tutte-type computation in the crate.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in two indeterminates `x`, `y` with exact rational
/// coefficients, stored sparsely as `(x-degree, y-degree) -> coefficient`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigRational::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.coeffs.insert((i, j), c);
        }
        p
    }

    /// `x^i · y^j` with coefficient one.
    pub fn xy(i: u32, j: u32) -> Self {
        Self::monomial(i, j, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigRational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Sum of all coefficients (equals the value at `(1,1)`).
    pub fn coefficient_sum(&self) -> BigRational {
        self.coeffs.values().sum()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (&k, v) in &self.coeffs {
            out.coeffs.insert(k, v * c);
        }
        out
    }

    /// Exact evaluation at rational `(x, y)`.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.coeffs {
            acc += c * pow_rat(x, i) * pow_rat(y, j);
        }
        acc
    }

    /// The univariate slice at `y = 0` (terms with `j = 0`), kept bivariate.
    pub fn slice_y0(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.coeffs {
            if j == 0 {
                out.coeffs.insert((i, 0), c.clone());
            }
        }
        out
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.coeffs {
            out.coeffs.insert((j, i), c.clone());
        }
        out
    }

    pub fn max_degrees(&self) -> (u32, u32) {
        let mut dx = 0;
        let mut dy = 0;
        for &(i, j) in self.coeffs.keys() {
            dx = dx.max(i);
            dy = dy.max(j);
        }
        (dx, dy)
    }

    /// `(x−1)^i (y−1)^j` expanded — the subset-expansion building block.
    pub fn xm1_ym1(i: u32, j: u32) -> Self {
        let x_minus_1 = Self::monomial(1, 0, BigRational::one())
            + Self::monomial(0, 0, -BigRational::one());
        let y_minus_1 = Self::monomial(0, 1, BigRational::one())
            + Self::monomial(0, 0, -BigRational::one());
        pow_poly(&x_minus_1, i) * pow_poly(&y_minus_1, j)
    }

    /// Renders in graded-lexicographic order (total degree descending,
    /// `x`-degree breaking ties), e.g. `x^3 + x^2 + x + y`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let mut out = String::new();
        for (idx, &(i, j)) in keys.iter().enumerate() {
            let c = &self.coeffs[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => pow_str("x", i),
                (0, j) => pow_str("y", j),
                (i, j) => format!("{}*{}", pow_str("x", i), pow_str("y", j)),
            };
            if mono.is_empty() {
                out.push_str(&crate::rational::render_exact(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", crate::rational::render_exact(&mag), mono));
            }
        }
        out
    }

    /// True when every coefficient is a non-negative integer (Tutte
    /// polynomials of graphs and matroids have this property).
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.denom().is_one() && !c.is_negative())
    }
}

fn pow_str(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

fn pow_rat(b: &BigRational, mut e: u32) -> BigRational {
    let mut base = b.clone();
    let mut acc = BigRational::one();
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

fn pow_poly(p: &BivariatePolynomial, mut e: u32) -> BivariatePolynomial {
    let mut base = p.clone();
    let mut acc = BivariatePolynomial::one();
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

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, &-c.clone());
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::default();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &rhs.coeffs {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }
}

/// Converts an integer count table into a polynomial (used by enumeration
/// backends that tally `(i, j)` exponent pairs).
pub fn from_counts<I: IntoIterator<Item = ((u32, u32), BigInt)>>(counts: I) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::default();
    for ((i, j), n) in counts {
        p.add_term(i, j, &BigRational::from_integer(n));
    }
    p
}
