//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};

/// Coefficients `c_0..c_d`, never with a trailing zero. The zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1 + x)^k`, built from binomial coefficients.
    pub fn one_plus_x_pow(k: usize) -> Self {
        let k_big = BigInt::from(k);
        Self::new((0..=k).map(|i| binomial(k_big.clone(), BigInt::from(i))).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (k, c)| if k % 2 == 0 { acc + c } else { acc - c })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficients `a_0..a_{n-1}` with `self = Σ a_k (1+x)^k`.
    pub fn shifted_basis_decompose(&self, n: usize) -> Result<Vec<BigInt>> {
        if let Some(d) = self.degree() {
            if d + 1 > n {
                return Err(Error::DegreeTooLarge { degree: d, n });
            }
        }
        // p(y - 1) by Horner in y
        let mut q: Vec<BigInt> = Vec::with_capacity(n);
        for c in self.coeffs.iter().rev() {
            let mut next = vec![BigInt::zero(); q.len() + 1];
            for (i, a) in q.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a;
            }
            next[0] += c;
            q = next;
        }
        q.resize(n, BigInt::zero());
        Ok(q)
    }

    pub fn shifted_basis_recompose(a: &[BigInt]) -> Self {
        a.iter()
            .enumerate()
            .fold(Self::zero(), |acc, (k, c)| acc + Self::one_plus_x_pow(k).scale(c))
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

fn add_into(a: &mut Vec<BigInt>, b: &[BigInt], sign: bool) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        if sign {
            *x += y;
        } else {
            *x -= y;
        }
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut c = self.coeffs.clone();
        add_into(&mut c, &rhs.coeffs, true);
        IntPoly::new(c)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut c = self.coeffs.clone();
        add_into(&mut c, &rhs.coeffs, false);
        IntPoly::new(c)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        add_into(&mut self.coeffs, &rhs.coeffs, true);
        *self = IntPoly::new(std::mem::take(&mut self.coeffs));
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        add_into(&mut self.coeffs, &rhs.coeffs, false);
        *self = IntPoly::new(std::mem::take(&mut self.coeffs));
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Renders as `c0 + c1 x + c2 x^2`, skipping zero terms.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag} x")?,
                _ => write!(f, "{mag} x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Accepts the display form and looser variants such as `4+9x-x^3`,
/// `2*x^2` or `x`.
impl FromStr for IntPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let err = |col: usize, msg: &str| ParseError::new(1, col + 1, msg);
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if let Some(w) = chars.windows(2).find(|w| {
            w[0].1.is_ascii_alphanumeric() && w[1].1.is_ascii_digit() && w[1].0 > w[0].0 + 1
        }) {
            return Err(err(w[1].0, "expected an operator"));
        }
        if chars.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let start = chars[i].0;
            let mut negative = false;
            if matches!(chars[i].1, '+' | '-') {
                negative = chars[i].1 == '-';
                i += 1;
            } else if i > 0 {
                return Err(err(start, "expected '+' or '-'"));
            }
            let digits_from = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let mut c = if i > digits_from {
                let text: String = chars[digits_from..i].iter().map(|p| p.1).collect();
                text.parse::<BigInt>().map_err(|_| err(start, "bad coefficient"))?
            } else {
                BigInt::one()
            };
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
            }
            let mut k = 0usize;
            if i < chars.len() && chars[i].1 == 'x' {
                k = 1;
                i += 1;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let from = i;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    if i == from {
                        return Err(err(chars.get(from).map_or(s.len(), |p| p.0), "expected exponent"));
                    }
                    let text: String = chars[from..i].iter().map(|p| p.1).collect();
                    k = text.parse().map_err(|_| err(start, "bad exponent"))?;
                }
            } else if i == digits_from {
                return Err(err(chars.get(i).map_or(s.len(), |p| p.0), "expected a term"));
            }
            if i < chars.len() && !matches!(chars[i].1, '+' | '-') {
                return Err(err(chars[i].0, "unexpected character"));
            }
            if negative {
                c = -c;
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}
