//! Exact univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients low-to-high with no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
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
        Self::from_coeffs(vec![c.into()])
    }

    /// `x - a`
    pub fn x_minus(a: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![-a.into(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }

    /// `q(x) = p(x - m)`.
    pub fn shift_compose(&self, m: u64) -> Self {
        let step = IntPoly::x_minus(m);
        let mut out = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &step) + &IntPoly::constant(c.clone());
        }
        out
    }

    /// Compares `self` and `other` for all sufficiently large real `x`.
    pub fn eventually_compare(&self, other: &IntPoly) -> Ordering {
        match (self - other).leading() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Integer bound past which `self - other` keeps the sign of its leading
    /// coefficient: `1 + max(1, ceil(sum |c_i / c_d|))` over `i < d`.
    pub fn witness_bound(&self, other: &IntPoly) -> BigInt {
        let diff = self - other;
        let Some((lead, rest)) = diff.coeffs.split_last() else {
            return BigInt::from(2);
        };
        let lead = lead.abs();
        let total: BigInt = rest.iter().map(|c| c.abs()).sum();
        let ratio = Integer::div_ceil(&total, &lead);
        BigInt::one() + ratio.max(BigInt::one())
    }

    /// Polynomial of degree `< values.len()` through `(start + i, values[i])`,
    /// computed with exact rational Lagrange interpolation. Fails if any
    /// coefficient is not an integer.
    pub fn interpolate_consecutive(start: i64, values: &[BigInt]) -> Result<Self> {
        let m = values.len();
        let nodes: Vec<BigInt> = (0..m as i64).map(|i| BigInt::from(start + i)).collect();
        let mut acc = vec![BigRational::zero(); m];
        for (i, yi) in values.iter().enumerate() {
            // basis numerator prod_{j != i} (x - x_j), built low-to-high
            let mut basis = vec![BigInt::one()];
            let mut denom = BigInt::one();
            for (j, xj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![BigInt::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * xj;
                }
                basis = next;
                denom *= &nodes[i] - xj;
            }
            let scale = BigRational::new(yi.clone(), denom);
            for (slot, b) in acc.iter_mut().zip(&basis) {
                *slot += &scale * BigRational::from_integer(b.clone());
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegerCoefficient(c.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPoly {
    /// Renders as `c_d x^d + ... + c_0`, e.g. `x^3 - 6x^2 + 11x - 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the low-to-high coefficient list. Coefficients that do not
/// fit an `i64` are written as decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match i64::try_from(c) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}
