//! Exact integer arithmetic: binomials, Catalan and Narayana numbers, and
//! dense polynomials in the weight indeterminate γ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("narayana number N({k},{r}) requires k >= 1 and 0 <= r <= k-1")]
    NarayanaRange { k: u64, r: u64 },
    #[error("invalid polynomial coefficient {0:?}")]
    BadCoefficient(String),
}

/// Binomial coefficient `n choose r`, zero when `r > n`.
///
/// Uses the multiplicative recurrence `C(n-r+j, j) = C(n-r+j-1, j-1) * (n-r+j) / j`,
/// where every intermediate division is exact.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for j in 1..=r {
        acc *= n - r + j;
        acc /= j;
    }
    acc
}

/// The `k`-th Catalan number.
pub fn catalan(k: u64) -> BigInt {
    binomial(2 * k, k) / (k + 1)
}

/// The Narayana number `N(k, r)`: alternating Motzkin paths of length `2k` with `r` rises.
pub fn narayana(k: u64, r: u64) -> Result<BigInt, NumericError> {
    if k == 0 || r >= k {
        return Err(NumericError::NarayanaRange { k, r });
    }
    Ok(binomial(k, r) * binomial(k - 1, r) / (r + 1))
}

/// The Narayana polynomial `N_k(γ) = Σ_r N(k, r) γ^r`.
///
/// `k = 0` gives the constant `1`, the weight of the single empty path.
pub fn narayana_poly(k: u64) -> GammaPoly {
    if k == 0 {
        return GammaPoly::one();
    }
    GammaPoly::from_coeffs(
        (0..k)
            .map(|r| binomial(k, r) * binomial(k - 1, r) / (r + 1))
            .collect(),
    )
}

/// Exact rational `num / den`, reduced.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Polynomial in γ with integer coefficients, lowest power first.
///
/// Always canonical: the highest stored coefficient is nonzero, and the zero
/// polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly {
    coeffs: Vec<BigInt>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * γ^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `γ^power`; zero past the degree.
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `γ^power`.
    pub fn shift(&self, power: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, gamma: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * gamma + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_f64(&self, gamma: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * gamma + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaPoly({self})")
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match power {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "γ")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;

    fn add(self, rhs: &GammaPoly) -> GammaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly::from_coeffs((0..n).map(|p| self.coeff(p) + rhs.coeff(p)).collect())
    }
}

impl Add for GammaPoly {
    type Output = GammaPoly;

    fn add(self, rhs: GammaPoly) -> GammaPoly {
        &self + &rhs
    }
}

impl AddAssign<&GammaPoly> for GammaPoly {
    fn add_assign(&mut self, rhs: &GammaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &GammaPoly {
    type Output = GammaPoly;

    fn neg(self) -> GammaPoly {
        GammaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;

    fn sub(self, rhs: &GammaPoly) -> GammaPoly {
        self + &(-rhs)
    }
}

impl Sub for GammaPoly {
    type Output = GammaPoly;

    fn sub(self, rhs: GammaPoly) -> GammaPoly {
        &self - &rhs
    }
}

impl Mul<&GammaPoly> for &GammaPoly {
    type Output = GammaPoly;

    fn mul(self, rhs: &GammaPoly) -> GammaPoly {
        if self.is_zero() || rhs.is_zero() {
            return GammaPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GammaPoly::from_coeffs(coeffs)
    }
}

impl Mul for GammaPoly {
    type Output = GammaPoly;

    fn mul(self, rhs: GammaPoly) -> GammaPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for GammaPoly {
    fn sum<I: Iterator<Item = GammaPoly>>(iter: I) -> Self {
        iter.fold(GammaPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

// JSON form: array of decimal strings, lowest power first.
impl Serialize for GammaPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GammaPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| de::Error::custom(NumericError::BadCoefficient(s.clone())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GammaPoly::from_coeffs(coeffs))
    }
}
