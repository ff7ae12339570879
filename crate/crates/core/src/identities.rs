//! Exact verification of the five Catalan/Narayana path identities by
//! exhaustive enumeration.
//!
//! Left sides come from statistics summed over enumerated paths; right sides
//! come from closed forms (identities 1-3) or from a separate enumeration
//! (identities 4-5). For 1-3 the double sum over path pairs is never formed:
//! `Σ_{p1,p2} Σ_i X_i(p1) X_i(p2) = Σ_i (Σ_p X_i(p))²`.
//!
//! Identities 4 and 5 are stated with two different ranges for the right-hand
//! sum (over paths of half-length `k` or `k - 1`). Both are always computed;
//! the expected convention is `k - 1` for identity 4 and `k` for identity 5,
//! which are the ones matching the worked `k = 3` values.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numeric::{binomial, catalan, format_rational, narayana_poly, GammaPoly};
use crate::paths::{expectation_vectors, par_fold, stats, PathKind, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// Squared norm of the mean rise-by-altitude vector over Dyck paths.
    RiseNorm = 1,
    /// Squared norm of the mean vertex-by-altitude vector over Dyck paths.
    VertexNorm = 2,
    /// γ-weighted rise and even-level norms over alternating Motzkin paths.
    WeightedNorm = 3,
    /// Rise-versus-vertex sum over Dyck paths.
    RiseVertexSum = 4,
    /// γ-weighted rise/level sum over alternating Motzkin paths.
    WeightedRiseLevelSum = 5,
}

impl IdentityId {
    pub const ALL: [IdentityId; 5] = [
        IdentityId::RiseNorm,
        IdentityId::VertexNorm,
        IdentityId::WeightedNorm,
        IdentityId::RiseVertexSum,
        IdentityId::WeightedRiseLevelSum,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Result<Self, IdentityError> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.number() == n)
            .ok_or(IdentityError::UnknownIdentity(n.to_string()))
    }

    /// Smallest `k` the identity is stated for.
    pub fn min_k(self) -> usize {
        match self {
            IdentityId::RiseVertexSum | IdentityId::WeightedRiseLevelSum => 2,
            _ => 1,
        }
    }

    /// The right-hand range that matches the worked examples.
    pub fn default_rhs_index(self) -> Option<RhsIndex> {
        match self {
            IdentityId::RiseVertexSum => Some(RhsIndex::KMinusOne),
            IdentityId::WeightedRiseLevelSum => Some(RhsIndex::K),
            _ => None,
        }
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix("thm").unwrap_or(t);
        digits
            .parse::<u8>()
            .map_err(|_| IdentityError::UnknownIdentity(s.to_string()))
            .and_then(IdentityId::from_number)
            .map_err(|_| IdentityError::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Half-length of the paths summed over on the right side of identities 4 and 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhsIndex {
    K,
    KMinusOne,
}

impl RhsIndex {
    pub fn as_str(self) -> &'static str {
        match self {
            RhsIndex::K => "k",
            RhsIndex::KMinusOne => "k-1",
        }
    }

    fn apply(self, k: usize) -> usize {
        match self {
            RhsIndex::K => k,
            RhsIndex::KMinusOne => k - 1,
        }
    }
}

impl FromStr for RhsIndex {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "k" => Ok(RhsIndex::K),
            "k-1" => Ok(RhsIndex::KMinusOne),
            _ => Err(IdentityError::UnknownRhsIndex(s.to_string())),
        }
    }
}

impl Serialize for RhsIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity {0:?} (expected 1..5)")]
    UnknownIdentity(String),
    #[error("unknown rhs index {0:?} (expected k or k-1)")]
    UnknownRhsIndex(String),
    #[error("identity {id} needs k >= {min}, got {k}")]
    KTooSmall { id: IdentityId, k: usize, min: usize },
}

/// An exact value on one side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Rational(BigRational),
    Poly(GammaPoly),
}

impl Value {
    fn minus(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a - b),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a - b),
            _ => unreachable!("both sides of an identity have the same value kind"),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Rational(q) => Some(q),
            Value::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&GammaPoly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Rational(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => f.write_str(&format_rational(q)),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

// Rationals as "p/q" strings, polynomials as coefficient-string arrays.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Rational(q) => serializer.serialize_str(&format_rational(q)),
            Value::Poly(p) => p.serialize(serializer),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: u8,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_index: Option<RhsIndex>,
    /// Whether this row uses the convention the identity is expected to hold under.
    pub expected: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<Value>,
}

impl IdentityReport {
    fn new(id: IdentityId, k: usize, rhs_index: Option<RhsIndex>, expected: bool, lhs: Value, rhs: Value) -> Self {
        let equal = lhs == rhs;
        let difference = (!equal).then(|| lhs.minus(&rhs));
        IdentityReport {
            id: id.number(),
            k,
            rhs_index,
            expected,
            lhs,
            rhs,
            equal,
            difference,
        }
    }
}

fn check_k(id: IdentityId, k: usize) -> Result<(), IdentityError> {
    if k < id.min_k() {
        return Err(IdentityError::KTooSmall { id, k, min: id.min_k() });
    }
    Ok(())
}

fn sum_of_squares(v: &[GammaPoly]) -> GammaPoly {
    v.iter().map(|p| p * p).sum()
}

fn constant_term_ratio(p: &GammaPoly, den: &BigInt) -> BigRational {
    BigRational::new(p.coeff(0), den.clone())
}

/// `Σ_{p1,p2 ∈ D_k} Σ_i R_i(p1) R_i(p2) / C_k²` against `C_{2k}/C_k² - 1`.
pub fn verify_thm1(k: usize) -> Result<IdentityReport, IdentityError> {
    let id = IdentityId::RiseNorm;
    check_k(id, k)?;
    let e = expectation_vectors(k, PathKind::Dyck, Weighting::Uniform);
    let ck = catalan(k as u64);
    let ck2 = &ck * &ck;
    let lhs = constant_term_ratio(&sum_of_squares(&e.rises), &ck2);
    let rhs = BigRational::new(catalan(2 * k as u64), ck2) - BigRational::one();
    Ok(IdentityReport::new(id, k, None, true, Value::Rational(lhs), Value::Rational(rhs)))
}

/// `Σ_{p1,p2 ∈ D_k} Σ_i V_i(p1) V_i(p2) / C_k²` against `C_{2k+1}/C_k²`.
pub fn verify_thm2(k: usize) -> Result<IdentityReport, IdentityError> {
    let id = IdentityId::VertexNorm;
    check_k(id, k)?;
    let e = expectation_vectors(k, PathKind::Dyck, Weighting::Uniform);
    let ck = catalan(k as u64);
    let ck2 = &ck * &ck;
    let lhs = constant_term_ratio(&sum_of_squares(&e.vertices), &ck2);
    let rhs = BigRational::new(catalan(2 * k as u64 + 1), ck2);
    Ok(IdentityReport::new(id, k, None, true, Value::Rational(lhs), Value::Rational(rhs)))
}

/// Numerators over `N_k(γ)²`: `Σ_{p1,p2} γ^{r1+r2} (Σ R_i R_i + γ Σ L_i L_i)`
/// against `N_{2k}(γ) - N_k(γ)²`.
pub fn verify_thm3(k: usize) -> Result<IdentityReport, IdentityError> {
    let id = IdentityId::WeightedNorm;
    check_k(id, k)?;
    let e = expectation_vectors(k, PathKind::AltMotzkin, Weighting::Gamma);
    let lhs = &sum_of_squares(&e.rises) + &sum_of_squares(&e.even_levels).shift(1);
    let nk = narayana_poly(k as u64);
    let rhs = &narayana_poly(2 * k as u64) - &(&nk * &nk);
    Ok(IdentityReport::new(id, k, None, true, Value::Poly(lhs), Value::Poly(rhs)))
}

/// `Σ_{p ∈ D_k} Σ_{i<k} (R_i/2)(2i+3-R_i)`, exact.
pub fn thm4_lhs(k: usize) -> BigRational {
    par_fold(
        PathKind::Dyck,
        k,
        BigRational::zero,
        |acc, p| {
            let s = stats(p);
            s.rises.iter().enumerate().fold(acc, |acc, (i, &r)| {
                let r = BigRational::from_integer(BigInt::from(r));
                let weight = BigRational::from_integer(BigInt::from(2 * i + 3)) - &r;
                acc + r / BigRational::from_integer(BigInt::from(2)) * weight
            })
        },
        |a, b| a + b,
    )
}

/// `Σ_{q ∈ D_m} Σ_{i<k} C(V_i + 1, 2)`.
pub fn thm4_rhs(k: usize, m: usize) -> BigInt {
    par_fold(
        PathKind::Dyck,
        m,
        BigInt::zero,
        |acc, q| {
            let s = stats(q);
            acc + s
                .vertices
                .iter()
                .take(k)
                .map(|&v| binomial(v + 1, 2))
                .sum::<BigInt>()
        },
        |a, b| a + b,
    )
}

/// Both right-hand conventions of identity 4, in the order `[k-1, k]`.
pub fn verify_thm4(k: usize, expected: RhsIndex) -> Result<Vec<IdentityReport>, IdentityError> {
    let id = IdentityId::RiseVertexSum;
    check_k(id, k)?;
    let lhs = thm4_lhs(k);
    Ok([RhsIndex::KMinusOne, RhsIndex::K]
        .into_iter()
        .map(|ri| {
            let rhs = BigRational::from_integer(thm4_rhs(k, ri.apply(k)));
            IdentityReport::new(id, k, Some(ri), ri == expected, Value::Rational(lhs.clone()), Value::Rational(rhs))
        })
        .collect())
}

/// `Σ_{p ∈ AM_k} γ^r (Σ (i+1) R_i + γ Σ i L_i)`.
pub fn thm5_lhs(k: usize) -> GammaPoly {
    par_fold(
        PathKind::AltMotzkin,
        k,
        GammaPoly::zero,
        |mut acc, p| {
            let s = stats(p);
            let rises: u64 = s.rises.iter().enumerate().map(|(i, &r)| (i as u64 + 1) * r).sum();
            let levels: u64 = s.even_levels.iter().enumerate().map(|(i, &l)| i as u64 * l).sum();
            let r = s.rise_count as usize;
            acc += &GammaPoly::monomial(rises, r);
            acc += &GammaPoly::monomial(levels, r + 1);
            acc
        },
        |a, b| a + b,
    )
}

/// `Σ_{p ∈ AM_m} γ^r (Σ_{i<k} C(R_i, 2) + γ Σ_{i<k} C(L_i, 2))`.
pub fn thm5_rhs(k: usize, m: usize) -> GammaPoly {
    par_fold(
        PathKind::AltMotzkin,
        m,
        GammaPoly::zero,
        |mut acc, p| {
            let s = stats(p);
            let rises: BigInt = s.rises.iter().take(k).map(|&r| binomial(r, 2)).sum();
            let levels: BigInt = s.even_levels.iter().take(k).map(|&l| binomial(l, 2)).sum();
            let r = s.rise_count as usize;
            acc += &GammaPoly::monomial(rises, r);
            acc += &GammaPoly::monomial(levels, r + 1);
            acc
        },
        |a, b| a + b,
    )
}

/// Both right-hand conventions of identity 5, in the order `[k, k-1]`.
pub fn verify_thm5(k: usize, expected: RhsIndex) -> Result<Vec<IdentityReport>, IdentityError> {
    let id = IdentityId::WeightedRiseLevelSum;
    check_k(id, k)?;
    let lhs = thm5_lhs(k);
    Ok([RhsIndex::K, RhsIndex::KMinusOne]
        .into_iter()
        .map(|ri| {
            let rhs = thm5_rhs(k, ri.apply(k));
            IdentityReport::new(id, k, Some(ri), ri == expected, Value::Poly(lhs.clone()), Value::Poly(rhs))
        })
        .collect())
}

/// All report rows for one identity at one `k`. `rhs_index` overrides the
/// expected convention for identities 4 and 5 and is ignored otherwise.
pub fn verify(id: IdentityId, k: usize, rhs_index: Option<RhsIndex>) -> Result<Vec<IdentityReport>, IdentityError> {
    match id {
        IdentityId::RiseNorm => verify_thm1(k).map(|r| vec![r]),
        IdentityId::VertexNorm => verify_thm2(k).map(|r| vec![r]),
        IdentityId::WeightedNorm => verify_thm3(k).map(|r| vec![r]),
        IdentityId::RiseVertexSum => verify_thm4(k, rhs_index.unwrap_or(RhsIndex::KMinusOne)),
        IdentityId::WeightedRiseLevelSum => verify_thm5(k, rhs_index.unwrap_or(RhsIndex::K)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<IdentityReport>,
    /// Set when the time budget ran out before every row was computed.
    pub partial: bool,
}

impl SweepReport {
    /// Every row computed under its expected convention came out equal.
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.expected).all(|r| r.equal)
    }
}

/// Verifies each identity for `k = min_k..=k_max`, stopping early (and
/// flagging the report as partial) once `budget` has elapsed.
pub fn sweep(ids: &[IdentityId], k_max: usize, rhs_index: Option<RhsIndex>, budget: Option<Duration>) -> SweepReport {
    let start = Instant::now();
    let mut rows = Vec::new();
    for &id in ids {
        for k in id.min_k()..=k_max {
            if budget.is_some_and(|b| start.elapsed() > b) {
                return SweepReport { rows, partial: true };
            }
            rows.extend(verify(id, k, rhs_index).expect("k starts at min_k"));
        }
    }
    SweepReport { rows, partial: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn rational(r: &IdentityReport) -> BigRational {
        r.lhs.as_rational().unwrap().clone()
    }

    #[test]
    fn thm1_values() {
        let r = verify_thm1(3).unwrap();
        assert!(r.equal);
        assert_eq!(rational(&r), ratio(107, 25));
        assert_eq!(rational(&verify_thm1(1).unwrap()), ratio(1, 1));
        assert_eq!(rational(&verify_thm1(2).unwrap()), ratio(10, 4));
    }

    #[test]
    fn thm2_values() {
        let r = verify_thm2(3).unwrap();
        assert!(r.equal);
        assert_eq!(rational(&r), ratio(429, 25));
        assert_eq!(rational(&verify_thm2(1).unwrap()), ratio(5, 1));
        assert!(verify_thm2(4).unwrap().equal);
    }

    #[test]
    fn thm3_values() {
        let r = verify_thm3(3).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, Value::Poly(GammaPoly::from_i64s(&[0, 9, 39, 44, 14, 1])));
        assert_eq!(verify_thm3(1).unwrap().lhs, Value::Poly(GammaPoly::from_i64s(&[0, 1])));
        assert!(verify_thm3(2).unwrap().equal);
    }

    #[test]
    fn thm4_conventions() {
        let rows = verify_thm4(3, RhsIndex::KMinusOne).unwrap();
        assert_eq!(rows[0].rhs_index, Some(RhsIndex::KMinusOne));
        assert!(rows[0].equal && rows[0].expected);
        assert_eq!(rational(&rows[0]), ratio(16, 1));
        assert!(!rows[1].equal && !rows[1].expected);
        assert_eq!(rows[1].difference, Some(Value::Rational(ratio(16 - 63, 1))));
        let rows = verify_thm4(2, RhsIndex::KMinusOne).unwrap();
        assert_eq!(rational(&rows[0]), ratio(4, 1));
        assert!(rows[0].equal);
        assert!(thm4_lhs(5).is_integer());
    }

    #[test]
    fn thm5_conventions() {
        let rows = verify_thm5(3, RhsIndex::K).unwrap();
        assert!(rows[0].equal && rows[0].expected);
        assert_eq!(rows[0].lhs, Value::Poly(GammaPoly::from_i64s(&[0, 3, 3])));
        assert_eq!(rows[1].rhs, Value::Poly(GammaPoly::from_i64s(&[0, 1])));
        assert!(!rows[1].equal);
    }

    #[test]
    fn k_below_minimum_rejected() {
        assert!(matches!(verify_thm4(1, RhsIndex::K), Err(IdentityError::KTooSmall { .. })));
        assert!(matches!(verify_thm1(0), Err(IdentityError::KTooSmall { .. })));
    }

    #[test]
    fn sweep_edges() {
        let r = sweep(&[IdentityId::RiseNorm], 0, None, None);
        assert!(r.rows.is_empty() && !r.partial && r.passed());
        let r = sweep(&IdentityId::ALL, 6, None, Some(Duration::ZERO));
        assert!(r.partial);
        let r = sweep(&[IdentityId::RiseVertexSum], 3, Some(RhsIndex::K), None);
        assert!(!r.passed());
    }

    #[test]
    fn identifiers_parse() {
        assert_eq!("3".parse::<IdentityId>().unwrap(), IdentityId::WeightedNorm);
        assert_eq!("thm5".parse::<IdentityId>().unwrap(), IdentityId::WeightedRiseLevelSum);
        assert!("6".parse::<IdentityId>().is_err());
        assert_eq!("k-1".parse::<RhsIndex>().unwrap(), RhsIndex::KMinusOne);
        assert!("k+1".parse::<RhsIndex>().is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_thm1(3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["id"], 1);
        assert_eq!(v["lhs"], "107/25");
        assert_eq!(v["rhs"], "107/25");
        assert_eq!(v["equal"], true);
        assert!(v.get("difference").is_none());
        let r = verify_thm3(3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lhs"], serde_json::json!(["0", "9", "39", "44", "14", "1"]));
    }
}
