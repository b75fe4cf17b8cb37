//! Iwasawa's class number formula `e_n = lambda*n + mu*p^n + nu` on observed
//! sequences `e_n = v_p(h_{k_n})`, and the closed-form linear growth laws.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::ensure_odd_prime;

/// Observed `(n, e_n)` pairs, layer indices strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberSeries {
    pub p: u64,
    pub points: Vec<(u32, u64)>,
}

impl ClassNumberSeries {
    pub fn new(p: u64, points: Vec<(u32, u64)>) -> Result<Self> {
        ensure_odd_prime(p)?;
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("layer indices must be strictly increasing".into()));
        }
        Ok(Self { p, points })
    }

    /// Consecutive layers `first, first+1, ...`.
    pub fn from_values(p: u64, first: u32, values: &[u64]) -> Result<Self> {
        let points = values.iter().enumerate().map(|(i, &e)| (first + i as u32, e)).collect();
        Self::new(p, points)
    }

    /// Parse `n:e,n:e,...`.
    pub fn parse(p: u64, text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (n, e) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected n:e, got {item:?}")))?;
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad layer {n:?}")))?;
            let e = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
            points.push((n, e));
        }
        Self::new(p, points)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFit {
    pub lambda: u64,
    pub mu: u64,
    pub nu: i64,
    /// First observed layer from which every point obeys the formula.
    pub n0: u32,
}

impl InvariantFit {
    /// `lambda*n + mu*p^n + nu`, exactly.
    pub fn value_at(&self, p: u64, n: u32) -> BigInt {
        BigInt::from(self.lambda) * n + BigInt::from(self.mu) * BigInt::from(p).pow(n) + self.nu
    }
}

impl fmt::Display for InvariantFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda={} mu={} nu={} n0={}", self.lambda, self.mu, self.nu, self.n0)
    }
}

fn solve3(p: u64, pts: &[(u32, u64)]) -> Option<(BigRational, BigRational, BigRational)> {
    // Rows (n, p^n, 1) for the unknowns (lambda, mu, nu); Cramer's rule.
    let rows: Vec<[BigRational; 4]> = pts
        .iter()
        .map(|&(n, e)| {
            [
                BigRational::from_integer(n.into()),
                BigRational::from_integer(BigInt::from(p).pow(n)),
                BigRational::one(),
                BigRational::from_integer(e.into()),
            ]
        })
        .collect();
    let det = |c: [usize; 3]| {
        let m = |r: usize, k: usize| &rows[r][c[k]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let d = det([0, 1, 2]);
    if d.is_zero() {
        return None;
    }
    Some((det([3, 1, 2]) / &d, det([0, 3, 2]) / &d, det([0, 1, 3]) / &d))
}

fn as_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Smallest `n0` such that all points at layers `>= n0` satisfy the formula
/// with `lambda, mu >= 0` integral and `nu` integral. `None` when no suffix of
/// at least three points admits such a fit.
pub fn fit_invariants(s: &ClassNumberSeries) -> Result<Option<InvariantFit>> {
    ensure_odd_prime(s.p)?;
    if s.points.len() < 4 {
        return Err(Error::InsufficientData(s.points.len()));
    }
    for start in 0..=s.points.len() - 3 {
        let tail = &s.points[start..];
        let Some((l, m, v)) = solve3(s.p, &tail[..3]) else { continue };
        let (Some(l), Some(m), Some(v)) = (as_integer(&l), as_integer(&m), as_integer(&v)) else { continue };
        if l.is_negative() || m.is_negative() {
            continue;
        }
        let (Some(lambda), Some(mu), Some(nu)) = (l.to_u64(), m.to_u64(), v.to_i64()) else { continue };
        let fit = InvariantFit { lambda, mu, nu, n0: tail[0].0 };
        if tail[3..].iter().all(|&(n, e)| fit.value_at(s.p, n) == BigInt::from(e)) {
            return Ok(Some(fit));
        }
    }
    Ok(None)
}

/// `n -> lambda*(n - n_base) + v_base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearLaw {
    pub lambda: u64,
    pub n_base: i64,
    pub v_base: i64,
}

impl LinearLaw {
    pub fn predict(&self, n: i64) -> i64 {
        self.lambda as i64 * (n - self.n_base) + self.v_base
    }

    /// The constant term once the law is read as `lambda*n + nu`.
    pub fn nu(&self) -> i64 {
        self.v_base - self.lambda as i64 * self.n_base
    }
}

pub fn predict_linear(lambda: u64, n_base: i64, v_base: i64) -> LinearLaw {
    LinearLaw { lambda, n_base, v_base }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub n: u32,
    pub observed: u64,
    pub predicted: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionReport {
    pub points: Vec<PointCheck>,
}

impl PredictionReport {
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PointCheck> {
        self.points.iter().filter(|c| !c.pass)
    }
}

/// Compare every point at layer `>= from_layer` with `pred`.
pub fn check_prediction(s: &ClassNumberSeries, pred: impl Fn(i64) -> i64, from_layer: u32) -> PredictionReport {
    let points = s
        .points
        .iter()
        .filter(|&&(n, _)| n >= from_layer)
        .map(|&(n, e)| {
            let predicted = pred(n as i64);
            PointCheck { n, observed: e, predicted, pass: i64::try_from(e) == Ok(predicted) }
        })
        .collect();
    PredictionReport { points }
}
