//! Quotient dimensions `dim_Fp Z_p[[S,T]] / I_alpha` for
//! `I_alpha = ((1+S)^alpha (1+T) - 1, S - f(T), p)`.
//!
//! Substituting `S -> f(T)` identifies the quotient with
//! `F_p[[T]] / (g_alpha mod p)` where `g_alpha = (1+f)^alpha (1+T) - 1`, so the
//! dimension is the `T`-adic valuation of `g_alpha` reduced mod `p`. The
//! series `h_alpha = (1+f)^alpha - (1+T)` is exposed separately together with
//! the case analysis that predicts `lambda(h_alpha)`; the two are tied by
//! `g_alpha = -(1+f)^alpha * h_{-alpha}`.

mod brute;
mod scan;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{vp_factorial, PadicApprox, Valuation};
use crate::series::{Mu, PadicPowerSeries};

pub use brute::{brute_force_dim, truncated_quotient_dim};
pub use scan::{random_instance, run_scan, ScanConfig, ScanReport, ScanRow};

/// Case of the proof that a pair `(f, alpha)` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// `mu(f) > 0`: `h_alpha = -T mod p`.
    MuPositive,
    /// `f` is a unit, so `S - f` is a unit and the quotient vanishes.
    UnitF,
    /// `p | alpha`.
    UGe1,
    /// `p` does not divide `alpha`, `lambda(f) > 1`.
    LambdaGt1,
    /// `lambda(f) = 1`, `alpha' U(0) != 1 mod p`.
    LambdaEq1Generic,
    /// `lambda(f) = 1`, `alpha' U(0) = 1 mod p`; only `-alpha` is controlled.
    LambdaEq1Residual,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::MuPositive => "MU_POSITIVE",
            Branch::UnitF => "UNIT_F",
            Branch::UGe1 => "U_GE_1",
            Branch::LambdaGt1 => "LAMBDA_GT_1",
            Branch::LambdaEq1Generic => "LAMBDA_EQ_1_GENERIC",
            Branch::LambdaEq1Residual => "LAMBDA_EQ_1_RESIDUAL",
        }
    }

    /// Branches in which the proof shows `lambda(h_alpha) = 1` directly.
    pub fn predicts_lambda_one(self) -> bool {
        matches!(self, Branch::MuPositive | Branch::UGe1 | Branch::LambdaGt1 | Branch::LambdaEq1Generic)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// What the case analysis claims for a pair `(f, alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Prediction {
    /// The quotient is zero.
    DimensionZero,
    /// `lambda(h_alpha) = 1`.
    LambdaOne,
    /// `lambda(h_{-alpha}) = 1`; nothing is claimed for `alpha`.
    CompanionLambdaOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPrediction {
    pub branch: Branch,
    pub prediction: Prediction,
}

/// `f` together with a `Z_p` exponent. `exact_alpha` records that the
/// exponent is a known integer, which enables the exact-zero check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IAlphaInstance {
    pub f: PadicPowerSeries,
    pub alpha: PadicApprox,
    pub exact_alpha: Option<i64>,
}

impl IAlphaInstance {
    pub fn new(f: PadicPowerSeries, alpha: PadicApprox) -> Result<Self> {
        if f.p() != alpha.p() {
            return Err(Error::MismatchedPrime(f.p(), alpha.p()));
        }
        Ok(Self { f, alpha, exact_alpha: None })
    }

    /// Integer exponent, lifted to the precision the binomial series needs.
    pub fn with_integer(f: PadicPowerSeries, alpha: i64) -> Result<Self> {
        let a = PadicApprox::from_i64(f.p(), alpha, exponent_precision(&f))?;
        Ok(Self { f, alpha: a, exact_alpha: Some(alpha) })
    }

    /// Rational exponent `num/den` with `p` not dividing `den`.
    pub fn with_ratio(f: PadicPowerSeries, num: i64, den: i64) -> Result<Self> {
        if den == 1 {
            return Self::with_integer(f, num);
        }
        let a = PadicApprox::from_ratio(f.p(), num, den, exponent_precision(&f))?;
        Ok(Self { f, alpha: a, exact_alpha: None })
    }

    pub fn negated(&self) -> Self {
        Self { f: self.f.clone(), alpha: self.alpha.neg(), exact_alpha: self.exact_alpha.and_then(|a| a.checked_neg()) }
    }
}

/// Digits of `alpha` needed to evaluate `(1+f)^alpha` on the window of `f`.
pub fn exponent_precision(f: &PadicPowerSeries) -> u32 {
    let terms = f.precision() as u64 + f.window() as u64;
    f.precision() + vp_factorial(terms, f.p())
}

/// Dimension of the quotient, or a lower bound when the generator vanishes
/// on the whole window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Dim {
    Exact(usize),
    LowerBound(usize),
}

impl Dim {
    pub fn exact(self) -> Option<usize> {
        match self {
            Dim::Exact(d) => Some(d),
            Dim::LowerBound(_) => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Exact(d) => write!(f, "{d}"),
            Dim::LowerBound(m) => write!(f, "LOWER_BOUND({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub dim: Dim,
    pub certified: bool,
    /// `None` when `mu(f)` cannot be certified from the stored window.
    pub branch: Option<Branch>,
    /// The reduced generator `g_alpha`; absent in the unit case.
    pub witness: Option<PadicPowerSeries>,
}

impl DimResult {
    /// Certified and at most one. A lower bound never counts.
    pub fn certified_le_one(&self) -> bool {
        self.certified && matches!(self.dim, Dim::Exact(d) if d <= 1)
    }
}

fn one_plus_t(f: &PadicPowerSeries) -> Result<PadicPowerSeries> {
    PadicPowerSeries::new(f.p(), f.precision(), f.window(), &[1, 1], true)
}

/// `(1+f)^alpha (1+T) - 1`, the image of the first generator under `S -> f`.
pub fn g_alpha(f: &PadicPowerSeries, alpha: &PadicApprox) -> Result<PadicPowerSeries> {
    let one = PadicPowerSeries::one(f.p(), f.precision(), f.window())?;
    f.one_unit_power(alpha)?.mul(&one_plus_t(f)?)?.sub(&one)
}

/// `h_alpha = (1+f)^alpha - (1+T)`.
pub fn h_alpha(f: &PadicPowerSeries, alpha: &PadicApprox) -> Result<PadicPowerSeries> {
    f.one_unit_power(alpha)?.sub(&one_plus_t(f)?)
}

/// Which case of the proof `(f, alpha)` falls into, and the resulting claim.
pub fn branch_classify(f: &PadicPowerSeries, alpha: &PadicApprox) -> Result<BranchPrediction> {
    if f.p() != alpha.p() {
        return Err(Error::MismatchedPrime(f.p(), alpha.p()));
    }
    let p = f.p();
    if !f.coeff(0).is_multiple_of(p) {
        return Ok(BranchPrediction { branch: Branch::UnitF, prediction: Prediction::DimensionZero });
    }
    let ml = f.mu_lambda();
    if !ml.certified {
        return Err(Error::UncertifiedInput);
    }
    let lambda = match (ml.mu, ml.lambda) {
        (Mu::Finite(0), Some(l)) => l,
        _ => return Ok(BranchPrediction { branch: Branch::MuPositive, prediction: Prediction::LambdaOne }),
    };
    let branch = if !matches!(alpha.valuation(), Valuation::Finite(0)) {
        Branch::UGe1
    } else if lambda > 1 {
        Branch::LambdaGt1
    } else {
        // f = T * U mod p, so U(0) is the linear coefficient.
        let unit0 = f.coeff(1) % p;
        let a = alpha.value() % p;
        if (a * unit0) % p == 1 {
            Branch::LambdaEq1Residual
        } else {
            Branch::LambdaEq1Generic
        }
    };
    let prediction =
        if branch == Branch::LambdaEq1Residual { Prediction::CompanionLambdaOne } else { Prediction::LambdaOne };
    Ok(BranchPrediction { branch, prediction })
}

/// Whether `(1+f)^a (1+T) - 1` vanishes modulo `p` as a power series, for an
/// exact polynomial `f` in `(p, T)` and an integer `a`.
///
/// Over `F_p[T]`, `(1+f)^a (1+T) = 1` needs `a < 0` and
/// `(1+f)^{|a|} = 1+T`; comparing degrees forces `|a| = 1` and `f = T mod p`.
fn generator_vanishes_exactly(f: &PadicPowerSeries, a: i64) -> bool {
    if !f.is_exact() || a != -1 {
        return false;
    }
    let r = f.reduce_mod_p();
    r.get(1) == Some(&1) && r.iter().enumerate().all(|(i, &c)| i == 1 || c == 0)
}

/// `dim_Fp Z_p[[S,T]] / I_alpha`.
pub fn dim_ialpha(inst: &IAlphaInstance) -> Result<DimResult> {
    let f = &inst.f;
    let branch = branch_classify(f, &inst.alpha).ok().map(|b| b.branch);
    if !f.coeff(0).is_multiple_of(f.p()) {
        return Ok(DimResult { dim: Dim::Exact(0), certified: true, branch, witness: None });
    }
    let g = g_alpha(f, &inst.alpha)?;
    let (dim, certified) = match g.t_valuation_mod_p() {
        Some(v) => (Dim::Exact(v), true),
        None => {
            let zero = inst.exact_alpha.is_some_and(|a| generator_vanishes_exactly(f, a));
            (Dim::LowerBound(f.window()), zero)
        }
    };
    Ok(DimResult { dim, certified, branch, witness: Some(g) })
}

/// Dimensions for `alpha` and `-alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma31Outcome {
    pub plus: DimResult,
    pub minus: DimResult,
    pub min_le_1: bool,
}

pub fn lemma31_min(inst: &IAlphaInstance) -> Result<Lemma31Outcome> {
    let plus = dim_ialpha(inst)?;
    let minus = dim_ialpha(&inst.negated())?;
    if !plus.certified && !minus.certified {
        return Err(Error::Uncertified);
    }
    let min_le_1 = plus.certified_le_one() || minus.certified_le_one();
    Ok(Lemma31Outcome { plus, minus, min_le_1 })
}
