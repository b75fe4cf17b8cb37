//! mu/lambda invariants and p-adic Weierstrass preparation.

use std::fmt;

use serde::Serialize;

use super::{inverse_trunc, mul_trunc, PadicPowerSeries};
use crate::error::{Error, Result};
use crate::padic::{mul_mod, sub_mod};

/// The mu-invariant of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mu {
    Finite(u32),
    /// Every stored coefficient vanishes modulo `p^N`.
    InfinityWithinWindow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuLambda {
    pub mu: Mu,
    /// Least index attaining the minimal valuation; `None` for the zero series.
    pub lambda: Option<usize>,
    pub certified: bool,
}

pub(super) fn mu_lambda(f: &PadicPowerSeries) -> MuLambda {
    let mut best: Option<(u32, usize)> = None;
    for i in 0..f.window() {
        if let Some(v) = f.valuation_of_coeff(i) {
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, i));
            }
        }
    }
    match best {
        None => MuLambda { mu: Mu::InfinityWithinWindow, lambda: None, certified: f.is_exact() },
        // A unit coefficient cannot be undercut by the unseen tail; a positive
        // minimum can, unless the tail is known to vanish.
        Some((mu, lambda)) => MuLambda { mu: Mu::Finite(mu), lambda: Some(lambda), certified: mu == 0 || f.is_exact() },
    }
}

/// `f = p^mu * g * U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: usize,
    /// Coefficients of `g`, lowest degree first; monic of degree `lambda`.
    /// Known modulo `p^(N - mu)`.
    pub distinguished: Vec<u64>,
    pub unit: PadicPowerSeries,
    /// True when `g` and `U` are the preparation of the series itself and
    /// not only of its stored truncation.
    pub certified: bool,
}

impl WeierstrassData {
    /// `g` as a series in the same window as `unit`.
    pub fn distinguished_series(&self) -> PadicPowerSeries {
        let u = &self.unit;
        PadicPowerSeries::new(u.p(), u.precision(), u.window().max(self.lambda + 1), &self.distinguished, true)
            .expect("shape taken from an existing series")
    }

    /// `p^mu * g * U` at precision `mu + precision(U)`.
    pub fn reassemble(&self) -> Result<PadicPowerSeries> {
        let u = &self.unit;
        let p = u.p();
        let gu = mul_trunc(&self.distinguished, u.coeffs(), u.window(), u.modulus());
        let n = u.precision() + self.mu;
        let m = crate::padic::checked_pow(p, n)?;
        let shift = p.pow(self.mu);
        let coeffs: Vec<u64> = gu.iter().map(|&c| mul_mod(c, shift, m)).collect();
        PadicPowerSeries::new(p, n, u.window(), &coeffs, false)
    }

    pub fn is_distinguished(&self) -> bool {
        let p = self.unit.p();
        self.distinguished.len() == self.lambda + 1
            && self.distinguished[self.lambda] == 1
            && self.distinguished[..self.lambda].iter().all(|c| c % p == 0)
    }
}

impl fmt::Display for WeierstrassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mu = {}", self.mu)?;
        writeln!(f, "lambda = {}", self.lambda)?;
        writeln!(f, "g = {}", self.distinguished_series())?;
        writeln!(f, "U = {}", self.unit)?;
        write!(f, "certified = {}", self.certified)
    }
}

pub(super) fn prepare(f: &PadicPowerSeries) -> Result<WeierstrassData> {
    let ml = mu_lambda(f);
    let (mu, lambda) = match (ml.mu, ml.lambda) {
        (Mu::Finite(mu), Some(lambda)) if ml.certified => (mu, lambda),
        _ => return Err(Error::UncertifiedInput),
    };
    let window = f.window();
    if lambda >= window {
        return Err(Error::WindowTooSmall { lambda, window });
    }
    let p = f.p();
    let prec = f.precision() - mu;
    let m = p.pow(prec);
    let shift = p.pow(mu);
    // f / p^mu, known mod p^(N - mu)
    let reduced: Vec<u64> = f.coeffs().iter().map(|&c| (c / shift) % m).collect();

    if lambda == 0 {
        let unit = PadicPowerSeries::new(p, prec, window, &reduced, f.is_exact())?;
        return Ok(WeierstrassData { mu, lambda, distinguished: vec![1 % m], unit, certified: true });
    }

    // Treat the stored rectangle as a polynomial and solve in an enlarged
    // window: each pass of the division pulls coefficients down by lambda
    // degrees while gaining one p-adic digit.
    let ext = window + (prec as usize + 1) * lambda;
    let mut padded = reduced.clone();
    padded.resize(ext, 0);
    let low = &padded[..lambda];
    let high = &padded[lambda..];
    let len = ext - lambda;
    let high_inv = inverse_trunc(high, len, m);

    // q = high^{-1} (1 - tau(low * q)), where tau(h) = (h - h mod T^lambda) / T^lambda.
    let mut q = high_inv.clone();
    let mut converged = false;
    for _ in 0..=(prec as usize + 2) {
        let lq = mul_trunc(low, &q, len + lambda, m);
        let mut rhs: Vec<u64> = lq[lambda..].iter().map(|&c| sub_mod(0, c, m)).collect();
        rhs[0] = sub_mod(1 % m, lq[lambda], m);
        let next = mul_trunc(&high_inv, &rhs, len, m);
        if next == q {
            converged = true;
            break;
        }
        q = next;
    }
    debug_assert!(converged, "Weierstrass division must reach its fixed point");
    if !converged {
        return Err(Error::InsufficientPrecision { needed: prec + 1, available: prec });
    }

    let lq = mul_trunc(low, &q, lambda, m);
    let mut distinguished = lq;
    distinguished.push(1 % m);
    let unit_coeffs = inverse_trunc(&q[..window], window, m);
    let unit = PadicPowerSeries::new(p, prec, window, &unit_coeffs, false)?;

    // Tail coefficients beyond the window perturb g at roughly p^((M - lambda)/lambda + 1).
    let stable_digits = (window - lambda) / lambda + 1;
    let certified = f.is_exact() || stable_digits >= prec as usize;
    Ok(WeierstrassData { mu, lambda, distinguished, unit, certified })
}
