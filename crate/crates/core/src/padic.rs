//! Residues of p-adic integers at an explicit finite precision.
//!
//! A [`PadicApprox`] is an element of `Z_p` known modulo `p^N`. All moduli are
//! kept below `2^64` so that products fit in a `u128`; constructors report
//! [`Error::PrecisionOverflow`] otherwise.

use std::fmt;

use crate::error::{Error, Result};

/// Trial-division primality test restricted to odd primes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// `p^e`, failing if it does not fit in a `u64`.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::PrecisionOverflow { p, exponent: e })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a signed integer into `[0, m)`.
pub(crate) fn reduce_i128(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

/// `v_p(n)` for `n != 0`.
pub(crate) fn vp_u64(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Legendre's formula for `v_p(n!)`.
pub fn vp_factorial(n: u64, p: u64) -> u32 {
    let mut v = 0u64;
    let mut q = n;
    while q > 0 {
        q /= p;
        v += q;
    }
    v as u32
}

/// p-adic valuation of an approximation: exact, or only bounded below when
/// the residue vanishes at the stored precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// An element of `Z_p` known modulo `p^precision`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    p: u64,
    value: u64,
    precision: u32,
}

impl PadicApprox {
    pub fn new(p: u64, value: u64, precision: u32) -> Result<Self> {
        ensure_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be at least 1".into()));
        }
        let m = checked_pow(p, precision)?;
        Ok(Self { p, value: value % m, precision })
    }

    pub fn from_i64(p: u64, value: i64, precision: u32) -> Result<Self> {
        let mut x = Self::new(p, 0, precision)?;
        x.value = reduce_i128(value as i128, x.modulus());
        Ok(x)
    }

    /// `num / den` in `Z_p`; `den` must be prime to `p`.
    pub fn from_ratio(p: u64, num: i64, den: i64, precision: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let n = Self::from_i64(p, num, precision)?;
        let d = Self::from_i64(p, den, precision)?;
        let inv = inv_mod(d.value, d.modulus())
            .ok_or_else(|| Error::InvalidArgument(format!("denominator {den} is divisible by p = {p}")))?;
        Ok(Self { value: mul_mod(n.value, inv, n.modulus()), ..n })
    }

    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, 0, precision)
    }

    pub fn one(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, 1, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        // Checked at construction.
        self.p.pow(self.precision)
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn signed_value(&self) -> i128 {
        let m = self.modulus();
        if self.value > m / 2 {
            self.value as i128 - m as i128
        } else {
            self.value as i128
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Drop to a lower precision. Asking for more digits than are known is an
    /// error.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::InsufficientPrecision { needed: precision, available: self.precision });
        }
        Self::new(self.p, self.value, precision)
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::MismatchedPrime(self.p, other.p))
        } else {
            Ok(())
        }
    }

    fn common(&self, other: &Self) -> Result<(u32, u64)> {
        self.check_prime(other)?;
        let n = self.precision.min(other.precision);
        Ok((n, self.p.pow(n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (n, m) = self.common(other)?;
        Ok(Self { p: self.p, value: add_mod(self.value % m, other.value % m, m), precision: n })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (n, m) = self.common(other)?;
        Ok(Self { p: self.p, value: sub_mod(self.value % m, other.value % m, m), precision: n })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (n, m) = self.common(other)?;
        Ok(Self { p: self.p, value: mul_mod(self.value % m, other.value % m, m), precision: n })
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self { value: sub_mod(0, self.value, m), ..*self }
    }

    /// `v_p` of the residue; `AtLeast(N)` when it vanishes mod `p^N`.
    pub fn valuation(&self) -> Valuation {
        if self.value == 0 {
            Valuation::AtLeast(self.precision)
        } else {
            Valuation::Finite(vp_u64(self.value, self.p))
        }
    }

    /// Split `alpha = p^u * alpha'` with `alpha'` a unit.
    ///
    /// The zero element follows the convention `u = 1`, `alpha' = 0`, but
    /// only when the caller asserts that the element is exactly zero; a
    /// residue that merely vanishes mod `p^N` cannot be split.
    pub fn unit_split(&self, exact_zero: bool) -> Result<UnitSplit> {
        match self.valuation() {
            Valuation::Finite(u) => {
                let shift = self.p.pow(u);
                let unit_part = Self::new(self.p, self.value / shift, self.precision - u)?;
                Ok(UnitSplit { u, unit_part })
            }
            Valuation::AtLeast(_) if exact_zero => {
                Ok(UnitSplit { u: 1, unit_part: Self::zero(self.p, self.precision)? })
            }
            Valuation::AtLeast(n) => Err(Error::InsufficientPrecision { needed: n + 1, available: n }),
        }
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.p, self.precision)
    }
}

/// `alpha = p^u * unit_part` (see [`PadicApprox::unit_split`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitSplit {
    pub u: u32,
    pub unit_part: PadicApprox,
}

impl UnitSplit {
    /// `p^u * alpha'` at the precision of the unit part plus `u`.
    pub fn reassemble(&self) -> Result<PadicApprox> {
        let p = self.unit_part.p();
        let n = self.unit_part.precision() + self.u;
        let m = checked_pow(p, n)?;
        PadicApprox::new(p, mul_mod(self.unit_part.value(), p.pow(self.u) % m, m), n)
    }
}

/// Free-function form of [`PadicApprox::valuation`].
pub fn valuation(x: &PadicApprox) -> Valuation {
    x.valuation()
}

/// Free-function form of [`PadicApprox::unit_split`].
pub fn unit_split(alpha: &PadicApprox, exact_zero: bool) -> Result<UnitSplit> {
    alpha.unit_split(exact_zero)
}

/// Generalised binomial coefficient `alpha (alpha-1) ... (alpha-i+1) / i!`
/// modulo `p^out_precision`.
///
/// The numerator is formed modulo `p^(out_precision + v_p(i!))`, so `alpha`
/// must be known to at least that many digits.
pub fn binom_zp(alpha: &PadicApprox, i: u64, out_precision: u32) -> Result<PadicApprox> {
    let p = alpha.p();
    let v = vp_factorial(i, p);
    let needed = out_precision + v;
    if alpha.precision() < needed {
        return Err(Error::InsufficientPrecision { needed, available: alpha.precision() });
    }
    let big = checked_pow(p, needed)?;
    let out_mod = checked_pow(p, out_precision)?;
    let a = alpha.value() % big;

    let mut numerator = 1 % big;
    let mut unit_fact = 1 % out_mod;
    for j in 0..i {
        numerator = mul_mod(numerator, sub_mod(a, j % big, big), big);
        let mut k = j + 1;
        while k % p == 0 {
            k /= p;
        }
        unit_fact = mul_mod(unit_fact, k % out_mod, out_mod);
    }
    let shift = p.pow(v);
    debug_assert_eq!(numerator % shift, 0);
    let reduced = (numerator / shift) % out_mod;
    let inv = inv_mod(unit_fact, out_mod).expect("unit part of i! is prime to p");
    PadicApprox::new(p, mul_mod(reduced, inv, out_mod), out_precision)
}
