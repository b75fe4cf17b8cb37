//! Defining polynomials for the three quartic families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{is_irreducible, ZPoly};

fn quartic_even(a2: BigInt, a0: BigInt) -> ZPoly {
    ZPoly::new(vec![a0, BigInt::zero(), a2, BigInt::zero(), BigInt::one()])
}

fn irreducible_or_err(f: ZPoly) -> Result<ZPoly> {
    if is_irreducible(&f) {
        Ok(f)
    } else {
        Err(Error::Reducible)
    }
}

/// `x^4 + 2(d - m)x^2 + (m + d)^2`, the minimal polynomial of `sqrt(m) + sqrt(-d)`.
pub fn poly_biquadratic(m: u64, d: u64) -> Result<ZPoly> {
    if m == 0 || d == 0 {
        return Err(Error::Degenerate(format!("m = {m}, d = {d}")));
    }
    let (m, d) = (BigInt::from(m), BigInt::from(d));
    let s = &m + &d;
    irreducible_or_err(quartic_even((d - m) * 2, &s * &s))
}

/// Integral model of `x^4 + 2s(t^2+1)x^2 + s^2 t^2 (t^2+1)` under
/// `x -> x/c` with the least integer `c > 0` that clears denominators.
pub fn poly_cyclic(s: &BigRational, t: &BigRational) -> Result<ZPoly> {
    let t2p1 = t * t + BigRational::one();
    if s.is_zero() || t.is_zero() {
        return Err(Error::Degenerate(format!("s = {s}, t = {t}")));
    }
    let a2 = s * &t2p1 * BigRational::from_integer(2.into());
    let a0 = s * s * t * t * &t2p1;
    let c = clearing_factor(&a2, &a0);
    let c2 = BigRational::from_integer(&c * &c);
    let a2 = &a2 * &c2;
    let a0 = &a0 * &c2 * &c2;
    debug_assert!(a2.is_integer() && a0.is_integer());
    irreducible_or_err(quartic_even(a2.to_integer(), a0.to_integer()))
}

/// Least `c` with `a2 c^2` and `a0 c^4` integral.
fn clearing_factor(a2: &BigRational, a0: &BigRational) -> BigInt {
    let den = a2.denom().lcm(a0.denom());
    let mut c = BigInt::one();
    for (q, _) in factor_small(&den) {
        let need = |x: &BigRational, w: u32| -> u32 {
            let v = valuation(x.denom(), &q);
            v.div_ceil(w)
        };
        let e = need(a2, 2).max(need(a0, 4));
        c *= q.pow(e);
    }
    c
}

fn valuation(n: &BigInt, q: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(q) {
        n /= q;
        v += 1;
    }
    v
}

/// Trial-division factorisation, fine for the denominators that occur here.
fn factor_small(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut q = BigInt::from(2);
    while &q * &q <= n {
        if n.is_multiple_of(&q) {
            let v = valuation(&n, &q);
            n /= q.pow(v);
            out.push((q.clone(), v));
        }
        q += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `x^4 + 2d x^2 + (d^2 - m)`, the minimal polynomial of `sqrt(sqrt(m) - d)`.
pub fn poly_nongalois(m: u64, d: u64) -> Result<ZPoly> {
    let (mb, db) = (BigInt::from(m), BigInt::from(d));
    if &db * &db == mb {
        return Err(Error::Degenerate(format!("d^2 = m = {m}")));
    }
    irreducible_or_err(quartic_even(&db * 2, &db * &db - mb))
}

pub fn is_squarefree_int(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q * q) {
            return false;
        }
        q += 1;
    }
    true
}

/// `Q(sqrt m, sqrt -d) = Q(sqrt m, sqrt -d')` with `d' = d m / gcd(d, m)^2`;
/// the smaller of the two. `None` unless `d` is squarefree.
pub fn canonical_d(m: u64, d: u64) -> Option<u64> {
    if !is_squarefree_int(d) || m == 0 {
        return None;
    }
    let g = d.gcd(&m);
    let other = (d / g).checked_mul(m / g)?;
    Some(d.min(other))
}

/// Whether `sqrt(n)` lies in the field generated by a root of `f`
/// (irreducible). Tested by the reducibility of the norm of `x^2 - n`
/// from `Q(theta)` down to `Q`, via the compositum construction.
pub fn embeds_sqrt(f: &ZPoly, n: i64) -> Result<bool> {
    if n >= 0 {
        let r = (n as f64).sqrt().round() as i64;
        if (r - 1..=r + 1).any(|x| x >= 0 && x * x == n) {
            return Ok(true);
        }
    }
    match super::compositum_poly(f, &ZPoly::from_i64(&[-n, 0, 1])) {
        Ok(_) => Ok(false),
        Err(Error::NotDisjoint) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => {
            (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?)
        }
        None => (text.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q` as a `u64`, if it is a non-negative integer that fits.
pub(crate) fn rational_to_u64(q: &BigRational) -> Option<u64> {
    q.is_integer().then(|| q.to_integer().to_u64()).flatten()
}
