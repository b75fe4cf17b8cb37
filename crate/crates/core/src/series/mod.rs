//! Truncated power series in `Z_p[[T]]`.
//!
//! A series is a fixed rectangle: `M` coefficients, each known modulo `p^N`.
//! The `exact` flag asserts that every coefficient of degree `>= M` vanishes
//! (to the stored precision), i.e. the element is a polynomial of degree `< M`.

mod parse;
mod weierstrass;

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{
    add_mod, binom_zp, checked_pow, ensure_odd_prime, inv_mod, mul_mod, reduce_i128, sub_mod, vp_u64, PadicApprox,
};

pub use parse::parse_terms;
pub use weierstrass::{Mu, MuLambda, WeierstrassData};

/// Default coefficient precision `N`.
pub const DEFAULT_PRECISION: u32 = 8;
/// Default degree window `M`.
pub const DEFAULT_WINDOW: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicPowerSeries {
    p: u64,
    precision: u32,
    modulus: u64,
    coeffs: Vec<u64>,
    exact: bool,
}

impl PadicPowerSeries {
    /// Build a series from residues; missing coefficients are zero. Extra
    /// coefficients past the window are dropped unless the series is
    /// declared exact, in which case they must vanish.
    pub fn new(p: u64, precision: u32, window: usize, coeffs: &[u64], exact: bool) -> Result<Self> {
        ensure_odd_prime(p)?;
        if precision == 0 || window == 0 {
            return Err(Error::InvalidArgument("precision and window must be at least 1".into()));
        }
        let modulus = checked_pow(p, precision)?;
        if exact && coeffs.iter().skip(window).any(|c| c % modulus != 0) {
            return Err(Error::InvalidArgument(format!(
                "exact series has nonzero coefficients beyond the window M = {window}"
            )));
        }
        let mut c: Vec<u64> = coeffs.iter().take(window).map(|x| x % modulus).collect();
        c.resize(window, 0);
        Ok(Self { p, precision, modulus, coeffs: c, exact })
    }

    /// Build from signed integer coefficients (`coeffs[i]` multiplies `T^i`).
    pub fn from_i64(p: u64, precision: u32, window: usize, coeffs: &[i64], exact: bool) -> Result<Self> {
        let modulus = checked_pow(p, precision)?;
        let c: Vec<u64> = coeffs.iter().map(|&x| reduce_i128(x as i128, modulus)).collect();
        Self::new(p, precision, window, &c, exact)
    }

    pub fn zero(p: u64, precision: u32, window: usize) -> Result<Self> {
        Self::new(p, precision, window, &[], true)
    }

    pub fn one(p: u64, precision: u32, window: usize) -> Result<Self> {
        Self::new(p, precision, window, &[1], true)
    }

    /// The series `T`.
    pub fn t(p: u64, precision: u32, window: usize) -> Result<Self> {
        Self::new(p, precision, window, &[0, 1], true)
    }

    /// Parse a literal such as `1*T^0, 3*T^2` (see [`parse_terms`]). Literals
    /// denote polynomials, so the result is exact.
    pub fn parse(p: u64, precision: u32, window: usize, text: &str) -> Result<Self> {
        let modulus = checked_pow(p, precision)?;
        let terms = parse_terms(text)?;
        let len = terms.iter().map(|&(_, k)| k + 1).max().unwrap_or(0);
        let mut c = vec![0u64; len];
        for (coeff, k) in terms {
            let r = coeff.rem_euclid(modulus as i128) as u64;
            c[k] = add_mod(c[k], r, modulus);
        }
        Self::new(p, precision, window, &c, true)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn window(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn constant(&self) -> PadicApprox {
        PadicApprox::new(self.p, self.coeffs[0], self.precision).expect("validated at construction")
    }

    /// Coefficients as signed representatives in `(-p^N/2, p^N/2]`.
    pub fn signed_coeffs(&self) -> Vec<i128> {
        self.coeffs
            .iter()
            .map(|&c| if c > self.modulus / 2 { c as i128 - self.modulus as i128 } else { c as i128 })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Highest index with a nonzero residue.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    /// Coefficients reduced modulo `p`.
    pub fn reduce_mod_p(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c % self.p).collect()
    }

    /// `T`-adic valuation of the reduction modulo `p`, if it is nonzero in
    /// the window.
    pub fn t_valuation_mod_p(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c % self.p != 0)
    }

    /// Same element viewed at a smaller precision and/or window.
    pub fn truncate(&self, precision: u32, window: usize) -> Result<Self> {
        if precision == 0 || window == 0 || precision > self.precision || window > self.window() {
            return Err(Error::InvalidArgument(format!(
                "cannot view a ({}, {}) series at ({precision}, {window})",
                self.precision,
                self.window()
            )));
        }
        let m = self.p.pow(precision);
        let coeffs = self.coeffs[..window].iter().map(|c| c % m).collect();
        Ok(Self::from_parts(self.p, precision, m, coeffs, self.exact && self.fits(window)))
    }

    /// Mark the stored polynomial as the exact element.
    pub fn into_exact(mut self) -> Self {
        self.exact = true;
        self
    }

    fn shape_with(&self, other: &Self) -> Result<(u32, u64, usize)> {
        if self.p != other.p {
            return Err(Error::MismatchedPrime(self.p, other.p));
        }
        let n = self.precision.min(other.precision);
        Ok((n, self.p.pow(n), self.window().min(other.window())))
    }

    fn from_parts(p: u64, precision: u32, modulus: u64, coeffs: Vec<u64>, exact: bool) -> Self {
        Self { p, precision, modulus, coeffs, exact }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (n, m, w) = self.shape_with(other)?;
        let c = (0..w).map(|i| add_mod(self.coeffs[i] % m, other.coeffs[i] % m, m)).collect();
        let exact = self.exact && other.exact && self.fits(w) && other.fits(w);
        Ok(Self::from_parts(self.p, n, m, c, exact))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&x| sub_mod(0, x, self.modulus)).collect();
        Self::from_parts(self.p, self.precision, self.modulus, c, self.exact)
    }

    fn fits(&self, window: usize) -> bool {
        self.degree().is_none_or(|d| d < window)
    }

    /// Product truncated to the common window. The result stays exact only
    /// when the true product polynomial fits in the window.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (n, m, w) = self.shape_with(other)?;
        let c = mul_trunc(&self.coeffs, &other.coeffs, w, m);
        let exact = self.exact
            && other.exact
            && match (self.degree(), other.degree()) {
                (Some(a), Some(b)) => a + b < w,
                _ => true,
            };
        Ok(Self::from_parts(self.p, n, m, c, exact))
    }

    pub fn scalar_mul(&self, c: &PadicApprox) -> Result<Self> {
        if c.p() != self.p {
            return Err(Error::MismatchedPrime(c.p(), self.p));
        }
        let n = self.precision.min(c.precision());
        let m = self.p.pow(n);
        let cv = c.value() % m;
        let coeffs = self.coeffs.iter().map(|&x| mul_mod(x % m, cv, m)).collect();
        Ok(Self::from_parts(self.p, n, m, coeffs, self.exact))
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.coeffs[0].is_multiple_of(self.p) {
            return Err(Error::NotAUnit);
        }
        let c = inverse_trunc(&self.coeffs, self.window(), self.modulus);
        let exact = self.exact && self.degree() == Some(0);
        Ok(Self::from_parts(self.p, self.precision, self.modulus, c, exact))
    }

    /// `(1 + f)^alpha` for `f` in the maximal ideal `(p, T)`.
    ///
    /// Evaluated as `sum_i binom(alpha, i) f^i` for `i <= N + M`; every later
    /// power of `f` vanishes in the window. The loop also stops at the first
    /// power that is already zero.
    pub fn one_unit_power(&self, alpha: &PadicApprox) -> Result<Self> {
        if alpha.p() != self.p {
            return Err(Error::MismatchedPrime(alpha.p(), self.p));
        }
        if !self.coeffs[0].is_multiple_of(self.p) {
            return Err(Error::NotInMaximalIdeal);
        }
        let (n, m, w) = (self.precision, self.modulus, self.window());
        let mut acc = vec![0u64; w];
        acc[0] = 1 % m;
        let mut power = acc.clone();
        let bound = n as usize + w;
        for i in 1..=bound {
            power = mul_trunc(&power, &self.coeffs, w, m);
            if power.iter().all(|&c| c == 0) {
                break;
            }
            let b = binom_zp(alpha, i as u64, n)?.value();
            if b == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(&power) {
                *a = add_mod(*a, mul_mod(b, x, m), m);
            }
        }
        let exact = self.is_zero() && self.exact;
        Ok(Self::from_parts(self.p, n, m, acc, exact))
    }

    /// `mu`, `lambda` and whether they are certified by the stored data.
    pub fn mu_lambda(&self) -> MuLambda {
        weierstrass::mu_lambda(self)
    }

    /// `f = p^mu * g * U` with `g` distinguished and `U` a unit.
    pub fn weierstrass_prep(&self) -> Result<WeierstrassData> {
        weierstrass::prepare(self)
    }

    pub(crate) fn valuation_of_coeff(&self, i: usize) -> Option<u32> {
        let c = self.coeffs[i];
        (c != 0).then(|| vp_u64(c, self.p))
    }
}

/// Truncated product of two coefficient vectors modulo `m`.
pub(crate) fn mul_trunc(a: &[u64], b: &[u64], window: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u128; window];
    let la = a.len().min(window);
    let lb = b.len().min(window);
    let small = m <= u32::MAX as u64;
    for i in 0..la {
        let x = a[i] % m;
        if x == 0 {
            continue;
        }
        for j in 0..lb.min(window - i) {
            let y = b[j] % m;
            if y == 0 {
                continue;
            }
            let slot = &mut out[i + j];
            if small {
                *slot = (*slot + (x * y) as u128) % m as u128;
            } else {
                *slot = (*slot + (x as u128 * y as u128) % m as u128) % m as u128;
            }
        }
    }
    out.into_iter().map(|x| x as u64).collect()
}

/// Inverse of a unit power series modulo `(m, T^window)`.
pub(crate) fn inverse_trunc(a: &[u64], window: usize, m: u64) -> Vec<u64> {
    let a0_inv = inv_mod(a[0] % m, m).expect("constant term is a unit");
    let mut out = vec![0u64; window];
    out[0] = a0_inv;
    for k in 1..window {
        let mut s = 0u64;
        for i in 1..=k.min(a.len() - 1) {
            s = add_mod(s, mul_mod(a[i] % m, out[k - i], m), m);
        }
        out[k] = mul_mod(sub_mod(0, s, m), a0_inv, m);
    }
    out
}

impl fmt::Display for PadicPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .signed_coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| format!("{c}*T^{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(", "))?;
        }
        if !self.exact {
            write!(f, " + O({}^{}, T^{})", self.p, self.precision, self.window())?;
        } else {
            write!(f, " (mod {}^{})", self.p, self.precision)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::vp_factorial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const N: u32 = 8;
    const M: usize = 32;

    fn s(p: u64, c: &[i64]) -> PadicPowerSeries {
        PadicPowerSeries::from_i64(p, N, M, c, true).unwrap()
    }

    fn alpha(p: u64, v: i64) -> PadicApprox {
        PadicApprox::from_i64(p, v, N + vp_factorial((N as u64) + M as u64, p)).unwrap()
    }

    #[test]
    fn ring_examples() {
        let p = 3;
        let t = PadicPowerSeries::t(p, N, M).unwrap();
        let three = s(p, &[3]);
        assert_eq!(t.add(&three).unwrap(), s(p, &[3, 1]));
        assert_eq!(s(p, &[1, 1]).mul(&s(p, &[1, -1])).unwrap(), s(p, &[1, 0, -1]));
    }

    #[test]
    fn mul_matches_integer_convolution() {
        // Oracle: schoolbook convolution over i128, reduced at the end.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 5, 7] {
            let m = p.pow(N) as i128;
            let a: Vec<i64> = (0..M).map(|_| rng.gen_range(-1000..1000)).collect();
            let b: Vec<i64> = (0..M).map(|_| rng.gen_range(-1000..1000)).collect();
            let prod = s(p, &a).mul(&s(p, &b)).unwrap();
            for k in 0..M {
                let full: i128 = (0..=k).map(|i| a[i] as i128 * b[k - i] as i128).sum();
                assert_eq!(prod.coeff(k) as i128, full.rem_euclid(m));
            }
            assert!(!prod.is_exact());
        }
    }

    #[test]
    fn mismatched_prime() {
        assert_eq!(s(3, &[1]).add(&s(5, &[1])), Err(Error::MismatchedPrime(3, 5)));
    }

    #[test]
    fn invert_unit_examples() {
        let p = 3;
        let f = s(p, &[1, 1]);
        assert_eq!(f.invert_unit().unwrap().mul(&f).unwrap().coeffs(), s(p, &[1]).coeffs());
        assert_eq!(s(p, &[1]).invert_unit().unwrap(), s(p, &[1]));
        assert_eq!(s(p, &[3, 1]).invert_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn invert_two_plus_t_matches_geometric_series() {
        // 1/(2+T) = (1/2) * sum (-T/2)^i
        let p = 3u64;
        let m = p.pow(N);
        let inv = s(p, &[2, 1]).invert_unit().unwrap();
        let half = inv_mod(2, m).unwrap();
        let mut term = half;
        let neg_half = sub_mod(0, half, m);
        for i in 0..M {
            assert_eq!(inv.coeff(i), term, "coefficient {i}");
            term = mul_mod(term, neg_half, m);
        }
    }

    #[test]
    fn one_unit_power_examples() {
        let p = 3;
        let t = PadicPowerSeries::t(p, N, M).unwrap();
        assert_eq!(t.one_unit_power(&alpha(p, 2)).unwrap().coeffs(), s(p, &[1, 2, 1]).coeffs());
        let inv = t.one_unit_power(&alpha(p, -1)).unwrap();
        assert_eq!(inv.mul(&s(p, &[1, 1])).unwrap().coeffs(), s(p, &[1]).coeffs());
        assert_eq!(s(p, &[1, 1]).one_unit_power(&alpha(p, 2)), Err(Error::NotInMaximalIdeal));
    }

    #[test]
    fn one_unit_power_demands_precision() {
        let p = 3;
        let t = PadicPowerSeries::t(p, N, M).unwrap();
        let low = PadicApprox::new(p, 5, N).unwrap();
        assert!(matches!(t.one_unit_power(&low), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn parse_literal() {
        let f = PadicPowerSeries::parse(3, N, M, "1*T^0, 3*T^2").unwrap();
        assert_eq!(f, s(3, &[1, 0, 3]));
        assert!(f.is_exact());
    }

    fn arb_series(p: u64) -> impl Strategy<Value = PadicPowerSeries> {
        let m = p.pow(N);
        (proptest::collection::vec(0..m, M), 1..m).prop_map(move |(mut c, c0)| {
            c[0] = (c0 * p) % m;
            PadicPowerSeries::new(p, N, M, &c, false).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn power_exponent_laws(f in arb_series(5), a in any::<u32>(), b in any::<u32>()) {
            let p = 5;
            let prec = N + vp_factorial(N as u64 + M as u64, p);
            let x = PadicApprox::new(p, a as u64, prec).unwrap();
            let y = PadicApprox::new(p, b as u64, prec).unwrap();
            let lhs = f.one_unit_power(&x.add(&y).unwrap()).unwrap();
            let rhs = f.one_unit_power(&x).unwrap().mul(&f.one_unit_power(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
            let zero = PadicApprox::zero(p, prec).unwrap();
            let unit = PadicPowerSeries::one(p, N, M).unwrap();
            prop_assert_eq!(f.one_unit_power(&zero).unwrap().coeffs().to_vec(), unit.coeffs().to_vec());
            let one = PadicApprox::one(p, prec).unwrap();
            let one_plus_f = PadicPowerSeries::one(p, N, M).unwrap().add(&f).unwrap();
            prop_assert_eq!(f.one_unit_power(&one).unwrap().coeffs().to_vec(), one_plus_f.coeffs().to_vec());
        }
    }
}
