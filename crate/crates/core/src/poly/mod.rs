//! Dense integer polynomials: arithmetic, resultants, discriminants,
//! factorisation over `Q` and `Z_p` root counting.

mod factor;
mod fp;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use factor::{factor, is_irreducible};
pub use fp::FpPoly;
pub use roots::count_qp_roots;

/// Polynomial in `Z[x]`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients given from the leading term down to the constant.
    pub fn from_descending(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn to_descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

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

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::default(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &BigInt) -> Self {
        self.compose(&Self::new(vec![a.clone(), BigInt::one()]))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact quotient in `Z[x]`, if `divisor` divides `self` there.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let d = divisor.degree()?;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return self.is_zero().then(Self::default);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + d].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Self {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().unwrap_or(0);
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let q = rem.pop().expect("nonempty");
            let shift = rem.len() - d;
            for (j, b) in divisor.coeffs[..d].iter().enumerate() {
                rem[shift + j] -= &q * b;
            }
        }
        Self::new(rem)
    }

    /// `c^deg * self(x / c)`: scales the roots by `c`.
    pub fn scale_roots(&self, c: &BigInt) -> Self {
        let Some(n) = self.degree() else { return self.clone() };
        Self::new(self.coeffs.iter().enumerate().map(|(i, a)| a * c.pow((n - i) as u32)).collect())
    }

    /// Monic polynomial whose roots are `lc * root`: `lc^(n-1) f(x / lc)`.
    pub fn monic_associate(&self) -> Self {
        let lc = self.leading();
        if lc.is_one() || self.is_zero() {
            return self.clone();
        }
        let n = self.degree().unwrap_or(0);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| if i == n { BigInt::one() } else { a * lc.pow((n - 1 - i) as u32) })
            .collect();
        Self::new(coeffs)
    }

    /// Gcd over `Q`, returned primitive with positive leading coefficient.
    pub fn gcd_q(&self, other: &Self) -> Self {
        let to_q = |p: &Self| -> Vec<BigRational> { p.coeffs.iter().cloned().map(BigRational::from_integer).collect() };
        let (mut a, mut b) = (to_q(self), to_q(other));
        while !b.is_empty() {
            let r = rem_q(&a, &b);
            a = b;
            b = r;
        }
        rational_to_primitive(&a)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd_q(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn resultant(&self, other: &Self) -> BigInt {
        resultant(self, other)
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let Some(n) = self.degree() else { return BigInt::zero() };
        if n == 0 {
            return BigInt::one();
        }
        let r = resultant(self, &self.derivative()) / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Reduction modulo `p`, leading zeros dropped.
    pub fn mod_p(&self, p: u64) -> FpPoly {
        let m = BigInt::from(p);
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&m);
                    u64::try_from(&r).expect("residue below p")
                })
                .collect(),
        )
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty") / lb;
        let shift = r.len() - b.len();
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &q * c;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn rational_to_primitive(a: &[BigRational]) -> ZPoly {
    let den = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    ZPoly::new(a.iter().map(|c| (c * &den).to_integer()).collect()).primitive_part()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    if m == 0 {
        return f.leading().pow(n as u32);
    }
    if n == 0 {
        return g.leading().pow(m as u32);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, count, deg) in [(f, n, m), (g, m, n)] {
        for i in 0..count {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in poly.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            debug_assert_eq!(poly.coeffs.len(), deg + 1);
            rows.push(row);
        }
    }
    bareiss_det(rows)
}

/// Interpolate the polynomial of degree `<= xs.len() - 1` through the given
/// integer points; fails if the result is not integral.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<ZPoly> {
    // Newton divided differences over Q, then expand.
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    let mut acc: Vec<BigRational> = Vec::new();
    for i in (0..n).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        acc = next;
    }
    acc.iter().all(BigRational::is_integer).then(|| ZPoly::new(acc.iter().map(BigRational::to_integer).collect()))
}

/// `Res_y(g(y), f(x - c*y))`: its roots are `alpha + c*beta` over the roots
/// `alpha` of `f` and `beta` of `g`.
pub fn sum_resultant(f: &ZPoly, g: &ZPoly, c: i64) -> ZPoly {
    let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    let total = df * dg;
    let xs: Vec<BigInt> = (0..=total as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let lin = ZPoly::new(vec![x.clone(), BigInt::from(-c)]);
            resultant(g, &f.compose(&lin))
        })
        .collect();
    interpolate(&xs, &ys).expect("resultant of integer polynomials is integral")
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
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
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(z(&[1089, 0, 38, 0, 1]).to_string(), "x^4 + 38*x^2 + 1089");
        assert_eq!(z(&[-1, 0, 2, 0, 1]).to_string(), "x^4 + 2*x^2 - 1");
        assert_eq!(z(&[0, -1]).to_string(), "-x");
        assert_eq!(ZPoly::default().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = z(&[1, 1]);
        assert_eq!(a.pow(3), z(&[1, 3, 3, 1]));
        assert_eq!(z(&[1, 3, 3, 1]).div_exact(&a), Some(z(&[1, 2, 1])));
        assert_eq!(z(&[1, 3, 3, 2]).div_exact(&a), None);
        assert_eq!(z(&[0, 0, 1]).shift(&BigInt::from(1)), z(&[1, 2, 1]));
        assert_eq!(z(&[6, 4, 2]).primitive_part(), z(&[3, 2, 1]));
        assert_eq!(z(&[-6, -4, -2]).primitive_part(), z(&[3, 2, 1]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = z(&[-1, 0, 1]).mul(&z(&[2, 1]));
        let g = z(&[-1, 0, 1]).mul(&z(&[5, 0, 1]));
        assert_eq!(f.gcd_q(&g), z(&[-1, 0, 1]));
        assert!(f.is_squarefree());
        assert!(!f.mul(&z(&[2, 1])).is_squarefree());
    }

    #[test]
    fn resultant_and_discriminant() {
        // Res(x^2 - 2, x^2 - 3) = prod (a^2 - 3) over a = +-sqrt2 = 1.
        assert_eq!(resultant(&z(&[-2, 0, 1]), &z(&[-3, 0, 1])), BigInt::from(1));
        assert_eq!(z(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(z(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        // x^3 + a x + b: -4a^3 - 27b^2.
        assert_eq!(z(&[1, -3, 0, 1]).discriminant(), BigInt::from(81));
        // Res(f, g) = 0 iff common root.
        assert!(resultant(&z(&[-1, 0, 1]), &z(&[1, 1])).is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<BigInt>> =
            [[0, 2, 1], [3, -1, 4], [5, 0, 2]].iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        // 0*(-2-0) - 2*(6-20) + 1*(0+5) = 33
        assert_eq!(bareiss_det(m), BigInt::from(33));
    }

    #[test]
    fn sum_of_square_roots() {
        let r = sum_resultant(&z(&[-2, 0, 1]), &z(&[-3, 0, 1]), 1);
        assert_eq!(r, z(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = z(&[7, -3, 0, 2, 5]);
        let xs: Vec<BigInt> = (0..5).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), Some(f));
    }

    #[test]
    fn monic_associate_scales_roots() {
        // 2x - 3 has root 3/2; associate x - 3 has root 3.
        assert_eq!(z(&[-3, 2]).monic_associate(), z(&[-3, 1]));
        assert_eq!(z(&[1, 0, 3]).monic_associate(), z(&[3, 0, 1]));
    }
}
