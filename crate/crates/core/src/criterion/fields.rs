//! Prime splitting, the first cyclotomic layer, and composita.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{ensure_odd_prime, mul_mod};
use crate::poly::{count_qp_roots, is_irreducible, sum_resultant, ZPoly};

/// Shifts `c` tried by [`compositum_poly`].
pub const MAX_SHIFT: i64 = 64;

/// Whether `p` splits completely in `Q[x]/(f)`: `f` has `deg f` distinct
/// roots in `Q_p`. `None` (indeterminate) when `f` is not squarefree.
pub fn splits_completely(f: &ZPoly, p: u64) -> Option<bool> {
    let n = f.degree()?;
    count_qp_roots(f, p).map(|r| r == n)
}

/// Minimal polynomial of the degree-`p` subfield of `Q(zeta_{p^2})`, from
/// the Gaussian periods of the index-`p` subgroup of `(Z/p^2)^*`.
pub fn cyclotomic_first_layer_poly(p: u64) -> Result<ZPoly> {
    ensure_odd_prime(p)?;
    let n = (p * p) as usize;
    let sub: Vec<u64> = (1..p * p).filter(|&a| a % p != 0 && pow_mod_small(a, p - 1, p * p) == 1).collect();
    debug_assert_eq!(sub.len() as u64, p - 1);
    let ring = CyclotomicRing::new(p);
    // eta_j = sum over h in H of zeta^(h (1 + j p)); the 1 + jp represent G/H.
    let periods: Vec<Vec<BigInt>> = (0..p)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            for &h in &sub {
                e[(mul_mod(h, 1 + j * p, p * p)) as usize] += 1;
            }
            ring.reduce(e)
        })
        .collect();
    // prod (X - eta_j), coefficients in Z[zeta], lowest degree first.
    let mut poly: Vec<Vec<BigInt>> = vec![ring.one()];
    for eta in &periods {
        let mut next = vec![ring.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = ring.add(&next[i + 1], c);
            next[i] = ring.sub(&next[i], &ring.mul(c, eta));
        }
        poly = next;
    }
    let coeffs = poly
        .into_iter()
        .map(|c| ring.as_integer(&c).expect("symmetric functions of the periods are rational"))
        .collect();
    Ok(ZPoly::new(coeffs))
}

fn pow_mod_small(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// `Z[zeta_{p^2}]` with elements stored as vectors of length `p(p-1)`.
struct CyclotomicRing {
    p: usize,
}

impl CyclotomicRing {
    fn new(p: u64) -> Self {
        Self { p: p as usize }
    }

    fn dim(&self) -> usize {
        self.p * (self.p - 1)
    }

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.dim()]
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    /// Reduce a vector of length `p^2` (exponents taken mod `p^2`) using
    /// `Phi_{p^2}(x) = Phi_p(x^p)`: `x^(p(p-1)+r) = -sum_{i<p-1} x^(ip+r)`.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let p = self.p;
        let d = self.dim();
        for r in 0..p {
            let c = std::mem::take(&mut v[d + r]);
            if c.is_zero() {
                continue;
            }
            for i in 0..p - 1 {
                v[i * p + r] -= &c;
            }
        }
        v.truncate(d);
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.p * self.p;
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[(i + j) % n] += x * y;
            }
        }
        self.reduce(out)
    }

    fn as_integer(&self, a: &[BigInt]) -> Option<BigInt> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }
}

/// Minimal polynomial of `theta_f + c theta_g` for the least shift
/// `0 <= c <= MAX_SHIFT` giving a squarefree resultant of full degree.
///
/// Coprime degrees force linear disjointness; otherwise the resultant must
/// also be irreducible.
pub fn compositum_poly(f: &ZPoly, g: &ZPoly) -> Result<ZPoly> {
    if !is_irreducible(f) || !is_irreducible(g) {
        return Err(Error::Reducible);
    }
    let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    for c in 0..=MAX_SHIFT {
        let r = sum_resultant(f, g, c).primitive_part();
        if r.degree() != Some(df * dg) || !r.is_squarefree() {
            continue;
        }
        if df.gcd(&dg) == 1 || is_irreducible(&r) {
            return Ok(r);
        }
        // A squarefree norm that factors means f splits over Q(theta_g).
        return Err(Error::NotDisjoint);
    }
    Err(Error::NotDisjoint)
}
