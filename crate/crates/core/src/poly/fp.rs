//! Polynomials over `F_p` and their factorisation (Cantor-Zassenhaus).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::padic::{add_mod, inv_mod, mul_mod, sub_mod};

/// Polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| add_mod(get(&self.coeffs, i), get(&other.coeffs, i), self.p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| sub_mod(get(&self.coeffs, i), get(&other.coeffs, i), self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) if !self.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let d = divisor.degree().expect("division by zero polynomial");
        let inv = inv_mod(divisor.leading(), p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (0..quot.len()).rev() {
            let q = mul_mod(rem[i + d], inv, p);
            if q != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = sub_mod(rem[i + j], mul_mod(q, b, p), p);
                }
            }
            quot[i] = q;
        }
        rem.truncate(d);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.leading(), p).unwrap_or(1);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree().is_some_and(|d| d == 0 || self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self) -> Vec<FpPoly> {
        let f = self.monic();
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ 0x5eed);
        for (d, part) in distinct_degree(&f) {
            equal_degree(&part, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
        out
    }

    /// Roots in `F_p`, sorted, without multiplicity.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = self.monic();
        let xp = Self::x(self.p).powmod(self.p, &f);
        let linear_part = f.gcd(&xp.sub(&Self::x(self.p)));
        let mut factors = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ 0x600d);
        if linear_part.degree().unwrap_or(0) > 0 {
            equal_degree(&linear_part, 1, &mut rng, &mut factors);
        }
        let mut roots: Vec<u64> = factors.iter().map(|l| sub_mod(0, l.coeffs[0], self.p)).collect();
        roots.sort_unstable();
        roots
    }
}

/// Pairs `(d, product of all degree-d irreducible factors)`.
fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut d = 0;
    while let Some(n) = rest.degree() {
        if n < 2 * (d + 1) {
            if n > 0 {
                out.push((n, rest.clone()));
            }
            break;
        }
        d += 1;
        h = h.powmod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    out
}

/// Split `f`, a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let p = f.p;
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.monic());
        return;
    }
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut frob = a.rem(f);
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = frob.powmod(p, f);
            norm = norm.mul(&frob).rem(f);
        }
        let b = norm.powmod((p - 1) / 2, f);
        let g = f.gcd(&b.sub(&FpPoly::one(p)));
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let h = f.divrem(&g).0;
                equal_degree(&g, d, rng, out);
                equal_degree(&h, d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(fs: &[FpPoly]) -> FpPoly {
        fs.iter().fold(FpPoly::one(fs[0].p), |a, b| a.mul(b))
    }

    #[test]
    fn x4_plus_1_mod_3_is_two_quadratics() {
        let f = fp(3, &[1, 0, 0, 0, 1]);
        let fs = f.factor_squarefree();
        assert_eq!(fs.iter().map(|g| g.degree().unwrap()).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(product(&fs), f);
        assert!(f.roots().is_empty());
    }

    #[test]
    fn factors_multiply_back() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            // x^p - x splits into all linear factors.
            let mut c = vec![0u64; p as usize + 1];
            c[1] = p - 1;
            c[p as usize] = 1;
            let f = FpPoly::new(p, c);
            let fs = f.factor_squarefree();
            assert_eq!(fs.len(), p as usize);
            assert_eq!(product(&fs), f);
            assert_eq!(f.roots(), (0..p).collect::<Vec<_>>());
        }
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^3 - x - 1 is irreducible mod 3 (Artin-Schreier).
        let f = fp(3, &[2, 2, 0, 1]);
        assert_eq!(f.factor_squarefree(), vec![f.clone()]);
    }

    #[test]
    fn xgcd_identity() {
        let a = fp(7, &[1, 2, 3, 1]);
        let b = fp(7, &[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, FpPoly::one(7));
    }

    #[test]
    fn brute_force_roots_agree() {
        let f = fp(13, &[6, 11, 6, 1, 0, 3]);
        let brute: Vec<u64> = (0..13).filter(|&x| f.eval(x) == 0).collect();
        assert_eq!(f.roots(), brute);
    }
}
