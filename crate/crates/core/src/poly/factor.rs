//! Factorisation in `Z[x]` by Hensel lifting and factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FpPoly, ZPoly};
use crate::padic::{inv_mod, is_odd_prime};

/// Irreducible factors of a non-constant polynomial over `Q`, each primitive
/// with positive leading coefficient, with multiplicity, sorted by degree.
pub fn factor(f: &ZPoly) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let f = f.primitive_part();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    // Peel off repeated factors through gcd(f, f').
    let mut rest = f.clone();
    while rest.degree().unwrap_or(0) > 0 {
        let g = rest.gcd_q(&rest.derivative());
        let sqfree = rest.div_exact(&g).expect("gcd divides").primitive_part();
        out.extend(factor_squarefree(&sqfree));
        rest = g;
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

/// Irreducible over `Q` (and of positive degree).
pub fn is_irreducible(f: &ZPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => f.is_squarefree() && factor_squarefree(&f.primitive_part()).len() == 1,
    }
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&q| is_odd_prime(q))
}

/// Good reduction primes: `p` does not divide the leading coefficient and
/// `f mod p` stays squarefree. Among the first few, keep the one with the
/// fewest modular factors.
fn choose_prime(f: &ZPoly) -> (u64, Vec<FpPoly>) {
    let n = f.degree().expect("non-constant");
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_odd_primes() {
        let fp = f.mod_p(p);
        if fp.degree() != Some(n) || !fp.is_squarefree() {
            continue;
        }
        let fs = fp.factor_squarefree();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a squarefree polynomial has good primes")
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul_mod_big(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn to_big(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn from_big(v: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, v.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue")).collect())
}

/// Lift `F = G*H mod p` (all monic) to `mod p^k`.
fn hensel_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, _, t) = g.xgcd(h);
    debug_assert_eq!(one, FpPoly::one(p));
    let pb = BigInt::from(p);
    let (mut gl, mut hl) = (to_big(g), to_big(h));
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = mul_mod_big(&gl, &hl, &next);
        let diff: Vec<BigInt> = (0..f.len().max(prod.len()))
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = from_big(&diff, p);
        // e = (e s) G + (e t) H; tau = e t mod G, sigma = (e - tau H) / G.
        let tau = e.mul(&t).rem(g);
        let sigma = e.sub(&tau.mul(h)).divrem(g).0;
        let bump = |base: &mut Vec<BigInt>, delta: &FpPoly| {
            for (i, &c) in delta.coeffs().iter().enumerate() {
                if i >= base.len() {
                    base.resize(i + 1, BigInt::zero());
                }
                base[i] += &pj * c;
            }
        };
        bump(&mut gl, &tau);
        bump(&mut hl, &sigma);
        pj = next;
    }
    (gl, hl)
}

/// Lift the monic factorisation `f_monic = prod factors mod p` to `mod p^k`.
fn hensel_multi(f_monic: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![reduce(f_monic, &m)];
    }
    let first = &factors[0];
    let rest = factors[1..].iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (g, h) = hensel_pair(f_monic, first, &rest, p, k);
    let mut out = vec![g];
    out.extend(hensel_multi(&h, &factors[1..], p, k));
    out
}

/// Mignotte-style bound on coefficients of any factor of `f`, times the
/// leading coefficient.
fn factor_bound(f: &ZPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    (BigInt::one() << n) * norm * f.leading().abs()
}

fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return if n == 1 { vec![f.primitive_part()] } else { Vec::new() };
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.primitive_part()];
    }
    let bound = factor_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lc = f.leading();
    let lc_inv = inv_mod(lc.mod_floor(&pb).to_u64().expect("residue"), p).expect("p does not divide lc");
    // lc^{-1} mod p^k by lifting the inverse: x <- x (2 - lc x).
    let mut inv = BigInt::from(lc_inv);
    let mut prec = pb.clone();
    while prec < pk {
        prec = &prec * &prec;
        inv = (&inv * (BigInt::from(2) - &lc * &inv)).mod_floor(&prec);
    }
    let inv = inv.mod_floor(&pk);
    let f_monic: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
    let mut lifted = hensel_multi(&f_monic, &modular, p, k);

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), size) {
            let lc_rest = rest.leading();
            let mut cand = vec![lc_rest.mod_floor(&pk)];
            for &i in &subset {
                cand = mul_mod_big(&cand, &lifted[i], &pk);
            }
            let cand = ZPoly::new(cand.iter().map(|c| sym_mod(c, &pk)).collect()).primitive_part();
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rest.primitive_part());
    out
}

/// All `size`-element index subsets of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else { break };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}
