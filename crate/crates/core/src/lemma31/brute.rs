//! Independent oracle: the quotient dimension by linear algebra in the
//! truncated two-variable algebra `F_p[S,T] / (S^D, T^D)`.
//!
//! Nothing here goes through the power-series layer. The ideal is the span
//! of all monomial multiples of the two reduced generators inside the box,
//! and the dimension is `D^2` minus the rank of that span.

use crate::error::{Error, Result};
use crate::padic::{ensure_odd_prime, inv_mod};

/// `binom(n, k) mod p` by Lucas' theorem.
fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut c = 1u64;
        for j in 0..kd {
            c = c * ((nd - j) % p) % p;
            c = c * inv_mod((j + 1) % p, p).expect("j + 1 < p") % p;
        }
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Sparse row: `(column, coefficient)` pairs with the pivot first.
type Row = Vec<(usize, u64)>;

struct Echelon {
    p: u64,
    pivots: Vec<Option<Row>>,
    rank: usize,
    work: Vec<u64>,
}

impl Echelon {
    fn new(p: u64, cols: usize) -> Self {
        Self { p, pivots: vec![None; cols], rank: 0, work: vec![0; cols] }
    }

    /// Reduce the vector in `self.work` (nonzero only at indices `<= top`)
    /// against the pivots, keeping it as a new pivot if it survives.
    fn insert_work(&mut self, top: usize) {
        let p = self.p;
        let mut idx = top + 1;
        while idx > 0 {
            idx -= 1;
            let c = self.work[idx];
            if c == 0 {
                continue;
            }
            match &self.pivots[idx] {
                Some(row) => {
                    for &(j, v) in row {
                        self.work[j] = (self.work[j] + p - c * v % p) % p;
                    }
                }
                None => {
                    let inv = inv_mod(c, p).expect("nonzero residue");
                    let row: Row =
                        (0..=idx).rev().filter(|&j| self.work[j] != 0).map(|j| (j, self.work[j] * inv % p)).collect();
                    for j in 0..=idx {
                        self.work[j] = 0;
                    }
                    self.pivots[idx] = Some(row);
                    self.rank += 1;
                    return;
                }
            }
        }
    }
}

/// Dense generator on the `D x D` box; `coeffs[s][t]` multiplies `S^s T^t`.
type BoxPoly = Vec<Vec<u64>>;

/// `dim F_p[S,T] / (g1, g2, S^D, T^D)` for
/// `g1 = (1+S)^r (1+T) - 1`, `g2 = S - f(T)`, with `f` reduced mod `p`.
pub fn truncated_quotient_dim(f_mod_p: &[u64], r: u64, p: u64, d: usize) -> usize {
    let mut g1: BoxPoly = vec![vec![0; d]; d];
    for (s, row) in g1.iter_mut().enumerate() {
        let c = binom_mod_p(r, s as u64, p);
        row[0] = c;
        if d > 1 {
            row[1] = c;
        }
    }
    g1[0][0] = (g1[0][0] + p - 1) % p;

    let mut g2: BoxPoly = vec![vec![0; d]; d];
    if d > 1 {
        g2[1][0] = 1;
    }
    for (t, &c) in f_mod_p.iter().enumerate().take(d) {
        g2[0][t] = (g2[0][t] + p - c % p) % p;
    }

    let cols = d * d;
    let mut ech = Echelon::new(p, cols);
    // The sparse S - f multiples first, so later pivots stay short.
    for gen in [&g2, &g1] {
        let terms: Vec<(usize, usize, u64)> = gen
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().map(move |(t, &c)| (s, t, c)))
            .filter(|&(_, _, c)| c != 0)
            .collect();
        for a in 0..d {
            for b in 0..d {
                let mut top = None;
                for &(s, t, c) in &terms {
                    if s + a < d && t + b < d {
                        let idx = (s + a) * d + (t + b);
                        ech.work[idx] = c;
                        top = Some(top.map_or(idx, |m: usize| m.max(idx)));
                    }
                }
                if let Some(top) = top {
                    ech.insert_work(top);
                }
            }
        }
    }
    cols - ech.rank
}

/// Quotient dimension of `I_alpha` for an exact integer polynomial `f` and an
/// integer `alpha`, reported only when it is stable under `D -> D + 4` and
/// `K -> K + 1`.
///
/// `(1+S)^(p^K) = 1 + S^(p^K) mod p`, so once `p^K > D + 4` the exponent can
/// be reduced modulo `p^K` without changing anything inside the box.
pub fn brute_force_dim(f: &[i64], alpha: i64, p: u64, d: usize) -> Result<usize> {
    ensure_odd_prime(p)?;
    if d == 0 {
        return Err(Error::InvalidArgument("degree bound must be positive".into()));
    }
    let f_mod_p: Vec<u64> = f.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect();
    let mut k = 1u32;
    while (p as u128).pow(k) <= (d + 4) as u128 {
        k += 1;
    }
    let reduce = |k: u32| (alpha as i128).rem_euclid((p as i128).pow(k)) as u64;

    let base = truncated_quotient_dim(&f_mod_p, reduce(k), p, d);
    let wider = truncated_quotient_dim(&f_mod_p, reduce(k), p, d + 4);
    let deeper = truncated_quotient_dim(&f_mod_p, reduce(k + 1), p, d);
    if base == wider && base == deeper {
        Ok(base)
    } else {
        Err(Error::Unstable(format!("D={d}: {base}, D={}: {wider}, K={}: {deeper}", d + 4, k + 1)))
    }
}
