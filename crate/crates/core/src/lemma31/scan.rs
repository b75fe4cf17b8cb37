//! Seeded random scans over `(f, alpha)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{exponent_precision, lemma31_min, Branch, Dim, IAlphaInstance};
use crate::error::Result;
use crate::padic::{ensure_odd_prime, PadicApprox};
use crate::series::{PadicPowerSeries, DEFAULT_PRECISION, DEFAULT_WINDOW};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub p: u64,
    pub count: usize,
    pub seed: u64,
    pub precision: u32,
    pub window: usize,
}

impl ScanConfig {
    pub fn new(p: u64, count: usize, seed: u64) -> Self {
        Self { p, count, seed, precision: DEFAULT_PRECISION, window: DEFAULT_WINDOW }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, p: u64, modulus: u64) -> u64 {
    loop {
        let x = rng.gen_range(1..modulus);
        if x % p != 0 {
            return x;
        }
    }
}

/// `f = p^mu * g * U` with `mu in {0, 1}`, `g` distinguished of degree
/// `0..=5`, `U` a dense random unit; `alpha = p^u * unit` with `u` uniform in
/// `{0, 1, 2}`. The truncation of `f` to the window is taken as the exact
/// instance.
pub fn random_instance(rng: &mut ChaCha8Rng, p: u64, precision: u32, window: usize) -> Result<IAlphaInstance> {
    let modulus = crate::padic::checked_pow(p, precision)?;
    let mu = rng.gen_range(0..=1u32);
    let lambda = rng.gen_range(0..=5usize);

    let mut g = vec![0u64; lambda + 1];
    for c in g.iter_mut().take(lambda) {
        *c = (p * rng.gen_range(0..modulus / p)) % modulus;
    }
    g[lambda] = 1;
    let mut u: Vec<u64> = (0..window).map(|_| rng.gen_range(0..modulus)).collect();
    u[0] = random_unit(rng, p, modulus);

    let g = PadicPowerSeries::new(p, precision, window, &g, true)?;
    let u = PadicPowerSeries::new(p, precision, window, &u, false)?;
    let scale = PadicApprox::new(p, p.pow(mu), precision)?;
    let f = g.mul(&u)?.scalar_mul(&scale)?.into_exact();

    let alpha_prec = exponent_precision(&f);
    let v = rng.gen_range(0..=2u32);
    let unit_mod = crate::padic::checked_pow(p, alpha_prec - v)?;
    let unit = random_unit(rng, p, unit_mod);
    let alpha = PadicApprox::new(p, unit * p.pow(v), alpha_prec)?;
    IAlphaInstance::new(f, alpha)
}

/// Deterministic per-instance generator: one ChaCha stream per index.
pub(crate) fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// One line of the scan report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub branch: Option<Branch>,
    pub dim_plus: Dim,
    pub dim_minus: Dim,
    pub certified_plus: bool,
    pub certified_minus: bool,
    pub min_le_1: bool,
}

impl ScanRow {
    /// Column order: index, branch, dim(+alpha), dim(-alpha), certified(+),
    /// certified(-), min_le_1.
    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.index,
            self.branch.map_or("UNCERTIFIED", |b| b.tag()),
            self.dim_plus,
            self.dim_minus,
            self.certified_plus,
            self.certified_minus,
            self.min_le_1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub p: u64,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn violations(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| !r.min_le_1)
    }

    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.passed as f64 / self.total as f64
        }
    }
}

/// Run `count` random instances in parallel; rows come back in index order.
pub fn run_scan(config: &ScanConfig) -> Result<ScanReport> {
    ensure_odd_prime(config.p)?;
    let rows: Result<Vec<ScanRow>> = (0..config.count)
        .into_par_iter()
        .map(|index| {
            let mut rng = instance_rng(config.seed, index);
            let inst = random_instance(&mut rng, config.p, config.precision, config.window)?;
            let out = lemma31_min(&inst)?;
            Ok(ScanRow {
                index,
                branch: out.plus.branch,
                dim_plus: out.plus.dim,
                dim_minus: out.minus.dim,
                certified_plus: out.plus.certified,
                certified_minus: out.minus.certified,
                min_le_1: out.min_le_1,
            })
        })
        .collect();
    let rows = rows?;
    let passed = rows.iter().filter(|r| r.min_le_1).count();
    Ok(ScanReport { p: config.p, seed: config.seed, total: rows.len(), passed, rows })
}
