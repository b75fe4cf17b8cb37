//! Table scans over record collections and the published first-10 lists.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::families::{canonical_d, format_rational, parse_rational, rational_to_u64};
use super::record::{Family, FieldRecord};
use super::report::{check_condition, CriterionReport};
use crate::error::{Error, Result};

/// One published row: family, row parameter, total count in the searched
/// range when given, and the leading passing values of the ordering
/// parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedRow {
    pub family: Family,
    pub row: &'static str,
    pub count: Option<u32>,
    /// Search bound on the ordering parameter, when the row states one.
    pub range_max: Option<u64>,
    pub values: &'static [u64],
    /// True when `values` is the full list of passing parameters up to
    /// `range_max` rather than its first ten.
    pub complete: bool,
}

macro_rules! row {
    ($fam:ident, $row:expr, $count:expr, $max:expr, $complete:expr, [$($v:expr),* $(,)?]) => {
        PublishedRow {
            family: Family::$fam,
            row: $row,
            count: $count,
            range_max: $max,
            values: &[$($v),*],
            complete: $complete,
        }
    };
}

/// p = 3 throughout.
pub const PUBLISHED: &[PublishedRow] = &[
    // Biquadratic k = Q(sqrt m, sqrt -d), 1 <= d <= 10000: m, count, first ten d.
    row!(Biquadratic, "7", Some(75), Some(10000), false, [26, 431, 473, 563, 566, 755, 821, 1055, 1361, 1397]),
    row!(Biquadratic, "10", Some(67), Some(10000), false, [89, 557, 707, 782, 839, 914, 959, 1118, 1142, 1322]),
    row!(Biquadratic, "13", Some(82), Some(10000), false, [329, 491, 527, 794, 905, 989, 1142, 1166, 1397, 1439]),
    row!(Biquadratic, "19", Some(86), Some(10000), false, [110, 170, 329, 491, 515, 593, 839, 983, 1055, 1142]),
    row!(Biquadratic, "22", Some(75), Some(10000), false, [53, 329, 335, 431, 434, 731, 1106, 1313, 1502, 1517]),
    row!(Biquadratic, "31", Some(91), Some(10000), false, [233, 542, 671, 677, 707, 794, 821, 839, 959, 1067]),
    row!(Biquadratic, "34", Some(83), Some(10000), false, [23, 59, 89, 335, 431, 473, 491, 557, 707, 794]),
    row!(Biquadratic, "37", Some(77), Some(10000), false, [29, 170, 182, 335, 497, 665, 1145, 1166, 1169, 1394]),
    row!(Biquadratic, "46", Some(79), Some(10000), false, [83, 89, 170, 431, 497, 563, 593, 695, 755, 905]),
    // Cyclic, f(s, t; x): t (k+ = Q(sqrt(t^2 + 1))), first ten s.
    row!(Cyclic, "3", None, None, false, [43, 103, 166, 214, 367, 397, 403, 415, 535, 553]),
    row!(Cyclic, "3/2", None, None, false, [109, 115, 145, 331, 355, 373, 454, 493, 526, 589]),
    row!(Cyclic, "5/3", None, None, false, [65, 107, 110, 137, 227, 314, 317, 359, 419, 467]),
    row!(Cyclic, "6", None, None, false, [31, 43, 46, 58, 118, 157, 163, 262, 391, 502]),
    row!(Cyclic, "6/5", None, None, false, [223, 253, 307, 355, 367, 463, 493, 589, 655, 730]),
    // Non-Galois k = Q(sqrt(sqrt m - d)), 1 <= d <= 20000: m, all d.
    row!(NonGalois, "7", Some(2), Some(20000), true, [8347, 17338]),
    row!(NonGalois, "10", Some(5), Some(20000), true, [4744, 7381, 8542, 8866, 14995]),
    row!(NonGalois, "13", Some(4), Some(20000), true, [250, 11806, 11914, 13543]),
    row!(NonGalois, "19", Some(6), Some(20000), true, [1027, 1864, 1945, 9001, 11908, 18874]),
    row!(NonGalois, "22", Some(3), Some(20000), true, [7882, 7963, 19411]),
    row!(NonGalois, "31", Some(4), Some(20000), true, [2824, 5740, 11194, 15433]),
    row!(NonGalois, "34", Some(6), Some(20000), true, [760, 3244, 6889, 11290, 13666, 16339]),
    row!(NonGalois, "37", Some(5), Some(20000), true, [685, 5221, 8488, 9460, 13834]),
    row!(NonGalois, "46", Some(5), Some(20000), true, [5887, 8749, 9586, 9883, 17470]),
];

pub const PUBLISHED_PRIME: u64 = 3;

pub fn published_row(family: Family, row: &BigRational) -> Option<&'static PublishedRow> {
    PUBLISHED.iter().find(|r| r.family == family && parse_rational(r.row).is_ok_and(|q| &q == row))
}

/// Which records to scan: one family row at one prime, over a set of
/// ordering-parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct TableQuery {
    pub family: Family,
    pub p: u64,
    pub row: BigRational,
    pub orders: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    /// Ordering parameter as stored in the record.
    pub order: String,
    /// The representative the field is counted under.
    pub canonical: String,
    pub report: CriterionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableScan {
    pub family: Family,
    pub p: u64,
    pub row: String,
    pub checked: usize,
    /// Passing fields by canonical ordering parameter, ascending.
    pub passing: Vec<String>,
    pub count: usize,
    pub entries: Vec<ScanEntry>,
    #[serde(skip)]
    passing_values: Vec<BigRational>,
}

impl TableScan {
    pub fn first_ten(&self) -> &[String] {
        &self.passing[..self.passing.len().min(10)]
    }

    pub fn passing_values(&self) -> &[BigRational] {
        &self.passing_values
    }
}

fn canonical_order(family: Family, row: &BigRational, order: &BigRational) -> BigRational {
    if family == Family::Biquadratic {
        if let (Some(m), Some(d)) = (rational_to_u64(row), rational_to_u64(order)) {
            if let Some(c) = canonical_d(m, d) {
                return BigRational::from_integer(BigInt::from(c));
            }
        }
    }
    order.clone()
}

/// Check every record of the query row, sort the passing fields by their
/// (canonical) ordering parameter and count them once per field.
pub fn table_scan(query: &TableQuery, records: &[FieldRecord]) -> Result<TableScan> {
    if query.family == Family::Custom {
        return Err(Error::InvalidArgument("CUSTOM records have no table ordering".into()));
    }
    let mut by_order: BTreeMap<BigRational, &FieldRecord> = BTreeMap::new();
    for r in records {
        if r.family != query.family || r.p != query.p {
            continue;
        }
        if let Some((row, order)) = r.params.table_key() {
            if row == query.row {
                by_order.entry(order).or_insert(r);
            }
        }
    }
    let wanted: BTreeSet<&BigRational> = query.orders.iter().collect();
    let missing: Vec<String> = wanted
        .iter()
        .filter(|o| !by_order.contains_key(**o))
        .map(|o| {
            let (_, order_name) = query.family.param_names().expect("table family");
            format!("{order_name}={}", format_rational(o))
        })
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingRecords(missing));
    }
    let selected: Vec<(&BigRational, &FieldRecord)> = wanted.iter().map(|&o| (o, by_order[o])).collect();
    let entries: Vec<(BigRational, ScanEntry)> = selected
        .par_iter()
        .map(|&(order, r)| {
            let canonical = canonical_order(query.family, &query.row, order);
            let entry = ScanEntry {
                order: format_rational(order),
                canonical: format_rational(&canonical),
                report: check_condition(r),
            };
            (canonical, entry)
        })
        .collect();
    let passing_values: Vec<BigRational> = entries
        .iter()
        .filter(|(_, e)| e.report.conclusion_zp2)
        .map(|(c, _)| c.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let passing: Vec<String> = passing_values.iter().map(format_rational).collect();
    Ok(TableScan {
        family: query.family,
        p: query.p,
        row: format_rational(&query.row),
        checked: entries.len(),
        count: passing.len(),
        passing,
        entries: entries.into_iter().map(|(_, e)| e).collect(),
        passing_values,
    })
}

/// Agreement of a scan with the published row on the scanned parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedDiff {
    pub row: PublishedRow,
    /// Published values among the scanned parameters.
    pub expected: Vec<u64>,
    /// Published values that the scan confirms.
    pub confirmed: Vec<u64>,
    /// Published values that failed in the scan.
    pub missing: Vec<u64>,
    /// Values that passed in the scan but lie inside the published list's
    /// range without appearing in it.
    pub unexpected: Vec<u64>,
}

impl PublishedDiff {
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

/// Compare with the published row. Values above the largest published
/// first-ten entry carry no claim unless the row is complete.
pub fn compare_with_published(scan: &TableScan) -> Option<PublishedDiff> {
    if scan.p != PUBLISHED_PRIME {
        return None;
    }
    let row = published_row(scan.family, &parse_rational(&scan.row).ok()?)?;
    let scanned: BTreeSet<u64> = scan
        .entries
        .iter()
        .filter_map(|e| parse_rational(&e.canonical).ok().as_ref().and_then(rational_to_u64))
        .collect();
    let passing: BTreeSet<u64> = scan.passing_values.iter().filter_map(rational_to_u64).collect();
    let published: BTreeSet<u64> = row.values.iter().copied().collect();
    let horizon =
        if row.complete { row.range_max.unwrap_or(u64::MAX) } else { row.values.iter().copied().max().unwrap_or(0) };
    let expected: Vec<u64> = published.intersection(&scanned).copied().collect();
    let confirmed: Vec<u64> = expected.iter().copied().filter(|v| passing.contains(v)).collect();
    let missing: Vec<u64> = expected.iter().copied().filter(|v| !passing.contains(v)).collect();
    let unexpected: Vec<u64> = passing.iter().copied().filter(|v| *v <= horizon && !published.contains(v)).collect();
    Some(PublishedDiff { row: *row, expected, confirmed, missing, unexpected })
}

/// Group records by family row and prime, giving one query per group that
/// covers exactly the records present.
pub fn queries_from_records(family: Family, records: &[FieldRecord]) -> Vec<TableQuery> {
    let mut groups: BTreeMap<(u64, BigRational), BTreeSet<BigRational>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.family == family) {
        if let Some((row, order)) = r.params.table_key() {
            groups.entry((r.p, row)).or_default().insert(order);
        }
    }
    groups
        .into_iter()
        .map(|((p, row), orders)| TableQuery { family, p, row, orders: orders.into_iter().collect() })
        .collect()
}
