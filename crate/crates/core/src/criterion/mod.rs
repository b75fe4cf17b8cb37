//! Quartic CM-field families and the class-group criterion for
//! `X(k^cy_inf) = Z_p^2` and `X(k~) != 0`.
//!
//! Class-group data arrives as [`FieldRecord`]s produced elsewhere; this
//! module builds the defining polynomials, tests splitting, and evaluates
//! the hypotheses record by record.

mod families;
mod fields;
mod record;
mod report;
mod tables;

pub use families::{
    canonical_d, embeds_sqrt, format_rational, is_squarefree_int, parse_rational, poly_biquadratic, poly_cyclic,
    poly_nongalois,
};
pub use fields::{compositum_poly, cyclotomic_first_layer_poly, splits_completely, MAX_SHIFT};
pub use record::{parse_records, read_records, Family, FieldRecord, Params, SCHEMA_VERSION};
pub use report::{check_condition, check_okano, CriterionReport, Hypothesis, HypothesisResult, Status};
pub use tables::{
    compare_with_published, published_row, queries_from_records, table_scan, PublishedDiff, PublishedRow, ScanEntry,
    TableQuery, TableScan, PUBLISHED, PUBLISHED_PRIME,
};
