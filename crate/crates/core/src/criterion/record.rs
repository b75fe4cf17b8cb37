//! `FieldRecord`: class-group data for one quartic field, JSON schema 1.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::families::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::poly::ZPoly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Biquadratic,
    Cyclic,
    NonGalois,
    Custom,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Biquadratic => "BIQUADRATIC",
            Family::Cyclic => "CYCLIC",
            Family::NonGalois => "NON_GALOIS",
            Family::Custom => "CUSTOM",
        }
    }

    /// Names of the row and ordering parameters in the tables.
    pub fn param_names(self) -> Option<(&'static str, &'static str)> {
        match self {
            Family::Biquadratic | Family::NonGalois => Some(("m", "d")),
            Family::Cyclic => Some(("t", "s")),
            Family::Custom => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "biquadratic" => Ok(Family::Biquadratic),
            "cyclic" => Ok(Family::Cyclic),
            "nongalois" => Ok(Family::NonGalois),
            "custom" => Ok(Family::Custom),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Family parameters: `(m, d)` for the biquadratic and non-Galois families,
/// rational `(s, t)` for the cyclic family, free-form otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Params {
    Md {
        m: u64,
        d: u64,
    },
    St {
        #[serde(with = "rational")]
        s: BigRational,
        #[serde(with = "rational")]
        t: BigRational,
    },
    Other(serde_json::Map<String, serde_json::Value>),
}

impl Params {
    /// `(row, order)`: `(m, d)` or `(t, s)`.
    pub fn table_key(&self) -> Option<(BigRational, BigRational)> {
        let int = |v: u64| BigRational::from_integer(BigInt::from(v));
        match self {
            Params::Md { m, d } => Some((int(*m), int(*d))),
            Params::St { s, t } => Some((t.clone(), s.clone())),
            Params::Other(_) => None,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Md { m, d } => write!(f, "m={m} d={d}"),
            Params::St { s, t } => write!(f, "s={} t={}", format_rational(s), format_rational(t)),
            Params::Other(map) => write!(f, "{}", serde_json::Value::Object(map.clone())),
        }
    }
}

mod rational {
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        match (q.is_integer(), i64::try_from(q.to_integer())) {
            (true, Ok(v)) => s.serialize_i64(v),
            _ => s.serialize_str(&format_rational(q)),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(D::Error::custom),
            serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected a rational, got {other}"))),
        }
    }
}

/// `None` is written as `"UNKNOWN"`; `"UNKNOWN"`, `null` and a missing key
/// all read back as `None`.
mod unknown {
    use serde::de::{DeserializeOwned, Error as _};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Serialize, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => x.serialize(s),
            None => s.serialize_str("UNKNOWN"),
        }
    }

    pub fn deserialize<'de, T: DeserializeOwned, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Null => Ok(None),
            serde_json::Value::String(s) if s == "UNKNOWN" => Ok(None),
            other => serde_json::from_value(other).map(Some).map_err(D::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecord {
    pub family: Family,
    pub params: Params,
    /// Integer coefficients, leading coefficient first.
    pub defining_poly: Vec<i64>,
    pub p: u64,
    pub is_cm: bool,
    #[serde(default, with = "unknown")]
    pub splits_completely: Option<bool>,
    /// Abelian invariants of the p-part of the class group of `k`.
    #[serde(default, with = "unknown")]
    pub clgroup_k: Option<Vec<u64>>,
    /// The same for the first layer of the cyclotomic Z_p-extension.
    #[serde(default, with = "unknown")]
    pub clgroup_k_cy1: Option<Vec<u64>>,
    #[serde(default, with = "unknown")]
    pub clgroup_kplus_cy1_trivial: Option<bool>,
    #[serde(default, with = "unknown")]
    pub vp_hk: Option<u32>,
    pub grh_assumed: bool,
    #[serde(default)]
    pub backend: String,
    pub schema: u32,
}

fn log_p(n: u64, p: u64) -> Option<u32> {
    if p < 2 || n < p {
        return None;
    }
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some(e)
}

fn is_prime(n: u64) -> bool {
    n == 2 || crate::padic::is_odd_prime(n)
}

impl FieldRecord {
    pub fn polynomial(&self) -> ZPoly {
        let desc: Vec<BigInt> = self.defining_poly.iter().map(|&c| BigInt::from(c)).collect();
        ZPoly::from_descending(&desc)
    }

    pub fn rank_k(&self) -> Option<usize> {
        self.clgroup_k.as_ref().map(Vec::len)
    }

    pub fn rank_k_cy1(&self) -> Option<usize> {
        self.clgroup_k_cy1.as_ref().map(Vec::len)
    }

    /// Checks the schema contract and puts the invariants in ascending
    /// divisibility order.
    pub fn validate(&mut self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRecord(msg));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("schema {} is not supported (expected {SCHEMA_VERSION})", self.schema));
        }
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.defining_poly.len() != 5 || self.defining_poly[0] == 0 {
            return bad(format!("defining_poly must have degree 4, got {:?}", self.defining_poly));
        }
        let params_ok = matches!(
            (self.family, &self.params),
            (Family::Biquadratic | Family::NonGalois, Params::Md { .. })
                | (Family::Cyclic, Params::St { .. })
                | (Family::Custom, _)
        );
        if !params_ok {
            return bad(format!("params {} do not fit family {}", self.params, self.family));
        }
        let p = self.p;
        for (name, group) in [("clgroup_k", &mut self.clgroup_k), ("clgroup_k_cy1", &mut self.clgroup_k_cy1)] {
            let Some(g) = group else { continue };
            if let Some(&c) = g.iter().find(|&&c| log_p(c, p).is_none()) {
                return bad(format!("{name}: {c} is not a positive power of {p}"));
            }
            let ascending = g.windows(2).all(|w| w[0] <= w[1]);
            let descending = g.windows(2).all(|w| w[0] >= w[1]);
            if !ascending && !descending {
                return bad(format!("{name}: {g:?} is not in divisibility order"));
            }
            g.sort_unstable();
        }
        if let (Some(g), Some(v)) = (&self.clgroup_k, self.vp_hk) {
            let total: u32 = g.iter().filter_map(|&c| log_p(c, p)).sum();
            if total != v {
                return bad(format!("vp_hk = {v} but clgroup_k {g:?} has order p^{total}"));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{} {} p={}", self.family, self.params, self.p)
    }
}

/// Parse a record file: one JSON array of records, or a sequence of
/// record objects. Every record is validated.
pub fn parse_records(text: &str) -> Result<Vec<FieldRecord>> {
    let mut out = Vec::new();
    for value in serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>() {
        let value = value.map_err(|e| Error::Parse(e.to_string()))?;
        let items = match value {
            serde_json::Value::Array(items) => items,
            obj => vec![obj],
        };
        for item in items {
            let mut r: FieldRecord = serde_json::from_value(item).map_err(|e| Error::InvalidRecord(e.to_string()))?;
            r.validate()?;
            out.push(r);
        }
    }
    Ok(out)
}

pub fn read_records(path: &Path) -> Result<Vec<FieldRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_records(&text)
}
