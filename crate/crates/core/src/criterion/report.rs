use std::fmt;

use serde::Serialize;

use super::record::{Family, FieldRecord, Params};
use crate::error::{Error, Result};
use crate::padic::is_odd_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    fn from_known(v: Option<bool>) -> Self {
        match v {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Unknown,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Hypothesis {
    #[serde(rename = "i")]
    OddPrime,
    #[serde(rename = "ii")]
    SplitsCompletely,
    #[serde(rename = "iii")]
    Cm,
    #[serde(rename = "iv")]
    RealLayerTrivial,
    #[serde(rename = "v")]
    RankK,
    #[serde(rename = "vi")]
    RankKCy1,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 6] = [
        Hypothesis::OddPrime,
        Hypothesis::SplitsCompletely,
        Hypothesis::Cm,
        Hypothesis::RealLayerTrivial,
        Hypothesis::RankK,
        Hypothesis::RankKCy1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Hypothesis::OddPrime => "i",
            Hypothesis::SplitsCompletely => "ii",
            Hypothesis::Cm => "iii",
            Hypothesis::RealLayerTrivial => "iv",
            Hypothesis::RankK => "v",
            Hypothesis::RankKCy1 => "vi",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Hypothesis::OddPrime => "p is an odd prime",
            Hypothesis::SplitsCompletely => "p splits completely in k",
            Hypothesis::Cm => "k is a quartic CM-field",
            Hypothesis::RealLayerTrivial => "X((k+)^cy_1) = 0",
            Hypothesis::RankK => "rank_p X(k) = 2",
            Hypothesis::RankKCy1 => "rank_p X(k^cy_1) = 2",
        }
    }

    pub fn evaluate(self, r: &FieldRecord) -> Status {
        match self {
            Hypothesis::OddPrime => Status::from_known(Some(is_odd_prime(r.p))),
            Hypothesis::SplitsCompletely => Status::from_known(r.splits_completely),
            Hypothesis::Cm => Status::from_known(Some(r.is_cm)),
            Hypothesis::RealLayerTrivial => Status::from_known(r.clgroup_kplus_cy1_trivial),
            Hypothesis::RankK => Status::from_known(r.rank_k().map(|n| n == 2)),
            Hypothesis::RankKCy1 => Status::from_known(r.rank_k_cy1().map(|n| n == 2)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisResult {
    pub id: Hypothesis,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub family: Family,
    pub params: Params,
    pub p: u64,
    pub hypotheses: Vec<HypothesisResult>,
    /// `X(k^cy_inf) = Z_p^2`.
    pub conclusion_zp2: bool,
    /// `X(k~) != 0`.
    pub conclusion_nontrivial_xtilde: bool,
    /// The full criterion is not established but the rank-2 criterion for
    /// `X(k~) != 0` alone applies.
    pub okano_only: bool,
    pub grh_assumed: bool,
    pub backend: String,
}

impl CriterionReport {
    pub fn status(&self, h: Hypothesis) -> Status {
        self.hypotheses.iter().find(|r| r.id == h).map_or(Status::Unknown, |r| r.status)
    }

    pub fn all_pass(&self) -> bool {
        self.hypotheses.iter().all(|r| r.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<Hypothesis> {
        self.hypotheses.iter().find(|r| r.status == Status::Fail).map(|r| r.id)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grh = if self.grh_assumed { " (GRH)" } else { "" };
        writeln!(f, "{} {} p={}{grh}", self.family, self.params, self.p)?;
        for r in &self.hypotheses {
            writeln!(f, "  ({}) {}: {}", r.id.id(), r.id.description(), r.status)?;
        }
        writeln!(f, "  X(k^cy_inf) = Z_p^2: {}", self.conclusion_zp2)?;
        writeln!(f, "  X(k~) != 0: {}", self.conclusion_nontrivial_xtilde)?;
        write!(f, "  okano_only: {}", self.okano_only)
    }
}

fn okano_hypotheses(r: &FieldRecord) -> Result<()> {
    let failing: Vec<&str> = [Hypothesis::OddPrime, Hypothesis::SplitsCompletely, Hypothesis::Cm]
        .into_iter()
        .filter(|h| h.evaluate(r) != Status::Pass)
        .map(Hypothesis::description)
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(failing.join("; ")))
    }
}

/// `rank_p X(k) >= 2`, which forces `X(k~) != 0`.
pub fn check_okano(r: &FieldRecord) -> Result<bool> {
    okano_hypotheses(r)?;
    r.rank_k().map(|n| n >= 2).ok_or_else(|| Error::InvalidRecord("clgroup_k is UNKNOWN".into()))
}

/// Evaluate every hypothesis; the conclusions hold only when all pass.
pub fn check_condition(r: &FieldRecord) -> CriterionReport {
    let hypotheses: Vec<HypothesisResult> =
        Hypothesis::ALL.iter().map(|&h| HypothesisResult { id: h, status: h.evaluate(r) }).collect();
    let all = hypotheses.iter().all(|h| h.status == Status::Pass);
    let okano = !all && check_okano(r) == Ok(true);
    CriterionReport {
        family: r.family,
        params: r.params.clone(),
        p: r.p,
        hypotheses,
        conclusion_zp2: all,
        conclusion_nontrivial_xtilde: all,
        okano_only: okano,
        grh_assumed: r.grh_assumed,
        backend: r.backend.clone(),
    }
}
