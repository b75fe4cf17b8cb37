//! Exact p-adic power-series arithmetic and Iwasawa-invariant tooling for
//! quartic CM-fields.
//!
//! * [`padic`]: residues of `Z_p` with explicit precision.
//! * [`series`]: truncated `Z_p[[T]]`, Weierstrass preparation, mu/lambda.
//! * [`lemma31`]: quotient dimensions of `Z_p[[S,T]]/I_alpha` and the
//!   two-sided bound `min(dim I_alpha, dim I_-alpha) <= 1`.
//! * [`iwasawa`]: fitting `v_p(h_n) = lambda n + mu p^n + nu`.
//! * [`criterion`]: quartic field families and the class-group criterion.
//! * [`poly`]: integer polynomial utilities backing the criterion module.
//! * [`cli`]: the `iwasawa` command line.

pub mod cli;
pub mod criterion;
pub mod error;
pub mod iwasawa;
pub mod lemma31;
pub mod padic;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use padic::{binom_zp, PadicApprox, UnitSplit, Valuation};
pub use series::{Mu, MuLambda, PadicPowerSeries, WeierstrassData};
