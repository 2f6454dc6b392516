//! Exact-arithmetic engine for verifying q-hypergeometric congruences modulo
//! powers of cyclotomic polynomials, and for checking the hypergeometric
//! transformation and summation identities behind them.

pub mod campaigns;
pub mod congruence;
pub mod cyclotomic;
mod dense;
pub mod error;
pub mod laurent;
pub mod poly;
pub mod qseries;
pub mod rat;
pub mod ratfunc;
pub mod transforms;

pub use congruence::{check_equal, check_zero, CongruenceReport, Verdict};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use poly::Poly;
pub use rat::BigRat;
pub use ratfunc::RatFunc;
