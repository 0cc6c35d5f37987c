//! Exact integer Laurent polynomials in named variables.

mod coeff;
mod laurent;
mod text;

pub use coeff::Coeff;
pub use laurent::{Exps, LaurentPoly, Ring};
pub use text::{format_scaled, parse_scaled};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("substitution image must be a single term with coefficient ±1")]
    NotMonomial,
    #[error("operation needs a one-variable ring")]
    NotUnivariate,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad polynomial JSON: {0}")]
    Json(String),
}

/// `δ = -A^2 - A^-2`, the loop value of the bracket.
pub fn delta() -> LaurentPoly {
    let r = Ring::a();
    LaurentPoly::monomial(&r, &[2], -1) + LaurentPoly::monomial(&r, &[-2], -1)
}

/// `A^k` in the bracket ring.
pub fn a_pow(k: i32) -> LaurentPoly {
    LaurentPoly::monomial(&Ring::a(), &[k], 1)
}
