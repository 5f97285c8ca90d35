//! Exact coefficients: Q(i, sqrt 2) and rational functions in the formal
//! parameters `Delta`, `alpha`, `LambdaSym`.

mod base;
mod parse;
mod poly;
mod scalar;

pub use base::BaseScalar;
pub use poly::{Mono, Param, ParamPoly};
pub use scalar::{bind, q, Scalar};

/// `op` selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Binary arithmetic with the division-by-zero error surfaced.
pub fn scalar_arith(x: &Scalar, y: &Scalar, op: ArithOp) -> crate::Result<Scalar> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}
