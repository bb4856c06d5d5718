use num_traits::{One, Zero};

use super::{KernelError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One exact rational operation. Division by zero is an error rather than a
/// panic so callers can surface it.
pub fn rational_arith(a: &Rational, b: &Rational, op: RationalOp) -> Result<Rational, KernelError> {
    Ok(match op {
        RationalOp::Add => a + b,
        RationalOp::Sub => a - b,
        RationalOp::Mul => a * b,
        RationalOp::Div => {
            if b.is_zero() {
                return Err(KernelError::DivisionByZero);
            }
            a / b
        }
    })
}

/// `p` when the denominator is 1, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
