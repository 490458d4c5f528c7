//! Inclusions among Hardy spaces `H^q` and weighted Bergman spaces `A^p_α`.
//!
//! The functions are generic so the decision can be made in exact rational
//! arithmetic as well as in `f64`.

use core::ops::{Add, Div, Mul};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Numeric types the inclusion rules are evaluated in.
pub trait Scalar:
    Copy + PartialOrd + Zero + One + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Copy + PartialOrd + Zero + One + Add<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

fn check_weight<T: Scalar>(name: &str, a: T) -> Result<()> {
    if a + T::one() > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!(
            "{name} must exceed -1"
        )))
    }
}

fn check_exponent<T: Scalar>(name: &str, p: T) -> Result<()> {
    if p > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!(
            "{name} must be positive"
        )))
    }
}

/// Sufficient condition `q ≥ p / (α + 2)` for `H^q ⊂ A^p_α`.
pub fn inclusion_hardy_in_bergman<T: Scalar>(q: T, p: T, alpha: T) -> Result<bool> {
    check_exponent("q", q)?;
    check_exponent("p", p)?;
    check_weight("alpha", alpha)?;
    let two = T::one() + T::one();
    Ok(q >= p / (alpha + two))
}

/// Exact criterion for `A^p_α ⊂ A^q_β`: with `p = q` iff `α ≤ β`; with
/// `p > q` iff `(α+1)/p < (β+1)/q`; with `p < q` iff `(α+2)/p ≤ (β+2)/q`.
pub fn inclusion_bergman<T: Scalar>(p: T, alpha: T, q: T, beta: T) -> Result<bool> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    check_weight("alpha", alpha)?;
    check_weight("beta", beta)?;
    let one = T::one();
    let two = one + one;
    Ok(if p == q {
        alpha <= beta
    } else if p > q {
        (alpha + one) / p < (beta + one) / q
    } else {
        (alpha + two) / p <= (beta + two) / q
    })
}
