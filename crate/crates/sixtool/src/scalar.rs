//! Exact integer scalars: i32/i64/i128 for small fixed-width work,
//! `BigInt` for unbounded arithmetic.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// An exact integer ring element. All linear algebra in this crate is
/// generic over this trait; the crate-root aliases pin it to `BigInt`.
pub trait Scalar:
    Integer
    + Signed
    + ToPrimitive
    + Clone
    + From<i64>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + ToPrimitive
        + Clone
        + From<i64>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}
