//! Scalar abstraction shared by every algorithm in the crate.
//!
//! All routines are written against [`Field`], an ordered field with exact
//! arithmetic. Floating point types are deliberately not admitted: the
//! solver compares against zero with `==` and the certificates rely on
//! strict inequalities, neither of which survives rounding.

use std::fmt::{Debug, Display};

use num_traits::Signed;

/// An exactly represented ordered field (in practice `Ratio<BigInt>` or a
/// fixed-width `Ratio<i128>` for small instances).
pub trait Field: Clone + Debug + Display + Ord + Signed + Send + Sync + 'static {}

impl<T> Field for T where T: Clone + Debug + Display + Ord + Signed + Send + Sync + 'static {}

/// Inner product of two equal-length slices.
pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `a - b` componentwise.
pub fn sub<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn scale<T: Field>(a: &[T], factor: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * factor.clone()).collect()
}

pub fn is_zero_vec<T: Field>(a: &[T]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Sum of a sequence of scalars.
pub fn sum<'a, T: Field>(items: impl IntoIterator<Item = &'a T>) -> T {
    items.into_iter().fold(T::zero(), |acc, x| acc + x.clone())
}
