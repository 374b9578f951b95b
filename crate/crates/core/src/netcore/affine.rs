use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::EPS;

/// An affine function `slope * lambda + intercept` of the parameter, or the
/// constant `+inf` when `infinite` is set.
///
/// Used for arc capacities, parametric flows and vertex excesses alike.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineFn {
    pub slope: f64,
    pub intercept: f64,
    pub infinite: bool,
}

impl AffineFn {
    pub const ZERO: AffineFn = AffineFn { slope: 0.0, intercept: 0.0, infinite: false };
    pub const INFINITE: AffineFn = AffineFn { slope: 0.0, intercept: 0.0, infinite: true };

    pub const fn new(slope: f64, intercept: f64) -> Self {
        AffineFn { slope, intercept, infinite: false }
    }

    pub const fn constant(value: f64) -> Self {
        AffineFn::new(0.0, value)
    }

    #[inline]
    pub fn eval(&self, lambda: f64) -> f64 {
        if self.infinite {
            f64::INFINITY
        } else {
            self.slope * lambda + self.intercept
        }
    }

    pub fn is_constant(&self) -> bool {
        self.infinite || self.slope == 0.0
    }

    /// Exactly the zero function (no tolerance).
    pub fn is_zero(&self) -> bool {
        !self.infinite && self.slope == 0.0 && self.intercept == 0.0
    }

    /// Smallest `lambda* >= lambda_lo` with `self(lambda*) = 0`, or `+inf` if the
    /// function stays positive on `[lambda_lo, inf)`.
    ///
    /// Callers guarantee `self(lambda_lo) >= -tolerance`; a root that numerically
    /// falls just below `lambda_lo` is clamped to it.
    pub fn smallest_root(&self, lambda_lo: f64) -> f64 {
        if self.infinite || self.slope >= 0.0 {
            return f64::INFINITY;
        }
        debug_assert!(
            self.eval(lambda_lo) >= -EPS * self.intercept.abs().max(1.0).max(self.slope.abs()),
            "smallest_root precondition violated: f({lambda_lo}) = {}",
            self.eval(lambda_lo)
        );
        let root = -self.intercept / self.slope;
        root.max(lambda_lo)
    }
}

/// Free-function form of [`AffineFn::smallest_root`].
pub fn smallest_root(f: &AffineFn, lambda_lo: f64) -> f64 {
    f.smallest_root(lambda_lo)
}

impl Default for AffineFn {
    fn default() -> Self {
        AffineFn::ZERO
    }
}

impl Add for AffineFn {
    type Output = AffineFn;

    fn add(self, rhs: AffineFn) -> AffineFn {
        if self.infinite || rhs.infinite {
            AffineFn::INFINITE
        } else {
            AffineFn::new(self.slope + rhs.slope, self.intercept + rhs.intercept)
        }
    }
}

impl AddAssign for AffineFn {
    fn add_assign(&mut self, rhs: AffineFn) {
        *self = *self + rhs;
    }
}

impl Neg for AffineFn {
    type Output = AffineFn;

    fn neg(self) -> AffineFn {
        assert!(!self.infinite, "cannot negate an infinite function");
        AffineFn::new(-self.slope, -self.intercept)
    }
}

/// `inf - finite = inf`; subtracting an infinite function is a logic error.
impl Sub for AffineFn {
    type Output = AffineFn;

    fn sub(self, rhs: AffineFn) -> AffineFn {
        assert!(!rhs.infinite, "cannot subtract an infinite function");
        if self.infinite {
            AffineFn::INFINITE
        } else {
            AffineFn::new(self.slope - rhs.slope, self.intercept - rhs.intercept)
        }
    }
}

impl SubAssign for AffineFn {
    fn sub_assign(&mut self, rhs: AffineFn) {
        *self = *self - rhs;
    }
}

impl fmt::Display for AffineFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            write!(f, "inf")
        } else {
            write!(f, "{}*lambda{:+}", self.slope, self.intercept)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_decreasing_function() {
        assert_eq!(AffineFn::new(-1.0, 2.0).smallest_root(0.0), 2.0);
        assert_eq!(AffineFn::new(-2.0, 5.0).smallest_root(1.0), 2.5);
    }

    #[test]
    fn root_of_nondecreasing_function_is_infinite() {
        assert_eq!(AffineFn::constant(3.0).smallest_root(0.0), f64::INFINITY);
        assert_eq!(AffineFn::new(1.0, 0.0).smallest_root(0.0), f64::INFINITY);
        assert_eq!(AffineFn::INFINITE.smallest_root(7.0), f64::INFINITY);
    }

    #[test]
    fn root_just_below_lower_bound_is_clamped() {
        let f = AffineFn::new(-1.0, 1.0 - 1e-12);
        assert_eq!(f.smallest_root(1.0), 1.0);
    }

    #[test]
    fn arithmetic_with_infinity() {
        let f = AffineFn::new(1.0, 2.0);
        assert!((AffineFn::INFINITE + f).infinite);
        assert!((AffineFn::INFINITE - f).infinite);
        assert_eq!(AffineFn::INFINITE.eval(3.0), f64::INFINITY);
        assert_eq!((f - f), AffineFn::ZERO);
        assert_eq!(-f, AffineFn::new(-1.0, -2.0));
    }

    #[test]
    #[should_panic]
    fn subtracting_infinity_panics() {
        let _ = AffineFn::ZERO - AffineFn::INFINITE;
    }
}
