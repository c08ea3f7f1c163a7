//! Floating-point scalar abstraction.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used by the threshold and bound routines: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Natural log of the gamma function.
    fn ln_gamma(self) -> Self;

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize is representable as a float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    /// `ln C(m, j)`, `-inf` when `j > m`.
    fn ln_choose(m: usize, j: usize) -> Self {
        if j > m {
            return Self::neg_infinity();
        }
        if j == 0 || j == m {
            return Self::zero();
        }
        let one = Self::one();
        let m_ = Self::from_usize_lossy(m);
        let j_ = Self::from_usize_lossy(j);
        (m_ + one).ln_gamma() - (j_ + one).ln_gamma() - (m_ - j_ + one).ln_gamma()
    }
}

impl Scalar for f64 {
    fn ln_gamma(self) -> Self {
        statrs::function::gamma::ln_gamma(self)
    }
}

impl Scalar for f32 {
    fn ln_gamma(self) -> Self {
        statrs::function::gamma::ln_gamma(self as f64) as f32
    }
}
