//! Special functions for real and complex arguments.

pub mod bessel_j;
pub mod gamma;
pub mod hyperbolic;
pub mod modified;
pub mod zeros;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use bessel_j::{bessel_j, j0, j1, j1_over_x};
pub use hyperbolic::{cosh_ratio_shifted, stable_cosh_ratio, stable_tanh, RB_INFINITE};
pub use modified::{bessel_i, bessel_k01_scaled, bessel_k_complex, bessel_modified_general, ModifiedPair};
pub use zeros::j0_zeros;

/// Convergence controls for the iterative special-function kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl AccuracyPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::domain(format!("rel_tol {rel_tol} outside (0, 1e-3]")));
        }
        if max_terms < 50 {
            return Err(Error::domain(format!("max_terms {max_terms} below 50")));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for AccuracyPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 20_000,
        }
    }
}

/// Non-negative finite real Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain(format!("Bessel order {value} must be finite and >= 0")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A complex number stored as `mantissa * exp(exponent)`.
///
/// Keeps I and K representable when the magnitude leaves double range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub exponent: f64,
}

impl ScaledComplex {
    pub fn new(mantissa: Complex64, exponent: f64) -> Self {
        Self { mantissa, exponent }.normalized()
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    /// exp(w) for complex w, with the real part kept in the exponent.
    pub fn exp(w: Complex64) -> Self {
        Self {
            mantissa: Complex64::from_polar(1.0, w.im),
            exponent: w.re,
        }
    }

    fn normalized(self) -> Self {
        let m = self.mantissa.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        let shift = m.ln();
        Self {
            mantissa: self.mantissa / m,
            exponent: self.exponent + shift,
        }
    }

    /// Plain complex value; may overflow to infinity or underflow to zero.
    pub fn value(self) -> Complex64 {
        self.mantissa * self.exponent.exp()
    }

    pub fn ln(self) -> Complex64 {
        self.mantissa.ln() + self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }

    pub fn ratio(self, other: ScaledComplex) -> Complex64 {
        self.mantissa / other.mantissa * (self.exponent - other.exponent).exp()
    }

    pub fn scale(self, factor: Complex64) -> Self {
        Self::new(self.mantissa * factor, self.exponent)
    }
}

impl std::ops::Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        ScaledComplex::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl fmt::Display for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * e^{}", self.mantissa, self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(BesselOrder::new(-0.1).is_err());
        assert!(BesselOrder::new(f64::NAN).is_err());
        assert_eq!(BesselOrder::new(2.5).unwrap().value(), 2.5);
    }

    #[test]
    fn policy_validation() {
        assert!(AccuracyPolicy::new(1e-2, 100).is_err());
        assert!(AccuracyPolicy::new(1e-8, 10).is_err());
        assert!(AccuracyPolicy::new(1e-8, 50).is_ok());
    }

    #[test]
    fn scaled_arithmetic() {
        let a = ScaledComplex::new(Complex64::new(3.0, 4.0), 800.0);
        let b = ScaledComplex::new(Complex64::new(1.0, 0.0), 799.0);
        let r = a.ratio(b);
        assert!((r - Complex64::new(3.0, 4.0) * 1f64.exp()).norm() < 1e-12);
        assert!(a.value().re.is_infinite());
        assert!((a.ln().re - (5f64.ln() + 800.0)).abs() < 1e-12);
    }
}
