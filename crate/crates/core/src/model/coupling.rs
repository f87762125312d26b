//! Coupling of the aquifer to the aquitard below and the water table above.
//!
//! In the Laplace–Hankel domain the unconfined correction is
//! U(z) = ρ1 e^{−μ(1−z)} + ρ2 e^{−μz}, i.e. the usual ρ1 e^{μz} + ρ2 e^{−μz}
//! with ρ1 rescaled by e^{μ} so that no exponential grows with y. It obeys
//!
//! U'(1) = q_D (S1 + U(1)),  U'(0) = q1 (S0 + U(0)),
//!
//! where S0, S1 are the transformed confined drawdown at the base and top,
//! q_D comes from the water table and q1 = R_Kz μ1 tanh(μ1 R_b) from the
//! aquitard, with μ1² = (R_Kr y² + R_Ss p/(K_D r_D²))/R_Kz.

use num_complex::Complex64;

use super::confined::BoundaryTransforms;
use super::params::DimensionlessGroups;
use crate::error::{Error, Result};
use crate::special::stable_tanh;

/// R_Kz μ1 tanh(μ1 R_b); R_b = ∞ saturates the tanh.
pub fn aquitard_q1b(mu1: Complex64, r_kz: f64, r_b: f64) -> Complex64 {
    if r_kz == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    r_kz * mu1 * stable_tanh(mu1 * r_b)
}

/// The aquitard at one Laplace node.
#[derive(Debug, Clone, Copy)]
pub struct AquitardLayer {
    r_kr: f64,
    r_kz: f64,
    r_ss: f64,
    pub r_b: f64,
    p_scaled: Complex64,
    closed: bool,
}

impl AquitardLayer {
    pub fn new(g: &DimensionlessGroups, r_d: f64, p: Complex64) -> Self {
        Self {
            r_kr: g.r_kr,
            r_kz: g.r_kz,
            r_ss: g.r_ss,
            r_b: g.r_b,
            p_scaled: p / (g.k_d * r_d * r_d),
            closed: g.impermeable_base,
        }
    }

    /// μ1, or `None` when the aquitard has no vertical conductivity.
    pub fn mu1(&self, y: f64) -> Option<Complex64> {
        if self.r_kz == 0.0 {
            return None;
        }
        Some(((self.r_kr * y * y + self.r_ss * self.p_scaled) / self.r_kz).sqrt())
    }

    pub fn q1b(&self, y: f64) -> Complex64 {
        if self.closed {
            return Complex64::new(0.0, 0.0);
        }
        match self.mu1(y) {
            Some(m) => aquitard_q1b(m, self.r_kz, self.r_b),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }
}

/// Coefficients of U with their common denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub rho1: Complex64,
    pub rho2: Complex64,
    /// (μ − q1)(μ + q_D) e^{−2μ} − (μ − q_D)(μ + q1)
    pub delta: Complex64,
}

impl Coupling {
    pub fn at(&self, mu: Complex64, z: f64) -> Complex64 {
        self.rho1 * (-mu * (1.0 - z)).exp() + self.rho2 * (-mu * z).exp()
    }
}

/// General two-sided coupling.
pub fn coupling_rho(mu: Complex64, q: Complex64, q1: Complex64, s: BoundaryTransforms) -> Result<Coupling> {
    let e = (-mu).exp();
    let delta = (mu - q1) * (mu + q) * e * e - (mu - q) * (mu + q1);
    if delta.norm() == 0.0 || !delta.re.is_finite() {
        return Err(Error::Pole(format!("coupling denominator vanishes at μ = {mu}")));
    }
    let rho1 = (q1 * (mu + q) * e * s.base - q * (mu + q1) * s.top) / delta;
    let rho2 = (q1 * (mu - q) * s.base - q * (mu - q1) * e * s.top) / delta;
    Ok(Coupling { rho1, rho2, delta })
}

/// Coupling over an impermeable base (q1 = 0): ρ2 = ρ1 e^{−μ} and
/// ρ1 = −q_D S1 / (q_D(1 + e^{−2μ}) − μ(1 − e^{−2μ})); in unscaled form both
/// coefficients equal −S1 / (2(cosh μ − (μ/q_D) sinh μ)).
pub fn coupling_rho_closed_base(mu: Complex64, q: Complex64, top: Complex64) -> Result<Coupling> {
    let e = (-mu).exp();
    let e2 = e * e;
    let den = q * (1.0 + e2) - mu * (1.0 - e2);
    if den.norm() == 0.0 || !den.re.is_finite() {
        return Err(Error::Pole(format!("coupling denominator vanishes at μ = {mu}")));
    }
    let rho1 = -q * top / den;
    Ok(Coupling {
        rho1,
        rho2: rho1 * e,
        delta: mu * den,
    })
}

/// Everything computed at one (p, y) node.
#[derive(Debug, Clone, Copy)]
pub struct TransformPoint {
    pub p: Complex64,
    pub y: f64,
    pub mu: Complex64,
    pub mu1: Option<Complex64>,
    pub q_db: Complex64,
    pub q1b: Complex64,
    pub boundary: BoundaryTransforms,
    pub coupling: Coupling,
}
