//! Unsaturated zone above the water table.
//!
//! With w = z_D − 1 the transformed drawdown σ(w) satisfies
//!
//! σ'' − a_kD σ' − (y² + B_D e^{λ_D w}) σ = 0,
//! B_D = p S_D a_cD e^{a_kD(ψ_kD − ψ_aD)} / (K_D r_D²),
//!
//! with no flow through the top at w = L_D (or decay when L_D is infinite).
//! The water-table condition seen by the aquifer is ∂s/∂z_D = q_D s with
//! q_D = σ'(0)/σ(0).
//!
//! For λ_D = 0 (or B_D = 0) the solutions are e^{δ w} with δ² − κδ − (B + y²) = 0.
//! Otherwise σ = e^{aw/2} Z_ν(ξ) with ξ = (2√B/|λ|) e^{λw/2},
//! ν = √(a² + 4y²)/|λ| and Z a modified Bessel function of order ν.
//! The solution bounded as w → ∞ is K_ν for λ > 0 and I_ν for λ < 0; the
//! other one enters with coefficient θ fixed by the top condition.

use num_complex::Complex64;

use super::params::{DimensionlessGroups, WaterTable};
use crate::error::{Error, Result};
use crate::special::{bessel_modified_general, BesselOrder, ModifiedPair, ScaledComplex};

#[derive(Debug, Clone, Copy)]
enum Kind {
    Instantaneous {
        q: Complex64,
    },
    /// B + y² enters through δ; `b` is B_D.
    Exponential {
        kappa: f64,
        b: Complex64,
    },
    Bessel {
        a: f64,
        lambda: f64,
        xi0: Complex64,
    },
}

/// The unsaturated zone at one Laplace node.
#[derive(Debug, Clone, Copy)]
pub struct VadoseZone {
    kind: Kind,
    top: f64,
}

#[derive(Debug, Clone, Copy)]
enum Form {
    Flat,
    Exponential {
        d1: Complex64,
        d2: Complex64,
        chi: Complex64,
    },
    Bessel {
        a: f64,
        lambda: f64,
        nu: BesselOrder,
        xi0: Complex64,
        primary_k: bool,
        primary0: ScaledComplex,
        secondary0: ScaledComplex,
        theta: Complex64,
    },
}

/// Solution of the vertical problem for one Hankel node.
#[derive(Debug, Clone, Copy)]
pub struct VadoseSolution {
    top_d: f64,
    /// σ'(0)/σ(0)
    pub q_d: Complex64,
    /// Weight of the secondary solution, normalised so that the primary and
    /// secondary solutions both equal 1 at the water table.
    pub chi: Complex64,
    form: Form,
}

impl VadoseZone {
    pub fn new(g: &DimensionlessGroups, r_d: f64, p: Complex64) -> Self {
        let kr = g.k_d * r_d * r_d;
        let kind = match g.water_table {
            WaterTable::Instantaneous => Kind::Instantaneous { q: -g.s_d * p / kr },
            WaterTable::Unsaturated => {
                let b = p * g.vadose_capacity() / kr;
                let lambda = g.lambda_d();
                if lambda == 0.0 || b.norm() == 0.0 {
                    Kind::Exponential { kappa: g.kappa_d(), b }
                } else {
                    Kind::Bessel {
                        a: g.a_kd,
                        lambda,
                        xi0: 2.0 * b.sqrt() / lambda.abs(),
                    }
                }
            }
        };
        Self { kind, top: g.l_vadose }
    }

    pub fn solve(&self, y: f64) -> Result<VadoseSolution> {
        match self.kind {
            Kind::Instantaneous { q } => Ok(VadoseSolution {
                top_d: self.top,
                q_d: q,
                chi: Complex64::new(0.0, 0.0),
                form: Form::Flat,
            }),
            Kind::Exponential { kappa, b } => {
                let s = b + y * y;
                let root = (kappa * kappa + 4.0 * s).sqrt();
                let d1 = -2.0 * s / (kappa + root);
                let d2 = kappa - d1;
                let chi = if self.top.is_infinite() || d2.norm() == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    -(d1 / d2) * ((d1 - d2) * self.top).exp()
                };
                Ok(VadoseSolution {
                    top_d: self.top,
                    q_d: (d1 + chi * d2) / (1.0 + chi),
                    chi,
                    form: Form::Exponential { d1, d2, chi },
                })
            }
            Kind::Bessel { a, lambda, xi0 } => self.solve_bessel(a, lambda, xi0, y),
        }
    }

    fn solve_bessel(&self, a: f64, lambda: f64, xi0: Complex64, y: f64) -> Result<VadoseSolution> {
        let nu = BesselOrder::new((a * a + 4.0 * y * y).sqrt() / lambda.abs())?;
        let primary_k = lambda > 0.0;
        let pair0 = bessel_modified_general(nu, xi0)?;
        let (lp0, ls0) = log_derivatives(&pair0, nu, xi0, primary_k);
        let (primary0, secondary0) = split(&pair0, primary_k);

        let mut theta = Complex64::new(0.0, 0.0);
        if self.top.is_finite() {
            let xi_l = xi0 * (0.5 * lambda * self.top).exp();
            let n = xi_l.norm();
            if n.is_finite() && n > 1e-280 && n < 1e280 {
                let pair_l = bessel_modified_general(nu, xi_l)?;
                let (lpl, lsl) = log_derivatives(&pair_l, nu, xi_l, primary_k);
                let (primary_l, secondary_l) = split(&pair_l, primary_k);
                let den = a + lambda * lsl;
                if den.norm() == 0.0 {
                    return Err(Error::Singularity("degenerate top boundary coefficient".into()));
                }
                // θ scaled by S(ξ0)/P(ξ0)
                let ratio = ScaledComplex::new(
                    primary_l.mantissa * secondary0.mantissa,
                    primary_l.exponent + secondary0.exponent,
                )
                .ratio(ScaledComplex::new(
                    secondary_l.mantissa * primary0.mantissa,
                    secondary_l.exponent + primary0.exponent,
                ));
                theta = -ratio * (a + lambda * lpl) / den;
            }
        }
        let q_d = 0.5 * a + 0.5 * lambda * (lp0 + theta * ls0) / (1.0 + theta);
        if !q_d.re.is_finite() || !q_d.im.is_finite() {
            return Err(Error::Singularity(format!(
                "non-finite water-table coefficient at y = {y}"
            )));
        }
        Ok(VadoseSolution {
            top_d: self.top,
            q_d,
            chi: theta,
            form: Form::Bessel {
                a,
                lambda,
                nu,
                xi0,
                primary_k,
                primary0,
                secondary0,
                theta,
            },
        })
    }
}

fn log_derivatives(pair: &ModifiedPair, nu: BesselOrder, xi: Complex64, primary_k: bool) -> (Complex64, Complex64) {
    let li = nu.value() + pair.z_i_ratio(xi);
    let lk = nu.value() - pair.z_k_ratio(xi);
    if primary_k {
        (lk, li)
    } else {
        (li, lk)
    }
}

fn split(pair: &ModifiedPair, primary_k: bool) -> (ScaledComplex, ScaledComplex) {
    if primary_k {
        (pair.k_nu, pair.i_nu)
    } else {
        (pair.i_nu, pair.k_nu)
    }
}

fn scaled_ratio(num: ScaledComplex, den: ScaledComplex, extra: f64) -> Complex64 {
    num.mantissa / den.mantissa * (num.exponent - den.exponent + extra).exp()
}

impl VadoseSolution {
    /// σ(w)/σ(0) for 0 ≤ w ≤ L_D.
    pub fn profile(&self, w: f64) -> Result<Complex64> {
        if w == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        match self.form {
            Form::Flat => Err(Error::domain(
                "no unsaturated-zone drawdown under instantaneous drainage".to_string(),
            )),
            Form::Exponential { d1, d2, chi } => {
                let mut v = (d1 * w).exp();
                if chi.norm() != 0.0 {
                    // χ e^{δ2 w} = −(δ1/δ2) e^{δ1 L + δ2 (w − L)}
                    v -= d1 / d2 * (d1 * self.top_d + d2 * (w - self.top_d)).exp();
                }
                Ok(v / (1.0 + chi))
            }
            Form::Bessel {
                a,
                lambda,
                nu,
                xi0,
                primary_k,
                primary0,
                secondary0,
                theta,
            } => {
                let xi = xi0 * (0.5 * lambda * w).exp();
                let n = xi.norm();
                if !(n > 1e-280 && n < 1e280) {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let pair = bessel_modified_general(nu, xi)?;
                let (pw, sw) = split(&pair, primary_k);
                let mut v = scaled_ratio(pw, primary0, 0.5 * a * w);
                if theta.norm() != 0.0 {
                    v += theta * scaled_ratio(sw, secondary0, 0.5 * a * w);
                }
                Ok(v / (1.0 + theta))
            }
        }
    }
}

/// Weight of the secondary vertical solution (see [`VadoseSolution::chi`]).
pub fn vadose_chi(g: &DimensionlessGroups, r_d: f64, p: Complex64, y: f64) -> Result<Complex64> {
    Ok(VadoseZone::new(g, r_d, p).solve(y)?.chi)
}

/// Water-table coefficient q_D = σ'(0)/σ(0).
pub fn vadose_qd(g: &DimensionlessGroups, r_d: f64, p: Complex64, y: f64) -> Result<Complex64> {
    Ok(VadoseZone::new(g, r_d, p).solve(y)?.q_d)
}
