//! Bessel functions of the first kind for real argument.
//!
//! `J0` and `J1` are the Hankel-transform kernels and are evaluated on every
//! quadrature node, so they get dedicated paths: ascending series below 8,
//! Miller backward recurrence on [8, 25), and the Hankel asymptotic
//! expansion above. General real order uses the same three regimes with the
//! Neumann-sum normalisation for the recurrence.

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma};
use super::BesselOrder;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// J_order(x) for real x ≥ 0.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("bessel_j argument {x} must be finite and >= 0")));
    }
    let nu = order.value();
    Ok(if nu == 0.0 {
        j0(x)
    } else if nu == 1.0 {
        j1(x)
    } else {
        jnu(nu, x)
    })
}

pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_LIMIT {
        j0_series(x)
    } else if x < ASYMPTOTIC_LIMIT {
        miller_j01(x).0
    } else {
        hankel_asymptotic(0.0, x)
    }
}

pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < SERIES_LIMIT {
        j1_series(ax)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller_j01(ax).1
    } else {
        hankel_asymptotic(1.0, ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// J1(x)/x with the removable singularity filled in.
pub fn j1_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let q = x * x / 4.0;
        0.5 * (1.0 - q / 2.0 + q * q / 12.0)
    } else {
        j1(x) / x
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn j1_series(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    0.5 * x * sum
}

/// Backward recurrence for (J0, J1) normalised by 1 = J0 + 2 Σ J_2k.
fn miller_j01(x: f64) -> (f64, f64) {
    let start = 2 * ((x as usize + 20 + (40.0 * x).sqrt() as usize) / 2);
    let mut above = 0.0_f64;
    let mut cur = 1e-30_f64;
    let mut even_sum = 0.0_f64;
    let mut j1_val = 0.0_f64;
    for k in (1..=start).rev() {
        // cur holds J_k; produce J_{k-1}
        let below = 2.0 * k as f64 / x * cur - above;
        above = cur;
        cur = below;
        let order = k - 1;
        if order == 1 {
            j1_val = cur;
        }
        if order > 0 && order % 2 == 0 {
            even_sum += cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            even_sum *= 1e-250;
            j1_val *= 1e-250;
        }
    }
    let norm = cur + 2.0 * even_sum;
    (cur / norm, j1_val / norm)
}

/// Hankel large-argument expansion of J_nu(x).
fn hankel_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // terms alternate P, Q, -P, -Q ...
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn jnu(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x < 12.0 || x * x / 4.0 <= 2.0 * (nu + 1.0) {
        jnu_series(nu, x)
    } else if x > ASYMPTOTIC_LIMIT + nu * nu {
        hankel_asymptotic(nu, x)
    } else {
        jnu_miller(nu, x)
    }
}

fn jnu_series(nu: f64, x: f64) -> f64 {
    let q = -x * x / 4.0;
    let lead = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)).exp();
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    lead * sum
}

/// Backward recurrence in order from well above max(nu, x), normalised with
/// (x/2)^mu = Σ_k (mu+2k) Γ(mu+k)/k! J_{mu+2k}(x), mu = frac(nu).
fn jnu_miller(nu: f64, x: f64) -> f64 {
    let n = nu.floor() as usize;
    let mu = nu - n as f64;
    let top = x.max(n as f64);
    let start = 2 * ((top as usize + 20 + (40.0 * top).sqrt() as usize) / 2 + 1);

    // g_j = Γ(mu + j)/j!, c_0 = Γ(mu + 1), c_j = (mu + 2j) g_j
    let half = start / 2 + 1;
    let mut coeff = vec![0.0; half + 1];
    coeff[0] = gamma(mu + 1.0);
    let mut g = gamma(mu + 1.0);
    for (j, c) in coeff.iter_mut().enumerate().skip(1) {
        if j > 1 {
            g *= (mu + j as f64 - 1.0) / j as f64;
        }
        *c = (mu + 2.0 * j as f64) * g;
    }

    let mut above = 0.0_f64;
    let mut cur = 1e-30_f64;
    let mut norm = 0.0_f64;
    let mut target = 0.0_f64;
    if start.is_multiple_of(2) {
        norm += coeff[start / 2] * cur;
    }
    if start == n {
        target = cur;
    }
    for k in (1..=start).rev() {
        let below = 2.0 * (mu + k as f64) / x * cur - above;
        above = cur;
        cur = below;
        let order = k - 1;
        if order % 2 == 0 {
            norm += coeff[order / 2] * cur;
        }
        if order == n {
            target = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    target * (0.5 * x).powf(mu) / norm
}
