//! Numerical Laplace inversion: de Hoog, Knight & Stokes quotient-difference
//! acceleration of the Fourier-series (Dubner–Abate) approximation, and the
//! Gaver–Stehfest real-axis method.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NEGLIGIBLE_TRANSFORM: f64 = 1e-150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LaplaceConfig {
    /// Length 2M of the accelerated series; F is probed n_terms + 1 times.
    pub n_terms: usize,
    /// Period T of the Fourier series as a multiple of t.
    pub contour_shift_factor: f64,
    pub rel_tol: f64,
}

impl Default for LaplaceConfig {
    fn default() -> Self {
        Self {
            n_terms: 20,
            contour_shift_factor: 2.0,
            rel_tol: 1e-9,
        }
    }
}

impl LaplaceConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.n_terms.is_multiple_of(2) || !(8..=64).contains(&self.n_terms) {
            return Err(Error::Config(format!(
                "laplace.n_terms = {} must be even and in [8, 64]",
                self.n_terms
            )));
        }
        if !(self.contour_shift_factor > 1.0) || !self.contour_shift_factor.is_finite() {
            return Err(Error::Config(format!(
                "laplace.contour_shift_factor = {} must be finite and > 1",
                self.contour_shift_factor
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-4) {
            return Err(Error::Config(format!(
                "laplace.rel_tol = {} must be in (0, 1e-4]",
                self.rel_tol
            )));
        }
        Ok(())
    }

    /// The probe abscissae p_k used for time `t`.
    pub fn nodes(&self, t: f64) -> Vec<Complex64> {
        let period = self.contour_shift_factor * t;
        let gamma = -self.rel_tol.ln() / (2.0 * period);
        (0..=self.n_terms)
            .map(|k| Complex64::new(gamma, PI * k as f64 / period))
            .collect()
    }
}

/// Inverse Laplace transform of `f` at time `t` by de Hoog's method.
pub fn invert_laplace_dehoog<F>(f: F, t: f64, cfg: &LaplaceConfig) -> Result<f64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("inversion time {t} must be positive")));
    }
    let values: Vec<Complex64> = cfg.nodes(t).into_iter().map(f).collect::<Result<_>>()?;
    dehoog_from_values(&values, t, cfg)
}

/// The de Hoog combination step given F at [`LaplaceConfig::nodes`].
pub fn dehoog_from_values(values: &[Complex64], t: f64, cfg: &LaplaceConfig) -> Result<f64> {
    let two_m = cfg.n_terms;
    let m = two_m / 2;
    assert_eq!(values.len(), two_m + 1, "need n_terms + 1 transform values");
    let period = cfg.contour_shift_factor * t;
    let gamma = -cfg.rel_tol.ln() / (2.0 * period);
    let prefactor = (gamma * t).exp() / period;
    let z = Complex64::from_polar(1.0, PI * t / period);

    let mut a = values.to_vec();
    a[0] *= 0.5;
    if let Some(bad) = a.iter().find(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::InversionBreakdown {
            t,
            reason: format!("non-finite transform value {bad}"),
            partial: f64::NAN,
        });
    }

    let fourier_partial = || {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zk = Complex64::new(1.0, 0.0);
        for v in &a {
            acc += v * zk;
            zk *= z;
        }
        prefactor * acc.re
    };
    let breakdown = |reason: &str| Error::InversionBreakdown {
        t,
        reason: reason.to_string(),
        partial: fourier_partial(),
    };

    // the QD products underflow long before the values do; such a transform
    // is zero for every practical purpose
    let largest = a.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    if largest < NEGLIGIBLE_TRANSFORM {
        return Ok(fourier_partial());
    }

    // quotient-difference table
    let mut d = vec![Complex64::new(0.0, 0.0); two_m + 1];
    d[0] = a[0];
    let mut q: Vec<Complex64> = Vec::with_capacity(two_m);
    for i in 0..two_m {
        if a[i].norm() == 0.0 {
            if a.iter().all(|v| v.norm() == 0.0) {
                return Ok(0.0);
            }
            return Err(breakdown("zero coefficient in the power series"));
        }
        q.push(a[i + 1] / a[i]);
    }
    let mut e = vec![Complex64::new(0.0, 0.0); two_m + 1];
    for r in 1..=m {
        d[2 * r - 1] = -q[0];
        let len_e = two_m - 2 * r + 1;
        let new_e: Vec<Complex64> = (0..len_e).map(|i| q[i + 1] - q[i] + e[i + 1]).collect();
        d[2 * r] = -new_e[0];
        if r < m {
            let len_q = two_m - 2 * r;
            let mut new_q = Vec::with_capacity(len_q);
            for i in 0..len_q {
                if new_e[i].norm() == 0.0 {
                    return Err(breakdown("vanishing quotient-difference denominator"));
                }
                new_q.push(q[i + 1] * new_e[i + 1] / new_e[i]);
            }
            q = new_q;
        }
        e = new_e;
    }

    // continued fraction via three-term recurrences
    let one = Complex64::new(1.0, 0.0);
    let mut a_prev = Complex64::new(0.0, 0.0);
    let mut a_cur = d[0];
    let mut b_prev = one;
    let mut b_cur = one;
    for dn in d.iter().take(two_m).skip(1) {
        let a_next = a_cur + dn * z * a_prev;
        let b_next = b_cur + dn * z * b_prev;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
    // remainder estimate for the tail of the fraction
    let h = 0.5 * (one + (d[two_m - 1] - d[two_m]) * z);
    let rem = -h * (one - (one + d[two_m] * z / (h * h)).sqrt());
    let a_last = a_cur + rem * a_prev;
    let b_last = b_cur + rem * b_prev;
    if b_last.norm() == 0.0 || !b_last.re.is_finite() {
        return Err(breakdown("vanishing continued-fraction denominator"));
    }
    let result = prefactor * (a_last / b_last).re;
    if !result.is_finite() {
        return Err(breakdown("non-finite continued-fraction value"));
    }
    Ok(result)
}

/// Gaver–Stehfest weights V_k, k = 1..=n.
pub fn stehfest_weights(n: usize) -> Vec<f64> {
    let half = n / 2;
    let fact = |k: usize| (1..=k).fold(1.0_f64, |acc, j| acc * j as f64);
    (1..=n)
        .map(|k| {
            let lo = k.div_ceil(2);
            let hi = k.min(half);
            let mut sum = 0.0;
            for j in lo..=hi {
                sum += (j as f64).powi(half as i32) * fact(2 * j)
                    / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
            }
            if (k + half).is_multiple_of(2) {
                sum
            } else {
                -sum
            }
        })
        .collect()
}

/// Real-axis probes p_k = k ln2 / t, k = 1..=n.
pub fn stehfest_nodes(t: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64 * LN_2 / t).collect()
}

/// Inverse Laplace transform of `f` at time `t` by the Gaver–Stehfest formula.
pub fn invert_laplace_stehfest<F>(mut f: F, t: f64, n: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !n.is_multiple_of(2) || !(8..=18).contains(&n) {
        return Err(Error::domain(format!("Stehfest N = {n} must be even and in [8, 18]")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("inversion time {t} must be positive")));
    }
    let weights = stehfest_weights(n);
    let mut acc = 0.0;
    for (w, p) in weights.iter().zip(stehfest_nodes(t, n)) {
        acc += w * f(p)?;
    }
    Ok(acc * LN_2 / t)
}

/// Stehfest estimate of order `n` from F at p_k = k ln2/t, k = 1..=m, m ≥ n.
pub fn stehfest_from_values(values: &[f64], t: f64, n: usize) -> f64 {
    assert!(values.len() >= n, "need at least {n} transform values");
    let weights = stehfest_weights(n);
    weights.iter().zip(values).map(|(w, v)| w * v).sum::<f64>() * LN_2 / t
}

/// Stehfest with the order chosen from `orders` (ascending, even) as the one
/// whose estimate moved least from the previous order. The probes are nested,
/// so all orders share F at k ln2/t, k = 1..=max order. Returns the estimate
/// and its order.
pub fn stehfest_stable_from_values(values: &[f64], t: f64, orders: &[usize]) -> (f64, usize) {
    let est: Vec<f64> = orders.iter().map(|&n| stehfest_from_values(values, t, n)).collect();
    if est.len() < 2 {
        return (est[0], orders[0]);
    }
    let mut best = 1;
    for i in 2..est.len() {
        if (est[i] - est[i - 1]).abs() < (est[best] - est[best - 1]).abs() {
            best = i;
        }
    }
    (est[best], orders[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dehoog(f: impl Fn(Complex64) -> Complex64, t: f64) -> f64 {
        invert_laplace_dehoog(|p| Ok(f(p)), t, &LaplaceConfig::default()).unwrap()
    }

    #[test]
    fn elementary_pairs() {
        assert!((dehoog(|p| 1.0 / p, 1.0) - 1.0).abs() < 1e-8);
        assert!((dehoog(|p| 1.0 / (p * p), 2.0) - 2.0).abs() < 1e-7);
        assert!((dehoog(|p| 1.0 / (p + 1.0), 1.0) - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn oscillating_pair() {
        // sin t ↔ 1/(p² + 1)
        for &t in &[0.5, 2.0, 7.0] {
            assert!((dehoog(|p| 1.0 / (p * p + 1.0), t) - t.sin()).abs() < 1e-7, "t = {t}");
        }
    }

    #[test]
    fn probe_count() {
        let cfg = LaplaceConfig::default();
        let mut count = 0;
        invert_laplace_dehoog(
            |p| {
                count += 1;
                assert!(p.re > 0.0);
                Ok(1.0 / p)
            },
            3.0,
            &cfg,
        )
        .unwrap();
        assert_eq!(count, cfg.n_terms + 1);
    }

    #[test]
    fn breakdown_carries_partial() {
        let err =
            invert_laplace_dehoog(|_| Ok(Complex64::new(f64::NAN, 0.0)), 1.0, &LaplaceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::InversionBreakdown { .. }));
    }

    #[test]
    fn negligible_transform_is_not_a_breakdown() {
        let v = invert_laplace_dehoog(|p| Ok(1e-200 * (-40.0 * p).exp()), 1.0, &LaplaceConfig::default()).unwrap();
        assert!(v.abs() < 1e-150);
    }

    #[test]
    fn stehfest_pairs() {
        assert!((invert_laplace_stehfest(|p| Ok(1.0 / p), 3.0, 14).unwrap() - 1.0).abs() < 1e-8);
        let e = invert_laplace_stehfest(|p| Ok(1.0 / (p + 1.0)), 1.0, 14).unwrap();
        assert!((e - 0.367_879_441_171_442_3).abs() < 1e-5);
        let half = invert_laplace_stehfest(|p| Ok(p.powf(-1.5)), 1.0, 14).unwrap();
        assert!((half - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-5);
        assert!(invert_laplace_stehfest(|p| Ok(1.0 / p), 1.0, 7).is_err());
    }

    #[test]
    fn stable_order_selection() {
        let t = 2.0;
        let values: Vec<f64> = stehfest_nodes(t, 14).iter().map(|p| 1.0 / (p + 1.0)).collect();
        let (v, n) = stehfest_stable_from_values(&values, t, &[8, 10, 12, 14]);
        assert!((v - (-t).exp()).abs() < 1e-4, "{v} (N = {n})");
        assert_eq!(
            stehfest_from_values(&values, t, 14),
            invert_laplace_stehfest(|p| Ok(1.0 / (p + 1.0)), t, 14).unwrap()
        );
        // noise on the probes pushes the choice to a lower order
        let noisy: Vec<f64> = values
            .iter()
            .enumerate()
            .map(|(k, v)| v * (1.0 + 1e-7 * (k as f64).sin()))
            .collect();
        let (_, n) = stehfest_stable_from_values(&noisy, t, &[8, 10, 12, 14]);
        assert!(n < 14);
    }

    #[test]
    fn weights_sum_to_zero() {
        for n in (8..=18).step_by(2) {
            let w = stehfest_weights(n);
            let s: f64 = w.iter().sum();
            let big = w.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            assert!(s.abs() < 1e-13 * big, "N = {n}: {s}");
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = LaplaceConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.n_terms = 21;
        assert!(cfg.validate().is_err());
        cfg.n_terms = 20;
        cfg.rel_tol = 1e-3;
        assert!(cfg.validate().is_err());
    }
}
