//! Flow to a partially penetrating well of finite radius with wellbore
//! storage in a confined aquifer, in the Laplace domain and in the
//! Laplace–Hankel domain.
//!
//! Variables: radial distance is scaled by the observation radius r, so the
//! observation sits at unit radius and the well face at r_wD = r_w/r; the
//! Laplace variable `p` is conjugate to t_s (p = p_D/t_s). With
//! φ_n² = p + r_D² K_D n²π² and w_n = r_wD φ_n the drawdown is
//!
//! s̄_C = (1/p) Σ_n c_n K0(φ_n) cos(nπ(1 − z_D)) / Ω_n,
//! Ω_n = w_n K1(w_n) + (C_wD / (2(l_D − d_D))) w_0² K0(w_n),
//!
//! with c_0 = 2 and c_n = 4 (sin nπl_D − sin nπd_D) / (nπ(l_D − d_D)).
//!
//! The Hankel transform extends the drawdown inside the well by its
//! well-face value. With y the Hankel variable scaled by √K_D r_D,
//! μ² = y² + p/(K_D r_D²) and x = y √K_D r_D r_wD, mode n transforms to
//!
//! c_n w_n [w_n ρ_n J1(x)/x + J0(x)] / ((w_n + c_s w_0² ρ_n)(μ² + n²π²)),
//!
//! where ρ_n = K0(w_n)/K1(w_n). The inverse transform is
//! s̄ = ∫ f(y) y J0(√K_D r_D y) dy.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::DimensionlessGroups;
use super::SeriesControls;
use crate::error::{Error, Result};
use crate::special::{bessel_k01_scaled, j0, j1_over_x};
use crate::transform::{integrate_oscillatory, OscillatoryQuadConfig};

#[derive(Debug, Clone, Copy)]
struct Mode {
    eig: f64,
    c_n: f64,
    beta: Complex64,
    wrho: Complex64,
    /// c_n K0(φ_n)/Ω_n
    point: Complex64,
}

/// Per-(p, r_D) precomputation of the cosine modes.
#[derive(Debug, Clone)]
pub struct ModeSet {
    p: Complex64,
    /// p/(K_D r_D²)
    p_scaled: Complex64,
    rho_w: f64,
    /// √K_D r_D
    scale: f64,
    d_d: f64,
    l_d: f64,
    full_penetration: bool,
    /// c_s w_0²
    storage: Complex64,
    modes: Vec<Mode>,
    tol: f64,
}

/// A partial sum of the cosine series with its convergence status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub terms: usize,
    pub converged: bool,
}

impl SeriesSum {
    /// The value, or a [`Error::SeriesNotConverged`] carrying it.
    pub fn into_result(self) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::SeriesNotConverged {
                partial: self.value,
                terms: self.terms,
            })
        }
    }
}

/// Laplace–Hankel transforms of the confined drawdown at the aquifer base
/// (z_D = 0) and top (z_D = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTransforms {
    pub base: Complex64,
    pub top: Complex64,
}

fn is_full_penetration(g: &DimensionlessGroups) -> bool {
    g.d_d == 0.0 && g.l_d == 1.0
}

fn screen_coefficient(n: usize, g: &DimensionlessGroups) -> f64 {
    if n == 0 {
        return 2.0;
    }
    if is_full_penetration(g) {
        return 0.0;
    }
    let npi = n as f64 * PI;
    4.0 * ((npi * g.l_d).sin() - (npi * g.d_d).sin()) / (npi * g.screen_length())
}

impl ModeSet {
    pub fn new(g: &DimensionlessGroups, r_d: f64, p: Complex64, ctl: &SeriesControls) -> Result<Self> {
        if !(p.re > 0.0) || !p.im.is_finite() {
            return Err(Error::domain(format!(
                "Laplace variable {p} must have positive real part"
            )));
        }
        let rho_w = g.r_wd(r_d);
        if !(rho_w > 0.0 && rho_w <= 1.0 + 1e-12) {
            return Err(Error::domain(format!(
                "observation radius r_D = {r_d} lies inside the well (r_w/b = {})",
                g.rw_b
            )));
        }
        let rho_w = rho_w.min(1.0);
        let c_s = g.c_wd / (2.0 * g.screen_length());
        let storage = c_s * rho_w * rho_w * p;
        let full = is_full_penetration(g);
        let n_modes = if full { 1 } else { ctl.max_cosine_terms + 1 };
        let kr = g.k_d * r_d * r_d;
        let mut modes = Vec::with_capacity(n_modes);
        for n in 0..n_modes {
            let c_n = screen_coefficient(n, g);
            let eig = (n as f64 * PI).powi(2);
            let phi = (p + kr * eig).sqrt();
            let w = rho_w * phi;
            let (k0w, k1w) = bessel_k01_scaled(w)?;
            let rho = k0w / k1w;
            let denom = w + storage * rho;
            if denom.norm() == 0.0 {
                return Err(Error::Singularity(format!(
                    "vanishing well-face coefficient at mode {n}"
                )));
            }
            // K0(φ)/K1(w) with both exponential factors combined
            let k_ratio = if rho_w == 1.0 {
                rho
            } else {
                let (k0p, _) = bessel_k01_scaled(phi)?;
                k0p / k1w * (-(phi - w)).exp()
            };
            modes.push(Mode {
                eig,
                c_n,
                beta: c_n * w / denom,
                wrho: w * rho,
                point: c_n * k_ratio / denom,
            });
        }
        Ok(Self {
            p,
            p_scaled: p / kr,
            rho_w,
            scale: g.k_d.sqrt() * r_d,
            d_d: g.d_d,
            l_d: g.l_d,
            full_penetration: full,
            storage,
            modes,
            tol: ctl.series_rel_tol,
        })
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    /// Oscillation scale √K_D r_D of the inverse Hankel kernel.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// p/(K_D r_D²), the shift in μ² = y² + p/(K_D r_D²).
    pub fn p_scaled(&self) -> Complex64 {
        self.p_scaled
    }

    pub fn mu_sq(&self, y: f64) -> Complex64 {
        y * y + self.p_scaled
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    fn sum_with<F>(&self, weight: F) -> SeriesSum
    where
        F: Fn(usize) -> f64,
    {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut quiet = 0;
        for (n, m) in self.modes.iter().enumerate() {
            let term = m.point * weight(n);
            sum += term;
            if n > 0 {
                if term.norm() <= self.tol * sum.norm() {
                    quiet += 1;
                    if quiet >= 3 {
                        return SeriesSum {
                            value: sum / self.p,
                            terms: n + 1,
                            converged: true,
                        };
                    }
                } else {
                    quiet = 0;
                }
            }
        }
        SeriesSum {
            value: sum / self.p,
            terms: self.modes.len(),
            converged: self.full_penetration,
        }
    }

    /// s̄_C at (unit radius, z_D).
    pub fn point(&self, z_d: f64) -> SeriesSum {
        self.sum_with(|n| (n as f64 * PI * (1.0 - z_d)).cos())
    }

    /// Mean of s̄_C over z_D ∈ [z1, z2] ⊂ [0, 1].
    pub fn averaged(&self, z1: f64, z2: f64) -> SeriesSum {
        if z2 - z1 <= 0.0 {
            return self.point(z1);
        }
        self.sum_with(|n| {
            if n == 0 {
                1.0
            } else {
                let npi = n as f64 * PI;
                ((npi * (1.0 - z1)).sin() - (npi * (1.0 - z2)).sin()) / (npi * (z2 - z1))
            }
        })
    }

    /// Transforms at z_D = 0 and z_D = 1 for Hankel variable `y`.
    pub fn boundary_transforms(&self, y: f64) -> BoundaryTransforms {
        let mu_sq = self.mu_sq(y);
        let x = y * self.scale * self.rho_w;
        let jz = j0(x);
        let jx = j1_over_x(x);
        let zero = Complex64::new(0.0, 0.0);
        // even/odd partial sums: the cosine factor is 1 at the top, (−1)^n at the base
        let (mut j1_even, mut j1_odd, mut j0_even, mut j0_odd) = (zero, zero, zero, zero);
        let (mut g_even, mut g_odd) = (zero, zero);
        for (n, m) in self.modes.iter().enumerate() {
            let inv = 1.0 / (mu_sq + m.eig);
            let a = m.beta * inv;
            if n % 2 == 0 {
                j1_even += a * m.wrho;
                j0_even += a;
                g_even += m.c_n * inv;
            } else {
                j1_odd += a * m.wrho;
                j0_odd += a;
                g_odd += m.c_n * inv;
            }
        }
        let mut top = (j1_even + j1_odd) * jx + (j0_even + j0_odd) * jz;
        let mut base = (j1_even - j1_odd) * jx + (j0_even - j0_odd) * jz;

        // tail of the bounded part of the large-n expansion, summed in closed form
        if !self.full_penetration {
            if let Some(last) = self.modes.last() {
                let w_last = self.rho_w * self.scale * (self.p_scaled + last.eig).sqrt();
                // the expansion needs |w_N| ≫ |C|; phase it in smoothly so that
                // the transform stays smooth in p
                let r = w_last.norm() / (10.0 * self.storage.norm().max(1.0));
                let blend = smoothstep(2.0 * r - 1.0);
                if blend > 0.0 {
                    let d0 = blend * (jz - (0.5 + self.storage) * jx);
                    let (u_top, u_base) = screen_green(mu_sq.sqrt(), self.d_d, self.l_d);
                    top += d0 * (u_top - (g_even + g_odd));
                    base += d0 * (u_base - (g_even - g_odd));
                }
            }
        }
        BoundaryTransforms {
            base: base / self.p,
            top: top / self.p,
        }
    }
}

/// 0 below 0, 1 above 1, C¹ in between.
fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

/// Σ_n c_n κ_n/(μ² + n²π²) in closed form for κ_n = 1 (top) and (−1)^n
/// (base): the Neumann Green's function on [0, 1] integrated over the screen.
fn screen_green(mu: Complex64, d: f64, l: f64) -> (Complex64, Complex64) {
    let f = 2.0 / ((l - d) * mu * mu);
    let top = f * (sinh_ratio(mu, 1.0 - d) - sinh_ratio(mu, 1.0 - l));
    let base = f * (sinh_ratio(mu, l) - sinh_ratio(mu, d));
    (top, base)
}

/// sinh(μa)/sinh(μ) for a ∈ [0, 1], Re μ ≥ 0.
pub(crate) fn sinh_ratio(mu: Complex64, a: f64) -> Complex64 {
    if mu.norm() < 1e-4 {
        return a * (1.0 + mu * mu * (a * a - 1.0) / 6.0);
    }
    let mu = if mu.re < 0.0 { -mu } else { mu };
    (mu * (a - 1.0)).exp() * (1.0 - (-2.0 * mu * a).exp()) / (1.0 - (-2.0 * mu).exp())
}

/// s̄_C(r_D, z_D; p) with the configured truncation.
pub fn sbar_c(g: &DimensionlessGroups, r_d: f64, z_d: f64, p: Complex64, ctl: &SeriesControls) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&z_d) {
        return Err(Error::domain(format!("z_D = {z_d} is outside the aquifer")));
    }
    ModeSet::new(g, r_d, p, ctl)?.point(z_d).into_result()
}

/// Laplace–Hankel transform of the confined drawdown at z_D = 0 or z_D = 1.
pub fn ddbar_sc(
    g: &DimensionlessGroups,
    r_d: f64,
    y: f64,
    z_d: f64,
    p: Complex64,
    ctl: &SeriesControls,
) -> Result<Complex64> {
    if !(y >= 0.0) {
        return Err(Error::domain(format!("Hankel variable {y} must be non-negative")));
    }
    let t = ModeSet::new(g, r_d, p, ctl)?.boundary_transforms(y);
    if z_d == 0.0 {
        Ok(t.base)
    } else if z_d == 1.0 {
        Ok(t.top)
    } else {
        Err(Error::domain(format!(
            "transform only needed at z_D = 0 or 1, got {z_d}"
        )))
    }
}

/// Both sides of the Hankel inversion at z_D = 0 or 1 for real p: the
/// numerically inverted ∫ y J0(√K_D r_D y) ddbar_sC dy and the direct s̄_C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTrip {
    pub inverted: Complex64,
    pub direct: Complex64,
    pub panels: usize,
}

impl RoundTrip {
    pub fn rel_error(&self) -> f64 {
        (self.inverted - self.direct).norm() / self.direct.norm()
    }
}

pub fn hankel_round_trip(
    g: &DimensionlessGroups,
    r_d: f64,
    z_d: f64,
    p: f64,
    series: &SeriesControls,
    quad: &OscillatoryQuadConfig,
) -> Result<RoundTrip> {
    if z_d != 0.0 && z_d != 1.0 {
        return Err(Error::domain(format!(
            "transform only needed at z_D = 0 or 1, got {z_d}"
        )));
    }
    let modes = ModeSet::new(g, r_d, Complex64::new(p, 0.0), series)?;
    let direct = modes.point(z_d).into_result()?;
    let s = modes.scale();
    let out = integrate_oscillatory(
        |y| {
            let t = modes.boundary_transforms(y);
            let v = if z_d == 0.0 { t.base } else { t.top };
            Ok(v * y * j0(s * y))
        },
        s,
        quad,
    )?;
    Ok(RoundTrip {
        inverted: out.value,
        direct,
        panels: out.panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::test_groups;
    use crate::special::bessel_k_complex;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn full_penetration_keeps_only_n0() {
        let mut g = test_groups();
        g.d_d = 0.0;
        g.l_d = 1.0;
        let m = ModeSet::new(&g, 0.5, c(1.0), &SeriesControls::default()).unwrap();
        assert_eq!(m.mode_count(), 1);
        assert!(screen_coefficient(7, &g) == 0.0);
    }

    #[test]
    fn line_source_limit() {
        let mut g = test_groups();
        g.d_d = 0.0;
        g.l_d = 1.0;
        g.c_wd = 0.0;
        g.rw_b = 1e-7;
        for &p in &[0.01, 1.0, 30.0] {
            let v = sbar_c(&g, 1.0, 0.3, c(p), &SeriesControls::default()).unwrap();
            let exact = 2.0 * bessel_k_complex(0, c(p.sqrt())).unwrap() / p;
            assert!((v - exact).norm() < 1e-8 * exact.norm(), "p = {p}");
        }
    }

    #[test]
    fn sinh_ratio_matches_direct() {
        for &mu in &[c(1e-6), c(0.3), Complex64::new(2.0, 5.0), c(40.0)] {
            for &a in &[0.0, 0.25, 1.0] {
                let direct = (mu * a).sinh() / mu.sinh();
                let got = sinh_ratio(mu, a);
                let expect = if mu.norm() < 1e-5 { c(a) } else { direct };
                assert!(
                    (got - expect).norm() < 1e-10 * expect.norm().max(1e-300) + 1e-14,
                    "{mu} {a}"
                );
            }
        }
    }

    #[test]
    fn closed_form_screen_sum() {
        let (d, l) = (0.1, 0.6);
        let mu = Complex64::new(1.3, 0.4);
        let mut top = c(0.0);
        let mut base = c(0.0);
        let g = DimensionlessGroups {
            d_d: d,
            l_d: l,
            ..test_groups()
        };
        for n in 0..200_000 {
            let v = screen_coefficient(n, &g) / (mu * mu + (n as f64 * PI).powi(2));
            top += v;
            base += if n % 2 == 0 { v } else { -v };
        }
        let (ut, ub) = screen_green(mu, d, l);
        assert!((ut - top).norm() < 1e-8, "{ut} vs {top}");
        assert!((ub - base).norm() < 1e-8, "{ub} vs {base}");
    }

    fn round_trip(g: &DimensionlessGroups, r_d: f64, z: f64, p: f64) -> (Complex64, Complex64) {
        let rt = hankel_round_trip(
            g,
            r_d,
            z,
            p,
            &SeriesControls::default(),
            &OscillatoryQuadConfig::default(),
        )
        .unwrap();
        (rt.inverted, rt.direct)
    }

    #[test]
    fn hankel_round_trip_full_penetration() {
        let mut g = test_groups();
        g.d_d = 0.0;
        g.l_d = 1.0;
        g.c_wd = 0.0;
        let (got, want) = round_trip(&g, 0.5, 1.0, 2.0);
        assert!((got - want).norm() < 1e-6 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn hankel_round_trip_partial_with_storage() {
        let g = test_groups();
        for &(r_d, z, p) in &[(0.5, 1.0, 0.7), (0.2, 0.0, 3.0), (1.5, 1.0, 0.05)] {
            let (got, want) = round_trip(&g, r_d, z, p);
            assert!(
                (got - want).norm() < 1e-5 * want.norm(),
                "r_D {r_d} z {z}: {got} vs {want}"
            );
        }
    }
}
