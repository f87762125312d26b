//! Modified Bessel functions I_ν and K_ν for complex argument in the closed
//! right half-plane.
//!
//! Regimes:
//! * ν ≥ 12: Debye uniform expansion at orders ν and ν+1.
//! * |z| large relative to ν²: Hankel expansion.
//! * otherwise: Temme's method. K_μ, K_{μ+1} with |μ| ≤ 1/2 from the series
//!   (|z| ≤ 2) or Steed's continued fraction, forward recurrence up to ν,
//!   then I_{ν+1}/I_ν from its continued fraction and I_ν from the Wronskian
//!   I_ν K_{ν+1} + I_{ν+1} K_ν = 1/z.
//!
//! Ordinary Bessel functions of imaginary argument map onto this pair through
//!
//!   J_ν(i z) = e^{iνπ/2} I_ν(z),
//!   Y_ν(i z) = e^{i(ν+1)π/2} I_ν(z) − (2/π) e^{−iνπ/2} K_ν(z),
//!
//! so any combination J_ν(i·) + χ Y_ν(i·) is a combination of I_ν and K_ν with
//! constant coefficients and can be formed from scaled values without the
//! cancellation a direct J/Y evaluation would suffer.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{AccuracyPolicy, BesselOrder, ScaledComplex};
use crate::error::{Error, Result};

const DEBYE_MIN_ORDER: f64 = 12.0;
const DEBYE_TERMS: usize = 20;
const RESCALE: f64 = 1e250;

/// I_ν, I_{ν+1}, K_ν, K_{ν+1} at one argument, each carrying its own exponent.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedPair {
    pub i_nu: ScaledComplex,
    pub i_nu1: ScaledComplex,
    pub k_nu: ScaledComplex,
    pub k_nu1: ScaledComplex,
}

impl ModifiedPair {
    /// z I_{ν+1}(z)/I_ν(z)
    pub fn z_i_ratio(&self, z: Complex64) -> Complex64 {
        z * self.i_nu1.ratio(self.i_nu)
    }

    /// z K_{ν+1}(z)/K_ν(z)
    pub fn z_k_ratio(&self, z: Complex64) -> Complex64 {
        z * self.k_nu1.ratio(self.k_nu)
    }
}

/// K_0(z) or K_1(z) for Re z > 0.
pub fn bessel_k_complex(order: u8, z: Complex64) -> Result<Complex64> {
    let (k0, k1) = bessel_k01_scaled(z)?;
    let unscale = (-z).exp();
    match order {
        0 => Ok(k0 * unscale),
        1 => Ok(k1 * unscale),
        _ => Err(Error::domain(format!("bessel_k_complex order {order} not in {{0, 1}}"))),
    }
}

/// (e^z K_0(z), e^z K_1(z)) for Re z > 0.
pub fn bessel_k01_scaled(z: Complex64) -> Result<(Complex64, Complex64)> {
    check_k_argument(z)?;
    if !(z.re > 0.0) {
        return Err(Error::domain(format!("K0/K1 need Re z > 0, got {z}")));
    }
    let policy = AccuracyPolicy::default();
    let (k0, k1) = k_mu_scaled(0.0, z, &policy)?;
    Ok((k0, k1))
}

/// I_ν(z) alone; defined at z = 0, where the K member of the pair is not.
pub fn bessel_i(order: BesselOrder, z: Complex64) -> Result<ScaledComplex> {
    if z.norm() == 0.0 {
        let v = if order.value() == 0.0 { 1.0 } else { 0.0 };
        return Ok(ScaledComplex::from_complex(Complex64::new(v, 0.0)));
    }
    Ok(bessel_modified_general(order, z)?.i_nu)
}

/// I and K at orders ν and ν+1 for Re z ≥ 0, z ≠ 0.
pub fn bessel_modified_general(order: BesselOrder, z: Complex64) -> Result<ModifiedPair> {
    check_k_argument(z)?;
    if z.re < 0.0 {
        return Err(Error::domain(format!("modified Bessel pair needs Re z >= 0, got {z}")));
    }
    let nu = order.value();
    let policy = AccuracyPolicy::default();
    let near_turning = (Complex64::new(1.0, 0.0) + (z / nu.max(1.0)).powi(2)).norm() < 0.25;
    if nu >= DEBYE_MIN_ORDER && !near_turning {
        return Ok(ModifiedPair {
            i_nu: debye(nu, z, true),
            i_nu1: debye(nu + 1.0, z, true),
            k_nu: debye(nu, z, false),
            k_nu1: debye(nu + 1.0, z, false),
        });
    }
    if nu < DEBYE_MIN_ORDER && z.norm() >= 30.0 + 2.0 * nu * nu && z.re >= 20.0 {
        return Ok(ModifiedPair {
            i_nu: hankel(nu, z, true),
            i_nu1: hankel(nu + 1.0, z, true),
            k_nu: hankel(nu, z, false),
            k_nu1: hankel(nu + 1.0, z, false),
        });
    }
    temme_pair(nu, z, &policy)
}

fn check_k_argument(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("non-finite Bessel argument {z}")));
    }
    if z.norm() == 0.0 {
        return Err(Error::Singularity("K_nu(z) is singular at z = 0".into()));
    }
    Ok(())
}

fn temme_pair(nu: f64, z: Complex64, policy: &AccuracyPolicy) -> Result<ModifiedPair> {
    let bn = (nu + 0.5).floor();
    let mu = nu - bn;
    let (k_mu, k_mu1) = k_mu_scaled(mu, z, policy)?;

    // forward recurrence on e^z K, tracking extra magnitude in `shift`
    let mut kc = k_mu;
    let mut kn = k_mu1;
    let mut shift = 0.0_f64;
    for n in 0..bn as usize {
        let next = kn * (2.0 * (mu + n as f64 + 1.0) / z) + kc;
        kc = kn;
        kn = next;
        let m = kn.norm();
        if m > RESCALE {
            kc /= m;
            kn /= m;
            shift += m.ln();
        }
    }
    let phase = Complex64::from_polar(1.0, -z.im);
    let k_nu = ScaledComplex::new(kc * phase, shift - z.re);
    let k_nu1 = ScaledComplex::new(kn * phase, shift - z.re);

    let r = i_ratio_cf1(nu, z, policy)?;
    // I_ν = 1 / (z (K_{ν+1} + r K_ν))
    let denom = ScaledComplex::new((kn + r * kc) * phase * z, shift - z.re);
    let i_nu = ScaledComplex::new(Complex64::new(1.0, 0.0) / denom.mantissa, -denom.exponent);
    let i_nu1 = i_nu.scale(r);
    Ok(ModifiedPair {
        i_nu,
        i_nu1,
        k_nu,
        k_nu1,
    })
}

/// e^z K_μ(z), e^z K_{μ+1}(z) for |μ| ≤ 1/2.
fn k_mu_scaled(mu: f64, z: Complex64, policy: &AccuracyPolicy) -> Result<(Complex64, Complex64)> {
    if z.norm() <= 2.0 {
        let (k0, k1) = temme_series(mu, z, policy)?;
        let ez = z.exp();
        Ok((k0 * ez, k1 * ez))
    } else {
        steed_cf2(mu, z, policy)
    }
}

// Chebyshev fits of 1/Γ combinations for Temme's series.
const G1_DAT: [f64; 14] = [
    -1.145_164_083_662_683,
    0.006_360_853_113_470_842,
    0.001_862_451_930_072_068_5,
    0.000_152_833_085_873_453_5,
    0.000_017_017_464_011_802_04,
    -6.459_750_292_334_725e-7,
    -5.181_984_843_251_938e-8,
    4.518_909_289_485_818e-10,
    3.243_322_737_102_087e-11,
    6.830_943_402_494_752e-13,
    2.835_350_275_517_21e-14,
    -7.988_390_576_932_359e-16,
    -3.372_667_730_077_195e-17,
    -3.658_633_480_921_052e-20,
];

const G2_DAT: [f64; 15] = [
    1.882_645_524_949_671_8,
    -0.077_490_658_396_167_52,
    -0.018_256_714_847_324_93,
    0.000_633_803_020_907_489_6,
    0.000_076_229_054_350_872_9,
    -9.550_164_756_172_044e-7,
    -8.892_726_810_788_635e-8,
    -1.952_133_477_231_961_4e-9,
    -9.400_305_273_588_516e-11,
    4.687_513_384_953_239e-12,
    2.265_853_574_692_576e-13,
    -1.172_550_969_848_801_5e-15,
    -7.044_133_820_024_522e-17,
    -2.437_787_831_010_769_4e-18,
    -7.522_524_321_825_39e-20,
];

fn cheb_eval(c: &[f64], x: f64) -> f64 {
    let y2 = 2.0 * x;
    let mut d = 0.0;
    let mut dd = 0.0;
    for &cj in c[1..].iter().rev() {
        let tmp = d;
        d = y2 * d - dd + cj;
        dd = tmp;
    }
    x * d - dd + 0.5 * c[0]
}

/// (1/Γ(1+μ), 1/Γ(1−μ), Γ1, Γ2) as used by Temme's series.
fn temme_gamma(mu: f64) -> (f64, f64, f64, f64) {
    let x = 4.0 * mu.abs() - 1.0;
    let g1 = cheb_eval(&G1_DAT, x);
    let g2 = cheb_eval(&G2_DAT, x);
    (1.0 / (g2 - mu * g1), 1.0 / (g2 + mu * g1), g1, g2)
}

fn temme_series(mu: f64, z: Complex64, policy: &AccuracyPolicy) -> Result<(Complex64, Complex64)> {
    let half_z = 0.5 * z;
    let ln_half_z = half_z.ln();
    let half_z_mu = (mu * ln_half_z).exp();
    let pi_mu = PI * mu;
    let sigma = -mu * ln_half_z;
    let sinrat = if pi_mu.abs() < f64::EPSILON {
        1.0
    } else {
        pi_mu / pi_mu.sin()
    };
    let sinhrat = if sigma.norm() < f64::EPSILON {
        Complex64::new(1.0, 0.0)
    } else {
        sigma.sinh() / sigma
    };
    let (g_1pmu, g_1mmu, g1, g2) = temme_gamma(mu);

    let mut fk = sinrat * (sigma.cosh() * g1 - sinhrat * ln_half_z * g2);
    let mut pk = 0.5 / half_z_mu * g_1pmu;
    let mut qk = 0.5 * half_z_mu * g_1mmu;
    let mut ck = Complex64::new(1.0, 0.0);
    let mut sum0 = fk;
    let mut sum1 = pk;
    let quarter_z2 = half_z * half_z;
    for k in 1..policy.max_terms {
        let kf = k as f64;
        fk = (kf * fk + pk + qk) / (kf * kf - mu * mu);
        ck *= quarter_z2 / kf;
        pk /= kf - mu;
        qk /= kf + mu;
        let hk = -kf * fk + pk;
        let del0 = ck * fk;
        let del1 = ck * hk;
        sum0 += del0;
        sum1 += del1;
        if del0.norm() < 0.5 * policy.rel_tol * sum0.norm() && del1.norm() < 0.5 * policy.rel_tol * sum1.norm() {
            return Ok((sum0, sum1 * 2.0 / z));
        }
    }
    Err(Error::SeriesNotConverged {
        partial: sum0,
        terms: policy.max_terms,
    })
}

/// Steed's continued fraction for e^z K_μ(z), e^z K_{μ+1}(z), |z| > 2.
fn steed_cf2(mu: f64, z: Complex64, policy: &AccuracyPolicy) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let mut bi = 2.0 * (one + z);
    let mut di = one / bi;
    let mut delhi = di;
    let mut hi = di;
    let mut qi = Complex64::new(0.0, 0.0);
    let mut qip1 = one;
    let mut ai = -(0.25 - mu * mu);
    let a1 = ai;
    let mut ci = -ai;
    let mut bqi = Complex64::new(-ai, 0.0);
    let mut s = one + bqi * delhi;
    let mut converged = false;
    for i in 2..=policy.max_terms {
        ai -= 2.0 * (i - 1) as f64;
        ci = -ai * ci / i as f64;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        bqi += ci * qip1;
        bi += 2.0;
        di = one / (bi + ai * di);
        delhi = (bi * di - 1.0) * delhi;
        hi += delhi;
        let dels = bqi * delhi;
        s += dels;
        if dels.norm() < policy.rel_tol * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesNotConverged {
            partial: s,
            terms: policy.max_terms,
        });
    }
    hi *= -a1;
    let k_mu = (PI / (2.0 * z)).sqrt() / s;
    let k_mu1 = k_mu * (mu + z + 0.5 - hi) / z;
    Ok((k_mu, k_mu1))
}

/// I_{ν+1}(z)/I_ν(z) by modified Lentz on 1/(2(ν+1)/z + 1/(2(ν+2)/z + ...)).
fn i_ratio_cf1(nu: f64, z: Complex64, policy: &AccuracyPolicy) -> Result<Complex64> {
    let tiny = Complex64::new(1e-30, 0.0);
    let mut f = tiny;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    let inv_z = 1.0 / z;
    for k in 1..=policy.max_terms {
        let b = 2.0 * (nu + k as f64) * inv_z;
        d = b + d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = b + 1.0 / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < policy.rel_tol {
            return Ok(f);
        }
    }
    Err(Error::SeriesNotConverged {
        partial: f,
        terms: policy.max_terms,
    })
}

/// Large-argument expansion at order `nu`.
fn hankel(nu: f64, z: Complex64, want_i: bool) -> ScaledComplex {
    let mu4 = 4.0 * nu * nu;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    let sign = if want_i { -1.0 } else { 1.0 };
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = term * (sign * (mu4 - odd * odd) / (8.0 * k as f64)) / z;
        let size = next.norm();
        if size > last {
            break;
        }
        last = size;
        term = next;
        sum += term;
        if size < 1e-17 * sum.norm() {
            break;
        }
    }
    if want_i {
        // e^z / sqrt(2πz)
        ScaledComplex::exp(z).scale(sum / (2.0 * PI * z).sqrt())
    } else {
        ScaledComplex::exp(-z).scale(sum * (PI / (2.0 * z)).sqrt())
    }
}

/// Debye polynomials u_k(t), k = 0..DEBYE_TERMS, as coefficient vectors in t.
fn debye_polynomials() -> &'static Vec<Vec<f64>> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // u_{k+1} = t²(1−t²)/2 · u_k' + 1/8 ∫_0^t (1 − 5s²) u_k(s) ds
        let mut table = vec![vec![1.0]];
        for k in 0..DEBYE_TERMS {
            let u = &table[k];
            let mut next = vec![0.0; u.len() + 3];
            for (j, &c) in u.iter().enumerate().skip(1) {
                let d = c * j as f64;
                // t^{j-1} · t²(1−t²)/2
                next[j + 1] += 0.5 * d;
                next[j + 3] -= 0.5 * d;
            }
            for (j, &c) in u.iter().enumerate() {
                next[j + 1] += c / (8.0 * (j + 1) as f64);
                next[j + 3] -= 5.0 * c / (8.0 * (j + 3) as f64);
            }
            table.push(next);
        }
        table
    })
}

fn poly_eval(c: &[f64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * t + a)
}

/// Uniform large-order expansion at order `n` (n ≥ 12).
fn debye(n: f64, z: Complex64, want_i: bool) -> ScaledComplex {
    let w = z / n;
    let s = (1.0 + w * w).sqrt();
    let t = 1.0 / s;
    let eta = s + (w / (1.0 + s)).ln();
    let polys = debye_polynomials();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut scale = 1.0;
    let sign = if want_i { 1.0 } else { -1.0 };
    let mut last = f64::INFINITY;
    for (k, p) in polys.iter().enumerate().skip(1) {
        scale *= sign / n;
        let term = poly_eval(p, t) * scale;
        let size = term.norm();
        if size > last && k > 2 {
            break;
        }
        last = size;
        sum += term;
        if size < 1e-17 * sum.norm() {
            break;
        }
    }
    let root_s = s.sqrt();
    if want_i {
        ScaledComplex::exp(n * eta).scale(sum / ((2.0 * PI * n).sqrt() * root_s))
    } else {
        ScaledComplex::exp(-n * eta).scale(sum * (PI / (2.0 * n)).sqrt() / root_s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn order(v: f64) -> BesselOrder {
        BesselOrder::new(v).unwrap()
    }

    /// Ascending series for I_ν(z), independent of the Wronskian route.
    fn i_series(nu: f64, z: Complex64) -> Complex64 {
        let q = z * z / 4.0;
        let lead = (nu * (z / 2.0).ln()).exp() / crate::special::gamma::gamma(nu + 1.0);
        let mut term = c(1.0, 0.0);
        let mut sum = term;
        for k in 1..400 {
            let kf = k as f64;
            term *= q / (kf * (kf + nu));
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        lead * sum
    }

    /// K_ν(x) = ∫_0^∞ exp(−x cosh t) cosh(νt) dt by composite Simpson.
    fn k_integral(nu: f64, x: f64) -> f64 {
        let upper = (2.0 * (40.0 + nu * 10.0) / x).acosh().max(5.0) + nu.max(1.0);
        let n = 20_000;
        let h = upper / n as f64;
        let f = |t: f64| (-x * t.cosh() + nu * t).exp() * 0.5 + (-x * t.cosh() - nu * t).exp() * 0.5;
        let mut s = f(0.0) + f(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn k0_k1_reference_values() {
        let k0 = bessel_k_complex(0, c(1.0, 0.0)).unwrap();
        let k1 = bessel_k_complex(1, c(1.0, 0.0)).unwrap();
        assert!((k0.re - 0.421_024_438_240_708_3).abs() < 1e-14);
        assert!((k1.re - 0.601_907_230_197_234_6).abs() < 1e-14);
        assert!(k0.im.abs() < 1e-15);
        for &x in &[0.05, 0.7, 1.9, 2.1, 5.0, 17.0] {
            let k0 = bessel_k_complex(0, c(x, 0.0)).unwrap().re;
            let k1 = bessel_k_complex(1, c(x, 0.0)).unwrap().re;
            assert!((k0 / k_integral(0.0, x) - 1.0).abs() < 1e-9, "K0({x})");
            assert!((k1 / k_integral(1.0, x) - 1.0).abs() < 1e-9, "K1({x})");
        }
    }

    #[test]
    fn k0_complex_against_series() {
        // K0(z) = −(ln(z/2) + γ) I0(z) + Σ (z²/4)^k H_k /(k!)²
        let gamma_e = 0.577_215_664_901_532_9;
        for &z in &[c(0.3, 0.4), c(1.5, -1.2), c(0.5, 3.0), c(2.5, 2.5), c(4.0, -1.0)] {
            let q = z * z / 4.0;
            let mut term = c(1.0, 0.0);
            let mut i0 = term;
            let mut tail = c(0.0, 0.0);
            let mut h = 0.0;
            for k in 1..200 {
                let kf = k as f64;
                term *= q / (kf * kf);
                h += 1.0 / kf;
                i0 += term;
                tail += term * h;
            }
            let exact = -((z / 2.0).ln() + gamma_e) * i0 + tail;
            let got = bessel_k_complex(0, z).unwrap();
            assert!((got - exact).norm() < 1e-11 * exact.norm(), "z = {z}: {got} vs {exact}");
        }
    }

    #[test]
    fn k_singular_and_decaying() {
        assert!(matches!(bessel_k_complex(0, c(0.0, 0.0)), Err(Error::Singularity(_))));
        let big = bessel_k_complex(0, c(800.0, 10.0)).unwrap();
        assert!(big.norm() < 1e-300);
        let (s0, s1) = bessel_k01_scaled(c(800.0, 10.0)).unwrap();
        assert!((s0.norm() * (1600.0 / PI).sqrt() - 1.0).abs() < 1e-3);
        assert!((s1 / s0 - 1.0).norm() < 1e-3);
    }

    #[test]
    fn small_argument_k1_limit() {
        let x = 1e-4;
        let k1 = bessel_k_complex(1, c(x, 0.0)).unwrap().re;
        assert!((x * k1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.2, 1.0, 3.0, 8.0, 40.0] {
            let p = bessel_modified_general(order(0.5), c(x, 0.0)).unwrap();
            let i_exact = (2.0 / (PI * x)).sqrt() * x.sinh();
            let k_exact = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((p.i_nu.value().re / i_exact - 1.0).abs() < 1e-12, "I at {x}");
            assert!((p.k_nu.value().re / k_exact - 1.0).abs() < 1e-12, "K at {x}");
        }
        let p = bessel_modified_general(order(0.5), c(1.0, 0.0)).unwrap();
        assert!((p.i_nu.value().re - 0.937_674_888_245_487_6).abs() < 1e-12);
    }

    #[test]
    fn i_at_origin() {
        assert_eq!(bessel_i(order(2.0), c(0.0, 0.0)).unwrap().value(), c(0.0, 0.0));
        assert_eq!(bessel_i(order(0.0), c(0.0, 0.0)).unwrap().value(), c(1.0, 0.0));
        assert!(matches!(
            bessel_modified_general(order(1.5), c(0.0, 0.0)),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn i_matches_series_in_all_regimes() {
        let cases = [
            (0.0, c(1.0, 0.5)),
            (2.3, c(5.0, 3.0)),
            (7.7, c(12.0, -6.0)),
            (11.9, c(3.0, 1.0)),
            (12.5, c(3.0, 1.0)),
            (20.0, c(15.0, 8.0)),
            (45.0, c(30.0, -20.0)),
            (3.0, c(60.0, 10.0)),
        ];
        for (nu, z) in cases {
            let p = bessel_modified_general(order(nu), z).unwrap();
            let exact = i_series(nu, z);
            let exact1 = i_series(nu + 1.0, z);
            assert!((p.i_nu.value() / exact - 1.0).norm() < 1e-11, "I_{nu}({z})");
            assert!((p.i_nu1.value() / exact1 - 1.0).norm() < 1e-11, "I_{}({z})", nu + 1.0);
        }
    }

    #[test]
    fn k_matches_integral_in_all_regimes() {
        for &(nu, x) in &[
            (0.3, 0.5),
            (2.6, 4.0),
            (8.0, 1.5),
            (12.0, 10.0),
            (25.5, 20.0),
            (4.0, 200.0),
        ] {
            let p = bessel_modified_general(order(nu), c(x, 0.0)).unwrap();
            let k = p.k_nu.value().re;
            let exact = k_integral(nu, x);
            assert!((k / exact - 1.0).abs() < 1e-9, "K_{nu}({x}) = {k} vs {exact}");
        }
    }

    #[test]
    fn k_ratio_tends_to_one() {
        let p = bessel_modified_general(order(1.3), c(1e4, 0.0)).unwrap();
        assert!((p.k_nu1.ratio(p.k_nu) - 1.0).norm() < 2e-4);
    }

    #[test]
    fn overflow_is_carried_in_exponent() {
        let p = bessel_modified_general(order(3.0), c(2000.0, 5.0)).unwrap();
        assert!(p.i_nu.exponent > 1990.0);
        assert!(p.k_nu.exponent < -1990.0);
        let w = ScaledComplex::new(c(2000.0, 5.0), 0.0);
        let wr = w * (p.i_nu * p.k_nu1);
        let wr2 = w * (p.i_nu1 * p.k_nu);
        assert!((wr.value() + wr2.value() - 1.0).norm() < 1e-10);
    }

    #[test]
    fn debye_and_temme_agree_at_crossover() {
        for &z in &[c(0.7, 0.2), c(9.0, 4.0), c(30.0, -10.0)] {
            let nu = 12.0;
            let debye_i = debye(nu, z, true);
            let debye_k = debye(nu, z, false);
            let t = temme_pair(nu, z, &AccuracyPolicy::default()).unwrap();
            assert!((debye_i.ratio(t.i_nu) - 1.0).norm() < 1e-12, "I at {z}");
            assert!((debye_k.ratio(t.k_nu) - 1.0).norm() < 1e-12, "K at {z}");
        }
    }
}
