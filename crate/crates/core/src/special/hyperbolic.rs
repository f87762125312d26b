use num_complex::Complex64;

/// Sentinel for an unbounded layer thickness.
pub const RB_INFINITE: f64 = f64::INFINITY;

/// tanh(z) via e^{−2z}, saturating to ±1 for large |Re z|. An infinite real
/// part gives ±1 exactly.
pub fn stable_tanh(z: Complex64) -> Complex64 {
    if z.re.is_infinite() {
        return Complex64::new(z.re.signum(), 0.0);
    }
    if z.re >= 0.0 {
        let e = (-2.0 * z).exp();
        (1.0 - e) / (1.0 + e)
    } else {
        let e = (2.0 * z).exp();
        (e - 1.0) / (e + 1.0)
    }
}

/// cosh(num)/cosh(den) for Re num ≤ Re den with Re den ≥ 0.
///
/// Written as e^{num−den}(1 + e^{−2num})/(1 + e^{−2den}). For an unbounded
/// layer use [`cosh_ratio_shifted`].
pub fn stable_cosh_ratio(num: Complex64, den: Complex64) -> Complex64 {
    if num == den {
        return Complex64::new(1.0, 0.0);
    }
    let n = if num.re < 0.0 { -num } else { num };
    let d = if den.re < 0.0 { -den } else { den };
    let lead = (n - d).exp();
    lead * (1.0 + (-2.0 * n).exp()) / (1.0 + (-2.0 * d).exp())
}

/// cosh(m(z + R))/cosh(m R) for z ≤ 0, Re m ≥ 0, including R = ∞ where it
/// equals e^{m z}.
pub fn cosh_ratio_shifted(m: Complex64, z: f64, r: f64) -> Complex64 {
    if r.is_infinite() {
        return (m * z).exp();
    }
    stable_cosh_ratio(m * (z + r), m * r)
}
