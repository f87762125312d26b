use num_complex::Complex64;

/// Result of Wynn's epsilon algorithm on a sequence of partial sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accelerated {
    pub value: Complex64,
    /// Set when a vanishing difference stopped the table early; `value` is
    /// then the best even-column entry reached.
    pub degenerate: bool,
}

/// Epsilon-algorithm extrapolant of `partial_sums` (length ≥ 3).
///
/// Returns the deepest even column entry of the table that can be built.
pub fn accelerate_sequence(partial_sums: &[Complex64]) -> Accelerated {
    let n = partial_sums.len();
    let last = *partial_sums
        .last()
        .expect("accelerate_sequence needs at least one value");
    if n < 3 {
        return Accelerated {
            value: last,
            degenerate: true,
        };
    }
    // prev = eps_{k-1}, cur = eps_k, column by column
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = partial_sums.to_vec();
    let mut best = last;
    let mut k = 0;
    loop {
        if cur.len() < 2 {
            break;
        }
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let scale = cur[i + 1].norm().max(cur[i].norm());
            if diff.norm() <= 1e-15 * scale || diff.norm() == 0.0 {
                // an even column has settled to working precision
                let value = if k % 2 == 0 { cur[i + 1] } else { best };
                return Accelerated {
                    value,
                    degenerate: true,
                };
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            if let Some(v) = cur.last() {
                if v.re.is_finite() && v.im.is_finite() {
                    best = *v;
                }
            }
        }
    }
    Accelerated {
        value: best,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn geometric_is_exact() {
        let a = accelerate_sequence(&[r(1.0), r(0.5), r(0.75)]);
        assert!((a.value.re - 2.0 / 3.0).abs() < 1e-12);
        assert!(!a.degenerate);
    }

    #[test]
    fn constant_sequence() {
        let c = Complex64::new(1.5, -2.0);
        let a = accelerate_sequence(&[c, c, c]);
        assert_eq!(a.value, c);
        assert!(a.degenerate);
    }

    #[test]
    fn alternating_harmonic() {
        let mut sums = Vec::new();
        let mut s = 0.0;
        for k in 1..=10 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            sums.push(r(s));
        }
        let a = accelerate_sequence(&sums);
        assert!((a.value.re - std::f64::consts::LN_2).abs() < 1e-6, "{}", a.value);
    }

    #[test]
    fn complex_geometric() {
        let q = Complex64::new(-0.4, 0.3);
        let mut sums = Vec::new();
        let mut s = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for _ in 0..5 {
            s += term;
            term *= q;
            sums.push(s);
        }
        let exact = 1.0 / (1.0 - q);
        assert!((accelerate_sequence(&sums).value - exact).norm() < 1e-12);
    }
}
