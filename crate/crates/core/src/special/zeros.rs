use std::f64::consts::PI;
use std::sync::OnceLock;

use super::bessel_j::{j0, j1};

const TABLE_SIZE: usize = 512;

/// k-th positive zero of J0 (k ≥ 1).
pub fn j0_zeros(k: usize) -> f64 {
    assert!(k >= 1, "J0 zeros are numbered from 1");
    let table = zero_table();
    if k <= table.len() {
        table[k - 1]
    } else {
        refine(mcmahon(k))
    }
}

fn zero_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=TABLE_SIZE).map(|k| refine(mcmahon(k))).collect())
}

fn mcmahon(k: usize) -> f64 {
    let beta = (k as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    let b2 = b8 * b8;
    beta + 1.0 / b8 - 124.0 / (3.0 * b2 * b8) + 120_928.0 / (15.0 * b2 * b2 * b8)
}

fn refine(mut x: f64) -> f64 {
    // J0' = −J1
    for _ in 0..20 {
        let step = j0(x) / j1(x);
        x += step;
        if step.abs() <= 1e-16 * x {
            break;
        }
    }
    x
}
