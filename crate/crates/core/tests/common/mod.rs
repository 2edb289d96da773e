#![allow(dead_code)]

use burgers_core::{nodal_values, NodalTable, SolverConfig, SplineCoeffs, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeffs(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> SplineCoeffs {
    let v = (0..n + 3).map(|_| rng.random_range(-scale..scale)).collect();
    SplineCoeffs::from_vec(v).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> State {
    State {
        time: 0.0,
        delta: random_coeffs(rng, n, scale),
        phi: random_coeffs(rng, n, scale),
    }
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Linearized Crank–Nicolson residual (both equations, times 2) at knot `m`,
/// written in physical variables rather than basis coefficients:
///
///   2/dt (U' - U) - (U'_xx + U_xx) + k1 (U_x U' + U U'_x)
///     + k2 (V_x U' + V U'_x + U_x V' + U V'_x)
///
/// and the mirror image for `V` with `k3`. Primes are the new level.
pub fn linearized_residual(
    old: &State,
    new: &State,
    table: &NodalTable,
    cfg: &SolverConfig,
    m: isize,
) -> [f64; 2] {
    let u = nodal_values(&old.delta, table, m).unwrap();
    let v = nodal_values(&old.phi, table, m).unwrap();
    let un = nodal_values(&new.delta, table, m).unwrap();
    let vn = nodal_values(&new.phi, table, m).unwrap();
    let (k1, k2, k3, dt) = (cfg.k1, cfg.k2, cfg.k3, cfg.dt);
    let ru = 2.0 / dt * (un.value - u.value) - (un.d2 + u.d2)
        + k1 * (u.d1 * un.value + u.value * un.d1)
        + k2 * (v.d1 * un.value + v.value * un.d1 + u.d1 * vn.value + u.value * vn.d1);
    let rv = 2.0 / dt * (vn.value - v.value) - (vn.d2 + v.d2)
        + k1 * (v.d1 * vn.value + v.value * vn.d1)
        + k3 * (u.d1 * vn.value + u.value * vn.d1 + v.d1 * un.value + v.value * un.d1);
    [ru, rv]
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
