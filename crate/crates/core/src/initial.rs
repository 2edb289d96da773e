//! Initial spline coefficients from knot values and end slopes.

use crate::basis::{Mesh, NodalTable, SplineCoeffs};
use crate::error::{Error, Result};
use crate::linalg::{solve_tridiagonal, TridiagonalSystem};

/// Fits coefficients `c_{-1..=N+1}` so the spline interpolates `values` at
/// the `N + 1` knots and has slopes `d_left`, `d_right` at `a` and `b`.
///
/// The two ghost coefficients are eliminated through the slope conditions,
/// which leaves a tridiagonal system with doubled corner entries `2 alpha1`.
pub fn fit_initial(
    mesh: &Mesh,
    table: &NodalTable,
    values: &[f64],
    d_left: f64,
    d_right: f64,
) -> Result<SplineCoeffs> {
    let n = mesh.n_intervals();
    if values.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            found: values.len(),
        });
    }
    let NodalTable {
        alpha1,
        alpha2,
        beta1,
        beta2,
        ..
    } = *table;

    let mut system = TridiagonalSystem {
        sub: vec![alpha1; n + 1],
        diag: vec![alpha2; n + 1],
        sup: vec![alpha1; n + 1],
        rhs: values.to_vec(),
    };
    // c_{-1} = (d_left - beta2 c_1) / beta1
    system.sup[0] = alpha1 * (1.0 - beta2 / beta1);
    system.rhs[0] -= alpha1 / beta1 * d_left;
    // c_{N+1} = (d_right - beta1 c_{N-1}) / beta2
    system.sub[n] = alpha1 * (1.0 - beta1 / beta2);
    system.rhs[n] -= alpha1 / beta2 * d_right;

    let interior = solve_tridiagonal(&system)?;
    let mut coeffs = SplineCoeffs::zeros(n);
    for (m, v) in interior.into_iter().enumerate() {
        coeffs[m as isize] = v;
    }
    let last = n as isize;
    coeffs[-1] = (d_left - beta2 * coeffs[1]) / beta1;
    coeffs[last + 1] = (d_right - beta1 * coeffs[last - 1]) / beta2;
    Ok(coeffs)
}
