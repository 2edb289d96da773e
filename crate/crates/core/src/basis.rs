//! Trigonometric cubic B-splines on a uniform mesh.
//!
//! Each basis function `CTB_i` is supported on the four intervals
//! `[x_{i-2}, x_{i+2}]` and is built from products of half-angle sines.
//! The functions `CTB_{-1}, ..., CTB_{N+1}` span the approximation space,
//! so a spline on `N` intervals carries `N + 3` coefficients.

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul};

use crate::error::{Error, Result};

/// Uniform partition of `[a, b]` into `n` intervals, extended by three ghost
/// knots on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl Mesh {
    pub const MIN_INTERVALS: usize = 4;
    /// Number of ghost knots on each side of the domain.
    pub const GHOSTS: isize = 3;

    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
        }
        if n < Self::MIN_INTERVALS {
            return Err(Error::Domain(format!(
                "mesh needs at least {} intervals, got {n}",
                Self::MIN_INTERVALS
            )));
        }
        let h = (b - a) / n as f64;
        // sin(h/2), sin(h) and sin(3h/2) appear in denominators.
        if h >= 2.0 * PI / 3.0 {
            return Err(Error::Domain(format!(
                "mesh spacing h = {h} must be below 2*pi/3"
            )));
        }
        Ok(Self { a, b, n, h })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of intervals `N`.
    pub fn n_intervals(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Knot `x_i = a + i h`, valid for `i` in `-3..=N+3`.
    pub fn knot(&self, i: isize) -> f64 {
        self.a + i as f64 * self.h
    }

    /// The `N + 1` knots of the closed domain.
    pub fn knots(&self) -> Vec<f64> {
        (0..=self.n as isize).map(|i| self.knot(i)).collect()
    }

    fn check_knot_index(&self, i: isize) -> Result<()> {
        let hi = self.n as isize + Self::GHOSTS;
        if i < -Self::GHOSTS || i > hi {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: -Self::GHOSTS,
                hi,
            });
        }
        Ok(())
    }

    fn check_basis_index(&self, i: isize) -> Result<()> {
        let hi = self.n as isize + 1;
        if i < -1 || i > hi {
            return Err(Error::IndexOutOfRange { index: i, lo: -1, hi });
        }
        Ok(())
    }

    fn contains(&self, x: f64) -> bool {
        let slack = 1e-12 * (self.b - self.a);
        x >= self.a - slack && x <= self.b + slack
    }
}

/// Values of `CTB_i`, `CTB_i'` and `CTB_i''` at the knots `x_{i-1}`, `x_i`,
/// `x_{i+1}`.
///
/// `alpha1` is the value at both neighbours and `alpha2` the value at the
/// centre; `beta1` is the slope of `CTB_{m-1}` at `x_m` and `beta2` the slope
/// of `CTB_{m+1}` at `x_m`; `gamma1`/`gamma2` are the matching curvatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalTable {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl NodalTable {
    /// Builds the table for mesh spacing `h`, `0 < h < 2*pi/3`.
    pub fn new(h: f64) -> Result<Self> {
        if !(h > 0.0 && h < 2.0 * PI / 3.0) {
            return Err(Error::Domain(format!(
                "nodal table requires 0 < h < 2*pi/3, got {h}"
            )));
        }
        let (s_half, s_one, s_three_half) = ((h / 2.0).sin(), h.sin(), (1.5 * h).sin());
        let (c_half, c_one, c_three_half) = ((h / 2.0).cos(), h.cos(), (1.5 * h).cos());
        let cot_half = c_half / s_half;

        let alpha1 = s_half * s_half / (s_one * s_three_half);
        let alpha2 = 2.0 / (1.0 + 2.0 * c_one);
        let beta2 = 0.75 / s_three_half;
        let gamma1 =
            3.0 * (1.0 + 3.0 * c_one) / (s_half * s_half) / (16.0 * (2.0 * c_half + c_three_half));
        let gamma2 = -3.0 * cot_half * cot_half / (2.0 + 4.0 * c_one);

        Ok(Self {
            alpha1,
            alpha2,
            beta1: -beta2,
            beta2,
            gamma1,
            gamma2,
        })
    }

    /// Coefficient of `c_{m+offset}` in the nodal value at `x_m`.
    #[inline]
    pub fn alpha(&self, offset: isize) -> f64 {
        if offset == 0 {
            self.alpha2
        } else {
            self.alpha1
        }
    }

    /// Coefficient of `c_{m+offset}` in the nodal slope at `x_m`.
    #[inline]
    pub fn beta(&self, offset: isize) -> f64 {
        match offset {
            -1 => self.beta1,
            1 => self.beta2,
            _ => 0.0,
        }
    }

    /// Coefficient of `c_{m+offset}` in the nodal curvature at `x_m`.
    #[inline]
    pub fn gamma(&self, offset: isize) -> f64 {
        if offset == 0 {
            self.gamma2
        } else {
            self.gamma1
        }
    }
}

/// Free-function form of [`NodalTable::new`].
pub fn nodal_table(h: f64) -> Result<NodalTable> {
    NodalTable::new(h)
}

/// Spline coefficients `c_{-1}, ..., c_{N+1}`, indexed by their basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineCoeffs {
    values: Vec<f64>,
}

impl SplineCoeffs {
    pub fn zeros(n_intervals: usize) -> Self {
        Self {
            values: vec![0.0; n_intervals + 3],
        }
    }

    /// Wraps `N + 3` values ordered from `c_{-1}` to `c_{N+1}`.
    pub fn from_vec(values: Vec<f64>) -> Result<Self> {
        if values.len() < Mesh::MIN_INTERVALS + 3 {
            return Err(Error::LengthMismatch {
                expected: Mesh::MIN_INTERVALS + 3,
                found: values.len(),
            });
        }
        Ok(Self { values })
    }

    pub fn n_intervals(&self) -> usize {
        self.values.len() - 3
    }

    /// Index of the last coefficient, `N + 1`.
    pub fn last_index(&self) -> isize {
        self.values.len() as isize - 2
    }

    pub fn get(&self, i: isize) -> Result<f64> {
        let last = self.last_index();
        if i < -1 || i > last {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: -1,
                hi: last,
            });
        }
        Ok(self.values[(i + 1) as usize])
    }

    /// Raw storage, `c_{-1}` first.
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Nodal value, slope and curvature at every knot `x_0..=x_N`.
    pub fn nodal_profile(&self, table: &NodalTable) -> Vec<NodalValues> {
        (0..=self.n_intervals() as isize)
            .map(|m| nodal_values_unchecked(self, table, m))
            .collect()
    }
}

impl Index<isize> for SplineCoeffs {
    type Output = f64;

    #[inline]
    fn index(&self, i: isize) -> &f64 {
        &self.values[(i + 1) as usize]
    }
}

impl IndexMut<isize> for SplineCoeffs {
    #[inline]
    fn index_mut(&mut self, i: isize) -> &mut f64 {
        &mut self.values[(i + 1) as usize]
    }
}

/// Spline value and its first two derivatives at a knot.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NodalValues {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Nodal value, slope and curvature at knot `x_m` from the three
/// coefficients `c_{m-1}, c_m, c_{m+1}`.
pub fn nodal_values(coeffs: &SplineCoeffs, table: &NodalTable, m: isize) -> Result<NodalValues> {
    let n = coeffs.n_intervals() as isize;
    if m < 0 || m > n {
        return Err(Error::IndexOutOfRange {
            index: m,
            lo: 0,
            hi: n,
        });
    }
    Ok(nodal_values_unchecked(coeffs, table, m))
}

#[inline]
pub(crate) fn nodal_values_unchecked(
    coeffs: &SplineCoeffs,
    table: &NodalTable,
    m: isize,
) -> NodalValues {
    let (left, centre, right) = (coeffs[m - 1], coeffs[m], coeffs[m + 1]);
    NodalValues {
        value: table.alpha1 * left + table.alpha2 * centre + table.alpha1 * right,
        d1: table.beta1 * left + table.beta2 * right,
        d2: table.gamma1 * left + table.gamma2 * centre + table.gamma1 * right,
    }
}

/// Value with first and second derivative, propagated through products.
#[derive(Debug, Clone, Copy)]
struct Jet {
    v: f64,
    d1: f64,
    d2: f64,
}

impl Jet {
    /// `sin((x - knot) / 2)` as a function of `x`.
    fn rising(x: f64, knot: f64) -> Self {
        let (s, c) = ((x - knot) / 2.0).sin_cos();
        Self {
            v: s,
            d1: 0.5 * c,
            d2: -0.25 * s,
        }
    }

    /// `sin((knot - x) / 2)` as a function of `x`.
    fn falling(x: f64, knot: f64) -> Self {
        let (s, c) = ((knot - x) / 2.0).sin_cos();
        Self {
            v: s,
            d1: -0.5 * c,
            d2: -0.25 * s,
        }
    }

    fn cube(self) -> Self {
        self * self * self
    }

    fn scaled(self, k: f64) -> Self {
        Self {
            v: self.v * k,
            d1: self.d1 * k,
            d2: self.d2 * k,
        }
    }

    fn component(&self, deriv: u8) -> f64 {
        match deriv {
            0 => self.v,
            1 => self.d1,
            _ => self.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

const ZERO_JET: Jet = Jet {
    v: 0.0,
    d1: 0.0,
    d2: 0.0,
};

fn ctb_jet(mesh: &Mesh, i: isize, x: f64) -> Jet {
    let knot = |j: isize| mesh.knot(i + j);
    if x < knot(-2) || x > knot(2) {
        return ZERO_JET;
    }
    let w = |j: isize| Jet::rising(x, knot(j));
    let p = |j: isize| Jet::falling(x, knot(j));
    let h = mesh.h();
    let theta = (h / 2.0).sin() * h.sin() * (1.5 * h).sin();

    let piece = if x < knot(-1) {
        w(-2).cube()
    } else if x < knot(0) {
        w(-2) * (w(-2) * p(0) + p(1) * w(-1)) + p(2) * w(-1) * w(-1)
    } else if x < knot(1) {
        w(-2) * p(1) * p(1) + p(2) * (w(-1) * p(1) + p(2) * w(0))
    } else {
        p(2).cube()
    };
    piece.scaled(1.0 / theta)
}

/// `CTB_i(x)` (`deriv = 0`) or its first/second derivative, from the
/// closed-form piecewise definition.
///
/// `x` may lie anywhere in the ghost-extended range `[x_{-3}, x_{N+3}]`.
pub fn eval_ctb(mesh: &Mesh, i: isize, x: f64, deriv: u8) -> Result<f64> {
    mesh.check_basis_index(i)?;
    if deriv > 2 {
        return Err(Error::Domain(format!("derivative order {deriv} not in 0..=2")));
    }
    let lo = mesh.knot(-Mesh::GHOSTS);
    let hi = mesh.knot(mesh.n_intervals() as isize + Mesh::GHOSTS);
    if !(x >= lo && x <= hi) {
        return Err(Error::Domain(format!("x = {x} outside [{lo}, {hi}]")));
    }
    Ok(ctb_jet(mesh, i, x).component(deriv))
}

/// Order-`k` trigonometric B-spline `T_i^k(x)` on knots `x_i..=x_{i+k}` from
/// the sine-weighted two-term recursion.
///
/// For `k = 4` this equals `CTB_{i+2}` on a uniform mesh.
pub fn eval_ctb_recursive(mesh: &Mesh, i: isize, k: usize, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("recursion order must be at least 1".into()));
    }
    mesh.check_knot_index(i)?;
    mesh.check_knot_index(i + k as isize)?;
    recursive(mesh, i, k, x)
}

fn recursive(mesh: &Mesh, i: isize, k: usize, x: f64) -> Result<f64> {
    if k == 1 {
        let inside = x >= mesh.knot(i) && x < mesh.knot(i + 1);
        return Ok(if inside { 1.0 } else { 0.0 });
    }
    let ku = k as isize;
    let left_den = ((mesh.knot(i + ku - 1) - mesh.knot(i)) / 2.0).sin();
    let right_den = ((mesh.knot(i + ku) - mesh.knot(i + 1)) / 2.0).sin();
    if left_den.abs() < 1e-300 || right_den.abs() < 1e-300 {
        return Err(Error::Domain(format!(
            "order {k} recursion has a vanishing sine denominator"
        )));
    }
    let left = ((x - mesh.knot(i)) / 2.0).sin() / left_den * recursive(mesh, i, k - 1, x)?;
    let right =
        ((mesh.knot(i + ku) - x) / 2.0).sin() / right_den * recursive(mesh, i + 1, k - 1, x)?;
    Ok(left + right)
}

/// `sum_i c_i CTB_i(x)` at an arbitrary `x` in `[a, b]`.
pub fn spline_eval_dense(mesh: &Mesh, coeffs: &SplineCoeffs, x: f64) -> Result<f64> {
    spline_eval(mesh, coeffs, x, 0)
}

/// Spline value or derivative (`deriv` in `0..=2`) at an arbitrary `x` in
/// `[a, b]`.
pub fn spline_eval(mesh: &Mesh, coeffs: &SplineCoeffs, x: f64, deriv: u8) -> Result<f64> {
    if coeffs.n_intervals() != mesh.n_intervals() {
        return Err(Error::LengthMismatch {
            expected: mesh.n_intervals() + 3,
            found: coeffs.as_slice().len(),
        });
    }
    if !mesh.contains(x) {
        return Err(Error::Domain(format!(
            "x = {x} outside [{}, {}]",
            mesh.a(),
            mesh.b()
        )));
    }
    if deriv > 2 {
        return Err(Error::Domain(format!("derivative order {deriv} not in 0..=2")));
    }
    // Only CTB_{j-1..=j+2} are nonzero on [x_j, x_{j+1}].
    let n = mesh.n_intervals() as isize;
    let j = (((x - mesh.a()) / mesh.h()).floor() as isize).clamp(0, n - 1);
    let sum = ((j - 1)..=(j + 2))
        .filter(|&i| (-1..=n + 1).contains(&i))
        .map(|i| coeffs[i] * ctb_jet(mesh, i, x).component(deriv))
        .sum();
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh_with_h(h: f64) -> Mesh {
        Mesh::new(0.0, 10.0 * h, 10).unwrap()
    }

    /// Second central difference of the closed form, independent of the
    /// analytic derivative path.
    fn fd_second(mesh: &Mesh, i: isize, x: f64, step: f64) -> f64 {
        let f = |y: f64| ctb_jet(mesh, i, y).v;
        (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)
    }

    /// The third derivative jumps at knots, which leaves the raw second
    /// difference with an O(step) error there; one Richardson step cancels it.
    fn fd_second_extrapolated(mesh: &Mesh, i: isize, x: f64, step: f64) -> f64 {
        2.0 * fd_second(mesh, i, x, step / 2.0) - fd_second(mesh, i, x, step)
    }

    fn fd_first(mesh: &Mesh, i: isize, x: f64, step: f64) -> f64 {
        let f = |y: f64| ctb_jet(mesh, i, y).v;
        (f(x + step) - f(x - step)) / (2.0 * step)
    }

    #[test]
    fn mesh_rejects_bad_spacing() {
        assert!(Mesh::new(0.0, 1.0, 3).is_err());
        assert!(Mesh::new(1.0, 0.0, 10).is_err());
        assert!(Mesh::new(0.0, 2.1 * 4.0, 4).is_err());
        assert!(Mesh::new(0.0, 1.0, 4).is_ok());
    }

    #[test]
    fn table_rejects_inadmissible_h() {
        assert!(NodalTable::new(0.0).is_err());
        assert!(NodalTable::new(-0.1).is_err());
        assert!(NodalTable::new(2.0 * PI / 3.0).is_err());
        assert!(NodalTable::new(f64::NAN).is_err());
    }

    #[test]
    fn table_at_half() {
        let t = NodalTable::new(0.5).unwrap();
        assert!((t.alpha2 - 2.0 / (1.0 + 2.0 * 0.5f64.cos())).abs() < 1e-15);
        assert!((t.alpha2 - 0.725909).abs() < 1e-6);
        assert_eq!(t.beta1 + t.beta2, 0.0);
        assert!(t.alpha1 > 0.0 && t.alpha2 > 0.0);
        // Trigonometric splines do not sum to one.
        assert!((2.0 * t.alpha1 + t.alpha2 - 1.0).abs() > 0.05);
    }

    #[test]
    fn gamma2_matches_closed_form_curvature() {
        let h = 0.5;
        let mesh = mesh_with_h(h);
        let t = NodalTable::new(h).unwrap();
        let i = 5;
        let fd = fd_second(&mesh, i, mesh.knot(i), 1e-2 * h);
        assert!((fd - t.gamma2).abs() < 1e-2 * t.gamma2.abs(), "fd {fd} vs {}", t.gamma2);
        assert!((t.gamma2 + 8.3498).abs() < 1e-3, "gamma2 = {}", t.gamma2);
        // The cot^2(3h/2) variant is far off.
        let other = -3.0 / (1.5 * h).tan().powi(2) / (2.0 + 4.0 * h.cos());
        assert!((other + 0.627).abs() < 1e-3);
        assert!((fd - other).abs() > 7.0);
    }

    #[test]
    fn table_agrees_with_finite_differences() {
        for &h in &[0.05, 0.1, 0.5, 1.0] {
            let mesh = mesh_with_h(h);
            let t = NodalTable::new(h).unwrap();
            let i = 5;
            let step = 1e-4 * h;
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            let at = |k: isize| mesh.knot(i + k);
            assert!(rel(ctb_jet(&mesh, i, at(-1)).v, t.alpha1) < 1e-6);
            assert!(rel(ctb_jet(&mesh, i, at(0)).v, t.alpha2) < 1e-6);
            // d/dx CTB_{m+1} at x_m is beta2, i.e. the slope at the left neighbour.
            assert!(rel(fd_first(&mesh, i, at(-1), step), t.beta2) < 1e-6);
            assert!(rel(fd_first(&mesh, i, at(1), step), t.beta1) < 1e-6);
            assert!(fd_first(&mesh, i, at(0), step).abs() < 1e-6 * t.beta2.abs());
            assert!(rel(fd_second_extrapolated(&mesh, i, at(-1), step), t.gamma1) < 1e-6);
            assert!(rel(fd_second_extrapolated(&mesh, i, at(0), step), t.gamma2) < 1e-6);
            assert!(rel(fd_second_extrapolated(&mesh, i, at(1), step), t.gamma1) < 1e-6);
        }
    }

    #[test]
    fn knot_values_match_table_analytically() {
        for &h in &[0.05, 0.1, 0.5] {
            let mesh = mesh_with_h(h);
            let t = NodalTable::new(h).unwrap();
            let i = 4;
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
            for (k, (v, d1, d2)) in [
                (-1, (t.alpha1, t.beta2, t.gamma1)),
                (0, (t.alpha2, 0.0, t.gamma2)),
                (1, (t.alpha1, t.beta1, t.gamma1)),
            ] {
                let x = mesh.knot(i + k);
                assert!(close(eval_ctb(&mesh, i, x, 0).unwrap(), v));
                assert!(close(eval_ctb(&mesh, i, x, 1).unwrap(), d1));
                assert!(close(eval_ctb(&mesh, i, x, 2).unwrap(), d2));
            }
            for k in [-2, 2] {
                let x = mesh.knot(i + k);
                for d in 0..=2 {
                    assert!(eval_ctb(&mesh, i, x, d).unwrap().abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn value_at_left_neighbour_is_alpha1_formula() {
        let h = 0.3;
        let mesh = mesh_with_h(h);
        let expected = (h / 2.0).sin().powi(2) / h.sin() / (1.5 * h).sin();
        let got = eval_ctb(&mesh, 3, mesh.knot(2), 0).unwrap();
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn eval_ctb_rejects_bad_arguments() {
        let mesh = mesh_with_h(0.5);
        assert!(eval_ctb(&mesh, -2, 1.0, 0).is_err());
        assert!(eval_ctb(&mesh, 12, 1.0, 0).is_err());
        assert!(eval_ctb(&mesh, 3, 1.0, 3).is_err());
        assert!(eval_ctb(&mesh, 3, 100.0, 0).is_err());
    }

    #[test]
    fn closed_form_matches_recursion_off_knot() {
        let h = 0.5;
        let mesh = mesh_with_h(h);
        let i = 5;
        let x = mesh.knot(i) + 0.3 * h;
        let closed = eval_ctb(&mesh, i, x, 0).unwrap();
        let rec = eval_ctb_recursive(&mesh, i - 2, 4, x).unwrap();
        assert!((closed - rec).abs() < 1e-12, "{closed} vs {rec}");
    }

    #[test]
    fn recursion_base_case_is_indicator() {
        let mesh = mesh_with_h(0.5);
        assert_eq!(eval_ctb_recursive(&mesh, 2, 1, mesh.knot(2)).unwrap(), 1.0);
        assert_eq!(eval_ctb_recursive(&mesh, 2, 1, mesh.knot(2) + 0.2).unwrap(), 1.0);
        assert_eq!(eval_ctb_recursive(&mesh, 2, 1, mesh.knot(3)).unwrap(), 0.0);
        assert_eq!(eval_ctb_recursive(&mesh, 2, 1, mesh.knot(1)).unwrap(), 0.0);
        assert!(eval_ctb_recursive(&mesh, 2, 0, 1.0).is_err());
        assert!(eval_ctb_recursive(&mesh, 11, 4, 1.0).is_err());
        assert!(eval_ctb_recursive(&mesh, -4, 2, 1.0).is_err());
    }

    #[test]
    fn recursion_is_proportional_to_closed_form() {
        for &h in &[0.05, 0.1, 0.5] {
            let mesh = mesh_with_h(h);
            let i = 5;
            let probe = mesh.knot(i) + 0.37 * h;
            let ratio = eval_ctb(&mesh, i, probe, 0).unwrap()
                / eval_ctb_recursive(&mesh, i - 2, 4, probe).unwrap();
            println!("h = {h}: closed/recursive scale = {ratio:.15}");
            for interval in -2..2 {
                for s in 0..64 {
                    let x = mesh.knot(i + interval) + (s as f64 + 0.5) / 64.0 * h;
                    let closed = eval_ctb(&mesh, i, x, 0).unwrap();
                    let rec = eval_ctb_recursive(&mesh, i - 2, 4, x).unwrap();
                    assert!((closed - ratio * rec).abs() < 1e-10, "h={h} x={x}");
                }
            }
        }
    }

    #[test]
    fn nodal_values_edge_cases() {
        let t = NodalTable::new(0.5).unwrap();
        let zero = SplineCoeffs::zeros(6);
        assert_eq!(nodal_values(&zero, &t, 3).unwrap(), NodalValues::default());
        let ones = SplineCoeffs::from_vec(vec![1.0; 9]).unwrap();
        let nv = nodal_values(&ones, &t, 3).unwrap();
        assert!((nv.value - (2.0 * t.alpha1 + t.alpha2)).abs() < 1e-15);
        assert_eq!(nv.d1, 0.0);
        assert!(nodal_values(&ones, &t, -1).is_err());
        assert!(nodal_values(&ones, &t, 7).is_err());
        assert!(nodal_values(&ones, &t, 6).is_ok());
    }

    #[test]
    fn coefficient_indexing() {
        let c = SplineCoeffs::from_vec((0..9).map(f64::from).collect()).unwrap();
        assert_eq!(c.n_intervals(), 6);
        assert_eq!(c[-1], 0.0);
        assert_eq!(c[7], 8.0);
        assert_eq!(c.get(7).unwrap(), 8.0);
        assert!(c.get(8).is_err());
        assert!(c.get(-2).is_err());
        assert!(SplineCoeffs::from_vec(vec![0.0; 3]).is_err());
    }

    #[test]
    fn dense_eval_of_zero_is_zero() {
        let mesh = mesh_with_h(0.5);
        let c = SplineCoeffs::zeros(10);
        assert_eq!(spline_eval_dense(&mesh, &c, 1.3).unwrap(), 0.0);
        assert!(spline_eval_dense(&mesh, &c, -0.1).is_err());
        assert!(spline_eval_dense(&mesh, &SplineCoeffs::zeros(8), 1.0).is_err());
    }
}
