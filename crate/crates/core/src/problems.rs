//! Benchmark problems for the coupled Burgers system
//!
//! ```text
//! U_t - U_xx + k1 U U_x + k2 (U V)_x = 0
//! V_t - V_xx + k1 V V_x + k3 (U V)_x = 0
//! ```
//!
//! on `[a, b]` with Dirichlet data at both ends.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Function of `x` (initial data) or of `t` (boundary data).
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Function of `(x, t)`.
pub type Field = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Maximum absolute PDE residual an exact solution may show.
pub const EXACT_RESIDUAL_GATE: f64 = 1e-6;

#[derive(Clone)]
pub struct ExactSolution {
    pub u: Field,
    pub v: Field,
}

/// Dirichlet data `U(a,t) = f1`, `V(a,t) = g1`, `U(b,t) = f2`, `V(b,t) = g2`.
#[derive(Clone)]
pub struct BoundaryData {
    pub u_left: Profile,
    pub v_left: Profile,
    pub u_right: Profile,
    pub v_right: Profile,
}

impl BoundaryData {
    pub fn homogeneous() -> Self {
        let zero: Profile = Arc::new(|_| 0.0);
        Self {
            u_left: zero.clone(),
            v_left: zero.clone(),
            u_right: zero.clone(),
            v_right: zero,
        }
    }

    pub fn at(&self, t: f64) -> BoundaryValues {
        BoundaryValues {
            u_left: (self.u_left)(t),
            v_left: (self.v_left)(t),
            u_right: (self.u_right)(t),
            v_right: (self.v_right)(t),
        }
    }
}

/// Dirichlet values at one time level.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryValues {
    pub u_left: f64,
    pub v_left: f64,
    pub u_right: f64,
    pub v_right: f64,
}

#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub a: f64,
    pub b: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub initial_u: Profile,
    pub initial_v: Profile,
    /// `(U_x(a, 0), U_x(b, 0))`, taken from inside the domain.
    pub initial_slopes_u: (f64, f64),
    pub initial_slopes_v: (f64, f64),
    pub boundary: BoundaryData,
    pub exact: Option<ExactSolution>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("domain", &(self.a, self.b))
            .field("k", &(self.k1, self.k2, self.k3))
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    pub fn with_coefficients(mut self, k1: f64, k2: f64, k3: f64) -> Self {
        self.k1 = k1;
        self.k2 = k2;
        self.k3 = k3;
        self
    }

    /// Largest mismatch between initial and boundary data at the two corners.
    pub fn corner_mismatch(&self) -> f64 {
        let bc = self.boundary.at(0.0);
        [
            (self.initial_u)(self.a) - bc.u_left,
            (self.initial_v)(self.a) - bc.v_left,
            (self.initial_u)(self.b) - bc.u_right,
            (self.initial_v)(self.b) - bc.v_right,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }

    /// Exact `(U, V)` at the given knots, if known.
    pub fn exact_at(&self, xs: &[f64], t: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        self.exact.as_ref().map(|e| {
            (
                xs.iter().map(|&x| (e.u)(x, t)).collect(),
                xs.iter().map(|&x| (e.v)(x, t)).collect(),
            )
        })
    }
}

/// `U = V = exp(-t) sin x` on `[-pi, pi]` with `k1 = -2`, `k2 = k3 = 1`.
pub fn problem1() -> ProblemSpec {
    let exact: Field = Arc::new(|x: f64, t: f64| (-t).exp() * x.sin());
    ProblemSpec {
        name: "problem1".into(),
        a: -PI,
        b: PI,
        k1: -2.0,
        k2: 1.0,
        k3: 1.0,
        initial_u: Arc::new(f64::sin),
        initial_v: Arc::new(f64::sin),
        initial_slopes_u: ((-PI).cos(), PI.cos()),
        initial_slopes_v: ((-PI).cos(), PI.cos()),
        boundary: BoundaryData::homogeneous(),
        exact: Some(ExactSolution {
            u: exact.clone(),
            v: exact,
        }),
    }
}

/// Travelling `tanh` front on `[-10, 10]` with `k1 = 2`.
///
/// Amplitude `A = a0 (4 k2 k3 - 1) / (2 (2 k2 - 1))`; initial and boundary
/// data are sampled from the closed-form solution. Whether that pair really
/// solves the system is checked by [`verify_exact`], not assumed.
pub fn problem2(a0: f64, k2: f64, k3: f64) -> Result<ProblemSpec> {
    let d1 = 2.0 * k2 - 1.0;
    let d2 = 4.0 * k2 * k3 - 1.0;
    if d1.abs() < 1e-12 || d2.abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "degenerate coefficients k2 = {k2}, k3 = {k3}: need 2k2 - 1 != 0 and 4k2k3 - 1 != 0"
        )));
    }
    let amp = 0.5 * a0 * d2 / d1;
    let front = 2.0 * amp * d1 / d2;
    let v_offset = a0 * (2.0 * k3 - 1.0) / d1;

    let u: Field = Arc::new(move |x, t| a0 - front * (amp * (x - 2.0 * amp * t)).tanh());
    let v: Field = Arc::new(move |x, t| v_offset - front * (amp * (x - 2.0 * amp * t)).tanh());
    let (a, b) = (-10.0, 10.0);
    let slope = move |x: f64| {
        let s = 1.0 / (amp * x).cosh();
        -front * amp * s * s
    };

    let iu = u.clone();
    let iv = v.clone();
    let (bu_l, bu_r, bv_l, bv_r) = (u.clone(), u.clone(), v.clone(), v.clone());
    Ok(ProblemSpec {
        name: "problem2".into(),
        a,
        b,
        k1: 2.0,
        k2,
        k3,
        initial_u: Arc::new(move |x| iu(x, 0.0)),
        initial_v: Arc::new(move |x| iv(x, 0.0)),
        initial_slopes_u: (slope(a), slope(b)),
        initial_slopes_v: (slope(a), slope(b)),
        boundary: BoundaryData {
            u_left: Arc::new(move |t| bu_l(a, t)),
            v_left: Arc::new(move |t| bv_l(a, t)),
            u_right: Arc::new(move |t| bu_r(b, t)),
            v_right: Arc::new(move |t| bv_r(b, t)),
        },
        exact: Some(ExactSolution { u, v }),
    })
}

/// Half-wave pulses on `[0, 1]` with homogeneous boundaries and no known
/// solution.
pub fn problem3(k1: f64, k2: f64, k3: f64) -> ProblemSpec {
    let two_pi = 2.0 * PI;
    ProblemSpec {
        name: "problem3".into(),
        a: 0.0,
        b: 1.0,
        k1,
        k2,
        k3,
        initial_u: Arc::new(move |x| if x <= 0.5 { (two_pi * x).sin() } else { 0.0 }),
        initial_v: Arc::new(move |x| if x <= 0.5 { 0.0 } else { -(two_pi * x).sin() }),
        initial_slopes_u: (two_pi, 0.0),
        initial_slopes_v: (0.0, -two_pi * two_pi.cos()),
        boundary: BoundaryData::homogeneous(),
        exact: None,
    }
}

/// Residuals of both equations at `(x, t)` from central differences.
///
/// Space step is `1e-4 * span` (`span` being the domain length), time step
/// `1e-4 * max(t, 1)`.
#[allow(clippy::too_many_arguments)]
pub fn pde_residual(
    u: &dyn Fn(f64, f64) -> f64,
    v: &dyn Fn(f64, f64) -> f64,
    k1: f64,
    k2: f64,
    k3: f64,
    x: f64,
    t: f64,
    span: f64,
) -> (f64, f64) {
    let hx = 1e-4 * span;
    let ht = 1e-4 * t.max(1.0);

    let dt = |f: &dyn Fn(f64, f64) -> f64| (f(x, t + ht) - f(x, t - ht)) / (2.0 * ht);
    let dx = |f: &dyn Fn(f64, f64) -> f64| (f(x + hx, t) - f(x - hx, t)) / (2.0 * hx);
    let dxx =
        |f: &dyn Fn(f64, f64) -> f64| (f(x + hx, t) - 2.0 * f(x, t) + f(x - hx, t)) / (hx * hx);
    let uv = |y: f64, s: f64| u(y, s) * v(y, s);

    let (u0, v0) = (u(x, t), v(x, t));
    let uv_x = dx(&uv);
    let r_u = dt(u) - dxx(u) + k1 * u0 * dx(u) + k2 * uv_x;
    let r_v = dt(v) - dxx(v) + k1 * v0 * dx(v) + k3 * uv_x;
    (r_u, r_v)
}

/// Outcome of checking a closed-form solution against the PDE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCheck {
    pub max_residual: f64,
    pub worst_x: f64,
    pub worst_t: f64,
    pub samples: usize,
}

impl ExactCheck {
    pub fn passed(&self) -> bool {
        self.max_residual <= EXACT_RESIDUAL_GATE
    }
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let inv = 1.0 / base as f64;
    let (mut out, mut f) = (0.0, inv);
    while i > 0 {
        out += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    out
}

/// Evaluates [`pde_residual`] at `samples` Halton points in the open region
/// `(a, b) x (0, 3]`. Returns `None` when the problem has no exact solution.
pub fn verify_exact(problem: &ProblemSpec, samples: usize) -> Option<ExactCheck> {
    let exact = problem.exact.as_ref()?;
    let span = problem.b - problem.a;
    let mut check = ExactCheck {
        max_residual: 0.0,
        worst_x: problem.a,
        worst_t: 0.0,
        samples,
    };
    for i in 1..=samples {
        let x = problem.a + span * (0.02 + 0.96 * radical_inverse(i, 2));
        let t = 0.01 + 2.99 * radical_inverse(i, 3);
        let (ru, rv) = pde_residual(
            &*exact.u, &*exact.v, problem.k1, problem.k2, problem.k3, x, t, span,
        );
        let r = ru.abs().max(rv.abs());
        if r.is_nan() || r > check.max_residual {
            check.max_residual = r;
            check.worst_x = x;
            check.worst_t = t;
        }
    }
    Some(check)
}
