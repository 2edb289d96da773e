//! Crank–Nicolson time stepping of the collocation system.
//!
//! The products `(U U_x)`, `(V V_x)` and `(U V)_x` at the new level are
//! linearized about the previous level, so each step costs one block
//! tridiagonal solve. After the linearization the explicit nonlinear terms
//! cancel, and each collocation row reads
//!
//! ```text
//! (2/dt + k1 U_x + k2 V_x) U + (k1 U + k2 V) U_x - U_xx + k2 U_x V + k2 U V_x
//!     = (2/dt) U^n + U_xx^n
//! ```
//!
//! with `U`, `U_x`, `V`, `V_x` frozen at level `n` wherever they multiply a
//! new-level unknown (and the symmetric row for `V` with `k3`).

use crate::basis::{nodal_values_unchecked, Mesh, NodalTable, SplineCoeffs};
use crate::error::{Error, Result};
use crate::initial::fit_initial;
use crate::linalg::{BlockThomas, BlockTridiagonalSystem, Pair, ZERO_BLOCK};
use crate::problems::{BoundaryValues, ProblemSpec};

/// Time step, horizon and equation coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl SolverConfig {
    pub fn new(dt: f64, t_final: f64, k1: f64, k2: f64, k3: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            t_final,
            k1,
            k2,
            k3,
        };
        cfg.steps()?;
        Ok(cfg)
    }

    /// Config using the coefficients of `problem`.
    pub fn for_problem(problem: &ProblemSpec, dt: f64, t_final: f64) -> Result<Self> {
        Self::new(dt, t_final, problem.k1, problem.k2, problem.k3)
    }

    /// Number of steps to reach `t_final`; rejects a horizon that is not an
    /// integer multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Domain(format!("time step must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::Domain(format!(
                "final time must be non-negative, got {}",
                self.t_final
            )));
        }
        for k in [self.k1, self.k2, self.k3] {
            if !k.is_finite() {
                return Err(Error::Domain(format!("non-finite equation coefficient {k}")));
            }
        }
        let steps = (self.t_final / self.dt).round();
        if (steps * self.dt - self.t_final).abs() > 1e-12 * self.t_final {
            return Err(Error::Domain(format!(
                "t_final = {} is not a multiple of dt = {}",
                self.t_final, self.dt
            )));
        }
        Ok(steps as usize)
    }
}

/// Spline coefficients of `U` (`delta`) and `V` (`phi`) at one time level,
/// ghosts included.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub time: f64,
    pub delta: SplineCoeffs,
    pub phi: SplineCoeffs,
}

impl State {
    pub fn zeros(n_intervals: usize) -> Self {
        Self {
            time: 0.0,
            delta: SplineCoeffs::zeros(n_intervals),
            phi: SplineCoeffs::zeros(n_intervals),
        }
    }

    /// Fit of the problem's initial data at `t = 0`.
    pub fn initial(problem: &ProblemSpec, mesh: &Mesh, table: &NodalTable) -> Result<Self> {
        let knots = mesh.knots();
        let u0: Vec<f64> = knots.iter().map(|&x| (problem.initial_u)(x)).collect();
        let v0: Vec<f64> = knots.iter().map(|&x| (problem.initial_v)(x)).collect();
        let (ul, ur) = problem.initial_slopes_u;
        let (vl, vr) = problem.initial_slopes_v;
        Ok(Self {
            time: 0.0,
            delta: fit_initial(mesh, table, &u0, ul, ur)?,
            phi: fit_initial(mesh, table, &v0, vl, vr)?,
        })
    }

    pub fn n_intervals(&self) -> usize {
        self.delta.n_intervals()
    }

    /// Nodal values of `U` and `V` at the knots `x_0..=x_N`.
    pub fn knot_values(&self, table: &NodalTable) -> (Vec<f64>, Vec<f64>) {
        let n = self.n_intervals() as isize;
        (0..=n)
            .map(|m| {
                (
                    nodal_values_unchecked(&self.delta, table, m).value,
                    nodal_values_unchecked(&self.phi, table, m).value,
                )
            })
            .unzip()
    }

    pub fn is_finite(&self) -> bool {
        self.time.is_finite() && self.delta.is_finite() && self.phi.is_finite()
    }
}

/// `U`, `U_x`, `V`, `V_x` at each knot from the previous level.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrozenCoefficients {
    pub u: Vec<f64>,
    pub u_x: Vec<f64>,
    pub v: Vec<f64>,
    pub v_x: Vec<f64>,
}

impl FrozenCoefficients {
    pub fn from_state(state: &State, table: &NodalTable) -> Self {
        let mut frozen = Self::default();
        frozen.refresh(state, table);
        frozen
    }

    fn refresh(&mut self, state: &State, table: &NodalTable) {
        let n = state.n_intervals() as isize;
        for buf in [&mut self.u, &mut self.u_x, &mut self.v, &mut self.v_x] {
            buf.clear();
        }
        for m in 0..=n {
            let du = nodal_values_unchecked(&state.delta, table, m);
            let dv = nodal_values_unchecked(&state.phi, table, m);
            self.u.push(du.value);
            self.u_x.push(du.d1);
            self.v.push(dv.value);
            self.v_x.push(dv.d1);
        }
    }
}

fn fill_collocation(
    system: &mut BlockTridiagonalSystem,
    state: &State,
    frozen: &FrozenCoefficients,
    table: &NodalTable,
    cfg: &SolverConfig,
) {
    let rows = state.n_intervals() + 1;
    let inv_dt2 = 2.0 / cfg.dt;
    let (k1, k2, k3) = (cfg.k1, cfg.k2, cfg.k3);
    let rhs_side = 2.0 * table.alpha1 / cfg.dt + table.gamma1;
    let rhs_centre = 2.0 * table.alpha2 / cfg.dt + table.gamma2;

    for m in 0..rows {
        let (u, ux, v, vx) = (frozen.u[m], frozen.u_x[m], frozen.v[m], frozen.v_x[m]);
        let p_u = inv_dt2 + k1 * ux + k2 * vx;
        let q_u = k1 * u + k2 * v;
        let p_v = inv_dt2 + k1 * vx + k3 * ux;
        let q_v = k1 * v + k3 * u;

        let block = |s: isize| {
            let (al, be, ga) = (table.alpha(s), table.beta(s), table.gamma(s));
            [
                [p_u * al + q_u * be - ga, k2 * ux * al + k2 * u * be],
                [k3 * vx * al + k3 * v * be, p_v * al + q_v * be - ga],
            ]
        };
        system.lower[m] = block(-1);
        system.main[m] = block(0);
        system.upper[m] = block(1);

        let c = m as isize;
        let d = &state.delta;
        let f = &state.phi;
        system.rhs[m] = [
            rhs_side * d[c - 1] + rhs_centre * d[c] + rhs_side * d[c + 1],
            rhs_side * f[c - 1] + rhs_centre * f[c] + rhs_side * f[c + 1],
        ];
    }
}

/// Collocation rows at knots `0..=N` before boundary elimination.
///
/// `lower[0]` multiplies the ghost pair `(delta_{-1}, phi_{-1})` and
/// `upper[N]` the pair `(delta_{N+1}, phi_{N+1})`; both are removed by
/// [`apply_boundary_elimination`].
pub fn assemble_collocation(
    state: &State,
    table: &NodalTable,
    cfg: &SolverConfig,
) -> BlockTridiagonalSystem {
    let frozen = FrozenCoefficients::from_state(state, table);
    let mut system = BlockTridiagonalSystem::zeros(state.n_intervals() + 1);
    fill_collocation(&mut system, state, &frozen, table, cfg);
    system
}

fn eliminate_in_place(
    system: &mut BlockTridiagonalSystem,
    table: &NodalTable,
    bc: &BoundaryValues,
) -> Result<()> {
    let alpha1 = table.alpha1;
    if alpha1 == 0.0 || !alpha1.is_finite() {
        return Err(Error::Domain(format!("cannot eliminate ghosts with alpha1 = {alpha1}")));
    }
    let ratio = table.alpha2 / alpha1;
    let last = system.rows() - 1;

    // ghost = (boundary - alpha2 c_edge - alpha1 c_inner) / alpha1
    let left = [bc.u_left, bc.v_left];
    let right = [bc.u_right, bc.v_right];
    for r in 0..2 {
        for c in 0..2 {
            let g = system.lower[0][r][c];
            system.main[0][r][c] -= g * ratio;
            system.upper[0][r][c] -= g;
            system.rhs[0][r] -= g * left[c] / alpha1;

            let g = system.upper[last][r][c];
            system.main[last][r][c] -= g * ratio;
            system.lower[last][r][c] -= g;
            system.rhs[last][r] -= g * right[c] / alpha1;
        }
    }
    system.lower[0] = ZERO_BLOCK;
    system.upper[last] = ZERO_BLOCK;
    Ok(())
}

/// Folds the Dirichlet conditions into rows `0` and `N`, removing the ghost
/// columns so the system is strictly block tridiagonal.
pub fn apply_boundary_elimination(
    mut system: BlockTridiagonalSystem,
    table: &NodalTable,
    bc: &BoundaryValues,
) -> Result<BlockTridiagonalSystem> {
    if system.rows() < 2 {
        return Err(Error::Domain("system needs at least two block rows".into()));
    }
    eliminate_in_place(&mut system, table, bc)?;
    Ok(system)
}

/// Collocation rows with the boundary conditions at the new level applied.
pub fn assemble_step(
    state: &State,
    table: &NodalTable,
    cfg: &SolverConfig,
    bc: &BoundaryValues,
) -> Result<BlockTridiagonalSystem> {
    apply_boundary_elimination(assemble_collocation(state, table, cfg), table, bc)
}

/// Recovers the four ghost coefficients from the Dirichlet data.
pub fn recover_ghosts(
    delta: &mut SplineCoeffs,
    phi: &mut SplineCoeffs,
    table: &NodalTable,
    bc: &BoundaryValues,
) {
    let n = delta.n_intervals() as isize;
    let (a1, a2) = (table.alpha1, table.alpha2);
    for (c, left, right) in [(delta, bc.u_left, bc.u_right), (phi, bc.v_left, bc.v_right)] {
        c[-1] = (left - a2 * c[0] - a1 * c[1]) / a1;
        c[n + 1] = (right - a1 * c[n - 1] - a2 * c[n]) / a1;
    }
}

/// Reusable stepping workspace for one mesh and configuration.
#[derive(Debug, Clone)]
pub struct Stepper {
    table: NodalTable,
    cfg: SolverConfig,
    frozen: FrozenCoefficients,
    system: BlockTridiagonalSystem,
    solver: BlockThomas,
    solution: Vec<Pair>,
}

impl Stepper {
    pub fn new(mesh: &Mesh, table: NodalTable, cfg: SolverConfig) -> Self {
        Self {
            table,
            cfg,
            frozen: FrozenCoefficients::default(),
            system: BlockTridiagonalSystem::zeros(mesh.n_intervals() + 1),
            solver: BlockThomas::new(),
            solution: Vec::with_capacity(mesh.n_intervals() + 1),
        }
    }

    pub fn table(&self) -> &NodalTable {
        &self.table
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Advances `state` in place to `t_new`, with boundary data `bc` taken
    /// at `t_new`. `step` only labels errors.
    pub fn step(
        &mut self,
        state: &mut State,
        t_new: f64,
        bc: &BoundaryValues,
        step: usize,
    ) -> Result<()> {
        let rows = state.n_intervals() + 1;
        if self.system.rows() != rows {
            self.system = BlockTridiagonalSystem::zeros(rows);
        }
        self.frozen.refresh(state, &self.table);
        fill_collocation(&mut self.system, state, &self.frozen, &self.table, &self.cfg);
        eliminate_in_place(&mut self.system, &self.table, bc)?;
        self.solver
            .solve_into(&self.system, &mut self.solution)
            .map_err(|e| Error::Integration {
                step,
                reason: e.to_string(),
            })?;

        for (m, pair) in self.solution.iter().enumerate() {
            state.delta[m as isize] = pair[0];
            state.phi[m as isize] = pair[1];
        }
        recover_ghosts(&mut state.delta, &mut state.phi, &self.table, bc);
        state.time = t_new;
        if !state.is_finite() {
            return Err(Error::Integration {
                step,
                reason: "non-finite spline coefficients".into(),
            });
        }
        Ok(())
    }
}

/// One step of size `cfg.dt` from `state`.
pub fn advance(
    state: &State,
    mesh: &Mesh,
    table: &NodalTable,
    cfg: &SolverConfig,
    problem: &ProblemSpec,
) -> Result<State> {
    let mut next = state.clone();
    let t_new = state.time + cfg.dt;
    let bc = problem.boundary.at(t_new);
    Stepper::new(mesh, *table, *cfg).step(&mut next, t_new, &bc, 0)?;
    Ok(next)
}

/// Integrates from the fitted initial state to `cfg.t_final`.
///
/// `observer` sees the initial state and then every accepted step.
pub fn run<F>(problem: &ProblemSpec, mesh: &Mesh, cfg: &SolverConfig, mut observer: F) -> Result<State>
where
    F: FnMut(&State),
{
    let steps = cfg.steps()?;
    let table = NodalTable::new(mesh.h())?;
    let mut state = State::initial(problem, mesh, &table)?;
    observer(&state);
    let mut stepper = Stepper::new(mesh, table, *cfg);
    for step in 1..=steps {
        let t_new = if step == steps {
            cfg.t_final
        } else {
            step as f64 * cfg.dt
        };
        let bc = problem.boundary.at(t_new);
        stepper.step(&mut state, t_new, &bc, step)?;
        observer(&state);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::nodal_values;
    use crate::problems::{problem1, problem3};
    use std::f64::consts::PI;

    #[test]
    fn config_step_count() {
        let cfg = SolverConfig::new(0.001, 0.1, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(cfg.steps().unwrap(), 100);
        assert_eq!(SolverConfig::new(1e-4, 3.0, 0.0, 0.0, 0.0).unwrap().steps().unwrap(), 30000);
        assert_eq!(SolverConfig::new(0.01, 0.0, 0.0, 0.0, 0.0).unwrap().steps().unwrap(), 0);
        assert!(SolverConfig::new(0.03, 0.1, 0.0, 0.0, 0.0).is_err());
        assert!(SolverConfig::new(0.0, 0.1, 0.0, 0.0, 0.0).is_err());
        assert!(SolverConfig::new(0.01, -1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn zero_state_coefficients() {
        let mesh = Mesh::new(0.0, 1.0, 8).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::new(0.01, 0.1, 3.0, -2.0, 5.0).unwrap();
        let sys = assemble_collocation(&State::zeros(8), &table, &cfg);
        for m in 0..=8 {
            let expected = 2.0 * table.alpha1 / cfg.dt - table.gamma1;
            assert!((sys.lower[m][0][0] - expected).abs() < 1e-12);
            assert!((sys.upper[m][1][1] - expected).abs() < 1e-12);
            for blk in [&sys.lower[m], &sys.main[m], &sys.upper[m]] {
                assert_eq!(blk[0][1], 0.0);
                assert_eq!(blk[1][0], 0.0);
            }
            assert_eq!(sys.rhs[m], [0.0, 0.0]);
        }
    }

    #[test]
    fn elimination_leaves_interior_rows() {
        let mesh = Mesh::new(0.0, 1.0, 6).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::new(0.01, 0.1, 1.0, 1.0, 1.0).unwrap();
        let mut state = State::zeros(6);
        for i in -1..=7 {
            state.delta[i] = 0.1 * i as f64;
            state.phi[i] = -0.05 * i as f64;
        }
        let raw = assemble_collocation(&state, &table, &cfg);
        let reduced =
            apply_boundary_elimination(raw.clone(), &table, &BoundaryValues::default()).unwrap();
        for m in 1..6 {
            assert_eq!(raw.lower[m], reduced.lower[m]);
            assert_eq!(raw.main[m], reduced.main[m]);
            assert_eq!(raw.upper[m], reduced.upper[m]);
            assert_eq!(raw.rhs[m], reduced.rhs[m]);
        }
        assert_eq!(reduced.lower[0], ZERO_BLOCK);
        assert_eq!(reduced.upper[6], ZERO_BLOCK);
    }

    #[test]
    fn zero_data_is_a_fixed_point() {
        let problem = problem3(1.0, 1.0, 1.0);
        let mesh = Mesh::new(0.0, 1.0, 10).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::for_problem(&problem, 0.01, 0.1).unwrap();
        let mut state = State::zeros(10);
        for _ in 0..10 {
            state = advance(&state, &mesh, &table, &cfg, &problem).unwrap();
        }
        assert!(state.delta.as_slice().iter().chain(state.phi.as_slice()).all(|&v| v == 0.0));
        assert!((state.time - 0.1).abs() < 1e-12);
    }

    #[test]
    fn zero_horizon_returns_initial_fit() {
        let problem = problem1();
        let mesh = Mesh::new(-PI, PI, 20).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::for_problem(&problem, 0.01, 0.0).unwrap();
        let mut seen = 0;
        let out = run(&problem, &mesh, &cfg, |_| seen += 1).unwrap();
        assert_eq!(seen, 1);
        assert_eq!(out, State::initial(&problem, &mesh, &table).unwrap());
    }

    #[test]
    fn single_step_local_error() {
        let problem = problem1();
        let mesh = Mesh::new(-PI, PI, 400).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::for_problem(&problem, 1e-3, 1e-3).unwrap();
        let state = State::initial(&problem, &mesh, &table).unwrap();
        let next = advance(&state, &mesh, &table, &cfg, &problem).unwrap();
        let (u, _) = next.knot_values(&table);
        let worst = mesh
            .knots()
            .iter()
            .zip(&u)
            .map(|(x, u)| (u - (-1e-3f64).exp() * x.sin()).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "single-step error {worst}");
        for (m, bc) in [(0, 0.0), (400, 0.0)] {
            assert!((nodal_values(&next.delta, &table, m).unwrap().value - bc).abs() < 1e-10);
        }
    }

    #[test]
    fn integration_error_names_step() {
        let problem = problem1();
        let mesh = Mesh::new(-PI, PI, 8).unwrap();
        let table = NodalTable::new(mesh.h()).unwrap();
        let cfg = SolverConfig::new(0.1, 0.1, f64::MAX, 1.0, 1.0).unwrap();
        let mut state = State::initial(&problem, &mesh, &table).unwrap();
        state.delta[3] = 1e300;
        let err = Stepper::new(&mesh, table, cfg)
            .step(&mut state, 0.1, &BoundaryValues::default(), 17)
            .unwrap_err();
        assert!(matches!(err, Error::Integration { step: 17, .. }), "{err}");
    }
}
