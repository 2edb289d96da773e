//! Fixtures shared by the benchmarks.

use burgers_core::problems::problem1;
use burgers_core::{
    assemble_step, BlockTridiagonalSystem, Mesh, NodalTable, ProblemSpec, SolverConfig, State,
};

/// Problem 1 fitted on `n` intervals, ready to step.
pub struct StepFixture {
    pub problem: ProblemSpec,
    pub mesh: Mesh,
    pub table: NodalTable,
    pub cfg: SolverConfig,
    pub state: State,
}

impl StepFixture {
    pub fn new(n: usize, dt: f64) -> Self {
        let problem = problem1();
        let mesh = Mesh::new(problem.a, problem.b, n).expect("valid mesh");
        let table = NodalTable::new(mesh.h()).expect("valid step");
        let cfg = SolverConfig::for_problem(&problem, dt, dt).expect("valid config");
        let state = State::initial(&problem, &mesh, &table).expect("fit succeeds");
        Self { problem, mesh, table, cfg, state }
    }

    /// The block system of the first step.
    pub fn system(&self) -> BlockTridiagonalSystem {
        let bc = self.problem.boundary.at(self.cfg.dt);
        assemble_step(&self.state, &self.table, &self.cfg, &bc).expect("assembly succeeds")
    }

    /// Initial data at the knots.
    pub fn initial_values(&self) -> Vec<f64> {
        self.mesh.knots().into_iter().map(|x| (self.problem.initial_u)(x)).collect()
    }
}
