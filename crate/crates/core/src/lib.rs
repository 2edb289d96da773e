//! Coupled Burgers solver built on trigonometric cubic B-spline collocation.
//!
//! Space is discretized by collocating a trigonometric cubic spline expansion
//! of `U` and `V` at the mesh knots; time by Crank–Nicolson with the
//! nonlinear products linearized about the previous level. Each step is one
//! 2x2-block tridiagonal solve.
//!
//! ```
//! use burgers_core::{problems, run, Mesh, SolverConfig};
//!
//! let problem = problems::problem1();
//! let mesh = Mesh::new(problem.a, problem.b, 100).unwrap();
//! let cfg = SolverConfig::for_problem(&problem, 0.01, 0.1).unwrap();
//! let state = run(&problem, &mesh, &cfg, |_| {}).unwrap();
//! let report = burgers_core::harness::error_report(&problem, &mesh, cfg.dt, &state).unwrap();
//! assert!(report.linf_u < 1e-3);
//! ```
//!
//! # Modules
//!
//! - [`basis`]: basis functions, nodal table, spline evaluation
//! - [`linalg`]: scalar and block Thomas solvers
//! - [`initial`]: initial coefficient fit
//! - [`solver`]: assembly, boundary elimination, time stepping
//! - [`problems`]: benchmark problems and the PDE residual check
//! - [`harness`]: error norms, convergence orders, maxima, CSV, tables

pub mod basis;
pub mod error;
pub mod harness;
pub mod initial;
pub mod linalg;
pub mod problems;
pub mod solver;

pub use basis::{
    eval_ctb, eval_ctb_recursive, nodal_table, nodal_values, spline_eval, spline_eval_dense, Mesh,
    NodalTable, NodalValues, SplineCoeffs,
};
pub use error::{Error, Result};
pub use harness::{
    convergence_orders, emit_csv, linf_error, track_max, write_csv, ErrorReport, MaxReport,
};
pub use initial::fit_initial;
pub use linalg::{
    solve_block_tridiagonal, solve_tridiagonal, Block, BlockThomas, BlockTridiagonalSystem, Pair,
    TridiagonalSystem,
};
pub use problems::{pde_residual, BoundaryValues, ProblemSpec};
pub use solver::{
    advance, apply_boundary_elimination, assemble_collocation, assemble_step, recover_ghosts, run,
    FrozenCoefficients, SolverConfig, State, Stepper,
};
