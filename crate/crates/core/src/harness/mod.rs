//! Error norms, convergence orders, maxima tracking and CSV snapshots.

pub mod tables;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::basis::{spline_eval_dense, Mesh, NodalTable};
use crate::error::{Error, Result};
use crate::problems::{ExactSolution, ProblemSpec};
use crate::solver::{run, SolverConfig, State};

/// Knot-wise maximum errors of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub problem: String,
    pub n_intervals: usize,
    pub dt: f64,
    pub t: f64,
    pub linf_u: f64,
    pub linf_v: f64,
}

/// Largest nodal values of `U` and `V` and the knots where they occur.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxReport {
    pub t: f64,
    pub max_u: f64,
    pub argmax_u: f64,
    pub max_v: f64,
    pub argmax_v: f64,
}

/// `max_j |numeric_j - exact_j|`.
pub fn linf_error(numeric: &[f64], exact: &[f64]) -> Result<f64> {
    if numeric.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            found: numeric.len(),
        });
    }
    Ok(numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Observed orders `ln(e_{i-1}/e_i) / ln(n_i/n_{i-1})` for successive
/// refinements.
pub fn convergence_orders(errors: &[f64], ns: &[usize]) -> Result<Vec<f64>> {
    if errors.len() != ns.len() {
        return Err(Error::LengthMismatch {
            expected: ns.len(),
            found: errors.len(),
        });
    }
    if errors.len() < 2 {
        return Err(Error::Domain("need at least two refinement levels".into()));
    }
    if let Some(e) = errors.iter().find(|e| e.is_nan() || **e <= 0.0) {
        return Err(Error::Domain(format!("error values must be positive, got {e}")));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("mesh sizes must be strictly increasing".into()));
    }
    Ok((1..errors.len())
        .map(|i| (errors[i - 1] / errors[i]).ln() / (ns[i] as f64 / ns[i - 1] as f64).ln())
        .collect())
}

fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (j, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (j, v);
        }
    }
    best
}

/// Maximum nodal values over the knots; ties go to the smaller `x`.
pub fn track_max(state: &State, mesh: &Mesh, table: &NodalTable) -> MaxReport {
    let (u, v) = state.knot_values(table);
    let (ju, mu) = argmax(&u);
    let (jv, mv) = argmax(&v);
    MaxReport {
        t: state.time,
        max_u: mu,
        argmax_u: mesh.knot(ju as isize),
        max_v: mv,
        argmax_v: mesh.knot(jv as isize),
    }
}

/// Knot-wise errors of a state against the problem's exact solution.
pub fn error_report(problem: &ProblemSpec, mesh: &Mesh, dt: f64, state: &State) -> Result<ErrorReport> {
    let table = NodalTable::new(mesh.h())?;
    let knots = mesh.knots();
    let (eu, ev) = problem.exact_at(&knots, state.time).ok_or_else(|| {
        Error::Domain(format!("{} has no exact solution", problem.name))
    })?;
    let (u, v) = state.knot_values(&table);
    Ok(ErrorReport {
        problem: problem.name.clone(),
        n_intervals: mesh.n_intervals(),
        dt,
        t: state.time,
        linf_u: linf_error(&u, &eu)?,
        linf_v: linf_error(&v, &ev)?,
    })
}

/// Runs `problem` on `n` intervals and reports knot-wise errors at `t_final`.
pub fn solve_with_errors(problem: &ProblemSpec, n: usize, dt: f64, t_final: f64) -> Result<ErrorReport> {
    let mesh = Mesh::new(problem.a, problem.b, n)?;
    let cfg = SolverConfig::for_problem(problem, dt, t_final)?;
    let state = run(problem, &mesh, &cfg, |_| {})?;
    error_report(problem, &mesh, dt, &state)
}

/// Runs to the largest of `times` and returns the states at each of them, in
/// the order given. Every time must be a multiple of `dt`.
pub fn run_snapshots(problem: &ProblemSpec, mesh: &Mesh, dt: f64, times: &[f64]) -> Result<Vec<State>> {
    let horizon = times.iter().copied().fold(0.0, f64::max);
    let targets = times
        .iter()
        .map(|&t| SolverConfig::for_problem(problem, dt, t)?.steps())
        .collect::<Result<Vec<_>>>()?;
    let cfg = SolverConfig::for_problem(problem, dt, horizon)?;
    let mut snapshots: Vec<Option<State>> = vec![None; times.len()];
    let mut step = 0usize;
    run(problem, mesh, &cfg, |state| {
        for (slot, &target) in snapshots.iter_mut().zip(&targets) {
            if target == step {
                *slot = Some(state.clone());
            }
        }
        step += 1;
    })?;
    Ok(snapshots.into_iter().map(|s| s.expect("every target step is visited")).collect())
}

/// 17 significant digits, enough to round-trip any `f64`.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `x,U,V[,exact_u,exact_v,err_u,err_v]` rows at every knot and at
/// `samples_per_interval` evenly spaced interior points of each interval.
pub fn write_csv<W: Write>(
    out: &mut W,
    state: &State,
    mesh: &Mesh,
    exact: Option<&ExactSolution>,
    samples_per_interval: usize,
) -> Result<()> {
    if state.n_intervals() != mesh.n_intervals() {
        return Err(Error::LengthMismatch {
            expected: mesh.n_intervals(),
            found: state.n_intervals(),
        });
    }
    let table = NodalTable::new(mesh.h())?;
    let (u_knots, v_knots) = state.knot_values(&table);
    write!(out, "x,U,V")?;
    if exact.is_some() {
        write!(out, ",exact_u,exact_v,err_u,err_v")?;
    }
    writeln!(out)?;

    let mut row = |x: f64, u: f64, v: f64| -> Result<()> {
        write!(out, "{},{},{}", fmt_f64(x), fmt_f64(u), fmt_f64(v))?;
        if let Some(e) = exact {
            let (eu, ev) = ((e.u)(x, state.time), (e.v)(x, state.time));
            write!(
                out,
                ",{},{},{},{}",
                fmt_f64(eu),
                fmt_f64(ev),
                fmt_f64((u - eu).abs()),
                fmt_f64((v - ev).abs())
            )?;
        }
        writeln!(out)?;
        Ok(())
    };

    let n = mesh.n_intervals();
    for j in 0..=n {
        let x = mesh.knot(j as isize);
        row(x, u_knots[j], v_knots[j])?;
        if j == n {
            break;
        }
        for s in 1..=samples_per_interval {
            let xs = x + mesh.h() * s as f64 / (samples_per_interval + 1) as f64;
            row(
                xs,
                spline_eval_dense(mesh, &state.delta, xs)?,
                spline_eval_dense(mesh, &state.phi, xs)?,
            )?;
        }
    }
    Ok(())
}

/// [`write_csv`] into a file at `path`.
pub fn emit_csv(
    state: &State,
    mesh: &Mesh,
    exact: Option<&ExactSolution>,
    samples_per_interval: usize,
    path: &Path,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_csv(&mut out, state, mesh, exact, samples_per_interval)?;
    out.flush()?;
    Ok(())
}
