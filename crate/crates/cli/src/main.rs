use std::path::PathBuf;
use std::process::ExitCode;

use burgers_core::harness::tables::{self, DEFAULT_PULSE_K1, FRONT_A0};
use burgers_core::harness::{emit_csv, error_report, track_max};
use burgers_core::problems::{problem1, problem2, problem3, verify_exact};
use burgers_core::{run, Mesh, NodalTable, SolverConfig};
use clap::{Parser, Subcommand, ValueEnum};

mod report;

#[derive(Parser)]
#[command(name = "burgers", version, about = "Coupled Burgers solver (trigonometric cubic B-spline collocation)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    A,
    B,
    C,
    D,
}

impl Variant {
    fn letter(self) -> char {
        match self {
            Variant::A => 'a',
            Variant::B => 'b',
            Variant::C => 'c',
            Variant::D => 'd',
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one problem and report errors (when an exact solution exists) and maxima.
    Solve {
        /// Benchmark problem: 1 (sine decay), 2 (travelling front), 3 (pulses).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        problem: u8,
        /// Number of mesh intervals.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dt: f64,
        #[arg(long = "t-final")]
        t_final: f64,
        #[arg(long, allow_hyphen_values = true)]
        k1: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        k2: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        k3: Option<f64>,
        /// Amplitude of the travelling front (problem 2).
        #[arg(long, default_value_t = FRONT_A0)]
        a0: f64,
        /// Write the final state as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra evaluation points per interval in the CSV output.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    Table2a,
    Table2b,
    Table2c,
    Table2d,
    Table3 {
        #[arg(long, value_enum)]
        which: Variant,
    },
    Table4 {
        #[arg(long, value_enum)]
        which: Variant,
        /// k1 for the pulse problem; the published tables do not state it.
        #[arg(long, default_value_t = DEFAULT_PULSE_K1, allow_hyphen_values = true)]
        k1: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve(
    problem: u8,
    n: usize,
    dt: f64,
    t_final: f64,
    k1: Option<f64>,
    k2: Option<f64>,
    k3: Option<f64>,
    a0: f64,
    out: Option<PathBuf>,
    samples: usize,
) -> burgers_core::Result<()> {
    let spec = match problem {
        1 => problem1(),
        2 => problem2(a0, k2.unwrap_or(0.1), k3.unwrap_or(0.3))?,
        _ => problem3(DEFAULT_PULSE_K1, 10.0, 10.0),
    };
    let spec = {
        let (d1, d2, d3) = (spec.k1, spec.k2, spec.k3);
        spec.with_coefficients(k1.unwrap_or(d1), k2.unwrap_or(d2), k3.unwrap_or(d3))
    };
    if let Some(check) = verify_exact(&spec, 100) {
        if !check.passed() {
            eprintln!(
                "warning: closed-form solution of {} does not satisfy the equations \
                 (max residual {:.3e} at x = {:.3}, t = {:.3}); errors are measured against it anyway",
                spec.name, check.max_residual, check.worst_x, check.worst_t
            );
        }
    }

    let mesh = Mesh::new(spec.a, spec.b, n)?;
    let table = NodalTable::new(mesh.h())?;
    let cfg = SolverConfig::for_problem(&spec, dt, t_final)?;
    let state = run(&spec, &mesh, &cfg, |_| {})?;

    println!(
        "{}: N = {n}, dt = {dt}, t = {t_final}, k1 = {}, k2 = {}, k3 = {}",
        spec.name, spec.k1, spec.k2, spec.k3
    );
    if spec.exact.is_some() {
        let r = error_report(&spec, &mesh, dt, &state)?;
        println!("L_inf(U) = {:.5e}", r.linf_u);
        println!("L_inf(V) = {:.5e}", r.linf_v);
    }
    let m = track_max(&state, &mesh, &table);
    println!("max U = {:.6} at x = {:.4}", m.max_u, m.argmax_u);
    println!("max V = {:.6} at x = {:.4}", m.max_v, m.argmax_v);
    if let Some(path) = out {
        emit_csv(&state, &mesh, spec.exact.as_ref(), samples, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn execute(command: Command) -> burgers_core::Result<()> {
    match command {
        Command::Solve {
            problem,
            n,
            dt,
            t_final,
            k1,
            k2,
            k3,
            a0,
            out,
            samples,
        } => solve(problem, n, dt, t_final, k1, k2, k3, a0, out, samples),
        Command::Table2a => {
            report::print_error_table(&tables::table2a()?, report::Component::U);
            Ok(())
        }
        Command::Table2b => {
            report::print_error_table(&tables::table2b()?, report::Component::U);
            Ok(())
        }
        Command::Table2c => {
            report::print_error_table(&tables::table2c()?, report::Component::U);
            Ok(())
        }
        Command::Table2d => {
            for t in tables::table2d()? {
                report::print_convergence_table(&t);
            }
            Ok(())
        }
        Command::Table3 { which } => {
            let letter = which.letter();
            let table = tables::table3(letter)?;
            let component = if matches!(letter, 'a' | 'c') {
                report::Component::U
            } else {
                report::Component::V
            };
            report::print_front_table(&table, component);
            Ok(())
        }
        Command::Table4 { which, k1 } => {
            let letter = which.letter();
            let table = tables::table4(letter, k1)?;
            let component = if matches!(letter, 'a' | 'c') {
                report::Component::U
            } else {
                report::Component::V
            };
            report::print_max_table(&table, component);
            Ok(())
        }
    }
}
