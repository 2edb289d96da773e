use burgers_core::harness::{error_report, tables};
use burgers_core::problems::problem1;
use burgers_core::{convergence_orders, emit_csv, run, write_csv, Mesh, NodalTable, SolverConfig};
use proptest::prelude::*;

fn parse(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn csv_round_trips_knot_values_exactly() {
    let problem = problem1();
    let mesh = Mesh::new(problem.a, problem.b, 20).unwrap();
    let table = NodalTable::new(mesh.h()).unwrap();
    let cfg = SolverConfig::for_problem(&problem, 0.01, 0.3).unwrap();
    let state = run(&problem, &mesh, &cfg, |_| {}).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.csv");
    emit_csv(&state, &mesh, problem.exact.as_ref(), 0, &path).unwrap();
    let (header, rows) = parse(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(header, ["x", "U", "V", "exact_u", "exact_v", "err_u", "err_v"]);
    assert_eq!(rows.len(), 21);
    let (u, v) = state.knot_values(&table);
    for (j, row) in rows.iter().enumerate() {
        assert_eq!(row[0].to_bits(), mesh.knot(j as isize).to_bits());
        assert_eq!(row[1].to_bits(), u[j].to_bits());
        assert_eq!(row[2].to_bits(), v[j].to_bits());
    }
}

#[test]
fn csv_samples_lie_between_knots() {
    let problem = problem1();
    let mesh = Mesh::new(problem.a, problem.b, 8).unwrap();
    let cfg = SolverConfig::for_problem(&problem, 0.01, 0.1).unwrap();
    let state = run(&problem, &mesh, &cfg, |_| {}).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &state, &mesh, None, 3).unwrap();
    let (header, rows) = parse(std::str::from_utf8(&buf).unwrap());
    assert_eq!(header, ["x", "U", "V"]);
    assert_eq!(rows.len(), 8 * 4 + 1);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
}

#[test]
fn repeated_runs_write_identical_bytes() {
    let bytes = || {
        let problem = problem1();
        let mesh = Mesh::new(problem.a, problem.b, 50).unwrap();
        let cfg = SolverConfig::for_problem(&problem, 0.01, 0.5).unwrap();
        let state = run(&problem, &mesh, &cfg, |_| {}).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &state, &mesh, problem.exact.as_ref(), 2).unwrap();
        buf
    };
    assert_eq!(bytes(), bytes());
    // table rows run in parallel but must not depend on scheduling
    assert_eq!(tables::table2a().unwrap(), tables::table2a().unwrap());
}

#[test]
fn csv_errors_bounded_by_reported_linf() {
    let problem = problem1();
    let mesh = Mesh::new(problem.a, problem.b, 50).unwrap();
    let cfg = SolverConfig::for_problem(&problem, 0.01, 3.0).unwrap();
    let state = run(&problem, &mesh, &cfg, |_| {}).unwrap();
    let report = error_report(&problem, &mesh, 0.01, &state).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &state, &mesh, problem.exact.as_ref(), 0).unwrap();
    let (_, rows) = parse(std::str::from_utf8(&buf).unwrap());
    let worst_u = rows.iter().map(|r| r[5]).fold(0.0, f64::max);
    let worst_v = rows.iter().map(|r| r[6]).fold(0.0, f64::max);
    assert!(worst_u <= report.linf_u && worst_v <= report.linf_v);
    assert_eq!(worst_u, report.linf_u);
}

#[test]
fn first_order_sequence_yields_unit_orders() {
    let ns = tables::CONVERGENCE_NS;
    let errors: Vec<f64> = ns.iter().map(|&n| 0.3 / n as f64).collect();
    for o in convergence_orders(&errors, &ns).unwrap() {
        assert!((o - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn orders_are_scale_invariant(
        errors in prop::collection::vec(1e-9f64..1.0, 5),
        c in 1e-6f64..1e6,
    ) {
        let ns = tables::CONVERGENCE_NS;
        let scaled: Vec<f64> = errors.iter().map(|e| e * c).collect();
        let a = convergence_orders(&errors, &ns).unwrap();
        let b = convergence_orders(&scaled, &ns).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
    }
}
