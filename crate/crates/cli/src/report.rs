use burgers_core::harness::tables::{ConvergenceTable, ErrorTable, FrontTable, MaxTable};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Component {
    U,
    V,
}

impl Component {
    fn name(self) -> &'static str {
        match self {
            Component::U => "U",
            Component::V => "V",
        }
    }
}

pub fn print_error_table(table: &ErrorTable, component: Component) {
    println!("{}", table.title);
    println!(
        "{:>5} {:>8} {:>6} {:>6} {:>6} {:>14} {:>14}",
        "N", "dt", "t", "k2", "k3", format!("Linf({})", component.name()), "published"
    );
    for row in &table.rows {
        let r = &row.report;
        let (computed, published) = match component {
            Component::U => (r.linf_u, Some(row.published_u)),
            Component::V => (r.linf_v, row.published_v),
        };
        println!(
            "{:>5} {:>8} {:>6} {:>6} {:>6} {:>14.5e} {:>14}",
            r.n_intervals,
            r.dt,
            r.t,
            row.k2,
            row.k3,
            computed,
            published.map_or("-".into(), |p| format!("{p:.5e}"))
        );
    }
}

pub fn print_front_table(table: &FrontTable, component: Component) {
    for (k2, k3, gate) in &table.gates {
        if !gate.passed() {
            println!(
                "DISCREPANCY: closed-form solution for k2 = {k2}, k3 = {k3} leaves PDE residual \
                 {:.3e} (gate 1e-6) at x = {:.3}, t = {:.3}",
                gate.max_residual, gate.worst_x, gate.worst_t
            );
        }
    }
    print_error_table(&table.errors, component);
}

pub fn print_convergence_table(table: &ConvergenceTable) {
    println!("{}", table.title);
    println!(
        "{:>5} {:>14} {:>8} {:>14} {:>8}",
        "N", "Linf(U)", "order", "published", "order"
    );
    let opt = |o: Option<f64>| o.map_or("-".to_string(), |v| format!("{v:.4}"));
    for row in &table.rows {
        println!(
            "{:>5} {:>14.5e} {:>8} {:>14.5e} {:>8}",
            row.report.n_intervals,
            row.report.linf_u,
            opt(row.order),
            row.published_error,
            opt(row.published_order)
        );
    }
}

pub fn print_max_table(table: &MaxTable, component: Component) {
    println!("{} ({})", table.title, component.name());
    println!(
        "{:>5} {:>10} {:>8} {:>10} {:>8}",
        "t", "max", "at", "published", "at"
    );
    for row in &table.rows {
        let r = &row.report;
        let (value, at, published) = match component {
            Component::U => (r.max_u, r.argmax_u, row.published_u),
            Component::V => (r.max_v, r.argmax_v, row.published_v),
        };
        println!(
            "{:>5} {:>10.6} {:>8.2} {:>10.6} {:>8.2}",
            r.t, value, at, published.value, published.at
        );
    }
}
