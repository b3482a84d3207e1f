//! The ten acceptance criteria, one line each. `TSCHIRN_SUITE_SCALE=smoke` shrinks the
//! random matrices; the default is the full matrix.

use std::io::Write;

use tschirn_cli::suite::{self, Row, SuiteConfig};

fn criterion(n: usize, row: &Row) -> String {
    format!("criterion {n}: {} {} ({} ms)", if row.pass { "PASS" } else { "FAIL" }, row.detail, row.elapsed_ms)
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let zero = suite::run_matrix(&cfg, 0);
    let one = suite::run_matrix(&cfg, 1);
    let all: Vec<_> = zero.iter().chain(&one).cloned().collect();
    let rows = [
        suite::structure_avoiding_vertex(&zero, &cfg),
        suite::structure_through_vertex(&one, &cfg),
        suite::twisted_through_vertex(&one, &cfg),
        suite::genus_agreement(&all, &cfg),
        suite::plane_pipeline(&cfg),
        suite::birkhoff_properties(&cfg),
        suite::calculus(),
        suite::pushforward_tables(),
        suite::negative_controls(),
        suite::normalization(&all, &cfg),
    ];
    // written past the test harness capture so the lines land in the log of a passing run
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        writeln!(out, "{}", criterion(i + 1, row)).unwrap();
        if !row.pass {
            failed.push(i + 1);
        }
    }
    for row in suite::golden_rows(&cfg) {
        writeln!(out, "{}", row.line()).unwrap();
        if !row.pass {
            failed.push(0);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
