// Exhaustive tb scans, the square property check and the Lambda family audit.

use std::fmt::Write;

use petal_knots::search::{exhaustive_scan, lambda_audit, square_property_scan, ScanMode};

pub fn run() -> String {
    let mut out = String::new();
    for n in [3, 5, 7] {
        let r = exhaustive_scan(n, ScanMode::Histogram).unwrap();
        writeln!(
            out,
            "n = {n}: {} perms, max tb {} <= {}, histogram {:?}",
            r.permutations_scanned,
            r.max_tb,
            r.bound,
            r.histogram.unwrap()
        )
        .unwrap();
    }
    let squares = square_property_scan(7).unwrap();
    writeln!(
        out,
        "squares n = 7: {} blocks, {} violations",
        squares.tiling_blocks, squares.violation_count
    )
    .unwrap();
    for row in lambda_audit(9).unwrap().rows {
        writeln!(
            out,
            "lambda_{}: claimed {}, computed {}, writhe {}",
            row.n, row.claimed_tb, row.computed_tb, row.oracle_tb
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
