// Cross-checks the σ table against the expansion writhe, rot against the
// turning number, and heights against z recovered from the polyline.
// A deliberately flipped σ case shows up as witnesses.

use std::fmt::Write;

use petal_knots::petal::SigmaCase;
use petal_knots::search::{oracle_conformance, SigmaVariant};

pub fn run() -> String {
    let mut out = String::new();
    let report = oracle_conformance(5, SigmaVariant::Standard).unwrap();
    for row in &report.rows {
        writeln!(
            out,
            "n = {}: sigma {:.1}%, rot {:.1}%, heights {:.1}%",
            row.n, row.sigma_agreement, row.rotation_agreement, row.height_agreement
        )
        .unwrap();
    }
    writeln!(out, "all agree: {}", report.all_agree).unwrap();

    let case = SigmaCase::of(
        &petal_knots::validate_permutation(&[1, 3, 2]).unwrap(),
        1,
        2,
    );
    let tampered = oracle_conformance(5, SigmaVariant::Flipped(case)).unwrap();
    writeln!(
        out,
        "with {case:?} flipped: all agree = {}",
        tampered.all_agree
    )
    .unwrap();
    if let Some(w) = tampered.witnesses.first() {
        writeln!(
            out,
            "  ({}) {}: expected {}, observed {}",
            w.permutation, w.check, w.expected, w.observed
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
