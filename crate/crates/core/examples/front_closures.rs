// Non-crossing closures of the half-twist front tangle, their component
// counts and reduction traces.

use std::fmt::Write;

use petal_knots::front::{enumerate_closures, front_verdict, rainbow_closure};

pub fn run() -> String {
    let mut out = String::new();
    for n in 1..=6 {
        let closures = enumerate_closures(n).unwrap();
        let unknots = closures
            .iter()
            .filter(|p| front_verdict(p, false).components == 1)
            .count();
        let rainbow = front_verdict(&rainbow_closure(n), false);
        writeln!(
            out,
            "n = {n}: {} closures, {unknots} unknots, rainbow has {} components",
            closures.len(),
            rainbow.components
        )
        .unwrap();
    }

    let pattern = "L1-L2,L3-L4,L5-R5,R4-R1,R3-R2".parse().unwrap();
    let report = front_verdict(&pattern, false);
    writeln!(out, "{pattern}: {}", report.verdict.name()).unwrap();
    for step in &report.reduction.as_ref().unwrap().steps {
        writeln!(
            out,
            "  {} strands: remove {} (unknot shed: {}) -> {}",
            step.strands_before, step.pair, step.shed_unknot, step.pattern_after
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
