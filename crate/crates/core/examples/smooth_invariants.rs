// Determinant, Jones polynomial and fingerprint lookup for expanded
// petal diagrams and a few PD fixtures.

use std::fmt::Write;

use petal_knots::expansion::parse_pd;
use petal_knots::invariants::{certify_unknot, identify};
use petal_knots::{canonical_twists, expand, validate_permutation, ClassicalDiagram};

fn describe(out: &mut String, name: &str, d: &ClassicalDiagram) {
    let id = identify(d);
    let det = id.determinant.map_or("-".to_string(), |x| x.to_string());
    let jones = id.jones.as_ref().map_or("-".to_string(), |j| j.to_string());
    writeln!(
        out,
        "{name}: {} crossings, det {det}, jones {jones}, {:?}, {:?}",
        id.crossings,
        id.candidates,
        certify_unknot(d)
    )
    .unwrap();
}

pub fn run() -> String {
    let mut out = String::new();
    for values in [vec![1, 3, 2], vec![1, 4, 2, 5, 3], vec![1, 3, 5, 2, 4]] {
        let diag = canonical_twists(&validate_permutation(&values).unwrap());
        describe(&mut out, &format!("({})", diag.perm()), &expand(&diag));
    }
    let trefoil = parse_pd("X[4,2,5,1], X[6,4,1,3], X[2,6,3,5]").unwrap();
    describe(&mut out, "trefoil", &trefoil);
    describe(&mut out, "mirror trefoil", &trefoil.mirror());
    describe(
        &mut out,
        "figure-eight",
        &parse_pd("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]").unwrap(),
    );
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
