// Thurston–Bennequin and rotation numbers of a few petal diagrams.

use std::fmt::Write;

use petal_knots::petal::{lambda_family, parse_values, stabilize, tb_upper_bound};
use petal_knots::{canonical_twists, rotation_number, thurston_bennequin, validate_permutation};

pub fn run() -> String {
    let mut out = String::new();
    for text in ["1", "1,3,2", "1,4,2,5,3", "1,3,5,2,4"] {
        let perm = validate_permutation(&parse_values(text).unwrap()).unwrap();
        let diag = canonical_twists(&perm);
        let tb = thurston_bennequin(&diag);
        writeln!(
            out,
            "({text}): k = {}, sum sigma = {}, tb = {}, rot = {}",
            tb.k,
            tb.sigma_sum,
            tb.tb,
            rotation_number(&diag)
        )
        .unwrap();
    }

    // A stabilization adds one twist and lowers tb by one.
    let diag = canonical_twists(&validate_permutation(&[1, 3, 2]).unwrap());
    let stabilized = stabilize(&diag, 1).unwrap();
    writeln!(
        out,
        "stabilized (1,3,2): tb = {}",
        thurston_bennequin(&stabilized).tb
    )
    .unwrap();

    for n in [5, 7, 9] {
        let lambda = canonical_twists(&lambda_family(n).unwrap());
        writeln!(
            out,
            "lambda_{n} = ({}): tb = {}, bound {}",
            lambda.perm(),
            thurston_bennequin(&lambda).tb,
            tb_upper_bound(n)
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
