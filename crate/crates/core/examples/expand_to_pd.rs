// Spreads the multi-crossing into a half twist and prints PD and Gauss
// codes. The writhe equals tb.

use std::fmt::Write;

use petal_knots::expansion::{parse_pd, to_gauss_code, to_pd_code, writhe};
use petal_knots::{canonical_twists, expand, thurston_bennequin, validate_permutation};

pub fn run() -> String {
    let mut out = String::new();
    for values in [vec![1], vec![1, 3, 2], vec![1, 4, 2, 5, 3]] {
        let diag = canonical_twists(&validate_permutation(&values).unwrap());
        let classical = expand(&diag);
        let pd = to_pd_code(&classical).unwrap();
        writeln!(out, "({})", diag.perm()).unwrap();
        writeln!(out, "  pd:     {pd}").unwrap();
        writeln!(out, "  gauss:  {}", to_gauss_code(&classical).unwrap()).unwrap();
        writeln!(
            out,
            "  writhe: {} (tb {})",
            writhe(&classical).unwrap(),
            thurston_bennequin(&diag).tb
        )
        .unwrap();
        let reparsed = parse_pd(&pd).unwrap();
        writeln!(out, "  reparsed writhe: {}", writhe(&reparsed).unwrap()).unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
