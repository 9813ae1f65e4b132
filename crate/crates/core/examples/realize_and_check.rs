// Builds an exact-area polyline for a petal diagram, recovers z by
// integrating y dx and compares the crossing heights with h.

use std::fmt::Write;

use petal_knots::geometry::{
    crossing_height_check, realize_polyline, recover_z_profile, turning_number,
};
use petal_knots::{canonical_twists, rotation_number, validate_permutation};

pub fn run() -> String {
    let mut out = String::new();
    for values in [
        vec![1, 3, 2],
        vec![1, 4, 2, 5, 3],
        vec![1, 5, 2, 7, 4, 6, 3],
    ] {
        let diag = canonical_twists(&validate_permutation(&values).unwrap());
        let poly = realize_polyline(&diag, 64).unwrap();
        let profile = recover_z_profile(&poly).unwrap();
        let check = crossing_height_check(&diag, &poly, &profile);
        writeln!(
            out,
            "({}): {} vertices, turning {} (rot {}), heights {:?} pass = {}, closure defect {:.1e}",
            diag.perm(),
            poly.vertices().len(),
            turning_number(&poly).unwrap(),
            rotation_number(&diag),
            check.observed_order,
            check.pass,
            profile.relative_defect()
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
