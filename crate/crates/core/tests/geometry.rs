use std::path::Path;

use petal_knots::geometry::{
    crossing_height_check, realize_polyline, recover_z_profile, render_svg, turning_number,
    RenderOptions,
};
use petal_knots::search::next_permutation;
use petal_knots::{canonical_twists, rotation_number, validate_permutation, PetalPermutation};

fn all_canonical(n: usize) -> Vec<PetalPermutation> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (2..=n).collect();
    loop {
        let mut h = vec![1];
        h.extend(&rest);
        out.push(PetalPermutation::new(h).unwrap());
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

#[test]
fn realized_heights_and_turning_for_all_small_diagrams() {
    for n in [1, 3, 5, 7] {
        let perms = all_canonical(n);
        assert_eq!(perms.len(), (1..n).product::<usize>());
        for perm in perms {
            let diag = canonical_twists(&perm);
            let poly = realize_polyline(&diag, 24).unwrap();
            let profile = recover_z_profile(&poly).unwrap();
            assert!(
                profile.relative_defect() <= 1e-9,
                "({perm}) defect {}",
                profile.relative_defect()
            );
            assert!(
                crossing_height_check(&diag, &poly, &profile).pass,
                "({perm})"
            );
            assert_eq!(
                turning_number(&poly).unwrap(),
                rotation_number(&diag),
                "({perm})"
            );
        }
    }
}

#[test]
fn resolution_does_not_change_the_outcome() {
    let diag = canonical_twists(&validate_permutation(&[1, 5, 2, 7, 4, 6, 3]).unwrap());
    for segments in [16, 32, 100, 400] {
        let poly = realize_polyline(&diag, segments).unwrap();
        let profile = recover_z_profile(&poly).unwrap();
        assert!(
            crossing_height_check(&diag, &poly, &profile).pass,
            "{segments}"
        );
        assert_eq!(turning_number(&poly).unwrap(), 1);
    }
    assert!(realize_polyline(&diag, 8).is_err());
}

#[test]
fn svg_matches_golden_file() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/petal_1_4_2_5_3.svg");
    let expected = std::fs::read_to_string(path).unwrap();
    let diag = canonical_twists(&validate_permutation(&[1, 4, 2, 5, 3]).unwrap());
    let svg = render_svg(&diag, &RenderOptions::default()).unwrap();
    assert_eq!(svg.trim_end(), expected.trim_end());
    assert_eq!(svg.matches("class=\"petal\"").count(), 5);
    assert_eq!(svg.matches("class=\"twist\"").count(), 2);
}
