// Renders a petal diagram as SVG. Pass a path to write the file.

use petal_knots::geometry::{render_svg, RenderOptions};
use petal_knots::{canonical_twists, validate_permutation};

pub fn run() -> String {
    let diag = canonical_twists(&validate_permutation(&[1, 4, 2, 5, 3]).unwrap());
    render_svg(&diag, &RenderOptions::default()).unwrap()
}

#[allow(dead_code)]
fn main() {
    let svg = run();
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, svg).expect("write svg"),
        None => print!("{svg}"),
    }
}
