macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }
    };
}

example!(legendrian_invariants);
example!(realize_and_check);
example!(render_svg);
example!(expand_to_pd);
example!(smooth_invariants);
example!(front_closures);
example!(bound_search);
example!(conformance);

#[test]
fn legendrian_invariants_runs() {
    let out = legendrian_invariants::run();
    assert!(out.contains("(1,3,2): k = 1, sum sigma = -1, tb = -2, rot = 1"));
    assert!(out.contains("(1): k = 1, sum sigma = 0, tb = -1, rot = 0"));
    assert!(out.contains("stabilized (1,3,2): tb = -3"));
}

#[test]
fn realize_and_check_runs() {
    let out = realize_and_check::run();
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.contains("pass = true")));
}

#[test]
fn render_svg_runs() {
    let svg = render_svg::run();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn expand_to_pd_runs() {
    let out = expand_to_pd::run();
    assert!(out.contains("pd:     X[1,2,2,1]"));
    assert!(out.contains("writhe: -6 (tb -6)"));
}

#[test]
fn smooth_invariants_runs() {
    let out = smooth_invariants::run();
    assert!(out.contains("(1,3,2): 4 crossings, det 1, jones 1"));
    assert!(out.contains("figure-eight: 4 crossings, det 5"));
}

#[test]
fn front_closures_runs() {
    let out = front_closures::run();
    assert!(out.contains("n = 3: 5 closures, 2 unknots, rainbow has 2 components"));
    assert!(out.contains("n = 6: 132 closures"));
}

#[test]
fn bound_search_runs() {
    let out = bound_search::run();
    assert!(out.contains("n = 3: 2 perms"));
    assert!(out.contains("lambda_5: claimed 2, computed -6, writhe -6"));
    assert!(out.contains("0 violations"));
}

#[test]
fn conformance_runs() {
    let out = conformance::run();
    assert!(out.contains("all agree: true"));
    assert!(out.contains("all agree = false"));
}
