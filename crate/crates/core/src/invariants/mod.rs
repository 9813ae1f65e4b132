//! Smooth knot invariants of classical diagrams: components, determinant,
//! Kauffman bracket and Jones polynomial, plus a small fingerprint table.

mod bracket;
mod goeritz;
mod laurent;

pub use bracket::{jones, kauffman_bracket, JonesPolynomial, BRACKET_CAP};
pub use goeritz::{determinant, DETERMINANT_CAP};
pub use laurent::LaurentPolynomial;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::expansion::ClassicalDiagram;
use crate::front::ReductionTrace;

/// Link components, by following arcs through crossings (a to c, b to d).
pub fn component_count(d: &ClassicalDiagram) -> usize {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for c in d.crossings() {
        for l in c.pd {
            parent.entry(l).or_insert(l);
        }
    }
    for c in d.crossings() {
        let [a, b, cc, dd] = c.pd;
        for (x, y) in [(a, cc), (b, dd)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent.insert(rx, ry);
        }
    }
    let labels: Vec<usize> = parent.keys().copied().collect();
    let mut roots: Vec<usize> = labels.into_iter().map(|l| find(&mut parent, l)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() + d.free_loops()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknotVerdict {
    CertifiedUnknot,
    NotUnknot,
    Indeterminate,
}

/// Removes Reidemeister I curls (two adjacent slots on one arc) until none
/// is left.
pub fn remove_curls(d: &ClassicalDiagram) -> ClassicalDiagram {
    let mut crossings = d.crossings().to_vec();
    let mut free_loops = d.free_loops();
    while let Some((idx, j)) = crossings.iter().enumerate().find_map(|(idx, c)| {
        (0..4)
            .find(|&j| c.pd[j] == c.pd[(j + 1) % 4])
            .map(|j| (idx, j))
    }) {
        let c = crossings.remove(idx);
        let (x, y) = (c.pd[(j + 2) % 4], c.pd[(j + 3) % 4]);
        if x == y {
            free_loops += 1;
        } else {
            for other in &mut crossings {
                for l in &mut other.pd {
                    if *l == y {
                        *l = x;
                    }
                }
            }
        }
    }
    ClassicalDiagram {
        crossings,
        free_loops,
        open_ends: Vec::new(),
        traversal: Vec::new(),
        layout: None,
    }
}

fn verdict_by_invariants(d: &ClassicalDiagram) -> UnknotVerdict {
    if component_count(d) != 1 {
        return UnknotVerdict::NotUnknot;
    }
    if let Ok(det) = determinant(d) {
        if det != BigInt::from(1) {
            return UnknotVerdict::NotUnknot;
        }
    }
    if let Ok(v) = jones(d) {
        if !v.is_one() {
            return UnknotVerdict::NotUnknot;
        }
    }
    UnknotVerdict::Indeterminate
}

/// Certified when curl removal leaves a single crossingless loop; otherwise
/// a nontrivial determinant or Jones polynomial rules the unknot out.
/// Trivial invariants alone never certify.
pub fn certify_unknot(d: &ClassicalDiagram) -> UnknotVerdict {
    let reduced = remove_curls(d);
    if reduced.crossing_count() == 0 && reduced.free_loops() == 1 {
        return UnknotVerdict::CertifiedUnknot;
    }
    verdict_by_invariants(d)
}

/// As [`certify_unknot`], also accepting a front reduction trace of the
/// same diagram as proof.
pub fn certify_with_trace(d: &ClassicalDiagram, trace: &ReductionTrace) -> UnknotVerdict {
    match certify_unknot(d) {
        UnknotVerdict::Indeterminate if trace.is_unknot() => UnknotVerdict::CertifiedUnknot,
        v => v,
    }
}

struct Fingerprint {
    name: &'static str,
    determinant: u32,
    jones: &'static [(i64, i64)],
}

const FINGERPRINTS: &[Fingerprint] = &[
    Fingerprint {
        name: "unknot",
        determinant: 1,
        jones: &[(0, 1)],
    },
    Fingerprint {
        name: "right-handed trefoil",
        determinant: 3,
        jones: &[(1, 1), (3, 1), (4, -1)],
    },
    Fingerprint {
        name: "left-handed trefoil",
        determinant: 3,
        jones: &[(-4, -1), (-3, 1), (-1, 1)],
    },
    Fingerprint {
        name: "figure-eight",
        determinant: 5,
        jones: &[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)],
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub crossings: usize,
    pub components: usize,
    pub determinant: Option<BigInt>,
    /// `None` above [`BRACKET_CAP`] crossings.
    pub jones: Option<JonesPolynomial>,
    pub candidates: Vec<&'static str>,
}

/// Matches the diagram against the built-in fingerprints. Without a Jones
/// polynomial only the determinant is compared.
pub fn identify(d: &ClassicalDiagram) -> Identification {
    let components = component_count(d);
    let determinant = determinant(d).ok();
    let jones = jones(d).ok();
    let candidates = if components != 1 {
        Vec::new()
    } else {
        FINGERPRINTS
            .iter()
            .filter(|f| {
                determinant
                    .as_ref()
                    .is_none_or(|det| *det == BigInt::from(f.determinant))
            })
            .filter(|f| {
                jones
                    .as_ref()
                    .is_none_or(|v| *v == JonesPolynomial::from_t_terms(f.jones))
            })
            .map(|f| f.name)
            .collect()
    };
    Identification {
        crossings: d.crossing_count(),
        components,
        determinant,
        jones,
        candidates,
    }
}
