//! Spreading a multi-crossing into a half-twist of pairwise crossings, closing
//! it along the petals, and the PD / Gauss encodings of the result.
//!
//! The tangle box has left endpoints L1..Ln and right endpoints R1..Rn, both
//! numbered top to bottom. The strand entering at Lq leaves at R(n+1-q). A
//! crossing is a slot quadruple NW, SW, SE, NE (counterclockwise); a strand
//! moving down-right occupies NW-SE, one moving up-right SW-NE.

mod diagram;

pub(crate) use diagram::{assemble, Path, Visit};
pub use diagram::{
    canonical_labels, parse_pd, to_gauss_code, to_pd_code, writhe, ClassicalDiagram, Crossing,
    CrossingOrigin,
};

use crate::error::{Error, Result};
use crate::geometry::ChordModel;
use crate::petal::{check_bijection, LagrangianPetalDiagram, PetalPermutation};

/// Crossing pattern of the standard n-strand half twist, as the braid word
/// `(σ1 ... σ(n-1)) (σ1 ... σ(n-2)) ... σ1` on left positions.
#[derive(Debug, Clone)]
pub(crate) struct HalfTwist {
    /// For each crossing, the left positions of the strand moving down
    /// (NW-SE) and of the strand moving up (SW-NE).
    pub pairs: Vec<(usize, usize)>,
    /// For each left position, its crossings left to right with the entry slot.
    passes: Vec<Vec<(usize, usize)>>,
}

impl HalfTwist {
    pub fn new(n: usize) -> Self {
        let mut at: Vec<usize> = (1..=n).collect();
        let mut pairs = Vec::new();
        let mut passes = vec![Vec::new(); n];
        for k in 0..n.saturating_sub(1) {
            for j in 1..n - k {
                let (upper, lower) = (at[j - 1], at[j]);
                let c = pairs.len();
                pairs.push((upper, lower));
                passes[upper - 1].push((c, 0));
                passes[lower - 1].push((c, 1));
                at.swap(j - 1, j);
            }
        }
        Self { pairs, passes }
    }

    /// Visits of the strand at left position `q`, left to right or reversed.
    pub fn visits(
        &self,
        q: usize,
        left_to_right: bool,
        over: impl Fn(usize) -> bool,
    ) -> Vec<Visit> {
        let forward = self.passes[q - 1].iter().map(|&(crossing, entry)| Visit {
            crossing,
            entry,
            over: over(crossing),
        });
        if left_to_right {
            forward.collect()
        } else {
            forward.rev().map(Visit::reversed).collect()
        }
    }
}

/// What `close_petals` needs to know about an expanded multi-crossing.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TangleLayout {
    heights: Vec<usize>,
    /// Visits of each strand (index strand - 1) from its entry to its exit.
    strands: Vec<Vec<Visit>>,
    origins: Vec<CrossingOrigin>,
    mirrored: bool,
}

impl TangleLayout {
    pub fn mirrored(&self) -> TangleLayout {
        TangleLayout {
            heights: self.heights.clone(),
            strands: self
                .strands
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|v| Visit {
                            over: !v.over,
                            ..*v
                        })
                        .collect()
                })
                .collect(),
            origins: self
                .origins
                .iter()
                .map(|o| match *o {
                    CrossingOrigin::Pair { over, under } => CrossingOrigin::Pair {
                        over: under,
                        under: over,
                    },
                    other => other,
                })
                .collect(),
            mirrored: !self.mirrored,
        }
    }
}

/// Traversal order of the strands: 1, n, n-1, ..., 2.
pub fn traversal_order(n: usize) -> Vec<usize> {
    std::iter::once(1).chain((2..=n).rev()).collect()
}

/// Left position (1 = top) of every strand, from the chord model.
pub fn left_positions(n: usize) -> Vec<usize> {
    let model = ChordModel::new(n);
    let left_ray = |s: usize| {
        let e = model.entry_ray(s);
        if model.is_left(e) {
            e
        } else {
            model.exit_ray(s)
        }
    };
    let mut by_ray: Vec<usize> = (1..=n).collect();
    by_ray.sort_by_key(|&s| left_ray(s));
    let mut pos = vec![0; n];
    for (rank, &s) in by_ray.iter().enumerate() {
        pos[s - 1] = rank + 1;
    }
    pos
}

/// Spreads the multi-crossing with heights `h` (any n ≥ 1, including even
/// n) into an open half-twist tangle. The over-strand of each pair is the one
/// with smaller height.
pub fn spread_heights(heights: &[usize]) -> Result<ClassicalDiagram> {
    check_bijection(heights)?;
    let n = heights.len();
    let model = ChordModel::new(n);
    let pos = left_positions(n);
    let mut strand_at = vec![0; n];
    for s in 1..=n {
        strand_at[pos[s - 1] - 1] = s;
    }
    let twist = HalfTwist::new(n);
    let origins: Vec<CrossingOrigin> = twist
        .pairs
        .iter()
        .map(|&(qa, qb)| {
            let (a, b) = (strand_at[qa - 1], strand_at[qb - 1]);
            if heights[a - 1] < heights[b - 1] {
                CrossingOrigin::Pair { over: a, under: b }
            } else {
                CrossingOrigin::Pair { over: b, under: a }
            }
        })
        .collect();
    let strands: Vec<Vec<Visit>> = (1..=n)
        .map(|s| {
            let left_to_right = model.is_left(model.entry_ray(s));
            twist.visits(
                pos[s - 1],
                left_to_right,
                |c| matches!(origins[c], CrossingOrigin::Pair { over, .. } if over == s),
            )
        })
        .collect();
    let paths: Vec<Path> = traversal_order(n)
        .into_iter()
        .map(|s| Path {
            visits: strands[s - 1].clone(),
            closed: false,
        })
        .collect();
    let mut d = assemble(&paths, &origins);
    d.layout = Some(TangleLayout {
        heights: heights.to_vec(),
        strands,
        origins,
        mirrored: false,
    });
    Ok(d)
}

/// Open half-twist tangle of a petal permutation: n(n-1)/2 crossings.
pub fn spread_multicrossing(perm: &PetalPermutation) -> ClassicalDiagram {
    spread_heights(perm.heights()).expect("petal permutations are bijections")
}

/// Joins the exit of each strand to the entry of the next one in traversal
/// order along its petal, with one clockwise curl per half twist on that
/// petal. Arc 1 is the arc through strand 1's entry.
pub fn close_petals(
    tangle: &ClassicalDiagram,
    diag: &LagrangianPetalDiagram,
) -> Result<ClassicalDiagram> {
    let layout = tangle.layout.as_ref().ok_or(Error::TangleMismatch)?;
    if layout.heights != diag.perm().heights() {
        return Err(Error::TangleMismatch);
    }
    let n = diag.n();
    let mut origins = layout.origins.clone();
    let mut visits = Vec::new();
    for s in traversal_order(n) {
        visits.extend_from_slice(&layout.strands[s - 1]);
        let petal = if s == 1 { n } else { s - 1 };
        for _ in 0..diag.twist(petal) {
            let c = origins.len();
            origins.push(CrossingOrigin::Twist { petal });
            // Through SW-NE, around clockwise, back through SE-NW on top.
            visits.push(Visit {
                crossing: c,
                entry: 1,
                over: layout.mirrored,
            });
            visits.push(Visit {
                crossing: c,
                entry: 2,
                over: !layout.mirrored,
            });
        }
    }
    let d = assemble(
        &[Path {
            visits,
            closed: true,
        }],
        &origins,
    );
    let components = crate::invariants::component_count(&d);
    if components != 1 {
        return Err(Error::ComponentCountNotOne(components));
    }
    Ok(d)
}

/// Closed classical diagram of a Lagrangian petal diagram.
pub fn expand(diag: &LagrangianPetalDiagram) -> ClassicalDiagram {
    close_petals(&spread_multicrossing(diag.perm()), diag).expect("petal closure is a knot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::{
        canonical_twists, sigma_sum, thurston_bennequin, validate_permutation, Sign,
    };

    fn closed(values: &[usize]) -> ClassicalDiagram {
        expand(&canonical_twists(&validate_permutation(values).unwrap()))
    }

    #[test]
    fn half_twist_reverses_positions() {
        for n in 1..=7 {
            let t = HalfTwist::new(n);
            assert_eq!(t.pairs.len(), n * (n - 1) / 2);
            let mut seen: Vec<(usize, usize)> =
                t.pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn two_strands_cross_once() {
        let d = spread_heights(&[1, 2]).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.crossings()[0].over_strand(), Some(1));
        assert!(!d.is_closed());
        assert_eq!(writhe(&d), Err(Error::OpenTangle));
    }

    #[test]
    fn pair_counts() {
        let d = spread_heights(&[1, 3, 2]).unwrap();
        let mut pairs: Vec<(usize, usize)> = d
            .crossings()
            .iter()
            .map(|c| {
                let (a, b) = (c.over_strand().unwrap(), c.under_strand().unwrap());
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(
            spread_heights(&[1, 4, 2, 5, 3]).unwrap().crossing_count(),
            10
        );
    }

    #[test]
    fn petals_join_adjacent_boundary_points() {
        // Boundary points in cyclic order L1..Ln, Rn..R1.
        for n in [3, 5, 7, 9] {
            let model = ChordModel::new(n);
            let pos = left_positions(n);
            let boundary = |s: usize, ray: usize| {
                let q = pos[s - 1];
                if model.is_left(ray) {
                    q - 1
                } else {
                    n + (q - 1)
                }
            };
            for p in 1..=n {
                let next = p % n + 1;
                let a = boundary(next, model.exit_ray(next));
                let b = boundary(p, model.entry_ray(p));
                let gap = (a + 2 * n - b) % (2 * n);
                assert!(gap == 1 || gap == 2 * n - 1, "n = {n}, petal {p}");
            }
        }
    }

    #[test]
    fn pair_signs_follow_chord_directions() {
        let perm = validate_permutation(&[1, 4, 2, 5, 3]).unwrap();
        let model = ChordModel::new(5);
        for c in spread_multicrossing(&perm).crossings() {
            let (o, u) = (
                model.direction(c.over_strand().unwrap()),
                model.direction(c.under_strand().unwrap()),
            );
            let cross = o[0] * u[1] - o[1] * u[0];
            assert_eq!(c.sign, Sign::from_positive(cross > 0.0));
        }
    }

    #[test]
    fn closed_counts_and_writhe() {
        let d = closed(&[1]);
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.crossings()[0].sign, Sign::Negative);
        assert_eq!(to_gauss_code(&d).unwrap(), "U1-,O1-");
        assert_eq!(closed(&[1, 3, 2]).crossing_count(), 4);
        assert_eq!(writhe(&closed(&[1, 3, 2])), Ok(-2));
        assert_eq!(closed(&[1, 4, 2, 5, 3]).crossing_count(), 12);
    }

    #[test]
    fn writhe_matches_formula_through_n7() {
        for n in [3, 5, 7] {
            let mut h: Vec<usize> = (1..=n).collect();
            loop {
                let perm = validate_permutation(&h).unwrap();
                let tangle = spread_multicrossing(&perm);
                assert_eq!(tangle.sign_sum(), sigma_sum(&perm), "{perm}");
                let diag = canonical_twists(&perm);
                assert_eq!(
                    writhe(&expand(&diag)).unwrap(),
                    thurston_bennequin(&diag).tb,
                    "{perm}"
                );
                if !next_permutation(&mut h[1..]) {
                    break;
                }
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn arcs_appear_twice_and_gauss_length() {
        let d = closed(&[1, 4, 2, 5, 3]);
        let mut count = std::collections::BTreeMap::new();
        for c in d.crossings() {
            for l in c.pd {
                *count.entry(l).or_insert(0) += 1;
            }
        }
        assert!(count.values().all(|&k| k == 2));
        assert_eq!(count.len(), 2 * d.crossing_count());
        let gauss = to_gauss_code(&d).unwrap();
        assert_eq!(gauss.split(',').count(), 2 * d.crossing_count());
    }

    #[test]
    fn mirror_of_closed_tangle_is_closed_mirror() {
        let diag = canonical_twists(&validate_permutation(&[1, 3, 2]).unwrap());
        let tangle = spread_multicrossing(diag.perm());
        let a = close_petals(&tangle.mirror(), &diag).unwrap();
        let b = close_petals(&tangle, &diag).unwrap().mirror();
        assert_eq!(canonical_labels(&a), canonical_labels(&b));
        assert_eq!(writhe(&a), Ok(2));
    }

    #[test]
    fn pd_round_trip_on_petal_diagrams() {
        for values in [vec![1], vec![1, 3, 2], vec![1, 4, 2, 5, 3]] {
            let d = closed(&values);
            let parsed = parse_pd(&to_pd_code(&d).unwrap()).unwrap();
            assert_eq!(canonical_labels(&parsed), canonical_labels(&d));
            assert_eq!(
                parsed.crossing_count(),
                to_pd_code(&d).unwrap().matches('X').count()
            );
        }
    }

    #[test]
    fn mismatched_tangle_rejected() {
        let tangle = spread_heights(&[1, 2, 3]).unwrap();
        let diag = canonical_twists(&validate_permutation(&[1, 3, 2]).unwrap());
        assert_eq!(close_petals(&tangle, &diag), Err(Error::TangleMismatch));
    }
}
