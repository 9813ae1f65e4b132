//! Front diagrams with a single übercrossing: a half-twist tangle closed by a
//! non-crossing matching of its 2n boundary points.
//!
//! Boundary points run cyclically L1..Ln (left, top to bottom) then Rn..R1
//! (right, bottom to top). At every crossing the strand of smaller slope,
//! which is the one moving down-right, passes in front.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{assemble, ClassicalDiagram, CrossingOrigin, HalfTwist, Path};
use crate::invariants::{component_count, determinant, jones, BRACKET_CAP};

pub const MAX_ENUMERATED: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    L(usize),
    R(usize),
}

impl Endpoint {
    fn position(self, n: usize) -> usize {
        match self {
            Endpoint::L(i) => i - 1,
            Endpoint::R(i) => 2 * n - i,
        }
    }

    fn at(position: usize, n: usize) -> Self {
        if position < n {
            Endpoint::L(position + 1)
        } else {
            Endpoint::R(2 * n - position)
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::L(i) => write!(f, "L{i}"),
            Endpoint::R(i) => write!(f, "R{i}"),
        }
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPattern(format!("bad endpoint {s:?}"));
        let index: usize = s
            .get(1..)
            .and_then(|t| t.parse().ok())
            .filter(|&i| i > 0)
            .ok_or_else(bad)?;
        match s.chars().next() {
            Some('L') => Ok(Endpoint::L(index)),
            Some('R') => Ok(Endpoint::R(index)),
            _ => Err(bad()),
        }
    }
}

/// A closure of the n-strand half twist by disjoint arcs outside the box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosurePattern {
    n: usize,
    /// Partner of each boundary position.
    partner: Vec<usize>,
}

impl ClosurePattern {
    pub fn new(n: usize, pairs: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            for e in [a, b] {
                let i = match e {
                    Endpoint::L(i) | Endpoint::R(i) => i,
                };
                if i == 0 || i > n {
                    return Err(Error::InvalidPattern(format!("{e} outside 1..={n}")));
                }
            }
            let (pa, pb) = (a.position(n), b.position(n));
            if pa == pb || partner[pa] != usize::MAX || partner[pb] != usize::MAX {
                return Err(Error::InvalidPattern(format!("endpoint reused in {a}-{b}")));
            }
            partner[pa] = pb;
            partner[pb] = pa;
        }
        if let Some(p) = partner.iter().position(|&q| q == usize::MAX) {
            return Err(Error::InvalidPattern(format!(
                "{} is unmatched",
                Endpoint::at(p, n)
            )));
        }
        for a in 0..2 * n {
            let b = partner[a];
            if a < b {
                if let Some(c) = (a + 1..b).find(|&c| partner[c] < a || partner[c] > b) {
                    return Err(Error::InvalidPattern(format!(
                        "{}-{} crosses {}-{}",
                        Endpoint::at(a, n),
                        Endpoint::at(b, n),
                        Endpoint::at(c, n),
                        Endpoint::at(partner[c], n)
                    )));
                }
            }
        }
        Ok(Self { n, partner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, e: Endpoint) -> Endpoint {
        Endpoint::at(self.partner[e.position(self.n)], self.n)
    }

    /// Pairs ordered by their first boundary position.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..2 * self.n)
            .filter(|&a| a < self.partner[a])
            .map(|a| {
                (
                    Endpoint::at(a, self.n),
                    Endpoint::at(self.partner[a], self.n),
                )
            })
            .collect()
    }

    pub fn is_rainbow(&self) -> bool {
        (1..=self.n).all(|i| self.partner(Endpoint::L(i)) == Endpoint::R(i))
    }
}

impl fmt::Display for ClosurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        f.write_str(&terms.join(","))
    }
}

impl FromStr for ClosurePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .map(|term| {
                let (a, b) = term
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidPattern(format!("expected X-Y, got {term:?}")))?;
                Ok((a.parse()?, b.parse()?))
            })
            .collect::<Result<Vec<(Endpoint, Endpoint)>>>()?;
        Self::new(pairs.len(), &pairs)
    }
}

/// Left-i joined to right-i by nested arcs.
pub fn rainbow_closure(n: usize) -> ClosurePattern {
    let pairs: Vec<_> = (1..=n).map(|i| (Endpoint::L(i), Endpoint::R(i))).collect();
    ClosurePattern::new(n, &pairs).expect("rainbow is non-crossing")
}

fn matchings(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>, acc: &mut Vec<(usize, usize)>) {
    if points.is_empty() {
        out.push(acc.clone());
        return;
    }
    for k in (1..points.len()).step_by(2) {
        acc.push((points[0], points[k]));
        let mut inner = Vec::new();
        matchings(&points[1..k], &mut inner, &mut Vec::new());
        let mut outer = Vec::new();
        matchings(&points[k + 1..], &mut outer, &mut Vec::new());
        for i in &inner {
            for o in &outer {
                let mut full = acc.clone();
                full.extend_from_slice(i);
                full.extend_from_slice(o);
                out.push(full);
            }
        }
        acc.pop();
    }
}

/// Every non-crossing closure, Catalan(n) of them, in canonical order.
pub fn enumerate_closures(n: usize) -> Result<Vec<ClosurePattern>> {
    if n > MAX_ENUMERATED {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATED,
        });
    }
    let points: Vec<usize> = (0..2 * n).collect();
    let mut raw = Vec::new();
    matchings(&points, &mut raw, &mut Vec::new());
    let mut patterns: Vec<ClosurePattern> = raw
        .into_iter()
        .map(|m| {
            let pairs: Vec<_> = m
                .iter()
                .map(|&(a, b)| (Endpoint::at(a, n), Endpoint::at(b, n)))
                .collect();
            ClosurePattern::new(n, &pairs).expect("generated matchings are non-crossing")
        })
        .collect();
    patterns.sort();
    Ok(patterns)
}

/// Components of the closed diagram: cycles of the strand graph where the
/// strand from Lq ends at R(n+1-q) and the matching joins strand ends.
pub fn closure_components(pattern: &ClosurePattern) -> usize {
    let n = pattern.n;
    let strand_of = |e: Endpoint| match e {
        Endpoint::L(q) => q,
        Endpoint::R(y) => n + 1 - y,
    };
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (a, b) in pattern.pairs() {
        let (ra, rb) = (
            find(&mut parent, strand_of(a)),
            find(&mut parent, strand_of(b)),
        );
        parent[ra] = rb;
    }
    (1..=n).filter(|&q| find(&mut parent, q) == q).count()
}

/// The half twist as an open front tangle, with the right position reached
/// by each left position.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontTangle {
    pub diagram: ClassicalDiagram,
    pub exits: Vec<usize>,
}

fn front_origins(twist: &HalfTwist, mirror: bool) -> Vec<CrossingOrigin> {
    twist
        .pairs
        .iter()
        .map(|&(down, up)| {
            let (over, under) = if mirror { (up, down) } else { (down, up) };
            CrossingOrigin::Pair { over, under }
        })
        .collect()
}

fn is_over(origins: &[CrossingOrigin], q: usize) -> impl Fn(usize) -> bool + '_ {
    move |c| matches!(origins[c], CrossingOrigin::Pair { over, .. } if over == q)
}

pub fn half_twist_layering(n: usize) -> FrontTangle {
    let twist = HalfTwist::new(n);
    let origins = front_origins(&twist, false);
    let paths: Vec<Path> = (1..=n)
        .map(|q| Path {
            visits: twist.visits(q, true, is_over(&origins, q)),
            closed: false,
        })
        .collect();
    FrontTangle {
        diagram: assemble(&paths, &origins),
        exits: (1..=n).map(|q| n + 1 - q).collect(),
    }
}

/// Closed diagram of the half twist with the given closure. Strands are
/// labeled by left position.
pub fn compose(pattern: &ClosurePattern, mirror: bool) -> ClassicalDiagram {
    let n = pattern.n;
    let twist = HalfTwist::new(n);
    let origins = front_origins(&twist, mirror);
    let mut done = vec![false; n + 1];
    let mut paths = Vec::new();
    for start in 1..=n {
        if done[start] {
            continue;
        }
        let mut visits = Vec::new();
        let (mut q, mut forward) = (start, true);
        loop {
            done[q] = true;
            visits.extend(twist.visits(q, forward, is_over(&origins, q)));
            let out = if forward {
                Endpoint::R(n + 1 - q)
            } else {
                Endpoint::L(q)
            };
            (q, forward) = match pattern.partner(out) {
                Endpoint::L(x) => (x, true),
                Endpoint::R(y) => (n + 1 - y, false),
            };
            if q == start && forward {
                break;
            }
        }
        paths.push(Path {
            visits,
            closed: true,
        });
    }
    assemble(&paths, &origins)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub strands_before: usize,
    /// The adjacent same-side pair that was pulled out, e.g. `"L2-L3"`.
    pub pair: String,
    pub shed_unknot: bool,
    pub pattern_after: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_strands: usize,
    pub final_pattern: String,
    pub final_components: usize,
    pub shed_unknots: usize,
}

impl ReductionTrace {
    pub fn total_components(&self) -> usize {
        self.final_components + self.shed_unknots
    }

    /// Reached a half twist on at most two strands with one component and
    /// nothing shed.
    pub fn is_unknot(&self) -> bool {
        self.final_strands <= 2 && self.total_components() == 1
    }
}

fn adjacent_pair(p: &ClosurePattern) -> Option<(Endpoint, Endpoint)> {
    let n = p.n;
    let left = (1..n).map(|x| (Endpoint::L(x), Endpoint::L(x + 1)));
    let right = (1..n).map(|y| (Endpoint::R(y), Endpoint::R(y + 1)));
    left.chain(right).find(|&(a, b)| p.partner(a) == b)
}

/// One reduction: the capped pair slides out of the half twist, leaving a
/// half twist on n - 2 strands whose far ends are joined directly.
fn reduce_once(p: &ClosurePattern, pair: (Endpoint, Endpoint)) -> (ClosurePattern, bool) {
    let n = p.n;
    let (far_a, far_b, relabel): (Endpoint, Endpoint, Box<dyn Fn(Endpoint) -> Endpoint>) =
        match pair.0 {
            Endpoint::L(x) => (
                Endpoint::R(n + 1 - x),
                Endpoint::R(n - x),
                Box::new(move |e| match e {
                    Endpoint::L(z) => Endpoint::L(if z < x { z } else { z - 2 }),
                    Endpoint::R(y) => Endpoint::R(if y < n - x { y } else { y - 2 }),
                }),
            ),
            Endpoint::R(y) => (
                Endpoint::L(n + 1 - y),
                Endpoint::L(n - y),
                Box::new(move |e| match e {
                    Endpoint::R(z) => Endpoint::R(if z < y { z } else { z - 2 }),
                    Endpoint::L(z) => Endpoint::L(if z < n - y { z } else { z - 2 }),
                }),
            ),
        };
    let (pa, pb) = (p.partner(far_a), p.partner(far_b));
    let shed = pa == far_b;
    let removed = [pair.0, pair.1, far_a, far_b];
    let mut pairs: Vec<(Endpoint, Endpoint)> = p
        .pairs()
        .into_iter()
        .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
        .map(|(a, b)| (relabel(a), relabel(b)))
        .collect();
    if !shed {
        pairs.push((relabel(pa), relabel(pb)));
    }
    let next = ClosurePattern::new(n - 2, &pairs).expect("reduction keeps the closure planar");
    (next, shed)
}

/// Repeatedly pulls adjacent capped pairs out of the half twist. Stops at
/// two or fewer strands, or at a rainbow closure, which has no such pair.
pub fn reduce_closure(pattern: &ClosurePattern) -> Result<ReductionTrace> {
    let mut current = pattern.clone();
    let mut steps = Vec::new();
    let mut shed_unknots = 0;
    while current.n > 2 {
        let Some(pair) = adjacent_pair(&current) else {
            if steps.is_empty() {
                return Err(Error::NoAdjacentPair);
            }
            break;
        };
        let (next, shed) = reduce_once(&current, pair);
        shed_unknots += usize::from(shed);
        steps.push(ReductionStep {
            strands_before: current.n,
            pair: format!("{}-{}", pair.0, pair.1),
            shed_unknot: shed,
            pattern_after: next.to_string(),
        });
        current = next;
    }
    Ok(ReductionTrace {
        steps,
        final_strands: current.n,
        final_pattern: current.to_string(),
        final_components: closure_components(&current),
        shed_unknots,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontVerdict {
    Unknot,
    /// Several components. Split off unknots and rainbow leftovers alike.
    Link {
        components: usize,
    },
}

impl FrontVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            FrontVerdict::Unknot => "unknot",
            FrontVerdict::Link { .. } => "link",
        }
    }
}

fn verdict_name<S: serde::Serializer>(
    v: &FrontVerdict,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(v.name())
}

/// Verdict with the evidence from each engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub n: usize,
    pub pattern: String,
    #[serde(serialize_with = "verdict_name")]
    pub verdict: FrontVerdict,
    /// From the matching cycles.
    pub components: usize,
    /// From walking the composed classical diagram.
    pub diagram_components: usize,
    /// `None` for a rainbow closure on three or more strands.
    pub reduction: Option<ReductionTrace>,
    pub determinant: Option<u64>,
    /// Whether the Jones polynomial is 1; `None` for links or above the cap.
    pub jones_trivial: Option<bool>,
}

impl VerdictReport {
    /// All engines agree.
    pub fn consistent(&self) -> bool {
        let reduction_ok = self
            .reduction
            .as_ref()
            .is_none_or(|t| t.total_components() == self.components);
        let unknot = self.verdict == FrontVerdict::Unknot;
        self.components == self.diagram_components
            && reduction_ok
            && (!unknot
                || (self.jones_trivial != Some(false) && self.determinant.is_none_or(|d| d == 1)))
    }
}

pub fn front_verdict(pattern: &ClosurePattern, mirror: bool) -> VerdictReport {
    let components = closure_components(pattern);
    let diagram = compose(pattern, mirror);
    let reduction = reduce_closure(pattern).ok();
    let single = components == 1;
    let jones_trivial = (single && diagram.crossing_count() <= BRACKET_CAP)
        .then(|| jones(&diagram).map(|v| v.is_one()).ok())
        .flatten();
    let determinant = single
        .then(|| determinant(&diagram).ok().and_then(|d| d.to_u64()))
        .flatten();
    VerdictReport {
        n: pattern.n,
        pattern: pattern.to_string(),
        verdict: if single {
            FrontVerdict::Unknot
        } else {
            FrontVerdict::Link { components }
        },
        components,
        diagram_components: component_count(&diagram),
        reduction,
        determinant,
        jones_trivial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| enumerate_closures(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(enumerate_closures(9), Err(Error::TooLarge { n: 9, max: 8 }));
    }

    #[test]
    fn rainbow_components() {
        assert_eq!(closure_components(&rainbow_closure(2)), 1);
        assert_eq!(closure_components(&rainbow_closure(3)), 2);
        assert_eq!(closure_components(&rainbow_closure(6)), 3);
        assert_eq!(rainbow_closure(2).to_string(), "L1-R1,L2-R2");
    }

    #[test]
    fn layering_shape() {
        assert_eq!(half_twist_layering(1).diagram.crossing_count(), 0);
        assert_eq!(half_twist_layering(2).diagram.crossing_count(), 1);
        let t = half_twist_layering(5);
        assert_eq!(t.diagram.crossing_count(), 10);
        assert_eq!(t.exits, vec![5, 4, 3, 2, 1]);
    }

    #[test]
    fn adjacent_right_pair_joins_strands() {
        let p: ClosurePattern = "L1-L2,L3-R3,R2-R1".parse().unwrap();
        assert_eq!(closure_components(&p), 1);
    }

    #[test]
    fn shedding_an_unknot() {
        let p: ClosurePattern = "L1-L2,L3-R3,R2-R1".parse().unwrap();
        let trace = reduce_closure(&p).unwrap();
        assert_eq!(trace.shed_unknots, 0);
        let q: ClosurePattern = "L1-L2,L3-R1,R3-R2".parse().unwrap();
        let trace = reduce_closure(&q).unwrap();
        assert_eq!(trace.shed_unknots, 1);
        assert_eq!(trace.total_components(), closure_components(&q));
        assert_eq!(closure_components(&q), 2);
    }

    #[test]
    fn rainbow_has_no_adjacent_pair() {
        assert_eq!(
            reduce_closure(&rainbow_closure(3)),
            Err(Error::NoAdjacentPair)
        );
        let base = reduce_closure(&rainbow_closure(2)).unwrap();
        assert!(base.steps.is_empty() && base.is_unknot());
    }

    #[test]
    fn crossing_patterns_rejected() {
        assert!("L1-R2,L2-R1".parse::<ClosurePattern>().is_err());
        assert!("L1-L2,L1-R1".parse::<ClosurePattern>().is_err());
    }

    #[test]
    fn engines_agree_through_n6() {
        for n in 1..=6 {
            for p in enumerate_closures(n).unwrap() {
                let report = front_verdict(&p, false);
                assert!(report.consistent(), "{report:?}");
                if report.verdict == FrontVerdict::Unknot {
                    assert_eq!(report.jones_trivial, Some(true));
                    assert_eq!(report.determinant, Some(1));
                    assert!(report.reduction.as_ref().unwrap().is_unknot());
                }
            }
        }
    }
}
