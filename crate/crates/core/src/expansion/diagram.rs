use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::petal::Sign;

/// Where a crossing of a classical diagram came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingOrigin {
    /// A pair of strands of the multi-crossing (or of a front half-twist).
    Pair { over: usize, under: usize },
    /// The half-twist on a petal.
    Twist { petal: usize },
    /// Read from a PD code.
    Parsed,
}

/// One crossing: arc labels in PD order (incoming under-arc first, then
/// counterclockwise) and the sign by the right-hand rule on
/// (over direction, under direction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub pd: [usize; 4],
    pub sign: Sign,
    pub origin: CrossingOrigin,
}

impl Crossing {
    pub fn over_strand(&self) -> Option<usize> {
        match self.origin {
            CrossingOrigin::Pair { over, .. } => Some(over),
            _ => None,
        }
    }

    pub fn under_strand(&self) -> Option<usize> {
        match self.origin {
            CrossingOrigin::Pair { under, .. } => Some(under),
            _ => None,
        }
    }

    fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.pd;
        // The new under-strand is the old over-strand; start at its incoming slot.
        let pd = match self.sign {
            Sign::Positive => [d, a, b, c],
            Sign::Negative => [b, c, d, a],
        };
        let origin = match self.origin {
            CrossingOrigin::Pair { over, under } => CrossingOrigin::Pair {
                over: under,
                under: over,
            },
            other => other,
        };
        Crossing {
            id: self.id,
            pd,
            sign: self.sign.flip(),
            origin,
        }
    }
}

/// A classical knot or link diagram, or an open tangle when `open_ends` is
/// non-empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalDiagram {
    pub(crate) crossings: Vec<Crossing>,
    /// Closed components without crossings.
    pub(crate) free_loops: usize,
    /// Arc labels with a boundary end, one entry per end.
    pub(crate) open_ends: Vec<usize>,
    /// Traversal of each component (or tangle strand) as (crossing id, over).
    pub(crate) traversal: Vec<Vec<(usize, bool)>>,
    #[serde(skip)]
    pub(crate) layout: Option<super::TangleLayout>,
}

/// Passage of a path through a crossing. Slots are numbered
/// counterclockwise NW, SW, SE, NE; the path leaves through the slot
/// opposite `entry`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Visit {
    pub crossing: usize,
    pub entry: usize,
    pub over: bool,
}

impl Visit {
    pub fn reversed(self) -> Visit {
        Visit {
            entry: (self.entry + 2) % 4,
            ..self
        }
    }
}

pub(crate) struct Path {
    pub visits: Vec<Visit>,
    pub closed: bool,
}

/// Labels arcs consecutively along the paths and builds the crossing records.
/// `origins` is indexed by the crossing numbers used in the visits; output
/// ids are renumbered 1, 2, ... by first appearance.
pub(crate) fn assemble(paths: &[Path], origins: &[CrossingOrigin]) -> ClassicalDiagram {
    let count = origins.len();
    let mut id_of = vec![0usize; count];
    let mut next_id = 1;
    for path in paths {
        for v in &path.visits {
            if id_of[v.crossing] == 0 {
                id_of[v.crossing] = next_id;
                next_id += 1;
            }
        }
    }

    let mut slots = vec![[0usize; 4]; count];
    let mut over_entry = vec![usize::MAX; count];
    let mut under_entry = vec![usize::MAX; count];
    let mut open_ends = Vec::new();
    let mut free_loops = 0;
    let mut traversal = Vec::new();
    let mut label = 1;
    for path in paths {
        let m = path.visits.len();
        if m == 0 {
            if path.closed {
                free_loops += 1;
            } else {
                open_ends.extend([label, label]);
                label += 1;
            }
            continue;
        }
        for (t, v) in path.visits.iter().enumerate() {
            let incoming = label + t;
            let outgoing = if path.closed {
                label + (t + 1) % m
            } else {
                label + t + 1
            };
            slots[v.crossing][v.entry] = incoming;
            slots[v.crossing][(v.entry + 2) % 4] = outgoing;
            if v.over {
                over_entry[v.crossing] = v.entry;
            } else {
                under_entry[v.crossing] = v.entry;
            }
        }
        if path.closed {
            label += m;
        } else {
            open_ends.extend([label, label + m]);
            label += m + 1;
        }
        traversal.push(
            path.visits
                .iter()
                .map(|v| (id_of[v.crossing], v.over))
                .collect(),
        );
    }

    let mut crossings: Vec<Crossing> = (0..count)
        .map(|c| {
            let (u, o) = (under_entry[c], over_entry[c]);
            assert!(
                u < 4 && o < 4 && (u + o) % 2 == 1,
                "crossing {c} not visited once over and once under"
            );
            let s = slots[c];
            Crossing {
                id: id_of[c],
                pd: [s[u], s[(u + 1) % 4], s[(u + 2) % 4], s[(u + 3) % 4]],
                sign: Sign::from_positive(u == (o + 1) % 4),
                origin: origins[c],
            }
        })
        .collect();
    crossings.sort_by_key(|c| c.id);
    ClassicalDiagram {
        crossings,
        free_loops,
        open_ends,
        traversal,
        layout: None,
    }
}

impl ClassicalDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_closed(&self) -> bool {
        self.open_ends.is_empty()
    }

    pub fn open_ends(&self) -> &[usize] {
        &self.open_ends
    }

    /// Distinct arc labels, ascending.
    pub fn arcs(&self) -> Vec<usize> {
        let mut arcs: Vec<usize> = self
            .crossings
            .iter()
            .flat_map(|c| c.pd)
            .chain(self.open_ends.iter().copied())
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    /// Sum of crossing signs, open or closed.
    pub fn sign_sum(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn mirror(&self) -> ClassicalDiagram {
        ClassicalDiagram {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            free_loops: self.free_loops,
            open_ends: self.open_ends.clone(),
            traversal: self
                .traversal
                .iter()
                .map(|comp| comp.iter().map(|&(id, over)| (id, !over)).collect())
                .collect(),
            layout: self.layout.as_ref().map(super::TangleLayout::mirrored),
        }
    }
}

pub fn writhe(d: &ClassicalDiagram) -> Result<i64> {
    if !d.is_closed() {
        return Err(Error::OpenTangle);
    }
    Ok(d.sign_sum())
}

/// `X[a,b,c,d]` terms separated by `, `.
pub fn to_pd_code(d: &ClassicalDiagram) -> Result<String> {
    if !d.is_closed() {
        return Err(Error::OpenTangle);
    }
    let terms: Vec<String> = d
        .crossings
        .iter()
        .map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3]))
        .collect();
    Ok(terms.join(", "))
}

/// Signed Gauss code, e.g. `U1-,O1-`. Components are separated by ` | `.
pub fn to_gauss_code(d: &ClassicalDiagram) -> Result<String> {
    if !d.is_closed() {
        return Err(Error::OpenTangle);
    }
    let sign_of: BTreeMap<usize, Sign> = d.crossings.iter().map(|c| (c.id, c.sign)).collect();
    let mut parts = Vec::new();
    for comp in &d.traversal {
        let mut s = String::new();
        for (idx, &(id, over)) in comp.iter().enumerate() {
            if idx > 0 {
                s.push(',');
            }
            let _ = write!(
                s,
                "{}{}{}",
                if over { 'O' } else { 'U' },
                id,
                sign_of[&id].symbol()
            );
        }
        parts.push(s);
    }
    Ok(parts.join(" | "))
}

fn parse_term(term: &str) -> Result<[usize; 4]> {
    let inner = term
        .trim()
        .strip_prefix("X[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected X[a,b,c,d], got {term:?}")))?;
    let labels: Vec<usize> = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad arc label in {term:?}")))
        })
        .collect::<Result<_>>()?;
    labels
        .try_into()
        .map_err(|_| Error::Parse(format!("{term:?} does not have four labels")))
}

/// Parses `X[a,b,c,d]` terms (optionally wrapped in `PD[...]`). Crossing
/// signs are recovered by walking the components: an under-strand always
/// runs a to c, and that orients every component with an under-crossing.
/// Components passing only over are oriented toward increasing labels.
pub fn parse_pd(text: &str) -> Result<ClassicalDiagram> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix("PD[").and_then(|t| t.strip_suffix(']')) {
        body = inner;
    }
    let mut terms = Vec::new();
    let mut rest = body;
    while let Some(start) = rest.find('X') {
        let end = rest[start..]
            .find(']')
            .ok_or_else(|| Error::Parse("unterminated term".into()))?;
        terms.push(parse_term(&rest[start..start + end + 1])?);
        rest = &rest[start + end + 1..];
    }
    if !rest
        .trim()
        .trim_matches(|c: char| c == ',' || c.is_whitespace())
        .is_empty()
    {
        return Err(Error::Parse(format!("trailing input {rest:?}")));
    }

    let mut positions: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, pd) in terms.iter().enumerate() {
        for (slot, &label) in pd.iter().enumerate() {
            positions.entry(label).or_default().push((c, slot));
        }
    }
    if let Some((label, pos)) = positions.iter().find(|(_, p)| p.len() != 2) {
        return Err(Error::Parse(format!(
            "arc {label} appears {} times",
            pos.len()
        )));
    }
    let other = |label: usize, here: (usize, usize)| -> (usize, usize) {
        let p = &positions[&label];
        if p[0] == here {
            p[1]
        } else {
            p[0]
        }
    };

    // over_entry[c] is the PD slot (1 = b, 3 = d) where the over-strand enters.
    let mut over_entry: Vec<Option<usize>> = vec![None; terms.len()];
    let mut under_done = vec![false; terms.len()];
    let mut traversal = Vec::new();
    let walk = |start: (usize, usize),
                over_entry: &mut Vec<Option<usize>>,
                under_done: &mut Vec<bool>|
     -> Result<Vec<(usize, bool)>> {
        let mut comp = Vec::new();
        let mut at = start;
        loop {
            let (c, entry) = at;
            match entry {
                0 => {
                    under_done[c] = true;
                    comp.push((c, false));
                }
                1 | 3 => {
                    if over_entry[c].is_some_and(|e| e != entry) {
                        return Err(Error::Parse(format!(
                            "inconsistent orientation at crossing {}",
                            c + 1
                        )));
                    }
                    over_entry[c] = Some(entry);
                    comp.push((c, true));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "under-strand runs backwards at crossing {}",
                        c + 1
                    )))
                }
            }
            let exit = (c, (entry + 2) % 4);
            at = other(terms[c][exit.1], exit);
            if at == start {
                return Ok(comp);
            }
        }
    };
    for c in 0..terms.len() {
        if !under_done[c] {
            traversal.push(walk((c, 0), &mut over_entry, &mut under_done)?);
        }
    }
    for c in 0..terms.len() {
        if over_entry[c].is_none() {
            let [_, b, _, d] = terms[c];
            let entry = if b == d + 1 || (d > b + 1) { 3 } else { 1 };
            traversal.push(walk((c, entry), &mut over_entry, &mut under_done)?);
        }
    }

    let crossings = terms
        .iter()
        .enumerate()
        .map(|(c, &pd)| Crossing {
            id: c + 1,
            pd,
            sign: Sign::from_positive(over_entry[c] == Some(3)),
            origin: CrossingOrigin::Parsed,
        })
        .collect();
    let traversal = traversal
        .into_iter()
        .map(|comp| comp.into_iter().map(|(c, over)| (c + 1, over)).collect())
        .collect();
    Ok(ClassicalDiagram {
        crossings,
        free_loops: 0,
        open_ends: Vec::new(),
        traversal,
        layout: None,
    })
}

/// Relabels arcs to 1, 2, ... in order of first appearance in the PD terms,
/// so two diagrams differing only by arc names compare equal.
pub fn canonical_labels(d: &ClassicalDiagram) -> Vec<([usize; 4], Sign)> {
    let mut map = BTreeMap::new();
    let mut next = 1;
    d.crossings
        .iter()
        .map(|c| {
            let pd = c.pd.map(|l| {
                *map.entry(l).or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            });
            (pd, c.sign)
        })
        .collect()
}
