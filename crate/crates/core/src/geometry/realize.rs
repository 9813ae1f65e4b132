use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::polyline::{ClosedPolyline, LobeMark, StrandMark, ZProfile};
use super::ChordModel;
use crate::error::{Error, Result};
use crate::petal::{LagrangianPetalDiagram, PetalPermutation};

/// Target areas of one petal. `twist_area` is 0 for a petal without a twist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PetalAreas {
    pub plain_area: f64,
    pub twist_area: f64,
}

/// Petal areas that realize the height order. With `d = h(p + 1) - h(p)`:
/// an ascending petal gets a plain part of area 1 and a twist loop of area
/// `1 + d`; a descending petal bounds area `|d|`. The single-strand diagram
/// uses two lobes of area 1.
pub fn assign_areas(perm: &PetalPermutation) -> Vec<PetalAreas> {
    let n = perm.n();
    if n == 1 {
        return vec![PetalAreas {
            plain_area: 1.0,
            twist_area: 1.0,
        }];
    }
    (1..=n)
        .map(|p| {
            let d = perm.height(p % n + 1) as i64 - perm.height(p) as i64;
            if d > 0 {
                PetalAreas {
                    plain_area: 1.0,
                    twist_area: (1 + d) as f64,
                }
            } else {
                PetalAreas {
                    plain_area: (-d) as f64,
                    twist_area: 0.0,
                }
            }
        })
        .collect()
}

const MIN_SEGMENTS: usize = 16;
/// Angular fill of the twist loop inside its petal sector.
const TWIST_WIDTH: f64 = 0.8;

fn polar(r: f64, theta: f64) -> [f64; 2] {
    [r * theta.cos(), r * theta.sin()]
}

fn area_of(points: &[[f64; 2]]) -> f64 {
    let mut twice = 0.0;
    for w in 0..points.len() {
        let a = points[w];
        let b = points[(w + 1) % points.len()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    (twice / 2.0).abs()
}

/// Rose lobe `r = R cos(πθ / 2β)` on `[-β, β]`, counterclockwise, scaled to
/// `area`. First and last points are the origin.
fn plain_lobe(beta: f64, segments: usize, area: f64) -> Vec<[f64; 2]> {
    let shape = |radius: f64| -> Vec<[f64; 2]> {
        (0..=segments)
            .map(|k| {
                if k == 0 || k == segments {
                    return [0.0, 0.0];
                }
                let theta = -beta + 2.0 * beta * k as f64 / segments as f64;
                polar(radius * (PI * theta / (2.0 * beta)).cos(), theta)
            })
            .collect()
    };
    let unit = area_of(&shape(1.0));
    shape((area / unit).sqrt())
}

/// Outer loop of a twisted petal in sector coordinates `(u, v)`: out along
/// the upper side `v = wβ sin(πs)` and back along the lower side, starting
/// and ending at `(rho, 0)`. Clockwise.
fn twist_loop(beta: f64, half: usize, rho: f64, length: f64) -> Vec<[f64; 2]> {
    let side = |s: f64, sign: f64| {
        let u = rho + length * s;
        polar(u, sign * TWIST_WIDTH * beta * (PI * s).sin())
    };
    let mut pts = Vec::with_capacity(2 * half + 1);
    for j in 0..=half {
        pts.push(side(j as f64 / half as f64, 1.0));
    }
    for j in (0..half).rev() {
        pts.push(side(j as f64 / half as f64, -1.0));
    }
    pts
}

/// A petal whose plain part (inner lobe, counterclockwise) has area
/// `plain_area` and whose twist loop (outer, clockwise) has `twist_area`.
/// Returns the points and the indices of the two passes through the twist
/// crossing.
fn twisted_petal(
    beta: f64,
    segments: usize,
    plain_area: f64,
    twist_area: f64,
) -> (Vec<[f64; 2]>, usize, usize) {
    let half = segments.div_ceil(2);
    let inner = |rho: f64| -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
        let lower = (0..=half)
            .map(|j| {
                if j == 0 {
                    return [0.0, 0.0];
                }
                let theta = -beta + beta * j as f64 / half as f64;
                polar(rho * (1.0 + theta / beta), theta)
            })
            .collect();
        let upper = (0..=half)
            .map(|j| {
                if j == half {
                    return [0.0, 0.0];
                }
                let theta = beta * j as f64 / half as f64;
                polar(rho * (1.0 - theta / beta), theta)
            })
            .collect();
        (lower, upper)
    };
    let inner_area = |rho: f64| {
        let (lower, upper) = inner(rho);
        let pts: Vec<[f64; 2]> = lower.iter().chain(upper[1..half].iter()).copied().collect();
        area_of(&pts)
    };
    let rho = (plain_area / inner_area(1.0)).sqrt();

    let loop_area = |length: f64| area_of(&twist_loop(beta, half, rho, length)[..2 * half]);
    let mut hi = rho.max(1.0);
    while loop_area(hi) < twist_area {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if loop_area(mid) < twist_area {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let length = 0.5 * (lo + hi);

    let (lower, upper) = inner(rho);
    let outer = twist_loop(beta, half, rho, length);
    let mut pts = lower;
    let first_pass = pts.len() - 1;
    pts.extend_from_slice(&outer[1..]);
    let second_pass = pts.len() - 1;
    pts.extend_from_slice(&upper[1..]);
    (pts, first_pass, second_pass)
}

fn rotate(p: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [p[0] * c - p[1] * s, p[0] * s + p[1] * c]
}

/// Realizes a standard diagram as a closed polyline whose lobe areas are
/// those of [`assign_areas`].
pub fn realize_polyline(
    diag: &LagrangianPetalDiagram,
    segments_per_lobe: usize,
) -> Result<ClosedPolyline> {
    if segments_per_lobe < MIN_SEGMENTS {
        return Err(Error::InvalidResolution(segments_per_lobe));
    }
    if !diag.is_standard() {
        return Err(Error::NotCanonical);
    }
    realize_with_areas(diag, &assign_areas(diag.perm()), segments_per_lobe)
}

/// Realizes a standard diagram with caller-supplied petal areas. Petals with
/// a twist use both areas; the others only `plain_area`.
pub fn realize_with_areas(
    diag: &LagrangianPetalDiagram,
    areas: &[PetalAreas],
    segments_per_lobe: usize,
) -> Result<ClosedPolyline> {
    if segments_per_lobe < MIN_SEGMENTS {
        return Err(Error::InvalidResolution(segments_per_lobe));
    }
    let n = diag.n();
    if areas.len() != n {
        return Err(Error::TwistLength {
            expected: n,
            got: areas.len(),
        });
    }
    if diag.twists().iter().any(|&t| t > 1) {
        return Err(Error::NotCanonical);
    }
    let model = ChordModel::new(n);
    let beta = PI / (2.0 * n as f64);

    let mut vertices = vec![[0.0, 0.0]];
    let mut strand_marks = Vec::with_capacity(n);
    let mut lobe_marks = Vec::with_capacity(n);
    let order = std::iter::once(1).chain((2..=n).rev());
    for strand in order {
        strand_marks.push(StrandMark {
            strand,
            vertex: vertices.len() - 1,
        });
        let petal = if strand == 1 { n } else { strand - 1 };
        let bisector = model.petal_bisector(petal);
        let target = areas[petal - 1];
        let start = vertices.len() - 1;
        let (local, twist) = if diag.twist(petal) == 1 {
            let (pts, a, b) = twisted_petal(
                beta,
                segments_per_lobe,
                target.plain_area,
                target.twist_area,
            );
            (pts, Some((start + a, start + b)))
        } else {
            (plain_lobe(beta, segments_per_lobe, target.plain_area), None)
        };
        vertices.extend(local[1..].iter().map(|&p| rotate(p, bisector)));
        // The lobe ends exactly at the origin.
        let end = vertices.len() - 1;
        vertices[end] = [0.0, 0.0];
        lobe_marks.push(LobeMark {
            petal,
            start,
            end,
            twist,
        });
    }
    ClosedPolyline::with_marks(vertices, strand_marks, lobe_marks)
}

/// Twist-free rose with `n` petals of area 1, no height constraint.
pub fn rose_polyline(n: usize, segments_per_lobe: usize) -> Result<ClosedPolyline> {
    if segments_per_lobe < MIN_SEGMENTS {
        return Err(Error::InvalidResolution(segments_per_lobe));
    }
    let model = ChordModel::new(n);
    let beta = PI / (2.0 * n as f64);
    let mut vertices = vec![[0.0, 0.0]];
    for strand in std::iter::once(1).chain((2..=n).rev()) {
        let petal = if strand == 1 { n } else { strand - 1 };
        let lobe = plain_lobe(beta, segments_per_lobe, 1.0);
        let bisector = model.petal_bisector(petal);
        vertices.extend(lobe[1..].iter().map(|&p| rotate(p, bisector)));
        let end = vertices.len() - 1;
        vertices[end] = [0.0, 0.0];
    }
    ClosedPolyline::new(vertices)
}

/// Outcome of comparing recovered crossing heights with `h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightCheck {
    pub pass: bool,
    /// Strands sorted by recovered `z`, highest first.
    pub observed_order: Vec<usize>,
    /// Strands sorted by `h`, topmost first.
    pub expected_order: Vec<usize>,
}

/// Passes iff sorting the strands by recovered `z` (descending) yields the
/// height order of the diagram.
pub fn crossing_height_check(
    diag: &LagrangianPetalDiagram,
    _poly: &ClosedPolyline,
    profile: &ZProfile,
) -> HeightCheck {
    let mut observed: Vec<usize> = (1..=profile.crossing_heights.len()).collect();
    observed.sort_by(|&a, &b| {
        profile.crossing_heights[b - 1]
            .total_cmp(&profile.crossing_heights[a - 1])
            .then(a.cmp(&b))
    });
    let expected = diag.perm().strands_by_height();
    HeightCheck {
        pass: observed == expected,
        observed_order: observed,
        expected_order: expected,
    }
}
