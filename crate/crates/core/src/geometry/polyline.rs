use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Where strand `strand` passes the center of the multi-crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrandMark {
    pub strand: usize,
    pub vertex: usize,
}

/// Vertex ranges of one petal. `start..=end` is the whole petal (both ends
/// at the origin). When the petal carries a twist, `twist = Some((a, b))`
/// marks the twist loop `a..=b`; vertices `a` and `b` are the twist crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LobeMark {
    pub petal: usize,
    pub start: usize,
    pub end: usize,
    pub twist: Option<(usize, usize)>,
}

/// A closed planar polyline; the last vertex repeats the first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedPolyline {
    vertices: Vec<[f64; 2]>,
    strand_marks: Vec<StrandMark>,
    lobe_marks: Vec<LobeMark>,
}

const CLOSURE_TOL: f64 = 1e-12;

fn shoelace(points: impl Iterator<Item = [f64; 2]>) -> f64 {
    let pts: Vec<[f64; 2]> = points.collect();
    let mut twice = 0.0;
    for w in 0..pts.len() {
        let a = pts[w];
        let b = pts[(w + 1) % pts.len()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    twice / 2.0
}

impl ClosedPolyline {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Self::with_marks(vertices, Vec::new(), Vec::new())
    }

    pub(crate) fn with_marks(
        vertices: Vec<[f64; 2]>,
        strand_marks: Vec<StrandMark>,
        lobe_marks: Vec<LobeMark>,
    ) -> Result<Self> {
        let poly = Self {
            vertices,
            strand_marks,
            lobe_marks,
        };
        poly.check_closed()?;
        Ok(poly)
    }

    /// Builds a closed polyline from a vertex loop without the repeated end.
    pub fn from_loop(mut vertices: Vec<[f64; 2]>) -> Result<Self> {
        if let Some(&first) = vertices.first() {
            vertices.push(first);
        }
        Self::new(vertices)
    }

    /// Regular `segments`-gon inscribed in the unit circle, counterclockwise.
    pub fn circle(segments: usize) -> Self {
        let vertices = (0..segments)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / segments as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        Self::from_loop(vertices).expect("circle is closed")
    }

    fn check_closed(&self) -> Result<()> {
        let (first, last) = match (self.vertices.first(), self.vertices.last()) {
            (Some(f), Some(l)) if self.vertices.len() >= 3 => (f, l),
            _ => return Err(Error::OpenCurve { gap: f64::INFINITY }),
        };
        let gap = (first[0] - last[0]).hypot(first[1] - last[1]);
        if gap > CLOSURE_TOL {
            return Err(Error::OpenCurve { gap });
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn strand_marks(&self) -> &[StrandMark] {
        &self.strand_marks
    }

    pub fn lobe_marks(&self) -> &[LobeMark] {
        &self.lobe_marks
    }

    /// Signed (counterclockwise positive) area of the closed sub-polygon.
    pub fn signed_area(&self) -> f64 {
        shoelace(self.vertices[..self.vertices.len() - 1].iter().copied())
    }

    /// Unsigned areas of the plain part and of the twist loop of a petal.
    pub fn lobe_areas(&self, mark: &LobeMark) -> (f64, f64) {
        let v = &self.vertices;
        match mark.twist {
            None => (shoelace(v[mark.start..mark.end].iter().copied()).abs(), 0.0),
            Some((a, b)) => {
                let plain = shoelace(
                    v[mark.start..=a]
                        .iter()
                        .chain(v[b + 1..mark.end].iter())
                        .copied(),
                )
                .abs();
                let twist = shoelace(v[a..b].iter().copied()).abs();
                (plain, twist)
            }
        }
    }
}

/// Heights recovered from `dz = y dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZProfile {
    /// Cumulative `z` at every vertex, starting from 0.
    pub samples: Vec<f64>,
    /// `z` of each strand at the crossing center, indexed by strand - 1.
    pub crossing_heights: Vec<f64>,
    /// `|z(end) - z(start)|` around the closed curve.
    pub closure_defect: f64,
    /// `Σ |Δz|` over all segments.
    pub total_variation: f64,
}

impl ZProfile {
    /// Closure defect relative to the total variation (0 for a flat curve).
    pub fn relative_defect(&self) -> f64 {
        if self.total_variation == 0.0 {
            self.closure_defect
        } else {
            self.closure_defect / self.total_variation
        }
    }

    /// Net `∮ y dx` around the curve.
    pub fn total(&self) -> f64 {
        self.samples.last().copied().unwrap_or(0.0)
    }
}

/// Integrates `y dx` along the polyline with the trapezoid rule, which is
/// exact on straight segments.
pub fn recover_z_profile(poly: &ClosedPolyline) -> Result<ZProfile> {
    poly.check_closed()?;
    let v = poly.vertices();
    let mut samples = Vec::with_capacity(v.len());
    let mut z = 0.0;
    let mut total_variation = 0.0;
    samples.push(z);
    for w in v.windows(2) {
        let dz = 0.5 * (w[0][1] + w[1][1]) * (w[1][0] - w[0][0]);
        z += dz;
        total_variation += dz.abs();
        samples.push(z);
    }
    let mut crossing_heights = vec![f64::NAN; poly.strand_marks().len()];
    for mark in poly.strand_marks() {
        crossing_heights[mark.strand - 1] = samples[mark.vertex];
    }
    Ok(ZProfile {
        samples,
        crossing_heights,
        closure_defect: z.abs(),
        total_variation,
    })
}

const TURNING_RESIDUE: f64 = 0.01;

/// Tangent winding number: the sum of signed exterior angles over `2π`.
pub fn turning_number(poly: &ClosedPolyline) -> Result<i64> {
    poly.check_closed()?;
    let v = &poly.vertices()[..poly.vertices().len() - 1];
    let m = v.len();
    let mut dirs = Vec::with_capacity(m);
    for idx in 0..m {
        let a = v[idx];
        let b = v[(idx + 1) % m];
        let d = [b[0] - a[0], b[1] - a[1]];
        if d[0] == 0.0 && d[1] == 0.0 {
            return Err(Error::DegenerateSegment(idx));
        }
        dirs.push(d);
    }
    let mut total = 0.0;
    for idx in 0..m {
        let a = dirs[idx];
        let b = dirs[(idx + 1) % m];
        let cross = a[0] * b[1] - a[1] * b[0];
        let dot = a[0] * b[0] + a[1] * b[1];
        total += cross.atan2(dot);
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    let residue = (turns - rounded).abs();
    if residue >= TURNING_RESIDUE {
        return Err(Error::NonIntegerTurning { residue });
    }
    Ok(rounded as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ClosedPolyline {
        ClosedPolyline::from_loop(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn square_integral_is_minus_area() {
        // Green: ∮ y dx = -(enclosed area) for a counterclockwise loop.
        let profile = recover_z_profile(&unit_square()).unwrap();
        assert!((profile.total() + 1.0).abs() < 1e-15);
        assert!((unit_square().signed_area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn open_curve_rejected() {
        let err = ClosedPolyline::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::OpenCurve { .. }));
    }

    #[test]
    fn circle_turns_once() {
        assert_eq!(turning_number(&ClosedPolyline::circle(64)).unwrap(), 1);
        let mut cw: Vec<[f64; 2]> = ClosedPolyline::circle(64).vertices().to_vec();
        cw.reverse();
        assert_eq!(
            turning_number(&ClosedPolyline::new(cw).unwrap()).unwrap(),
            -1
        );
    }

    #[test]
    fn degenerate_segment_rejected() {
        let poly = ClosedPolyline::from_loop(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
            .unwrap();
        assert_eq!(turning_number(&poly), Err(Error::DegenerateSegment(1)));
    }

    #[test]
    fn symmetric_figure_eight_closes() {
        // Two mirror-image lobes traversed in opposite senses.
        let pts = vec![
            [0.0, 0.0],
            [1.0, -1.0],
            [2.0, 0.0],
            [1.0, 1.0],
            [0.0, 0.0],
            [-1.0, -1.0],
            [-2.0, 0.0],
            [-1.0, 1.0],
        ];
        let poly = ClosedPolyline::from_loop(pts).unwrap();
        let profile = recover_z_profile(&poly).unwrap();
        assert_eq!(profile.closure_defect, 0.0);
        assert_eq!(turning_number(&poly).unwrap(), 0);
    }
}
