//! Planar realization of Lagrangian petal diagrams.
//!
//! Conventions, fixed once:
//!
//! * Ray angles are integer multiples of `π/n`. Strand `i` lies on the chord
//!   through the origin at angle `-(i - 1)π/n`, so strand labels increase
//!   clockwise around the multi-crossing.
//! * The knot is traversed strand 1, n, n-1, ..., 2: petal `p` is walked
//!   from strand `p + 1` back to strand `p`. With this orientation plain
//!   petals turn counterclockwise and twist lobes clockwise.
//! * `z` is recovered from `dz = y dx`, and larger `z` is higher. A plain
//!   petal therefore lowers `z` by its area in the traversal direction.

mod polyline;
mod realize;
mod svg;

pub use polyline::{
    recover_z_profile, turning_number, ClosedPolyline, LobeMark, StrandMark, ZProfile,
};
pub use realize::{
    assign_areas, crossing_height_check, realize_polyline, realize_with_areas, rose_polyline,
    HeightCheck, PetalAreas,
};
pub use svg::{render_polyline_svg, render_svg, RenderOptions};

use std::f64::consts::PI;

/// Ray positions of every strand, in units of `π/n` reduced mod `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordModel {
    n: usize,
    entry: Vec<usize>,
}

impl ChordModel {
    pub fn new(n: usize) -> Self {
        let modulus = 2 * n;
        let entry = (1..=n)
            .map(|i| (i * n + modulus - (i - 1) % modulus) % modulus)
            .collect();
        Self { n, entry }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ray (in units of `π/n`) along which strand `i` arrives at the center.
    pub fn entry_ray(&self, strand: usize) -> usize {
        self.entry[strand - 1]
    }

    /// Ray along which strand `i` leaves the center.
    pub fn exit_ray(&self, strand: usize) -> usize {
        (self.entry[strand - 1] + self.n) % (2 * self.n)
    }

    /// Unit vector of the direction of travel along strand `i`.
    pub fn direction(&self, strand: usize) -> [f64; 2] {
        let a = self.angle(self.exit_ray(strand));
        [a.cos(), a.sin()]
    }

    pub fn angle(&self, ray: usize) -> f64 {
        ray as f64 * PI / self.n as f64
    }

    /// True when the ray angle lies in `[π/2, 3π/2)`. For odd n no ray is
    /// vertical; the half-open interval still puts exactly one end of every
    /// chord on the left when n is even.
    pub fn is_left(&self, ray: usize) -> bool {
        2 * ray >= self.n && 2 * ray < 3 * self.n
    }

    /// The two rays bounding petal `p`, in traversal order: it leaves along
    /// the exit ray of strand `p + 1` and returns along the entry ray of `p`.
    pub fn petal_rays(&self, petal: usize) -> (usize, usize) {
        let next = petal % self.n + 1;
        (self.exit_ray(next), self.entry_ray(petal))
    }

    /// Angle of the bisector of petal `p`.
    pub fn petal_bisector(&self, petal: usize) -> f64 {
        let (from, _) = self.petal_rays(petal);
        (from as f64 + 0.5) * PI / self.n as f64
    }
}
