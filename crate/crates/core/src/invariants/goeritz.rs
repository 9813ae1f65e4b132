use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expansion::ClassicalDiagram;

pub const DETERMINANT_CAP: usize = 64;

/// Faces of the diagram as lists of corners `(crossing, j)`, where corner `j`
/// lies between PD slots `j` and `j + 1`.
fn faces(d: &ClassicalDiagram) -> Vec<Vec<(usize, usize)>> {
    let mut ends: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (slot, &l) in x.pd.iter().enumerate() {
            ends.entry(l).or_default().push((c, slot));
        }
    }
    let across = |c: usize, slot: usize| {
        let e = &ends[&d.crossings()[c].pd[slot]];
        if e[0] == (c, slot) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut used = vec![[false; 4]; d.crossing_count()];
    let mut out = Vec::new();
    for c0 in 0..d.crossing_count() {
        for s0 in 0..4 {
            if used[c0][s0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut c, mut s) = (c0, s0);
            while !used[c][s] {
                used[c][s] = true;
                let (c2, s2) = across(c, s);
                face.push((c2, s2));
                c = c2;
                s = (s2 + 1) % 4;
            }
            out.push(face);
        }
    }
    out
}

fn connected_pieces(d: &ClassicalDiagram) -> usize {
    let n = d.crossing_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for l in x.pd {
            if let Some(&o) = first.get(&l) {
                let (a, b) = (find(&mut parent, c), find(&mut parent, o));
                parent[a] = b;
            } else {
                first.insert(l, c);
            }
        }
    }
    (0..n).filter(|&c| find(&mut parent, c) == c).count()
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of the knot or link: `|det|` of a reduced Goeritz matrix of
/// the checkerboard coloring. Split diagrams give 0.
pub fn determinant(d: &ClassicalDiagram) -> Result<BigInt> {
    if !d.is_closed() {
        return Err(Error::OpenTangle);
    }
    let count = d.crossing_count();
    if count > DETERMINANT_CAP {
        return Err(Error::TooManyCrossings {
            count,
            cap: DETERMINANT_CAP,
        });
    }
    if count == 0 {
        return Ok(BigInt::from(u8::from(d.free_loops() == 1)));
    }
    if d.free_loops() > 0 || connected_pieces(d) > 1 {
        return Ok(BigInt::zero());
    }

    let faces = faces(d);
    let mut face_at = vec![[0usize; 4]; count];
    for (f, corners) in faces.iter().enumerate() {
        for &(c, j) in corners {
            face_at[c][j] = f;
        }
    }
    // parity[c] = j % 2 of the white corners at c.
    let mut white: Vec<Option<bool>> = vec![None; faces.len()];
    let mut parity: Vec<Option<usize>> = vec![None; count];
    white[0] = Some(true);
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        let is_white = white[f].unwrap();
        for &(c, j) in &faces[f] {
            let p = if is_white { j % 2 } else { (j + 1) % 2 };
            if parity[c].is_none() {
                parity[c] = Some(p);
                for (k, &g) in face_at[c].iter().enumerate() {
                    if white[g].is_none() {
                        white[g] = Some(k % 2 == p);
                        stack.push(g);
                    }
                }
            }
        }
    }

    let whites: Vec<usize> = (0..faces.len())
        .filter(|&f| white[f] == Some(true))
        .collect();
    let index: BTreeMap<usize, usize> = whites.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let r = whites.len();
    let mut g = vec![vec![BigInt::zero(); r]; r];
    for c in 0..count {
        let p = parity[c].expect("every crossing touches a colored face");
        let (fa, fb) = (index[&face_at[c][p]], index[&face_at[c][p + 2]]);
        if fa == fb {
            continue;
        }
        let eta = BigInt::from(if p == 0 { 1 } else { -1 });
        g[fa][fb] += &eta;
        g[fb][fa] += &eta;
        g[fa][fa] -= &eta;
        g[fb][fb] -= &eta;
    }
    let reduced: Vec<Vec<BigInt>> = g
        .into_iter()
        .take(r - 1)
        .map(|row| row.into_iter().take(r - 1).collect())
        .collect();
    Ok(bareiss_determinant(reduced).abs())
}
