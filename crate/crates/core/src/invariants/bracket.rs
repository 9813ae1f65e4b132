use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::expansion::ClassicalDiagram;

/// Largest diagram the state sum accepts.
pub const BRACKET_CAP: usize = 24;

/// `d = -A^2 - A^-2`, the value of a closed loop.
fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

/// Open path ends after some crossings are smoothed: each open arc label
/// maps to the arc at the other end of its path.
type Frontier = BTreeMap<usize, usize>;

fn join(front: &mut Frontier, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    if front.get(&x) == Some(&y) {
        front.remove(&x);
        front.remove(&y);
        return true;
    }
    let px = front.remove(&x).unwrap_or(x);
    let py = front.remove(&y).unwrap_or(y);
    front.insert(px, py);
    front.insert(py, px);
    false
}

/// Crossings ordered so that each next one shares as many arcs as possible
/// with those already processed.
fn processing_order(d: &ClassicalDiagram) -> Vec<usize> {
    let count = d.crossings().len();
    let mut done = vec![false; count];
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut order = Vec::with_capacity(count);
    for _ in 0..count {
        let best = (0..count)
            .filter(|&c| !done[c])
            .max_by_key(|&c| {
                let shared = d.crossings()[c]
                    .pd
                    .iter()
                    .filter(|l| seen.get(l) == Some(&1))
                    .count();
                (shared, std::cmp::Reverse(c))
            })
            .unwrap();
        done[best] = true;
        for l in d.crossings()[best].pd {
            *seen.entry(l).or_insert(0) += 1;
        }
        order.push(best);
    }
    order
}

/// Kauffman bracket, normalized so the crossingless unknot is 1. Smoothing
/// `X[a,b,c,d]` gives `A <a b><c d> + A^-1 <a d><b c>`.
pub fn kauffman_bracket(d: &ClassicalDiagram) -> Result<LaurentPolynomial> {
    if !d.is_closed() {
        return Err(Error::OpenTangle);
    }
    let count = d.crossing_count();
    if count > BRACKET_CAP {
        return Err(Error::TooManyCrossings {
            count,
            cap: BRACKET_CAP,
        });
    }
    let delta = loop_value();
    if count == 0 {
        return Ok(delta.pow(d.free_loops().saturating_sub(1) as u32));
    }

    let mut states: HashMap<Vec<(usize, usize)>, LaurentPolynomial> = HashMap::new();
    states.insert(Vec::new(), LaurentPolynomial::one());
    for c in processing_order(d) {
        let [a, b, cc, dd] = d.crossings()[c].pd;
        let mut next: HashMap<Vec<(usize, usize)>, LaurentPolynomial> = HashMap::new();
        for (key, value) in &states {
            for (pairs, exponent) in [([(a, b), (cc, dd)], 1), ([(a, dd), (b, cc)], -1)] {
                let mut front: Frontier = key.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
                let mut loops = 0;
                for (x, y) in pairs {
                    if join(&mut front, x, y) {
                        loops += 1;
                    }
                }
                let mut term = value.shift(exponent);
                for _ in 0..loops {
                    term = &term * &delta;
                }
                let key: Vec<(usize, usize)> = front.into_iter().filter(|(x, y)| x < y).collect();
                let slot = next.entry(key).or_default();
                *slot = &*slot + &term;
            }
        }
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_default();
    let total = &total * &delta.pow(d.free_loops() as u32);
    Ok(total
        .div_exact(&delta)
        .expect("a closed diagram has at least one loop in every state"))
}

/// Jones polynomial stored in powers of `t^(1/2)`; knots only use even
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JonesPolynomial {
    half: LaurentPolynomial,
}

impl JonesPolynomial {
    /// From `(exponent of t, coefficient)` pairs.
    pub fn from_t_terms(terms: &[(i64, i64)]) -> Self {
        Self {
            half: LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (2 * e, c))),
        }
    }

    pub fn one() -> Self {
        Self::from_t_terms(&[(0, 1)])
    }

    /// The polynomial in the variable `t^(1/2)`.
    pub fn in_half_powers(&self) -> &LaurentPolynomial {
        &self.half
    }

    pub fn is_one(&self) -> bool {
        self.half.is_one()
    }

    /// `t -> t^-1`, the Jones polynomial of the mirror image.
    pub fn mirror(&self) -> Self {
        Self {
            half: self.half.rescale(-1, 1).expect("integer exponents"),
        }
    }

    /// `V(-1)` with `t^(1/2) = i`, as (real, imaginary) parts.
    pub fn at_minus_one(&self) -> (BigInt, BigInt) {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in self.half.terms() {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    /// `|V(-1)|` when it is an integer.
    pub fn abs_at_minus_one(&self) -> Option<BigInt> {
        let (re, im) = self.at_minus_one();
        let norm = &re * &re + &im * &im;
        let root = norm.sqrt();
        (&root * &root == norm).then_some(root.abs())
    }
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.half.format_with("t", |e| {
            if e % 2 == 0 {
                (e / 2).to_string()
            } else {
                format!("({e}/2)")
            }
        }))
    }
}

/// `V(t) = (-A)^(-3w) <D>` with `t = A^-4`.
pub fn jones(d: &ClassicalDiagram) -> Result<JonesPolynomial> {
    let bracket = kauffman_bracket(d)?;
    let w = d.sign_sum();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = &bracket.shift(-3 * w) * &LaurentPolynomial::monomial(0, sign);
    // A^e = t^(-e/4) = (t^(1/2))^(-e/2).
    let half = normalized
        .rescale(-1, 2)
        .expect("bracket exponents of a diagram are even after normalization");
    Ok(JonesPolynomial { half })
}
