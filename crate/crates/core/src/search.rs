//! Exhaustive and sampled scans over height permutations normalized to
//! h(1) = 1, the Λ_n audit, and the oracle conformance report.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{expand, spread_multicrossing, writhe};
use crate::geometry::{crossing_height_check, realize_polyline, recover_z_profile, turning_number};
use crate::petal::{
    canonical_twists, lambda_family, rotation_number, sigma_upper_bound, tb_upper_bound,
    thurston_bennequin, PetalPermutation, SigmaCase,
};

pub const MAX_EXHAUSTIVE: usize = 11;
pub const MAX_LAMBDA: usize = 15;
pub const MAX_CONFORMANCE: usize = 7;
/// Maximizers kept in a report; the full count is always given.
const ARGMAX_KEPT: usize = 64;

/// Steps `v` to its lexicographic successor; false after the last one.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_odd(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge { n, max });
    }
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenPetalCount(n));
    }
    Ok(())
}

/// Calls `f` on every permutation with h(1) = 1 and h(2) = `second`, in
/// lexicographic order.
fn for_each_with_second(n: usize, second: usize, mut f: impl FnMut(&[usize])) {
    let mut h = vec![1, second];
    h.extend((2..=n).filter(|&v| v != second));
    loop {
        f(&h);
        if !next_permutation(&mut h[2..]) {
            break;
        }
    }
}

/// All h(1) = 1 permutations in lexicographic order, split into one branch
/// per value of h(2) and processed in parallel. Results come back in order.
fn scan_branches<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (2..=n).into_par_iter().map(f).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Bound,
    Histogram,
    Maximizers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub mode: ScanMode,
    pub permutations_scanned: u64,
    pub max_sigma_sum: i64,
    pub max_tb: i64,
    pub sigma_bound: i64,
    pub bound: i64,
    pub bound_satisfied: bool,
    /// Diagrams with tb + rot even (should be none).
    pub parity_violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<i64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_count: Option<u64>,
    /// Lexicographically first maximizers of tb.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default)]
struct Partial {
    count: u64,
    max_sigma: i64,
    max_tb: i64,
    argmax: Vec<Vec<usize>>,
    argmax_count: u64,
    histogram: BTreeMap<i64, u64>,
    parity_violations: u64,
}

impl Partial {
    fn new() -> Self {
        Self {
            max_sigma: i64::MIN,
            max_tb: i64::MIN,
            ..Self::default()
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        self.max_sigma = self.max_sigma.max(other.max_sigma);
        self.parity_violations += other.parity_violations;
        for (tb, c) in other.histogram {
            *self.histogram.entry(tb).or_insert(0) += c;
        }
        if other.max_tb > self.max_tb {
            self.max_tb = other.max_tb;
            self.argmax = other.argmax;
            self.argmax_count = other.argmax_count;
        } else if other.max_tb == self.max_tb {
            self.argmax_count += other.argmax_count;
            self.argmax.extend(other.argmax);
            self.argmax.truncate(ARGMAX_KEPT);
        }
        self
    }
}

/// Fast σ sum over all pairs, the same rule as [`crate::petal::sigma_sum`].
fn sigma_sum_raw(h: &[usize]) -> i64 {
    let n = h.len();
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            // Strand numbers are i + 1 and j + 1; their sum has the parity of i + j.
            let even = (i + j) % 2 == 0;
            total += if (h[i] > h[j]) == even { 1 } else { -1 };
        }
    }
    total
}

fn cyclic_ascents_raw(h: &[usize]) -> i64 {
    let n = h.len();
    (0..n).filter(|&p| h[(p + 1) % n] > h[p]).count() as i64
}

/// Scans every permutation with h(1) = 1 and canonical twists.
pub fn exhaustive_scan(n: usize, mode: ScanMode) -> Result<SearchReport> {
    check_odd(n, MAX_EXHAUSTIVE)?;
    let rot_base = (n as i64 + 1) / 2;
    let partials = scan_branches(n, |second| {
        let mut acc = Partial::new();
        for_each_with_second(n, second, |h| {
            let sigma = sigma_sum_raw(h);
            let k = cyclic_ascents_raw(h).max(1);
            let tb = sigma - k;
            let rot = rot_base - k;
            acc.count += 1;
            acc.max_sigma = acc.max_sigma.max(sigma);
            if (tb + rot) % 2 == 0 {
                acc.parity_violations += 1;
            }
            if mode == ScanMode::Histogram {
                *acc.histogram.entry(tb).or_insert(0) += 1;
            }
            if tb > acc.max_tb {
                acc.max_tb = tb;
                acc.argmax.clear();
                acc.argmax_count = 0;
            }
            if tb == acc.max_tb {
                acc.argmax_count += 1;
                if acc.argmax.len() < ARGMAX_KEPT {
                    acc.argmax.push(h.to_vec());
                }
            }
        });
        acc
    });
    let total = partials.into_iter().fold(Partial::new(), Partial::merge);
    let bound = tb_upper_bound(n);
    let sigma_bound = sigma_upper_bound(n);
    Ok(SearchReport {
        n,
        mode,
        permutations_scanned: total.count,
        max_sigma_sum: total.max_sigma,
        max_tb: total.max_tb,
        sigma_bound,
        bound,
        bound_satisfied: total.max_sigma <= sigma_bound && total.max_tb <= bound,
        parity_violations: total.parity_violations,
        histogram: (mode == ScanMode::Histogram).then_some(total.histogram),
        argmax_count: (mode == ScanMode::Maximizers).then_some(total.argmax_count),
        argmax: (mode == ScanMode::Maximizers).then(|| {
            total
                .argmax
                .iter()
                .map(|h| {
                    PetalPermutation::new(h.clone())
                        .expect("scanned permutation")
                        .to_string()
                })
                .collect()
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub n: usize,
    pub permutation: String,
    /// `((n-1)/2)^2 - (n-1)/2`, the closed form stated for the family.
    pub claimed_tb: i64,
    /// The displayed sum `Σ_{0≤k≤(n-1)/2} (2k+1) - (n-1)/2` the closed form
    /// is supposed to equal.
    pub claimed_sum_expression: i64,
    /// `-k + Σσ`.
    pub computed_tb: i64,
    /// Writhe of the expanded classical diagram.
    pub oracle_tb: i64,
    pub k: i64,
    pub k_expected: i64,
    pub k_ok: bool,
    pub matches_claim: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaAudit {
    pub rows: Vec<LambdaRow>,
    pub claimed_strictly_increasing: bool,
    pub computed_strictly_increasing: bool,
    pub oracle_agrees: bool,
}

pub fn lambda_audit(n_max: usize) -> Result<LambdaAudit> {
    check_odd(n_max, MAX_LAMBDA)?;
    let rows: Vec<LambdaRow> = (3..=n_max)
        .step_by(2)
        .map(|n| {
            let perm = lambda_family(n).expect("odd n");
            let diag = canonical_twists(&perm);
            let tb = thurston_bennequin(&diag);
            let m = (n as i64 - 1) / 2;
            let claimed_tb = m * m - m;
            LambdaRow {
                n,
                permutation: perm.to_string(),
                claimed_tb,
                claimed_sum_expression: (m + 1) * (m + 1) - m,
                computed_tb: tb.tb,
                oracle_tb: writhe(&expand(&diag)).expect("closed"),
                k: tb.k,
                k_expected: m,
                k_ok: tb.k == m,
                matches_claim: tb.tb == claimed_tb,
            }
        })
        .collect();
    let increasing = |f: fn(&LambdaRow) -> i64| rows.windows(2).all(|w| f(&w[1]) > f(&w[0]));
    Ok(LambdaAudit {
        claimed_strictly_increasing: increasing(|r| r.claimed_tb),
        computed_strictly_increasing: increasing(|r| r.computed_tb),
        oracle_agrees: rows.iter().all(|r| r.oracle_tb == r.computed_tb),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareViolation {
    pub permutation: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    pub n: usize,
    pub exhaustive: bool,
    pub permutations_checked: u64,
    /// Squares `{i, i+1} x {j, j+1}` with `i + 1 < j <= n - 1`, per permutation.
    pub squares_per_permutation: u64,
    /// Blocks `{i, i+1} x {j, j+1}` with even `i <= j` in `2..=n-1`. The
    /// diagonal blocks are single cells `(i, i+1)`.
    pub tiling_blocks: u64,
    /// `(n+1)(n-1)/8`.
    pub expected_tiling_blocks: u64,
    /// Blocks with `i < j`, all of which are full squares.
    pub full_square_blocks: u64,
    pub violation_count: u64,
    /// First violations found (at most 16).
    pub violations: Vec<SquareViolation>,
}

/// Sampled permutations for n above this are drawn at random.
pub const SQUARE_EXHAUSTIVE_MAX: usize = 9;
const SQUARE_SAMPLES: usize = 20_000;
const SQUARE_SEED: u64 = 0x05ee_d0f7_e7a1;

fn sigma_raw(h: &[usize], i: usize, j: usize) -> bool {
    // 1-based strands i < j; true for σ = +1.
    (h[i - 1] > h[j - 1]) == (i + j).is_multiple_of(2)
}

fn square_violations(h: &[usize], out: &mut Vec<(usize, usize)>) {
    let n = h.len();
    for i in 1..n {
        for j in i + 2..n {
            if sigma_raw(h, i, j)
                && sigma_raw(h, i + 1, j)
                && sigma_raw(h, i, j + 1)
                && sigma_raw(h, i + 1, j + 1)
            {
                out.push((i, j));
            }
        }
    }
}

/// Checks that no square of pairs has σ = +1 at all four corners.
pub fn square_property_scan(n: usize) -> Result<SquareReport> {
    check_odd(n, MAX_EXHAUSTIVE + 4)?;
    let exhaustive = n <= SQUARE_EXHAUSTIVE_MAX;
    let collect = |h: &[usize], acc: &mut (u64, u64, Vec<SquareViolation>)| {
        let mut found = Vec::new();
        square_violations(h, &mut found);
        acc.0 += 1;
        acc.1 += found.len() as u64;
        for (i, j) in found {
            if acc.2.len() < 16 {
                acc.2.push(SquareViolation {
                    permutation: PetalPermutation::new(h.to_vec())
                        .expect("valid")
                        .to_string(),
                    i,
                    j,
                });
            }
        }
    };
    let (checked, count, violations) = if exhaustive {
        let parts = scan_branches(n, |second| {
            let mut acc = (0, 0, Vec::new());
            for_each_with_second(n, second, |h| collect(h, &mut acc));
            acc
        });
        parts.into_iter().fold((0, 0, Vec::new()), |mut a, b| {
            a.0 += b.0;
            a.1 += b.1;
            a.2.extend(b.2);
            a.2.truncate(16);
            a
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SQUARE_SEED ^ n as u64);
        let mut acc = (0, 0, Vec::new());
        let mut h: Vec<usize> = (1..=n).collect();
        for _ in 0..SQUARE_SAMPLES {
            h[1..].shuffle(&mut rng);
            collect(&h, &mut acc);
        }
        acc
    };
    let evens: Vec<usize> = (2..n).filter(|i| i % 2 == 0).collect();
    let mut blocks = 0;
    let mut full = 0;
    for (a, &i) in evens.iter().enumerate() {
        for &j in &evens[a..] {
            blocks += 1;
            if i < j {
                full += 1;
            }
        }
    }
    let squares = (1..n).map(|i| (i + 2..n).count() as u64).sum();
    Ok(SquareReport {
        n,
        exhaustive,
        permutations_checked: checked,
        squares_per_permutation: squares,
        tiling_blocks: blocks,
        expected_tiling_blocks: ((n + 1) * (n - 1) / 8) as u64,
        full_square_blocks: full,
        violation_count: count,
        violations,
    })
}

/// Which σ rule the conformance report tests against the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaVariant {
    Standard,
    /// The sign of one case of the table flipped, for sensitivity checks.
    Flipped(SigmaCase),
}

fn variant_sigma_sum(perm: &PetalPermutation, variant: SigmaVariant) -> i64 {
    let n = perm.n();
    let mut total = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let case = SigmaCase::of(perm, i, j);
            let mut s = case.sign().value();
            if variant == SigmaVariant::Flipped(case) {
                s = -s;
            }
            total += s;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceWitness {
    pub permutation: String,
    pub check: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceRow {
    pub n: usize,
    pub permutations: u64,
    pub sigma_agree: u64,
    pub rotation_agree: u64,
    pub height_agree: u64,
    pub sigma_agreement: f64,
    pub rotation_agreement: f64,
    pub height_agreement: f64,
    pub max_closure_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub variant: SigmaVariant,
    pub rows: Vec<ConformanceRow>,
    /// True when the expansion writhe only agrees after a global mirror.
    pub convention_flip: bool,
    pub all_agree: bool,
    /// First disagreements (at most 16).
    pub witnesses: Vec<ConformanceWitness>,
}

const CONFORMANCE_SEGMENTS: usize = 24;
const CLOSURE_TOL: f64 = 1e-9;

struct PermCheck {
    perm: PetalPermutation,
    sigma: i64,
    sign_sum: i64,
    rot: i64,
    turning: Option<i64>,
    heights_ok: bool,
    observed_order: Vec<usize>,
    defect: f64,
}

fn check_perm(perm: PetalPermutation, variant: SigmaVariant, mirror: bool) -> PermCheck {
    let diag = canonical_twists(&perm);
    let poly = realize_polyline(&diag, CONFORMANCE_SEGMENTS).expect("canonical diagram");
    let profile = recover_z_profile(&poly).expect("closed polyline");
    let check = crossing_height_check(&diag, &poly, &profile);
    let defect = profile.relative_defect();
    PermCheck {
        sigma: variant_sigma_sum(&perm, variant),
        sign_sum: if mirror { -1 } else { 1 } * spread_multicrossing(&perm).sign_sum(),
        rot: rotation_number(&diag),
        turning: turning_number(&poly).ok(),
        heights_ok: check.pass && defect <= CLOSURE_TOL,
        observed_order: check.observed_order,
        defect,
        perm,
    }
}

/// Checks σ sums against expansion writhes, rotation numbers against
/// turning numbers, and heights against recovered z, for every h(1) = 1
/// permutation with 3 ≤ n ≤ `n_max`.
pub fn oracle_conformance(n_max: usize, variant: SigmaVariant) -> Result<ConformanceReport> {
    oracle_conformance_with(n_max, variant, false)
}

/// As [`oracle_conformance`], optionally with every expansion mirrored.
pub fn oracle_conformance_with(
    n_max: usize,
    variant: SigmaVariant,
    mirror: bool,
) -> Result<ConformanceReport> {
    check_odd(n_max, MAX_CONFORMANCE)?;
    let mut per_n = Vec::new();
    for n in (3..=n_max).step_by(2) {
        let branches = scan_branches(n, |second| {
            let mut perms = Vec::new();
            for_each_with_second(n, second, |h| perms.push(h.to_vec()));
            perms
                .into_par_iter()
                .map(|h| check_perm(PetalPermutation::new(h).expect("valid"), variant, mirror))
                .collect::<Vec<_>>()
        });
        per_n.push((n, branches.into_iter().flatten().collect::<Vec<_>>()));
    }

    let all: Vec<&PermCheck> = per_n.iter().flat_map(|(_, c)| c.iter()).collect();
    let direct = all.iter().all(|c| c.sigma == c.sign_sum);
    let mirrored = all.iter().all(|c| c.sigma == -c.sign_sum);
    let flip = !direct && mirrored;
    let oriented = |c: &PermCheck| if flip { -c.sign_sum } else { c.sign_sum };

    let mut witnesses = Vec::new();
    let mut rows = Vec::new();
    for (n, checks) in &per_n {
        let total = checks.len() as u64;
        let mut row = ConformanceRow {
            n: *n,
            permutations: total,
            sigma_agree: 0,
            rotation_agree: 0,
            height_agree: 0,
            sigma_agreement: 0.0,
            rotation_agreement: 0.0,
            height_agreement: 0.0,
            max_closure_defect: 0.0,
        };
        for c in checks {
            let mut witness = |check: &str, expected: String, observed: String| {
                if witnesses.len() < 16 {
                    witnesses.push(ConformanceWitness {
                        permutation: c.perm.to_string(),
                        check: check.to_string(),
                        expected,
                        observed,
                    });
                }
            };
            if c.sigma == oriented(c) {
                row.sigma_agree += 1;
            } else {
                witness("sigma_sum", c.sigma.to_string(), oriented(c).to_string());
            }
            if c.turning == Some(c.rot) {
                row.rotation_agree += 1;
            } else {
                witness("rotation", c.rot.to_string(), format!("{:?}", c.turning));
            }
            if c.heights_ok {
                row.height_agree += 1;
            } else {
                witness(
                    "heights",
                    format!("{:?}", c.perm.strands_by_height()),
                    format!("{:?} (defect {:e})", c.observed_order, c.defect),
                );
            }
            row.max_closure_defect = row.max_closure_defect.max(c.defect);
        }
        let pct = |k: u64| 100.0 * k as f64 / total as f64;
        row.sigma_agreement = pct(row.sigma_agree);
        row.rotation_agreement = pct(row.rotation_agree);
        row.height_agreement = pct(row.height_agree);
        rows.push(row);
    }
    let all_agree = rows.iter().all(|r| {
        r.sigma_agree == r.permutations
            && r.rotation_agree == r.permutations
            && r.height_agree == r.permutations
    });
    Ok(ConformanceReport {
        variant,
        rows,
        convention_flip: flip,
        all_agree,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::sigma_sum;

    #[test]
    fn raw_sigma_matches_table() {
        let mut h = vec![1, 2, 3, 4, 5, 6, 7];
        loop {
            let perm = PetalPermutation::new(h.clone()).unwrap();
            assert_eq!(sigma_sum_raw(&h), sigma_sum(&perm));
            if !next_permutation(&mut h[1..]) {
                break;
            }
        }
    }

    #[test]
    fn small_scans() {
        let r = exhaustive_scan(3, ScanMode::Histogram).unwrap();
        assert_eq!(r.permutations_scanned, 2);
        assert!(r.max_tb <= 0);
        // (1,2,3): tb -1; (1,3,2): tb -2.
        assert_eq!(r.histogram.unwrap(), BTreeMap::from([(-2, 1), (-1, 1)]));
        let r = exhaustive_scan(5, ScanMode::Bound).unwrap();
        assert_eq!(r.permutations_scanned, 24);
        assert!(r.bound_satisfied);
        assert_eq!(
            exhaustive_scan(13, ScanMode::Bound),
            Err(Error::TooLarge { n: 13, max: 11 })
        );
    }

    #[test]
    fn lambda_rows() {
        let audit = lambda_audit(7).unwrap();
        let five = &audit.rows[1];
        assert_eq!(
            (five.claimed_tb, five.computed_tb, five.matches_claim),
            (2, -6, false)
        );
        assert!(audit.rows.iter().all(|r| r.k_ok));
        assert!(audit.claimed_strictly_increasing);
        assert!(audit.oracle_agrees);
    }

    #[test]
    fn squares_n5() {
        let r = square_property_scan(5).unwrap();
        assert_eq!(r.permutations_checked, 24);
        assert_eq!(r.violation_count, 0);
        assert_eq!(r.tiling_blocks, 3);
        assert_eq!(r.expected_tiling_blocks, 3);
    }

    #[test]
    fn conformance_and_fault_injection() {
        let r = oracle_conformance(5, SigmaVariant::Standard).unwrap();
        assert!(r.all_agree, "{:?}", r.witnesses);
        assert!(!r.convention_flip);
        let bad = oracle_conformance(5, SigmaVariant::Flipped(SigmaCase::DescendingEven)).unwrap();
        assert!(!bad.all_agree);
        assert!(bad.rows.iter().any(|row| row.sigma_agreement < 100.0));
        assert!(!bad.witnesses.is_empty());
    }

    #[test]
    fn mirrored_expansion_is_detected() {
        let r = oracle_conformance_with(5, SigmaVariant::Standard, true).unwrap();
        assert!(r.convention_flip);
        assert!(r.all_agree);
    }
}
