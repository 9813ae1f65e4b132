//! Height permutations of petal projections and the closed-form invariants
//! (crossing signs, Thurston–Bennequin number, rotation number) computed from
//! them. Everything here is integer arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn from_positive(positive: bool) -> Sign {
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// `'+'` or `'-'`.
    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Positive => '+',
        }
    }
}

/// The height function of an n-multi-crossing.
///
/// `heights[i - 1] = k` means strand `i` is the k-th highest strand at the
/// multi-crossing, with 1 the topmost. Strands are listed in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PetalPermutation {
    heights: Vec<usize>,
}

/// Checks that `values` is a bijection on `1..=values.len()`.
pub(crate) fn check_bijection(values: &[usize]) -> Result<()> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut seen = vec![false; n];
    for &v in values {
        if v == 0 || v > n {
            return Err(Error::NotBijection {
                n,
                detail: format!("value {v} outside 1..={n}"),
            });
        }
        if seen[v - 1] {
            return Err(Error::NotBijection {
                n,
                detail: format!("value {v} repeated"),
            });
        }
        seen[v - 1] = true;
    }
    Ok(())
}

impl PetalPermutation {
    /// Validates a height sequence. Input order is traversal order.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        check_bijection(&values)?;
        let n = values.len();
        if n >= 2 && n.is_multiple_of(2) {
            return Err(Error::EvenPetalCount(n));
        }
        Ok(Self { heights: values })
    }

    /// The single-strand projection (the figure-eight Lagrangian unknot).
    pub fn unknot() -> Self {
        Self { heights: vec![1] }
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    /// Height of strand `i` (1-based). Panics when `i` is out of range.
    pub fn height(&self, i: usize) -> usize {
        self.heights[i - 1]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Height of the strand after `i` in cyclic order.
    fn next_height(&self, i: usize) -> usize {
        self.heights[i % self.n()]
    }

    /// Petals `p` (joining strand `p` to strand `p + 1`) with `h(p) < h(p + 1)`.
    pub fn cyclic_ascents(&self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&p| self.height(p) < self.next_height(p))
            .collect()
    }

    /// Strands listed from topmost to lowest.
    pub fn strands_by_height(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (i, &h) in self.heights.iter().enumerate() {
            order[h - 1] = i + 1;
        }
        order
    }

    /// Cyclic relabeling `h'(i) = h(i + shift)`, indices taken mod n.
    pub fn shifted(&self, shift: usize) -> Self {
        let n = self.n();
        let heights = (0..n).map(|i| self.heights[(i + shift) % n]).collect();
        Self { heights }
    }
}

impl TryFrom<Vec<usize>> for PetalPermutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<PetalPermutation> for Vec<usize> {
    fn from(p: PetalPermutation) -> Self {
        p.heights
    }
}

impl fmt::Display for PetalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, h) in self.heights.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Parses a comma separated list of integers (surrounding parentheses and
/// whitespace are tolerated).
pub fn parse_values(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.trim().is_empty() {
        return Err(Error::Empty);
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{}` is not a positive integer", tok.trim())))
        })
        .collect()
}

impl FromStr for PetalPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        validate_permutation(&parse_values(s)?)
    }
}

/// Validates a height sequence given in traversal order.
pub fn validate_permutation(values: &[usize]) -> Result<PetalPermutation> {
    PetalPermutation::new(values.to_vec())
}

/// The four cases of the crossing-sign table, in the order
/// `(h(i) > h(j), i + j even)`, `(h(i) < h(j), i + j odd)`,
/// `(h(i) > h(j), i + j odd)`, `(h(i) < h(j), i + j even)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigmaCase {
    DescendingEven,
    AscendingOdd,
    DescendingOdd,
    AscendingEven,
}

impl SigmaCase {
    pub fn of(perm: &PetalPermutation, i: usize, j: usize) -> SigmaCase {
        let descending = perm.height(i) > perm.height(j);
        let even = (i + j).is_multiple_of(2);
        match (descending, even) {
            (true, true) => SigmaCase::DescendingEven,
            (false, false) => SigmaCase::AscendingOdd,
            (true, false) => SigmaCase::DescendingOdd,
            (false, true) => SigmaCase::AscendingEven,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            SigmaCase::DescendingEven | SigmaCase::AscendingOdd => Sign::Positive,
            SigmaCase::DescendingOdd | SigmaCase::AscendingEven => Sign::Negative,
        }
    }
}

/// Sign of the crossing between strands `i < j` after spreading the
/// multi-crossing out: positive iff `h(i) > h(j)` with `i + j` even, or
/// `h(i) < h(j)` with `i + j` odd.
pub fn sign_sigma(perm: &PetalPermutation, i: usize, j: usize) -> Result<Sign> {
    let n = perm.n();
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i >= j {
        return Err(Error::NotStrictlyOrdered { i, j });
    }
    Ok(SigmaCase::of(perm, i, j).sign())
}

/// `Σ_{1 ≤ i < j ≤ n} σ(i, j)`.
pub fn sigma_sum(perm: &PetalPermutation) -> i64 {
    sigma_sum_from(perm, 1)
}

/// `Σ_{from ≤ i < j ≤ n} σ(i, j)`.
pub fn sigma_sum_from(perm: &PetalPermutation, from: usize) -> i64 {
    let n = perm.n();
    let h = perm.heights();
    let mut total = 0;
    for i in from..=n {
        for j in i + 1..=n {
            let descending = h[i - 1] > h[j - 1];
            let even = (i + j) % 2 == 0;
            total += if descending == even { 1 } else { -1 };
        }
    }
    total
}

/// A Lagrangian petal projection: heights plus half-twist counts per petal.
///
/// Petal `p` joins strand `p` to strand `p + 1`; petal `n` joins strand `n`
/// to strand 1. All twists carry the single modeled orientation, each one
/// contributing -1 to the writhe and -1 to the rotation number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LagrangianPetalDiagram {
    perm: PetalPermutation,
    twists: Vec<u32>,
}

impl LagrangianPetalDiagram {
    pub fn new(perm: PetalPermutation, twists: Vec<u32>) -> Result<Self> {
        if twists.len() != perm.n() {
            return Err(Error::TwistLength {
                expected: perm.n(),
                got: twists.len(),
            });
        }
        if twists.iter().all(|&t| t == 0) {
            return Err(Error::NoHalfTwist);
        }
        Ok(Self { perm, twists })
    }

    pub fn perm(&self) -> &PetalPermutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    /// Half-twist count on petal `p` (1-based).
    pub fn twist(&self, p: usize) -> u32 {
        self.twists[p - 1]
    }

    pub fn twists(&self) -> &[u32] {
        &self.twists
    }

    /// Total number of half twists.
    pub fn k(&self) -> i64 {
        self.twists.iter().map(|&t| i64::from(t)).sum()
    }

    /// At most one twist per petal, placed exactly on the cyclic ascents.
    pub fn is_standard(&self) -> bool {
        self.twists == canonical_twist_vector(&self.perm)
    }
}

fn canonical_twist_vector(perm: &PetalPermutation) -> Vec<u32> {
    if perm.n() == 1 {
        return vec![1];
    }
    let mut twists = vec![0; perm.n()];
    for p in perm.cyclic_ascents() {
        twists[p - 1] = 1;
    }
    twists
}

/// The standard diagram: one twist on every petal whose strands ascend in
/// height, none elsewhere. The single-strand case carries one twist.
pub fn canonical_twists(perm: &PetalPermutation) -> LagrangianPetalDiagram {
    LagrangianPetalDiagram {
        twists: canonical_twist_vector(perm),
        perm: perm.clone(),
    }
}

/// `(n + 1) / 2 - k`.
pub fn rotation_number(diag: &LagrangianPetalDiagram) -> i64 {
    (diag.n() as i64 + 1) / 2 - diag.k()
}

/// The two terms of the Thurston–Bennequin number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TbBreakdown {
    pub k: i64,
    pub sigma_sum: i64,
    pub tb: i64,
}

/// `tb = -k + Σ σ(i, j)`.
pub fn thurston_bennequin(diag: &LagrangianPetalDiagram) -> TbBreakdown {
    let k = diag.k();
    let sigma_sum = sigma_sum(diag.perm());
    TbBreakdown {
        k,
        sigma_sum,
        tb: sigma_sum - k,
    }
}

/// Cyclic relabeling so that strand 1 is the topmost strand.
pub fn canonical_rotation(perm: &PetalPermutation) -> PetalPermutation {
    let top = perm.strands_by_height()[0];
    perm.shifted(top - 1)
}

/// The family `(1, (n+3)/2, 2, (n+5)/2, ..., (n-1)/2, n, (n+1)/2)`:
/// `h(i) = (i + 1) / 2` for odd `i`, `h(i) = (n + 1 + i) / 2` for even `i`.
pub fn lambda_family(n: usize) -> Result<PetalPermutation> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenPetalCount(n));
    }
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let heights = (1..=n)
        .map(|i| {
            if i % 2 == 1 {
                i.div_ceil(2)
            } else {
                (n + 1 + i) / 2
            }
        })
        .collect();
    PetalPermutation::new(heights)
}

/// `((n - 1) / 2)^2 - 1`.
pub fn tb_upper_bound(n: usize) -> i64 {
    let m = (n as i64 - 1) / 2;
    m * m - 1
}

/// `((n - 1) / 2)^2`, the bound on `Σ σ`.
pub fn sigma_upper_bound(n: usize) -> i64 {
    let m = (n as i64 - 1) / 2;
    m * m
}

/// Adds one half twist to `petal`. The result has `k + 1` twists, so both
/// tb and rot drop by one.
pub fn stabilize(diag: &LagrangianPetalDiagram, petal: usize) -> Result<LagrangianPetalDiagram> {
    let n = diag.n();
    if petal == 0 || petal > n {
        return Err(Error::IndexOutOfRange { index: petal, n });
    }
    let mut twists = diag.twists.clone();
    twists[petal - 1] += 1;
    Ok(LagrangianPetalDiagram {
        perm: diag.perm.clone(),
        twists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(values: &[usize]) -> PetalPermutation {
        validate_permutation(values).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(perm(&[1, 4, 2, 5, 3]).n(), 5);
        assert_eq!(validate_permutation(&[1, 2]), Err(Error::EvenPetalCount(2)));
        assert!(matches!(
            validate_permutation(&[1, 3, 3]),
            Err(Error::NotBijection { .. })
        ));
        assert_eq!(validate_permutation(&[]), Err(Error::Empty));
        assert!(matches!(
            validate_permutation(&[0, 1, 2]),
            Err(Error::NotBijection { .. })
        ));
        assert_eq!(perm(&[1]).n(), 1);
    }

    #[test]
    fn parses_with_and_without_parens() {
        assert_eq!(
            "(1,4,2,5,3)".parse::<PetalPermutation>().unwrap(),
            perm(&[1, 4, 2, 5, 3])
        );
        assert_eq!(
            " 1, 3 ,2 ".parse::<PetalPermutation>().unwrap(),
            perm(&[1, 3, 2])
        );
        assert!(matches!(
            "1,x,2".parse::<PetalPermutation>(),
            Err(Error::Parse(_))
        ));
        assert_eq!(perm(&[1, 4, 2, 5, 3]).to_string(), "1,4,2,5,3");
    }

    #[test]
    fn sigma_table_cases() {
        let p = perm(&[1, 3, 2]);
        assert_eq!(sign_sigma(&p, 1, 2), Ok(Sign::Positive));
        assert_eq!(sign_sigma(&p, 1, 3), Ok(Sign::Negative));
        assert_eq!(sign_sigma(&p, 2, 3), Ok(Sign::Negative));
        assert_eq!(
            sign_sigma(&p, 2, 2),
            Err(Error::NotStrictlyOrdered { i: 2, j: 2 })
        );
        assert_eq!(
            sign_sigma(&p, 3, 2),
            Err(Error::NotStrictlyOrdered { i: 3, j: 2 })
        );
        assert_eq!(
            sign_sigma(&p, 1, 4),
            Err(Error::IndexOutOfRange { index: 4, n: 3 })
        );
    }

    #[test]
    fn canonical_twist_examples() {
        let d = canonical_twists(&perm(&[1, 3, 2]));
        assert_eq!(d.twists(), &[1, 0, 0]);
        assert_eq!(d.k(), 1);
        let d = canonical_twists(&perm(&[1, 4, 2, 5, 3]));
        assert_eq!(d.twists(), &[1, 0, 1, 0, 0]);
        assert_eq!(d.k(), 2);
        let d = canonical_twists(&perm(&[1]));
        assert_eq!(d.k(), 1);
        assert!(d.is_standard());
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(
            rotation_number(&canonical_twists(&perm(&[1, 4, 2, 5, 3]))),
            1
        );
        assert_eq!(rotation_number(&canonical_twists(&perm(&[1]))), 0);
        let d =
            LagrangianPetalDiagram::new(perm(&[1, 2, 3, 4, 5, 6, 7]), vec![1, 1, 1, 1, 0, 0, 0])
                .unwrap();
        assert_eq!(rotation_number(&d), 0);
    }

    #[test]
    fn tb_examples() {
        let b = thurston_bennequin(&canonical_twists(&perm(&[1, 3, 2])));
        assert_eq!((b.k, b.sigma_sum, b.tb), (1, -1, -2));
        let b = thurston_bennequin(&canonical_twists(&perm(&[1])));
        assert_eq!((b.k, b.sigma_sum, b.tb), (1, 0, -1));
        let b = thurston_bennequin(&canonical_twists(&perm(&[1, 4, 2, 5, 3])));
        assert_eq!((b.k, b.sigma_sum, b.tb), (2, -4, -6));
    }

    #[test]
    fn tb_by_pairwise_enumeration() {
        // Independent route: sum sign_sigma over explicit pairs.
        let p = perm(&[1, 4, 2, 5, 3]);
        let mut total = 0;
        for i in 1..=5 {
            for j in i + 1..=5 {
                total += sign_sigma(&p, i, j).unwrap().value();
            }
        }
        assert_eq!(total, sigma_sum(&p));
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(canonical_rotation(&perm(&[2, 1, 3])), perm(&[1, 3, 2]));
        assert_eq!(
            canonical_rotation(&perm(&[1, 4, 2, 5, 3])),
            perm(&[1, 4, 2, 5, 3])
        );
        assert_eq!(canonical_rotation(&perm(&[3, 1, 2])), perm(&[1, 2, 3]));
    }

    #[test]
    fn lambda_family_examples() {
        assert_eq!(lambda_family(3).unwrap(), perm(&[1, 3, 2]));
        assert_eq!(lambda_family(5).unwrap(), perm(&[1, 4, 2, 5, 3]));
        assert_eq!(lambda_family(7).unwrap(), perm(&[1, 5, 2, 6, 3, 7, 4]));
        assert_eq!(lambda_family(4), Err(Error::EvenPetalCount(4)));
        assert_eq!(lambda_family(1), Err(Error::TooSmall { n: 1, min: 3 }));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(tb_upper_bound(3), 0);
        assert_eq!(tb_upper_bound(5), 3);
        assert_eq!(tb_upper_bound(9), 15);
    }

    #[test]
    fn stabilization_examples() {
        let base = canonical_twists(&perm(&[1]));
        let s = stabilize(&base, 1).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(thurston_bennequin(&s).tb, -2);
        assert_eq!(rotation_number(&s), -1);
        assert!(!s.is_standard());

        let base = canonical_twists(&perm(&[1, 3, 2]));
        let s = stabilize(&base, 2).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(thurston_bennequin(&s).tb, -3);
        assert_eq!(rotation_number(&s), 0);

        let twice = stabilize(&s, 3).unwrap();
        assert_eq!(
            thurston_bennequin(&base).tb - thurston_bennequin(&twice).tb,
            2
        );
        assert_eq!(
            stabilize(&base, 4),
            Err(Error::IndexOutOfRange { index: 4, n: 3 })
        );
    }

    #[test]
    fn diagram_requires_a_twist() {
        assert_eq!(
            LagrangianPetalDiagram::new(perm(&[1, 3, 2]), vec![0, 0, 0]),
            Err(Error::NoHalfTwist)
        );
        assert!(matches!(
            LagrangianPetalDiagram::new(perm(&[1, 3, 2]), vec![1]),
            Err(Error::TwistLength { .. })
        ));
    }
}
