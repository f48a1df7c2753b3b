//! Partitions, signatures, set partitions and the small combinatorial statistics built on
//! them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::exactnum::{int, rat, Rational};
use crate::{Error, Result};

/// Young diagram stored as weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    /// Validates monotonicity and trims trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(IntegerPartition { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parts sorted into decreasing order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts).expect("sorted")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        transpose_partition(self)
    }

    /// Diagram inclusion `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Multiplicity of each part size, `m[k]` for `k = 0..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `self ∪ 1^k`: append `k` parts equal to one.
    pub fn with_ones(&self, k: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, k));
        IntegerPartition::from_unsorted(parts)
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.weight());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + t.parts[j] - i - 1);
            }
        }
        out
    }

    /// Box contents `j − i` (0-based row `i`, column `j`), row by row.
    pub fn contents(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| j as i64 - i as i64))
            .collect()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// `"2,1"`, `"3"`, or an empty string / `"0"` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad partition part '{p}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerPartition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<IntegerPartition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if n == 0 {
            out.push(IntegerPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of weight at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<IntegerPartition> {
    (0..=n).flat_map(partitions_of).collect()
}

pub fn transpose_partition(mu: &IntegerPartition) -> IntegerPartition {
    let cols = mu.part(0);
    let parts = (1..=cols)
        .map(|j| mu.parts.iter().take_while(|&&p| p >= j).count())
        .collect();
    IntegerPartition { parts }
}

/// `Σ (j−1) μ_j`.
pub fn n_stat(mu: &IntegerPartition) -> usize {
    mu.parts.iter().enumerate().map(|(j, &p)| j * p).sum()
}

/// Dimension of the irreducible `S(N)` module `λ`: `N!/∏ hooks`.
pub fn hook_dimension(lambda: &IntegerPartition, n: usize) -> Result<BigUint> {
    if lambda.weight() != n {
        return Err(Error::Input(format!(
            "partition {lambda} has weight {}, expected {n}",
            lambda.weight()
        )));
    }
    Ok(standard_tableaux_count(lambda))
}

/// Number of standard Young tableaux of shape `λ` (hook length formula).
pub fn standard_tableaux_count(lambda: &IntegerPartition) -> BigUint {
    let n = lambda.weight();
    let fact = (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
    let hooks = lambda
        .hooks()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
    fact / hooks
}

/// Highest weight of an irreducible `U(N)` representation: `N` weakly decreasing integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    entries: Vec<i64>,
}

impl Signature {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("signature must have length N >= 1".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!("{entries:?} is not weakly decreasing")));
        }
        Ok(Signature { entries })
    }

    pub fn zero(n: usize) -> Self {
        Signature { entries: vec![0; n] }
    }

    /// Pads a partition with zeros to length `n`.
    pub fn from_partition(mu: &IntegerPartition, n: usize) -> Result<Self> {
        if mu.len() > n {
            return Err(Error::Input(format!("partition {mu} longer than N = {n}")));
        }
        Ok(Signature {
            entries: (0..n).map(|i| mu.part(i) as i64).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `λ⁺`: the nonnegative entries as a partition.
    pub fn positive_part(&self) -> IntegerPartition {
        IntegerPartition::new(
            self.entries
                .iter()
                .filter(|&&x| x > 0)
                .map(|&x| x as usize)
                .collect(),
        )
        .expect("decreasing")
    }

    /// `λ⁻`: negated negative entries, read from the end.
    pub fn negative_part(&self) -> IntegerPartition {
        IntegerPartition::new(
            self.entries
                .iter()
                .rev()
                .filter(|&&x| x < 0)
                .map(|&x| (-x) as usize)
                .collect(),
        )
        .expect("decreasing")
    }

    /// `Σ λ_i`.
    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.entries.iter().map(|&x| int(x)).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Modified Frobenius coordinates `a_i = λ_i − i + 1/2`, `b_i = λ'_i − i + 1/2` over the
/// diagonal of one Young diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl FrobeniusCoordinates {
    pub fn of_partition(lambda: &IntegerPartition) -> Self {
        let t = lambda.transpose();
        let rank = (0..lambda.len()).take_while(|&i| lambda.part(i) > i).count();
        let half = rat(1, 2);
        let coord = |len: usize, i: usize| int(len as i64) - int(i as i64 + 1) + &half;
        FrobeniusCoordinates {
            a: (0..rank).map(|i| coord(lambda.part(i), i)).collect(),
            b: (0..rank).map(|i| coord(t.part(i), i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `Σ (a_i + b_i)`, which equals the number of boxes.
    pub fn total(&self) -> Rational {
        self.a.iter().chain(&self.b).sum()
    }
}

/// Frobenius coordinates of the positive and negative parts of a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureFrobenius {
    pub plus: FrobeniusCoordinates,
    pub minus: FrobeniusCoordinates,
}

pub fn frobenius_coordinates(lambda: &Signature) -> SignatureFrobenius {
    SignatureFrobenius {
        plus: FrobeniusCoordinates::of_partition(&lambda.positive_part()),
        minus: FrobeniusCoordinates::of_partition(&lambda.negative_part()),
    }
}

/// Partition of `{1..m}` into ascending blocks, ordered by their minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// From a restricted-growth string `rgs[i]` = block of element `i+1`.
    fn from_rgs(rgs: &[usize]) -> Self {
        let nblocks = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn has_singleton(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }
}

pub const MAX_SET_PARTITION_SIZE: usize = 12;

/// Every partition of `{1..m}`, enumerated in lexicographic order of restricted-growth
/// strings.
pub fn enumerate_set_partitions(m: usize) -> Result<Vec<SetPartition>> {
    if !(1..=MAX_SET_PARTITION_SIZE).contains(&m) {
        return Err(Error::Bound(format!(
            "set partitions enumerated only for 1 <= m <= {MAX_SET_PARTITION_SIZE}, got {m}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    fn rec(i: usize, max: usize, rgs: &mut [usize], out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_rgs(rgs));
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    // element 1 always opens block 0
    if m == 1 {
        out.push(SetPartition::from_rgs(&rgs));
    } else {
        rec(1, 0, &mut rgs, &mut out);
    }
    Ok(out)
}

/// Every partition of `{1..m}` into pairs; empty for odd `m`.
pub fn enumerate_pair_partitions(m: usize) -> Result<Vec<SetPartition>> {
    if m == 0 {
        return Err(Error::Bound("pair partitions need m >= 1".into()));
    }
    if m % 2 == 1 {
        return Ok(Vec::new());
    }
    fn rec(rest: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(SetPartition {
                blocks: cur.clone(),
            });
            return;
        };
        for k in 0..tail.len() {
            let partner = tail[k];
            let remaining: Vec<usize> = tail
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &x)| x)
                .collect();
            cur.push(vec![first, partner]);
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    let elems: Vec<usize> = (1..=m).collect();
    let mut out = Vec::new();
    rec(&elems, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n`.
pub fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::default(); i + 1];
        for k in 1..=i {
            let stay = if k < i { &row[k] * BigUint::from(k) } else { BigUint::default() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}
