//! Young diagrams and Maya diagrams.
//!
//! Partitions are stored row-major in English notation: `rows[0]` is the
//! length of the top row. Boxes are addressed by 1-based `(row, col)` pairs.
//! A [`ChargedPartition`] is the same data as a semi-infinite monomial
//! `i_1 > i_2 > ...` with `i_k = λ_k + c − k + 1`; the two views are used
//! interchangeably throughout the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("rows must be positive and weakly decreasing, got {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("cannot parse {0:?} as a partition literal like [3,1,1]")]
    BadLiteral(String),
    #[error("cannot parse {0:?} as a charged partition literal like 0:[2,1]")]
    BadChargedLiteral(String),
    #[error("index sequence must be strictly decreasing, got {0:?}")]
    NotDecreasing(Vec<i64>),
}

/// A box `(row, col)` of a Young diagram, both 1-based.
///
/// Membership in a particular diagram is a separate question; see
/// [`Partition::contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }

    /// Content `j − i` of the box.
    pub fn residue(self) -> i64 {
        i64::from(self.col) - i64::from(self.row)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// An integer partition, i.e. a Young diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    rows: SmallVec<[u32; 8]>,
    size: u32,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds a partition, rejecting zero or increasing rows.
    pub fn new(rows: impl Into<Vec<u32>>) -> Result<Self, PartitionError> {
        let rows: Vec<u32> = rows.into();
        let ok = rows.iter().all(|&r| r >= 1) && rows.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(PartitionError::NotAPartition(rows));
        }
        Ok(Self::from_valid(rows.into_iter().collect()))
    }

    /// Strips trailing zero rows; the caller guarantees monotonicity.
    fn from_trimmed(mut rows: SmallVec<[u32; 8]>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Self::from_valid(rows)
    }

    fn from_valid(rows: SmallVec<[u32; 8]>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(rows.iter().all(|&r| r >= 1));
        let size = rows.iter().sum();
        Partition { rows, size }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of boxes.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// `λ_i` for 1-based `i`, zero past the last row.
    pub fn row(&self, i: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        self.rows.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// Column length `λ′_j`; zero for an empty column.
    pub fn col(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.rows.iter().take_while(|&&r| r >= j).count() as u32
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(1);
        Self::from_valid((1..=width).map(|j| self.col(j)).collect())
    }

    pub fn contains(&self, b: Cell) -> bool {
        b.row >= 1 && b.col >= 1 && self.row(b.row) >= b.col
    }

    /// All boxes, row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    /// Ordinary hook length of a box (meaningful for boxes of the diagram).
    pub fn hook(&self, b: Cell) -> i64 {
        relative_hook(self, self, b)
    }

    /// Boxes whose removal leaves a partition.
    pub fn removable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (idx, &len) in self.rows.iter().enumerate() {
            let next = self.rows.get(idx + 1).copied().unwrap_or(0);
            if len > next {
                out.push(Cell::new(idx as u32 + 1, len));
            }
        }
        out
    }

    /// Boxes outside the diagram whose addition yields a partition.
    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.len() as u32 + 1 {
            let len = self.row(i);
            if i == 1 || self.row(i - 1) > len {
                out.push(Cell::new(i, len + 1));
            }
        }
        out
    }

    /// The diagram with one box added at the end of row `i` (1-based).
    /// Returns `None` if the result would not be a partition.
    pub fn with_box_in_row(&self, i: u32) -> Option<Partition> {
        let i = i as usize;
        if i == 0 || i > self.len() + 1 {
            return None;
        }
        let mut rows = self.rows.clone();
        if i == rows.len() + 1 {
            rows.push(0);
        }
        rows[i - 1] += 1;
        if i >= 2 && rows[i - 2] < rows[i - 1] {
            return None;
        }
        Some(Self::from_valid(rows))
    }

    /// The diagram with the last box of row `i` removed, if that is a corner.
    pub fn without_box_in_row(&self, i: u32) -> Option<Partition> {
        let i = i as usize;
        if i == 0 || i > self.len() {
            return None;
        }
        if self.rows.get(i).copied().unwrap_or(0) == self.rows[i - 1] {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i - 1] -= 1;
        Some(Self::from_trimmed(rows))
    }

    /// Multiplicity of the part `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.rows.iter().filter(|&&r| r == k).count()
    }

    /// Builds a partition from parts in any order.
    pub fn from_parts(parts: impl IntoIterator<Item = u32>) -> Partition {
        let mut rows: SmallVec<[u32; 8]> = parts.into_iter().filter(|&p| p > 0).collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_valid(rows)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::BadLiteral(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let rows = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(rows)
    }
}

/// Arm length `λ_i − j`; may be negative for boxes outside `λ`.
pub fn arm(lambda: &Partition, b: Cell) -> i64 {
    i64::from(lambda.row(b.row)) - i64::from(b.col)
}

/// Leg length `μ′_j − i`, with `μ′_j = 0` for an empty column.
pub fn leg(mu: &Partition, b: Cell) -> i64 {
    i64::from(mu.col(b.col)) - i64::from(b.row)
}

/// Relative hook length `a_λ(b) + l_μ(b) + 1`.
pub fn relative_hook(lambda: &Partition, mu: &Partition, b: Cell) -> i64 {
    arm(lambda, b) + leg(mu, b) + 1
}

/// Content `j − i` of a box.
pub fn residue(b: Cell) -> i64 {
    b.residue()
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
///
/// Results are cached; the returned slice is shared.
pub fn partitions_of(n: u32) -> Arc<[Partition]> {
    static CACHE: OnceLock<RwLock<Vec<Arc<[Partition]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(hit) = cache.read().unwrap().get(n as usize) {
        return hit.clone();
    }
    let mut table = cache.write().unwrap();
    while table.len() <= n as usize {
        let m = table.len() as u32;
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        push_partitions(m, m, &mut prefix, &mut out);
        table.push(out.into());
    }
    table[n as usize].clone()
}

fn push_partitions(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::from_valid(prefix.iter().copied().collect()));
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        prefix.push(part);
        push_partitions(rest - part, part, prefix, out);
        prefix.pop();
    }
}

/// A partition together with a charge: a semi-infinite monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChargedPartition {
    pub charge: i64,
    pub shape: Partition,
}

impl ChargedPartition {
    pub fn new(charge: i64, shape: Partition) -> Self {
        ChargedPartition { charge, shape }
    }

    /// The charge-`c` vacuum `c ∧ (c−1) ∧ ...`.
    pub fn vacuum(charge: i64) -> Self {
        ChargedPartition { charge, shape: Partition::empty() }
    }

    /// Box count of the shape.
    pub fn energy(&self) -> u32 {
        self.shape.size()
    }

    /// `i_k` for 1-based `k`.
    pub fn index_at(&self, k: usize) -> i64 {
        i64::from(self.shape.row(k as u32)) + self.charge - k as i64 + 1
    }

    /// The first `n` monomial indices, strictly decreasing.
    pub fn monomial_indices(&self, n: usize) -> Vec<i64> {
        (1..=n).map(|k| self.index_at(k)).collect()
    }

    /// Largest occupied index `i_1 = c + λ_1`.
    pub fn top_index(&self) -> i64 {
        self.index_at(1)
    }

    /// Every index `≤ c − len(λ)` is occupied; this returns that bound.
    pub fn sea_level(&self) -> i64 {
        self.charge - self.shape.len() as i64
    }

    /// Inverse of [`monomial_indices`](Self::monomial_indices). The sequence
    /// must extend past the last row, i.e. its final entry is `c − n + 1`.
    pub fn from_indices(indices: &[i64]) -> Result<Self, PartitionError> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(PartitionError::NotDecreasing(indices.to_vec()));
        }
        let n = indices.len() as i64;
        let charge = indices[indices.len() - 1] + n - 1;
        let rows = indices
            .iter()
            .enumerate()
            .map(|(k, &i)| (i - charge + k as i64) as u32)
            .collect();
        Ok(ChargedPartition { charge, shape: Partition::from_trimmed(rows) })
    }

    /// Position `k` (1-based) with `i_k = i`, if `i` is occupied.
    pub fn index_position(&self, i: i64) -> Option<usize> {
        let len = self.shape.len();
        if i <= self.sea_level() {
            return Some((self.charge - i + 1) as usize);
        }
        // The first `len` indices are strictly decreasing: binary search.
        let rows = self.shape.rows();
        let (mut lo, mut hi) = (0usize, len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let at = i64::from(rows[mid]) + self.charge - mid as i64;
            match at.cmp(&i) {
                std::cmp::Ordering::Equal => return Some(mid + 1),
                std::cmp::Ordering::Greater => lo = mid + 1,
                std::cmp::Ordering::Less => hi = mid,
            }
        }
        None
    }

    pub fn contains_index(&self, i: i64) -> bool {
        self.index_position(i).is_some()
    }

    /// Inserts the index `i`. Returns the number of existing indices larger
    /// than `i` together with the new monomial, or `None` if `i` is occupied.
    pub fn insert_index(&self, i: i64) -> Option<(usize, ChargedPartition)> {
        if i <= self.sea_level() {
            return None;
        }
        let rows = self.shape.rows();
        let c = self.charge;
        let mut k = 0usize;
        for (m, &r) in rows.iter().enumerate() {
            let at = i64::from(r) + c - m as i64;
            if at == i {
                return None;
            }
            if at < i {
                break;
            }
            k += 1;
        }
        let mut new_rows: SmallVec<[u32; 8]> = SmallVec::with_capacity(rows.len() + 1);
        new_rows.extend(rows[..k].iter().map(|&r| r - 1));
        new_rows.push((i - c - 1 + k as i64) as u32);
        new_rows.extend_from_slice(&rows[k..]);
        Some((k, ChargedPartition { charge: c + 1, shape: Partition::from_trimmed(new_rows) }))
    }

    /// Removes the index `i`. Returns its 1-based position together with the
    /// new monomial, or `None` if `i` is not occupied.
    pub fn remove_index(&self, i: i64) -> Option<(usize, ChargedPartition)> {
        let k = self.index_position(i)?;
        let rows = self.shape.rows();
        let mut new_rows: SmallVec<[u32; 8]> = SmallVec::with_capacity(k.max(rows.len()));
        if k <= rows.len() {
            new_rows.extend(rows[..k - 1].iter().map(|&r| r + 1));
            new_rows.extend_from_slice(&rows[k..]);
        } else {
            new_rows.extend(rows.iter().map(|&r| r + 1));
            new_rows.extend(std::iter::repeat(1).take(k - 1 - rows.len()));
        }
        Some((k, ChargedPartition { charge: self.charge - 1, shape: Partition::from_trimmed(new_rows) }))
    }

    /// Residue class of a box of this diagram modulo `r`, shifted by the
    /// charge: the class `k` with `j − i ≡ k − c (mod r)`.
    pub fn residue_class(&self, b: Cell, r: u32) -> u32 {
        (b.residue() + self.charge).rem_euclid(i64::from(r)) as u32
    }

    /// Dimension vector: entry `k` counts boxes with `j − i ≡ k − c (mod r)`.
    pub fn residue_counts(&self, r: u32) -> Vec<u32> {
        assert!(r >= 1, "modulus must be positive");
        let mut v = vec![0; r as usize];
        for b in self.shape.cells() {
            v[self.residue_class(b, r) as usize] += 1;
        }
        v
    }

    /// Addable and removable boxes of residue class `k` modulo `r`.
    pub fn addable_removable(&self, r: u32, k: u32) -> (Vec<Cell>, Vec<Cell>) {
        let keep = |b: &Cell| self.residue_class(*b, r) == k;
        let addable = self.shape.addable_cells().into_iter().filter(keep).collect();
        let removable = self.shape.removable_cells().into_iter().filter(keep).collect();
        (addable, removable)
    }
}

impl fmt::Debug for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.charge, self.shape)
    }
}

impl FromStr for ChargedPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::BadChargedLiteral(s.to_string());
        let (c, shape) = s.trim().split_once(':').ok_or_else(bad)?;
        let charge = c.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(ChargedPartition { charge, shape: shape.parse()? })
    }
}

/// Shorthand used in tests and examples: `part(&[2, 1])`.
///
/// # Panics
/// If `rows` is not a partition.
pub fn part(rows: &[u32]) -> Partition {
    Partition::new(rows.to_vec()).expect("not a partition")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(s: &str) -> ChargedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn arm_examples() {
        assert_eq!(arm(&part(&[1]), Cell::new(1, 1)), 0);
        assert_eq!(arm(&part(&[2]), Cell::new(1, 1)), 1);
        assert_eq!(arm(&part(&[]), Cell::new(1, 1)), -1);
    }

    #[test]
    fn leg_examples() {
        assert_eq!(leg(&part(&[1, 1]), Cell::new(1, 1)), 1);
        assert_eq!(leg(&part(&[]), Cell::new(1, 1)), -1);
        assert_eq!(leg(&part(&[1]), Cell::new(1, 1)), 0);
    }

    #[test]
    fn relative_hook_examples() {
        assert_eq!(relative_hook(&part(&[1]), &part(&[1]), Cell::new(1, 1)), 1);
        assert_eq!(relative_hook(&part(&[2]), &part(&[]), Cell::new(1, 2)), 0);
        assert_eq!(relative_hook(&part(&[2]), &part(&[1, 1]), Cell::new(1, 1)), 3);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(Cell::new(1, 1)), 0);
        assert_eq!(residue(Cell::new(3, 2)), -1);
        assert_eq!(residue(Cell::new(1, 4)), 3);
    }

    #[test]
    fn residue_count_examples() {
        assert_eq!(cp("0:[]").residue_counts(3), vec![0, 0, 0]);
        assert_eq!(cp("0:[2,1]").residue_counts(2), vec![1, 2]);
        assert_eq!(cp("1:[1]").residue_counts(2), vec![0, 1]);
    }

    #[test]
    fn addable_removable_examples() {
        let cells = |v: &[(u32, u32)]| v.iter().map(|&(i, j)| Cell::new(i, j)).collect::<Vec<_>>();
        assert_eq!(cp("0:[]").addable_removable(2, 0), (cells(&[(1, 1)]), vec![]));
        assert_eq!(cp("0:[1]").addable_removable(2, 1), (cells(&[(1, 2), (2, 1)]), vec![]));
        assert_eq!(
            cp("0:[2,1]").addable_removable(1, 0),
            (cells(&[(1, 3), (2, 2), (3, 1)]), cells(&[(1, 2), (2, 1)]))
        );
    }

    #[test]
    fn monomial_index_examples() {
        assert_eq!(cp("0:[]").monomial_indices(3), vec![0, -1, -2]);
        assert_eq!(cp("1:[1]").monomial_indices(2), vec![2, 0]);
        assert_eq!(cp("-1:[]").monomial_indices(2), vec![-1, -2]);
    }

    #[test]
    fn membership_examples() {
        assert_eq!(cp("0:[]").index_position(0), Some(1));
        assert_eq!(cp("0:[]").index_position(1), None);
        assert_eq!(cp("1:[1]").index_position(1), None);
        assert_eq!(cp("1:[1]").index_position(0), Some(2));
        assert_eq!(cp("1:[1]").index_position(-3), Some(5));
    }

    #[test]
    fn insert_and_remove_match_the_index_picture() {
        // ψ*(−1) on the vacuum leaves 0 ∧ −2 ∧ −3 ∧ ... = (−1:[1]).
        assert_eq!(cp("0:[]").remove_index(-1), Some((2, cp("-1:[1]"))));
        assert_eq!(cp("0:[]").insert_index(1), Some((0, cp("1:[]"))));
        assert_eq!(cp("0:[]").insert_index(0), None);
        let before = cp("0:[2,1]"); // indices 2, 0, -2, -3
        let (k, after) = before.insert_index(-1).unwrap();
        assert_eq!(k, 2);
        assert_eq!(after.monomial_indices(5), vec![2, 0, -1, -2, -3]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_of(3).to_vec(), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
    }

    #[test]
    fn literals_round_trip() {
        for s in ["[]", "[3,1,1]", "[5]"] {
            assert_eq!(s.parse::<Partition>().unwrap().to_string(), s);
        }
        assert_eq!(" [ 2, 1 ] ".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("2,1".parse::<Partition>().is_err());
        assert_eq!(cp("-3:[2,2]").to_string(), "-3:[2,2]");
    }

    #[test]
    fn conjugate_is_an_involution_on_small_partitions() {
        for n in 0..=8 {
            for p in partitions_of(n).iter() {
                assert_eq!(p.conjugate().conjugate(), *p);
                assert_eq!(p.conjugate().size(), n);
            }
        }
    }

    #[test]
    fn corner_counts_match_distinct_lengths() {
        use std::collections::BTreeSet;
        for n in 0..=12 {
            for p in partitions_of(n).iter() {
                let distinct_rows: BTreeSet<_> = p.rows().iter().collect();
                let distinct_cols: BTreeSet<_> = p.conjugate().rows().to_vec().into_iter().collect();
                assert_eq!(p.removable_cells().len(), distinct_rows.len());
                assert_eq!(p.addable_cells().len(), distinct_cols.len() + 1);
                for r in 1..=4 {
                    let c = ChargedPartition::new(0, p.clone());
                    let (mut adds, mut rems) = (0, 0);
                    for k in 0..r {
                        let (a, rm) = c.addable_removable(r, k);
                        assert!(a.iter().all(|b| !rm.contains(b)));
                        adds += a.len();
                        rems += rm.len();
                    }
                    assert_eq!((adds, rems), (p.addable_cells().len(), p.removable_cells().len()));
                }
            }
        }
    }

    #[test]
    fn hooks_are_positive_inside_the_diagram() {
        for n in 0..=9 {
            for p in partitions_of(n).iter() {
                assert!(p.cells().all(|b| p.hook(b) >= 1));
            }
        }
    }
}
