//! Abstract cycle configurations: weights vectors, count grids, canonical forms,
//! and their specialization to circulant blocks.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Cycle-point counts per block, sorted descending; sums to 2s.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightsVector(pub Vec<u32>);

impl WeightsVector {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn odd_parts(&self) -> usize {
        self.0.iter().filter(|&&t| t % 2 == 1).count()
    }
}

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// Partitions of 2s that do not have exactly two odd parts.
pub fn weights_vectors(s: u32) -> Vec<WeightsVector> {
    let mut all = Vec::new();
    partitions(2 * s, 2 * s, &mut Vec::new(), &mut all);
    all.into_iter().map(WeightsVector).filter(|w| w.odd_parts() != 2).collect()
}

/// Weights vectors that can fill an r x c configuration of a 2s-cycle.
pub fn feasible_for_type(r: u32, c: u32, s: u32) -> Vec<WeightsVector> {
    let (r, c) = (r.min(c), r.max(c));
    let min_len = (r + c - 1) as usize;
    let max_len = (r * c).min(2 * s) as usize;
    let cap = (2 * s).saturating_sub(2 * (c - 1));
    weights_vectors(s)
        .into_iter()
        .filter(|w| (min_len..=max_len).contains(&w.0.len()) && w.0[0] <= cap)
        .collect()
}

/// r x c grid of cycle-point counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleConfiguration {
    pub grid: Vec<Vec<u32>>,
}

impl CycleConfiguration {
    pub fn new(grid: Vec<Vec<u32>>) -> Self {
        Self { grid }
    }

    /// Parses "3 1; 1 3" (rows separated by ';').
    pub fn parse(text: &str) -> Self {
        Self::new(parse_grid(text, |t| t.parse().expect("count")))
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn half_length(&self) -> u32 {
        self.grid.iter().flatten().sum::<u32>() / 2
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.grid.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols()).map(|j| self.grid.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn weights_vector(&self) -> WeightsVector {
        let mut w: Vec<u32> = self.grid.iter().flatten().copied().filter(|&t| t > 0).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        WeightsVector(w)
    }

    /// Every line sum even and nonzero.
    pub fn has_even_lines(&self) -> bool {
        self.row_sums().iter().chain(self.col_sums().iter()).all(|&t| t > 0 && t % 2 == 0)
    }

    /// The support, as a bipartite graph on rows and columns, is connected.
    pub fn is_connected(&self) -> bool {
        let (r, c) = (self.rows(), self.cols());
        let mut seen_r = vec![false; r];
        let mut seen_c = vec![false; c];
        let mut stack = vec![0usize];
        seen_r[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..c {
                if self.grid[i][j] > 0 && !seen_c[j] {
                    seen_c[j] = true;
                    for (k, seen) in seen_r.iter_mut().enumerate() {
                        if self.grid[k][j] > 0 && !*seen {
                            *seen = true;
                            stack.push(k);
                        }
                    }
                }
            }
        }
        seen_r.iter().chain(seen_c.iter()).all(|&b| b)
    }

    pub fn transpose(&self) -> Self {
        Self::new(transpose(&self.grid))
    }

    /// Smallest grid under row/column permutations, and transposition when square.
    /// Wide orientation (rows <= cols) is always chosen.
    pub fn canonical(&self) -> Self {
        Self::new(canonical_grid(&self.grid))
    }
}

impl fmt::Display for CycleConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.grid.iter().map(|r| r.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "|{}|", rows.join("; "))
    }
}

fn parse_grid<T>(text: &str, cell: impl Fn(&str) -> T) -> Vec<Vec<T>> {
    text.split(';').map(|r| r.split_whitespace().map(&cell).collect()).collect()
}

fn transpose<T: Clone>(g: &[Vec<T>]) -> Vec<Vec<T>> {
    let c = g.first().map_or(0, Vec::len);
    (0..c).map(|j| g.iter().map(|r| r[j].clone()).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical_grid<T: Clone + Ord>(g: &[Vec<T>]) -> Vec<Vec<T>> {
    let r = g.len();
    let c = g.first().map_or(0, Vec::len);
    let mut candidates = Vec::new();
    if r <= c {
        candidates.push(g.to_vec());
    }
    if c <= r {
        candidates.push(transpose(g));
    }
    let mut best: Option<Vec<Vec<T>>> = None;
    for cand in candidates {
        let (rr, cc) = (cand.len(), cand.first().map_or(0, Vec::len));
        let col_perms = permutations(cc);
        for rp in permutations(rr) {
            for cp in &col_perms {
                let x: Vec<Vec<T>> = rp.iter().map(|&i| cp.iter().map(|&j| cand[i][j].clone()).collect()).collect();
                if best.as_ref().is_none_or(|b| x < *b) {
                    best = Some(x);
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn fill_grid(
    r: usize,
    c: usize,
    cell: usize,
    remaining: u32,
    cap: u32,
    prune: bool,
    grid: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let n = r * c;
    if cell == n {
        if remaining == 0 {
            out.push(grid.clone());
        }
        return;
    }
    let row_start = cell - cell % c;
    let row_so_far: u32 = grid[row_start..cell].iter().sum();
    let last_in_row = cell % c == c - 1;
    for t in 0..=remaining.min(cap) {
        if prune && last_in_row {
            let row_sum = row_so_far + t;
            if row_sum == 0 || row_sum % 2 == 1 {
                continue;
            }
        }
        grid[cell] = t;
        fill_grid(r, c, cell + 1, remaining - t, cap, prune, grid, out);
    }
    grid[cell] = 0;
}

/// Canonical configurations of an r x c type for a 2s-cycle. With `prune` off,
/// every grid summing to 2s is generated and the same filters are applied afterwards.
pub fn enumerate_type(r: usize, c: usize, s: u32, prune: bool) -> BTreeSet<CycleConfiguration> {
    let feasible: BTreeSet<WeightsVector> = feasible_for_type(r as u32, c as u32, s).into_iter().collect();
    let mut out = BTreeSet::new();
    if feasible.is_empty() {
        return out;
    }
    let cap = if prune { feasible.iter().map(|w| w.0[0]).max().unwrap() } else { 2 * s };
    let mut raw = Vec::new();
    fill_grid(r, c, 0, 2 * s, cap, prune, &mut vec![0; r * c], &mut raw);
    for flat in raw {
        let cfg = CycleConfiguration::new(flat.chunks(c).map(<[u32]>::to_vec).collect());
        if cfg.has_even_lines() && cfg.is_connected() && feasible.contains(&cfg.weights_vector()) {
            out.insert(cfg.canonical());
        }
    }
    out
}

/// The complete catalog of 2s-cycle configurations for s in {2, 3, 4}.
pub fn enumerate_configurations(s: u32) -> Result<BTreeSet<CycleConfiguration>> {
    if !(2..=4).contains(&s) {
        return Err(Error::UnsupportedHalfLength(s as usize));
    }
    let s_us = s as usize;
    let mut all = BTreeSet::new();
    for r in 1..=s_us {
        for c in r..=s_us {
            all.extend(enumerate_type(r, c, s, true));
        }
    }
    Ok(all)
}

/// Configurations for s = 5 restricted to type (4, 5).
pub fn enumerate_ten_cycle_4x5() -> BTreeSet<CycleConfiguration> {
    enumerate_type(4, 5, 5, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QcCell {
    /// No cycle point.
    O,
    /// Must be a weight-2 circulant.
    C(u32),
    /// Must be a weight-1 circulant.
    J(u32),
    /// Either weight works.
    Delta(u32),
}

impl QcCell {
    pub fn count(&self) -> u32 {
        match *self {
            QcCell::O => 0,
            QcCell::C(t) | QcCell::J(t) | QcCell::Delta(t) => t,
        }
    }

    fn parse(tok: &str) -> Self {
        let (head, tail) = tok.split_at(1);
        let t = || tail.parse().expect("count");
        match head {
            "O" | "0" => QcCell::O,
            "C" => QcCell::C(t()),
            "J" => QcCell::J(t()),
            "D" => QcCell::Delta(t()),
            _ => panic!("bad cell {tok}"),
        }
    }
}

impl fmt::Display for QcCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QcCell::O => write!(f, "O"),
            QcCell::C(t) => write!(f, "C-{t}"),
            QcCell::J(t) => write!(f, "J-{t}"),
            QcCell::Delta(t) => write!(f, "D-{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QcConfiguration {
    pub grid: Vec<Vec<QcCell>>,
}

impl QcConfiguration {
    /// Parses "C4 D2; O C2" with tokens O, C<n>, J<n>, D<n>.
    pub fn parse(text: &str) -> Self {
        Self { grid: parse_grid(text, QcCell::parse) }
    }

    pub fn counts(&self) -> CycleConfiguration {
        CycleConfiguration::new(self.grid.iter().map(|r| r.iter().map(QcCell::count).collect()).collect())
    }

    pub fn canonical(&self) -> Self {
        Self { grid: canonical_grid(&self.grid) }
    }
}

impl fmt::Display for QcConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.grid.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "|{}|", rows.join("; "))
    }
}

/// A weight-1 circulant holds at most one cycle point per row and per column,
/// so a cell can be weight-1 only if its count fits within half of each line sum.
fn weight_one_allowed(cfg: &CycleConfiguration, i: usize, j: usize) -> bool {
    let t = cfg.grid[i][j];
    2 * t <= cfg.row_sums()[i] && 2 * t <= cfg.col_sums()[j]
}

/// Every admissible assignment of weight-1 / weight-2 blocks to the nonzero cells.
pub fn qc_labelings(cfg: &CycleConfiguration) -> Vec<QcConfiguration> {
    let mut out = vec![Vec::<Vec<QcCell>>::new()];
    for (i, row) in cfg.grid.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            let mut rows_acc = vec![partial.clone()];
            for (j, &t) in row.iter().enumerate() {
                let opts: Vec<QcCell> = if t == 0 {
                    vec![QcCell::O]
                } else if weight_one_allowed(cfg, i, j) {
                    vec![QcCell::C(t), QcCell::J(t)]
                } else {
                    vec![QcCell::C(t)]
                };
                rows_acc = rows_acc
                    .into_iter()
                    .flat_map(|g| {
                        opts.iter().map(move |&o| {
                            let mut g = g.clone();
                            if j == 0 {
                                g.push(vec![o]);
                            } else {
                                g.last_mut().unwrap().push(o);
                            }
                            g
                        })
                    })
                    .collect();
            }
            next.extend(rows_acc);
        }
        out = next;
    }
    out.into_iter().map(|grid| QcConfiguration { grid }).collect()
}

/// Collapses the admissible labelings: a cell that admits both weights becomes Delta
/// (a weight-1 block can always be traded for a weight-2 one holding the same points).
pub fn qc_specialize(cfg: &CycleConfiguration) -> Vec<QcConfiguration> {
    let labelings = qc_labelings(cfg);
    let grid = cfg
        .grid
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &t)| {
                    if t == 0 {
                        return QcCell::O;
                    }
                    let has_j = labelings.iter().any(|l| l.grid[i][j] == QcCell::J(t));
                    let has_c = labelings.iter().any(|l| l.grid[i][j] == QcCell::C(t));
                    match (has_c, has_j) {
                        (true, true) => QcCell::Delta(t),
                        (false, true) => QcCell::J(t),
                        _ => QcCell::C(t),
                    }
                })
                .collect()
        })
        .collect();
    vec![QcConfiguration { grid }]
}

const LISTED_4: &[&str] = &["4", "2 2", "1 1; 1 1"];
const LISTED_6: &[&str] =
    &["6", "4 2", "2 2 2", "2 2; 0 2", "3 1; 1 1", "2 1 1; 0 1 1", "1 1 0; 1 0 1; 0 1 1"];
const LISTED_8: &[&str] = &[
    "8",
    "6 2",
    "4 4",
    "4 2 2",
    "2 2 2 2",
    "5 1; 1 1",
    "4 2; 2 0",
    "4 2; 0 2",
    "3 1; 3 1",
    "3 1; 1 3",
    "2 2; 2 2",
    "4 1 1; 0 1 1",
    "3 2 1; 1 0 1",
    "3 1 0; 1 1 2",
    "2 2 2; 2 0 0",
    "2 1 1; 2 1 1",
    "2 2 0; 2 0 2",
    "2 2 1 1; 0 0 1 1",
    "2 1 1 0; 0 1 1 2",
    "1 1 1 1; 1 1 1 1",
    "3 1 0; 1 0 1; 0 1 1",
    "2 1 1; 2 0 0; 0 1 1",
    "2 1 1; 1 1 0; 1 0 1",
    "2 0 0; 1 1 0; 1 1 2",
    "2 1 1 0; 0 1 0 1; 0 0 1 1",
    "1 1 1 1; 1 1 0 0; 0 0 1 1",
    "1 1 0 0; 1 0 1 0; 0 1 0 1; 0 0 1 1",
];
const LISTED_10_4X5: &[&str] =
    &["2 1 1 0 0; 0 1 0 1 0; 0 0 1 0 1; 0 0 0 1 1", "1 1 1 1 0; 1 0 0 0 1; 0 1 1 0 0; 0 0 0 1 1"];

const LISTED_QC_4: &[&str] = &["C4", "C2 C2", "D1 D1; D1 D1"];
const LISTED_QC_6: &[&str] = &[
    "C6",
    "C4 C2",
    "C2 C2 C2",
    "C2 D2; O C2",
    "C3 D1; D1 D1",
    "C2 D1 D1; O D1 D1",
    "D1 D1 O; D1 O D1; O D1 D1",
];
const LISTED_QC_8: &[&str] = &[
    "C8",
    "C6 C2",
    "C4 C4",
    "C4 C2 C2",
    "C2 C2 C2 C2",
    "C5 D1; D1 D1",
    "C4 D2; O C2",
    "C4 C2; C2 O",
    "C3 C3; D1 D1",
    "C3 D1; D1 C3",
    "D2 D2; D2 D2",
    "C4 D1 D1; O D1 D1",
    "C3 C2 D1; D1 O D1",
    "C3 O D1; D1 C2 D1",
    "D2 C2 C2; C2 O O",
    "D2 D1 D1; D2 D1 D1",
    "C2 D2 O; O D2 C2",
    "C2 C2 D1 D1; O O D1 D1",
    "C2 O D1 D1; O C2 D1 D1",
    "D1 D1 D1 D1; D1 D1 D1 D1",
    "C3 D1 O; D1 O D1; O D1 D1",
    "D2 D1 D1; C2 O O; O D1 D1",
    "D2 D1 D1; D1 D1 O; D1 O D1",
    "C2 O O; D1 D1 O; D1 D1 C2",
    "C2 D1 D1 O; O D1 O D1; O O D1 D1",
    "D1 D1 D1 D1; D1 D1 O O; O O D1 D1",
    "D1 D1 O O; D1 O D1 O; O D1 O D1; O O D1 D1",
];

/// The published catalog for 2s = 4, 6, 8 (and the (4,5) type of 2s = 10), in listing order.
pub fn listed_configurations(s: u32) -> Vec<CycleConfiguration> {
    let src = match s {
        2 => LISTED_4,
        3 => LISTED_6,
        4 => LISTED_8,
        5 => LISTED_10_4X5,
        _ => &[],
    };
    src.iter().map(|t| CycleConfiguration::parse(t)).collect()
}

/// The published block-level catalog for 2s = 4, 6, 8, in listing order.
pub fn listed_qc_configurations(s: u32) -> Vec<QcConfiguration> {
    let src = match s {
        2 => LISTED_QC_4,
        3 => LISTED_QC_6,
        4 => LISTED_QC_8,
        _ => &[],
    };
    src.iter().map(|t| QcConfiguration::parse(t)).collect()
}

/// 1-based listing position of the block-level configuration whose counts match `cfg`.
pub fn qc_listing_index(cfg: &CycleConfiguration) -> Option<usize> {
    let s = cfg.half_length();
    let key = cfg.canonical();
    listed_qc_configurations(s).iter().position(|q| q.counts().canonical() == key).map(|p| p + 1)
}

#[derive(Serialize)]
pub struct CatalogDump {
    pub half_length: u32,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Serialize)]
pub struct CatalogEntry {
    pub rows: usize,
    pub cols: usize,
    pub counts: Vec<Vec<u32>>,
    pub weights_vector: Vec<u32>,
    pub blocks: Vec<Vec<String>>,
}

pub fn catalog_dump(s: u32) -> Result<CatalogDump> {
    let cfgs = enumerate_configurations(s)?;
    let entries = cfgs
        .into_iter()
        .map(|c| {
            let q = qc_specialize(&c).remove(0);
            CatalogEntry {
                rows: c.rows(),
                cols: c.cols(),
                weights_vector: c.weights_vector().0,
                blocks: q.grid.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
                counts: c.grid,
            }
        })
        .collect();
    Ok(CatalogDump { half_length: s, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[u32]) -> WeightsVector {
        WeightsVector(v.to_vec())
    }

    #[test]
    fn weights_vectors_small() {
        assert_eq!(weights_vectors(2), vec![wv(&[4]), wv(&[2, 2]), wv(&[1, 1, 1, 1])]);
        let six: BTreeSet<_> = weights_vectors(3).into_iter().collect();
        let expect: BTreeSet<_> = [&[6][..], &[4, 2], &[3, 1, 1, 1], &[2, 2, 2], &[2, 1, 1, 1, 1], &[1; 6]]
            .iter()
            .map(|v| wv(v))
            .collect();
        assert_eq!(six, expect);
    }

    #[test]
    fn feasibility_examples() {
        let f = feasible_for_type(4, 5, 5);
        assert_eq!(f, vec![wv(&[2, 2, 1, 1, 1, 1, 1, 1]), wv(&[2, 1, 1, 1, 1, 1, 1, 1, 1]), wv(&[1; 10])]);
        assert_eq!(feasible_for_type(1, 1, 2), vec![wv(&[4])]);
        assert_eq!(feasible_for_type(2, 2, 2), vec![wv(&[1, 1, 1, 1])]);
    }

    #[test]
    fn canonical_ignores_permutation_and_transpose() {
        let a = CycleConfiguration::parse("3 1 0; 1 1 2");
        let b = CycleConfiguration::parse("1 3; 2 0; 1 1");
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn isolation_rejects_block_diagonal() {
        assert!(!CycleConfiguration::parse("2 0; 0 2").is_connected());
        assert!(CycleConfiguration::parse("2 2; 0 2").is_connected());
    }

    #[test]
    fn specialization_examples() {
        let q = |t: &str| qc_specialize(&CycleConfiguration::parse(t)).remove(0);
        assert_eq!(q("4"), QcConfiguration::parse("C4"));
        assert_eq!(q("2 2"), QcConfiguration::parse("C2 C2"));
        assert_eq!(q("1 1; 1 1"), QcConfiguration::parse("D1 D1; D1 D1"));
        assert_eq!(qc_labelings(&CycleConfiguration::parse("1 1; 1 1")).len(), 16);
        assert_eq!(qc_labelings(&CycleConfiguration::parse("4")).len(), 1);
    }
}
