//! Ground truth for cycles: BFS girth, bounded cycle enumeration, linked sets.

use crate::error::{Error, Result};
use crate::sparse::SparseBinaryMatrix;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet, VecDeque};

/// Check nodes are 0..n_rows, bit nodes follow.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n_checks: usize,
    adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &SparseBinaryMatrix) -> Self {
        let r = h.n_rows();
        let mut adj: Vec<Vec<usize>> = h.rows().iter().map(|row| row.iter().map(|&j| r + j).collect()).collect();
        adj.extend(h.cols().iter().cloned());
        Self { n_checks: r, adj }
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn n_edges(&self) -> usize {
        self.adj[..self.n_checks].iter().map(Vec::len).sum()
    }

    /// Length of the shortest cycle seen by a BFS rooted at `root`, ignoring
    /// anything of length >= `cutoff`. The minimum over all roots is the girth.
    fn shortest_cycle_from(&self, root: usize, cutoff: usize) -> Option<usize> {
        let n = self.adj.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut best = cutoff;
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &self.adj[u] {
                if w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        (best < cutoff).then_some(best)
    }
}

/// Girth of the Tanner graph, or None when it has no cycle.
pub fn girth_bfs(h: &SparseBinaryMatrix) -> Option<usize> {
    let g = TannerGraph::new(h);
    // every cycle passes through a check node
    (0..g.n_checks())
        .into_par_iter()
        .filter_map(|v| g.shortest_cycle_from(v, usize::MAX))
        .min()
}

/// Matrix positions (row, col) of ones.
pub type EntrySet = Vec<(usize, usize)>;

/// Every simple cycle of length <= max_len, each as its sorted entry set.
pub fn enumerate_cycles_upto(h: &SparseBinaryMatrix, max_len: usize) -> Result<Vec<EntrySet>> {
    if !(4..=8).contains(&max_len) || max_len % 2 == 1 {
        return Err(Error::UnsupportedLength(max_len));
    }
    let half = max_len / 2;
    let per_root: Vec<Vec<EntrySet>> = (0..h.n_rows())
        .into_par_iter()
        .map(|r0| {
            let mut out = Vec::new();
            let mut rows = vec![r0];
            let mut cols: Vec<usize> = Vec::new();
            extend_path(h, half, &mut rows, &mut cols, &mut out);
            out
        })
        .collect();
    Ok(per_root.into_iter().flatten().collect())
}

// Path r0 c0 r1 c1 ... with every later row > r0; closes when the last column touches r0.
// Each cycle is produced once per direction; keep the direction whose first column is smaller.
fn extend_path(h: &SparseBinaryMatrix, half: usize, rows: &mut Vec<usize>, cols: &mut Vec<usize>, out: &mut Vec<EntrySet>) {
    let r = *rows.last().unwrap();
    let r0 = rows[0];
    for &c in h.row(r) {
        if cols.contains(&c) {
            continue;
        }
        cols.push(c);
        if rows.len() >= 2 && c > cols[0] && h.get(r0, c) {
            let mut e: EntrySet = Vec::with_capacity(2 * rows.len());
            for k in 0..rows.len() {
                e.push((rows[k], cols[k]));
                e.push((rows[(k + 1) % rows.len()], cols[k]));
            }
            e.sort_unstable();
            out.push(e);
        }
        if rows.len() < half {
            for &nr in h.col(c) {
                if nr > r0 && !rows.contains(&nr) {
                    rows.push(nr);
                    extend_path(h, half, rows, cols, out);
                    rows.pop();
                }
            }
        }
        cols.pop();
    }
}

/// Number of distinct simple cycles for each length up to max_len (zero counts omitted).
pub fn count_cycles_upto(h: &SparseBinaryMatrix, max_len: usize) -> Result<BTreeMap<usize, u64>> {
    let mut counts = BTreeMap::new();
    for c in enumerate_cycles_upto(h, max_len)? {
        *counts.entry(c.len()).or_insert(0) += 1;
    }
    Ok(counts)
}

fn check_entry_set(v: &[(usize, usize)]) -> Result<()> {
    if v.len() % 2 == 1 {
        return Err(Error::OddEntrySet(v.len()));
    }
    let distinct: HashSet<_> = v.iter().collect();
    if distinct.len() != v.len() {
        return Err(Error::Dimension("entry set has duplicate positions".into()));
    }
    Ok(())
}

fn occupies_half(v: impl Iterator<Item = (usize, usize)> + Clone, n: usize) -> bool {
    let rows: HashSet<usize> = v.clone().map(|p| p.0).collect();
    let cols: HashSet<usize> = v.map(|p| p.1).collect();
    2 * rows.len() == n && 2 * cols.len() == n
}

/// 2s entries spread over exactly s rows and s columns.
pub fn is_linked(v: &[(usize, usize)]) -> Result<bool> {
    check_entry_set(v)?;
    Ok(!v.is_empty() && occupies_half(v.iter().copied(), v.len()))
}

/// Linked with no linked proper subset of size at least 4.
pub fn is_2s_cycle(v: &[(usize, usize)]) -> Result<bool> {
    if !is_linked(v)? {
        return Ok(false);
    }
    let n = v.len();
    if n > 24 {
        return Err(Error::Dimension(format!("entry set of size {n} is too large for subset search")));
    }
    for mask in 1u32..(1 << n) - 1 {
        let k = mask.count_ones() as usize;
        if k < 4 || k % 2 == 1 {
            continue;
        }
        let sub = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]);
        if occupies_half(sub, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Even-rounded 4 log_b(r) + 4 with b = (c-1)(s-1) for a (c,s)-regular code with r checks.
pub fn girth_upper_bound(c: u64, s: u64, r: u64) -> Result<u64> {
    let b = c.saturating_sub(1) * s.saturating_sub(1);
    if b <= 1 {
        return Err(Error::DegenerateBranching(b));
    }
    if r == 0 {
        return Err(Error::InvalidParams("no check nodes".into()));
    }
    let x = 4.0 * (r as f64).ln() / (b as f64).ln() + 4.0;
    let fl = (x + 1e-9).floor() as u64;
    Ok(fl - fl % 2)
}
