//! Rate-1/2 (3,6)-regular codes: two alpha x alpha blocks, weight-2 circulants on the
//! main diagonals and identity diagonals beside them.

use super::{check_polys, eqm, exps, is_fraction, pm, sep, sum_hits, Failures};
use crate::block::BlockMatrix;
use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BresnanParams {
    m: u32,
    p1: Vec<CirculantSpec>,
    p2: Vec<CirculantSpec>,
}

impl BresnanParams {
    pub fn new(m: u32, p1: Vec<CirculantSpec>, p2: Vec<CirculantSpec>) -> Result<Self> {
        let alpha = p1.len();
        if alpha < 4 || m < 4 {
            return Err(Error::InvalidParams(format!("need alpha >= 4 and m >= 4, got alpha={alpha}, m={m}")));
        }
        check_polys(m, "first block", &p1, alpha)?;
        check_polys(m, "second block", &p2, alpha)?;
        Ok(Self { m, p1, p2 })
    }

    /// From exponent pairs (a, b) per polynomial.
    pub fn from_exponents(m: u32, p1: &[(i64, i64)], p2: &[(i64, i64)]) -> Result<Self> {
        let conv = |v: &[(i64, i64)]| -> Result<Vec<CirculantSpec>> {
            v.iter().map(|&(a, b)| CirculantSpec::weight_two(m, a, b)).collect()
        };
        Self::new(m, conv(p1)?, conv(p2)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> usize {
        self.p1.len()
    }

    pub fn p1(&self) -> &[CirculantSpec] {
        &self.p1
    }

    pub fn p2(&self) -> &[CirculantSpec] {
        &self.p2
    }

    /// Replaces one randomly chosen polynomial.
    pub fn mutate<R: Rng>(&mut self, rng: &mut R) {
        let i = rng.random_range(0..self.alpha());
        let q = super::random_weight_two(rng, self.m);
        if rng.random_bool(0.5) { self.p1[i] = q } else { self.p2[i] = q }
    }

    /// Rotates the index i by k positions; solutions map to solutions.
    pub fn rotated(&self, k: usize) -> Self {
        let a = self.alpha();
        let rot = |v: &[CirculantSpec]| (0..a).map(|i| v[(i + k) % a]).collect();
        Self { m: self.m, p1: rot(&self.p1), p2: rot(&self.p2) }
    }
}

/// Row i: first block has the weight-2 circulant at column i and an identity at
/// column i-1; second block has it at column i and an identity at column i+1.
pub fn build_bresnan(p: &BresnanParams) -> BlockMatrix {
    let (m, a) = (p.m, p.alpha());
    let z = CirculantSpec::zero(m).unwrap();
    let id = CirculantSpec::identity(m).unwrap();
    let mut grid = vec![vec![z; 2 * a]; a];
    for (i, row) in grid.iter_mut().enumerate() {
        row[i] = p.p1[i];
        row[(i + a - 1) % a] = id;
        row[a + i] = p.p2[i];
        row[a + (i + 1) % a] = id;
    }
    BlockMatrix::assemble(grid, a, 2, 1).unwrap().with_family("bresnan")
}

/// Conditions on the two polynomials of one block row.
pub(crate) fn row_pair_ok(m: u32, q1: &CirculantSpec, q2: &CirculantSpec) -> bool {
    let (s1, s2) = (sep(q1), sep(q2));
    let small = |s| is_fraction(m, s, 2) || is_fraction(m, s, 3);
    !(small(s1) || small(s2) || s1 == s2 || pm(&[2 * s1]).iter().any(|&t| eqm(m, s2, t))
        || pm(&[2 * s2]).iter().any(|&t| eqm(m, s1, t)))
}

/// Conditions between block row i and row j = i+1.
pub(crate) fn adjacent_ok(m: u32, (a1, a2): (&CirculantSpec, &CirculantSpec), (b1, b2): (&CirculantSpec, &CirculantSpec)) -> bool {
    let (s1i, s2i, s1j, s2j) = (sep(a1), sep(a2), sep(b1), sep(b2));
    if s1i == s1j || s2i == s2j || s1i == s2j {
        return false;
    }
    let mut targets = vec![0];
    targets.extend(pm(&[s1i, s2i, s1j, s2j]));
    !sum_hits(m, &[(1, exps(a1)), (1, exps(b2))], &targets)
}

/// Labels of every violated condition; empty iff the code has girth at least 8.
pub fn bresnan_violations(p: &BresnanParams) -> Vec<String> {
    let (m, a) = (p.m, p.alpha());
    let mut f = Failures::default();
    for i in 0..a {
        for (c, q) in [(1, &p.p1[i]), (2, &p.p2[i])] {
            let s = sep(q);
            f.fail_if(is_fraction(m, s, 2) || is_fraction(m, s, 3), || format!("1: s(p{c}[{i}]) = {s}"));
        }
        let (s1, s2) = (sep(&p.p1[i]), sep(&p.p2[i]));
        f.fail_if(s1 == s2, || format!("2: equal separations in row {i}"));
        f.fail_if(pm(&[2 * s1]).iter().any(|&t| eqm(m, s2, t)), || format!("2: s(p2[{i}]) = +-2 s(p1[{i}])"));
        f.fail_if(pm(&[2 * s2]).iter().any(|&t| eqm(m, s1, t)), || format!("2: s(p1[{i}]) = +-2 s(p2[{i}])"));
        let j = (i + 1) % a;
        let (s1j, s2j) = (sep(&p.p1[j]), sep(&p.p2[j]));
        f.fail_if(s1 == s1j, || format!("3: s(p1[{i}]) = s(p1[{j}])"));
        f.fail_if(s2 == s2j, || format!("3: s(p2[{i}]) = s(p2[{j}])"));
        f.fail_if(s1 == s2j, || format!("3: s(p1[{i}]) = s(p2[{j}])"));
        let parts = [(1, exps(&p.p1[i])), (1, exps(&p.p2[j]))];
        f.fail_if(sum_hits(m, &parts, &[0]), || format!("3: e(p1[{i}]) + e(p2[{j}]) = 0"));
        f.fail_if(sum_hits(m, &parts, &pm(&[s1, s2, s1j, s2j])), || {
            format!("3: e(p1[{i}]) + e(p2[{j}]) = +-separation")
        });
    }
    f.0
}

/// True iff the built code has girth at least 8.
pub fn bresnan_check(p: &BresnanParams) -> bool {
    let (m, a) = (p.m, p.alpha());
    (0..a).all(|i| row_pair_ok(m, &p.p1[i], &p.p2[i]))
        && (0..a).all(|i| {
            let j = (i + 1) % a;
            adjacent_ok(m, (&p.p1[i], &p.p2[i]), (&p.p1[j], &p.p2[j]))
        })
}

/// Solution counts for given (m, alpha).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BresnanCount {
    pub m: u32,
    pub alpha: usize,
    /// Tuples of 2*alpha weight-2 polynomials (each an unordered exponent pair).
    pub tuples: u128,
    /// Classes under the shifts of block rows and columns that keep the identities fixed;
    /// every class has exactly m^(alpha-1) members.
    pub shift_classes: u128,
}

/// A polynomial written as a first exponent a and a difference d = b - a in 1..m.
/// The conditions between rows i and i+1 depend only on both rows' differences and on
/// x = a(p1[i]) + a(p2[i+1]); this gives a transfer matrix over difference pairs.
struct DiffTransfer {
    m: u32,
    states: Vec<(u32, u32)>,
    /// allowed[u][v]: values of x admissible between state u (row i) and v (row i+1).
    allowed: Vec<Vec<Vec<u32>>>,
}

impl DiffTransfer {
    fn new(m: u32) -> Self {
        let mi = m as i64;
        let s = |d: u32| (d as i64).min(mi - d as i64);
        let frac = |x: i64, k: i64| x * k == mi;
        let cm = |a: i64, b: i64| (a - b).rem_euclid(mi) == 0;
        let mut states = Vec::new();
        for d1 in 1..m {
            for d2 in 1..m {
                let (s1, s2) = (s(d1), s(d2));
                let bad = frac(s1, 2) || frac(s1, 3) || frac(s2, 2) || frac(s2, 3) || s1 == s2
                    || cm(s2, 2 * s1) || cm(s2, -2 * s1) || cm(s1, 2 * s2) || cm(s1, -2 * s2);
                if !bad {
                    states.push((d1, d2));
                }
            }
        }
        let allowed = states
            .iter()
            .map(|&(d1i, d2i)| {
                states
                    .iter()
                    .map(|&(d1j, d2j)| {
                        let (s1i, s2i, s1j, s2j) = (s(d1i), s(d2i), s(d1j), s(d2j));
                        if s1i == s1j || s2i == s2j || s1i == s2j {
                            return Vec::new();
                        }
                        let forb: Vec<i64> = [0, s1i, -s1i, s2i, -s2i, s1j, -s1j, s2j, -s2j].to_vec();
                        let offs = [0, d1i as i64, d2j as i64, (d1i + d2j) as i64];
                        (0..m)
                            .filter(|&x| {
                                offs.iter().all(|&o| forb.iter().all(|&f| !cm(x as i64 + o, f)))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { m, states, allowed }
    }

    fn weight_matrix(&self) -> Vec<Vec<u128>> {
        let m = self.m as u128;
        self.allowed.iter().map(|r| r.iter().map(|x| m * x.len() as u128).collect()).collect()
    }
}

fn matmul(a: &[Vec<u128>], b: &[Vec<u128>]) -> Result<Vec<Vec<u128>>> {
    let n = a.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u128; n];
            for (k, &x) in a[i].iter().enumerate() {
                if x != 0 {
                    for (r, &y) in row.iter_mut().zip(&b[k]) {
                        *r = x.checked_mul(y).and_then(|p| r.checked_add(p)).ok_or_else(overflow)?;
                    }
                }
            }
            Ok(row)
        })
        .collect()
}

fn overflow() -> Error {
    Error::InvalidParams("solution count exceeds 128 bits".into())
}

/// Largest m handled by the transfer matrix (about m^2 states).
pub const TRANSFER_MAX_M: u32 = 32;

fn transfer(m: u32, alpha: usize) -> Result<DiffTransfer> {
    if alpha < 4 || !(4..=TRANSFER_MAX_M).contains(&m) {
        return Err(Error::InvalidParams(format!(
            "need alpha >= 4 and 4 <= m <= {TRANSFER_MAX_M}, got alpha={alpha}, m={m}"
        )));
    }
    Ok(DiffTransfer::new(m))
}

fn identity(n: usize) -> Vec<Vec<u128>> {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

/// Powers W^0 ..= W^k.
fn powers(w: &[Vec<u128>], k: usize) -> Result<Vec<Vec<Vec<u128>>>> {
    let mut out = vec![identity(w.len())];
    for _ in 0..k {
        let next = matmul(out.last().unwrap(), w)?;
        out.push(next);
    }
    Ok(out)
}

/// Exact number of parameter tuples accepted by `bresnan_check`.
pub fn bresnan_count(m: u32, alpha: usize) -> Result<BresnanCount> {
    let t = transfer(m, alpha)?;
    let w = t.weight_matrix();
    let pw = powers(&w, alpha)?;
    let trace = (0..w.len()).try_fold(0u128, |acc, i| acc.checked_add(pw[alpha][i][i])).ok_or_else(overflow)?;
    // each polynomial has two (first exponent, difference) representations
    let tuples = trace >> (2 * alpha);
    // tuples is a multiple of m^(alpha-1), so an overflowing divisor means no tuples
    let shift_classes = (m as u128).checked_pow(alpha as u32 - 1).map_or(0, |d| tuples / d);
    Ok(BresnanCount { m, alpha, tuples, shift_classes })
}

/// Draws a parameter set uniformly from all accepted tuples, or None if there are none.
pub fn bresnan_sample<R: Rng>(m: u32, alpha: usize, rng: &mut R) -> Result<Option<BresnanParams>> {
    let t = transfer(m, alpha)?;
    let w = t.weight_matrix();
    let pw = powers(&w, alpha)?;
    let n = w.len();
    let pick = |rng: &mut R, weights: &[u128]| -> usize {
        let total: u128 = weights.iter().try_fold(0u128, |a, &x| a.checked_add(x)).expect("row sums are entries of a checked power");
        let mut r = rng.random_range(0..total);
        for (k, &x) in weights.iter().enumerate() {
            if r < x {
                return k;
            }
            r -= x;
        }
        unreachable!()
    };
    let diag: Vec<u128> = (0..n).map(|i| pw[alpha][i][i]).collect();
    if diag.iter().try_fold(0u128, |a, &x| a.checked_add(x)).ok_or_else(overflow)? == 0 {
        return Ok(None);
    }
    let start = pick(rng, &diag);
    let mut walk = vec![start];
    for step in 1..alpha {
        let prev = *walk.last().unwrap();
        let ws: Vec<u128> = (0..n).map(|v| w[prev][v].checked_mul(pw[alpha - step][v][start]).ok_or_else(overflow)).collect::<Result<_>>()?;
        walk.push(pick(rng, &ws));
    }
    let mi = m as i64;
    let mut first1 = vec![0i64; alpha];
    let mut first2 = vec![0i64; alpha];
    for i in 0..alpha {
        let j = (i + 1) % alpha;
        let xs = &t.allowed[walk[i]][walk[j]];
        let x = xs[rng.random_range(0..xs.len())] as i64;
        first1[i] = rng.random_range(0..mi);
        first2[j] = (x - first1[i]).rem_euclid(mi);
    }
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for i in 0..alpha {
        let (d1, d2) = t.states[walk[i]];
        p1.push(CirculantSpec::weight_two(m, first1[i], first1[i] + d1 as i64)?);
        p2.push(CirculantSpec::weight_two(m, first2[i], first2[i] + d2 as i64)?);
    }
    Ok(Some(BresnanParams::new(m, p1, p2)?))
}

/// Visits every accepted tuple exactly once; stops early when `visit` returns false.
/// Returns the number of tuples visited.
pub fn bresnan_enumerate(m: u32, alpha: usize, visit: &mut dyn FnMut(&BresnanParams) -> bool) -> Result<u64> {
    let t = transfer(m, alpha)?;
    let n = t.states.len();
    let reach = {
        let w: Vec<Vec<u128>> =
            t.allowed.iter().map(|r| r.iter().map(|x| u128::from(!x.is_empty())).collect()).collect();
        powers(&w, alpha)?
    };
    let mut visited = 0u64;
    let mut walk = Vec::with_capacity(alpha);
    for start in 0..n {
        if reach[alpha][start][start] == 0 {
            continue;
        }
        walk.clear();
        walk.push(start);
        if !diff_walks(&t, &reach, alpha, &mut walk, &mut |w| expand_walk(&t, w, visit, &mut visited)) {
            break;
        }
    }
    Ok(visited)
}

fn diff_walks(
    t: &DiffTransfer,
    reach: &[Vec<Vec<u128>>],
    alpha: usize,
    walk: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = walk.len();
    let (start, last) = (walk[0], walk[k - 1]);
    if k == alpha {
        return t.allowed[last][start].is_empty() || f(walk);
    }
    for v in 0..t.states.len() {
        if t.allowed[last][v].is_empty() || reach[alpha - k][v][start] == 0 {
            continue;
        }
        walk.push(v);
        let go = diff_walks(t, reach, alpha, walk, f);
        walk.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Expands one difference walk into polynomials, writing each {a, a+d} with a + d < m
/// so every tuple appears once.
fn expand_walk(t: &DiffTransfer, walk: &[usize], visit: &mut dyn FnMut(&BresnanParams) -> bool, count: &mut u64) -> bool {
    let alpha = walk.len();
    let m = t.m as i64;
    let mut first1 = vec![0i64; alpha];
    let mut first2 = vec![0i64; alpha];
    fn rec(
        t: &DiffTransfer,
        walk: &[usize],
        i: usize,
        first1: &mut [i64],
        first2: &mut [i64],
        visit: &mut dyn FnMut(&BresnanParams) -> bool,
        count: &mut u64,
    ) -> bool {
        let alpha = walk.len();
        let m = t.m as i64;
        if i == alpha {
            let mk = |a: i64, d: u32| CirculantSpec::weight_two(t.m, a, a + d as i64).unwrap();
            let p1 = (0..alpha).map(|k| mk(first1[k], t.states[walk[k]].0)).collect();
            let p2 = (0..alpha).map(|k| mk(first2[k], t.states[walk[k]].1)).collect();
            *count += 1;
            return visit(&BresnanParams { m: t.m, p1, p2 });
        }
        let j = (i + 1) % alpha;
        let d1 = t.states[walk[i]].0 as i64;
        let d2j = t.states[walk[j]].1 as i64;
        for &x in &t.allowed[walk[i]][walk[j]] {
            for a1 in 0..m - d1 {
                let a2 = (x as i64 - a1).rem_euclid(m);
                if a2 + d2j >= m {
                    continue;
                }
                first1[i] = a1;
                first2[j] = a2;
                if !rec(t, walk, i + 1, first1, first2, visit, count) {
                    return false;
                }
            }
        }
        true
    }
    let _ = m;
    rec(t, walk, 0, &mut first1, &mut first2, visit, count)
}

/// Independent count for alpha = 4 over polynomial pairs per block row, using the
/// row and adjacency predicates of `bresnan_check` and bitset products.
pub fn bresnan_count_bruteforce4(m: u32) -> u128 {
    let mut polys = Vec::new();
    for a in 0..m as i64 {
        for b in a + 1..m as i64 {
            polys.push(CirculantSpec::weight_two(m, a, b).unwrap());
        }
    }
    let mut states = Vec::new();
    for q1 in &polys {
        for q2 in &polys {
            if row_pair_ok(m, q1, q2) {
                states.push((*q1, *q2));
            }
        }
    }
    let n = states.len();
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = states
        .par_iter()
        .map(|u| {
            let mut bits = vec![0u64; words];
            for (k, v) in states.iter().enumerate() {
                if adjacent_ok(m, (&u.0, &u.1), (&v.0, &v.1)) {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();
    let mut cols = vec![vec![0u64; words]; n];
    for (u, r) in rows.iter().enumerate() {
        for (k, col) in cols.iter_mut().enumerate() {
            if r[k / 64] >> (k % 64) & 1 == 1 {
                col[u / 64] |= 1 << (u % 64);
            }
        }
    }
    let inter = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as u128).sum::<u128>();
    // trace(T^4) = sum over (a, c) of #paths a->c of length 2 times #paths c->a of length 2
    (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|c| {
            let x = inter(&rows[a], &cols[c]);
            if x == 0 { 0 } else { x * inter(&rows[c], &cols[a]) }
        }).sum::<u128>())
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Count,
    Enumerate { limit: u64 },
    Sample { n: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Count(BresnanCount),
    Solutions(Vec<BresnanParams>),
}

pub fn bresnan_search(m: u32, alpha: usize, mode: SearchMode) -> Result<SearchOutcome> {
    match mode {
        SearchMode::Count => Ok(SearchOutcome::Count(bresnan_count(m, alpha)?)),
        SearchMode::Enumerate { limit } => {
            let mut out = Vec::new();
            bresnan_enumerate(m, alpha, &mut |p| {
                out.push(p.clone());
                (out.len() as u64) < limit
            })?;
            Ok(SearchOutcome::Solutions(out))
        }
        SearchMode::Sample { n, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for _ in 0..n {
                match bresnan_sample(m, alpha, &mut rng)? {
                    Some(p) => out.push(p),
                    None => break,
                }
            }
            Ok(SearchOutcome::Solutions(out))
        }
    }
}
