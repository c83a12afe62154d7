//! (2,4)-regular codes: a diagonal of weight-2 circulants beside a block with an
//! identity diagonal and a weight-1 diagonal at offset delta.

use super::{check_polys, eqm, is_fraction, pm, sep, Failures};
use crate::block::BlockMatrix;
use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reg24Params {
    m: u32,
    h: Vec<CirculantSpec>,
    j: Vec<u32>,
    delta: usize,
}

impl Reg24Params {
    pub fn new(m: u32, h: Vec<CirculantSpec>, j: Vec<u32>, delta: usize) -> Result<Self> {
        let alpha = h.len();
        if alpha <= 4 || m < 3 {
            return Err(Error::InvalidParams(format!("need alpha > 4 and m >= 3, got alpha={alpha}, m={m}")));
        }
        if delta == 0 || delta >= alpha {
            return Err(Error::InvalidParams(format!("delta must lie in 1..{alpha}, got {delta}")));
        }
        if j.len() != alpha {
            return Err(Error::InvalidParams(format!("expected {alpha} weight-1 exponents, got {}", j.len())));
        }
        check_polys(m, "diagonal", &h, alpha)?;
        let j = j.into_iter().map(|e| e % m).collect();
        Ok(Self { m, h, j, delta })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> usize {
        self.h.len()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn h(&self) -> &[CirculantSpec] {
        &self.h
    }

    pub fn j(&self) -> &[u32] {
        &self.j
    }

    pub fn mutate<R: rand::Rng>(&mut self, rng: &mut R) {
        let i = rng.random_range(0..self.alpha());
        if rng.random_bool(0.5) {
            self.h[i] = super::random_weight_two(rng, self.m);
        } else {
            self.j[i] = rng.random_range(0..self.m);
        }
    }
}

/// Row i: H_i at column i of the first block; identity at column i and the weight-1
/// circulant x^j_i at column i + delta of the second block.
pub fn build_reg24(p: &Reg24Params) -> BlockMatrix {
    let (m, a) = (p.m, p.alpha());
    let z = CirculantSpec::zero(m).unwrap();
    let mut grid = vec![vec![z; 2 * a]; a];
    for (i, row) in grid.iter_mut().enumerate() {
        row[i] = p.h[i];
        row[a + i] = CirculantSpec::identity(m).unwrap();
        row[a + (i + p.delta) % a] = CirculantSpec::weight_one(m, p.j[i] as i64).unwrap();
    }
    BlockMatrix::assemble(grid, a, 2, 1).unwrap().with_family("reg24")
}

/// Labels of every violated condition; empty iff the girth is at least 10.
pub fn reg24_violations(p: &Reg24Params) -> Vec<String> {
    let (m, a, d) = (p.m, p.alpha(), p.delta);
    let s = |i: usize| sep(&p.h[i % a]);
    let jx = |i: usize| p.j[i % a] as i64;
    let hits = |v: i64, targets: &[i64]| targets.iter().any(|&t| eqm(m, v, t));
    let mut f = Failures::default();
    for i in 0..a {
        let si = s(i);
        f.fail_if((2..=4).any(|k| is_fraction(m, si, k)), || format!("1: s(h[{i}]) = {si}"));
        f.fail_if(si == s(i + d), || format!("2: s(h[{i}]) = s(h[{}])", (i + d) % a));
        if (2 * d) % a == 0 {
            let (sd, sum) = (s(i + d), jx(i) + jx(i + d));
            let mixed: Vec<i64> = pm(&[si + sd, si - sd]);
            let items: [(&str, bool); 7] = [
                ("3.1", hits(sum, &[0])),
                ("3.2", hits(sum, &pm(&[si]))),
                ("3.3", hits(sum, &pm(&[sd]))),
                ("3.4", hits(2 * sum, &[0])),
                ("3.5", hits(sum, &pm(&[2 * si]))),
                ("3.6", hits(sum, &pm(&[2 * sd]))),
                ("3.7", hits(sum, &mixed)),
            ];
            for (lbl, bad) in items {
                f.fail_if(bad, || format!("{lbl} at row {i}"));
            }
        }
        if (3 * d) % a == 0 {
            let sum = jx(i) + jx(i + d) + jx(i + 2 * d);
            f.fail_if(hits(sum, &[0]), || format!("4.1 at row {i}"));
            f.fail_if(hits(sum, &pm(&[si])), || format!("4.2 at row {i}"));
        }
        if (4 * d) % a == 0 && (2 * d) % a != 0 {
            let sum = jx(i) + jx(i + d) + jx(i + 2 * d) + jx(i + 3 * d);
            f.fail_if(hits(sum, &[0]), || format!("5 at row {i}"));
        }
    }
    f.0
}

pub fn reg24_check(p: &Reg24Params) -> bool {
    reg24_violations(p).is_empty()
}
