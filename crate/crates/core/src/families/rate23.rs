//! Rate-2/3 codes: three alpha x alpha blocks of weight-2 diagonals, each with one
//! identity diagonal at offsets -1, +1 and +2.

use super::{check_polys, eqm, exps, is_fraction, pm, sep, sum_hits, Failures};
use crate::block::BlockMatrix;
use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rate23Params {
    m: u32,
    p: [Vec<CirculantSpec>; 3],
}

impl Rate23Params {
    pub fn new(m: u32, p1: Vec<CirculantSpec>, p2: Vec<CirculantSpec>, p3: Vec<CirculantSpec>) -> Result<Self> {
        let alpha = p1.len();
        if alpha <= 4 || m < 3 {
            return Err(Error::InvalidParams(format!("need alpha > 4 and m >= 3, got alpha={alpha}, m={m}")));
        }
        check_polys(m, "first block", &p1, alpha)?;
        check_polys(m, "second block", &p2, alpha)?;
        check_polys(m, "third block", &p3, alpha)?;
        Ok(Self { m, p: [p1, p2, p3] })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> usize {
        self.p[0].len()
    }

    /// Polynomial of block `c` (0, 1 or 2) in block row `i` (taken mod alpha).
    pub fn poly(&self, c: usize, i: usize) -> &CirculantSpec {
        &self.p[c][i % self.alpha()]
    }

    pub fn mutate<R: rand::Rng>(&mut self, rng: &mut R) {
        let (c, i) = (rng.random_range(0..3), rng.random_range(0..self.alpha()));
        self.p[c][i] = super::random_weight_two(rng, self.m);
    }
}

pub fn build_rate23(p: &Rate23Params) -> BlockMatrix {
    let (m, a) = (p.m, p.alpha());
    let z = CirculantSpec::zero(m).unwrap();
    let id = CirculantSpec::identity(m).unwrap();
    let mut grid = vec![vec![z; 3 * a]; a];
    let offsets = [a - 1, 1, 2];
    for (i, row) in grid.iter_mut().enumerate() {
        for (c, off) in offsets.into_iter().enumerate() {
            row[c * a + i] = p.p[c][i];
            row[c * a + (i + off) % a] = id;
        }
    }
    BlockMatrix::assemble(grid, a, 3, 1).unwrap().with_family("rate23")
}

/// Labels of every violated condition; empty iff the girth is exactly 8.
pub fn rate23_violations(p: &Rate23Params) -> Vec<String> {
    let (m, a) = (p.m, p.alpha());
    let s = |c: usize, i: usize| sep(p.poly(c, i));
    let e = |c: usize, i: usize| exps(p.poly(c, i));
    let mut f = Failures::default();
    for i in 0..a {
        for c in 0..3 {
            let x = s(c, i);
            f.fail_if(is_fraction(m, x, 2) || is_fraction(m, x, 3), || format!("1: s(p{}[{i}]) = {x}", c + 1));
            for d in (0..3).filter(|&d| d != c) {
                let y = s(d, i);
                f.fail_if(x == y, || format!("2: s(p{}[{i}]) = s(p{}[{i}])", c + 1, d + 1));
                f.fail_if(pm(&[2 * y]).iter().any(|&t| eqm(m, x, t)), || {
                    format!("2: s(p{}[{i}]) = +-2 s(p{}[{i}])", c + 1, d + 1)
                });
            }
        }
        let parts = [(1, vec![s(0, i)]), (1, pm(&[s(1, i)])), (1, pm(&[s(2, i)]))];
        f.fail_if(sum_hits(m, &parts, &[0]), || format!("3: s1 +- s2 +- s3 = 0 in row {i}"));

        let j = i + 1;
        let sum = [(1, e(0, i)), (1, e(1, j))];
        f.fail_if(sum_hits(m, &sum, &[0]), || format!("4.1: e(p1[{i}]) + e(p2[{j}]) = 0"));
        f.fail_if(sum_hits(m, &sum, &pm(&[s(0, i), s(1, j)])), || format!("4.2 at row {i}"));
        f.fail_if(sum_hits(m, &sum, &pm(&[s(0, j), s(1, i), s(2, i), s(2, j)])), || format!("4.3 at row {i}"));

        let s1 = s(0, i);
        for (lbl, other) in [("s(p1[i+1])", s(0, i + 1)), ("s(p2[i+1])", s(1, i + 1)), ("s(p3[i+1])", s(2, i + 1)), ("s(p3[i+2])", s(2, i + 2))] {
            f.fail_if(s1 == other, || format!("5: s(p1[{i}]) = {lbl}"));
        }
        for (lbl, other) in [("s(p2[i+1])", s(1, i + 1)), ("s(p3[i+2])", s(2, i + 2))] {
            f.fail_if(s(1, i) == other, || format!("5: s(p2[{i}]) = {lbl}"));
        }
        for (lbl, other) in [("s(p3[i+2])", s(2, i + 2)), ("s(p2[i+1])", s(1, i + 1))] {
            f.fail_if(s(2, i) == other, || format!("5: s(p3[{i}]) = {lbl}"));
        }

        let six = [
            ("6.1", [(1, e(0, i)), (1, e(0, i + 1)), (1, e(2, i + 2))]),
            ("6.2", [(1, e(1, i)), (1, e(1, i + 1)), (-1, e(2, i + 1))]),
            ("6.3", [(1, e(0, i)), (-1, e(1, i)), (1, e(2, i + 1))]),
            ("6.4", [(1, e(0, i)), (-1, e(1, i + 2)), (1, e(2, i + 2))]),
        ];
        for (lbl, parts) in six {
            f.fail_if(sum_hits(m, &parts, &[0]), || format!("{lbl} at row {i}"));
        }

        // hexagons that close only because the identity offsets wrap around
        let wrap: Vec<(&str, [(i64, Vec<i64>); 3])> = match a {
            5 => vec![
                ("W.1", [(1, e(0, i)), (-1, e(2, i + 3)), (-1, e(2, i))]),
                ("W.2", [(1, e(1, i)), (1, e(2, i + 4)), (1, e(2, i + 2))]),
            ],
            6 => vec![("W.3", [(1, e(2, i)), (1, e(2, i + 2)), (1, e(2, i + 4))])],
            _ => vec![],
        };
        for (lbl, parts) in wrap {
            f.fail_if(sum_hits(m, &parts, &[0]), || format!("{lbl} at row {i}"));
        }
    }
    f.0
}

pub fn rate23_check(p: &Rate23Params) -> bool {
    rate23_violations(p).is_empty()
}
