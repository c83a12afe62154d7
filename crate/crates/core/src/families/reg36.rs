//! (3,6)-regular codes: weight-2 diagonal with an identity sub-diagonal, beside a
//! weight-1 diagonal with two identity diagonals at offsets delta2 and delta3.

use super::{check_polys, eqm, exps, is_fraction, pm, sep, sum_hits, Failures};
use crate::block::BlockMatrix;
use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reg36Params {
    m: u32,
    h: Vec<CirculantSpec>,
    j: Vec<u32>,
    delta2: usize,
    delta3: usize,
}

impl Reg36Params {
    pub fn new(m: u32, h: Vec<CirculantSpec>, j: Vec<u32>, delta2: usize, delta3: usize) -> Result<Self> {
        let alpha = h.len();
        if alpha <= 4 || m < 3 {
            return Err(Error::InvalidParams(format!("need alpha > 4 and m >= 3, got alpha={alpha}, m={m}")));
        }
        if delta2 == 0 || delta3 == 0 || delta2 >= alpha || delta3 >= alpha || delta2 == delta3 {
            return Err(Error::InvalidParams(format!(
                "offsets must be distinct and lie in 1..{alpha}, got {delta2} and {delta3}"
            )));
        }
        if j.len() != alpha {
            return Err(Error::InvalidParams(format!("expected {alpha} weight-1 exponents, got {}", j.len())));
        }
        check_polys(m, "diagonal", &h, alpha)?;
        let j = j.into_iter().map(|e| e % m).collect();
        Ok(Self { m, h, j, delta2, delta3 })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> usize {
        self.h.len()
    }

    pub fn deltas(&self) -> (usize, usize) {
        (self.delta2, self.delta3)
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

/// Row i: H_i at column i and an identity at column i-1 of the first block; x^j_i at
/// column i and identities at columns i+delta2 and i+delta3 of the second block.
pub fn build_reg36(p: &Reg36Params) -> BlockMatrix {
    let (m, a) = (p.m, p.alpha());
    let z = CirculantSpec::zero(m).unwrap();
    let id = CirculantSpec::identity(m).unwrap();
    let mut grid = vec![vec![z; 2 * a]; a];
    for (i, row) in grid.iter_mut().enumerate() {
        row[i] = p.h[i];
        row[(i + a - 1) % a] = id;
        row[a + i] = CirculantSpec::weight_one(m, p.j[i] as i64).unwrap();
        row[a + (i + p.delta2) % a] = id;
        row[a + (i + p.delta3) % a] = id;
    }
    BlockMatrix::assemble(grid, a, 2, 1).unwrap().with_family("reg36")
}

/// The offsets as linear forms in (delta1, delta2, delta3), with delta32 = delta3 - delta2.
fn offset_forms(alpha: usize, d2: usize, d3: usize) -> [(&'static str, [i64; 3], i64); 4] {
    let a = alpha as i64;
    let (d2, d3) = (d2 as i64, d3 as i64);
    [
        ("delta1", [1, 0, 0], a - 1),
        ("delta2", [0, 1, 0], d2),
        ("delta3", [0, 0, 1], d3),
        ("delta32", [0, -1, 1], (d3 - d2).rem_euclid(a)),
    ]
}

/// Violated restrictions on the diagonal offsets; these define the subclass on which the
/// girth-10 conditions are complete. Sums that vanish identically are skipped.
pub fn class_e_violations(alpha: usize, d2: usize, d3: usize) -> Vec<String> {
    let a = alpha as i64;
    let forms = offset_forms(alpha, d2, d3);
    let zero = |v: i64| v.rem_euclid(a) == 0;
    let mut out = Vec::new();
    for (name, _, v) in &forms[1..] {
        let bad = (a % 2 == 0 && zero(v - a / 2))
            || (a % 3 == 0 && (zero(v - a / 3) || zero(v + a / 3)))
            || (a % 4 == 0 && (zero(v - a / 4) || zero(v + a / 4)));
        if bad {
            out.push(format!("1: {name} is alpha/2, +-alpha/3 or +-alpha/4"));
        }
    }
    for x in 0..4 {
        for y in x + 1..4 {
            if zero(forms[x].2 - forms[y].2) || zero(forms[x].2 + forms[y].2) {
                out.push(format!("2: {} = +-{}", forms[x].0, forms[y].0));
            }
        }
    }
    let mut sums = |idx: &[usize], label: &str| {
        let n = idx.len();
        for signs in 0..1u32 << (n - 1) {
            let mut coef = [0i64; 3];
            let mut v = 0i64;
            for (k, &x) in idx.iter().enumerate() {
                let sg = if k > 0 && signs >> (k - 1) & 1 == 1 { -1 } else { 1 };
                for (c, f) in coef.iter_mut().zip(forms[x].1) {
                    *c += sg * f;
                }
                v += sg * forms[x].2;
            }
            if coef != [0, 0, 0] && zero(v) {
                let names: Vec<&str> = idx.iter().map(|&x| forms[x].0).collect();
                out.push(format!("{label}: signed sum of {} vanishes", names.join(", ")));
                return;
            }
        }
    };
    for x in 1..4 {
        for y in x..4 {
            for z in y..4 {
                sums(&[x, y, z], "3");
            }
        }
    }
    for x in 0..4 {
        for y in x..4 {
            for z in y..4 {
                for w in z..4 {
                    sums(&[x, y, z, w], "4");
                }
            }
        }
    }
    out
}

/// Labels of every violated condition; empty iff the girth is at least 10.
/// Offsets outside the subclass are an error rather than a failed check.
pub fn reg36_violations(p: &Reg36Params) -> Result<Vec<String>> {
    let (m, a) = (p.m, p.alpha());
    let e = class_e_violations(a, p.delta2, p.delta3);
    if !e.is_empty() {
        return Err(Error::DeltaPrecondition(e.join("; ")));
    }
    let d1 = a - 1;
    let d32 = (p.delta3 + a - p.delta2) % a;
    let s = |i: usize| sep(&p.h[i % a]);
    let h = |i: usize| exps(&p.h[i % a]);
    let jx = |i: usize| p.j[i % a] as i64;
    let mut f = Failures::default();
    for i in 0..a {
        let si = s(i);
        f.fail_if((2..=4).any(|k| is_fraction(m, si, k)), || format!("1: s(h[{i}]) = {si}"));
        let sn = s(i + d1);
        f.fail_if(si == sn, || format!("2.1 at row {i}"));
        f.fail_if(pm(&[2 * sn]).iter().any(|&t| eqm(m, si, t)), || format!("2.2 at row {i}"));
        f.fail_if(pm(&[2 * si]).iter().any(|&t| eqm(m, sn, t)), || format!("2.3 at row {i}"));
        for (x, d) in [("2", p.delta2), ("3", p.delta3), ("32", d32)] {
            f.fail_if(si == s(i + d), || format!("3: s(h[{i}]) = s(h[i+delta{x}])"));
        }
        for k in [i + d32, i + a - d32] {
            let diff = jx(i) - jx(k);
            f.fail_if(eqm(m, diff, 0), || format!("4.1: j[{i}] = j[{}]", k % a));
            f.fail_if(pm(&[si]).iter().any(|&t| eqm(m, diff, t)), || format!("4.2: j[{i}] - j[{}] = +-s", k % a));
        }
        // the same hexagon closed through the weight-2 block of its third row
        let diff = jx(i) - jx(i + d32);
        let s_third = s(i + a - p.delta2);
        f.fail_if(pm(&[s_third]).iter().any(|&t| eqm(m, diff, t)), || {
            format!("4.3: j[{i}] - j[i+delta32] = +-s(h[i-delta2])")
        });
        f.fail_if(sum_hits(m, &[(1, h(i)), (-1, h(i + d32))], &[0]), || format!("5.1 at row {i}"));
        for (x, d) in [("2", p.delta2), ("3", p.delta3)] {
            let parts = [(1, h(i)), (-1, h(i + a - d)), (1, vec![jx(i + 1)]), (-1, vec![jx(i)])];
            f.fail_if(sum_hits(m, &parts, &[0]), || format!("5.2 (delta{x}) at row {i}"));
        }
    }
    Ok(f.0)
}

pub fn reg36_check(p: &Reg36Params) -> Result<bool> {
    Ok(reg36_violations(p)?.is_empty())
}
