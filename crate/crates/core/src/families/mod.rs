//! The four structured code families and the searches over their parameters.

pub mod bresnan;
pub mod rate23;
pub mod reg24;
pub mod reg36;
pub mod search;

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use rand::Rng;

pub use bresnan::{bresnan_check, bresnan_search, build_bresnan, BresnanParams};
pub use rate23::{build_rate23, rate23_check, Rate23Params};
pub use reg24::{build_reg24, reg24_check, Reg24Params};
pub use reg36::{build_reg36, reg36_check, Reg36Params};
pub use search::{random_search, Family, FamilyParams, Offsets};

pub(crate) fn sep(p: &CirculantSpec) -> i64 {
    p.separation().expect("family polynomials are weight-2") as i64
}

pub(crate) fn exps(p: &CirculantSpec) -> Vec<i64> {
    p.exponents().into_iter().map(i64::from).collect()
}

pub(crate) fn eqm(m: u32, a: i64, b: i64) -> bool {
    (a - b).rem_euclid(m as i64) == 0
}

/// True when m is a multiple of k and s = m/k.
pub(crate) fn is_fraction(m: u32, s: i64, k: i64) -> bool {
    s * k == m as i64
}

/// Whether some choice of one value per part (each scaled by its sign) sums to a target.
pub(crate) fn sum_hits(m: u32, parts: &[(i64, Vec<i64>)], targets: &[i64]) -> bool {
    crate::conditions::find_choice(m, parts, targets).is_some()
}

pub(crate) fn pm(xs: &[i64]) -> Vec<i64> {
    crate::conditions::pm(xs)
}

pub(crate) fn check_polys(m: u32, label: &str, polys: &[CirculantSpec], alpha: usize) -> Result<()> {
    if polys.len() != alpha {
        return Err(Error::InvalidParams(format!("{label}: expected {alpha} polynomials, got {}", polys.len())));
    }
    for p in polys {
        if p.m() != m {
            return Err(Error::ModulusMismatch(m, p.m()));
        }
        if !p.is_weight_two() {
            return Err(Error::NotWeightTwo);
        }
    }
    Ok(())
}

pub(crate) fn random_weight_two<R: Rng>(rng: &mut R, m: u32) -> CirculantSpec {
    let a = rng.random_range(0..m as i64);
    let d = rng.random_range(1..m as i64);
    CirculantSpec::weight_two(m, a, a + d).expect("distinct exponents")
}

pub(crate) fn random_exponents<R: Rng>(rng: &mut R, m: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..m)).collect()
}

/// Collects violated condition labels.
#[derive(Default)]
pub(crate) struct Failures(pub Vec<String>);

impl Failures {
    pub fn fail_if(&mut self, cond: bool, label: impl FnOnce() -> String) {
        if cond {
            self.0.push(label());
        }
    }
}
