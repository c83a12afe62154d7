//! Randomized search for parameter sets accepted by a family's check.

use super::{
    bresnan::{bresnan_check, build_bresnan, BresnanParams},
    random_exponents, random_weight_two,
    rate23::{build_rate23, rate23_check, Rate23Params},
    reg24::{build_reg24, reg24_check, Reg24Params},
    reg36::{build_reg36, reg36_check, Reg36Params},
};
use crate::block::BlockMatrix;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Bresnan,
    Rate23,
    Reg24,
    Reg36,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bresnan => "bresnan",
            Family::Rate23 => "rate23",
            Family::Reg24 => "reg24",
            Family::Reg36 => "reg36",
        }
    }

    /// Girth guaranteed by an accepted parameter set.
    pub fn target_girth(self) -> usize {
        match self {
            Family::Bresnan | Family::Rate23 => 8,
            Family::Reg24 | Family::Reg36 => 10,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bresnan" => Ok(Family::Bresnan),
            "rate23" => Ok(Family::Rate23),
            "reg24" => Ok(Family::Reg24),
            "reg36" => Ok(Family::Reg36),
            _ => Err(Error::InvalidParams(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Bresnan(BresnanParams),
    Rate23(Rate23Params),
    Reg24(Reg24Params),
    Reg36(Reg36Params),
}

impl FamilyParams {
    pub fn build(&self) -> BlockMatrix {
        match self {
            FamilyParams::Bresnan(p) => build_bresnan(p),
            FamilyParams::Rate23(p) => build_rate23(p),
            FamilyParams::Reg24(p) => build_reg24(p),
            FamilyParams::Reg36(p) => build_reg36(p),
        }
    }

    pub fn violations(&self) -> Result<Vec<String>> {
        Ok(match self {
            FamilyParams::Bresnan(p) => super::bresnan::bresnan_violations(p),
            FamilyParams::Rate23(p) => super::rate23::rate23_violations(p),
            FamilyParams::Reg24(p) => super::reg24::reg24_violations(p),
            FamilyParams::Reg36(p) => super::reg36::reg36_violations(p)?,
        })
    }

    pub fn mutate(&mut self, rng: &mut ChaCha8Rng) {
        match self {
            FamilyParams::Bresnan(p) => p.mutate(rng),
            FamilyParams::Rate23(p) => p.mutate(rng),
            FamilyParams::Reg24(p) => p.mutate(rng),
            FamilyParams::Reg36(p) => p.mutate(rng),
        }
    }

    pub fn check(&self) -> Result<bool> {
        Ok(match self {
            FamilyParams::Bresnan(p) => bresnan_check(p),
            FamilyParams::Rate23(p) => rate23_check(p),
            FamilyParams::Reg24(p) => reg24_check(p),
            FamilyParams::Reg36(p) => reg36_check(p)?,
        })
    }
}

/// Offsets for the families that have them; `None` picks the layout default
/// (delta = alpha - 2 for reg24; the first admissible pair for reg36).
#[derive(Clone, Copy, Debug, Default)]
pub struct Offsets {
    pub delta: Option<usize>,
    pub delta2: Option<usize>,
    pub delta3: Option<usize>,
}

/// First admissible (delta2, delta3) pair for the (3,6)-regular layout.
pub fn default_reg36_offsets(alpha: usize) -> Option<(usize, usize)> {
    (1..alpha)
        .flat_map(|d2| (d2 + 1..alpha).map(move |d3| (d2, d3)))
        .find(|&(d2, d3)| super::reg36::class_e_violations(alpha, d2, d3).is_empty())
}

/// One uniformly drawn parameter set.
pub fn draw(family: Family, m: u32, alpha: usize, offsets: Offsets, rng: &mut ChaCha8Rng) -> Result<FamilyParams> {
    let polys = |rng: &mut ChaCha8Rng| (0..alpha).map(|_| random_weight_two(rng, m)).collect::<Vec<_>>();
    Ok(match family {
        Family::Bresnan => {
            let (p1, p2) = (polys(rng), polys(rng));
            FamilyParams::Bresnan(BresnanParams::new(m, p1, p2)?)
        }
        Family::Rate23 => {
            let (p1, p2, p3) = (polys(rng), polys(rng), polys(rng));
            FamilyParams::Rate23(Rate23Params::new(m, p1, p2, p3)?)
        }
        Family::Reg24 => {
            let delta = offsets.delta.unwrap_or(alpha.saturating_sub(2));
            let h = polys(rng);
            FamilyParams::Reg24(Reg24Params::new(m, h, random_exponents(rng, m, alpha), delta)?)
        }
        Family::Reg36 => {
            let (d2, d3) = match (offsets.delta2, offsets.delta3) {
                (Some(a), Some(b)) => (a, b),
                _ => default_reg36_offsets(alpha)
                    .ok_or_else(|| Error::DeltaPrecondition(format!("no admissible offsets for alpha = {alpha}")))?,
            };
            let h = polys(rng);
            FamilyParams::Reg36(Reg36Params::new(m, h, random_exponents(rng, m, alpha), d2, d3)?)
        }
    })
}

/// Draws parameter sets until one passes the family check. Deterministic given the seed.
pub fn random_search(family: Family, m: u32, alpha: usize, offsets: Offsets, seed: u64, budget: u64) -> Result<(FamilyParams, u64)> {
    if budget == 0 {
        return Err(Error::InvalidParams("budget must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=budget {
        let p = draw(family, m, alpha, offsets, &mut rng)?;
        if p.check()? {
            return Ok((p, k));
        }
    }
    Err(Error::BudgetExhausted(budget))
}

/// Min-conflicts search: resample one polynomial or exponent at a time, keeping changes
/// that do not increase the number of violated conditions, restarting after `restart`
/// stale steps. Finds solutions where uniform draws almost never pass. Not uniform.
pub fn local_search(family: Family, m: u32, alpha: usize, offsets: Offsets, seed: u64, budget: u64) -> Result<(FamilyParams, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let restart = 200 * alpha as u64;
    let mut steps = 0u64;
    while steps < budget {
        let mut cur = draw(family, m, alpha, offsets, &mut rng)?;
        let mut cost = cur.violations()?.len();
        let mut stale = 0;
        while stale < restart && steps < budget {
            if cost == 0 {
                return Ok((cur, steps));
            }
            steps += 1;
            let mut next = cur.clone();
            next.mutate(&mut rng);
            let c = next.violations()?.len();
            if c < cost {
                stale = 0;
            } else {
                stale += 1;
            }
            if c <= cost {
                cur = next;
                cost = c;
            }
        }
        if cost == 0 {
            return Ok((cur, steps));
        }
    }
    Err(Error::BudgetExhausted(budget))
}
