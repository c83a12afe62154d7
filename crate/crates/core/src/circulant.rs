//! Circulants over Z2[x]/(x^m + 1) of weight at most two.

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::sparse::SparseBinaryMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CirculantKind {
    Zero,
    WeightOne { e: u32 },
    /// Invariant: a < b.
    WeightTwo { a: u32, b: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct CirculantSpec {
    m: u32,
    kind: CirculantKind,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_m(m: u32) -> Result<()> {
    if m < 3 {
        Err(Error::InvalidModulus(m))
    } else {
        Ok(())
    }
}

impl CirculantSpec {
    pub fn zero(m: u32) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m, kind: CirculantKind::Zero })
    }

    pub fn weight_one(m: u32, e: i64) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m, kind: CirculantKind::WeightOne { e: e.rem_euclid(m as i64) as u32 } })
    }

    pub fn identity(m: u32) -> Result<Self> {
        Self::weight_one(m, 0)
    }

    pub fn weight_two(m: u32, a: i64, b: i64) -> Result<Self> {
        check_m(m)?;
        let (ra, rb) = (a.rem_euclid(m as i64) as u32, b.rem_euclid(m as i64) as u32);
        if ra == rb {
            return Err(Error::RepeatedExponent { m, a: a as u64, b: b as u64 });
        }
        Ok(Self { m, kind: CirculantKind::WeightTwo { a: ra.min(rb), b: ra.max(rb) } })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn kind(&self) -> CirculantKind {
        self.kind
    }

    pub fn weight(&self) -> usize {
        match self.kind {
            CirculantKind::Zero => 0,
            CirculantKind::WeightOne { .. } => 1,
            CirculantKind::WeightTwo { .. } => 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.kind == CirculantKind::Zero
    }

    pub fn is_weight_two(&self) -> bool {
        matches!(self.kind, CirculantKind::WeightTwo { .. })
    }

    pub fn exponents(&self) -> Vec<u32> {
        match self.kind {
            CirculantKind::Zero => vec![],
            CirculantKind::WeightOne { e } => vec![e],
            CirculantKind::WeightTwo { a, b } => vec![a, b],
        }
    }

    /// Cyclic distance between the two ones of a weight-2 row.
    pub fn separation(&self) -> Result<u32> {
        match self.kind {
            CirculantKind::WeightTwo { a, b } => Ok((b - a).min(a + self.m - b)),
            _ => Err(Error::NotWeightTwo),
        }
    }

    /// Multiply by x^k.
    pub fn shifted(&self, k: i64) -> Self {
        let m = self.m;
        match self.kind {
            CirculantKind::Zero => *self,
            CirculantKind::WeightOne { e } => Self::weight_one(m, e as i64 + k).unwrap(),
            CirculantKind::WeightTwo { a, b } => Self::weight_two(m, a as i64 + k, b as i64 + k).unwrap(),
        }
    }

    /// The circulant of the transposed matrix: exponents negated.
    pub fn transposed(&self) -> Self {
        let m = self.m;
        match self.kind {
            CirculantKind::Zero => *self,
            CirculantKind::WeightOne { e } => Self::weight_one(m, -(e as i64)).unwrap(),
            CirculantKind::WeightTwo { a, b } => Self::weight_two(m, -(a as i64), -(b as i64)).unwrap(),
        }
    }

    pub fn to_poly(&self) -> Gf2Poly {
        let e: Vec<usize> = self.exponents().into_iter().map(|x| x as usize).collect();
        Gf2Poly::from_exponents(&e)
    }

    /// Row i has ones at columns i + e (mod m).
    pub fn expand(&self) -> SparseBinaryMatrix {
        let m = self.m as usize;
        let rows = (0..m)
            .map(|i| {
                let mut r: Vec<usize> = self.exponents().iter().map(|&e| (i + e as usize) % m).collect();
                r.sort_unstable();
                r
            })
            .collect();
        SparseBinaryMatrix::from_rows(m, rows).expect("circulant rows are valid")
    }
}

pub fn shift_equivalent(p: &CirculantSpec, q: &CirculantSpec) -> Result<bool> {
    if p.m != q.m {
        return Err(Error::ModulusMismatch(p.m, q.m));
    }
    Ok(p.separation()? == q.separation()?)
}

/// Girth of the Tanner graph of a single weight-2 circulant: 2m / gcd(m, s).
pub fn circulant_girth(m: u32, s: u32) -> Result<u32> {
    check_m(m)?;
    if s == 0 || 2 * s > m {
        return Err(Error::SeparationOutOfRange { m, s });
    }
    Ok(2 * m / gcd(m as u64, s as u64) as u32)
}

/// True iff gcd(1 + prod p_h, x^m + 1) = 1.
pub fn gcd_fullrank_check(polys: &[CirculantSpec]) -> Result<bool> {
    let first = polys.first().ok_or(Error::Empty("polynomial list"))?;
    let m = first.m;
    let mut prod = Gf2Poly::one();
    for p in polys {
        if p.m != m {
            return Err(Error::ModulusMismatch(m, p.m));
        }
        if !p.is_weight_two() {
            return Err(Error::NotWeightTwo);
        }
        prod = prod.mul_cyclic(&p.to_poly(), m as usize);
    }
    let shifted = prod.add(&Gf2Poly::one());
    Ok(shifted.gcd(&Gf2Poly::cyclic_modulus(m as usize)).is_one())
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    m: u32,
    kind: String,
    #[serde(default)]
    exponents: Vec<i64>,
}

impl TryFrom<SpecRepr> for CirculantSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        match (r.kind.as_str(), r.exponents.as_slice()) {
            ("zero", []) => Self::zero(r.m),
            ("weight1", [e]) => Self::weight_one(r.m, *e),
            ("weight2", [a, b]) => Self::weight_two(r.m, *a, *b),
            (k, e) => Err(Error::InvalidParams(format!("block kind {k:?} with {} exponents", e.len()))),
        }
    }
}

impl From<CirculantSpec> for SpecRepr {
    fn from(c: CirculantSpec) -> Self {
        let kind = match c.kind {
            CirculantKind::Zero => "zero",
            CirculantKind::WeightOne { .. } => "weight1",
            CirculantKind::WeightTwo { .. } => "weight2",
        };
        SpecRepr { m: c.m, kind: kind.into(), exponents: c.exponents().into_iter().map(i64::from).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separations() {
        assert_eq!(CirculantSpec::weight_two(5, 0, 1).unwrap().separation().unwrap(), 1);
        assert_eq!(CirculantSpec::weight_two(6, 0, 3).unwrap().separation().unwrap(), 3);
        assert_eq!(CirculantSpec::weight_two(7, 1, 5).unwrap().separation().unwrap(), 3);
        assert!(CirculantSpec::weight_one(7, 3).unwrap().separation().is_err());
        assert!(CirculantSpec::zero(7).unwrap().separation().is_err());
    }

    #[test]
    fn weight_two_rejects_coinciding_exponents() {
        assert!(CirculantSpec::weight_two(5, 1, 6).is_err());
        let p = CirculantSpec::weight_two(5, 4, -4).unwrap();
        assert_eq!(p.exponents(), vec![1, 4]);
    }

    #[test]
    fn girth_formula_values() {
        assert_eq!(circulant_girth(6, 3).unwrap(), 4);
        assert_eq!(circulant_girth(6, 2).unwrap(), 6);
        assert_eq!(circulant_girth(5, 1).unwrap(), 10);
        assert!(circulant_girth(6, 4).is_err());
        assert!(circulant_girth(6, 0).is_err());
    }

    #[test]
    fn fullrank_check_cases() {
        // (1+x)^4 = 1+x^4, so 1 + product = x^4, a unit modulo x^7+1.
        let p = CirculantSpec::weight_two(7, 0, 1).unwrap();
        assert!(gcd_fullrank_check(&[p, p, p, p]).unwrap());
        // 1 + x + x^3 is a factor of x^7 + 1.
        let q = CirculantSpec::weight_two(7, 1, 3).unwrap();
        assert!(!gcd_fullrank_check(&[q]).unwrap());
        assert!(gcd_fullrank_check(&[]).is_err());
    }

    #[test]
    fn json_repr_roundtrip() {
        let p = CirculantSpec::weight_two(7, 5, 1).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"m":7,"kind":"weight2","exponents":[1,5]}"#);
        assert_eq!(serde_json::from_str::<CirculantSpec>(&s).unwrap(), p);
        assert!(serde_json::from_str::<CirculantSpec>(r#"{"m":7,"kind":"weight2","exponents":[1]}"#).is_err());
    }
}
