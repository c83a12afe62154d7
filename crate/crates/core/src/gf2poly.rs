//! Bit-packed polynomials over GF(2).

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = Self { words: vec![0; k / 64 + 1] };
        p.flip(k);
        p
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    /// x^m + 1
    pub fn cyclic_modulus(m: usize) -> Self {
        Self::from_exponents(&[0, m])
    }

    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1 << (k % 64);
        self.trim();
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let w = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs > 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        let Some(d) = other.degree() else { return acc };
        for k in 0..=d {
            if other.coeff(k) {
                acc = acc.add(&self.shifted(k));
            }
        }
        acc
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < dd {
                break;
            }
            r = r.add(&divisor.shifted(d - dd));
        }
        r
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Product reduced modulo x^m + 1.
    pub fn mul_cyclic(&self, other: &Self, m: usize) -> Self {
        self.mul(other).rem(&Self::cyclic_modulus(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_coprime_and_shared_factor() {
        // x^2+1 = (x+1)^2 and x^3+1 = (x+1)(x^2+x+1)
        let a = Gf2Poly::from_exponents(&[0, 2]);
        let b = Gf2Poly::from_exponents(&[0, 3]);
        assert_eq!(a.gcd(&b), Gf2Poly::from_exponents(&[0, 1]));
        let c = Gf2Poly::from_exponents(&[0, 1, 2]);
        assert!(c.gcd(&a).is_one());
    }

    #[test]
    fn wide_shift_crosses_words() {
        let p = Gf2Poly::from_exponents(&[0, 63]);
        let q = p.mul(&Gf2Poly::monomial(70));
        assert_eq!(q, Gf2Poly::from_exponents(&[70, 133]));
        assert_eq!(q.degree(), Some(133));
    }

    #[test]
    fn cyclic_product_wraps() {
        let p = Gf2Poly::from_exponents(&[3]);
        assert_eq!(p.mul_cyclic(&Gf2Poly::monomial(4), 5), Gf2Poly::from_exponents(&[2]));
    }
}
