//! Truncated free associative algebra over the integers.
//!
//! The free group of rank `r` maps into the units of `Z<<X_1..X_r>>` by
//! `x_i -> 1 + X_i`. Truncating at total degree `c` computes exactly in the
//! free class-`c` nilpotent quotient: a word maps to `1` iff it lies in
//! `gamma_{c+1}`. This gives decidable, exact equality for the collector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::words::FreeWord;

/// Indexing scheme for noncommutative monomials of degree `<= class` in
/// `rank` letters. Monomials of degree `d` are numbered by their base-`rank`
/// digit string (first letter most significant), after an offset.
#[derive(Debug, Clone)]
pub struct MonoTable {
    pub rank: usize,
    pub class: usize,
    offsets: Vec<usize>,
    total: usize,
}

impl MonoTable {
    pub fn new(rank: usize, class: usize) -> Self {
        assert!(rank >= 1 && class >= 1);
        let mut offsets = Vec::with_capacity(class + 2);
        let mut total = 0usize;
        let mut pow = 1usize;
        for _ in 0..=class {
            offsets.push(total);
            total += pow;
            pow *= rank;
        }
        offsets.push(total);
        MonoTable { rank, class, offsets, total }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    fn degree_of(&self, id: usize) -> usize {
        // offsets is short (class+2 entries); linear scan is fine
        let mut d = 0;
        while self.offsets[d + 1] <= id {
            d += 1;
        }
        d
    }

    /// Concatenation of two monomials, or `None` past the truncation degree.
    fn concat(&self, a: usize, b: usize) -> Option<usize> {
        let da = self.degree_of(a);
        let db = self.degree_of(b);
        if da + db > self.class {
            return None;
        }
        let va = a - self.offsets[da];
        let vb = b - self.offsets[db];
        Some(self.offsets[da + db] + va * self.rank.pow(db as u32) + vb)
    }

    pub fn generator_monomial(&self, i: usize) -> usize {
        assert!(i < self.rank);
        self.offsets[1] + i
    }
}

/// Dense element of the truncated algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero(t: &MonoTable) -> Self {
        Poly { coeffs: vec![BigInt::zero(); t.len()] }
    }

    pub fn one(t: &MonoTable) -> Self {
        let mut p = Self::zero(t);
        p.coeffs[0] = BigInt::one();
        p
    }

    pub fn generator(t: &MonoTable, i: usize) -> Self {
        let mut p = Self::one(t);
        p.coeffs[t.generator_monomial(i)] = BigInt::one();
        p
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Poly, t: &MonoTable) -> Poly {
        let mut out = Poly::zero(t);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some(m) = t.concat(a, b) {
                    out.coeffs[m] += ca * cb;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn bracket(&self, other: &Poly, t: &MonoTable) -> Poly {
        self.mul(other, t).sub(&other.mul(self, t))
    }

    /// Inverse of an element with constant term 1, by the truncated
    /// geometric series.
    pub fn invert(&self, t: &MonoTable) -> Poly {
        assert!(self.coeffs[0].is_one());
        let mut x = self.clone();
        x.coeffs[0] = BigInt::zero(); // x = self - 1
        let mut acc = Poly::one(t);
        let mut term = Poly::one(t);
        for _ in 0..t.class {
            term = term.mul(&x, t);
            for c in term.coeffs.iter_mut() {
                *c = -std::mem::take(c);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn pow(&self, k: &BigInt, t: &MonoTable) -> Poly {
        let base = if k.is_negative() { self.invert(t) } else { self.clone() };
        let mut n = k.abs();
        let mut acc = Poly::one(t);
        let mut sq = base;
        let one = BigInt::one();
        while n > BigInt::zero() {
            if (&n & &one) == one {
                acc = acc.mul(&sq, t);
            }
            n >>= 1;
            if n > BigInt::zero() {
                sq = sq.mul(&sq, t);
            }
        }
        acc
    }

    /// Coefficients of the degree-`d` homogeneous component.
    pub fn homogeneous(&self, d: usize, t: &MonoTable) -> Vec<BigInt> {
        self.coeffs[t.degree_range(d)].to_vec()
    }
}

/// Magnus image of a free word, one binary power per run-length entry.
pub fn word_image(w: &FreeWord, t: &MonoTable) -> Poly {
    let mut acc = Poly::one(t);
    for (g, e) in w.letters() {
        let img = Poly::generator(t, *g).pow(e, t);
        acc = acc.mul(&img, t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn inverse_round_trip() {
        let t = MonoTable::new(2, 4);
        let w = parse_word("a^2 b^-1 a b^3", 2).unwrap();
        let p = word_image(&w, &t);
        assert!(p.mul(&p.invert(&t), &t).is_one());
        assert!(word_image(&w.invert(), &t).mul(&p, &t).is_one());
    }

    #[test]
    fn commutator_of_generator_with_itself_is_one() {
        let t = MonoTable::new(2, 3);
        let w = parse_word("a b a^-1 b^-1 b a b^-1 a^-1", 2).unwrap();
        assert!(word_image(&w, &t).is_one());
    }

    #[test]
    fn kernel_detects_lower_central_depth() {
        // [a,b] is trivial at class 1 but not at class 2
        let c = parse_word("a b a^-1 b^-1", 2).unwrap();
        assert!(word_image(&c, &MonoTable::new(2, 1)).is_one());
        assert!(!word_image(&c, &MonoTable::new(2, 2)).is_one());
    }

    #[test]
    fn large_powers_are_cheap_and_exact() {
        let t = MonoTable::new(2, 2);
        let w = parse_word("a^1000000", 2).unwrap();
        let p = word_image(&w, &t);
        assert_eq!(p.coeffs[t.generator_monomial(0)], BigInt::from(1000000));
    }
}
