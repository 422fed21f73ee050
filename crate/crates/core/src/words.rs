//! Free-group words, reduction, and (generalized) commutators.
//!
//! Words are stored run-length style as `(generator, exponent)` pairs with
//! arbitrary-precision exponents, so `a^1000` costs one entry. All operations
//! return freely reduced words. The commutator convention throughout the
//! crate is `[x, y] = x y x^-1 y^-1`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A freely reduced word in the free group of the given rank.
///
/// Invariants: adjacent entries carry distinct generator indices, no entry
/// has exponent zero, and every generator index is `< rank`. The empty word
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<(usize, BigInt)>,
    rank: usize,
}

impl FreeWord {
    /// The identity element.
    pub fn identity(rank: usize) -> Self {
        FreeWord { letters: Vec::new(), rank }
    }

    /// A single generator.
    pub fn generator(index: usize, rank: usize) -> Result<Self> {
        Self::from_letters(vec![(index, BigInt::from(1))], rank)
    }

    /// Reduce a raw letter sequence into a word.
    pub fn from_letters<I>(letters: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut out: Vec<(usize, BigInt)> = Vec::new();
        for (g, e) in letters {
            if g >= rank {
                return Err(Error::IndexOutOfRange { index: g, rank });
            }
            push_reduced(&mut out, g, e);
        }
        Ok(FreeWord { letters: out, rank })
    }

    /// Convenience constructor from small exponents.
    pub fn from_slice(letters: &[(usize, i64)], rank: usize) -> Result<Self> {
        Self::from_letters(
            letters.iter().map(|&(g, e)| (g, BigInt::from(e))),
            rank,
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Run-length letters of the reduced word.
    pub fn letters(&self) -> &[(usize, BigInt)] {
        &self.letters
    }

    /// Number of letters counted with multiplicity (free length).
    pub fn length(&self) -> BigInt {
        self.letters.iter().map(|(_, e)| e.abs()).sum()
    }

    /// Reduced product `self * other`.
    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = self.letters.clone();
        for (g, e) in &other.letters {
            push_reduced(&mut out, *g, e.clone());
        }
        Ok(FreeWord { letters: out, rank: self.rank })
    }

    /// Reduced inverse; `w * w^-1` is the identity.
    pub fn invert(&self) -> FreeWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|(g, e)| (*g, -e.clone()))
            .collect();
        FreeWord { letters, rank: self.rank }
    }

    /// `self^k` by sign and repetition of the run-length form.
    pub fn pow(&self, k: &BigInt) -> FreeWord {
        if k.is_zero() || self.is_identity() {
            return FreeWord::identity(self.rank);
        }
        // A power of a single run stays a single run.
        if self.letters.len() == 1 {
            let (g, e) = &self.letters[0];
            return FreeWord { letters: vec![(*g, e * k)], rank: self.rank };
        }
        let base = if k.is_negative() { self.invert() } else { self.clone() };
        let mut n = k.abs();
        let mut acc = FreeWord::identity(self.rank);
        let mut sq = base;
        let one = BigInt::from(1);
        while n > BigInt::zero() {
            if (&n & &one) == one {
                acc = acc.multiply(&sq).unwrap();
            }
            n >>= 1;
            if n > BigInt::zero() {
                sq = sq.multiply(&sq).unwrap();
            }
        }
        acc
    }

    /// `[self, other] = self * other * self^-1 * other^-1`.
    pub fn commutator(&self, other: &FreeWord) -> Result<FreeWord> {
        self.multiply(other)?
            .multiply(&self.invert())?
            .multiply(&other.invert())
    }

    /// Exponent-sum vector of length `rank`.
    pub fn abelianize(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank];
        for (g, e) in &self.letters {
            v[*g] += e;
        }
        v
    }
}

fn push_reduced(out: &mut Vec<(usize, BigInt)>, g: usize, e: BigInt) {
    if e.is_zero() {
        return;
    }
    match out.last_mut() {
        Some((last_g, last_e)) if *last_g == g => {
            *last_e += e;
            if last_e.is_zero() {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

/// Left-nested iterated commutator `[...[[a1,a2],a3]...,am]`; a single
/// argument is returned as-is.
pub fn generalized_commutator(args: &[FreeWord]) -> Result<FreeWord> {
    let mut iter = args.iter();
    let first = iter.next().ok_or(Error::EmptyArgumentList)?;
    let mut acc = first.clone();
    for a in iter {
        acc = acc.commutator(a)?;
    }
    Ok(acc)
}

/// Parse the text form: letters `a`..`z` by index with optional `^k`
/// exponents, whitespace separated or juxtaposed; `1` is the empty word.
pub fn parse_word(text: &str, rank: usize) -> Result<FreeWord> {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Ok(FreeWord::identity(rank));
    }
    let mut letters: Vec<(usize, BigInt)> = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() || c == '*' || c == '\u{b7}' {
            continue;
        }
        if !c.is_ascii_lowercase() {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
        let g = (c as u8 - b'a') as usize;
        if g >= rank {
            return Err(Error::IndexOutOfRange { index: g, rank });
        }
        let mut exp = String::new();
        if chars.peek() == Some(&'^') {
            chars.next();
            if chars.peek() == Some(&'-') || chars.peek() == Some(&'+') {
                exp.push(chars.next().unwrap());
            }
            while let Some(d) = chars.peek() {
                if d.is_ascii_digit() {
                    exp.push(chars.next().unwrap());
                } else {
                    break;
                }
            }
            if exp.is_empty() || exp == "-" || exp == "+" {
                return Err(Error::Parse("missing exponent after '^'".into()));
            }
        }
        let e: BigInt = if exp.is_empty() {
            BigInt::from(1)
        } else {
            exp.parse().map_err(|_| Error::Parse(format!("bad exponent '{exp}'")))?
        };
        letters.push((g, e));
    }
    FreeWord::from_letters(letters, rank)
}

/// Render a word in the same text form `parse_word` accepts.
pub fn format_word(w: &FreeWord) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let one = BigInt::from(1);
    w.letters()
        .iter()
        .map(|(g, e)| {
            let c = (b'a' + *g as u8) as char;
            if *e == one {
                c.to_string()
            } else {
                format!("{c}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
