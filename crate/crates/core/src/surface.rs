//! Punctured-surface instantiation: simple-closed-curve representatives via
//! Christoffel words on handle tori, the homology map, and the per-handle
//! abelian section with at most two curves per handle.
//!
//! A genus-`g` surface with `p >= 1` punctures has free fundamental group of
//! rank `2g + p - 1`; the first `2g` generators are the handle pairs
//! `(a_1, b_1, ..., a_g, b_g)` and carry the homology coordinates, the
//! remaining generators are puncture loops and map to zero.
//!
//! Sign convention for slopes (documented table):
//!   - `p, q > 0`: the lower Christoffel word of slope `q/p` in `a`, `b`.
//!   - axis: `(±1, 0) -> a^{±1}`, `(0, ±1) -> b^{±1}`.
//!   - `p < 0 < q`: reflect `a -> a^{-1}` in the word for `(-p, q)`.
//!   - `q < 0 < p`: reflect `b -> b^{-1}` in the word for `(p, -q)`.
//!   - `p, q < 0`: the inverse of the word for `(-p, -q)`.
//! In every case the word abelianizes to exactly `(p, q)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symplectic::{gcd, split_pair};
use crate::words::FreeWord;

/// A surface of finite type with at least one puncture (free fundamental
/// group).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize, punctures: usize) -> Self {
        assert!(genus >= 1, "genus must be >= 1");
        assert!(punctures >= 1, "need at least one puncture (free case)");
        SurfaceSpec { genus, punctures }
    }

    /// Rank of the free fundamental group: `2g + p - 1`.
    pub fn rank(&self) -> usize {
        2 * self.genus + self.punctures - 1
    }
}

/// A simple-closed-curve representative living in one handle torus.
#[derive(Debug, Clone)]
pub struct CurveWord {
    /// Embedded word in the ambient rank `2g + p - 1`.
    pub word: FreeWord,
    /// Handle index in `[1, g]`.
    pub handle: usize,
    /// Slope pair; coprime, or an axis case.
    pub slope: (BigInt, BigInt),
}

/// Christoffel word of slope `(p, q)` in the rank-2 free group, signs per
/// the module convention.
pub fn christoffel(p: &BigInt, q: &BigInt) -> Result<FreeWord> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::NonCoprime { a: "0".into(), b: "0".into() });
    }
    if !gcd(p, q).is_one() {
        return Err(Error::NonCoprime { a: p.to_string(), b: q.to_string() });
    }
    if p.is_negative() && q.is_negative() {
        return Ok(christoffel(&-p, &-q)?.invert());
    }
    let sign_a: i64 = if p.is_negative() { -1 } else { 1 };
    let sign_b: i64 = if q.is_negative() { -1 } else { 1 };
    let pa = p.abs();
    let qa = q.abs();
    // lower lattice path under the segment (0,0)-(pa,qa); at step k the word
    // takes letter b exactly when floor((k+1) qa / (pa+qa)) increments
    let total = &pa + &qa;
    let mut letters = Vec::new();
    let mut prev = BigInt::zero();
    let mut k = BigInt::zero();
    while &k < &total {
        let next = (&k + 1) * &qa / &total;
        if next == prev {
            letters.push((0usize, BigInt::from(sign_a)));
        } else {
            letters.push((1usize, BigInt::from(sign_b)));
        }
        prev = next;
        k += 1;
    }
    FreeWord::from_letters(letters, 2)
}

/// Substitute the rank-2 letters into handle `i`: `a -> a_i`, `b -> b_i`.
pub fn handle_embed(w: &FreeWord, handle: usize, spec: SurfaceSpec) -> Result<FreeWord> {
    if handle < 1 || handle > spec.genus {
        return Err(Error::HandleOutOfRange { handle, genus: spec.genus });
    }
    if w.rank() != 2 {
        return Err(Error::RankMismatch { left: w.rank(), right: 2 });
    }
    let base = 2 * (handle - 1);
    FreeWord::from_letters(
        w.letters().iter().map(|(g, e)| (base + g, e.clone())),
        spec.rank(),
    )
}

/// Homology class in `Z^{2g}`: exponent sums on the handle generators;
/// puncture generators map to zero.
pub fn homology(w: &FreeWord, spec: SurfaceSpec) -> Vec<BigInt> {
    let mut v = w.abelianize();
    v.truncate(2 * spec.genus);
    v
}

/// Write `h` as the homology of a product of at most `2g` curves: per
/// handle, a primitive pair gives one Christoffel curve, anything else two
/// via the split `(a, b) = (a-1, 1) + (1, b-1)`.
pub fn scc_section(h: &[BigInt], spec: SurfaceSpec) -> Result<Vec<CurveWord>> {
    if h.len() != 2 * spec.genus {
        return Err(Error::RankMismatch { left: h.len(), right: 2 * spec.genus });
    }
    let mut out = Vec::new();
    for i in 0..spec.genus {
        let (x, y) = (&h[2 * i], &h[2 * i + 1]);
        if x.is_zero() && y.is_zero() {
            continue;
        }
        if gcd(x, y).is_one() {
            out.push(curve(x.clone(), y.clone(), i + 1, spec)?);
        } else {
            let ((a1, b1), (a2, b2)) = split_pair(x, y);
            out.push(curve(a1, b1, i + 1, spec)?);
            out.push(curve(a2, b2, i + 1, spec)?);
        }
    }
    Ok(out)
}

fn curve(p: BigInt, q: BigInt, handle: usize, spec: SurfaceSpec) -> Result<CurveWord> {
    let word = handle_embed(&christoffel(&p, &q)?, handle, spec)?;
    Ok(CurveWord { word, handle, slope: (p, q) })
}
