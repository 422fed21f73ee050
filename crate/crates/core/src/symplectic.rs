//! Explicit SL2 and block-diagonal Sp witnesses: every vector of `Z^{2n}`
//! is a sum of at most two elements of the orbit `Sp_{2n}(Z) . e_hat`,
//! where `e_hat = e_1 + e_3 + ... + e_{2n-1}`.
//!
//! The symplectic form pairs coordinates `(2i-1, 2i)` blockwise: `J` is the
//! block diagonal of `n` copies of `[[0,1],[-1,0]]`. Other conventions
//! (pairing `e_i` with `e_{n+i}`) change the matrix layout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IMat;

/// Greatest common divisor with Bezout coefficients: `a*x + b*y = g >= 0`,
/// `g = 0` only for `a = b = 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (BigInt::one(), BigInt::zero());
    let (mut y0, mut y1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let x = &x0 - &q * &x1;
        x0 = std::mem::replace(&mut x1, x);
        let y = &y0 - &q * &y1;
        y0 = std::mem::replace(&mut y1, y);
    }
    if r0.is_negative() {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// The SL2(Z) matrix `[[a, -y], [b, x]]` with first column `(a, b)`,
/// where `a*x + b*y = 1`.
pub fn sl2_with_first_column(a: &BigInt, b: &BigInt) -> Result<IMat> {
    let (g, x, y) = extended_gcd(a, b);
    if !g.is_one() {
        return Err(Error::NonCoprime { a: a.to_string(), b: b.to_string() });
    }
    Ok(IMat::from_rows(vec![
        vec![a.clone(), -y],
        vec![b.clone(), x],
    ]))
}

/// The split `(a, b) = (a-1, 1) + (1, b-1)`; both parts are coprime pairs.
pub fn split_pair(a: &BigInt, b: &BigInt) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    (
        (a - BigInt::one(), BigInt::one()),
        (BigInt::one(), b - BigInt::one()),
    )
}

/// The block-diagonal form `J`.
pub fn standard_form(dim: usize) -> IMat {
    assert!(dim % 2 == 0);
    let mut j = IMat::zero(dim, dim);
    for i in 0..dim / 2 {
        j[(2 * i, 2 * i + 1)] = BigInt::one();
        j[(2 * i + 1, 2 * i)] = -BigInt::one();
    }
    j
}

/// `e_hat = e_1 + e_3 + ... + e_{2n-1}` (0-based: ones in even slots).
pub fn e_hat(dim: usize) -> Vec<BigInt> {
    assert!(dim % 2 == 0);
    (0..dim)
        .map(|i| if i % 2 == 0 { BigInt::one() } else { BigInt::zero() })
        .collect()
}

/// Exact check of `M^T J M = J`.
pub fn is_symplectic(m: &IMat) -> Result<bool> {
    if m.rows != m.cols || m.rows % 2 != 0 || m.rows == 0 {
        return Err(Error::BadMatrixShape);
    }
    let j = standard_form(m.rows);
    Ok(m.transpose().mul(&j).mul(m) == j)
}

/// If every consecutive pair of `v` is coprime, a block-diagonal symplectic
/// matrix mapping `e_hat` to `v`; otherwise `None`.
pub fn block_orbit_witness(v: &[BigInt]) -> Option<IMat> {
    assert!(v.len() % 2 == 0 && !v.is_empty());
    let n = v.len() / 2;
    let mut m = IMat::zero(v.len(), v.len());
    for i in 0..n {
        let (a, b) = (&v[2 * i], &v[2 * i + 1]);
        let block = sl2_with_first_column(a, b).ok()?;
        for r in 0..2 {
            for c in 0..2 {
                m[(2 * i + r, 2 * i + c)] = block[(r, c)].clone();
            }
        }
    }
    Some(m)
}

/// A decomposition `v = sum_i M_i . e_hat` with at most two terms, each
/// `M_i` symplectic.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub target: Vec<BigInt>,
    pub terms: Vec<IMat>,
}

impl Decomposition {
    /// Exact reconstruction check.
    pub fn verify(&self) -> bool {
        let dim = self.target.len();
        let mut sum = vec![BigInt::zero(); dim];
        for m in &self.terms {
            if m.rows != dim || !is_symplectic(m).unwrap_or(false) {
                return false;
            }
            for (s, x) in sum.iter_mut().zip(m.mul_vec(&e_hat(dim))) {
                *s += x;
            }
        }
        sum == self.target
    }
}

/// Write `v` as a sum of at most two orbit elements: zero terms for the zero
/// vector, one when every block pair is coprime, otherwise the two-term
/// split `(a, b) = (a-1, 1) + (1, b-1)` applied per block.
pub fn decompose(v: &[BigInt]) -> Decomposition {
    assert!(v.len() % 2 == 0 && !v.is_empty(), "dimension must be even and positive");
    if v.iter().all(|x| x.is_zero()) {
        return Decomposition { target: v.to_vec(), terms: vec![] };
    }
    if let Some(m) = block_orbit_witness(v) {
        return Decomposition { target: v.to_vec(), terms: vec![m] };
    }
    let n = v.len() / 2;
    let mut first = Vec::with_capacity(v.len());
    let mut second = Vec::with_capacity(v.len());
    for i in 0..n {
        let ((a1, b1), (a2, b2)) = split_pair(&v[2 * i], &v[2 * i + 1]);
        first.extend([a1, b1]);
        second.extend([a2, b2]);
    }
    let ma = block_orbit_witness(&first).expect("split parts are coprime");
    let mb = block_orbit_witness(&second).expect("split parts are coprime");
    Decomposition { target: v.to_vec(), terms: vec![ma, mb] }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
