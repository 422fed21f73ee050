//! Exact integer matrices and Smith normal form.
//!
//! Everything is `BigInt`; there is no floating point in this crate. The
//! Smith form tracks both transformation matrices so that linear systems
//! over the integers can be solved exactly, and pivot choices are fixed so
//! that results are deterministic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<BigInt>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `U * A * V = S` with `U`, `V` unimodular and `S`
/// diagonal with each diagonal entry dividing the next.
pub struct Smith {
    pub s: IMat,
    pub u: IMat,
    pub v: IMat,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows.min(self.s.cols);
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Nonzero elementary divisors.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

/// Compute the Smith normal form. Pivot choice: the entry of smallest
/// absolute value, earliest in row-major order, in the remaining block.
pub fn smith(a: &IMat) -> Smith {
    let mut s = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = s.rows.min(s.cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = pick_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // Clear the pivot column.
            let mut dirty = false;
            for i in (t + 1)..s.rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s[(i, t)].is_zero() {
                    // Remainder left; swap it up to shrink the pivot.
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in (t + 1)..s.cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !s[(t, j)].is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // Divisibility chain: fold any non-multiple into the pivot block.
        let mut again = false;
        for i in (t + 1)..s.rows {
            for j in (t + 1)..s.cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    let one = BigInt::from(1);
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    again = true;
                    break;
                }
            }
            if again {
                break;
            }
        }
        if again {
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { s, u, v }
}

fn pick_pivot(s: &IMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            if s[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if s[(i, j)].abs() < s[(bi, bj)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Solve `A x = b` exactly over the integers via the Smith form. Returns
/// `None` when `b` is not in the column lattice of `A`. The solution is the
/// canonical one with all free Smith coordinates set to zero.
pub fn solve(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let sm = smith(a);
    solve_with(&sm, a.cols, b)
}

/// Solve using a precomputed Smith form of the same matrix.
pub fn solve_with(sm: &Smith, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = sm.u.mul_vec(b);
    let n = sm.s.rows.min(sm.s.cols);
    let mut y = vec![BigInt::zero(); cols];
    for (i, ub_i) in ub.iter().enumerate() {
        let d = if i < n { sm.s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ub_i.is_zero() {
                return None;
            }
        } else {
            if !(ub_i % &d).is_zero() {
                return None;
            }
            y[i] = ub_i / &d;
        }
    }
    Some(sm.v.mul_vec(&y))
}
