//! Commutator collection: Mal'cev normal forms in free nilpotent quotients.
//!
//! A word is collected by taking its Magnus image and peeling it weight by
//! weight: the degree-`w` component of the residual is a Lie element whose
//! integer coordinates over the weight-`w` basic commutators are the
//! exponents of that block; dividing out the block leaves a residual one
//! weight deeper. The per-weight linear systems are solved exactly and their
//! Smith forms are cached at engine construction, so collection is pure and
//! shareable afterwards.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::basis::{HallBasis, QuotientSpec};
use super::magnus::{word_image, MonoTable, Poly};
use crate::error::{Error, Result};
use crate::linalg::{self, IMat, Smith};
use crate::words::{generalized_commutator, FreeWord};

/// Mal'cev coordinates: the exponent vector of the unique normal form
/// `prod b_i^{e_i}` over the Hall basis. Two elements of the quotient are
/// equal iff their vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub spec: QuotientSpec,
    pub exponents: Vec<BigInt>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero())
    }
}

/// Collection engine for one quotient spec. Immutable after construction.
pub struct Engine {
    basis: HallBasis,
    table: MonoTable,
    basis_images: Vec<Poly>,
    // per weight w: Smith form of the (monomials x basis elements) Lie
    // expansion matrix, used to read exponents off a homogeneous component
    weight_solvers: Vec<(Smith, usize)>,
}

impl Engine {
    pub fn new(spec: QuotientSpec) -> Self {
        let basis = HallBasis::build(spec);
        let table = MonoTable::new(spec.rank, spec.class);
        let basis_images: Vec<Poly> = (0..basis.len())
            .map(|i| word_image(&basis.word(i), &table))
            .collect();
        let mut weight_solvers = Vec::with_capacity(spec.class);
        for w in 1..=spec.class {
            let cols: Vec<Vec<BigInt>> = basis
                .weight_range(w)
                .map(|i| basis.lie_expansion(i, &table).homogeneous(w, &table))
                .collect();
            let ncols = cols.len();
            let m = IMat::from_columns(cols);
            weight_solvers.push((linalg::smith(&m), ncols));
        }
        Engine { basis, table, basis_images, weight_solvers }
    }

    /// Shared, memoized engine per spec.
    pub fn shared(spec: QuotientSpec) -> Arc<Engine> {
        static CACHE: OnceLock<Mutex<HashMap<QuotientSpec, Arc<Engine>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(spec)
            .or_insert_with(|| Arc::new(Engine::new(spec)))
            .clone()
    }

    pub fn spec(&self) -> QuotientSpec {
        self.basis.spec
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn table(&self) -> &MonoTable {
        &self.table
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm { spec: self.spec(), exponents: vec![BigInt::zero(); self.basis.len()] }
    }

    /// Normal form of the image of a word in the quotient.
    pub fn collect(&self, w: &FreeWord) -> Result<NormalForm> {
        if w.rank() != self.spec().rank {
            return Err(Error::RankMismatch { left: w.rank(), right: self.spec().rank });
        }
        Ok(self.extract(word_image(w, &self.table)))
    }

    fn extract(&self, mut residual: Poly) -> NormalForm {
        let spec = self.spec();
        let mut exps = vec![BigInt::zero(); self.basis.len()];
        for w in 1..=spec.class {
            let delta = residual.homogeneous(w, &self.table);
            let (solver, ncols) = &self.weight_solvers[w - 1];
            let coeffs = linalg::solve_with(solver, *ncols, &delta)
                .expect("degree-w residual of a group element is a Lie element");
            let range = self.basis.weight_range(w);
            let mut block = Poly::one(&self.table);
            for (j, e) in range.clone().zip(coeffs) {
                if !e.is_zero() {
                    block = block.mul(&self.basis_images[j].pow(&e, &self.table), &self.table);
                    exps[j] = e;
                }
            }
            residual = block.invert(&self.table).mul(&residual, &self.table);
        }
        debug_assert!(residual.is_one());
        NormalForm { spec, exponents: exps }
    }

    /// Magnus image of a normal form (the product of basis powers).
    pub fn nf_image(&self, x: &NormalForm) -> Poly {
        let mut acc = Poly::one(&self.table);
        for (j, e) in x.exponents.iter().enumerate() {
            if !e.is_zero() {
                acc = acc.mul(&self.basis_images[j].pow(e, &self.table), &self.table);
            }
        }
        acc
    }

    pub fn nf_multiply(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
        let s = self.spec();
        if x.spec != s || y.spec != s {
            let o = if x.spec != s { x.spec } else { y.spec };
            return Err(Error::SpecMismatch { r1: s.rank, c1: s.class, r2: o.rank, c2: o.class });
        }
        Ok(self.extract(self.nf_image(x).mul(&self.nf_image(y), &self.table)))
    }

    pub fn nf_invert(&self, x: &NormalForm) -> NormalForm {
        self.extract(self.nf_image(x).invert(&self.table))
    }

    /// Smallest weight carrying a nonzero exponent; `class + 1` for the
    /// identity. The word lies in `gamma_m` iff the return value is `>= m`.
    pub fn weight_filtration_level(&self, w: &FreeWord) -> Result<usize> {
        let nf = self.collect(w)?;
        Ok(self.nf_filtration_level(&nf))
    }

    pub fn nf_filtration_level(&self, nf: &NormalForm) -> usize {
        for w in 1..=self.spec().class {
            if self.basis.weight_range(w).any(|j| !nf.exponents[j].is_zero()) {
                return w;
            }
        }
        self.spec().class + 1
    }

    /// Weight-`m` coordinate block of a word with no lower-weight content.
    pub fn graded_image(&self, w: &FreeWord, m: usize) -> Result<Vec<BigInt>> {
        assert!(m >= 1 && m <= self.spec().class);
        let nf = self.collect(w)?;
        if self.nf_filtration_level(&nf) < m {
            return Err(Error::WeightTooLow { weight: m });
        }
        Ok(self.basis.weight_range(m).map(|j| nf.exponents[j].clone()).collect())
    }
}

/// Equality of images in the class-`n` quotient.
pub fn equal_mod(u: &FreeWord, v: &FreeWord, n: usize) -> Result<bool> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch { left: u.rank(), right: v.rank() });
    }
    let engine = Engine::shared(QuotientSpec::new(u.rank(), n));
    Ok(engine.collect(u)? == engine.collect(v)?)
}

/// Check the power-shift identity for an `m`-entry generalized commutator:
/// `[a1,...,am]^k` and `[a1^k, a2, ..., am]` have equal images in the
/// class-`m` quotient (their quotient lies in `gamma_{m+1}`).
pub fn verify_power_shift(args: &[FreeWord], k: &BigInt) -> Result<bool> {
    if args.len() < 2 {
        return Err(Error::EmptyArgumentList);
    }
    let lhs = generalized_commutator(args)?.pow(k);
    let mut shifted = args.to_vec();
    shifted[0] = shifted[0].pow(k);
    let rhs = generalized_commutator(&shifted)?;
    equal_mod(&lhs, &rhs, args.len())
}
