//! Empirical Cayley-graph coverage: breadth-first search over Mal'cev normal
//! forms of a free nilpotent quotient under a truncated simple-closed-curve
//! generating set.
//!
//! Reported radii are honest about two truncations: the generating set is
//! cut at a finite Christoffel height, and the infinite quotient is probed
//! only on a finite coordinate box. The reported `d` is therefore the
//! diameter of the box with respect to the truncated set - an upper bound
//! for the truncated-set diameter on that region and a lower-bound indicator
//! for the full-set diameter.
//!
//! BFS states are Magnus coefficient vectors (machine integers, overflow
//! checked), which determine group elements exactly and hash cheaply. The
//! per-radius merge is sorted, so reports are byte-identical across runs and
//! thread counts.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::nilpotent::{Engine, NormalForm, QuotientSpec};
use crate::surface::{christoffel, handle_embed, SurfaceSpec};
use crate::words::FreeWord;

/// Finite cut of the simple-closed-curve generating set: all handle
/// Christoffel curves of height `|p| + |q| <= height` (axis slopes and the
/// positive coprime slopes) together with their inverses, plus optional
/// extra words.
#[derive(Debug, Clone)]
pub struct TruncationSpec {
    pub height: u64,
    pub handles: Vec<usize>,
    pub extra: Vec<FreeWord>,
}

impl TruncationSpec {
    pub fn all_handles(height: u64, surface: SurfaceSpec) -> Self {
        assert!(height >= 1);
        TruncationSpec { height, handles: (1..=surface.genus).collect(), extra: Vec::new() }
    }

    /// Slope pairs in deterministic order: axes first, then by height.
    pub fn slopes(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(1i64, 0i64), (0, 1)];
        for s in 2..=self.height as i64 {
            for p in 1..s {
                let q = s - p;
                if num_integer::gcd(p, q) == 1 {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

/// Deduplicated normal forms of the truncated generators and their
/// inverses.
pub fn truncated_generators(
    spec: QuotientSpec,
    trunc: &TruncationSpec,
    surface: SurfaceSpec,
) -> Result<Vec<NormalForm>> {
    if spec.rank != surface.rank() {
        return Err(Error::RankMismatch { left: spec.rank, right: surface.rank() });
    }
    let engine = Engine::shared(spec);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |nf: NormalForm, out: &mut Vec<NormalForm>| {
        if seen.insert(nf.exponents.clone()) {
            out.push(nf);
        }
    };
    for &handle in &trunc.handles {
        for (p, q) in trunc.slopes() {
            let word = handle_embed(
                &christoffel(&BigInt::from(p), &BigInt::from(q))?,
                handle,
                surface,
            )?;
            push(engine.collect(&word)?, &mut out);
            push(engine.collect(&word.invert())?, &mut out);
        }
    }
    for w in &trunc.extra {
        push(engine.collect(w)?, &mut out);
        push(engine.collect(&w.invert())?, &mut out);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusRow {
    pub radius: u64,
    pub newly_covered: u64,
    pub cumulative: u64,
}

/// Outcome of a coverage run.
#[derive(Debug, Clone)]
pub struct DiameterReport {
    pub spec: QuotientSpec,
    pub height: u64,
    pub box_radius: u64,
    pub max_radius: u64,
    pub generator_count: usize,
    pub box_size: u64,
    pub rows: Vec<RadiusRow>,
    /// Minimal radius at which every box element was reached, if any.
    pub covering_radius: Option<u64>,
    pub states_explored: u64,
    pub budget_exceeded: bool,
    /// Wall-clock, populated only on request; excluded from fixtures.
    pub elapsed_ms: Option<u128>,
}

impl DiameterReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "rank": self.spec.rank,
            "class": self.spec.class,
            "height": self.height,
            "box_radius": self.box_radius,
            "max_radius": self.max_radius,
            "generator_count": self.generator_count,
            "box_size": self.box_size,
            "coverage": self.rows.iter().map(|r| json!({
                "radius": r.radius,
                "newly_covered": r.newly_covered,
                "cumulative": r.cumulative,
            })).collect::<Vec<_>>(),
            "covering_radius": self.covering_radius,
            "states_explored": self.states_explored,
            "budget_exceeded": self.budget_exceeded,
            "semantics": "covering_radius is the box diameter w.r.t. the height-truncated generating set: an upper bound for the truncated set on the box and a lower-bound indicator for the full simple-closed-curve set",
        });
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = json!(ms as u64);
        }
        v
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("radius,newly_covered,cumulative\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.radius, r.newly_covered, r.cumulative));
        }
        s
    }
}

/// Tunable guardrails for a BFS run.
#[derive(Debug, Clone)]
pub struct BfsOptions {
    pub max_states: u64,
    pub threads: usize,
    pub timing: bool,
}

impl Default for BfsOptions {
    fn default() -> Self {
        BfsOptions { max_states: 5_000_000, threads: 1, timing: false }
    }
}

// BFS states live in the truncated algebra with i64 coefficients; anything
// beyond this magnitude aborts the run rather than risking wraparound.
const COEFF_LIMIT: i64 = 1 << 50;

struct Algebra {
    rank: usize,
    class: usize,
    offsets: Vec<usize>,
    len: usize,
}

impl Algebra {
    fn new(spec: QuotientSpec) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0usize;
        let mut pow = 1usize;
        for _ in 0..=spec.class {
            offsets.push(total);
            total += pow;
            pow *= spec.rank;
        }
        offsets.push(total);
        Algebra { rank: spec.rank, class: spec.class, offsets, len: total }
    }

    fn one(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.len];
        v[0] = 1;
        v
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i128; self.len];
        for da in 0..=self.class {
            for ia in self.offsets[da]..self.offsets[da + 1] {
                let ca = a[ia];
                if ca == 0 {
                    continue;
                }
                let va = ia - self.offsets[da];
                for db in 0..=(self.class - da) {
                    let shift = self.rank.pow(db as u32);
                    let base = self.offsets[da + db] + va * shift;
                    for ib in self.offsets[db]..self.offsets[db + 1] {
                        let cb = b[ib];
                        if cb == 0 {
                            continue;
                        }
                        out[base + (ib - self.offsets[db])] += ca as i128 * cb as i128;
                    }
                }
            }
        }
        out.into_iter()
            .map(|x| {
                if x.abs() > COEFF_LIMIT as i128 {
                    Err(Error::BudgetExceeded("BFS coefficient overflow".into()))
                } else {
                    Ok(x as i64)
                }
            })
            .collect()
    }

    fn from_bigint(&self, coeffs: &[BigInt]) -> Result<Vec<i64>> {
        coeffs
            .iter()
            .map(|c| {
                c.to_i64()
                    .filter(|x| x.abs() <= COEFF_LIMIT)
                    .ok_or_else(|| Error::BudgetExceeded("generator coefficient overflow".into()))
            })
            .collect()
    }
}

fn generator_states(engine: &Engine, alg: &Algebra, gens: &[NormalForm]) -> Result<Vec<Vec<i64>>> {
    gens.iter()
        .map(|nf| alg.from_bigint(&engine.nf_image(nf).coeffs))
        .collect()
}

/// All box elements (every Mal'cev coordinate in `[-m, m]`) as states.
fn box_states(engine: &Engine, alg: &Algebra, m: u64) -> Result<Vec<Vec<i64>>> {
    let n = engine.basis().len();
    let side = 2 * m + 1;
    let mut out = Vec::new();
    let mut idx = vec![0u64; n];
    loop {
        let exps: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(i as i64 - m as i64)).collect();
        let nf = NormalForm { spec: engine.spec(), exponents: exps };
        out.push(alg.from_bigint(&engine.nf_image(&nf).coeffs)?);
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < side {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn expand_frontier(
    frontier: &[Vec<i64>],
    gen_states: &[Vec<i64>],
    alg: &Algebra,
    threads: usize,
) -> Result<Vec<Vec<i64>>> {
    let expand_one = |s: &Vec<i64>| -> Result<Vec<Vec<i64>>> {
        gen_states.iter().map(|g| alg.mul(s, g)).collect()
    };
    let mut new: Vec<Vec<i64>> = if threads > 1 {
        let nested: Vec<Vec<Vec<i64>>> =
            frontier.par_iter().map(expand_one).collect::<Result<_>>()?;
        nested.into_iter().flatten().collect()
    } else {
        let mut acc = Vec::new();
        for s in frontier {
            acc.extend(expand_one(s)?);
        }
        acc
    };
    // canonical merge: scheduling-independent
    new.sort_unstable();
    new.dedup();
    Ok(new)
}

/// Radius-synchronous BFS from the identity under right multiplication,
/// counting coverage of the coordinate box after each radius. Stops when
/// the box is covered, the radius budget is exhausted, or the state budget
/// trips (in which case the partial report is preserved).
pub fn bfs_coverage(
    generators: &[NormalForm],
    spec: QuotientSpec,
    box_radius: u64,
    max_radius: u64,
    height: u64,
    opts: &BfsOptions,
) -> Result<DiameterReport> {
    let start = std::time::Instant::now();
    let engine = Engine::shared(spec);
    let alg = Algebra::new(spec);
    let gen_states = generator_states(&engine, &alg, generators)?;
    let boxes = box_states(&engine, &alg, box_radius)?;
    let box_size = boxes.len() as u64;
    let mut remaining: HashSet<Vec<i64>> = boxes.into_iter().collect();

    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier = vec![alg.one()];
    visited.insert(alg.one());

    let mut rows = Vec::new();
    let mut cumulative = 0u64;
    let mut covering_radius = None;
    let mut budget_exceeded = false;

    let count_coverage = |frontier: &[Vec<i64>],
                              remaining: &mut HashSet<Vec<i64>>,
                              radius: u64,
                              cumulative: &mut u64,
                              rows: &mut Vec<RadiusRow>| {
        let mut newly = 0u64;
        for s in frontier {
            if remaining.remove(s) {
                newly += 1;
            }
        }
        *cumulative += newly;
        rows.push(RadiusRow { radius, newly_covered: newly, cumulative: *cumulative });
    };

    count_coverage(&frontier, &mut remaining, 0, &mut cumulative, &mut rows);
    if remaining.is_empty() {
        covering_radius = Some(0);
    }

    let mut radius = 0;
    while covering_radius.is_none() && radius < max_radius {
        radius += 1;
        let candidates = expand_frontier(&frontier, &gen_states, &alg, opts.threads)?;
        let next: Vec<Vec<i64>> = candidates
            .into_iter()
            .filter(|s| !visited.contains(s))
            .collect();
        if visited.len() as u64 + next.len() as u64 > opts.max_states {
            budget_exceeded = true;
            break;
        }
        for s in &next {
            visited.insert(s.clone());
        }
        count_coverage(&next, &mut remaining, radius, &mut cumulative, &mut rows);
        if remaining.is_empty() {
            covering_radius = Some(radius);
        }
        if next.is_empty() {
            break; // closure reached; nothing further is reachable
        }
        frontier = next;
    }

    Ok(DiameterReport {
        spec,
        height,
        box_radius,
        max_radius,
        generator_count: generators.len(),
        box_size,
        rows,
        covering_radius,
        states_explored: visited.len() as u64,
        budget_exceeded,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

/// BFS word-metric distances to the given targets, `None` if unreached
/// within `max_radius`.
pub fn distance_profile(
    targets: &[NormalForm],
    generators: &[NormalForm],
    spec: QuotientSpec,
    max_radius: u64,
    opts: &BfsOptions,
) -> Result<Vec<Option<u64>>> {
    let engine = Engine::shared(spec);
    let alg = Algebra::new(spec);
    let gen_states = generator_states(&engine, &alg, generators)?;
    let target_states: Vec<Vec<i64>> = targets
        .iter()
        .map(|nf| alg.from_bigint(&engine.nf_image(nf).coeffs))
        .collect::<Result<_>>()?;
    let mut dist: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier = vec![alg.one()];
    visited.insert(alg.one());
    dist.insert(alg.one(), 0);
    let mut found = target_states.iter().filter(|t| dist.contains_key(*t)).count();
    let mut radius = 0;
    while found < target_states.len() && radius < max_radius && !frontier.is_empty() {
        radius += 1;
        let candidates = expand_frontier(&frontier, &gen_states, &alg, opts.threads)?;
        let next: Vec<Vec<i64>> = candidates
            .into_iter()
            .filter(|s| !visited.contains(s))
            .collect();
        if visited.len() as u64 + next.len() as u64 > opts.max_states {
            return Err(Error::BudgetExceeded(format!(
                "state budget {} exceeded at radius {radius}",
                opts.max_states
            )));
        }
        for s in &next {
            visited.insert(s.clone());
            dist.insert(s.clone(), radius);
        }
        found = target_states.iter().filter(|t| dist.contains_key(*t)).count();
        frontier = next;
    }
    Ok(target_states.iter().map(|t| dist.get(t).copied()).collect())
}
