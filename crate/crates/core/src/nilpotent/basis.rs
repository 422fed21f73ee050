//! Hall basis of basic commutators up to a weight cutoff.
//!
//! The basis is the classical Hall set built over the following total order:
//! elements of smaller weight come first; among generators the comparison
//! order is *reverse* index (so generator 0 is the greatest weight-1 element,
//! which orients the weight-2 elements as `[a, b]` rather than `[b, a]`);
//! equal-weight composites compare by construction position. A pair `[u, v]`
//! is admissible when `u > v` and, if `u = [x, y]`, additionally `y <= v`.
//! This yields left-normed basic commutators at low weights, e.g. for rank 2:
//! `a, b, [a,b], [[a,b],a], [[a,b],b], ...`
//!
//! The *serialized* list order is weight-major with generators listed by
//! index and composites in construction order; exponent vectors in fixtures
//! refer to this order.

use num_bigint::BigInt;
use num_traits::One;

use super::magnus::{MonoTable, Poly};
use crate::words::FreeWord;

/// The ambient free rank and nilpotency class. The class-`c` quotient is the
/// free group modulo `gamma_{c+1}` of the lower central series
/// (`gamma_1` = whole group, `gamma_{w+1} = [group, gamma_w]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientSpec {
    pub rank: usize,
    pub class: usize,
}

impl QuotientSpec {
    pub fn new(rank: usize, class: usize) -> Self {
        assert!(rank >= 1, "rank must be >= 1");
        assert!(class >= 1, "class must be >= 1");
        QuotientSpec { rank, class }
    }
}

/// A basic commutator: a generator, or an admissible pair of earlier basis
/// elements referenced by position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Gen(usize),
    Comm(usize, usize),
}

#[derive(Debug, Clone)]
pub struct BasicCommutator {
    pub node: Node,
    pub weight: usize,
}

/// Ordered list of basic commutators of weight `<= class`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    pub spec: QuotientSpec,
    elems: Vec<BasicCommutator>,
    weight_starts: Vec<usize>,
}

impl HallBasis {
    pub fn build(spec: QuotientSpec) -> Self {
        let mut elems: Vec<BasicCommutator> = (0..spec.rank)
            .map(|i| BasicCommutator { node: Node::Gen(i), weight: 1 })
            .collect();
        let mut weight_starts = vec![0usize, 0];
        for w in 2..=spec.class {
            weight_starts.push(elems.len());
            let prev_len = elems.len();
            for u in 0..prev_len {
                for v in 0..prev_len {
                    if elems[u].weight + elems[v].weight != w {
                        continue;
                    }
                    if !Self::greater(&elems, u, v) {
                        continue;
                    }
                    if let Node::Comm(_, y) = elems[u].node {
                        // y <= v
                        if Self::greater(&elems, y, v) {
                            continue;
                        }
                    }
                    elems.push(BasicCommutator { node: Node::Comm(u, v), weight: w });
                }
            }
        }
        weight_starts.push(elems.len());
        HallBasis { spec, elems, weight_starts }
    }

    /// Hall comparison: `i > j`?
    fn greater(elems: &[BasicCommutator], i: usize, j: usize) -> bool {
        let (wi, wj) = (elems[i].weight, elems[j].weight);
        if wi != wj {
            return wi > wj;
        }
        if wi == 1 {
            // reverse index order among generators
            let (Node::Gen(a), Node::Gen(b)) = (elems[i].node, elems[j].node) else {
                unreachable!()
            };
            return a < b;
        }
        i > j
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elems
    }

    pub fn weight(&self, i: usize) -> usize {
        self.elems[i].weight
    }

    /// Index range of the weight-`w` block.
    pub fn weight_range(&self, w: usize) -> std::ops::Range<usize> {
        assert!(w >= 1 && w <= self.spec.class);
        self.weight_starts[w]..self.weight_starts[w + 1]
    }

    /// Basis sizes per weight `1..=class`.
    pub fn sizes_per_weight(&self) -> Vec<usize> {
        (1..=self.spec.class)
            .map(|w| self.weight_range(w).len())
            .collect()
    }

    /// The free-group word realizing element `i`.
    pub fn word(&self, i: usize) -> FreeWord {
        match self.elems[i].node {
            Node::Gen(g) => FreeWord::generator(g, self.spec.rank).unwrap(),
            Node::Comm(u, v) => self.word(u).commutator(&self.word(v)).unwrap(),
        }
    }

    /// Homogeneous Lie element of element `i` in the associative algebra
    /// (generators map to letters, pairs to `UV - VU`).
    pub fn lie_expansion(&self, i: usize, t: &MonoTable) -> Poly {
        match self.elems[i].node {
            Node::Gen(g) => {
                let mut p = Poly::zero(t);
                p.coeffs[t.generator_monomial(g)] = BigInt::one();
                p
            }
            Node::Comm(u, v) => self
                .lie_expansion(u, t)
                .bracket(&self.lie_expansion(v, t), t),
        }
    }

    /// Bracket notation, e.g. `[[a,b],a]`.
    pub fn label(&self, i: usize) -> String {
        match self.elems[i].node {
            Node::Gen(g) => ((b'a' + g as u8) as char).to_string(),
            Node::Comm(u, v) => format!("[{},{}]", self.label(u), self.label(v)),
        }
    }
}

/// Witt number: the weight-`w` basis size `(1/w) sum_{d|w} mu(d) r^{w/d}`.
pub fn witt_number(rank: u64, w: u64) -> u64 {
    let mut sum: i128 = 0;
    for d in 1..=w {
        if w % d != 0 {
            continue;
        }
        sum += i128::from(moebius(d)) * (rank as i128).pow((w / d) as u32);
    }
    (sum / w as i128) as u64
}

fn moebius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}
