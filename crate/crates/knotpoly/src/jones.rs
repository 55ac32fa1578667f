//! Kauffman bracket state sum, Jones polynomial normalization, coefficient
//! extraction `V_i`, and Stoimenow's `V_1` prediction.
//!
//! The bracket is the full sum over all `2^c` smoothing states:
//! `⟨D⟩ = Σ_σ A^(a(σ)−b(σ)) · (−A²−A⁻²)^(|σ|−1)`, evaluated exactly with
//! big-integer coefficients.  States are enumerated by a bit mask (set bit =
//! B-choice) and circles counted by union-find over arcs, so one state costs
//! O(c·α).  Chunks of the mask range are evaluated concurrently and merged
//! into an (exponent, circle-count) histogram; addition is commutative, so
//! the result is bit-identical regardless of schedule or chunk size.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::diagram::{is_positive, is_split, writhe, OrientedDiagram};
use crate::error::{Error, Result};
use crate::laurent::{bracket_to_jones, lp_degrees, lp_mul, LaurentPoly, Var};
use crate::states::{a_state_graph, reduce_graph, seifert_circles};

/// Default crossing cap for the state sum (about a million states).
pub const DEFAULT_CAP: usize = 20;

/// Mask-range chunk handed to one worker; a tuning knob, not a semantic one.
const CHUNK: u64 = 1 << 13;

struct ArcDsu<'a> {
    parent: &'a mut [u32],
}

impl ArcDsu<'_> {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Histogram of states keyed by (A-exponent, circle count).
type StateTable = BTreeMap<(i64, usize), u64>;

fn merge_tables(mut left: StateTable, right: StateTable) -> StateTable {
    for (key, count) in right {
        *left.entry(key).or_insert(0) += count;
    }
    left
}

/// Arc index pairs to union at one crossing, for one smoothing choice.
type SmoothingPairs = Vec<[(u32, u32); 2]>;

/// Per-crossing arc pairs to union for the A- and B-smoothing, with arcs
/// renamed to dense indices.
fn smoothing_pairs(d: &OrientedDiagram) -> (SmoothingPairs, SmoothingPairs, usize) {
    let index_of: BTreeMap<_, _> = d
        .arc_ends()
        .keys()
        .enumerate()
        .map(|(k, &a)| (a, k as u32))
        .collect();
    let pair = |quad: &[crate::diagram::ArcId; 4], (s, t): (usize, usize)| {
        (index_of[&quad[s]], index_of[&quad[t]])
    };
    let mut pairs_a = Vec::with_capacity(d.n_crossings());
    let mut pairs_b = Vec::with_capacity(d.n_crossings());
    for x in d.crossings() {
        pairs_a.push([pair(&x.slots, (0, 1)), pair(&x.slots, (2, 3))]);
        pairs_b.push([pair(&x.slots, (0, 3)), pair(&x.slots, (1, 2))]);
    }
    (pairs_a, pairs_b, index_of.len())
}

fn state_table(d: &OrientedDiagram, chunk: u64) -> StateTable {
    let c = d.n_crossings();
    let (pairs_a, pairs_b, n_arcs) = smoothing_pairs(d);
    let total: u64 = 1 << c;
    let n_chunks = total.div_ceil(chunk);
    (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let identity: Vec<u32> = (0..n_arcs as u32).collect();
            let mut parent = identity.clone();
            let mut table = StateTable::new();
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            for mask in lo..hi {
                parent.copy_from_slice(&identity);
                let mut dsu = ArcDsu {
                    parent: &mut parent,
                };
                for i in 0..c {
                    let pairs = if mask >> i & 1 == 1 {
                        &pairs_b[i]
                    } else {
                        &pairs_a[i]
                    };
                    dsu.union(pairs[0].0, pairs[0].1);
                    dsu.union(pairs[1].0, pairs[1].1);
                }
                let circles = (0..n_arcs as u32).filter(|&a| dsu.find(a) == a).count();
                let e = c as i64 - 2 * mask.count_ones() as i64;
                *table.entry((e, circles)).or_insert(0) += 1;
            }
            table
        })
        .reduce(StateTable::new, merge_tables)
}

fn bracket_impl(d: &OrientedDiagram, cap: usize, chunk: u64) -> Result<LaurentPoly> {
    if is_split(d) {
        return Err(Error::Validation(
            "the Kauffman bracket state sum requires a non-split diagram".to_string(),
        ));
    }
    let c = d.n_crossings();
    if c > cap {
        return Err(Error::CapExceeded { crossings: c, cap });
    }
    if c >= 63 {
        // The mask is a u64; anything this size is out of reach anyway.
        return Err(Error::CapExceeded {
            crossings: c,
            cap: 62,
        });
    }
    let table = state_table(d, chunk);
    // Expand each histogram cell as count · A^e · (−A²−A⁻²)^(|σ|−1).
    let delta = LaurentPoly::from_terms(
        Var::BracketA,
        [(2i64, BigInt::from(-1)), (-2, BigInt::from(-1))],
    );
    let max_loops = table
        .keys()
        .map(|&(_, circles)| circles + d.extra_unknots())
        .max()
        .expect("state table has at least one cell");
    let mut delta_pow = Vec::with_capacity(max_loops);
    delta_pow.push(LaurentPoly::one(Var::BracketA));
    for k in 1..max_loops {
        let next = lp_mul(&delta_pow[k - 1], &delta)?;
        delta_pow.push(next);
    }
    let mut bracket = LaurentPoly::zero(Var::BracketA);
    for (&(e, circles), &count) in &table {
        let cell = lp_mul(
            &LaurentPoly::monomial(Var::BracketA, e, BigInt::from(count)),
            &delta_pow[circles + d.extra_unknots() - 1],
        )?;
        bracket = crate::laurent::lp_add(&bracket, &cell)?;
    }
    Ok(bracket)
}

/// Kauffman bracket with the default crossing cap.
pub fn kauffman_bracket(d: &OrientedDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_capped(d, DEFAULT_CAP)
}

/// Kauffman bracket of a non-split diagram with at most `cap` crossings.
pub fn kauffman_bracket_capped(d: &OrientedDiagram, cap: usize) -> Result<LaurentPoly> {
    bracket_impl(d, cap, CHUNK)
}

/// Bracket, Jones polynomial, and degree data of one diagram.
#[derive(Clone, Debug)]
pub struct JonesResult {
    pub bracket: LaurentPoly,
    pub jones: LaurentPoly,
    pub writhe: i64,
    pub n_components: usize,
    /// Minimum degree of V in t (quarter-exponents divided by 4).
    pub min_deg_t: Ratio<i64>,
    pub max_deg_t: Ratio<i64>,
}

/// Jones polynomial with the default crossing cap.
pub fn jones_polynomial(d: &OrientedDiagram) -> Result<JonesResult> {
    jones_polynomial_capped(d, DEFAULT_CAP)
}

/// Bracket plus writhe normalization: `V = (−A³)^(−w)·⟨D⟩` at `A = t^(−1/4)`.
pub fn jones_polynomial_capped(d: &OrientedDiagram, cap: usize) -> Result<JonesResult> {
    let bracket = kauffman_bracket_capped(d, cap)?;
    let w = writhe(d);
    let n = d.n_components();
    let jones = bracket_to_jones(&bracket, w, n)?;
    let (min_q, max_q) = lp_degrees(&jones)?;
    Ok(JonesResult {
        bracket,
        jones,
        writhe: w,
        n_components: n,
        min_deg_t: Ratio::new(min_q, 4),
        max_deg_t: Ratio::new(max_q, 4),
    })
}

/// Coefficient of `t^(d+i)` in `V`, where `d = min deg V`; steps are whole
/// t-powers (4 quarter-units) even on half-integer grids.  Absent terms
/// give 0.
pub fn v_coefficient(v: &LaurentPoly, i: u32) -> Result<BigInt> {
    let (min_q, _) = lp_degrees(v)?;
    Ok(v.coeff(min_q + 4 * i as i64))
}

/// Stoimenow's predicted `V₁ = (−1)^(n−1)·(s − 1 − e)` for a positive
/// non-split diagram, where `e` counts reduced A-state-graph edges.
pub fn stoimenow_v1(d: &OrientedDiagram) -> Result<i64> {
    if !is_positive(d) {
        return Err(Error::NotPositive(
            "Stoimenow's V1 prediction applies to positive diagrams".to_string(),
        ));
    }
    let reduced = reduce_graph(&a_state_graph(d)?);
    let s = seifert_circles(d).count() as i64;
    let n = d.n_components() as i64;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    Ok(sign * (s - 1 - reduced.edges.len() as i64))
}
