//! Seeded construction of Balanced and Burdened positive diagrams.
//!
//! Balanced diagrams are grown leaf by leaf: starting from the 0-crossing
//! unknot, each step grafts a fresh A-circle onto an existing one with a
//! positive 2-crossing band.  Burdened diagrams widen one matching pair's
//! band with extra positive crossings (the inverse of a balancing
//! sequence).  The band templates are PD rewrites; every public operation
//! re-validates its postconditions with the state engine and fails loudly
//! rather than emit a malformed diagram.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{
    is_positive, is_split, orient_with_ids, renumber, ArcId, CrossingId, OrientedDiagram,
};
use crate::error::{Error, Result};
use crate::states::{
    all_b_circles, classify_diagram, matching_pairs, seifert_circles, state_circles, DiagramClass,
    MatchingPair, StateVector,
};

/// Positive-band fixture whose reduced A-state graph is a 4-cycle: four
/// Seifert circles in a necklace, one positive crossing joining each
/// adjacent pair.  Positive and planar but Neither (the reduced graph is
/// not a tree), with a nonzero Stoimenow prediction `V₁ = 1`.
pub const CYCLIC_FIXTURE_PD: &str = "X[4,3,2,1];X[3,4,5,6];X[8,7,6,5];X[7,8,1,2]";

/// Multiplier/increment pair of Knuth's MMIX linear congruential generator.
const LCG_MUL: u64 = 6364136223846793005;
const LCG_ADD: u64 = 1442695040888963407;

/// Deterministic 64-bit linear congruential generator.  One draw advances
/// `state ← state·6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)` and
/// yields the top 31 bits (`state >> 33`), so corpora are reproducible from
/// the seed alone.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    /// Next pseudo-random draw in `0..2³¹`.
    pub fn next_draw(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
        self.state >> 33
    }
}

/// Where to graft a new leaf circle: an A-circle of the current diagram and
/// two arc positions on it (equal positions mean the band bites one arc
/// twice).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraftSpec {
    pub target_circle: usize,
    pub arc_x: ArcId,
    pub arc_y: ArcId,
}

fn occurrences_in_scan_order(quads: &[[ArcId; 4]]) -> BTreeMap<ArcId, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<ArcId, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, quad) in quads.iter().enumerate() {
        for (j, &a) in quad.iter().enumerate() {
            occ.entry(a).or_default().push((i, j));
        }
    }
    occ
}

/// Genus of the closed surface carrying the embedding implied by the PD
/// rotation system (slot order is the cyclic order around each crossing):
/// faces are traced by turning to the next slot counterclockwise, then
/// `2 − 2g = V − E + F` with `V = c`, `E = 2c`.  Planar diagrams give 0.
/// Assumes a connected shadow.
fn rotation_genus(quads: &[[ArcId; 4]]) -> i64 {
    if quads.is_empty() {
        return 0;
    }
    let occ = occurrences_in_scan_order(quads);
    // A directed half-edge is (arc, end index into its occurrence list).
    let mut seen: BTreeSet<(ArcId, usize)> = BTreeSet::new();
    let mut faces = 0i64;
    for &a in occ.keys() {
        for te in 0..2 {
            if seen.contains(&(a, te)) {
                continue;
            }
            faces += 1;
            let mut cur = (a, te);
            while seen.insert(cur) {
                let (arc, to_end) = cur;
                let (i, j) = occ[&arc][to_end];
                let j2 = (j + 1) % 4;
                let a2 = quads[i][j2];
                let k = occ[&a2]
                    .iter()
                    .position(|&p| p == (i, j2))
                    .expect("slot occurs in its own arc's list");
                cur = (a2, 1 - k);
            }
        }
    }
    let v = quads.len() as i64;
    let e = 2 * v;
    (2 - (v - e + faces)) / 2
}

/// Arc labels lying on one A-circle, ascending.
fn arcs_on_circle(d: &OrientedDiagram, circle: usize) -> Result<Vec<ArcId>> {
    let dec = state_circles(d, &StateVector::all_a(d))?;
    if circle >= dec.count() {
        return Err(Error::InvalidGraft(format!("no A-circle {circle}")));
    }
    let arcs: BTreeSet<ArcId> = dec
        .slots_on(circle)
        .into_iter()
        .map(|(i, j)| d.crossings()[i].slots[j as usize])
        .collect();
    if arcs.is_empty() {
        return Err(Error::InvalidGraft(format!(
            "A-circle {circle} is a crossingless unknot; nothing to graft onto"
        )));
    }
    Ok(arcs.into_iter().collect())
}

/// The band template: splices two positive crossings into the arcs at
/// `spec`, without validation.  Returns quads, stable ids, extra unknots.
fn raw_graft(
    d: &OrientedDiagram,
    spec: &GraftSpec,
) -> Result<(Vec<[ArcId; 4]>, Vec<CrossingId>, usize)> {
    if d.n_crossings() == 0 {
        // Grafting onto the bare unknot produces the positive Hopf diagram;
        // the unknot itself has no arcs, so the positions are moot.
        if spec.target_circle != 0 {
            return Err(Error::InvalidGraft(format!(
                "no A-circle {} on the 0-crossing unknot",
                spec.target_circle
            )));
        }
        return Ok((
            vec![[1, 3, 2, 4], [3, 1, 4, 2]],
            vec![0, 1],
            d.extra_unknots() - 1,
        ));
    }
    let arcs = arcs_on_circle(d, spec.target_circle)?;
    let (u, v) = (spec.arc_x, spec.arc_y);
    if !arcs.contains(&u) || !arcs.contains(&v) {
        return Err(Error::InvalidGraft(format!(
            "arcs ({u}, {v}) do not both lie on A-circle {}",
            spec.target_circle
        )));
    }
    let mut quads = d.quads();
    let mut ids: Vec<CrossingId> = d.crossings().iter().map(|x| x.id).collect();
    let max_label = *d.arc_ends().keys().last().expect("nonempty diagram");
    let next_id = ids.iter().max().expect("nonempty diagram") + 1;
    // Fresh labels f1/f2 re-close the cut arcs, f3/f4 run around the leaf.
    let (f1, f2, f3, f4) = (max_label + 1, max_label + 2, max_label + 3, max_label + 4);
    let head_u = d.arc_ends()[&u].head;
    quads[head_u.crossing][head_u.slot as usize] = if u == v { f2 } else { f1 };
    if u != v {
        let head_v = d.arc_ends()[&v].head;
        quads[head_v.crossing][head_v.slot as usize] = f2;
        quads.push([f3, f4, f1, u]);
        quads.push([f4, f3, f2, v]);
    } else {
        quads.push([f3, f4, f1, u]);
        quads.push([f4, f3, f2, f1]);
    }
    ids.push(next_id);
    ids.push(next_id + 1);
    Ok((quads, ids, d.extra_unknots()))
}

/// Arc pairs `(u, v)` on the target circle whose graft stays planar, in
/// ascending nested order.  Never empty for a planar input: biting one arc
/// twice (`u = v`) always preserves planarity.
pub(crate) fn graftable_pairs(
    d: &OrientedDiagram,
    target_circle: usize,
) -> Result<Vec<(ArcId, ArcId)>> {
    if d.n_crossings() == 0 {
        return Ok(Vec::new());
    }
    let arcs = arcs_on_circle(d, target_circle)?;
    let mut ok = Vec::new();
    for &u in &arcs {
        for &v in &arcs {
            let spec = GraftSpec {
                target_circle,
                arc_x: u,
                arc_y: v,
            };
            let (quads, _ids, _extra) = raw_graft(d, &spec)?;
            if rotation_genus(&renumber(&quads)) == 0 {
                ok.push((u, v));
            }
        }
    }
    Ok(ok)
}

/// Grafts a leaf A-circle onto a Balanced diagram with a positive
/// 2-crossing band, then re-validates: the result must be planar, positive,
/// non-split, Balanced, with one more Seifert circle, the two new crossings
/// forming a matching pair on a leaf of the reduced tree, and `n` and `|B|`
/// moving by the same ±1.
pub fn graft_leaf(d: &OrientedDiagram, spec: &GraftSpec) -> Result<OrientedDiagram> {
    if classify_diagram(d)? != DiagramClass::Balanced {
        return Err(Error::NotBalanced(
            "graft_leaf requires a Balanced diagram".to_string(),
        ));
    }
    let (quads, ids, extra) = raw_graft(d, spec)?;
    let new_ids = [ids[ids.len() - 2], ids[ids.len() - 1]];
    let quads = renumber(&quads);
    let result = orient_with_ids(quads, ids, extra)?;
    let fail = |what: &str| {
        Err(Error::InvalidGraft(format!(
            "graft at circle {} arcs ({}, {}) {what}",
            spec.target_circle, spec.arc_x, spec.arc_y
        )))
    };
    if rotation_genus(&result.quads()) != 0 {
        return fail("yields a non-planar diagram");
    }
    if !is_positive(&result) || is_split(&result) {
        return fail("breaks positivity or connectivity");
    }
    if classify_diagram(&result)? != DiagramClass::Balanced {
        return fail("is not Balanced");
    }
    if result.n_crossings() != d.n_crossings() + 2 {
        return fail("has the wrong crossing count");
    }
    if seifert_circles(&result).count() != seifert_circles(d).count() + 1 {
        return fail("does not add exactly one Seifert circle");
    }
    let dn = result.n_components() as i64 - d.n_components() as i64;
    let db = all_b_circles(&result).count() as i64 - all_b_circles(d).count() as i64;
    if dn.abs() != 1 || dn != db {
        return fail("moves n and |B| inconsistently");
    }
    let pairs = matching_pairs(&result)?;
    let Some(pair) = pairs.iter().find(|p| p.crossings == new_ids) else {
        return fail("does not leave the new crossings as a matching pair");
    };
    // One endpoint of the new band must be a leaf of the reduced tree: a
    // circle whose only edge is the new pair itself.
    let degree = |c: usize| {
        pairs
            .iter()
            .filter(|p| p.circles.0 == c || p.circles.1 == c)
            .count()
    };
    if degree(pair.circles.0) != 1 && degree(pair.circles.1) != 1 {
        return fail("does not attach the new circle as a leaf");
    }
    Ok(result)
}

/// Deterministic Balanced diagram with `k` A-circles: `k−1` grafts whose
/// targets and arc positions come from the seeded [`Lcg`].  The first graft
/// (unknot to Hopf) is forced and draws nothing.
pub fn random_balanced(k: usize, seed: u64) -> OrientedDiagram {
    assert!(k >= 1, "a Balanced diagram has at least one A-circle");
    let mut rng = Lcg::new(seed);
    let mut d = orient_with_ids(Vec::new(), Vec::new(), 1).expect("unknot diagram");
    for _ in 0..k - 1 {
        let spec = if d.n_crossings() == 0 {
            GraftSpec {
                target_circle: 0,
                arc_x: 0,
                arc_y: 0,
            }
        } else {
            let count = state_circles(&d, &StateVector::all_a(&d))
                .expect("generated diagram decomposes")
                .count();
            let target = (rng.next_draw() % count as u64) as usize;
            let pairs = graftable_pairs(&d, target).expect("generated diagram grafts");
            assert!(!pairs.is_empty(), "same-arc grafts keep the list nonempty");
            let (u, v) = pairs[rng.next_draw() as usize % pairs.len()];
            GraftSpec {
                target_circle: target,
                arc_x: u,
                arc_y: v,
            }
        };
        d = graft_leaf(&d, &spec).expect("validated graft position");
    }
    d
}

/// Widens one matching pair's band with `extra` additional positive
/// crossings; the inverse of smoothing a balancing sequence.  The result
/// keeps the reduced tree (one multiplicity grows from 2 to `2+extra`) and
/// its balancing sequence has length exactly `extra`.
pub fn inflate_pair(
    d: &OrientedDiagram,
    pair: &MatchingPair,
    extra: usize,
) -> Result<OrientedDiagram> {
    let pairs = matching_pairs(d)?;
    if !pairs.iter().any(|p| p == pair) {
        return Err(Error::InvalidPair(format!(
            "crossings {:?} do not form a matching pair of this diagram",
            pair.crossings
        )));
    }
    let target = *pair.crossings.iter().min().expect("pair has two crossings");
    let idx = d.crossing_index(target).expect("validated pair crossing");
    let mut quads = d.quads();
    let mut ids: Vec<CrossingId> = d.crossings().iter().map(|x| x.id).collect();
    let first_id = ids.iter().max().map_or(0, |m| m + 1);
    let mut max_label = *d.arc_ends().keys().last().expect("pair implies crossings");
    for step in 0..extra {
        let [p, q, r, s] = quads[idx];
        let (p2, s2) = (max_label + 1, max_label + 2);
        max_label += 2;
        quads[idx] = [p2, q, r, s2];
        quads.push([p, p2, s2, s]);
        ids.push(first_id + step);
    }
    let result = orient_with_ids(renumber(&quads), ids, d.extra_unknots())?;
    let fail = |what: &str| {
        Err(Error::InvalidPair(format!(
            "inflating pair {:?} by {extra} {what}",
            pair.crossings
        )))
    };
    if result.n_crossings() != d.n_crossings() + extra {
        return fail("changes the crossing count wrongly");
    }
    let expected_class = if extra == 0 {
        DiagramClass::Balanced
    } else {
        DiagramClass::Burdened
    };
    if classify_diagram(&result)? != expected_class {
        return fail("does not produce a Burdened diagram");
    }
    let s = seifert_circles(d).count();
    if seifert_circles(&result).count() != s {
        return fail("changes the Seifert circle count");
    }
    let reduced = crate::states::reduce_graph(&crate::states::a_state_graph(&result)?);
    let mut mults: Vec<usize> = reduced.edges.values().map(Vec::len).collect();
    mults.sort_unstable();
    let mut expected = vec![2usize; s.saturating_sub(2)];
    expected.push(2 + extra);
    expected.sort_unstable();
    if mults != expected {
        return fail("does not widen exactly one band");
    }
    Ok(result)
}
