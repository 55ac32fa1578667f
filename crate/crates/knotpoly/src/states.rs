//! Smoothing states, circle counting, A-state graphs, Balanced/Burdened
//! classification, matching pairs, synchronization, and balancing sequences.
//!
//! A smoothing state picks A or B at every crossing.  The A-pairing joins
//! slots `{0,1}` and `{2,3}`, the B-pairing `{0,3}` and `{1,2}`; at a
//! positive crossing the A-pairing coincides with the oriented (Seifert)
//! smoothing, which is what ties the state machinery to Seifert circles.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{
    is_positive, is_split, orient_with_ids, renumber, seifert_genus, smooth_shadow, CrossingId,
    Dsu, OrientedDiagram, PAIRING_A, PAIRING_B,
};
use crate::error::{Error, Result};

/// Smoothing choice at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Choice {
    A,
    B,
}

impl Choice {
    pub(crate) fn pairing(self) -> [(usize, usize); 2] {
        match self {
            Choice::A => PAIRING_A,
            Choice::B => PAIRING_B,
        }
    }
}

/// A smoothing choice for every crossing of a diagram, keyed by stable id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateVector {
    pub choice: BTreeMap<CrossingId, Choice>,
}

impl StateVector {
    /// The same choice at every crossing of `d`.
    pub fn uniform(d: &OrientedDiagram, choice: Choice) -> Self {
        StateVector {
            choice: d.crossings().iter().map(|x| (x.id, choice)).collect(),
        }
    }

    pub fn all_a(d: &OrientedDiagram) -> Self {
        Self::uniform(d, Choice::A)
    }

    pub fn all_b(d: &OrientedDiagram) -> Self {
        Self::uniform(d, Choice::B)
    }
}

/// Circles of one smoothing state: a circle index per crossing slot, plus
/// the total count (crossingless unknot components included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDecomposition {
    circle_of: Vec<[usize; 4]>,
    count: usize,
}

impl CircleDecomposition {
    pub fn count(&self) -> usize {
        self.count
    }

    /// Circle index at a crossing slot (crossing index, not stable id).
    pub fn circle_at(&self, crossing: usize, slot: usize) -> usize {
        self.circle_of[crossing][slot]
    }

    /// All slots lying on the given circle, in scan order.
    pub fn slots_on(&self, circle: usize) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (i, row) in self.circle_of.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == circle {
                    out.push((i, j as u8));
                }
            }
        }
        out
    }
}

/// Orbit count over slot endpoints: one union per smoothing pair, one per
/// arc.  Circle indices are assigned in first-seen scan order, so the same
/// diagram and state always yield the same labeling.
fn decompose(
    d: &OrientedDiagram,
    pairing_at: impl Fn(usize) -> [(usize, usize); 2],
) -> CircleDecomposition {
    let c = d.n_crossings();
    let mut dsu = Dsu::new(4 * c);
    for i in 0..c {
        for (s, t) in pairing_at(i) {
            dsu.union(4 * i + s, 4 * i + t);
        }
    }
    for ends in d.arc_ends().values() {
        dsu.union(
            4 * ends.tail.crossing + ends.tail.slot as usize,
            4 * ends.head.crossing + ends.head.slot as usize,
        );
    }
    let mut index_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut circle_of = vec![[0usize; 4]; c];
    for (i, circles) in circle_of.iter_mut().enumerate() {
        for (j, slot) in circles.iter_mut().enumerate() {
            let root = dsu.find(4 * i + j);
            let next = index_of_root.len();
            *slot = *index_of_root.entry(root).or_insert(next);
        }
    }
    CircleDecomposition {
        circle_of,
        count: index_of_root.len() + d.extra_unknots(),
    }
}

/// Circles of the state `sigma`, which must assign a choice to exactly the
/// crossings of `d`.
pub fn state_circles(d: &OrientedDiagram, sigma: &StateVector) -> Result<CircleDecomposition> {
    for x in d.crossings() {
        if !sigma.choice.contains_key(&x.id) {
            return Err(Error::Validation(format!(
                "state vector missing crossing {}",
                x.id
            )));
        }
    }
    if sigma.choice.len() != d.n_crossings() {
        let stray = sigma
            .choice
            .keys()
            .find(|&&id| d.crossing_index(id).is_none())
            .expect("length mismatch implies a stray key");
        return Err(Error::Validation(format!(
            "state vector references unknown crossing {stray}"
        )));
    }
    Ok(decompose(d, |i| {
        sigma.choice[&d.crossings()[i].id].pairing()
    }))
}

/// Oriented smoothing at every crossing (Seifert's algorithm on the
/// diagram).  For positive diagrams this must coincide with the all-A state,
/// which is asserted.
pub fn seifert_circles(d: &OrientedDiagram) -> CircleDecomposition {
    let dec = decompose(d, |i| {
        if d.crossings()[i].sign > 0 {
            PAIRING_A
        } else {
            PAIRING_B
        }
    });
    if is_positive(d) {
        let all_a = decompose(d, |_| PAIRING_A);
        assert_eq!(
            dec, all_a,
            "Seifert smoothing of a positive diagram must equal the all-A state"
        );
    }
    dec
}

/// The all-B state's circles.
pub fn all_b_circles(d: &OrientedDiagram) -> CircleDecomposition {
    decompose(d, |_| PAIRING_B)
}

/// One edge of the A-state graph: a crossing joining two distinct A-circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateEdge {
    pub crossing: CrossingId,
    pub circles: (usize, usize),
}

/// A-state graph: one vertex per A-circle, one labeled edge per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGraph {
    pub vertices: usize,
    pub edges: Vec<StateEdge>,
}

/// Builds the A-state graph of a non-split diagram.
pub fn a_state_graph(d: &OrientedDiagram) -> Result<StateGraph> {
    if is_split(d) {
        return Err(Error::Validation(
            "a_state_graph requires a non-split diagram".to_string(),
        ));
    }
    let dec = decompose(d, |_| PAIRING_A);
    let mut edges = Vec::with_capacity(d.n_crossings());
    for (i, x) in d.crossings().iter().enumerate() {
        // The A-pairing joins slots {0,1} and {2,3}; the crossing's edge
        // connects the circles those two strands land on.
        let u = dec.circle_at(i, 0);
        let v = dec.circle_at(i, 2);
        if u == v {
            return Err(Error::SelfLoop { crossing: x.id });
        }
        edges.push(StateEdge {
            crossing: x.id,
            circles: (u.min(v), u.max(v)),
        });
    }
    Ok(StateGraph {
        vertices: dec.count(),
        edges,
    })
}

/// A-state graph with parallel edges merged; `edges` maps each unordered
/// circle pair to the sorted crossing ids sharing it (the pair's
/// multiplicity is the length of that list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedStateGraph {
    pub vertices: usize,
    pub edges: BTreeMap<(usize, usize), Vec<CrossingId>>,
    pub is_tree: bool,
}

impl ReducedStateGraph {
    pub fn multiplicity(&self, pair: (usize, usize)) -> usize {
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        self.edges.get(&key).map_or(0, Vec::len)
    }
}

/// Merges parallel edges and decides the tree property.
pub fn reduce_graph(g: &StateGraph) -> ReducedStateGraph {
    let mut edges: BTreeMap<(usize, usize), Vec<CrossingId>> = BTreeMap::new();
    for e in &g.edges {
        edges.entry(e.circles).or_default().push(e.crossing);
    }
    for ids in edges.values_mut() {
        ids.sort_unstable();
    }
    let mut dsu = Dsu::new(g.vertices);
    for &(u, v) in edges.keys() {
        dsu.union(u, v);
    }
    let root = dsu.find(0);
    let connected = (1..g.vertices).all(|v| dsu.find(v) == root);
    let is_tree = connected && edges.len() == g.vertices - 1;
    ReducedStateGraph {
        vertices: g.vertices,
        edges,
        is_tree,
    }
}

/// Classification of a positive non-split diagram by its reduced A-state
/// graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramClass {
    /// Tree with every multiplicity exactly 2.
    Balanced,
    /// Tree with every multiplicity at least 2 (Balanced reported as itself).
    Burdened,
    Neither,
}

impl std::fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiagramClass::Balanced => "Balanced",
            DiagramClass::Burdened => "Burdened",
            DiagramClass::Neither => "Neither",
        })
    }
}

/// Classifies a positive, non-split diagram; reports the strongest class.
pub fn classify_diagram(d: &OrientedDiagram) -> Result<DiagramClass> {
    if !is_positive(d) {
        return Err(Error::NotPositive(
            "classification is defined only for positive diagrams".to_string(),
        ));
    }
    let reduced = reduce_graph(&a_state_graph(d)?);
    if !reduced.is_tree {
        return Ok(DiagramClass::Neither);
    }
    if reduced.edges.values().all(|ids| ids.len() == 2) {
        Ok(DiagramClass::Balanced)
    } else if reduced.edges.values().all(|ids| ids.len() >= 2) {
        Ok(DiagramClass::Burdened)
    } else {
        Ok(DiagramClass::Neither)
    }
}

/// Two crossings shared by the same pair of A-circles in a Balanced diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingPair {
    pub circles: (usize, usize),
    pub crossings: [CrossingId; 2],
}

/// All matching pairs of a Balanced diagram, one per reduced-graph edge.
pub fn matching_pairs(d: &OrientedDiagram) -> Result<Vec<MatchingPair>> {
    if classify_diagram(d)? != DiagramClass::Balanced {
        return Err(Error::NotBalanced(
            "matching pairs exist only in Balanced diagrams".to_string(),
        ));
    }
    let reduced = reduce_graph(&a_state_graph(d)?);
    let pairs: Vec<MatchingPair> = reduced
        .edges
        .iter()
        .map(|(&circles, ids)| {
            debug_assert_eq!(ids.len(), 2);
            MatchingPair {
                circles,
                crossings: [ids[0], ids[1]],
            }
        })
        .collect();
    // One pair per tree edge: s - 1 of them for a connected positive diagram.
    debug_assert_eq!(pairs.len() + 1, reduced.vertices);
    Ok(pairs)
}

/// Oriented smoothing of one crossing, as a PD rewrite.  Remaining crossings
/// keep their stable ids; merged arcs take the minimum label, then labels
/// are renumbered densely.  Closed loops split off by the smoothing become
/// crossingless unknot components.
pub fn smooth_crossing(d: &OrientedDiagram, x: CrossingId) -> Result<OrientedDiagram> {
    let idx = d.crossing_index(x).ok_or(Error::UnknownCrossing(x))?;
    let quads = d.quads();
    let sign = d.crossings()[idx].sign;
    let pairing = if sign > 0 { PAIRING_A } else { PAIRING_B };
    let (rest, loops) = smooth_shadow(&quads, idx, pairing);
    let rest = renumber(&rest);
    let ids = d
        .crossings()
        .iter()
        .filter(|c| c.id != x)
        .map(|c| c.id)
        .collect();
    let result = orient_with_ids(rest, ids, d.extra_unknots() + loops)?;
    // Post-conditions from Prop. 6(i): the oriented smoothing removes one
    // crossing, leaves the Seifert circles untouched, and toggles the
    // component count by one; at a positive crossing |B| also moves by one.
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "smooth_crossing postcondition failed at crossing {x}: {what}"
            )))
        }
    };
    check(
        result.n_crossings() == d.n_crossings() - 1,
        "crossing count",
    )?;
    check(
        seifert_circles(&result).count() == seifert_circles(d).count(),
        "Seifert circle count",
    )?;
    let dn = result.n_components() as i64 - d.n_components() as i64;
    check(dn.abs() == 1, "component count delta")?;
    if sign > 0 {
        let db = all_b_circles(&result).count() as i64 - all_b_circles(d).count() as i64;
        check(db.abs() == 1, "B-circle count delta")?;
    }
    Ok(result)
}

/// Excess crossings whose successive oriented smoothing balances a Burdened
/// diagram: for each reduced edge the two smallest crossing ids stay, the
/// rest go, in ascending id order.  Length is `c - 2(s-1)`.
pub fn balancing_sequence(d: &OrientedDiagram) -> Result<Vec<CrossingId>> {
    let class = classify_diagram(d)?;
    if class == DiagramClass::Neither {
        return Err(Error::NotBurdened(
            "balancing sequences are defined for Burdened (or Balanced) diagrams".to_string(),
        ));
    }
    let reduced = reduce_graph(&a_state_graph(d)?);
    let mut excess: Vec<CrossingId> = reduced
        .edges
        .values()
        .flat_map(|ids| ids[2..].iter().copied())
        .collect();
    excess.sort_unstable();
    let s = seifert_circles(d).count();
    debug_assert_eq!(excess.len(), d.n_crossings() - 2 * (s - 1));
    Ok(excess)
}

/// Groups the given slots into blocks with equal key.
fn blocks_by<K: Ord>(
    slots: &[(usize, u8)],
    key: impl Fn(usize, u8) -> K,
) -> BTreeSet<Vec<(usize, u8)>> {
    let mut groups: BTreeMap<K, Vec<(usize, u8)>> = BTreeMap::new();
    for &(i, j) in slots {
        groups.entry(key(i, j)).or_default().push((i, j));
    }
    groups.into_values().collect()
}

/// Synchronization of the slots of one A-circle: the partition of the slots
/// by B-circle must equal their partition by link component.
fn slots_synchronized(
    d: &OrientedDiagram,
    b_dec: &CircleDecomposition,
    slots: &[(usize, u8)],
) -> bool {
    let by_b = blocks_by(slots, |i, j| b_dec.circle_at(i, j as usize));
    let by_comp = blocks_by(slots, |i, j| {
        let arc = d.crossings()[i].slots[j as usize];
        d.component_of(arc).expect("arc of a live slot exists")
    });
    by_b == by_comp
}

fn require_pair(d: &OrientedDiagram, pair: &MatchingPair) -> Result<()> {
    let pairs = matching_pairs(d)?;
    if pairs.iter().any(|p| p == pair) {
        Ok(())
    } else {
        Err(Error::InvalidPair(format!(
            "crossings {:?} do not form a matching pair of this diagram",
            pair.crossings
        )))
    }
}

/// True iff the pair's arcs are synchronized: on each of its two A-circles,
/// the slots at the pair's crossings fall into the same blocks whether
/// grouped by B-circle or by component.  Computed on slots, not arcs, since
/// the two crossings of a pair may share arcs.
pub fn pair_is_synchronized(d: &OrientedDiagram, pair: &MatchingPair) -> Result<bool> {
    require_pair(d, pair)?;
    let a_dec = state_circles(d, &StateVector::all_a(d))?;
    let b_dec = all_b_circles(d);
    let idx = pair.crossings.map(|id| {
        d.crossing_index(id)
            .expect("validated pair crossing exists")
    });
    for circle in [pair.circles.0, pair.circles.1] {
        let slots: Vec<(usize, u8)> = idx
            .iter()
            .flat_map(|&i| (0..4u8).map(move |j| (i, j)))
            .filter(|&(i, j)| a_dec.circle_at(i, j as usize) == circle)
            .collect();
        debug_assert_eq!(slots.len(), 4);
        if !slots_synchronized(d, &b_dec, &slots) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every A-circle is synchronized over all its slots.  Lemma 14
/// makes this equivalent to all matching pairs being synchronized, and that
/// equivalence is re-checked here.
pub fn diagram_is_synchronized(d: &OrientedDiagram) -> Result<bool> {
    let pairs = matching_pairs(d)?; // also enforces the Balanced precondition
    let a_dec = state_circles(d, &StateVector::all_a(d))?;
    let b_dec = all_b_circles(d);
    let whole = (0..a_dec.count().saturating_sub(d.extra_unknots()))
        .all(|circle| slots_synchronized(d, &b_dec, &a_dec.slots_on(circle)));
    let mut pairwise = true;
    for pair in &pairs {
        pairwise &= pair_is_synchronized(d, pair)?;
    }
    if whole != pairwise {
        return Err(Error::Internal(format!(
            "Lemma 14 equivalence failed: whole-circle {whole} vs pairwise {pairwise}"
        )));
    }
    Ok(whole)
}

/// Theorem 8 instance: does `n(D) = |B(D)|` hold for this Balanced diagram?
pub fn verify_balance_theorem(d: &OrientedDiagram) -> Result<bool> {
    if classify_diagram(d)? != DiagramClass::Balanced {
        return Err(Error::NotBalanced(
            "the balance theorem applies to Balanced diagrams".to_string(),
        ));
    }
    Ok(d.n_components() == all_b_circles(d).count())
}

/// Convenience: Seifert genus of the diagram from its own counts.
pub fn diagram_genus(d: &OrientedDiagram) -> num_rational::Ratio<i64> {
    seifert_genus(
        d.n_crossings(),
        seifert_circles(d).count(),
        d.n_components(),
    )
}
