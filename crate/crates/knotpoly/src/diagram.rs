//! PD-code parsing, orientation, crossing signs, and diagram predicates.
//!
//! A crossing `X[a,b,c,d]` lists its four incident arc labels
//! counterclockwise starting at the incoming under-strand `a`; the
//! under-strand leaves at `c`.  Orientation is derived data: strand
//! directions are propagated from the under-strand constraints, so identical
//! PD text always yields identical signs and component labels.  The sign
//! convention is pinned by fixture, not prose: the left-trefoil code
//! `X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]` must come out with writhe -3 and Jones
//! polynomial `-t^-4 + t^-3 + t^-1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Positive integer arc label; appears exactly twice in a valid PD code.
pub type ArcId = u32;

/// Stable crossing identifier.  Survives surgery operations such as
/// smoothing, so balancing sequences can reference the original diagram.
pub type CrossingId = usize;

/// Unvalidated PD code: raw quadruples plus the count of crossingless
/// unknot components declared by a `U<k>;` prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[ArcId; 4]>,
    pub extra_unknots: usize,
}

/// Parses PD text: crossings `X[a,b,c,d]` separated by `;`, optional
/// whitespace, optional leading `U<k>;` declaring `k` extra crossingless
/// unknot components.  Empty text denotes the 0-crossing unknot.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(PdCode {
            crossings: Vec::new(),
            extra_unknots: 1,
        });
    }
    let mut extra_unknots = 0usize;
    let mut crossings = Vec::new();
    let mut position = 0usize; // 1-based crossing ordinal for error reports
    for (seg_idx, seg) in compact.split(';').enumerate() {
        if seg.is_empty() {
            continue; // tolerate a trailing separator
        }
        if let Some(count) = seg.strip_prefix('U') {
            if seg_idx != 0 {
                return Err(Error::Parse {
                    position: position + 1,
                    msg: format!("unknot prefix {seg:?} must come first"),
                });
            }
            extra_unknots = count.parse().map_err(|_| Error::Parse {
                position: 1,
                msg: format!("malformed unknot prefix {seg:?}"),
            })?;
            continue;
        }
        position += 1;
        let inner = seg
            .strip_prefix("X[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                position,
                msg: format!("malformed token {seg:?}, expected X[a,b,c,d]"),
            })?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                position,
                msg: format!("expected 4 arc labels, found {}", parts.len()),
            });
        }
        let mut quad = [0 as ArcId; 4];
        for (slot, part) in parts.iter().enumerate() {
            let label: ArcId = part.parse().map_err(|_| Error::Parse {
                position,
                msg: format!("malformed arc label {part:?}"),
            })?;
            if label == 0 {
                return Err(Error::Parse {
                    position,
                    msg: "non-positive arc label 0".to_string(),
                });
            }
            quad[slot] = label;
        }
        crossings.push(quad);
    }
    Ok(PdCode {
        crossings,
        extra_unknots,
    })
}

/// One validated crossing with its derived sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: CrossingId,
    pub slots: [ArcId; 4],
    pub sign: i8,
}

/// Position of one arc end: crossing index (into [`OrientedDiagram::crossings`])
/// and slot 0..=3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: u8,
}

/// The two ends of an arc: where its strand leaves a crossing (`tail`) and
/// where it points into one (`head`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    pub tail: SlotRef,
    pub head: SlotRef,
}

/// Validated, oriented link diagram.  Immutable after construction.
#[derive(Clone, Debug)]
pub struct OrientedDiagram {
    crossings: Vec<Crossing>,
    heads: Vec<[bool; 4]>,
    arc_ends: BTreeMap<ArcId, ArcEnds>,
    component_of: BTreeMap<ArcId, usize>,
    n_components: usize,
    extra_unknots: usize,
}

impl OrientedDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn extra_unknots(&self) -> usize {
        self.extra_unknots
    }

    /// True when the strand at this slot points into the crossing.
    /// Slot 0 is always a head and slot 2 always a tail.
    pub fn is_head(&self, crossing: usize, slot: usize) -> bool {
        self.heads[crossing][slot]
    }

    /// Arc label -> tail/head slot positions.
    pub fn arc_ends(&self) -> &BTreeMap<ArcId, ArcEnds> {
        &self.arc_ends
    }

    /// Component index of the arc, if the arc exists.
    pub fn component_of(&self, arc: ArcId) -> Option<usize> {
        self.component_of.get(&arc).copied()
    }

    /// Index into [`Self::crossings`] of the crossing with this stable id.
    pub fn crossing_index(&self, id: CrossingId) -> Option<usize> {
        self.crossings.iter().position(|x| x.id == id)
    }

    pub(crate) fn quads(&self) -> Vec<[ArcId; 4]> {
        self.crossings.iter().map(|x| x.slots).collect()
    }

    /// Serializes back to PD text (inverse of [`parse_pd`] up to whitespace).
    pub fn pd_text(&self) -> String {
        let mut out = String::new();
        if self.extra_unknots > 0 && !(self.crossings.is_empty() && self.extra_unknots == 1) {
            let _ = write!(out, "U{};", self.extra_unknots);
        }
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            let _ = write!(
                out,
                "X[{},{},{},{}]",
                x.slots[0], x.slots[1], x.slots[2], x.slots[3]
            );
        }
        out
    }

    pub fn to_pd(&self) -> PdCode {
        PdCode {
            crossings: self.quads(),
            extra_unknots: self.extra_unknots,
        }
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

fn occurrences(quads: &[[ArcId; 4]]) -> Result<BTreeMap<ArcId, [(usize, usize); 2]>> {
    let mut occ: BTreeMap<ArcId, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, quad) in quads.iter().enumerate() {
        for (j, &a) in quad.iter().enumerate() {
            occ.entry(a).or_default().push((i, j));
        }
    }
    let mut out = BTreeMap::new();
    for (a, spots) in occ {
        if spots.len() != 2 {
            return Err(Error::Validation(format!(
                "arc {a} occurs {} time(s), expected exactly 2",
                spots.len()
            )));
        }
        out.insert(a, [spots[0], spots[1]]);
    }
    Ok(out)
}

/// Propagates strand polarity: slot 0 is a head, slot 2 a tail, the two
/// over-slots of a crossing are anti-correlated, and the two occurrences of
/// an arc are anti-correlated.  Components containing only over-strand
/// constraints get a deterministic fallback (slot 1 of the smallest
/// undecided crossing becomes a head).
fn propagate_polarity(
    quads: &[[ArcId; 4]],
    occ: &BTreeMap<ArcId, [(usize, usize); 2]>,
) -> Result<Vec<[bool; 4]>> {
    let c = quads.len();
    let mut pol: Vec<[Option<bool>; 4]> = vec![[None; 4]; c];
    let mut work: Vec<(usize, usize)> = Vec::with_capacity(4 * c);
    for (i, p) in pol.iter_mut().enumerate() {
        p[0] = Some(true);
        p[2] = Some(false);
        work.push((i, 0));
        work.push((i, 2));
    }
    fn set(
        pol: &mut [[Option<bool>; 4]],
        work: &mut Vec<(usize, usize)>,
        i: usize,
        j: usize,
        v: bool,
        arc: ArcId,
    ) -> Result<()> {
        match pol[i][j] {
            None => {
                pol[i][j] = Some(v);
                work.push((i, j));
                Ok(())
            }
            Some(cur) if cur == v => Ok(()),
            Some(_) => Err(Error::Validation(format!(
                "inconsistent orientation at arc {arc}"
            ))),
        }
    }
    loop {
        while let Some((i, j)) = work.pop() {
            let v = pol[i][j].expect("queued slot is decided");
            let arc = quads[i][j];
            for &(i2, j2) in &occ[&arc] {
                if (i2, j2) != (i, j) {
                    set(&mut pol, &mut work, i2, j2, !v, arc)?;
                }
            }
            if j == 1 || j == 3 {
                set(&mut pol, &mut work, i, 4 - j, !v, quads[i][4 - j])?;
            }
        }
        let undecided = (0..c)
            .flat_map(|i| [1usize, 3].into_iter().map(move |j| (i, j)))
            .find(|&(i, j)| pol[i][j].is_none());
        match undecided {
            None => break,
            Some((i, _)) => {
                pol[i][1] = Some(true);
                work.push((i, 1));
            }
        }
    }
    Ok(pol
        .into_iter()
        .map(|row| [0, 1, 2, 3].map(|j| row[j].expect("all slots decided")))
        .collect())
}

/// Builds a validated diagram from quadruples with caller-supplied stable
/// crossing ids.  Surgery operations use this to preserve ids.
pub(crate) fn orient_with_ids(
    quads: Vec<[ArcId; 4]>,
    ids: Vec<CrossingId>,
    extra_unknots: usize,
) -> Result<OrientedDiagram> {
    debug_assert_eq!(quads.len(), ids.len());
    let occ = occurrences(&quads)?;
    let heads = propagate_polarity(&quads, &occ)?;
    let mut crossings = Vec::with_capacity(quads.len());
    for (i, (&quad, &id)) in quads.iter().zip(ids.iter()).enumerate() {
        let sign = match (heads[i][1], heads[i][3]) {
            (false, true) => 1,  // over-strand runs d -> b
            (true, false) => -1, // over-strand runs b -> d
            _ => {
                return Err(Error::Internal(format!(
                    "over-strand polarity unresolved at crossing {id}"
                )))
            }
        };
        crossings.push(Crossing {
            id,
            slots: quad,
            sign,
        });
    }
    let mut arc_ends = BTreeMap::new();
    for (&arc, spots) in &occ {
        let (h, t) = match (heads[spots[0].0][spots[0].1], heads[spots[1].0][spots[1].1]) {
            (true, false) => (spots[0], spots[1]),
            (false, true) => (spots[1], spots[0]),
            _ => {
                return Err(Error::Internal(format!(
                    "arc {arc} does not have one head and one tail"
                )))
            }
        };
        arc_ends.insert(
            arc,
            ArcEnds {
                head: SlotRef {
                    crossing: h.0,
                    slot: h.1 as u8,
                },
                tail: SlotRef {
                    crossing: t.0,
                    slot: t.1 as u8,
                },
            },
        );
    }
    // Component labels: orbits of the strand successor relation.
    let arcs: Vec<ArcId> = occ.keys().copied().collect();
    let index_of: BTreeMap<ArcId, usize> = arcs.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let mut dsu = Dsu::new(arcs.len());
    for quad in &quads {
        dsu.union(index_of[&quad[0]], index_of[&quad[2]]);
        dsu.union(index_of[&quad[1]], index_of[&quad[3]]);
    }
    let mut component_of = BTreeMap::new();
    let mut rep_index: BTreeMap<usize, usize> = BTreeMap::new();
    for &a in &arcs {
        let root = dsu.find(index_of[&a]);
        let next = rep_index.len();
        let comp = *rep_index.entry(root).or_insert(next);
        component_of.insert(a, comp);
    }
    let n_components = rep_index.len() + extra_unknots;
    if n_components == 0 {
        return Err(Error::Validation(
            "diagram has no components (U0; with no crossings)".to_string(),
        ));
    }
    Ok(OrientedDiagram {
        crossings,
        heads,
        arc_ends,
        component_of,
        n_components,
        extra_unknots,
    })
}

/// Validates a PD code: checks arc multiplicities, derives strand
/// directions, computes crossing signs, and labels components.
pub fn orient_and_sign(pd: &PdCode) -> Result<OrientedDiagram> {
    let ids = (0..pd.crossings.len()).collect();
    orient_with_ids(pd.crossings.clone(), ids, pd.extra_unknots)
}

/// Sum of crossing signs.
pub fn writhe(d: &OrientedDiagram) -> i64 {
    d.crossings().iter().map(|x| x.sign as i64).sum()
}

/// True iff every crossing is positive (vacuously true without crossings).
pub fn is_positive(d: &OrientedDiagram) -> bool {
    d.crossings().iter().all(|x| x.sign > 0)
}

/// True iff the underlying 4-valent multigraph is disconnected, or
/// crossingless unknot components sit alongside other material.
pub fn is_split(d: &OrientedDiagram) -> bool {
    let c = d.n_crossings();
    if d.extra_unknots() >= 1 && c >= 1 {
        return true;
    }
    if d.extra_unknots() >= 2 && c == 0 {
        return true;
    }
    if c <= 1 {
        return false;
    }
    let mut dsu = Dsu::new(c);
    for ends in d.arc_ends().values() {
        dsu.union(ends.tail.crossing, ends.head.crossing);
    }
    let root = dsu.find(0);
    (1..c).any(|i| dsu.find(i) != root)
}

/// A-state slot pairing `{0,1},{2,3}`.
pub(crate) const PAIRING_A: [(usize, usize); 2] = [(0, 1), (2, 3)];
/// B-state slot pairing `{0,3},{1,2}`.
pub(crate) const PAIRING_B: [(usize, usize); 2] = [(0, 3), (1, 2)];

/// Removes crossing `idx` from the shadow, joining its strands per the given
/// slot pairing.  Returns the rewritten quadruples (merged arcs relabeled to
/// the minimum of their class) and the number of closed loops split off.
pub(crate) fn smooth_shadow(
    quads: &[[ArcId; 4]],
    idx: usize,
    pairing: [(usize, usize); 2],
) -> (Vec<[ArcId; 4]>, usize) {
    let x = quads[idx];
    // Union-find over the <= 4 labels meeting the removed crossing.
    let mut parent: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<ArcId, ArcId>, mut a: ArcId) -> ArcId {
        parent.entry(a).or_insert(a);
        while parent[&a] != a {
            let g = parent[&parent[&a]];
            parent.insert(a, g);
            a = g;
        }
        a
    }
    for (s, t) in pairing {
        let (ra, rb) = (find(&mut parent, x[s]), find(&mut parent, x[t]));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let mut classes: BTreeMap<ArcId, Vec<ArcId>> = BTreeMap::new();
    for &label in &x {
        let root = find(&mut parent, label);
        let class = classes.entry(root).or_default();
        if !class.contains(&label) {
            class.push(label);
        }
    }
    let mut remap: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    for class in classes.values() {
        let min = *class.iter().min().expect("nonempty class");
        for &label in class {
            remap.insert(label, min);
        }
    }
    let rest: Vec<[ArcId; 4]> = quads
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, q)| q.map(|a| *remap.get(&a).unwrap_or(&a)))
        .collect();
    let live: std::collections::BTreeSet<ArcId> = rest.iter().flatten().copied().collect();
    let loops = classes
        .values()
        .filter(|class| !live.contains(class.iter().min().expect("nonempty class")))
        .count();
    (rest, loops)
}

/// Dense 1..2c relabeling preserving label order.
pub(crate) fn renumber(quads: &[[ArcId; 4]]) -> Vec<[ArcId; 4]> {
    let labels: std::collections::BTreeSet<ArcId> = quads.iter().flatten().copied().collect();
    let remap: BTreeMap<ArcId, ArcId> = labels
        .into_iter()
        .enumerate()
        .map(|(k, a)| (a, k as ArcId + 1))
        .collect();
    quads.iter().map(|q| q.map(|a| remap[&a])).collect()
}

fn shadow_is_split(quads: &[[ArcId; 4]], extra: usize) -> bool {
    let c = quads.len();
    if extra >= 1 && c >= 1 {
        return true;
    }
    if extra >= 2 && c == 0 {
        return true;
    }
    if c <= 1 {
        return false;
    }
    let mut occ: BTreeMap<ArcId, Vec<usize>> = BTreeMap::new();
    for (i, quad) in quads.iter().enumerate() {
        for &a in quad {
            occ.entry(a).or_default().push(i);
        }
    }
    let mut dsu = Dsu::new(c);
    for spots in occ.values() {
        for w in spots.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let root = dsu.find(0);
    (1..c).any(|i| dsu.find(i) != root)
}

/// True iff no crossing is nugatory.  A crossing is nugatory exactly when
/// some simple closed curve meets the diagram only there; combinatorially,
/// one of the two smoothings at the crossing disconnects the shadow.
/// Requires a non-split diagram.
pub fn is_reduced(d: &OrientedDiagram) -> Result<bool> {
    if is_split(d) {
        return Err(Error::Validation(
            "is_reduced requires a non-split diagram".to_string(),
        ));
    }
    let quads = d.quads();
    for idx in 0..quads.len() {
        for pairing in [PAIRING_A, PAIRING_B] {
            let (rest, loops) = smooth_shadow(&quads, idx, pairing);
            if shadow_is_split(&rest, loops) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Over/under swap at every crossing, as the PD rewrite
/// `(a,b,c,d) -> (d,a,b,c)`; all signs negate.  The Jones polynomial of the
/// result equals `lp_invert_var` of the original's (enforced by tests, not
/// assumed here).
pub fn mirror(d: &OrientedDiagram) -> OrientedDiagram {
    let quads = d
        .crossings()
        .iter()
        .map(|x| [x.slots[3], x.slots[0], x.slots[1], x.slots[2]])
        .collect();
    let ids = d.crossings().iter().map(|x| x.id).collect();
    orient_with_ids(quads, ids, d.extra_unknots()).expect("mirror of a valid diagram re-validates")
}

/// Seifert genus of a non-split diagram: `g = (c - s + 2 - n) / 2`.
pub fn seifert_genus(c: usize, s: usize, n: usize) -> Ratio<i64> {
    Ratio::new(c as i64 - s as i64 + 2 - n as i64, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEFT_TREFOIL: &str = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";
    const RIGHT_TREFOIL: &str = "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]";
    const POSITIVE_HOPF: &str = "X[1,3,2,4];X[3,1,4,2]";

    fn diagram(text: &str) -> OrientedDiagram {
        orient_and_sign(&parse_pd(text).unwrap()).unwrap()
    }

    #[test]
    fn parse_empty_is_unknot() {
        let pd = parse_pd("").unwrap();
        assert_eq!(pd.crossings.len(), 0);
        assert_eq!(pd.extra_unknots, 1);
        let d = orient_and_sign(&pd).unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(writhe(&d), 0);
    }

    #[test]
    fn parse_trefoil() {
        let pd = parse_pd(LEFT_TREFOIL).unwrap();
        assert_eq!(pd.crossings.len(), 3);
        assert_eq!(pd.crossings[0], [1, 4, 2, 5]);
        // Whitespace is insignificant.
        let spaced = parse_pd(" X[1,4,2,5] ; X[3,6,4,1] ;\nX[5,2,6,3] ").unwrap();
        assert_eq!(pd, spaced);
    }

    #[test]
    fn parse_arity_error_carries_position() {
        let err = parse_pd("X[1,4,2,5];X[3,6,4]").unwrap_err();
        match err {
            Error::Parse { position, msg } => {
                assert_eq!(position, 2);
                assert!(msg.contains("4 arc labels"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_malformed_tokens() {
        assert!(parse_pd("Y[1,2,3,4]").is_err());
        assert!(parse_pd("X[1,2,3,0]").is_err());
        assert!(parse_pd("X[1,2,3,x]").is_err());
        assert!(parse_pd("X[1,2,3,4];U2").is_err());
        assert!(parse_pd("U;X[1,2,3,4]").is_err());
    }

    #[test]
    fn parse_unknot_prefix() {
        let pd = parse_pd("U2;").unwrap();
        assert_eq!(pd.extra_unknots, 2);
        assert_eq!(orient_and_sign(&pd).unwrap().n_components(), 2);
        // U0; with no crossings leaves nothing.
        assert!(orient_and_sign(&parse_pd("U0;").unwrap()).is_err());
    }

    #[test]
    fn orient_left_trefoil() {
        let d = diagram(LEFT_TREFOIL);
        assert_eq!(d.n_components(), 1);
        assert!(d.crossings().iter().all(|x| x.sign == -1));
        assert_eq!(writhe(&d), -3);
        assert!(!is_positive(&d));
    }

    #[test]
    fn orient_right_trefoil() {
        let d = diagram(RIGHT_TREFOIL);
        assert!(d.crossings().iter().all(|x| x.sign == 1));
        assert_eq!(writhe(&d), 3);
        assert!(is_positive(&d));
    }

    #[test]
    fn orient_hopf() {
        let d = diagram(POSITIVE_HOPF);
        assert_eq!(d.n_components(), 2);
        assert_eq!(writhe(&d), 2);
    }

    #[test]
    fn orient_kinks() {
        let pos = diagram("X[1,1,2,2]");
        assert_eq!(writhe(&pos), 1);
        let neg = diagram("X[1,2,2,1]");
        assert_eq!(writhe(&neg), -1);
    }

    #[test]
    fn orient_rejects_bad_multiplicity() {
        let pd = parse_pd("X[1,1,1,2]").unwrap();
        let err = orient_and_sign(&pd).unwrap_err();
        assert!(err.to_string().contains("arc 1"), "{err}");
    }

    #[test]
    fn split_detection() {
        assert!(!is_split(&diagram(LEFT_TREFOIL)));
        assert!(!is_split(&diagram("")));
        // Disjoint union of two trefoils on disjoint label ranges.
        let two = concat!(
            "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3];",
            "X[7,10,8,11];X[9,12,10,7];X[11,8,12,9]"
        );
        assert!(is_split(&diagram(two)));
        assert!(is_split(&diagram("U1;X[1,3,2,4];X[3,1,4,2]")));
        assert!(is_split(&diagram("U2;")));
        assert!(!is_split(&diagram("U1;")));
    }

    #[test]
    fn reduced_detection() {
        assert!(is_reduced(&diagram(LEFT_TREFOIL)).unwrap());
        assert!(is_reduced(&diagram("")).unwrap());
        // Right trefoil with a positive kink inserted on arc 6.
        let kinked = "X[1,5,2,4];X[3,1,4,7];X[5,3,6,2];X[6,7,8,8]";
        let d = diagram(kinked);
        assert_eq!(d.n_crossings(), 4);
        assert!(!is_reduced(&d).unwrap());
        assert!(is_reduced(&diagram("U1;X[1,2,2,1]")).is_err());
    }

    #[test]
    fn mirror_negates_writhe_and_preserves_counts() {
        for text in [LEFT_TREFOIL, RIGHT_TREFOIL, POSITIVE_HOPF] {
            let d = diagram(text);
            let m = mirror(&d);
            assert_eq!(writhe(&m), -writhe(&d));
            assert_eq!(m.n_crossings(), d.n_crossings());
            assert_eq!(m.n_components(), d.n_components());
            let mm = mirror(&m);
            assert_eq!(writhe(&mm), writhe(&d));
        }
        assert_eq!(mirror(&diagram("")).n_components(), 1);
    }

    #[test]
    fn pd_text_round_trips() {
        for text in [
            LEFT_TREFOIL,
            RIGHT_TREFOIL,
            POSITIVE_HOPF,
            "",
            "U2;",
            "U1;X[1,1,2,2]",
        ] {
            let d = diagram(text);
            let again = orient_and_sign(&parse_pd(&d.pd_text()).unwrap()).unwrap();
            assert_eq!(again.quads(), d.quads());
            assert_eq!(again.extra_unknots(), d.extra_unknots());
        }
    }

    #[test]
    fn genus_formula() {
        assert_eq!(seifert_genus(0, 1, 1), Ratio::from_integer(0));
        assert_eq!(seifert_genus(3, 2, 1), Ratio::from_integer(1));
        assert_eq!(seifert_genus(2, 2, 2), Ratio::from_integer(0));
    }
}
