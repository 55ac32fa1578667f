//! Independent skein-recursion oracle.
//!
//! Everything here is computed directly from the defining bracket recursion
//! `<D> = A <D_A> + A^-1 <D_B>` on raw PD quads — its own parser, its own
//! orientation propagation, and exponential-time smoothing recursion — kept
//! deliberately separate from the library's table-driven state sum so the
//! two implementations can check each other.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Sparse polynomial, exponent -> coefficient.  Exponents are powers of the
/// bracket variable during recursion and quarter-powers of t after
/// normalization.
pub type QPoly = BTreeMap<i64, i128>;

fn add_term(p: &mut QPoly, e: i64, c: i128) {
    let v = p.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_term(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

/// `(-A^2 - A^-2)^k`.
fn delta_pow(k: u32) -> QPoly {
    let delta: QPoly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut out: QPoly = [(0, 1)].into_iter().collect();
    for _ in 0..k {
        out = poly_mul(&out, &delta);
    }
    out
}

/// Minimal PD reader: `U<k>;` prefix, then `X[a,b,c,d]` tokens.  Panics on
/// malformed input; the oracle only ever sees known-good fixtures.
pub fn parse_quads(text: &str) -> (Vec<[u32; 4]>, usize) {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return (Vec::new(), 1);
    }
    let mut quads = Vec::new();
    let mut extra = 0usize;
    for (i, seg) in compact.split(';').enumerate() {
        if seg.is_empty() {
            continue;
        }
        if let Some(count) = seg.strip_prefix('U') {
            assert_eq!(i, 0, "unknot prefix must come first");
            extra = count.parse().expect("unknot count");
            continue;
        }
        let inner = seg
            .strip_prefix("X[")
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or_else(|| panic!("bad token {seg}"));
        let labels: Vec<u32> = inner
            .split(',')
            .map(|x| x.parse().expect("arc label"))
            .collect();
        assert_eq!(labels.len(), 4, "bad quad {seg}");
        quads.push([labels[0], labels[1], labels[2], labels[3]]);
    }
    (quads, extra)
}

/// Head flags per slot (true = the arc ends at this crossing), derived from
/// the convention that slot 0 is the incoming under-strand: slot 0 is a
/// head, slot 2 a tail, the over slots 1 and 3 are opposite to each other,
/// and an arc's two occurrences are opposite.  Components that never pass
/// under get slot 1 of their smallest crossing declared a head.
fn orient(quads: &[[u32; 4]]) -> Vec<[bool; 4]> {
    let n = quads.len();
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, q) in quads.iter().enumerate() {
        for (j, &a) in q.iter().enumerate() {
            occ.entry(a).or_default().push((i, j));
        }
    }
    for (a, places) in &occ {
        assert_eq!(places.len(), 2, "arc {a} must appear exactly twice");
    }
    let mut heads: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    for h in &mut heads {
        h[0] = Some(true);
        h[2] = Some(false);
    }
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for (i, h) in heads.iter_mut().enumerate() {
                match (h[1], h[3]) {
                    (Some(x), None) => {
                        h[3] = Some(!x);
                        changed = true;
                    }
                    (None, Some(x)) => {
                        h[1] = Some(!x);
                        changed = true;
                    }
                    (Some(a), Some(b)) => assert_ne!(a, b, "over strand at crossing {i}"),
                    (None, None) => {}
                }
            }
            for places in occ.values() {
                let [(i, j), (k, l)] = [places[0], places[1]];
                match (heads[i][j], heads[k][l]) {
                    (Some(h), None) => {
                        heads[k][l] = Some(!h);
                        changed = true;
                    }
                    (None, Some(h)) => {
                        heads[i][j] = Some(!h);
                        changed = true;
                    }
                    (Some(a), Some(b)) => assert_ne!(a, b, "arc occurrence conflict"),
                    (None, None) => {}
                }
            }
        }
        match (0..n).find(|&i| heads[i][1].is_none()) {
            None => break,
            Some(i) => heads[i][1] = Some(true),
        }
    }
    heads
        .into_iter()
        .map(|h| h.map(|s| s.expect("slot decided")))
        .collect()
}

/// Writhe under the same convention as the library: a crossing is positive
/// exactly when the over strand enters at slot 3.
fn writhe(heads: &[[bool; 4]]) -> i64 {
    heads.iter().map(|h| if h[3] { 1 } else { -1 }).sum()
}

fn find(parent: &BTreeMap<u32, u32>, mut x: u32) -> u32 {
    while let Some(&p) = parent.get(&x) {
        x = p;
    }
    x
}

/// Bracket by recursion on the last crossing.  `loops` counts circles
/// closed so far (plus crossingless unknots); each smoothing either merges
/// two strands or closes one.
fn bracket_rec(quads: &[[u32; 4]], loops: u32) -> QPoly {
    let Some((&x, rest)) = quads.split_last() else {
        assert!(loops > 0, "empty link has no bracket");
        return delta_pow(loops - 1);
    };
    let mut out = QPoly::new();
    for (shift, pairs) in [(1i64, [(0, 1), (2, 3)]), (-1, [(0, 3), (1, 2)])] {
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        let mut new_loops = loops;
        for (p, q) in pairs {
            let (rp, rq) = (find(&parent, x[p]), find(&parent, x[q]));
            if rp == rq {
                new_loops += 1;
            } else {
                parent.insert(rp, rq);
            }
        }
        let sub: Vec<[u32; 4]> = rest.iter().map(|q| q.map(|a| find(&parent, a))).collect();
        for (e, c) in bracket_rec(&sub, new_loops) {
            add_term(&mut out, e + shift, c);
        }
    }
    out
}

/// Jones polynomial as quarter-exponents of t: bracket term `c·A^e` becomes
/// `c·(-1)^w` at quarter-exponent `3w - e`.
pub fn oracle_jones(pd: &str) -> QPoly {
    let (quads, extra) = parse_quads(pd);
    let w = if quads.is_empty() {
        0
    } else {
        writhe(&orient(&quads))
    };
    let bracket = bracket_rec(&quads, extra as u32);
    let sign: i128 = if w % 2 == 0 { 1 } else { -1 };
    bracket
        .into_iter()
        .map(|(e, c)| (3 * w - e, c * sign))
        .collect()
}

/// Engine polynomial in the oracle's representation.
pub fn engine_jones(pd: &str) -> QPoly {
    use knotpoly::diagram::{orient_and_sign, parse_pd};
    use knotpoly::jones::jones_polynomial;
    let d = orient_and_sign(&parse_pd(pd).expect("pd parses")).expect("pd orients");
    let result = jones_polynomial(&d).expect("jones computes");
    result
        .jones
        .terms()
        .iter()
        .map(|(&q, c)| (q, i128::try_from(c).expect("coefficient fits i128")))
        .collect()
}

/// The bundled diagram fixtures: name, PD text, and the quarter-exponent
/// polynomial both implementations must produce.
pub const FIXTURES: &[(&str, &str)] = &[
    ("unknot", ""),
    ("positive-kink", "X[1,1,2,2]"),
    ("negative-kink", "X[1,2,2,1]"),
    ("positive-hopf", "X[1,3,2,4];X[3,1,4,2]"),
    ("right-trefoil", "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]"),
    ("left-trefoil", "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"),
    (
        "torus-2-5",
        "X[9,3,2,10];X[3,1,4,2];X[1,5,6,4];X[5,7,8,6];X[7,9,10,8]",
    ),
    ("cyclic", "X[4,3,2,1];X[3,4,5,6];X[8,7,6,5];X[7,8,1,2]"),
];

/// Asserts engine == oracle on one diagram and returns the shared value.
pub fn assert_matches_oracle(name: &str, pd: &str) -> QPoly {
    let expected = oracle_jones(pd);
    let got = engine_jones(pd);
    assert_eq!(
        got, expected,
        "{name}: engine disagrees with skein oracle on {pd:?}"
    );
    got
}
