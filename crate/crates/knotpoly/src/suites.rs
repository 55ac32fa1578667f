//! Randomized verification suites.
//!
//! Each suite generates a deterministic corpus of diagrams from a seed and
//! checks the structural theorems and degree bounds against polynomials
//! computed by the state-sum engine.  The CLI `verify` subcommand and the
//! acceptance tests both run these; a violation surfaces as
//! [`Error::PropertyViolation`] with enough context (seed, parameters, PD
//! text) to reproduce the failing diagram in isolation.

use num_bigint::BigInt;

use crate::diagram::{is_positive, is_split, mirror, orient_and_sign, parse_pd, OrientedDiagram};
use crate::error::{Error, Result};
use crate::generators::{inflate_pair, random_balanced, Lcg, CYCLIC_FIXTURE_PD};
use crate::jones::{jones_polynomial_capped, stoimenow_v1, v_coefficient};
use crate::laurent::{lp_degrees, lp_invert_var};
use crate::obstructions::check_lemma4;
use crate::states::{
    a_state_graph, all_b_circles, balancing_sequence, classify_diagram, diagram_is_synchronized,
    matching_pairs, pair_is_synchronized, reduce_graph, seifert_circles, smooth_crossing,
    verify_balance_theorem, DiagramClass,
};

/// Summary of a completed suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    /// Number of diagrams (or corpora) that passed every check.
    pub checked: usize,
    /// How many diagrams attained the maximal-degree bound with equality
    /// (meaningful for the burdened suite, zero elsewhere).
    pub max_bound_equalities: usize,
}

fn violation(ctx: &str, what: impl std::fmt::Display, d: &OrientedDiagram) -> Error {
    Error::PropertyViolation(format!("{ctx}: {what} (pd {})", d.pd_text()))
}

const HOPF_PD: &str = "X[1,3,2,4];X[3,1,4,2]";
const RIGHT_TREFOIL_PD: &str = "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]";
const LEFT_TREFOIL_PD: &str = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";
const TORUS_2_5_PD: &str = "X[9,3,2,10];X[3,1,4,2];X[1,5,6,4];X[5,7,8,6];X[7,9,10,8]";

fn fixture(pd: &str) -> OrientedDiagram {
    orient_and_sign(&parse_pd(pd).expect("fixture parses")).expect("fixture orients")
}

/// Random number of Seifert circles for a balanced diagram, in `2..=max_k`.
fn draw_k(rng: &mut Lcg, max_k: usize) -> usize {
    debug_assert!(max_k >= 2);
    2 + (rng.next_draw() as usize) % (max_k - 1)
}

/// One random Burdened corpus: a balanced base with 2..=6 Seifert circles
/// and a single matching pair inflated by 1..=4 extra half-twists, keeping
/// the crossing number at or below `max_c`.
fn burdened_corpus(rng: &mut Lcg, max_c: usize) -> Result<OrientedDiagram> {
    let k = draw_k(rng, 6);
    let base = random_balanced(k, rng.next_draw());
    let pairs = matching_pairs(&base)?;
    let pair = &pairs[(rng.next_draw() as usize) % pairs.len()];
    let budget = max_c - base.n_crossings();
    let extra = 1 + (rng.next_draw() as usize) % budget.min(4);
    inflate_pair(&base, pair, extra)
}

/// Structural checks on `count` random balanced diagrams: crossing and
/// circle counts, Balanced classification, the balance theorem `n = |B|`,
/// and synchronization of every matching pair and of the whole diagram.
pub fn balanced_suite(count: usize, seed: u64, max_k: usize) -> Result<SuiteOutcome> {
    let mut rng = Lcg::new(seed);
    for i in 0..count {
        let k = draw_k(&mut rng, max_k);
        let dseed = rng.next_draw();
        let d = random_balanced(k, dseed);
        let ctx = format!("balanced #{i} (k = {k}, seed = {dseed})");
        if d.n_crossings() != 2 * (k - 1) {
            return Err(violation(
                &ctx,
                format!("expected {} crossings", 2 * (k - 1)),
                &d,
            ));
        }
        if seifert_circles(&d).count() != k {
            return Err(violation(&ctx, format!("expected {k} Seifert circles"), &d));
        }
        if classify_diagram(&d)? != DiagramClass::Balanced {
            return Err(violation(&ctx, "diagram is not Balanced", &d));
        }
        if !verify_balance_theorem(&d)? {
            return Err(violation(&ctx, "balance theorem n = |B| failed", &d));
        }
        if !diagram_is_synchronized(&d)? {
            return Err(violation(&ctx, "diagram is not synchronized", &d));
        }
        for pair in matching_pairs(&d)? {
            if !pair_is_synchronized(&d, &pair)? {
                return Err(violation(
                    &ctx,
                    format!("pair {:?} not synchronized", pair.crossings),
                    &d,
                ));
            }
        }
    }
    Ok(SuiteOutcome {
        checked: count,
        max_bound_equalities: 0,
    })
}

/// Degree-bound checks on one Burdened diagram.  Returns whether the
/// maximal-degree bound held with equality.
fn check_burdened(d: &OrientedDiagram, ctx: &str, cap: usize) -> Result<bool> {
    if classify_diagram(d)? != DiagramClass::Burdened {
        return Err(violation(ctx, "corpus is not Burdened", d));
    }
    let c = d.n_crossings() as i64;
    let s = seifert_circles(d).count() as i64;
    let n = d.n_components() as i64;
    let b = all_b_circles(d).count() as i64;
    let result = jones_polynomial_capped(d, cap)?;
    let (min_q, max_q) = lp_degrees(&result.jones)?;
    let v1 = v_coefficient(&result.jones, 1)?;
    if v1 != BigInt::from(0) {
        return Err(violation(ctx, format!("V1 = {v1}, expected 0"), d));
    }
    if stoimenow_v1(d)? != 0 {
        return Err(violation(ctx, "combinatorial V1 prediction is nonzero", d));
    }
    if min_q != 2 * (c - s + 1) {
        return Err(violation(
            ctx,
            format!("min deg {min_q} != 2(c - s + 1) = {}", 2 * (c - s + 1)),
            d,
        ));
    }
    if check_lemma4(&result.jones, c as usize).violated {
        return Err(violation(
            ctx,
            format!("min deg {min_q} below crossing bound {c}"),
            d,
        ));
    }
    let m = balancing_sequence(d)?.len() as i64;
    if m != c - 2 * (s - 1) {
        return Err(violation(
            ctx,
            format!("balancing length {m} != c - 2(s - 1)"),
            d,
        ));
    }
    if b > 2 * m + n {
        return Err(violation(
            ctx,
            format!("|B| = {b} exceeds 2m + n = {}", 2 * m + n),
            d,
        ));
    }
    if b > 2 * min_q - 2 * c + n {
        return Err(violation(
            ctx,
            format!(
                "|B| = {b} exceeds 2 min - 2c + n = {}",
                2 * min_q - 2 * c + n
            ),
            d,
        ));
    }
    let fibered_bound = 4 * min_q + 2 * (n - 1);
    if max_q > fibered_bound {
        return Err(violation(
            ctx,
            format!("max deg {max_q} exceeds fibered bound {fibered_bound}"),
            d,
        ));
    }
    let bracket_bound = 2 * (2 * c + b - 1);
    if max_q > bracket_bound {
        return Err(violation(
            ctx,
            format!("max deg {max_q} exceeds bracket bound {bracket_bound}"),
            d,
        ));
    }
    Ok(max_q == fibered_bound)
}

/// Degree-bound suite over `count` Burdened corpora with at most `max_c`
/// crossings.  The first corpus is always the inflated Hopf link (the
/// positive trefoil), which attains the maximal-degree bound with equality;
/// the rest are random.
pub fn burdened_suite(count: usize, seed: u64, cap: usize, max_c: usize) -> Result<SuiteOutcome> {
    let mut rng = Lcg::new(seed);
    let mut equalities = 0;
    for i in 0..count {
        let d = if i == 0 {
            let base = fixture(HOPF_PD);
            let pair = matching_pairs(&base)?.remove(0);
            inflate_pair(&base, &pair, 1)?
        } else {
            burdened_corpus(&mut rng, max_c)?
        };
        let ctx = format!("burdened #{i} (seed = {seed})");
        if check_burdened(&d, &ctx, cap)? {
            equalities += 1;
        }
    }
    if count > 0 && equalities == 0 {
        return Err(Error::PropertyViolation(
            "burdened suite: maximal-degree bound was never attained with equality".into(),
        ));
    }
    Ok(SuiteOutcome {
        checked: count,
        max_bound_equalities: equalities,
    })
}

/// Balancing-walk suite: along each corpus's balancing sequence, every
/// prefix of `i` smoothings moves the component count and `|B|` by at most
/// `i`, keeps the diagram positive with the same reduced A-state tree, and
/// ends Balanced.  Then, smoothing both crossings of each matching pair of
/// the Balanced endpoint must split the diagram.
pub fn prop6_suite(count: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = Lcg::new(seed);
    for i in 0..count {
        let d0 = burdened_corpus(&mut rng, 16)?;
        let ctx = format!("prop6 #{i} (seed = {seed})");
        let seq = balancing_sequence(&d0)?;
        let n0 = d0.n_components() as i64;
        let b0 = all_b_circles(&d0).count() as i64;
        let s0 = seifert_circles(&d0).count();
        let mut cur = d0.clone();
        for (step, cid) in seq.iter().enumerate() {
            cur = smooth_crossing(&cur, *cid)?;
            let done = (step + 1) as i64;
            let dn = (cur.n_components() as i64 - n0).abs();
            let db = (all_b_circles(&cur).count() as i64 - b0).abs();
            if dn > done {
                return Err(violation(
                    &ctx,
                    format!("|n - n0| = {dn} after {done} smoothings"),
                    &cur,
                ));
            }
            if db > done {
                return Err(violation(
                    &ctx,
                    format!("||B| - |B0|| = {db} after {done} smoothings"),
                    &cur,
                ));
            }
            if !is_positive(&cur) {
                return Err(violation(&ctx, "intermediate diagram not positive", &cur));
            }
            let rg = reduce_graph(&a_state_graph(&cur)?);
            if rg.vertices != s0 || rg.edges.len() != s0 - 1 || !rg.is_tree {
                return Err(violation(&ctx, "reduced A-state tree changed shape", &cur));
            }
        }
        if classify_diagram(&cur)? != DiagramClass::Balanced {
            return Err(violation(&ctx, "balancing walk did not end Balanced", &cur));
        }
        for pair in matching_pairs(&cur)? {
            let once = smooth_crossing(&cur, pair.crossings[0])?;
            let twice = smooth_crossing(&once, pair.crossings[1])?;
            if !is_split(&twice) {
                return Err(violation(
                    &ctx,
                    format!("smoothing matching pair {:?} did not split", pair.crossings),
                    &cur,
                ));
            }
        }
    }
    Ok(SuiteOutcome {
        checked: count,
        max_bound_equalities: 0,
    })
}

/// Checks the combinatorial first-coefficient formula against the computed
/// polynomial on one diagram.
fn check_stoimenow(d: &OrientedDiagram, ctx: &str, cap: usize) -> Result<()> {
    let predicted = stoimenow_v1(d)?;
    let result = jones_polynomial_capped(d, cap)?;
    let actual = v_coefficient(&result.jones, 1)?;
    if actual != BigInt::from(predicted) {
        return Err(violation(
            ctx,
            format!("V1 = {actual} but formula gives {predicted}"),
            d,
        ));
    }
    Ok(())
}

/// First-coefficient suite: the cyclic fixture (whose reduced A-state graph
/// is a 4-cycle, so V1 = 1) plus `count` generated positive diagrams,
/// alternating Balanced and Burdened.
pub fn stoimenow_suite(count: usize, seed: u64, cap: usize) -> Result<SuiteOutcome> {
    let cyclic = fixture(CYCLIC_FIXTURE_PD);
    check_stoimenow(&cyclic, "stoimenow cyclic fixture", cap)?;
    let mut rng = Lcg::new(seed);
    for i in 0..count {
        let d = if i % 2 == 0 {
            let k = draw_k(&mut rng, 10);
            random_balanced(k, rng.next_draw())
        } else {
            burdened_corpus(&mut rng, 16)?
        };
        check_stoimenow(&d, &format!("stoimenow #{i} (seed = {seed})"), cap)?;
    }
    Ok(SuiteOutcome {
        checked: count + 1,
        max_bound_equalities: 0,
    })
}

/// Mirror checks on one diagram: V of the mirror is V with the variable
/// inverted, and mirroring twice restores the polynomial.
fn check_mirror(d: &OrientedDiagram, ctx: &str, cap: usize) -> Result<()> {
    let v = jones_polynomial_capped(d, cap)?.jones;
    let m = mirror(d);
    let vm = jones_polynomial_capped(&m, cap)?.jones;
    if vm != lp_invert_var(&v) {
        return Err(violation(ctx, "mirror polynomial is not the inversion", d));
    }
    let mm = mirror(&m);
    if jones_polynomial_capped(&mm, cap)?.jones != v {
        return Err(violation(ctx, "double mirror changed the polynomial", d));
    }
    Ok(())
}

/// Mirror suite: pinned fixtures (both trefoils, the Hopf link, the
/// (2,5)-torus knot, the cyclic fixture) plus `count` generated diagrams.
pub fn mirror_suite(count: usize, seed: u64, cap: usize) -> Result<SuiteOutcome> {
    let fixtures = [
        RIGHT_TREFOIL_PD,
        LEFT_TREFOIL_PD,
        HOPF_PD,
        TORUS_2_5_PD,
        CYCLIC_FIXTURE_PD,
    ];
    for (i, pd) in fixtures.iter().enumerate() {
        check_mirror(&fixture(pd), &format!("mirror fixture #{i}"), cap)?;
    }
    let mut rng = Lcg::new(seed);
    for i in 0..count {
        let d = if i % 2 == 0 {
            let k = draw_k(&mut rng, 8);
            random_balanced(k, rng.next_draw())
        } else {
            burdened_corpus(&mut rng, 14)?
        };
        check_mirror(&d, &format!("mirror #{i} (seed = {seed})"), cap)?;
    }
    Ok(SuiteOutcome {
        checked: count + fixtures.len(),
        max_bound_equalities: 0,
    })
}
