//! Degree-based positivity obstructions and the two-form verdict pipeline.
//!
//! Each check is a pure function of Jones-polynomial degrees.  A knot is
//! reported `NotPositive` only when both the polynomial as given and its
//! mirror (variable inversion) violate at least one obstruction; nothing
//! here ever asserts positivity, so the other verdict is `Inconclusive`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{lp_degrees, lp_invert_var, quarter_to_string, LaurentPoly};

/// Outcome of one obstruction check; `violated` implies `applicable`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObstructionResult {
    pub name: String,
    pub applicable: bool,
    pub violated: bool,
    pub details: String,
}

/// A positive nontrivial diagram forces `min deg V > 0`; violated when the
/// minimum degree is zero or negative.
pub fn check_positive_mindeg(v: &LaurentPoly) -> Result<ObstructionResult> {
    let (min_q, _) = lp_degrees(v)?;
    Ok(ObstructionResult {
        name: "positive_min_deg".to_string(),
        applicable: true,
        violated: min_q <= 0,
        details: format!("min deg V = {}; required > 0", quarter_to_string(min_q)),
    })
}

/// Fibered positive bound: `max deg V ≤ (8·min deg V + n − 1)/2`, which is
/// `4·min deg V` for knots.  Gated on the fiberedness flag.
pub fn check_fibered_bound(v: &LaurentPoly, n: usize, fibered: bool) -> Result<ObstructionResult> {
    let (min_q, max_q) = lp_degrees(v)?;
    let bound_q = 4 * min_q + 2 * (n as i64 - 1);
    let details = if fibered {
        format!(
            "max deg V = {}, bound = {}",
            quarter_to_string(max_q),
            quarter_to_string(bound_q)
        )
    } else {
        "not fibered; bound not applicable".to_string()
    };
    Ok(ObstructionResult {
        name: "fibered_degree_bound".to_string(),
        applicable: fibered,
        violated: fibered && max_q > bound_q,
        details,
    })
}

/// Lemma 4 consistency: a reduced positive diagram with `V₁ = 0` satisfies
/// `4·min deg V ≥ c`.  Used by the property suites with the diagram's true
/// crossing number; the polynomial must be nonzero.
pub fn check_lemma4(v: &LaurentPoly, c_hypothetical: usize) -> ObstructionResult {
    let (min_q, _) = lp_degrees(v).expect("Lemma 4 check requires a nonzero polynomial");
    ObstructionResult {
        name: "lemma4_crossing_bound".to_string(),
        applicable: true,
        violated: min_q < c_hypothetical as i64,
        details: format!("4·min deg V = {min_q}, c = {c_hypothetical}"),
    }
}

/// Final verdict of the pipeline; positivity is never asserted.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum Verdict {
    NotPositive,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NotPositive => "NOT POSITIVE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Obstruction results for one form of the polynomial (as given or
/// mirrored).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormCheck {
    pub form: String,
    pub obstructions: Vec<ObstructionResult>,
}

impl FormCheck {
    pub fn any_violated(&self) -> bool {
        self.obstructions.iter().any(|o| o.violated)
    }
}

/// Verdict for one named record, with the evidence for both forms.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub name: String,
    pub verdict: Verdict,
    pub forms: Vec<FormCheck>,
}

/// Number of link components consistent with the exponent grid of `V`:
/// all quarter-exponents of a Jones polynomial are congruent mod 4, residue
/// 0 for odd component counts (reported as 1) and 2 for even ones (2).
fn components_from_grid(v: &LaurentPoly) -> Result<usize> {
    let (min_q, _) = lp_degrees(v)?;
    let residue = min_q.rem_euclid(4);
    for &q in v.terms().keys() {
        if q.rem_euclid(4) != residue {
            return Err(Error::Congruence(format!(
                "exponents {} and {} of V lie on different quarter-grids",
                quarter_to_string(min_q),
                quarter_to_string(q)
            )));
        }
    }
    match residue {
        0 => Ok(1),
        2 => Ok(2),
        _ => Err(Error::Congruence(format!(
            "exponent {} of V lies off the (half-)integer grid",
            quarter_to_string(min_q)
        ))),
    }
}

fn check_form(form: &str, v: &LaurentPoly, n: usize, fibered: bool) -> Result<FormCheck> {
    Ok(FormCheck {
        form: form.to_string(),
        obstructions: vec![
            check_positive_mindeg(v)?,
            check_fibered_bound(v, n, fibered)?,
        ],
    })
}

/// Runs the obstruction battery on `v` and on its mirror.  `NotPositive`
/// iff each form violates at least one obstruction; the component count for
/// the fibered bound is read off the exponent grid.
pub fn classify_positivity(
    name: &str,
    v: &LaurentPoly,
    fibered: bool,
) -> Result<PositivityVerdict> {
    let n = components_from_grid(v)?;
    let forms = vec![
        check_form("as-given", v, n, fibered)?,
        check_form("mirrored", &lp_invert_var(v), n, fibered)?,
    ];
    let verdict = if forms.iter().all(FormCheck::any_violated) {
        Verdict::NotPositive
    } else {
        Verdict::Inconclusive
    };
    Ok(PositivityVerdict {
        name: name.to_string(),
        verdict,
        forms,
    })
}
