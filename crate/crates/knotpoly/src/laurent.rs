//! Exact sparse Laurent-polynomial arithmetic over the integers.
//!
//! Two flavors share one representation: the Kauffman bracket variable `A`
//! (integer exponents) and the Jones variable `t`, whose exponents are kept
//! in quarter-`t` units so the substitution `A = t^(-1/4)` never needs
//! rational arithmetic.  An exponent `q` in a [`Var::JonesT`] polynomial
//! denotes `t^(q/4)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which indeterminate a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// Kauffman bracket variable; exponent unit is one power of `A`.
    BracketA,
    /// Jones variable; exponent unit is a quarter power of `t`.
    JonesT,
}

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Invariants: no stored coefficient is zero, and the zero polynomial has an
/// empty term map.  Values are immutable after construction and safe to share
/// across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero(var: Var) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, BigInt::one())
    }

    /// A single term `coeff * x^exp` (empty if `coeff` is zero).
    pub fn monomial(var: Var, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let coeff = coeff.into();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { var, terms }
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping
    /// zero coefficients.
    pub fn from_terms(var: Var, iter: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in iter {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        LaurentPoly { var, terms }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term map from exponent (native units) to nonzero coefficient.
    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    /// Coefficient at `exp`, zero when absent.
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Coefficient-wise sum.  Errors when the variables differ.
pub fn lp_add(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    if p.var != q.var {
        return Err(Error::VariableMismatch);
    }
    let mut terms = p.terms.clone();
    for (&e, c) in &q.terms {
        let entry = terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            terms.remove(&e);
        }
    }
    Ok(LaurentPoly { var: p.var, terms })
}

/// Convolution product with exact integer coefficients.
pub fn lp_mul(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    if p.var != q.var {
        return Err(Error::VariableMismatch);
    }
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (&e1, c1) in &p.terms {
        for (&e2, c2) in &q.terms {
            let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
            *entry += c1 * c2;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(LaurentPoly { var: p.var, terms })
}

/// Smallest and largest exponents carrying a nonzero coefficient, in the
/// polynomial's native units.  Errors on the zero polynomial.
pub fn lp_degrees(p: &LaurentPoly) -> Result<(i64, i64)> {
    let min = p.terms.keys().next().ok_or(Error::ZeroPolynomial)?;
    let max = p.terms.keys().next_back().ok_or(Error::ZeroPolynomial)?;
    Ok((*min, *max))
}

/// Substitutes the inverse variable: every exponent `e` becomes `-e`.
pub fn lp_invert_var(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly {
        var: p.var,
        terms: p.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
    }
}

/// Normalizes a Kauffman bracket value into the Jones polynomial
/// `V = (-A^3)^{-w} * <D>` evaluated at `A = t^{-1/4}`.
///
/// A bracket term `c * A^e` becomes `c * (-1)^w * t^{(3w - e)/4}`, i.e. the
/// quarter-exponent `3w - e`.  The output must satisfy the component-count
/// congruence: every quarter-exponent is `2(n-1) (mod 4)`; a violation is
/// reported as an internal-consistency error because it can only come from a
/// smoothing-convention bug or a non-planar input.
pub fn bracket_to_jones(
    bracket: &LaurentPoly,
    writhe: i64,
    n_components: usize,
) -> Result<LaurentPoly> {
    if bracket.var != Var::BracketA {
        return Err(Error::VariableMismatch);
    }
    let sign = if writhe.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let terms = bracket
        .terms
        .iter()
        .map(|(&e, c)| (3 * writhe - e, c * &sign))
        .collect::<Vec<_>>();
    let out = LaurentPoly::from_terms(Var::JonesT, terms);
    let want = (2 * (n_components as i64 - 1)).rem_euclid(4);
    for &q in out.terms.keys() {
        if q.rem_euclid(4) != want {
            return Err(Error::Congruence(format!(
                "quarter-exponent {q} is {} mod 4, expected {want} for {n_components} component(s)",
                q.rem_euclid(4),
            )));
        }
    }
    Ok(out)
}

/// Renders one exponent of a [`Var::JonesT`] polynomial as a `t`-degree:
/// `"3"`, `"-4"`, `"5/2"`, `"-1/2"`.
pub fn quarter_to_string(q: i64) -> String {
    if q % 4 == 0 {
        format!("{}", q / 4)
    } else if q % 2 == 0 {
        format!("{}/2", q / 2)
    } else {
        format!("{q}/4")
    }
}

fn fmt_term(var: Var, q: i64) -> String {
    let (symbol, whole) = match var {
        Var::BracketA => ("A", Some(q)),
        Var::JonesT => ("t", (q % 4 == 0).then_some(q / 4)),
    };
    match whole {
        Some(0) => "1".to_string(),
        Some(1) => symbol.to_string(),
        Some(e) => format!("{symbol}^{e}"),
        None => format!("{symbol}^({})", quarter_to_string(q)),
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms sorted by ascending exponent: `-t^-4 + t^-3 + t^-1`,
    /// half-integer exponents parenthesized: `t^(5/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&q, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sym = fmt_term(self.var, q);
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if sym == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{mag}{sym}")?;
            }
        }
        Ok(())
    }
}

/// Parses the textual `t`-polynomial format produced by [`LaurentPoly`]'s
/// `Display` impl (and used by census expected-value files):
/// `t^3 + 2t^6 - t^13`, `-t^(1/2) - t^(5/2)`, `1`, `0`.
pub fn parse_jones(text: &str) -> Result<LaurentPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Validation(format!("polynomial parse error: {msg} in {text:?}"));
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    if compact == "0" {
        return Ok(LaurentPoly::zero(Var::JonesT));
    }
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        // Sign.
        let mut sign: i64 = 1;
        if bytes[i] == b'+' {
            i += 1;
        } else if bytes[i] == b'-' {
            sign = -1;
            i += 1;
        }
        // Optional integer coefficient.
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: BigInt = if start == i {
            BigInt::one()
        } else {
            compact[start..i]
                .parse()
                .map_err(|_| err("bad coefficient"))?
        };
        // Optional `t` with optional exponent.
        let mut quarter: i64 = 0;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            quarter = 4;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let parens = i < bytes.len() && bytes[i] == b'(';
                if parens {
                    i += 1;
                }
                let start = i;
                if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: i64 = compact[start..i].parse().map_err(|_| err("bad exponent"))?;
                let mut den: i64 = 1;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = compact[start..i]
                        .parse()
                        .map_err(|_| err("bad exponent denominator"))?;
                }
                if parens {
                    if i < bytes.len() && bytes[i] == b')' {
                        i += 1;
                    } else {
                        return Err(err("unclosed exponent parenthesis"));
                    }
                }
                if den != 1 && den != 2 && den != 4 {
                    return Err(err("exponent denominator must divide 4"));
                }
                quarter = num * (4 / den);
            }
        } else if start == i {
            return Err(err("expected coefficient or t"));
        }
        terms.push((quarter, coeff * sign));
    }
    Ok(LaurentPoly::from_terms(Var::JonesT, terms))
}
