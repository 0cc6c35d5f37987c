//! Bracket, f, Jones, Conway and Kauffman L/F invariants of diagrams.

mod bracket;
mod cache;
mod conway;
mod kauffman;
mod simplify;

pub use bracket::{
    bracket_skein, bracket_skein_with, bracket_statesum, state_table, state_table_tsv, sum_state_rows, StateRow,
    DEFAULT_STATE_CAP, STATESUM_MAX_CROSSINGS,
};
pub use cache::SkeinCache;
pub use conway::{conway, conway_with};
pub use kauffman::{kauffman_f, kauffman_l, kauffman_l_with, mu, specialize_l};

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::poly::{format_scaled, parse_scaled, LaurentPoly, PolyError, Ring};

/// Recursion guard for the skein recursions; hitting it means a bug.
pub const MAX_DEPTH: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("diagram has no components")]
    EmptyDiagram,
    #[error("{n} crossings exceeds the cap of {max}")]
    TooManyCrossings { n: usize, max: usize },
    #[error("skein recursion deeper than {0}")]
    DepthExceeded(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `f = (-A^3)^(-w) <K>`.
pub fn f_poly(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    let w = d.writhe()?;
    let b = bracket_skein(d)?;
    Ok(normalize_bracket(&b, w))
}

pub(crate) fn normalize_bracket(b: &LaurentPoly, writhe: i32) -> LaurentPoly {
    let unit = LaurentPoly::monomial(&Ring::a(), &[-3 * writhe], if writhe % 2 == 0 { 1 } else { -1 });
    &unit * b
}

/// Jones polynomial in `u = t^(1/4)`: `f` with `A -> u^-1`.
pub fn jones(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    Ok(jones_from_f(&f_poly(d)?))
}

pub fn jones_from_f(f: &LaurentPoly) -> LaurentPoly {
    f.substitute("A", &LaurentPoly::monomial(&Ring::u(), &[-1], 1)).expect("f lives in the A ring")
}

/// Jones polynomial written in `t`, e.g. `-t^4 + t^3 + t`.
pub fn jones_text(j: &LaurentPoly) -> String {
    format_scaled(j, &["t"], 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Chiral,
    Inconclusive,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Chiral => "CHIRAL",
            Chirality::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralityCertificate {
    pub f: LaurentPoly,
    pub f_mirror: LaurentPoly,
    pub verdict: Chirality,
}

/// Compares `f` of the diagram with `f` of its mirror. Unequal values
/// prove chirality; equal values prove nothing.
pub fn chirality_certificate(d: &Diagram) -> Result<ChiralityCertificate, InvariantError> {
    let f = f_poly(d)?;
    let f_mirror = f_poly(&d.mirror())?;
    let verdict = if f != f_mirror { Chirality::Chiral } else { Chirality::Inconclusive };
    Ok(ChiralityCertificate { f, f_mirror, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub crossings: usize,
    pub components: usize,
    pub writhe: i32,
    pub bracket: LaurentPoly,
    pub f: LaurentPoly,
    pub jones: LaurentPoly,
    pub conway: LaurentPoly,
    pub l: LaurentPoly,
    pub f_kauffman: LaurentPoly,
    /// Only computed for knots.
    pub chirality: Option<ChiralityCertificate>,
}

pub fn compute_report(d: &Diagram) -> Result<InvariantReport, InvariantError> {
    let writhe = d.writhe()?;
    let bracket = bracket_skein(d)?;
    let f = normalize_bracket(&bracket, writhe);
    let jones = jones_from_f(&f);
    let l = kauffman_l(d)?;
    let f_kauffman = &LaurentPoly::monomial(&Ring::za(), &[0, -writhe], 1) * &l;
    let components = d.component_count();
    let chirality = if components == 1 { Some(chirality_certificate(d)?) } else { None };
    Ok(InvariantReport {
        crossings: d.crossing_count(),
        components,
        writhe,
        bracket,
        f,
        jones,
        conway: conway(d)?,
        l,
        f_kauffman,
        chirality,
    })
}

/// One expectation that a report does not meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Error)]
pub enum ExpectationError {
    #[error("unknown invariant '{0}'")]
    UnknownKey(String),
    #[error("expected value for '{key}': {source}")]
    BadPoly { key: String, source: PolyError },
    #[error("expected value for '{key}' is not {what}")]
    BadValue { key: String, what: &'static str },
}

/// `{ring, text, terms}` form used in JSON reports.
pub fn poly_json(p: &LaurentPoly) -> Value {
    json!({ "ring": p.ring().vars(), "text": p.to_string(), "terms": p.to_json() })
}

impl InvariantReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("crossings: {}\n", self.crossings));
        s.push_str(&format!("components: {}\n", self.components));
        s.push_str(&format!("writhe: {}\n", self.writhe));
        s.push_str(&format!("bracket: {}\n", self.bracket));
        s.push_str(&format!("f: {}\n", self.f));
        s.push_str(&format!("jones: {}\n", jones_text(&self.jones)));
        s.push_str(&format!("conway: {}\n", self.conway));
        s.push_str(&format!("L: {}\n", self.l));
        s.push_str(&format!("F: {}\n", self.f_kauffman));
        if let Some(c) = &self.chirality {
            s.push_str(&format!("chirality: {}\n", c.verdict));
        }
        s
    }

    /// Compares the report against `key=value` expectations. Polynomials
    /// are compared after parsing, so any term order is accepted. Keys:
    /// bracket, f, jones (in `t`), conway, L, F, writhe, components,
    /// crossings, chirality.
    pub fn check<'a, I>(&self, expected: I) -> Result<Vec<Mismatch>, ExpectationError>
    where
        I: IntoIterator<Item = (&'a String, &'a String)>,
    {
        let mut out = Vec::new();
        for (key, want) in expected {
            let bad_poly = |source| ExpectationError::BadPoly { key: key.clone(), source };
            let int = |what| want.trim().parse::<i64>().map_err(|_| ExpectationError::BadValue { key: key.clone(), what });
            let (ok, got) = match key.as_str() {
                "bracket" | "f" | "conway" | "L" | "F" => {
                    let (ring, have) = match key.as_str() {
                        "bracket" => (Ring::a(), &self.bracket),
                        "f" => (Ring::a(), &self.f),
                        "conway" => (Ring::z(), &self.conway),
                        "L" => (Ring::za(), &self.l),
                        _ => (Ring::za(), &self.f_kauffman),
                    };
                    let p = LaurentPoly::parse(want, &ring).map_err(bad_poly)?;
                    (&p == have, have.to_string())
                }
                "jones" => {
                    let p = parse_scaled(want, &["t"], &Ring::u(), 4).map_err(bad_poly)?;
                    (p == self.jones, jones_text(&self.jones))
                }
                "writhe" => (int("an integer")? == self.writhe as i64, self.writhe.to_string()),
                "components" => (int("an integer")? == self.components as i64, self.components.to_string()),
                "crossings" => (int("an integer")? == self.crossings as i64, self.crossings.to_string()),
                "chirality" => {
                    let got = self.chirality.as_ref().map_or("-".to_string(), |c| c.verdict.to_string());
                    if !matches!(want.trim(), "CHIRAL" | "INCONCLUSIVE") {
                        return Err(ExpectationError::BadValue { key: key.clone(), what: "CHIRAL or INCONCLUSIVE" });
                    }
                    (want.trim() == got, got)
                }
                _ => return Err(ExpectationError::UnknownKey(key.clone())),
            };
            if !ok {
                out.push(Mismatch { key: key.clone(), expected: want.clone(), got });
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "crossings": self.crossings,
            "components": self.components,
            "writhe": self.writhe,
            "bracket": poly_json(&self.bracket),
            "f": poly_json(&self.f),
            "jones": poly_json(&self.jones),
            "jones_t": jones_text(&self.jones),
            "conway": poly_json(&self.conway),
            "L": poly_json(&self.l),
            "F": poly_json(&self.f_kauffman),
        });
        if let Some(c) = &self.chirality {
            v["chirality"] = json!({
                "verdict": c.verdict.to_string(),
                "f": poly_json(&c.f),
                "f_mirror": poly_json(&c.f_mirror),
            });
        }
        v
    }
}
