//! JSON phase format:
//! `{"nx":2,"nz":2,"m":3,"terms":[{"alpha":[1,0],"beta":[2,0],"coef":"1"}, ...]}`
//! with coefficients as decimal-or-fraction strings.

use super::{parse_rat, rat_string, HomPoly, MultiIndex, PhasePoly, PolyError};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nx: usize,
    nz: usize,
    m: u32,
    terms: Vec<TermJson>,
}

fn to_json(p: &HomPoly) -> PolyJson {
    PolyJson {
        nx: p.n_x(),
        nz: p.n_z(),
        m: p.degree(),
        terms: p
            .terms()
            .map(|(idx, c)| TermJson {
                alpha: idx.alpha.clone(),
                beta: idx.beta.clone(),
                coef: rat_string(c),
            })
            .collect(),
    }
}

fn from_json(j: &PolyJson) -> Result<HomPoly, PolyError> {
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        terms.push((
            MultiIndex::new(t.alpha.clone(), t.beta.clone()),
            parse_rat(&t.coef)?,
        ));
    }
    HomPoly::from_terms(j.nx, j.nz, j.m, terms)
}

/// Serializes a homogeneous polynomial to the canonical JSON string
/// (terms in lexicographic multi-index order).
pub fn hompoly_to_json(p: &HomPoly) -> String {
    serde_json::to_string(&to_json(p)).expect("poly json")
}

pub fn hompoly_from_json(src: &str) -> Result<HomPoly, PolyError> {
    let j: PolyJson = serde_json::from_str(src).map_err(|e| PolyError::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    from_json(&j)
}

pub fn phase_to_json(p: &PhasePoly) -> String {
    hompoly_to_json(p.poly())
}

pub fn phase_from_json(src: &str) -> Result<PhasePoly, PolyError> {
    PhasePoly::new(hompoly_from_json(src)?)
}
