//! JSON wire format. A polynomial is
//! `{"system": "ph", "terms": [{"exps": [["ph1", 2], ["ph2", 1]], "coef": "3/2"}]}`
//! and a tensor term carries `left` and `right` exponent lists instead of `exps`.

use serde::{Deserialize, Serialize};

use super::{parse_monomial, GeneratorSystem, GradedPolynomial, Monomial, TensorPolynomial};
use crate::error::Error;
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<(String, u32)>,
    pub coef: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub system: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub left: Vec<(String, u32)>,
    pub right: Vec<(String, u32)>,
    pub coef: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorJson {
    pub left_system: String,
    pub right_system: String,
    pub terms: Vec<TensorTermJson>,
}

pub(crate) fn exps_to_json(system: GeneratorSystem, m: &Monomial) -> Vec<(String, u32)> {
    m.pairs()
        .iter()
        .map(|&(g, e)| (system.generator_name(g), e))
        .collect()
}

pub(crate) fn exps_from_json(system: GeneratorSystem, exps: &[(String, u32)]) -> Result<Monomial, Error> {
    let mut pairs = Vec::with_capacity(exps.len());
    for (name, e) in exps {
        if *e == 0 {
            return Err(Error::Parse(format!("zero exponent for {name}")));
        }
        let g = parse_monomial(name, system)?;
        match g.pairs() {
            [(index, 1)] => pairs.push((*index, *e)),
            _ => return Err(Error::Parse(format!("{name:?} is not a generator"))),
        }
    }
    let m = Monomial::from_pairs(pairs.iter().copied());
    if m.pairs().len() != pairs.len() {
        return Err(Error::Parse("repeated generator in exponent list".into()));
    }
    Ok(m)
}

fn coef_from_json(s: &str) -> Result<Rational, Error> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
}

impl From<&GradedPolynomial> for PolynomialJson {
    fn from(p: &GradedPolynomial) -> Self {
        PolynomialJson {
            system: p.system().to_string(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    exps: exps_to_json(p.system(), m),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolynomialJson> for GradedPolynomial {
    type Error = Error;

    fn try_from(j: &PolynomialJson) -> Result<Self, Error> {
        let system: GeneratorSystem = j.system.parse()?;
        let mut out = GradedPolynomial::zero(system);
        for t in &j.terms {
            out.add_term(exps_from_json(system, &t.exps)?, coef_from_json(&t.coef)?);
        }
        Ok(out)
    }
}

impl From<&TensorPolynomial> for TensorJson {
    fn from(t: &TensorPolynomial) -> Self {
        let (ls, rs) = (t.left_system(), t.right_system());
        let mut terms: Vec<_> = t.terms().collect();
        terms.sort_by_key(|((a, b), _)| (a.degree(ls), b.degree(rs)));
        TensorJson {
            left_system: ls.to_string(),
            right_system: rs.to_string(),
            terms: terms
                .into_iter()
                .map(|((a, b), c)| TensorTermJson {
                    left: exps_to_json(ls, a),
                    right: exps_to_json(rs, b),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&TensorJson> for TensorPolynomial {
    type Error = Error;

    fn try_from(j: &TensorJson) -> Result<Self, Error> {
        let ls: GeneratorSystem = j.left_system.parse()?;
        let rs: GeneratorSystem = j.right_system.parse()?;
        let mut out = TensorPolynomial::zero(ls, rs);
        for t in &j.terms {
            out.add_term(
                exps_from_json(ls, &t.left)?,
                exps_from_json(rs, &t.right)?,
                coef_from_json(&t.coef)?,
            );
        }
        Ok(out)
    }
}

impl Serialize for GradedPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        GradedPolynomial::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for TensorPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TensorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TensorJson::deserialize(d)?;
        TensorPolynomial::try_from(&j).map_err(serde::de::Error::custom)
    }
}
