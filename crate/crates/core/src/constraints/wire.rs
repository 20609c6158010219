//! JSON forms of relation systems and of (possibly partial) problem data.
//!
//! A class is either a name understood by [`named_class`] or an explicit
//! number list in which a `null` value marks an unknown. Unlisted numbers are
//! zero. An omitted `total` or `base` is entirely unknown, an omitted `kappa`
//! is entirely unknown when solving and zero when checking.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    FeasibilityProblem, KappaFunctional, KappaSequence, LinearConstraint, PartialProblem,
};
use crate::bordism::{monomial_from_pairs_json, named_class, BordismClassQ, BordismJson};
use crate::error::{Error, Result};
use crate::graded::{format_monomial, parse_monomial, GeneratorSystem, Monomial};
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoeffJson {
    pub monomial: String,
    pub coef: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KappaCoeffJson {
    pub sequence: Vec<String>,
    pub coef: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub x: String,
    pub e_coeffs: Vec<CoeffJson>,
    pub b_coeffs: Vec<CoeffJson>,
    pub kappa_coeffs: Vec<KappaCoeffJson>,
    pub constant: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub d: u32,
    pub p: u32,
    pub fibre: BordismJson,
    pub constraints: Vec<ConstraintJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn sequence_strings(d: u32, s: &KappaSequence) -> Vec<String> {
    s.monomials()
        .iter()
        .map(|c| format_monomial(GeneratorSystem::Bso(d), c))
        .collect()
}

fn p_coeffs(map: &BTreeMap<Monomial, Rational>) -> Vec<CoeffJson> {
    map.iter()
        .map(|(m, c)| CoeffJson {
            monomial: format_monomial(GeneratorSystem::P, m),
            coef: format_rational(c),
        })
        .collect()
}

impl ConstraintJson {
    pub fn new(d: u32, c: &LinearConstraint) -> Self {
        ConstraintJson {
            x: c.label.to_string(),
            e_coeffs: p_coeffs(&c.e_coeffs),
            b_coeffs: p_coeffs(&c.b_coeffs),
            kappa_coeffs: c
                .kappa_coeffs
                .iter()
                .map(|(s, v)| KappaCoeffJson {
                    sequence: sequence_strings(d, s),
                    coef: format_rational(v),
                })
                .collect(),
            constant: format_rational(&c.constant),
        }
    }
}

impl SystemJson {
    pub fn new(d: u32, p: u32, fibre: &BordismClassQ, constraints: &[LinearConstraint]) -> Self {
        SystemJson {
            d,
            p,
            fibre: fibre.into(),
            constraints: constraints.iter().map(|c| ConstraintJson::new(d, c)).collect(),
            note: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartialNumberJson {
    pub monomial: Vec<(u32, u32)>,
    pub value: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartialClassJson {
    pub dim: u32,
    pub numbers: Vec<PartialNumberJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Named(String),
    Numbers(PartialClassJson),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KappaEntryJson {
    pub sequence: Vec<String>,
    pub value: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProblemJson {
    pub d: u32,
    pub p: u32,
    pub fibre: ClassSpec,
    #[serde(default)]
    pub total: Option<ClassSpec>,
    #[serde(default)]
    pub base: Option<ClassSpec>,
    #[serde(default)]
    pub kappa: Option<Vec<KappaEntryJson>>,
}

fn parse_value(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
}

type PartialNumbers = BTreeMap<Monomial, Option<Rational>>;

impl ClassSpec {
    fn partial(&self, dim: u32, what: &str) -> Result<PartialNumbers> {
        let mut out: PartialNumbers = crate::graded::monomial_basis(GeneratorSystem::P, dim)
            .into_iter()
            .map(|m| (m, Some(Rational::from_integer(0.into()))))
            .collect();
        match self {
            ClassSpec::Named(name) => {
                let c = named_class(name)?;
                if c.dim() != dim {
                    return Err(Error::InvalidInput(format!(
                        "{what} {name:?} has dimension {}, expected {dim}",
                        c.dim()
                    )));
                }
                for (m, v) in out.iter_mut() {
                    *v = Some(c.number(m));
                }
            }
            ClassSpec::Numbers(j) => {
                if j.dim != dim {
                    return Err(Error::InvalidInput(format!(
                        "{what} has dimension {}, expected {dim}",
                        j.dim
                    )));
                }
                for n in &j.numbers {
                    let m = monomial_from_pairs_json(&n.monomial)?;
                    let slot = out.get_mut(&m).ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "{what}: {:?} is not a monomial of degree {dim}",
                            n.monomial
                        ))
                    })?;
                    *slot = n.value.as_deref().map(parse_value).transpose()?;
                }
            }
        }
        Ok(out)
    }

    fn known(&self, dim: u32, what: &str) -> Result<BordismClassQ> {
        let numbers = self.partial(dim, what)?;
        let mut entries = Vec::with_capacity(numbers.len());
        for (m, v) in numbers {
            let v = v.ok_or_else(|| {
                Error::InvalidInput(format!("{what}: unknown numbers are only allowed by solve"))
            })?;
            entries.push((m, v));
        }
        BordismClassQ::from_numbers(dim, entries)
    }
}

impl ProblemJson {
    fn kappa_entries(&self) -> Result<Option<BTreeMap<KappaSequence, Option<Rational>>>> {
        let Some(entries) = &self.kappa else {
            return Ok(None);
        };
        let sys = GeneratorSystem::bso(self.d)?;
        let mut out = BTreeMap::new();
        for entry in entries {
            let monomials = entry
                .sequence
                .iter()
                .map(|s| parse_monomial(s, sys))
                .collect::<Result<Vec<_>>>()?;
            let seq = KappaSequence::new(monomials);
            if seq.kappa_degree(self.d) != Some(self.p) {
                return Err(Error::InvalidInput(format!(
                    "{:?} is not a kappa sequence of degree {}",
                    entry.sequence, self.p
                )));
            }
            let value = entry.value.as_deref().map(parse_value).transpose()?;
            if out.insert(seq, value).is_some() {
                return Err(Error::InvalidInput(format!(
                    "kappa sequence {:?} listed twice",
                    entry.sequence
                )));
            }
        }
        Ok(Some(out))
    }

    /// Fully specified data for checking.
    pub fn to_feasibility(&self) -> Result<FeasibilityProblem> {
        let fibre = self.fibre.known(self.d, "fibre")?;
        let missing = |what: &str| Error::InvalidInput(format!("{what} is required"));
        let total = self
            .total
            .as_ref()
            .ok_or_else(|| missing("total"))?
            .known(self.d + self.p, "total")?;
        let base = self
            .base
            .as_ref()
            .ok_or_else(|| missing("base"))?
            .known(self.p, "base")?;
        let mut kappa = KappaFunctional::zero(self.d, self.p);
        for (seq, v) in self.kappa_entries()?.unwrap_or_default() {
            let v = v.ok_or_else(|| {
                Error::InvalidInput("kappa: unknown values are only allowed by solve".into())
            })?;
            kappa.set(seq, v)?;
        }
        FeasibilityProblem::new(fibre, total, base, kappa)
    }

    /// Data with holes for solving.
    pub fn to_partial(&self) -> Result<PartialProblem> {
        let fibre = self.fibre.known(self.d, "fibre")?;
        let mut problem = PartialProblem::unknown(self.d, self.p, fibre)?;
        if let Some(total) = &self.total {
            problem.total = total.partial(self.d + self.p, "total")?;
        }
        if let Some(base) = &self.base {
            problem.base = base.partial(self.p, "base")?;
        }
        if let Some(given) = self.kappa_entries()? {
            let zero = Rational::from_integer(0.into());
            for (seq, slot) in problem.kappa.iter_mut() {
                *slot = match given.get(seq) {
                    Some(v) => v.clone(),
                    None => Some(zero.clone()),
                };
            }
        }
        Ok(problem)
    }
}

fn explicit(c: &BordismClassQ) -> ClassSpec {
    let j = BordismJson::from(c);
    ClassSpec::Numbers(PartialClassJson {
        dim: j.dim,
        numbers: j
            .numbers
            .into_iter()
            .map(|n| PartialNumberJson {
                monomial: n.monomial,
                value: Some(n.value),
            })
            .collect(),
    })
}

impl From<&FeasibilityProblem> for ProblemJson {
    fn from(pr: &FeasibilityProblem) -> Self {
        ProblemJson {
            d: pr.d,
            p: pr.p,
            fibre: explicit(&pr.fibre),
            total: Some(explicit(&pr.total)),
            base: Some(explicit(&pr.base)),
            kappa: Some(
                pr.kappa
                    .values()
                    .map(|(s, v)| KappaEntryJson {
                        sequence: sequence_strings(pr.d, s),
                        value: Some(format_rational(v)),
                    })
                    .collect(),
            ),
        }
    }
}
