//! Rational oriented bordism, `Omega^SO_m (x) Q`, represented by Pontryagin
//! numbers `<p^I, [M]>` for all degree-`m` monomials `p^I`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{coproduct, monomial_basis, to_p, GeneratorSystem, GradedPolynomial, Monomial};
use crate::linalg::{format_rational, parse_rational, Rational};

/// A rational bordism class of dimension `dim`. The number map always has
/// exactly the degree-`dim` Pontryagin monomials as keys (none when
/// `dim` is not a multiple of 4).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BordismClassQ {
    dim: u32,
    numbers: BTreeMap<Monomial, Rational>,
}

impl BordismClassQ {
    pub fn zero(dim: u32) -> Self {
        Self::from_fn(dim, |_| Rational::zero())
    }

    pub fn from_fn(dim: u32, mut f: impl FnMut(&Monomial) -> Rational) -> Self {
        let numbers = monomial_basis(GeneratorSystem::P, dim)
            .into_iter()
            .map(|m| {
                let v = f(&m);
                (m, v)
            })
            .collect();
        BordismClassQ { dim, numbers }
    }

    /// Builds a class from (some of) its Pontryagin numbers; missing entries are
    /// zero. Keys must be Pontryagin monomials of degree `dim`.
    pub fn from_numbers(
        dim: u32,
        numbers: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(dim);
        for (m, v) in numbers {
            if !m.belongs_to(GeneratorSystem::P) || m.degree(GeneratorSystem::P) != dim {
                return Err(Error::InvalidInput(format!(
                    "{m:?} is not a Pontryagin monomial of degree {dim}"
                )));
            }
            out.numbers.insert(m, v);
        }
        Ok(out)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn numbers(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.numbers.iter()
    }

    /// `<p^I, [M]>`; zero for monomials of the wrong degree.
    pub fn number(&self, m: &Monomial) -> Rational {
        self.numbers.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.numbers.values().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BordismClassQ {
            dim: self.dim,
            numbers: self.numbers.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.dim, other.dim, "bordism classes of different dimensions");
        BordismClassQ {
            dim: self.dim,
            numbers: self
                .numbers
                .iter()
                .map(|(m, v)| (m.clone(), f(v, &other.number(m))))
                .collect(),
        }
    }
}

impl Add for &BordismClassQ {
    type Output = BordismClassQ;

    fn add(self, rhs: &BordismClassQ) -> BordismClassQ {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BordismClassQ {
    type Output = BordismClassQ;

    fn sub(self, rhs: &BordismClassQ) -> BordismClassQ {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BordismClassQ {
    type Output = BordismClassQ;

    fn neg(self) -> BordismClassQ {
        self.scale(&-Rational::from_integer(1.into()))
    }
}

/// The class of `CP^n`, of real dimension `2n`. With `p(CP^n) = (1 + a^2)^{n+1}`
/// each `p_i` is `binom(n+1, i) a^{2i}`, so a top-degree monomial `p^I`
/// integrates to `prod_i binom(n+1, i)^{I_i}`.
pub fn cp_class(n: u32) -> BordismClassQ {
    BordismClassQ::from_fn(2 * n, |m| {
        let value = m
            .pairs()
            .iter()
            .map(|&(i, e)| crate::graded::binomial_coefficient(n + 1, i).pow(e))
            .fold(num_bigint::BigUint::from(1u32), |acc, b| acc * b);
        Rational::from_integer(BigInt::from(value))
    })
}

/// `<x, [M]> = int_M x(TM)`: only the component of `x` in degree `dim M`
/// contributes.
pub fn pair(x: &GradedPolynomial, c: &BordismClassQ) -> Result<Rational> {
    let xp = to_p(x)?;
    Ok(xp
        .terms()
        .filter(|(m, _)| m.degree(GeneratorSystem::P) == c.dim)
        .fold(Rational::zero(), |acc, (m, coef)| acc + coef * c.number(m)))
}

/// The class of `M x N`. A Pontryagin number of the product splits through the
/// Whitney coproduct: `<p^I, M x N> = sum <a, M> <b, N>` over `Delta(p^I)`.
pub fn product(c1: &BordismClassQ, c2: &BordismClassQ) -> BordismClassQ {
    let dim = c1.dim + c2.dim;
    BordismClassQ::from_fn(dim, |m| {
        let x = GradedPolynomial::monomial(GeneratorSystem::P, m.clone(), Rational::from_integer(1.into()));
        coproduct(&x)
            .expect("Pontryagin monomial")
            .bidegree_component(c1.dim, c2.dim)
            .evaluate(|a| c1.number(a), |b| c2.number(b))
    })
}

/// Named classes: `cpN`, products such as `cp2xcp4`, and `zeroN` for the zero
/// class of dimension `N`.
pub fn named_class(name: &str) -> Result<BordismClassQ> {
    let name = name.trim();
    if let Some(dim) = name.strip_prefix("zero") {
        let dim = dim
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad bordism class name {name:?}")))?;
        return Ok(BordismClassQ::zero(dim));
    }
    let mut acc: Option<BordismClassQ> = None;
    for factor in name.split('x') {
        let n = factor
            .strip_prefix("cp")
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad bordism class name {name:?}")))?;
        let c = cp_class(n);
        acc = Some(match acc {
            None => c,
            Some(prev) => product(&prev, &c),
        });
    }
    acc.ok_or_else(|| Error::Parse("empty bordism class name".into()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NumberJson {
    pub monomial: Vec<(u32, u32)>,
    pub value: String,
}

/// `{"dim": m, "numbers": [{"monomial": [[i, exp], ...], "value": "num/den"}]}`
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BordismJson {
    pub dim: u32,
    pub numbers: Vec<NumberJson>,
}

impl From<&BordismClassQ> for BordismJson {
    fn from(c: &BordismClassQ) -> Self {
        let mut numbers: Vec<_> = c.numbers.iter().collect();
        numbers.sort_by(|a, b| a.0.cmp(b.0));
        BordismJson {
            dim: c.dim,
            numbers: numbers
                .into_iter()
                .map(|(m, v)| NumberJson {
                    monomial: m.pairs().to_vec(),
                    value: format_rational(v),
                })
                .collect(),
        }
    }
}

pub(crate) fn monomial_from_pairs_json(pairs: &[(u32, u32)]) -> Result<Monomial> {
    let m = Monomial::from_pairs(pairs.iter().copied());
    if m.pairs().len() != pairs.len() || !m.belongs_to(GeneratorSystem::P) {
        return Err(Error::Parse(format!("bad Pontryagin monomial {pairs:?}")));
    }
    Ok(m)
}

impl TryFrom<&BordismJson> for BordismClassQ {
    type Error = Error;

    fn try_from(j: &BordismJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(j.numbers.len());
        for n in &j.numbers {
            let m = monomial_from_pairs_json(&n.monomial)?;
            let v = parse_rational(&n.value)
                .ok_or_else(|| Error::Parse(format!("bad rational {:?}", n.value)))?;
            entries.push((m, v));
        }
        BordismClassQ::from_numbers(j.dim, entries)
    }
}

impl Serialize for BordismClassQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BordismJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BordismClassQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BordismJson::deserialize(d)?;
        BordismClassQ::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::parse_polynomial;
    use crate::linalg::q;

    fn poly(s: &str) -> GradedPolynomial {
        parse_polynomial(s, None).unwrap()
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(pair(&poly("p1"), &cp_class(2)).unwrap(), q(3));
        let cp4 = cp_class(4);
        assert_eq!(pair(&poly("p1^2"), &cp4).unwrap(), q(25));
        assert_eq!(pair(&poly("p2"), &cp4).unwrap(), q(10));
        assert!(cp_class(1).is_zero());
        assert_eq!(cp_class(1).numbers().count(), 0);
        assert_eq!(cp_class(3).dim(), 6);
    }

    #[test]
    fn pairing() {
        assert_eq!(pair(&poly("ph2"), &cp_class(4)).unwrap(), q(5));
        assert_eq!(pair(&poly("ph1"), &cp_class(2)).unwrap(), q(3));
        assert_eq!(pair(&poly("1"), &cp_class(2)).unwrap(), q(0));
        let bso = parse_polynomial("e^2", Some(GeneratorSystem::Bso(2))).unwrap();
        assert!(pair(&bso, &cp_class(2)).is_err());
    }

    #[test]
    fn products() {
        let cp2 = cp_class(2);
        let sq = product(&cp2, &cp2);
        assert_eq!(pair(&poly("p2"), &sq).unwrap(), q(9));
        assert_eq!(pair(&poly("p1^2"), &sq).unwrap(), q(18));
        assert_eq!(pair(&poly("ph2"), &sq).unwrap(), q(0));
        assert!(product(&cp2, &BordismClassQ::zero(4)).is_zero());
        assert_eq!(named_class("cp2xcp2").unwrap(), sq);
    }

    #[test]
    fn names() {
        assert_eq!(named_class("cp4").unwrap(), cp_class(4));
        assert_eq!(named_class("zero8").unwrap(), BordismClassQ::zero(8));
        assert!(named_class("cp0").is_err());
        assert!(named_class("rp2").is_err());
        assert!(named_class("cp2x").is_err());
    }

    #[test]
    fn wire_format() {
        let c = named_class("cp2xcp2").unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"dim":8,"numbers":[{"monomial":[[2,1]],"value":"9/1"},{"monomial":[[1,2]],"value":"18/1"}]}"#
        );
        let back: BordismClassQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);

        let partial: BordismClassQ =
            serde_json::from_str(r#"{"dim":8,"numbers":[{"monomial":[[2,1]],"value":"1"}]}"#).unwrap();
        assert_eq!(partial.number(&Monomial::power(1, 2)), q(0));
        assert!(serde_json::from_str::<BordismClassQ>(
            r#"{"dim":8,"numbers":[{"monomial":[[1,1]],"value":"1"}]}"#
        )
        .is_err());
    }

    #[test]
    fn arithmetic() {
        let a = cp_class(4);
        let b = named_class("cp2xcp2").unwrap();
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        assert!((&a + &(-&a)).is_zero());
    }
}
