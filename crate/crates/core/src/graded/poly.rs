use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GeneratorSystem, Monomial};
use crate::linalg::Rational;

/// A sparse rational combination of monomials in one generator system.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPolynomial {
    system: GeneratorSystem,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero(system: GeneratorSystem) -> Self {
        GradedPolynomial {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(system: GeneratorSystem) -> Self {
        Self::constant(system, Rational::one())
    }

    pub fn constant(system: GeneratorSystem, c: Rational) -> Self {
        Self::monomial(system, Monomial::one(), c)
    }

    pub fn monomial(system: GeneratorSystem, m: Monomial, c: Rational) -> Self {
        assert!(m.belongs_to(system), "{m:?} is not a monomial over {system}");
        let mut p = Self::zero(system);
        p.add_term(m, c);
        p
    }

    pub fn generator(system: GeneratorSystem, index: u32) -> Self {
        Self::monomial(system, Monomial::generator(index), Rational::one())
    }

    pub fn from_terms(
        system: GeneratorSystem,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(system);
        for (m, c) in terms {
            assert!(m.belongs_to(system), "{m:?} is not a monomial over {system}");
            p.add_term(m, c);
        }
        p
    }

    pub fn system(&self) -> GeneratorSystem {
        self.system
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by degree first, then by monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.degree(self.system));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.system);
        }
        GradedPolynomial {
            system: self.system,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree(self.system));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn component(&self, degree: u32) -> Self {
        GradedPolynomial {
            system: self.system,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(self.system) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every component of degree below `min_degree`.
    pub fn truncate_below(&self, min_degree: u32) -> Self {
        GradedPolynomial {
            system: self.system,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(self.system) >= min_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.system);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the ring homomorphism sending generator `g` to `image(g)`.
    pub fn map_generators<F>(&self, target: GeneratorSystem, mut image: F) -> Self
    where
        F: FnMut(u32) -> GradedPolynomial,
    {
        let mut cache: BTreeMap<u32, GradedPolynomial> = BTreeMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for &(g, e) in m.pairs() {
                let img = cache.entry(g).or_insert_with(|| image(g));
                assert_eq!(img.system, target, "generator image in wrong system");
                term = &term * &img.pow(e);
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Coordinates against an ordered list of monomials. Terms outside the
    /// list are ignored; callers check membership separately when it matters.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_coordinates(
        system: GeneratorSystem,
        basis: &[Monomial],
        coords: &[Rational],
    ) -> Self {
        Self::from_terms(system, basis.iter().cloned().zip(coords.iter().cloned()))
    }

    fn assert_same_system(&self, other: &Self) {
        assert_eq!(
            self.system, other.system,
            "arithmetic between different generator systems"
        );
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.assert_same_system(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            system: self.system,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.assert_same_system(rhs);
        let mut out = GradedPolynomial::zero(self.system);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = super::format_monomial(self.system, m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
