use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{format_monomial, GeneratorSystem, GradedPolynomial, Monomial};
use crate::linalg::Rational;

/// A sparse rational combination of pure tensors `a (x) b` of monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorPolynomial {
    left: GeneratorSystem,
    right: GeneratorSystem,
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl TensorPolynomial {
    pub fn zero(left: GeneratorSystem, right: GeneratorSystem) -> Self {
        TensorPolynomial {
            left,
            right,
            terms: BTreeMap::new(),
        }
    }

    /// `x (x) y`.
    pub fn tensor(x: &GradedPolynomial, y: &GradedPolynomial) -> Self {
        let mut out = Self::zero(x.system(), y.system());
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.add_term(a.clone(), b.clone(), c * d);
            }
        }
        out
    }

    pub fn left_system(&self) -> GeneratorSystem {
        self.left
    }

    pub fn right_system(&self) -> GeneratorSystem {
        self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> {
        self.terms.iter()
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

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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
        let mut out = Self::zero(self.left, self.right);
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), b.clone(), x * c);
        }
        out
    }

    /// The component in bidegree `(left_degree, right_degree)`.
    pub fn bidegree_component(&self, left_degree: u32, right_degree: u32) -> Self {
        self.filter(|a, b| a == left_degree && b == right_degree)
    }

    /// Keeps the terms whose bidegree satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(u32, u32) -> bool) -> Self {
        TensorPolynomial {
            left: self.left,
            right: self.right,
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a.degree(self.left), b.degree(self.right)))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a linear map to the right tensor factor, given on monomials.
    pub fn map_right<F>(&self, target: GeneratorSystem, mut f: F) -> Self
    where
        F: FnMut(&Monomial) -> GradedPolynomial,
    {
        let mut cache: BTreeMap<Monomial, GradedPolynomial> = BTreeMap::new();
        let mut out = Self::zero(self.left, target);
        for ((a, b), c) in &self.terms {
            let img = cache.entry(b.clone()).or_insert_with(|| f(b));
            for (m, x) in img.terms() {
                out.add_term(a.clone(), m.clone(), c * x);
            }
        }
        out
    }

    /// Applies a linear map to the left tensor factor, given on monomials.
    pub fn map_left<F>(&self, target: GeneratorSystem, mut f: F) -> Self
    where
        F: FnMut(&Monomial) -> GradedPolynomial,
    {
        let mut cache: BTreeMap<Monomial, GradedPolynomial> = BTreeMap::new();
        let mut out = Self::zero(target, self.right);
        for ((a, b), c) in &self.terms {
            let img = cache.entry(a.clone()).or_insert_with(|| f(a));
            for (m, x) in img.terms() {
                out.add_term(m.clone(), b.clone(), c * x);
            }
        }
        out
    }

    /// `(epsilon (x) Id)`: keeps the terms whose left factor is the unit.
    pub fn counit_left(&self) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            self.right,
            self.terms
                .iter()
                .filter(|((a, _), _)| a.is_one())
                .map(|((_, b), c)| (b.clone(), c.clone())),
        )
    }

    /// `(Id (x) epsilon)`: keeps the terms whose right factor is the unit.
    pub fn counit_right(&self) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            self.left,
            self.terms
                .iter()
                .filter(|((_, b), _)| b.is_one())
                .map(|((a, _), c)| (a.clone(), c.clone())),
        )
    }

    /// Bilinear evaluation `sum c * f(a) * g(b)` against two functionals.
    pub fn evaluate<F, G>(&self, mut f: F, mut g: G) -> Rational
    where
        F: FnMut(&Monomial) -> Rational,
        G: FnMut(&Monomial) -> Rational,
    {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, ((a, b), c)| {
                let fa = f(a);
                if fa.is_zero() {
                    return acc;
                }
                acc + c * fa * g(b)
            })
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.left == other.left && self.right == other.right,
            "arithmetic between different tensor systems"
        );
    }
}

impl Add for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn add(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn sub(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        self + &rhs.scale(&-Rational::one())
    }
}

/// Componentwise product in the tensor product algebra.
impl Mul for &TensorPolynomial {
    type Output = TensorPolynomial;

    fn mul(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        self.assert_compatible(rhs);
        let mut out = TensorPolynomial::zero(self.left, self.right);
        for ((a1, b1), x) in &self.terms {
            for ((a2, b2), y) in &rhs.terms {
                out.add_term(a1.mul(a2), b1.mul(b2), x * y);
            }
        }
        out
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "{}*{} (x) {}",
                c,
                format_monomial(self.left, a),
                format_monomial(self.right, b)
            )?;
        }
        Ok(())
    }
}
