//! Linear relations between the bordism classes of a bundle's total space,
//! base and fibre and its kappa numbers.
//!
//! For a bundle `E -> B` with `d`-dimensional fibre `F` and `p`-dimensional
//! base, and every `x` almost primitive of order `d` in degree `p + d`,
//!
//! ```text
//! <x, [E]> = K(kappa_{rho(x)}) + sum_j <x_j^p, [B]> <x_j^d, [F]>
//! ```
//!
//! where `sum_j x_j^p (x) x_j^d` is the bidegree `(p, d)` part of `Delta(x)`.
//! With the fibre fixed these are linear equations in the Pontryagin numbers of
//! `E` and `B` and the values of `K` on kappa monomials.

mod wire;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::bordism::{pair, BordismClassQ};
use crate::error::{Error, Result};
use crate::graded::{
    format_monomial, monomial_basis, restrict, to_p, GeneratorSystem, GradedPolynomial, Monomial,
};
use crate::linalg::{solve_affine, QMatrix, Rational};
use crate::primitives::{ap_basis_monomial, middle_terms};

pub use wire::{
    ClassSpec, ConstraintJson, CoeffJson, KappaCoeffJson, KappaEntryJson, PartialClassJson,
    PartialNumberJson, ProblemJson, SystemJson,
};

/// A multiset `(c_1, ..., c_r)` of monomials in `H*(BSO(d);Q)`, each of degree
/// greater than `d`, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KappaSequence(Vec<Monomial>);

impl KappaSequence {
    pub fn new(mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        KappaSequence(monomials)
    }

    pub fn single(c: Monomial) -> Self {
        KappaSequence(vec![c])
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum (|c_i| - d)`, the cohomological degree of `kappa_C`. `None` if some
    /// `c_i` has degree at most `d` or is not a monomial over `BSO(d)`.
    pub fn kappa_degree(&self, d: u32) -> Option<u32> {
        let sys = GeneratorSystem::Bso(d);
        self.0.iter().try_fold(0, |acc, c| {
            if !c.belongs_to(sys) {
                return None;
            }
            let deg = c.degree(sys);
            (deg > d).then(|| acc + deg - d)
        })
    }

    pub fn display(&self, d: u32) -> String {
        let names: Vec<String> = self
            .0
            .iter()
            .map(|c| format_monomial(GeneratorSystem::Bso(d), c))
            .collect();
        format!("({})", names.join(", "))
    }
}

/// The monomials of `H^degree(BSO(d);Q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KappaMonomialSet {
    pub d: u32,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
}

pub fn kappa_monomials(d: u32, degree: u32) -> Result<KappaMonomialSet> {
    let sys = GeneratorSystem::bso(d)?;
    Ok(KappaMonomialSet {
        d,
        degree,
        monomials: monomial_basis(sys, degree),
    })
}

/// All multisets of monomials of degree `> d` with `sum (|c_i| - d) = p`, in
/// sorted order.
pub fn kappa_sequences(d: u32, p: u32) -> Result<Vec<KappaSequence>> {
    let sys = GeneratorSystem::bso(d)?;
    if p == 0 {
        return Err(Error::InvalidInput("kappa degree p must be positive".into()));
    }
    let candidates: Vec<(Monomial, u32)> = (1..=p)
        .flat_map(|excess| {
            monomial_basis(sys, d + excess)
                .into_iter()
                .map(move |c| (c, excess))
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_sequences(&candidates, 0, p, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn collect_sequences(
    candidates: &[(Monomial, u32)],
    start: usize,
    remaining: u32,
    current: &mut Vec<Monomial>,
    out: &mut Vec<KappaSequence>,
) {
    if remaining == 0 {
        out.push(KappaSequence::new(current.clone()));
        return;
    }
    for i in start..candidates.len() {
        let (c, excess) = &candidates[i];
        if *excess <= remaining {
            current.push(c.clone());
            collect_sequences(candidates, i, remaining - excess, current, out);
            current.pop();
        }
    }
}

/// A rational functional on `H^p` of the kappa ring, given by its values
/// `K(kappa_C)` on sequences. Unset sequences are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KappaFunctional {
    d: u32,
    p: u32,
    values: BTreeMap<KappaSequence, Rational>,
}

impl KappaFunctional {
    pub fn zero(d: u32, p: u32) -> Self {
        KappaFunctional {
            d,
            p,
            values: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn set(&mut self, seq: KappaSequence, value: Rational) -> Result<()> {
        if seq.kappa_degree(self.d) != Some(self.p) {
            return Err(Error::InvalidInput(format!(
                "{} is not a kappa sequence of degree {} for d = {}",
                seq.display(self.d),
                self.p,
                self.d
            )));
        }
        if value.is_zero() {
            self.values.remove(&seq);
        } else {
            self.values.insert(seq, value);
        }
        Ok(())
    }

    pub fn get(&self, seq: &KappaSequence) -> Rational {
        self.values.get(seq).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> impl Iterator<Item = (&KappaSequence, &Rational)> {
        self.values.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.d, self.p);
        for (k, v) in &self.values {
            out.set(k.clone(), v * c).expect("valid sequence");
        }
        out
    }
}

/// Fibre, total space and base classes together with kappa numbers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeasibilityProblem {
    pub d: u32,
    pub p: u32,
    pub fibre: BordismClassQ,
    pub total: BordismClassQ,
    pub base: BordismClassQ,
    pub kappa: KappaFunctional,
}

impl FeasibilityProblem {
    pub fn new(
        fibre: BordismClassQ,
        total: BordismClassQ,
        base: BordismClassQ,
        kappa: KappaFunctional,
    ) -> Result<Self> {
        let (d, p) = (kappa.d, kappa.p);
        check_dims(d, p, &fibre)?;
        for (what, class, dim) in [("total space", &total, d + p), ("base", &base, p)] {
            if class.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "{what} has dimension {}, expected {dim}",
                    class.dim()
                )));
            }
        }
        Ok(FeasibilityProblem {
            d,
            p,
            fibre,
            total,
            base,
            kappa,
        })
    }

    /// `(f, b x f, b, 0)`: a product bundle has no kappa numbers.
    pub fn trivial_bundle(fibre: &BordismClassQ, base: &BordismClassQ) -> Result<Self> {
        Self::new(
            fibre.clone(),
            crate::bordism::product(base, fibre),
            base.clone(),
            KappaFunctional::zero(fibre.dim(), base.dim()),
        )
    }
}

fn check_dims(d: u32, p: u32, fibre: &BordismClassQ) -> Result<()> {
    GeneratorSystem::bso(d)?;
    if p == 0 {
        return Err(Error::InvalidInput("base dimension p must be positive".into()));
    }
    if fibre.dim() != d {
        return Err(Error::InvalidInput(format!(
            "fibre has dimension {}, expected {d}",
            fibre.dim()
        )));
    }
    Ok(())
}

/// `sum e_coeffs[I] <p^I, e> + sum b_coeffs[J] <p^J, b> + sum kappa_coeffs[C] K_C
/// = constant`, the relation attached to the class `label`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearConstraint {
    pub label: GradedPolynomial,
    pub e_coeffs: BTreeMap<Monomial, Rational>,
    pub b_coeffs: BTreeMap<Monomial, Rational>,
    pub kappa_coeffs: BTreeMap<KappaSequence, Rational>,
    pub constant: Rational,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(Rational::zero);
    *entry += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Rational>) {
    map.retain(|_, v| !v.is_zero());
}

impl LinearConstraint {
    /// `<x, e>`: the total-space side.
    pub fn total_side(&self, total: &BordismClassQ) -> Rational {
        self.e_coeffs
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * total.number(m))
    }

    /// `K(kappa_{rho(x)}) + middle term`, with the remaining data substituted.
    pub fn other_side(&self, base: &BordismClassQ, kappa: &KappaFunctional) -> Rational {
        let b = self
            .b_coeffs
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * base.number(m));
        let k = self
            .kappa_coeffs
            .iter()
            .fold(Rational::zero(), |acc, (s, c)| acc + c * kappa.get(s));
        &self.constant - b - k
    }
}

/// `rho_d(x)` as a combination of single kappa classes `kappa_c`.
pub fn expand_kappa(x: &GradedPolynomial, d: u32) -> Result<BTreeMap<KappaSequence, Rational>> {
    if x.is_zero() {
        return Ok(BTreeMap::new());
    }
    match x.homogeneous_degree() {
        Some(deg) if deg > d => {}
        Some(deg) => {
            return Err(Error::InvalidInput(format!(
                "kappa classes need degree > {d}, got {deg}"
            )))
        }
        None => return Err(Error::InvalidInput(format!("{x} is not homogeneous"))),
    }
    Ok(restrict(x, d)?
        .terms()
        .map(|(c, coef)| (KappaSequence::single(c.clone()), coef.clone()))
        .collect())
}

/// One relation per element of the monomial basis of `AP^{p+d}(d)`, with the
/// fibre `f` substituted into the middle term.
pub fn build_system(d: u32, p: u32, fibre: &BordismClassQ) -> Result<Vec<LinearConstraint>> {
    check_dims(d, p, fibre)?;
    let ap = ap_basis_monomial(d, p + d)?;
    ap.basis()
        .iter()
        .map(|x| constraint_for(x, d, p, fibre))
        .collect()
}

fn constraint_for(
    x: &GradedPolynomial,
    d: u32,
    p: u32,
    fibre: &BordismClassQ,
) -> Result<LinearConstraint> {
    let mut e_coeffs = BTreeMap::new();
    for (m, c) in to_p(x)?.terms() {
        accumulate(&mut e_coeffs, m.clone(), c.clone());
    }

    let mut kappa_coeffs = BTreeMap::new();
    for (seq, c) in expand_kappa(x, d)? {
        accumulate(&mut kappa_coeffs, seq, -c);
    }

    let mut b_coeffs = BTreeMap::new();
    for ((left, right), c) in middle_terms(x, p, d)?.terms() {
        let right = GradedPolynomial::monomial(GeneratorSystem::Ph, right.clone(), Rational::one());
        let weight = c * pair(&right, fibre)?;
        if weight.is_zero() {
            continue;
        }
        let left = GradedPolynomial::monomial(GeneratorSystem::Ph, left.clone(), Rational::one());
        for (m, coef) in to_p(&left)?.terms() {
            accumulate(&mut b_coeffs, m.clone(), -(coef * &weight));
        }
    }
    prune(&mut e_coeffs);
    prune(&mut b_coeffs);
    prune(&mut kappa_coeffs);

    Ok(LinearConstraint {
        label: x.clone(),
        e_coeffs,
        b_coeffs,
        kappa_coeffs,
        constant: Rational::zero(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub x: GradedPolynomial,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

/// Substitutes the data into every relation and reports the ones that fail.
pub fn check_feasibility(problem: &FeasibilityProblem) -> Result<Verdict> {
    let system = build_system(problem.d, problem.p, &problem.fibre)?;
    let violations: Vec<Violation> = system
        .into_iter()
        .filter_map(|c| {
            let lhs = c.total_side(&problem.total);
            let rhs = c.other_side(&problem.base, &problem.kappa);
            (lhs != rhs).then_some(Violation {
                x: c.label,
                lhs,
                rhs,
            })
        })
        .collect();
    Ok(Verdict {
        satisfied: violations.is_empty(),
        violations,
    })
}

/// A coordinate of the data that may be left unknown.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Unknown {
    Total(Monomial),
    Base(Monomial),
    Kappa(KappaSequence),
}

impl Unknown {
    pub fn describe(&self, d: u32) -> String {
        match self {
            Unknown::Total(m) => format!("<{}, e>", format_monomial(GeneratorSystem::P, m)),
            Unknown::Base(m) => format!("<{}, b>", format_monomial(GeneratorSystem::P, m)),
            Unknown::Kappa(s) => format!("K{}", s.display(d)),
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unknown::Total(m) => write!(f, "e:{}", format_monomial(GeneratorSystem::P, m)),
            Unknown::Base(m) => write!(f, "b:{}", format_monomial(GeneratorSystem::P, m)),
            Unknown::Kappa(s) => write!(f, "K:{s:?}"),
        }
    }
}

/// Feasibility data in which any Pontryagin number of `e` or `b` and any kappa
/// number may be unknown (`None`). The fibre is always fixed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialProblem {
    pub d: u32,
    pub p: u32,
    pub fibre: BordismClassQ,
    pub total: BTreeMap<Monomial, Option<Rational>>,
    pub base: BTreeMap<Monomial, Option<Rational>>,
    pub kappa: BTreeMap<KappaSequence, Option<Rational>>,
}

impl PartialProblem {
    /// Everything except the fibre unknown.
    pub fn unknown(d: u32, p: u32, fibre: BordismClassQ) -> Result<Self> {
        check_dims(d, p, &fibre)?;
        let unknowns = |dim| {
            monomial_basis(GeneratorSystem::P, dim)
                .into_iter()
                .map(|m| (m, None))
                .collect()
        };
        Ok(PartialProblem {
            d,
            p,
            total: unknowns(d + p),
            base: unknowns(p),
            kappa: kappa_sequences(d, p)?.into_iter().map(|s| (s, None)).collect(),
            fibre,
        })
    }

    pub fn fix_total(&mut self, total: &BordismClassQ) -> Result<()> {
        if total.dim() != self.d + self.p {
            return Err(Error::InvalidInput("total space has the wrong dimension".into()));
        }
        for (m, v) in self.total.iter_mut() {
            *v = Some(total.number(m));
        }
        Ok(())
    }

    pub fn fix_base(&mut self, base: &BordismClassQ) -> Result<()> {
        if base.dim() != self.p {
            return Err(Error::InvalidInput("base has the wrong dimension".into()));
        }
        for (m, v) in self.base.iter_mut() {
            *v = Some(base.number(m));
        }
        Ok(())
    }

    pub fn fix_kappa(&mut self, kappa: &KappaFunctional) -> Result<()> {
        if (kappa.d, kappa.p) != (self.d, self.p) {
            return Err(Error::InvalidInput("kappa functional has the wrong degree".into()));
        }
        for (s, v) in self.kappa.iter_mut() {
            *v = Some(kappa.get(s));
        }
        Ok(())
    }

    /// Unknown coordinates, in a fixed order: total space, base, kappa.
    pub fn unknowns(&self) -> Vec<Unknown> {
        let totals = self
            .total
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(m, _)| Unknown::Total(m.clone()));
        let bases = self
            .base
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(m, _)| Unknown::Base(m.clone()));
        let kappas = self
            .kappa
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(s, _)| Unknown::Kappa(s.clone()));
        totals.chain(bases).chain(kappas).collect()
    }

    /// Fills the unknowns with `values` (ordered as [`Self::unknowns`]).
    pub fn complete(&self, values: &[Rational]) -> Result<FeasibilityProblem> {
        let unknowns = self.unknowns();
        if unknowns.len() != values.len() {
            return Err(Error::InvalidInput("wrong number of values".into()));
        }
        let assigned: BTreeMap<&Unknown, &Rational> = unknowns.iter().zip(values).collect();
        let pick = |u: Unknown, known: &Option<Rational>| match known {
            Some(v) => v.clone(),
            None => assigned[&u].clone(),
        };
        let total = BordismClassQ::from_numbers(
            self.d + self.p,
            self.total
                .iter()
                .map(|(m, v)| (m.clone(), pick(Unknown::Total(m.clone()), v))),
        )?;
        let base = BordismClassQ::from_numbers(
            self.p,
            self.base
                .iter()
                .map(|(m, v)| (m.clone(), pick(Unknown::Base(m.clone()), v))),
        )?;
        let mut kappa = KappaFunctional::zero(self.d, self.p);
        for (s, v) in &self.kappa {
            kappa.set(s.clone(), pick(Unknown::Kappa(s.clone()), v))?;
        }
        FeasibilityProblem::new(self.fibre.clone(), total, base, kappa)
    }
}

/// `particular + span(directions)` over the unknown coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionFamily {
    pub unknowns: Vec<Unknown>,
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl SolutionFamily {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    fn index_of(&self, u: &Unknown) -> Option<usize> {
        self.unknowns.iter().position(|v| v == u)
    }

    /// Whether every solution gives `u` the same value.
    pub fn is_pinned(&self, u: &Unknown) -> bool {
        self.index_of(u)
            .is_some_and(|i| self.directions.iter().all(|v| v[i].is_zero()))
    }

    pub fn particular_value(&self, u: &Unknown) -> Option<&Rational> {
        self.index_of(u).map(|i| &self.particular[i])
    }

    /// `particular + sum params[k] * directions[k]`.
    pub fn point(&self, params: &[Rational]) -> Vec<Rational> {
        assert_eq!(params.len(), self.directions.len());
        let mut out = self.particular.clone();
        for (t, dir) in params.iter().zip(&self.directions) {
            for (o, x) in out.iter_mut().zip(dir) {
                *o += t * x;
            }
        }
        out
    }
}

/// Solves the relations for the unknown coordinates of `problem`.
pub fn solve_for(problem: &PartialProblem) -> Result<SolutionFamily> {
    let system = build_system(problem.d, problem.p, &problem.fibre)?;
    let unknowns = problem.unknowns();
    let column: BTreeMap<&Unknown, usize> = unknowns.iter().enumerate().map(|(i, u)| (u, i)).collect();

    let mut matrix = QMatrix::zeros(system.len(), unknowns.len());
    let mut rhs = Vec::with_capacity(system.len());
    for (row, c) in system.iter().enumerate() {
        let mut constant = c.constant.clone();
        let terms = c
            .e_coeffs
            .iter()
            .map(|(m, x)| (Unknown::Total(m.clone()), x, problem.total.get(m)))
            .chain(
                c.b_coeffs
                    .iter()
                    .map(|(m, x)| (Unknown::Base(m.clone()), x, problem.base.get(m))),
            )
            .chain(
                c.kappa_coeffs
                    .iter()
                    .map(|(s, x)| (Unknown::Kappa(s.clone()), x, problem.kappa.get(s))),
            );
        for (u, coef, known) in terms {
            match known {
                Some(Some(v)) => constant -= coef * v,
                Some(None) => {
                    let j = column[&u];
                    let cur = matrix.get(row, j) + coef;
                    matrix.set(row, j, cur);
                }
                None => {
                    return Err(Error::InvalidInput(format!(
                        "relation mentions {u}, which the problem does not list"
                    )))
                }
            }
        }
        rhs.push(constant);
    }
    let sol = solve_affine(&matrix, &rhs).map_err(|_| Error::NoSolution)?;
    Ok(SolutionFamily {
        unknowns,
        particular: sol.particular,
        directions: sol.kernel,
    })
}

#[cfg(test)]
mod tests;
