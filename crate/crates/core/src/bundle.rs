//! Characteristic classes of projectivised sums of line bundles over complex
//! projective space.
//!
//! For twists `a_0, ..., a_r` let `W = O(a_0) + ... + O(a_r)` over `CP^m` and
//! `E = P(W)`, a bundle of `CP^r`'s. With `h` the hyperplane class of the base
//! and `u` the first Chern class of the fibrewise `O(1)`,
//!
//! ```text
//! H*(E;Q) = Q[h, u] / (h^{m+1}, prod_j (u + a_j h))
//! ```
//!
//! and `T_pi + C = W (x) O(1)`, so `c(T_pi) = prod_j (1 + u + a_j h)`. Fibre
//! integration takes the coefficient of `u^r` in the normal form of degree at
//! most `r` in `u`. Everything is oriented by the complex structures.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::bordism::{cp_class, pair, BordismClassQ};
use crate::constraints::{expand_kappa, KappaSequence};
use crate::error::{Error, Result};
use crate::graded::{
    binomial_coefficient, monomial_basis, to_p, GeneratorSystem, GradedPolynomial, Monomial, EULER,
};
use crate::linalg::Rational;
use crate::primitives::{ap_basis_monomial, is_almost_primitive, middle_terms};

/// `P(O(a_0) + ... + O(a_r))` over `CP^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectiveBundleSpec {
    m: u32,
    twists: Vec<i64>,
}

impl ProjectiveBundleSpec {
    pub fn new(m: u32, twists: Vec<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidBundle("the base CP^m needs m >= 1".into()));
        }
        if twists.len() < 2 {
            return Err(Error::InvalidBundle(
                "at least two twists are needed for a positive-dimensional fibre".into(),
            ));
        }
        Ok(ProjectiveBundleSpec { m, twists })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Complex dimension of the fibre `CP^r`.
    pub fn r(&self) -> u32 {
        self.twists.len() as u32 - 1
    }

    pub fn base_dim(&self) -> u32 {
        2 * self.m
    }

    pub fn fibre_dim(&self) -> u32 {
        2 * self.r()
    }

    pub fn total_dim(&self) -> u32 {
        self.base_dim() + self.fibre_dim()
    }
}

impl fmt::Display for ProjectiveBundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let twists: Vec<String> = self.twists.iter().map(i64::to_string).collect();
        write!(f, "P({}) over CP^{}", twists.join(","), self.m)
    }
}

/// An element of `H*(E;Q)` in normal form, keyed by `(h exponent, u exponent)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct BundleElement {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BundleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, h: u32, u: u32) -> Rational {
        self.terms.get(&(h, u)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The part of real degree `degree`.
    pub fn component(&self, degree: u32) -> Self {
        BundleElement {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| 2 * (i + j) == degree)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BundleElement {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Add for &BundleElement {
    type Output = BundleElement;

    fn add(self, rhs: &BundleElement) -> BundleElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &BundleElement {
    type Output = BundleElement;

    fn sub(self, rhs: &BundleElement) -> BundleElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

/// Arithmetic in `H*(E;Q)` for one bundle.
#[derive(Clone, Debug)]
pub struct BundleRing {
    spec: ProjectiveBundleSpec,
    /// `e_k(a)` for `k = 0..=r+1`.
    elementary: Vec<Rational>,
}

impl BundleRing {
    pub fn new(spec: &ProjectiveBundleSpec) -> Self {
        let mut elementary = vec![Rational::one()];
        for &a in &spec.twists {
            let a = Rational::from_integer(a.into());
            let mut next = elementary.clone();
            next.push(Rational::zero());
            for k in 1..next.len() {
                next[k] += &elementary[k - 1] * &a;
            }
            elementary = next;
        }
        BundleRing {
            spec: spec.clone(),
            elementary,
        }
    }

    pub fn spec(&self) -> &ProjectiveBundleSpec {
        &self.spec
    }

    /// Reduces `sum c h^i u^j` by `h^{m+1} = 0` and
    /// `u^{r+1} = -sum_{k>=1} e_k(a) h^k u^{r+1-k}`.
    pub fn normal_form(&self, raw: impl IntoIterator<Item = ((u32, u32), Rational)>) -> BundleElement {
        let (m, r) = (self.spec.m as usize, self.spec.r() as usize);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for ((i, j), c) in raw {
            let (i, j) = (i as usize, j as usize);
            if i > m {
                continue;
            }
            if rows.len() <= j {
                rows.resize(j + 1, vec![Rational::zero(); m + 1]);
            }
            rows[j][i] += c;
        }
        for j in (r + 1..rows.len()).rev() {
            for i in 0..=m {
                let c = std::mem::take(&mut rows[j][i]);
                if c.is_zero() {
                    continue;
                }
                for k in 1..=r + 1 {
                    if i + k <= m {
                        let delta = &c * &self.elementary[k];
                        rows[j - k][i + k] -= delta;
                    }
                }
            }
        }
        let mut out = BundleElement::zero();
        for (j, row) in rows.into_iter().enumerate().take(r + 1) {
            for (i, c) in row.into_iter().enumerate() {
                out.add_term((i as u32, j as u32), c);
            }
        }
        out
    }

    pub fn constant(&self, c: Rational) -> BundleElement {
        self.normal_form([((0, 0), c)])
    }

    pub fn one(&self) -> BundleElement {
        self.constant(Rational::one())
    }

    pub fn h(&self) -> BundleElement {
        self.normal_form([((1, 0), Rational::one())])
    }

    pub fn u(&self) -> BundleElement {
        self.normal_form([((0, 1), Rational::one())])
    }

    pub fn mul(&self, a: &BundleElement, b: &BundleElement) -> BundleElement {
        let mut raw: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i1, j1), c1) in &a.terms {
            for ((i2, j2), c2) in &b.terms {
                *raw.entry((i1 + i2, j1 + j2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        self.normal_form(raw)
    }

    pub fn pow(&self, a: &BundleElement, k: u32) -> BundleElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `pi^*` of a polynomial in `h` (coefficients by power of `h`).
    pub fn pullback(&self, y: &[Rational]) -> BundleElement {
        self.normal_form(
            y.iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Fibre integration: the coefficient of `u^r`, as a polynomial in `h`
    /// of length `m + 1`.
    pub fn gysin(&self, x: &BundleElement) -> Vec<Rational> {
        let r = self.spec.r();
        (0..=self.spec.m).map(|i| x.coefficient(i, r)).collect()
    }

    /// Integration over `E`: the `h^m u^r` coefficient.
    pub fn integrate(&self, x: &BundleElement) -> Rational {
        x.coefficient(self.spec.m, self.spec.r())
    }
}

/// Integration over `CP^m` of a polynomial in `h`.
pub fn integrate_base(m: u32, y: &[Rational]) -> Rational {
    y.get(m as usize).cloned().unwrap_or_else(Rational::zero)
}

/// Pontryagin classes `p_0, ..., p_n` of a complex bundle with Chern classes
/// `c_0, ..., c_n`: `p_k = sum_i (-1)^{k+i} c_i c_{2k-i}`.
pub fn pontryagin_from_chern(ring: &BundleRing, chern: &[BundleElement]) -> Vec<BundleElement> {
    let n = chern.len().saturating_sub(1);
    (0..=n)
        .map(|k| {
            let mut p = BundleElement::zero();
            for i in 0..=2 * k {
                let (Some(a), Some(b)) = (chern.get(i), chern.get(2 * k - i)) else {
                    continue;
                };
                let term = ring.mul(a, b);
                p = if (k + i) % 2 == 0 { &p + &term } else { &p - &term };
            }
            p
        })
        .collect()
}

/// `c(T_pi) = prod_j (1 + u + a_j h)`.
pub fn vertical_total_chern(spec: &ProjectiveBundleSpec) -> BundleElement {
    let ring = BundleRing::new(spec);
    vertical_total_chern_in(&ring)
}

fn vertical_total_chern_in(ring: &BundleRing) -> BundleElement {
    let one = ring.one();
    let u = ring.u();
    let h = ring.h();
    ring.spec().twists.iter().fold(one.clone(), |acc, &a| {
        let factor = &(&one + &u) + &h.scale(&Rational::from_integer(a.into()));
        ring.mul(&acc, &factor)
    })
}

/// `c_0(T_pi), ..., c_r(T_pi)`.
pub fn vertical_chern_classes(spec: &ProjectiveBundleSpec) -> Vec<BundleElement> {
    let total = vertical_total_chern(spec);
    (0..=spec.r()).map(|k| total.component(2 * k)).collect()
}

/// Pontryagin classes and Euler class of the vertical tangent bundle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerticalClasses {
    /// `p_0, ..., p_r`.
    pub pontryagin: Vec<BundleElement>,
    pub euler: BundleElement,
}

pub fn vertical_pontryagin_and_euler(spec: &ProjectiveBundleSpec) -> VerticalClasses {
    let ring = BundleRing::new(spec);
    let chern = vertical_chern_classes(spec);
    VerticalClasses {
        pontryagin: pontryagin_from_chern(&ring, &chern),
        euler: chern[spec.r() as usize].clone(),
    }
}

/// `p_0, ..., p_m` of `pi^* T CP^m`, from `p(T CP^m) = (1 + h^2)^{m+1}`.
fn base_pontryagin(ring: &BundleRing) -> Vec<BundleElement> {
    let m = ring.spec().m;
    (0..=m)
        .map(|k| {
            let c = Rational::from_integer(binomial_coefficient(m + 1, k).into());
            ring.normal_form([((2 * k, 0), c)])
        })
        .collect()
}

/// Components of `p(TE) = pi^* p(T CP^m) p(T_pi)`.
fn total_pontryagin(ring: &BundleRing, vertical: &[BundleElement]) -> Vec<BundleElement> {
    let base = base_pontryagin(ring);
    let top = ring.spec().total_dim() / 4;
    (0..=top as usize)
        .map(|k| {
            let mut acc = BundleElement::zero();
            for (i, b) in base.iter().enumerate().take(k + 1) {
                if let Some(v) = vertical.get(k - i) {
                    acc = &acc + &ring.mul(b, v);
                }
            }
            acc
        })
        .collect()
}

/// Evaluates a stable class (in `ph` or `p`) on a bundle with the given
/// Pontryagin classes `p_0, p_1, ...`.
pub fn evaluate_stable(
    ring: &BundleRing,
    x: &GradedPolynomial,
    pontryagin: &[BundleElement],
) -> Result<BundleElement> {
    let xp = to_p(x)?;
    let mut out = BundleElement::zero();
    for (mono, c) in xp.terms() {
        let value = mono.pairs().iter().fold(ring.one(), |acc, &(g, e)| {
            match pontryagin.get(g as usize) {
                Some(pg) => ring.mul(&acc, &ring.pow(pg, e)),
                None => BundleElement::zero(),
            }
        });
        out = &out + &value.scale(c);
    }
    Ok(out)
}

/// `c(T_pi)` for a monomial `c` of `H*(BSO(2r);Q)`: `e` is the top Chern
/// class and `p_i` the Pontryagin classes.
pub fn evaluate_vertical(spec: &ProjectiveBundleSpec, c: &Monomial) -> Result<BundleElement> {
    let d = spec.fibre_dim();
    if !c.belongs_to(GeneratorSystem::Bso(d)) {
        return Err(Error::InvalidInput(format!(
            "not a monomial of H*(BSO({d});Q)"
        )));
    }
    let ring = BundleRing::new(spec);
    let classes = vertical_pontryagin_and_euler(spec);
    Ok(c.pairs().iter().fold(ring.one(), |acc, &(g, e)| {
        let base = if g == EULER {
            &classes.euler
        } else {
            &classes.pontryagin[g as usize]
        };
        ring.mul(&acc, &ring.pow(base, e))
    }))
}

pub fn gysin(spec: &ProjectiveBundleSpec, x: &BundleElement) -> Vec<Rational> {
    BundleRing::new(spec).gysin(x)
}

/// `kappa_c = pi_!(c(T_pi))` as a polynomial in `h`.
pub fn kappa_class(spec: &ProjectiveBundleSpec, c: &Monomial) -> Result<Vec<Rational>> {
    Ok(gysin(spec, &evaluate_vertical(spec, c)?))
}

fn mul_truncated(a: &[Rational], b: &[Rational], m: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); m as usize + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= m as usize {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `int_{CP^m} prod_i kappa_{c_i}`.
pub fn kappa_number(spec: &ProjectiveBundleSpec, sequence: &KappaSequence) -> Result<Rational> {
    let d = spec.fibre_dim();
    if sequence.kappa_degree(d) != Some(spec.base_dim()) {
        return Err(Error::DegreeMismatch {
            expected: spec.base_dim(),
            found: sequence.kappa_degree(d).unwrap_or(0),
        });
    }
    let mut acc = vec![Rational::one()];
    for c in sequence.monomials() {
        acc = mul_truncated(&acc, &kappa_class(spec, c)?, spec.m);
    }
    Ok(integrate_base(spec.m, &acc))
}

/// Pontryagin numbers of `E`.
pub fn total_space_class(spec: &ProjectiveBundleSpec) -> BordismClassQ {
    let ring = BundleRing::new(spec);
    let vertical = vertical_pontryagin_and_euler(spec).pontryagin;
    let tangent = total_pontryagin(&ring, &vertical);
    BordismClassQ::from_fn(spec.total_dim(), |mono| {
        let value = mono.pairs().iter().fold(ring.one(), |acc, &(g, e)| {
            ring.mul(&acc, &ring.pow(&tangent[g as usize], e))
        });
        ring.integrate(&value)
    })
}

pub fn base_class(spec: &ProjectiveBundleSpec) -> BordismClassQ {
    cp_class(spec.m)
}

pub fn fibre_class(spec: &ProjectiveBundleSpec) -> BordismClassQ {
    cp_class(spec.r())
}

/// Both sides of the relation for one bundle and one class `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Eq3Report {
    pub x: GradedPolynomial,
    pub lhs: Rational,
    pub kappa_term: Rational,
    pub middle_term: Rational,
    pub equal: bool,
}

fn check_total_degree(spec: &ProjectiveBundleSpec, x: &GradedPolynomial) -> Result<()> {
    match x.homogeneous_degree() {
        Some(deg) if deg != spec.total_dim() => Err(Error::DegreeMismatch {
            expected: spec.total_dim(),
            found: deg,
        }),
        None if !x.is_zero() => Err(Error::InvalidInput(format!("{x} is not homogeneous"))),
        _ => Ok(()),
    }
}

/// `<x, [E]>` against `K(kappa_{rho(x)}) + sum_j <x_j', [B]> <x_j'', [F]>` for `x`
/// almost primitive of order `2r`.
pub fn verify_eq3(spec: &ProjectiveBundleSpec, x: &GradedPolynomial) -> Result<Eq3Report> {
    let x = crate::graded::to_ph(x)?;
    check_total_degree(spec, &x)?;
    let d = spec.fibre_dim();
    if !is_almost_primitive(&x, d)? {
        return Err(Error::NotAlmostPrimitive {
            class: x.to_string(),
            order: d,
        });
    }
    let lhs = pair(&x, &total_space_class(spec))?;

    let mut kappa_term = Rational::zero();
    if !x.is_zero() {
        for (seq, coef) in expand_kappa(&x, d)? {
            kappa_term += coef * kappa_number(spec, &seq)?;
        }
    }

    let (base, fibre) = (base_class(spec), fibre_class(spec));
    let mut middle_term = Rational::zero();
    for ((a, b), c) in middle_terms(&x, spec.base_dim(), d)?.terms() {
        let a = GradedPolynomial::monomial(GeneratorSystem::Ph, a.clone(), Rational::one());
        let b = GradedPolynomial::monomial(GeneratorSystem::Ph, b.clone(), Rational::one());
        middle_term += c * pair(&a, &base)? * pair(&b, &fibre)?;
    }

    let equal = lhs == &kappa_term + &middle_term;
    Ok(Eq3Report {
        x,
        lhs,
        kappa_term,
        middle_term,
        equal,
    })
}

/// `int_E x(TE)` and `sum int_B a(TB) pi_!(b(T_pi))` over the full coproduct
/// `Delta(x) = sum a (x) b`, for any homogeneous `x` of the right degree.
pub fn coproduct_identity_sides(
    spec: &ProjectiveBundleSpec,
    x: &GradedPolynomial,
) -> Result<(Rational, Rational)> {
    let x = crate::graded::to_ph(x)?;
    check_total_degree(spec, &x)?;
    let ring = BundleRing::new(spec);
    let vertical = vertical_pontryagin_and_euler(spec).pontryagin;
    let base = base_pontryagin(&ring);
    let lhs = pair(&x, &total_space_class(spec))?;

    let mut rhs = Rational::zero();
    for ((a, b), c) in crate::graded::coproduct(&x)?.terms() {
        let a = GradedPolynomial::monomial(GeneratorSystem::Ph, a.clone(), Rational::one());
        let b = GradedPolynomial::monomial(GeneratorSystem::Ph, b.clone(), Rational::one());
        let on_base = evaluate_stable(&ring, &a, &base)?;
        let on_base: Vec<Rational> = (0..=spec.m).map(|i| on_base.coefficient(i, 0)).collect();
        let pushed = ring.gysin(&evaluate_stable(&ring, &b, &vertical)?);
        rhs += c * integrate_base(spec.m, &mul_truncated(&on_base, &pushed, spec.m));
    }
    Ok((lhs, rhs))
}

/// Bundles with `m <= max_m`, `1 <= r <= max_r` and twists from `values`.
/// The bundle only depends on the multiset of twists, so each multiset is
/// listed once, in non-decreasing order.
pub fn sweep_specs(max_m: u32, max_r: u32, values: &[i64]) -> Vec<ProjectiveBundleSpec> {
    let mut values = values.to_vec();
    values.sort_unstable();
    values.dedup();
    let mut out = Vec::new();
    for m in 1..=max_m {
        for r in 1..=max_r {
            let mut current = Vec::new();
            multisets(&values, 0, r as usize + 1, &mut current, &mut |twists| {
                out.push(ProjectiveBundleSpec::new(m, twists.to_vec()).expect("valid sweep spec"));
            });
        }
    }
    out
}

fn multisets(
    values: &[i64],
    start: usize,
    len: usize,
    current: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if current.len() == len {
        emit(current);
        return;
    }
    for i in start..values.len() {
        current.push(values[i]);
        multisets(values, i, len, current, emit);
        current.pop();
    }
}

/// The sweep family used by the verifier: `m <= 3`, `r <= 4`, twists in
/// `{-1, 0, 1, 2}`.
pub fn default_sweep() -> Vec<ProjectiveBundleSpec> {
    sweep_specs(3, 4, &[-1, 0, 1, 2])
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SweepSummary {
    pub bundles: usize,
    pub checks: usize,
    pub failures: Vec<(ProjectiveBundleSpec, Eq3Report)>,
}

/// Runs [`verify_eq3`] on every element of the monomial basis of
/// `AP^{2m+2r}(2r)` for every bundle.
pub fn run_sweep(specs: &[ProjectiveBundleSpec]) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    for spec in specs {
        summary.bundles += 1;
        let ap = ap_basis_monomial(spec.fibre_dim(), spec.total_dim())?;
        for x in ap.basis() {
            summary.checks += 1;
            let report = verify_eq3(spec, x)?;
            if !report.equal {
                summary.failures.push((spec.clone(), report));
            }
        }
    }
    Ok(summary)
}

/// All degree-`total_dim` monomials in `ph`, for the full coproduct identity.
pub fn ph_monomials(spec: &ProjectiveBundleSpec) -> Vec<GradedPolynomial> {
    monomial_basis(GeneratorSystem::Ph, spec.total_dim())
        .into_iter()
        .map(|m| GradedPolynomial::monomial(GeneratorSystem::Ph, m, Rational::one()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordism::product;
    use crate::graded::{parse_monomial, parse_polynomial};
    use crate::linalg::q;

    fn spec(m: u32, twists: &[i64]) -> ProjectiveBundleSpec {
        ProjectiveBundleSpec::new(m, twists.to_vec()).unwrap()
    }

    fn el(ring: &BundleRing, terms: &[((u32, u32), i64)]) -> BundleElement {
        ring.normal_form(terms.iter().map(|&(k, c)| (k, q(c))))
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert!(ProjectiveBundleSpec::new(0, vec![0, 1]).is_err());
        assert!(ProjectiveBundleSpec::new(1, vec![0]).is_err());
    }

    #[test]
    fn vertical_chern_examples() {
        let s = spec(1, &[0, 0]);
        let ring = BundleRing::new(&s);
        assert_eq!(vertical_total_chern(&s), el(&ring, &[((0, 0), 1), ((0, 1), 2)]));

        let s = spec(1, &[0, 1]);
        let ring = BundleRing::new(&s);
        let c = vertical_total_chern(&s);
        assert_eq!(c, el(&ring, &[((0, 0), 1), ((0, 1), 2), ((1, 0), 1)]));
        for s in [spec(2, &[0, 1, 1]), spec(3, &[-1, 0, 2, 2])] {
            let r = s.r();
            assert!(vertical_total_chern(&s).component(2 * (r + 1)).is_zero());
        }
    }

    #[test]
    fn vertical_pontryagin_examples() {
        let s = spec(1, &[0, 1]);
        let ring = BundleRing::new(&s);
        let classes = vertical_pontryagin_and_euler(&s);
        assert_eq!(classes.euler, el(&ring, &[((0, 1), 2), ((1, 0), 1)]));
        assert_eq!(classes.pontryagin[1], ring.mul(&classes.euler, &classes.euler));

        let trivial = vertical_pontryagin_and_euler(&spec(1, &[0, 0]));
        assert!(trivial.pontryagin[1].is_zero());

        // p_1 = c_1^2 - 2 c_2 and p = prod (1 + x_j^2) over the roots x_j = u + a_j h
        let s = spec(2, &[0, 1, 2]);
        let ring = BundleRing::new(&s);
        let chern = vertical_chern_classes(&s);
        let p = pontryagin_from_chern(&ring, &chern);
        let p1 = &ring.mul(&chern[1], &chern[1]) - &chern[2].scale(&q(2));
        assert_eq!(p[1], p1);
        let mut total = ring.one();
        for &a in s.twists() {
            let x = &ring.u() + &ring.h().scale(&q(a));
            total = ring.mul(&total, &(&ring.one() + &ring.mul(&x, &x)));
        }
        for (k, pk) in p.iter().enumerate() {
            assert_eq!(*pk, total.component(4 * k as u32));
        }
        assert_eq!(p[2], ring.mul(&chern[2], &chern[2]));
    }

    #[test]
    fn gysin_examples() {
        for s in [spec(1, &[0, 1]), spec(2, &[0, 1, 1]), spec(3, &[-1, 0, 1, 2, 2])] {
            let ring = BundleRing::new(&s);
            let ur = ring.pow(&ring.u(), s.r());
            assert_eq!(ring.gysin(&ur)[0], q(1));
            assert!(ring.gysin(&ring.one()).iter().all(Zero::is_zero));
            // Euler characteristic of the fibre
            let e = vertical_pontryagin_and_euler(&s).euler;
            assert_eq!(ring.gysin(&e)[0], q(s.r() as i64 + 1));
        }
        let s = spec(1, &[0, 1]);
        let ring = BundleRing::new(&s);
        let e = vertical_pontryagin_and_euler(&s).euler;
        assert!(ring.gysin(&ring.mul(&e, &e)).iter().all(Zero::is_zero));
    }

    /// `pi_!(h^i u^{r+k}) = h^i (-h)^k h_k(a)`, with `h_k` the complete
    /// homogeneous symmetric polynomial.
    fn segre_gysin(s: &ProjectiveBundleSpec, raw: &BTreeMap<(u32, u32), Rational>) -> Vec<Rational> {
        let r = s.r();
        let mut out = vec![q(0); s.m() as usize + 1];
        for (&(i, j), c) in raw {
            if j < r {
                continue;
            }
            let k = j - r;
            if i + k > s.m() {
                continue;
            }
            let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
            out[(i + k) as usize] += c * sign * complete_homogeneous(s.twists(), k);
        }
        out
    }

    fn complete_homogeneous(a: &[i64], k: u32) -> Rational {
        fn go(a: &[i64], k: u32) -> i64 {
            match (a.split_first(), k) {
                (_, 0) => 1,
                (None, _) => 0,
                (Some((x, rest)), k) => (0..=k).map(|j| x.pow(j) * go(rest, k - j)).sum(),
            }
        }
        q(go(a, k))
    }

    fn raw_mul(
        a: &BTreeMap<(u32, u32), Rational>,
        b: &BTreeMap<(u32, u32), Rational>,
        m: u32,
    ) -> BTreeMap<(u32, u32), Rational> {
        let mut out = BTreeMap::new();
        for ((i1, j1), c1) in a {
            for ((i2, j2), c2) in b {
                if i1 + i2 <= m {
                    *out.entry((i1 + i2, j1 + j2)).or_insert_with(|| q(0)) += c1 * c2;
                }
            }
        }
        out
    }

    #[test]
    fn reduction_agrees_with_segre_classes() {
        for s in [spec(2, &[0, 1, 1]), spec(3, &[-1, 0, 2]), spec(3, &[1, 1, 2, 2])] {
            let ring = BundleRing::new(&s);
            // raw c(T_pi), never reduced by the fibre relation
            let mut raw: BTreeMap<(u32, u32), Rational> = [((0, 0), q(1))].into();
            for &a in s.twists() {
                let factor = [((0, 0), q(1)), ((0, 1), q(1)), ((1, 0), q(a))].into();
                raw = raw_mul(&raw, &factor, s.m());
            }
            let reduced = ring.normal_form(raw.clone());
            assert_eq!(ring.gysin(&reduced), segre_gysin(&s, &raw));
            for j in 0..=s.r() + s.m() {
                let single: BTreeMap<_, _> = [((0, j), q(1))].into();
                assert_eq!(
                    ring.gysin(&ring.normal_form(single.clone())),
                    segre_gysin(&s, &single)
                );
            }
        }
    }

    #[test]
    fn kappa_number_two_ways() {
        let s = spec(2, &[0, 1, 1]);
        let d = s.fibre_dim();
        let c = parse_monomial("p1*e", GeneratorSystem::Bso(d)).unwrap();
        let seq = KappaSequence::single(c);
        let value = kappa_number(&s, &seq).unwrap();

        // expand p_1(T_pi) e(T_pi) from the roots without reduction
        let m = s.m();
        let root = |a: i64| -> BTreeMap<(u32, u32), Rational> { [((0, 1), q(1)), ((1, 0), q(a))].into() };
        let mut e2: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        let mut p1: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        let tw = s.twists();
        for i in 0..tw.len() {
            for k in 0..i {
                for (key, c) in raw_mul(&root(tw[i]), &root(tw[k]), m) {
                    *e2.entry(key).or_insert_with(|| q(0)) += c;
                }
            }
            for (key, c) in raw_mul(&root(tw[i]), &root(tw[i]), m) {
                *p1.entry(key).or_insert_with(|| q(0)) += c;
            }
        }
        let product = raw_mul(&p1, &e2, m);
        assert_eq!(value, segre_gysin(&s, &product)[m as usize]);

        let wrong = KappaSequence::single(parse_monomial("e", GeneratorSystem::Bso(d)).unwrap());
        assert!(kappa_number(&s, &wrong).is_err());
    }

    #[test]
    fn kappa_numbers_vanish_for_untwisted_bundles() {
        for s in [spec(2, &[0, 0]), spec(2, &[0, 0, 0]), spec(3, &[0, 0, 0])] {
            let d = s.fibre_dim();
            for seq in crate::constraints::kappa_sequences(d, s.base_dim()).unwrap() {
                assert_eq!(kappa_number(&s, &seq).unwrap(), q(0));
            }
        }
        // equal non-zero twists: the same bundle, up to a twist of O(1)
        for s in [spec(2, &[1, 1]), spec(2, &[2, 2, 2])] {
            for seq in crate::constraints::kappa_sequences(s.fibre_dim(), s.base_dim()).unwrap() {
                assert_eq!(kappa_number(&s, &seq).unwrap(), q(0));
            }
        }
    }

    #[test]
    fn total_space_examples() {
        assert_eq!(fibre_class(&spec(1, &[0, 0, 0])), cp_class(2));
        let p1 = parse_polynomial("p1", None).unwrap();
        assert_eq!(pair(&p1, &fibre_class(&spec(1, &[0, 0, 0]))).unwrap(), q(3));

        let e = total_space_class(&spec(1, &[0, 0]));
        assert_eq!(e, product(&cp_class(1), &cp_class(1)));
        assert!(e.is_zero());

        for (m, r) in [(2, 2), (2, 4), (1, 3)] {
            let s = spec(m, &vec![0; r + 1]);
            assert_eq!(total_space_class(&s), product(&cp_class(m), &cp_class(r as u32)));
        }
        // a Hirzebruch surface has signature 0
        let s = spec(1, &[0, 1]);
        assert_eq!(pair(&p1, &total_space_class(&s)).unwrap(), q(0));
    }

    #[test]
    fn total_space_two_ways() {
        // Chern classes of TE directly, then Pontryagin classes
        for s in [spec(2, &[0, 1, 1]), spec(1, &[-1, 2, 0, 1])] {
            let ring = BundleRing::new(&s);
            let base = ring.normal_form(
                (0..=s.m()).map(|k| ((k, 0), q(binomial_coefficient(s.m() + 1, k).try_into().unwrap()))),
            );
            let total_chern = ring.mul(&base, &vertical_total_chern(&s));
            let n = s.m() + s.r();
            let chern: Vec<BundleElement> = (0..=n).map(|k| total_chern.component(2 * k)).collect();
            let pont = pontryagin_from_chern(&ring, &chern);
            let class = total_space_class(&s);
            for mono in monomial_basis(GeneratorSystem::P, s.total_dim()) {
                let value = mono.pairs().iter().fold(ring.one(), |acc, &(g, e)| {
                    ring.mul(&acc, &ring.pow(&pont[g as usize], e))
                });
                assert_eq!(class.number(&mono), ring.integrate(&value));
            }
        }
    }

    #[test]
    fn relation_examples() {
        let r = verify_eq3(&spec(1, &[0, 1]), &parse_polynomial("ph1", None).unwrap()).unwrap();
        assert_eq!((r.lhs.clone(), r.kappa_term.clone(), r.middle_term.clone()), (q(0), q(0), q(0)));
        assert!(r.equal);

        let s = spec(2, &[0, 0, 0, 0, 0]);
        let r = verify_eq3(&s, &parse_polynomial("ph1*ph2", None).unwrap()).unwrap();
        assert_eq!(r.kappa_term, q(0));
        assert_eq!(r.middle_term, q(15));
        assert_eq!(r.lhs, q(15));
        assert!(r.equal);

        let s = spec(2, &[0, 1, 1]);
        let r = verify_eq3(&s, &parse_polynomial("ph2", None).unwrap()).unwrap();
        assert_eq!(r.middle_term, q(0));
        assert!(r.equal);

        let not_ap = parse_polynomial("ph1^2", None).unwrap();
        assert!(matches!(
            verify_eq3(&spec(3, &[0, 1]), &not_ap),
            Err(Error::NotAlmostPrimitive { .. })
        ));
        assert!(verify_eq3(&s, &parse_polynomial("ph1", None).unwrap()).is_err());
    }

    #[test]
    fn projection_formula() {
        let s = spec(3, &[-1, 1, 2]);
        let ring = BundleRing::new(&s);
        let y = vec![q(2), q(-1), q(3), q(5)];
        let xs = [
            el(&ring, &[((0, 2), 1), ((1, 1), -3)]),
            ring.pow(&ring.u(), 4),
            vertical_total_chern(&s),
        ];
        for x in &xs {
            let lhs = ring.gysin(&ring.mul(&ring.pullback(&y), x));
            let rhs = mul_truncated(&y, &ring.gysin(x), s.m());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn full_coproduct_identity() {
        for s in [spec(2, &[0, 1, 1]), spec(1, &[-1, 0, 2, 2]), spec(3, &[0, 1, 2]), spec(2, &[1, 2])] {
            for x in ph_monomials(&s) {
                let (lhs, rhs) = coproduct_identity_sides(&s, &x).unwrap();
                assert_eq!(lhs, rhs, "{s}: {x}");
            }
        }
    }

    #[test]
    fn small_sweep_holds() {
        let specs = sweep_specs(2, 2, &[0, 1, 2]);
        let summary = run_sweep(&specs).unwrap();
        assert!(summary.checks > 0);
        assert!(summary.failures.is_empty(), "{:?}", summary.failures);
    }

    #[test]
    fn sweep_lists_multisets() {
        let specs = sweep_specs(1, 1, &[0, 1, 2]);
        let twists: Vec<Vec<i64>> = specs.iter().map(|s| s.twists().to_vec()).collect();
        assert_eq!(
            twists,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]
        );
    }
}
