//! Almost-primitive and near-primitive subspaces of `H*(BSO;Q)`.
//!
//! A class `x` of degree `m` is almost primitive of order `d` when the part of
//! `(Id (x) rho_d) Delta(x)` with left degree `>= 1` and right degree `>= d+1`
//! vanishes; near primitive of order `d` asks the same with right degree
//! `>= d`. Both subspaces are computed here as exact kernels, and the first
//! also by the closed-form monomial criterion (every proper factor of degree at
//! most `d`).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{
    coproduct, monomial_basis, restrict, to_ph, GeneratorSystem, GradedPolynomial, Monomial,
    TensorPolynomial,
};
use crate::linalg::{in_span, kernel_basis, rank, QMatrix, Rational};

/// A subspace of `H^m(BSO;Q)`, given by a basis in the `ph` presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    degree: u32,
    basis: Vec<GradedPolynomial>,
}

impl Subspace {
    pub fn zero(degree: u32) -> Self {
        Subspace {
            degree,
            basis: Vec::new(),
        }
    }

    /// All of `H^m`, spanned by the monomial basis.
    pub fn full(degree: u32) -> Self {
        let basis = ambient_basis(degree)
            .into_iter()
            .map(|m| GradedPolynomial::monomial(GeneratorSystem::Ph, m, Rational::one()))
            .collect();
        Subspace { degree, basis }
    }

    /// Builds a subspace from spanning classes, which must be linearly
    /// independent and homogeneous of degree `degree`.
    pub fn from_basis(degree: u32, basis: Vec<GradedPolynomial>) -> Result<Self> {
        let mut ph = Vec::with_capacity(basis.len());
        for x in &basis {
            let x = to_ph(x)?;
            if !x.is_zero() && x.homogeneous_degree() != Some(degree) {
                return Err(Error::InvalidInput(format!(
                    "{x} is not homogeneous of degree {degree}"
                )));
            }
            ph.push(x);
        }
        let s = Subspace { degree, basis: ph };
        let rows = s.coordinate_rows();
        let cols = ambient_basis(degree).len();
        if rank(&QMatrix::from_rows(cols, rows)) != s.basis.len() {
            return Err(Error::InvalidInput("basis is linearly dependent".into()));
        }
        Ok(s)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradedPolynomial] {
        &self.basis
    }

    /// Basis vectors as coordinate rows against the monomial basis of `H^m`.
    pub fn coordinate_rows(&self) -> Vec<Vec<Rational>> {
        let ambient = ambient_basis(self.degree);
        self.basis.iter().map(|x| x.coordinates(&ambient)).collect()
    }

    pub fn contains(&self, x: &GradedPolynomial) -> Result<bool> {
        let x = to_ph(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        if x.homogeneous_degree() != Some(self.degree) {
            return Ok(false);
        }
        let ambient = ambient_basis(self.degree);
        Ok(in_span(&self.coordinate_rows(), &x.coordinates(&ambient)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.degree != other.degree {
            return self.dim() == 0;
        }
        let theirs = other.coordinate_rows();
        self.coordinate_rows().iter().all(|v| in_span(&theirs, v))
    }

    /// Equal dimension plus containment.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// Monomial basis of `H^m(BSO;Q)` in `ph` generators.
pub fn ambient_basis(degree: u32) -> Vec<Monomial> {
    monomial_basis(GeneratorSystem::Ph, degree)
}

/// The part of `(Id (x) rho_d) Delta(x)` with left degree at least 1 and right
/// degree at least `min_right`. Zero exactly when the defining condition holds.
pub fn primitivity_defect(x: &GradedPolynomial, d: u32, min_right: u32) -> Result<TensorPolynomial> {
    let target = GeneratorSystem::bso(d)?;
    let x = to_ph(x)?;
    let delta = coproduct(&x)?.filter(|l, r| l >= 1 && r >= min_right);
    Ok(delta.map_right(target, |b| {
        restrict(
            &GradedPolynomial::monomial(GeneratorSystem::Ph, b.clone(), Rational::one()),
            d,
        )
        .expect("restriction of a ph monomial")
    }))
}

pub fn is_almost_primitive(x: &GradedPolynomial, d: u32) -> Result<bool> {
    Ok(primitivity_defect(x, d, d + 1)?.is_zero())
}

pub fn is_near_primitive(x: &GradedPolynomial, d: u32) -> Result<bool> {
    Ok(primitivity_defect(x, d, d)?.is_zero())
}

/// Kernel of `x -> primitivity_defect(x, d, min_right)` on `H^m`.
fn defect_kernel(d: u32, m: u32, min_right: u32) -> Result<Subspace> {
    GeneratorSystem::bso(d)?;
    if !m.is_multiple_of(4) {
        return Ok(Subspace::zero(m));
    }
    let ambient = ambient_basis(m);
    let columns: Vec<TensorPolynomial> = ambient
        .iter()
        .map(|mono| {
            let x = GradedPolynomial::monomial(GeneratorSystem::Ph, mono.clone(), Rational::one());
            primitivity_defect(&x, d, min_right)
        })
        .collect::<Result<_>>()?;

    let mut row_keys: Vec<(Monomial, Monomial)> = columns
        .iter()
        .flat_map(|t| t.terms().map(|(k, _)| k.clone()))
        .collect();
    row_keys.sort();
    row_keys.dedup();

    let mut matrix = QMatrix::zeros(row_keys.len(), ambient.len());
    for (j, t) in columns.iter().enumerate() {
        for (key, c) in t.terms() {
            let i = row_keys.binary_search(key).expect("collected key");
            matrix.set(i, j, c.clone());
        }
    }
    let basis = kernel_basis(&matrix)
        .into_iter()
        .map(|v| GradedPolynomial::from_coordinates(GeneratorSystem::Ph, &ambient, &v))
        .collect();
    Ok(Subspace { degree: m, basis })
}

/// `AP^m(d)` as the kernel of its defining map.
pub fn ap_basis_definitional(d: u32, m: u32) -> Result<Subspace> {
    defect_kernel(d, m, d + 1)
}

/// `NP^m(d)` as the kernel of its defining map.
pub fn np_basis(d: u32, m: u32) -> Result<Subspace> {
    defect_kernel(d, m, d)
}

/// Whether every proper factor of the `ph` monomial has degree at most `d`.
/// The largest proper factors drop a single copy of the smallest generator.
pub fn proper_factors_bounded(m: &Monomial, d: u32) -> bool {
    match m.pairs().first() {
        None => true,
        Some(&(smallest, _)) => {
            m.degree(GeneratorSystem::Ph) - GeneratorSystem::Ph.generator_degree(smallest).unwrap() <= d
        }
    }
}

/// `AP^m(d)` as the span of monomials all of whose proper factors have degree
/// at most `d`.
pub fn ap_basis_monomial(d: u32, m: u32) -> Result<Subspace> {
    GeneratorSystem::bso(d)?;
    if !m.is_multiple_of(4) {
        return Ok(Subspace::zero(m));
    }
    let basis = ambient_basis(m)
        .into_iter()
        .filter(|mono| proper_factors_bounded(mono, d))
        .map(|mono| GradedPolynomial::monomial(GeneratorSystem::Ph, mono, Rational::one()))
        .collect();
    Ok(Subspace { degree: m, basis })
}

/// The bidegree `(p, d)` component of `Delta(x)`, for `x` homogeneous of
/// degree `p + d`.
pub fn middle_terms(x: &GradedPolynomial, p: u32, d: u32) -> Result<TensorPolynomial> {
    let x = to_ph(x)?;
    if let Some(deg) = x.homogeneous_degree() {
        if deg != p + d {
            return Err(Error::DegreeMismatch {
                expected: p + d,
                found: deg,
            });
        }
    } else if !x.is_zero() {
        return Err(Error::InvalidInput(format!("{x} is not homogeneous")));
    }
    Ok(coproduct(&x)?.bidegree_component(p, d))
}

/// Rank of the restriction `H^m(BSO;Q) -> H^m(BSO(d);Q)`.
pub fn restriction_rank(d: u32, m: u32) -> Result<usize> {
    let target = GeneratorSystem::bso(d)?;
    let source = ambient_basis(m);
    let image_basis = monomial_basis(target, m);
    let mut matrix = QMatrix::zeros(image_basis.len(), source.len());
    for (j, mono) in source.iter().enumerate() {
        let x = GradedPolynomial::monomial(GeneratorSystem::Ph, mono.clone(), Rational::one());
        let img = restrict(&x, d)?;
        for (i, b) in image_basis.iter().enumerate() {
            let c = img.coefficient(b);
            if !c.is_zero() {
                matrix.set(i, j, c);
            }
        }
    }
    Ok(rank(&matrix))
}
