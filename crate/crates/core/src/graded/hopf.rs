//! Hopf-algebra structure of `H*(BSO;Q)`: monomial bases, the Whitney-sum
//! coproduct, the change of generators between `ph_i` and `p_i`, and the
//! restriction to `H*(BSO(d);Q)`.

use num_traits::One;

use super::{GeneratorSystem, GradedPolynomial, Monomial, TensorPolynomial, EULER};
use crate::error::{Error, Result};
use crate::linalg::{q, Rational};

/// All monomials of total `degree` over `system`, in monomial order.
pub fn monomial_basis(system: GeneratorSystem, degree: u32) -> Vec<Monomial> {
    let gens = system.generators_up_to(degree);
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(system, &gens, degree, &mut current, &mut out);
    out.sort();
    out
}

fn enumerate(
    system: GeneratorSystem,
    gens: &[u32],
    remaining: u32,
    current: &mut Vec<(u32, u32)>,
    out: &mut Vec<Monomial>,
) {
    let Some((&g, rest)) = gens.split_last() else {
        if remaining == 0 {
            out.push(Monomial::from_pairs(current.iter().copied()));
        }
        return;
    };
    let deg = system.generator_degree(g).expect("listed generator");
    for e in 0..=remaining / deg {
        current.push((g, e));
        enumerate(system, rest, remaining - e * deg, current, out);
        current.pop();
    }
}

fn require_stable(x: &GradedPolynomial) -> Result<()> {
    if x.system().is_stable() {
        Ok(())
    } else {
        Err(Error::SystemMismatch {
            expected: "ph or p".into(),
            found: x.system(),
        })
    }
}

/// The coproduct induced by Whitney sum. On the `ph` presentation every
/// generator is primitive, so a monomial expands binomially; on the `p`
/// presentation `p_k` maps to `sum_{i+j=k} p_i (x) p_j`.
pub fn coproduct(x: &GradedPolynomial) -> Result<TensorPolynomial> {
    match x.system() {
        GeneratorSystem::Ph => Ok(coproduct_ph(x)),
        GeneratorSystem::P => Ok(coproduct_p(x)),
        other => Err(Error::SystemMismatch {
            expected: "ph or p".into(),
            found: other,
        }),
    }
}

fn coproduct_ph(x: &GradedPolynomial) -> TensorPolynomial {
    let sys = GeneratorSystem::Ph;
    let mut out = TensorPolynomial::zero(sys, sys);
    for (m, c) in x.terms() {
        for j in m.divisors() {
            let rest = m.div(&j).expect("divisor");
            let mult = Rational::from_integer(m.binomial(&j).into());
            out.add_term(j, rest, c * mult);
        }
    }
    out
}

fn coproduct_p(x: &GradedPolynomial) -> TensorPolynomial {
    let sys = GeneratorSystem::P;
    let whitney = |k: u32| {
        let mut t = TensorPolynomial::zero(sys, sys);
        for i in 0..=k {
            t.add_term(p_or_one(i), p_or_one(k - i), Rational::one());
        }
        t
    };
    let mut out = TensorPolynomial::zero(sys, sys);
    for (m, c) in x.terms() {
        let mut term = TensorPolynomial::zero(sys, sys);
        term.add_term(Monomial::one(), Monomial::one(), c.clone());
        for &(g, e) in m.pairs() {
            let w = whitney(g);
            for _ in 0..e {
                term = &term * &w;
            }
        }
        out = &out + &term;
    }
    out
}

/// `p_i` as a monomial, with `p_0 = 1`.
fn p_or_one(i: u32) -> Monomial {
    if i == 0 {
        Monomial::one()
    } else {
        Monomial::generator(i)
    }
}

/// `ph_1, ..., ph_k` written in Pontryagin classes, via Newton's identities
/// `ph_k = sum_{i<k} (-1)^{i-1} p_i ph_{k-i} + (-1)^{k-1} k p_k`.
fn ph_in_p(k: u32) -> Vec<GradedPolynomial> {
    let sys = GeneratorSystem::P;
    let mut out: Vec<GradedPolynomial> = vec![GradedPolynomial::zero(sys)];
    for n in 1..=k {
        let sign = |i: u32| if i % 2 == 1 { q(1) } else { q(-1) };
        let mut s = GradedPolynomial::generator(sys, n).scale(&(sign(n) * q(n as i64)));
        for i in 1..n {
            let t = &GradedPolynomial::generator(sys, i) * &out[(n - i) as usize];
            s = &s + &t.scale(&sign(i));
        }
        out.push(s);
    }
    out
}

/// `p_1, ..., p_k` written in `ph` classes, via
/// `k p_k = sum_{i=1}^{k} (-1)^{i-1} p_{k-i} ph_i`.
fn p_in_ph(k: u32) -> Vec<GradedPolynomial> {
    let sys = GeneratorSystem::Ph;
    let mut out: Vec<GradedPolynomial> = vec![GradedPolynomial::one(sys)];
    for n in 1..=k {
        let mut s = GradedPolynomial::zero(sys);
        for i in 1..=n {
            let t = &out[(n - i) as usize] * &GradedPolynomial::generator(sys, i);
            let sign = if i % 2 == 1 { q(1) } else { q(-1) };
            s = &s + &t.scale(&sign);
        }
        out.push(s.scale(&Rational::new(1.into(), (n as i64).into())));
    }
    out
}

fn max_generator(x: &GradedPolynomial) -> u32 {
    x.terms()
        .flat_map(|(m, _)| m.pairs().iter().map(|&(g, _)| g))
        .max()
        .unwrap_or(0)
}

/// Rewrites a class in the `ph` presentation in Pontryagin classes.
pub fn ph_to_p(x: &GradedPolynomial) -> Result<GradedPolynomial> {
    if x.system() != GeneratorSystem::Ph {
        return Err(Error::SystemMismatch {
            expected: "ph".into(),
            found: x.system(),
        });
    }
    let table = ph_in_p(max_generator(x));
    Ok(x.map_generators(GeneratorSystem::P, |g| table[g as usize].clone()))
}

/// Rewrites a class in Pontryagin classes in the `ph` presentation.
pub fn p_to_ph(x: &GradedPolynomial) -> Result<GradedPolynomial> {
    if x.system() != GeneratorSystem::P {
        return Err(Error::SystemMismatch {
            expected: "p".into(),
            found: x.system(),
        });
    }
    let table = p_in_ph(max_generator(x));
    Ok(x.map_generators(GeneratorSystem::Ph, |g| table[g as usize].clone()))
}

/// Any stable class, in Pontryagin classes.
pub fn to_p(x: &GradedPolynomial) -> Result<GradedPolynomial> {
    require_stable(x)?;
    match x.system() {
        GeneratorSystem::P => Ok(x.clone()),
        _ => ph_to_p(x),
    }
}

/// Any stable class, in the `ph` presentation.
pub fn to_ph(x: &GradedPolynomial) -> Result<GradedPolynomial> {
    require_stable(x)?;
    match x.system() {
        GeneratorSystem::Ph => Ok(x.clone()),
        _ => p_to_ph(x),
    }
}

/// The restriction `H*(BSO;Q) -> H*(BSO(d);Q)`. For `d = 2n + 1` it keeps
/// `p_1..p_n`; for `d = 2n` it keeps `p_1..p_{n-1}` and sends `p_n` to `e^2`.
/// Higher `p_i` die.
pub fn restrict(x: &GradedPolynomial, d: u32) -> Result<GradedPolynomial> {
    let target = GeneratorSystem::bso(d)?;
    let xp = to_p(x)?;
    let n = d / 2;
    Ok(xp.map_generators(target, |i| {
        if d.is_multiple_of(2) && i == n {
            GradedPolynomial::generator(target, EULER).pow(2)
        } else if target.generator_degree(i).is_some() && i != EULER {
            GradedPolynomial::generator(target, i)
        } else {
            GradedPolynomial::zero(target)
        }
    }))
}
