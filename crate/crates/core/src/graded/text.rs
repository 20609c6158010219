//! Human-writable monomials and polynomials: `ph1^2*ph2`, `p1^2 - 2*p2`,
//! `3/2*e^4`. Whitespace is ignored everywhere.

use super::{GeneratorSystem, GradedPolynomial, Monomial, EULER};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};

/// Formats a monomial, `1` for the unit. The Euler class is written last.
pub fn format_monomial(system: GeneratorSystem, m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut pairs: Vec<(u32, u32)> = m.pairs().to_vec();
    pairs.sort_by_key(|&(g, _)| (g == EULER, g));
    pairs
        .iter()
        .map(|&(g, e)| {
            let name = system.generator_name(g);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// A parsed factor: generator kind, index, exponent.
type Factor = (Kind, u32, u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Ph,
    P,
    E,
}

fn parse_factor(f: &str) -> Result<Factor> {
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => (
            b,
            e.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
        ),
        None => (f, 1),
    };
    let (kind, index) = if base == "e" {
        (Kind::E, EULER)
    } else if let Some(i) = base.strip_prefix("ph") {
        (Kind::Ph, parse_index(i, f)?)
    } else if let Some(i) = base.strip_prefix('p') {
        (Kind::P, parse_index(i, f)?)
    } else {
        return Err(Error::Parse(format!("unknown generator {base:?}")));
    };
    Ok((kind, index, exp))
}

fn parse_index(s: &str, factor: &str) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(Error::Parse(format!("bad generator index in {factor:?}"))),
    }
}

fn check_kind(kind: Kind, index: u32, system: GeneratorSystem) -> Result<()> {
    let ok = match (kind, system) {
        (Kind::Ph, GeneratorSystem::Ph) | (Kind::P, GeneratorSystem::P) => true,
        (Kind::P | Kind::E, GeneratorSystem::Bso(_)) => system.generator_degree(index).is_some(),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let name = match kind {
            Kind::Ph => format!("ph{index}"),
            Kind::P => format!("p{index}"),
            Kind::E => "e".to_string(),
        };
        Err(Error::Parse(format!("{name} is not a generator of {system}")))
    }
}

fn infer_system(kinds: &[Kind], given: Option<GeneratorSystem>) -> Result<GeneratorSystem> {
    if let Some(sys) = given {
        return Ok(sys);
    }
    let has = |k| kinds.contains(&k);
    match (has(Kind::Ph), has(Kind::P), has(Kind::E)) {
        (_, _, true) => Err(Error::Parse(
            "the Euler class needs an explicit BSO(d) system".into(),
        )),
        (true, true, _) => Err(Error::Parse("cannot mix ph and p generators".into())),
        (false, true, _) => Ok(GeneratorSystem::P),
        _ => Ok(GeneratorSystem::Ph),
    }
}

/// Parses a single monomial such as `ph1^2*ph2` or `1`.
pub fn parse_monomial(s: &str, system: GeneratorSystem) -> Result<Monomial> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "1" {
        return Ok(Monomial::one());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let mut pairs = Vec::new();
    for f in s.split('*') {
        let (kind, index, exp) = parse_factor(f)?;
        check_kind(kind, index, system)?;
        pairs.push((index, exp));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// Parses a polynomial such as `ph1^2 - 1/2*ph2 + 3`. When `system` is
/// `None` it is inferred from the generator names (`ph` or `p`).
pub fn parse_polynomial(s: &str, system: Option<GeneratorSystem>) -> Result<GradedPolynomial> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut raw_terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && s[..i].ends_with('^')) {
            if i > 0 {
                if current.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                raw_terms.push((negative, std::mem::take(&mut current)));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    raw_terms.push((negative, current));

    let mut parsed: Vec<(Rational, Vec<Factor>)> = Vec::new();
    for (neg, body) in raw_terms {
        let mut coef = Rational::from_integer(1.into());
        let mut factors = Vec::new();
        for f in body.split('*') {
            if f.is_empty() {
                return Err(Error::Parse(format!("empty factor in {body:?}")));
            }
            if f.starts_with(|c: char| c.is_ascii_digit()) {
                let c = parse_rational(f)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {f:?}")))?;
                coef *= c;
            } else {
                factors.push(parse_factor(f)?);
            }
        }
        if neg {
            coef = -coef;
        }
        parsed.push((coef, factors));
    }

    let kinds: Vec<Kind> = parsed
        .iter()
        .flat_map(|(_, fs)| fs.iter().map(|f| f.0))
        .collect();
    let sys = infer_system(&kinds, system)?;
    let mut out = GradedPolynomial::zero(sys);
    for (coef, factors) in parsed {
        for &(kind, index, _) in &factors {
            check_kind(kind, index, sys)?;
        }
        let m = Monomial::from_pairs(factors.iter().map(|&(_, g, e)| (g, e)));
        out.add_term(m, coef);
    }
    Ok(out)
}
