//! Graded polynomial algebras of rational characteristic classes.
//!
//! Three presentations are supported:
//!
//! * `H*(BSO;Q) = Q[ph_1, ph_2, ...]` with `ph_i` primitive of degree `4i`,
//! * `H*(BSO;Q) = Q[p_1, p_2, ...]` in Pontryagin classes,
//! * `H*(BSO(d);Q)`, generated by `p_1, ..., p_n` when `d = 2n + 1` and by
//!   `p_1, ..., p_{n-1}, e` when `d = 2n`.
//!
//! `ph_i` is normalised as the `i`-th power sum of the squared Pontryagin
//! roots, so `ph_1 = p_1` and `ph_2 = p_1^2 - 2 p_2`.

mod hopf;
mod json;
mod monomial;
mod poly;
mod tensor;
mod text;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use hopf::{coproduct, monomial_basis, p_to_ph, ph_to_p, restrict, to_p, to_ph};
pub use json::{PolynomialJson, TensorJson, TensorTermJson, TermJson};
pub use monomial::Monomial;
pub(crate) use monomial::binomial as binomial_coefficient;
pub use poly::GradedPolynomial;
pub use tensor::TensorPolynomial;
pub use text::{format_monomial, parse_monomial, parse_polynomial};

/// Generator index reserved for the Euler class in `BSO(2n)`.
pub const EULER: u32 = 0;

/// Which polynomial generators a class is written in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorSystem {
    /// Pontryagin character classes `ph_i`, degree `4i`.
    Ph,
    /// Pontryagin classes `p_i`, degree `4i`.
    P,
    /// `H*(BSO(d);Q)` for `d >= 2`.
    Bso(u32),
}

impl GeneratorSystem {
    pub fn bso(d: u32) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::InvalidSystem(format!(
                "BSO({d}) needs d >= 2"
            )));
        }
        Ok(GeneratorSystem::Bso(d))
    }

    /// Whether this is a presentation of the stable ring `H*(BSO;Q)`.
    pub fn is_stable(self) -> bool {
        matches!(self, GeneratorSystem::Ph | GeneratorSystem::P)
    }

    /// Degree of generator `index`, or `None` if it is not a generator here.
    pub fn generator_degree(self, index: u32) -> Option<u32> {
        match self {
            GeneratorSystem::Ph | GeneratorSystem::P => (index >= 1).then_some(4 * index),
            GeneratorSystem::Bso(d) => {
                let n = d / 2;
                if d % 2 == 1 {
                    (1..=n).contains(&index).then_some(4 * index)
                } else if index == EULER {
                    Some(d)
                } else {
                    (1..n).contains(&index).then_some(4 * index)
                }
            }
        }
    }

    /// All generators of degree at most `max_degree`, in increasing index order.
    pub fn generators_up_to(self, max_degree: u32) -> Vec<u32> {
        (0..=max_degree / 4 + 1)
            .filter(|&i| self.generator_degree(i).is_some_and(|deg| deg <= max_degree))
            .collect()
    }

    pub fn generator_name(self, index: u32) -> String {
        match self {
            GeneratorSystem::Ph => format!("ph{index}"),
            GeneratorSystem::P => format!("p{index}"),
            GeneratorSystem::Bso(_) if index == EULER => "e".to_string(),
            GeneratorSystem::Bso(_) => format!("p{index}"),
        }
    }
}

impl fmt::Display for GeneratorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSystem::Ph => f.write_str("ph"),
            GeneratorSystem::P => f.write_str("p"),
            GeneratorSystem::Bso(d) => write!(f, "bso{d}"),
        }
    }
}

impl FromStr for GeneratorSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "ph" => Ok(GeneratorSystem::Ph),
            "p" => Ok(GeneratorSystem::P),
            other => match other.strip_prefix("bso").map(str::parse::<u32>) {
                Some(Ok(d)) => GeneratorSystem::bso(d),
                _ => Err(Error::InvalidSystem(other.to_string())),
            },
        }
    }
}
