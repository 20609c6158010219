use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use super::GeneratorSystem;

/// A finitely supported exponent vector: sorted `(generator, exponent)` pairs
/// with positive exponents. The empty vector is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn power(index: u32, exponent: u32) -> Self {
        Self::from_pairs([(index, exponent)])
    }

    /// Normalises arbitrary pairs: repeated generators are merged and zero
    /// exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == g => *acc += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0
            .binary_search_by_key(&index, |&(g, _)| g)
            .map_or(0, |i| self.0[i].1)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree in `system`. Panics if some generator does not belong to it.
    pub fn degree(&self, system: GeneratorSystem) -> u32 {
        self.0
            .iter()
            .map(|&(g, e)| {
                e * system
                    .generator_degree(g)
                    .unwrap_or_else(|| panic!("generator {g} not in {system}"))
            })
            .sum()
    }

    pub fn belongs_to(&self, system: GeneratorSystem) -> bool {
        self.0.iter().all(|&(g, _)| system.generator_degree(g).is_some())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(&other.0).copied())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(g, e)| other.exponent(g) >= e)
    }

    /// `self / divisor`, or `None` when `divisor` does not divide `self`.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial::from_pairs(
            self.0.iter().map(|&(g, e)| (g, e - divisor.exponent(g))),
        ))
    }

    /// Every monomial dividing `self`, including `1` and `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::new()];
        for &(g, e) in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<(u32, u32)>| {
                    (0..=e).map(move |k| {
                        let mut next = prefix.clone();
                        if k > 0 {
                            next.push((g, k));
                        }
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }

    /// `prod_n binom(self_n, divisor_n)`, the multiplicity of `divisor (x) self/divisor`
    /// in the coproduct of a monomial in primitive generators.
    pub fn binomial(&self, divisor: &Monomial) -> BigUint {
        divisor
            .0
            .iter()
            .map(|&(g, k)| binomial(self.exponent(g), k))
            .fold(BigUint::one(), |acc, b| acc * b)
    }

    /// Generator indices repeated by multiplicity, largest first.
    pub fn parts(&self) -> Vec<u32> {
        self.0
            .iter()
            .rev()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials compare by their descending part lists, larger parts first, so
/// that within a degree `ph3 < ph1*ph2 < ph1^3`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // A prefix of the other's part list sorts after it.
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some(&(ga, ea)), Some(&(gb, eb))) => {
                    if ga != gb {
                        return gb.cmp(&ga);
                    }
                    if ea != eb {
                        // The shorter run is followed by a smaller part (or ends).
                        return eb.cmp(&ea);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
