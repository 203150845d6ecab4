//! Pairwise compatible agent systems without an ur-prior, built from a
//! complex that has a one-dimensional hole.
//!
//! Every simplex of the complex becomes an outcome. Agent `i` is aware of the
//! simplices containing `i` and weighs simplex `x` by `2^f(i, max x)`, where
//! `f` is an integer 1-cocycle that is not a coboundary. The cocycle
//! condition makes the agents compatible on every overlap, while the ratio
//! cochain of the result stays in the cohomology class of `f`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cohomology::{integer_values, noncoboundary_cocycle};
use crate::complex::SimplicialComplex;
use crate::credence::{AgentSystem, ValidationErrors};
use crate::numerics::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(
        "the complex has no one-dimensional hole (H1 = 0), so every pairwise compatible system on it has an ur-prior"
    )]
    NoHole,
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
}

/// `2^e` as an exact rational, for any integer exponent.
fn power_of_two(e: &BigInt) -> Rational {
    let magnitude: u32 = e.magnitude().try_into().expect("cocycle entry fits in u32");
    let p = Rational::from_integer(num_traits::pow(BigInt::from(2), magnitude as usize));
    if e < &BigInt::zero() {
        p.recip()
    } else {
        p
    }
}

/// Builds a pairwise compatible system whose overlap complex is `complex`
/// and which has no ur-prior.
pub fn generate_counterexample(complex: &SimplicialComplex) -> Result<AgentSystem, WitnessError> {
    let cocycle = noncoboundary_cocycle(complex).ok_or(WitnessError::NoHole)?;
    let values = integer_values(&cocycle).expect("selected cocycle is integral");

    // antisymmetric extension to ordered pairs, zero on the diagonal
    let f = |i: usize, j: usize| -> BigInt {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => BigInt::zero(),
            std::cmp::Ordering::Less => values[complex.position(&[i, j]).expect("edge of a simplex")].clone(),
            std::cmp::Ordering::Greater => -values[complex.position(&[j, i]).expect("edge of a simplex")].clone(),
        }
    };

    let simplices: Vec<&Vec<usize>> = (0..)
        .map_while(|k| {
            let level = complex.simplices(k);
            (!level.is_empty()).then_some(level)
        })
        .flatten()
        .collect();
    let outcomes: Vec<String> = simplices.iter().map(|s| complex.label(s)).collect();

    let agents = (0..complex.vertex_count()).map(|i| {
        let weights: Vec<(String, Rational)> = simplices
            .iter()
            .zip(&outcomes)
            .filter(|(s, _)| s.contains(&i))
            .map(|(s, label)| (label.clone(), power_of_two(&f(i, *s.last().unwrap()))))
            .collect();
        let total = weights.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        debug_assert!(total > Rational::zero() || weights.is_empty());
        let pmf: Vec<(String, Rational)> = weights.into_iter().map(|(l, w)| (l, w / &total)).collect();
        (complex.vertices()[i].clone(), pmf)
    });
    Ok(AgentSystem::from_masses(outcomes.clone(), agents)?)
}

/// The base-2 exponential of an integer 1-cochain, as positive edge ratios.
pub fn exponentiate(values: &[BigInt]) -> Vec<Rational> {
    values.iter().map(power_of_two).collect()
}
