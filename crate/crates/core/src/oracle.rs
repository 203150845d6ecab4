//! Brute-force ur-prior search that never looks at the overlap complex.
//!
//! Unknowns are the awareness-set masses `s_i = P(A_i)`. An ur-prior must
//! satisfy `P(x) = P_i(x) s_i` for every agent aware of `x`, so two agents
//! that both give `x` positive mass are linked by `P_i(x) s_i = P_j(x) s_j`.
//! The links are propagated outcome by outcome; any contradiction, or an
//! outcome that one aware agent gives zero mass and another does not, makes
//! the system infeasible.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::compat::Measure;
use crate::credence::{AgentId, AgentSystem, OutcomeId};
use crate::numerics::Rational;

/// Returns an ur-prior if one exists.
pub fn feasibility_oracle(system: &AgentSystem) -> Option<Measure> {
    let n = system.len();
    let outcomes = system.space().len();

    // pointwise: every agent aware of x must agree on whether x is null
    let mut positive_holders: Vec<Vec<(AgentId, &Rational)>> = vec![Vec::new(); outcomes];
    for (x, holders) in positive_holders.iter_mut().enumerate() {
        let mut any_zero = false;
        for (i, agent) in system.agents().iter().enumerate() {
            match agent.mass(x) {
                Some(p) if p.is_zero() => any_zero = true,
                Some(p) => holders.push((i, p)),
                None => {}
            }
        }
        if any_zero && !holders.is_empty() {
            return None;
        }
    }

    // links: for each outcome, agent i -> agent j with s_j = s_i P_i(x) / P_j(x)
    let mut links: Vec<Vec<(AgentId, OutcomeId)>> = vec![Vec::new(); n];
    for (x, holders) in positive_holders.iter().enumerate() {
        for &(i, _) in holders {
            for &(j, _) in holders {
                if i != j {
                    links[i].push((j, x));
                }
            }
        }
    }
    let mass = |agent: AgentId, x: OutcomeId| system.agent(agent).mass(x).expect("linked through x");

    let mut scale: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(Rational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let si = scale[i].clone().unwrap();
            for &(j, x) in &links[i] {
                let implied = &si * mass(i, x) / mass(j, x);
                match &scale[j] {
                    None => {
                        scale[j] = Some(implied);
                        queue.push_back(j);
                    }
                    Some(sj) if *sj != implied => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let scale: Vec<Rational> = scale.into_iter().map(Option::unwrap).collect();

    // assemble P(x) = P_i(x) s_i and normalize
    let mut masses = Vec::new();
    for x in 0..outcomes {
        let values: Vec<Rational> =
            system.agents().iter().enumerate().filter_map(|(i, a)| a.mass(x).map(|p| p * &scale[i])).collect();
        let Some(first) = values.first() else { continue };
        if values.iter().any(|v| v != first) {
            return None;
        }
        masses.push((x, first.clone()));
    }
    let total = masses.iter().fold(Rational::zero(), |acc, (_, m)| acc + m);
    if total.is_zero() {
        return None;
    }
    let candidate: Measure = masses.into_iter().map(|(x, m)| (x, m / &total)).collect();

    // s_i = P(A_i) must hold up to the common normalization
    for (i, agent) in system.agents().iter().enumerate() {
        let on_support = candidate.event_mass(agent.support());
        if on_support.is_zero() || on_support != &scale[i] / &total {
            return None;
        }
    }
    Some(candidate)
}
