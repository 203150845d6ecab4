//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use urprior::complex::SimplicialComplex;
use urprior::credence::AgentSystem;
use urprior::numerics::{int, Rational};
use urprior::{cohomology_dim, generate_counterexample};

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn nonempty_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn build(outcomes: &[String], agents: Vec<Vec<(usize, Rational)>>) -> AgentSystem {
    let named = agents.into_iter().enumerate().map(|(i, pmf)| {
        (format!("{}", i + 1), pmf.into_iter().map(|(o, p)| (outcomes[o].clone(), p)).collect::<Vec<_>>())
    });
    AgentSystem::from_masses(outcomes.to_vec(), named).expect("generated systems are valid")
}

fn normalize(weights: Vec<(usize, i64)>) -> Vec<(usize, Rational)> {
    let total: i64 = weights.iter().map(|(_, w)| w).sum();
    assert!(total > 0);
    weights.into_iter().map(|(o, w)| (o, Rational::new(w.into(), total.into()))).collect()
}

/// Independent random pmfs on random supports; zero masses allowed.
pub fn independent_system<R: Rng>(rng: &mut R, max_agents: usize, max_outcomes: usize) -> AgentSystem {
    let m = rng.gen_range(1..=max_outcomes);
    let n = rng.gen_range(1..=max_agents);
    let outcomes = labels("o", m);
    let zero_rate = if rng.gen_bool(0.3) { 0.25 } else { 0.0 };
    let agents = (0..n)
        .map(|_| loop {
            let support = nonempty_subset(rng, m, 0.45);
            let weights: Vec<(usize, i64)> =
                support.iter().map(|&o| (o, if rng.gen_bool(zero_rate) { 0 } else { rng.gen_range(1..=4) })).collect();
            if weights.iter().any(|(_, w)| *w > 0) {
                break normalize(weights);
            }
        })
        .collect();
    build(&outcomes, agents)
}

/// Every agent conditions one global weighting (zeros allowed) on its own
/// support, so an ur-prior always exists.
pub fn conditioned_system<R: Rng>(rng: &mut R, max_agents: usize, max_outcomes: usize) -> AgentSystem {
    let m = rng.gen_range(1..=max_outcomes);
    let n = rng.gen_range(1..=max_agents);
    let outcomes = labels("o", m);
    let global: Vec<i64> = loop {
        let g: Vec<i64> = (0..m).map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=6) }).collect();
        if g.iter().any(|&w| w > 0) {
            break g;
        }
    };
    let agents = (0..n)
        .map(|_| loop {
            let support = nonempty_subset(rng, m, 0.5);
            if support.iter().any(|&o| global[o] > 0) {
                break normalize(support.iter().map(|&o| (o, global[o])).collect());
            }
        })
        .collect();
    build(&outcomes, agents)
}

/// A conditioned system with one agent's mass on one outcome bumped, which
/// usually breaks compatibility or the scaling.
pub fn perturbed_system<R: Rng>(rng: &mut R, max_agents: usize, max_outcomes: usize) -> AgentSystem {
    let base = conditioned_system(rng, max_agents, max_outcomes);
    let raw = base.to_raw();
    let victim = rng.gen_range(0..raw.agents.len());
    let mut agents: Vec<Vec<(usize, Rational)>> =
        base.agents().iter().map(|a| a.entries().map(|(o, p)| (o, p.clone())).collect()).collect();
    let k = rng.gen_range(0..agents[victim].len());
    agents[victim][k].1 += int(rng.gen_range(1..=3));
    let total = agents[victim].iter().fold(int(0), |acc, (_, p)| acc + p);
    for entry in &mut agents[victim] {
        entry.1 = &entry.1 / &total;
    }
    build(base.space().labels(), agents)
}

/// Pairwise compatible systems in which some outcome lies in every awareness
/// set and gets positive mass from every agent.
pub fn common_event_system<R: Rng>(rng: &mut R, max_agents: usize, max_outcomes: usize) -> AgentSystem {
    let m = rng.gen_range(2..=max_outcomes);
    let n = rng.gen_range(1..=max_agents);
    let outcomes = labels("o", m);
    let hub = rng.gen_range(0..m);
    if rng.gen_bool(0.5) {
        // star: agents share only the hub, so every overlap is one outcome
        let mut others: Vec<usize> = (0..m).filter(|&o| o != hub).collect();
        others.shuffle(rng);
        let agents = (0..n)
            .map(|i| {
                let mut weights = vec![(hub, rng.gen_range(1..=5))];
                for (k, &o) in others.iter().enumerate() {
                    if k % n == i && rng.gen_bool(0.7) {
                        weights.push((o, rng.gen_range(0..=5)));
                    }
                }
                weights.sort();
                normalize(weights)
            })
            .collect();
        build(&outcomes, agents)
    } else {
        let global: Vec<i64> =
            (0..m).map(|o| if o == hub { rng.gen_range(1..=6) } else { rng.gen_range(0..=6) }).collect();
        let agents = (0..n)
            .map(|_| {
                let mut support = nonempty_subset(rng, m, 0.5);
                if !support.contains(&hub) {
                    support.push(hub);
                    support.sort();
                }
                normalize(support.iter().map(|&o| (o, global[o])).collect())
            })
            .collect();
        build(&outcomes, agents)
    }
}

pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(0..=7))
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(size);
            vs
        })
        .collect();
    SimplicialComplex::from_facet_indices(labels("v", n), &facets)
}

/// Complexes with at least one one-dimensional hole: a random complex plus a
/// hollow cycle on fresh vertices glued at one point.
pub fn holey_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    loop {
        let c = random_complex(rng, max_vertices);
        if cohomology_dim(&c, 1) > 0 {
            return c;
        }
        let n = c.vertex_count();
        let len = rng.gen_range(3..=4);
        let mut facets = c.facets();
        let mut ring = vec![0];
        ring.extend(n..n + len - 1);
        for k in 0..len {
            facets.push(vec![ring[k], ring[(k + 1) % len]]);
        }
        let extended = SimplicialComplex::from_facet_indices(labels("v", n + len - 1), &facets);
        if cohomology_dim(&extended, 1) > 0 {
            return extended;
        }
    }
}

pub fn counterexample_system<R: Rng>(rng: &mut R, max_vertices: usize) -> AgentSystem {
    generate_counterexample(&holey_complex(rng, max_vertices)).expect("complex has a hole")
}

/// The mix used by the equivalence checks.
pub fn mixed_system<R: Rng>(rng: &mut R, round: usize) -> AgentSystem {
    match round % 5 {
        0 => independent_system(rng, 6, 8),
        1 => conditioned_system(rng, 6, 8),
        2 => perturbed_system(rng, 6, 8),
        3 => common_event_system(rng, 6, 8),
        _ => counterexample_system(rng, 4),
    }
}
