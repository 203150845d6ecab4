//! Deciding whether a system of credence functions has an ur-prior.
//!
//! The pipeline works multiplicatively. Each overlap edge `(i, j)` carries the
//! ratio `r_ij = P_i(A_ij) / P_j(A_ij)`; an ur-prior exists exactly when the
//! agents are pairwise compatible, no overlap is null for only one side, and
//! there are positive scalings `λ` with `r_ij = λ_j / λ_i` on every edge.
//! When the scaling exists the rescaled measures `λ_i P_i` agree on overlaps
//! and glue into a single measure. When it does not, some cycle of agents has
//! a ratio product different from 1, and that cycle is returned as the
//! obstruction.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{build_overlap_complex, SimplicialComplex};
use crate::credence::{AgentId, AgentSystem, OutcomeId};
use crate::numerics::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompatError {
    #[error("edge ({0}, {1}) has an overlap with zero mass; the complex is not the overlap complex of this system")]
    NullEdge(AgentId, AgentId),
    #[error("scaling has {found} entries for {expected} agents")]
    ScalingLength { expected: usize, found: usize },
    #[error(
        "glued masses disagree on outcome {}: agent {} gives {}, agent {} gives {}",
        .0.outcome, .0.first, .0.first_mass, .0.second, .0.second_mass
    )]
    InconsistentGluing(Box<GluingConflict>),
    #[error("internal invariant failed: glued measure does not recover agent {0}")]
    Unverified(AgentId),
}

/// Two agents whose rescaled masses differ on a shared outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingConflict {
    pub outcome: OutcomeId,
    pub first: AgentId,
    pub first_mass: Rational,
    pub second: AgentId,
    pub second_mass: Rational,
}

/// A probability measure over outcome ids. Outcomes that are not stored have
/// mass zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Measure(BTreeMap<OutcomeId, Rational>);

impl Measure {
    pub fn new(masses: BTreeMap<OutcomeId, Rational>) -> Self {
        Measure(masses)
    }

    pub fn get(&self, outcome: OutcomeId) -> Rational {
        self.0.get(&outcome).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (OutcomeId, &Rational)> + '_ {
        self.0.iter().map(|(&o, p)| (o, p))
    }

    pub fn total(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |acc, p| acc + p)
    }

    pub fn event_mass<I: IntoIterator<Item = OutcomeId>>(&self, event: I) -> Rational {
        event.into_iter().map(|o| self.get(o)).fold(Rational::zero(), |acc, p| acc + p)
    }

    /// Labeled masses in outcome order.
    pub fn labeled<'s>(&'s self, system: &'s AgentSystem) -> impl Iterator<Item = (&'s str, &'s Rational)> + 's {
        self.iter().map(|(o, p)| (system.space().label(o), p))
    }
}

impl FromIterator<(OutcomeId, Rational)> for Measure {
    fn from_iter<T: IntoIterator<Item = (OutcomeId, Rational)>>(iter: T) -> Self {
        Measure(iter.into_iter().collect())
    }
}

/// Two agents whose conditionals on their common awareness set differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub pair: (AgentId, AgentId),
    /// First outcome (in outcome order) where the conditionals differ.
    pub outcome: OutcomeId,
    /// Conditional of `outcome` given the overlap, for each side.
    pub conditionals: (Rational, Rational),
    /// Every outcome of the overlap with both conditionals, in outcome order.
    pub table: Vec<(OutcomeId, Rational, Rational)>,
}

impl PairViolation {
    /// Conditionals of one particular outcome of the overlap.
    pub fn conditionals_of(&self, outcome: OutcomeId) -> Option<(&Rational, &Rational)> {
        self.table.iter().find(|(o, _, _)| *o == outcome).map(|(_, a, b)| (a, b))
    }
}

/// A nonempty overlap that one agent of the pair gives zero mass and the
/// other does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullOverlapAsymmetry {
    pub pair: (AgentId, AgentId),
    pub overlap: Vec<OutcomeId>,
    pub masses: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub violations: Vec<PairViolation>,
    pub asymmetries: Vec<NullOverlapAsymmetry>,
}

/// Compares the conditionals of every pair of agents on their common
/// awareness set, skipping pairs where either side gives the overlap zero
/// mass. Pairs where exactly one side is zero are reported separately as
/// asymmetries.
pub fn pairwise_compatibility(system: &AgentSystem) -> CompatibilityReport {
    let mut violations = Vec::new();
    let mut asymmetries = Vec::new();
    let n = system.len();
    for i in 0..n {
        for j in i + 1..n {
            let overlap = system.common_support(&[i, j]);
            if overlap.is_empty() {
                continue;
            }
            let (pi, pj) = (system.agent(i), system.agent(j));
            let mi = pi.event_mass(overlap.iter().copied());
            let mj = pj.event_mass(overlap.iter().copied());
            match (mi.is_zero(), mj.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => {
                    asymmetries.push(NullOverlapAsymmetry { pair: (i, j), overlap, masses: (mi, mj) });
                    continue;
                }
                (false, false) => {}
            }
            // P_i(x) m_j = P_j(x) m_i avoids dividing until a violation is found
            let failing = overlap.iter().copied().find(|&x| pi.mass(x).unwrap() * &mj != pj.mass(x).unwrap() * &mi);
            if let Some(x) = failing {
                let table: Vec<_> =
                    overlap.iter().map(|&o| (o, pi.mass(o).unwrap() / &mi, pj.mass(o).unwrap() / &mj)).collect();
                let conditionals =
                    table.iter().find(|(o, _, _)| *o == x).map(|(_, a, b)| (a.clone(), b.clone())).unwrap();
                violations.push(PairViolation { pair: (i, j), outcome: x, conditionals, table });
            }
        }
    }
    CompatibilityReport { compatible: violations.is_empty(), violations, asymmetries }
}

/// Edge ratios `r_ij = P_i(A_ij) / P_j(A_ij)` on the 1-simplices of `complex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCochain<'a> {
    complex: &'a SimplicialComplex,
    ratios: Vec<Rational>,
}

impl<'a> RatioCochain<'a> {
    /// Ratios listed in canonical edge order. Every ratio must be positive.
    pub fn new(complex: &'a SimplicialComplex, ratios: Vec<Rational>) -> Option<Self> {
        (ratios.len() == complex.count(1) && ratios.iter().all(|r| *r > Rational::zero()))
            .then_some(RatioCochain { complex, ratios })
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn ratios(&self) -> &[Rational] {
        &self.ratios
    }

    /// `r_ij` for `i < j`.
    pub fn get(&self, i: AgentId, j: AgentId) -> Option<&Rational> {
        self.complex.position(&[i, j]).map(|p| &self.ratios[p])
    }

    /// Ratio for a step `from -> to` along an edge: `r_ij` forward, its
    /// inverse backward.
    pub fn step(&self, from: AgentId, to: AgentId) -> Option<Rational> {
        if from < to {
            self.get(from, to).cloned()
        } else {
            self.get(to, from).map(Rational::recip)
        }
    }

    /// Product of step ratios around a closed walk given by its vertices.
    pub fn holonomy(&self, cycle: &[AgentId]) -> Option<Rational> {
        let mut product = Rational::one();
        for (k, &from) in cycle.iter().enumerate() {
            let to = cycle[(k + 1) % cycle.len()];
            product *= self.step(from, to)?;
        }
        Some(product)
    }
}

pub fn ratio_cochain<'a>(
    system: &AgentSystem,
    complex: &'a SimplicialComplex,
) -> Result<RatioCochain<'a>, CompatError> {
    let mut ratios = Vec::with_capacity(complex.count(1));
    for edge in complex.simplices(1) {
        let (i, j) = (edge[0], edge[1]);
        let overlap = system.common_support(&[i, j]);
        let mi = system.agent(i).event_mass(overlap.iter().copied());
        let mj = system.agent(j).event_mass(overlap.iter().copied());
        if mi.is_zero() || mj.is_zero() {
            return Err(CompatError::NullEdge(i, j));
        }
        ratios.push(mi / mj);
    }
    Ok(RatioCochain { complex, ratios })
}

/// Positive per-agent scale factors with `r_ij = λ_j / λ_i` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaling {
    pub factors: Vec<Rational>,
    /// Connected component of each vertex in the 1-skeleton, numbered in
    /// order of their smallest vertex.
    pub component: Vec<usize>,
}

impl Scaling {
    pub fn components(&self) -> usize {
        self.component.iter().max().map_or(0, |c| c + 1)
    }
}

/// A cycle of agents around which the edge ratios do not multiply to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate {
    /// The non-tree edge whose check failed.
    pub edge: (AgentId, AgentId),
    /// Cycle vertices, starting at the smallest and closing back to it.
    pub cycle: Vec<AgentId>,
    /// Product of step ratios along `cycle`.
    pub holonomy: Rational,
}

/// Solves `r_ij = λ_j / λ_i` by propagation along a breadth-first spanning
/// forest of the 1-skeleton, each root fixed at 1. Non-tree edges are then
/// checked in canonical order; the first mismatch becomes a cycle
/// certificate.
pub fn solve_scaling(ratios: &RatioCochain<'_>) -> Result<Scaling, CycleCertificate> {
    let complex = ratios.complex;
    let n = complex.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for edge in complex.simplices(1) {
        adjacency[edge[0]].push(edge[1]);
        adjacency[edge[1]].push(edge[0]);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut factors: Vec<Option<Rational>> = vec![None; n];
    let mut parent: Vec<Option<AgentId>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    for root in 0..n {
        if factors[root].is_some() {
            continue;
        }
        factors[root] = Some(Rational::one());
        component[root] = components;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if factors[w].is_none() {
                    let step = ratios.step(v, w).expect("adjacent vertices share an edge");
                    factors[w] = Some(factors[v].as_ref().unwrap() * step);
                    parent[w] = Some(v);
                    component[w] = components;
                    queue.push_back(w);
                }
            }
        }
        components += 1;
    }
    let factors: Vec<Rational> = factors.into_iter().map(Option::unwrap).collect();

    for (edge, r) in complex.simplices(1).iter().zip(&ratios.ratios) {
        let (i, j) = (edge[0], edge[1]);
        if parent[j] == Some(i) || parent[i] == Some(j) {
            continue;
        }
        if &factors[j] / &factors[i] != *r {
            let cycle = canonical_cycle(close_cycle(&parent, i, j));
            let holonomy = ratios.holonomy(&cycle).expect("cycle runs along edges");
            return Err(CycleCertificate { edge: (i, j), cycle, holonomy });
        }
    }
    Ok(Scaling { factors, component })
}

/// Walk `i -> j` along the edge, then back from `j` to `i` through the tree.
fn close_cycle(parent: &[Option<AgentId>], i: AgentId, j: AgentId) -> Vec<AgentId> {
    let ancestors = |mut v: AgentId| {
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        path
    };
    let up_i = ancestors(i);
    let up_j = ancestors(j);
    let meet = *up_j.iter().find(|v| up_i.contains(v)).expect("same tree");
    let mut cycle = vec![i];
    // j up to the meeting point, then down to i (excluding i itself)
    cycle.extend(up_j.iter().take_while(|&&v| v != meet));
    cycle.push(meet);
    let down: Vec<AgentId> = up_i.iter().take_while(|&&v| v != meet).copied().collect();
    cycle.extend(down.into_iter().rev().filter(|&v| v != i));
    cycle.dedup();
    if cycle.len() > 1 && cycle.last() == cycle.first() {
        cycle.pop();
    }
    cycle
}

/// Rotate to start at the smallest vertex, oriented so that the second
/// vertex is smaller than the last.
fn canonical_cycle(mut cycle: Vec<AgentId>) -> Vec<AgentId> {
    let start = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map_or(0, |(k, _)| k);
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[1] > cycle[cycle.len() - 1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Glues the rescaled measures `λ_i P_i` into one measure on the union of the
/// awareness sets and normalizes it.
pub fn glue_urprior(system: &AgentSystem, scaling: &[Rational]) -> Result<Measure, CompatError> {
    if scaling.len() != system.len() {
        return Err(CompatError::ScalingLength { expected: system.len(), found: scaling.len() });
    }
    let mut glued: BTreeMap<OutcomeId, (AgentId, Rational)> = BTreeMap::new();
    for (i, agent) in system.agents().iter().enumerate() {
        for (x, p) in agent.entries() {
            let mass = &scaling[i] * p;
            match glued.get(&x) {
                None => {
                    glued.insert(x, (i, mass));
                }
                Some((first, first_mass)) if *first_mass != mass => {
                    return Err(CompatError::InconsistentGluing(Box::new(GluingConflict {
                        outcome: x,
                        first: *first,
                        first_mass: first_mass.clone(),
                        second: i,
                        second_mass: mass,
                    })));
                }
                Some(_) => {}
            }
        }
    }
    let total = glued.values().fold(Rational::zero(), |acc, (_, m)| acc + m);
    Ok(glued.into_iter().map(|(x, (_, m))| (x, m / &total)).collect())
}

/// Outcome of checking one agent against a candidate ur-prior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AgentCheck {
    Recovered,
    /// The candidate gives the awareness set zero mass.
    NullAwareness,
    /// First outcome whose conditional differs: (outcome, agent's value,
    /// conditional of the candidate).
    Mismatch(OutcomeId, Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub total: Rational,
    pub agents: Vec<AgentCheck>,
    /// Outcomes outside every awareness set that still carry mass.
    pub stray: Vec<OutcomeId>,
}

/// Checks that `measure` is a probability measure whose conditionalization on
/// each awareness set returns that agent's credence function.
pub fn verify_urprior(system: &AgentSystem, measure: &Measure) -> Verification {
    let total = measure.total();
    let agents: Vec<AgentCheck> = system
        .agents()
        .iter()
        .map(|agent| {
            let on_support = measure.event_mass(agent.support());
            if on_support.is_zero() {
                return AgentCheck::NullAwareness;
            }
            agent
                .entries()
                .find_map(|(x, p)| {
                    let conditional = measure.get(x) / &on_support;
                    (conditional != *p).then(|| AgentCheck::Mismatch(x, p.clone(), conditional))
                })
                .unwrap_or(AgentCheck::Recovered)
        })
        .collect();
    let stray: Vec<OutcomeId> = measure
        .iter()
        .filter(|(x, p)| !p.is_zero() && !system.agents().iter().any(|a| a.contains(*x)))
        .map(|(x, _)| x)
        .collect();
    let negative = measure.iter().any(|(_, p)| *p < Rational::zero());
    let ok = total.is_one() && !negative && stray.is_empty() && agents.iter().all(|a| *a == AgentCheck::Recovered);
    Verification { ok, total, agents, stray }
}

/// Why no ur-prior exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Violation(PairViolation),
    Asymmetry(NullOverlapAsymmetry),
    Cycle(CycleCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrPriorResult {
    pub verdict: Verdict,
    pub measure: Option<Measure>,
    pub certificate: Option<Certificate>,
    /// Connected components of the overlap graph. With more than one, the
    /// relative weight of the components is free and the returned measure is
    /// one of many ur-priors.
    pub components: usize,
}

impl UrPriorResult {
    pub fn exists(&self) -> bool {
        self.verdict == Verdict::Exists
    }

    /// Whether the returned ur-prior is the only one.
    pub fn unique(&self) -> bool {
        self.exists() && self.components == 1
    }

    fn none(certificate: Certificate, components: usize) -> Self {
        UrPriorResult { verdict: Verdict::None, measure: None, certificate: Some(certificate), components }
    }
}

/// Runs the full decision pipeline: pairwise compatibility, null-overlap
/// asymmetries, then the scaling problem on the overlap graph. A returned
/// measure has already passed [`verify_urprior`].
pub fn decide_urprior(system: &AgentSystem) -> Result<UrPriorResult, CompatError> {
    let graph = build_overlap_complex(system, Some(1));
    let components = crate::cohomology::cohomology_dim(&graph, 0);
    let report = pairwise_compatibility(system);
    if let Some(v) = report.violations.into_iter().next() {
        return Ok(UrPriorResult::none(Certificate::Violation(v), components));
    }
    if let Some(a) = report.asymmetries.into_iter().next() {
        return Ok(UrPriorResult::none(Certificate::Asymmetry(a), components));
    }
    let ratios = ratio_cochain(system, &graph)?;
    let scaling = match solve_scaling(&ratios) {
        Ok(s) => s,
        Err(cycle) => return Ok(UrPriorResult::none(Certificate::Cycle(cycle), components)),
    };
    let measure = glue_urprior(system, &scaling.factors)?;
    let check = verify_urprior(system, &measure);
    if !check.ok {
        let bad = check.agents.iter().position(|a| *a != AgentCheck::Recovered).unwrap_or(0);
        return Err(CompatError::Unverified(bad));
    }
    Ok(UrPriorResult { verdict: Verdict::Exists, measure: Some(measure), certificate: None, components })
}
