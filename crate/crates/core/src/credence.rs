//! Outcome spaces, credence functions, and validated agent systems.
//!
//! An agent's awareness set is the key set of its probability mass function.
//! Outcomes may carry zero mass and still belong to the awareness set; this
//! matters for both compatibility and the overlap complex.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{parse_rational, Rational};

/// Index of an outcome inside its [`OutcomeSpace`].
pub type OutcomeId = usize;
/// Index of an agent inside its [`AgentSystem`]; agent order is the vertex
/// order used for every simplex orientation.
pub type AgentId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSpace {
    labels: Vec<String>,
    index: HashMap<String, OutcomeId>,
}

impl OutcomeSpace {
    /// Fails with the first repeated label.
    pub fn new<I, S>(labels: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), id).is_some() {
                return Err(label.clone());
            }
        }
        Ok(OutcomeSpace { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: OutcomeId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<OutcomeId> {
        self.index.get(label).copied()
    }
}

/// A probability mass function on an agent's awareness set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CredenceFunction {
    name: String,
    pmf: BTreeMap<OutcomeId, Rational>,
}

impl CredenceFunction {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The awareness set, in outcome-space order.
    pub fn support(&self) -> impl Iterator<Item = OutcomeId> + '_ {
        self.pmf.keys().copied()
    }

    pub fn contains(&self, outcome: OutcomeId) -> bool {
        self.pmf.contains_key(&outcome)
    }

    /// Mass of a single outcome; `None` when the agent is unaware of it.
    pub fn mass(&self, outcome: OutcomeId) -> Option<&Rational> {
        self.pmf.get(&outcome)
    }

    pub fn entries(&self) -> impl Iterator<Item = (OutcomeId, &Rational)> + '_ {
        self.pmf.iter().map(|(&o, p)| (o, p))
    }

    /// Mass of an event. Outcomes outside the awareness set contribute 0.
    pub fn event_mass<I: IntoIterator<Item = OutcomeId>>(&self, event: I) -> Rational {
        event.into_iter().filter_map(|o| self.pmf.get(&o)).fold(Rational::zero(), |acc, p| acc + p)
    }

    pub fn len(&self) -> usize {
        self.pmf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pmf.is_empty()
    }
}

/// One broken rule found while validating a raw system description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    DuplicateOutcome { outcome: String },
    DuplicateAgent { agent: String },
    NoAgents,
    EmptySupport { agent: String },
    UnknownOutcome { agent: String, outcome: String },
    MalformedProbability { agent: String, outcome: String, text: String },
    NegativeMass { agent: String, outcome: String, value: String },
    SumNotOne { agent: String, sum: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateOutcome { outcome } => write!(f, "duplicate outcome label {outcome:?}"),
            Violation::DuplicateAgent { agent } => write!(f, "duplicate agent name {agent:?}"),
            Violation::NoAgents => write!(f, "system has no agents"),
            Violation::EmptySupport { agent } => write!(f, "agent {agent} has an empty support"),
            Violation::UnknownOutcome { agent, outcome } => {
                write!(f, "agent {agent} assigns mass to unknown outcome {outcome:?}")
            }
            Violation::MalformedProbability { agent, outcome, text } => {
                write!(f, "agent {agent}: cannot read {text:?} for outcome {outcome:?} as an exact fraction")
            }
            Violation::NegativeMass { agent, outcome, value } => {
                write!(f, "negative mass {value} for outcome {outcome:?} of agent {agent}")
            }
            Violation::SumNotOne { agent, sum } => write!(f, "pmf sum ≠ 1 for agent {agent} (sum {sum})"),
        }
    }
}

/// Every violation found in a raw system; validation does not stop at the
/// first problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationErrors(pub Vec<Violation>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "invalid agent system: {}", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CredenceError {
    #[error("unknown agent {0}")]
    UnknownAgent(String),
    #[error("agent {agent} is not a member of the agent set")]
    NotInSet { agent: AgentId },
}

/// Unvalidated system description, exactly as it appears in a system file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSystem {
    pub outcomes: Vec<String>,
    pub agents: Vec<RawAgent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAgent {
    pub name: String,
    pub credence: IndexMap<String, String>,
}

impl RawSystem {
    pub fn new<I, S>(outcomes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        RawSystem { outcomes: outcomes.into_iter().map(Into::into).collect(), agents: Vec::new() }
    }

    /// Appends an agent given as `(outcome, probability text)` pairs.
    pub fn agent<I, O, P>(mut self, name: impl Into<String>, credence: I) -> Self
    where
        I: IntoIterator<Item = (O, P)>,
        O: Into<String>,
        P: Into<String>,
    {
        let credence = credence.into_iter().map(|(o, p)| (o.into(), p.into())).collect();
        self.agents.push(RawAgent { name: name.into(), credence });
        self
    }

    pub fn validate(&self) -> Result<AgentSystem, ValidationErrors> {
        validate(self)
    }
}

/// A validated collection of agents over a shared outcome space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentSystem {
    space: OutcomeSpace,
    agents: Vec<CredenceFunction>,
}

/// Checks a raw description and builds the corresponding [`AgentSystem`].
pub fn validate(raw: &RawSystem) -> Result<AgentSystem, ValidationErrors> {
    let mut violations = Vec::new();

    let mut seen = HashSet::new();
    for label in &raw.outcomes {
        if !seen.insert(label.as_str()) {
            violations.push(Violation::DuplicateOutcome { outcome: label.clone() });
        }
    }
    let space_index: HashMap<&str, OutcomeId> =
        raw.outcomes.iter().enumerate().rev().map(|(i, l)| (l.as_str(), i)).collect();

    if raw.agents.is_empty() {
        violations.push(Violation::NoAgents);
    }
    let mut names = HashSet::new();
    let mut agents = Vec::with_capacity(raw.agents.len());
    for agent in &raw.agents {
        if !names.insert(agent.name.as_str()) {
            violations.push(Violation::DuplicateAgent { agent: agent.name.clone() });
        }
        let mut pmf = BTreeMap::new();
        let mut ok = true;
        for (outcome, text) in &agent.credence {
            let Some(&id) = space_index.get(outcome.as_str()) else {
                violations.push(Violation::UnknownOutcome { agent: agent.name.clone(), outcome: outcome.clone() });
                ok = false;
                continue;
            };
            match parse_rational(text) {
                Ok(p) if p.is_negative() => {
                    violations.push(Violation::NegativeMass {
                        agent: agent.name.clone(),
                        outcome: outcome.clone(),
                        value: p.to_string(),
                    });
                    ok = false;
                }
                Ok(p) => {
                    pmf.insert(id, p);
                }
                Err(_) => {
                    violations.push(Violation::MalformedProbability {
                        agent: agent.name.clone(),
                        outcome: outcome.clone(),
                        text: text.clone(),
                    });
                    ok = false;
                }
            }
        }
        if agent.credence.is_empty() {
            violations.push(Violation::EmptySupport { agent: agent.name.clone() });
            ok = false;
        }
        if ok {
            let sum = pmf.values().fold(Rational::zero(), |acc, p| acc + p);
            if !sum.is_one() {
                violations.push(Violation::SumNotOne { agent: agent.name.clone(), sum: sum.to_string() });
            }
        }
        agents.push(CredenceFunction { name: agent.name.clone(), pmf });
    }

    if !violations.is_empty() {
        return Err(ValidationErrors(violations));
    }
    let space = OutcomeSpace::new(raw.outcomes.iter().cloned()).expect("labels checked unique");
    Ok(AgentSystem { space, agents })
}

impl AgentSystem {
    /// Builds a system from already-exact masses, applying the same rules as
    /// [`validate`].
    pub fn from_masses<I, N, E>(outcomes: Vec<String>, agents: I) -> Result<Self, ValidationErrors>
    where
        I: IntoIterator<Item = (N, E)>,
        N: Into<String>,
        E: IntoIterator<Item = (String, Rational)>,
    {
        let mut raw = RawSystem::new(outcomes);
        for (name, entries) in agents {
            raw = raw.agent(name, entries.into_iter().map(|(o, p)| (o, p.to_string())));
        }
        validate(&raw)
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn agents(&self) -> &[CredenceFunction] {
        &self.agents
    }

    pub fn agent(&self, id: AgentId) -> &CredenceFunction {
        &self.agents[id]
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn agent_id(&self, name: &str) -> Result<AgentId, CredenceError> {
        self.agents.iter().position(|a| a.name == name).ok_or_else(|| CredenceError::UnknownAgent(name.to_string()))
    }

    /// Outcomes every agent of `set` is aware of, in outcome order.
    pub fn common_support(&self, set: &[AgentId]) -> Vec<OutcomeId> {
        let Some((&first, rest)) = set.split_first() else {
            return Vec::new();
        };
        self.agents[first].support().filter(|&o| rest.iter().all(|&k| self.agents[k].contains(o))).collect()
    }

    /// Outcomes belonging to at least one awareness set, in outcome order.
    pub fn union_support(&self) -> Vec<OutcomeId> {
        (0..self.space.len()).filter(|&o| self.agents.iter().any(|a| a.contains(o))).collect()
    }

    /// Mass agent `agent` gives to the intersection of the awareness sets of
    /// `set`. The agent must belong to `set`.
    pub fn overlap_mass(&self, agent: AgentId, set: &[AgentId]) -> Result<Rational, CredenceError> {
        if let Some(&bad) = set.iter().chain(std::iter::once(&agent)).find(|&&k| k >= self.agents.len()) {
            return Err(CredenceError::UnknownAgent(bad.to_string()));
        }
        if !set.contains(&agent) {
            return Err(CredenceError::NotInSet { agent });
        }
        Ok(self.agents[agent].event_mass(self.common_support(set)))
    }

    /// Name-based variant of [`AgentSystem::overlap_mass`].
    pub fn overlap_mass_by_name(&self, agent: &str, set: &[&str]) -> Result<Rational, CredenceError> {
        let agent = self.agent_id(agent)?;
        let set = set.iter().map(|n| self.agent_id(n)).collect::<Result<Vec<_>, _>>()?;
        self.overlap_mass(agent, &set)
    }

    /// Back to the file representation, with probabilities as reduced
    /// fraction strings.
    pub fn to_raw(&self) -> RawSystem {
        RawSystem {
            outcomes: self.space.labels.clone(),
            agents: self
                .agents
                .iter()
                .map(|a| RawAgent {
                    name: a.name.clone(),
                    credence: a.entries().map(|(o, p)| (self.space.label(o).to_string(), p.to_string())).collect(),
                })
                .collect(),
        }
    }
}
