//! Simplicial complexes: the overlap complex of an agent system, complexes
//! given by facets, and their coboundary matrices.
//!
//! Simplices are strictly increasing tuples of vertex indices. Within each
//! dimension they are kept in lexicographic order, which fixes the row and
//! column layout of every coboundary matrix.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::{AgentId, AgentSystem, OutcomeId};
use crate::numerics::{Matrix, Rational};

/// Strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet mentions unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
}

/// Complex file representation: vertex labels plus generating facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    by_dim: Vec<Vec<Simplex>>,
    position: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    fn from_levels(vertices: Vec<String>, mut by_dim: Vec<Vec<Simplex>>) -> Self {
        while by_dim.len() > 1 && by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        for level in &mut by_dim {
            level.sort();
        }
        let position =
            by_dim.iter().map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        SimplicialComplex { vertices, by_dim, position }
    }

    /// Smallest complex on `vertices` containing every facet and every
    /// vertex. Facets name vertices by label.
    pub fn from_facets<S: AsRef<str>>(vertices: &[S], facets: &[Vec<S>]) -> Result<Self, ComplexError> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(label.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(facets.len());
        for (n, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet(n));
            }
            let simplex = facet
                .iter()
                .map(|v| index.get(v.as_ref()).copied().ok_or_else(|| ComplexError::UnknownVertex(v.as_ref().into())))
                .collect::<Result<BTreeSet<usize>, _>>()?;
            resolved.push(simplex.into_iter().collect::<Vec<_>>());
        }
        Ok(Self::from_facet_indices(labels, &resolved))
    }

    /// Same as [`SimplicialComplex::from_facets`] with facets given by vertex
    /// index. Indices must be below `vertices.len()`.
    pub fn from_facet_indices(vertices: Vec<String>, facets: &[Vec<usize>]) -> Self {
        let mut all: BTreeSet<Simplex> = (0..vertices.len()).map(|v| vec![v]).collect();
        for facet in facets {
            let facet: Vec<usize> = facet.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            assert!(facet.iter().all(|&v| v < vertices.len()), "facet vertex out of range");
            // every nonempty subset, via bitmasks over the facet
            for mask in 1u64..(1u64 << facet.len()) {
                let face: Simplex =
                    facet.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
                all.insert(face);
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut by_dim = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        Self::from_levels(vertices, by_dim)
    }

    pub fn from_raw(raw: &RawComplex) -> Result<Self, ComplexError> {
        Self::from_facets(&raw.vertices, &raw.facets)
    }

    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertices.clone(),
            facets: self.facets().into_iter().map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect()).collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The k-simplices in canonical order; empty beyond the top dimension.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Simplex counts from dimension 0 up to the top nonempty dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Highest dimension with at least one simplex, `None` for the empty
    /// complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|l| !l.is_empty())
    }

    pub fn position(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.position.get(k)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.position(simplex).is_some()
    }

    /// Maximal simplices, ordered by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (k, level) in self.by_dim.iter().enumerate() {
            for s in level {
                let covered = self.simplices(k + 1).iter().any(|t| s.iter().all(|v| t.contains(v)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Vertex tuple rendered with labels, e.g. `(1,2,4)`.
    pub fn label(&self, simplex: &[usize]) -> String {
        let parts: Vec<&str> = simplex.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("({})", parts.join(","))
    }

    /// The complex cut down to simplices of dimension at most `max_dim`.
    pub fn skeleton(&self, max_dim: usize) -> SimplicialComplex {
        let levels = self.by_dim.iter().take(max_dim + 1).cloned().collect();
        Self::from_levels(self.vertices.clone(), levels)
    }

    /// Coboundary matrix from k-cochains to (k+1)-cochains: one row per
    /// (k+1)-simplex, one column per k-simplex. Deleting the j-th vertex of a
    /// row simplex gives the column carrying `(-1)^j`.
    pub fn coboundary_matrix(&self, k: usize) -> Matrix {
        let rows = self.simplices(k + 1);
        let mut m = Matrix::zeros(rows.len(), self.count(k));
        for (r, simplex) in rows.iter().enumerate() {
            for j in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(j);
                let c = self.position(&face).expect("complex is downward closed");
                m[(r, c)] = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            }
        }
        m
    }
}

/// The overlap complex: agent sets whose common awareness set gets positive
/// mass from each member. `max_dim` bounds the simplex dimension; `None`
/// enumerates everything.
///
/// Enumeration goes level by level. A candidate (k+1)-simplex is only
/// examined when all of its k-faces are already present.
pub fn build_overlap_complex(system: &AgentSystem, max_dim: Option<usize>) -> SimplicialComplex {
    let n = system.len();
    let vertices: Vec<String> = system.agents().iter().map(|a| a.name().to_string()).collect();

    let positive = |set: &[AgentId], common: &[OutcomeId]| {
        set.iter().all(|&j| !system.agent(j).event_mass(common.iter().copied()).is_zero())
    };

    let mut current: Vec<(Simplex, Vec<OutcomeId>)> = (0..n)
        .map(|i| (vec![i], system.agent(i).support().collect::<Vec<_>>()))
        .filter(|(s, common)| positive(s, common))
        .collect();
    let mut by_dim = vec![current.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>()];

    while max_dim.is_none_or(|d| by_dim.len() <= d) && !current.is_empty() {
        let present: BTreeSet<&Simplex> = by_dim.last().unwrap().iter().collect();
        let mut next = Vec::new();
        for (simplex, common) in &current {
            let last = *simplex.last().unwrap();
            for v in last + 1..n {
                let mut candidate = simplex.clone();
                candidate.push(v);
                let faces_present = (0..candidate.len() - 1).all(|drop| {
                    let mut face = candidate.clone();
                    face.remove(drop);
                    present.contains(&face)
                });
                if !faces_present {
                    continue;
                }
                let narrowed: Vec<OutcomeId> =
                    common.iter().copied().filter(|&o| system.agent(v).contains(o)).collect();
                if positive(&candidate, &narrowed) {
                    next.push((candidate, narrowed));
                }
            }
        }
        by_dim.push(next.iter().map(|(s, _)| s.clone()).collect());
        current = next;
    }
    SimplicialComplex::from_levels(vertices, by_dim)
}
