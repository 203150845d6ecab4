//! The worked examples shipped in `fixtures/`, loaded from the same JSON
//! files the command-line tests use.

use crate::cli::format::{parse_complex, parse_system};
use crate::complex::SimplicialComplex;
use crate::credence::{AgentSystem, RawSystem};

/// Three agents guessing a metal; every pair and the triple overlap. Has an
/// ur-prior with denominators 27.
pub fn metal_triangle() -> AgentSystem {
    parse_system(include_str!("../fixtures/metal_triangle.json")).unwrap()
}

/// Three agents whose pairwise overlaps are single outcomes and whose triple
/// overlap is empty. Pairwise compatible, no ur-prior.
pub fn metal_hole() -> AgentSystem {
    parse_system(include_str!("../fixtures/metal_hole.json")).unwrap()
}

/// [`metal_hole`] plus a fourth agent on {platinum, iron, bismuth} tuned to be
/// compatible with agents 1 and 2; it necessarily clashes with agent 3.
pub fn metal_hole_plugged() -> AgentSystem {
    parse_system(include_str!("../fixtures/metal_hole_plugged.json")).unwrap()
}

/// [`metal_triangle`] plus a fourth agent. No outcome is shared by all four,
/// yet an ur-prior exists.
pub fn metal_four_agents() -> AgentSystem {
    parse_system(include_str!("../fixtures/metal_four_agents.json")).unwrap()
}

/// Two agents sharing outcome `b`, which only the second gives positive
/// mass. Vacuously pairwise compatible, no ur-prior.
pub fn null_overlap_gap() -> AgentSystem {
    parse_system(include_str!("../fixtures/null_overlap_gap.json")).unwrap()
}

pub fn single_agent() -> AgentSystem {
    RawSystem::new(["a", "b"]).agent("1", [("a", "1/3"), ("b", "2/3")]).validate().unwrap()
}

pub fn filled_triangle() -> SimplicialComplex {
    parse_complex(include_str!("../fixtures/filled_triangle.json")).unwrap()
}

pub fn hollow_triangle() -> SimplicialComplex {
    parse_complex(include_str!("../fixtures/hollow_triangle.json")).unwrap()
}

/// Three filled triangles around a central vertex 4.
pub fn plugged_triangle() -> SimplicialComplex {
    parse_complex(include_str!("../fixtures/plugged_triangle.json")).unwrap()
}

/// Two hollow triangles sharing vertex 3.
pub fn wedge_of_triangles() -> SimplicialComplex {
    parse_complex(include_str!("../fixtures/wedge_of_triangles.json")).unwrap()
}

/// Hollow n-gon on vertices `1..=n`.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let edges: Vec<Vec<usize>> = (0..n).map(|v| vec![v, (v + 1) % n]).collect();
    SimplicialComplex::from_facet_indices(vertices, &edges)
}
