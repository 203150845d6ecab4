//! Report documents. The JSON form is the serialized struct; the text form is
//! rendered from the same struct.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::Serialize;

use crate::cohomology::CohomologyDims;
use crate::compat::{Certificate, CompatibilityReport, Measure, NullOverlapAsymmetry, PairViolation};
use crate::complex::SimplicialComplex;
use crate::credence::{AgentSystem, ValidationErrors};
use crate::numerics::{Matrix, Rational};

fn q(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvalidReport {
    pub valid: bool,
    pub errors: Vec<String>,
}

impl InvalidReport {
    pub fn new(errors: Vec<String>) -> Self {
        InvalidReport { valid: false, errors }
    }

    pub fn from_validation(errors: &ValidationErrors) -> Self {
        Self::new(errors.0.iter().map(ToString::to_string).collect())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::from("invalid input\n");
        for e in &self.errors {
            let _ = writeln!(out, "  - {e}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionalRow {
    pub outcome: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub pair: [String; 2],
    pub outcome: String,
    pub conditionals: [String; 2],
    pub table: Vec<ConditionalRow>,
}

impl ViolationJson {
    pub fn new(system: &AgentSystem, v: &PairViolation) -> Self {
        let name = |i: usize| system.agent(i).name().to_string();
        let label = |o: usize| system.space().label(o).to_string();
        ViolationJson {
            pair: [name(v.pair.0), name(v.pair.1)],
            outcome: label(v.outcome),
            conditionals: [q(&v.conditionals.0), q(&v.conditionals.1)],
            table: v
                .table
                .iter()
                .map(|(o, a, b)| ConditionalRow { outcome: label(*o), left: q(a), right: q(b) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymmetryJson {
    pub pair: [String; 2],
    pub overlap: Vec<String>,
    pub masses: [String; 2],
}

impl AsymmetryJson {
    pub fn new(system: &AgentSystem, a: &NullOverlapAsymmetry) -> Self {
        AsymmetryJson {
            pair: [system.agent(a.pair.0).name().into(), system.agent(a.pair.1).name().into()],
            overlap: a.overlap.iter().map(|&o| system.space().label(o).to_string()).collect(),
            masses: [q(&a.masses.0), q(&a.masses.1)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateJson {
    Violation(ViolationJson),
    Asymmetry(AsymmetryJson),
    Cycle { cycle: Vec<String>, edge: [String; 2], holonomy: String },
}

impl CertificateJson {
    pub fn new(system: &AgentSystem, c: &Certificate) -> Self {
        let name = |i: usize| system.agent(i).name().to_string();
        match c {
            Certificate::Violation(v) => CertificateJson::Violation(ViolationJson::new(system, v)),
            Certificate::Asymmetry(a) => CertificateJson::Asymmetry(AsymmetryJson::new(system, a)),
            Certificate::Cycle(c) => CertificateJson::Cycle {
                cycle: c.cycle.iter().map(|&v| name(v)).collect(),
                edge: [name(c.edge.0), name(c.edge.1)],
                holonomy: q(&c.holonomy),
            },
        }
    }

    fn render(&self) -> String {
        match self {
            CertificateJson::Violation(v) => {
                let mut s = format!(
                    "agents {} and {} disagree on their overlap: conditional of {} is {} vs {}",
                    v.pair[0], v.pair[1], v.outcome, v.conditionals[0], v.conditionals[1]
                );
                for row in &v.table {
                    let _ = write!(s, "\n    {:<12} {:>10} {:>10}", row.outcome, row.left, row.right);
                }
                s
            }
            CertificateJson::Asymmetry(a) => format!(
                "overlap {{{}}} of agents {} and {} has mass {} vs {}",
                a.overlap.join(", "),
                a.pair[0],
                a.pair[1],
                a.masses[0],
                a.masses[1]
            ),
            CertificateJson::Cycle { cycle, edge, holonomy } => {
                let mut walk = cycle.clone();
                walk.extend(cycle.first().cloned());
                format!(
                    "overlap-mass ratios around cycle {} multiply to {} (not 1); failing edge ({}, {})",
                    walk.join(" -> "),
                    holonomy,
                    edge[0],
                    edge[1]
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseJson {
    pub compatible: bool,
    pub violations: Vec<ViolationJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexJson {
    pub counts: Vec<usize>,
}

pub fn labeled_measure(system: &AgentSystem, measure: &Measure) -> IndexMap<String, String> {
    measure.labeled(system).map(|(l, p)| (l.to_string(), q(p))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub agents: usize,
    pub outcomes: usize,
    pub pairwise: PairwiseJson,
    pub asymmetries: Vec<AsymmetryJson>,
    pub complex: ComplexJson,
    pub h1: usize,
    pub verdict: String,
    pub unique: Option<bool>,
    pub ur_prior: Option<IndexMap<String, String>>,
    pub certificate: Option<CertificateJson>,
}

impl CheckReport {
    pub fn new(
        system: &AgentSystem,
        compatibility: &CompatibilityReport,
        counts: Vec<usize>,
        h1: usize,
        result: &crate::compat::UrPriorResult,
    ) -> Self {
        CheckReport {
            valid: true,
            agents: system.len(),
            outcomes: system.space().len(),
            pairwise: PairwiseJson {
                compatible: compatibility.compatible,
                violations: compatibility.violations.iter().map(|v| ViolationJson::new(system, v)).collect(),
            },
            asymmetries: compatibility.asymmetries.iter().map(|a| AsymmetryJson::new(system, a)).collect(),
            complex: ComplexJson { counts },
            h1,
            verdict: verdict_word(result.exists()).into(),
            unique: result.exists().then(|| result.unique()),
            ur_prior: result.measure.as_ref().map(|m| labeled_measure(system, m)),
            certificate: result.certificate.as_ref().map(|c| CertificateJson::new(system, c)),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "system: {} agents, {} outcomes (valid)", self.agents, self.outcomes);
        if self.pairwise.compatible {
            let _ = writeln!(out, "pairwise compatibility: compatible");
        } else {
            let _ = writeln!(out, "pairwise compatibility: {} violating pair(s)", self.pairwise.violations.len());
            for v in &self.pairwise.violations {
                let _ = writeln!(out, "  {}", CertificateJson::Violation(v.clone()).render());
            }
        }
        if self.asymmetries.is_empty() {
            let _ = writeln!(out, "null-overlap asymmetries: none");
        } else {
            let _ = writeln!(out, "null-overlap asymmetries: {}", self.asymmetries.len());
            for a in &self.asymmetries {
                let _ = writeln!(out, "  {}", CertificateJson::Asymmetry(a.clone()).render());
            }
        }
        let counts: Vec<String> = self.complex.counts.iter().enumerate().map(|(k, c)| format!("X{k} = {c}")).collect();
        let _ = writeln!(out, "overlap complex: {}", counts.join(", "));
        let _ = writeln!(out, "H1 = {}", self.h1);
        match (&self.ur_prior, &self.certificate) {
            (Some(measure), _) => {
                let note = if self.unique == Some(true) { "unique" } else { "one of many: disconnected overlap graph" };
                let _ = writeln!(out, "verdict: ur-prior exists ({note})");
                render_measure(&mut out, measure);
            }
            (None, Some(cert)) => {
                let _ = writeln!(out, "verdict: no ur-prior");
                let _ = writeln!(out, "certificate: {}", cert.render());
            }
            (None, None) => {
                let _ = writeln!(out, "verdict: {}", self.verdict);
            }
        }
        out
    }
}

fn verdict_word(exists: bool) -> &'static str {
    if exists {
        "exists"
    } else {
        "none"
    }
}

fn render_measure(out: &mut String, measure: &IndexMap<String, String>) {
    let width = measure.keys().map(String::len).max().unwrap_or(0);
    for (label, p) in measure {
        let _ = writeln!(out, "  {label:<width$}  {p}");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub valid: bool,
    pub verdict: String,
    pub ur_prior: Option<IndexMap<String, String>>,
}

impl OracleReport {
    pub fn new(system: &AgentSystem, measure: Option<&Measure>) -> Self {
        OracleReport {
            valid: true,
            verdict: verdict_word(measure.is_some()).into(),
            ur_prior: measure.map(|m| labeled_measure(system, m)),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.ur_prior {
            Some(m) => {
                let _ = writeln!(out, "oracle verdict: ur-prior exists");
                render_measure(&mut out, m);
            }
            None => {
                let _ = writeln!(out, "oracle verdict: no ur-prior");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixJson {
    pub degree: usize,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn new(complex: &SimplicialComplex, k: usize, m: &Matrix) -> Self {
        let label = |s: &Vec<usize>| complex.label(s);
        MatrixJson {
            degree: k,
            rows: complex.simplices(k + 1).iter().map(label).collect(),
            cols: complex.simplices(k).iter().map(label).collect(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(q).collect()).collect(),
        }
    }

    fn render(&self) -> String {
        let width = self
            .cols
            .iter()
            .chain(self.rows.iter())
            .chain(self.entries.iter().flatten())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let mut out = format!("δ{}: C{} -> C{}\n", self.degree, self.degree, self.degree + 1);
        let _ = write!(out, "{:>width$}", "");
        for c in &self.cols {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let _ = write!(out, "{r:>width$}");
            for v in row {
                let _ = write!(out, " {v:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub source: String,
    pub counts: Vec<usize>,
    /// rank of δ_k for k = 0, 1, ...
    pub ranks: Vec<usize>,
    pub degree: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixJson>>,
}

impl CohomologyReport {
    pub fn new(source: &str, counts: Vec<usize>, ranks: Vec<usize>, dims: CohomologyDims) -> Self {
        CohomologyReport {
            source: source.into(),
            counts,
            ranks,
            degree: dims.degree,
            cocycles: dims.cocycles,
            coboundaries: dims.coboundaries,
            dim: dims.dim(),
            matrices: None,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let counts: Vec<String> = self.counts.iter().enumerate().map(|(k, c)| format!("X{k} = {c}")).collect();
        let _ = writeln!(out, "simplices: {}", counts.join(", "));
        let ranks: Vec<String> = self.ranks.iter().enumerate().map(|(k, r)| format!("rank δ{k} = {r}")).collect();
        let _ = writeln!(out, "{}", ranks.join(", "));
        let _ = writeln!(
            out,
            "cocycles {}, coboundaries {}, H{} = {}",
            self.cocycles, self.coboundaries, self.degree, self.dim
        );
        if let Some(matrices) = &self.matrices {
            for m in matrices {
                out.push('\n');
                out.push_str(&m.render());
            }
        }
        out
    }
}
