//! File formats and reports.
//!
//! Lattice JSON is `{"name", "labels", "covers"}` with covers as
//! `[lower, upper]` index pairs; grid JSON is [`GridFile`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cone::{SingularLocus, SingularityType};
use crate::error::Result;
use crate::grid::GridPoint;
use crate::lattice::DistLattice;
use crate::poset::Poset;

pub use crate::grid::GridFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default)]
    pub name: String,
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl LatticeFile {
    pub fn from_lattice(l: &DistLattice) -> Self {
        LatticeFile { name: l.name().to_string(), labels: l.poset().labels().to_vec(), covers: l.poset().covers().to_vec() }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_covers(self.labels.clone(), &self.covers)
    }

    pub fn to_lattice(&self) -> Result<DistLattice> {
        Ok(DistLattice::from_poset(self.to_poset()?)?.with_name(self.name.clone()))
    }
}

/// One irreducible pair in an analysis report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub alpha: String,
    pub beta: String,
    pub mu: GridPoint,
    #[serde(rename = "A")]
    pub a: GridPoint,
    #[serde(rename = "B")]
    pub b: GridPoint,
    #[serde(rename = "C")]
    pub c: GridPoint,
    #[serde(rename = "intervalSize")]
    pub interval_size: usize,
    #[serde(rename = "faceDim")]
    pub face_dim: usize,
    #[serde(rename = "orbitDim")]
    pub orbit_dim: usize,
    #[serde(rename = "type")]
    pub kind: SingularityType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularLocusReport {
    pub lattice: String,
    pub num_elements: usize,
    pub dim: usize,
    pub pairs: Vec<PairReport>,
    pub singular_components: usize,
    pub pure_codim3: bool,
    pub smooth: bool,
}

impl SingularLocusReport {
    pub fn new(l: &DistLattice, locus: &SingularLocus) -> Self {
        let pairs = locus
            .components
            .iter()
            .map(|c| PairReport {
                alpha: l.label(c.pair.alpha).to_string(),
                beta: l.label(c.pair.beta).to_string(),
                mu: c.pair.mu_pt,
                a: c.pair.a_pt,
                b: c.pair.b_pt,
                c: c.pair.c_pt,
                interval_size: c.pair.interval.count(),
                face_dim: c.dims.face_dim,
                orbit_dim: c.dims.orbit_dim,
                kind: c.kind,
            })
            .collect();
        SingularLocusReport {
            lattice: l.name().to_string(),
            num_elements: l.len(),
            dim: locus.dim,
            pairs,
            singular_components: locus.components.len(),
            pure_codim3: locus.pure_codim3(),
            smooth: locus.is_smooth(),
        }
    }
}

/// Hasse diagram in DOT, drawn bottom-up. Elements of singular intervals
/// are filled and covers inside an interval are drawn in red.
pub fn to_dot(l: &DistLattice, locus: Option<&SingularLocus>) -> String {
    let hot = |x: usize| locus.is_some_and(|s| s.components.iter().any(|c| c.pair.interval.contains(x)));
    let hot_edge = |a: usize, b: usize| {
        locus.is_some_and(|s| {
            s.components
                .iter()
                .any(|c| c.pair.interval.contains(a) && c.pair.interval.contains(b))
        })
    };
    let mut out = String::new();
    let name = if l.name().is_empty() { "lattice" } else { l.name() };
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
    for x in 0..l.len() {
        let style = if hot(x) { " style=filled fillcolor=\"#f4a6a6\"" } else { "" };
        writeln!(out, "  n{x} [label={}{style}];", quote(l.label(x))).unwrap();
    }
    for &(a, b) in l.poset().covers() {
        let style = if hot_edge(a, b) { " [color=red]" } else { "" };
        writeln!(out, "  n{a} -> n{b}{style};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
