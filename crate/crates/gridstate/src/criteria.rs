//! Graphical entanglement criteria: graph partial transpose, degree
//! criterion, the 2×q decision, the axis-aligned separability certificate,
//! and the realignment (CCNR) test.

use crate::graph::{Bipartition, GraphError, GridGraph};
use crate::spectral::{self, CCNR_TOL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PptReport {
    pub cut: Bipartition,
    pub ppt: bool,
    /// Lexicographically smallest vertex (in flattened coordinates) whose
    /// degree differs between G and G^Γ. Present iff `ppt` is false.
    pub witness_vertex: Option<Vec<usize>>,
}

/// Edge {(i,j),(k,l)} ↦ {(i,l),(k,j)} on the flattened graph. Edges with
/// i=k or j=l are fixed points, so the map never creates self-loops.
pub fn graph_partial_transpose(g: &GridGraph, cut: &Bipartition) -> Result<GridGraph, GraphError> {
    let flat = g.flatten(cut)?;
    let dims = flat.dims().to_vec();
    let mapped: Vec<_> = flat
        .edges()
        .map(|e| {
            let (a, b) = e.ends();
            (vec![a[0], b[1]], vec![b[0], a[1]])
        })
        .collect();
    GridGraph::new(dims, mapped)
}

pub fn degree_criterion(g: &GridGraph, cut: &Bipartition) -> Result<PptReport, GraphError> {
    let flat = g.flatten(cut)?;
    let gamma = graph_partial_transpose(g, cut)?;
    let d1 = flat.degree_map();
    let d2 = gamma.degree_map();
    let witness = flat.vertices().into_iter().find(|v| {
        d1.get(v).copied().unwrap_or(0) != d2.get(v).copied().unwrap_or(0)
    });
    Ok(PptReport { cut: cut.clone(), ppt: witness.is_none(), witness_vertex: witness })
}

/// Definitive separability decision when one flattened side has dimension 2:
/// there the degree criterion is necessary and sufficient. `None` when the
/// criterion is not decisive (both sides ≥ 3).
pub fn separable_2xq(g: &GridGraph, cut: &Bipartition) -> Result<Option<bool>, GraphError> {
    let flat = g.flatten(cut)?;
    if flat.dims().iter().min() != Some(&2) {
        return Ok(None);
    }
    Ok(Some(degree_criterion(g, cut)?.ppt))
}

/// True iff every flattened edge is horizontal or vertical. Each such edge
/// state is a product vector, so this certifies separability across the cut.
pub fn axis_aligned_certificate(g: &GridGraph, cut: &Bipartition) -> Result<bool, GraphError> {
    let flat = g.flatten(cut)?;
    let aligned = flat.edges().all(|e| {
        let (a, b) = e.ends();
        a[0] == b[0] || a[1] == b[1]
    });
    Ok(aligned)
}

/// Trace norm of the realigned ρ across the cut; values above 1 certify
/// entanglement.
pub fn ccnr_entangled(g: &GridGraph, cut: &Bipartition) -> Result<(f64, bool), GraphError> {
    let rho = spectral::density(g)?;
    let value = spectral::trace_norm(&spectral::realign(&rho, cut));
    Ok((value, value > 1.0 + CCNR_TOL))
}
