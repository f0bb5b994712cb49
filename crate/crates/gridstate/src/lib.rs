//! Grid states: quantum states whose density matrix is the normalized
//! Laplacian of a grid-labelled graph, together with graphical entanglement
//! criteria (degree criterion, graph surgery / range criterion, bipartition
//! flattening) and a dense linear-algebra oracle to cross-check them.

pub mod catalog;
pub mod census;
pub mod classify;
pub mod criteria;
pub mod dot;
pub mod graph;
pub mod io;
pub mod spectral;
pub mod surgery;
