//! Grid-labelled graphs: vertices carry fixed grid coordinates, and the
//! labels are physically meaningful — two different edge sets are two
//! different quantum states, so there is no isomorphism reduction anywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Vertex label: one coordinate per party, `coord[p] < dims[p]`.
pub type Coord = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(Coord),
    OutOfRange { coord: Coord, party: usize, dim: usize },
    ArityMismatch { coord: Coord, expected: usize },
    DimTooSmall { party: usize, dim: usize },
    TooFewParties(usize),
    NotBipartite(usize),
    EmptyGraph,
    BadCut(String),
    NotIsolated(Coord),
    TooManyEdges { requested: usize, max: usize },
    Unsupported(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at {:?}", v),
            GraphError::OutOfRange { coord, party, dim } => {
                write!(f, "coordinate {:?}: entry for party {} exceeds dimension {}", coord, party, dim)
            }
            GraphError::ArityMismatch { coord, expected } => {
                write!(f, "coordinate {:?} has wrong arity, expected {}", coord, expected)
            }
            GraphError::DimTooSmall { party, dim } => {
                write!(f, "dimension {} for party {} (every dimension must be >= 2)", dim, party)
            }
            GraphError::TooFewParties(n) => write!(f, "{} parties (need at least 2)", n),
            GraphError::NotBipartite(n) => write!(f, "operation needs a bipartite graph, got {} parties (flatten first)", n),
            GraphError::EmptyGraph => write!(f, "graph has no edges (no state)"),
            GraphError::BadCut(s) => write!(f, "invalid bipartition: {}", s),
            GraphError::NotIsolated(v) => write!(f, "vertex {:?} is not isolated", v),
            GraphError::TooManyEdges { requested, max } => {
                write!(f, "requested {} edges but the grid admits at most {}", requested, max)
            }
            GraphError::Unsupported(s) => write!(f, "unsupported: {}", s),
        }
    }
}

impl std::error::Error for GraphError {}

/// Undirected edge, stored with the lexicographically smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: Coord,
    b: Coord,
}

impl Edge {
    pub fn new(x: Coord, y: Coord) -> Result<Edge, GraphError> {
        if x == y {
            return Err(GraphError::SelfLoop(x));
        }
        if x <= y {
            Ok(Edge { a: x, b: y })
        } else {
            Ok(Edge { a: y, b: x })
        }
    }

    pub fn ends(&self) -> (&Coord, &Coord) {
        (&self.a, &self.b)
    }

    pub fn touches(&self, v: &Coord) -> bool {
        &self.a == v || &self.b == v
    }
}

/// Two-block split of the party indices. The left block maps to the row
/// factor when flattening; the orientation given at construction is kept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: &[usize], n_parties: usize) -> Result<Bipartition, GraphError> {
        let lset: BTreeSet<usize> = left.iter().copied().collect();
        if lset.len() != left.len() {
            return Err(GraphError::BadCut("duplicate party in left block".into()));
        }
        if lset.is_empty() || lset.len() == n_parties {
            return Err(GraphError::BadCut("both blocks must be non-empty".into()));
        }
        if let Some(&p) = lset.iter().find(|&&p| p >= n_parties) {
            return Err(GraphError::BadCut(format!("party {} out of range", p)));
        }
        let right: Vec<usize> = (0..n_parties).filter(|p| !lset.contains(p)).collect();
        Ok(Bipartition { left: lset.into_iter().collect(), right })
    }

    /// Orientation with party 0 on the left.
    pub fn canonical(&self) -> Bipartition {
        if self.left.contains(&0) {
            self.clone()
        } else {
            Bipartition { left: self.right.clone(), right: self.left.clone() }
        }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// `0|1,2`-style label (left block, `|`, right block).
    pub fn label(&self) -> String {
        let fmt = |b: &[usize]| b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        format!("{}|{}", fmt(&self.left), fmt(&self.right))
    }

    /// The trivial cut 0|1 of a bipartite graph.
    pub fn standard() -> Bipartition {
        Bipartition { left: vec![0], right: vec![1] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridGraph {
    dims: Vec<usize>,
    edges: BTreeSet<Edge>,
}

impl GridGraph {
    /// Validates raw input and builds a graph. Duplicate raw edges collapse.
    pub fn new<I>(dims: Vec<usize>, raw_edges: I) -> Result<GridGraph, GraphError>
    where
        I: IntoIterator<Item = (Coord, Coord)>,
    {
        if dims.len() < 2 {
            return Err(GraphError::TooFewParties(dims.len()));
        }
        if let Some((p, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(GraphError::DimTooSmall { party: p, dim: d });
        }
        let check = |c: &Coord| -> Result<(), GraphError> {
            if c.len() != dims.len() {
                return Err(GraphError::ArityMismatch { coord: c.clone(), expected: dims.len() });
            }
            for (p, (&x, &d)) in c.iter().zip(&dims).enumerate() {
                if x >= d {
                    return Err(GraphError::OutOfRange { coord: c.clone(), party: p, dim: d });
                }
            }
            Ok(())
        };
        let mut edges = BTreeSet::new();
        for (x, y) in raw_edges {
            check(&x)?;
            check(&y)?;
            edges.insert(Edge::new(x, y)?);
        }
        Ok(GridGraph { dims, edges })
    }

    pub fn empty(dims: Vec<usize>) -> GridGraph {
        GridGraph::new(dims, std::iter::empty()).expect("empty graph on valid dims")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// All grid vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Coord> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut cur = vec![0; self.dims.len()];
        loop {
            out.push(cur.clone());
            let mut p = self.dims.len();
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                cur[p] += 1;
                if cur[p] < self.dims[p] {
                    break;
                }
                cur[p] = 0;
            }
        }
    }

    /// Composite (mixed-radix) index of a vertex, row-major over parties.
    pub fn index_of(&self, v: &Coord) -> usize {
        let mut idx = 0;
        for (&x, &d) in v.iter().zip(&self.dims) {
            idx = idx * d + x;
        }
        idx
    }

    pub fn degree(&self, v: &Coord) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Degree of every vertex (absent vertices have degree 0).
    pub fn degree_map(&self) -> BTreeMap<Coord, usize> {
        let mut m = BTreeMap::new();
        for e in &self.edges {
            *m.entry(e.a.clone()).or_insert(0) += 1;
            *m.entry(e.b.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Partition of all grid vertices into connected components; degree-0
    /// vertices form singleton components (they count).
    pub fn connected_components(&self) -> Vec<BTreeSet<Coord>> {
        let verts = self.vertices();
        let index: BTreeMap<&Coord, usize> = verts.iter().zip(0..).collect();
        let mut uf = UnionFind::new(verts.len());
        for e in &self.edges {
            uf.union(index[&e.a], index[&e.b]);
        }
        let mut comps: BTreeMap<usize, BTreeSet<Coord>> = BTreeMap::new();
        for (i, v) in verts.iter().enumerate() {
            comps.entry(uf.find(i)).or_default().insert(v.clone());
        }
        comps.into_values().collect()
    }

    pub fn isolated_vertices(&self) -> BTreeSet<Coord> {
        let deg = self.degree_map();
        self.vertices().into_iter().filter(|v| !deg.contains_key(v)).collect()
    }

    /// Isolated vertices on a non-isolated row and non-isolated column.
    /// Only defined for bipartite graphs; flatten multipartite graphs first.
    pub fn viable_vertices(&self) -> Result<BTreeSet<Coord>, GraphError> {
        if self.dims.len() != 2 {
            return Err(GraphError::NotBipartite(self.dims.len()));
        }
        let mut live_rows = BTreeSet::new();
        let mut live_cols = BTreeSet::new();
        for e in &self.edges {
            for v in [&e.a, &e.b] {
                live_rows.insert(v[0]);
                live_cols.insert(v[1]);
            }
        }
        Ok(self
            .isolated_vertices()
            .into_iter()
            .filter(|v| live_rows.contains(&v[0]) && live_cols.contains(&v[1]))
            .collect())
    }

    /// Rank of the grid state: (number of vertices) − (number of components).
    pub fn grid_rank(&self) -> usize {
        self.vertex_count() - self.connected_components().len()
    }

    /// Merge the parties of each block into one composite party. The left
    /// block becomes the row factor; parties combine in ascending order
    /// within a block (mixed radix).
    pub fn flatten(&self, cut: &Bipartition) -> Result<GridGraph, GraphError> {
        let n = self.dims.len();
        let all: BTreeSet<usize> = cut.left.iter().chain(&cut.right).copied().collect();
        if all.len() != n || all.iter().max() != Some(&(n - 1)) {
            return Err(GraphError::BadCut(format!("cut {} does not partition {} parties", cut.label(), n)));
        }
        let block_dim = |b: &[usize]| b.iter().map(|&p| self.dims[p]).product::<usize>();
        let block_index = |b: &[usize], v: &Coord| {
            let mut idx = 0;
            for &p in b {
                idx = idx * self.dims[p] + v[p];
            }
            idx
        };
        let fold = |v: &Coord| vec![block_index(&cut.left, v), block_index(&cut.right, v)];
        let dims = vec![block_dim(&cut.left), block_dim(&cut.right)];
        GridGraph::new(dims, self.edges.iter().map(|e| (fold(&e.a), fold(&e.b))))
    }

    /// Stable text key: equal iff (dims, edge set) are equal.
    pub fn canonical_key(&self) -> String {
        let mut s = format!("{:?};", self.dims);
        for e in &self.edges {
            s.push_str(&format!("{:?}-{:?};", e.a, e.b));
        }
        s
    }

    pub fn with_edges(&self, edges: BTreeSet<Edge>) -> GridGraph {
        GridGraph { dims: self.dims.clone(), edges }
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// All bipartitions with party 0 in the left block, in a fixed order.
    pub fn all_cuts(&self) -> Vec<Bipartition> {
        let n = self.dims.len();
        let mut cuts = Vec::new();
        // subsets of {1..n-1} joined to {0}; skip the full set
        for mask in 0..(1u32 << (n - 1)) {
            let mut left = vec![0usize];
            for p in 1..n {
                if mask & (1 << (p - 1)) != 0 {
                    left.push(p);
                }
            }
            if left.len() == n {
                continue;
            }
            cuts.push(Bipartition::new(&left, n).expect("constructed cut is valid"));
        }
        cuts
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(dims: Vec<usize>, edges: &[((usize, usize), (usize, usize))]) -> GridGraph {
        GridGraph::new(
            dims,
            edges.iter().map(|&((a, b), (c, d))| (vec![a, b], vec![c, d])),
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_self_loops_and_bad_coords() {
        let e = GridGraph::new(vec![2, 2], vec![(vec![0, 0], vec![0, 0])]);
        assert!(matches!(e, Err(GraphError::SelfLoop(_))));
        let e = GridGraph::new(vec![3, 3], vec![(vec![0, 0], vec![3, 1])]);
        assert!(matches!(e, Err(GraphError::OutOfRange { .. })));
        let e = GridGraph::new(vec![1, 3], std::iter::empty());
        assert!(matches!(e, Err(GraphError::DimTooSmall { .. })));
        let e = GridGraph::new(vec![2, 2], vec![(vec![0], vec![1, 1])]);
        assert!(matches!(e, Err(GraphError::ArityMismatch { .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = GridGraph::new(
            vec![2, 2],
            vec![(vec![0, 0], vec![1, 1]), (vec![1, 1], vec![0, 0])],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let gr = g(vec![3, 3], &[((0, 0), (1, 2)), ((1, 0), (2, 2)), ((0, 1), (2, 0))]);
        let total: usize = gr.vertices().iter().map(|v| gr.degree(v)).sum();
        assert_eq!(total, 2 * gr.edge_count());
    }

    #[test]
    fn components_count_singletons() {
        let empty = GridGraph::empty(vec![3, 4]);
        assert_eq!(empty.connected_components().len(), 12);
        assert_eq!(empty.grid_rank(), 0);
        let one = g(vec![2, 2], &[((0, 0), (1, 1))]);
        assert_eq!(one.connected_components().len(), 3);
        assert_eq!(one.grid_rank(), 1);
    }

    #[test]
    fn viable_requires_live_row_and_column() {
        // single edge in row 0: (1,*) sit on a dead row, nothing is viable
        let gr = g(vec![2, 2], &[((0, 0), (0, 1))]);
        assert!(gr.viable_vertices().unwrap().is_empty());
        let empty = GridGraph::empty(vec![2, 2]);
        assert!(empty.viable_vertices().unwrap().is_empty());
    }

    #[test]
    fn flatten_mixed_radix() {
        let gr = GridGraph::empty(vec![3, 3, 3]);
        let cut0 = Bipartition::new(&[0], 3).unwrap();
        let f = gr.flatten(&cut0).unwrap();
        assert_eq!(f.dims(), &[3, 9]);
        // coord (1,2,0) under {0}|{1,2} -> (1, 2*3+0)
        let g2 = GridGraph::new(vec![3, 3, 3], vec![(vec![1, 2, 0], vec![0, 0, 0])]).unwrap();
        let f2 = g2.flatten(&cut0).unwrap();
        let e = f2.edges().next().unwrap();
        assert_eq!(e.ends(), (&vec![0usize, 0], &vec![1usize, 6]));
        // under {1}|{0,2} -> (2, 1*3+0)
        let cut1 = Bipartition::new(&[1], 3).unwrap();
        let f3 = g2.flatten(&cut1).unwrap();
        let e = f3.edges().next().unwrap();
        assert_eq!(e.ends(), (&vec![0usize, 0], &vec![2usize, 3]));
    }

    #[test]
    fn flatten_preserves_components_and_rank() {
        let gr = GridGraph::new(
            vec![2, 2, 2],
            vec![(vec![0, 0, 0], vec![1, 1, 1]), (vec![0, 1, 0], vec![1, 0, 0])],
        )
        .unwrap();
        for cut in gr.all_cuts() {
            let f = gr.flatten(&cut).unwrap();
            assert_eq!(f.connected_components().len(), gr.connected_components().len());
            assert_eq!(f.grid_rank(), gr.grid_rank());
        }
    }

    #[test]
    fn canonical_key_distinguishes_graphs() {
        let a = g(vec![2, 2], &[((0, 0), (1, 1))]);
        let b = g(vec![2, 2], &[((0, 0), (1, 1))]);
        let c = g(vec![2, 2], &[((0, 0), (1, 1)), ((0, 1), (1, 0))]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), c.canonical_key());
        assert_eq!(
            GridGraph::empty(vec![2, 2]).canonical_key(),
            GridGraph::empty(vec![2, 2]).canonical_key()
        );
    }

    #[test]
    fn cuts_of_three_parties() {
        let gr = GridGraph::empty(vec![3, 3, 3]);
        let cuts = gr.all_cuts();
        assert_eq!(cuts.len(), 3);
        let labels: Vec<String> = cuts.iter().map(|c| c.label()).collect();
        assert!(labels.contains(&"0|1,2".to_string()));
        assert!(labels.contains(&"0,1|2".to_string()));
        assert!(labels.contains(&"0,2|1".to_string()));
    }
}
