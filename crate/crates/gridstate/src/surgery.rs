//! Range-criterion engine: row/column surgery (CUT + STITCH), branching
//! exploration down to terminal graphs, product-vector span bounds, per-cut
//! verdicts, and the multipartite (GME) verdict.

use crate::criteria::{degree_criterion, PptReport};
use crate::graph::{Bipartition, Coord, Edge, GraphError, GridGraph};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    fn coord_index(self) -> usize {
        match self {
            Axis::Row => 0,
            Axis::Column => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Column => "column",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryStep {
    pub axis: Axis,
    pub vertex: Coord,
    pub removed_edges: BTreeSet<Edge>,
    pub stitched_edges: BTreeSet<Edge>,
}

/// Deterministic STITCH policy: fragments of a broken component are chained
/// through their lexicographically smallest off-line vertices. Override
/// edges, applied first in the given order, let a specific reconnection be
/// replayed; an override is used only when its endpoints lie in different
/// fragments of the same broken component.
#[derive(Debug, Clone, Default)]
pub struct StitchPolicy {
    pub overrides: Vec<(Coord, Coord)>,
}

fn on_line(v: &Coord, axis: Axis, line: usize) -> bool {
    v[axis.coord_index()] == line
}

/// CUT all edges touching the line through `v`, then STITCH each broken
/// component back together off-line. `v` must be isolated (it need not be
/// viable; surgery on a dead line returns the graph unchanged).
pub fn surgery(
    g: &GridGraph,
    v: &Coord,
    axis: Axis,
    policy: &StitchPolicy,
) -> Result<(GridGraph, SurgeryStep), GraphError> {
    if g.n_parties() != 2 {
        return Err(GraphError::NotBipartite(g.n_parties()));
    }
    if g.degree(v) != 0 {
        return Err(GraphError::NotIsolated(v.clone()));
    }
    let line = v[axis.coord_index()];
    let removed: BTreeSet<Edge> = g
        .edges()
        .filter(|e| {
            let (a, b) = e.ends();
            on_line(a, axis, line) || on_line(b, axis, line)
        })
        .cloned()
        .collect();
    let kept: BTreeSet<Edge> = g.edges().filter(|e| !removed.contains(e)).cloned().collect();
    let cut_graph = g.with_edges(kept.clone());
    let comps_after = cut_graph.connected_components();

    let mut stitched = BTreeSet::new();
    let mut edges = kept;
    for comp in g.connected_components() {
        let off: BTreeSet<&Coord> = comp.iter().filter(|x| !on_line(x, axis, line)).collect();
        if off.is_empty() {
            continue;
        }
        // fragments = post-CUT components restricted to this component's
        // off-line vertices; each holds its sorted vertex list
        let mut frags: Vec<Vec<Coord>> = comps_after
            .iter()
            .filter_map(|c| {
                let inter: Vec<Coord> =
                    c.iter().filter(|x| off.contains(x)).cloned().collect();
                if inter.is_empty() {
                    None
                } else {
                    Some(inter)
                }
            })
            .collect();
        frags.sort();
        if frags.len() <= 1 {
            continue;
        }
        let frag_of: BTreeMap<&Coord, usize> = frags
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.iter().map(move |x| (x, i)))
            .collect();
        let mut group = crate::graph::UnionFind::new(frags.len());
        for (a, b) in &policy.overrides {
            if let (Some(&fa), Some(&fb)) = (frag_of.get(a), frag_of.get(b)) {
                if group.union(fa, fb) {
                    let e = Edge::new(a.clone(), b.clone())?;
                    stitched.insert(e.clone());
                    edges.insert(e);
                }
            }
        }
        // chain remaining groups by their smallest member vertex
        let mut reps: BTreeMap<usize, Coord> = BTreeMap::new();
        for (i, f) in frags.iter().enumerate() {
            let root = group.find(i);
            let smallest = f[0].clone();
            reps.entry(root)
                .and_modify(|cur| {
                    if smallest < *cur {
                        *cur = smallest.clone();
                    }
                })
                .or_insert(smallest);
        }
        let chain: Vec<Coord> = {
            let mut r: Vec<Coord> = reps.into_values().collect();
            r.sort();
            r
        };
        for pair in chain.windows(2) {
            let e = Edge::new(pair[0].clone(), pair[1].clone())?;
            stitched.insert(e.clone());
            edges.insert(e);
        }
    }
    let result = g.with_edges(edges);
    let step = SurgeryStep { axis, vertex: v.clone(), removed_edges: removed, stitched_edges: stitched };
    Ok((result, step))
}

pub fn row_surgery(
    g: &GridGraph,
    v: &Coord,
    policy: &StitchPolicy,
) -> Result<(GridGraph, SurgeryStep), GraphError> {
    surgery(g, v, Axis::Row, policy)
}

pub fn column_surgery(
    g: &GridGraph,
    v: &Coord,
    policy: &StitchPolicy,
) -> Result<(GridGraph, SurgeryStep), GraphError> {
    surgery(g, v, Axis::Column, policy)
}

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    pub policy: StitchPolicy,
    /// Branch at every viable vertex instead of only the lex-smallest one.
    pub exhaustive: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { policy: StitchPolicy::default(), exhaustive: false }
    }
}

#[derive(Debug, Clone)]
pub struct TraceBranch {
    pub step: SurgeryStep,
    pub child: usize,
}

#[derive(Debug, Clone)]
pub struct TraceNode {
    pub graph: GridGraph,
    pub branches: Vec<TraceBranch>,
}

/// Exploration record. Graphs are deduplicated, so this is a DAG stored as
/// an indexed node list with node 0 the root.
#[derive(Debug, Clone)]
pub struct SurgeryTrace {
    pub nodes: Vec<TraceNode>,
}

impl SurgeryTrace {
    pub fn root(&self) -> &GridGraph {
        &self.nodes[0].graph
    }

    /// Fewest surgery steps from the root to an edgeless graph, if any
    /// branch reaches one.
    pub fn min_steps_to_empty(&self) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if self.nodes[i].graph.is_empty() {
                return Some(dist[i]);
            }
            for b in &self.nodes[i].branches {
                if dist[b.child] == usize::MAX {
                    dist[b.child] = dist[i] + 1;
                    queue.push_back(b.child);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone)]
pub struct TerminalSet {
    terminals: BTreeMap<String, GridGraph>,
}

impl TerminalSet {
    pub fn terminals(&self) -> impl Iterator<Item = &GridGraph> {
        self.terminals.values()
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn ranks(&self) -> BTreeMap<String, usize> {
        self.terminals.iter().map(|(k, g)| (k.clone(), g.grid_rank())).collect()
    }

    pub fn contains(&self, g: &GridGraph) -> bool {
        self.terminals.contains_key(&g.canonical_key())
    }

    /// Σ grid_rank over distinct terminals: an upper bound on the dimension
    /// spanned by product vectors in the range of the root state.
    pub fn span_bound(&self) -> usize {
        self.terminals.values().map(|g| g.grid_rank()).sum()
    }
}

const EXPLORE_LIMIT: usize = 500_000;

/// Depth-first branching exploration: wherever a viable vertex exists,
/// branch into the row- and column-surgery children (at the lex-smallest
/// viable vertex, or at all of them in exhaustive mode). Graphs without
/// viable vertices are terminals. Every product vector in the range of the
/// root state lies in the range of some terminal's state.
pub fn surgery_terminals(
    g: &GridGraph,
    opts: &ExploreOptions,
) -> Result<(TerminalSet, SurgeryTrace), GraphError> {
    if g.n_parties() != 2 {
        return Err(GraphError::NotBipartite(g.n_parties()));
    }
    let mut nodes: Vec<TraceNode> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut terminals: BTreeMap<String, GridGraph> = BTreeMap::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut expanded: Vec<bool> = Vec::new();

    let root_key = g.canonical_key();
    nodes.push(TraceNode { graph: g.clone(), branches: Vec::new() });
    expanded.push(false);
    index.insert(root_key, 0);
    stack.push(0);

    while let Some(i) = stack.pop() {
        if expanded[i] {
            continue;
        }
        expanded[i] = true;
        if nodes.len() > EXPLORE_LIMIT {
            return Err(GraphError::BadCut("surgery exploration exceeded node limit".into()));
        }
        let current = nodes[i].graph.clone();
        let viable = current.viable_vertices()?;
        if viable.is_empty() {
            terminals.insert(current.canonical_key(), current);
            continue;
        }
        let chosen: Vec<Coord> = if opts.exhaustive {
            viable.into_iter().collect()
        } else {
            vec![viable.into_iter().next().unwrap()]
        };
        let mut branches = Vec::new();
        for v in &chosen {
            for axis in [Axis::Row, Axis::Column] {
                let (child, step) = surgery(&current, v, axis, &opts.policy)?;
                let key = child.canonical_key();
                let child_idx = *index.entry(key).or_insert_with(|| {
                    nodes.push(TraceNode { graph: child, branches: Vec::new() });
                    expanded.push(false);
                    nodes.len() - 1
                });
                branches.push(TraceBranch { step, child: child_idx });
                stack.push(child_idx);
            }
        }
        nodes[i].branches = branches;
    }
    Ok((TerminalSet { terminals }, SurgeryTrace { nodes }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeVerdict {
    pub cut: Bipartition,
    pub root_rank: usize,
    pub span_bound: usize,
    pub entangled: bool,
    pub no_product_vectors: bool,
}

pub fn range_verdict(g: &GridGraph, cut: &Bipartition) -> Result<RangeVerdict, GraphError> {
    range_verdict_with(g, cut, &ExploreOptions::default())
}

/// Flatten across the cut, explore surgeries, and compare the terminal span
/// bound against the root rank: fewer product vectors than the rank means
/// the state is entangled across this cut.
pub fn range_verdict_with(
    g: &GridGraph,
    cut: &Bipartition,
    opts: &ExploreOptions,
) -> Result<RangeVerdict, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let flat = g.flatten(cut)?;
    let (terms, _) = surgery_terminals(&flat, opts)?;
    let root_rank = flat.grid_rank();
    let span_bound = terms.span_bound();
    Ok(RangeVerdict {
        cut: cut.clone(),
        root_rank,
        span_bound,
        entangled: span_bound < root_rank,
        no_product_vectors: span_bound == 0,
    })
}

#[derive(Debug, Clone)]
pub struct GmeCutReport {
    pub ppt: PptReport,
    pub range: RangeVerdict,
}

#[derive(Debug, Clone)]
pub struct GmeReport {
    pub cuts: Vec<GmeCutReport>,
    /// True iff no bipartition admits a product vector in the range; weaker
    /// per-cut entanglement flags alone never set this.
    pub gme: bool,
}

pub fn gme_verdict(g: &GridGraph) -> Result<GmeReport, GraphError> {
    if g.n_parties() < 3 {
        return Err(GraphError::NotBipartite(g.n_parties()));
    }
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let mut cuts = Vec::new();
    for cut in g.all_cuts() {
        cuts.push(GmeCutReport {
            ppt: degree_criterion(g, &cut)?,
            range: range_verdict(g, &cut)?,
        });
    }
    let gme = cuts.iter().all(|c| c.range.no_product_vectors);
    Ok(GmeReport { cuts, gme })
}
