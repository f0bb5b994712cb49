//! Exhaustive classification census over all small graphs of a grid.

use crate::catalog::enumerate_graphs;
use crate::classify::{classify, Label};
use crate::graph::GraphError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub edge_count: usize,
    pub total: u64,
    pub separable: u64,
    pub npt: u64,
    pub bound: u64,
    pub undecided: u64,
}

impl CensusRow {
    fn absorb(&mut self, other: &CensusRow) {
        self.total += other.total;
        self.separable += other.separable;
        self.npt += other.npt;
        self.bound += other.bound;
        self.undecided += other.undecided;
    }
}

/// Classify every graph with at most `max_edges` edges on the given grid,
/// sharded across `jobs` workers by enumeration index. Counts are summed
/// commutatively, so the result is independent of the worker count.
pub fn census(
    dims: Vec<usize>,
    max_edges: usize,
    jobs: usize,
) -> Result<Vec<CensusRow>, GraphError> {
    let jobs = jobs.max(1);
    // validate dims up front so workers cannot fail
    enumerate_graphs(dims.clone(), max_edges)?;
    let shard = |worker: usize| -> Vec<CensusRow> {
        let mut rows: Vec<CensusRow> = (0..=max_edges)
            .map(|k| CensusRow { edge_count: k, ..CensusRow::default() })
            .collect();
        for (idx, g) in enumerate_graphs(dims.clone(), max_edges).unwrap().enumerate() {
            if idx % jobs != worker {
                continue;
            }
            let row = &mut rows[g.edge_count()];
            row.total += 1;
            if g.is_empty() {
                continue; // no state; counted but not classified
            }
            match classify(&g).expect("non-empty graph classifies").label {
                Label::Separable => row.separable += 1,
                Label::NptEntangled => row.npt += 1,
                Label::BoundEntangled => row.bound += 1,
                Label::PptUndecided => row.undecided += 1,
                Label::Gme => row.undecided += 1, // unreachable for 2 parties
            }
        }
        rows
    };
    let mut rows: Vec<CensusRow> = (0..=max_edges)
        .map(|k| CensusRow { edge_count: k, ..CensusRow::default() })
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs).map(|w| scope.spawn(move || shard(w))).collect();
        for h in handles {
            let part = h.join().expect("census worker panicked");
            for (row, p) in rows.iter_mut().zip(&part) {
                row.absorb(p);
            }
        }
    });
    // rows beyond the pool size stay empty; drop them
    rows.retain(|r| r.total > 0 || r.edge_count == 0);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_counts() {
        let rows = census(vec![2, 2], 2, 1).unwrap();
        let total: u64 = rows.iter().map(|r| r.total).sum();
        assert_eq!(total, 22); // 1 + 6 + 15
        assert_eq!(rows[0].total, 1);
        assert_eq!(rows[0].separable + rows[0].npt + rows[0].bound + rows[0].undecided, 0);
        for r in &rows[1..] {
            assert_eq!(r.separable + r.npt + r.bound + r.undecided, r.total);
        }
    }

    #[test]
    fn jobs_do_not_change_counts() {
        let a = census(vec![2, 2], 3, 1).unwrap();
        let b = census(vec![2, 2], 3, 4).unwrap();
        assert_eq!(a, b);
    }
}
