//! Dense linear-algebra oracle. Matrices are built exactly over integers
//! (every entry of ρ(G) is a multiple of 1/(2|E|)); floating point enters
//! only in the Jacobi eigensolver and the trace norm.

use crate::graph::{Bipartition, GraphError, GridGraph};
use std::fmt;

pub const PPT_TOL: f64 = 1e-10;
pub const RANK_TOL: f64 = 1e-9;
pub const CCNR_TOL: f64 = 1e-9;
pub const SYM_TOL: f64 = 1e-12;
pub const JACOBI_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    NotSymmetric { max_dev: f64 },
    NotSquare { rows: usize, cols: usize },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::NotSymmetric { max_dev } => {
                write!(f, "matrix not symmetric (max deviation {:e})", max_dev)
            }
            SpectralError::NotSquare { rows, cols } => {
                write!(f, "matrix not square ({}x{})", rows, cols)
            }
        }
    }
}

impl std::error::Error for SpectralError {}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Copy + Default> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Mat<T> {
        Mat { rows, cols, data: vec![T::default(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }
}

impl Mat<i64> {
    pub fn to_f64(&self, denom: i64) -> Mat<f64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x as f64 / denom as f64).collect(),
        }
    }
}

/// ρ(G) held exactly: integer Laplacian over the denominator 2|E|.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub num: Mat<i64>,
    pub denom: i64,
    pub dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn side(&self) -> usize {
        self.num.rows
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.num.to_f64(self.denom)
    }

    /// Exact integer trace; trace of ρ is trace_num/denom.
    pub fn trace_num(&self) -> i64 {
        (0..self.side()).map(|i| self.num.get(i, i)).sum()
    }
}

/// Degree-minus-adjacency matrix over the composite (mixed-radix) index.
pub fn laplacian(g: &GridGraph) -> Mat<i64> {
    let n = g.vertex_count();
    let mut l = Mat::zeros(n, n);
    for e in g.edges() {
        let (a, b) = e.ends();
        let (ia, ib) = (g.index_of(a), g.index_of(b));
        *l.data.get_mut(ia * n + ia).unwrap() += 1;
        *l.data.get_mut(ib * n + ib).unwrap() += 1;
        l.set(ia, ib, l.get(ia, ib) - 1);
        l.set(ib, ia, l.get(ib, ia) - 1);
    }
    l
}

pub fn density(g: &GridGraph) -> Result<DensityMatrix, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    Ok(DensityMatrix {
        num: laplacian(g),
        denom: 2 * g.edge_count() as i64,
        dims: g.dims().to_vec(),
    })
}

/// One unnormalized indicator vector per connected component; these span
/// ker L(G) exactly.
pub fn kernel_basis(g: &GridGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    g.connected_components()
        .iter()
        .map(|comp| {
            let mut v = vec![0i64; n];
            for c in comp {
                v[g.index_of(c)] = 1;
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Cyclic Jacobi with a fixed pivot order, so repeated runs are
/// bit-identical. Input must be symmetric within 1e-12.
pub fn eigenvalues_sym(m: &Mat<f64>) -> Result<Spectrum, SpectralError> {
    if m.rows != m.cols {
        return Err(SpectralError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut max_dev = 0.0f64;
    for r in 0..n {
        for c in (r + 1)..n {
            max_dev = max_dev.max((m.get(r, c) - m.get(c, r)).abs());
        }
    }
    if max_dev > SYM_TOL {
        return Err(SpectralError::NotSymmetric { max_dev });
    }
    let mut a = m.clone();
    // symmetrize exactly so rotations preserve symmetry bit-for-bit
    for r in 0..n {
        for c in (r + 1)..n {
            let v = 0.5 * (a.get(r, c) + a.get(c, r));
            a.set(r, c, v);
            a.set(c, r, v);
        }
    }
    let off = |a: &Mat<f64>| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a.get(r, c) * a.get(r, c);
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..200 {
        if off(&a) < JACOBI_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(Spectrum { eigenvalues: eigs })
}

/// Permutation taking the cut-ordered composite index (a·n_right + b) to the
/// party-ordered composite index used by ρ.
fn cut_permutation(dims: &[usize], cut: &Bipartition) -> (usize, usize, Vec<usize>) {
    let total: usize = dims.iter().product();
    let m: usize = cut.left().iter().map(|&p| dims[p]).product();
    let n: usize = cut.right().iter().map(|&p| dims[p]).product();
    let mut perm = vec![0usize; total];
    for g in 0..total {
        // decode party coords from the party-ordered index
        let mut coords = vec![0usize; dims.len()];
        let mut rem = g;
        for p in (0..dims.len()).rev() {
            coords[p] = rem % dims[p];
            rem /= dims[p];
        }
        let block = |b: &[usize]| {
            let mut idx = 0;
            for &p in b {
                idx = idx * dims[p] + coords[p];
            }
            idx
        };
        perm[block(cut.left()) * n + block(cut.right())] = g;
    }
    (m, n, perm)
}

/// Entry-permuted copy of ρ with row/column indices reordered to the
/// (left-block, right-block) composite ordering of the cut.
fn reorder_to_cut(rho: &DensityMatrix, cut: &Bipartition) -> (usize, usize, Mat<i64>) {
    let (m, n, perm) = cut_permutation(&rho.dims, cut);
    let total = m * n;
    let mut out = Mat::zeros(total, total);
    for r in 0..total {
        for c in 0..total {
            out.set(r, c, rho.num.get(perm[r], perm[c]));
        }
    }
    (m, n, out)
}

/// Transpose the right tensor factor: result[(a,b),(a',b')] = ρ[(a,b'),(a',b)].
pub fn partial_transpose(rho: &DensityMatrix, cut: &Bipartition) -> Mat<f64> {
    let (m, n, r) = reorder_to_cut(rho, cut);
    let total = m * n;
    let mut out = Mat::zeros(total, total);
    for a in 0..m {
        for b in 0..n {
            for a2 in 0..m {
                for b2 in 0..n {
                    out.set(a * n + b, a2 * n + b2, r.get(a * n + b2, a2 * n + b));
                }
            }
        }
    }
    out.to_f64(rho.denom)
}

/// R[(a,a'),(b,b')] = ρ[(a,b),(a',b')]; shape m² × n².
pub fn realign(rho: &DensityMatrix, cut: &Bipartition) -> Mat<f64> {
    let (m, n, r) = reorder_to_cut(rho, cut);
    let mut out: Mat<i64> = Mat::zeros(m * m, n * n);
    for a in 0..m {
        for b in 0..n {
            for a2 in 0..m {
                for b2 in 0..n {
                    out.set(a * m + a2, b * n + b2, r.get(a * n + b, a2 * n + b2));
                }
            }
        }
    }
    out.to_f64(rho.denom)
}

/// Sum of singular values, via the spectrum of MᵀM.
pub fn trace_norm(m: &Mat<f64>) -> f64 {
    let k = m.cols;
    let mut gram = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut s = 0.0;
            for r in 0..m.rows {
                s += m.get(r, i) * m.get(r, j);
            }
            gram.set(i, j, s);
        }
    }
    eigenvalues_sym(&gram)
        .expect("gram matrix is symmetric")
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum()
}

pub fn numeric_rank(m: &Mat<f64>, tol: f64) -> Result<usize, SpectralError> {
    Ok(eigenvalues_sym(m)?
        .eigenvalues
        .iter()
        .filter(|l| l.abs() > tol)
        .count())
}

/// Smallest eigenvalue of ρ^Γ across the given cut.
pub fn min_pt_eigenvalue(g: &GridGraph, cut: &Bipartition) -> Result<f64, GraphError> {
    let rho = density(g)?;
    let pt = partial_transpose(&rho, cut);
    Ok(eigenvalues_sym(&pt).expect("partial transpose of symmetric ρ is symmetric").min())
}
