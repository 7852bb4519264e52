//! Exact matrices over cyclotomic fields and fraction-free elimination.
//!
//! Matrices are stored column-major and sparse; the symmetrizers of
//! group-type braidings are permutation-like, so most columns carry very
//! few entries.  Rank, kernel and image are computed by Bareiss-style
//! fraction-free elimination on an integer lift (rows are scaled by the
//! lcm of their coefficient denominators first), with pivot columns chosen
//! by fewest nonzeros.  This bounds coefficient swell on the large
//! symmetrizer matrices while staying exact.

use num::{BigInt, BigRational, Integer, One};

use super::cyclotomic::Cyclotomic;

/// A sparse exact matrix over a cyclotomic field.  Entries of different
/// cyclotomic orders are lifted to a common order on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    cols_data: Vec<Vec<(usize, Cyclotomic)>>, // sorted by row index, nonzero
}

/// Result of [`ExactMatrix::rank_kernel_image`].
#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Basis of the right kernel, one dense vector per free column.
    pub kernel: Vec<Vec<Cyclotomic>>,
    /// Original matrix columns at the pivot positions.
    pub image: Vec<Vec<Cyclotomic>>,
    /// Pivot column indices, ascending.
    pub pivot_cols: Vec<usize>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            cols_data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.cols_data[j].push((j, Cyclotomic::from_int(1)));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.cols_data[j].push((i, v));
                }
            }
        }
        for col in m.cols_data.iter_mut() {
            col.sort_by_key(|(i, _)| *i);
        }
        m
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<(usize, Cyclotomic)>>) -> Self {
        let mut m = ExactMatrix {
            rows,
            cols: cols.len(),
            cols_data: cols,
        };
        for col in m.cols_data.iter_mut() {
            col.retain(|(_, v)| !v.is_zero());
            col.sort_by_key(|(i, _)| *i);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[(usize, Cyclotomic)] {
        &self.cols_data[j]
    }

    pub fn col_dense(&self, j: usize) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(1); self.rows];
        for (i, v) in &self.cols_data[j] {
            out[*i] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> Cyclotomic {
        self.cols_data[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| Cyclotomic::zero(1))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        let col = &mut self.cols_data[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(p) => {
                if v.is_zero() {
                    col.remove(p);
                } else {
                    col[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    col.insert(p, (i, v));
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols_data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.cols_data.iter().all(|c| c.is_empty())
    }

    /// Least common cyclotomic order of all entries.
    pub fn common_order(&self) -> u64 {
        let mut m = 1u64;
        for col in &self.cols_data {
            for (_, v) in col {
                m = m.lcm(&v.order());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols_data.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        Self::from_cols(self.cols, cols)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = Self::zero(self.rows, self.cols);
        for j in 0..self.cols {
            let mut dense: Vec<Option<Cyclotomic>> = vec![None; self.rows];
            for (i, v) in &self.cols_data[j] {
                dense[*i] = Some(v.clone());
            }
            for (i, v) in &other.cols_data[j] {
                dense[*i] = Some(match dense[*i].take() {
                    Some(x) => x.add(v),
                    None => v.clone(),
                });
            }
            for (i, v) in dense.into_iter().enumerate() {
                if let Some(v) = v {
                    if !v.is_zero() {
                        out.cols_data[j].push((i, v));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let f = Cyclotomic::from_int(k);
        self.scale(&f)
    }

    pub fn scale(&self, f: &Cyclotomic) -> Self {
        let mut out = self.clone();
        for col in out.cols_data.iter_mut() {
            if f.is_zero() {
                col.clear();
            } else {
                for (_, v) in col.iter_mut() {
                    *v = v.mul(f);
                }
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut cols = Vec::with_capacity(other.cols);
        for j in 0..other.cols {
            cols.push(self.apply_sparse(&other.cols_data[j]));
        }
        Self::from_cols(self.rows, cols)
    }

    /// `self * v` for a sparse column vector.
    pub fn apply_sparse(&self, v: &[(usize, Cyclotomic)]) -> Vec<(usize, Cyclotomic)> {
        let mut dense: Vec<Option<Cyclotomic>> = vec![None; self.rows];
        for (k, coeff) in v {
            for (i, a) in &self.cols_data[*k] {
                let t = a.mul(coeff);
                dense[*i] = Some(match dense[*i].take() {
                    Some(x) => x.add(&t),
                    None => t,
                });
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.filter(|x| !x.is_zero()).map(|x| (i, x)))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyclotomic>> {
        let mut out = vec![vec![Cyclotomic::zero(1); self.cols]; self.rows];
        for (j, col) in self.cols_data.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// Exact rank, kernel basis and image basis.
    ///
    /// `rank + kernel.len() == cols`; the image vectors are columns of the
    /// original matrix spanning its column space; everything is computed by
    /// fraction-free elimination without rounding.
    pub fn rank_kernel_image(&self) -> RankKernelImage {
        let order = self.common_order();
        // Integer lift: scale each row by the lcm of its denominators.
        // Row scaling changes neither the rank, the kernel, nor which
        // column sets are independent.
        let mut work: Vec<Vec<Cyclotomic>> =
            vec![vec![Cyclotomic::zero(order); self.cols]; self.rows];
        let mut row_den: Vec<BigInt> = vec![BigInt::one(); self.rows];
        for (j, col) in self.cols_data.iter().enumerate() {
            for (i, v) in col {
                let lifted = v.lift_to_order(order);
                for c in lifted.coeffs() {
                    row_den[*i] = row_den[*i].lcm(c.denom());
                }
                work[*i][j] = lifted;
            }
        }
        for (i, row) in work.iter_mut().enumerate() {
            if !row_den[i].is_one() {
                let f = Cyclotomic::from_rational(BigRational::from_integer(row_den[i].clone()));
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v = v.mul(&f);
                    }
                }
            }
        }

        let mut row_used = vec![false; self.rows];
        let mut col_used = vec![false; self.cols];
        let mut pivots: Vec<(usize, usize, Cyclotomic)> = Vec::new();
        let mut prev_inv = Cyclotomic::from_int(1);

        loop {
            // Pivot column: fewest nonzeros among unused rows.
            let mut best: Option<(usize, usize)> = None;
            for j in 0..self.cols {
                if col_used[j] {
                    continue;
                }
                let nz = (0..self.rows)
                    .filter(|&i| !row_used[i] && !work[i][j].is_zero())
                    .count();
                if nz == 0 {
                    continue;
                }
                if best.map(|(_, n)| nz < n).unwrap_or(true) {
                    best = Some((j, nz));
                }
            }
            let Some((pcol, _)) = best else { break };
            // Pivot row: fewest nonzeros within the chosen column.
            let prow = (0..self.rows)
                .filter(|&i| !row_used[i] && !work[i][pcol].is_zero())
                .min_by_key(|&i| work[i].iter().filter(|v| !v.is_zero()).count())
                .expect("pivot row exists");
            let pivot = work[prow][pcol].clone();
            let pivot_row: Vec<Cyclotomic> = work[prow].clone();
            for i in 0..self.rows {
                if row_used[i] || i == prow || work[i][pcol].is_zero() {
                    continue;
                }
                let factor = work[i][pcol].clone();
                for j in 0..self.cols {
                    if col_used[j] || j == pcol {
                        continue;
                    }
                    // Bareiss step: division by the previous pivot is exact.
                    let t = pivot.mul(&work[i][j]).sub(&factor.mul(&pivot_row[j]));
                    work[i][j] = t.mul(&prev_inv);
                }
                work[i][pcol] = Cyclotomic::zero(order);
            }
            row_used[prow] = true;
            col_used[pcol] = true;
            prev_inv = pivot.inverse().expect("pivot is nonzero");
            pivots.push((prow, pcol, pivot));
        }

        let rank = pivots.len();
        let free_cols: Vec<usize> = (0..self.cols).filter(|&j| !col_used[j]).collect();

        // Back substitution against the frozen pivot rows, which form a
        // triangular system in elimination order.
        let mut kernel = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut x = vec![Cyclotomic::zero(order); self.cols];
            x[f] = Cyclotomic::from_int(1);
            for (prow, pcol, pval) in pivots.iter().rev() {
                let mut acc = Cyclotomic::zero(order);
                for j in 0..self.cols {
                    if j == *pcol || work[*prow][j].is_zero() || x[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&work[*prow][j].mul(&x[j]));
                }
                if acc.is_zero() {
                    x[*pcol] = Cyclotomic::zero(order);
                } else {
                    x[*pcol] = acc.neg().div(pval).expect("pivot is nonzero");
                }
            }
            kernel.push(x);
        }

        let mut pivot_cols: Vec<usize> = pivots.iter().map(|(_, c, _)| *c).collect();
        pivot_cols.sort_unstable();
        let image = pivot_cols.iter().map(|&j| self.col_dense(j)).collect();

        RankKernelImage {
            rank,
            kernel,
            image,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel_image().rank
    }
}

/// Solver that expresses vectors in the span of a fixed independent set of
/// columns; used to restrict group actions to computed image bases.
pub struct LinSolver {
    basis: ExactMatrix,
    /// Rows `x_k = extract[k] . v` of a left inverse of the basis matrix.
    extract: Vec<Vec<Cyclotomic>>,
}

impl LinSolver {
    /// `basis` must have independent columns.
    pub fn new(basis: ExactMatrix) -> Self {
        let rows = basis.rows();
        let k = basis.cols();
        // Gauss-Jordan on [B | I], keeping only what is needed to read
        // coordinates back off the pivot rows.
        let mut b = basis.to_dense();
        let mut e: Vec<Vec<Cyclotomic>> = (0..rows)
            .map(|i| {
                let mut row = vec![Cyclotomic::zero(1); rows];
                row[i] = Cyclotomic::from_int(1);
                row
            })
            .collect();
        let mut pivot_row_of_col: Vec<usize> = Vec::with_capacity(k);
        let mut used = vec![false; rows];
        for j in 0..k {
            let prow = (0..rows)
                .find(|&i| !used[i] && !b[i][j].is_zero())
                .expect("basis columns are independent");
            let inv = b[prow][j].inverse().expect("pivot nonzero");
            for jj in 0..k {
                b[prow][jj] = b[prow][jj].mul(&inv);
            }
            for jj in 0..rows {
                e[prow][jj] = e[prow][jj].mul(&inv);
            }
            for i in 0..rows {
                if i == prow || b[i][j].is_zero() {
                    continue;
                }
                let f = b[i][j].clone();
                for jj in 0..k {
                    b[i][jj] = b[i][jj].sub(&f.mul(&b[prow][jj]));
                }
                for jj in 0..rows {
                    e[i][jj] = e[i][jj].sub(&f.mul(&e[prow][jj]));
                }
            }
            used[prow] = true;
            pivot_row_of_col.push(prow);
        }
        let extract = pivot_row_of_col.into_iter().map(|r| e[r].clone()).collect();
        LinSolver { basis, extract }
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[(usize, Cyclotomic)]) -> Option<Vec<Cyclotomic>> {
        let coords: Vec<Cyclotomic> = self
            .extract
            .iter()
            .map(|row| {
                let mut acc = Cyclotomic::zero(1);
                for (i, val) in v {
                    if !row[*i].is_zero() {
                        acc = acc.add(&row[*i].mul(val));
                    }
                }
                acc
            })
            .collect();
        // Verify B * coords == v.
        let mut recon: Vec<Cyclotomic> = vec![Cyclotomic::zero(1); self.basis.rows()];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, bv) in self.basis.col(j) {
                recon[*i] = recon[*i].add(&bv.mul(c));
            }
        }
        let mut target = vec![Cyclotomic::zero(1); self.basis.rows()];
        for (i, val) in v {
            target[*i] = target[*i].add(val);
        }
        if recon.iter().zip(&target).all(|(a, b)| a.sub(b).is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}
