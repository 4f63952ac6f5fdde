//! Smith normal form with unimodular transforms, `U · A · V = D`.
//!
//! This is the dense route used wherever explicit bases are needed (kernels,
//! images, solving, group presentations). Large matrices whose invariant
//! factors are all that matter go through [`super::sparse`] instead.

use super::int::Int;
use super::matrix::{IntMatrix, SparseIntMatrix};

#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_r`, all positive.
    pub diagonal: Vec<Int>,
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// The full `rows x cols` diagonal matrix `D`.
    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    /// Columns of `V` spanning the integer kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        (self.rank()..self.cols).map(|c| self.v.column(c)).collect()
    }

    /// A basis of the column lattice of `A`: `d_i · U⁻¹ e_i`.
    pub fn image_basis(&self) -> Vec<Vec<Int>> {
        self.diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| self.u_inv.column(i).iter().map(|x| x * d).collect())
            .collect()
    }

    /// Some integer `y` with `A y = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let ub = self.u.mul_vec(b);
        let mut z = vec![Int::ZERO; self.cols];
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.rank() {
                let (q, r) = ubi.div_mod_floor(&self.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}

/// A matrix under row operations, with the accumulated transform and
/// optionally its inverse.
struct RowFrame<'a> {
    a: &'a mut IntMatrix,
    t: &'a mut IntMatrix,
    t_inv: Option<&'a mut IntMatrix>,
}

impl RowFrame<'_> {
    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        self.a.add_row_multiple(dst, src, q);
        self.t.add_row_multiple(dst, src, q);
        if let Some(inv) = &mut self.t_inv {
            inv.add_col_multiple(src, dst, &-q);
        }
    }

    /// Rows `(r, i)` become `M (r, i)` for `M = [x y; u v]` with det 1.
    fn combine(&mut self, r: usize, i: usize, [x, y, u, v]: [&Int; 4]) {
        self.a.combine_rows(r, i, [x, y, u, v]);
        self.t.combine_rows(r, i, [x, y, u, v]);
        if let Some(inv) = &mut self.t_inv {
            inv.combine_cols(r, i, [v, &-u, &-y, x]);
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.t.swap_rows(i, j);
        if let Some(inv) = &mut self.t_inv {
            inv.swap_cols(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.t.negate_row(i);
        if let Some(inv) = &mut self.t_inv {
            inv.negate_col(i);
        }
    }

    /// Brings `a` to row echelon form by inserting one row at a time into a
    /// reduced echelon basis: every new pivot row is reduced against later
    /// pivots, and earlier pivot rows are reduced against it.
    fn hermite(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut pivot_row: Vec<Option<usize>> = vec![None; n];
        for i in 0..m {
            let mut c = 0;
            while c < n {
                if self.a[(i, c)].is_zero() {
                    c += 1;
                    continue;
                }
                let Some(p) = pivot_row[c] else {
                    if self.a[(i, c)].is_negative() {
                        self.negate(i);
                    }
                    pivot_row[c] = Some(i);
                    self.reduce_from(i, c + 1, &pivot_row);
                    self.reduce_above(c, &pivot_row);
                    break;
                };
                let (pa, b) = (self.a[(p, c)].clone(), self.a[(i, c)].clone());
                if b.is_divisible_by(&pa) {
                    self.add_row(i, p, &-b.div_exact(&pa));
                } else {
                    let (g, s, t) = pa.extended_gcd(&b);
                    let (pg, bg) = (pa.div_exact(&g), b.div_exact(&g));
                    self.combine(p, i, [&s, &t, &-bg, &pg]);
                    self.reduce_from(p, c + 1, &pivot_row);
                    self.reduce_above(c, &pivot_row);
                }
                c += 1;
            }
        }
        // Physically order the rows by pivot column, zero rows last. Without
        // this, states like `[[0, 3], [3, 1]]` are fixed by both passes.
        let order: Vec<usize> = pivot_row.iter().flatten().copied().collect();
        let mut at: Vec<usize> = (0..m).collect();
        for (k, &r) in order.iter().enumerate() {
            let pos = at.iter().position(|&x| x == r).expect("row present");
            if pos != k {
                self.swap(k, pos);
                at.swap(k, pos);
            }
        }
    }

    fn reduce_from(&mut self, row: usize, from: usize, pivot_row: &[Option<usize>]) {
        for c in from..pivot_row.len() {
            if let Some(p) = pivot_row[c] {
                if p != row && !self.a[(row, c)].is_zero() {
                    let (q, _) = self.a[(row, c)].div_mod_floor(&self.a[(p, c)]);
                    self.add_row(row, p, &-q);
                }
            }
        }
    }

    fn reduce_above(&mut self, c: usize, pivot_row: &[Option<usize>]) {
        let Some(p) = pivot_row[c] else {
            return;
        };
        for k in pivot_row[..c].iter().flatten().copied() {
            if !self.a[(k, c)].is_zero() {
                let (q, _) = self.a[(k, c)].div_mod_floor(&self.a[(p, c)]);
                self.add_row(k, p, &-q);
            }
        }
    }
}

/// Alternating row and column Hermite reductions until the matrix is
/// diagonal up to permutation, followed by a gcd/lcm pass on the diagonal.
/// Each Hermite step keeps its entries reduced, which avoids the coefficient
/// explosion of pivot-by-pivot elimination.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn rows(&mut self) -> RowFrame<'_> {
        RowFrame {
            a: &mut self.a,
            t: &mut self.u,
            t_inv: Some(&mut self.u_inv),
        }
    }

    fn column_hermite(&mut self) {
        let mut at = self.a.transpose();
        let mut vt = self.v.transpose();
        RowFrame {
            a: &mut at,
            t: &mut vt,
            t_inv: None,
        }
        .hermite();
        self.a = at.transpose();
        self.v = vt.transpose();
    }

    /// Positions of the nonzero entries when no row or column holds two.
    fn diagonal_support(&self) -> Option<Vec<(usize, usize)>> {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut seen_col = vec![false; n];
        let mut out = Vec::new();
        for r in 0..m {
            let mut found = None;
            for c in 0..n {
                if !self.a[(r, c)].is_zero() {
                    if found.is_some() || seen_col[c] {
                        return None;
                    }
                    found = Some(c);
                    seen_col[c] = true;
                }
            }
            if let Some(c) = found {
                out.push((r, c));
            }
        }
        Some(out)
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// Turns `diag(d_i, d_j)` into `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let (di, dj) = (self.a[(i, i)].clone(), self.a[(j, j)].clone());
        if dj.is_divisible_by(&di) {
            return;
        }
        self.a.add_col_multiple(i, j, &Int::ONE);
        self.v.add_col_multiple(i, j, &Int::ONE);
        let (g, s, t) = di.extended_gcd(&dj);
        let (ig, jg) = (di.div_exact(&g), dj.div_exact(&g));
        self.rows().combine(i, j, [&s, &t, &-jg, &ig]);
        let q = -self.a[(i, j)].div_exact(&g);
        self.a.add_col_multiple(j, i, &q);
        self.v.add_col_multiple(j, i, &q);
    }

    fn run(mut self) -> SnfDecomposition {
        let (m, n) = (self.a.rows(), self.a.cols());
        let support = loop {
            self.rows().hermite();
            if let Some(s) = self.diagonal_support() {
                break s;
            }
            self.column_hermite();
            if let Some(s) = self.diagonal_support() {
                break s;
            }
        };
        // Move the k-th nonzero entry to (k, k).
        let mut row_at: Vec<usize> = (0..m).collect();
        let mut col_at: Vec<usize> = (0..n).collect();
        for (k, &(r, c)) in support.iter().enumerate() {
            let (r, c) = (row_at.iter().position(|&x| x == r).unwrap(), col_at.iter().position(|&x| x == c).unwrap());
            self.rows().swap(k, r);
            row_at.swap(k, r);
            self.swap_cols(k, c);
            col_at.swap(k, c);
        }
        let rank = support.len();
        for k in 0..rank {
            if self.a[(k, k)].is_negative() {
                self.rows().negate(k);
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                self.gcd_lcm(i, j);
            }
        }
        for k in 0..rank {
            if self.a[(k, k)].is_negative() {
                self.rows().negate(k);
            }
        }
        let diagonal = (0..rank).map(|k| self.a[(k, k)].clone()).collect();
        SnfDecomposition {
            diagonal,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            rows: m,
            cols: n,
        }
    }
}

/// Smith normal form of a dense matrix, deterministic for a fixed input.
pub fn smith_normal_form_dense(a: &IntMatrix) -> SnfDecomposition {
    Reducer {
        a: a.clone(),
        u: IntMatrix::identity(a.rows()),
        u_inv: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
    }
    .run()
}

pub fn smith_normal_form(a: &SparseIntMatrix) -> SnfDecomposition {
    smith_normal_form_dense(&a.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let snf = smith_normal_form_dense(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d_matrix());
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        for w in snf.diagonal.windows(2) {
            assert!(w[1].is_divisible_by(&w[0]));
        }
        snf
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so D = diag(2, 4).
        let snf = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.diagonal, vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let snf = check(&IntMatrix::zeros(3, 2));
        assert!(snf.diagonal.is_empty());
        assert_eq!(snf.u, IntMatrix::identity(3));
        assert_eq!(snf.v, IntMatrix::identity(2));
    }

    #[test]
    fn identity_is_its_own_form() {
        let snf = check(&IntMatrix::identity(4));
        assert_eq!(snf.diagonal, vec![Int::ONE; 4]);
    }

    #[test]
    fn echelon_rows_out_of_order() {
        let d = check(&IntMatrix::from_rows(&[vec![-1, 1, 1], vec![-2, 2, -1], vec![0, -3, -1]]));
        assert_eq!(d.diagonal, vec![Int::ONE, Int::ONE, Int::from(9)]);
    }

    #[test]
    fn empty_shapes() {
        let snf = check(&IntMatrix::zeros(3, 0));
        assert_eq!(snf.rank(), 0);
        let snf = check(&IntMatrix::zeros(0, 4));
        assert_eq!(snf.kernel_basis().len(), 4);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let snf = check(&a);
        for k in snf.kernel_basis() {
            assert!(a.mul_vec(&k).iter().all(Int::is_zero));
        }
        let b = vec![Int::from(2), Int::from(1)];
        let y = snf.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&y), b);
        assert!(snf.solve(&[Int::from(1), Int::from(0)]).is_none());
    }
}
