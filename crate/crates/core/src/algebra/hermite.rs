//! Row-style Hermite normal form, built incrementally.
//!
//! Entries above each pivot are kept reduced modulo that pivot, which keeps
//! coefficients small. The Smith form's unimodular transforms offer no such
//! control. Lattice bases, kernels and membership tests go through here.

use super::int::Int;
use super::matrix::IntMatrix;

/// Echelon basis of a lattice in `Z^n`: at most one row per pivot column,
/// pivots positive, entries above a pivot in `[0, pivot)`.
#[derive(Clone, Debug, Default)]
pub struct Hermite {
    n: usize,
    rows: Vec<Option<Vec<Int>>>,
}

fn combine(a: &[Int], x: &Int, b: &[Int], y: &Int) -> Vec<Int> {
    a.iter().zip(b).map(|(p, q)| &(p * x) + &(q * y)).collect()
}

impl Hermite {
    pub fn new(n: usize) -> Self {
        Hermite { n, rows: vec![None; n] }
    }

    pub fn from_vectors(n: usize, gens: &[Vec<Int>]) -> Self {
        let mut h = Self::new(n);
        for g in gens {
            h.insert(g.clone());
        }
        h
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    /// Reduces `v` against the rows with pivot column `>= from`.
    fn reduce_from(&self, v: &mut [Int], from: usize) {
        for c in from..self.n {
            if let Some(row) = &self.rows[c] {
                if !v[c].is_zero() {
                    let (q, _) = v[c].div_mod_floor(&row[c]);
                    if !q.is_zero() {
                        for (x, r) in v.iter_mut().zip(row).skip(c) {
                            *x = &*x - &(&q * r);
                        }
                    }
                }
            }
        }
    }

    pub fn insert(&mut self, mut v: Vec<Int>) {
        assert_eq!(v.len(), self.n, "vector of the wrong length");
        let mut c = 0;
        while c < self.n {
            if v[c].is_zero() {
                c += 1;
                continue;
            }
            let Some(row) = self.rows[c].take() else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.reduce_from(&mut v, c + 1);
                self.rows[c] = Some(v);
                self.reduce_above(c);
                return;
            };
            let (a, b) = (&row[c], &v[c]);
            if b.is_divisible_by(a) {
                let q = b.div_exact(a);
                v = combine(&v, &Int::ONE, &row, &-q);
                self.rows[c] = Some(row);
            } else {
                let (g, s, t) = a.extended_gcd(b);
                let (ag, bg) = (a.div_exact(&g), b.div_exact(&g));
                let pivot = combine(&row, &s, &v, &t);
                v = combine(&v, &ag, &row, &-bg);
                let mut pivot = pivot;
                self.reduce_from(&mut pivot, c + 1);
                self.rows[c] = Some(pivot);
                self.reduce_above(c);
            }
            self.reduce_from(&mut v, c + 1);
            c += 1;
        }
    }

    /// Reduces column `c` of every row with an earlier pivot.
    fn reduce_above(&mut self, c: usize) {
        let Some(pivot_row) = self.rows[c].clone() else {
            return;
        };
        for r in 0..c {
            if let Some(row) = &mut self.rows[r] {
                let (q, _) = row[c].div_mod_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                        *x = &*x - &(&q * p);
                    }
                }
            }
        }
    }

    pub fn basis(&self) -> Vec<Vec<Int>> {
        self.rows.iter().flatten().cloned().collect()
    }

    /// Rows whose pivot lies at column `>= from`.
    pub fn basis_from(&self, from: usize) -> Vec<Vec<Int>> {
        self.rows[from.min(self.n)..].iter().flatten().cloned().collect()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let mut v = v.to_vec();
        for c in 0..self.n {
            if v[c].is_zero() {
                continue;
            }
            let Some(row) = &self.rows[c] else {
                return false;
            };
            if !v[c].is_divisible_by(&row[c]) {
                return false;
            }
            let q = v[c].div_exact(&row[c]);
            for (x, r) in v.iter_mut().zip(row).skip(c) {
                *x = &*x - &(&q * r);
            }
        }
        true
    }
}

/// A basis of the lattice spanned by `gens` in `Z^n`.
pub fn hermite_basis(n: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    Hermite::from_vectors(n, gens).basis()
}

/// A basis of `{x ∈ Z^k : A x = 0}` for an `m x k` matrix `A`, from the
/// Hermite form of the rows `(A e_j, e_j)`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let (m, k) = (a.rows(), a.cols());
    let mut h = Hermite::new(m + k);
    for j in 0..k {
        let mut row = a.column(j);
        row.extend((0..k).map(|i| if i == j { Int::ONE } else { Int::ZERO }));
        h.insert(row);
    }
    h.basis_from(m).into_iter().map(|v| v[m..].to_vec()).collect()
}
