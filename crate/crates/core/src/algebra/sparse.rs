//! Sparse elimination over `Z` (and `GF(2)`) that reduces a matrix to a
//! diagonal by unimodular row and column operations without recording the
//! transforms.
//!
//! It yields the invariant factors of large boundary matrices, and it decides
//! integer solvability of `A x = b` for "passenger" right-hand sides that ride
//! along with the row operations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::int::Int;
use super::matrix::SparseIntMatrix;
use crate::budget;
use crate::error::Result;

/// Scalars the eliminator can work over: a Euclidean ring with a size order.
pub trait ElimScalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Quotient and remainder with `|r| < |d|` (remainder zero over a field).
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Self;
    /// Orders by absolute value.
    fn size_cmp(&self, other: &Self) -> Ordering;
}

impl ElimScalar for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Int::is_unit(self)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.div_mod_floor(d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Self {
        self - &(q * b)
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.abs().cmp(&other.abs()),
        }
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Gf2(pub bool);

impl ElimScalar for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn div_rem(&self, _d: &Self) -> (Self, Self) {
        (*self, Gf2(false))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Self {
        Gf2(self.0 ^ (q.0 & b.0))
    }
    fn size_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Outcome of a full elimination.
#[derive(Clone, Debug)]
pub struct Elimination<S> {
    /// The diagonal left behind, in pivot order (not a divisibility chain).
    pub pivots: Vec<S>,
    /// For each passenger `b`, whether `A x = b` has a solution.
    pub solvable: Vec<bool>,
}

struct Eliminator<S: ElimScalar> {
    rows: Vec<Vec<(u32, S)>>,
    col_rows: Vec<HashSet<u32>>,
    col_queue: BTreeSet<(usize, u32)>,
    row_queue: BTreeSet<(usize, u32)>,
    passengers: Vec<Vec<S>>,
}

/// How many of the sparsest rows and columns the pivot search inspects.
const SEARCH_WIDTH: usize = 4;

impl<S: ElimScalar> Eliminator<S> {
    fn new(nrows: usize, ncols: usize, entries: Vec<(usize, usize, S)>, passengers: Vec<Vec<S>>) -> Self {
        let mut rows: Vec<Vec<(u32, S)>> = vec![Vec::new(); nrows];
        let mut col_rows = vec![HashSet::new(); ncols];
        for (r, c, v) in entries {
            if v.is_zero() {
                continue;
            }
            rows[r].push((c as u32, v));
            col_rows[c].insert(r as u32);
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
        }
        let col_queue = col_rows
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(c, s)| (s.len(), c as u32))
            .collect();
        let row_queue = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(r, row)| (row.len(), r as u32))
            .collect();
        for p in &passengers {
            assert_eq!(p.len(), nrows, "passenger length must equal the row count");
        }
        Eliminator {
            rows,
            col_rows,
            col_queue,
            row_queue,
            passengers,
        }
    }

    fn entry(&self, r: usize, c: u32) -> Option<&S> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
    }

    fn col_inserted(&mut self, c: u32, r: u32) {
        let old = self.col_rows[c as usize].len();
        if self.col_rows[c as usize].insert(r) {
            if old > 0 {
                self.col_queue.remove(&(old, c));
            }
            self.col_queue.insert((old + 1, c));
        }
    }

    fn col_removed(&mut self, c: u32, r: u32) {
        let old = self.col_rows[c as usize].len();
        if self.col_rows[c as usize].remove(&r) {
            self.col_queue.remove(&(old, c));
            if old > 1 {
                self.col_queue.insert((old - 1, c));
            }
        }
    }

    /// Stores a new row `r` whose previous length was `old_len`.
    fn replace_row(&mut self, r: usize, old_len: usize, row: Vec<(u32, S)>) {
        if old_len > 0 {
            self.row_queue.remove(&(old_len, r as u32));
        }
        if !row.is_empty() {
            self.row_queue.insert((row.len(), r as u32));
        }
        self.rows[r] = row;
    }

    /// `row[r] -= q * row[p]`, passengers included.
    fn row_axpy(&mut self, r: usize, p: usize, q: &S) {
        let old = std::mem::take(&mut self.rows[r]);
        let old_len = old.len();
        let prow = std::mem::take(&mut self.rows[p]);
        let mut merged = Vec::with_capacity(old.len() + prow.len());
        let mut added = Vec::new();
        let mut removed = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < prow.len() {
            let ci = old.get(i).map(|e| e.0);
            let cj = prow.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(a), Some(b)) if a == b => {
                    let v = old[i].1.sub_mul(q, &prow[j].1);
                    if v.is_zero() {
                        removed.push(a);
                    } else {
                        merged.push((a, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    merged.push(old[i].clone());
                    i += 1;
                }
                (Some(a), None) => {
                    merged.push((a, old[i].1.clone()));
                    i += 1;
                }
                (_, Some(b)) => {
                    let v = S::zero().sub_mul(q, &prow[j].1);
                    if !v.is_zero() {
                        added.push(b);
                        merged.push((b, v));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.rows[p] = prow;
        self.replace_row(r, old_len, merged);
        for c in added {
            self.col_inserted(c, r as u32);
        }
        for c in removed {
            self.col_removed(c, r as u32);
        }
        for pass in &mut self.passengers {
            if !pass[p].is_zero() {
                pass[r] = pass[r].sub_mul(q, &pass[p]);
            }
        }
    }

    /// `col[j] -= q * col[c]` (passengers are unaffected by column operations).
    fn col_axpy(&mut self, j: u32, c: u32, q: &S) {
        let mut rows: Vec<u32> = self.col_rows[c as usize].iter().copied().collect();
        rows.sort_unstable();
        for r in rows {
            let a_rc = self.entry(r as usize, c).cloned().expect("column index out of sync");
            let mut row = std::mem::take(&mut self.rows[r as usize]);
            let old_len = row.len();
            match row.binary_search_by_key(&j, |(k, _)| *k) {
                Ok(k) => {
                    let v = row[k].1.sub_mul(q, &a_rc);
                    if v.is_zero() {
                        row.remove(k);
                        self.col_removed(j, r);
                    } else {
                        row[k].1 = v;
                    }
                }
                Err(k) => {
                    let v = S::zero().sub_mul(q, &a_rc);
                    if !v.is_zero() {
                        row.insert(k, (j, v));
                        self.col_inserted(j, r);
                    }
                }
            }
            self.replace_row(r as usize, old_len, row);
        }
    }

    fn markowitz_cost(&self, r: u32, c: u32) -> usize {
        let rc = self.rows[r as usize].len();
        let cc = self.col_rows[c as usize].len();
        (rc - 1) * (cc - 1)
    }

    /// Restricted Markowitz search over the sparsest few rows and columns.
    fn choose_pivot(&self) -> Option<(usize, u32)> {
        let mut best: Option<(usize, S, u32, u32)> = None;
        let consider = |r: u32, c: u32, v: &S, best: &mut Option<(usize, S, u32, u32)>| {
            let cost = self.markowitz_cost(r, c);
            let better = match best {
                None => true,
                Some((bc, bv, br, bcol)) => cost
                    .cmp(bc)
                    .then_with(|| v.size_cmp(bv))
                    .then_with(|| (r, c).cmp(&(*br, *bcol)))
                    == Ordering::Less,
            };
            if better {
                *best = Some((cost, v.clone(), r, c));
            }
        };
        for &(_, c) in self.col_queue.iter().take(SEARCH_WIDTH) {
            for &r in &self.col_rows[c as usize] {
                let v = self.entry(r as usize, c).expect("column index out of sync");
                consider(r, c, v, &mut best);
            }
        }
        for &(_, r) in self.row_queue.iter().take(SEARCH_WIDTH) {
            for (c, v) in &self.rows[r as usize] {
                consider(r, *c, v, &mut best);
            }
        }
        best.map(|(_, _, r, c)| (r as usize, c))
    }

    fn sorted_col(&self, c: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self.col_rows[c as usize].iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Moves the pivot until it divides its whole row and column.
    fn settle_pivot(&mut self, mut p: usize, mut c: u32) -> (usize, u32) {
        'outer: loop {
            let v = self.entry(p, c).cloned().expect("pivot vanished");
            if v.is_unit() {
                return (p, c);
            }
            for r in self.sorted_col(c) {
                if r as usize == p {
                    continue;
                }
                let a = self.entry(r as usize, c).cloned().unwrap();
                let (q, rem) = a.div_rem(&v);
                if !rem.is_zero() {
                    self.row_axpy(r as usize, p, &q);
                    p = r as usize;
                    continue 'outer;
                }
            }
            let row: Vec<(u32, S)> = self.rows[p].clone();
            for (j, a) in row {
                if j == c {
                    continue;
                }
                let (q, rem) = a.div_rem(&v);
                if !rem.is_zero() {
                    self.col_axpy(j, c, &q);
                    c = j;
                    continue 'outer;
                }
            }
            return (p, c);
        }
    }

    fn run(mut self) -> Result<Elimination<S>> {
        let nrows = self.rows.len();
        let mut pivots = Vec::new();
        let mut pivoted = vec![false; nrows];
        let mut solvable = vec![true; self.passengers.len()];
        let mut steps = 0usize;
        while let Some((p0, c0)) = self.choose_pivot() {
            steps += 1;
            if steps.is_multiple_of(512) {
                budget::check()?;
            }
            let (p, c) = self.settle_pivot(p0, c0);
            let v = self.entry(p, c).cloned().unwrap();
            for r in self.sorted_col(c) {
                if r as usize == p {
                    continue;
                }
                let a = self.entry(r as usize, c).cloned().unwrap();
                let (q, _) = a.div_rem(&v);
                self.row_axpy(r as usize, p, &q);
            }
            for (k, pass) in self.passengers.iter().enumerate() {
                if !pass[p].div_rem(&v).1.is_zero() {
                    solvable[k] = false;
                }
            }
            let row = std::mem::take(&mut self.rows[p]);
            self.row_queue.remove(&(row.len(), p as u32));
            for (j, _) in &row {
                self.col_removed(*j, p as u32);
            }
            pivoted[p] = true;
            pivots.push(v);
        }
        for (k, pass) in self.passengers.iter().enumerate() {
            if pass
                .iter()
                .enumerate()
                .any(|(r, b)| !pivoted[r] && !b.is_zero())
            {
                solvable[k] = false;
            }
        }
        Ok(Elimination { pivots, solvable })
    }
}

/// Eliminates `a` to diagonal form, carrying the `passengers` through the row
/// operations.
pub fn eliminate(a: &SparseIntMatrix, passengers: Vec<Vec<Int>>) -> Result<Elimination<Int>> {
    let entries = a.entries().map(|(r, c, v)| (r, c, v.clone())).collect();
    Eliminator::new(a.rows(), a.cols(), entries, passengers).run()
}

/// The same elimination over `GF(2)` of `a mod 2`.
pub fn eliminate_gf2(a: &SparseIntMatrix, passengers: Vec<Vec<Gf2>>) -> Result<Elimination<Gf2>> {
    let two = Int::from(2);
    let entries = a
        .entries()
        .filter(|(_, _, v)| !v.is_divisible_by(&two))
        .map(|(r, c, _)| (r, c, Gf2(true)))
        .collect();
    Eliminator::new(a.rows(), a.cols(), entries, passengers).run()
}

/// Sorts a diagonal into Smith form: the returned list is the invariant
/// factor chain `d_1 | d_2 | …` (all positive, units included).
pub fn normalize_diagonal(diag: &[Int]) -> Vec<Int> {
    let units = diag.iter().filter(|d| d.is_unit()).count();
    let mut rest: Vec<Int> = diag.iter().filter(|d| !d.is_unit()).map(Int::abs).collect();
    rest.sort();
    let n = rest.len();
    for i in 0..n {
        for j in i + 1..n {
            if rest[j].is_divisible_by(&rest[i]) {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![Int::ONE; units];
    out.extend(rest);
    out
}

/// Invariant factors (with units) of a sparse integer matrix.
pub fn invariant_factors(a: &SparseIntMatrix) -> Result<Vec<Int>> {
    let elim = eliminate(a, Vec::new())?;
    Ok(normalize_diagonal(&elim.pivots))
}

/// Rank over `GF(2)`.
pub fn rank_gf2(a: &SparseIntMatrix) -> Result<usize> {
    Ok(eliminate_gf2(a, Vec::new())?.pivots.len())
}
