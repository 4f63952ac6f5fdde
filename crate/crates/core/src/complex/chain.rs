use std::sync::OnceLock;

use crate::algebra::sparse::invariant_factors;
use crate::algebra::{AbelianGroup, Int, SparseIntMatrix};
use crate::error::{Error, Result};

/// Boundary matrices `∂_d : C_d → C_{d-1}` of a finite free chain complex.
///
/// Invariant factors of each `∂_d` are computed on first use and cached.
#[derive(Debug)]
pub struct ChainComplex {
    boundaries: Vec<SparseIntMatrix>,
    factors: Vec<OnceLock<Vec<Int>>>,
}

impl Clone for ChainComplex {
    fn clone(&self) -> Self {
        ChainComplex {
            boundaries: self.boundaries.clone(),
            factors: self.factors.clone(),
        }
    }
}

impl ChainComplex {
    /// `boundaries[d]` is `∂_d`; `boundaries[0]` has zero rows and fixes the
    /// number of vertices. Trailing empty dimensions are trimmed.
    pub fn new(mut boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if let Some(b0) = boundaries.first() {
            if b0.rows() != 0 {
                return Err(Error::DimensionMismatch("∂_0 must map to the zero module".into()));
            }
        }
        for d in 1..boundaries.len() {
            if boundaries[d].rows() != boundaries[d - 1].cols() {
                return Err(Error::DimensionMismatch(format!(
                    "∂_{d} has {} rows but C_{} has rank {}",
                    boundaries[d].rows(),
                    d - 1,
                    boundaries[d - 1].cols()
                )));
            }
            if !boundaries[d - 1].mul(&boundaries[d]).is_zero() {
                return Err(Error::ChainCondition { dim: d });
            }
        }
        while boundaries.last().is_some_and(|b| b.cols() == 0) {
            boundaries.pop();
        }
        let factors = (0..boundaries.len()).map(|_| OnceLock::new()).collect();
        Ok(ChainComplex { boundaries, factors })
    }

    pub fn zero() -> Self {
        ChainComplex {
            boundaries: Vec::new(),
            factors: Vec::new(),
        }
    }

    /// Number of dimensions carrying cells (top dimension plus one).
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Rank of `C_d`.
    pub fn rank(&self, d: usize) -> usize {
        self.boundaries.get(d).map_or(0, SparseIntMatrix::cols)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(SparseIntMatrix::cols).collect()
    }

    /// `∂_d`, or `None` when `C_d = 0`.
    pub fn boundary(&self, d: usize) -> Option<&SparseIntMatrix> {
        self.boundaries.get(d)
    }

    /// `∂_d` with an explicit zero matrix outside the stored range.
    pub fn boundary_or_zero(&self, d: usize) -> SparseIntMatrix {
        match self.boundaries.get(d) {
            Some(b) => b.clone(),
            None => SparseIntMatrix::zeros(if d == 0 { 0 } else { self.rank(d - 1) }, 0),
        }
    }

    /// Invariant factors (units included) of `∂_d`.
    pub fn boundary_factors(&self, d: usize) -> Result<&[Int]> {
        let Some(slot) = self.factors.get(d) else {
            return Ok(&[]);
        };
        if let Some(f) = slot.get() {
            return Ok(f);
        }
        let f = invariant_factors(&self.boundaries[d])?;
        Ok(slot.get_or_init(|| f))
    }

    /// `ker ∂_d / im ∂_{d+1}`.
    pub fn homology(&self, d: usize) -> Result<AbelianGroup> {
        let out = self.boundary_factors(d)?.len();
        let incoming = self.boundary_factors(d + 1)?;
        let mut g = AbelianGroup::from_cyclic_orders(incoming);
        g.free_rank = self.rank(d) - out - incoming.len();
        Ok(g)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The complex spanned by the listed cells of each dimension (sorted
    /// indices). For a subcomplex this is its chain complex; for the
    /// complement of a subcomplex it is the relative chain complex.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> ChainComplex {
        let boundaries = (0..self.len())
            .map(|d| {
                let cols = keep.get(d).map_or(&[][..], Vec::as_slice);
                if d == 0 {
                    SparseIntMatrix::zeros(0, cols.len())
                } else {
                    let rows = keep.get(d - 1).map_or(&[][..], Vec::as_slice);
                    self.boundaries[d].submatrix(rows, cols)
                }
            })
            .collect();
        ChainComplex::new(boundaries).expect("restriction to a union of cells keeps ∂∂ = 0 on subcomplexes and quotients")
    }
}
