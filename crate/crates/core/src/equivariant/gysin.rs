//! The long exact sequence of a double cover `X → X'`
//!
//! `… → H^{p-1}(X'; G_φ) → H^p(X'; G_{-φ}) → H^p(X; G) → H^p(X'; G_φ) → …`
//!
//! built from the coefficient sequence `0 → A → B → C → 0` with
//! `A = G_{-φ}`, `B = (G ⊕ G)_τ`, `C = G_φ`, `i(m) = (m, -m)` and
//! `π(a, b) = a + b`. Cohomology with coefficients in `B` is the cohomology
//! of the cover itself.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianGroup, GroupHom, Int, SparseIntMatrix, Subquotient};
use crate::error::{Error, Result};
use crate::homology::{CochainComplex, Coefficients, ExactSequence, NodeReport, SequenceTerm};

use super::cover::QuotientCover;
use super::local::LocalSystem;
use super::twisted::twisted_cochain_complex;

/// The three twisted cochain complexes and the cochain maps between them.
#[derive(Debug)]
pub struct GysinComplexes {
    pub minus: CochainComplex,
    pub cover: CochainComplex,
    pub plus: CochainComplex,
    k: usize,
}

impl GysinComplexes {
    pub fn new(q: &QuotientCover, l: &LocalSystem) -> Result<Self> {
        Ok(GysinComplexes {
            minus: twisted_cochain_complex(q, &l.negated())?,
            cover: twisted_cochain_complex(q, &l.doubled())?,
            plus: twisted_cochain_complex(q, l)?,
            k: l.rank(),
        })
    }

    fn cells(&self, p: usize) -> usize {
        self.plus.rank(p) / self.k.max(1)
    }

    /// Per-cell block matrix from `k`-coordinates to `2k`-coordinates or back.
    fn blocks(&self, p: usize, entries: &[(usize, usize, i64)], rows_per: usize, cols_per: usize) -> SparseIntMatrix {
        let n = self.cells(p);
        let triplets = (0..n).flat_map(|c| {
            entries
                .iter()
                .map(move |&(r, s, v)| (c * rows_per + r, c * cols_per + s, Int::from(v)))
        });
        SparseIntMatrix::from_triplets(n * rows_per, n * cols_per, triplets)
    }

    /// `i(m) = (m, -m)` on `p`-cochains.
    pub fn inclusion_matrix(&self, p: usize) -> SparseIntMatrix {
        let k = self.k;
        let e: Vec<_> = (0..k).flat_map(|j| [(j, j, 1), (k + j, j, -1)]).collect();
        self.blocks(p, &e, 2 * k, k)
    }

    /// `π(a, b) = a + b` on `p`-cochains.
    pub fn projection_matrix(&self, p: usize) -> SparseIntMatrix {
        let k = self.k;
        let e: Vec<_> = (0..k).flat_map(|j| [(j, j, 1), (j, k + j, 1)]).collect();
        self.blocks(p, &e, k, 2 * k)
    }

    /// The set-theoretic section `a ↦ (a, 0)` of `π`.
    fn section_matrix(&self, p: usize) -> SparseIntMatrix {
        let e: Vec<_> = (0..self.k).map(|j| (j, j, 1)).collect();
        self.blocks(p, &e, 2 * self.k, self.k)
    }

    /// First component `(a, b) ↦ a`, inverting `i` on its image.
    fn first_component(&self, p: usize) -> SparseIntMatrix {
        let e: Vec<_> = (0..self.k).map(|j| (j, j, 1)).collect();
        self.blocks(p, &e, self.k, 2 * self.k)
    }

    /// Cochain-level connecting map `C^p → A^{p+1}`: lift through the
    /// section, apply `δ_B`, and read off the preimage under `i`.
    pub fn connecting_matrix(&self, p: usize) -> SparseIntMatrix {
        self.first_component(p + 1)
            .mul(&self.cover.coboundary(p))
            .mul(&self.section_matrix(p))
    }
}

/// One degree of the sequence: the groups around `H^p(X; G)` and the maps
/// entering and leaving it.
#[derive(Clone, Debug)]
pub struct GysinSegment {
    pub degree: usize,
    /// `H^{p-1}(X'; G_φ)`.
    pub previous_plus: AbelianGroup,
    /// `H^p(X'; G_{-φ})`.
    pub minus: AbelianGroup,
    /// `H^p(X; G)`, computed as `H^p(X'; (G ⊕ G)_τ)`.
    pub cover: AbelianGroup,
    /// `H^p(X'; G_φ)`.
    pub plus: AbelianGroup,
    /// `H^{p-1}(X'; G_φ) → H^p(X'; G_{-φ})`.
    pub connecting: GroupHom,
    /// `H^p(X'; G_{-φ}) → H^p(X; G)`.
    pub inclusion: GroupHom,
    /// `H^p(X; G) → H^p(X'; G_φ)`.
    pub projection: GroupHom,
}

/// Segments for degrees `0..=p_max + 1`; `p_max` defaults to `dim X + 1`.
/// The extra segment supplies the map leaving `H^{p_max}(X'; G_φ)`.
pub fn gysin_sequence(q: &QuotientCover, l: &LocalSystem, p_max: Option<usize>) -> Result<Vec<GysinSegment>> {
    let p_max = p_max.unwrap_or(q.len());
    let cx = GysinComplexes::new(q, l)?;
    let mut segments = Vec::with_capacity(p_max + 2);
    for p in 0..=p_max + 1 {
        let minus = cx.minus.presentation(p)?;
        let cover = cx.cover.presentation(p)?;
        let plus = cx.plus.presentation(p)?;
        let connecting = match p.checked_sub(1) {
            Some(prev) => GroupHom::induced(cx.plus.presentation(prev)?, minus.clone(), &cx.connecting_matrix(prev), prev)?,
            None => GroupHom::zero(Arc::new(Subquotient::new(0, &[], &[])?), minus.clone()),
        };
        let inclusion = GroupHom::induced(minus.clone(), cover.clone(), &cx.inclusion_matrix(p), p)?;
        let projection = GroupHom::induced(cover.clone(), plus.clone(), &cx.projection_matrix(p), p)?;
        segments.push(GysinSegment {
            degree: p,
            previous_plus: connecting.domain.group().clone(),
            minus: minus.group().clone(),
            cover: cover.group().clone(),
            plus: plus.group().clone(),
            connecting,
            inclusion,
            projection,
        });
    }
    Ok(segments)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeReport>,
    pub pass: bool,
}

impl ExactnessReport {
    pub fn failures(&self) -> impl Iterator<Item = &NodeReport> {
        self.nodes.iter().filter(|n| !n.pass)
    }
}

/// Names of the three nodes in each degree.
pub const NODE_MINUS: &str = "H(X';G_-phi)";
pub const NODE_COVER: &str = "H(X;G)";
pub const NODE_PLUS: &str = "H(X';G_phi)";

/// Checks `image = kernel` at every node that has an outgoing map.
pub fn verify_exactness(segments: &[GysinSegment]) -> Result<ExactnessReport> {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for (n, s) in segments.iter().enumerate() {
        if n > 0 {
            maps.push(s.connecting.clone());
        }
        for (label, group) in [(NODE_MINUS, &s.minus), (NODE_COVER, &s.cover), (NODE_PLUS, &s.plus)] {
            terms.push(SequenceTerm {
                label: label.into(),
                degree: s.degree,
                group: group.clone(),
            });
        }
        maps.push(s.inclusion.clone());
        maps.push(s.projection.clone());
    }
    let nodes = ExactSequence::new(terms, maps)?.verify()?;
    let pass = nodes.iter().all(|n| n.pass);
    Ok(ExactnessReport { nodes, pass })
}

/// Cochains of the cover with coefficients in `G`, one copy of the integral
/// complex per cyclic summand.
pub fn cover_cochain_complex(q: &QuotientCover, l: &LocalSystem) -> Result<CochainComplex> {
    let base = CochainComplex::of_chain(q.cover().cw().chain(), Coefficients::Integers)?;
    let k = l.rank();
    let coboundaries = (0..base.len())
        .map(|p| {
            let d = base.coboundary(p);
            let (rows, cols) = (d.rows(), d.cols());
            let triplets: Vec<_> = (0..k)
                .flat_map(|j| d.entries().map(move |(r, c, v)| (j * rows + r, j * cols + c, v.clone())))
                .collect();
            SparseIntMatrix::from_triplets(k * rows, k * cols, triplets)
        })
        .collect();
    let orders = (0..base.len())
        .map(|p| l.order_ints().iter().flat_map(|o| std::iter::repeat_n(o.clone(), base.rank(p))).collect())
        .collect();
    CochainComplex::new(coboundaries, orders)
}

/// `H^p(X; G)` computed directly on the cover.
pub fn cover_cohomology(q: &QuotientCover, l: &LocalSystem, p: usize) -> Result<AbelianGroup> {
    cover_cochain_complex(q, l)?.cohomology(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupComparison {
    pub degree: usize,
    pub left: AbelianGroup,
    pub right: AbelianGroup,
    pub equal: bool,
}

/// Compares `H^p(X; G)` computed on the cover with `H^p(X'; (G ⊕ G)_τ)`.
pub fn pullback_check(q: &QuotientCover, l: &LocalSystem, p_max: Option<usize>) -> Result<Vec<GroupComparison>> {
    let p_max = p_max.unwrap_or(q.len());
    let direct = cover_cochain_complex(q, l)?.cohomology_all()?;
    let doubled = twisted_cochain_complex(q, &l.doubled())?.cohomology_all()?;
    (0..=p_max)
        .map(|p| {
            let left = direct.get(p);
            let right = doubled.get(p);
            Ok::<_, Error>(GroupComparison {
                degree: p,
                equal: left == right,
                left,
                right,
            })
        })
        .collect()
}

/// With 2 invertible in `G`, checks
/// `H^p(X; G) ≅ H^p(X'; G_{-φ}) ⊕ H^p(X'; G_φ)` for `p = 0..=p_max`.
pub fn splitting_check(q: &QuotientCover, l: &LocalSystem, p_max: Option<usize>) -> Result<Vec<GroupComparison>> {
    if !l.two_invertible() {
        return Err(Error::TwoNotInvertible(l.to_string()));
    }
    let p_max = p_max.unwrap_or(q.len());
    let direct = cover_cochain_complex(q, l)?.cohomology_all()?;
    let minus = twisted_cochain_complex(q, &l.negated())?.cohomology_all()?;
    let plus = twisted_cochain_complex(q, l)?.cohomology_all()?;
    (0..=p_max)
        .map(|p| {
            let left = direct.get(p);
            let right = minus.get(p).direct_sum(&plus.get(p));
            Ok::<_, Error>(GroupComparison {
                degree: p,
                equal: left == right,
                left,
                right,
            })
        })
        .collect()
}
