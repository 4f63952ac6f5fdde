//! Predicates about equivariant maps from a deleted product to spheres, and
//! the homological inputs they rest on.
//!
//! An embedding `K → R^m` yields an equivariant map `K̃ → S^{m-1}`. Integral
//! vanishing of `H^i(K̃)` for `i ≥ m` kills every obstruction group, so such a
//! map exists; a nonzero `m`-fold power of the first Stiefel-Whitney class of
//! the cover rules one out.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{eliminate_gf2, AbelianGroup, Gf2, Int, SparseIntMatrix};
use crate::complex::{CellularPair, SimplicialComplex};
use crate::deleted::{deleted_pair, deleted_product, DeletedProduct};
use crate::equivariant::{quotient_cover, FreeInvolutionComplex, GysinComplexes, LocalSystem, QuotientCover};
use crate::error::{Error, Result};
use crate::homology::{homology_all, CochainComplex, Coefficients, GradedGroups};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    MapExists,
    NoEquivariantMap,
    Unknown,
}

/// Printed alongside every positive verdict.
pub const MAP_EXISTS_CAVEAT: &str =
    "an equivariant map to the sphere exists; this does not imply that the complex embeds in R^m";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedVerdict {
    pub m: usize,
    pub verdict: Verdict,
    /// `H^i(K̃; Z)` for `i ≥ m`.
    pub groups: GradedGroups,
    /// Lower bound for the Z₂-index, when it was computed.
    pub index: Option<usize>,
    pub note: Option<String>,
}

/// Integral cohomology of the deleted product together with its Z₂-index.
/// Every verdict for `K` is read off from this.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedAnalysis {
    pub cohomology: GradedGroups,
    pub index: Option<usize>,
}

impl EmbedAnalysis {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let d = deleted_product(k);
        let cohomology = deleted_cohomology(&d)?;
        let index = if d.is_empty() { None } else { Some(index_of_cover(&cover_of(&d)?)?) };
        Ok(EmbedAnalysis { cohomology, index })
    }

    fn groups_from(&self, m: usize) -> GradedGroups {
        GradedGroups {
            groups: self.cohomology.groups.range(m..).map(|(&p, g)| (p, g.clone())).collect(),
        }
    }

    /// The vanishing test alone: `MapExists` or `Unknown`.
    pub fn sufficiency(&self, m: usize) -> EmbedVerdict {
        let groups = self.groups_from(m);
        let exists = groups.vanishes_from(m);
        EmbedVerdict {
            m,
            verdict: if exists { Verdict::MapExists } else { Verdict::Unknown },
            groups,
            index: None,
            note: exists.then(|| MAP_EXISTS_CAVEAT.to_string()),
        }
    }

    pub fn verdict(&self, m: usize) -> EmbedVerdict {
        if let Some(h) = self.index.filter(|&h| h >= m) {
            return EmbedVerdict {
                m,
                verdict: Verdict::NoEquivariantMap,
                groups: self.groups_from(m),
                index: Some(h),
                note: Some(format!("the Z2-index is at least {h} >= m, so the complex does not embed in R^{m}")),
            };
        }
        EmbedVerdict {
            index: self.index,
            ..self.sufficiency(m)
        }
    }
}

fn deleted_cohomology(d: &DeletedProduct) -> Result<GradedGroups> {
    CochainComplex::of_chain(d.cw().chain(), Coefficients::Integers)?.cohomology_all()
}

fn cover_of(d: &DeletedProduct) -> Result<QuotientCover> {
    quotient_cover(&FreeInvolutionComplex::from_deleted_product(d)?)
}

/// Decides the existence of an equivariant map `K̃ → S^{m-1}` from
/// `H^i(K̃; Z) = 0` for all `i ≥ m`; nonvanishing gives `Unknown`.
pub fn equivariant_map_sufficiency(k: &SimplicialComplex, m: usize) -> Result<EmbedVerdict> {
    if m == 0 {
        return Err(Error::InvalidArgument("target dimension must be positive".into()));
    }
    let cx = CochainComplex::of_chain(deleted_product(k).cw().chain(), Coefficients::Integers)?;
    let groups = (m.saturating_sub(1)..cx.len())
        .into_par_iter()
        .map(|p| cx.cohomology(p).map(|g| (p, g)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(p, _)| *p >= m)
        .collect();
    let analysis = EmbedAnalysis {
        cohomology: GradedGroups { groups },
        index: None,
    };
    Ok(analysis.sufficiency(m))
}

fn gf2_vector(v: &[Int]) -> Vec<Gf2> {
    let two = Int::from(2);
    v.iter().map(|x| Gf2(!x.is_divisible_by(&two))).collect()
}

fn is_gf2_coboundary(incoming: &SparseIntMatrix, u: &[Gf2]) -> Result<bool> {
    if u.iter().all(|x| !x.0) {
        return Ok(true);
    }
    Ok(eliminate_gf2(incoming, vec![u.to_vec()])?.solvable[0])
}

/// Largest `h` with `w^h ≠ 0`, where `w ∈ H^1(X'; Z₂)` is the class of the
/// cover and `w^h` is the `h`-fold connecting image of the unit class.
pub fn index_of_cover(q: &QuotientCover) -> Result<usize> {
    if q.is_empty() {
        return Err(Error::EmptyDeletedProduct);
    }
    let cx = GysinComplexes::new(q, &LocalSystem::cyclic(2, 1)?)?;
    let mut u: Vec<Int> = vec![Int::ONE; q.orbit_count(0)];
    for j in 1..=q.len() {
        crate::budget::check()?;
        u = cx.connecting_matrix(j - 1).mul_vec(&u);
        let ug = gf2_vector(&u);
        if is_gf2_coboundary(&cx.plus.incoming(j), &ug)? {
            return Ok(j - 1);
        }
        u = ug.iter().map(|x| if x.0 { Int::ONE } else { Int::ZERO }).collect();
    }
    Ok(q.len() - 1)
}

/// Z₂-index lower bound of the deleted product of `k`.
pub fn z2_index_lower_bound(k: &SimplicialComplex) -> Result<usize> {
    let d = deleted_product(k);
    if d.is_empty() {
        return Err(Error::EmptyDeletedProduct);
    }
    index_of_cover(&cover_of(&d)?)
}

/// `NoEquivariantMap` when the index reaches `m`, otherwise the vanishing test.
pub fn embed_verdict(k: &SimplicialComplex, m: usize) -> Result<EmbedVerdict> {
    if m == 0 {
        return Err(Error::InvalidArgument("target dimension must be positive".into()));
    }
    Ok(EmbedAnalysis::new(k)?.verdict(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub n: usize,
    pub l: usize,
    /// `H^i(Ñ, M̃; Z)` in every degree.
    pub groups: GradedGroups,
    /// First degree required to vanish, `n + l`.
    pub threshold: usize,
    pub pass: bool,
}

/// Checks `H^i(Ñ, M̃; Z) = 0` for all `i ≥ dim N + l`.
pub fn lemma1_vanishing_check(n: &SimplicialComplex, m: &SimplicialComplex, l: usize) -> Result<Lemma1Report> {
    if !n.is_pure() {
        return Err(Error::NotPure("the ambient complex must be pure".into()));
    }
    let dim = n.dim().ok_or_else(|| Error::InvalidArgument("the ambient complex is empty".into()))?;
    let p = deleted_pair(n, m)?;
    let mut groups = CochainComplex::of_chain(&p.pair.relative_chain(), Coefficients::Integers)?.cohomology_all()?;
    // Degrees where the relative complex has no cells still get an explicit zero.
    for d in 0..p.ambient.cw().chain().len() {
        groups.groups.entry(d).or_default();
    }
    let threshold = dim + l;
    Ok(Lemma1Report {
        n: dim,
        l,
        pass: groups.vanishes_from(threshold),
        groups,
        threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    /// `H_i(N, ∂N; Z)` in every degree.
    pub groups: GradedGroups,
    /// Largest `d` with `H_i(N, ∂N) = 0` for `i = 0..=d`; absent when
    /// `H_0(N, ∂N) ≠ 0`.
    pub d_max: Option<usize>,
    /// `∂N` is empty, so the groups are absolute.
    pub closed: bool,
}

pub fn connectivity_report(n: &SimplicialComplex) -> Result<ConnectivityReport> {
    let boundary = n.boundary_subcomplex()?;
    let pair = CellularPair::new(Arc::new(n.to_cw()), boundary.embedding_into(n)?)?;
    let groups = homology_all(&pair.relative_chain())?;
    let zeros = groups.groups.values().take_while(|g| g.is_zero()).count();
    Ok(ConnectivityReport {
        d_max: zeros.checked_sub(1),
        closed: boundary.is_empty(),
        groups,
    })
}

/// Whether every group of a graded family is zero.
pub fn all_vanish(g: &GradedGroups) -> bool {
    g.groups.values().all(AbelianGroup::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::{simplex, sphere};

    #[test]
    fn index_of_simplices() {
        for n in 1..=3 {
            assert_eq!(z2_index_lower_bound(&simplex(n)).unwrap(), n - 1);
        }
        assert_eq!(z2_index_lower_bound(&sphere(1)).unwrap(), 1);
        assert_eq!(z2_index_lower_bound(&simplex(0)), Err(Error::EmptyDeletedProduct));
    }

    #[test]
    fn circle_has_no_map_to_s0() {
        let v = embed_verdict(&sphere(1), 1).unwrap();
        assert_eq!(v.verdict, Verdict::NoEquivariantMap);
        assert_eq!(v.index, Some(1));
        assert_eq!(embed_verdict(&sphere(1), 2).unwrap().verdict, Verdict::MapExists);
    }

    #[test]
    fn sufficiency_examples() {
        assert_eq!(equivariant_map_sufficiency(&simplex(1), 1).unwrap().verdict, Verdict::MapExists);
        let t = equivariant_map_sufficiency(&simplex(3), 3).unwrap();
        assert_eq!(t.verdict, Verdict::MapExists);
        assert!(t.note.is_some());
        let s = equivariant_map_sufficiency(&sphere(2), 2).unwrap();
        assert_eq!(s.verdict, Verdict::Unknown);
        assert!(!s.groups.get(2).is_zero());
    }

    #[test]
    fn lemma1_trivial_pair() {
        let k = simplex(3);
        for l in 0..3 {
            let r = lemma1_vanishing_check(&k, &k, l).unwrap();
            assert!(r.pass && all_vanish(&r.groups));
            assert_eq!(r.groups.groups.len(), 3);
        }
        assert!(lemma1_vanishing_check(&sphere(1), &simplex(2), 0).is_err());
    }

    #[test]
    fn lemma1_subdivided_tetrahedron() {
        let n = simplex(3).barycentric_subdivision().unwrap();
        // The star of an original vertex: a proper 3-ball, so both deleted
        // products differ.
        let m = n.closed_star("0").unwrap();
        assert!(m.f_vector()[3] < n.f_vector()[3]);
        let r = lemma1_vanishing_check(&n, &m, 0).unwrap();
        assert!(r.pass, "{:?}", r.groups.as_strings());
    }

    #[test]
    fn connectivity_of_ball_and_sphere() {
        let r = connectivity_report(&simplex(3)).unwrap();
        assert_eq!(r.d_max, Some(2));
        assert_eq!(r.groups.get(3), AbelianGroup::free(1));
        let s = connectivity_report(&sphere(2)).unwrap();
        assert!(s.closed);
        assert_eq!(s.d_max, None);
    }
}
