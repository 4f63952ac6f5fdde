use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Int, SparseIntMatrix};
use crate::complex::{CellularMap, CwComplex, Simplex, SimplicialComplex};
use crate::deleted::{DeletedPair, DeletedProduct};
use crate::error::{Error, Result};

/// A CW complex with a free cellular involution, given as signed cell
/// images: `t[d][i] = (j, ε)` means `t(e_i) = ε e_j`.
#[derive(Clone, Debug)]
pub struct FreeInvolutionComplex {
    cw: Arc<CwComplex>,
    t: Vec<Vec<(usize, i64)>>,
}

impl FreeInvolutionComplex {
    pub fn new(cw: Arc<CwComplex>, t: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let top = cw.chain().len();
        if t.len() != top || (0..top).any(|d| t[d].len() != cw.cell_count(d)) {
            return Err(Error::DimensionMismatch("one image per cell".into()));
        }
        for (d, level) in t.iter().enumerate() {
            for (i, &(j, e)) in level.iter().enumerate() {
                if j >= level.len() || e.abs() != 1 {
                    return Err(Error::NotInvolution(format!("bad image for cell {}", cw.name(d, i))));
                }
                if j == i {
                    return Err(Error::InvolutionNotFree {
                        cell: cw.name(d, i).to_string(),
                    });
                }
                let (back, e2) = level[j];
                if back != i || e * e2 != 1 {
                    return Err(Error::NotInvolution(format!("t(t({})) is not the cell itself", cw.name(d, i))));
                }
            }
        }
        CellularMap::from_signed_cells(cw.clone(), cw.clone(), &t)?;
        Ok(FreeInvolutionComplex { cw, t })
    }

    pub fn from_deleted_product(d: &DeletedProduct) -> Result<Self> {
        Self::new(d.cw().clone(), d.swap_images().to_vec())
    }

    /// The involution of `k` induced by a vertex involution given on labels
    /// (vertices not listed must not exist; the map must be listed both ways
    /// or once per orbit).
    pub fn from_vertex_involution(k: &SimplicialComplex, pairs: &BTreeMap<String, String>) -> Result<Self> {
        let mut image = vec![None; k.labels().len()];
        for (a, b) in pairs {
            let (Some(x), Some(y)) = (k.vertex_index(a), k.vertex_index(b)) else {
                return Err(Error::InvalidArgument(format!("unknown vertex in pair {a}={b}")));
            };
            for (from, to) in [(x, y), (y, x)] {
                match image[from as usize] {
                    Some(prev) if prev != to => {
                        return Err(Error::NotInvolution(format!("vertex {} has two images", k.label(from))));
                    }
                    _ => image[from as usize] = Some(to),
                }
            }
        }
        let image: Vec<u32> = image
            .iter()
            .enumerate()
            .map(|(v, im)| im.ok_or_else(|| Error::NotInvolution(format!("vertex {} has no image", k.label(v as u32)))))
            .collect::<Result<_>>()?;
        let cw = Arc::new(k.to_cw());
        let mut t = Vec::new();
        for d in 0..=k.dim().unwrap_or(0) {
            if k.is_empty() {
                break;
            }
            let mut level = Vec::with_capacity(k.simplices(d).len());
            for s in k.simplices(d) {
                let mapped: Vec<u32> = s.vertices().iter().map(|&v| image[v as usize]).collect();
                let inversions = (0..mapped.len())
                    .flat_map(|a| (a + 1..mapped.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| mapped[a] > mapped[b])
                    .count();
                let target = Simplex::new(mapped)?;
                let j = k
                    .index_of(&target)
                    .ok_or_else(|| Error::InvalidArgument(format!("image of {} is not a simplex", k.simplex_name(s))))?;
                level.push((j, if inversions % 2 == 0 { 1 } else { -1 }));
            }
            t.push(level);
        }
        Self::new(cw, t)
    }

    pub fn cw(&self) -> &Arc<CwComplex> {
        &self.cw
    }

    pub fn images(&self) -> &[Vec<(usize, i64)>] {
        &self.t
    }

    pub fn as_map(&self) -> CellularMap {
        CellularMap::from_signed_cells(self.cw.clone(), self.cw.clone(), &self.t).expect("checked on construction")
    }
}

/// Orbit complex of a free involution, with the bookkeeping needed to twist
/// coefficients.
#[derive(Clone, Debug)]
pub struct QuotientCover {
    cover: FreeInvolutionComplex,
    /// Representative (lower-index lift) of each orbit.
    reps: Vec<Vec<usize>>,
    /// The other lift of each orbit.
    partners: Vec<Vec<usize>>,
    /// `t(rep) = sign · partner`.
    signs: Vec<Vec<i64>>,
    /// Orbit of each cover cell and whether the cell is the representative.
    orbit_of: Vec<Vec<(usize, bool)>>,
    quotient: Arc<CwComplex>,
}

/// One incidence of a representative cell, seen from the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedIncidence {
    pub face_orbit: usize,
    pub coefficient: i64,
    /// Whether the face is the partner lift, so that coefficients pick up
    /// the involution.
    pub through_partner: bool,
    /// `t(rep) = partner_sign · partner` for the face's orbit.
    pub partner_sign: i64,
}

pub fn quotient_cover(f: &FreeInvolutionComplex) -> Result<QuotientCover> {
    let cw = f.cw();
    let top = cw.chain().len();
    let mut reps = vec![Vec::new(); top];
    let mut partners = vec![Vec::new(); top];
    let mut signs = vec![Vec::new(); top];
    let mut orbit_of = vec![Vec::new(); top];
    for d in 0..top {
        orbit_of[d] = vec![(usize::MAX, false); cw.cell_count(d)];
        for (i, &(j, e)) in f.t[d].iter().enumerate() {
            if i < j {
                let q = reps[d].len();
                reps[d].push(i);
                partners[d].push(j);
                signs[d].push(e);
                orbit_of[d][i] = (q, true);
                orbit_of[d][j] = (q, false);
            }
        }
    }
    let mut names = Vec::with_capacity(top);
    let mut boundaries = Vec::with_capacity(top);
    for d in 0..top {
        names.push(reps[d].iter().map(|&c| cw.name(d, c).to_string()).collect::<Vec<_>>());
        if d == 0 {
            boundaries.push(SparseIntMatrix::zeros(0, reps[0].len()));
            continue;
        }
        let mut triplets = Vec::new();
        for (r, &c) in reps[d].iter().enumerate() {
            for (b, s) in cw.faces(d, c) {
                let (q, is_rep) = orbit_of[d - 1][*b];
                let e = if is_rep { 1 } else { signs[d - 1][q] };
                triplets.push((q, r, s * &Int::from(e)));
            }
        }
        boundaries.push(SparseIntMatrix::from_triplets(reps[d - 1].len(), reps[d].len(), triplets));
    }
    let quotient = Arc::new(CwComplex::new(names, boundaries)?);
    Ok(QuotientCover {
        cover: f.clone(),
        reps,
        partners,
        signs,
        orbit_of,
        quotient,
    })
}

impl QuotientCover {
    pub fn cover(&self) -> &FreeInvolutionComplex {
        &self.cover
    }

    pub fn quotient(&self) -> &Arc<CwComplex> {
        &self.quotient
    }

    pub fn orbit_count(&self, d: usize) -> usize {
        self.reps.get(d).map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `(representative, partner, sign)` of orbit `q` in dimension `d`.
    pub fn lifts(&self, d: usize, q: usize) -> (usize, usize, i64) {
        (self.reps[d][q], self.partners[d][q], self.signs[d][q])
    }

    pub fn orbit_of(&self, d: usize, cell: usize) -> usize {
        self.orbit_of[d][cell].0
    }

    /// Incidences of the representative of orbit `r` (dimension `d ≥ 1`).
    pub fn incidences(&self, d: usize, r: usize) -> impl Iterator<Item = TwistedIncidence> + '_ {
        let c = self.reps[d][r];
        self.cover.cw.faces(d, c).iter().map(move |(b, s)| {
            let (q, is_rep) = self.orbit_of[d - 1][*b];
            TwistedIncidence {
                face_orbit: q,
                coefficient: s.to_i64().expect("regular incidence"),
                through_partner: !is_rep,
                partner_sign: self.signs[d - 1][q],
            }
        })
    }
}

/// A cover together with a `t`-invariant subcomplex, passed to the quotient.
#[derive(Clone, Debug)]
pub struct QuotientPair {
    pub cover: QuotientCover,
    /// Orbits of the subcomplex, per dimension.
    pub sub_orbits: Vec<Vec<bool>>,
}

impl QuotientPair {
    /// `sub` lists cover cells per dimension and must be closed under faces
    /// and under the involution.
    pub fn new(cover: QuotientCover, sub: &[Vec<usize>]) -> Result<Self> {
        crate::complex::CellularPair::new(cover.cover.cw.clone(), sub.to_vec())?;
        let top = cover.len();
        let mut sub_orbits: Vec<Vec<bool>> = (0..top).map(|d| vec![false; cover.orbit_count(d)]).collect();
        for (d, cells) in sub.iter().enumerate().take(top) {
            let set: std::collections::HashSet<usize> = cells.iter().copied().collect();
            for &c in cells {
                let (img, _) = cover.cover.t[d][c];
                if !set.contains(&img) {
                    return Err(Error::NotInvariant(format!(
                        "{} is in the subcomplex but its image is not",
                        cover.cover.cw.name(d, c)
                    )));
                }
                sub_orbits[d][cover.orbit_of(d, c)] = true;
            }
        }
        Ok(QuotientPair { cover, sub_orbits })
    }

    pub fn from_deleted_pair(p: &DeletedPair) -> Result<Self> {
        let f = FreeInvolutionComplex::from_deleted_product(&p.ambient)?;
        Self::new(quotient_cover(&f)?, p.pair.sub_cells())
    }

    /// Orbits outside the subcomplex, per dimension.
    pub fn relative_orbits(&self) -> Vec<Vec<usize>> {
        self.sub_orbits
            .iter()
            .map(|flags| flags.iter().enumerate().filter(|(_, s)| !**s).map(|(i, _)| i).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;
    use crate::complex::simplicial::{simplex, sphere};
    use crate::deleted::deleted_product;

    pub(crate) fn octahedron() -> (SimplicialComplex, BTreeMap<String, String>) {
        let mut facets = Vec::new();
        for x in ["x0", "x1"] {
            for y in ["y0", "y1"] {
                for z in ["z0", "z1"] {
                    facets.push(vec![x, y, z]);
                }
            }
        }
        let k = SimplicialComplex::from_facets(&facets).unwrap();
        let map = [("x0", "x1"), ("y0", "y1"), ("z0", "z1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        (k, map)
    }

    #[test]
    fn point_pair_quotient() {
        let d = deleted_product(&simplex(1));
        let q = quotient_cover(&FreeInvolutionComplex::from_deleted_product(&d).unwrap()).unwrap();
        assert_eq!(q.quotient().f_vector(), vec![1]);
    }

    #[test]
    fn hexagon_quotient_is_a_triangle_circle() {
        let d = deleted_product(&sphere(1));
        let q = quotient_cover(&FreeInvolutionComplex::from_deleted_product(&d).unwrap()).unwrap();
        assert_eq!(q.quotient().f_vector(), vec![3, 3]);
        assert_eq!(2 * q.quotient().euler_characteristic(), d.cw().euler_characteristic());
    }

    #[test]
    fn octahedron_quotient_is_rp2() {
        let (k, map) = octahedron();
        let f = FreeInvolutionComplex::from_vertex_involution(&k, &map).unwrap();
        let q = quotient_cover(&f).unwrap();
        assert_eq!(q.quotient().f_vector(), vec![3, 6, 4]);
        assert_eq!(q.quotient().euler_characteristic(), 1);
    }

    #[test]
    fn involution_errors() {
        let k = parse_complex("facet a b").unwrap();
        let fixed: BTreeMap<String, String> = [("a".to_string(), "a".to_string()), ("b".to_string(), "b".to_string())].into();
        assert!(matches!(
            FreeInvolutionComplex::from_vertex_involution(&k, &fixed),
            Err(Error::InvolutionNotFree { .. })
        ));
        // Swapping the ends of an edge fixes the edge itself.
        let swap: BTreeMap<String, String> = [("a".to_string(), "b".to_string())].into();
        assert!(matches!(
            FreeInvolutionComplex::from_vertex_involution(&k, &swap),
            Err(Error::InvolutionNotFree { .. })
        ));
        let cw = Arc::new(parse_complex("facet a\nfacet b\nfacet c").unwrap().to_cw());
        let not_inv = FreeInvolutionComplex::new(cw, vec![vec![(1, 1), (2, 1), (0, 1)]]);
        assert!(matches!(not_inv, Err(Error::NotInvolution(_))));
    }

    #[test]
    fn subcomplex_must_be_invariant() {
        let (k, map) = octahedron();
        let f = FreeInvolutionComplex::from_vertex_involution(&k, &map).unwrap();
        let q = quotient_cover(&f).unwrap();
        let x0 = k.find(&["x0"]).map(|s| k.index_of(&s).unwrap()).unwrap();
        let x1 = k.find(&["x1"]).map(|s| k.index_of(&s).unwrap()).unwrap();
        assert!(matches!(QuotientPair::new(q.clone(), &[vec![x0]]), Err(Error::NotInvariant(_))));
        let pair = QuotientPair::new(q, &[vec![x0, x1]]).unwrap();
        assert_eq!(pair.relative_orbits()[0].len(), 2);
    }
}
