use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Int, SparseIntMatrix};
use crate::error::{Error, Result};

use super::chain::ChainComplex;

/// Regular CW complex: named cells per dimension and boundary incidences
/// with coefficients `±1`.
#[derive(Clone, Debug)]
pub struct CwComplex {
    names: Vec<Vec<String>>,
    chain: ChainComplex,
}

impl CwComplex {
    /// `boundaries[d]` holds the incidences of the `d`-cells (columns) against
    /// the `(d-1)`-cells (rows).
    pub fn new(names: Vec<Vec<String>>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if names.len() != boundaries.len() {
            return Err(Error::DimensionMismatch("one name list per boundary matrix".into()));
        }
        for (d, (n, b)) in names.iter().zip(&boundaries).enumerate() {
            if n.len() != b.cols() {
                return Err(Error::DimensionMismatch(format!("{} names for {} cells in dimension {d}", n.len(), b.cols())));
            }
            for c in 0..b.cols() {
                if let Some((_, v)) = b.column(c).iter().find(|(_, v)| !v.abs().is_one()) {
                    return Err(Error::NotRegular(format!("cell {} has incidence {v}", n[c])));
                }
            }
        }
        let chain = ChainComplex::new(boundaries)?;
        let mut names = names;
        names.truncate(chain.len());
        Ok(CwComplex { names, chain })
    }

    pub fn empty() -> Self {
        CwComplex {
            names: Vec::new(),
            chain: ChainComplex::zero(),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.chain.len().checked_sub(1)
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.chain.rank(d)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.chain.ranks()
    }

    pub fn total_cells(&self) -> usize {
        self.f_vector().iter().sum()
    }

    pub fn name(&self, d: usize, i: usize) -> &str {
        &self.names[d][i]
    }

    pub fn names(&self, d: usize) -> &[String] {
        self.names.get(d).map_or(&[], Vec::as_slice)
    }

    /// Faces of cell `i` of dimension `d` with their incidence numbers.
    pub fn faces(&self, d: usize, i: usize) -> &[(usize, Int)] {
        self.chain.boundary(d).expect("dimension in range").column(i)
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }

    /// One line per cell: `id dim : face_id:sign ...`, with ids numbered
    /// consecutively over all dimensions.
    pub fn incidence_document(&self) -> String {
        let mut offsets = vec![0usize];
        for d in 0..self.names.len() {
            offsets.push(offsets[d] + self.cell_count(d));
        }
        let mut out = String::new();
        for d in 0..self.names.len() {
            for i in 0..self.cell_count(d) {
                write!(out, "cell {} dim {d} name \"{}\" faces", offsets[d] + i, self.names[d][i]).unwrap();
                for (f, s) in self.faces(d, i) {
                    let sign = if s.is_negative() { '-' } else { '+' };
                    write!(out, " {sign}{}", offsets[d - 1] + f).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }

    /// The subcomplex on the listed (sorted) cells; errors unless the list is
    /// closed under faces.
    pub fn subcomplex(&self, keep: &[Vec<usize>]) -> Result<CwComplex> {
        let pair = CellularPair::new(Arc::new(self.clone()), keep.to_vec())?;
        Ok(pair.sub_complex())
    }

    fn restrict_unchecked(&self, keep: &[Vec<usize>]) -> CwComplex {
        let chain = self.chain.restrict(keep);
        let mut names: Vec<Vec<String>> = keep
            .iter()
            .enumerate()
            .take(chain.len())
            .map(|(d, cells)| cells.iter().map(|&i| self.names[d][i].clone()).collect())
            .collect();
        names.resize(chain.len(), Vec::new());
        CwComplex { names, chain }
    }
}

/// A CW complex with a subcomplex, given as sorted cell indices per dimension.
#[derive(Clone, Debug)]
pub struct CellularPair {
    ambient: Arc<CwComplex>,
    sub: Vec<Vec<usize>>,
    in_sub: Vec<Vec<bool>>,
}

impl CellularPair {
    pub fn new(ambient: Arc<CwComplex>, mut sub: Vec<Vec<usize>>) -> Result<Self> {
        let top = ambient.chain().len();
        if sub.iter().skip(top).any(|v| !v.is_empty()) {
            return Err(Error::NotSubcomplex("cells above the top dimension".into()));
        }
        sub.resize(top, Vec::new());
        let mut in_sub: Vec<Vec<bool>> = (0..top).map(|d| vec![false; ambient.cell_count(d)]).collect();
        for (d, cells) in sub.iter_mut().enumerate() {
            cells.sort_unstable();
            cells.dedup();
            for &c in cells.iter() {
                if c >= in_sub[d].len() {
                    return Err(Error::NotSubcomplex(format!("cell index {c} out of range in dimension {d}")));
                }
                in_sub[d][c] = true;
            }
        }
        for d in 1..top {
            for &c in &sub[d] {
                if let Some((f, _)) = ambient.faces(d, c).iter().find(|(f, _)| !in_sub[d - 1][*f]) {
                    return Err(Error::NotSubcomplex(format!(
                        "face {} of {} is missing",
                        ambient.name(d - 1, *f),
                        ambient.name(d, c)
                    )));
                }
            }
        }
        Ok(CellularPair { ambient, sub, in_sub })
    }

    pub fn ambient(&self) -> &Arc<CwComplex> {
        &self.ambient
    }

    pub fn sub_cells(&self) -> &[Vec<usize>] {
        &self.sub
    }

    pub fn contains(&self, d: usize, c: usize) -> bool {
        self.in_sub[d][c]
    }

    /// Cells of the ambient outside the subcomplex, per dimension.
    pub fn relative_cells(&self) -> Vec<Vec<usize>> {
        self.in_sub
            .iter()
            .map(|flags| flags.iter().enumerate().filter(|(_, s)| !**s).map(|(i, _)| i).collect())
            .collect()
    }

    pub fn sub_complex(&self) -> CwComplex {
        self.ambient.restrict_unchecked(&self.sub)
    }

    /// The chain complex `C(ambient) / C(sub)`.
    pub fn relative_chain(&self) -> ChainComplex {
        self.ambient.chain().restrict(&self.relative_cells())
    }

    /// Inclusion of the subcomplex as a cellular map.
    pub fn inclusion(&self) -> CellularMap {
        let sub = Arc::new(self.sub_complex());
        let matrices = self
            .sub
            .iter()
            .enumerate()
            .map(|(d, cells)| {
                let cols = cells.iter().map(|&c| vec![(c, Int::ONE)]).collect();
                SparseIntMatrix::from_columns(self.ambient.cell_count(d), cols)
            })
            .collect();
        CellularMap {
            domain: sub,
            codomain: self.ambient.clone(),
            matrices,
        }
    }
}

/// Chain map between CW complexes, one matrix per dimension.
#[derive(Clone, Debug)]
pub struct CellularMap {
    domain: Arc<CwComplex>,
    codomain: Arc<CwComplex>,
    matrices: Vec<SparseIntMatrix>,
}

impl CellularMap {
    /// `matrices[d]` maps `C_d(domain)` to `C_d(codomain)`. Fails unless the
    /// matrices commute with the boundaries.
    pub fn new(domain: Arc<CwComplex>, codomain: Arc<CwComplex>, matrices: Vec<SparseIntMatrix>) -> Result<Self> {
        let top = domain.chain().len();
        if matrices.len() != top {
            return Err(Error::DimensionMismatch("one matrix per domain dimension".into()));
        }
        for (d, m) in matrices.iter().enumerate() {
            if m.cols() != domain.cell_count(d) || m.rows() != codomain.cell_count(d) {
                return Err(Error::DimensionMismatch(format!("map matrix in dimension {d} has the wrong shape")));
            }
        }
        let map = CellularMap {
            domain,
            codomain,
            matrices,
        };
        if let Some(d) = map.chain_map_defect() {
            return Err(Error::NotChainMap { dim: d });
        }
        Ok(map)
    }

    /// From signed single-cell images: `images[d][i] = (j, ±1)`.
    pub fn from_signed_cells(domain: Arc<CwComplex>, codomain: Arc<CwComplex>, images: &[Vec<(usize, i64)>]) -> Result<Self> {
        let matrices = images
            .iter()
            .enumerate()
            .map(|(d, img)| {
                let cols = img.iter().map(|&(j, s)| vec![(j, Int::from(s))]).collect();
                SparseIntMatrix::from_columns(codomain.cell_count(d), cols)
            })
            .collect();
        Self::new(domain, codomain, matrices)
    }

    pub fn identity(c: Arc<CwComplex>) -> Self {
        let matrices = (0..c.chain().len()).map(|d| SparseIntMatrix::identity(c.cell_count(d))).collect();
        CellularMap {
            domain: c.clone(),
            codomain: c,
            matrices,
        }
    }

    /// Lowest dimension where `∂ f ≠ f ∂`, if any.
    fn chain_map_defect(&self) -> Option<usize> {
        (1..self.matrices.len()).find(|&d| {
            let left = self.codomain.chain().boundary_or_zero(d).mul(&self.matrices[d]);
            let right = self.matrices[d - 1].mul(&self.domain.chain().boundary_or_zero(d));
            left != right
        })
    }

    pub fn domain(&self) -> &Arc<CwComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<CwComplex> {
        &self.codomain
    }

    /// `f_d`, zero outside the stored range.
    pub fn matrix(&self, d: usize) -> SparseIntMatrix {
        self.matrices
            .get(d)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zeros(self.codomain.cell_count(d), self.domain.cell_count(d)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CellularMap) -> Result<CellularMap> {
        if !Arc::ptr_eq(&inner.codomain, &self.domain) && inner.codomain.f_vector() != self.domain.f_vector() {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        let matrices = (0..inner.matrices.len()).map(|d| self.matrix(d).mul(&inner.matrices[d])).collect();
        Ok(CellularMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrices,
        })
    }

    /// Whether `self ∘ self` is the identity.
    pub fn is_involution(&self) -> bool {
        self.matrices
            .iter()
            .enumerate()
            .all(|(d, m)| m.mul(m) == SparseIntMatrix::identity(self.domain.cell_count(d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::{simplex, sphere};

    #[test]
    fn irregular_incidence_is_rejected() {
        let b1 = SparseIntMatrix::from_triplets(1, 1, [(0, 0, Int::ZERO)]);
        let ok = CwComplex::new(vec![vec!["p".into()], vec!["loop".into()]], vec![SparseIntMatrix::zeros(0, 1), b1]);
        assert!(ok.is_ok());
        let b1 = SparseIntMatrix::from_triplets(1, 1, [(0, 0, Int::from(2))]);
        let bad = CwComplex::new(vec![vec!["p".into()], vec!["e".into()]], vec![SparseIntMatrix::zeros(0, 1), b1]);
        assert!(matches!(bad, Err(Error::NotRegular(_))));
    }

    #[test]
    fn pairs_require_closed_subsets() {
        let t = Arc::new(simplex(1).to_cw());
        assert!(CellularPair::new(t.clone(), vec![vec![], vec![0]]).is_err());
        let p = CellularPair::new(t, vec![vec![0, 1]]).unwrap();
        assert_eq!(p.relative_cells(), vec![vec![], vec![0]]);
        let rel = p.relative_chain();
        assert_eq!(rel.homology(1).unwrap().to_string(), "Z");
        assert!(rel.homology(0).unwrap().is_zero());
    }

    #[test]
    fn maps_check_chain_condition() {
        let c = Arc::new(sphere(1).to_cw());
        assert!(CellularMap::identity(c.clone()).is_involution());
        // Sending one edge to zero breaks commutation with ∂.
        let mut m = vec![SparseIntMatrix::identity(3), SparseIntMatrix::identity(3)];
        m[1] = SparseIntMatrix::from_triplets(3, 3, [(0, 0, Int::ONE), (1, 1, Int::ONE)]);
        assert_eq!(CellularMap::new(c.clone(), c, m).unwrap_err(), Error::NotChainMap { dim: 1 });
    }

    #[test]
    fn incidence_document_lists_every_cell() {
        let doc = simplex(1).to_cw().incidence_document();
        assert_eq!(doc, "cell 0 dim 0 name \"0\" faces\ncell 1 dim 0 name \"1\" faces\ncell 2 dim 1 name \"0 1\" faces -0 +1\n");
    }
}
