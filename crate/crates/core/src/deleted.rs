//! Simplicial deleted products: cells are ordered pairs of vertex-disjoint
//! simplices, with the factor swap as a free cellular involution.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Int, SparseIntMatrix};
use crate::complex::{CellularMap, CellularPair, CwComplex, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DeletedProduct {
    cw: Arc<CwComplex>,
    /// `cells[d][i] = (σ, τ)` with `dim σ + dim τ = d`, sorted lexicographically.
    cells: Vec<Vec<(Simplex, Simplex)>>,
    /// Image of each cell under the swap, with its orientation sign.
    swap: Vec<Vec<(usize, i64)>>,
}

fn sign(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl DeletedProduct {
    pub fn cw(&self) -> &Arc<CwComplex> {
        &self.cw
    }

    pub fn cell(&self, d: usize, i: usize) -> (&Simplex, &Simplex) {
        let (s, t) = &self.cells[d][i];
        (s, t)
    }

    pub fn cells(&self, d: usize) -> &[(Simplex, Simplex)] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `swap_images()[d][i] = (j, ε)` when the swap sends cell `i` to `ε` times cell `j`.
    pub fn swap_images(&self) -> &[Vec<(usize, i64)>] {
        &self.swap
    }

    /// `(σ, τ) ↦ (-1)^{dim σ · dim τ} (τ, σ)` as a checked chain map.
    pub fn swap_involution(&self) -> Result<CellularMap> {
        CellularMap::from_signed_cells(self.cw.clone(), self.cw.clone(), &self.swap)
    }
}

/// Builds the deleted product of `k`. The boundary is
/// `∂(σ × τ) = ∂σ × τ + (-1)^{dim σ} σ × ∂τ`.
pub fn deleted_product(k: &SimplicialComplex) -> DeletedProduct {
    let simplices: Vec<&Simplex> = k.all_simplices().collect();
    let mut pairs: Vec<(Simplex, Simplex)> = simplices
        .par_iter()
        .flat_map_iter(|s| {
            simplices
                .iter()
                .filter(|t| s.is_disjoint(t))
                .map(|t| ((*s).clone(), (*t).clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    pairs.par_sort_unstable_by(|a, b| (a.0.dim() + a.1.dim()).cmp(&(b.0.dim() + b.1.dim())).then_with(|| a.cmp(b)));
    let top = pairs.last().map_or(0, |(s, t)| s.dim() + t.dim() + 1);
    let mut cells: Vec<Vec<(Simplex, Simplex)>> = vec![Vec::new(); top];
    for p in pairs {
        cells[p.0.dim() + p.1.dim()].push(p);
    }
    let index: Vec<HashMap<(Simplex, Simplex), usize>> = cells
        .par_iter()
        .map(|level| level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();

    let boundaries: Vec<SparseIntMatrix> = (0..top)
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                return SparseIntMatrix::zeros(0, cells[0].len());
            }
            let columns = cells[d]
                .iter()
                .map(|(s, t)| {
                    let mut col: Vec<(usize, Int)> = Vec::with_capacity(d + 2);
                    for (f, e) in s.signed_faces() {
                        col.push((index[d - 1][&(f, t.clone())], Int::from(e)));
                    }
                    let e0 = sign(s.dim());
                    for (g, e) in t.signed_faces() {
                        col.push((index[d - 1][&(s.clone(), g)], Int::from(e0 * e)));
                    }
                    col
                })
                .collect();
            SparseIntMatrix::from_columns(cells[d - 1].len(), columns)
        })
        .collect();

    let swap = cells
        .iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|(s, t)| (index[d][&(t.clone(), s.clone())], sign(s.dim() * t.dim())))
                .collect()
        })
        .collect();

    let names = cells
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|(s, t)| format!("[{}]x[{}]", k.simplex_name(s), k.simplex_name(t)))
                .collect()
        })
        .collect();
    let cw = CwComplex::new(names, boundaries).expect("product boundary satisfies ∂∂ = 0");
    DeletedProduct {
        cw: Arc::new(cw),
        cells,
        swap,
    }
}

/// The deleted product of `n` with the deleted product of `m` marked as a
/// subcomplex.
#[derive(Clone, Debug)]
pub struct DeletedPair {
    pub ambient: DeletedProduct,
    pub pair: CellularPair,
}

pub fn deleted_pair(n: &SimplicialComplex, m: &SimplicialComplex) -> Result<DeletedPair> {
    if !m.is_subcomplex_of(n) {
        return Err(Error::NotSubcomplex("the smaller complex is not contained in the larger one".into()));
    }
    let in_m: HashSet<Simplex> = m
        .embedding_into(n)?
        .iter()
        .enumerate()
        .flat_map(|(d, idx)| idx.iter().map(move |&i| n.simplices(d)[i].clone()))
        .collect();
    let ambient = deleted_product(n);
    let sub = ambient
        .cells
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .filter(|(_, (s, t))| in_m.contains(s) && in_m.contains(t))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let pair = CellularPair::new(ambient.cw.clone(), sub)?;
    Ok(DeletedPair { ambient, pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::{simplex, sphere};
    use crate::homology::{homology_all, CochainComplex, Coefficients};

    fn cohomology_strings(d: &DeletedProduct) -> Vec<String> {
        CochainComplex::of_chain(d.cw().chain(), Coefficients::Integers)
            .unwrap()
            .cohomology_all()
            .unwrap()
            .as_strings()
    }

    #[test]
    fn interval_gives_two_points() {
        let d = deleted_product(&simplex(1));
        assert_eq!(d.cw().f_vector(), vec![2]);
        assert_eq!(d.swap_images()[0], vec![(1, 1), (0, 1)]);
        assert_eq!(cohomology_strings(&d), ["Z^2"]);
    }

    #[test]
    fn triangle_and_its_boundary_give_a_hexagon() {
        for k in [sphere(1), simplex(2)] {
            let d = deleted_product(&k);
            assert_eq!(d.cw().f_vector(), vec![6, 6]);
            assert_eq!(cohomology_strings(&d), ["Z", "Z"]);
        }
    }

    #[test]
    fn swap_is_a_free_involution() {
        for k in [simplex(3), sphere(2)] {
            let d = deleted_product(&k);
            let t = d.swap_involution().unwrap();
            assert!(t.is_involution());
            for level in d.swap_images() {
                assert!(level.iter().enumerate().all(|(i, (j, _))| i != *j));
            }
        }
    }

    #[test]
    fn vertex_edge_swap_sign() {
        let d = deleted_product(&sphere(1));
        let (s, t) = d.cell(1, 0);
        assert_eq!((s.dim(), t.dim()), (0, 1));
        assert_eq!(d.swap_images()[1][0].1, 1);
    }

    #[test]
    fn single_vertex_is_empty() {
        let k = crate::complex::parse_complex("facet a").unwrap();
        assert!(deleted_product(&k).is_empty());
        assert!(homology_all(deleted_product(&k).cw().chain()).unwrap().groups.is_empty());
    }

    #[test]
    fn pair_of_triangle_and_boundary_is_trivial() {
        let p = deleted_pair(&simplex(2), &sphere(1)).unwrap();
        assert!(p.pair.relative_cells().iter().all(Vec::is_empty));
        assert!(deleted_pair(&sphere(1), &simplex(2)).is_err());
    }
}
