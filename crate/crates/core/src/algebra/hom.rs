//! Explicitly presented subquotients `cycles / boundaries` and the
//! homomorphisms between them induced by integer matrices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::AbelianGroup;
use super::int::Int;
use super::lattice::{compare_in, first_non_member, hom_kernel, lattice_basis, SubgroupRelation};
use super::matrix::{IntMatrix, SparseIntMatrix};
use super::snf::{smith_normal_form_dense, SnfDecomposition};
use crate::error::{Error, Result};

/// A group `K / B` with `B ⊆ K ⊆ Z^n`, carrying canonical coordinates.
///
/// Canonical generators follow [`AbelianGroup::generator_orders`]: torsion
/// summands first, then free ones.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_dim: usize,
    group: AbelianGroup,
    cycles: Option<SnfDecomposition>,
    coordinate_rows: IntMatrix,
    orders: Vec<Int>,
    generators: Vec<Vec<Int>>,
}

impl Subquotient {
    /// `cycle_gens` span `K` (dependencies allowed); `boundary_gens` must lie
    /// in `K`.
    pub fn new(ambient_dim: usize, cycle_gens: &[Vec<Int>], boundary_gens: &[Vec<Int>]) -> Result<Self> {
        let basis = lattice_basis(ambient_dim, cycle_gens);
        let s = basis.len();
        if s == 0 {
            return Ok(Subquotient {
                ambient_dim,
                group: AbelianGroup::zero(),
                cycles: None,
                coordinate_rows: IntMatrix::zeros(0, 0),
                orders: Vec::new(),
                generators: Vec::new(),
            });
        }
        let kb = IntMatrix::from_columns(ambient_dim, &basis);
        let kb_snf = smith_normal_form_dense(&kb);
        let mut rel_cols = Vec::with_capacity(boundary_gens.len());
        for b in boundary_gens {
            let y = kb_snf.solve(b).ok_or_else(|| {
                Error::InvalidArgument("boundary generator outside the cycle lattice".into())
            })?;
            rel_cols.push(y);
        }
        let y = IntMatrix::from_columns(s, &rel_cols);
        let rel_snf = smith_normal_form_dense(&y);
        let r = rel_snf.rank();
        let mut canonical: Vec<usize> = (0..r).filter(|&i| !rel_snf.diagonal[i].is_unit()).collect();
        let mut orders: Vec<Int> = canonical.iter().map(|&i| rel_snf.diagonal[i].clone()).collect();
        canonical.extend(r..s);
        orders.extend(std::iter::repeat_n(Int::ZERO, s - r));
        let coordinate_rows = rel_snf.u.select_rows(&canonical);
        let generators = canonical
            .iter()
            .map(|&i| kb.mul_vec(&rel_snf.u_inv.column(i)))
            .collect();
        let group = AbelianGroup::from_cyclic_orders(&orders);
        debug_assert_eq!(group.generator_orders(), orders);
        Ok(Subquotient {
            ambient_dim,
            group,
            cycles: Some(kb_snf),
            coordinate_rows,
            orders,
            generators,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Orders of the canonical generators (`0` for free ones).
    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    /// Representatives in `Z^n` of the canonical generators.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Canonical coordinates of the class of `x`, or `None` if `x ∉ K`.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.ambient_dim, "vector outside the ambient lattice");
        let Some(cycles) = &self.cycles else {
            return x.iter().all(Int::is_zero).then(Vec::new);
        };
        let y = cycles.solve(x)?;
        let c = self.coordinate_rows.mul_vec(&y);
        Some(c.iter().zip(&self.orders).map(|(v, o)| v.rem_euclid(o)).collect())
    }

    /// Whether `x` is a cycle representing the zero class.
    pub fn is_zero_class(&self, x: &[Int]) -> Option<bool> {
        self.coordinates(x).map(|c| c.iter().all(Int::is_zero))
    }
}

/// Homomorphism between presented groups, given on canonical generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: Arc<Subquotient>,
    pub codomain: Arc<Subquotient>,
    /// `codomain generators x domain generators`.
    pub matrix: IntMatrix,
}

impl GroupHom {
    /// The map induced by the integer matrix `f: Z^{n1} -> Z^{n2}`. Fails when
    /// `f` sends some cycle outside the codomain's cycle lattice.
    pub fn induced(domain: Arc<Subquotient>, codomain: Arc<Subquotient>, f: &SparseIntMatrix, degree: usize) -> Result<Self> {
        assert_eq!(f.cols(), domain.ambient_dim());
        assert_eq!(f.rows(), codomain.ambient_dim());
        let mut cols = Vec::with_capacity(domain.generators().len());
        for g in domain.generators() {
            let image = f.mul_vec(g);
            let c = codomain
                .coordinates(&image)
                .ok_or(Error::NotChainMap { dim: degree })?;
            cols.push(c);
        }
        let matrix = IntMatrix::from_columns(codomain.orders().len(), &cols);
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_matrix(domain: Arc<Subquotient>, codomain: Arc<Subquotient>, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.cols(), domain.orders().len());
        assert_eq!(matrix.rows(), codomain.orders().len());
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn zero(domain: Arc<Subquotient>, codomain: Arc<Subquotient>) -> Self {
        let matrix = IntMatrix::zeros(codomain.orders().len(), domain.orders().len());
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(group: Arc<Subquotient>) -> Self {
        let matrix = IntMatrix::identity(group.orders().len());
        GroupHom {
            domain: group.clone(),
            codomain: group,
            matrix,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> GroupHom {
        let m = self.matrix.mul(&inner.matrix);
        let orders = self.codomain.orders();
        let mut reduced = m.clone();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                reduced[(r, c)] = m[(r, c)].rem_euclid(&orders[r]);
            }
        }
        GroupHom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: reduced,
        }
    }

    pub fn image_generators(&self) -> Vec<Vec<Int>> {
        self.matrix.columns()
    }

    pub fn kernel_generators(&self) -> Vec<Vec<Int>> {
        hom_kernel(&self.matrix, self.domain.orders(), self.codomain.orders())
    }

    pub fn is_zero(&self) -> bool {
        first_non_member(&self.image_generators(), &[], self.codomain.orders()).is_none()
    }

    pub fn is_injective(&self) -> bool {
        first_non_member(&self.kernel_generators(), &[], self.domain.orders()).is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let all = unit_vectors(self.codomain.orders().len());
        first_non_member(&all, &self.image_generators(), self.codomain.orders()).is_none()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Equality as homomorphisms (entries compared modulo codomain orders).
    pub fn same_as(&self, other: &GroupHom) -> bool {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        let orders = self.codomain.orders();
        (0..self.matrix.rows()).all(|r| {
            (0..self.matrix.cols()).all(|c| {
                (&self.matrix[(r, c)] - &other.matrix[(r, c)]).rem_euclid(&orders[r]).is_zero()
            })
        })
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Int::ZERO; n];
            v[i] = Int::ONE;
            v
        })
        .collect()
}

/// Result of comparing `im(incoming)` with `ker(outgoing)` at one node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCheck {
    pub relation: SubgroupRelation,
    /// A canonical-coordinate vector in one subgroup but not the other.
    pub witness: Option<Vec<Int>>,
}

impl NodeCheck {
    pub fn exact(&self) -> bool {
        self.relation == SubgroupRelation::Equal
    }
}

/// Exactness of `A --incoming--> B --outgoing--> C` at `B`.
pub fn check_exact_at(incoming: &GroupHom, outgoing: &GroupHom) -> Result<NodeCheck> {
    let orders = incoming.codomain.orders();
    if orders != outgoing.domain.orders() {
        return Err(Error::DimensionMismatch(
            "consecutive maps do not share the middle group".into(),
        ));
    }
    let image = incoming.image_generators();
    let kernel = outgoing.kernel_generators();
    let relation = compare_in(&image, &kernel, orders)?;
    let witness = match relation {
        SubgroupRelation::Equal => None,
        SubgroupRelation::BInA | SubgroupRelation::Incomparable => first_non_member(&image, &kernel, orders),
        SubgroupRelation::AInB => first_non_member(&kernel, &image, orders),
    };
    Ok(NodeCheck { relation, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn subquotient_of_z2_by_diagonal() {
        // Z^2 / <(2, 2)> = Z + Z_2.
        let sq = Subquotient::new(2, &[v(&[1, 0]), v(&[0, 1])], &[v(&[2, 2])]).unwrap();
        assert_eq!(sq.group().to_string(), "Z + Z_2");
        assert_eq!(sq.is_zero_class(&v(&[2, 2])), Some(true));
        assert_eq!(sq.is_zero_class(&v(&[1, 1])), Some(false));
        for g in sq.generators() {
            assert!(sq.coordinates(g).is_some());
        }
    }

    #[test]
    fn cycles_not_spanning() {
        let sq = Subquotient::new(3, &[v(&[1, 1, 0])], &[]).unwrap();
        assert_eq!(sq.group(), &AbelianGroup::free(1));
        assert_eq!(sq.coordinates(&v(&[1, 0, 0])), None);
        assert_eq!(sq.coordinates(&v(&[3, 3, 0])).map(|c| c.len()), Some(1));
    }

    #[test]
    fn exactness_of_multiplication_by_two() {
        // 0 -> Z --2--> Z --> Z_2 -> 0.
        let z = Arc::new(Subquotient::new(1, &[v(&[1])], &[]).unwrap());
        let z2 = Arc::new(Subquotient::new(1, &[v(&[1])], &[v(&[2])]).unwrap());
        let zero = Arc::new(Subquotient::new(0, &[], &[]).unwrap());
        let two = GroupHom::induced(z.clone(), z.clone(), &SparseIntMatrix::from_dense(&IntMatrix::from_rows(&[vec![2]])), 0).unwrap();
        let proj = GroupHom::induced(z.clone(), z2.clone(), &SparseIntMatrix::identity(1), 0).unwrap();
        assert!(check_exact_at(&GroupHom::zero(zero.clone(), z.clone()), &two).unwrap().exact());
        assert!(check_exact_at(&two, &proj).unwrap().exact());
        assert!(check_exact_at(&proj, &GroupHom::zero(z2.clone(), zero)).unwrap().exact());
        assert!(proj.is_surjective() && !proj.is_injective());
        // Replacing 2 by 4 breaks exactness in the middle.
        let four = GroupHom::from_matrix(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![4]]));
        let bad = check_exact_at(&four, &proj).unwrap();
        assert!(!bad.exact());
        let w = bad.witness.unwrap();
        assert!(w == v(&[2]) || w == v(&[-2]));
    }
}
