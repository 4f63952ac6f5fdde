//! Subgroups of finitely presented abelian groups, handled as lattices in the
//! generator coordinates plus the relation lattice.

use serde::{Deserialize, Serialize};

use super::group::AbelianGroup;
use super::int::Int;
use super::matrix::{IntMatrix, SparseIntMatrix};
use super::hermite::{hermite_basis, integer_kernel, Hermite};
use super::sparse::invariant_factors;
use crate::error::{Error, Result};

/// `Z^rows / column-span(A)` in canonical form.
pub fn cokernel(a: &SparseIntMatrix) -> Result<AbelianGroup> {
    let factors = invariant_factors(a)?;
    let mut g = AbelianGroup::from_cyclic_orders(&factors);
    g.free_rank = a.rows() - factors.len();
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SubgroupRelation {
    Equal,
    AInB,
    BInA,
    Incomparable,
}

/// Relation vectors `o_i e_i` for each finite generator order `o_i`.
pub fn relation_vectors(orders: &[Int]) -> Vec<Vec<Int>> {
    orders
        .iter()
        .enumerate()
        .filter(|(_, o)| !o.is_zero())
        .map(|(i, o)| {
            let mut v = vec![Int::ZERO; orders.len()];
            v[i] = o.clone();
            v
        })
        .collect()
}

/// The first vector of `candidates` that does not lie in the subgroup
/// generated by `gens` inside `Z^n / relations(orders)`.
pub fn first_non_member(candidates: &[Vec<Int>], gens: &[Vec<Int>], orders: &[Int]) -> Option<Vec<Int>> {
    let n = orders.len();
    let mut span: Vec<Vec<Int>> = gens.to_vec();
    span.extend(relation_vectors(orders));
    if span.is_empty() {
        return candidates.iter().find(|c| c.iter().any(|x| !x.is_zero())).cloned();
    }
    let h = Hermite::from_vectors(n, &span);
    candidates.iter().find(|c| !h.contains(c)).cloned()
}

fn check_dims(vectors: &[Vec<Int>], n: usize) -> Result<()> {
    match vectors.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch(format!(
            "vector of length {} in a group with {n} generators",
            v.len()
        ))),
        None => Ok(()),
    }
}

/// Compares the subgroups generated by `gens_a` and `gens_b` inside `ambient`,
/// with vectors written in the ambient's canonical generator coordinates.
pub fn subgroup_compare(
    gens_a: &[Vec<Int>],
    gens_b: &[Vec<Int>],
    ambient: &AbelianGroup,
) -> Result<SubgroupRelation> {
    compare_in(gens_a, gens_b, &ambient.generator_orders())
}

/// [`subgroup_compare`] against an explicit list of generator orders.
pub fn compare_in(gens_a: &[Vec<Int>], gens_b: &[Vec<Int>], orders: &[Int]) -> Result<SubgroupRelation> {
    check_dims(gens_a, orders.len())?;
    check_dims(gens_b, orders.len())?;
    let a_in_b = first_non_member(gens_a, gens_b, orders).is_none();
    let b_in_a = first_non_member(gens_b, gens_a, orders).is_none();
    Ok(match (a_in_b, b_in_a) {
        (true, true) => SubgroupRelation::Equal,
        (true, false) => SubgroupRelation::AInB,
        (false, true) => SubgroupRelation::BInA,
        (false, false) => SubgroupRelation::Incomparable,
    })
}

/// Generators of the kernel of the homomorphism with matrix `m` from
/// `Z^k1 / relations(domain_orders)` to `Z^k2 / relations(codomain_orders)`.
pub fn hom_kernel(m: &IntMatrix, domain_orders: &[Int], codomain_orders: &[Int]) -> Vec<Vec<Int>> {
    let k1 = domain_orders.len();
    assert_eq!(m.cols(), k1);
    assert_eq!(m.rows(), codomain_orders.len());
    let rel = relation_vectors(codomain_orders);
    let stacked = m.hconcat(&IntMatrix::from_columns(m.rows(), &rel));
    let mut gens: Vec<Vec<Int>> = integer_kernel(&stacked)
        .into_iter()
        .map(|v| v[..k1].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    gens.extend(relation_vectors(domain_orders));
    gens
}

/// A basis of the lattice spanned by `gens` in `Z^n`.
pub fn lattice_basis(n: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    hermite_basis(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let a = SparseIntMatrix::from_dense(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        let g = cokernel(&a).unwrap();
        assert_eq!((g.free_rank, g.torsion.clone()), (0, v(&[2, 4])));
        assert_eq!(cokernel(&SparseIntMatrix::zeros(3, 0)).unwrap(), AbelianGroup::free(3));
        assert!(cokernel(&SparseIntMatrix::identity(4)).unwrap().is_zero());
    }

    #[test]
    fn compare_examples() {
        let z2 = AbelianGroup::free(2);
        let a = vec![v(&[1, 2]), v(&[0, 3])];
        assert_eq!(subgroup_compare(&a, &a, &z2).unwrap(), SubgroupRelation::Equal);
        assert_eq!(
            subgroup_compare(&[v(&[2, 0])], &[v(&[1, 0])], &z2).unwrap(),
            SubgroupRelation::AInB
        );
        assert_eq!(
            subgroup_compare(&[v(&[1, 0])], &[v(&[0, 1])], &z2).unwrap(),
            SubgroupRelation::Incomparable
        );
        assert!(subgroup_compare(&[v(&[1])], &[], &z2).is_err());
    }

    #[test]
    fn torsion_ambient() {
        // In Z_4, the subgroup <2> is inside <1> and <6> = <2>.
        let z4 = AbelianGroup::cyclic(4);
        assert_eq!(
            subgroup_compare(&[v(&[2])], &[v(&[1])], &z4).unwrap(),
            SubgroupRelation::AInB
        );
        assert_eq!(
            subgroup_compare(&[v(&[6])], &[v(&[2])], &z4).unwrap(),
            SubgroupRelation::Equal
        );
        assert_eq!(subgroup_compare(&[v(&[4])], &[], &z4).unwrap(), SubgroupRelation::Equal);
    }

    #[test]
    fn kernel_of_reduction() {
        // Z -> Z_6, 1 -> 2 has kernel 3Z.
        let m = IntMatrix::from_rows(&[vec![2]]);
        let k = hom_kernel(&m, &[Int::ZERO], &[Int::from(6)]);
        assert_eq!(compare_in(&k, &[v(&[3])], &[Int::ZERO]).unwrap(), SubgroupRelation::Equal);
    }
}
