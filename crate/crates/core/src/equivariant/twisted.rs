//! Cochains of a quotient with coefficients in a local system.
//!
//! An equivariant cochain is fixed by its values on representatives: with
//! `t(q) = ε · partner(q)`, the relation `f(t c) = φ f(c)` gives
//! `f(partner q) = ε φ f(q)`. Every incidence that lands on a partner lift
//! therefore contributes `ε φ` instead of the identity.

use crate::algebra::{AbelianGroup, Int, SparseIntMatrix};
use crate::error::Result;
use crate::homology::CochainComplex;

use super::cover::{QuotientCover, QuotientPair};
use super::local::LocalSystem;

/// `δ^p` of the twisted complex; coordinate `(q, j)` sits at `q·k + j`.
fn twisted_coboundary(q: &QuotientCover, l: &LocalSystem, p: usize) -> SparseIntMatrix {
    let k = l.rank();
    let rows = q.orbit_count(p + 1) * k;
    let cols = q.orbit_count(p) * k;
    let mut triplets = Vec::new();
    for r in 0..q.orbit_count(p + 1) {
        for inc in q.incidences(p + 1, r) {
            for j in 0..k {
                let col = inc.face_orbit * k + j;
                if inc.through_partner {
                    let (target, sign) = l.phi(j);
                    triplets.push((r * k + target, col, Int::from(inc.coefficient * inc.partner_sign * sign)));
                } else {
                    triplets.push((r * k + j, col, Int::from(inc.coefficient)));
                }
            }
        }
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets)
}

pub fn twisted_cochain_complex(q: &QuotientCover, l: &LocalSystem) -> Result<CochainComplex> {
    let orders = l.order_ints();
    let coboundaries = (0..q.len()).map(|p| twisted_coboundary(q, l, p)).collect();
    let orders = (0..q.len())
        .map(|p| (0..q.orbit_count(p)).flat_map(|_| orders.iter().cloned()).collect())
        .collect();
    CochainComplex::new(coboundaries, orders)
}

pub fn twisted_cohomology(q: &QuotientCover, l: &LocalSystem, p: usize) -> Result<AbelianGroup> {
    twisted_cochain_complex(q, l)?.cohomology(p)
}

/// The twisted complex of the pair: cochains vanishing on the subcomplex.
pub fn twisted_relative_cochain_complex(pair: &QuotientPair, l: &LocalSystem) -> Result<CochainComplex> {
    let k = l.rank();
    let keep: Vec<Vec<usize>> = pair
        .relative_orbits()
        .iter()
        .map(|orbits| orbits.iter().flat_map(|&q| (0..k).map(move |j| q * k + j)).collect())
        .collect();
    twisted_cochain_complex(&pair.cover, l)?.restrict(&keep)
}

pub fn twisted_relative_cohomology(pair: &QuotientPair, l: &LocalSystem, p: usize) -> Result<AbelianGroup> {
    twisted_relative_cochain_complex(pair, l)?.cohomology(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::simplex;
    use crate::deleted::deleted_product;
    use crate::equivariant::cover::{quotient_cover, FreeInvolutionComplex};
    use crate::homology::Coefficients;

    fn point_quotient() -> QuotientCover {
        let d = deleted_product(&simplex(1));
        quotient_cover(&FreeInvolutionComplex::from_deleted_product(&d).unwrap()).unwrap()
    }

    #[test]
    fn point_has_coefficients_in_degree_zero() {
        let q = point_quotient();
        for l in [LocalSystem::integers(-1), LocalSystem::swapped_pair(1), LocalSystem::cyclic(3, 1).unwrap()] {
            assert_eq!(twisted_cohomology(&q, &l, 0).unwrap(), l.group());
            assert!(twisted_cohomology(&q, &l, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn untwisted_matches_quotient_cohomology() {
        let d = deleted_product(&simplex(3));
        let q = quotient_cover(&FreeInvolutionComplex::from_deleted_product(&d).unwrap()).unwrap();
        let direct = CochainComplex::of_chain(q.quotient().chain(), Coefficients::Integers).unwrap();
        let twisted = twisted_cochain_complex(&q, &LocalSystem::integers(1)).unwrap();
        assert_eq!(direct.cohomology_all().unwrap(), twisted.cohomology_all().unwrap());
    }
}
