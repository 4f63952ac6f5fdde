use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::sparse::normalize_diagonal;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` in
/// invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/m`; `m = 0` gives `Z` and `m = 1` the trivial group.
    pub fn cyclic(m: u64) -> Self {
        Self::from_cyclic_orders(&[Int::from(m)])
    }

    /// Direct sum of cyclic groups of the given orders (`0` meaning `Z`), put
    /// in canonical form.
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let free_rank = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<Int> = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        let torsion = normalize_diagonal(&finite)
            .into_iter()
            .filter(|d| !d.is_unit())
            .collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        orders.extend(std::iter::repeat_n(Int::ZERO, self.free_rank + other.free_rank));
        Self::from_cyclic_orders(&orders)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cardinality, or `None` for infinite groups.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::ONE, |acc, t| &acc * t))
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of the canonical generators: torsion first, then `0` for each
    /// free summand.
    pub fn generator_orders(&self) -> Vec<Int> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(Int::ZERO, self.free_rank));
        v
    }

    /// Whether the invariant-factor invariants hold.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| t >= &Int::from(2))
            && self.torsion.windows(2).all(|w| w[1].is_divisible_by(&w[0]))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let g = AbelianGroup::from_cyclic_orders(&[Int::from(2), Int::from(3), Int::ZERO]);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion, vec![Int::from(6)]);
        assert_eq!(g.to_string(), "Z + Z_6");
        let h = AbelianGroup::from_cyclic_orders(&[Int::from(4), Int::from(2), Int::ONE]);
        assert_eq!(h.torsion, vec![Int::from(2), Int::from(4)]);
        assert!(h.is_canonical());
        assert_eq!(h.order(), Some(Int::from(8)));
        assert_eq!(AbelianGroup::cyclic(1), AbelianGroup::zero());
        assert_eq!(AbelianGroup::zero().to_string(), "0");
    }

    #[test]
    fn direct_sum_merges_torsion() {
        let a = AbelianGroup::cyclic(3);
        let b = AbelianGroup::cyclic(3).direct_sum(&AbelianGroup::free(2));
        let s = a.direct_sum(&b);
        assert_eq!(s.free_rank, 2);
        assert_eq!(s.torsion, vec![Int::from(3), Int::from(3)]);
    }
}
