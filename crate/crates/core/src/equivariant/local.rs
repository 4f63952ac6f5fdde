use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianGroup, Int};
use crate::error::{Error, Result};

/// Coefficient group `G = ⊕ Z/o_j` (`o_j = 0` for `Z`) with an involution
/// `φ` acting as a signed permutation of the summands:
/// `φ(e_j) = sign_j · e_{perm_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalSystem {
    orders: Vec<u64>,
    perm: Vec<usize>,
    signs: Vec<i64>,
}

impl LocalSystem {
    pub fn new(orders: Vec<u64>, perm: Vec<usize>, signs: Vec<i64>) -> Result<Self> {
        let k = orders.len();
        if k == 0 || perm.len() != k || signs.len() != k {
            return Err(Error::BadLocalSystem("orders, permutation and signs must have one entry per summand".into()));
        }
        if let Some(&o) = orders.iter().find(|&&o| o == 1) {
            return Err(Error::BadLocalSystem(format!("summand of order {o}")));
        }
        for j in 0..k {
            let p = perm[j];
            if p >= k || signs[j].abs() != 1 {
                return Err(Error::BadLocalSystem(format!("summand {j} has a malformed image")));
            }
            if perm[p] != j {
                return Err(Error::BadLocalSystem("φ does not square to the identity".into()));
            }
            if signs[j] * signs[p] != 1 {
                return Err(Error::BadLocalSystem("φ does not square to the identity".into()));
            }
            if orders[p] != orders[j] {
                return Err(Error::BadLocalSystem("φ must permute summands of equal order".into()));
            }
        }
        Ok(LocalSystem { orders, perm, signs })
    }

    /// A single cyclic summand `Z/m` (`m = 0` for `Z`) with `φ = sign · id`.
    pub fn cyclic(m: u64, sign: i64) -> Result<Self> {
        Self::new(vec![m], vec![0], vec![sign])
    }

    pub fn integers(sign: i64) -> Self {
        Self::cyclic(0, sign).expect("valid")
    }

    /// `Z ⊕ Z` with `φ(a, b) = sign · (b, a)`.
    pub fn swapped_pair(sign: i64) -> Self {
        Self::new(vec![0, 0], vec![1, 0], vec![sign, sign]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order_ints(&self) -> Vec<Int> {
        self.orders.iter().map(|&o| Int::from(o)).collect()
    }

    /// `φ(e_j) = sign · e_target` as `(target, sign)`.
    pub fn phi(&self, j: usize) -> (usize, i64) {
        (self.perm[j], self.signs[j])
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(&self.order_ints())
    }

    /// The same group with `-φ`.
    pub fn negated(&self) -> Self {
        LocalSystem {
            orders: self.orders.clone(),
            perm: self.perm.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// `(G ⊕ G, τ)` with `τ(a, b) = (φ b, φ a)`; the first `k` summands hold
    /// `a`, the last `k` hold `b`.
    pub fn doubled(&self) -> Self {
        let k = self.rank();
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&self.orders);
        let mut perm = Vec::with_capacity(2 * k);
        let mut signs = Vec::with_capacity(2 * k);
        for half in [k, 0] {
            for j in 0..k {
                perm.push(half + self.perm[j]);
                signs.push(self.signs[j]);
            }
        }
        LocalSystem { orders, perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rank()).all(|j| self.perm[j] == j && (self.signs[j] == 1 || self.orders[j] == 2))
    }

    /// Whether multiplication by 2 is invertible on `G`.
    pub fn two_invertible(&self) -> bool {
        self.orders.iter().all(|&o| o % 2 == 1)
    }
}

impl fmt::Display for LocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let summand = |o: u64| if o == 0 { "Z".to_string() } else { format!("Z_{o}") };
        let group: Vec<String> = self.orders.iter().map(|&o| summand(o)).collect();
        let phi: Vec<String> = (0..self.rank())
            .map(|j| format!("{}e{}", if self.signs[j] < 0 { "-" } else { "" }, self.perm[j]))
            .collect();
        write!(f, "{} phi=({})", group.join("+"), phi.join(","))
    }
}

impl FromStr for LocalSystem {
    type Err = Error;

    /// `Z`, `Z-`, `Zm:<m>`, `Zm:<m>-`, `ZxZ:swap(+)` and `ZxZ:swap(-)`. A
    /// trailing `-` negates `φ`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLocalSystem(format!("unknown coefficient system `{s}`"));
        match s {
            "Z" => return Ok(Self::integers(1)),
            "Z-" => return Ok(Self::integers(-1)),
            "ZxZ:swap(+)" | "ZxZ:swap" => return Ok(Self::swapped_pair(1)),
            "ZxZ:swap(-)" => return Ok(Self::swapped_pair(-1)),
            _ => {}
        }
        let rest = s.strip_prefix("Zm:").ok_or_else(bad)?;
        let (digits, sign) = match rest.strip_suffix('-') {
            Some(d) => (d, -1),
            None => (rest.strip_suffix('+').unwrap_or(rest), 1),
        };
        let m: u64 = digits.parse().map_err(|_| bad())?;
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        Self::cyclic(m, sign)
    }
}
