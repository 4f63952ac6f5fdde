//! Homology and cohomology over `Z` and `Z/m`, relative groups, induced maps
//! and exact sequences.
//!
//! Group computations go through sparse invariant factors. Whenever explicit
//! classes are needed (induced maps, exactness checks) a presentation of
//! each cohomology group is built once per degree with dense Smith forms and
//! cached on the [`CochainComplex`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::hom::{check_exact_at, GroupHom, NodeCheck, Subquotient};
use crate::algebra::lattice::relation_vectors;
use crate::algebra::sparse::invariant_factors;
use crate::algebra::{integer_kernel, AbelianGroup, Int, IntMatrix, SparseIntMatrix, SubgroupRelation};
use crate::complex::{CellularMap, CellularPair, ChainComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Mod(u64),
}

impl Coefficients {
    pub fn modulo(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        Ok(Coefficients::Mod(m))
    }

    /// Order of the coefficient group, `0` for `Z`.
    pub fn order(&self) -> Int {
        match self {
            Coefficients::Integers => Int::ZERO,
            Coefficients::Mod(m) => Int::from(*m),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Coefficients::Mod(m) if m < 2 => Err(Error::BadModulus(m)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z_{m}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Z<m>`, `Z_<m>` and `Zm:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "Z" {
            return Ok(Coefficients::Integers);
        }
        let digits = s
            .strip_prefix("Zm:")
            .or_else(|| s.strip_prefix("Z_"))
            .or_else(|| s.strip_prefix('Z'))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coefficients `{s}`")))?;
        let m: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown coefficients `{s}`")))?;
        Coefficients::modulo(m)
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Invariant factors of one coboundary restricted to the coordinates of a
/// single coefficient order.
#[derive(Clone, Debug)]
struct ClassFactors {
    order: Int,
    factors: Vec<Int>,
}

/// Cochain complex of free modules over `Z` in which every coordinate
/// carries a coefficient order (`0` for `Z`, `m` for `Z/m`). The cochain
/// groups are the products of these cyclic groups.
///
/// The coboundaries must form a complex over `Z` and never mix coordinates of
/// different orders; cohomology with torsion coefficients is then computed by
/// splitting the integral complex into elementary pieces.
#[derive(Debug)]
pub struct CochainComplex {
    coboundaries: Vec<SparseIntMatrix>,
    orders: Vec<Vec<Int>>,
    factors: Vec<OnceLock<Vec<ClassFactors>>>,
    presentations: Vec<OnceLock<Arc<Subquotient>>>,
}

impl CochainComplex {
    /// `coboundaries[p]` is `δ^p : C^p → C^{p+1}`; the last one maps to zero.
    pub fn new(coboundaries: Vec<SparseIntMatrix>, orders: Vec<Vec<Int>>) -> Result<Self> {
        let len = coboundaries.len();
        if orders.len() != len {
            return Err(Error::DimensionMismatch("one order list per degree".into()));
        }
        for p in 0..len {
            let next = if p + 1 < len { orders[p + 1].len() } else { 0 };
            let d = &coboundaries[p];
            if d.cols() != orders[p].len() || d.rows() != next {
                return Err(Error::DimensionMismatch(format!("δ^{p} has the wrong shape")));
            }
            if p + 1 < len && !coboundaries[p + 1].mul(d).is_zero() {
                return Err(Error::ChainCondition { dim: p + 1 });
            }
            if orders[p].iter().any(Int::is_negative) {
                return Err(Error::BadLocalSystem("negative coefficient order".into()));
            }
            for (r, c, _) in d.entries() {
                if orders[p + 1][r] != orders[p][c] {
                    return Err(Error::BadLocalSystem(format!("δ^{p} mixes coefficient orders")));
                }
            }
        }
        Ok(CochainComplex {
            factors: (0..len).map(|_| OnceLock::new()).collect(),
            presentations: (0..len).map(|_| OnceLock::new()).collect(),
            coboundaries,
            orders,
        })
    }

    /// The dual complex `Hom(C, G)` for cyclic coefficients `G`.
    pub fn of_chain(c: &ChainComplex, coeff: Coefficients) -> Result<Self> {
        coeff.validate()?;
        let len = c.len();
        let coboundaries = (0..len)
            .map(|p| match c.boundary(p + 1) {
                Some(b) => b.transpose(),
                None => SparseIntMatrix::zeros(0, c.rank(p)),
            })
            .collect();
        let orders = (0..len).map(|p| vec![coeff.order(); c.rank(p)]).collect();
        Self::new(coboundaries, orders)
    }

    /// Number of degrees carrying cochains.
    pub fn len(&self) -> usize {
        self.coboundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coboundaries.is_empty()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.orders.get(p).map_or(0, Vec::len)
    }

    pub fn orders(&self, p: usize) -> &[Int] {
        self.orders.get(p).map_or(&[], Vec::as_slice)
    }

    /// `δ^p`, with a correctly shaped zero matrix outside the stored range.
    pub fn coboundary(&self, p: usize) -> SparseIntMatrix {
        match self.coboundaries.get(p) {
            Some(d) => d.clone(),
            None => SparseIntMatrix::zeros(self.rank(p + 1), self.rank(p)),
        }
    }

    /// `δ^{p-1}`, mapping into degree `p` (zero for `p = 0`).
    pub fn incoming(&self, p: usize) -> SparseIntMatrix {
        match p.checked_sub(1) {
            Some(q) => self.coboundary(q),
            None => SparseIntMatrix::zeros(self.rank(0), 0),
        }
    }

    fn class_factors(&self, p: usize) -> Result<&[ClassFactors]> {
        let Some(slot) = self.factors.get(p) else {
            return Ok(&[]);
        };
        if let Some(f) = slot.get() {
            return Ok(f);
        }
        let mut classes: Vec<Int> = self.orders[p].clone();
        classes.sort();
        classes.dedup();
        let next = self.orders(p + 1);
        let mut out = Vec::with_capacity(classes.len());
        for o in classes {
            let cols: Vec<usize> = (0..self.rank(p)).filter(|&i| self.orders[p][i] == o).collect();
            let rows: Vec<usize> = (0..next.len()).filter(|&i| next[i] == o).collect();
            let sub = if cols.len() == self.rank(p) && rows.len() == next.len() {
                self.coboundaries[p].clone()
            } else {
                self.coboundaries[p].submatrix(&rows, &cols)
            };
            out.push(ClassFactors {
                factors: invariant_factors(&sub)?,
                order: o,
            });
        }
        Ok(slot.get_or_init(|| out))
    }

    fn factors_for(&self, p: Option<usize>, order: &Int) -> Result<&[Int]> {
        let Some(p) = p else {
            return Ok(&[]);
        };
        Ok(self
            .class_factors(p)?
            .iter()
            .find(|c| &c.order == order)
            .map_or(&[][..], |c| c.factors.as_slice()))
    }

    /// `H^p` from invariant factors alone.
    pub fn cohomology(&self, p: usize) -> Result<AbelianGroup> {
        let mut classes: Vec<Int> = self.orders(p).to_vec();
        classes.sort();
        classes.dedup();
        let mut cyclic = Vec::new();
        for o in &classes {
            let n = self.orders[p].iter().filter(|x| *x == o).count();
            let out = self.factors_for(Some(p), o)?;
            let inc = self.factors_for(p.checked_sub(1), o)?;
            let free = n - out.len() - inc.len();
            cyclic.extend(std::iter::repeat_n(o.clone(), free));
            if o.is_zero() {
                cyclic.extend(inc.iter().cloned());
            } else {
                cyclic.extend(inc.iter().chain(out).map(|d| d.gcd(o)));
            }
        }
        Ok(AbelianGroup::from_cyclic_orders(&cyclic))
    }

    /// Cohomology in every degree `0..len`, with the eliminations for
    /// different degrees run in parallel.
    pub fn cohomology_all(&self) -> Result<GradedGroups> {
        (0..self.len()).into_par_iter().try_for_each(|p| self.class_factors(p).map(|_| ()))?;
        let groups = (0..self.len()).map(|p| self.cohomology(p)).collect::<Result<Vec<_>>>()?;
        Ok(GradedGroups::new(groups))
    }

    /// Explicit presentation `Z^p / B^p` of `H^p`, built once and cached.
    pub fn presentation(&self, p: usize) -> Result<Arc<Subquotient>> {
        let Some(slot) = self.presentations.get(p) else {
            return Ok(Arc::new(Subquotient::new(0, &[], &[])?));
        };
        if let Some(s) = slot.get() {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_presentation(p)?);
        Ok(slot.get_or_init(|| s).clone())
    }

    fn build_presentation(&self, p: usize) -> Result<Subquotient> {
        crate::budget::check()?;
        let n = self.rank(p);
        let next_orders = self.orders(p + 1);
        // Cocycles: x with δx in the relation lattice of degree p + 1.
        let d = self.coboundary(p).to_dense();
        let stacked = d.hconcat(&IntMatrix::from_columns(d.rows(), &relation_vectors(next_orders)));
        let cycles: Vec<Vec<Int>> = integer_kernel(&stacked)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .collect();
        let mut boundaries = self.incoming(p).to_dense().columns();
        boundaries.extend(relation_vectors(self.orders(p)));
        Subquotient::new(n, &cycles, &boundaries)
    }

    /// The complex restricted to the listed coordinates of each degree.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<CochainComplex> {
        let len = self.len();
        let empty = Vec::new();
        let keep_at = |p: usize| keep.get(p).unwrap_or(&empty);
        let coboundaries = (0..len).map(|p| self.coboundary(p).submatrix(keep_at(p + 1), keep_at(p))).collect();
        let orders = (0..len)
            .map(|p| keep_at(p).iter().map(|&i| self.orders[p][i].clone()).collect())
            .collect();
        CochainComplex::new(coboundaries, orders)
    }
}

/// Cohomology or homology groups indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedGroups {
    pub groups: BTreeMap<usize, AbelianGroup>,
}

impl GradedGroups {
    pub fn new(groups: Vec<AbelianGroup>) -> Self {
        GradedGroups {
            groups: groups.into_iter().enumerate().collect(),
        }
    }

    /// The group in degree `p`, zero when absent.
    pub fn get(&self, p: usize) -> AbelianGroup {
        self.groups.get(&p).cloned().unwrap_or_default()
    }

    /// Whether every group in degrees `>= from` vanishes.
    pub fn vanishes_from(&self, from: usize) -> bool {
        self.groups.range(from..).all(|(_, g)| g.is_zero())
    }

    pub fn as_strings(&self) -> Vec<String> {
        self.groups.values().map(ToString::to_string).collect()
    }
}

pub fn homology(c: &ChainComplex, i: usize) -> Result<AbelianGroup> {
    c.homology(i)
}

pub fn homology_all(c: &ChainComplex) -> Result<GradedGroups> {
    (0..c.len()).into_par_iter().try_for_each(|d| c.boundary_factors(d).map(|_| ()))?;
    Ok(GradedGroups::new((0..c.len()).map(|d| c.homology(d)).collect::<Result<_>>()?))
}

pub fn cohomology(c: &ChainComplex, i: usize, coeff: Coefficients) -> Result<AbelianGroup> {
    CochainComplex::of_chain(c, coeff)?.cohomology(i)
}

pub fn relative_cohomology(pair: &CellularPair, i: usize, coeff: Coefficients) -> Result<AbelianGroup> {
    CochainComplex::of_chain(&pair.relative_chain(), coeff)?.cohomology(i)
}

/// `f^* : H^i(codomain) → H^i(domain)`.
pub fn induced_cohomology_map(f: &CellularMap, i: usize, coeff: Coefficients) -> Result<GroupHom> {
    let dom = CochainComplex::of_chain(f.domain().chain(), coeff)?;
    let cod = CochainComplex::of_chain(f.codomain().chain(), coeff)?;
    induced_between(&cod, &dom, &f.matrix(i).transpose(), i)
}

/// Map on `H^i` induced by the cochain-level matrix `m : C^i(from) → C^i(to)`.
pub fn induced_between(from: &CochainComplex, to: &CochainComplex, m: &SparseIntMatrix, i: usize) -> Result<GroupHom> {
    GroupHom::induced(from.presentation(i)?, to.presentation(i)?, m, i)
}

/// One term of an exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub label: String,
    pub degree: usize,
    pub group: AbelianGroup,
}

/// Exactness verdict at one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub label: String,
    pub degree: usize,
    pub relation: SubgroupRelation,
    pub witness: Option<Vec<Int>>,
    pub pass: bool,
}

/// Sequence of homomorphisms `maps[k] : terms[k] → terms[k + 1]`, starting
/// from a term whose predecessor is zero.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub terms: Vec<SequenceTerm>,
    pub maps: Vec<GroupHom>,
}

impl ExactSequence {
    pub fn new(terms: Vec<SequenceTerm>, maps: Vec<GroupHom>) -> Result<Self> {
        if maps.len() + 1 != terms.len() && !(terms.is_empty() && maps.is_empty()) {
            return Err(Error::DimensionMismatch("need one map between consecutive terms".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.domain.group() != &terms[k].group || m.codomain.group() != &terms[k + 1].group {
                return Err(Error::DimensionMismatch(format!("map {k} does not match its terms")));
            }
        }
        Ok(ExactSequence { terms, maps })
    }

    /// Exactness at every term that has an outgoing map.
    pub fn verify(&self) -> Result<Vec<NodeReport>> {
        let mut out = Vec::with_capacity(self.maps.len());
        for (k, outgoing) in self.maps.iter().enumerate() {
            let check: NodeCheck = match k.checked_sub(1) {
                Some(j) => check_exact_at(&self.maps[j], outgoing)?,
                None => {
                    let zero = Arc::new(Subquotient::new(0, &[], &[])?);
                    check_exact_at(&GroupHom::zero(zero, outgoing.domain.clone()), outgoing)?
                }
            };
            out.push(NodeReport {
                label: self.terms[k].label.clone(),
                degree: self.terms[k].degree,
                pass: check.exact(),
                relation: check.relation,
                witness: check.witness,
            });
        }
        Ok(out)
    }
}

fn coordinate_inclusion(n: usize, cells: &[usize]) -> SparseIntMatrix {
    SparseIntMatrix::from_columns(n, cells.iter().map(|&c| vec![(c, Int::ONE)]).collect())
}

/// `H^0(N,M) → H^0(N) → H^0(M) → H^1(N,M) → …` up to `H^{p_max+1}(N,M)`.
pub fn pair_long_exact_sequence(pair: &CellularPair, coeff: Coefficients, p_max: usize) -> Result<ExactSequence> {
    let ambient = CochainComplex::of_chain(pair.ambient().chain(), coeff)?;
    let sub = CochainComplex::of_chain(pair.sub_complex().chain(), coeff)?;
    let rel_cells = pair.relative_cells();
    let rel = CochainComplex::of_chain(&pair.relative_chain(), coeff)?;
    let cells_at = |cells: &[Vec<usize>], p: usize| cells.get(p).cloned().unwrap_or_default();
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for p in 0..=p_max + 1 {
        let n = ambient.rank(p);
        let r = cells_at(&rel_cells, p);
        let s = cells_at(pair.sub_cells(), p);
        terms.push(SequenceTerm {
            label: "H(N,M)".into(),
            degree: p,
            group: rel.presentation(p)?.group().clone(),
        });
        if p == p_max + 1 {
            break;
        }
        terms.push(SequenceTerm {
            label: "H(N)".into(),
            degree: p,
            group: ambient.presentation(p)?.group().clone(),
        });
        terms.push(SequenceTerm {
            label: "H(M)".into(),
            degree: p,
            group: sub.presentation(p)?.group().clone(),
        });
        let j = coordinate_inclusion(n, &r);
        let restrict = coordinate_inclusion(n, &s).transpose();
        let connecting = coordinate_inclusion(ambient.rank(p + 1), &cells_at(&rel_cells, p + 1))
            .transpose()
            .mul(&ambient.coboundary(p))
            .mul(&coordinate_inclusion(n, &s));
        maps.push(induced_between(&rel, &ambient, &j, p)?);
        maps.push(induced_between(&ambient, &sub, &restrict, p)?);
        maps.push(GroupHom::induced(sub.presentation(p)?, rel.presentation(p + 1)?, &connecting, p)?);
    }
    ExactSequence::new(terms, maps)
}
