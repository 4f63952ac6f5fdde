use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{Int, SparseIntMatrix};
use crate::error::{Error, Result};

use super::cw::CwComplex;

/// A simplex as a strictly increasing list of vertex indices into the owning
/// complex's label table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("a simplex needs at least one vertex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated vertex in simplex".into()));
        }
        Ok(Simplex(vertices))
    }

    fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces with their boundary signs `(-1)^i` for deletion
    /// index `i`.
    pub fn signed_faces(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (Simplex(v), if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

/// Finite abstract simplicial complex on string-labelled vertices.
///
/// Labels are kept sorted, so vertex indices compare like labels and every
/// list of simplices below is in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Simplex>,
    /// `simplices[d]` lists the `d`-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
            simplices: Vec::new(),
            index: Vec::new(),
        }
    }

    /// The complex generated by the given vertex lists.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for f in facets {
            for v in f {
                let v = v.as_ref();
                if !valid_label(v) {
                    return Err(Error::InvalidArgument(format!("bad vertex label `{v}`")));
                }
                labels.insert(v.to_string());
            }
        }
        let labels: Vec<String> = labels.into_iter().collect();
        let lookup: HashMap<&str, u32> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            let ids = f.iter().map(|v| lookup[v.as_ref()]).collect();
            simplices.push(Simplex::new(ids)?);
        }
        Ok(Self::from_simplices(labels, simplices))
    }

    /// Builds the closure of `generators`, whose vertices index `labels`.
    /// Unused labels are dropped.
    fn from_simplices(labels: Vec<String>, generators: Vec<Simplex>) -> Self {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for g in &generators {
            if all.contains(g) {
                continue;
            }
            all.extend(g.faces());
        }
        // Re-index so that only used vertices remain.
        let used: BTreeSet<u32> = all.iter().flat_map(|s| s.0.iter().copied()).collect();
        let remap: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let labels: Vec<String> = used.iter().map(|&v| labels[v as usize].clone()).collect();
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            let s = Simplex(s.0.iter().map(|v| remap[v]).collect());
            let d = s.dim();
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort();
        }
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        // A simplex is a facet when no simplex one dimension up contains it.
        let mut covered: Vec<Vec<bool>> = simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..simplices.len() {
            for s in &simplices[d] {
                for (f, _) in s.signed_faces() {
                    covered[d - 1][index[d - 1][&f]] = true;
                }
            }
        }
        let mut facets: Vec<Simplex> = simplices
            .iter()
            .zip(&covered)
            .flat_map(|(level, cov)| level.iter().zip(cov).filter(|(_, c)| !**c).map(|(s, _)| s.clone()))
            .collect();
        facets.sort_by(|a, b| a.0.cmp(&b.0));
        SimplicialComplex {
            labels,
            facets,
            simplices,
            index,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex_index(&self, label: &str) -> Option<u32> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok().map(|i| i as u32)
    }

    /// Maximal simplices in lexicographic order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<&str> {
        s.0.iter().map(|&v| self.label(v)).collect()
    }

    /// Simplex with the given labels, if present.
    pub fn find(&self, labels: &[&str]) -> Option<Simplex> {
        let ids = labels.iter().map(|l| self.vertex_index(l)).collect::<Option<Vec<_>>>()?;
        let s = Simplex::new(ids).ok()?;
        self.index_of(&s).map(|_| s)
    }

    pub fn simplex_name(&self, s: &Simplex) -> String {
        self.simplex_labels(s).join(" ")
    }

    pub fn is_pure(&self) -> bool {
        let top = self.dim();
        self.facets.iter().all(|f| Some(f.dim()) == top)
    }

    /// Number of top-dimensional simplices containing each codimension-one
    /// simplex, in the order of `simplices(dim - 1)`.
    fn ridge_degrees(&self) -> Vec<usize> {
        let Some(n) = self.dim().filter(|&n| n > 0) else {
            return Vec::new();
        };
        let mut counts = vec![0usize; self.simplices[n - 1].len()];
        for s in &self.simplices[n] {
            for (f, _) in s.signed_faces() {
                counts[self.index[n - 1][&f]] += 1;
            }
        }
        counts
    }

    /// Subcomplex generated by the codimension-one simplices lying in exactly
    /// one top simplex.
    pub fn boundary_subcomplex(&self) -> Result<SimplicialComplex> {
        let Some(n) = self.dim() else {
            return Ok(Self::empty());
        };
        if !self.is_pure() {
            let bad = self.facets.iter().find(|f| f.dim() != n).unwrap();
            return Err(Error::NotPure(format!("facet {} has dimension {}", self.simplex_name(bad), bad.dim())));
        }
        if n == 0 {
            return Ok(Self::empty());
        }
        let counts = self.ridge_degrees();
        if let Some(i) = counts.iter().position(|&c| c > 2) {
            return Err(Error::NotPseudomanifold {
                simplex: self.simplex_name(&self.simplices[n - 1][i]),
                count: counts[i],
            });
        }
        let generators = self.simplices[n - 1]
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c == 1)
            .map(|(s, _)| s.clone())
            .collect();
        Ok(Self::from_simplices(self.labels.clone(), generators))
    }

    /// Whether every simplex of `self` (compared by labels) is a simplex of
    /// `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let map: Option<Vec<u32>> = self.labels.iter().map(|l| other.vertex_index(l)).collect();
        let Some(map) = map else {
            return false;
        };
        self.facets.iter().all(|f| {
            let s = Simplex::from_sorted(f.0.iter().map(|&v| map[v as usize]).collect());
            other.index_of(&s).is_some()
        })
    }

    /// For a subcomplex `self ⊆ other`, the index in `other` of each simplex
    /// of `self`, per dimension.
    pub fn embedding_into(&self, other: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
        let map: Vec<u32> = self
            .labels
            .iter()
            .map(|l| other.vertex_index(l).ok_or_else(|| Error::NotSubcomplex(format!("vertex {l} is missing"))))
            .collect::<Result<_>>()?;
        self.simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let t = Simplex::from_sorted(s.0.iter().map(|&v| map[v as usize]).collect());
                        other
                            .index_of(&t)
                            .ok_or_else(|| Error::NotSubcomplex(format!("simplex {} is missing", self.simplex_name(s))))
                    })
                    .collect()
            })
            .collect()
    }

    /// Subcomplex generated by the simplices containing `label`.
    pub fn closed_star(&self, label: &str) -> Result<SimplicialComplex> {
        let v = self
            .vertex_index(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no vertex `{label}`")))?;
        let gens = self.facets.iter().filter(|f| f.contains_vertex(v)).cloned().collect();
        Ok(Self::from_simplices(self.labels.clone(), gens))
    }

    /// Removes every simplex containing `label` (the open star).
    pub fn delete_open_star(&self, label: &str) -> Result<SimplicialComplex> {
        let v = self
            .vertex_index(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no vertex `{label}`")))?;
        let gens = self.all_simplices().filter(|s| !s.contains_vertex(v)).cloned().collect();
        Ok(Self::from_simplices(self.labels.clone(), gens))
    }

    /// Barycentric subdivision. The barycenter of a simplex is labelled by
    /// its vertex labels joined with `_`.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        let name = |s: &Simplex| self.simplex_labels(s).join("_");
        let mut chains: Vec<Vec<String>> = Vec::new();
        for f in &self.facets {
            // Every maximal flag of faces of f is a permutation of its vertices.
            let mut perm: Vec<u32> = f.0.clone();
            loop {
                let chain = (1..=perm.len())
                    .map(|k| {
                        let mut v = perm[..k].to_vec();
                        v.sort_unstable();
                        name(&Simplex(v))
                    })
                    .collect();
                chains.push(chain);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        let sd = Self::from_facets(&chains)?;
        if sd.labels.len() != self.all_simplices().count() {
            return Err(Error::InvalidArgument("barycenter labels collide".into()));
        }
        Ok(sd)
    }

    /// Cell structure with one cell per simplex, in the order of
    /// [`simplices`](Self::simplices).
    pub fn to_cw(&self) -> CwComplex {
        let names = self
            .simplices
            .iter()
            .map(|level| level.iter().map(|s| self.simplex_name(s)).collect())
            .collect();
        let boundaries = (0..self.simplices.len()).map(|d| self.boundary_matrix(d)).collect();
        CwComplex::new(names, boundaries).expect("simplicial boundary matrices always form a regular complex")
    }

    /// `∂_d` against the lexicographic bases.
    pub fn boundary_matrix(&self, d: usize) -> SparseIntMatrix {
        let cols = self.simplices(d).len();
        if d == 0 {
            return SparseIntMatrix::zeros(0, cols);
        }
        let rows = self.simplices(d - 1).len();
        let columns = self
            .simplices(d)
            .iter()
            .map(|s| {
                s.signed_faces()
                    .map(|(f, sign)| (self.index[d - 1][&f], Int::from(sign)))
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_columns(rows, columns)
    }

    /// Facet-list document, facets sorted lexicographically by labels.
    pub fn serialize(&self) -> String {
        let mut lines: Vec<Vec<&str>> = self.facets.iter().map(|f| self.simplex_labels(f)).collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            out.push_str("facet ");
            out.push_str(&l.join(" "));
            out.push('\n');
        }
        out
    }

    /// Image under a vertex relabelling, which must be injective.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<SimplicialComplex> {
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|f| f.0.iter().map(|&v| map.get(self.label(v)).map_or(self.label(v), String::as_str)).collect())
            .collect();
        let out = Self::from_facets(&facets)?;
        if out.labels.len() != self.labels.len() {
            return Err(Error::InvalidArgument("relabelling is not injective".into()));
        }
        Ok(out)
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(f = {:?})", self.f_vector())
    }
}

/// Parses a facet-list document.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: n + 1, message };
        let mut words = line.split_whitespace();
        match words.next() {
            Some("facet") => {}
            Some(other) => return Err(err(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
        let vertices: Vec<&str> = words.collect();
        if vertices.is_empty() {
            return Err(err("facet without vertices".into()));
        }
        if let Some(bad) = vertices.iter().find(|v| !valid_label(v)) {
            return Err(err(format!("bad vertex label `{bad}`")));
        }
        let distinct: BTreeSet<&&str> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(err("duplicate vertex within a facet".into()));
        }
        facets.push(vertices);
    }
    if facets.is_empty() {
        return Err(Error::EmptyDocument);
    }
    SimplicialComplex::from_facets(&facets)
}

pub fn is_full_subcomplex(m: &SimplicialComplex, n: &SimplicialComplex) -> bool {
    m.is_subcomplex_of(n)
}

/// The full simplex on `n + 1` vertices labelled `0..=n`.
pub fn simplex(n: usize) -> SimplicialComplex {
    let facet: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    SimplicialComplex::from_facets(&[facet]).unwrap()
}

/// Boundary of the `(n + 1)`-simplex, a triangulated `n`-sphere.
pub fn sphere(n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..=n + 1)
        .map(|skip| (0..=n + 1).filter(|&i| i != skip).map(|i| i.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = parse_complex("facet a b c").unwrap();
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        let b = parse_complex("facet a b\nfacet b c\nfacet a c").unwrap();
        assert_eq!(b.f_vector(), vec![3, 3]);
        let absorbed = parse_complex("facet a b c\nfacet a b  # a face\n\n").unwrap();
        assert_eq!(absorbed, t);
        assert_eq!(absorbed.facets().len(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_complex("# nothing\n\n"), Err(Error::EmptyDocument));
        assert!(matches!(parse_complex("facet a a"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_complex("facet a\nface b"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("facet a-b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("facet"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let k = sphere(2);
        assert_eq!(parse_complex(&k.serialize()).unwrap(), k);
        assert_eq!(k.serialize().lines().next(), Some("facet 0 1 2"));
    }

    #[test]
    fn edge_orientation() {
        let d = simplex(1).boundary_matrix(1);
        assert_eq!(d.get(0, 0), Int::from(-1));
        assert_eq!(d.get(1, 0), Int::ONE);
    }

    #[test]
    fn boundaries() {
        assert_eq!(simplex(2).boundary_subcomplex().unwrap(), sphere(1));
        assert!(sphere(2).boundary_subcomplex().unwrap().is_empty());
        let book = parse_complex("facet a b c\nfacet a b d\nfacet a b e").unwrap();
        assert_eq!(
            book.boundary_subcomplex(),
            Err(Error::NotPseudomanifold {
                simplex: "a b".into(),
                count: 3
            })
        );
    }

    #[test]
    fn subcomplexes() {
        let t = simplex(2);
        assert!(is_full_subcomplex(&t, &t));
        assert!(is_full_subcomplex(&sphere(1), &t));
        let abc = parse_complex("facet a b c").unwrap();
        let abd = parse_complex("facet a b d").unwrap();
        assert!(!is_full_subcomplex(&abc, &abd));
    }

    #[test]
    fn stars_and_subdivision() {
        let s = sphere(2);
        assert_eq!(s.closed_star("0").unwrap().f_vector(), vec![4, 6, 3]);
        assert_eq!(s.delete_open_star("0").unwrap(), parse_complex("facet 1 2 3").unwrap());
        let sd = simplex(2).barycentric_subdivision().unwrap();
        assert_eq!(sd.f_vector(), vec![7, 12, 6]);
        assert_eq!(sd.euler_characteristic(), 1);
        assert!(sd.vertex_index("0_1_2").is_some());
    }

    #[test]
    fn labels_sort_as_strings() {
        let k = parse_complex("facet 2 10 1").unwrap();
        assert_eq!(k.labels(), ["1", "10", "2"]);
        assert_eq!(k.serialize(), "facet 1 10 2\n");
    }
}
