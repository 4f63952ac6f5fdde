//! Named triangulations. Every entry is checked against its documented
//! homology before it is handed out.

use std::collections::BTreeMap;
use std::path::Path;

use crate::algebra::AbelianGroup;
use crate::complex::{parse_complex, simplicial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::homology_all;

const POINCARE16: &str = include_str!("../data/poincare16.txt");

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub complex: SimplicialComplex,
    pub description: String,
    pub provenance: String,
    /// A free vertex involution shipped with the entry, as label pairs.
    pub involution: Option<BTreeMap<String, String>>,
}

/// Ids accepted by [`catalog`].
pub fn catalog_ids() -> Vec<String> {
    let mut ids: Vec<String> = (0..=4).map(|n| format!("simplex:{n}")).collect();
    ids.extend((0..=3).map(|n| format!("sphere:{n}")));
    ids.extend(["rp2", "octahedron", "poincare16", "poincare_punctured"].map(String::from));
    ids
}

fn groups(ranks: &[(usize, &[u64])]) -> Vec<AbelianGroup> {
    ranks
        .iter()
        .map(|&(free, torsion)| {
            let t: Vec<AbelianGroup> = torsion.iter().map(|&m| AbelianGroup::cyclic(m)).collect();
            t.iter().fold(AbelianGroup::free(free), |a, b| a.direct_sum(b))
        })
        .collect()
}

fn sphere_homology(n: usize) -> Vec<AbelianGroup> {
    if n == 0 {
        return groups(&[(2, &[])]);
    }
    let mut g = vec![AbelianGroup::zero(); n + 1];
    g[0] = AbelianGroup::free(1);
    g[n] = AbelianGroup::free(1);
    g
}

fn check_homology(id: &str, what: &str, k: &SimplicialComplex, expected: &[AbelianGroup]) -> Result<()> {
    let h = homology_all(k.to_cw().chain())?;
    let len = expected.len().max(h.groups.len());
    if (0..len).any(|d| h.get(d) != expected.get(d).cloned().unwrap_or_default()) {
        return Err(Error::CatalogValidation {
            id: id.into(),
            reason: format!("{what} homology is ({}), not as documented", h.as_strings().join(", ")),
        });
    }
    Ok(())
}

fn check_f_vector(id: &str, k: &SimplicialComplex, expected: &[usize]) -> Result<()> {
    if k.f_vector() != expected {
        return Err(Error::CatalogValidation {
            id: id.into(),
            reason: format!("f-vector {:?}, expected {:?}", k.f_vector(), expected),
        });
    }
    Ok(())
}

fn rp2() -> SimplicialComplex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 1, 5],
        [0, 4, 5],
        [0, 3, 4],
        [1, 2, 4],
        [1, 3, 4],
        [1, 3, 5],
        [2, 3, 5],
        [2, 4, 5],
    ];
    let facets: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect();
    SimplicialComplex::from_facets(&facets).expect("static facet list")
}

fn octahedron() -> (SimplicialComplex, BTreeMap<String, String>) {
    let mut facets = Vec::new();
    for x in ["x0", "x1"] {
        for y in ["y0", "y1"] {
            for z in ["z0", "z1"] {
                facets.push(vec![x, y, z]);
            }
        }
    }
    let k = SimplicialComplex::from_facets(&facets).expect("static facet list");
    let map = [("x0", "x1"), ("y0", "y1"), ("z0", "z1")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    (k, map)
}

fn poincare16(id: &str) -> Result<SimplicialComplex> {
    let k = parse_complex(POINCARE16)?;
    check_f_vector(id, &k, &[16, 106, 180, 90])?;
    if !k.boundary_subcomplex()?.is_empty() {
        return Err(Error::CatalogValidation {
            id: id.into(),
            reason: "not a closed pseudomanifold".into(),
        });
    }
    check_homology(id, "", &k, &groups(&[(1, &[]), (0, &[]), (0, &[]), (1, &[])]))?;
    Ok(k)
}

/// Loads and validates a catalog entry.
pub fn catalog(id: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(id.to_string());
    let entry = |complex, description: &str, provenance: &str| CatalogEntry {
        id: id.to_string(),
        complex,
        description: description.into(),
        provenance: provenance.into(),
        involution: None,
    };
    if let Some(n) = id.strip_prefix("simplex:") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n > 4 {
            return Err(unknown());
        }
        let k = simplicial::simplex(n);
        check_homology(id, "", &k, &groups(&[(1, &[])]))?;
        return Ok(entry(k, &format!("the full {n}-simplex"), "standard"));
    }
    if let Some(n) = id.strip_prefix("sphere:") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n > 3 {
            return Err(unknown());
        }
        let k = simplicial::sphere(n);
        check_homology(id, "", &k, &sphere_homology(n))?;
        return Ok(entry(k, &format!("boundary of the {}-simplex, a {n}-sphere", n + 1), "standard"));
    }
    match id {
        "rp2" => {
            let k = rp2();
            check_f_vector(id, &k, &[6, 15, 10])?;
            check_homology(id, "", &k, &groups(&[(1, &[]), (0, &[2])]))?;
            Ok(entry(k, "6-vertex real projective plane", "the minimal vertex-transitive triangulation, as distributed with SageMath"))
        }
        "octahedron" => {
            let (k, map) = octahedron();
            check_homology(id, "", &k, &sphere_homology(2))?;
            crate::equivariant::FreeInvolutionComplex::from_vertex_involution(&k, &map).map_err(|e| Error::CatalogValidation {
                id: id.into(),
                reason: e.to_string(),
            })?;
            let mut e = entry(k, "boundary of the octahedron with the antipodal map", "standard");
            e.involution = Some(map);
            Ok(e)
        }
        "poincare16" => Ok(entry(
            poincare16(id)?,
            "16-vertex Poincare homology 3-sphere",
            "Bjorner-Lutz triangulation as distributed with SageMath; re-verified on load",
        )),
        "poincare_punctured" => {
            let sphere = poincare16(id)?;
            let first = sphere.labels()[0].clone();
            let k = sphere.delete_open_star(&first)?;
            check_homology(id, "", &k, &groups(&[(1, &[])]))?;
            check_homology(id, "boundary", &k.boundary_subcomplex()?, &sphere_homology(2))?;
            Ok(entry(
                k,
                &format!("Poincare homology sphere minus the open star of vertex {first}: a nontrivial homology 3-ball"),
                "derived from poincare16",
            ))
        }
        _ => Err(unknown()),
    }
}

/// `catalog:<id>` or a path to a facet-list file.
pub fn load_complex(source: &str) -> Result<(SimplicialComplex, Option<BTreeMap<String, String>>)> {
    if let Some(id) = source.strip_prefix("catalog:") {
        let e = catalog(id)?;
        return Ok((e.complex, e.involution));
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{source}`: {e}")))?;
    Ok((parse_complex(&text)?, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for id in catalog_ids() {
            let e = catalog(&id).unwrap_or_else(|err| panic!("{id}: {err}"));
            assert_eq!(e.id, id);
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(catalog("sphere:2").unwrap().complex.f_vector(), vec![4, 6, 4]);
        assert_eq!(catalog("poincare16").unwrap().complex.f_vector(), vec![16, 106, 180, 90]);
        assert_eq!(catalog("poincare_punctured").unwrap().complex.labels()[0], "10");
    }

    #[test]
    fn unknown_ids() {
        for id in ["simplex:5", "sphere:4", "torus", "simplex:x"] {
            assert!(matches!(catalog(id), Err(Error::UnknownCatalogEntry(_))));
        }
    }

    #[test]
    fn corrupted_data_is_rejected() {
        let k = parse_complex(&POINCARE16.replacen("facet 1 2 4 9", "facet 1 2 4 10", 1)).unwrap();
        assert!(check_f_vector("x", &k, &[16, 106, 180, 90]).is_err() || check_homology("x", "", &k, &sphere_homology(3)).is_err());
    }
}
