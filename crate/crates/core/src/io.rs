//! The `.cplx` facet-list format and the `.map` JSON format.
//!
//! `.cplx`: UTF-8 text, one facet per line, vertices are whitespace-separated
//! names matching `[A-Za-z0-9_(),'{}-]+`; `#` starts a comment to end of
//! line; blank lines are ignored. Serialization is bit-exact: facets are
//! sorted lexicographically by their sorted vertex names.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::maps::{make_map, SimplicialMap};
use crate::Result;

fn valid_name(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_(),'{}-".contains(c))
}

/// Parses a facet-list document into a canonical complex.
///
/// Non-maximal input faces are absorbed; isolated declared vertices stay as
/// 0-dimensional facets. Vertex ids are assigned by first appearance in the
/// canonical (name-sorted) facet list.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut name_facets: Vec<Vec<String>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut facet: Vec<String> = Vec::new();
        for token in line.split_whitespace() {
            if !valid_name(token) {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("unparsable token {token:?}"),
                });
            }
            if facet.iter().any(|t| t == token) {
                return Err(Error::DuplicateVertex {
                    name: token.to_string(),
                    line: lineno + 1,
                });
            }
            facet.push(token.to_string());
        }
        if !facet.is_empty() {
            facet.sort();
            name_facets.push(facet);
        }
    }
    if name_facets.is_empty() {
        return Err(Error::EmptyDocument);
    }
    name_facets.sort();
    name_facets.dedup();

    let mut names: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, u32> = BTreeMap::new();
    let mut id_facets: Vec<Vec<u32>> = Vec::with_capacity(name_facets.len());
    for facet in &name_facets {
        let mut ids = Vec::with_capacity(facet.len());
        for name in facet {
            let id = *index.entry(name.clone()).or_insert_with(|| {
                names.push(name.clone());
                (names.len() - 1) as u32
            });
            ids.push(id);
        }
        id_facets.push(ids);
    }
    SimplicialComplex::from_facets(names, id_facets)
}

/// Serializes a complex in the canonical `.cplx` form.
pub fn serialize_complex(k: &SimplicialComplex) -> String {
    let mut lines: Vec<Vec<&str>> = k
        .facets()
        .iter()
        .map(|f| {
            let mut names: Vec<&str> = f.vertices().iter().map(|&v| k.name(v)).collect();
            names.sort_unstable();
            names
        })
        .collect();
    lines.sort();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path)?;
    parse_complex(&text)
}

/// On-disk form of a simplicial map: complex paths plus a name-level
/// assignment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    pub assignment: BTreeMap<String, String>,
}

impl MapFile {
    pub fn from_map(map: &SimplicialMap, domain_path: &str, codomain_path: &str) -> Self {
        let mut assignment = BTreeMap::new();
        for (v, &w) in map.assignment().iter().enumerate() {
            assignment.insert(
                map.domain().name(v as u32).to_string(),
                map.codomain().name(w).to_string(),
            );
        }
        MapFile {
            domain: domain_path.to_string(),
            codomain: codomain_path.to_string(),
            assignment,
        }
    }
}

/// A map loaded from disk together with the resolved complex paths.
pub struct LoadedMap {
    pub map: SimplicialMap,
    pub domain_path: PathBuf,
    pub codomain_path: PathBuf,
}

/// Reads a `.map` JSON file; complex paths are resolved relative to the map
/// file's directory.
pub fn load_map(path: &Path) -> Result<LoadedMap> {
    let text = std::fs::read_to_string(path)?;
    let file: MapFile = serde_json::from_str(&text)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let domain_path = base.join(&file.domain);
    let codomain_path = base.join(&file.codomain);
    let domain = Arc::new(load_complex(&domain_path)?);
    let codomain = Arc::new(load_complex(&codomain_path)?);
    let map = map_from_names(&domain, &codomain, &file.assignment)?;
    Ok(LoadedMap {
        map,
        domain_path,
        codomain_path,
    })
}

/// Builds and validates a map from a name-level assignment.
pub fn map_from_names(
    domain: &Arc<SimplicialComplex>,
    codomain: &Arc<SimplicialComplex>,
    assignment: &BTreeMap<String, String>,
) -> Result<SimplicialMap> {
    let mut ids = Vec::with_capacity(domain.vertex_count());
    for v in 0..domain.vertex_count() as u32 {
        let name = domain.name(v);
        let target = assignment
            .get(name)
            .ok_or_else(|| Error::PartialAssignment(name.to_string()))?;
        let w = codomain
            .vertex_by_name(target)
            .ok_or_else(|| Error::UnknownVertex(target.clone()))?;
        ids.push(w);
    }
    make_map(domain, codomain, ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_facet() {
        let k = parse_complex("a b c").unwrap();
        assert_eq!(k.vertex_count(), 3);
        assert_eq!(k.facet_count(), 1);
    }

    #[test]
    fn already_maximal_edges() {
        let k = parse_complex("a b\nb c\nc a").unwrap();
        assert_eq!(k.facet_count(), 3);
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn absorbs_subset_face() {
        let k = parse_complex("a b c\na b").unwrap();
        assert_eq!(k.facet_count(), 1);
        assert_eq!(k.facet(0).vertices().len(), 3);
    }

    #[test]
    fn keeps_isolated_vertex() {
        let k = parse_complex("a b\nz").unwrap();
        assert_eq!(k.facet_count(), 2);
        assert!(k.is_simplex(&["z"]).unwrap());
    }

    #[test]
    fn comments_and_blanks() {
        let k = parse_complex("# preamble\n\na b # the edge\n").unwrap();
        assert_eq!(k.facet_count(), 1);
    }

    #[test]
    fn rejects_duplicate_in_facet() {
        assert!(matches!(
            parse_complex("a b a"),
            Err(Error::DuplicateVertex { .. })
        ));
    }

    #[test]
    fn rejects_empty_document() {
        assert!(matches!(parse_complex("# nothing"), Err(Error::EmptyDocument)));
    }

    #[test]
    fn rejects_bad_token() {
        assert!(matches!(parse_complex("a b*c"), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialization_is_canonical() {
        let k = parse_complex("c b\nb a\na c\n").unwrap();
        assert_eq!(serialize_complex(&k), "a b\na c\nb c\n");
        let k2 = parse_complex(&serialize_complex(&k)).unwrap();
        assert_eq!(serialize_complex(&k2), serialize_complex(&k));
    }
}
