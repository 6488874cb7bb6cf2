use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::Error;
use crate::Result;

/// A simplicial map: a total vertex assignment validated to carry every
/// facet (hence every simplex) onto a simplex of the codomain.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    assignment: Vec<u32>,
}

impl PartialEq for SimplicialMap {
    /// Assignment-level equality (not contiguity-class equality).
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && same_complex(&self.domain, &other.domain)
            && same_complex(&self.codomain, &other.codomain)
    }
}

impl Eq for SimplicialMap {}

/// Complex identity for composability checks: pointer equality with a
/// structural fallback.
pub fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

impl SimplicialMap {
    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.assignment[v as usize]
    }

    /// Image of an id set as a codomain vertex bitset.
    pub fn image_bits(&self, ids: &[u32]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.codomain.vertex_count());
        for &v in ids {
            bits.insert(self.assignment[v as usize] as usize);
        }
        bits
    }

    /// Image of an id set as a sorted, deduplicated id list.
    pub fn image_ids(&self, ids: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = ids.iter().map(|&v| self.assignment[v as usize]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_identity(&self) -> bool {
        same_complex(&self.domain, &self.codomain)
            && self.assignment.iter().enumerate().all(|(v, &w)| v as u32 == w)
    }

    pub fn is_constant(&self) -> Option<u32> {
        let first = *self.assignment.first()?;
        self.assignment.iter().all(|&w| w == first).then_some(first)
    }
}

/// Validates and builds a simplicial map from a total id assignment.
pub fn make_map(
    domain: &Arc<SimplicialComplex>,
    codomain: &Arc<SimplicialComplex>,
    assignment: Vec<u32>,
) -> Result<SimplicialMap> {
    if assignment.len() != domain.vertex_count() {
        let missing = domain.name(assignment.len() as u32).to_string();
        return Err(Error::PartialAssignment(missing));
    }
    for &w in &assignment {
        if w as usize >= codomain.vertex_count() {
            return Err(Error::UnknownVertex(format!("codomain id {w}")));
        }
    }
    let map = SimplicialMap {
        domain: Arc::clone(domain),
        codomain: Arc::clone(codomain),
        assignment,
    };
    for f in domain.facets() {
        let image = map.image_ids(f.vertices());
        if !codomain.is_simplex_ids(&image) {
            let facet = f
                .vertices()
                .iter()
                .map(|&v| domain.name(v))
                .collect::<Vec<_>>()
                .join(",");
            let image = image
                .iter()
                .map(|&w| codomain.name(w))
                .collect::<Vec<_>>()
                .join(",");
            return Err(Error::NonSimplicial { facet, image });
        }
    }
    Ok(map)
}

/// The identity map on `k`.
pub fn identity(k: &Arc<SimplicialComplex>) -> SimplicialMap {
    SimplicialMap {
        domain: Arc::clone(k),
        codomain: Arc::clone(k),
        assignment: (0..k.vertex_count() as u32).collect(),
    }
}

/// The constant map at codomain vertex `w` (always simplicial: singletons are
/// simplices).
pub fn constant(
    domain: &Arc<SimplicialComplex>,
    codomain: &Arc<SimplicialComplex>,
    w: u32,
) -> Result<SimplicialMap> {
    if w as usize >= codomain.vertex_count() {
        return Err(Error::UnknownVertex(format!("codomain id {w}")));
    }
    Ok(SimplicialMap {
        domain: Arc::clone(domain),
        codomain: Arc::clone(codomain),
        assignment: vec![w; domain.vertex_count()],
    })
}

/// Composition `g ∘ f`; requires `codomain(f) = domain(g)`. Always
/// simplicial, so no revalidation is needed.
pub fn compose(g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
    if !same_complex(f.codomain(), g.domain()) {
        return Err(Error::DomainMismatch(
            "compose: codomain of f is not the domain of g".into(),
        ));
    }
    let assignment = f
        .assignment
        .iter()
        .map(|&v| g.assignment[v as usize])
        .collect();
    Ok(SimplicialMap {
        domain: Arc::clone(f.domain()),
        codomain: Arc::clone(g.codomain()),
        assignment,
    })
}

/// Restriction of `f` to a facet-generated subcomplex of its domain; the
/// codomain is unchanged.
pub fn restrict_map(f: &SimplicialMap, piece: &Subcomplex) -> Result<SimplicialMap> {
    if !same_complex(piece.parent(), f.domain()) {
        return Err(Error::DomainMismatch(
            "restrict_map: piece parent is not the map domain".into(),
        ));
    }
    let assignment = piece
        .vertex_to_parent()
        .iter()
        .map(|&v| f.assignment[v as usize])
        .collect();
    Ok(SimplicialMap {
        domain: Arc::clone(piece.complex()),
        codomain: Arc::clone(f.codomain()),
        assignment,
    })
}

/// The inclusion of a facet-generated subcomplex into its parent.
pub fn inclusion(piece: &Subcomplex) -> SimplicialMap {
    SimplicialMap {
        domain: Arc::clone(piece.complex()),
        codomain: Arc::clone(piece.parent()),
        assignment: piece.vertex_to_parent().to_vec(),
    }
}

/// Builds a map without facet validation. Only for callers that guarantee
/// simpliciality structurally (e.g. BFS states, which are validated by the
/// neighbor enumeration itself).
pub(crate) fn make_map_unchecked(
    domain: &Arc<SimplicialComplex>,
    codomain: &Arc<SimplicialComplex>,
    assignment: Vec<u32>,
) -> SimplicialMap {
    debug_assert!(assignment.len() == domain.vertex_count());
    SimplicialMap {
        domain: Arc::clone(domain),
        codomain: Arc::clone(codomain),
        assignment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{facet_mask, restrict};
    use crate::io::parse_complex;

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn identity_and_constant_are_valid() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        assert!(id.is_identity());
        let c = constant(&bd, &bd, 0).unwrap();
        assert_eq!(c.is_constant(), Some(0));
    }

    #[test]
    fn path_into_boundary() {
        // P2 with facets {a,b},{b,c} into the boundary of the triangle,
        // a↦a, b↦b, c↦a: the facet {b,c} lands on the edge {a,b}.
        let p2 = arc("a b\nb c");
        let bd = arc("a b\na c\nb c");
        let a = bd.vertex_by_name("a").unwrap();
        let b = bd.vertex_by_name("b").unwrap();
        let mut assignment = vec![0; 3];
        assignment[p2.vertex_by_name("a").unwrap() as usize] = a;
        assignment[p2.vertex_by_name("b").unwrap() as usize] = b;
        assignment[p2.vertex_by_name("c").unwrap() as usize] = a;
        assert!(make_map(&p2, &bd, assignment).is_ok());
    }

    #[test]
    fn rejects_non_simplicial() {
        // The full triangle cannot map onto three distinct vertices of its
        // boundary: the facet image {a,b,c} is not a simplex there.
        let full = arc("a b c");
        let bd = arc("a b\na c\nb c");
        let err = make_map(&full, &bd, vec![0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NonSimplicial { .. }));
    }

    #[test]
    fn rejects_partial_assignment() {
        let p2 = arc("a b\nb c");
        let err = make_map(&p2, &p2, vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::PartialAssignment(_)));
    }

    #[test]
    fn compose_identity_and_constant() {
        let bd = arc("a b\na c\nb c");
        let p2 = arc("a b\nb c");
        let f = make_map(&p2, &bd, vec![0, 1, 0]).unwrap();
        let id = identity(&bd);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let c = constant(&bd, &bd, 2).unwrap();
        let cf = compose(&c, &f).unwrap();
        assert_eq!(cf.is_constant(), Some(2));
    }

    #[test]
    fn compose_requires_matching_middle() {
        let bd = arc("a b\na c\nb c");
        let p2 = arc("a b\nb c");
        let f = make_map(&p2, &bd, vec![0, 1, 0]).unwrap();
        let g = identity(&p2);
        assert!(matches!(compose(&g, &f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn restriction_of_identity_is_inclusion() {
        let bd = arc("a b\na c\nb c");
        let piece = restrict(&bd, &facet_mask(&bd, &[0])).unwrap();
        let r = restrict_map(&identity(&bd), &piece).unwrap();
        assert_eq!(r, inclusion(&piece));
        let c = constant(&bd, &bd, 0).unwrap();
        let rc = restrict_map(&c, &piece).unwrap();
        assert_eq!(rc.is_constant(), Some(0));
    }

    #[test]
    fn compose_is_associative() {
        let p2 = arc("a b\nb c");
        let bd = arc("a b\na c\nb c");
        let f = make_map(&p2, &bd, vec![0, 1, 0]).unwrap();
        let g = make_map(&bd, &bd, vec![1, 0, 2]).unwrap(); // swap a,b
        let h = constant(&bd, &p2, 1).unwrap();
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        assert_eq!(left, right);
    }
}
