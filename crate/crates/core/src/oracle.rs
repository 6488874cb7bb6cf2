//! Independent brute-force implementations used only by tests and `--oracle`
//! runs to validate the optimized engine.
//!
//! The oracle shares only the complex/map types with the engine — none of
//! its search code — so agreement between the two is a meaningful check.

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::complex::restrict;
use crate::config::EngineConfig;
use crate::error::Error;
use crate::maps::{restrict_map, same_complex, SimplicialMap};
use crate::Result;

/// Direct transcription of one-step contiguity on facets, written
/// independently of the engine's bitset pools.
fn contiguous(
    dom_facets: &[Vec<u32>],
    codomain: &crate::complex::SimplicialComplex,
    f: &[u32],
    g: &[u32],
) -> bool {
    for facet in dom_facets {
        let mut joint: Vec<u32> = facet
            .iter()
            .flat_map(|&v| [f[v as usize], g[v as usize]])
            .collect();
        joint.sort_unstable();
        joint.dedup();
        if !codomain.is_simplex_ids(&joint) {
            return false;
        }
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Decides `f ∼ g` by enumerating every vertex assignment, keeping the
/// simplicial ones, building the contiguity graph pairwise, and checking
/// whether `f` and `g` share a connected component.
pub fn exhaustive_same_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<bool> {
    if !same_complex(f.domain(), g.domain()) || !same_complex(f.codomain(), g.codomain()) {
        return Err(Error::DomainMismatch(
            "oracle: maps are not comparable".into(),
        ));
    }
    let domain = f.domain();
    let codomain = f.codomain();
    let nv = domain.vertex_count();
    let nc = codomain.vertex_count() as u64;
    let mut total: u64 = 1;
    for _ in 0..nv {
        total = total.saturating_mul(nc);
        if total > cfg.oracle_assignment_cap as u64 {
            return Err(Error::CapExceeded {
                what: "oracle assignment enumeration",
            });
        }
    }

    let dom_facets: Vec<Vec<u32>> = domain.facets().iter().map(|x| x.vertices().to_vec()).collect();
    let simplicial = |assignment: &[u32]| -> bool {
        dom_facets.iter().all(|facet| {
            let mut img: Vec<u32> = facet.iter().map(|&v| assignment[v as usize]).collect();
            img.sort_unstable();
            img.dedup();
            codomain.is_simplex_ids(&img)
        })
    };

    let mut maps: Vec<Vec<u32>> = Vec::new();
    for assignment in std::iter::repeat_n(0..nc as u32, nv).multi_cartesian_product() {
        if simplicial(&assignment) {
            maps.push(assignment);
            if maps.len() > cfg.oracle_map_cap {
                return Err(Error::CapExceeded {
                    what: "oracle simplicial map count",
                });
            }
        }
    }

    let fi = maps
        .iter()
        .position(|m| m.as_slice() == f.assignment())
        .expect("f is simplicial");
    let gi = maps
        .iter()
        .position(|m| m.as_slice() == g.assignment())
        .expect("g is simplicial");
    if fi == gi {
        return Ok(true);
    }

    let mut uf = UnionFind::new(maps.len());
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if contiguous(&dom_facets, codomain, &maps[i], &maps[j]) {
                uf.union(i, j);
                if uf.find(fi) == uf.find(gi) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(uf.find(fi) == uf.find(gi))
}

/// Direct transcription of the distance definition: the minimum, over all
/// covers of the facet set by masks whose restrictions are oracle-good, of
/// `pieces − 1`.
pub fn exhaustive_distance(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<usize> {
    if !same_complex(phi.domain(), psi.domain()) || !same_complex(phi.codomain(), psi.codomain()) {
        return Err(Error::DomainMismatch(
            "oracle: maps are not comparable".into(),
        ));
    }
    let n = phi.domain().facet_count();
    if n > cfg.oracle_facet_cap {
        return Err(Error::CapExceeded {
            what: "oracle facet enumeration",
        });
    }
    let full: u64 = (1 << n) - 1;
    let mut good = vec![false; (full + 1) as usize];
    for mask in 1..=full {
        let mut bits = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if (mask >> i) & 1 == 1 {
                bits.insert(i);
            }
        }
        let piece = restrict(phi.domain(), &bits)?;
        let f = restrict_map(phi, &piece)?;
        let g = restrict_map(psi, &piece)?;
        good[mask as usize] = exhaustive_same_class(&f, &g, cfg)?;
    }
    // Subset DP over the uncovered facet set.
    let mut best = vec![usize::MAX; (full + 1) as usize];
    best[0] = 0;
    for state in 1..=full {
        let lowest = state.trailing_zeros();
        for mask in 1..=full {
            if !good[mask as usize] || (mask >> lowest) & 1 == 0 {
                continue;
            }
            let rest = state & !mask;
            if best[rest as usize] != usize::MAX {
                best[state as usize] = best[state as usize].min(best[rest as usize] + 1);
            }
        }
    }
    Ok(best[full as usize] - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::io::parse_complex;
    use crate::maps::{constant, identity};
    use std::sync::Arc;

    #[test]
    fn identity_same_class_with_itself() {
        let bd = Arc::new(parse_complex("a b\na c\nb c").unwrap());
        let id = identity(&bd);
        assert!(exhaustive_same_class(&id, &id, &EngineConfig::default()).unwrap());
    }

    #[test]
    fn boundary_identity_differs_from_constant() {
        let bd = Arc::new(parse_complex("a b\na c\nb c").unwrap());
        let id = identity(&bd);
        let c = constant(&bd, &bd, 0).unwrap();
        assert!(!exhaustive_same_class(&id, &c, &EngineConfig::default()).unwrap());
    }

    #[test]
    fn collapsible_identity_matches_constant() {
        let full = Arc::new(parse_complex("a b c").unwrap());
        let id = identity(&full);
        let c = constant(&full, &full, 1).unwrap();
        assert!(exhaustive_same_class(&id, &c, &EngineConfig::default()).unwrap());
    }

    #[test]
    fn distance_of_equal_maps() {
        let bd = Arc::new(parse_complex("a b\na c\nb c").unwrap());
        let id = identity(&bd);
        assert_eq!(
            exhaustive_distance(&id, &id, &EngineConfig::default()).unwrap(),
            0
        );
    }

    #[test]
    fn boundary_distance_identity_constant() {
        let bd = Arc::new(parse_complex("a b\na c\nb c").unwrap());
        let id = identity(&bd);
        let c = constant(&bd, &bd, 0).unwrap();
        assert_eq!(
            exhaustive_distance(&id, &c, &EngineConfig::default()).unwrap(),
            1
        );
    }

    #[test]
    fn fig3_distance_identity_constant() {
        let k = corpus::fig3();
        let id = identity(&k);
        let c = constant(&k, &k, 0).unwrap();
        assert_eq!(
            exhaustive_distance(&id, &c, &EngineConfig::default()).unwrap(),
            1
        );
    }

    #[test]
    fn cap_exceeded_reported() {
        let bd = Arc::new(parse_complex("a b\na c\nb c").unwrap());
        let id = identity(&bd);
        let mut cfg = EngineConfig::default();
        cfg.oracle_assignment_cap = 5;
        assert!(matches!(
            exhaustive_same_class(&id, &id, &cfg),
            Err(Error::CapExceeded { .. })
        ));
    }
}
