//! Barycentric subdivision of complexes and maps, categorical products with
//! projections, diagonal, and axis inclusions.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::complex::SimplicialComplex;
use crate::config::EngineConfig;
use crate::error::Error;
use crate::maps::{make_map, same_complex, SimplicialMap};
use crate::Result;

/// A barycentric subdivision together with the vertex ↔ base-simplex table.
///
/// Vertices of `sd K` are the simplices of `K`, enumerated by dimension then
/// lexicographically on vertex ids; facets are the maximal flags
/// `σ_0 ⊊ σ_1 ⊊ … ⊊ σ_d` inside each facet. A vertex is named
/// `{v_1,…,v_k}` with the base names sorted.
#[derive(Debug, Clone)]
pub struct SdComplex {
    pub complex: Arc<SimplicialComplex>,
    pub base: Arc<SimplicialComplex>,
    /// sd vertex id → base simplex (sorted base ids)
    simplices: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl SdComplex {
    /// The base simplex behind an sd vertex.
    pub fn base_simplex(&self, sd_vertex: u32) -> &[u32] {
        &self.simplices[sd_vertex as usize]
    }

    /// The sd vertex representing a base simplex.
    pub fn vertex_of(&self, simplex: &[u32]) -> Option<u32> {
        let mut key = simplex.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }
}

fn sd_vertex_name(base: &SimplicialComplex, simplex: &[u32]) -> String {
    let mut names: Vec<&str> = simplex.iter().map(|&v| base.name(v)).collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}

/// Barycentric subdivision, guarded by `cfg.sd_simplex_cap` on both the
/// number of simplices and the number of flags.
pub fn barycentric_subdivision(
    base: &Arc<SimplicialComplex>,
    cfg: &EngineConfig,
) -> Result<SdComplex> {
    let cap = cfg.sd_simplex_cap;
    let flag_count: u128 = base
        .facets()
        .iter()
        .map(|f| (1..=f.len() as u128).product::<u128>())
        .sum();
    if flag_count > cap as u128 {
        return Err(Error::SizeGuard {
            what: "barycentric subdivision flags",
            size: flag_count.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let simplices = base.all_simplices(cap).ok_or(Error::SizeGuard {
        what: "barycentric subdivision simplices",
        size: cap + 1,
        cap,
    })?;
    let mut index: HashMap<Vec<u32>, u32> = HashMap::with_capacity(simplices.len());
    for (i, s) in simplices.iter().enumerate() {
        index.insert(s.clone(), i as u32);
    }
    let names: Vec<String> = simplices
        .iter()
        .map(|s| sd_vertex_name(base, s))
        .collect();
    // Facets: per base facet, every maximal flag, i.e. every permutation of
    // its vertices read as prefix sets.
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for f in base.facets() {
        let vs = f.vertices();
        for perm in vs.iter().permutations(vs.len()) {
            let mut prefix: Vec<u32> = Vec::with_capacity(vs.len());
            let mut flag: Vec<u32> = Vec::with_capacity(vs.len());
            for &&v in &perm {
                prefix.push(v);
                prefix.sort_unstable();
                flag.push(index[&prefix]);
            }
            facets.push(flag);
        }
    }
    let complex = Arc::new(SimplicialComplex::from_facets(names, facets)?);
    Ok(SdComplex {
        complex,
        base: Arc::clone(base),
        simplices,
        index,
    })
}

/// The induced map `sd φ`, sending the simplex-vertex `σ` to the
/// simplex-vertex `φ(σ)`.
pub fn sd_map(f: &SimplicialMap, sd_dom: &SdComplex, sd_cod: &SdComplex) -> Result<SimplicialMap> {
    if !same_complex(&sd_dom.base, f.domain()) {
        return Err(Error::DomainMismatch(
            "sd_map: subdivision does not match the map domain".into(),
        ));
    }
    if !same_complex(&sd_cod.base, f.codomain()) {
        return Err(Error::CodomainMismatch(
            "sd_map: subdivision does not match the map codomain".into(),
        ));
    }
    let mut assignment = Vec::with_capacity(sd_dom.complex.vertex_count());
    for s in &sd_dom.simplices {
        let image = f.image_ids(s);
        let target = sd_cod
            .vertex_of(&image)
            .expect("image of a simplex is a simplex");
        assignment.push(target);
    }
    make_map(&sd_dom.complex, &sd_cod.complex, assignment)
}

/// A categorical product `K ∏ K'` with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub complex: Arc<SimplicialComplex>,
    pub left: Arc<SimplicialComplex>,
    pub right: Arc<SimplicialComplex>,
    pub p1: SimplicialMap,
    pub p2: SimplicialMap,
}

impl Product {
    /// Product vertex id of the pair `(v, w)`.
    pub fn pair_vertex(&self, v: u32, w: u32) -> u32 {
        v * self.right.vertex_count() as u32 + w
    }
}

/// Builds the categorical product: vertices are all pairs, facets are the
/// products `σ × τ` of facets. A vertex set is a simplex iff both
/// projections are simplices, which holds by construction of the facet list.
pub fn categorical_product(
    left: &Arc<SimplicialComplex>,
    right: &Arc<SimplicialComplex>,
    cfg: &EngineConfig,
) -> Result<Product> {
    let vpairs = left.vertex_count() * right.vertex_count();
    if vpairs > cfg.product_vertex_cap {
        return Err(Error::SizeGuard {
            what: "product vertex pairs",
            size: vpairs,
            cap: cfg.product_vertex_cap,
        });
    }
    let fpairs = left.facet_count() * right.facet_count();
    if fpairs > cfg.product_facet_cap {
        return Err(Error::SizeGuard {
            what: "product facet pairs",
            size: fpairs,
            cap: cfg.product_facet_cap,
        });
    }
    let nr = right.vertex_count() as u32;
    let mut names = Vec::with_capacity(vpairs);
    for v in 0..left.vertex_count() as u32 {
        for w in 0..nr {
            names.push(format!("({},{})", left.name(v), right.name(w)));
        }
    }
    let mut facets: Vec<Vec<u32>> = Vec::with_capacity(fpairs);
    for sigma in left.facets() {
        for tau in right.facets() {
            let mut cell = Vec::with_capacity(sigma.len() * tau.len());
            for &v in sigma.vertices() {
                for &w in tau.vertices() {
                    cell.push(v * nr + w);
                }
            }
            facets.push(cell);
        }
    }
    let complex = Arc::new(SimplicialComplex::from_facets(names, facets)?);
    // Distinct facet pairs are incomparable because only maximal simplices
    // are paired; the constructor's absorption must therefore be a no-op.
    debug_assert_eq!(complex.facet_count(), fpairs);
    let p1 = make_map(
        &complex,
        left,
        (0..vpairs as u32).map(|i| i / nr).collect(),
    )?;
    let p2 = make_map(
        &complex,
        right,
        (0..vpairs as u32).map(|i| i % nr).collect(),
    )?;
    Ok(Product {
        complex,
        left: Arc::clone(left),
        right: Arc::clone(right),
        p1,
        p2,
    })
}

/// The diagonal `v ↦ (v,v)` into a square product.
pub fn diagonal(product: &Product) -> Result<SimplicialMap> {
    if !same_complex(&product.left, &product.right) {
        return Err(Error::DomainMismatch(
            "diagonal: product is not a square".into(),
        ));
    }
    let assignment = (0..product.left.vertex_count() as u32)
        .map(|v| product.pair_vertex(v, v))
        .collect();
    make_map(&product.left, &product.complex, assignment)
}

/// Axis inclusion into a square product: slot 1 is `v ↦ (v, v0)`, slot 2 is
/// `v ↦ (v0, v)`.
pub fn axis_inclusion(product: &Product, v0: u32, slot: u8) -> Result<SimplicialMap> {
    if !same_complex(&product.left, &product.right) {
        return Err(Error::DomainMismatch(
            "axis_inclusion: product is not a square".into(),
        ));
    }
    if v0 as usize >= product.left.vertex_count() {
        return Err(Error::UnknownVertex(format!("id {v0}")));
    }
    let assignment = (0..product.left.vertex_count() as u32)
        .map(|v| match slot {
            1 => product.pair_vertex(v, v0),
            _ => product.pair_vertex(v0, v),
        })
        .collect();
    make_map(&product.left, &product.complex, assignment)
}

/// The pairing `v ↦ (f(v), g(v))` of two maps out of a common domain; the
/// universal map into the product.
pub fn pairing(product: &Product, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
    if !same_complex(f.domain(), g.domain()) {
        return Err(Error::DomainMismatch("pairing: domains differ".into()));
    }
    if !same_complex(f.codomain(), &product.left) || !same_complex(g.codomain(), &product.right) {
        return Err(Error::CodomainMismatch(
            "pairing: codomains do not match the product factors".into(),
        ));
    }
    let assignment = (0..f.domain().vertex_count() as u32)
        .map(|v| product.pair_vertex(f.apply(v), g.apply(v)))
        .collect();
    make_map(f.domain(), &product.complex, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_complex;
    use crate::iso::are_isomorphic;
    use crate::maps::{compose, constant, identity};

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn sd_of_edge_is_path() {
        let edge = arc("a b");
        let sd = barycentric_subdivision(&edge, &EngineConfig::default()).unwrap();
        assert_eq!(sd.complex.vertex_count(), 3);
        assert_eq!(sd.complex.facet_count(), 2);
        assert!(sd.complex.is_simplex(&["{a}", "{a,b}"]).unwrap());
        assert!(sd.complex.is_simplex(&["{b}", "{a,b}"]).unwrap());
        assert!(!sd.complex.is_simplex(&["{a}", "{b}"]).unwrap());
    }

    #[test]
    fn sd_of_boundary_is_hexagon() {
        let bd = arc("a b\na c\nb c");
        let sd = barycentric_subdivision(&bd, &EngineConfig::default()).unwrap();
        assert_eq!(sd.complex.vertex_count(), 6);
        assert_eq!(sd.complex.facet_count(), 6);
        let c6 = arc("a b\nb c\nc d\nd e\ne f\na f");
        assert!(are_isomorphic(&sd.complex, &c6));
    }

    #[test]
    fn sd_of_triangle() {
        let full = arc("a b c");
        let sd = barycentric_subdivision(&full, &EngineConfig::default()).unwrap();
        assert_eq!(sd.complex.vertex_count(), 7);
        assert_eq!(sd.complex.facet_count(), 6);
        assert_eq!(sd.complex.dim(), 2);
    }

    #[test]
    fn sd_size_guard() {
        let full = arc("a b c d e f");
        let mut cfg = EngineConfig::default();
        cfg.sd_simplex_cap = 10;
        assert!(matches!(
            barycentric_subdivision(&full, &cfg),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn sd_of_identity_is_identity() {
        let bd = arc("a b\na c\nb c");
        let sd = barycentric_subdivision(&bd, &EngineConfig::default()).unwrap();
        let sdid = sd_map(&identity(&bd), &sd, &sd).unwrap();
        assert!(sdid.is_identity());
    }

    #[test]
    fn sd_of_constant_is_constant() {
        let bd = arc("a b\na c\nb c");
        let sd = barycentric_subdivision(&bd, &EngineConfig::default()).unwrap();
        let c = constant(&bd, &bd, 0).unwrap();
        let sdc = sd_map(&c, &sd, &sd).unwrap();
        assert_eq!(sdc.is_constant(), sd.vertex_of(&[0]));
    }

    #[test]
    fn sd_of_collapse_to_point() {
        let edge = arc("a b");
        let point = arc("p");
        let f = constant(&edge, &point, 0).unwrap();
        let sd_e = barycentric_subdivision(&edge, &EngineConfig::default()).unwrap();
        let sd_p = barycentric_subdivision(&point, &EngineConfig::default()).unwrap();
        let sdf = sd_map(&f, &sd_e, &sd_p).unwrap();
        assert_eq!(sdf.is_constant(), Some(0));
    }

    #[test]
    fn sd_functorial() {
        let p2 = arc("a b\nb c");
        let bd = arc("a b\na c\nb c");
        let cfg = EngineConfig::default();
        let f = make_map(&p2, &bd, vec![0, 1, 0]).unwrap();
        let g = make_map(&bd, &bd, vec![1, 0, 2]).unwrap();
        let sd_p2 = barycentric_subdivision(&p2, &cfg).unwrap();
        let sd_bd = barycentric_subdivision(&bd, &cfg).unwrap();
        let lhs = sd_map(&compose(&g, &f).unwrap(), &sd_p2, &sd_bd).unwrap();
        let rhs = compose(
            &sd_map(&g, &sd_bd, &sd_bd).unwrap(),
            &sd_map(&f, &sd_p2, &sd_bd).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_of_edges_is_full_tetrahedron() {
        let edge = arc("a b");
        let prod = categorical_product(&edge, &edge, &EngineConfig::default()).unwrap();
        assert_eq!(prod.complex.vertex_count(), 4);
        assert_eq!(prod.complex.facet_count(), 1);
        assert_eq!(prod.complex.dim(), 3);
    }

    #[test]
    fn product_of_boundaries() {
        let bd = arc("a b\na c\nb c");
        let prod = categorical_product(&bd, &bd, &EngineConfig::default()).unwrap();
        assert_eq!(prod.complex.vertex_count(), 9);
        assert_eq!(prod.complex.facet_count(), 9);
        assert!(prod.complex.facets().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn product_with_point_is_identity() {
        let point = arc("p");
        let bd = arc("a b\na c\nb c");
        let prod = categorical_product(&point, &bd, &EngineConfig::default()).unwrap();
        assert!(are_isomorphic(&prod.complex, &bd));
    }

    #[test]
    fn diagonal_sections_projections() {
        let bd = arc("a b\na c\nb c");
        let prod = categorical_product(&bd, &bd, &EngineConfig::default()).unwrap();
        let diag = diagonal(&prod).unwrap();
        assert!(compose(&prod.p1, &diag).unwrap().is_identity());
        assert!(compose(&prod.p2, &diag).unwrap().is_identity());
    }

    #[test]
    fn axis_inclusion_identities() {
        let bd = arc("a b\na c\nb c");
        let prod = categorical_product(&bd, &bd, &EngineConfig::default()).unwrap();
        let i1 = axis_inclusion(&prod, 0, 1).unwrap();
        assert!(compose(&prod.p1, &i1).unwrap().is_identity());
        assert_eq!(compose(&prod.p2, &i1).unwrap().is_constant(), Some(0));
        let point = arc("p");
        let pp = categorical_product(&point, &point, &EngineConfig::default()).unwrap();
        let i2 = axis_inclusion(&pp, 0, 2).unwrap();
        assert_eq!(i2.assignment(), &[0]);
    }

    #[test]
    fn facet_count_bound() {
        let bd = arc("a b\na c\nb c");
        let p2 = arc("a b\nb c");
        let prod = categorical_product(&bd, &p2, &EngineConfig::default()).unwrap();
        assert!(prod.complex.facet_count() <= bd.facet_count() * p2.facet_count());
    }
}
