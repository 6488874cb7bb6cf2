//! Dominated-vertex detection, elementary strong collapses with explicit
//! retraction maps, core computation, and strong-homotopy-type comparison.

use std::sync::Arc;

use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::iso::are_isomorphic;
use crate::maps::{compose, identity, make_map, SimplicialMap};
use crate::Result;

/// Result of iterated strong collapse.
///
/// `retraction ∘ inclusion` is the identity on the core, and the core has no
/// dominated vertex.
#[derive(Debug, Clone)]
pub struct CoreResult {
    pub core: Arc<SimplicialComplex>,
    /// original → core, the composite of the per-step fold maps
    pub retraction: SimplicialMap,
    /// core → original
    pub inclusion: SimplicialMap,
    /// ordered (dominated vertex, dominating vertex) name pairs
    pub elimination_trace: Vec<(String, String)>,
}

/// All vertices `v' ≠ v` such that every facet containing `v` also contains
/// `v'`; equivalently `(∩ facets ∋ v) ∖ {v}`, ascending.
pub fn dominated_by(k: &SimplicialComplex, v: u32) -> Result<Vec<u32>> {
    if v as usize >= k.vertex_count() {
        return Err(Error::UnknownVertex(format!("id {v}")));
    }
    let incident = k.incident_facets(v);
    let mut inter = k.facet_bits(incident[0] as usize).clone();
    for &fi in &incident[1..] {
        inter.intersect_with(k.facet_bits(fi as usize));
    }
    inter.remove(v as usize);
    Ok(inter.ones().map(|w| w as u32).collect())
}

/// The lowest-id dominated vertex together with its lowest-id dominator.
fn first_dominated(k: &SimplicialComplex) -> Option<(u32, u32)> {
    for v in 0..k.vertex_count() as u32 {
        if let Ok(doms) = dominated_by(k, v) {
            if let Some(&w) = doms.first() {
                return Some((v, w));
            }
        }
    }
    None
}

/// One elementary strong collapse: removes `v` (dominated by `w`) and returns
/// the collapsed complex plus the fold map and the inclusion back.
fn collapse_step(
    k: &Arc<SimplicialComplex>,
    v: u32,
    w: u32,
) -> Result<(Arc<SimplicialComplex>, SimplicialMap, SimplicialMap)> {
    let survivors: Vec<u32> = (0..k.vertex_count() as u32).filter(|&u| u != v).collect();
    let mut old_to_new = vec![u32::MAX; k.vertex_count()];
    for (i, &u) in survivors.iter().enumerate() {
        old_to_new[u as usize] = i as u32;
    }
    let names: Vec<String> = survivors.iter().map(|&u| k.name(u).to_string()).collect();
    let facets: Vec<Vec<u32>> = k
        .facets()
        .iter()
        .map(|f| {
            f.vertices()
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| old_to_new[u as usize])
                .collect()
        })
        .collect();
    let collapsed = Arc::new(SimplicialComplex::from_facets(names, facets)?);
    // Fold map: v ↦ w, identity elsewhere (in new ids).
    let fold: Vec<u32> = (0..k.vertex_count() as u32)
        .map(|u| {
            if u == v {
                old_to_new[w as usize]
            } else {
                old_to_new[u as usize]
            }
        })
        .collect();
    let fold = make_map(k, &collapsed, fold)?;
    let incl: Vec<u32> = survivors.clone();
    let incl = make_map(&collapsed, k, incl)?;
    Ok((collapsed, fold, incl))
}

/// Iterated strong collapse with the deterministic elimination order:
/// lowest-id dominated vertex first, folded to its lowest-id dominator.
pub fn core(k: &Arc<SimplicialComplex>) -> Result<CoreResult> {
    let mut current = Arc::clone(k);
    let mut retraction = identity(k);
    let mut inclusion = identity(k);
    let mut trace = Vec::new();
    while let Some((v, w)) = first_dominated(&current) {
        trace.push((
            current.name(v).to_string(),
            current.name(w).to_string(),
        ));
        let (next, fold, incl) = collapse_step(&current, v, w)?;
        retraction = compose(&fold, &retraction)?;
        inclusion = compose(&inclusion, &incl)?;
        current = next;
    }
    Ok(CoreResult {
        core: current,
        retraction,
        inclusion,
        elimination_trace: trace,
    })
}

/// True iff the core is a single vertex.
pub fn is_strongly_collapsible(k: &Arc<SimplicialComplex>) -> Result<bool> {
    Ok(core(k)?.core.vertex_count() == 1)
}

/// True iff the cores are isomorphic. By the Barmak–Minian characterization
/// of strong homotopy types via cores, this decides whether the complexes
/// are related by a sequence of strong collapses and expansions.
pub fn same_strong_homotopy_type(
    a: &Arc<SimplicialComplex>,
    b: &Arc<SimplicialComplex>,
) -> Result<bool> {
    Ok(are_isomorphic(&core(a)?.core, &core(b)?.core))
}

/// The fold chain `id = g_0, g_1, …, g_m = inclusion ∘ retraction` of maps
/// `K → K`, where `g_k` folds the first `k` eliminated vertices onto their
/// (iterated) dominators. Consecutive maps are one-step contiguous: for a
/// facet `σ`, `g_k(σ)` is a simplex and `g_{k+1}(σ)` adds at most the
/// dominator of the step, which lies in every facet containing the dominated
/// vertex.
pub fn fold_chain(k: &Arc<SimplicialComplex>, result: &CoreResult) -> Result<Vec<SimplicialMap>> {
    let mut chain = vec![identity(k)];
    let mut fold: Vec<u32> = (0..k.vertex_count() as u32).collect();
    for (dom, by) in &result.elimination_trace {
        let v = k
            .vertex_by_name(dom)
            .ok_or_else(|| Error::UnknownVertex(dom.clone()))?;
        let w = k
            .vertex_by_name(by)
            .ok_or_else(|| Error::UnknownVertex(by.clone()))?;
        for entry in fold.iter_mut() {
            if *entry == v {
                *entry = w;
            }
        }
        chain.push(make_map(k, k, fold.clone())?);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_complex;

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn domination_in_full_triangle() {
        let full = arc("a b c");
        let a = full.vertex_by_name("a").unwrap();
        assert_eq!(dominated_by(&full, a).unwrap().len(), 2);
    }

    #[test]
    fn no_domination_in_boundary() {
        let bd = arc("a b\na c\nb c");
        for v in 0..3 {
            assert!(dominated_by(&bd, v).unwrap().is_empty());
        }
    }

    #[test]
    fn simplex_cores_to_point() {
        for n in 1..=4 {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let k = Arc::new(
                SimplicialComplex::from_facets(names, vec![(0..n as u32).collect()]).unwrap(),
            );
            let res = core(&k).unwrap();
            assert_eq!(res.core.vertex_count(), 1);
            assert_eq!(res.retraction.is_constant(), Some(0));
            assert!(is_strongly_collapsible(&k).unwrap());
        }
    }

    #[test]
    fn cycle_is_its_own_core() {
        let c4 = arc("a b\nb c\nc d\na d");
        let res = core(&c4).unwrap();
        assert_eq!(res.core.as_ref(), c4.as_ref());
        assert!(res.elimination_trace.is_empty());
        assert!(res.retraction.is_identity());
        assert!(!is_strongly_collapsible(&c4).unwrap());
    }

    #[test]
    fn retraction_section_identity() {
        let k = arc("a b c\nb c d\nc d e");
        let res = core(&k).unwrap();
        let round = compose(&res.retraction, &res.inclusion).unwrap();
        assert!(round.is_identity());
        // Core is a fixed point.
        let again = core(&res.core).unwrap();
        assert_eq!(again.core.as_ref(), res.core.as_ref());
    }

    #[test]
    fn strong_homotopy_types() {
        let full = arc("a b c");
        let point = arc("p");
        assert!(same_strong_homotopy_type(&full, &point).unwrap());
        let bd = arc("a b\na c\nb c");
        let c4 = arc("a b\nb c\nc d\na d");
        assert!(!same_strong_homotopy_type(&bd, &c4).unwrap());
        let edge = arc("a b");
        let p2 = arc("a b\nb c");
        assert!(same_strong_homotopy_type(&edge, &p2).unwrap());
    }

    #[test]
    fn deterministic_trace() {
        let text = "a b c\nb c d\nc d e";
        let k1 = arc(text);
        let k2 = arc(text);
        assert_eq!(
            core(&k1).unwrap().elimination_trace,
            core(&k2).unwrap().elimination_trace
        );
    }

    #[test]
    fn fold_chain_ends_at_composite() {
        let k = arc("a b c\nb c d");
        let res = core(&k).unwrap();
        let chain = fold_chain(&k, &res).unwrap();
        assert!(chain.first().unwrap().is_identity());
        let composite = compose(&res.inclusion, &res.retraction).unwrap();
        assert_eq!(chain.last().unwrap(), &composite);
    }
}
