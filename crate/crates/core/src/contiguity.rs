//! One-step contiguity and contiguity-class decision.
//!
//! Two maps are contiguous when every facet's joint image `φ(σ) ∪ ψ(σ)` is a
//! simplex of the codomain (facets suffice: faces inherit the condition).
//! Class membership is decided by breadth-first search over the finite space
//! of simplicial maps, after reducing the codomain to its strong-collapse
//! core; the search is complete, so a negative answer is a refutation, not a
//! timeout. A state-cap overrun is reported as a distinct "unknown" outcome.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::collapse::{core, fold_chain};
use crate::complex::SimplicialComplex;
use crate::config::EngineConfig;
use crate::error::Error;
use crate::maps::{compose, make_map_unchecked, same_complex, SimplicialMap};
use crate::Result;

/// Outcome of a contiguity-class decision.
#[derive(Debug, Clone)]
pub enum ClassOutcome {
    /// A chain `φ = h_0 ∼c h_1 ∼c … ∼c h_m = ψ` witnessing membership.
    Same(Vec<SimplicialMap>),
    /// The component of `φ` was exhausted without reaching `ψ`.
    Different { explored: usize },
    /// The state cap was reached before the component was exhausted.
    Unknown { explored: usize },
}

impl ClassOutcome {
    pub fn is_same(&self) -> bool {
        matches!(self, ClassOutcome::Same(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ClassOutcome::Unknown { .. })
    }
}

fn check_compatible(f: &SimplicialMap, g: &SimplicialMap) -> Result<()> {
    if !same_complex(f.domain(), g.domain()) {
        return Err(Error::DomainMismatch(
            "contiguity: maps have different domains".into(),
        ));
    }
    if !same_complex(f.codomain(), g.codomain()) {
        return Err(Error::CodomainMismatch(
            "contiguity: maps have different codomains".into(),
        ));
    }
    Ok(())
}

/// One-step contiguity: `f(σ) ∪ g(σ)` is a simplex for every facet `σ`.
pub fn is_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    check_compatible(f, g)?;
    let codomain = f.codomain();
    for facet in f.domain().facets() {
        let mut bits = f.image_bits(facet.vertices());
        bits.union_with(&g.image_bits(facet.vertices()));
        if !codomain.contains_bits(&bits) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Facet-pool bitset abstraction: a `u64` fast path when the codomain has at
/// most 64 facets, a [`FixedBitSet`] fallback otherwise. Pools track, per
/// domain facet, which codomain facets still contain the accumulated joint
/// image; an empty pool prunes the branch.
trait Pool: Clone {
    fn intersect(&mut self, other: &Self);
    fn is_empty_pool(&self) -> bool;
}

impl Pool for u64 {
    fn intersect(&mut self, other: &Self) {
        *self &= other;
    }

    fn is_empty_pool(&self) -> bool {
        *self == 0
    }
}

impl Pool for FixedBitSet {
    fn intersect(&mut self, other: &Self) {
        self.intersect_with(other);
    }

    fn is_empty_pool(&self) -> bool {
        self.count_ones(..) == 0
    }
}

struct Dfs<'a, P: Pool> {
    domain: &'a SimplicialComplex,
    /// Codomain facets containing each codomain vertex.
    vertex_facets: &'a [P],
    /// Candidate codomain vertices per domain vertex.
    candidates: &'a [Vec<u32>],
    state: Vec<u32>,
    pools: Vec<P>,
    undo: Vec<P>,
    emit: &'a mut dyn FnMut(&[u32]) -> bool,
}

impl<P: Pool> Dfs<'_, P> {
    fn run(&mut self, v: usize) -> bool {
        if v == self.state.len() {
            return (self.emit)(&self.state);
        }
        let incident: &[u32] = self.domain.incident_facets(v as u32);
        for i in 0..self.candidates[v].len() {
            let w = self.candidates[v][i];
            let undo_base = self.undo.len();
            let mut dead = false;
            for k in 0..incident.len() {
                let fi = incident[k] as usize;
                self.undo.push(self.pools[fi].clone());
                self.pools[fi].intersect(&self.vertex_facets[w as usize]);
                if self.pools[fi].is_empty_pool() {
                    dead = true;
                }
            }
            if !dead {
                self.state[v] = w;
                if !self.run(v + 1) {
                    return false;
                }
            }
            for k in (0..incident.len()).rev() {
                let fi = incident[k] as usize;
                self.pools[fi] = self.undo.pop().unwrap();
                debug_assert!(self.undo.len() >= undo_base);
            }
        }
        true
    }
}

/// Enumerates assignments `g` with `base(σ) ∪ g(σ)` a simplex for every
/// facet `σ`; with `base = None` this is every simplicial map. `emit`
/// returns `false` to stop early. Returns `false` when stopped.
fn for_each_assignment(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    base: Option<&[u32]>,
    emit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let nf_cod = codomain.facet_count();
    if nf_cod <= 64 {
        let mut vertex_facets: Vec<u64> = vec![0; codomain.vertex_count()];
        for fi in 0..nf_cod {
            for &w in codomain.facet(fi).vertices() {
                vertex_facets[w as usize] |= 1 << fi;
            }
        }
        let full: u64 = if nf_cod == 64 {
            u64::MAX
        } else {
            (1u64 << nf_cod) - 1
        };
        let pools: Vec<u64> = pool_init(domain, codomain, base, full, 0u64, &|pool, fi| {
            *pool |= 1u64 << fi;
        });
        let candidates = candidates_for(domain, codomain, &pools, &|pool, fi| {
            pool & (1u64 << fi) != 0
        });
        let mut dfs = Dfs {
            domain,
            vertex_facets: &vertex_facets,
            candidates: &candidates,
            state: vec![0; domain.vertex_count()],
            pools,
            undo: Vec::new(),
            emit,
        };
        dfs.run(0)
    } else {
        let mut vertex_facets: Vec<FixedBitSet> =
            vec![FixedBitSet::with_capacity(nf_cod); codomain.vertex_count()];
        for fi in 0..nf_cod {
            for &w in codomain.facet(fi).vertices() {
                vertex_facets[w as usize].insert(fi);
            }
        }
        let full = {
            let mut f = FixedBitSet::with_capacity(nf_cod);
            f.insert_range(..);
            f
        };
        let empty = FixedBitSet::with_capacity(nf_cod);
        let pools: Vec<FixedBitSet> =
            pool_init(domain, codomain, base, full, empty, &|pool, fi| {
                pool.insert(fi);
            });
        let candidates = candidates_for(domain, codomain, &pools, &|pool, fi| {
            pool.contains(fi)
        });
        let mut dfs = Dfs {
            domain,
            vertex_facets: &vertex_facets,
            candidates: &candidates,
            state: vec![0; domain.vertex_count()],
            pools,
            undo: Vec::new(),
            emit,
        };
        dfs.run(0)
    }
}

/// Initial per-facet pools: all codomain facets when `base` is absent, the
/// facets containing the base image otherwise.
fn pool_init<P: Pool>(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    base: Option<&[u32]>,
    full: P,
    empty: P,
    insert: &dyn Fn(&mut P, usize),
) -> Vec<P> {
    match base {
        None => vec![full; domain.facet_count()],
        Some(f) => {
            let mut pools = Vec::with_capacity(domain.facet_count());
            for facet in domain.facets() {
                let mut img = FixedBitSet::with_capacity(codomain.vertex_count());
                for &v in facet.vertices() {
                    img.insert(f[v as usize] as usize);
                }
                let mut pool = empty.clone();
                let mut any = false;
                for fi in 0..codomain.facet_count() {
                    if img.is_subset(codomain.facet_bits(fi)) {
                        insert(&mut pool, fi);
                        any = true;
                    }
                }
                debug_assert!(any, "base map is not simplicial");
                pools.push(pool);
            }
            pools
        }
    }
}

/// Candidate codomain vertices per domain vertex: those whose insertion
/// keeps every incident facet's pool nonempty, i.e. vertices lying in some
/// still-admissible codomain facet for each incident domain facet.
fn candidates_for<P: Pool>(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    pools: &[P],
    pool_contains: &dyn Fn(&P, usize) -> bool,
) -> Vec<Vec<u32>> {
    let nv_cod = codomain.vertex_count();
    // Union of admissible facet vertex sets, per domain facet.
    let unions: Vec<FixedBitSet> = pools
        .iter()
        .map(|pool| {
            let mut u = FixedBitSet::with_capacity(nv_cod);
            for fi in 0..codomain.facet_count() {
                if pool_contains(pool, fi) {
                    u.union_with(codomain.facet_bits(fi));
                }
            }
            u
        })
        .collect();
    let mut candidates = Vec::with_capacity(domain.vertex_count());
    for v in 0..domain.vertex_count() {
        let mut c = FixedBitSet::with_capacity(nv_cod);
        c.insert_range(..);
        for &fi in domain.incident_facets(v as u32) {
            c.intersect_with(&unions[fi as usize]);
        }
        candidates.push(c.ones().map(|w| w as u32).collect());
    }
    candidates
}

/// All simplicial maps one-step contiguous to `f`, in canonical order.
/// Includes `f` itself (contiguity is reflexive).
pub fn contiguity_neighbors(f: &SimplicialMap) -> Vec<SimplicialMap> {
    let mut out = Vec::new();
    for_each_assignment(f.domain(), f.codomain(), Some(f.assignment()), &mut |a| {
        out.push(make_map_unchecked(f.domain(), f.codomain(), a.to_vec()));
        true
    });
    out
}

/// Enumerates every simplicial map `domain → codomain` in canonical order.
pub fn for_each_simplicial_map(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    emit: &mut dyn FnMut(&[u32]) -> bool,
) {
    for_each_assignment(domain, codomain, None, emit);
}

/// Decides whether `f ∼ g`, i.e. whether a finite chain of one-step
/// contiguities connects them.
///
/// The codomain is first reduced to its core: with retraction `r` and
/// inclusion `ι`, `f ∼ g` iff `r∘f ∼ r∘g`, because `ι∘r` is in the
/// contiguity class of the identity. The BFS then runs over maps into the
/// core, from `r∘f`, with a visited set; on success the core chain is pulled
/// back through `ι` and bracketed by the fold chains of `f` and `g`, so the
/// returned certificate runs exactly from `f` to `g`.
pub fn same_contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<ClassOutcome> {
    check_compatible(f, g)?;
    let codomain = f.codomain();
    let core_res = core(codomain)?;
    let rf = compose(&core_res.retraction, f)?;
    let rg = compose(&core_res.retraction, g)?;

    let core_chain: Vec<Vec<u32>> = if rf.assignment() == rg.assignment() {
        vec![rf.assignment().to_vec()]
    } else {
        match bfs_chain(
            f.domain(),
            &core_res.core,
            rf.assignment(),
            rg.assignment(),
            cfg.class_state_cap,
        ) {
            BfsResult::Found(chain) => chain,
            BfsResult::Exhausted(explored) => return Ok(ClassOutcome::Different { explored }),
            BfsResult::Capped(explored) => return Ok(ClassOutcome::Unknown { explored }),
        }
    };

    // Pull the core chain back to the original codomain.
    let folds = fold_chain(codomain, &core_res)?;
    let mut chain: Vec<SimplicialMap> = Vec::new();
    for h in &folds {
        chain.push(compose(h, f)?);
    }
    for assignment in &core_chain {
        let step = make_map_unchecked(f.domain(), &core_res.core, assignment.clone());
        chain.push(compose(&core_res.inclusion, &step)?);
    }
    for h in folds.iter().rev() {
        chain.push(compose(h, g)?);
    }
    chain.dedup_by(|a, b| a.assignment() == b.assignment());
    debug_assert_eq!(chain.first().unwrap().assignment(), f.assignment());
    debug_assert_eq!(chain.last().unwrap().assignment(), g.assignment());
    #[cfg(debug_assertions)]
    for pair in chain.windows(2) {
        debug_assert!(is_contiguous(&pair[0], &pair[1])?);
    }
    Ok(ClassOutcome::Same(chain))
}

enum BfsResult {
    Found(Vec<Vec<u32>>),
    Exhausted(usize),
    Capped(usize),
}

/// Canonical breadth-first search over contiguity neighbors from `start`
/// toward `target`, in the space of maps `domain → codomain`.
fn bfs_chain(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    start: &[u32],
    target: &[u32],
    state_cap: usize,
) -> BfsResult {
    let start_arc: Arc<[u32]> = start.to_vec().into();
    let mut arena: Vec<Arc<[u32]>> = vec![Arc::clone(&start_arc)];
    let mut parent: Vec<u32> = vec![0];
    let mut visited: HashMap<Arc<[u32]>, u32> = HashMap::new();
    visited.insert(start_arc, 0);
    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(0);

    while let Some(idx) = queue.pop_front() {
        let state = Arc::clone(&arena[idx as usize]);
        let mut found: Option<u32> = None;
        let mut capped = false;
        for_each_assignment(domain, codomain, Some(&state), &mut |nb| {
            if visited.contains_key(nb) {
                return true;
            }
            if arena.len() >= state_cap {
                capped = true;
                return false;
            }
            let id = arena.len() as u32;
            let shared: Arc<[u32]> = nb.to_vec().into();
            arena.push(Arc::clone(&shared));
            parent.push(idx);
            visited.insert(shared, id);
            queue.push_back(id);
            if nb == target {
                found = Some(id);
                return false;
            }
            true
        });
        if let Some(end) = found {
            let mut chain: Vec<Vec<u32>> = Vec::new();
            let mut cur = end;
            loop {
                chain.push(arena[cur as usize].to_vec());
                if cur == 0 {
                    break;
                }
                cur = parent[cur as usize];
            }
            chain.reverse();
            return BfsResult::Found(chain);
        }
        if capped {
            return BfsResult::Capped(arena.len());
        }
    }
    BfsResult::Exhausted(arena.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::complex::{facet_mask, restrict};
    use crate::io::parse_complex;
    use crate::maps::{constant, identity, inclusion, make_map};

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn reflexive_and_symmetric() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let c = constant(&bd, &bd, 0).unwrap();
        assert!(is_contiguous(&id, &id).unwrap());
        assert_eq!(
            is_contiguous(&id, &c).unwrap(),
            is_contiguous(&c, &id).unwrap()
        );
    }

    #[test]
    fn path_identity_vs_midpoint_constant() {
        // On P2 = {a,b},{b,c}: id and c_b are contiguous.
        let p2 = arc("a b\nb c");
        let id = identity(&p2);
        let b = p2.vertex_by_name("b").unwrap();
        let cb = constant(&p2, &p2, b).unwrap();
        assert!(is_contiguous(&id, &cb).unwrap());
    }

    #[test]
    fn boundary_identity_vs_constant_not_contiguous() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let ca = constant(&bd, &bd, bd.vertex_by_name("a").unwrap()).unwrap();
        assert!(!is_contiguous(&id, &ca).unwrap());
    }

    #[test]
    fn neighbors_of_point_constant() {
        let point = arc("p");
        let c = constant(&point, &point, 0).unwrap();
        assert_eq!(contiguity_neighbors(&c).len(), 1);
    }

    #[test]
    fn neighbors_on_edge_are_all_maps() {
        let edge = arc("a b");
        let id = identity(&edge);
        assert_eq!(contiguity_neighbors(&id).len(), 4);
    }

    #[test]
    fn neighbors_match_brute_force_on_boundary() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let neighbors = contiguity_neighbors(&id);
        // Brute force over all 27 assignments.
        let mut expected = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    if let Ok(g) = make_map(&bd, &bd, vec![a, b, c]) {
                        if is_contiguous(&id, &g).unwrap() {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(neighbors.len(), expected);
        assert!(neighbors.iter().any(|g| g == &id));
    }

    #[test]
    fn all_maps_enumeration_matches_validation() {
        let p2 = arc("a b\nb c");
        let bd = arc("a b\na c\nb c");
        let mut count = 0;
        for_each_simplicial_map(&p2, &bd, &mut |a| {
            assert!(make_map(&p2, &bd, a.to_vec()).is_ok());
            count += 1;
            true
        });
        let mut expected = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    if make_map(&p2, &bd, vec![a, b, c]).is_ok() {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(count, expected);
    }

    #[test]
    fn collapsible_codomain_gives_same_class() {
        let full = arc("a b c");
        let id = identity(&full);
        let c = constant(&full, &full, 1).unwrap();
        match same_contiguity_class(&id, &c, &EngineConfig::default()).unwrap() {
            ClassOutcome::Same(chain) => {
                assert_eq!(chain.first().unwrap(), &id);
                assert_eq!(chain.last().unwrap(), &c);
                for pair in chain.windows(2) {
                    assert!(is_contiguous(&pair[0], &pair[1]).unwrap());
                }
            }
            other => panic!("expected Same, got {other:?}"),
        }
    }

    #[test]
    fn boundary_identity_vs_constant_differ() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let ca = constant(&bd, &bd, 0).unwrap();
        match same_contiguity_class(&id, &ca, &EngineConfig::default()).unwrap() {
            ClassOutcome::Different { explored } => {
                assert!(explored >= 1);
            }
            other => panic!("expected Different, got {other:?}"),
        }
    }

    #[test]
    fn arc_of_pentagon_folds_to_constant() {
        let c5 = arc("a b\nb c\nc d\nd e\na e");
        // Subcomplex: the 2-edge arc a-b-c.
        let m = facet_mask(&c5, &[0, 1]);
        let piece = restrict(&c5, &m).unwrap();
        let incl = inclusion(&piece);
        let cb = constant(piece.complex(), &c5, c5.vertex_by_name("b").unwrap()).unwrap();
        let out = same_contiguity_class(&incl, &cb, &EngineConfig::default()).unwrap();
        assert!(out.is_same());
    }

    #[test]
    fn cap_yields_unknown() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let ca = constant(&bd, &bd, 0).unwrap();
        let cfg = EngineConfig::default().with_class_state_cap(1);
        let out = same_contiguity_class(&id, &ca, &cfg).unwrap();
        assert!(out.is_unknown());
    }

    #[test]
    fn mismatched_maps_rejected() {
        let bd = arc("a b\na c\nb c");
        let p2 = arc("a b\nb c");
        let id_bd = identity(&bd);
        let id_p2 = identity(&p2);
        assert!(is_contiguous(&id_bd, &id_p2).is_err());
    }
}
