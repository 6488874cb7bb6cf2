//! The contiguity distance `SD(φ, ψ)` and its derived invariants.
//!
//! `SD(φ, ψ)` is the least `n` such that the domain is covered by `n + 1`
//! subcomplexes on which the two maps restrict into one contiguity class.
//! Searching facet-generated subcomplexes only is complete: goodness is
//! closed under restriction, so replacing each piece of an arbitrary good
//! cover by the subcomplex generated by the parent facets it contains yields
//! a facet-generated good cover of the same size (every facet lies in some
//! piece). Singleton facet masks are always good — a closed simplex is a
//! cone, hence strongly collapsible — so the search floor `SD ≤ #facets − 1`
//! guarantees termination.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;

use crate::collapse::{core, fold_chain};
use crate::complex::{restrict, SimplicialComplex, Subcomplex};
use crate::config::EngineConfig;
use crate::constructions::{categorical_product, diagonal, Product};
use crate::contiguity::{is_contiguous, same_contiguity_class, ClassOutcome};
use crate::error::Error;
use crate::maps::{
    compose, constant, identity, inclusion, make_map_unchecked, restrict_map, same_complex,
    SimplicialMap,
};
use crate::Result;

/// Goodness of a facet mask for a pair of maps.
#[derive(Debug, Clone)]
pub enum Goodness {
    /// The restrictions are in one contiguity class; the chain certifies it.
    Good(Vec<SimplicialMap>),
    /// Refuted by an exhausted BFS component.
    Bad { explored: usize },
    /// The class decision hit its state cap.
    Unknown { explored: usize },
}

impl Goodness {
    pub fn is_good(&self) -> bool {
        matches!(self, Goodness::Good(_))
    }
}

/// A witness piece with its contiguity certificate.
#[derive(Debug, Clone)]
pub struct PieceCertificate {
    /// Facet indices of the piece, ascending.
    pub facets: Vec<usize>,
    /// Chain from `φ|piece` to `ψ|piece` with consecutive one-step
    /// contiguity.
    pub chain: Vec<SimplicialMap>,
}

/// Result of a distance computation.
///
/// When `exact` is false the value is an upper bound (the good-mask
/// enumeration was not exhaustive, or some goodness decision was unknown).
/// Witness pieces cover every facet and `witness.len() = value + 1`.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub value: usize,
    pub exact: bool,
    pub witness: Vec<Vec<usize>>,
    pub certificates: Vec<PieceCertificate>,
    /// Masks whose goodness came back unknown (state-cap overruns).
    pub undecided: Vec<Vec<usize>>,
}

fn check_pair(phi: &SimplicialMap, psi: &SimplicialMap) -> Result<()> {
    if !same_complex(phi.domain(), psi.domain()) {
        return Err(Error::DomainMismatch(
            "distance: maps have different domains".into(),
        ));
    }
    if !same_complex(phi.codomain(), psi.codomain()) {
        return Err(Error::CodomainMismatch(
            "distance: maps have different codomains".into(),
        ));
    }
    Ok(())
}

/// Class check with the collapsibility fast path.
///
/// When the shared domain is strongly collapsible and the codomain is
/// connected, any two maps are in one contiguity class: the certificate
/// folds the domain to its core point, walks the codomain along an edge path
/// between the two constant values, and unfolds. Otherwise the BFS engine
/// decides.
pub fn class_check(
    f: &SimplicialMap,
    g: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<ClassOutcome> {
    check_pair(f, g)?;
    let domain = f.domain();
    let codomain = f.codomain();
    let core_res = core(domain)?;
    if core_res.core.vertex_count() == 1 {
        let v_star = core_res.inclusion.apply(0);
        let f_star = f.apply(v_star);
        let g_star = g.apply(v_star);
        if let Some(path) = codomain.edge_path(f_star, g_star) {
            let folds = fold_chain(domain, &core_res)?;
            let mut chain: Vec<SimplicialMap> = Vec::new();
            for h in &folds {
                chain.push(compose(f, h)?);
            }
            for &u in &path {
                chain.push(constant(domain, codomain, u)?);
            }
            for h in folds.iter().rev() {
                chain.push(compose(g, h)?);
            }
            chain.dedup_by(|a, b| a.assignment() == b.assignment());
            debug_assert_eq!(chain.first().unwrap().assignment(), f.assignment());
            debug_assert_eq!(chain.last().unwrap().assignment(), g.assignment());
            #[cfg(debug_assertions)]
            for pair in chain.windows(2) {
                debug_assert!(is_contiguous(&pair[0], &pair[1])?);
            }
            return Ok(ClassOutcome::Same(chain));
        }
    }
    same_contiguity_class(f, g, cfg)
}

/// Whether `φ` and `ψ` restrict into one contiguity class on the subcomplex
/// generated by `mask`.
pub fn is_good(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    mask: &FixedBitSet,
    cfg: &EngineConfig,
) -> Result<Goodness> {
    check_pair(phi, psi)?;
    let piece = restrict(phi.domain(), mask)?;
    let f = restrict_map(phi, &piece)?;
    let g = restrict_map(psi, &piece)?;
    Ok(match class_check(&f, &g, cfg)? {
        ClassOutcome::Same(chain) => Goodness::Good(chain),
        ClassOutcome::Different { explored } => Goodness::Bad { explored },
        ClassOutcome::Unknown { explored } => Goodness::Unknown { explored },
    })
}

fn bits_of_u64(mask: u64, n: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if (mask >> i) & 1 == 1 {
            b.insert(i);
        }
    }
    b
}

fn indices_of(bits: &FixedBitSet) -> Vec<usize> {
    bits.ones().collect()
}

/// Computes `SD(φ, ψ)`.
///
/// Phase 1: enumerate the maximal good facet masks. When the facet count is
/// within the exhaustive cap this sweeps the mask lattice by descending
/// popcount, skipping masks under an already-recorded good mask (goodness is
/// closed under restriction, so those are good but not maximal, and
/// certificates for them are never needed). Otherwise masks are grown
/// greedily from singletons and the result is an upper bound.
///
/// Phase 2: exact minimum set cover of the facet set by the collected good
/// masks, branch-and-bound seeded with the greedy cover, tie-broken to the
/// lexicographically smallest witness.
pub fn contiguity_distance(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<DistanceResult> {
    check_pair(phi, psi)?;
    if !phi.domain().is_connected() {
        return Err(Error::Disconnected("distance domain".into()));
    }
    if !phi.codomain().is_connected() {
        return Err(Error::Disconnected("distance codomain".into()));
    }
    let n = phi.domain().facet_count();
    let exhaustive = n <= cfg.exhaustive_mask_cap && n <= 63;

    let mut family: Vec<FixedBitSet> = Vec::new();
    let mut undecided: Vec<Vec<usize>> = Vec::new();

    if exhaustive {
        let mut goods: Vec<u64> = Vec::new();
        let pool = (cfg.threads > 1)
            .then(|| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build()
                    .ok()
            })
            .flatten();
        for k in (1..=n).rev() {
            let level: Vec<u64> = (0..n)
                .combinations(k)
                .map(|c| c.iter().fold(0u64, |m, &i| m | (1 << i)))
                .filter(|m| !goods.iter().any(|g| m & g == *m))
                .collect();
            let evaluate = |m: &u64| -> Result<(u64, Goodness)> {
                let g = is_good(phi, psi, &bits_of_u64(*m, n), cfg)?;
                Ok((*m, g))
            };
            let results: Vec<(u64, Goodness)> = match &pool {
                Some(p) => p.install(|| {
                    level
                        .par_iter()
                        .map(evaluate)
                        .collect::<Result<Vec<_>>>()
                })?,
                None => level.iter().map(evaluate).collect::<Result<Vec<_>>>()?,
            };
            for (m, g) in results {
                match g {
                    Goodness::Good(_) => goods.push(m),
                    Goodness::Bad { .. } => {}
                    Goodness::Unknown { .. } => undecided.push(indices_of(&bits_of_u64(m, n))),
                }
            }
        }
        family = goods.iter().map(|&m| bits_of_u64(m, n)).collect();
    } else {
        // Greedy growth from singletons; every singleton is good, so this
        // always terminates with a cover.
        let mut covered = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if covered.contains(i) {
                continue;
            }
            let mut mask = FixedBitSet::with_capacity(n);
            mask.insert(i);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut attempt = mask.clone();
                attempt.insert(j);
                match is_good(phi, psi, &attempt, cfg)? {
                    Goodness::Good(_) => mask = attempt,
                    Goodness::Bad { .. } => {}
                    Goodness::Unknown { .. } => undecided.push(indices_of(&attempt)),
                }
            }
            covered.union_with(&mask);
            family.push(mask);
        }
    }

    let cover = min_set_cover(n, &family);
    let mut witness_masks: Vec<FixedBitSet> = cover.iter().map(|&i| family[i].clone()).collect();
    witness_masks.sort_by_key(|m| indices_of(m));

    let mut witness = Vec::with_capacity(witness_masks.len());
    let mut certificates = Vec::with_capacity(witness_masks.len());
    for mask in &witness_masks {
        let facets = indices_of(mask);
        match is_good(phi, psi, mask, cfg)? {
            Goodness::Good(chain) => certificates.push(PieceCertificate {
                facets: facets.clone(),
                chain,
            }),
            _ => unreachable!("witness pieces were verified good"),
        }
        witness.push(facets);
    }

    let value = witness.len() - 1;
    let exact = if value == 0 {
        true
    } else {
        exhaustive && undecided.is_empty()
    };
    Ok(DistanceResult {
        value,
        exact,
        witness,
        certificates,
        undecided,
    })
}

/// Exact minimum set cover by branch-and-bound, seeded with the greedy
/// cover; among minimum covers the lexicographically smallest witness (by
/// sorted facet-index lists) is returned. `family` must cover the universe.
fn min_set_cover(universe: usize, family: &[FixedBitSet]) -> Vec<usize> {
    assert!(!family.is_empty());
    let keys: Vec<Vec<usize>> = family.iter().map(indices_of).collect();
    // Canonical processing order: by key.
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));

    let full = {
        let mut f = FixedBitSet::with_capacity(universe);
        f.insert_range(..);
        f
    };

    // Greedy seed.
    let mut greedy: Vec<usize> = Vec::new();
    let mut covered = FixedBitSet::with_capacity(universe);
    while covered != full {
        let mut best: Option<(usize, usize)> = None; // (gain, family idx), idx in key order
        for &i in &order {
            let mut new = family[i].clone();
            new.difference_with(&covered);
            let gain = new.count_ones(..);
            if gain > 0 && best.map_or(true, |(bg, _)| gain > bg) {
                best = Some((gain, i));
            }
        }
        let (_, pick) = best.expect("family covers the universe");
        covered.union_with(&family[pick]);
        greedy.push(pick);
    }

    let witness_key = |chosen: &[usize]| -> Vec<Vec<usize>> {
        let mut ks: Vec<Vec<usize>> = chosen.iter().map(|&i| keys[i].clone()).collect();
        ks.sort();
        ks
    };

    let max_size = family.iter().map(|m| m.count_ones(..)).max().unwrap_or(1);

    // Element -> candidate family indices in canonical order.
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for &i in &order {
        for e in family[i].ones() {
            candidates[e].push(i);
        }
    }

    struct Dfs<'a> {
        family: &'a [FixedBitSet],
        candidates: &'a [Vec<usize>],
        full: &'a FixedBitSet,
        max_size: usize,
        best_len: usize,
        best_key: Vec<Vec<usize>>,
        best: Vec<usize>,
        witness_key: &'a dyn Fn(&[usize]) -> Vec<Vec<usize>>,
    }

    impl Dfs<'_> {
        fn run(&mut self, covered: &FixedBitSet, chosen: &mut Vec<usize>) {
            if covered == self.full {
                let key = (self.witness_key)(chosen);
                if chosen.len() < self.best_len
                    || (chosen.len() == self.best_len && key < self.best_key)
                {
                    self.best_len = chosen.len();
                    self.best_key = key;
                    self.best = chosen.clone();
                }
                return;
            }
            let remaining = self.full.count_ones(..) - covered.count_ones(..);
            let lb = remaining.div_ceil(self.max_size);
            if chosen.len() + lb > self.best_len {
                return;
            }
            let e = self.full.ones().find(|&e| !covered.contains(e)).unwrap();
            for &i in &self.candidates[e] {
                let mut next = covered.clone();
                next.union_with(&self.family[i]);
                chosen.push(i);
                self.run(&next, chosen);
                chosen.pop();
            }
        }
    }

    let mut dfs = Dfs {
        family,
        candidates: &candidates,
        full: &full,
        max_size,
        best_len: greedy.len(),
        best_key: witness_key(&greedy),
        best: greedy,
        witness_key: &witness_key,
    };
    let empty = FixedBitSet::with_capacity(universe);
    dfs.run(&empty, &mut Vec::new());
    dfs.best
}

/// Simplicial LS-category: `scat(K) = SD(id_K, c_{v0})` with `v0` the vertex
/// of id 0 (the choice is immaterial on connected complexes).
pub fn scat(k: &Arc<SimplicialComplex>, cfg: &EngineConfig) -> Result<DistanceResult> {
    if !k.is_connected() {
        return Err(Error::Disconnected("scat".into()));
    }
    let id = identity(k);
    let c = constant(k, k, 0)?;
    contiguity_distance(&id, &c, cfg)
}

/// Discrete topological complexity: `TC(K) = SD(p1, p2)` on the categorical
/// square.
pub fn tc(k: &Arc<SimplicialComplex>, cfg: &EngineConfig) -> Result<DistanceResult> {
    if !k.is_connected() {
        return Err(Error::Disconnected("tc".into()));
    }
    let product = categorical_product(k, k, cfg)?;
    contiguity_distance(&product.p1, &product.p2, cfg)
}

/// Simplicial LS-category of a map: `scat(φ) = SD(φ, c_{ω0})` with `ω0` the
/// codomain vertex of id 0.
pub fn scat_map(phi: &SimplicialMap, cfg: &EngineConfig) -> Result<DistanceResult> {
    if !phi.domain().is_connected() {
        return Err(Error::Disconnected("scat_map domain".into()));
    }
    if !phi.codomain().is_connected() {
        return Err(Error::Disconnected("scat_map codomain".into()));
    }
    let c = constant(phi.domain(), phi.codomain(), 0)?;
    contiguity_distance(phi, &c, cfg)
}

/// Whether the subcomplex `Ω` of the square selected by `mask`, together
/// with the section, is a Farber subcomplex: `Δ ∘ section` and the inclusion
/// of `Ω` are in the same contiguity class.
pub fn farber_check(
    product: &Product,
    mask: &FixedBitSet,
    section: &SimplicialMap,
    cfg: &EngineConfig,
) -> Result<ClassOutcome> {
    let omega = restrict(&product.complex, mask)?;
    if !same_complex(section.domain(), omega.complex()) {
        return Err(Error::DomainMismatch(
            "farber_check: section domain is not the selected subcomplex".into(),
        ));
    }
    if !same_complex(section.codomain(), &product.left) {
        return Err(Error::CodomainMismatch(
            "farber_check: section codomain is not the base complex".into(),
        ));
    }
    let delta = diagonal(product)?;
    let lhs = compose(&delta, section)?;
    let iota = inclusion(&omega);
    // The inclusion side has the more rigid BFS component; the relation is
    // symmetric, so start there.
    class_check(&iota, &lhs, cfg)
}

/// Enumerates every simplicial map `domain → codomain` in canonical order;
/// `emit` returns `false` to stop.
fn for_each_simplicial_map(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    emit: &mut dyn FnMut(&[u32]) -> bool,
) {
    // The all-maps enumeration is the contiguity enumeration anchored at no
    // base map: a facet image must simply land inside some codomain facet.
    // Realized by enumerating neighbors of a virtual map whose facet images
    // are empty; structurally identical DFS, so reuse it with pools
    // initialized to all facets via the constant-free variant below.
    let nf_cod = codomain.facet_count();
    let nv_cod = codomain.vertex_count();
    let nv_dom = domain.vertex_count();

    let mut vertex_facets: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(nf_cod); nv_cod];
    for fi in 0..nf_cod {
        for &w in codomain.facet(fi).vertices() {
            vertex_facets[w as usize].insert(fi);
        }
    }
    let full_pool = {
        let mut p = FixedBitSet::with_capacity(nf_cod);
        p.insert_range(..);
        p
    };

    struct Dfs<'a> {
        domain: &'a SimplicialComplex,
        vertex_facets: &'a [FixedBitSet],
        nv_cod: usize,
        state: Vec<u32>,
        pools: Vec<FixedBitSet>,
        emit: &'a mut dyn FnMut(&[u32]) -> bool,
    }

    impl Dfs<'_> {
        fn run(&mut self, v: usize) -> bool {
            if v == self.state.len() {
                return (self.emit)(&self.state);
            }
            let incident = self.domain.incident_facets(v as u32).to_vec();
            for w in 0..self.nv_cod as u32 {
                let mut saved: Vec<FixedBitSet> = Vec::with_capacity(incident.len());
                let mut dead = false;
                for &fi in &incident {
                    saved.push(self.pools[fi as usize].clone());
                    self.pools[fi as usize].intersect_with(&self.vertex_facets[w as usize]);
                    if self.pools[fi as usize].count_ones(..) == 0 {
                        dead = true;
                    }
                }
                if !dead {
                    self.state[v] = w;
                    if !self.run(v + 1) {
                        return false;
                    }
                }
                for (&fi, old) in incident.iter().zip(saved) {
                    self.pools[fi as usize] = old;
                }
            }
            true
        }
    }

    let mut dfs = Dfs {
        domain,
        vertex_facets: &vertex_facets,
        nv_cod,
        state: vec![0; nv_dom],
        pools: vec![full_pool; domain.facet_count()],
        emit,
    };
    dfs.run(0);
}

enum Farberness {
    Yes,
    No,
    Unknown,
}

/// Oracle-grade discrete TC: direct minimization over covers of the square
/// by Farber subcomplexes, with sections searched exhaustively. Used to
/// cross-validate `tc(K) = SD(p1, p2)`.
pub fn farber_cover_tc(k: &Arc<SimplicialComplex>, cfg: &EngineConfig) -> Result<DistanceResult> {
    if !k.is_connected() {
        return Err(Error::Disconnected("farber_cover_tc".into()));
    }
    let product = categorical_product(k, k, cfg)?;
    let n = product.complex.facet_count();
    if n > cfg.farber_facet_cap || n > 63 {
        return Err(Error::CapExceeded {
            what: "farber_cover_tc facet count",
        });
    }

    let is_farber = |mask_bits: &FixedBitSet| -> Result<Farberness> {
        let omega = restrict(&product.complex, mask_bits)?;
        // Strongly collapsible pieces are Farber: any section works (the
        // first projection restricted to the piece always is one), and on a
        // collapsible domain all maps into the connected square are in one
        // class.
        if core(omega.complex())?.core.vertex_count() == 1 {
            return Ok(Farberness::Yes);
        }
        let mut unknown = false;
        let mut found = false;
        let mut sections: Vec<Vec<u32>> = Vec::new();
        for_each_simplicial_map(omega.complex(), k, &mut |assignment| {
            sections.push(assignment.to_vec());
            true
        });
        for assignment in sections {
            let section = make_map_unchecked(omega.complex(), k, assignment);
            match farber_check(&product, mask_bits, &section, cfg)? {
                ClassOutcome::Same(_) => {
                    found = true;
                    break;
                }
                ClassOutcome::Different { .. } => {}
                ClassOutcome::Unknown { .. } => unknown = true,
            }
        }
        Ok(if found {
            Farberness::Yes
        } else if unknown {
            Farberness::Unknown
        } else {
            Farberness::No
        })
    };

    let mut goods: Vec<u64> = Vec::new();
    let mut undecided: Vec<Vec<usize>> = Vec::new();
    for klevel in (1..=n).rev() {
        for c in (0..n).combinations(klevel) {
            let m = c.iter().fold(0u64, |acc, &i| acc | (1 << i));
            if goods.iter().any(|g| m & g == m) {
                continue;
            }
            match is_farber(&bits_of_u64(m, n))? {
                Farberness::Yes => goods.push(m),
                Farberness::No => {}
                Farberness::Unknown => undecided.push(indices_of(&bits_of_u64(m, n))),
            }
        }
    }
    let family: Vec<FixedBitSet> = goods.iter().map(|&m| bits_of_u64(m, n)).collect();
    let cover = min_set_cover(n, &family);
    let mut witness: Vec<Vec<usize>> = cover.iter().map(|&i| indices_of(&family[i])).collect();
    witness.sort();
    let value = witness.len() - 1;
    let exact = value == 0 || undecided.is_empty();
    Ok(DistanceResult {
        value,
        exact,
        witness,
        certificates: Vec::new(),
        undecided,
    })
}

/// Restriction of a map pair to the piece generated by `mask`, exposed for
/// callers that need the restricted maps themselves.
pub fn restricted_pair(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    mask: &FixedBitSet,
) -> Result<(Subcomplex, SimplicialMap, SimplicialMap)> {
    let piece = restrict(phi.domain(), mask)?;
    let f = restrict_map(phi, &piece)?;
    let g = restrict_map(psi, &piece)?;
    Ok((piece, f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{facet_mask, full_mask};
    use crate::corpus;
    use crate::io::parse_complex;

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn singleton_masks_are_good() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let c = constant(&bd, &bd, 0).unwrap();
        let cfg = EngineConfig::default();
        for i in 0..bd.facet_count() {
            let g = is_good(&id, &c, &facet_mask(&bd, &[i]), &cfg).unwrap();
            assert!(g.is_good());
        }
    }

    #[test]
    fn two_edge_arc_is_good_full_mask_is_not() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let c = constant(&bd, &bd, 0).unwrap();
        let cfg = EngineConfig::default();
        assert!(is_good(&id, &c, &facet_mask(&bd, &[0, 1]), &cfg)
            .unwrap()
            .is_good());
        assert!(!is_good(&id, &c, &full_mask(&bd), &cfg).unwrap().is_good());
    }

    #[test]
    fn distance_of_equal_maps_is_zero() {
        let bd = arc("a b\na c\nb c");
        let id = identity(&bd);
        let res = contiguity_distance(&id, &id, &EngineConfig::default()).unwrap();
        assert_eq!(res.value, 0);
        assert!(res.exact);
        assert_eq!(res.witness.len(), 1);
    }

    #[test]
    fn boundary_scat_is_one() {
        let bd = arc("a b\na c\nb c");
        let res = scat(&bd, &EngineConfig::default()).unwrap();
        assert_eq!(res.value, 1);
        assert!(res.exact);
        for cert in &res.certificates {
            for pair in cert.chain.windows(2) {
                assert!(is_contiguous(&pair[0], &pair[1]).unwrap());
            }
        }
    }

    #[test]
    fn fig3_scat_is_one() {
        let k = corpus::fig3();
        let res = scat(&k, &EngineConfig::default()).unwrap();
        assert_eq!(res.value, 1);
        assert!(res.exact);
    }

    #[test]
    fn simplex_scat_and_tc_are_zero() {
        let cfg = EngineConfig::default();
        for n in 1..=4 {
            let k = corpus::delta(n - 1);
            assert_eq!(scat(&k, &cfg).unwrap().value, 0);
            assert_eq!(tc(&k, &cfg).unwrap().value, 0);
        }
    }

    #[test]
    fn scat_map_examples() {
        let bd = arc("a b\na c\nb c");
        let cfg = EngineConfig::default();
        let id = identity(&bd);
        let sm = scat_map(&id, &cfg).unwrap();
        assert_eq!(sm.value, scat(&bd, &cfg).unwrap().value);
        let c = constant(&bd, &bd, 2).unwrap();
        assert_eq!(scat_map(&c, &cfg).unwrap().value, 0);
    }

    #[test]
    fn disconnected_rejected() {
        let k = arc("a b\nc d");
        assert!(matches!(
            scat(&k, &EngineConfig::default()),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn farber_diagonal_piece() {
        let bd = arc("a b\na c\nb c");
        let cfg = EngineConfig::default();
        let product = categorical_product(&bd, &bd, &cfg).unwrap();
        // Subcomplex generated by the facets σ×σ.
        let nf = bd.facet_count();
        let mut mask = FixedBitSet::with_capacity(product.complex.facet_count());
        for i in 0..nf {
            mask.insert(i * nf + i);
        }
        let omega = restrict(&product.complex, &mask).unwrap();
        let section = restrict_map(&product.p1, &omega).unwrap();
        let out = farber_check(&product, &mask, &section, &cfg).unwrap();
        assert!(out.is_same());
    }

    #[test]
    fn farber_single_facet_piece() {
        let bd = arc("a b\na c\nb c");
        let cfg = EngineConfig::default();
        let product = categorical_product(&bd, &bd, &cfg).unwrap();
        let mask = facet_mask(&product.complex, &[0]);
        let omega = restrict(&product.complex, &mask).unwrap();
        let section = restrict_map(&product.p1, &omega).unwrap();
        assert!(farber_check(&product, &mask, &section, &cfg)
            .unwrap()
            .is_same());
    }
}
