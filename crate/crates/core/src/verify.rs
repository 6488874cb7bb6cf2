//! The theorem-verification suite.
//!
//! Runs the distance module's invariants over the bundled fixtures plus
//! seeded randomly generated connected complexes and map pairs, and
//! cross-checks the engine against the brute-force oracle. Inequality checks
//! are bound-aware: an inexact distance is an upper bound on the true value,
//! so `A ≤ B` is asserted only when the left side is exact (the right side
//! may be an upper bound — a violation then still refutes the theorem), and
//! equalities require both sides exact. Checks whose inputs exceed the
//! configured caps are counted as skipped, never silently dropped.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::collapse::{core, fold_chain, is_strongly_collapsible};
use crate::complex::{restrict, SimplicialComplex};
use crate::config::EngineConfig;
use crate::constructions::{
    axis_inclusion, barycentric_subdivision, categorical_product, pairing, sd_map,
};
use crate::contiguity::{contiguity_neighbors, is_contiguous, same_contiguity_class, ClassOutcome};
use crate::corpus;
use crate::distance::{class_check, contiguity_distance, scat, scat_map, tc, DistanceResult};
use crate::error::Error;
use crate::io::serialize_complex;
use crate::maps::{compose, identity, make_map, restrict_map, SimplicialMap};
use crate::oracle;
use crate::Result;

/// Knobs for one verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub engine: EngineConfig,
    pub seed: u64,
    /// Number of randomly generated connected complexes.
    pub random_complexes: usize,
    /// Number of randomly generated map pairs.
    pub random_map_pairs: usize,
    pub max_vertices: usize,
    pub max_facets: usize,
    /// Product-dependent checks run only when the square has at most this
    /// many facets.
    pub product_facet_gate: usize,
    /// Subdivision-dependent distance checks run only when the subdivision
    /// has at most this many facets.
    pub sd_facet_gate: usize,
    /// Oracle distance agreement runs on every `stride`-th map pair.
    pub oracle_distance_stride: usize,
    /// Oracle distance agreement requires at most this many domain facets.
    pub oracle_distance_facet_gate: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            engine: EngineConfig::default(),
            seed: 0x5d15_7a9c,
            random_complexes: 200,
            random_map_pairs: 500,
            max_vertices: 6,
            max_facets: 8,
            product_facet_gate: 12,
            sd_facet_gate: 12,
            oracle_distance_stride: 10,
            oracle_distance_facet_gate: 6,
        }
    }
}

/// Outcome counters for one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckStat {
    pub name: String,
    pub ran: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

/// Aggregated result of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub complexes: usize,
    pub map_pairs: usize,
    pub checks: Vec<CheckStat>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    /// One line per check, plus a total line.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!(
                    "{:<42} ran {:>6}  skipped {:>5}  violations {}",
                    c.name,
                    c.ran,
                    c.skipped,
                    c.violations.len()
                )
            })
            .collect();
        out.push(format!(
            "seed {}  complexes {}  map pairs {}  => {}",
            self.seed,
            self.complexes,
            self.map_pairs,
            if self.pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

struct Checker {
    stats: Vec<CheckStat>,
}

impl Checker {
    fn new() -> Self {
        Checker { stats: Vec::new() }
    }

    fn stat(&mut self, name: &str) -> &mut CheckStat {
        if let Some(pos) = self.stats.iter().position(|s| s.name == name) {
            &mut self.stats[pos]
        } else {
            self.stats.push(CheckStat {
                name: name.to_string(),
                ran: 0,
                skipped: 0,
                violations: Vec::new(),
            });
            self.stats.last_mut().unwrap()
        }
    }

    fn check(&mut self, name: &str, cond: bool, describe: impl FnOnce() -> String) {
        let stat = self.stat(name);
        stat.ran += 1;
        if !cond {
            let msg = describe();
            if stat.violations.len() < 16 {
                stat.violations.push(msg);
            }
        }
    }

    fn skip(&mut self, name: &str) {
        self.stat(name).skipped += 1;
    }
}

fn one_line(k: &SimplicialComplex) -> String {
    serialize_complex(k).trim_end().replace('\n', " | ")
}

fn describe_pair(f: &SimplicialMap, g: &SimplicialMap) -> String {
    format!(
        "K = [{}], K' = [{}], phi = {:?}, psi = {:?}",
        one_line(f.domain()),
        one_line(f.codomain()),
        f.assignment(),
        g.assignment()
    )
}

/// `A ≤ B` with bound-aware semantics: requires the left side exact; the
/// right side may be an upper bound (a violation still refutes the theorem).
fn le_check(
    checker: &mut Checker,
    name: &str,
    lhs: &DistanceResult,
    rhs: &DistanceResult,
    describe: impl FnOnce() -> String,
) {
    if !lhs.exact {
        checker.skip(name);
        return;
    }
    let (l, r) = (lhs.value, rhs.value);
    checker.check(name, l <= r, || {
        format!("{} (lhs {} > rhs {})", describe(), l, r)
    });
}

/// Equality check requiring both sides exact.
fn eq_check(
    checker: &mut Checker,
    name: &str,
    lhs: &DistanceResult,
    rhs: &DistanceResult,
    describe: impl FnOnce() -> String,
) {
    if !lhs.exact || !rhs.exact {
        checker.skip(name);
        return;
    }
    let (l, r) = (lhs.value, rhs.value);
    checker.check(name, l == r, || {
        format!("{} (lhs {} != rhs {})", describe(), l, r)
    });
}

/// One-step contiguity checked against the all-simplices definition, which
/// must agree with the facet-level implementation (small complexes only).
fn all_subsets_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Option<bool> {
    let simplices = f.domain().all_simplices(4096)?;
    for s in &simplices {
        let mut joint: Vec<u32> = s
            .iter()
            .flat_map(|&v| [f.apply(v), g.apply(v)])
            .collect();
        joint.sort_unstable();
        joint.dedup();
        if !f.codomain().is_simplex_ids(&joint) {
            return Some(false);
        }
    }
    Some(true)
}

struct Pool {
    complexes: Vec<Arc<SimplicialComplex>>,
    scat_cache: HashMap<usize, DistanceResult>,
    tc_cache: HashMap<usize, Option<DistanceResult>>,
}

impl Pool {
    fn scat(&mut self, idx: usize, cfg: &EngineConfig) -> Result<DistanceResult> {
        if let Some(r) = self.scat_cache.get(&idx) {
            return Ok(r.clone());
        }
        let r = scat(&self.complexes[idx], cfg)?;
        self.scat_cache.insert(idx, r.clone());
        Ok(r)
    }

    /// `None` when the square exceeds the product gate.
    fn tc(
        &mut self,
        idx: usize,
        cfg: &EngineConfig,
        gate: usize,
    ) -> Result<Option<DistanceResult>> {
        if let Some(r) = self.tc_cache.get(&idx) {
            return Ok(r.clone());
        }
        let k = &self.complexes[idx];
        let r = if k.facet_count() * k.facet_count() <= gate {
            Some(tc(k, cfg)?)
        } else {
            None
        };
        self.tc_cache.insert(idx, r.clone());
        Ok(r)
    }
}

/// Runs the whole suite. `extra` complexes (e.g. loaded from a corpus
/// directory) join the bundled fixtures and the random pool.
pub fn run_verify(extra: &[(String, Arc<SimplicialComplex>)], vcfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(vcfg.seed);
    let mut checker = Checker::new();

    let mut pool = Pool {
        complexes: Vec::new(),
        scat_cache: HashMap::new(),
        tc_cache: HashMap::new(),
    };
    for (_, k) in corpus::corpus() {
        pool.complexes.push(k);
    }
    for (_, k) in extra {
        if k.is_connected() {
            pool.complexes.push(Arc::clone(k));
        }
    }
    for _ in 0..vcfg.random_complexes {
        pool.complexes
            .push(corpus::random_connected_complex(&mut rng, vcfg.max_vertices, vcfg.max_facets));
    }
    let n_complexes = pool.complexes.len();

    for idx in 0..n_complexes {
        let k = Arc::clone(&pool.complexes[idx]);
        complex_checks(&mut checker, &mut pool, idx, &k, vcfg)?;
    }

    for pair_no in 0..vcfg.random_map_pairs {
        let di = rng.random_range(0..n_complexes);
        let ci = rng.random_range(0..n_complexes);
        let domain = Arc::clone(&pool.complexes[di]);
        let codomain = Arc::clone(&pool.complexes[ci]);
        let phi = corpus::random_simplicial_map(&mut rng, &domain, &codomain);
        let psi = corpus::random_simplicial_map(&mut rng, &domain, &codomain);
        pair_checks(
            &mut checker,
            &mut pool,
            &mut rng,
            pair_no,
            di,
            ci,
            &phi,
            &psi,
            vcfg,
        )?;
    }

    Ok(VerifyReport {
        seed: vcfg.seed,
        complexes: n_complexes,
        map_pairs: vcfg.random_map_pairs,
        checks: checker.stats,
    })
}

fn complex_checks(
    checker: &mut Checker,
    pool: &mut Pool,
    idx: usize,
    k: &Arc<SimplicialComplex>,
    vcfg: &VerifyConfig,
) -> Result<()> {
    let cfg = &vcfg.engine;
    let core_res = core(k)?;

    let round = compose(&core_res.retraction, &core_res.inclusion)?;
    checker.check(
        "collapse/retraction-section-identity",
        round.is_identity(),
        || one_line(k),
    );

    let again = core(&core_res.core)?;
    checker.check(
        "collapse/core-fixed-point",
        again.core.as_ref() == core_res.core.as_ref(),
        || one_line(k),
    );

    let folds = fold_chain(k, &core_res)?;
    let mut fold_ok = folds.first().map(|h| h.is_identity()).unwrap_or(false);
    for pair in folds.windows(2) {
        fold_ok &= is_contiguous(&pair[0], &pair[1])?;
    }
    fold_ok &= folds.last().unwrap() == &compose(&core_res.inclusion, &core_res.retraction)?;
    checker.check("collapse/fold-chain-contiguity", fold_ok, || one_line(k));

    if k.vertex_count() <= 8 {
        let composite = compose(&core_res.inclusion, &core_res.retraction)?;
        match same_contiguity_class(&composite, &identity(k), cfg)? {
            ClassOutcome::Same(_) => checker.check(
                "collapse/inclusion-retraction-in-identity-class",
                true,
                String::new,
            ),
            ClassOutcome::Different { .. } => checker.check(
                "collapse/inclusion-retraction-in-identity-class",
                false,
                || one_line(k),
            ),
            ClassOutcome::Unknown { .. } => {
                checker.skip("collapse/inclusion-retraction-in-identity-class")
            }
        }
    } else {
        checker.skip("collapse/inclusion-retraction-in-identity-class");
    }

    let retrace = core(k)?;
    checker.check(
        "collapse/deterministic-trace",
        retrace.elimination_trace == core_res.elimination_trace,
        || one_line(k),
    );

    // scat = 0 iff strongly collapsible.
    let s = pool.scat(idx, cfg)?;
    if s.exact {
        checker.check(
            "scat/zero-iff-strongly-collapsible",
            (s.value == 0) == is_strongly_collapsible(k)?,
            || format!("{} (scat {})", one_line(k), s.value),
        );
    } else {
        checker.skip("scat/zero-iff-strongly-collapsible");
    }

    // scat(K) = SD(i1, i2) on the square.
    if k.facet_count() * k.facet_count() <= vcfg.product_facet_gate {
        let product = categorical_product(k, k, cfg)?;
        let i1 = axis_inclusion(&product, 0, 1)?;
        let i2 = axis_inclusion(&product, 0, 2)?;
        let sd_axes = contiguity_distance(&i1, &i2, cfg)?;
        eq_check(checker, "scat/axis-inclusion-identity", &s, &sd_axes, || {
            one_line(k)
        });

        // scat(K) ≤ TC(K) ≤ scat(K∏K).
        if let Some(t) = pool.tc(idx, cfg, vcfg.product_facet_gate)? {
            le_check(checker, "order/scat-le-tc", &s, &t, || one_line(k));
            let s2 = scat(&product.complex, cfg)?;
            le_check(checker, "order/tc-le-scat-square", &t, &s2, || one_line(k));
        } else {
            checker.skip("order/scat-le-tc");
            checker.skip("order/tc-le-scat-square");
        }
    } else {
        checker.skip("scat/axis-inclusion-identity");
        checker.skip("order/scat-le-tc");
        checker.skip("order/tc-le-scat-square");
    }

    // scat(sd K) ≤ scat(K).
    let sd_facets: usize = k.facets().iter().map(|f| (1..=f.len()).product::<usize>()).sum();
    if sd_facets <= vcfg.sd_facet_gate {
        let sd = barycentric_subdivision(k, cfg)?;
        let s_sd = scat(&sd.complex, cfg)?;
        le_check(checker, "sd/scat-monotone", &s_sd, &s, || one_line(k));
    } else {
        checker.skip("sd/scat-monotone");
    }

    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn pair_checks(
    checker: &mut Checker,
    pool: &mut Pool,
    rng: &mut ChaCha8Rng,
    pair_no: usize,
    di: usize,
    ci: usize,
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    vcfg: &VerifyConfig,
) -> Result<()> {
    let cfg = &vcfg.engine;
    let domain = Arc::clone(phi.domain());
    let codomain = Arc::clone(phi.codomain());
    let sd_res = contiguity_distance(phi, psi, cfg)?;

    // Symmetry.
    let sd_rev = contiguity_distance(psi, phi, cfg)?;
    eq_check(checker, "sd-distance/symmetry", &sd_res, &sd_rev, || {
        describe_pair(phi, psi)
    });

    // SD = 0 iff same contiguity class.
    match class_check(phi, psi, cfg)? {
        ClassOutcome::Same(chain) => {
            if sd_res.exact {
                checker.check(
                    "sd-distance/zero-iff-same-class",
                    sd_res.value == 0,
                    || describe_pair(phi, psi),
                );
            } else {
                checker.skip("sd-distance/zero-iff-same-class");
            }
            // Restriction stability: the chain restricts step-by-step to any
            // facet-generated piece.
            let mut mask = FixedBitSet::with_capacity(domain.facet_count());
            mask.insert(rng.random_range(0..domain.facet_count()));
            let piece = restrict(&domain, &mask)?;
            let mut ok = true;
            let restricted: Vec<SimplicialMap> = chain
                .iter()
                .map(|h| restrict_map(h, &piece))
                .collect::<Result<_>>()?;
            for pair in restricted.windows(2) {
                ok &= is_contiguous(&pair[0], &pair[1])?;
            }
            checker.check("engine/restriction-stability", ok, || {
                describe_pair(phi, psi)
            });
        }
        ClassOutcome::Different { .. } => {
            if sd_res.exact {
                checker.check(
                    "sd-distance/zero-iff-same-class",
                    sd_res.value > 0,
                    || describe_pair(phi, psi),
                );
            } else {
                checker.skip("sd-distance/zero-iff-same-class");
            }
            checker.skip("engine/restriction-stability");
        }
        ClassOutcome::Unknown { .. } => {
            checker.skip("sd-distance/zero-iff-same-class");
            checker.skip("engine/restriction-stability");
        }
    }

    // Contiguity symmetry and facet-sufficiency.
    checker.check(
        "engine/contiguity-symmetry",
        is_contiguous(phi, psi)? == is_contiguous(psi, phi)?,
        || describe_pair(phi, psi),
    );
    match all_subsets_contiguous(phi, psi) {
        Some(expected) => checker.check(
            "engine/facet-sufficiency",
            is_contiguous(phi, psi)? == expected,
            || describe_pair(phi, psi),
        ),
        None => checker.skip("engine/facet-sufficiency"),
    }

    // Class invariance: replace phi by a one-step-contiguous neighbor.
    {
        let neighbors = contiguity_neighbors(phi);
        let pick = rng.random_range(0..neighbors.len());
        let phi_bar = &neighbors[pick];
        let sd_bar = contiguity_distance(phi_bar, psi, cfg)?;
        eq_check(checker, "sd-distance/class-invariance", &sd_res, &sd_bar, || {
            format!("{} phi_bar {:?}", describe_pair(phi, psi), phi_bar.assignment())
        });
    }

    // Subadditivity over a random cover by connected pieces.
    {
        let nf = domain.facet_count();
        let mut masks: Vec<FixedBitSet> = Vec::new();
        let mut covered = FixedBitSet::with_capacity(nf);
        let mut guard = 0;
        while covered.count_ones(..) < nf && guard < 64 {
            guard += 1;
            let mut m = FixedBitSet::with_capacity(nf);
            for i in 0..nf {
                if rng.random_bool(0.5) {
                    m.insert(i);
                }
            }
            if m.count_ones(..) == 0 {
                continue;
            }
            if restrict(&domain, &m)?.complex().is_connected() {
                covered.union_with(&m);
                masks.push(m);
            }
        }
        if covered.count_ones(..) == nf && sd_res.exact {
            let mut total = 0usize;
            let mut all_exact = true;
            for m in &masks {
                let piece = restrict(&domain, m)?;
                let f = restrict_map(phi, &piece)?;
                let g = restrict_map(psi, &piece)?;
                let r = contiguity_distance(&f, &g, cfg)?;
                all_exact &= r.exact;
                total += r.value;
            }
            if all_exact {
                let bound = total + masks.len() - 1;
                checker.check(
                    "sd-distance/subadditivity",
                    sd_res.value <= bound,
                    || format!("{} cover of {} pieces", describe_pair(phi, psi), masks.len()),
                );
            } else {
                checker.skip("sd-distance/subadditivity");
            }
        } else {
            checker.skip("sd-distance/subadditivity");
        }
    }

    // Precomposition monotonicity with a random µ: M → K.
    {
        let mi = rng.random_range(0..pool.complexes.len());
        let m = Arc::clone(&pool.complexes[mi]);
        let mu = corpus::random_simplicial_map(rng, &m, &domain);
        let phi_mu = compose(phi, &mu)?;
        let psi_mu = compose(psi, &mu)?;
        let sd_comp = contiguity_distance(&phi_mu, &psi_mu, cfg)?;
        le_check(
            checker,
            "sd-distance/precomposition-monotone",
            &sd_comp,
            &sd_res,
            || describe_pair(phi, psi),
        );
    }

    // Equalities under strong equivalences built from the core.
    {
        let core_dom = core(&domain)?;
        let beta = &core_dom.inclusion; // core(K) → K, a right strong equivalence
        let sd_beta = contiguity_distance(&compose(phi, beta)?, &compose(psi, beta)?, cfg)?;
        eq_check(
            checker,
            "sd-distance/right-strong-equivalence",
            &sd_beta,
            &sd_res,
            || describe_pair(phi, psi),
        );

        let core_cod = core(&codomain)?;
        let alpha = &core_cod.retraction; // K' → core(K'), a left strong equivalence
        let sd_alpha = contiguity_distance(&compose(alpha, phi)?, &compose(alpha, psi)?, cfg)?;
        eq_check(
            checker,
            "sd-distance/left-strong-equivalence",
            &sd_alpha,
            &sd_res,
            || describe_pair(phi, psi),
        );

        let phi_sq = compose(alpha, &compose(phi, beta)?)?;
        let psi_sq = compose(alpha, &compose(psi, beta)?)?;
        let sd_sq = contiguity_distance(&phi_sq, &psi_sq, cfg)?;
        eq_check(
            checker,
            "sd-distance/strong-homotopy-invariance",
            &sd_sq,
            &sd_res,
            || describe_pair(phi, psi),
        );
    }

    // SD ≤ scat(domain).
    let s_dom = pool.scat(di, cfg)?;
    le_check(checker, "sd-distance/le-scat-domain", &sd_res, &s_dom, || {
        describe_pair(phi, psi)
    });

    // SD ≤ TC(codomain) when the square is within caps.
    match pool.tc(ci, cfg, vcfg.product_facet_gate)? {
        Some(t) => le_check(checker, "sd-distance/le-tc-codomain", &sd_res, &t, || {
            describe_pair(phi, psi)
        }),
        None => checker.skip("sd-distance/le-tc-codomain"),
    }

    // Collapsible domain or codomain forces SD = 0.
    if is_strongly_collapsible(&domain)? || is_strongly_collapsible(&codomain)? {
        if sd_res.exact {
            checker.check(
                "sd-distance/collapsible-forces-zero",
                sd_res.value == 0,
                || describe_pair(phi, psi),
            );
        } else {
            checker.skip("sd-distance/collapsible-forces-zero");
        }
    }

    // Composition bound: SD(φ∘η, ψ∘η) ≤ SD(η, η') when φ∘η' ∼ ψ∘η'.
    {
        let mi = rng.random_range(0..pool.complexes.len());
        let m = Arc::clone(&pool.complexes[mi]);
        let eta = corpus::random_simplicial_map(rng, &m, &domain);
        let eta_p = corpus::random_simplicial_map(rng, &m, &domain);
        let hyp = class_check(&compose(phi, &eta_p)?, &compose(psi, &eta_p)?, cfg)?;
        if hyp.is_same() {
            let lhs = contiguity_distance(&compose(phi, &eta)?, &compose(psi, &eta)?, cfg)?;
            let rhs = contiguity_distance(&eta, &eta_p, cfg)?;
            le_check(checker, "sd-distance/composition-bound", &lhs, &rhs, || {
                describe_pair(phi, psi)
            });
        } else {
            checker.skip("sd-distance/composition-bound");
        }
    }

    // Facet-generated-cover lemma on a skeleton piece: if the restrictions
    // to the q-skeleton agree up to contiguity, they agree on the subcomplex
    // generated by the facets inside the skeleton.
    {
        let dim = domain.dim();
        if dim >= 1 {
            let q = rng.random_range(0..dim);
            match skeleton_lemma_outcome(&domain, phi, psi, q, cfg)? {
                Some(ok) => checker.check("sd-distance/facet-generated-lemma", ok, || {
                    describe_pair(phi, psi)
                }),
                None => checker.skip("sd-distance/facet-generated-lemma"),
            }
        } else {
            checker.skip("sd-distance/facet-generated-lemma");
        }
    }

    // Subdivision: SD(sd φ, sd ψ) ≤ SD(φ, ψ), and sd preserves classes.
    let sd_facets_dom: usize = domain
        .facets()
        .iter()
        .map(|f| (1..=f.len()).product::<usize>())
        .sum();
    if sd_facets_dom <= vcfg.sd_facet_gate {
        let sd_dom = barycentric_subdivision(&domain, cfg)?;
        let sd_cod = barycentric_subdivision(&codomain, cfg)?;
        let sphi = sd_map(phi, &sd_dom, &sd_cod)?;
        let spsi = sd_map(psi, &sd_dom, &sd_cod)?;
        let sd_dist = contiguity_distance(&sphi, &spsi, cfg)?;
        le_check(checker, "sd/distance-monotone", &sd_dist, &sd_res, || {
            describe_pair(phi, psi)
        });

        match (class_check(phi, psi, cfg)?, class_check(&sphi, &spsi, cfg)?) {
            (ClassOutcome::Same(_), out) => {
                if out.is_unknown() {
                    checker.skip("sd/preserves-class");
                } else {
                    checker.check("sd/preserves-class", out.is_same(), || {
                        describe_pair(phi, psi)
                    });
                }
            }
            (ClassOutcome::Unknown { .. }, _) => checker.skip("sd/preserves-class"),
            _ => checker.skip("sd/preserves-class"),
        }

        // sd functoriality on a composable triple.
        let mi = rng.random_range(0..pool.complexes.len());
        let m = Arc::clone(&pool.complexes[mi]);
        let sd_m_facets: usize = m
            .facets()
            .iter()
            .map(|f| (1..=f.len()).product::<usize>())
            .sum();
        if sd_m_facets <= vcfg.sd_facet_gate {
            let sd_m = barycentric_subdivision(&m, cfg)?;
            let f = corpus::random_simplicial_map(rng, &m, &domain);
            let lhs = sd_map(&compose(phi, &f)?, &sd_m, &sd_cod)?;
            let rhs = compose(&sphi, &sd_map(&f, &sd_m, &sd_dom)?)?;
            checker.check("sd/functoriality", lhs == rhs, || describe_pair(phi, psi));
        } else {
            checker.skip("sd/functoriality");
        }
    } else {
        checker.skip("sd/distance-monotone");
        checker.skip("sd/preserves-class");
        checker.skip("sd/functoriality");
    }

    // scat of a map: scat(φ) ≤ min{scat(K), scat(K')}.
    {
        let sm = scat_map(phi, cfg)?;
        let s_cod = pool.scat(ci, cfg)?;
        le_check(checker, "scat-map/le-scat-domain", &sm, &s_dom, || {
            describe_pair(phi, psi)
        });
        le_check(checker, "scat-map/le-scat-codomain", &sm, &s_cod, || {
            describe_pair(phi, psi)
        });
    }

    // Universal property of the product: the pairing of phi, psi into the
    // square of the codomain post-composes back to phi and psi.
    if codomain.facet_count() * codomain.facet_count() <= vcfg.product_facet_gate {
        let product = categorical_product(&codomain, &codomain, cfg)?;
        let h = pairing(&product, phi, psi);
        match h {
            Ok(h) => {
                let back1 = compose(&product.p1, &h)?;
                let back2 = compose(&product.p2, &h)?;
                checker.check(
                    "product/universal-property",
                    &back1 == phi && &back2 == psi,
                    || describe_pair(phi, psi),
                );
            }
            Err(e) => checker.check("product/universal-property", false, || {
                format!("{} pairing failed: {e}", describe_pair(phi, psi))
            }),
        }
    } else {
        checker.skip("product/universal-property");
    }

    // Oracle agreement: class decision on every pair, distance on a stride.
    match oracle::exhaustive_same_class(phi, psi, cfg) {
        Ok(expected) => match same_contiguity_class(phi, psi, cfg)? {
            ClassOutcome::Same(_) => checker.check("oracle/class-agreement", expected, || {
                describe_pair(phi, psi)
            }),
            ClassOutcome::Different { .. } => {
                checker.check("oracle/class-agreement", !expected, || {
                    describe_pair(phi, psi)
                })
            }
            ClassOutcome::Unknown { .. } => checker.skip("oracle/class-agreement"),
        },
        Err(Error::CapExceeded { .. }) => checker.skip("oracle/class-agreement"),
        Err(e) => return Err(e),
    }

    if pair_no % vcfg.oracle_distance_stride == 0
        && domain.facet_count() <= vcfg.oracle_distance_facet_gate
    {
        match oracle::exhaustive_distance(phi, psi, cfg) {
            Ok(expected) => {
                if sd_res.exact {
                    checker.check(
                        "oracle/distance-agreement",
                        sd_res.value == expected,
                        || format!("{} engine {} oracle {}", describe_pair(phi, psi), sd_res.value, expected),
                    );
                } else {
                    checker.skip("oracle/distance-agreement");
                }
            }
            Err(Error::CapExceeded { .. }) => checker.skip("oracle/distance-agreement"),
            Err(e) => return Err(e),
        }
    } else {
        checker.skip("oracle/distance-agreement");
    }

    Ok(())
}

/// `Some(true)` when the lemma holds on this instance, `Some(false)` on a
/// violation, `None` when undecidable within caps or no facet lies in the
/// skeleton.
fn skeleton_lemma_outcome(
    domain: &Arc<SimplicialComplex>,
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    q: usize,
    cfg: &EngineConfig,
) -> Result<Option<bool>> {
    // Build the q-skeleton as a standalone complex on the same vertex set.
    let Some(simplices) = domain.all_simplices(4096) else {
        return Ok(None);
    };
    let skel_facets: Vec<Vec<u32>> = simplices.into_iter().filter(|s| s.len() <= q + 1).collect();
    let names: Vec<String> = domain.names().to_vec();
    let Ok(skeleton) = SimplicialComplex::from_facets(names, skel_facets) else {
        return Ok(None);
    };
    let skeleton = Arc::new(skeleton);
    let phi_s = make_map(&skeleton, phi.codomain(), phi.assignment().to_vec())?;
    let psi_s = make_map(&skeleton, psi.codomain(), psi.assignment().to_vec())?;
    let on_skeleton = match class_check(&phi_s, &psi_s, cfg)? {
        ClassOutcome::Same(_) => true,
        ClassOutcome::Different { .. } => false,
        ClassOutcome::Unknown { .. } => return Ok(None),
    };
    if !on_skeleton {
        // Lemma premise not met; nothing to check.
        return Ok(None);
    }
    // Facets of the domain contained in the skeleton (dimension ≤ q).
    let mut mask = FixedBitSet::with_capacity(domain.facet_count());
    for (i, f) in domain.facets().iter().enumerate() {
        if f.len() <= q + 1 {
            mask.insert(i);
        }
    }
    if mask.count_ones(..) == 0 {
        return Ok(None);
    }
    match crate::distance::is_good(phi, psi, &mask, cfg)? {
        crate::distance::Goodness::Good(_) => Ok(Some(true)),
        crate::distance::Goodness::Bad { .. } => Ok(Some(false)),
        crate::distance::Goodness::Unknown { .. } => Ok(None),
    }
}

/// Quick self-test entry used by unit tests: a small run that must pass.
pub fn smoke(seed: u64) -> Result<VerifyReport> {
    let vcfg = VerifyConfig {
        seed,
        random_complexes: 10,
        random_map_pairs: 15,
        ..VerifyConfig::default()
    };
    run_verify(&[], &vcfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::full_mask;

    #[test]
    fn smoke_run_passes() {
        let report = smoke(1).unwrap();
        for line in report.summary_lines() {
            eprintln!("{line}");
        }
        assert!(report.pass());
    }

    #[test]
    fn full_mask_restriction_is_whole_complex() {
        let k = corpus::boundary_delta2();
        let piece = restrict(&k, &full_mask(&k)).unwrap();
        assert_eq!(piece.complex().as_ref(), k.as_ref());
    }
}
