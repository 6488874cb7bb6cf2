//! Bundled fixture complexes and seeded random generation of small connected
//! complexes and simplicial maps, used by the verification suite and tests.

use std::sync::Arc;

use rand::Rng;

use crate::complex::SimplicialComplex;
use crate::maps::{constant, make_map, SimplicialMap};

fn build(names: &[&str], facets: &[&[u32]]) -> Arc<SimplicialComplex> {
    Arc::new(
        SimplicialComplex::from_facets(
            names.iter().map(|s| s.to_string()).collect(),
            facets.iter().map(|f| f.to_vec()).collect(),
        )
        .expect("fixture complex"),
    )
}

/// The full simplex Δⁿ on `n + 1` vertices `a, b, c, …`.
pub fn delta(n: usize) -> Arc<SimplicialComplex> {
    assert!(n < 26);
    let names: Vec<String> = (0..=n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    Arc::new(SimplicialComplex::from_facets(names, vec![(0..=n as u32).collect()]).unwrap())
}

/// The boundary of the triangle: three edge facets on `a, b, c`.
pub fn boundary_delta2() -> Arc<SimplicialComplex> {
    build(&["a", "b", "c"], &[&[0, 1], &[0, 2], &[1, 2]])
}

/// The `n`-cycle graph, `n ≥ 3`.
pub fn cycle(n: usize) -> Arc<SimplicialComplex> {
    assert!((3..=26).contains(&n));
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let mut facets: Vec<Vec<u32>> = (0..n as u32 - 1).map(|i| vec![i, i + 1]).collect();
    facets.push(vec![0, n as u32 - 1]);
    Arc::new(SimplicialComplex::from_facets(names, facets).unwrap())
}

/// The path graph with `edges` edges.
pub fn path(edges: usize) -> Arc<SimplicialComplex> {
    assert!((1..26).contains(&edges));
    let names: Vec<String> = (0..=edges)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let facets: Vec<Vec<u32>> = (0..edges as u32).map(|i| vec![i, i + 1]).collect();
    Arc::new(SimplicialComplex::from_facets(names, facets).unwrap())
}

/// The six-vertex complex on `{a,b,c,x,y,z}` whose geometric realization is
/// contractible but which is not strongly collapsible: facets
/// `{a,x,b}, {b,y,c}, {c,z,a}, {a,z,x}, {b,x,y}, {c,y,z}, {x,y,z}`.
pub fn fig3() -> Arc<SimplicialComplex> {
    build(
        &["a", "b", "c", "x", "y", "z"],
        &[
            &[0, 3, 1],
            &[1, 4, 2],
            &[2, 5, 0],
            &[0, 5, 3],
            &[1, 3, 4],
            &[2, 4, 5],
            &[3, 4, 5],
        ],
    )
}

/// The named fixture corpus: simplices, the triangle boundary, small cycles
/// and paths, and the non-collapsible contractible complex.
pub fn corpus() -> Vec<(String, Arc<SimplicialComplex>)> {
    let mut out: Vec<(String, Arc<SimplicialComplex>)> = Vec::new();
    for n in 0..=3 {
        out.push((format!("delta{n}"), delta(n)));
    }
    out.push(("boundary_delta2".into(), boundary_delta2()));
    out.push(("c4".into(), cycle(4)));
    out.push(("c5".into(), cycle(5)));
    out.push(("path2".into(), path(2)));
    out.push(("path3".into(), path(3)));
    out.push(("fig3".into(), fig3()));
    out
}

/// Generates a random connected complex with at most `max_vertices` vertices
/// and at most `max_facets` facets (after canonicalization).
pub fn random_connected_complex(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_facets: usize,
) -> Arc<SimplicialComplex> {
    loop {
        let nv = rng.random_range(1..=max_vertices);
        let target_facets = rng.random_range(1..=max_facets);
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for _ in 0..target_facets {
            let size = [1, 2, 2, 2, 3, 3, 4][rng.random_range(0..7)].min(nv);
            let mut facet: Vec<u32> = Vec::new();
            while facet.len() < size {
                let v = rng.random_range(0..nv as u32);
                if !facet.contains(&v) {
                    facet.push(v);
                }
            }
            facets.push(facet);
        }
        // Rename to the dense set of used vertices.
        let mut used: Vec<u32> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let renumber: std::collections::HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let facets: Vec<Vec<u32>> = facets
            .iter()
            .map(|f| f.iter().map(|v| renumber[v]).collect())
            .collect();
        let names: Vec<String> = (0..used.len()).map(|i| format!("v{i}")).collect();
        let Ok(k) = SimplicialComplex::from_facets(names, facets) else {
            continue;
        };
        if k.is_connected() && k.facet_count() <= max_facets {
            return Arc::new(k);
        }
    }
}

/// Generates a random simplicial map by randomized backtracking; falls back
/// to a random constant map when the search budget runs out.
pub fn random_simplicial_map(
    rng: &mut impl Rng,
    domain: &Arc<SimplicialComplex>,
    codomain: &Arc<SimplicialComplex>,
) -> SimplicialMap {
    let nv = domain.vertex_count();
    let nc = codomain.vertex_count() as u32;
    for _ in 0..32 {
        let mut assignment: Vec<u32> = Vec::with_capacity(nv);
        let mut ok = true;
        'vertex: for v in 0..nv as u32 {
            let mut order: Vec<u32> = (0..nc).collect();
            // Fisher-Yates with the provided rng keeps runs reproducible.
            for i in (1..order.len()).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            'candidate: for &w in &order {
                assignment.push(w);
                // Check every facet whose vertices are all assigned so far.
                for facet in domain.facets() {
                    if facet.vertices().iter().all(|&u| u <= v) {
                        let img: Vec<u32> = facet
                            .vertices()
                            .iter()
                            .map(|&u| assignment[u as usize])
                            .collect();
                        if !codomain.is_simplex_ids(&img) {
                            assignment.pop();
                            continue 'candidate;
                        }
                    }
                }
                continue 'vertex;
            }
            ok = false;
            break;
        }
        if ok {
            if let Ok(map) = make_map(domain, codomain, assignment) {
                return map;
            }
        }
    }
    let w = rng.random_range(0..nc);
    constant(domain, codomain, w).expect("constant maps are always simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_are_canonical() {
        for (name, k) in corpus() {
            assert!(k.vertex_count() >= 1, "{name}");
            assert!(k.is_connected(), "{name}");
        }
        assert_eq!(fig3().facet_count(), 7);
        assert_eq!(fig3().vertex_count(), 6);
    }

    #[test]
    fn random_complexes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = random_connected_complex(&mut rng, 6, 8);
            assert!(k.vertex_count() <= 6);
            assert!(k.facet_count() <= 8);
            assert!(k.is_connected());
        }
    }

    #[test]
    fn random_maps_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let k = random_connected_complex(&mut rng, 5, 6);
            let l = random_connected_complex(&mut rng, 5, 6);
            let f = random_simplicial_map(&mut rng, &k, &l);
            // make_map revalidates.
            assert!(make_map(&k, &l, f.assignment().to_vec()).is_ok());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let gen = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = random_connected_complex(&mut rng, 6, 8);
            crate::io::serialize_complex(&k)
        };
        assert_eq!(gen(42), gen(42));
    }
}
