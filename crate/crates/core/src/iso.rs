//! Complex isomorphism by backtracking over vertex bijections.

use std::collections::{HashMap, HashSet};

use crate::complex::SimplicialComplex;

/// Per-vertex invariant used for pruning: the sorted multiset of incident
/// facet sizes.
fn vertex_signature(k: &SimplicialComplex, v: u32) -> Vec<usize> {
    let mut sig: Vec<usize> = k
        .incident_facets(v)
        .iter()
        .map(|&fi| k.facet(fi as usize).len())
        .collect();
    sig.sort_unstable();
    sig
}

/// True iff some vertex bijection maps facets onto facets bijectively.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.vertex_count() != b.vertex_count() || a.facet_count() != b.facet_count() {
        return false;
    }
    let mut sizes_a: Vec<usize> = a.facets().iter().map(|f| f.len()).collect();
    let mut sizes_b: Vec<usize> = b.facets().iter().map(|f| f.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return false;
    }

    let n = a.vertex_count();
    let sig_a: Vec<Vec<usize>> = (0..n as u32).map(|v| vertex_signature(a, v)).collect();
    let sig_b: Vec<Vec<usize>> = (0..n as u32).map(|v| vertex_signature(b, v)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }

    let facet_set_b: HashSet<&[u32]> = b.facets().iter().map(|f| f.vertices()).collect();

    // Assign the most constrained vertices first: rarest signature, then
    // highest incidence.
    let mut sig_count: HashMap<&Vec<usize>, usize> = HashMap::new();
    for s in &sig_a {
        *sig_count.entry(s).or_insert(0) += 1;
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| {
        (
            sig_count[&sig_a[v as usize]],
            std::cmp::Reverse(a.incident_facets(v).len()),
            v,
        )
    });

    let mut assignment: Vec<Option<u32>> = vec![None; n];
    let mut used: Vec<bool> = vec![false; n];

    fn consistent(
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        facet_set_b: &HashSet<&[u32]>,
        assignment: &[Option<u32>],
        v: u32,
    ) -> bool {
        // Every fully assigned facet through v must land exactly on a facet
        // of b; partially assigned facets must stay inside some facet of b.
        for &fi in a.incident_facets(v) {
            let facet = a.facet(fi as usize);
            let mut image: Vec<u32> = Vec::with_capacity(facet.len());
            let mut complete = true;
            for &u in facet.vertices() {
                match assignment[u as usize] {
                    Some(w) => image.push(w),
                    None => complete = false,
                }
            }
            image.sort_unstable();
            if complete {
                if !facet_set_b.contains(image.as_slice()) {
                    return false;
                }
            } else if !image.is_empty() && !b.is_simplex_ids(&image) {
                return false;
            }
        }
        true
    }

    fn search(
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        facet_set_b: &HashSet<&[u32]>,
        sig_a: &[Vec<usize>],
        sig_b: &[Vec<usize>],
        order: &[u32],
        depth: usize,
        assignment: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..b.vertex_count() as u32 {
            if used[w as usize] || sig_a[v as usize] != sig_b[w as usize] {
                continue;
            }
            assignment[v as usize] = Some(w);
            used[w as usize] = true;
            if consistent(a, b, facet_set_b, assignment, v)
                && search(
                    a, b, facet_set_b, sig_a, sig_b, order, depth + 1, assignment, used,
                )
            {
                return true;
            }
            assignment[v as usize] = None;
            used[w as usize] = false;
        }
        false
    }

    search(
        a,
        b,
        &facet_set_b,
        &sig_a,
        &sig_b,
        &order,
        0,
        &mut assignment,
        &mut used,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_complex;

    #[test]
    fn relabeled_boundary() {
        let a = parse_complex("a b\na c\nb c").unwrap();
        let b = parse_complex("x y\nx z\ny z").unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn boundary_vs_full_triangle() {
        let a = parse_complex("a b\na c\nb c").unwrap();
        let b = parse_complex("a b c").unwrap();
        assert!(!are_isomorphic(&a, &b));
    }

    #[test]
    fn cycle_vs_path() {
        let c4 = parse_complex("a b\nb c\nc d\na d").unwrap();
        let p4 = parse_complex("a b\nb c\nc d\nd e").unwrap();
        assert!(!are_isomorphic(&c4, &p4));
        let c4_relabel = parse_complex("p q\nq r\nr s\np s").unwrap();
        assert!(are_isomorphic(&c4, &c4_relabel));
    }

    #[test]
    fn distinguishes_same_counts() {
        // Both have 6 vertices and 6 edges, but one is two triangles glued at
        // a vertex... keep it simpler: C6 vs two disjoint triangles.
        let c6 = parse_complex("a b\nb c\nc d\nd e\ne f\na f").unwrap();
        let two_triangles = parse_complex("a b\nb c\na c\nd e\ne f\nd f").unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
    }
}
