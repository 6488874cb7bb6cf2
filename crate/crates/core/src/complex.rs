use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::Result;

/// Dense vertex index within one complex.
///
/// Ids are contiguous `0..vertex_count` and carry no meaning across
/// complexes; the display name is the stable identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A simplex as a strictly increasing sequence of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    verts: Vec<u32>,
}

impl Simplex {
    /// Builds a simplex from arbitrary ids; sorts and deduplicates.
    /// Panics on an empty vertex set (the empty simplex is never stored).
    pub fn new(mut verts: Vec<u32>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        assert!(!verts.is_empty(), "empty simplex");
        Simplex { verts }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: u32) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        // Both sorted: linear merge scan.
        let mut it = other.verts.iter();
        'outer: for v in &self.verts {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }
}

/// A finite abstract simplicial complex, stored facet-only.
///
/// Only the maximal simplices (facets) are materialized; a vertex set is a
/// simplex iff it is contained in some facet. The facet list is deduplicated,
/// free of mutual inclusions, and sorted lexicographically on vertex ids, so
/// facet indices are deterministic.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    names: Vec<String>,
    name_index: HashMap<String, u32>,
    facets: Vec<Simplex>,
    facet_bits: Vec<FixedBitSet>,
    /// For each vertex, the ascending list of facet indices containing it.
    incidence: Vec<Vec<u32>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from an explicit vertex-name table and facets given
    /// as id lists. Within-facet duplicates are collapsed silently;
    /// non-maximal facets are absorbed. Every named vertex must occur in at
    /// least one facet.
    pub fn from_facets(names: Vec<String>, facets: Vec<Vec<u32>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyDocument);
        }
        let mut name_index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if name_index.insert(n.clone(), i as u32).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate vertex name {n:?}"),
                });
            }
        }
        let mut simplices: Vec<Simplex> = Vec::with_capacity(facets.len());
        for f in facets {
            for &v in &f {
                if v as usize >= names.len() {
                    return Err(Error::UnknownVertex(format!("id {v}")));
                }
            }
            simplices.push(Simplex::new(f));
        }
        simplices.sort();
        simplices.dedup();
        // Absorb non-maximal faces.
        let mut keep = vec![true; simplices.len()];
        for i in 0..simplices.len() {
            for j in 0..simplices.len() {
                if i != j
                    && keep[i]
                    && simplices[i].len() <= simplices[j].len()
                    && (simplices[i].len() < simplices[j].len() || i < j)
                    && simplices[i].is_subset_of(&simplices[j])
                {
                    keep[i] = false;
                    break;
                }
            }
        }
        let facets: Vec<Simplex> = simplices
            .into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect();

        let n = names.len();
        let mut incidence = vec![Vec::new(); n];
        let mut facet_bits = Vec::with_capacity(facets.len());
        for (fi, f) in facets.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(n);
            for &v in f.vertices() {
                bits.insert(v as usize);
                incidence[v as usize].push(fi as u32);
            }
            facet_bits.push(bits);
        }
        for (v, inc) in incidence.iter().enumerate() {
            if inc.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("vertex {:?} occurs in no facet", names[v]),
                });
            }
        }
        Ok(SimplicialComplex {
            names,
            name_index,
            facets,
            facet_bits,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &Simplex {
        &self.facets[i]
    }

    pub fn facet_bits(&self, i: usize) -> &FixedBitSet {
        &self.facet_bits[i]
    }

    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<u32> {
        self.name_index.get(name).copied()
    }

    /// Facet indices containing vertex `v`, ascending.
    pub fn incident_facets(&self, v: u32) -> &[u32] {
        &self.incidence[v as usize]
    }

    /// Largest facet dimension.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(0)
    }

    /// All simplices of the complex (nonempty faces of facets, deduplicated),
    /// sorted by dimension then lexicographically on vertex ids. Returns
    /// `None` once more than `cap` distinct simplices have been seen.
    pub fn all_simplices(&self, cap: usize) -> Option<Vec<Vec<u32>>> {
        let mut seen: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
        for f in &self.facets {
            let vs = f.vertices();
            if vs.len() >= 63 {
                return None;
            }
            for mask in 1u64..(1u64 << vs.len()) {
                let sub: Vec<u32> = vs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                seen.insert(sub);
                if seen.len() > cap {
                    return None;
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Some(out)
    }

    /// True iff the id set is a simplex, i.e. contained in some facet.
    pub fn is_simplex_ids(&self, ids: &[u32]) -> bool {
        if ids.is_empty() {
            return false;
        }
        let ids: Vec<u32> = {
            let mut v = ids.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        for &v in &ids {
            if v as usize >= self.names.len() {
                return false;
            }
        }
        // Scan only facets incident to the least-incident vertex.
        let anchor = *ids
            .iter()
            .min_by_key(|&&v| self.incidence[v as usize].len())
            .unwrap();
        let probe = Simplex::new(ids);
        self.incidence[anchor as usize]
            .iter()
            .any(|&fi| probe.is_subset_of(&self.facets[fi as usize]))
    }

    /// True iff the bitset is nonempty and contained in some facet.
    pub fn contains_bits(&self, bits: &FixedBitSet) -> bool {
        let mut anchor: Option<u32> = None;
        let mut best = usize::MAX;
        for v in bits.ones() {
            let d = self.incidence[v].len();
            if d < best {
                best = d;
                anchor = Some(v as u32);
            }
        }
        let Some(anchor) = anchor else { return false };
        self.incidence[anchor as usize]
            .iter()
            .any(|&fi| bits.is_subset(&self.facet_bits[fi as usize]))
    }

    /// Resolves vertex names and answers whether the set is a simplex.
    pub fn is_simplex(&self, names: &[&str]) -> Result<bool> {
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            let id = self
                .vertex_by_name(n)
                .ok_or_else(|| Error::UnknownVertex((*n).to_string()))?;
            ids.push(id);
        }
        Ok(self.is_simplex_ids(&ids))
    }

    /// Edge-path connectivity of the 1-skeleton. A one-vertex complex is
    /// connected; two vertices are adjacent iff they share a facet.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut facet_done = vec![false; self.facets.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &fi in &self.incidence[v as usize] {
                if facet_done[fi as usize] {
                    continue;
                }
                facet_done[fi as usize] = true;
                for &w in self.facets[fi as usize].vertices() {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All edges (1-simplices) of the complex, each as an increasing pair,
    /// sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for f in &self.facets {
            let vs = f.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    out.push((vs[i], vs[j]));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Breadth-first shortest edge path between two vertices, as a vertex
    /// sequence including both endpoints. `None` when they are in different
    /// components.
    pub fn edge_path(&self, from: u32, to: u32) -> Option<Vec<u32>> {
        if from == to {
            return Some(vec![from]);
        }
        let n = self.vertex_count();
        let mut prev: Vec<Option<u32>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        prev[from as usize] = Some(from);
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            // Neighbors = union of incident facets; iterate in ascending id
            // order for determinism.
            let mut nbrs: Vec<u32> = Vec::new();
            for &fi in &self.incidence[v as usize] {
                nbrs.extend(self.facets[fi as usize].vertices());
            }
            nbrs.sort_unstable();
            nbrs.dedup();
            for w in nbrs {
                if prev[w as usize].is_none() {
                    prev[w as usize] = Some(v);
                    if w == to {
                        let mut path = vec![to];
                        let mut cur = to;
                        while cur != from {
                            cur = prev[cur as usize].unwrap();
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A facet-generated subcomplex: the downward closure of a selection of
/// parent facets, rebuilt as a standalone complex with its own dense ids.
///
/// Parent facets are mutually incomparable, so every selected facet is a
/// facet of the piece.
#[derive(Debug, Clone)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    mask: FixedBitSet,
    complex: Arc<SimplicialComplex>,
    /// piece vertex id -> parent vertex id (ascending)
    vertex_to_parent: Vec<u32>,
}

impl Subcomplex {
    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn vertex_to_parent(&self) -> &[u32] {
        &self.vertex_to_parent
    }

    /// Facet indices of the mask, ascending.
    pub fn facet_indices(&self) -> Vec<usize> {
        self.mask.ones().collect()
    }
}

/// Subcomplex generated by the facets selected in `mask`.
pub fn restrict(parent: &Arc<SimplicialComplex>, mask: &FixedBitSet) -> Result<Subcomplex> {
    if mask.count_ones(..) == 0 {
        return Err(Error::EmptyMask);
    }
    if let Some(max) = mask.ones().max() {
        if max >= parent.facet_count() {
            return Err(Error::MaskOutOfRange {
                index: max,
                facets: parent.facet_count(),
            });
        }
    }
    let mut verts: Vec<u32> = Vec::new();
    for fi in mask.ones() {
        verts.extend(parent.facet(fi).vertices());
    }
    verts.sort_unstable();
    verts.dedup();
    let mut parent_to_piece: HashMap<u32, u32> = HashMap::with_capacity(verts.len());
    for (i, &v) in verts.iter().enumerate() {
        parent_to_piece.insert(v, i as u32);
    }
    let names: Vec<String> = verts.iter().map(|&v| parent.name(v).to_string()).collect();
    let facets: Vec<Vec<u32>> = mask
        .ones()
        .map(|fi| {
            parent
                .facet(fi)
                .vertices()
                .iter()
                .map(|v| parent_to_piece[v])
                .collect()
        })
        .collect();
    let complex = Arc::new(SimplicialComplex::from_facets(names, facets)?);
    Ok(Subcomplex {
        parent: Arc::clone(parent),
        mask: mask.clone(),
        complex,
        vertex_to_parent: verts,
    })
}

/// Convenience: a mask with the given facet indices set.
pub fn facet_mask(parent: &SimplicialComplex, indices: &[usize]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(parent.facet_count());
    for &i in indices {
        m.insert(i);
    }
    m
}

/// Convenience: the full facet mask.
pub fn full_mask(parent: &SimplicialComplex) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(parent.facet_count());
    m.insert_range(..);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_complex;

    fn arc(text: &str) -> Arc<SimplicialComplex> {
        Arc::new(parse_complex(text).unwrap())
    }

    #[test]
    fn is_simplex_boundary_and_full() {
        let bd = arc("a b\nb c\nc a");
        assert!(bd.is_simplex(&["a", "b"]).unwrap());
        assert!(!bd.is_simplex(&["a", "b", "c"]).unwrap());
        let full = arc("a b c");
        assert!(full.is_simplex(&["a", "c"]).unwrap());
        assert!(matches!(
            full.is_simplex(&["a", "q"]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn restrict_edge_of_boundary() {
        let bd = arc("a b\na c\nb c");
        let sub = restrict(&bd, &facet_mask(&bd, &[0])).unwrap();
        assert_eq!(sub.complex().vertex_count(), 2);
        assert_eq!(sub.complex().facet_count(), 1);
        assert_eq!(sub.vertex_to_parent(), &[0, 1]);

        let sub2 = restrict(&bd, &facet_mask(&bd, &[0, 1])).unwrap();
        assert_eq!(sub2.complex().facet_count(), 2);
        assert_eq!(sub2.complex().vertex_count(), 3);
        // The path a-b, a-c is connected, misses the edge {b,c}.
        assert!(!sub2.complex().is_simplex(&["b", "c"]).unwrap());

        let full = arc("a b c");
        let sub3 = restrict(&full, &facet_mask(&full, &[0])).unwrap();
        assert_eq!(sub3.complex().as_ref(), full.as_ref());
    }

    #[test]
    fn restrict_rejects_empty_mask() {
        let bd = arc("a b\na c\nb c");
        assert!(matches!(
            restrict(&bd, &facet_mask(&bd, &[])),
            Err(Error::EmptyMask)
        ));
    }

    #[test]
    fn connectivity() {
        assert!(arc("a b\na c\nb c").is_connected());
        assert!(!arc("a b\nc d").is_connected());
        assert!(arc("a").is_connected());
    }

    #[test]
    fn restriction_monotone_in_mask() {
        let k = arc("a b c\nb c d\nd e");
        let m1 = facet_mask(&k, &[0, 2]);
        let m2 = facet_mask(&k, &[0, 1, 2]);
        let s1 = restrict(&k, &m1).unwrap();
        let s2 = restrict(&k, &m2).unwrap();
        // Every facet of the smaller piece is a simplex of the larger piece.
        for f in s1.complex().facets() {
            let names: Vec<&str> = f
                .vertices()
                .iter()
                .map(|&v| s1.complex().name(v))
                .collect();
            assert!(s2.complex().is_simplex(&names).unwrap());
        }
    }
}
