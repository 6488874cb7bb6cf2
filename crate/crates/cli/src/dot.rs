use contig_core::complex::SimplicialComplex;

/// DOT document of the 1-skeleton with deterministic node/edge ordering;
/// facets of dimension ≥ 2 are listed as comments.
pub fn emit_dot(k: &SimplicialComplex) -> String {
    let mut out = String::from("graph complex {\n");
    let mut names: Vec<&str> = (0..k.vertex_count() as u32).map(|v| k.name(v)).collect();
    names.sort_unstable();
    for name in names {
        out.push_str(&format!("  \"{name}\";\n"));
    }
    let mut edges: Vec<(String, String)> = k
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (k.name(u).to_string(), k.name(v).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort();
    edges.dedup();
    for (a, b) in edges {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    let mut facet_lines: Vec<String> = k
        .facets()
        .iter()
        .filter(|f| f.len() >= 3)
        .map(|f| {
            let mut names: Vec<&str> = f.vertices().iter().map(|&v| k.name(v)).collect();
            names.sort_unstable();
            format!("  // facet {{{}}}", names.join(","))
        })
        .collect();
    facet_lines.sort();
    for line in facet_lines {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use contig_core::io::parse_complex;

    #[test]
    fn edge_counts() {
        let d1 = parse_complex("a b").unwrap();
        let dot = emit_dot(&d1);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert_eq!(dot.matches(';').count(), 3); // 2 nodes + 1 edge

        let bd = parse_complex("a b\na c\nb c").unwrap();
        let dot = emit_dot(&bd);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
