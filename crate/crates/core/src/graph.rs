//! Labeled digraph view of a comparator network and a brute-force
//! isomorphism test for small graphs.

use crate::error::{Error, Result};
use crate::network::{Comparator, Network};

/// Largest vertex count accepted by [`iso_bruteforce`].
pub const MAX_ISO_VERTICES: usize = 10;

/// Which output of a comparator feeds the successor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Min = 1,
    Max = 2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub label: EdgeLabel,
    pub to: usize,
}

/// One vertex per comparator occurrence, ordered by layer then by smaller
/// channel. An edge `(u, 1, v)` means the minimum output of `u` is next read
/// by `v`; label 2 is the same for the maximum output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRep {
    pub vertices: Vec<(usize, Comparator)>,
    pub edges: Vec<Edge>,
}

impl GraphRep {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, from: usize, label: EdgeLabel, to: usize) -> bool {
        self.edges.iter().any(|e| e.from == from && e.label == label && e.to == to)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count()
    }
}

pub fn graph_of(net: &Network) -> GraphRep {
    let mut vertices = Vec::new();
    for (k, layer) in net.layers().iter().enumerate() {
        for c in layer.comparators() {
            vertices.push((k, *c));
        }
    }
    // last[ch] = vertex that last wrote channel ch
    let mut last: Vec<Option<usize>> = vec![None; net.channels() + 1];
    let mut edges = Vec::new();
    for (v, (_, c)) in vertices.iter().enumerate() {
        for ch in [c.low, c.high] {
            if let Some(u) = last[ch] {
                let label = if vertices[u].1.low == ch { EdgeLabel::Min } else { EdgeLabel::Max };
                edges.push(Edge { from: u, label, to: v });
            }
        }
        last[c.low] = Some(v);
        last[c.high] = Some(v);
    }
    edges.sort();
    GraphRep { vertices, edges }
}

/// Decides labeled-digraph isomorphism by backtracking over vertex maps.
pub fn iso_bruteforce(a: &GraphRep, b: &GraphRep) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// An isomorphism `map` with `map[v]` the image of vertex `v` of `a`.
pub fn find_isomorphism(a: &GraphRep, b: &GraphRep) -> Result<Option<Vec<usize>>> {
    let n = a.vertex_count();
    if n.max(b.vertex_count()) > MAX_ISO_VERTICES {
        return Err(Error::TooLarge { what: "graph isomorphism", n: n.max(b.vertex_count()), limit: MAX_ISO_VERTICES });
    }
    if n != b.vertex_count() || a.edges.len() != b.edges.len() {
        return Ok(None);
    }
    let adj = |g: &GraphRep| {
        let mut m = vec![vec![0u8; n]; n];
        for e in &g.edges {
            m[e.from][e.to] |= e.label as u8;
        }
        m
    };
    let (ma, mb) = (adj(a), adj(b));
    let signature = |m: &Vec<Vec<u8>>, v: usize| {
        let mut out: Vec<u8> = m[v].iter().copied().filter(|&x| x != 0).collect();
        let mut inn: Vec<u8> = (0..n).map(|u| m[u][v]).filter(|&x| x != 0).collect();
        out.sort();
        inn.sort();
        (out, inn)
    };
    let sig_a: Vec<_> = (0..n).map(|v| signature(&ma, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(&mb, v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &ma, &mb, &sig_a, &sig_b, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

type Signature = (Vec<u8>, Vec<u8>);

fn extend(
    v: usize,
    ma: &[Vec<u8>],
    mb: &[Vec<u8>],
    sig_a: &[Signature],
    sig_b: &[Signature],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = map.len();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] || sig_a[v] != sig_b[w] {
            continue;
        }
        let consistent = (0..v).all(|u| ma[u][v] == mb[map[u]][w] && ma[v][u] == mb[w][map[u]]) && ma[v][v] == mb[w][w];
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(v + 1, ma, mb, sig_a, sig_b, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeLabel::{Max, Min};

    fn left() -> Network {
        Network::from_pairs(4, &[&[(1, 2), (3, 4)], &[(1, 4)], &[(1, 3), (2, 4)], &[(2, 3)]]).unwrap()
    }

    fn right() -> Network {
        Network::from_pairs(4, &[&[(1, 2), (3, 4)], &[(2, 3)], &[(1, 2), (3, 4)], &[(2, 3)]]).unwrap()
    }

    #[test]
    fn left_graph_edges() {
        let g = graph_of(&left());
        assert_eq!(g.vertex_count(), 6);
        let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
        let expected = [
            (a, Min, c),
            (a, Max, e),
            (b, Min, d),
            (b, Max, c),
            (c, Min, d),
            (c, Max, e),
            (d, Max, f),
            (e, Min, f),
        ];
        assert_eq!(g.edges.len(), expected.len());
        for (u, l, v) in expected {
            assert!(g.has_edge(u, l, v), "missing {u} -{l:?}-> {v}");
        }
        assert!((0..6).all(|v| g.degree(v) <= 4));
    }

    #[test]
    fn stated_vertex_map_is_an_isomorphism() {
        let (ga, gb) = (graph_of(&left()), graph_of(&right()));
        let map = [1, 0, 2, 3, 4, 5];
        for e in &ga.edges {
            assert!(gb.has_edge(map[e.from], e.label, map[e.to]), "{e:?}");
        }
        assert!(iso_bruteforce(&ga, &gb).unwrap());
    }

    #[test]
    fn single_comparator_is_an_isolated_vertex() {
        let g = graph_of(&Network::from_pairs(2, &[&[(1, 2)]]).unwrap());
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn label_swap_breaks_isomorphism() {
        let a = Network::from_pairs(3, &[&[(1, 2)], &[(2, 3)]]).unwrap();
        let b = Network::from_pairs(3, &[&[(1, 2)], &[(1, 3)]]).unwrap();
        assert!(!iso_bruteforce(&graph_of(&a), &graph_of(&b)).unwrap());
        assert!(iso_bruteforce(&graph_of(&a), &graph_of(&a)).unwrap());
    }

    #[test]
    fn size_limit() {
        let layers: Vec<&[(usize, usize)]> = vec![&[(1, 2)]; 11];
        let net = Network::from_pairs(2, &layers).unwrap();
        let g = graph_of(&net);
        assert!(iso_bruteforce(&g, &g).is_err());
    }
}
