//! Simple undirected graphs on vertices `0..n`, stored as adjacency bitmasks.
//!
//! Every relabelling in this module is order-preserving, so identical inputs
//! always give identical vertex numbering.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the vertex count (one `u64` adjacency word per vertex).
pub const MAX_VERTICES: usize = 64;
/// Largest order the single-byte graph6 header can describe.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, limit: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op, loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidEdge(u, v));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbour_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&a| a == 0)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// Cycle on `n` vertices; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Graph::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    /// Decodes a Pruefer sequence into a labelled tree on `seq.len() + 2` vertices.
    pub fn tree_from_pruefer(seq: &[usize]) -> Result<Self> {
        let n = seq.len() + 2;
        if let Some(&bad) = seq.iter().find(|&&a| a >= n) {
            return Err(Error::Pruefer(format!("entry {bad} not in [0, {n})")));
        }
        let mut g = Graph::edgeless(n)?;
        let mut degree = vec![1usize; n];
        for &a in seq {
            degree[a] += 1;
        }
        for &a in seq {
            let leaf = (0..n).find(|&j| degree[j] == 1).expect("a leaf always exists");
            g.add_edge(leaf, a)?;
            degree[leaf] -= 1;
            degree[a] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&j| degree[j] == 1).collect();
        debug_assert_eq!(rest.len(), 2);
        g.add_edge(rest[0], rest[1])?;
        Ok(g)
    }

    /// Applies the vertex map `old -> perm[old]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = 0u64;
        if perm.len() != self.n {
            return Err(Error::Restraint(format!(
                "permutation has length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::Restraint("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut g = Graph::edgeless(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// Contracts edge `{u, v}` into its smaller endpoint.
    ///
    /// The returned map sends every old vertex to its index in the contracted
    /// graph; both endpoints map to the same new vertex.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Self, Vec<usize>)> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let merge_map: Vec<usize> = (0..self.n)
            .map(|w| match w {
                w if w == gone => keep,
                w if w > gone => w - 1,
                w => w,
            })
            .collect();
        let mut g = Graph::edgeless(self.n - 1)?;
        for (a, b) in self.edges() {
            let (na, nb) = (merge_map[a], merge_map[b]);
            if na != nb {
                g.add_edge(na, nb)?;
            }
        }
        Ok((g, merge_map))
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in increasing original
    /// order. Also returns the kept original vertices (new index -> old vertex).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::edgeless(keep.len())?;
        for (a, b) in self.edges() {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                g.add_edge(index[a], index[b])?;
            }
        }
        Ok((g, keep))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for w in bits(frontier) {
                    next |= self.adj[w];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// A proper 2-colouring `(A, B)` if one exists. In every component the
    /// side holding the smallest vertex is put in `A`.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for comp in self.connected_components() {
            let root = comp[0];
            side[root] = Some(false);
            let mut stack = vec![root];
            while let Some(w) = stack.pop() {
                let s = side[w].expect("visited vertices are coloured");
                for x in self.neighbours(w) {
                    match side[x] {
                        None => {
                            side[x] = Some(!s);
                            stack.push(x);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| side[v] == Some(false)).collect();
        let b = (0..self.n).filter(|&v| side[v] == Some(true)).collect();
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }
}

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Parses one graph6 record (no `>>graph6<<` header, no trailing newline).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty record".into()))?;
    if let Some(&c) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(Error::Graph6(format!("byte {c} outside printable range 63..=126")));
    }
    if first == 126 {
        return Err(Error::Graph6(format!(
            "orders above {GRAPH6_MAX_VERTICES} are not supported"
        )));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "n = {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::edgeless(n)?;
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::TooLarge { n, limit: GRAPH6_MAX_VERTICES });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; nbits.div_ceil(6)];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                body[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(body.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(body.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Parses the plain edge-list format: vertex count on the first line, then one
/// `u v` pair per line. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing vertex count".into()))?
        .parse()
        .map_err(|e| Error::EdgeList(format!("vertex count: {e}")))?;
    let mut g = Graph::edgeless(n)?;
    for line in lines {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::EdgeList(format!("{line:?}: {e}"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [u, v] => g.add_edge(u, v)?,
            _ => return Err(Error::EdgeList(format!("expected `u v`, got {line:?}"))),
        }
    }
    Ok(g)
}

/// Every labelled tree on `n` vertices, one per Pruefer sequence (`n^(n-2)` of them).
pub fn labelled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut idx| {
        if n < 2 {
            return Graph::edgeless(n).expect("n < 2");
        }
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        Graph::tree_from_pruefer(&seq).expect("sequence entries are in range")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small_records() {
        assert_eq!(parse_graph6("?").unwrap(), Graph::edgeless(0).unwrap());
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("Bg").unwrap(), Graph::path(3).unwrap());
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::path(3).unwrap()).unwrap(), "Bg");
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("Bww").is_err());
        assert!(parse_graph6("B x").is_err());
        // K3 bits followed by a set padding bit
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6(m)) if m.contains("padding")));
    }

    #[test]
    fn generators() {
        assert_eq!(Graph::complete(3).unwrap().edge_count(), 3);
        assert_eq!(Graph::tree_from_pruefer(&[]).unwrap().edges(), vec![(0, 1)]);
        let star = Graph::tree_from_pruefer(&[0, 0]).unwrap();
        assert_eq!(star.edges(), vec![(0, 1), (0, 2), (0, 3)]);
        assert!(Graph::tree_from_pruefer(&[4, 0]).is_err());
        assert_eq!(Graph::cycle(4).unwrap().edge_count(), 4);
        assert_eq!(labelled_trees(4).count(), 16);
        assert_eq!(labelled_trees(1).count(), 1);
    }

    #[test]
    fn bipartitions() {
        let (a, b) = Graph::path(3).unwrap().bipartition().unwrap();
        assert_eq!((a, b), (vec![0, 2], vec![1]));
        assert!(Graph::complete(3).unwrap().bipartition().is_none());
        let (a, b) = Graph::cycle(4).unwrap().bipartition().unwrap();
        assert_eq!((a, b), (vec![0, 2], vec![1, 3]));
        // second component's smallest vertex goes to A as well
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.bipartition().unwrap(), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn deletion_and_contraction() {
        let k3 = Graph::complete(3).unwrap();
        let (k2, map) = k3.contract_edge(0, 2).unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        assert_eq!(map[0], map[2]);
        let d = k3.delete_edge(0, 1).unwrap();
        assert_eq!(d.edges(), vec![(0, 2), (1, 2)]);

        let p4 = Graph::path(4).unwrap();
        let (p3, map) = p4.contract_edge(2, 1).unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(map, vec![0, 1, 1, 2]);
        assert_eq!(p4.contract_edge(0, 2), Err(Error::NotAnEdge(0, 2)));
        assert_eq!(p4.delete_edge(0, 3), Err(Error::NotAnEdge(0, 3)));
    }

    #[test]
    fn subgraphs_and_components() {
        let k3 = Graph::complete(3).unwrap();
        let (k2, keep) = k3.induced_subgraph(&[1, 0]).unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        assert_eq!(keep, vec![0, 1]);
        assert!(k3.induced_subgraph(&[3]).is_err());
        assert_eq!(
            Graph::edgeless(3).unwrap().connected_components(),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = Graph::from_edges(4, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn edge_list_format() {
        let g = parse_edge_list("3\n0 1\n1 2 # tail\n\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
        assert!(parse_edge_list("2\n0 0\n").is_err());
        assert!(parse_edge_list("2\n0\n").is_err());
        assert!(parse_edge_list("").is_err());
    }
}
