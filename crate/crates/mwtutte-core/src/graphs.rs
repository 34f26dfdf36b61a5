//! Graph containers: simple bipartite graphs (the domain of the permutation
//! Tutte polynomial) and labeled multigraphs (the domain of
//! deletion–contraction), plus the named families used by the certificates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple bipartite graph. Vertices `0..a_size` form part A,
/// `a_size..a_size+b_size` part B; all edges cross parts. Adjacency lists
/// are sorted and symmetric, with no loops or parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    a_size: usize,
    b_size: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds from cross-part edges `(i, j)` where `i` is an A-index and
    /// `j` an absolute B-index (`j >= a_size`).
    pub fn new(a_size: usize, b_size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let n = a_size + b_size;
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= a_size {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}): first endpoint must be an A-index < {a_size}"
                )));
            }
            if j < a_size || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}): second endpoint must be a B-index in [{a_size}, {n})"
                )));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "parallel edge at vertex {v}"
                )));
            }
        }
        Ok(BipartiteGraph {
            a_size,
            b_size,
            adjacency,
        })
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn vertex_count(&self) -> usize {
        self.a_size + self.b_size
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_a(&self, v: usize) -> bool {
        v < self.a_size
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(a_index, b_absolute_index)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.a_size {
            for &j in &self.adjacency[i] {
                out.push((i, j));
            }
        }
        out
    }

    /// The graph with parts A and B exchanged (vertices reindexed so the
    /// old B occupies the low range).
    pub fn swap_parts(&self) -> Self {
        let remap = |v: usize| {
            if v < self.a_size {
                v + self.b_size
            } else {
                v - self.a_size
            }
        };
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(i, j)| (remap(j), remap(i)))
            .collect();
        BipartiteGraph::new(self.b_size, self.a_size, &edges).expect("swap preserves validity")
    }

    /// Disjoint union, with `other`'s vertices appended to each part:
    /// other's A-index `i` maps to `self.a_size + i`, other's B-index `j`
    /// to `a_total + self.b_size + (j − other.a_size)`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let a_total = self.a_size + other.a_size;
        let mut mapped = self.edges();
        // Re-home self's B-indices: old j >= self.a_size moves to a_total + (j - self.a_size).
        for e in mapped.iter_mut() {
            e.1 = a_total + (e.1 - self.a_size);
        }
        mapped.extend(other.edges().iter().map(|&(i, j)| {
            (self.a_size + i, a_total + self.b_size + (j - other.a_size))
        }));
        BipartiteGraph::new(a_total, self.b_size + other.b_size, &mapped)
            .expect("union of valid graphs")
    }

    /// Connected components, each re-indexed into its own graph, preserving
    /// part membership. Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<BipartiteGraph> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut out = Vec::with_capacity(count);
        for c in 0..count {
            let a_verts: Vec<usize> = (0..self.a_size).filter(|&v| comp[v] == c).collect();
            let b_verts: Vec<usize> =
                (self.a_size..n).filter(|&v| comp[v] == c).collect();
            let mut index = std::collections::HashMap::new();
            for (k, &v) in a_verts.iter().enumerate() {
                index.insert(v, k);
            }
            for (k, &v) in b_verts.iter().enumerate() {
                index.insert(v, a_verts.len() + k);
            }
            let mut edges = Vec::new();
            for &v in &a_verts {
                for &w in &self.adjacency[v] {
                    edges.push((index[&v], index[&w]));
                }
            }
            out.push(
                BipartiteGraph::new(a_verts.len(), b_verts.len(), &edges)
                    .expect("component of valid graph"),
            );
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency.iter().any(Vec::is_empty)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// `K_{a,b}`: every A-vertex adjacent to every B-vertex.
pub fn complete_bipartite(a: usize, b: usize) -> Result<BipartiteGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "complete bipartite graph needs both parts nonempty".into(),
        ));
    }
    let mut edges = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    BipartiteGraph::new(a, b, &edges)
}

/// The star `S_k` on `k` vertices: one center of degree `k−1` and `k−1`
/// leaves. `leaves_in_a` puts the leaves in part A (center in B).
pub fn star(k: usize, leaves_in_a: bool) -> Result<BipartiteGraph> {
    if k < 2 {
        return Err(Error::InvalidArgument("star needs at least 2 vertices".into()));
    }
    if leaves_in_a {
        let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, k - 1)).collect();
        BipartiteGraph::new(k - 1, 1, &edges)
    } else {
        let edges: Vec<(usize, usize)> = (0..k - 1).map(|j| (0, 1 + j)).collect();
        BipartiteGraph::new(1, k - 1, &edges)
    }
}

/// `H_{a,b,c}`: the complete bipartite graph `K_{a,b}` plus `c` pendant
/// leaves attached to the first `c` B-vertices (one leaf each). The leaves
/// join part A, so the part sizes are `(a+c, b)`.
pub fn h_abc(a: usize, b: usize, c: usize) -> Result<BipartiteGraph> {
    if c > b {
        return Err(Error::InvalidArgument(format!(
            "h_abc: cannot attach {c} leaves to {b} B-vertices"
        )));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "h_abc needs both core parts nonempty".into(),
        ));
    }
    let a_total = a + c;
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a_total + j));
        }
    }
    for l in 0..c {
        edges.push((a + l, a_total + l));
    }
    BipartiteGraph::new(a_total, b, &edges)
}

/// Samples a random bipartite graph with at most `max_vertices` vertices
/// and minimum degree at least `min_degree`. Used by conjecture scans and
/// property tests; returns `None` when the drawn part sizes cannot satisfy
/// the degree constraint.
pub fn random_bipartite<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    min_degree: usize,
) -> Option<BipartiteGraph> {
    let lo = min_degree.max(1);
    if 2 * lo > max_vertices {
        return None;
    }
    let a = rng.gen_range(lo..=(max_vertices - lo));
    let b_hi = max_vertices - a;
    if b_hi < lo {
        return None;
    }
    let b = rng.gen_range(lo..=b_hi);
    // Random edge set, then repair deficient vertices with random additions.
    let mut adj = vec![vec![false; b]; a];
    for row in adj.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.gen_bool(0.5);
        }
    }
    for i in 0..a {
        while adj[i].iter().filter(|&&e| e).count() < min_degree {
            adj[i][rng.gen_range(0..b)] = true;
        }
    }
    for j in 0..b {
        while (0..a).filter(|&i| adj[i][j]).count() < min_degree {
            adj[rng.gen_range(0..a)][j] = true;
        }
    }
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if adj[i][j] {
                edges.push((i, a + j));
            }
        }
    }
    Some(BipartiteGraph::new(a, b, &edges).expect("generator produces valid graphs"))
}

/// Samples a random connected bipartite graph with `max_vertices` or fewer
/// vertices and no isolated vertex (used by bound-dominance sweeps).
pub fn random_connected_bipartite<R: Rng>(rng: &mut R, max_vertices: usize) -> BipartiteGraph {
    loop {
        if let Some(g) = random_bipartite(rng, max_vertices, 1) {
            if g.is_connected() {
                return g;
            }
        }
    }
}

/// A labeled multigraph: loops and parallel edges allowed. Edge `k` (0-based
/// position in the list) carries label `k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) exceeds vertex count {vertex_count}"
                )));
            }
        }
        Ok(MultiGraph {
            vertex_count,
            edges: edges.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The cycle `C_n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("cycle needs at least one vertex".into()));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::new(n, &edges)
    }

    /// The path on `n` vertices (a tree).
    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("path needs at least one vertex".into()));
        }
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        MultiGraph::new(n, &edges)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut dsu = Dsu::new(self.vertex_count);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.component_count() == 1
    }

    /// All spanning trees as sorted lists of edge labels (1-based).
    /// Count equals the Tutte polynomial at `(1,1)`.
    pub fn spanning_trees(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_connected() {
            return Err(Error::Domain(
                "spanning trees require a connected graph".into(),
            ));
        }
        let need = self.vertex_count - 1;
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(need);
        self.tree_search(0, &Dsu::new(self.vertex_count), &mut chosen, need, &mut out);
        Ok(out)
    }

    fn tree_search(
        &self,
        from: usize,
        dsu: &Dsu,
        chosen: &mut Vec<usize>,
        need: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == need {
            out.push(chosen.iter().map(|&k| k + 1).collect());
            return;
        }
        if self.edges.len() - from < need - chosen.len() {
            return;
        }
        for k in from..self.edges.len() {
            let (u, v) = self.edges[k];
            if dsu.find(u) == dsu.find(v) {
                continue; // would close a cycle (also skips loops)
            }
            let mut next = dsu.clone();
            next.union(u, v);
            chosen.push(k);
            self.tree_search(k + 1, &next, chosen, need, out);
            chosen.pop();
        }
    }

    /// Samples a random connected multigraph with at most `max_edges` edges
    /// (simple edges drawn with repetition allowed, so parallels can occur).
    pub fn random_connected<R: Rng>(rng: &mut R, max_edges: usize) -> Self {
        loop {
            let n = rng.gen_range(2..=max_edges.min(6));
            let m = rng.gen_range(n - 1..=max_edges);
            let mut edges = Vec::with_capacity(m);
            for _ in 0..m {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                edges.push((u, v));
            }
            let g = MultiGraph::new(n, &edges).expect("indices in range");
            if g.is_connected() {
                return g;
            }
        }
    }
}

/// Disjoint-set union on vertex indices.
#[derive(Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    /// Path-halving find without mutation (parents immutable here to keep
    /// `clone` cheap during tree search).
    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    pub fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        self.parent[ru] = rv;
        true
    }

    pub fn component_count(&self) -> usize {
        (0..self.parent.len()).filter(|&v| self.find(v) == v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_bipartite_shape() {
        let g = complete_bipartite(2, 3).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 6);
        for i in 0..2 {
            assert_eq!(g.degree(i), 3);
        }
        for j in 2..5 {
            assert_eq!(g.degree(j), 2);
        }
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn star_orientations() {
        let s4 = star(4, true).unwrap();
        assert_eq!(s4.a_size(), 3);
        assert_eq!(s4.b_size(), 1);
        assert_eq!(s4.degree(3), 3);
        let s4b = star(4, false).unwrap();
        assert_eq!(s4b.a_size(), 1);
        assert_eq!(s4b.degree(0), 3);
        assert_eq!(star(2, true).unwrap().edge_count(), 1);
        assert!(star(1, true).is_err());
    }

    #[test]
    fn h_abc_shape() {
        let h = h_abc(6, 6, 6).unwrap();
        assert_eq!(h.vertex_count(), 18);
        assert_eq!(h.edge_count(), 42);
        let h222 = h_abc(2, 2, 2).unwrap();
        let mut a_degs: Vec<usize> = (0..4).map(|v| h222.degree(v)).collect();
        a_degs.sort_unstable();
        assert_eq!(a_degs, vec![1, 1, 2, 2]);
        assert_eq!(h222.degree(4), 3);
        assert_eq!(h222.degree(5), 3);
        assert_eq!(h_abc(3, 4, 0).unwrap(), complete_bipartite(3, 4).unwrap());
        assert!(h_abc(2, 2, 3).is_err());
        // degree-1 count equals c
        let h: BipartiteGraph = h_abc(4, 5, 3).unwrap();
        let leaves = (0..h.vertex_count()).filter(|&v| h.degree(v) == 1).count();
        assert_eq!(leaves, 3);
    }

    #[test]
    fn edge_count_balances_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            if let Some(g) = random_bipartite(&mut rng, 9, 1) {
                let a_sum: usize = (0..g.a_size()).map(|v| g.degree(v)).sum();
                let b_sum: usize = (g.a_size()..g.vertex_count()).map(|v| g.degree(v)).sum();
                assert_eq!(a_sum, g.edge_count());
                assert_eq!(b_sum, g.edge_count());
            }
        }
    }

    #[test]
    fn components_split_and_preserve_parts() {
        let g = complete_bipartite(2, 3).unwrap();
        assert_eq!(g.connected_components().len(), 1);
        let two = star(2, true).unwrap().disjoint_union(&star(2, true).unwrap());
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.vertex_count(), 2);
            assert_eq!(c.edge_count(), 1);
        }
        // An isolated vertex is its own component.
        let with_iso = BipartiteGraph::new(2, 1, &[(0, 2)]).unwrap();
        assert_eq!(with_iso.connected_components().len(), 2);
        assert!(with_iso.has_isolated_vertex());
    }

    #[test]
    fn cycle_spanning_trees() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let trees = c4.spanning_trees().unwrap();
        assert_eq!(trees.len(), 4);
        for t in &trees {
            assert_eq!(t.len(), 3);
        }
        let path = MultiGraph::path(5).unwrap();
        assert_eq!(path.spanning_trees().unwrap(), vec![vec![1, 2, 3, 4]]);
        let disconnected = MultiGraph::new(3, &[(0, 1)]).unwrap();
        assert!(disconnected.spanning_trees().is_err());
    }

    #[test]
    fn figure_one_graph_has_pictured_tree() {
        // 6 vertices, 8 edges; labels 1..8 in list order.
        let g = MultiGraph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let trees = g.spanning_trees().unwrap();
        assert!(trees.contains(&vec![1, 2, 3, 5, 7]));
    }

    #[test]
    fn random_min_degree_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            if let Some(g) = random_bipartite(&mut rng, 10, 2) {
                assert!(g.min_degree() >= 2, "min degree violated");
                assert!(g.vertex_count() <= 10);
            }
        }
    }

    #[test]
    fn swap_parts_roundtrip() {
        let h = h_abc(2, 3, 1).unwrap();
        let back = h.swap_parts().swap_parts();
        assert_eq!(h, back);
    }
}
