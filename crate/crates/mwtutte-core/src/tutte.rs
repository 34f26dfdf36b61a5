//! Three independent Tutte-polynomial algorithms used as mutual oracles:
//! deletion–contraction on multigraphs, the corank–nullity subset expansion
//! on matroids, and spanning-tree activity counting.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{Dsu, MultiGraph};
use crate::matroids::Matroid;
use crate::poly::BivariatePolynomial;

/// Edge cap for the exponential-time algorithms.
pub const MAX_EDGES_DC: usize = 24;
pub const MAX_EDGES_ACTIVITY: usize = 16;

/// Tutte polynomial by deletion–contraction. Loops contribute a factor
/// `y`, bridges a factor `x`; the recursion always splits on the
/// highest-labeled edge that is neither.
pub fn tutte_deletion_contraction(g: &MultiGraph) -> Result<BivariatePolynomial> {
    if g.edge_count() > MAX_EDGES_DC {
        return Err(Error::Resource(format!(
            "deletion-contraction capped at {MAX_EDGES_DC} edges, got {}",
            g.edge_count()
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().to_vec();
    Ok(dc_recurse(g.vertex_count(), &edges))
}

fn dc_recurse(vertex_count: usize, edges: &[(usize, usize)]) -> BivariatePolynomial {
    // Split on the highest-labeled non-loop non-bridge edge; if none
    // remains the graph is loops + bridges and contributes x^b y^l.
    let mut split: Option<usize> = None;
    for k in (0..edges.len()).rev() {
        let (u, v) = edges[k];
        if u == v {
            continue; // loop
        }
        if !is_bridge(vertex_count, edges, k) {
            split = Some(k);
            break;
        }
    }
    match split {
        None => {
            let loops = edges.iter().filter(|&&(u, v)| u == v).count() as u32;
            let bridges = edges.len() as u32 - loops;
            BivariatePolynomial::xy(bridges, loops)
        }
        Some(k) => {
            let (u, v) = edges[k];
            // Delete.
            let mut deleted = edges.to_vec();
            deleted.remove(k);
            let del = dc_recurse(vertex_count, &deleted);
            // Contract: merge v into u (vertex count shrinks by one
            // logically; we keep indices and re-point v's edges to u).
            let mut contracted = Vec::with_capacity(edges.len() - 1);
            for (i, &(a, b)) in edges.iter().enumerate() {
                if i == k {
                    continue;
                }
                let a2 = if a == v { u } else { a };
                let b2 = if b == v { u } else { b };
                contracted.push((a2, b2));
            }
            let con = dc_recurse(vertex_count, &contracted);
            del + con
        }
    }
}

fn is_bridge(vertex_count: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let (u, v) = edges[k];
    let mut dsu = Dsu::new(vertex_count);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i != k {
            dsu.union(a, b);
        }
    }
    dsu.find(u) != dsu.find(v)
}

/// Tutte polynomial of a matroid by the corank–nullity subset expansion
/// `Σ_S (x−1)^{r(E)−r(S)} (y−1)^{|S|−r(S)}`. Tallies exponent pairs over
/// all subsets (in parallel), then expands the binomials once.
pub fn tutte_matroid(m: &Matroid) -> Result<BivariatePolynomial> {
    let n = m.ground_size();
    if n > crate::matroids::MAX_GROUND_ENUM {
        return Err(Error::Resource(format!(
            "subset expansion capped at {} elements, got {n}",
            crate::matroids::MAX_GROUND_ENUM
        )));
    }
    let full_rank = m.full_rank();
    let total: u64 = 1u64 << n;
    let chunk: u64 = 1 << 16;
    let chunks = total.div_ceil(chunk);
    let dim = n + 1;
    let tables: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; dim * dim];
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            for mask in lo..hi {
                let r = m.rank(mask as u32);
                let corank = full_rank - r;
                let nullity = mask.count_ones() as usize - r;
                counts[corank * dim + nullity] += 1;
            }
            counts
        })
        .collect();
    let mut counts = vec![0u64; dim * dim];
    for t in tables {
        for (acc, v) in counts.iter_mut().zip(t) {
            *acc += v;
        }
    }
    let mut out = BivariatePolynomial::zero();
    for corank in 0..dim {
        for nullity in 0..dim {
            let c = counts[corank * dim + nullity];
            if c != 0 {
                let block = BivariatePolynomial::xm1_ym1(corank as u32, nullity as u32);
                out = &out + &block.scale(&BigInt::from(c).into());
            }
        }
    }
    Ok(out)
}

/// Tutte polynomial via spanning-tree activities: `Σ_T x^{ia(T)} y^{ea(T)}`
/// where a tree edge is internally active when its label beats every other
/// label in its fundamental cut, and a non-tree edge is externally active
/// when its label beats every label in its fundamental cycle. `labeling`
/// permutes the edge labels (`labeling[k]` is the label of edge `k+1`'s
/// slot); the result is independent of it.
pub fn tutte_by_activities(g: &MultiGraph, labeling: &[usize]) -> Result<BivariatePolynomial> {
    if g.edge_count() > MAX_EDGES_ACTIVITY {
        return Err(Error::Resource(format!(
            "activity enumeration capped at {MAX_EDGES_ACTIVITY} edges, got {}",
            g.edge_count()
        )));
    }
    if labeling.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "labeling length {} does not match edge count {}",
            labeling.len(),
            g.edge_count()
        )));
    }
    let mut seen = vec![false; labeling.len()];
    for &l in labeling {
        if l < 1 || l > labeling.len() || seen[l - 1] {
            return Err(Error::InvalidArgument(
                "labeling must be a permutation of 1..m".into(),
            ));
        }
        seen[l - 1] = true;
    }
    let trees = g.spanning_trees()?; // errors on disconnected input
    let n = g.vertex_count();
    let edges = g.edges();
    let mut out = BivariatePolynomial::zero();
    for tree in &trees {
        let in_tree: Vec<bool> = {
            let mut v = vec![false; edges.len()];
            for &label in tree {
                v[label - 1] = true;
            }
            v
        };
        let mut ia = 0u32;
        let mut ea = 0u32;
        for k in 0..edges.len() {
            if in_tree[k] {
                if internally_active(n, edges, &in_tree, k, labeling) {
                    ia += 1;
                }
            } else if externally_active(n, edges, &in_tree, k, labeling) {
                ea += 1;
            }
        }
        out.add_term(ia, ea, &BigInt::from(1).into());
    }
    Ok(out)
}

/// Tree edge `k` is internally active iff `label(k)` exceeds the label of
/// every other edge in the cut induced by removing `k` from the tree
/// (found by two-coloring the split tree).
fn internally_active(
    n: usize,
    edges: &[(usize, usize)],
    in_tree: &[bool],
    k: usize,
    labeling: &[usize],
) -> bool {
    let mut dsu = Dsu::new(n);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if in_tree[i] && i != k {
            dsu.union(a, b);
        }
    }
    let (u, _v) = edges[k];
    let side = dsu.find(u);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i == k {
            continue;
        }
        // Edge crosses the cut iff its endpoints straddle the two halves.
        if (dsu.find(a) == side) != (dsu.find(b) == side) && labeling[i] > labeling[k] {
            return false;
        }
    }
    true
}

/// Non-tree edge `k` is externally active iff `label(k)` exceeds the label
/// of every edge on the tree path between its endpoints. Loops have an
/// empty path and are always externally active.
fn externally_active(
    n: usize,
    edges: &[(usize, usize)],
    in_tree: &[bool],
    k: usize,
    labeling: &[usize],
) -> bool {
    let (u, v) = edges[k];
    if u == v {
        return true;
    }
    // Walk the unique tree path from u to v (BFS parent pointers).
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if in_tree[i] {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
    }
    let mut parent_edge = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([u]);
    let mut visited = vec![false; n];
    visited[u] = true;
    while let Some(w) = queue.pop_front() {
        for &(t, i) in &adj[w] {
            if !visited[t] {
                visited[t] = true;
                parent[t] = w;
                parent_edge[t] = i;
                queue.push_back(t);
            }
        }
    }
    let mut cur = v;
    while cur != u {
        let i = parent_edge[cur];
        if labeling[i] > labeling[k] {
            return false;
        }
        cur = parent[cur];
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BivariatePolynomial as P;
    use crate::rational::rat_i;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c4_poly() -> P {
        // x^3 + x^2 + x + y
        P::xy(3, 0) + P::xy(2, 0) + P::xy(1, 0) + P::xy(0, 1)
    }

    #[test]
    fn base_cases() {
        let loop_graph = MultiGraph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(tutte_deletion_contraction(&loop_graph).unwrap(), P::xy(0, 1));
        let bridge = MultiGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(tutte_deletion_contraction(&bridge).unwrap(), P::xy(1, 0));
        let empty = MultiGraph::new(3, &[]).unwrap();
        assert_eq!(tutte_deletion_contraction(&empty).unwrap(), P::one());
    }

    #[test]
    fn cycle_four() {
        let c4 = MultiGraph::cycle(4).unwrap();
        assert_eq!(tutte_deletion_contraction(&c4).unwrap(), c4_poly());
        let m = Matroid::cycle_matroid(&c4);
        assert_eq!(tutte_matroid(&m).unwrap(), c4_poly());
        let labeling: Vec<usize> = (1..=4).collect();
        assert_eq!(tutte_by_activities(&c4, &labeling).unwrap(), c4_poly());
    }

    #[test]
    fn uniform_32() {
        // U_{3,2}: x^2 + x + y
        let m = Matroid::uniform(3, 2).unwrap();
        let expect = P::xy(2, 0) + P::xy(1, 0) + P::xy(0, 1);
        assert_eq!(tutte_matroid(&m).unwrap(), expect);
    }

    #[test]
    fn duality_swaps_variables() {
        for m in [
            Matroid::uniform(5, 2).unwrap(),
            Matroid::cycle_matroid(&MultiGraph::cycle(5).unwrap()),
            Matroid::uniform(3, 2).unwrap().parallel_double().unwrap(),
        ] {
            let t = tutte_matroid(&m).unwrap();
            let td = tutte_matroid(&m.clone().dual()).unwrap();
            assert_eq!(td, t.swap_vars(), "duality failed for {}", m.descriptor());
        }
    }

    #[test]
    fn direct_sum_multiplies() {
        let a = Matroid::uniform(3, 2).unwrap();
        let b = Matroid::cycle_matroid(&MultiGraph::cycle(3).unwrap());
        let s = a.clone().direct_sum(b.clone()).unwrap();
        let prod = &tutte_matroid(&a).unwrap() * &tutte_matroid(&b).unwrap();
        assert_eq!(tutte_matroid(&s).unwrap(), prod);
        // coloop ⊕ loop has T = xy
        let cl = Matroid::uniform(1, 1)
            .unwrap()
            .direct_sum(Matroid::uniform(1, 0).unwrap())
            .unwrap();
        assert_eq!(tutte_matroid(&cl).unwrap(), P::xy(1, 1));
    }

    #[test]
    fn three_oracles_agree_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(20240808);
        for _ in 0..100 {
            let g = MultiGraph::random_connected(&mut rng, 8);
            let dc = tutte_deletion_contraction(&g).unwrap();
            let subset = tutte_matroid(&Matroid::cycle_matroid(&g)).unwrap();
            assert_eq!(dc, subset, "oracle mismatch on {g:?}");
            let mut labeling: Vec<usize> = (1..=g.edge_count()).collect();
            labeling.shuffle(&mut rng);
            let act = tutte_by_activities(&g, &labeling).unwrap();
            assert_eq!(dc, act, "activity mismatch on {g:?} with {labeling:?}");
            assert!(dc.has_nonnegative_integer_coeffs());
        }
    }

    #[test]
    fn labeling_invariance() {
        let g = MultiGraph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let reference = tutte_deletion_contraction(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut labeling: Vec<usize> = (1..=8).collect();
            labeling.shuffle(&mut rng);
            assert_eq!(tutte_by_activities(&g, &labeling).unwrap(), reference);
        }
        // Spanning-tree count = T(1,1).
        assert_eq!(
            rat_i(g.spanning_trees().unwrap().len() as i64),
            reference.eval(&rat_i(1), &rat_i(1))
        );
    }

    #[test]
    fn tree_gives_pure_x_power() {
        let p5 = MultiGraph::path(5).unwrap();
        let labeling: Vec<usize> = (1..=4).collect();
        assert_eq!(tutte_by_activities(&p5, &labeling).unwrap(), P::xy(4, 0));
    }

    #[test]
    fn caps_enforced() {
        let big = MultiGraph::new(2, &vec![(0, 1); 25]).unwrap();
        assert!(tutte_deletion_contraction(&big).is_err());
        let labeling: Vec<usize> = (1..=17).collect();
        let g17 = MultiGraph::new(2, &vec![(0, 1); 17]).unwrap();
        assert!(tutte_by_activities(&g17, &labeling).is_err());
    }
}
