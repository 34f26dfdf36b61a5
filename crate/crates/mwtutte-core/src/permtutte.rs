//! The permutation Tutte polynomial of a bipartite graph: exact
//! enumeration over vertex rankings, Monte Carlo estimation, FKG-type
//! lower bounds, the spanning-tree transfer identity, gluing
//! inequalities, and a product-conjecture scanner.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{random_bipartite, BipartiteGraph, MultiGraph};
use crate::matroids::Matroid;
use crate::mc::{self, counter_uniform, McEstimate};
use crate::poly::BivariatePolynomial;
use crate::rational::{rat, rat_i, render_exact, to_f64};
use crate::tutte::tutte_deletion_contraction;

/// Vertex cap for the `m!` exact enumeration.
pub const MAX_VERTICES_EXACT: usize = 11;
/// Edge cap for transfer-identity verification (one enumeration per tree).
pub const MAX_EDGES_TRANSFER: usize = 8;

/// Active-vertex counts of one ranking: `ia` A-vertices and `ea`
/// B-vertices whose rank exceeds every neighbor's rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActivityProfile {
    pub ia: usize,
    pub ea: usize,
}

/// Activity counts of an explicit ranking (`rank[v]` strictly ordered by
/// some total order; higher = later). A vertex with no neighbors is
/// always active — the maximum over an empty set is −∞.
pub fn activity_profile(h: &BipartiteGraph, rank: &[usize]) -> Result<ActivityProfile> {
    if rank.len() != h.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "ranking length {} does not match vertex count {}",
            rank.len(),
            h.vertex_count()
        )));
    }
    let mut ia = 0;
    let mut ea = 0;
    for v in 0..h.vertex_count() {
        if h.neighbors(v).iter().all(|&w| rank[v] > rank[w]) {
            if h.is_a(v) {
                ia += 1;
            } else {
                ea += 1;
            }
        }
    }
    Ok(ActivityProfile { ia, ea })
}

/// Exact permutation Tutte polynomial: `(1/m!)·Σ_π x^{ia(π)} y^{ea(π)}`
/// over all `m!` rankings of the vertex set. Rankings are enumerated in
/// increasing rank order, so a vertex is active exactly when all its
/// neighbors are already placed; counts accumulate per thread and merge
/// deterministically.
pub fn perm_tutte_exact(h: &BipartiteGraph) -> Result<BivariatePolynomial> {
    let m = h.vertex_count();
    if m > MAX_VERTICES_EXACT {
        return Err(Error::Resource(format!(
            "exact enumeration capped at {MAX_VERTICES_EXACT} vertices, got {m}"
        )));
    }
    if m == 0 {
        return Ok(BivariatePolynomial::one());
    }
    let nbr: Vec<u16> = (0..m)
        .map(|v| h.neighbors(v).iter().fold(0u16, |acc, &w| acc | 1 << w))
        .collect();
    let a_size = h.a_size();
    let stride = h.b_size() + 1;
    let full: u16 = if m == 16 { u16::MAX } else { (1 << m) - 1 };
    // Parallelize over the lowest-ranked vertex.
    let tables: Vec<Vec<u64>> = (0..m)
        .into_par_iter()
        .map(|v| {
            let mut counts = vec![0u64; (a_size + 1) * stride];
            let next = full & !(1u16 << v);
            let active = nbr[v] & next == 0;
            let (ia, ea) = profile_step(0, 0, active, v < a_size);
            place_remaining(&nbr, a_size, next, ia, ea, stride, &mut counts);
            counts
        })
        .collect();
    let mut counts = vec![0u64; (a_size + 1) * stride];
    for t in tables {
        for (acc, v) in counts.iter_mut().zip(t) {
            *acc += v;
        }
    }
    let factorial: u64 = (1..=m as u64).product();
    let mut out = BivariatePolynomial::zero();
    for ia in 0..=a_size {
        for ea in 0..stride {
            let c = counts[ia * stride + ea];
            if c != 0 {
                out.add_term(
                    ia as u32,
                    ea as u32,
                    &BigRational::new(BigInt::from(c), BigInt::from(factorial)),
                );
            }
        }
    }
    Ok(out)
}

fn profile_step(ia: usize, ea: usize, active: bool, in_a: bool) -> (usize, usize) {
    match (active, in_a) {
        (true, true) => (ia + 1, ea),
        (true, false) => (ia, ea + 1),
        (false, _) => (ia, ea),
    }
}

fn place_remaining(
    nbr: &[u16],
    a_size: usize,
    unplaced: u16,
    ia: usize,
    ea: usize,
    stride: usize,
    counts: &mut [u64],
) {
    if unplaced == 0 {
        counts[ia * stride + ea] += 1;
        return;
    }
    let mut rest = unplaced;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let next = unplaced & !(1u16 << v);
        // Placing in increasing rank order: v active iff no neighbor
        // remains unplaced (all neighbors rank below v).
        let active = nbr[v] & next == 0;
        let (nia, nea) = profile_step(ia, ea, active, v < a_size);
        place_remaining(nbr, a_size, next, nia, nea, stride, counts);
    }
}

/// Closed form for the star with `k` vertices and its leaves in part A:
/// `(x^{k−1} + x^{k−2} + ⋯ + x + y)/k`.
pub fn star_closed_form(k: usize) -> Result<BivariatePolynomial> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "star closed form needs at least 2 vertices".into(),
        ));
    }
    let kth = rat(1, k as i64);
    let mut out = BivariatePolynomial::zero();
    for e in 1..k {
        out.add_term(e as u32, 0, &kth);
    }
    out.add_term(0, 1, &kth);
    Ok(out)
}

/// Monte Carlo estimate of `T̃_H(x, y)`: each sample draws one uniform
/// per vertex (counter generator, ties broken by vertex index) and
/// averages `x^{ia}·y^{ea}` with `0⁰ = 1`. Deterministic for a fixed
/// `(seed, samples)` pair, independent of the worker pool.
pub fn perm_tutte_mc(
    h: &BipartiteGraph,
    x: &BigRational,
    y: &BigRational,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be ≥ 1".into()));
    }
    if x < &BigRational::zero() || y < &BigRational::zero() {
        return Err(Error::InvalidArgument(
            "Monte Carlo weights require x ≥ 0 and y ≥ 0".into(),
        ));
    }
    let xf = to_f64(x);
    let yf = to_f64(y);
    let m = h.vertex_count();
    Ok(mc::estimate(samples, seed, move |i| {
        let u: Vec<f64> = (0..m)
            .map(|v| counter_uniform(seed, 0, i, v as u64))
            .collect();
        let beats = |v: usize, w: usize| u[v] > u[w] || (u[v] == u[w] && v > w);
        let mut ia = 0i32;
        let mut ea = 0i32;
        for v in 0..m {
            if h.neighbors(v).iter().all(|&w| beats(v, w)) {
                if h.is_a(v) {
                    ia += 1;
                } else {
                    ea += 1;
                }
            }
        }
        xf.powi(ia) * yf.powi(ea)
    }))
}

/// Product-of-expectations lower bound
/// `Π_{i∈A}(1+(x−1)/(d_i+1)) · Π_{j∈B}(1+(y−1)/(d_j+1)) ≤ T̃_H(x,y)`,
/// valid when one variable is ≥ 1 and the other lies in `[0, 1]`.
pub fn fkg_lower_bound(
    h: &BipartiteGraph,
    x: &BigRational,
    y: &BigRational,
) -> Result<BigRational> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let region = (x >= &zero && x <= &one && y >= &one) || (y >= &zero && y <= &one && x >= &one);
    if !region {
        return Err(Error::Domain(format!(
            "correlation bound needs one variable in [0,1] and the other ≥ 1, got x={}, y={}",
            render_exact(x),
            render_exact(y)
        )));
    }
    let x_weights = vec![x.clone(); h.a_size()];
    let y_weights = vec![y.clone(); h.b_size()];
    weighted_product(h, &x_weights, &y_weights)
}

/// Per-vertex-weight generalization: `Π_{i∈A}(x⁽ⁱ⁾+d_i)/(d_i+1) ·
/// Π_{j∈B}(y⁽ʲ⁾+d_j)/(d_j+1)` with every `x⁽ⁱ⁾ ≥ 1` and every
/// `y⁽ʲ⁾ ∈ [0, 1]`.
pub fn fkg_weighted_bound(
    h: &BipartiteGraph,
    x_weights: &[BigRational],
    y_weights: &[BigRational],
) -> Result<BigRational> {
    if x_weights.len() != h.a_size() || y_weights.len() != h.b_size() {
        return Err(Error::InvalidArgument(format!(
            "expected {} A-weights and {} B-weights, got {} and {}",
            h.a_size(),
            h.b_size(),
            x_weights.len(),
            y_weights.len()
        )));
    }
    let one = BigRational::one();
    if let Some(w) = x_weights.iter().find(|w| *w < &one) {
        return Err(Error::Domain(format!(
            "A-side weight {} is below 1",
            render_exact(w)
        )));
    }
    if let Some(w) = y_weights
        .iter()
        .find(|w| *w < &BigRational::zero() || *w > &one)
    {
        return Err(Error::Domain(format!(
            "B-side weight {} is outside [0, 1]",
            render_exact(w)
        )));
    }
    weighted_product(h, x_weights, y_weights)
}

fn weighted_product(
    h: &BipartiteGraph,
    x_weights: &[BigRational],
    y_weights: &[BigRational],
) -> Result<BigRational> {
    let mut prod = BigRational::one();
    for v in 0..h.vertex_count() {
        let d = rat_i(h.degree(v) as i64);
        let w = if h.is_a(v) {
            &x_weights[v]
        } else {
            &y_weights[v - h.a_size()]
        };
        prod *= (w + &d) / (&d + rat_i(1));
    }
    Ok(prod)
}

/// Outcome of checking `T_G = Σ_T T̃_{H[T]}` over all spanning trees.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub matches: bool,
    /// `T_G − Σ_T T̃_{H[T]}`; the zero polynomial when the identity holds.
    pub residual: BivariatePolynomial,
    pub tree_count: usize,
}

/// Verifies the spanning-tree transfer identity for a connected
/// multigraph with at most 8 edges: the Tutte polynomial (by
/// deletion–contraction) must equal the sum of the permutation Tutte
/// polynomials of the local basis exchange graphs `H[T]`.
pub fn verify_transfer_identity(g: &MultiGraph) -> Result<TransferReport> {
    if g.edge_count() > MAX_EDGES_TRANSFER {
        return Err(Error::Resource(format!(
            "transfer verification capped at {MAX_EDGES_TRANSFER} edges, got {}",
            g.edge_count()
        )));
    }
    let tutte = tutte_deletion_contraction(g)?;
    let matroid = Matroid::cycle_matroid(g);
    let trees = g.spanning_trees()?;
    let parts: Vec<BivariatePolynomial> = trees
        .par_iter()
        .map(|tree| {
            let mask = tree.iter().fold(0u32, |acc, &label| acc | 1 << (label - 1));
            let exchange = matroid.local_basis_exchange(mask)?;
            perm_tutte_exact(&exchange)
        })
        .collect::<Result<_>>()?;
    let total = parts
        .into_iter()
        .fold(BivariatePolynomial::zero(), |acc, p| acc + p);
    let residual = &tutte - &total;
    Ok(TransferReport {
        matches: residual.is_zero(),
        residual,
        tree_count: trees.len(),
    })
}

/// Outcome of a root-gluing inequality check.
#[derive(Debug, Clone)]
pub struct GluingReport {
    pub root_in_a: bool,
    pub glued: BipartiteGraph,
    /// `x·T̃_H(x,y)` for an A-root, `T̃_H(x,y)` for a B-root.
    pub lhs: BigRational,
    /// `T̃_{H1}(x,y) · T̃_{H2}(x,y)`.
    pub rhs: BigRational,
    pub holds: bool,
}

/// Glues `h1` and `h2` by identifying `root1` with `root2` (same part on
/// both sides) and checks the supermultiplicativity inequality: for an
/// A-root, `x·T̃_H ≥ T̃_{H1}·T̃_{H2}`; for a B-root, `T̃_H ≥ T̃_{H1}·T̃_{H2}`.
/// Requires `x ≥ 1` and `0 ≤ y ≤ 1`.
pub fn check_gluing(
    h1: &BipartiteGraph,
    root1: usize,
    h2: &BipartiteGraph,
    root2: usize,
    x: &BigRational,
    y: &BigRational,
) -> Result<GluingReport> {
    if root1 >= h1.vertex_count() || root2 >= h2.vertex_count() {
        return Err(Error::InvalidArgument("root index out of range".into()));
    }
    if h1.is_a(root1) != h2.is_a(root2) {
        return Err(Error::InvalidArgument(
            "gluing roots must lie in the same part".into(),
        ));
    }
    if x < &BigRational::one() || y < &BigRational::zero() || y > &BigRational::one() {
        return Err(Error::Domain(format!(
            "gluing inequality needs x ≥ 1 and 0 ≤ y ≤ 1, got x={}, y={}",
            render_exact(x),
            render_exact(y)
        )));
    }
    let root_in_a = h1.is_a(root1);
    let glued = glue_at_roots(h1, root1, h2, root2)?;
    let t = perm_tutte_exact(&glued)?.eval(x, y);
    let t1 = perm_tutte_exact(h1)?.eval(x, y);
    let t2 = perm_tutte_exact(h2)?.eval(x, y);
    let lhs = if root_in_a { x * &t } else { t };
    let rhs = &t1 * &t2;
    Ok(GluingReport {
        root_in_a,
        glued,
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

fn glue_at_roots(
    h1: &BipartiteGraph,
    root1: usize,
    h2: &BipartiteGraph,
    root2: usize,
) -> Result<BipartiteGraph> {
    let (a1, b1) = (h1.a_size(), h1.b_size());
    let (a2, b2) = (h2.a_size(), h2.b_size());
    let root_in_a = h1.is_a(root1);
    let (a, b) = if root_in_a {
        (a1 + a2 - 1, b1 + b2)
    } else {
        (a1 + a2, b1 + b2 - 1)
    };
    // h1 keeps its A indices; its B block comes first in the new B range.
    let map1 = |v: usize| if v < a1 { v } else { a + (v - a1) };
    // h2's vertices append after h1's in each part, skipping the root,
    // which lands on root1's image.
    let map2 = |v: usize| {
        if v == root2 {
            return map1(root1);
        }
        if v < a2 {
            let skip = usize::from(root_in_a && v > root2);
            a1 + v - skip
        } else {
            let skip = usize::from(!root_in_a && v > root2);
            a + b1 + (v - a2) - skip
        }
    };
    let mut edges: Vec<(usize, usize)> = h1.edges().iter().map(|&(i, j)| (map1(i), map1(j))).collect();
    edges.extend(h2.edges().iter().map(|&(i, j)| (map2(i), map2(j))));
    BipartiteGraph::new(a, b, &edges)
}

/// A graph found violating `T̃(2,0)·T̃(0,2) ≥ 1` during a scan.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureViolation {
    pub graph: BipartiteGraph,
    /// Exact value of the product, rendered as a rational.
    pub product: String,
}

/// Samples `trials` random bipartite graphs with at most 10 vertices and
/// the given minimum degree, and tests `T̃(2,0)·T̃(0,2) ≥ 1` exactly.
/// Returns the violating graphs (expected empty for minimum degree 2).
pub fn conjecture_scan(
    min_degree: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<ConjectureViolation>> {
    if min_degree < 1 {
        return Err(Error::InvalidArgument("minimum degree must be ≥ 1".into()));
    }
    if 2 * min_degree > 10 {
        return Err(Error::InvalidArgument(format!(
            "minimum degree {min_degree} cannot be met within the 10-vertex scan cap"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::with_capacity(trials as usize);
    while graphs.len() < trials as usize {
        if let Some(g) = random_bipartite(&mut rng, 10, min_degree) {
            graphs.push(g);
        }
    }
    let two = rat_i(2);
    let zero = rat_i(0);
    let violations: Vec<ConjectureViolation> = graphs
        .par_iter()
        .map(|g| {
            let t = perm_tutte_exact(g)?;
            let product = t.eval(&two, &zero) * t.eval(&zero, &two);
            Ok((g, product))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, product)| product < &BigRational::one())
        .map(|(g, product)| ConjectureViolation {
            graph: g.clone(),
            product: render_exact(&product),
        })
        .collect();
    Ok(violations)
}

/// Conditional (Rao–Blackwellized) Monte Carlo estimate of
/// `T̃_{H_{n,n,n}}(x, y)`: only the `n` core B-side uniforms are sampled;
/// the expectation over the complete-side and leaf uniforms is taken in
/// closed form, conditioning on where the complete side's maximum falls
/// among the sorted B values. Unbiased, and far lower variance than the
/// naive sampler at points like `(x, 0)` where naive weights are almost
/// always zero.
pub fn hnnn_conditional_mc(
    n: usize,
    x: f64,
    y: f64,
    samples: u64,
    seed: u64,
    stream: u64,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be ≥ 1".into()));
    }
    if !(x >= 0.0) || !(y >= 0.0) {
        return Err(Error::InvalidArgument(
            "Monte Carlo weights require x ≥ 0 and y ≥ 0".into(),
        ));
    }
    let np = n as i32;
    Ok(mc::estimate(samples, seed, move |i| {
        let mut s: Vec<f64> = (0..n)
            .map(|j| counter_uniform(seed, stream, i, j as u64))
            .collect();
        s.sort_by(|a, b| a.partial_cmp(b).expect("uniforms are finite"));
        let s_max = s[n - 1];
        // Leaf factor when its B-neighbor cannot be active / can be active.
        let below: Vec<f64> = s.iter().map(|&v| v + (1.0 - v) * x).collect();
        let above: Vec<f64> = s.iter().map(|&v| v * y + (1.0 - v) * x).collect();
        // prefix[k] = Π_{j<k} below[j]; suffix[k] = Π_{j≥k} above[j].
        let mut prefix = vec![1.0; n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] * below[k];
        }
        let mut suffix = vec![1.0; n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] * above[k];
        }
        // Complete side's maximum above s_max: at least one of its
        // vertices is active, no core B-vertex is.
        let term1 = ((s_max + (1.0 - s_max) * x).powi(np) - s_max.powi(np)) * prefix[n];
        // Maximum inside (s_(k−1), s_(k)): no complete-side vertex is
        // active; B-vertices at or above the gap may be.
        let mut term2 = 0.0;
        let mut lo = 0.0;
        for k in 0..n {
            let hi = s[k].powi(np);
            term2 += (hi - lo) * prefix[k] * suffix[k];
            lo = hi;
        }
        term1 + term2
    }))
}
