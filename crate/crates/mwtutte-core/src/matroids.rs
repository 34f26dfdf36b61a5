//! Matroids as rank oracles over bitmask subsets, with the constructors
//! needed by the certification pipeline (uniform, graphic, dual, direct
//! sum, parallel doubling) and the local basis exchange graph that connects
//! matroids to permutation Tutte polynomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{BipartiteGraph, MultiGraph};

/// Enumeration cap for subsets/bases (2^24 rank calls at the limit).
pub const MAX_GROUND_ENUM: usize = 24;
/// Enumeration cap for circuits (the per-mask minimality check adds a
/// factor of the ground size).
pub const MAX_GROUND_CIRCUITS: usize = 20;

/// A matroid on ground set `{0, .., m−1}`, represented by its rank
/// function over bitmask subsets. Every constructor used by the theory has
/// a one-line rank formula, so the oracle form is both exact and cheap;
/// bases, circuits, and exchange graphs derive by enumeration.
#[derive(Clone, Debug)]
pub struct Matroid {
    kind: Kind,
    ground: usize,
    descriptor: String,
}

#[derive(Clone, Debug)]
enum Kind {
    Uniform { rank: usize },
    Graphic { graph: MultiGraph },
    Dual(Box<Matroid>),
    Sum(Box<Matroid>, Box<Matroid>),
    Doubled(Box<Matroid>),
}

impl Matroid {
    /// `U_{m,n}`: rank of a set is `min(|S|, n)`.
    pub fn uniform(m: usize, n: usize) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidArgument(format!(
                "uniform matroid rank {n} exceeds ground size {m}"
            )));
        }
        Ok(Matroid {
            kind: Kind::Uniform { rank: n },
            ground: m,
            descriptor: format!("uniform:{m},{n}"),
        })
    }

    /// The cycle matroid of a multigraph: elements are edges, rank of `S`
    /// is `v − k(V, S)`. Loops of the graph are matroid loops, bridges are
    /// coloops.
    pub fn cycle_matroid(g: &MultiGraph) -> Self {
        Matroid {
            ground: g.edge_count(),
            descriptor: format!("graphic:{}v{}e", g.vertex_count(), g.edge_count()),
            kind: Kind::Graphic { graph: g.clone() },
        }
    }

    /// Dual matroid: `r*(S) = |S| − r(E) + r(E∖S)`; bases are complements
    /// of bases.
    pub fn dual(self) -> Self {
        let ground = self.ground;
        let descriptor = format!("dual({})", self.descriptor);
        Matroid {
            kind: Kind::Dual(Box::new(self)),
            ground,
            descriptor,
        }
    }

    /// Direct sum: ranks add across the two blocks.
    pub fn direct_sum(self, other: Matroid) -> Result<Self> {
        let ground = self.ground + other.ground;
        if ground > 32 {
            return Err(Error::Resource(format!(
                "direct sum ground size {ground} exceeds bitmask width"
            )));
        }
        let descriptor = format!("sum({},{})", self.descriptor, other.descriptor);
        Ok(Matroid {
            kind: Kind::Sum(Box::new(self), Box::new(other)),
            ground,
            descriptor,
        })
    }

    /// `M^(2)`: every element replaced by two parallel copies. Copies of
    /// element `i` are `2i` and `2i+1`; the rank of a subset is the rank of
    /// its projection to the original ground set.
    pub fn parallel_double(self) -> Result<Self> {
        let ground = self.ground * 2;
        if ground > 32 {
            return Err(Error::Resource(format!(
                "doubled ground size {ground} exceeds bitmask width"
            )));
        }
        let descriptor = format!("double({})", self.descriptor);
        Ok(Matroid {
            kind: Kind::Doubled(Box::new(self)),
            ground,
            descriptor,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn full_mask(&self) -> u32 {
        if self.ground == 32 {
            u32::MAX
        } else {
            (1u32 << self.ground) - 1
        }
    }

    /// Rank of the subset encoded by `mask`.
    pub fn rank(&self, mask: u32) -> usize {
        match &self.kind {
            Kind::Uniform { rank } => (mask.count_ones() as usize).min(*rank),
            Kind::Graphic { graph } => {
                let n = graph.vertex_count();
                let mut dsu = crate::graphs::Dsu::new(n);
                let mut merges = 0;
                for (k, &(u, v)) in graph.edges().iter().enumerate() {
                    if mask & (1 << k) != 0 && dsu.union(u, v) {
                        merges += 1;
                    }
                }
                merges
            }
            Kind::Dual(inner) => {
                let full = inner.full_mask();
                let s = mask.count_ones() as usize;
                s + inner.rank(full & !mask) - inner.rank(full)
            }
            Kind::Sum(left, right) => {
                let lmask = mask & left.full_mask();
                let rmask = mask >> left.ground;
                left.rank(lmask) + right.rank(rmask)
            }
            Kind::Doubled(inner) => {
                let mut proj = 0u32;
                for i in 0..inner.ground {
                    if mask & (0b11 << (2 * i)) != 0 {
                        proj |= 1 << i;
                    }
                }
                inner.rank(proj)
            }
        }
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.full_mask())
    }

    pub fn is_independent(&self, mask: u32) -> bool {
        self.rank(mask) == mask.count_ones() as usize
    }

    pub fn is_basis(&self, mask: u32) -> bool {
        mask.count_ones() as usize == self.full_rank() && self.is_independent(mask)
    }

    pub fn has_loop(&self) -> bool {
        (0..self.ground).any(|e| self.rank(1 << e) == 0)
    }

    /// A coloop (element in every basis) is a loop of the dual.
    pub fn has_coloop(&self) -> bool {
        let full = self.full_mask();
        let r = self.full_rank();
        (0..self.ground).any(|e| self.rank(full & !(1 << e)) < r)
    }

    /// All bases, as bitmasks in increasing numeric order.
    pub fn bases(&self) -> Result<Vec<u32>> {
        if self.ground > MAX_GROUND_ENUM {
            return Err(Error::Resource(format!(
                "basis enumeration capped at {MAX_GROUND_ENUM} elements, got {}",
                self.ground
            )));
        }
        let r = self.full_rank();
        Ok(subsets_of_size(self.ground, r)
            .filter(|&mask| self.is_independent(mask))
            .collect())
    }

    /// All circuits (minimal dependent sets), as bitmasks.
    pub fn circuits(&self) -> Result<Vec<u32>> {
        if self.ground > MAX_GROUND_CIRCUITS {
            return Err(Error::Resource(format!(
                "circuit enumeration capped at {MAX_GROUND_CIRCUITS} elements, got {}",
                self.ground
            )));
        }
        let mut out = Vec::new();
        let full = self.full_mask();
        for mask in 1..=full {
            let size = mask.count_ones() as usize;
            if self.rank(mask) != size - 1 {
                continue; // independent, or more than one step from independent
            }
            // Minimal: every single-element deletion is independent.
            let mut minimal = true;
            let mut rest = mask;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                if !self.is_independent(mask & !e) {
                    minimal = false;
                    break;
                }
                rest &= !e;
            }
            if minimal {
                out.push(mask);
            }
        }
        Ok(out)
    }

    /// The unique circuit inside `basis ∪ {f}`: elements `e` of the union
    /// whose removal leaves an independent set. Its length is `d_f + 1`
    /// where `d_f` is `f`'s degree in the local basis exchange graph.
    pub fn fundamental_circuit(&self, basis: u32, f: usize) -> Result<u32> {
        if !self.is_basis(basis) {
            return Err(Error::Domain("fundamental circuit needs a basis".into()));
        }
        if basis & (1 << f) != 0 {
            return Err(Error::InvalidArgument(format!(
                "element {f} lies in the basis"
            )));
        }
        let union = basis | (1 << f);
        let mut circuit = 0u32;
        let mut rest = union;
        while rest != 0 {
            let e = rest & rest.wrapping_neg();
            if self.is_independent(union & !e) {
                circuit |= e;
            }
            rest &= !e;
        }
        Ok(circuit)
    }

    /// The local basis exchange graph `H[A]` for a basis `A`: a bipartite
    /// graph whose part A lists the basis elements (ascending) and part B
    /// the non-basis elements (ascending); `e ∈ A` is adjacent to
    /// `f ∉ A` iff `A − e + f` is again a basis.
    pub fn local_basis_exchange(&self, basis: u32) -> Result<BipartiteGraph> {
        if !self.is_basis(basis) {
            return Err(Error::Domain(
                "exchange graph is defined for a basis".into(),
            ));
        }
        let full = self.full_mask();
        let inside: Vec<usize> = bits(basis).collect();
        let outside: Vec<usize> = bits(full & !basis).collect();
        let mut edges = Vec::new();
        for (ai, &e) in inside.iter().enumerate() {
            for (bi, &f) in outside.iter().enumerate() {
                let candidate = (basis & !(1 << e)) | (1 << f);
                if self.is_independent(candidate) {
                    edges.push((ai, inside.len() + bi));
                }
            }
        }
        BipartiteGraph::new(inside.len(), outside.len(), &edges)
    }

    /// Parses a CLI matroid descriptor:
    /// `uniform:m,n`, `graphic:<path>`, `dual(<desc>)`, `double(<desc>)`,
    /// `sum(<desc>,<desc>)`. Graph paths are JSON multigraph files.
    pub fn parse_descriptor(desc: &str) -> Result<Matroid> {
        let d = desc.trim();
        if let Some(rest) = d.strip_prefix("uniform:") {
            let (m, n) = rest.split_once(',').ok_or_else(|| {
                Error::Parse(format!("uniform descriptor needs m,n — got {rest:?}"))
            })?;
            let m: usize = m.trim().parse().map_err(|_| {
                Error::Parse(format!("bad ground size in uniform descriptor: {m:?}"))
            })?;
            let n: usize = n.trim().parse().map_err(|_| {
                Error::Parse(format!("bad rank in uniform descriptor: {n:?}"))
            })?;
            return Matroid::uniform(m, n);
        }
        if let Some(path) = d.strip_prefix("graphic:") {
            let g = crate::io::read_multigraph(path.trim())?;
            return Ok(Matroid::cycle_matroid(&g));
        }
        if let Some(inner) = strip_call(d, "dual") {
            return Ok(Matroid::parse_descriptor(inner)?.dual());
        }
        if let Some(inner) = strip_call(d, "double") {
            return Matroid::parse_descriptor(inner)?.parallel_double();
        }
        if let Some(inner) = strip_call(d, "sum") {
            // `uniform:m,n` embeds a comma, so try every top-level split
            // until both halves parse.
            for (left, right) in top_level_splits(inner) {
                if let (Ok(l), Ok(r)) = (
                    Matroid::parse_descriptor(left),
                    Matroid::parse_descriptor(right),
                ) {
                    return l.direct_sum(r);
                }
            }
            return Err(Error::Parse(format!(
                "sum descriptor needs two parseable arguments: {inner:?}"
            )));
        }
        Err(Error::Parse(format!(
            "unrecognized matroid descriptor {d:?} (expected uniform:m,n, graphic:<path>, dual(...), double(...), sum(...,...))"
        )))
    }
}

fn strip_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)
        .and_then(|r| r.trim_start().strip_prefix('('))
        .and_then(|r| r.trim_end().strip_suffix(')'))
}

/// All ways to split `s` at a top-level comma (commas inside parens are
/// never split points).
fn top_level_splits(s: &str) -> Vec<(&str, &str)> {
    let mut depth = 0usize;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => out.push((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    out
}

/// Iterates the set bits of a mask in ascending order.
pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

/// All subsets of `{0..m}` with exactly `k` elements, ascending
/// (Gosper's hack).
pub fn subsets_of_size(m: usize, k: usize) -> impl Iterator<Item = u32> {
    let full: u64 = if m == 32 { 1 << 32 } else { 1u64 << m };
    let start: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = start;
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done || cur >= full {
            return None;
        }
        let out = cur as u32;
        if k == 0 {
            done = true;
            return Some(out);
        }
        // Gosper: next larger integer with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(out)
    })
}

/// Report produced by the circuit-length hypothesis check: lists circuit
/// lengths of the matroid and its dual, the admissible interval, and any
/// violations.
#[derive(Debug, Clone, Serialize)]
pub struct CircuitLengthReport {
    pub descriptor: String,
    pub interval: (u64, u64),
    pub circuit_lengths: Vec<usize>,
    pub dual_circuit_lengths: Vec<usize>,
    pub violations: Vec<String>,
    pub hypothesis_ok: bool,
}

/// Bipartite graph isomorphism by degree-partition backtracking, with an
/// optional part swap. Only used at desk scale (≤ 18 vertices or so).
pub fn bipartite_isomorphic(g: &BipartiteGraph, h: &BipartiteGraph, allow_swap: bool) -> bool {
    if iso_same_parts(g, h) {
        return true;
    }
    allow_swap && iso_same_parts(&g.swap_parts(), h)
}

fn iso_same_parts(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    if g.a_size() != h.a_size() || g.b_size() != h.b_size() || g.edge_count() != h.edge_count() {
        return false;
    }
    let degs = |x: &BipartiteGraph, from: usize, to: usize| {
        let mut d: Vec<usize> = (from..to).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degs(g, 0, g.a_size()) != degs(h, 0, h.a_size()) {
        return false;
    }
    if degs(g, g.a_size(), g.vertex_count()) != degs(h, h.a_size(), h.vertex_count()) {
        return false;
    }
    // Map g's vertices to h's, A to A and B to B, matching degrees.
    let n = g.vertex_count();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack_iso(g, h, 0, &mut mapping, &mut used)
}

fn backtrack_iso(
    g: &BipartiteGraph,
    h: &BipartiteGraph,
    v: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = g.vertex_count();
    if v == n {
        return true;
    }
    let candidates: Vec<usize> = if g.is_a(v) {
        (0..h.a_size()).collect()
    } else {
        (h.a_size()..h.vertex_count()).collect()
    };
    for w in candidates {
        if used[w] || g.degree(v) != h.degree(w) {
            continue;
        }
        // Adjacency with already-mapped vertices must match exactly.
        let ok = (0..v).all(|u| {
            let adj_g = g.neighbors(v).binary_search(&u).is_ok();
            let adj_h = h.neighbors(w).binary_search(&mapping[u]).is_ok();
            adj_g == adj_h
        });
        if !ok {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if backtrack_iso(g, h, v + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::h_abc;

    fn all_masks(m: &Matroid) -> impl Iterator<Item = u32> {
        0..=m.full_mask()
    }

    #[test]
    fn uniform_basics() {
        let u32_ = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u32_.bases().unwrap().len(), 3);
        let circuits = u32_.circuits().unwrap();
        assert_eq!(circuits, vec![0b111]);
        let u64_ = Matroid::uniform(6, 4).unwrap();
        assert_eq!(u64_.bases().unwrap().len(), 15);
        // circuits of U_{m,n} are all (n+1)-subsets
        let c = Matroid::uniform(5, 3).unwrap().circuits().unwrap();
        assert_eq!(c.len(), 5); // C(5,4)
        assert!(c.iter().all(|m| m.count_ones() == 4));
        assert!(Matroid::uniform(2, 3).is_err());
    }

    #[test]
    fn rank_axioms_small() {
        // Exhaustive axioms on a few mixed constructions with m <= 12.
        let c4 = MultiGraph::cycle(4).unwrap();
        let candidates = vec![
            Matroid::uniform(5, 2).unwrap(),
            Matroid::cycle_matroid(&c4),
            Matroid::uniform(4, 2).unwrap().dual(),
            Matroid::uniform(3, 2).unwrap().parallel_double().unwrap(),
            Matroid::uniform(3, 1)
                .unwrap()
                .direct_sum(Matroid::cycle_matroid(&c4))
                .unwrap(),
        ];
        for m in &candidates {
            assert_eq!(m.rank(0), 0, "{}", m.descriptor());
            let masks: Vec<u32> = all_masks(m).collect();
            for &s in &masks {
                let rs = m.rank(s);
                assert!(rs <= s.count_ones() as usize);
                for e in 0..m.ground_size() {
                    if s & (1 << e) == 0 {
                        let step = m.rank(s | (1 << e));
                        assert!(step == rs || step == rs + 1, "unit increase violated");
                    }
                }
            }
            // Submodularity on all pairs (ground <= 8 keeps this fast).
            if m.ground_size() <= 8 {
                for &s in &masks {
                    for &t in &masks {
                        assert!(
                            m.rank(s | t) + m.rank(s & t) <= m.rank(s) + m.rank(t),
                            "submodularity violated for {}",
                            m.descriptor()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn graphic_matroid_of_c4() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let m = Matroid::cycle_matroid(&c4);
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.bases().unwrap().len(), 4);
        let circuits = m.circuits().unwrap();
        assert_eq!(circuits, vec![0b1111]);
        // Bridge: the path has every edge as a coloop.
        let p3 = MultiGraph::path(3).unwrap();
        let mp = Matroid::cycle_matroid(&p3);
        assert!(mp.has_coloop());
        assert_eq!(mp.bases().unwrap(), vec![0b11]);
        // Loop: a single self-edge is a matroid loop.
        let looped = MultiGraph::new(1, &[(0, 0)]).unwrap();
        assert!(Matroid::cycle_matroid(&looped).has_loop());
    }

    #[test]
    fn dual_is_complement_and_involution() {
        let m = Matroid::uniform(5, 2).unwrap();
        let d = m.clone().dual();
        // dual(U_{5,2}) = U_{5,3}
        let u53 = Matroid::uniform(5, 3).unwrap();
        for mask in 0..=m.full_mask() {
            assert_eq!(d.rank(mask), u53.rank(mask));
        }
        let full = m.full_mask();
        let mb: std::collections::HashSet<u32> = m.bases().unwrap().into_iter().collect();
        let db: std::collections::HashSet<u32> =
            d.bases().unwrap().into_iter().map(|b| full & !b).collect();
        assert_eq!(mb, db);
        let dd = d.dual();
        for mask in 0..=m.full_mask() {
            assert_eq!(dd.rank(mask), m.rank(mask));
        }
    }

    #[test]
    fn doubling_counts_and_pairs() {
        let m = Matroid::uniform(3, 2).unwrap().parallel_double().unwrap();
        assert_eq!(m.ground_size(), 6);
        assert_eq!(m.full_rank(), 2);
        let bases = m.bases().unwrap();
        assert_eq!(bases.len(), 12); // choose 2 classes of 3, then a copy each
        for b in &bases {
            for i in 0..3 {
                assert_ne!(b & (0b11 << (2 * i)), 0b11 << (2 * i), "parallel pair in basis");
            }
        }
        // Every parallel pair is a 2-circuit.
        let circuits = m.circuits().unwrap();
        for i in 0..3 {
            assert!(circuits.contains(&(0b11 << (2 * i))));
        }
    }

    #[test]
    fn direct_sum_rank_adds() {
        let a = Matroid::uniform(2, 1).unwrap();
        let b = Matroid::uniform(3, 2).unwrap();
        let s = a.clone().direct_sum(b.clone()).unwrap();
        assert_eq!(s.ground_size(), 5);
        assert_eq!(s.full_rank(), 3);
        assert_eq!(s.rank(0b00101), a.rank(0b01) + b.rank(0b001));
    }

    #[test]
    fn fundamental_circuit_matches_exchange_degree() {
        // d_f + 1 = |fundamental circuit| across all bases, mixed matroids.
        let g = MultiGraph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let tested = vec![
            Matroid::uniform(6, 3).unwrap(),
            Matroid::cycle_matroid(&g),
            Matroid::uniform(4, 2).unwrap().parallel_double().unwrap(),
        ];
        for m in &tested {
            for basis in m.bases().unwrap() {
                let h = m.local_basis_exchange(basis).unwrap();
                let outside: Vec<usize> = bits(m.full_mask() & !basis).collect();
                for (bi, &f) in outside.iter().enumerate() {
                    let circuit = m.fundamental_circuit(basis, f).unwrap();
                    let deg = h.degree(h.a_size() + bi);
                    assert_eq!(
                        circuit.count_ones() as usize,
                        deg + 1,
                        "degree identity failed for {}",
                        m.descriptor()
                    );
                }
            }
        }
    }

    #[test]
    fn exchange_graph_of_cycle_is_star() {
        // C_n cycle matroid: every tree edge exchanges with the unique
        // non-tree edge, so H[T] is the star S_n with leaves on the tree side.
        let c5 = MultiGraph::cycle(5).unwrap();
        let m = Matroid::cycle_matroid(&c5);
        for basis in m.bases().unwrap() {
            let h = m.local_basis_exchange(basis).unwrap();
            assert!(bipartite_isomorphic(
                &h,
                &crate::graphs::star(5, true).unwrap(),
                false
            ));
        }
    }

    #[test]
    fn figure_one_exchange_graph() {
        let g = MultiGraph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let m = Matroid::cycle_matroid(&g);
        // Tree {1,2,3,5,7} -> elements {0,1,2,4,6} -> mask 0b1010111.
        let basis = 0b0101_0111u32;
        assert!(m.is_basis(basis));
        let h = m.local_basis_exchange(basis).unwrap();
        // Pictured exchange graph: tree side 1,2,3,5,7; cotree side 4,6,8;
        // adjacency 4~{1,3,5}, 6~{2,3,7}, 8~{5,7}.
        let expect = BipartiteGraph::new(
            5,
            3,
            &[(0, 5), (2, 5), (3, 5), (1, 6), (2, 6), (4, 6), (3, 7), (4, 7)],
        )
        .unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn doubled_uniform_exchange_is_h_nnn() {
        // U^(2)_{3,2}: every basis's exchange graph is h_abc(2,2,2) with
        // the parts exchanged (basis side = the degree-3 side).
        let m = Matroid::uniform(3, 2).unwrap().parallel_double().unwrap();
        let target = h_abc(2, 2, 2).unwrap();
        for basis in m.bases().unwrap() {
            let h = m.local_basis_exchange(basis).unwrap();
            assert!(bipartite_isomorphic(&h, &target, true));
            assert!(!bipartite_isomorphic(&h, &target, false));
        }
    }

    #[test]
    fn loop_coloop_isolated_vertex_property() {
        // H[A] has an isolated vertex iff the matroid has a loop or coloop.
        let plain = Matroid::uniform(4, 2).unwrap();
        for basis in plain.bases().unwrap() {
            assert!(!plain
                .local_basis_exchange(basis)
                .unwrap()
                .has_isolated_vertex());
        }
        // A coloop: direct sum with U_{1,1}.
        let with_coloop = Matroid::uniform(3, 2)
            .unwrap()
            .direct_sum(Matroid::uniform(1, 1).unwrap())
            .unwrap();
        assert!(with_coloop.has_coloop());
        for basis in with_coloop.bases().unwrap() {
            assert!(with_coloop
                .local_basis_exchange(basis)
                .unwrap()
                .has_isolated_vertex());
        }
        // A loop: direct sum with U_{1,0}.
        let with_loop = Matroid::uniform(3, 2)
            .unwrap()
            .direct_sum(Matroid::uniform(1, 0).unwrap())
            .unwrap();
        assert!(with_loop.has_loop());
        for basis in with_loop.bases().unwrap() {
            assert!(with_loop
                .local_basis_exchange(basis)
                .unwrap()
                .has_isolated_vertex());
        }
    }

    #[test]
    fn descriptor_parsing() {
        let m = Matroid::parse_descriptor("uniform:6,4").unwrap();
        assert_eq!(m.ground_size(), 6);
        assert_eq!(m.full_rank(), 4);
        let d = Matroid::parse_descriptor("dual(uniform:6,4)").unwrap();
        assert_eq!(d.full_rank(), 2);
        let dbl = Matroid::parse_descriptor("double(uniform:3,2)").unwrap();
        assert_eq!(dbl.ground_size(), 6);
        let s = Matroid::parse_descriptor("sum(uniform:2,1,dual(uniform:2,1))").unwrap();
        assert_eq!(s.ground_size(), 4);
        assert!(Matroid::parse_descriptor("nonsense").is_err());
        assert!(Matroid::parse_descriptor("uniform:a,b").is_err());
    }

    #[test]
    fn subset_iteration() {
        let subs: Vec<u32> = subsets_of_size(4, 2).collect();
        assert_eq!(subs.len(), 6);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }
}
