//! Flags and flag graphs.
//!
//! A flag is a maximal chain, stored as one face index per proper rank. The
//! flag graph carries one fixed-point-free involution per rank; automorphisms
//! are exactly the flag permutations commuting with all of them.

use std::collections::BTreeMap;

use crate::error::PolytopeError;
use crate::limits::Limits;
use crate::poset::FacePoset;

pub const UNSET: u32 = u32::MAX;

/// A maximal chain, least and greatest faces suppressed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    pub chain: Vec<u32>,
}

/// Flags plus one adjacency involution per rank.
#[derive(Debug, Clone)]
pub struct FlagGraph {
    rank: usize,
    /// `adj[i][f]` is the i-adjacent flag of `f`.
    adj: Vec<Vec<u32>>,
    /// `chains[f][i]` is the rank-i face of flag `f`.
    chains: Vec<Vec<u32>>,
    /// Face counts per rank, consistent with `chains`.
    counts: Vec<usize>,
}

impl FlagGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.adj[0].len()
    }

    pub fn adjacent(&self, i: usize, flag: u32) -> u32 {
        self.adj[i][flag as usize]
    }

    pub fn adjacency(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn chain(&self, flag: u32) -> &[u32] {
        &self.chains[flag as usize]
    }

    pub fn face_of(&self, rank: usize, flag: u32) -> u32 {
        self.chains[flag as usize][rank]
    }

    pub fn face_count(&self, rank: usize) -> usize {
        self.counts[rank]
    }

    /// Flag index of a chain, if present.
    pub fn flag_index(&self, chain: &[u32]) -> Option<u32> {
        self.chains
            .binary_search_by(|c| c.as_slice().cmp(chain))
            .ok()
            .map(|i| i as u32)
    }

    /// Build the flag graph of a validated poset.
    pub fn of_poset(p: &FacePoset) -> Result<FlagGraph, PolytopeError> {
        Self::of_poset_with_limits(p, &Limits::default())
    }

    pub fn of_poset_with_limits(p: &FacePoset, limits: &Limits) -> Result<FlagGraph, PolytopeError> {
        let report = p.validate();
        if !report.pass() {
            let msg = report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(PolytopeError::NotAPolytope(msg));
        }
        Self::of_valid_poset(p, limits)
    }

    /// Same as `of_poset` for a poset already known to validate.
    pub fn of_valid_poset(p: &FacePoset, limits: &Limits) -> Result<FlagGraph, PolytopeError> {
        let chains = enumerate_flags_unchecked(p);
        if chains.len() > limits.max_flags {
            return Err(PolytopeError::FlagLimit(chains.len(), limits.max_flags));
        }
        let rank = p.rank();
        let nflags = chains.len();
        let mut adj: Vec<Vec<u32>> = vec![vec![UNSET; nflags]; rank];
        let mut order: Vec<u32> = (0..nflags as u32).collect();
        for i in 0..rank {
            // Flags that agree off rank i form diamond pairs.
            order.sort_unstable_by(|&a, &b| {
                cmp_skip(&chains[a as usize], &chains[b as usize], i)
            });
            let mut k = 0;
            while k < nflags {
                let mut end = k + 1;
                while end < nflags
                    && cmp_skip(&chains[order[k] as usize], &chains[order[end] as usize], i)
                        == std::cmp::Ordering::Equal
                {
                    end += 1;
                }
                if end - k != 2 {
                    return Err(PolytopeError::NotAPolytope(format!(
                        "flag adjacency at rank {i} is not a pairing ({} flags in a class)",
                        end - k
                    )));
                }
                adj[i][order[k] as usize] = order[k + 1];
                adj[i][order[k + 1] as usize] = order[k];
                k = end;
            }
        }
        let counts = (0..rank).map(|i| p.count(i)).collect();
        Ok(FlagGraph { rank, adj, chains, counts })
    }

    /// Build from raw adjacency involutions (e.g. synthesized from a group).
    /// Checks the flag-graph invariants and derives chains as connected
    /// components of the graph with one adjacency removed.
    pub fn from_adjacencies(rank: usize, adj: Vec<Vec<u32>>) -> Result<FlagGraph, PolytopeError> {
        if adj.len() != rank || rank == 0 {
            return Err(PolytopeError::BadFlagGraph("adjacency count must equal rank".into()));
        }
        let nflags = adj[0].len();
        for (i, a) in adj.iter().enumerate() {
            if a.len() != nflags {
                return Err(PolytopeError::BadFlagGraph("ragged adjacency arrays".into()));
            }
            for (f, &g) in a.iter().enumerate() {
                if g as usize >= nflags || g == f as u32 || a[g as usize] != f as u32 {
                    return Err(PolytopeError::BadFlagGraph(format!(
                        "adj[{i}] is not a fixed-point-free involution at flag {f}"
                    )));
                }
            }
        }
        for i in 0..rank {
            for j in i + 2..rank {
                for f in 0..nflags {
                    if adj[i][adj[j][f] as usize] != adj[j][adj[i][f] as usize] {
                        return Err(PolytopeError::BadFlagGraph(format!(
                            "adj[{i}] and adj[{j}] do not commute at flag {f}"
                        )));
                    }
                }
            }
        }
        if !connected(&adj, nflags) {
            return Err(PolytopeError::BadFlagGraph("flag graph is disconnected".into()));
        }
        // Face at rank i := component of the graph using all adjacencies but adj[i],
        // numbered by least flag.
        let mut chains: Vec<Vec<u32>> = vec![vec![UNSET; rank]; nflags];
        let mut counts = vec![0usize; rank];
        for i in 0..rank {
            let mut comp: Vec<u32> = vec![UNSET; nflags];
            let mut next = 0u32;
            let mut stack = Vec::new();
            for start in 0..nflags {
                if comp[start] != UNSET {
                    continue;
                }
                comp[start] = next;
                stack.push(start as u32);
                while let Some(f) = stack.pop() {
                    for (k, a) in adj.iter().enumerate() {
                        if k == i {
                            continue;
                        }
                        let g = a[f as usize];
                        if comp[g as usize] == UNSET {
                            comp[g as usize] = next;
                            stack.push(g);
                        }
                    }
                }
                next += 1;
            }
            counts[i] = next as usize;
            for f in 0..nflags {
                chains[f][i] = comp[f];
            }
        }
        Ok(FlagGraph { rank, adj, chains, counts })
    }

    /// Reconstruct the face poset. Fails if the flag system did not come
    /// from a polytope.
    pub fn to_poset(&self) -> Result<FacePoset, PolytopeError> {
        self.to_poset_with_limits(&Limits::default())
    }

    pub fn to_poset_with_limits(&self, limits: &Limits) -> Result<FacePoset, PolytopeError> {
        let rank = self.rank;
        let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(rank);
        covers.push(vec![Vec::new(); self.counts[0]]);
        for i in 1..rank {
            let mut sets: Vec<Vec<u32>> = vec![Vec::new(); self.counts[i]];
            for chain in &self.chains {
                sets[chain[i] as usize].push(chain[i - 1]);
            }
            for s in sets.iter_mut() {
                s.sort_unstable();
                s.dedup();
            }
            covers.push(sets);
        }
        let poset = FacePoset::build_with_limits(rank, covers, limits)
            .map_err(|e| PolytopeError::NotAPolytope(e.to_string()))?
            .validated()?;
        // A valid poset with a different number of maximal chains means the
        // flag system collapsed; reject it.
        let rebuilt = enumerate_flags_unchecked(&poset);
        if rebuilt.len() != self.flag_count() {
            return Err(PolytopeError::NotAPolytope(format!(
                "flag system has {} flags but its poset has {}",
                self.flag_count(),
                rebuilt.len()
            )));
        }
        Ok(poset)
    }

    /// Stable partition of flags under iterated neighborhood refinement.
    /// Labels are canonical: isomorphic graphs get identical colorings.
    pub fn refine_colors(&self) -> Vec<u32> {
        let nflags = self.flag_count();
        // Seed with the gon sizes of all rank-2 sections through the flag.
        let mut sigs: Vec<Vec<u32>> = vec![Vec::with_capacity(self.rank.saturating_sub(1)); nflags];
        for i in 1..self.rank {
            for f in 0..nflags as u32 {
                let mut x = f;
                let mut len = 0u32;
                loop {
                    x = self.adj[i - 1][x as usize];
                    x = self.adj[i][x as usize];
                    len += 1;
                    if x == f {
                        break;
                    }
                }
                sigs[f as usize].push(len);
            }
        }
        let mut colors = canonical_ids(&sigs);
        let mut ncolors = count_colors(&colors);
        loop {
            let next_sigs: Vec<Vec<u32>> = (0..nflags)
                .map(|f| {
                    let mut s = Vec::with_capacity(self.rank + 1);
                    s.push(colors[f]);
                    for a in &self.adj {
                        s.push(colors[a[f] as usize]);
                    }
                    s
                })
                .collect();
            let next = canonical_ids(&next_sigs);
            let n = count_colors(&next);
            if n == ncolors {
                return colors;
            }
            colors = next;
            ncolors = n;
        }
    }
}

fn cmp_skip(a: &[u32], b: &[u32], skip: usize) -> std::cmp::Ordering {
    for k in 0..a.len() {
        if k == skip {
            continue;
        }
        match a[k].cmp(&b[k]) {
            std::cmp::Ordering::Equal => {}
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn canonical_ids(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut map: BTreeMap<&[u32], u32> = BTreeMap::new();
    for s in sigs {
        let n = map.len() as u32;
        map.entry(s.as_slice()).or_insert(n);
    }
    // Re-id in sorted signature order so labels do not depend on flag order.
    let mut sorted: Vec<&[u32]> = map.keys().copied().collect();
    sorted.sort();
    let reid: BTreeMap<&[u32], u32> =
        sorted.into_iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    sigs.iter().map(|s| reid[s.as_slice()]).collect()
}

fn count_colors(colors: &[u32]) -> usize {
    colors.iter().copied().max().map(|m| m as usize + 1).unwrap_or(0)
}

fn connected(adj: &[Vec<u32>], nflags: usize) -> bool {
    if nflags == 0 {
        return false;
    }
    let mut seen = vec![false; nflags];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut visited = 1usize;
    while let Some(f) = stack.pop() {
        for a in adj {
            let g = a[f as usize];
            if !seen[g as usize] {
                seen[g as usize] = true;
                visited += 1;
                stack.push(g);
            }
        }
    }
    visited == nflags
}

/// All maximal chains of a structurally sound poset, in lexicographic order.
/// Does not assume the polytope axioms hold.
pub fn enumerate_flags_unchecked(p: &FacePoset) -> Vec<Vec<u32>> {
    let n = p.rank();
    // Extend downwards from facets; partial chains hold ranks i..n-1 reversed.
    let mut partial: Vec<Vec<u32>> = (0..p.count(n - 1) as u32).map(|f| vec![f]).collect();
    for i in (1..n).rev() {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for chain in partial {
            let top = *chain.last().unwrap();
            for &c in p.covers_of(i, top as usize) {
                let mut ext = chain.clone();
                ext.push(c);
                next.push(ext);
            }
        }
        partial = next;
    }
    for chain in partial.iter_mut() {
        chain.reverse();
    }
    partial.sort_unstable();
    partial
}

/// Connectivity of the flag graph given the raw chains, pairing flags that
/// agree off one rank. Tolerates classes of size other than two.
pub fn flags_connected_from_chains(p: &FacePoset, chains: &[Vec<u32>]) -> bool {
    let n = p.rank();
    let nflags = chains.len();
    if nflags == 0 {
        return false;
    }
    let mut dsu = Dsu::new(nflags);
    let mut order: Vec<u32> = (0..nflags as u32).collect();
    for i in 0..n {
        order.sort_unstable_by(|&a, &b| cmp_skip(&chains[a as usize], &chains[b as usize], i));
        for w in order.windows(2) {
            if cmp_skip(&chains[w[0] as usize], &chains[w[1] as usize], i) == std::cmp::Ordering::Equal {
                dsu.union(w[0] as usize, w[1] as usize);
            }
        }
    }
    let root = dsu.find(0);
    (0..nflags).all(|f| dsu.find(f) == root)
}

/// Map extension by adjacency propagation: the unique adjacency-commuting
/// map `src -> dst` with `src_base -> dst_base`, or `None`. Colors (when
/// given) must be compatible colorings of both graphs and are used for
/// early rejection.
pub fn extend_map(
    src: &FlagGraph,
    dst: &FlagGraph,
    src_base: u32,
    dst_base: u32,
    src_colors: Option<&[u32]>,
    dst_colors: Option<&[u32]>,
) -> Option<Vec<u32>> {
    debug_assert_eq!(src.flag_count(), dst.flag_count());
    debug_assert_eq!(src.rank(), dst.rank());
    let nflags = src.flag_count();
    let mut img = vec![UNSET; nflags];
    let color_ok = |s: u32, d: u32| match (src_colors, dst_colors) {
        (Some(sc), Some(dc)) => sc[s as usize] == dc[d as usize],
        _ => true,
    };
    if !color_ok(src_base, dst_base) {
        return None;
    }
    img[src_base as usize] = dst_base;
    let mut queue = vec![src_base];
    while let Some(x) = queue.pop() {
        let y = img[x as usize];
        for i in 0..src.rank() {
            let sx = src.adj[i][x as usize];
            let dy = dst.adj[i][y as usize];
            let cur = img[sx as usize];
            if cur == UNSET {
                if !color_ok(sx, dy) {
                    return None;
                }
                img[sx as usize] = dy;
                queue.push(sx);
            } else if cur != dy {
                return None;
            }
        }
    }
    Some(img)
}

/// Flag-graph isomorphism by base-flag extension: try every candidate image
/// of flag 0 of `a` in `b`.
pub fn isomorphic(a: &FlagGraph, b: &FlagGraph) -> bool {
    if a.flag_count() != b.flag_count() || a.rank() != b.rank() {
        return false;
    }
    let ca = a.refine_colors();
    let cb = b.refine_colors();
    let mut hist_a: BTreeMap<u32, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }
    (0..b.flag_count() as u32)
        .any(|cand| extend_map(a, b, 0, cand, Some(&ca), Some(&cb)).is_some())
}

/// Poset isomorphism via flag-graph isomorphism.
pub fn posets_isomorphic(p: &FacePoset, q: &FacePoset) -> Result<bool, PolytopeError> {
    if p.rank() != q.rank() || p.counts() != q.counts() {
        return Ok(false);
    }
    let fp = FlagGraph::of_poset(p)?;
    let fq = FlagGraph::of_poset(q)?;
    Ok(isomorphic(&fp, &fq))
}

/// Small union-find used for orbit and connectivity bookkeeping.
pub struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n as u32).collect() }
    }

    pub fn find(&mut self, x: usize) -> u32 {
        let mut root = x as u32;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x as u32;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, polygon, truncated_tetrahedron};

    #[test]
    fn pentagon_has_ten_flags() {
        let fg = FlagGraph::of_poset(&polygon(5).unwrap()).unwrap();
        assert_eq!(fg.flag_count(), 10);
    }

    #[test]
    fn cube_has_48_flags_and_round_trips() {
        let p = cube();
        let fg = FlagGraph::of_poset(&p).unwrap();
        assert_eq!(fg.flag_count(), 48);
        let q = fg.to_poset().unwrap();
        assert_eq!(q.counts(), p.counts());
        assert!(posets_isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn adjacencies_are_commuting_involutions() {
        let fg = FlagGraph::of_poset(&cube()).unwrap();
        for i in 0..3 {
            for f in 0..fg.flag_count() as u32 {
                let g = fg.adjacent(i, f);
                assert_ne!(g, f);
                assert_eq!(fg.adjacent(i, g), f);
            }
        }
        for f in 0..fg.flag_count() as u32 {
            assert_eq!(fg.adjacent(0, fg.adjacent(2, f)), fg.adjacent(2, fg.adjacent(0, f)));
        }
    }

    #[test]
    fn cube_and_octahedron_are_not_isomorphic() {
        let a = FlagGraph::of_poset(&cube()).unwrap();
        let b = FlagGraph::of_poset(&cube().dual()).unwrap();
        assert!(!isomorphic(&a, &b));
        assert!(isomorphic(&a, &a));
    }

    #[test]
    fn from_adjacencies_rejects_fixed_points() {
        let err = FlagGraph::from_adjacencies(1, vec![vec![0, 1]]);
        assert!(err.is_err());
    }

    #[test]
    fn refinement_separates_flag_classes_of_truncated_tetrahedron() {
        let fg = FlagGraph::of_poset(&truncated_tetrahedron()).unwrap();
        assert_eq!(fg.flag_count(), 72);
        let colors = fg.refine_colors();
        let ncolors = colors.iter().copied().max().unwrap() + 1;
        assert!(ncolors >= 3);
    }

    #[test]
    fn flag_limit_enforced() {
        let limits = crate::limits::Limits { max_flags: 10, ..Default::default() };
        let err = FlagGraph::of_poset_with_limits(&cube(), &limits);
        assert!(matches!(err, Err(crate::error::PolytopeError::FlagLimit(48, 10))));
    }
}
