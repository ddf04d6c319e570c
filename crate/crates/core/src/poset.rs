//! Ranked face posets of finite abstract polytopes.
//!
//! A poset of rank `n` stores faces of ranks `0..n-1` only; the least face
//! and the greatest face are implicit, matching the usual convention of
//! suppressing them in flags.

use std::collections::{BTreeMap, HashMap};

use crate::error::PolytopeError;
use crate::limits::Limits;

/// Reference to a face, including the two implicit improper faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceRef {
    Least,
    Face { rank: usize, index: usize },
    Greatest,
}

impl FaceRef {
    /// Rank as a signed value, with the least face at -1 and the greatest at `n`.
    pub fn signed_rank(&self, n: usize) -> isize {
        match self {
            FaceRef::Least => -1,
            FaceRef::Face { rank, .. } => *rank as isize,
            FaceRef::Greatest => n as isize,
        }
    }
}

/// Ranked face poset. `covers[i][f]` lists the rank-`(i-1)` faces covered by
/// face `f` of rank `i`; `covers[0]` entries are empty (rank-0 faces cover
/// the implicit least face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePoset {
    rank: usize,
    covers: Vec<Vec<Vec<u32>>>,
    /// Upward incidence: `above[i][f]` lists the rank-`(i+1)` faces covering `f`.
    above: Vec<Vec<Vec<u32>>>,
}

/// One section specification: the open interval between two incident faces,
/// repackaged as a polytope of rank `j - i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionSpec {
    pub lower: FaceRef,
    pub upper: FaceRef,
}

/// A section poset plus the mapping back to the faces of the parent.
#[derive(Debug, Clone)]
pub struct Section {
    pub poset: FacePoset,
    /// `face_map[k][f]` is the parent index (at parent rank `lower_rank + 1 + k`)
    /// of section face `f` at section rank `k`.
    pub face_map: Vec<Vec<u32>>,
    pub spec: SectionSpec,
}

/// Names one violated polytope axiom together with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// A face that nothing covers (chains through it stop early).
    NotGraded { face: FaceRef },
    /// A face of rank >= 1 covering fewer than two faces.
    TooFewCovers { face: FaceRef, count: usize },
    /// A rank-gap-2 pair with other than two intermediate faces.
    Diamond { lower: FaceRef, upper: FaceRef, count: usize },
    /// A section whose flag graph is disconnected.
    Disconnected { lower: FaceRef, upper: FaceRef },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::NotGraded { face } => write!(f, "not graded at {face:?}"),
            AxiomViolation::TooFewCovers { face, count } => {
                write!(f, "face {face:?} covers only {count} faces")
            }
            AxiomViolation::Diamond { lower, upper, count } => {
                write!(f, "diamond fails between {lower:?} and {upper:?} ({count} intermediates)")
            }
            AxiomViolation::Disconnected { lower, upper } => {
                write!(f, "section {lower:?}..{upper:?} has a disconnected flag graph")
            }
        }
    }
}

/// Outcome of `validate`: pass/fail plus the first witness of each violated axiom.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FacePoset {
    /// Build a poset from per-rank cover lists. Checks only local structure;
    /// the polytope axioms are the business of [`FacePoset::validate`].
    pub fn build(rank: usize, covers: Vec<Vec<Vec<u32>>>) -> Result<FacePoset, PolytopeError> {
        Self::build_with_limits(rank, covers, &Limits::default())
    }

    pub fn build_with_limits(
        rank: usize,
        mut covers: Vec<Vec<Vec<u32>>>,
        limits: &Limits,
    ) -> Result<FacePoset, PolytopeError> {
        if rank < 1 {
            return Err(PolytopeError::BadRank(rank));
        }
        if rank > limits.max_rank {
            return Err(PolytopeError::RankLimit(rank, limits.max_rank));
        }
        if covers.len() != rank {
            return Err(PolytopeError::BadRank(covers.len()));
        }
        for (i, faces) in covers.iter().enumerate() {
            if faces.is_empty() {
                return Err(PolytopeError::EmptyRank { rank: i });
            }
        }
        for i in 1..rank {
            let below = covers[i - 1].len();
            for (f, list) in covers[i].iter_mut().enumerate() {
                list.sort_unstable();
                list.dedup();
                for &c in list.iter() {
                    if c as usize >= below {
                        return Err(PolytopeError::CoverOutOfRange {
                            rank: i,
                            face: f,
                            index: c as usize,
                        });
                    }
                }
                if list.len() < 2 {
                    return Err(PolytopeError::TooFewCovers { rank: i, face: f, count: list.len() });
                }
            }
        }
        let above = compute_above(rank, &covers);
        Ok(FacePoset { rank, covers, above })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of faces at a proper rank.
    pub fn count(&self, rank: usize) -> usize {
        self.covers[rank].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..self.rank).map(|i| self.count(i)).collect()
    }

    pub fn covers_of(&self, rank: usize, face: usize) -> &[u32] {
        &self.covers[rank][face]
    }

    pub fn covered_by(&self, rank: usize, face: usize) -> &[u32] {
        &self.above[rank][face]
    }

    /// Check the four polytope axioms, reporting the first witness of each.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        self.check_graded(&mut violations);
        self.check_covers(&mut violations);
        self.check_diamond(&mut violations);
        // Connectivity checks need well-defined flag adjacency, which needs diamond.
        if violations.is_empty() {
            self.check_connectivity(&mut violations);
        }
        ValidationReport { violations }
    }

    /// `validate`, turned into a hard error.
    pub fn validated(self) -> Result<FacePoset, PolytopeError> {
        let report = self.validate();
        if report.pass() {
            Ok(self)
        } else {
            let msg = report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            Err(PolytopeError::NotAPolytope(msg))
        }
    }

    fn check_graded(&self, out: &mut Vec<AxiomViolation>) {
        for i in 0..self.rank.saturating_sub(1) {
            for f in 0..self.count(i) {
                if self.above[i][f].is_empty() {
                    out.push(AxiomViolation::NotGraded { face: FaceRef::Face { rank: i, index: f } });
                    return;
                }
            }
        }
    }

    fn check_covers(&self, out: &mut Vec<AxiomViolation>) {
        for i in 1..self.rank {
            for f in 0..self.count(i) {
                if self.covers[i][f].len() < 2 {
                    out.push(AxiomViolation::TooFewCovers {
                        face: FaceRef::Face { rank: i, index: f },
                        count: self.covers[i][f].len(),
                    });
                    return;
                }
            }
        }
    }

    fn check_diamond(&self, out: &mut Vec<AxiomViolation>) {
        // Least face to rank-1 faces: exactly two covered vertices.
        for (e, list) in self.covers.get(1).map(|v| v.as_slice()).unwrap_or(&[]).iter().enumerate() {
            if list.len() != 2 {
                out.push(AxiomViolation::Diamond {
                    lower: FaceRef::Least,
                    upper: FaceRef::Face { rank: 1, index: e },
                    count: list.len(),
                });
                return;
            }
        }
        // Proper pairs with rank gap 2.
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for j in 2..self.rank {
            for g in 0..self.count(j) {
                seen.clear();
                for &h in &self.covers[j][g] {
                    for &f in &self.covers[j - 1][h as usize] {
                        *seen.entry(f).or_insert(0) += 1;
                    }
                }
                for (&f, &cnt) in seen.iter() {
                    if cnt != 2 {
                        out.push(AxiomViolation::Diamond {
                            lower: FaceRef::Face { rank: j - 2, index: f as usize },
                            upper: FaceRef::Face { rank: j, index: g },
                            count: cnt,
                        });
                        return;
                    }
                }
            }
        }
        // Rank n-2 faces to the greatest face: exactly two facets above.
        if self.rank >= 2 {
            let i = self.rank - 2;
            for f in 0..self.count(i) {
                if self.above[i][f].len() != 2 {
                    out.push(AxiomViolation::Diamond {
                        lower: FaceRef::Face { rank: i, index: f },
                        upper: FaceRef::Greatest,
                        count: self.above[i][f].len(),
                    });
                    return;
                }
            }
        } else {
            // Rank 1: the polygon axiom degenerates to "exactly two vertices".
            if self.count(0) != 2 {
                out.push(AxiomViolation::Diamond {
                    lower: FaceRef::Least,
                    upper: FaceRef::Greatest,
                    count: self.count(0),
                });
            }
        }
    }

    fn check_connectivity(&self, out: &mut Vec<AxiomViolation>) {
        // Strong flag-connectivity, checked operationally: the flag graph of
        // every section with rank >= 2 (including the whole polytope) is connected.
        if !flags_connected(self) {
            out.push(AxiomViolation::Disconnected { lower: FaceRef::Least, upper: FaceRef::Greatest });
            return;
        }
        for (lower, upper) in self.proper_section_specs() {
            let sec = match self.section(SectionSpec { lower, upper }) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if sec.poset.rank >= 2 && !flags_connected(&sec.poset) {
                out.push(AxiomViolation::Disconnected { lower, upper });
                return;
            }
        }
    }

    /// All incident bound pairs with rank gap >= 3, excluding the full polytope.
    fn proper_section_specs(&self) -> Vec<(FaceRef, FaceRef)> {
        let n = self.rank;
        let mut specs = Vec::new();
        for j in 2..n {
            for g in 0..self.count(j) {
                specs.push((FaceRef::Least, FaceRef::Face { rank: j, index: g }));
            }
        }
        for i in 0..n.saturating_sub(2) {
            for f in 0..self.count(i) {
                specs.push((FaceRef::Face { rank: i, index: f }, FaceRef::Greatest));
            }
        }
        // Proper-face pairs (F, G) with rank(G) - rank(F) >= 3.
        for j in 3..n {
            for g in 0..self.count(j) {
                for i in 0..=(j - 3) {
                    for f in self.faces_below(j, g, i) {
                        specs.push((
                            FaceRef::Face { rank: i, index: f as usize },
                            FaceRef::Face { rank: j, index: g },
                        ));
                    }
                }
            }
        }
        specs
    }

    /// Faces of rank `i` below face `g` of rank `j` (i < j), ascending.
    pub fn faces_below(&self, j: usize, g: usize, i: usize) -> Vec<u32> {
        let mut frontier: Vec<u32> = vec![g as u32];
        let mut level = j;
        while level > i {
            let mut next: Vec<u32> = frontier
                .iter()
                .flat_map(|&f| self.covers[level][f as usize].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
            level -= 1;
        }
        frontier
    }

    /// Faces of rank `j` above face `f` of rank `i` (i < j), ascending.
    pub fn faces_above(&self, i: usize, f: usize, j: usize) -> Vec<u32> {
        let mut frontier: Vec<u32> = vec![f as u32];
        let mut level = i;
        while level < j {
            let mut next: Vec<u32> = frontier
                .iter()
                .flat_map(|&h| self.above[level][h as usize].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
            level += 1;
        }
        frontier
    }

    /// The section `upper/lower` as a polytope of rank `j - i - 1`.
    pub fn section(&self, spec: SectionSpec) -> Result<Section, PolytopeError> {
        let n = self.rank;
        let lo = spec.lower.signed_rank(n);
        let hi = spec.upper.signed_rank(n);
        if hi - lo < 2 {
            return Err(PolytopeError::DegenerateSection);
        }
        // Collect faces strictly between the bounds, one level at a time.
        let mut face_map: Vec<Vec<u32>> = Vec::new();
        for level in (lo + 1)..hi {
            let level = level as usize;
            let mut faces: Vec<u32> = match (spec.lower, spec.upper) {
                (FaceRef::Least, FaceRef::Greatest) => (0..self.count(level) as u32).collect(),
                (FaceRef::Least, FaceRef::Face { rank, index }) => self.faces_below(rank, index, level),
                (FaceRef::Face { rank, index }, FaceRef::Greatest) => self.faces_above(rank, index, level),
                (FaceRef::Face { rank: ri, index: fi }, FaceRef::Face { rank: rj, index: fj }) => {
                    let below = self.faces_below(rj, fj, level);
                    let above = self.faces_above(ri, fi, level);
                    intersect_sorted(&below, &above)
                }
                _ => return Err(PolytopeError::IncomparableBounds { lower: spec.lower, upper: spec.upper }),
            };
            faces.sort_unstable();
            if faces.is_empty() {
                return Err(PolytopeError::IncomparableBounds { lower: spec.lower, upper: spec.upper });
            }
            face_map.push(faces);
        }
        // Incomparable proper bounds show up as an empty middle; catch the
        // remaining case where the bounds are proper faces of adjacent ranks.
        if let (FaceRef::Face { rank: ri, index: fi }, FaceRef::Face { rank: rj, index: fj }) =
            (spec.lower, spec.upper)
        {
            if !self.faces_below(rj, fj, ri).contains(&(fi as u32)) {
                return Err(PolytopeError::IncomparableBounds { lower: spec.lower, upper: spec.upper });
            }
        }
        let sec_rank = (hi - lo - 1) as usize;
        let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(sec_rank);
        for k in 0..sec_rank {
            let level = (lo + 1 + k as isize) as usize;
            let faces = &face_map[k];
            if k == 0 {
                covers.push(vec![Vec::new(); faces.len()]);
                continue;
            }
            let below = &face_map[k - 1];
            let index_of: HashMap<u32, u32> =
                below.iter().enumerate().map(|(idx, &f)| (f, idx as u32)).collect();
            let lists = faces
                .iter()
                .map(|&f| {
                    let mut list: Vec<u32> = self.covers[level][f as usize]
                        .iter()
                        .filter_map(|c| index_of.get(c).copied())
                        .collect();
                    list.sort_unstable();
                    list
                })
                .collect();
            covers.push(lists);
        }
        let above = compute_above(sec_rank, &covers);
        Ok(Section {
            poset: FacePoset { rank: sec_rank, covers, above },
            face_map,
            spec,
        })
    }

    /// Order-reversing dual: rank-`i` faces become rank-`(n-1-i)` faces.
    pub fn dual(&self) -> FacePoset {
        let n = self.rank;
        let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
        for i in 0..n {
            let orig = n - 1 - i;
            if i == 0 {
                covers.push(vec![Vec::new(); self.count(orig)]);
            } else {
                // Dual covers at rank i come from upward incidence at rank orig.
                covers.push(self.above[orig].clone());
            }
        }
        let above = compute_above(n, &covers);
        FacePoset { rank: n, covers, above }
    }

    /// The Schläfli symbol, when the polytope is equivelar.
    pub fn schlafli_type(&self) -> Option<Vec<usize>> {
        let n = self.rank;
        let mut symbol = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            // Sections F_{i+1}/F_{i-2} must all be p_i-gons.
            let mut p: Option<usize> = None;
            let uppers: Vec<FaceRef> = if i + 1 == n {
                vec![FaceRef::Greatest]
            } else {
                (0..self.count(i + 1)).map(|g| FaceRef::Face { rank: i + 1, index: g }).collect()
            };
            for upper in uppers {
                let lowers: Vec<FaceRef> = if i < 2 {
                    vec![FaceRef::Least]
                } else {
                    let below = match upper {
                        FaceRef::Greatest => (0..self.count(i - 2) as u32).collect(),
                        FaceRef::Face { rank, index } => self.faces_below(rank, index, i - 2),
                        FaceRef::Least => unreachable!(),
                    };
                    below.into_iter().map(|f| FaceRef::Face { rank: i - 2, index: f as usize }).collect()
                };
                for lower in lowers {
                    let sec = self.section(SectionSpec { lower, upper }).ok()?;
                    let gon = sec.poset.count(0);
                    if sec.poset.count(1) != gon {
                        return None;
                    }
                    match p {
                        None => p = Some(gon),
                        Some(q) if q == gon => {}
                        Some(_) => return None,
                    }
                }
            }
            symbol.push(p?);
        }
        Some(symbol)
    }

    /// Vertex sets of all faces at `rank`, each ascending.
    pub fn vertex_sets(&self, rank: usize) -> Vec<Vec<u32>> {
        (0..self.count(rank)).map(|f| self.faces_below(rank, f, 0)).collect()
    }

    /// Vertex mode: faces are determined by their vertex sets.
    /// Facet mode: the same check on the dual.
    pub fn is_describable(&self, mode: DescribeMode) -> bool {
        let p;
        let target = match mode {
            DescribeMode::Vertex => self,
            DescribeMode::Facet => {
                p = self.dual();
                &p
            }
        };
        let mut seen: BTreeMap<(usize, Vec<u32>), ()> = BTreeMap::new();
        for rank in 0..target.rank {
            for f in 0..target.count(rank) {
                let vs = target.faces_below(rank, f, 0);
                if seen.insert((rank, vs), ()).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// 2-coloring of the vertices with every edge bichromatic, or `None` if
    /// the edge graph has an odd cycle. Vertex 0 is yellow.
    pub fn edge_bipartition(&self) -> Option<EdgeBipartition> {
        assert!(self.rank >= 2, "edge_bipartition requires rank >= 2");
        let nv = self.count(0);
        let mut color: Vec<Option<bool>> = vec![None; nv];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for e in 0..self.count(1) {
            let vs = &self.covers[1][e];
            adj[vs[0] as usize].push(vs[1]);
            adj[vs[1] as usize].push(vs[0]);
        }
        let mut queue = std::collections::VecDeque::new();
        for start in 0..nv {
            if color[start].is_some() {
                continue;
            }
            // Yellow is `true`; each new component starts yellow at its least vertex.
            color[start] = Some(true);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &w in &adj[v] {
                    match color[w as usize] {
                        None => {
                            color[w as usize] = Some(!c);
                            queue.push_back(w as usize);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let yellow: Vec<u32> =
            (0..nv as u32).filter(|&v| color[v as usize] == Some(true)).collect();
        let red: Vec<u32> = (0..nv as u32).filter(|&v| color[v as usize] == Some(false)).collect();
        Some(EdgeBipartition { yellow, red })
    }

    /// Relabel faces into the canonical serialization order: within each rank,
    /// faces are stably sorted by their (re-indexed) sorted cover lists.
    pub fn canonicalize(&self) -> FacePoset {
        let n = self.rank;
        let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
        // perm[old] = new index at the rank below the one being processed
        let mut perm: Vec<u32> = (0..self.count(0) as u32).collect();
        covers.push(vec![Vec::new(); self.count(0)]);
        for i in 1..n {
            let reindexed: Vec<Vec<u32>> = self.covers[i]
                .iter()
                .map(|list| {
                    let mut l: Vec<u32> = list.iter().map(|&c| perm[c as usize]).collect();
                    l.sort_unstable();
                    l
                })
                .collect();
            let mut order: Vec<usize> = (0..reindexed.len()).collect();
            order.sort_by(|&a, &b| reindexed[a].cmp(&reindexed[b]).then(a.cmp(&b)));
            let mut next_perm = vec![0u32; reindexed.len()];
            for (new, &old) in order.iter().enumerate() {
                next_perm[old] = new as u32;
            }
            covers.push(order.iter().map(|&old| reindexed[old].clone()).collect());
            perm = next_perm;
        }
        let above = compute_above(n, &covers);
        FacePoset { rank: n, covers, above }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescribeMode {
    Vertex,
    Facet,
}

/// Red/yellow vertex classes of a bipartite edge graph.
#[derive(Debug, Clone)]
pub struct EdgeBipartition {
    pub yellow: Vec<u32>,
    pub red: Vec<u32>,
}

fn compute_above(rank: usize, covers: &[Vec<Vec<u32>>]) -> Vec<Vec<Vec<u32>>> {
    let mut above: Vec<Vec<Vec<u32>>> = (0..rank).map(|i| vec![Vec::new(); covers[i].len()]).collect();
    for i in 1..rank {
        for (f, list) in covers[i].iter().enumerate() {
            for &c in list {
                above[i - 1][c as usize].push(f as u32);
            }
        }
    }
    for lists in above.iter_mut() {
        for l in lists.iter_mut() {
            l.sort_unstable();
        }
    }
    above
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Connectivity of the flag graph alone, without materializing adjacency maps.
fn flags_connected(p: &FacePoset) -> bool {
    let flags = crate::flag::enumerate_flags_unchecked(p);
    if flags.is_empty() {
        return false;
    }
    crate::flag::flags_connected_from_chains(p, &flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, hemicube, polygon, tetrahedron};

    #[test]
    fn triangle_counts_and_validation() {
        let p = polygon(3).unwrap();
        assert_eq!(p.counts(), vec![3, 3]);
        assert!(p.validate().pass());
    }

    #[test]
    fn cube_counts_and_type() {
        let p = cube();
        assert_eq!(p.counts(), vec![8, 12, 6]);
        assert!(p.validate().pass());
        assert_eq!(p.schlafli_type(), Some(vec![4, 3]));
    }

    #[test]
    fn cube_dual_is_octahedron_shaped() {
        let d = cube().dual();
        assert_eq!(d.counts(), vec![6, 12, 8]);
        assert!(d.validate().pass());
        assert_eq!(d.schlafli_type(), Some(vec![3, 4]));
    }

    #[test]
    fn dual_is_involutive() {
        let p = cube();
        assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn vertex_figure_of_cube_is_triangle() {
        let p = cube();
        let sec = p
            .section(SectionSpec {
                lower: FaceRef::Face { rank: 0, index: 0 },
                upper: FaceRef::Greatest,
            })
            .unwrap();
        assert_eq!(sec.poset.rank(), 2);
        assert_eq!(sec.poset.counts(), vec![3, 3]);
    }

    #[test]
    fn degenerate_section_rejected() {
        let p = cube();
        let err = p.section(SectionSpec {
            lower: FaceRef::Face { rank: 0, index: 0 },
            upper: FaceRef::Face { rank: 1, index: 0 },
        });
        assert!(matches!(err, Err(PolytopeError::DegenerateSection)));
    }

    #[test]
    fn incomparable_section_bounds_rejected() {
        let p = cube();
        // Vertex 7 (all coordinates 1) is not on a facet through vertex 0.
        let err = p.section(SectionSpec {
            lower: FaceRef::Face { rank: 0, index: 7 },
            upper: FaceRef::Face { rank: 2, index: 0 },
        });
        assert!(matches!(err, Err(PolytopeError::IncomparableBounds { .. })));
    }

    #[test]
    fn path_graph_fails_validation() {
        // 3 vertices, 2 edges: the end vertices break the diamond at the top.
        let p = FacePoset::build(2, vec![vec![vec![]; 3], vec![vec![0, 1], vec![1, 2]]]).unwrap();
        assert!(!p.validate().pass());
    }

    #[test]
    fn hemicube_validates_but_is_not_vertex_describable() {
        let p = hemicube();
        assert!(p.validate().pass());
        assert_eq!(p.schlafli_type(), Some(vec![4, 3]));
        assert!(!p.is_describable(DescribeMode::Vertex));
        assert!(cube().is_describable(DescribeMode::Vertex));
    }

    #[test]
    fn bipartition_of_cube_and_none_for_tetrahedron() {
        let b = cube().edge_bipartition().unwrap();
        assert_eq!(b.yellow.len(), 4);
        assert_eq!(b.red.len(), 4);
        assert!(tetrahedron().edge_bipartition().is_none());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let c = cube().canonicalize();
        assert_eq!(c.canonicalize(), c);
    }
}
