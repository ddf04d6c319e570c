//! Automorphism groups and flag-orbit analysis.
//!
//! Automorphisms are computed by base-flag extension: a candidate image of
//! the base flag either propagates to a full adjacency-commuting flag
//! permutation or dies on a contradiction. The action is free, so the group
//! order equals the orbit size of the base flag, and a small generating set
//! is collected greedily (each kept generator at least doubles the subgroup).

use crate::error::PolytopeError;
use crate::flag::{Dsu, FlagGraph, UNSET};

/// Automorphism group of a flag graph, acting freely on flags.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    flag_count: usize,
    base_flag: u32,
    generators: Vec<Vec<u32>>,
    /// Orbit of the base flag, ascending; its size is the group order.
    base_images: Vec<u32>,
    colors: Vec<u32>,
}

impl AutomorphismGroup {
    pub fn compute(fg: &FlagGraph) -> AutomorphismGroup {
        let colors = fg.refine_colors();
        Self::compute_with_colors(fg, colors)
    }

    pub fn compute_with_colors(fg: &FlagGraph, colors: Vec<u32>) -> AutomorphismGroup {
        let nflags = fg.flag_count();
        let base = 0u32;
        let mut in_orbit = vec![false; nflags];
        in_orbit[0] = true;
        let mut generators: Vec<Vec<u32>> = Vec::new();
        let mut scratch = ExtendScratch::new(nflags);
        for cand in 1..nflags as u32 {
            if in_orbit[cand as usize] || colors[cand as usize] != colors[base as usize] {
                continue;
            }
            if let Some(perm) = scratch.try_extend(fg, base, cand, &colors) {
                generators.push(perm);
                // Refresh the subgroup orbit of the base flag.
                let mut stack = vec![base];
                for x in in_orbit.iter_mut() {
                    *x = false;
                }
                in_orbit[base as usize] = true;
                while let Some(f) = stack.pop() {
                    for g in &generators {
                        let h = g[f as usize];
                        if !in_orbit[h as usize] {
                            in_orbit[h as usize] = true;
                            stack.push(h);
                        }
                    }
                }
            }
        }
        let base_images: Vec<u32> =
            (0..nflags as u32).filter(|&f| in_orbit[f as usize]).collect();
        AutomorphismGroup { flag_count: nflags, base_flag: base, generators, base_images, colors }
    }

    pub fn order(&self) -> usize {
        self.base_images.len()
    }

    pub fn flag_count(&self) -> usize {
        self.flag_count
    }

    pub fn base_flag(&self) -> u32 {
        self.base_flag
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn base_images(&self) -> &[u32] {
        &self.base_images
    }

    /// The unique automorphism taking the base flag to `image`, if any.
    pub fn element_to(&self, fg: &FlagGraph, image: u32) -> Option<Vec<u32>> {
        if !self.base_images.contains(&image) {
            return None;
        }
        let mut scratch = ExtendScratch::new(self.flag_count);
        scratch.try_extend(fg, self.base_flag, image, &self.colors)
    }

    /// All group elements as flag permutations, in base-image order.
    /// Materializes one permutation per element; meant for desk-scale groups.
    pub fn elements<'a>(&'a self, fg: &'a FlagGraph) -> impl Iterator<Item = Vec<u32>> + 'a {
        let mut scratch = ExtendScratch::new(self.flag_count);
        self.base_images.iter().map(move |&img| {
            scratch
                .try_extend(fg, self.base_flag, img, &self.colors)
                .expect("base image must extend")
        })
    }

    /// Orbit label per flag; the label is the least flag index in the orbit.
    pub fn flag_orbit_labels(&self) -> Vec<u32> {
        let mut dsu = Dsu::new(self.flag_count);
        for g in &self.generators {
            for (f, &h) in g.iter().enumerate() {
                dsu.union(f, h as usize);
            }
        }
        (0..self.flag_count).map(|f| dsu.find(f)).collect()
    }

    /// Induced permutation on the faces of one rank.
    pub fn face_action(fg: &FlagGraph, perm: &[u32], rank: usize) -> Vec<u32> {
        let mut act = vec![UNSET; fg.face_count(rank)];
        for f in 0..fg.flag_count() as u32 {
            let src = fg.face_of(rank, f);
            let dst = fg.face_of(rank, perm[f as usize]);
            debug_assert!(act[src as usize] == UNSET || act[src as usize] == dst);
            act[src as usize] = dst;
        }
        act
    }

    /// Orbit label per face of `rank` under the group, plus the orbit count.
    pub fn face_orbits(&self, fg: &FlagGraph, rank: usize) -> (Vec<u32>, usize) {
        let mut dsu = Dsu::new(fg.face_count(rank));
        for g in &self.generators {
            let act = Self::face_action(fg, g, rank);
            for (f, &h) in act.iter().enumerate() {
                dsu.union(f, h as usize);
            }
        }
        let labels: Vec<u32> = (0..fg.face_count(rank)).map(|f| dsu.find(f)).collect();
        let mut roots: Vec<u32> = labels.clone();
        roots.sort_unstable();
        roots.dedup();
        (labels, roots.len())
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }
}

/// Reusable buffers for base-flag extension, so a failed candidate costs
/// only the flags it touched.
pub struct ExtendScratch {
    img: Vec<u32>,
    touched: Vec<u32>,
    queue: Vec<u32>,
}

impl ExtendScratch {
    pub fn new(nflags: usize) -> ExtendScratch {
        ExtendScratch { img: vec![UNSET; nflags], touched: Vec::new(), queue: Vec::new() }
    }

    /// Unique adjacency-commuting extension of `src -> dst`, or `None`.
    pub fn try_extend(&mut self, fg: &FlagGraph, src: u32, dst: u32, colors: &[u32]) -> Option<Vec<u32>> {
        if colors[src as usize] != colors[dst as usize] {
            return None;
        }
        self.queue.clear();
        self.img[src as usize] = dst;
        self.touched.push(src);
        self.queue.push(src);
        let mut qi = 0;
        let mut ok = true;
        'bfs: while qi < self.queue.len() {
            let x = self.queue[qi];
            qi += 1;
            let y = self.img[x as usize];
            for i in 0..fg.rank() {
                let sx = fg.adjacent(i, x);
                let dy = fg.adjacent(i, y);
                let cur = self.img[sx as usize];
                if cur == UNSET {
                    if colors[sx as usize] != colors[dy as usize] {
                        ok = false;
                        break 'bfs;
                    }
                    self.img[sx as usize] = dy;
                    self.touched.push(sx);
                    self.queue.push(sx);
                } else if cur != dy {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        let result = if ok {
            debug_assert_eq!(self.touched.len(), fg.flag_count());
            Some(self.img.clone())
        } else {
            None
        };
        for &t in &self.touched {
            self.img[t as usize] = UNSET;
        }
        self.touched.clear();
        result
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Chiral,
    TwoOrbit(Vec<usize>),
    KOrbit(usize),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Regular => write!(f, "regular"),
            Verdict::Chiral => write!(f, "chiral"),
            Verdict::TwoOrbit(_) => write!(f, "2-orbit"),
            Verdict::KOrbit(k) => write!(f, "{k}-orbit"),
        }
    }
}

/// Flag-orbit census of a polytope.
#[derive(Debug, Clone)]
pub struct OrbitClassification {
    pub k: usize,
    /// Orbit label per flag (least flag index in the orbit).
    pub orbit_of: Vec<u32>,
    /// Present iff k = 2: the set I of ranks whose adjacent flags share an orbit.
    pub class_i: Option<Vec<usize>>,
    pub verdict: Verdict,
}

pub fn flag_orbits(fg: &FlagGraph) -> Result<OrbitClassification, PolytopeError> {
    let aut = AutomorphismGroup::compute(fg);
    classify_orbits(fg, &aut)
}

pub fn classify_orbits(fg: &FlagGraph, aut: &AutomorphismGroup) -> Result<OrbitClassification, PolytopeError> {
    let orbit_of = aut.flag_orbit_labels();
    let mut roots = orbit_of.clone();
    roots.sort_unstable();
    roots.dedup();
    let k = roots.len();
    if k * aut.order() != fg.flag_count() {
        return Err(PolytopeError::NotAPolytope(format!(
            "orbit arithmetic violated: {} orbits x order {} != {} flags (the action is not free)",
            k,
            aut.order(),
            fg.flag_count()
        )));
    }
    let mut class_i = None;
    if k == 2 {
        let mut set = Vec::new();
        for i in 0..fg.rank() {
            let share = orbit_of[0] == orbit_of[fg.adjacent(i, 0) as usize];
            // Flag-independence of the class is verified, not assumed.
            for f in 0..fg.flag_count() as u32 {
                let s = orbit_of[f as usize] == orbit_of[fg.adjacent(i, f) as usize];
                if s != share {
                    return Err(PolytopeError::NotAPolytope(format!(
                        "class 2_I is not flag-independent at rank {i} (implementation bug)"
                    )));
                }
            }
            if share {
                set.push(i);
            }
        }
        class_i = Some(set);
    }
    let verdict = match (k, &class_i) {
        (1, _) => Verdict::Regular,
        (2, Some(set)) if set.is_empty() => Verdict::Chiral,
        (2, Some(set)) => Verdict::TwoOrbit(set.clone()),
        _ => Verdict::KOrbit(k),
    };
    Ok(OrbitClassification { k, orbit_of, class_i, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityMode {
    Face,
    Chain,
}

/// Is the automorphism action transitive on rank-`i` faces (face mode) or on
/// chains of type {0,..,i} (chain mode)?
pub fn transitivity(
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
    i: usize,
    mode: TransitivityMode,
) -> Result<bool, PolytopeError> {
    if i >= fg.rank() {
        return Err(PolytopeError::RankOutOfRange(i));
    }
    match mode {
        TransitivityMode::Face => {
            let (_, count) = aut.face_orbits(fg, i);
            Ok(count == 1)
        }
        TransitivityMode::Chain => {
            // Chains of type {0..i} are the distinct flag prefixes of length i+1.
            let nflags = fg.flag_count();
            let mut order: Vec<u32> = (0..nflags as u32).collect();
            order.sort_unstable_by(|&a, &b| fg.chain(a)[..=i].cmp(&fg.chain(b)[..=i]));
            let mut chain_id = vec![0u32; nflags];
            let mut next = 0u32;
            for w in 0..order.len() {
                if w > 0 && fg.chain(order[w])[..=i] != fg.chain(order[w - 1])[..=i] {
                    next += 1;
                }
                chain_id[order[w] as usize] = next;
            }
            let nchains = next as usize + 1;
            let mut dsu = Dsu::new(nchains);
            for g in aut.generators() {
                for f in 0..nflags {
                    dsu.union(chain_id[f] as usize, chain_id[g[f] as usize] as usize);
                }
            }
            let root = dsu.find(0);
            Ok((0..nchains).all(|c| dsu.find(c) == root))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, hemicube, polygon, truncated_tetrahedron};
    use crate::flag::FlagGraph;

    #[test]
    fn cube_group_order_48_and_regular() {
        let fg = FlagGraph::of_poset(&cube()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 48);
        let cls = classify_orbits(&fg, &aut).unwrap();
        assert_eq!(cls.k, 1);
        assert_eq!(cls.verdict, Verdict::Regular);
    }

    #[test]
    fn polygon_group_is_dihedral() {
        let fg = FlagGraph::of_poset(&polygon(7).unwrap()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 14);
    }

    #[test]
    fn hemicube_is_regular_with_group_order_24() {
        let fg = FlagGraph::of_poset(&hemicube()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 24);
        assert_eq!(classify_orbits(&fg, &aut).unwrap().k, 1);
    }

    #[test]
    fn truncated_tetrahedron_is_three_orbit() {
        let fg = FlagGraph::of_poset(&truncated_tetrahedron()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 24);
        let cls = classify_orbits(&fg, &aut).unwrap();
        assert_eq!(cls.k, 3);
        assert_eq!(cls.verdict, Verdict::KOrbit(3));
    }

    #[test]
    fn transitivity_of_truncated_tetrahedron() {
        let fg = FlagGraph::of_poset(&truncated_tetrahedron()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert!(transitivity(&fg, &aut, 0, TransitivityMode::Face).unwrap());
        assert!(!transitivity(&fg, &aut, 1, TransitivityMode::Face).unwrap());
        assert!(!transitivity(&fg, &aut, 2, TransitivityMode::Face).unwrap());
        assert!(!transitivity(&fg, &aut, 1, TransitivityMode::Chain).unwrap());
    }

    #[test]
    fn cube_is_chain_transitive() {
        let fg = FlagGraph::of_poset(&cube()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        for i in 0..3 {
            assert!(transitivity(&fg, &aut, i, TransitivityMode::Face).unwrap());
            assert!(transitivity(&fg, &aut, i, TransitivityMode::Chain).unwrap());
        }
    }

    #[test]
    fn elements_are_distinct_automorphisms() {
        let fg = FlagGraph::of_poset(&polygon(4).unwrap()).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        let elems: Vec<Vec<u32>> = aut.elements(&fg).collect();
        assert_eq!(elems.len(), 8);
        for (a, e) in elems.iter().enumerate() {
            for e2 in elems.iter().skip(a + 1) {
                assert_ne!(e, e2);
            }
        }
    }
}
