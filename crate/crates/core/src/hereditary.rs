//! Hereditary predicates: which section automorphisms extend to the whole
//! polytope.
//!
//! A section automorphism gamma extends iff some global automorphism restricts
//! to it. Extensions compose, so the extendable elements form a subgroup; a
//! yes/no answer only needs the section group's generators, while exact
//! subgroup orders enumerate all elements. Candidate global images of a lifted
//! base flag range over all completions of the section chain below the lower
//! bound and above the upper bound.

use crate::error::PolytopeError;
use crate::flag::{enumerate_flags_unchecked, FlagGraph};
use crate::poset::{FacePoset, FaceRef, Section, SectionSpec};
use crate::symmetry::{AutomorphismGroup, ExtendScratch};

/// A section prepared for extension tests against a fixed global flag graph.
pub struct SectionContext {
    pub spec: SectionSpec,
    pub section: Section,
    pub fg: FlagGraph,
    lower_completions: Vec<Vec<u32>>,
    upper_completions: Vec<Vec<u32>>,
    base_global: u32,
}

impl SectionContext {
    pub fn new(p: &FacePoset, global: &FlagGraph, spec: SectionSpec) -> Result<SectionContext, PolytopeError> {
        let section = p.section(spec)?;
        let fg = FlagGraph::of_valid_poset(&section.poset, &crate::limits::Limits {
            max_flags: usize::MAX,
            max_rank: usize::MAX,
            ..Default::default()
        })?;
        let lower_completions = completions_below(p, spec.lower);
        let upper_completions = completions_above(p, spec.upper);
        let mut ctx = SectionContext {
            spec,
            section,
            fg,
            lower_completions,
            upper_completions,
            base_global: 0,
        };
        let base_chain = ctx.global_chain(0, 0, 0);
        ctx.base_global = global
            .flag_index(&base_chain)
            .ok_or_else(|| PolytopeError::NotAPolytope("section flag lift missing".into()))?;
        Ok(ctx)
    }

    /// Global chain of a section flag, completed by the chosen chains outside
    /// the section bounds.
    fn global_chain(&self, sec_flag: u32, lower: usize, upper: usize) -> Vec<u32> {
        let mut chain = self.lower_completions[lower].clone();
        for (k, &f) in self.fg.chain(sec_flag).iter().enumerate() {
            chain.push(self.section.face_map[k][f as usize]);
        }
        chain.extend_from_slice(&self.upper_completions[upper]);
        chain
    }

    pub fn base_global(&self) -> u32 {
        self.base_global
    }

    /// A global automorphism whose restriction to the section carries the
    /// section base flag to `image`, or `None`. With `strong`, the extension
    /// must also fix every face below the lower bound and above the upper
    /// bound; that pins the candidate to the base completions.
    pub fn extends(
        &self,
        p: &FacePoset,
        global: &FlagGraph,
        colors: &[u32],
        scratch: &mut ExtendScratch,
        image: u32,
        strong: bool,
    ) -> Option<Vec<u32>> {
        if strong {
            let target = global.flag_index(&self.global_chain(image, 0, 0))?;
            let perm = scratch.try_extend(global, self.base_global, target, colors)?;
            if self.fixes_complement(p, global, &perm) {
                return Some(perm);
            }
            return None;
        }
        for lc in 0..self.lower_completions.len() {
            for uc in 0..self.upper_completions.len() {
                let Some(target) = global.flag_index(&self.global_chain(image, lc, uc)) else {
                    continue;
                };
                if let Some(perm) = scratch.try_extend(global, self.base_global, target, colors) {
                    return Some(perm);
                }
            }
        }
        None
    }

    fn fixes_complement(&self, p: &FacePoset, global: &FlagGraph, perm: &[u32]) -> bool {
        let n = p.rank();
        let fixed = |rank: usize, faces: &[u32]| -> bool {
            let act = AutomorphismGroup::face_action(global, perm, rank);
            faces.iter().all(|&f| act[f as usize] == f)
        };
        if let FaceRef::Face { rank: lo, index } = self.spec.lower {
            for r in 0..lo {
                if !fixed(r, &p.faces_below(lo, index, r)) {
                    return false;
                }
            }
        }
        if let FaceRef::Face { rank: hi, index } = self.spec.upper {
            for r in hi + 1..n {
                if !fixed(r, &p.faces_above(hi, index, r)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Maximal chains of ranks `0..=rank(f)` through `f`, as global face indices.
fn completions_below(p: &FacePoset, f: FaceRef) -> Vec<Vec<u32>> {
    match f {
        FaceRef::Least => vec![Vec::new()],
        FaceRef::Face { rank: 0, index } => vec![vec![index as u32]],
        FaceRef::Face { index, .. } => {
            let sec = p
                .section(SectionSpec { lower: FaceRef::Least, upper: f })
                .expect("face section");
            enumerate_flags_unchecked(&sec.poset)
                .into_iter()
                .map(|ch| {
                    let mut g: Vec<u32> = ch
                        .iter()
                        .enumerate()
                        .map(|(k, &x)| sec.face_map[k][x as usize])
                        .collect();
                    g.push(index as u32);
                    g
                })
                .collect()
        }
        FaceRef::Greatest => unreachable!("greatest face has no lower completion"),
    }
}

/// Maximal chains of ranks `rank(f)..n-1` through `f`, as global face indices.
fn completions_above(p: &FacePoset, f: FaceRef) -> Vec<Vec<u32>> {
    let n = p.rank();
    match f {
        FaceRef::Greatest => vec![Vec::new()],
        FaceRef::Face { rank, index } if rank == n - 1 => vec![vec![index as u32]],
        FaceRef::Face { index, .. } => {
            let sec = p
                .section(SectionSpec { lower: f, upper: FaceRef::Greatest })
                .expect("coface section");
            enumerate_flags_unchecked(&sec.poset)
                .into_iter()
                .map(|ch| {
                    let mut g = vec![index as u32];
                    g.extend(ch.iter().enumerate().map(|(k, &x)| sec.face_map[k][x as usize]));
                    g
                })
                .collect()
        }
        FaceRef::Least => unreachable!("least face has no upper completion"),
    }
}

/// Per-facet extension census.
#[derive(Debug, Clone)]
pub struct FacetHereditaryEntry {
    pub facet: u32,
    pub group_order: usize,
    pub extendable_order: usize,
    /// Base-flag image of a non-extending section automorphism, if any.
    pub witness: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct HereditaryReport {
    pub hereditary: bool,
    pub chirally_hereditary: bool,
    pub per_facet: Vec<FacetHereditaryEntry>,
}

/// Facet-level hereditary census: for every facet (computed once per facet
/// orbit), the facet group order, the order of its extendable subgroup, and a
/// witness when the two differ. Also decides chiral heredity: every rotation
/// (parity-preserving) facet automorphism must extend.
pub fn hereditary_report(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
) -> Result<HereditaryReport, PolytopeError> {
    let n = p.rank();
    if n < 2 {
        let per_facet = (0..p.count(0) as u32)
            .map(|f| FacetHereditaryEntry { facet: f, group_order: 1, extendable_order: 1, witness: None })
            .collect();
        return Ok(HereditaryReport { hereditary: true, chirally_hereditary: true, per_facet });
    }
    let (labels, _) = aut.face_orbits(fg, n - 1);
    let colors = aut.colors();
    let mut scratch = ExtendScratch::new(fg.flag_count());
    let mut rep_entries: std::collections::BTreeMap<u32, (FacetHereditaryEntry, bool)> =
        std::collections::BTreeMap::new();
    for facet in 0..p.count(n - 1) as u32 {
        let root = labels[facet as usize];
        if rep_entries.contains_key(&root) {
            continue;
        }
        let ctx = SectionContext::new(p, fg, SectionSpec {
            lower: FaceRef::Least,
            upper: FaceRef::Face { rank: n - 1, index: facet as usize },
        })?;
        let sec_aut = AutomorphismGroup::compute(&ctx.fg);
        let group_order = sec_aut.order();
        let mut extendable: Vec<u32> = Vec::new();
        let mut witness = None;
        for &img in sec_aut.base_images() {
            if ctx.extends(p, fg, colors, &mut scratch, img, false).is_some() {
                extendable.push(img);
            } else if witness.is_none() {
                witness = Some(img);
            }
        }
        check_subgroup(&ctx.fg, &sec_aut, &extendable);
        let chir = rotation_elements(&ctx.fg, &sec_aut).iter().all(|&img| {
            extendable.binary_search(&img).is_ok()
        });
        rep_entries.insert(
            root,
            (
                FacetHereditaryEntry {
                    facet,
                    group_order,
                    extendable_order: extendable.len(),
                    witness,
                },
                chir,
            ),
        );
    }
    let per_facet: Vec<FacetHereditaryEntry> = (0..p.count(n - 1) as u32)
        .map(|facet| {
            let (rep, _) = &rep_entries[&labels[facet as usize]];
            FacetHereditaryEntry { facet, ..rep.clone() }
        })
        .collect();
    let hereditary = per_facet.iter().all(|e| e.extendable_order == e.group_order);
    let chirally_hereditary = rep_entries.values().all(|(_, c)| *c);
    Ok(HereditaryReport { hereditary, chirally_hereditary, per_facet })
}

/// Base-flag images of the combinatorial rotation subgroup of a section: the
/// parity-preserving automorphisms when the flag graph is adjacency-bipartite,
/// the whole group otherwise.
fn rotation_elements(fg: &FlagGraph, aut: &AutomorphismGroup) -> Vec<u32> {
    match flag_parity(fg) {
        Some(parity) => {
            let base = parity[aut.base_flag() as usize];
            aut.base_images().iter().copied().filter(|&f| parity[f as usize] == base).collect()
        }
        None => aut.base_images().to_vec(),
    }
}

/// 2-coloring of flags with every adjacency bichromatic, or `None` if the
/// flag graph has an odd cycle.
pub fn flag_parity(fg: &FlagGraph) -> Option<Vec<bool>> {
    let nflags = fg.flag_count();
    let mut parity: Vec<Option<bool>> = vec![None; nflags];
    parity[0] = Some(false);
    let mut stack = vec![0u32];
    while let Some(f) = stack.pop() {
        let pf = parity[f as usize].unwrap();
        for i in 0..fg.rank() {
            let g = fg.adjacent(i, f);
            match parity[g as usize] {
                None => {
                    parity[g as usize] = Some(!pf);
                    stack.push(g);
                }
                Some(pg) if pg == pf => return None,
                Some(_) => {}
            }
        }
    }
    Some(parity.into_iter().map(|x| x.unwrap()).collect())
}

/// Sanity check that the extendable elements really form a subgroup. Skipped
/// above a size cutoff where the quadratic check would dominate.
fn check_subgroup(fg: &FlagGraph, aut: &AutomorphismGroup, extendable: &[u32]) {
    if extendable.len() > 1024 || fg.flag_count() > 8192 {
        return;
    }
    assert!(extendable.contains(&aut.base_flag()), "extendable set misses the identity");
    let perms: Vec<Vec<u32>> = extendable
        .iter()
        .map(|&img| aut.element_to(fg, img).expect("extendable element"))
        .collect();
    for a in &perms {
        // Inverse: the element sending a's base image back to the base.
        let inv_img = a.iter().position(|&x| x == aut.base_flag()).unwrap() as u32;
        assert!(extendable.contains(&inv_img), "extendable set not closed under inversion");
        for b in &perms {
            let img = a[b[aut.base_flag() as usize] as usize];
            assert!(extendable.contains(&img), "extendable set not closed under composition");
        }
    }
}

/// Does every automorphism of every rank-`j` face section extend? With
/// `strong`, extensions must fix the co-face of the section pointwise.
pub fn j_face_hereditary(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
    j: usize,
    strong: bool,
) -> Result<bool, PolytopeError> {
    if j >= p.rank() {
        return Err(PolytopeError::RankOutOfRange(j));
    }
    if j == 0 {
        return Ok(true);
    }
    let specs: Vec<SectionSpec> = orbit_rep_faces(p, fg, aut, j)
        .into_iter()
        .map(|f| SectionSpec { lower: FaceRef::Least, upper: FaceRef::Face { rank: j, index: f as usize } })
        .collect();
    all_generators_extend(p, fg, aut, &specs, strong)
}

/// Does every automorphism of every section G/F with rank(F)=i, rank(G)=j
/// extend? `i < j - 1` is required for the section to be non-degenerate.
pub fn section_hereditary(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
    i: usize,
    j: usize,
    strong: bool,
) -> Result<bool, PolytopeError> {
    if i >= j {
        return Err(PolytopeError::BadSectionRanks);
    }
    if j >= p.rank() {
        return Err(PolytopeError::RankOutOfRange(j));
    }
    let specs = orbit_rep_pairs(p, fg, aut, i, j);
    all_generators_extend(p, fg, aut, &specs, strong)
}

fn all_generators_extend(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
    specs: &[SectionSpec],
    strong: bool,
) -> Result<bool, PolytopeError> {
    let colors = aut.colors();
    let mut scratch = ExtendScratch::new(fg.flag_count());
    for &spec in specs {
        let ctx = SectionContext::new(p, fg, spec)?;
        let sec_aut = AutomorphismGroup::compute(&ctx.fg);
        // Extensions compose, so the whole group extends iff the generators do.
        for g in sec_aut.generators() {
            let img = g[sec_aut.base_flag() as usize];
            if ctx.extends(p, fg, colors, &mut scratch, img, strong).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is every rotation-subgroup automorphism of every facet extendable?
pub fn chirally_hereditary(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
) -> Result<bool, PolytopeError> {
    Ok(hereditary_report(p, fg, aut)?.chirally_hereditary)
}

/// One face index per automorphism orbit at `rank`, ascending.
pub fn orbit_rep_faces(p: &FacePoset, fg: &FlagGraph, aut: &AutomorphismGroup, rank: usize) -> Vec<u32> {
    let _ = p;
    let (labels, _) = aut.face_orbits(fg, rank);
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for (f, &root) in labels.iter().enumerate() {
        if seen.insert(root) {
            reps.push(f as u32);
        }
    }
    reps
}

/// One incident (rank-i, rank-j) pair per automorphism orbit on such pairs.
fn orbit_rep_pairs(
    p: &FacePoset,
    fg: &FlagGraph,
    aut: &AutomorphismGroup,
    i: usize,
    j: usize,
) -> Vec<SectionSpec> {
    let _ = p;
    let nflags = fg.flag_count();
    // Identify each flag's (i, j) pair; orbits of pairs come from flag orbits.
    let mut pair_ids: std::collections::BTreeMap<(u32, u32), u32> = std::collections::BTreeMap::new();
    let mut flag_pair: Vec<u32> = Vec::with_capacity(nflags);
    for f in 0..nflags as u32 {
        let key = (fg.face_of(i, f), fg.face_of(j, f));
        let next = pair_ids.len() as u32;
        let id = *pair_ids.entry(key).or_insert(next);
        flag_pair.push(id);
    }
    let mut dsu = crate::flag::Dsu::new(pair_ids.len());
    for g in aut.generators() {
        for f in 0..nflags {
            dsu.union(flag_pair[f] as usize, flag_pair[g[f] as usize] as usize);
        }
    }
    let mut reps: std::collections::BTreeMap<u32, (u32, u32)> = std::collections::BTreeMap::new();
    for (&key, &id) in pair_ids.iter() {
        let root = dsu.find(id as usize);
        reps.entry(root).or_insert(key);
    }
    reps.values()
        .map(|&(fi, fj)| SectionSpec {
            lower: FaceRef::Face { rank: i, index: fi as usize },
            upper: FaceRef::Face { rank: j, index: fj as usize },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, polygon, truncated_tetrahedron};
    use crate::flag::FlagGraph;

    fn setup(p: &FacePoset) -> (FlagGraph, AutomorphismGroup) {
        let fg = FlagGraph::of_poset(p).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        (fg, aut)
    }

    #[test]
    fn cube_is_hereditary() {
        let p = cube();
        let (fg, aut) = setup(&p);
        let rep = hereditary_report(&p, &fg, &aut).unwrap();
        assert!(rep.hereditary);
        assert!(rep.chirally_hereditary);
        assert_eq!(rep.per_facet.len(), 6);
        for e in &rep.per_facet {
            assert_eq!(e.group_order, 8);
            assert_eq!(e.extendable_order, 8);
            assert!(e.witness.is_none());
        }
    }

    #[test]
    fn truncated_tetrahedron_hereditary_profile() {
        let p = truncated_tetrahedron();
        let (fg, aut) = setup(&p);
        let rep = hereditary_report(&p, &fg, &aut).unwrap();
        assert!(!rep.hereditary);
        assert!(!rep.chirally_hereditary);
        // Triangles extend fully; hexagons only through the vertex stabilizer.
        let tri = rep.per_facet.iter().find(|e| e.group_order == 6).unwrap();
        assert_eq!(tri.extendable_order, 6);
        let hex = rep.per_facet.iter().find(|e| e.group_order == 12).unwrap();
        assert!(hex.extendable_order < 12);
        assert!(hex.witness.is_some());
        assert!(j_face_hereditary(&p, &fg, &aut, 1, false).unwrap());
        assert!(!j_face_hereditary(&p, &fg, &aut, 2, false).unwrap());
    }

    #[test]
    fn polygon_flag_parity_is_bipartite() {
        let fg = FlagGraph::of_poset(&polygon(5).unwrap()).unwrap();
        assert!(flag_parity(&fg).is_some());
    }

    #[test]
    fn section_rank_order_is_checked() {
        let p = cube();
        let (fg, aut) = setup(&p);
        assert!(matches!(
            section_hereditary(&p, &fg, &aut, 2, 1, false),
            Err(PolytopeError::BadSectionRanks)
        ));
    }

    #[test]
    fn cube_vertex_to_facet_sections_extend() {
        let p = cube();
        let (fg, aut) = setup(&p);
        assert!(section_hereditary(&p, &fg, &aut, 0, 2, false).unwrap());
    }
}
