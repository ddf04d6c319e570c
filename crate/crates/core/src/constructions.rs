//! Polytope-valued constructions: dual, medial, halving, 2^K, chiral
//! extension, and the alternating construction.
//!
//! Every construction builds a candidate cover structure and then runs the
//! full polytope validator; correctness is certified on the output, not
//! assumed from the theory.

use std::collections::BTreeMap;

use crate::error::PolytopeError;
use crate::flag::FlagGraph;
use crate::limits::Limits;
use crate::poset::{DescribeMode, FacePoset, FaceRef, SectionSpec};
use crate::symmetry::{classify_orbits, transitivity, AutomorphismGroup, TransitivityMode, Verdict};

/// Medial of a polyhedron: vertices are the old edges, edges are the
/// vertex-face corners, faces come in an old-face family and an old-vertex
/// family.
pub fn medial(p: &FacePoset) -> Result<FacePoset, PolytopeError> {
    if p.rank() != 3 {
        return Err(PolytopeError::WrongRank { expected: 3, got: p.rank() });
    }
    let ne = p.count(1);
    let nf = p.count(2);
    let vertices = vec![Vec::new(); ne];
    // Corner (v, f): the two edges of f through v become the endpoints.
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut corner_idx: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for f in 0..nf {
        let mut at_vertex: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &e in p.covers_of(2, f) {
            for &v in p.covers_of(1, e as usize) {
                at_vertex.entry(v).or_default().push(e);
            }
        }
        for (v, es) in at_vertex {
            if es.len() != 2 {
                return Err(PolytopeError::NotAPolytope(format!(
                    "face {f} meets vertex {v} in {} edges",
                    es.len()
                )));
            }
            corner_idx.insert((v, f as u32), edges.len() as u32);
            edges.push(es);
        }
    }
    // Face family one: per old face, its corners. Family two: per old vertex.
    let mut faces: Vec<Vec<u32>> = Vec::new();
    for f in 0..nf as u32 {
        faces.push(
            corner_idx
                .iter()
                .filter(|&(&(_, cf), _)| cf == f)
                .map(|(_, &i)| i)
                .collect(),
        );
    }
    for v in 0..p.count(0) as u32 {
        faces.push(
            corner_idx
                .iter()
                .filter(|&(&(cv, _), _)| cv == v)
                .map(|(_, &i)| i)
                .collect(),
        );
    }
    FacePoset::build(3, vec![vertices, edges, faces])?.validated()
}

/// Generalized halving K^a of a bipartite polyhedron of type {2p, q}:
/// yellow vertices survive, the diagonals through red vertices become edges,
/// and the facets are the red vertex-figures plus (for p >= 3) one p-gon per
/// old face.
pub fn halved(p: &FacePoset) -> Result<FacePoset, PolytopeError> {
    if p.rank() != 3 {
        return Err(PolytopeError::WrongRank { expected: 3, got: p.rank() });
    }
    let ty = p
        .schlafli_type()
        .ok_or_else(|| PolytopeError::Precondition("halving requires an equivelar input".into()))?;
    if ty[0] % 2 != 0 || ty[0] < 4 {
        return Err(PolytopeError::Precondition(format!(
            "halving requires type {{2p,q}}, got {{{},{}}}",
            ty[0], ty[1]
        )));
    }
    let half_p = ty[0] / 2;
    let bip = p
        .edge_bipartition()
        .ok_or_else(|| PolytopeError::Precondition("halving requires a bipartite edge graph".into()))?;
    let fg = FlagGraph::of_poset(p)?;
    let aut = AutomorphismGroup::compute(&fg);
    if !transitivity(&fg, &aut, 0, TransitivityMode::Face)? {
        return Err(PolytopeError::Precondition("halving requires a vertex-transitive input".into()));
    }
    let mut is_yellow = vec![false; p.count(0)];
    let mut yellow_idx = vec![u32::MAX; p.count(0)];
    for (i, &v) in bip.yellow.iter().enumerate() {
        is_yellow[v as usize] = true;
        yellow_idx[v as usize] = i as u32;
    }
    let vertices = vec![Vec::new(); bip.yellow.len()];
    // Diagonal at (face, red vertex): the red vertex's two neighbors along
    // the face boundary. For p = 2 the two diagonals of a face coincide as a
    // vertex pair and collapse to a single edge per face.
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut edge_idx: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let diagonal = |f: usize, r: u32| -> Vec<u32> {
        let mut ends: Vec<u32> = p
            .covers_of(2, f)
            .iter()
            .filter(|&&e| p.covers_of(1, e as usize).contains(&r))
            .flat_map(|&e| p.covers_of(1, e as usize).iter().copied())
            .filter(|&v| v != r)
            .map(|v| yellow_idx[v as usize])
            .collect();
        ends.sort_unstable();
        ends
    };
    for f in 0..p.count(2) {
        let face_verts = p.faces_below(2, f, 0);
        let reds: Vec<u32> =
            face_verts.iter().copied().filter(|&v| !is_yellow[v as usize]).collect();
        if half_p == 2 {
            edge_idx.insert((f as u32, 0), edges.len() as u32);
            edges.push(diagonal(f, reds[0]));
        } else {
            for &r in &reds {
                edge_idx.insert((f as u32, r), edges.len() as u32);
                edges.push(diagonal(f, r));
            }
        }
    }
    let mut faces: Vec<Vec<u32>> = Vec::new();
    // Red vertex-figures: the q diagonals through one red vertex.
    for &r in &bip.red {
        let list: Vec<u32> = p
            .faces_above(0, r as usize, 2)
            .iter()
            .map(|&f| edge_idx[&(f, if half_p == 2 { 0 } else { r })])
            .collect();
        faces.push(list);
    }
    // For p >= 3, each old face contributes the p-gon of its diagonals.
    if half_p >= 3 {
        for f in 0..p.count(2) as u32 {
            faces.push(
                edge_idx
                    .iter()
                    .filter(|&(&(ef, _), _)| ef == f)
                    .map(|(_, &i)| i)
                    .collect(),
            );
        }
    }
    FacePoset::build(3, vec![vertices, edges, faces])?.validated()
}

/// 2^K: vertices are 0/1 vectors over the vertices of K, higher faces are
/// the classes F(eps) indexed by a face of K and the vector bits off it.
pub fn two_power(k: &FacePoset, check: bool) -> Result<FacePoset, PolytopeError> {
    two_power_with_limits(k, check, &Limits::default())
}

pub fn two_power_with_limits(
    k: &FacePoset,
    check: bool,
    limits: &Limits,
) -> Result<FacePoset, PolytopeError> {
    let v = k.count(0);
    if v > limits.max_two_power_vertices {
        return Err(PolytopeError::Precondition(format!(
            "2^K with {v} vertices exceeds the limit {} (raise max_two_power_vertices)",
            limits.max_two_power_vertices
        )));
    }
    if v >= 32 {
        return Err(PolytopeError::Precondition("2^K supports at most 31 vertices".into()));
    }
    if !k.is_describable(DescribeMode::Vertex) {
        return Err(PolytopeError::Precondition("2^K requires a vertex-describable input".into()));
    }
    let m = k.rank();
    let nverts = 1usize << v;
    // Vertex-set masks of every face of K.
    let masks: Vec<Vec<u32>> = (0..m)
        .map(|r| {
            (0..k.count(r))
                .map(|f| k.faces_below(r, f, 0).iter().fold(0u32, |acc, &w| acc | (1 << w)))
                .collect()
        })
        .collect();
    // Face (F, eps) at output rank r+1, keyed by (F, eps with F's bits cleared).
    let mut index: Vec<BTreeMap<(u32, u32), u32>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut map = BTreeMap::new();
        for f in 0..k.count(r) as u32 {
            let mask = masks[r][f as usize];
            for eps in 0..nverts as u32 {
                if eps & mask != 0 {
                    continue;
                }
                let next = map.len() as u32;
                map.insert((f, eps), next);
            }
        }
        index.push(map);
    }
    let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(m + 1);
    covers.push(vec![Vec::new(); nverts]);
    // Rank 1: (K-vertex w, eps off w) covers the two vertices filling bit w.
    {
        let mut lists = vec![Vec::new(); index[0].len()];
        for (&(w, eps), &i) in index[0].iter() {
            lists[i as usize] = vec![eps, eps | (1 << w)];
        }
        covers.push(lists);
    }
    for r in 1..m {
        let mut lists = vec![Vec::new(); index[r].len()];
        for (&(f, eps), &i) in index[r].iter() {
            let mut list = Vec::new();
            for &sub in k.covers_of(r, f as usize) {
                // Bits of F not in F' are free in the covered class.
                let free = masks[r][f as usize] & !masks[r - 1][sub as usize];
                // Subsets of `free` in increasing order.
                let mut assign = 0u32;
                loop {
                    list.push(index[r - 1][&(sub, eps | assign)]);
                    if assign == free {
                        break;
                    }
                    assign = assign.wrapping_sub(free) & free;
                }
            }
            lists[i as usize] = list;
        }
        covers.push(lists);
    }
    let out = FacePoset::build_with_limits(m + 1, covers, limits)?.validated()?;
    if check {
        let fg_k = FlagGraph::of_poset(k)?;
        let fg = FlagGraph::of_valid_poset(&out, limits)?;
        let aut_k = AutomorphismGroup::compute(&fg_k);
        let aut = AutomorphismGroup::compute(&fg);
        let expected = (1usize << v) * aut_k.order();
        if aut.order() != expected {
            return Err(PolytopeError::NotAPolytope(format!(
                "2^K group order {} differs from 2^{v} * {}",
                aut.order(),
                aut_k.order()
            )));
        }
    }
    Ok(out)
}

/// Chiral extension (2^{Q*})*: a 2-orbit polytope in class 2_{n-1} whose
/// facets are all isomorphic to the chiral, facet-describable input.
pub fn chiral_extension(q: &FacePoset) -> Result<FacePoset, PolytopeError> {
    chiral_extension_with_limits(q, &Limits::default())
}

pub fn chiral_extension_with_limits(q: &FacePoset, limits: &Limits) -> Result<FacePoset, PolytopeError> {
    let fg = FlagGraph::of_poset(q)?;
    let cls = classify_orbits(&fg, &AutomorphismGroup::compute(&fg))?;
    if cls.verdict != Verdict::Chiral {
        return Err(PolytopeError::Precondition(format!(
            "chiral extension requires a chiral input, got {}",
            cls.verdict
        )));
    }
    if !q.is_describable(DescribeMode::Facet) {
        return Err(PolytopeError::Precondition(
            "chiral extension requires a facet-describable input".into(),
        ));
    }
    let ext = two_power_with_limits(&q.dual(), false, limits)?;
    ext.dual().validated()
}

/// Why the alternating construction can or cannot proceed.
#[derive(Debug, Clone)]
pub struct AlternatingPreconditionReport {
    pub bipartite: bool,
    pub vertex_describable_p: bool,
    pub vertex_describable_vertex_figures: bool,
    pub facets_type_4q: bool,
    pub facets_vertex_transitive: bool,
    /// Two distinct 2-faces sharing an opposite-vertex pair, if any.
    pub opposite_vertex_clash: Option<(u32, u32)>,
}

impl AlternatingPreconditionReport {
    pub fn all_clear(&self) -> bool {
        self.bipartite
            && self.vertex_describable_p
            && self.vertex_describable_vertex_figures
            && self.facets_type_4q
            && self.facets_vertex_transitive
            && self.opposite_vertex_clash.is_none()
    }

    pub fn failure(&self) -> Option<String> {
        if !self.bipartite {
            return Some("edge graph is not bipartite".into());
        }
        if !self.vertex_describable_p {
            return Some("input is not vertex-describable".into());
        }
        if !self.vertex_describable_vertex_figures {
            return Some("a vertex-figure is not vertex-describable".into());
        }
        if !self.facets_type_4q {
            return Some("facets are not of type {4,q}".into());
        }
        if !self.facets_vertex_transitive {
            return Some("a facet is not vertex-transitive".into());
        }
        if let Some((a, b)) = self.opposite_vertex_clash {
            return Some(format!("2-faces {a} and {b} share an opposite-vertex pair"));
        }
        None
    }
}

pub fn alternating_preconditions(p: &FacePoset) -> Result<AlternatingPreconditionReport, PolytopeError> {
    if p.rank() != 4 {
        return Err(PolytopeError::WrongRank { expected: 4, got: p.rank() });
    }
    let bipartite = p.edge_bipartition().is_some();
    let vertex_describable_p = p.is_describable(DescribeMode::Vertex);
    let mut vertex_describable_vertex_figures = true;
    for v in 0..p.count(0) {
        let sec = p.section(SectionSpec {
            lower: FaceRef::Face { rank: 0, index: v },
            upper: FaceRef::Greatest,
        })?;
        if !sec.poset.is_describable(DescribeMode::Vertex) {
            vertex_describable_vertex_figures = false;
            break;
        }
    }
    let mut facets_type_4q = true;
    let mut facets_vertex_transitive = true;
    for f in 0..p.count(3) {
        let sec = p.section(SectionSpec {
            lower: FaceRef::Least,
            upper: FaceRef::Face { rank: 3, index: f },
        })?;
        match sec.poset.schlafli_type() {
            Some(ty) if ty[0] == 4 => {}
            _ => {
                facets_type_4q = false;
                break;
            }
        }
        let fg = FlagGraph::of_poset(&sec.poset)?;
        let aut = AutomorphismGroup::compute(&fg);
        if !transitivity(&fg, &aut, 0, TransitivityMode::Face)? {
            facets_vertex_transitive = false;
            break;
        }
    }
    let mut opposite_vertex_clash = None;
    if facets_type_4q {
        let mut seen: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        'outer: for s in 0..p.count(2) {
            let verts = p.faces_below(2, s, 0);
            if verts.len() != 4 {
                break;
            }
            for pair in diagonal_pairs(p, s, &verts) {
                if let Some(&other) = seen.get(&pair) {
                    opposite_vertex_clash = Some((other, s as u32));
                    break 'outer;
                }
                seen.insert(pair, s as u32);
            }
        }
    }
    Ok(AlternatingPreconditionReport {
        bipartite,
        vertex_describable_p,
        vertex_describable_vertex_figures,
        facets_type_4q,
        facets_vertex_transitive,
        opposite_vertex_clash,
    })
}

/// The two opposite-vertex pairs of a square 2-face.
fn diagonal_pairs(p: &FacePoset, s: usize, verts: &[u32]) -> Vec<Vec<u32>> {
    let v0 = verts[0];
    let mut neighbors: Vec<u32> = Vec::new();
    for &e in p.covers_of(2, s) {
        let ends = p.covers_of(1, e as usize);
        if ends.contains(&v0) {
            neighbors.extend(ends.iter().copied().filter(|&w| w != v0));
        }
    }
    let opposite = *verts
        .iter()
        .find(|&&w| w != v0 && !neighbors.contains(&w))
        .expect("square has an opposite vertex");
    let mut a = vec![v0, opposite];
    a.sort_unstable();
    let mut b: Vec<u32> = verts.iter().copied().filter(|w| !a.contains(w)).collect();
    b.sort_unstable();
    vec![a, b]
}

/// Alternating construction P^a of a rank-4 polytope with {4,q} facets:
/// yellow vertices, 2-face diagonals as edges, red vertex-figures within
/// facets as 2-faces, and halved facets plus red vertex-figures as facets.
pub fn alternating(p: &FacePoset) -> Result<FacePoset, PolytopeError> {
    let report = alternating_preconditions(p)?;
    if let Some(msg) = report.failure() {
        return Err(PolytopeError::Precondition(msg));
    }
    let bip = p.edge_bipartition().expect("checked bipartite");
    let mut is_yellow = vec![false; p.count(0)];
    let mut yellow_idx = vec![u32::MAX; p.count(0)];
    for (i, &v) in bip.yellow.iter().enumerate() {
        is_yellow[v as usize] = true;
        yellow_idx[v as usize] = i as u32;
    }
    let vertices = vec![Vec::new(); bip.yellow.len()];
    // One edge per 2-face: its yellow diagonal.
    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(p.count(2));
    for s in 0..p.count(2) {
        let ends: Vec<u32> = p
            .faces_below(2, s, 0)
            .iter()
            .copied()
            .filter(|&v| is_yellow[v as usize])
            .map(|v| yellow_idx[v as usize])
            .collect();
        if ends.len() != 2 {
            return Err(PolytopeError::Precondition(format!(
                "2-face {s} has {} yellow vertices, need 2",
                ends.len()
            )));
        }
        edges.push(ends);
    }
    // 2-faces: red vertex-figures within facets.
    let mut two_faces: Vec<Vec<u32>> = Vec::new();
    let mut two_face_idx: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for f in 0..p.count(3) {
        let face_verts = p.faces_below(3, f, 0);
        for &r in face_verts.iter().filter(|&&v| !is_yellow[v as usize]) {
            let list: Vec<u32> = p
                .faces_below(3, f, 2)
                .into_iter()
                .filter(|&s| p.faces_below(2, s as usize, 0).contains(&r))
                .collect();
            two_face_idx.insert((f as u32, r), two_faces.len() as u32);
            two_faces.push(list);
        }
    }
    // Facets: halved facets F^a, then red vertex-figures P/v.
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for f in 0..p.count(3) as u32 {
        facets.push(
            two_face_idx
                .iter()
                .filter(|&(&(tf, _), _)| tf == f)
                .map(|(_, &i)| i)
                .collect(),
        );
    }
    for &r in &bip.red {
        facets.push(
            p.faces_above(0, r as usize, 3)
                .into_iter()
                .map(|f| two_face_idx[&(f, r)])
                .collect(),
        );
    }
    FacePoset::build(4, vec![vertices, edges, two_faces, facets])?.validated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, hemicube, hypercube, polygon, simplex, tetrahedron};
    use crate::flag::{isomorphic, posets_isomorphic, FlagGraph};
    use crate::hereditary::hereditary_report;
    use crate::presentation as pres;

    fn orbits(p: &FacePoset) -> (crate::symmetry::OrbitClassification, usize) {
        let fg = FlagGraph::of_poset(p).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        (classify_orbits(&fg, &aut).unwrap(), aut.order())
    }

    #[test]
    fn medial_of_cube_is_cuboctahedron() {
        let m = medial(&cube()).unwrap();
        assert_eq!(m.counts(), vec![12, 24, 14]);
        let (cls, order) = orbits(&m);
        assert_eq!(cls.k, 2);
        assert_eq!(cls.class_i, Some(vec![0, 1]));
        assert_eq!(order, 48);
        let fg = FlagGraph::of_poset(&m).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        let rep = hereditary_report(&m, &fg, &aut).unwrap();
        assert!(rep.hereditary);
    }

    #[test]
    fn medial_of_tetrahedron_is_regular_octahedron() {
        let m = medial(&tetrahedron()).unwrap();
        assert_eq!(m.counts(), vec![6, 12, 8]);
        let (cls, order) = orbits(&m);
        assert_eq!(cls.verdict, Verdict::Regular);
        // Self-dual input: the medial group doubles.
        assert_eq!(order, 48);
        assert!(posets_isomorphic(&m, &cube().dual()).unwrap());
    }

    #[test]
    fn medial_doubles_flags() {
        for p in [cube(), tetrahedron(), hemicube()] {
            let m = medial(&p).unwrap();
            let a = FlagGraph::of_poset(&p).unwrap().flag_count();
            let b = FlagGraph::of_poset(&m).unwrap().flag_count();
            assert_eq!(b, 2 * a);
        }
    }

    #[test]
    fn medial_requires_rank_3() {
        assert!(matches!(
            medial(&polygon(4).unwrap()),
            Err(PolytopeError::WrongRank { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn halved_cube_is_tetrahedron() {
        let h = halved(&cube()).unwrap();
        assert_eq!(h.counts(), vec![4, 6, 4]);
        assert!(posets_isomorphic(&h, &tetrahedron()).unwrap());
    }

    #[test]
    fn halved_rejects_tetrahedron() {
        assert!(matches!(halved(&tetrahedron()), Err(PolytopeError::Precondition(_))));
    }

    #[test]
    fn halved_toroid_matches_group_halving() {
        // {4,4}_{2,2}: 64 flags; its halving is a self-dual {4,4} with 32.
        let t = crate::catalog::toroid_44_presentation(2, 2);
        let fg_in = pres::build_polytope(&t, 10_000).unwrap();
        assert_eq!(fg_in.flag_count(), 64);
        let p = fg_in.to_poset().unwrap();
        let h = halved(&p).unwrap();
        let fg_h = FlagGraph::of_poset(&h).unwrap();
        assert_eq!(fg_h.flag_count(), 32);
        assert_eq!(h.schlafli_type(), Some(vec![4, 4]));
        assert!(posets_isomorphic(&h, &h.dual()).unwrap());
        let table = pres::coset_enumerate(&t, &[], 10_000).unwrap();
        let g = pres::PermutationGroup::regular(&table);
        let half = pres::halving(&g, pres::Kind::Rotation, pres::HalvingVariant::Eta).unwrap();
        let fg_g = pres::flag_graph_from_rotation_group(&half).unwrap();
        assert!(isomorphic(&fg_h, &fg_g));
    }

    #[test]
    fn two_power_of_triangle_is_cube() {
        let t = two_power(&polygon(3).unwrap(), true).unwrap();
        assert_eq!(t.counts(), vec![8, 12, 6]);
        assert!(posets_isomorphic(&t, &cube()).unwrap());
    }

    #[test]
    fn two_power_of_square_has_group_order_128() {
        let t = two_power(&polygon(4).unwrap(), true).unwrap();
        assert_eq!(t.count(0), 16);
        let fg = FlagGraph::of_poset(&t).unwrap();
        assert_eq!(fg.flag_count(), 128);
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 128);
    }

    #[test]
    fn two_power_preserves_orbit_count() {
        let k = medial(&cube()).unwrap();
        let t = two_power(&k, false).unwrap();
        let (cls, _) = orbits(&t);
        assert_eq!(cls.k, 2);
        assert_eq!(cls.class_i, Some(vec![0, 1, 2]));
    }

    #[test]
    fn two_power_rejects_bad_inputs() {
        assert!(matches!(two_power(&hemicube(), false), Err(PolytopeError::Precondition(_))));
        assert!(matches!(
            two_power(&hypercube(5).unwrap(), false),
            Err(PolytopeError::Precondition(_))
        ));
    }

    #[test]
    fn chiral_extension_rejects_regular_input() {
        assert!(matches!(chiral_extension(&cube()), Err(PolytopeError::Precondition(_))));
    }

    #[test]
    fn alternating_tesseract_is_16_cell() {
        let t = hypercube(4).unwrap();
        let report = alternating_preconditions(&t).unwrap();
        assert!(report.all_clear(), "{report:?}");
        let a = alternating(&t).unwrap();
        assert_eq!(a.counts(), vec![8, 24, 32, 16]);
        assert_eq!(a.schlafli_type(), Some(vec![3, 3, 4]));
        let flags_in = FlagGraph::of_poset(&t).unwrap().flag_count();
        let flags_out = FlagGraph::of_poset(&a).unwrap().flag_count();
        assert_eq!(flags_in, flags_out);
    }

    #[test]
    fn alternating_rejects_simplex_facets() {
        let s = simplex(4).unwrap();
        let report = alternating_preconditions(&s).unwrap();
        assert!(!report.facets_type_4q);
        assert!(matches!(alternating(&s), Err(PolytopeError::Precondition(_))));
    }
}
