//! Named polytope instances: combinatorial builders plus presentation-backed
//! catalog entries.

use std::collections::BTreeMap;

use crate::error::PolytopeError;
use crate::poset::FacePoset;
use crate::presentation::{GroupPresentation, Kind, Word};

/// The m-gon as a rank-2 polytope.
pub fn polygon(m: usize) -> Result<FacePoset, PolytopeError> {
    if m < 2 {
        return Err(PolytopeError::Precondition("polygon needs at least 2 vertices".into()));
    }
    let vertices = vec![Vec::new(); m];
    let edges: Vec<Vec<u32>> = (0..m).map(|i| vec![i as u32, ((i + 1) % m) as u32]).collect();
    FacePoset::build(2, vec![vertices, edges])
}

/// The n-simplex: faces are the nonempty proper subsets of n+1 points.
pub fn simplex(n: usize) -> Result<FacePoset, PolytopeError> {
    if n < 1 {
        return Err(PolytopeError::BadRank(n));
    }
    // Faces at rank k are the (k+1)-subsets of {0..n}, in lexicographic order.
    let mut by_rank: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
    let mut subsets: Vec<Vec<u32>> = (0..=n as u32).map(|v| vec![v]).collect();
    for _ in 0..n {
        by_rank.push(subsets.clone());
        let mut next = Vec::new();
        for s in &subsets {
            for v in s.last().unwrap() + 1..=n as u32 {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        subsets = next;
    }
    let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
    covers.push(vec![Vec::new(); by_rank[0].len()]);
    for k in 1..n {
        let index: BTreeMap<&[u32], u32> = by_rank[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        covers.push(
            by_rank[k]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|drop| {
                            let sub: Vec<u32> = s
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != drop)
                                .map(|(_, &v)| v)
                                .collect();
                            index[sub.as_slice()]
                        })
                        .collect()
                })
                .collect(),
        );
    }
    FacePoset::build(n, covers)
}

/// The d-cube: rank-k faces fix d-k coordinates.
pub fn hypercube(d: usize) -> Result<FacePoset, PolytopeError> {
    if d < 1 {
        return Err(PolytopeError::BadRank(d));
    }
    // A face is (free coordinate mask, fixed bit values off the mask).
    let mut by_rank: Vec<Vec<(u32, u32)>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut faces = Vec::new();
        for mask in 0..(1u32 << d) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut fixed = Vec::new();
            collect_fixed(d, mask, 0, 0, &mut fixed);
            faces.extend(fixed.into_iter().map(|bits| (mask, bits)));
        }
        by_rank.push(faces);
    }
    let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(d);
    covers.push(vec![Vec::new(); by_rank[0].len()]);
    for k in 1..d {
        let index: BTreeMap<(u32, u32), u32> = by_rank[k - 1]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i as u32))
            .collect();
        covers.push(
            by_rank[k]
                .iter()
                .map(|&(mask, bits)| {
                    let mut list = Vec::new();
                    for c in 0..d {
                        let bit = 1u32 << c;
                        if mask & bit == 0 {
                            continue;
                        }
                        for val in [0, bits | bit] {
                            let sub_bits = (bits & !bit) | (val & bit);
                            list.push(index[&(mask & !bit, sub_bits)]);
                        }
                    }
                    list
                })
                .collect(),
        );
    }
    FacePoset::build(d, covers)
}

fn collect_fixed(d: usize, mask: u32, pos: usize, bits: u32, out: &mut Vec<u32>) {
    if pos == d {
        out.push(bits);
        return;
    }
    let bit = 1u32 << pos;
    if mask & bit != 0 {
        collect_fixed(d, mask, pos + 1, bits, out);
    } else {
        collect_fixed(d, mask, pos + 1, bits, out);
        collect_fixed(d, mask, pos + 1, bits | bit, out);
    }
}

pub fn cube() -> FacePoset {
    hypercube(3).expect("3-cube")
}

pub fn octahedron() -> FacePoset {
    cube().dual()
}

pub fn tetrahedron() -> FacePoset {
    simplex(3).expect("3-simplex")
}

/// The hemicube {4,3}/2: 4 vertices, 6 edges, 3 squares.
pub fn hemicube() -> FacePoset {
    let vertices = vec![Vec::new(); 4];
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for a in 0u32..4 {
        for b in a + 1..4 {
            edges.push(vec![a, b]);
        }
    }
    let edge_idx = |a: u32, b: u32| -> u32 {
        edges.iter().position(|e| e == &vec![a.min(b), a.max(b)]).unwrap() as u32
    };
    // Each square is a 4-cycle on all four vertices.
    let cycles: [[u32; 4]; 3] = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
    let squares: Vec<Vec<u32>> = cycles
        .iter()
        .map(|cyc| (0..4).map(|i| edge_idx(cyc[i], cyc[(i + 1) % 4])).collect())
        .collect();
    FacePoset::build(3, vec![vertices, edges, squares]).expect("hemicube")
}

/// The truncated tetrahedron: vertices are ordered pairs (i,j), i != j, of
/// the 4 tetrahedron vertices; triangles sit at each i, hexagons at each
/// 3-subset.
pub fn truncated_tetrahedron() -> FacePoset {
    let mut verts: Vec<(u32, u32)> = Vec::new();
    for i in 0u32..4 {
        for j in 0u32..4 {
            if i != j {
                verts.push((i, j));
            }
        }
    }
    let v_idx = |i: u32, j: u32| verts.iter().position(|&p| p == (i, j)).unwrap() as u32;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // Triangle edges (i,j)-(i,k) and cross edges (i,j)-(j,i).
    for i in 0u32..4 {
        for j in 0u32..4 {
            for k in j + 1..4 {
                if i != j && i != k {
                    edges.push((v_idx(i, j), v_idx(i, k)));
                }
            }
        }
    }
    for i in 0u32..4 {
        for j in i + 1..4 {
            edges.push((v_idx(i, j), v_idx(j, i)));
        }
    }
    let e_idx = |a: u32, b: u32| {
        let key = (a.min(b), a.max(b));
        edges.iter().position(|&(x, y)| (x.min(y), x.max(y)) == key).unwrap() as u32
    };
    let mut faces: Vec<Vec<u32>> = Vec::new();
    for i in 0u32..4 {
        let tri: Vec<u32> = (0u32..4).filter(|&j| j != i).collect();
        faces.push(vec![
            e_idx(v_idx(i, tri[0]), v_idx(i, tri[1])),
            e_idx(v_idx(i, tri[1]), v_idx(i, tri[2])),
            e_idx(v_idx(i, tri[0]), v_idx(i, tri[2])),
        ]);
    }
    for a in 0u32..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                // Hexagon cycle (a,b)-(a,c)-(c,a)-(c,b)-(b,c)-(b,a)-.
                let cyc = [
                    v_idx(a, b),
                    v_idx(a, c),
                    v_idx(c, a),
                    v_idx(c, b),
                    v_idx(b, c),
                    v_idx(b, a),
                ];
                faces.push((0..6).map(|i| e_idx(cyc[i], cyc[(i + 1) % 6])).collect());
            }
        }
    }
    let vertices = vec![Vec::new(); verts.len()];
    let edge_covers: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    FacePoset::build(3, vec![vertices, edge_covers, faces]).expect("truncated tetrahedron")
}

/// Rotation presentation of the toroid {4,4}_{(b,c)}: the translation
/// t_x = s1 s2^3 together with its s2-conjugate generate the lattice, so the
/// extra relator is t_x^b s2 t_x^c s2^3.
pub fn toroid_44_presentation(b: usize, c: usize) -> GroupPresentation {
    let tx: Word = vec![1, 2, 2, 2];
    let mut rel: Word = Vec::new();
    for _ in 0..b {
        rel.extend_from_slice(&tx);
    }
    rel.push(2);
    for _ in 0..c {
        rel.extend_from_slice(&tx);
    }
    rel.extend_from_slice(&[2, 2, 2]);
    let mut relators = GroupPresentation::mandatory_relators(Kind::Rotation, 2);
    relators.push(vec![1; 4]);
    relators.push(vec![2; 4]);
    relators.push(rel);
    GroupPresentation {
        kind: Kind::Rotation,
        rank: 3,
        ngens: 2,
        order: Some(4 * (b * b + c * c)),
        relators,
        subgroup: Vec::new(),
    }
}

/// Reflection presentation of the Coxeter group [p_1, ..., p_{n-1}].
pub fn coxeter_presentation(ps: &[usize]) -> GroupPresentation {
    let rank = ps.len() + 1;
    let mut relators: Vec<Word> = Vec::new();
    for k in 0..rank as i16 {
        relators.push(vec![k + 1, k + 1]);
    }
    for (i, &p) in ps.iter().enumerate() {
        let pair = [i as i16 + 1, i as i16 + 2];
        let mut w = Vec::with_capacity(2 * p);
        for _ in 0..p {
            w.extend_from_slice(&pair);
        }
        relators.push(w);
    }
    for i in 0..rank as i16 {
        for j in i + 2..rank as i16 {
            relators.push(vec![i + 1, j + 1, i + 1, j + 1]);
        }
    }
    GroupPresentation {
        kind: Kind::Reflection,
        rank,
        ngens: rank,
        order: None,
        relators,
        subgroup: Vec::new(),
    }
}

/// How a catalog entry is produced.
enum Source {
    Poset(fn() -> Result<FacePoset, PolytopeError>),
    Grp(&'static str),
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Flag count the built instance must have.
    pub expected_flags: usize,
    source: Source,
}

use crate::error::{IoError, PolytopeError as PE};
use crate::flag::FlagGraph;
use crate::presentation::{build_polytope, parse_presentation};

fn medial_cube() -> Result<FacePoset, PE> {
    crate::constructions::medial(&cube())
}

fn medial_dodecahedron() -> Result<FacePoset, PE> {
    let p = built_from_grp("dodecahedron", include_str!("../data/dodecahedron.grp"))
        .map_err(|e| PE::Precondition(e.to_string()))?;
    crate::constructions::medial(&p)
}

fn entries() -> &'static [CatalogEntry] {
    macro_rules! grp {
        ($name:literal, $desc:literal, $flags:expr) => {
            CatalogEntry {
                name: $name,
                description: $desc,
                expected_flags: $flags,
                source: Source::Grp(include_str!(concat!("../data/", $name, ".grp"))),
            }
        };
    }
    macro_rules! poset {
        ($name:literal, $desc:literal, $flags:expr, $f:expr) => {
            CatalogEntry {
                name: $name,
                description: $desc,
                expected_flags: $flags,
                source: Source::Poset($f),
            }
        };
    }
    static ENTRIES: std::sync::OnceLock<Vec<CatalogEntry>> = std::sync::OnceLock::new();
    ENTRIES.get_or_init(|| {
        vec![
            poset!("tetrahedron", "regular simplex {3,3}", 24, || simplex(3)),
            poset!("cube", "regular cube {4,3}", 48, || hypercube(3)),
            poset!("octahedron", "regular octahedron {3,4}", 48, || Ok(cube().dual())),
            grp!("dodecahedron", "regular dodecahedron {5,3}", 120),
            grp!("icosahedron", "regular icosahedron {3,5}", 120),
            poset!("cuboctahedron", "medial of the cube, 2-orbit", 96, medial_cube),
            poset!(
                "icosidodecahedron",
                "medial of the dodecahedron, 2-orbit",
                240,
                medial_dodecahedron
            ),
            poset!(
                "truncated-tetrahedron",
                "truncated tetrahedron, 3-orbit",
                72,
                || Ok(truncated_tetrahedron())
            ),
            poset!("hemicube", "hemicube {4,3}/2, regular", 24, || Ok(hemicube())),
            grp!("t44-1-2", "chiral toroid {4,4}_(1,2)", 40),
            grp!("t44-1-3", "chiral toroid {4,4}_(1,3)", 80),
            grp!("t44-2-0", "regular toroid {4,4}_(2,0)", 32),
            grp!("t44-2-1", "chiral toroid {4,4}_(2,1)", 40),
            grp!("t44-2-2", "regular toroid {4,4}_(2,2)", 64),
            grp!("t63-2-2", "regular toroid {6,3}_(2,2)", 144),
            grp!("n98-6", "regular map {5,5}_12 with 1920 flags", 1920),
            grp!("u5512", "universal {5,5|12}_12,5, 30720 flags", 30720),
            grp!("t434-4-0-0", "cubic toroid {4,3,4}_(4,0,0)", 3072),
            grp!("t4444-1-3", "chiral 4-toroid {{4,4}_1,3,{4,4}_1,3}", 4000),
            grp!("t4444-1-3e", "as t4444-1-3, enantiomorphic vertex-figures", 1920),
        ]
    })
}

pub fn catalog_entries() -> &'static [CatalogEntry] {
    entries()
}

pub fn catalog_names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

/// Text of a presentation-backed entry, honoring the APOLY_CATALOG_DIR override.
fn grp_text(name: &str, builtin: &'static str) -> Result<String, IoError> {
    if let Ok(dir) = std::env::var("APOLY_CATALOG_DIR") {
        let path = std::path::Path::new(&dir).join(format!("{name}.grp"));
        if path.exists() {
            return Ok(std::fs::read_to_string(path)?);
        }
    }
    Ok(builtin.to_string())
}

fn built_from_grp(name: &str, builtin: &'static str) -> Result<FacePoset, IoError> {
    let pres = parse_presentation(&grp_text(name, builtin)?)?;
    let limit = pres.order.map(|o| 2 * o + 16).unwrap_or(100_000);
    let fg = build_polytope(&pres, limit)?;
    Ok(fg.to_poset()?)
}

/// Presentation behind a catalog entry, for entries backed by a .grp file.
pub fn catalog_presentation(name: &str) -> Result<GroupPresentation, IoError> {
    let entry = entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| IoError::UnknownEntry(name.into()))?;
    match entry.source {
        Source::Grp(text) => Ok(parse_presentation(&grp_text(name, text)?)?),
        Source::Poset(_) => Err(IoError::AssertionFailed {
            name: name.into(),
            msg: "entry is not presentation-backed".into(),
        }),
    }
}

/// Build a named instance, validate it, and check its recorded assertions.
pub fn catalog_get(name: &str) -> Result<FacePoset, IoError> {
    if let Some(m) = name.strip_prefix("polygon-").and_then(|s| s.parse::<usize>().ok()) {
        return Ok(polygon(m)?.validated()?);
    }
    if let Some(n) = name.strip_prefix("simplex-").and_then(|s| s.parse::<usize>().ok()) {
        return Ok(simplex(n)?.validated()?);
    }
    let entry = entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| IoError::UnknownEntry(name.into()))?;
    let poset = match entry.source {
        Source::Poset(f) => f()?.validated()?,
        Source::Grp(text) => built_from_grp(name, text)?,
    };
    let flags = FlagGraph::of_poset(&poset)?.flag_count();
    if flags != entry.expected_flags {
        return Err(IoError::AssertionFailed {
            name: name.into(),
            msg: format!("expected {} flags, built {flags}", entry.expected_flags),
        });
    }
    Ok(poset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{posets_isomorphic, FlagGraph};
    use crate::symmetry::{classify_orbits, AutomorphismGroup, Verdict};

    #[test]
    fn every_entry_builds_and_passes_assertions() {
        for entry in catalog_entries() {
            if entry.name == "u5512" {
                continue; // exercised separately, the build is the slowest in the catalog
            }
            let p = catalog_get(entry.name).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            assert!(p.rank() >= 2, "{}", entry.name);
        }
    }

    #[test]
    fn parametric_entries() {
        assert_eq!(catalog_get("polygon-7").unwrap().counts(), vec![7, 7]);
        assert_eq!(catalog_get("simplex-4").unwrap().counts(), vec![5, 10, 10, 5]);
        assert!(matches!(catalog_get("nonesuch"), Err(IoError::UnknownEntry(_))));
    }

    #[test]
    fn dodecahedron_and_icosahedron_are_dual_regulars() {
        let d = catalog_get("dodecahedron").unwrap();
        let i = catalog_get("icosahedron").unwrap();
        assert_eq!(d.counts(), vec![20, 30, 12]);
        assert_eq!(i.counts(), vec![12, 30, 20]);
        assert!(posets_isomorphic(&d.dual(), &i).unwrap());
    }

    #[test]
    fn toroid_entries_have_expected_verdicts() {
        for (name, want) in [
            ("t44-1-2", Verdict::Chiral),
            ("t44-2-0", Verdict::Regular),
            ("t44-2-2", Verdict::Regular),
            ("t63-2-2", Verdict::Regular),
        ] {
            let p = catalog_get(name).unwrap();
            let fg = FlagGraph::of_poset(&p).unwrap();
            let aut = AutomorphismGroup::compute(&fg);
            assert_eq!(classify_orbits(&fg, &aut).unwrap().verdict, want, "{name}");
        }
    }

    #[test]
    fn t44_2_1_is_mirror_of_t44_1_2() {
        let a = catalog_get("t44-1-2").unwrap();
        let b = catalog_get("t44-2-1").unwrap();
        assert!(posets_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn t63_2_2_counts() {
        let p = catalog_get("t63-2-2").unwrap();
        assert_eq!(p.counts(), vec![24, 36, 12]);
        assert_eq!(p.schlafli_type(), Some(vec![6, 3]));
    }

    #[test]
    fn rank_4_toroid_counts() {
        let p = catalog_get("t4444-1-3").unwrap();
        assert_eq!(p.count(0), 50);
        assert_eq!(p.count(3), 50);
        let fg = FlagGraph::of_poset(&p).unwrap();
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 2000);
        assert_eq!(classify_orbits(&fg, &aut).unwrap().verdict, Verdict::Chiral);
    }

    #[test]
    fn cubic_toroid_counts() {
        let p = catalog_get("t434-4-0-0").unwrap();
        assert_eq!(p.counts(), vec![64, 192, 192, 64]);
        assert_eq!(p.schlafli_type(), Some(vec![4, 3, 4]));
    }

    #[test]
    fn catalog_dir_override_wins() {
        let dir = std::env::temp_dir().join("apoly-catalog-test");
        std::fs::create_dir_all(&dir).unwrap();
        // a fake t44-2-0 that is really {4,4}_(1,2)
        std::fs::write(
            dir.join("t44-2-0.grp"),
            "cgroup 1\nkind rotation\nrank 3\norder 20\nauto-relators on\n\
             rel g1^4\nrel g2^4\nrel (g1 g2^3)^1 g2 (g1 g2^3)^2 g2^3\n",
        )
        .unwrap();
        std::env::set_var("APOLY_CATALOG_DIR", &dir);
        let got = catalog_get("t44-2-0");
        std::env::remove_var("APOLY_CATALOG_DIR");
        // the override builds 40 flags, tripping the 32-flag assertion
        assert!(matches!(got, Err(IoError::AssertionFailed { .. })));
    }
}
