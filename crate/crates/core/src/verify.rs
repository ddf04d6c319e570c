//! Claim-by-claim verification suite: each criterion rebuilds its instances
//! from the catalog and the constructions, checks every number and structural
//! property, and reports one pass/fail outcome.

use crate::catalog::{catalog_entries, catalog_get, catalog_presentation, cube, tetrahedron};
use crate::constructions::{
    alternating, alternating_preconditions, chiral_extension, medial, two_power,
};
use crate::error::PolytopeError;
use crate::flag::{posets_isomorphic, FlagGraph};
use crate::hereditary::{hereditary_report, j_face_hereditary, orbit_rep_faces, HereditaryReport};
use crate::poset::{FacePoset, FaceRef, SectionSpec};
use crate::presentation::coset_enumerate;
use crate::symmetry::{
    classify_orbits, transitivity, AutomorphismGroup, OrbitClassification, TransitivityMode,
    Verdict,
};

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

macro_rules! check {
    ($errs:ident, $cond:expr, $($msg:tt)*) => {
        if !$cond {
            $errs.push(format!($($msg)*));
        }
    };
}

/// A polytope with its full symmetry analysis.
struct Instance {
    p: FacePoset,
    fg: FlagGraph,
    aut: AutomorphismGroup,
    cls: OrbitClassification,
}

impl Instance {
    fn of(p: FacePoset) -> Result<Instance, String> {
        let fg = FlagGraph::of_poset(&p).map_err(|e| e.to_string())?;
        let aut = AutomorphismGroup::compute(&fg);
        let cls = classify_orbits(&fg, &aut).map_err(|e| e.to_string())?;
        Ok(Instance { p, fg, aut, cls })
    }

    fn named(name: &str) -> Result<Instance, String> {
        Instance::of(catalog_get(name).map_err(|e| format!("{name}: {e}"))?)
    }

    fn hereditary(&self) -> Result<HereditaryReport, String> {
        hereditary_report(&self.p, &self.fg, &self.aut).map_err(|e| e.to_string())
    }

    /// One analyzed section per facet orbit.
    fn facet_rep_sections(&self) -> Result<Vec<Instance>, String> {
        let n = self.p.rank();
        orbit_rep_faces(&self.p, &self.fg, &self.aut, n - 1)
            .into_iter()
            .map(|f| {
                let spec = SectionSpec {
                    lower: FaceRef::Least,
                    upper: FaceRef::Face { rank: n - 1, index: f as usize },
                };
                let sec = self.p.section(spec).map_err(|e| e.to_string())?;
                Instance::of(sec.poset)
            })
            .collect()
    }
}

fn two_orbit_class(cls: &OrbitClassification) -> Option<Vec<usize>> {
    cls.class_i.clone()
}

fn expect_two_orbit(errs: &mut Vec<String>, cls: &OrbitClassification, class: &[usize], what: &str) {
    check!(errs, cls.k == 2, "{what}: expected k=2, got k={}", cls.k);
    check!(
        errs,
        two_orbit_class(cls).as_deref() == Some(class),
        "{what}: expected class {class:?}, got {:?}",
        cls.class_i
    );
}

fn outcome(name: &'static str, result: Result<String, Vec<String>>) -> Outcome {
    match result {
        Ok(detail) => Outcome { name, passed: true, detail },
        Err(errs) => Outcome { name, passed: false, detail: errs.join("; ") },
    }
}

fn wrap<F: FnOnce(&mut Vec<String>) -> Result<String, String>>(f: F) -> Result<String, Vec<String>> {
    let mut errs = Vec::new();
    match f(&mut errs) {
        Ok(detail) if errs.is_empty() => Ok(detail),
        Ok(_) => Err(errs),
        Err(e) => {
            errs.push(e);
            Err(errs)
        }
    }
}

/// Criterion 1: medials of the Platonic instances.
fn c1_medial_suite() -> Result<String, Vec<String>> {
    wrap(|errs| {
        for (input, expected, name) in
            [("cube", "cuboctahedron", "medial(cube)"), ("dodecahedron", "icosidodecahedron", "medial(dodecahedron)")]
        {
            let p = catalog_get(input).map_err(|e| e.to_string())?;
            let m = Instance::of(medial(&p).map_err(|e| e.to_string())?)?;
            let want = catalog_get(expected).map_err(|e| e.to_string())?;
            check!(
                errs,
                posets_isomorphic(&m.p, &want).map_err(|e| e.to_string())?,
                "{name} is not isomorphic to the {expected}"
            );
            expect_two_orbit(errs, &m.cls, &[0, 1], name);
            let rep = m.hereditary()?;
            check!(errs, rep.hereditary, "{name}: not hereditary");
        }
        let t = Instance::of(medial(&tetrahedron()).map_err(|e| e.to_string())?)?;
        check!(errs, t.cls.verdict == Verdict::Regular, "medial(tetrahedron) is not regular");
        Ok("cuboctahedron and icosidodecahedron reproduced, medial(tetrahedron) regular".into())
    })
}

/// Criterion 2: the 1920-flag {5,5} map and its medial.
fn c2_n98_6() -> Result<String, Vec<String>> {
    wrap(|errs| {
        let n = Instance::named("n98-6")?;
        check!(errs, n.fg.flag_count() == 1920, "n98-6 has {} flags, want 1920", n.fg.flag_count());
        check!(
            errs,
            n.p.schlafli_type() == Some(vec![5, 5]),
            "n98-6 type is {:?}, want {{5,5}}",
            n.p.schlafli_type()
        );
        let m = Instance::of(medial(&n.p).map_err(|e| e.to_string())?)?;
        check!(
            errs,
            m.p.schlafli_type() == Some(vec![5, 4]),
            "medial type is {:?}, want {{5,4}}",
            m.p.schlafli_type()
        );
        check!(errs, m.aut.order() == 1920, "medial group order {}, want 1920", m.aut.order());
        check!(errs, m.fg.flag_count() == 3840, "medial has {} flags, want 3840", m.fg.flag_count());
        expect_two_orbit(errs, &m.cls, &[0, 1], "medial(n98-6)");
        check!(errs, m.cls.verdict != Verdict::Regular, "medial(n98-6) must not be regular");
        let rep = m.hereditary()?;
        check!(errs, rep.hereditary, "medial(n98-6) is not hereditary");
        Ok("{5,5} with 1920 flags; medial {5,4}, 3840 flags, class 2_{0,1}, hereditary".into())
    })
}

/// Criterion 3: coset count of the universal {5,5|12}_{12,5}.
fn c3_u5512() -> Result<String, Vec<String>> {
    wrap(|errs| {
        let pres = catalog_presentation("u5512").map_err(|e| e.to_string())?;
        let table = coset_enumerate(&pres, &[], 200_000).map_err(|e| e.to_string())?;
        check!(
            errs,
            table.coset_count() == 30720,
            "enumeration found {} cosets, want 30720",
            table.coset_count()
        );
        Ok("universal {5,5|12}_{12,5} has exactly 30720 cosets".into())
    })
}

fn rank3_catalog_names() -> Vec<&'static str> {
    catalog_entries()
        .iter()
        .map(|e| e.name)
        .filter(|n| *n != "u5512" && *n != "t434-4-0-0" && !n.starts_with("t4444"))
        .collect()
}

/// Criterion 4: hereditary iff regular or class 2_{0,1}, over rank-3 entries.
fn c4_two_orbit_theorem() -> Result<String, Vec<String>> {
    wrap(|errs| {
        let names = rank3_catalog_names();
        let count = names.len();
        for name in names {
            let inst = Instance::named(name)?;
            if inst.p.rank() != 3 {
                continue;
            }
            let rep = inst.hereditary()?;
            let predicted = inst.cls.verdict == Verdict::Regular
                || two_orbit_class(&inst.cls).as_deref() == Some(&[0, 1]);
            check!(
                errs,
                rep.hereditary == predicted,
                "{name}: hereditary={} but verdict {} class {:?}",
                rep.hereditary,
                inst.cls.verdict,
                inst.cls.class_i
            );
        }
        Ok(format!("hereditary matches (regular or 2_{{0,1}}) on {count} rank-3 entries"))
    })
}

/// Criterion 5: the 2^K suite.
fn c5_two_power_suite() -> Result<String, Vec<String>> {
    wrap(|errs| {
        let tri = crate::catalog::polygon(3).map_err(|e| e.to_string())?;
        let t = two_power(&tri, true).map_err(|e| e.to_string())?;
        check!(
            errs,
            posets_isomorphic(&t, &cube()).map_err(|e| e.to_string())?,
            "2^triangle is not the cube"
        );
        let sq = crate::catalog::polygon(4).map_err(|e| e.to_string())?;
        let s = Instance::of(two_power(&sq, true).map_err(|e| e.to_string())?)?;
        check!(errs, s.aut.order() == 128, "|Gamma(2^square)| = {}, want 128", s.aut.order());
        let co = catalog_get("cuboctahedron").map_err(|e| e.to_string())?;
        let tc = Instance::of(two_power(&co, false).map_err(|e| e.to_string())?)?;
        expect_two_orbit(errs, &tc.cls, &[0, 1, 2], "2^cuboctahedron");
        let toroid = catalog_get("t44-1-2").map_err(|e| e.to_string())?;
        let tt = Instance::of(two_power(&toroid, true).map_err(|e| e.to_string())?)?;
        expect_two_orbit(errs, &tt.cls, &[0], "2^t44-1-2");
        Ok("2^triangle=cube, |Gamma(2^square)|=128, 2^cubocta in 2_{0,1,2}, 2^chiral in 2_{0}".into())
    })
}

/// Criterion 6: the chiral extension of the smallest facet-describable
/// chiral toroid, which is {4,4}_(1,2).
fn c6_chiral_extension() -> Result<String, Vec<String>> {
    wrap(|errs| {
        let q = Instance::named("t44-1-2")?;
        check!(errs, q.cls.verdict == Verdict::Chiral, "t44-1-2 is not chiral");
        check!(
            errs,
            q.p.is_describable(crate::poset::DescribeMode::Facet),
            "t44-1-2 is not facet-describable"
        );
        let e = Instance::of(chiral_extension(&q.p).map_err(|e| e.to_string())?)?;
        let n = e.p.rank();
        expect_two_orbit(errs, &e.cls, &[n - 1], "extension");
        let rep = e.hereditary()?;
        check!(errs, rep.hereditary, "extension is not hereditary");
        let f = q.p.count(2);
        let want = (1usize << f) * q.aut.order();
        check!(errs, e.aut.order() == want, "group order {}, want 2^{f}*{}", e.aut.order(), q.aut.order());
        for sec in e.facet_rep_sections()? {
            check!(
                errs,
                posets_isomorphic(&sec.p, &q.p).map_err(|e| e.to_string())?,
                "an extension facet is not isomorphic to t44-1-2"
            );
        }
        Ok(format!("(2^{{Q*}})* of {{4,4}}_(1,2): class 2_{{{}}}, hereditary, |Gamma|={want}", n - 1))
    })
}

/// Criterion 7: the truncated tetrahedron profile; slow part covers 2^K of it.
fn c7_truncated_tetrahedron(slow: bool) -> Result<String, Vec<String>> {
    wrap(|errs| {
        let t = Instance::named("truncated-tetrahedron")?;
        check!(errs, t.cls.k == 3, "k={}, want 3", t.cls.k);
        let h1 = j_face_hereditary(&t.p, &t.fg, &t.aut, 1, false).map_err(|e| e.to_string())?;
        let h2 = j_face_hereditary(&t.p, &t.fg, &t.aut, 2, false).map_err(|e| e.to_string())?;
        check!(errs, h1, "not 1-face hereditary");
        check!(errs, !h2, "unexpectedly 2-face hereditary");
        let rep = t.hereditary()?;
        check!(errs, !rep.hereditary, "unexpectedly hereditary");
        check!(errs, !rep.chirally_hereditary, "unexpectedly chirally hereditary");
        if !slow {
            return Ok("3-orbit, 1-face hereditary only (slow 2^K part skipped)".into());
        }
        let big = Instance::of(two_power(&t.p, false).map_err(|e| e.to_string())?)?;
        let b2 = j_face_hereditary(&big.p, &big.fg, &big.aut, 2, false).map_err(|e| e.to_string())?;
        let b3 = j_face_hereditary(&big.p, &big.fg, &big.aut, 3, false).map_err(|e| e.to_string())?;
        check!(errs, b2, "2^K: not 2-face hereditary");
        check!(errs, !b3, "2^K: unexpectedly 3-face hereditary");
        let mut flag_counts: Vec<usize> = Vec::new();
        for sec in big.facet_rep_sections()? {
            flag_counts.push(sec.fg.flag_count());
            if sec.fg.flag_count() == 48 {
                check!(
                    errs,
                    posets_isomorphic(&sec.p, &cube()).map_err(|e| e.to_string())?,
                    "48-flag facet of 2^K is not a cube"
                );
            }
        }
        flag_counts.sort_unstable();
        check!(
            errs,
            flag_counts == vec![48, 768],
            "2^K facet flag counts {flag_counts:?}, want [48, 768]"
        );
        Ok("3-orbit profile and the 2^K facet census both reproduced".into())
    })
}

/// Criterion 8: the alternating suite.
fn c8_alternating(slow: bool) -> Result<String, Vec<String>> {
    wrap(|errs| {
        let p = Instance::named("t434-4-0-0")?;
        let pre = alternating_preconditions(&p.p).map_err(|e| e.to_string())?;
        check!(errs, pre.all_clear(), "4x4x4 toroid preconditions: {pre:?}");
        let a = Instance::of(alternating(&p.p).map_err(|e| e.to_string())?)?;
        check!(
            errs,
            a.fg.flag_count() == p.fg.flag_count(),
            "flag count {} differs from input {}",
            a.fg.flag_count(),
            p.fg.flag_count()
        );
        let mut types: Vec<Vec<usize>> = Vec::new();
        for sec in a.facet_rep_sections()? {
            types.push(sec.p.schlafli_type().unwrap_or_default());
        }
        types.sort();
        check!(errs, types == vec![vec![3, 3], vec![3, 4]], "facet types {types:?}");
        // vertex-figures are the medial of the octahedron vertex-figure
        let vf_spec = SectionSpec {
            lower: FaceRef::Face { rank: 0, index: 0 },
            upper: FaceRef::Greatest,
        };
        let vf = a.p.section(vf_spec).map_err(|e| e.to_string())?;
        let cubocta = catalog_get("cuboctahedron").map_err(|e| e.to_string())?;
        check!(
            errs,
            posets_isomorphic(&vf.poset, &cubocta).map_err(|e| e.to_string())?,
            "vertex-figure is not a cuboctahedron"
        );
        // every edge in 4 facets, kinds alternating (adjacent facets differ)
        let nfacets_first = p.p.count(3);
        for e in 0..a.p.count(1) {
            let facets = a.p.faces_above(1, e, 3);
            check!(errs, facets.len() == 4, "edge {e} lies in {} facets", facets.len());
            let first: Vec<_> =
                facets.iter().filter(|&&f| (f as usize) < nfacets_first).collect();
            check!(errs, first.len() == 2, "edge {e}: facet kinds not 2+2");
        }
        for g in 0..a.p.count(2) {
            let two = a.p.covered_by(2, g);
            let kinds: Vec<bool> = two.iter().map(|&f| (f as usize) < nfacets_first).collect();
            check!(errs, kinds[0] != kinds[1], "2-face {g}: adjacent facets of the same kind");
        }
        let rep = a.hereditary()?;
        check!(errs, rep.hereditary, "alternating 4x4x4 toroid is not hereditary");
        if !slow {
            return Ok("4x4x4 toroid alternation reproduced (slow toroid part skipped)".into());
        }
        // the chiral rank-4 toroid
        let q = Instance::named("t4444-1-3")?;
        check!(errs, q.p.count(0) == 50 && q.p.count(3) == 50, "toroid counts off");
        check!(errs, q.aut.order() == 2000, "toroid group order {}", q.aut.order());
        let qa = Instance::of(alternating(&q.p).map_err(|e| e.to_string())?)?;
        check!(errs, qa.cls.k == 4, "P^a has k={}, want 4", qa.cls.k);
        let qrep = qa.hereditary()?;
        check!(errs, qrep.hereditary, "P^a is not hereditary");
        let secs = qa.facet_rep_sections()?;
        let mut matched = [false, false];
        for sec in &secs {
            check!(errs, sec.cls.verdict == Verdict::Chiral, "a P^a facet is not chiral");
            for (slot, name) in [(0, "t44-1-3"), (1, "t44-1-2")] {
                let want = catalog_get(name).map_err(|e| e.to_string())?;
                if posets_isomorphic(&sec.p, &want).map_err(|e| e.to_string())? {
                    matched[slot] = true;
                }
            }
        }
        check!(
            errs,
            matched == [true, true],
            "P^a facet kinds are not {{4,4}}_(1,3) and {{4,4}}_(1,2)"
        );
        // the enantiomorphic-vertex-figure variant is rejected with a clash
        let e = catalog_get("t4444-1-3e").map_err(|e| e.to_string())?;
        let epre = alternating_preconditions(&e).map_err(|e| e.to_string())?;
        check!(errs, epre.opposite_vertex_clash.is_some(), "no opposite-vertex clash found");
        check!(
            errs,
            matches!(alternating(&e), Err(PolytopeError::Precondition(_))),
            "alternating unexpectedly accepted the enantiomorphic variant"
        );
        Ok("both alternation blueprints and the enantiomorphic rejection reproduced".into())
    })
}

/// Criterion 9: structural property suite over the catalog and the produced
/// chiral-facetted instances.
fn c9_property_suite(slow: bool) -> Result<String, Vec<String>> {
    wrap(|errs| {
        let mut instances: Vec<(String, Instance)> = Vec::new();
        for entry in catalog_entries() {
            if entry.name == "u5512" && !slow {
                continue;
            }
            let inst = Instance::named(entry.name)?;
            if inst.p.rank() >= 3 {
                instances.push((entry.name.to_string(), inst));
            }
        }
        let q = catalog_get("t44-1-2").map_err(|e| e.to_string())?;
        instances.push((
            "extension(t44-1-2)".into(),
            Instance::of(chiral_extension(&q).map_err(|e| e.to_string())?)?,
        ));
        let count = instances.len();
        for (name, inst) in &instances {
            let n = inst.p.rank();
            // free action: every orbit has exactly |Gamma| flags
            let mut orbit_sizes = std::collections::BTreeMap::new();
            for &label in &inst.cls.orbit_of {
                *orbit_sizes.entry(label).or_insert(0usize) += 1;
            }
            check!(
                errs,
                orbit_sizes.values().all(|&s| s == inst.aut.order()),
                "{name}: group action on flags is not free"
            );
            check!(
                errs,
                inst.cls.k * inst.aut.order() == inst.fg.flag_count(),
                "{name}: k*|Gamma| != flags"
            );
            // hereditary census (its internal closure checks run here too)
            let rep = inst.hereditary()?;
            let secs = inst.facet_rep_sections()?;
            // transitivity propagation when hereditary
            if rep.hereditary {
                for i in 0..=n - 2 {
                    let chain_all = secs
                        .iter()
                        .map(|s| transitivity(&s.fg, &s.aut, i, TransitivityMode::Chain))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?;
                    if chain_all.iter().all(|&b| b) {
                        check!(
                            errs,
                            transitivity(&inst.fg, &inst.aut, i, TransitivityMode::Chain)
                                .map_err(|e| e.to_string())?,
                            "{name}: facets 0..{i}-chain transitive but polytope is not"
                        );
                    }
                    let face_all = secs
                        .iter()
                        .map(|s| transitivity(&s.fg, &s.aut, i, TransitivityMode::Face))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?;
                    if face_all.iter().all(|&b| b) {
                        check!(
                            errs,
                            transitivity(&inst.fg, &inst.aut, i, TransitivityMode::Face)
                                .map_err(|e| e.to_string())?,
                            "{name}: facets {i}-face transitive but polytope is not"
                        );
                    }
                }
            }
            let verdicts: Vec<Verdict> = secs.iter().map(|s| s.cls.verdict.clone()).collect();
            let all_reg_or_chiral = verdicts
                .iter()
                .all(|v| matches!(v, Verdict::Regular | Verdict::Chiral));
            // no mixing of regular and chiral facets in a hereditary polytope
            if rep.hereditary && all_reg_or_chiral {
                let regs = verdicts.iter().filter(|v| **v == Verdict::Regular).count();
                check!(
                    errs,
                    regs == 0 || regs == verdicts.len(),
                    "{name}: mixed regular and chiral facets"
                );
            }
            // odd co-face gons force regularity of regular-facetted hereditary
            if rep.hereditary && verdicts.iter().all(|v| *v == Verdict::Regular) && n >= 3 {
                let mut has_odd = false;
                for f in orbit_rep_faces(&inst.p, &inst.fg, &inst.aut, n - 3) {
                    let spec = SectionSpec {
                        lower: FaceRef::Face { rank: n - 3, index: f as usize },
                        upper: FaceRef::Greatest,
                    };
                    let sec = inst.p.section(spec).map_err(|e| e.to_string())?;
                    if sec.poset.count(0) % 2 == 1 {
                        has_odd = true;
                    }
                }
                if has_odd {
                    check!(
                        errs,
                        inst.cls.verdict == Verdict::Regular,
                        "{name}: odd co-face gon but not regular"
                    );
                }
            }
            // chiral-facetted hereditary trichotomy
            if rep.hereditary && !verdicts.is_empty() && verdicts.iter().all(|v| *v == Verdict::Chiral) {
                let ok = inst.cls.verdict == Verdict::Chiral
                    || two_orbit_class(&inst.cls).as_deref() == Some(&[n - 1])
                    || inst.cls.k == 4;
                check!(
                    errs,
                    ok,
                    "{name}: chiral-facetted hereditary but verdict {} class {:?}",
                    inst.cls.verdict,
                    inst.cls.class_i
                );
            }
        }
        Ok(format!("structural properties hold on {count} instances"))
    })
}

pub fn run_suite(slow: bool) -> Vec<Outcome> {
    vec![
        outcome("criterion-1 medial-suite", c1_medial_suite()),
        outcome("criterion-2 n98-6", c2_n98_6()),
        outcome("criterion-3 u5512-cosets", c3_u5512()),
        outcome("criterion-4 two-orbit-theorem", c4_two_orbit_theorem()),
        outcome("criterion-5 two-power-suite", c5_two_power_suite()),
        outcome("criterion-6 chiral-extension", c6_chiral_extension()),
        outcome("criterion-7 truncated-tetrahedron", c7_truncated_tetrahedron(slow)),
        outcome("criterion-8 alternating-suite", c8_alternating(slow)),
        outcome("criterion-9 property-suite", c9_property_suite(slow)),
    ]
}
