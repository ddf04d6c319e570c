//! File formats and reports: the ".apoly" poset format and the analysis
//! report in its text and machine renderings.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{IoError, PolytopeError};
use crate::flag::FlagGraph;
use crate::hereditary::{hereditary_report, HereditaryReport};
use crate::poset::FacePoset;
use crate::symmetry::{classify_orbits, AutomorphismGroup, OrbitClassification};

/// Canonical text form: header, counts, then cover lines in rank and index
/// order. Byte-stable for a given poset.
pub fn write_poset_string(p: &FacePoset) -> String {
    let mut out = String::new();
    out.push_str("apoly 1\n");
    let _ = writeln!(out, "rank {}", p.rank());
    for r in 0..p.rank() {
        let _ = writeln!(out, "count {} {}", r, p.count(r));
    }
    for r in 1..p.rank() {
        for f in 0..p.count(r) {
            let covers: Vec<String> =
                p.covers_of(r, f).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "f {} {}: {}", r, f, covers.join(" "));
        }
    }
    out
}

/// Parse the ".apoly" format. Lines may arrive in any order; `#` starts a
/// comment. The result is validated.
pub fn read_poset_string(text: &str, path: &str) -> Result<FacePoset, IoError> {
    let mut rank: Option<usize> = None;
    let mut counts: Vec<Option<usize>> = Vec::new();
    let mut cover_lines: Vec<(usize, usize, usize, Vec<u32>)> = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| IoError::Malformed { path: path.into(), line, msg };
        let mut tokens = content.split_whitespace();
        match tokens.next().unwrap() {
            "apoly" => {
                if tokens.next() != Some("1") {
                    return Err(err("unsupported format version".into()));
                }
                saw_header = true;
            }
            "rank" => {
                let n: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad rank".into()))?;
                rank = Some(n);
                counts.resize(n, None);
            }
            "count" => {
                let i: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad count rank".into()))?;
                let m: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad count value".into()))?;
                if i >= counts.len() {
                    return Err(err(format!("count rank {i} out of range")));
                }
                counts[i] = Some(m);
            }
            "f" => {
                let i: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad face rank".into()))?;
                let f_tok = tokens.next().ok_or_else(|| err("missing face index".into()))?;
                let f_tok = f_tok.strip_suffix(':').ok_or_else(|| err("missing ':'".into()))?;
                let f: usize = f_tok.parse().map_err(|_| err("bad face index".into()))?;
                let covers: Result<Vec<u32>, _> = tokens.map(|t| t.parse::<u32>()).collect();
                let covers = covers.map_err(|_| err("bad cover index".into()))?;
                cover_lines.push((line, i, f, covers));
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    if !saw_header {
        return Err(IoError::Malformed {
            path: path.into(),
            line: 1,
            msg: "missing 'apoly 1' header".into(),
        });
    }
    let rank = rank.ok_or(IoError::Malformed {
        path: path.into(),
        line: 1,
        msg: "missing rank".into(),
    })?;
    let mut covers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(rank);
    for (i, c) in counts.iter().enumerate() {
        let m = c.ok_or(IoError::Malformed {
            path: path.into(),
            line: 1,
            msg: format!("missing count for rank {i}"),
        })?;
        covers.push(vec![Vec::new(); m]);
    }
    for (line, i, f, list) in cover_lines {
        let err = |msg: String| IoError::Malformed { path: path.into(), line, msg };
        if i == 0 || i >= rank {
            return Err(err(format!("face rank {i} out of range")));
        }
        if f >= covers[i].len() {
            return Err(err(format!("face index {f} out of range at rank {i}")));
        }
        for &c in &list {
            if c as usize >= covers[i - 1].len() {
                return Err(err(format!("dangling cover index {c}")));
            }
        }
        covers[i][f] = list;
    }
    let poset = FacePoset::build(rank, covers).map_err(|e| IoError::Malformed {
        path: path.into(),
        line: 0,
        msg: e.to_string(),
    })?;
    Ok(poset.validated()?)
}

pub fn write_poset(p: &FacePoset, path: impl AsRef<Path>) -> Result<(), IoError> {
    Ok(std::fs::write(path, write_poset_string(p))?)
}

pub fn read_poset(path: impl AsRef<Path>) -> Result<FacePoset, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    read_poset_string(&text, &path.display().to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

/// Everything the `analyze` command prints.
pub struct Analysis {
    pub counts: Vec<usize>,
    pub schlafli: Option<Vec<usize>>,
    pub flag_count: usize,
    pub group_order: usize,
    pub classification: OrbitClassification,
    pub hereditary: HereditaryReport,
}

pub fn analyze(p: &FacePoset) -> Result<Analysis, PolytopeError> {
    let fg = FlagGraph::of_poset(p)?;
    let aut = AutomorphismGroup::compute(&fg);
    let classification = classify_orbits(&fg, &aut)?;
    let hereditary = hereditary_report(p, &fg, &aut)?;
    Ok(Analysis {
        counts: p.counts(),
        schlafli: p.schlafli_type(),
        flag_count: fg.flag_count(),
        group_order: aut.order(),
        classification,
        hereditary,
    })
}

fn class_list(c: &OrbitClassification) -> String {
    match &c.class_i {
        Some(is) => is.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
        None => "none".into(),
    }
}

pub fn render_report(a: &Analysis, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Machine => {
            let _ = writeln!(out, "orbits k={}", a.classification.k);
            let _ = writeln!(out, "class I={}", class_list(&a.classification));
            let _ = writeln!(out, "verdict {}", a.classification.verdict);
            let _ = writeln!(out, "hereditary {}", a.hereditary.hereditary);
            for e in &a.hereditary.per_facet {
                let _ = writeln!(
                    out,
                    "facet {} group={} extends={}",
                    e.facet, e.group_order, e.extendable_order
                );
            }
        }
        ReportFormat::Text => {
            let counts: Vec<String> = a.counts.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "faces per rank: {}", counts.join(" "));
            match &a.schlafli {
                Some(t) => {
                    let t: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                    let _ = writeln!(out, "schlafli type: {{{}}}", t.join(","));
                }
                None => {
                    let _ = writeln!(out, "schlafli type: not equivelar");
                }
            }
            let _ = writeln!(out, "flags: {}", a.flag_count);
            let _ = writeln!(out, "automorphism group order: {}", a.group_order);
            let _ = writeln!(
                out,
                "orbits k={} / class I={} / hereditary {}",
                a.classification.k,
                class_list(&a.classification),
                a.hereditary.hereditary
            );
            let _ = writeln!(out, "verdict: {}", a.classification.verdict);
            let _ = writeln!(out, "chirally hereditary: {}", a.hereditary.chirally_hereditary);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, hemicube, truncated_tetrahedron};
    use crate::constructions::medial;
    use crate::flag::posets_isomorphic;

    #[test]
    fn round_trip_is_identity_on_canonical_form() {
        for p in [cube(), hemicube(), truncated_tetrahedron()] {
            let text = write_poset_string(&p);
            let q = read_poset_string(&text, "mem").unwrap();
            assert_eq!(write_poset_string(&q), text);
            assert!(posets_isomorphic(&p, &q).unwrap());
        }
    }

    #[test]
    fn reader_accepts_any_order_and_comments() {
        let text = "# a triangle\nf 1 2: 2 0\nrank 2\ncount 0 3\ncount 1 3\n\
                    apoly 1\nf 1 0: 0 1\nf 1 1: 1 2\n";
        let p = read_poset_string(text, "mem").unwrap();
        assert_eq!(p.counts(), vec![3, 3]);
    }

    #[test]
    fn dangling_index_reports_line() {
        let text = "apoly 1\nrank 2\ncount 0 3\ncount 1 3\nf 1 0: 0 1\nf 1 1: 1 2\nf 1 2: 2 9\n";
        match read_poset_string(text, "bad.apoly") {
            Err(IoError::Malformed { path, line, .. }) => {
                assert_eq!(path, "bad.apoly");
                assert_eq!(line, 7);
            }
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn cube_matches_golden_file() {
        let golden = include_str!("../tests/golden/cube.apoly");
        assert_eq!(write_poset_string(&cube()), golden);
    }

    #[test]
    fn machine_report_matches_golden_file() {
        let m = medial(&cube()).unwrap();
        let report = render_report(&analyze(&m).unwrap(), ReportFormat::Machine);
        let golden = include_str!("../tests/golden/cuboctahedron.report");
        assert_eq!(report, golden);
    }

    #[test]
    fn text_report_contains_summary_line() {
        let m = medial(&cube()).unwrap();
        let report = render_report(&analyze(&m).unwrap(), ReportFormat::Text);
        assert!(report.contains("orbits k=2 / class I=0,1 / hereditary true"), "{report}");
    }
}
