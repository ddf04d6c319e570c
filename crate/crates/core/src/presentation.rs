//! Group presentations, coset enumeration, and flag graphs built from groups.
//!
//! Presentations come in two kinds. Reflection presentations are string
//! C-groups on involutions rho_0..rho_{n-1}; rotation presentations use the
//! distinguished rotations sigma_1..sigma_{n-1}. Coset enumeration is a
//! deterministic Felsch-style Todd-Coxeter: definitions are made at the first
//! undefined (coset, generator) slot in lexicographic order, and every
//! deduction is scanned against the relators before the next definition.

use std::collections::VecDeque;

use crate::error::PresentationError;
use crate::flag::FlagGraph;

/// A word in the generators: letter `k+1` is generator k, `-(k+1)` its inverse.
pub type Word = Vec<i16>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Reflection,
    Rotation,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Reflection => "reflection",
            Kind::Rotation => "rotation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub kind: Kind,
    /// Polytope rank: reflection presentations have `rank` generators,
    /// rotation presentations `rank - 1`.
    pub rank: usize,
    pub ngens: usize,
    /// Declared group order, checked after enumeration when present.
    pub order: Option<usize>,
    pub relators: Vec<Word>,
    pub subgroup: Vec<Word>,
}

impl GroupPresentation {
    /// Relators every presentation of this kind must carry: the involution
    /// and commutation scheme for reflections, the (sigma_i..sigma_j)^2
    /// scheme for rotations.
    pub fn mandatory_relators(kind: Kind, ngens: usize) -> Vec<Word> {
        let mut out = Vec::new();
        match kind {
            Kind::Reflection => {
                for k in 0..ngens as i16 {
                    out.push(vec![k + 1, k + 1]);
                }
                for i in 0..ngens as i16 {
                    for j in i + 2..ngens as i16 {
                        out.push(vec![i + 1, j + 1, i + 1, j + 1]);
                    }
                }
            }
            Kind::Rotation => {
                for i in 1..=ngens as i16 {
                    for j in i + 1..=ngens as i16 {
                        let run: Vec<i16> = (i..=j).collect();
                        let mut w = run.clone();
                        w.extend(run);
                        out.push(w);
                    }
                }
            }
        }
        out
    }
}

/// Parse the ".grp" text format.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, PresentationError> {
    let mut kind: Option<Kind> = None;
    let mut rank: Option<usize> = None;
    let mut order: Option<usize> = None;
    let mut auto_relators = false;
    let mut relators: Vec<Word> = Vec::new();
    let mut subgroup: Vec<Word> = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| PresentationError::Parse { line, msg };
        let (key, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match key {
            "cgroup" => {
                if rest != "1" {
                    return Err(err(format!("unsupported format version '{rest}'")));
                }
                saw_header = true;
            }
            "kind" => {
                kind = Some(match rest {
                    "reflection" => Kind::Reflection,
                    "rotation" => Kind::Rotation,
                    other => return Err(err(format!("unknown kind '{other}'"))),
                });
            }
            "rank" => {
                rank = Some(rest.parse().map_err(|_| err(format!("bad rank '{rest}'")))?);
            }
            "order" => {
                order = Some(rest.parse().map_err(|_| err(format!("bad order '{rest}'")))?);
            }
            "auto-relators" => {
                auto_relators = rest == "on";
            }
            "rel" => relators.push((parse_word(rest).map_err(err))?),
            "sub" => subgroup.push((parse_word(rest).map_err(err))?),
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    if !saw_header {
        return Err(PresentationError::Parse { line: 1, msg: "missing 'cgroup 1' header".into() });
    }
    let kind = kind.ok_or(PresentationError::Parse { line: 1, msg: "missing kind".into() })?;
    let rank = rank.ok_or(PresentationError::Parse { line: 1, msg: "missing rank".into() })?;
    let ngens = match kind {
        Kind::Reflection => rank,
        Kind::Rotation => rank.saturating_sub(1),
    };
    if ngens == 0 {
        return Err(PresentationError::Parse { line: 1, msg: "rank too small".into() });
    }
    // Generator tokens index from 0 for reflections and from 1 for rotations.
    let base = match kind {
        Kind::Reflection => 0i16,
        Kind::Rotation => 1,
    };
    for w in relators.iter_mut().chain(subgroup.iter_mut()) {
        for l in w.iter_mut() {
            let idx = l.unsigned_abs() as i16 - 1 - base;
            if idx < 0 || idx >= ngens as i16 {
                return Err(PresentationError::Parse {
                    line: 0,
                    msg: format!("generator g{} out of range for this kind", l.unsigned_abs() - 1),
                });
            }
            *l = if *l > 0 { idx + 1 } else { -(idx + 1) };
        }
    }
    for w in GroupPresentation::mandatory_relators(kind, ngens) {
        if relators.iter().any(|r| words_equal_cyclic(r, &w)) {
            continue;
        }
        if auto_relators {
            relators.push(w);
        } else {
            return Err(PresentationError::MissingRelator(format_word(&w, kind)));
        }
    }
    Ok(GroupPresentation { kind, rank, ngens, order, relators, subgroup })
}

/// Parse one word: tokens `g<k>`, `g<k>'`, `g<k>^m`, `(w)^m`, whitespace-
/// separated or juxtaposed. Letters are numbered from the raw token index.
fn parse_word(s: &str) -> Result<Word, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0usize;
    let word = parse_word_inner(&chars, &mut pos, 0)?;
    if pos != chars.len() {
        return Err(format!("unexpected character '{}'", chars[pos]));
    }
    Ok(word)
}

fn parse_word_inner(chars: &[char], pos: &mut usize, depth: usize) -> Result<Word, String> {
    let mut word: Word = Vec::new();
    loop {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
        if *pos >= chars.len() {
            break;
        }
        match chars[*pos] {
            ')' => {
                if depth == 0 {
                    return Err("unmatched ')'".into());
                }
                break;
            }
            '(' => {
                *pos += 1;
                let inner = parse_word_inner(chars, pos, depth + 1)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err("unmatched '('".into());
                }
                *pos += 1;
                let (exp, inverted) = parse_power(chars, pos)?;
                append_power(&mut word, &inner, exp, inverted);
            }
            'g' => {
                *pos += 1;
                let start = *pos;
                while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                if *pos == start {
                    return Err("generator token without index".into());
                }
                let idx: i16 = chars[start..*pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| "generator index too large".to_string())?;
                let (exp, inverted) = parse_power(chars, pos)?;
                append_power(&mut word, &[idx + 1], exp, inverted);
            }
            '^' => return Err("power without base".into()),
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(word)
}

/// Optional `'` and `^m` suffixes after a token.
fn parse_power(chars: &[char], pos: &mut usize) -> Result<(u32, bool), String> {
    let mut inverted = false;
    if *pos < chars.len() && chars[*pos] == '\'' {
        inverted = true;
        *pos += 1;
    }
    let mut exp = 1u32;
    if *pos < chars.len() && chars[*pos] == '^' {
        *pos += 1;
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return Err("power without exponent".into());
        }
        exp = chars[start..*pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| "exponent too large".to_string())?;
    }
    Ok((exp, inverted))
}

fn append_power(word: &mut Word, base: &[i16], exp: u32, inverted: bool) {
    let unit: Word = if inverted {
        base.iter().rev().map(|&l| -l).collect()
    } else {
        base.to_vec()
    };
    for _ in 0..exp {
        word.extend_from_slice(&unit);
    }
}

pub fn invert_word(w: &[i16]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Equality up to cyclic rotation and inversion.
fn words_equal_cyclic(a: &[i16], b: &[i16]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let inv = invert_word(a);
    for rot in 0..a.len().max(1) {
        let rotated: Vec<i16> = a.iter().cycle().skip(rot).take(a.len()).copied().collect();
        if rotated == b {
            return true;
        }
        let rotated_inv: Vec<i16> = inv.iter().cycle().skip(rot).take(a.len()).copied().collect();
        if rotated_inv == b {
            return true;
        }
    }
    a.is_empty() && b.is_empty()
}

/// Render a word with kind-appropriate generator numbering.
pub fn format_word(w: &[i16], kind: Kind) -> String {
    let base = match kind {
        Kind::Reflection => 0,
        Kind::Rotation => 1,
    };
    w.iter()
        .map(|&l| {
            let idx = l.unsigned_abs() as usize - 1 + base;
            if l > 0 {
                format!("g{idx}")
            } else {
                format!("g{idx}'")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

const UNDEF: u32 = u32::MAX;

/// A complete coset table: one row per coset, one column per generator and
/// per inverse generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    /// `table[c][2k]` is coset c times generator k; `table[c][2k+1]` the inverse.
    table: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.table.len()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    fn col(letter: i16) -> usize {
        let k = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            2 * k
        } else {
            2 * k + 1
        }
    }

    pub fn apply(&self, coset: u32, letter: i16) -> u32 {
        self.table[coset as usize][Self::col(letter)]
    }

    pub fn apply_word(&self, coset: u32, word: &[i16]) -> u32 {
        word.iter().fold(coset, |c, &l| self.apply(c, l))
    }

    /// The right-multiplication permutation of one word.
    pub fn word_permutation(&self, word: &[i16]) -> Vec<u32> {
        (0..self.coset_count() as u32).map(|c| self.apply_word(c, word)).collect()
    }

    pub fn generator_permutation(&self, k: usize) -> Vec<u32> {
        self.word_permutation(&[k as i16 + 1])
    }
}

/// Deterministic Felsch-style coset enumeration.
pub fn coset_enumerate(
    pres: &GroupPresentation,
    subgroup: &[Word],
    limit: usize,
) -> Result<CosetTable, PresentationError> {
    if limit < 1 {
        return Err(PresentationError::Precondition("limit must be at least 1".into()));
    }
    let ngens = pres.ngens;
    let ncols = 2 * ngens;
    // Relator scans are driven by an "essentially different positions" index:
    // every cyclic rotation of every relator and inverse relator, grouped by
    // first letter's column.
    let mut edp: Vec<Vec<Word>> = vec![Vec::new(); ncols];
    for rel in &pres.relators {
        if rel.is_empty() {
            continue;
        }
        for w in [rel.clone(), invert_word(rel)] {
            for rot in 0..w.len() {
                let rotated: Word = w.iter().cycle().skip(rot).take(w.len()).copied().collect();
                let bucket = &mut edp[CosetTable::col(rotated[0])];
                if !bucket.contains(&rotated) {
                    bucket.push(rotated);
                }
            }
        }
    }

    let mut table: Vec<Vec<u32>> = vec![vec![UNDEF; ncols]];
    let mut parent: Vec<u32> = vec![0];
    let mut live = 1usize;
    let mut total_defined = 1usize;
    let mut deductions: Vec<(u32, i16)> = Vec::new();

    fn rep(parent: &mut Vec<u32>, x: u32) -> u32 {
        let mut root = x;
        while parent[root as usize] != root {
            root = parent[root as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != root {
            let next = parent[cur as usize];
            parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    macro_rules! set_entry {
        ($a:expr, $l:expr, $b:expr) => {{
            let (a, l, b) = ($a, $l, $b);
            table[a as usize][CosetTable::col(l)] = b;
            table[b as usize][CosetTable::col(-l)] = a;
            deductions.push((a, l));
        }};
    }

    // Coincidence processing merges two cosets and all their consequences.
    macro_rules! coincide {
        ($a:expr, $b:expr) => {{
            let mut queue: VecDeque<u32> = VecDeque::new();
            let (ra, rb) = (rep(&mut parent, $a), rep(&mut parent, $b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi as usize] = lo;
                live -= 1;
                queue.push_back(hi);
            }
            while let Some(dead) = queue.pop_front() {
                for col in 0..ncols {
                    let delta = table[dead as usize][col];
                    if delta == UNDEF {
                        continue;
                    }
                    table[dead as usize][col] = UNDEF;
                    let letter = if col % 2 == 0 { (col / 2) as i16 + 1 } else { -((col / 2) as i16 + 1) };
                    let inv_col = CosetTable::col(-letter);
                    if table[delta as usize][inv_col] == dead {
                        table[delta as usize][inv_col] = UNDEF;
                    }
                    let mu = rep(&mut parent, dead);
                    let nu = rep(&mut parent, delta);
                    let existing = table[mu as usize][col];
                    if existing != UNDEF {
                        let (x, y) = (rep(&mut parent, existing), nu);
                        if x != y {
                            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                            parent[hi as usize] = lo;
                            live -= 1;
                            queue.push_back(hi);
                        }
                    } else {
                        let existing_back = table[nu as usize][inv_col];
                        if existing_back != UNDEF {
                            let (x, y) = (rep(&mut parent, existing_back), mu);
                            if x != y {
                                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                                parent[hi as usize] = lo;
                                live -= 1;
                                queue.push_back(hi);
                            }
                        } else {
                            set_entry!(mu, letter, nu);
                        }
                    }
                }
            }
        }};
    }

    // Scan a word from a coset without defining new cosets; record the
    // deduction or coincidence it forces, if any.
    macro_rules! scan {
        ($start:expr, $w:expr) => {{
            let w: &[i16] = $w;
            let start: u32 = $start;
            let mut f = start;
            let mut i = 0usize;
            while i < w.len() {
                let next = table[f as usize][CosetTable::col(w[i])];
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == w.len() {
                if f != start {
                    coincide!(f, start);
                }
            } else {
                let mut b = start;
                let mut j = w.len();
                while j > i {
                    let prev = table[b as usize][CosetTable::col(-w[j - 1])];
                    if prev == UNDEF {
                        break;
                    }
                    b = prev;
                    j -= 1;
                }
                if j == i {
                    coincide!(f, b);
                } else if j == i + 1 {
                    if table[f as usize][CosetTable::col(w[i])] == UNDEF {
                        set_entry!(f, w[i], b);
                    }
                }
            }
        }};
    }

    macro_rules! process_deductions {
        () => {{
            while let Some((c, l)) = deductions.pop() {
                for pair in [(c, l), (table_entry(&table, c, l), -l)] {
                    let (coset, letter) = pair;
                    if coset == UNDEF {
                        continue;
                    }
                    let coset = rep(&mut parent, coset);
                    for w in &edp[CosetTable::col(letter)] {
                        scan!(coset, w);
                    }
                }
            }
        }};
    }

    fn table_entry(table: &[Vec<u32>], c: u32, l: i16) -> u32 {
        if (c as usize) < table.len() {
            table[c as usize][CosetTable::col(l)]
        } else {
            UNDEF
        }
    }

    // Subgroup generators: scan from coset 0 with definitions allowed.
    for word in subgroup.iter().chain(pres.subgroup.iter()) {
        let mut c = 0u32;
        for (i, &l) in word.iter().enumerate() {
            let c_rep = rep(&mut parent, c);
            let next = table[c_rep as usize][CosetTable::col(l)];
            if next != UNDEF {
                c = next;
                continue;
            }
            if i + 1 == word.len() {
                // The word must close back at coset 0.
                let zero = rep(&mut parent, 0);
                if table[zero as usize][CosetTable::col(-l)] != UNDEF {
                    coincide!(c_rep, table[zero as usize][CosetTable::col(-l)]);
                } else {
                    set_entry!(c_rep, l, zero);
                }
                process_deductions!();
                c = rep(&mut parent, 0);
                continue;
            }
            if total_defined >= limit {
                return Err(PresentationError::LimitExceeded(limit));
            }
            let fresh = table.len() as u32;
            table.push(vec![UNDEF; ncols]);
            parent.push(fresh);
            live += 1;
            total_defined += 1;
            set_entry!(c_rep, l, fresh);
            process_deductions!();
            c = rep(&mut parent, fresh);
        }
        let end = rep(&mut parent, c);
        let zero = rep(&mut parent, 0);
        if end != zero {
            coincide!(end, zero);
            process_deductions!();
        }
    }

    // Main Felsch loop: fill the first undefined slot, then close deductions.
    let mut scan_from = 0usize;
    loop {
        let pass_started_at = scan_from;
        let mut found = None;
        let mut c = scan_from;
        while c < table.len() {
            if rep(&mut parent, c as u32) != c as u32 {
                c += 1;
                continue;
            }
            if let Some(col) = table[c].iter().position(|&x| x == UNDEF) {
                found = Some((c as u32, col));
                break;
            }
            c += 1;
        }
        scan_from = c;
        let Some((coset, col)) = found else {
            // Coincidences can reopen slots behind the scan cursor; confirm
            // completeness with one scan from the top before stopping.
            if pass_started_at > 0 {
                scan_from = 0;
                continue;
            }
            break;
        };
        if total_defined >= limit {
            return Err(PresentationError::LimitExceeded(limit));
        }
        let letter = if col % 2 == 0 { (col / 2) as i16 + 1 } else { -((col / 2) as i16 + 1) };
        let fresh = table.len() as u32;
        table.push(vec![UNDEF; ncols]);
        parent.push(fresh);
        live += 1;
        total_defined += 1;
        set_entry!(coset, letter, fresh);
        process_deductions!();
        // A coincidence may have killed `coset`; rescan from the top of its block.
        scan_from = scan_from.min(rep(&mut parent, coset) as usize);
    }

    // Compress: renumber live cosets in increasing order.
    let mut new_id: Vec<u32> = vec![UNDEF; table.len()];
    let mut next = 0u32;
    for c in 0..table.len() {
        if rep(&mut parent, c as u32) == c as u32 {
            new_id[c] = next;
            next += 1;
        }
    }
    debug_assert_eq!(next as usize, live);
    let mut compressed: Vec<Vec<u32>> = Vec::with_capacity(live);
    for c in 0..table.len() {
        if new_id[c] == UNDEF {
            continue;
        }
        let row: Vec<u32> = table[c]
            .iter()
            .map(|&x| {
                debug_assert_ne!(x, UNDEF);
                new_id[rep(&mut parent, x) as usize]
            })
            .collect();
        compressed.push(row);
    }
    Ok(CosetTable { ngens, table: compressed })
}

/// A finite permutation group given by generator permutations.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl PermutationGroup {
    /// The regular representation read off a coset table over the trivial
    /// subgroup.
    pub fn regular(table: &CosetTable) -> PermutationGroup {
        PermutationGroup {
            degree: table.coset_count(),
            generators: (0..table.ngens()).map(|k| table.generator_permutation(k)).collect(),
        }
    }

    pub fn apply_word(&self, point: u32, word: &[i16]) -> u32 {
        word.iter().fold(point, |p, &l| {
            let g = &self.generators[l.unsigned_abs() as usize - 1];
            if l > 0 {
                g[p as usize]
            } else {
                g.iter().position(|&x| x == p).unwrap() as u32
            }
        })
    }

    pub fn word_permutation(&self, word: &[i16]) -> Vec<u32> {
        let mut inv: Vec<Vec<u32>> = Vec::new();
        for g in &self.generators {
            let mut iv = vec![0u32; self.degree];
            for (i, &x) in g.iter().enumerate() {
                iv[x as usize] = i as u32;
            }
            inv.push(iv);
        }
        (0..self.degree as u32)
            .map(|p| {
                word.iter().fold(p, |q, &l| {
                    let k = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        self.generators[k][q as usize]
                    } else {
                        inv[k][q as usize]
                    }
                })
            })
            .collect()
    }
}

/// Regular polytope from a string C-group acting on itself: flags are the
/// group elements, `adj[i]` is right multiplication by rho_i.
pub fn flag_graph_from_reflection_group(g: &PermutationGroup) -> Result<FlagGraph, PresentationError> {
    let rank = g.generators.len();
    let adj: Vec<Vec<u32>> = g.generators.clone();
    for (i, a) in adj.iter().enumerate() {
        for (f, &h) in a.iter().enumerate() {
            if h as usize == f {
                return Err(PresentationError::RelationViolated(format!(
                    "g{i} acts with a fixed point; not a faithful involution"
                )));
            }
        }
    }
    FlagGraph::from_adjacencies(rank, adj)
        .map_err(|e| PresentationError::NotPolytopal(e.to_string()))
}

/// Polytope from a rotation group: flags are group elements in two colors,
/// white flags move by kappa_i, black flags by its inverse kappa'_i.
pub fn flag_graph_from_rotation_group(g: &PermutationGroup) -> Result<FlagGraph, PresentationError> {
    let ngens = g.generators.len();
    let rank = ngens + 1;
    let mut kappas: Vec<(Vec<u32>, Vec<u32>)> = Vec::with_capacity(rank);
    for i in 0..rank {
        let (kappa, kappa_inv): (Word, Word) = match i {
            0 => (vec![], vec![]),
            1 => (vec![-1], vec![1]),
            _ => {
                let w: Word = (1..=i as i16).collect();
                (w.clone(), w)
            }
        };
        let fwd = g.word_permutation(&kappa);
        let back = g.word_permutation(&kappa_inv);
        // kappa_i * kappa'_i must be the identity before adjacency is even
        // well defined; for i >= 2 this is the relation (s1..si)^2 = e.
        for p in 0..g.degree as u32 {
            if back[fwd[p as usize] as usize] != p {
                return Err(PresentationError::RelationViolated(format!(
                    "(g1..g{i})^2 = e (kappa involution at rank {i})"
                )));
            }
        }
        kappas.push((fwd, back));
    }
    let nflags = 2 * g.degree;
    let mut adj: Vec<Vec<u32>> = vec![vec![0u32; nflags]; rank];
    for (i, (fwd, back)) in kappas.iter().enumerate() {
        for p in 0..g.degree {
            // White flag 2p, black flag 2p+1.
            adj[i][2 * p] = 2 * fwd[p] + 1;
            adj[i][2 * p + 1] = 2 * back[p];
        }
    }
    FlagGraph::from_adjacencies(rank, adj).map_err(|e| PresentationError::NotPolytopal(e.to_string()))
}

/// Rewrite a rotation presentation into its enantiomorph:
/// s1 -> s1^-1, s2 -> s1^2 s2, s_i -> s_i for i >= 3.
pub fn enantiomorph(pres: &GroupPresentation) -> Result<GroupPresentation, PresentationError> {
    if pres.kind != Kind::Rotation {
        return Err(PresentationError::WrongKind { expected: "rotation", got: pres.kind.name() });
    }
    let substitute = |w: &Word| -> Word {
        let mut out = Vec::new();
        for &l in w {
            match l {
                1 => out.push(-1),
                -1 => out.push(1),
                2 => out.extend_from_slice(&[1, 1, 2]),
                -2 => out.extend_from_slice(&[-2, -1, -1]),
                other => out.push(other),
            }
        }
        out
    };
    Ok(GroupPresentation {
        kind: pres.kind,
        rank: pres.rank,
        ngens: pres.ngens,
        order: pres.order,
        relators: pres.relators.iter().map(substitute).collect(),
        subgroup: pres.subgroup.iter().map(substitute).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalvingVariant {
    Eta,
    EtaZero,
}

/// Halving words for a rank-3 group: the new distinguished generators as
/// words in the old ones.
pub fn halving_words(kind: Kind, variant: HalvingVariant) -> Vec<Word> {
    match (kind, variant) {
        // (a0 a1 a0, a2, a1) and (a1, a2, a0 a1 a0)
        (Kind::Reflection, HalvingVariant::Eta) => vec![vec![1, 2, 1], vec![3], vec![2]],
        (Kind::Reflection, HalvingVariant::EtaZero) => vec![vec![2], vec![3], vec![1, 2, 1]],
        // (s1^2 s2, s2^-1) and (s2, s2^-1 s1^2)
        (Kind::Rotation, HalvingVariant::Eta) => vec![vec![1, 1, 2], vec![-2]],
        (Kind::Rotation, HalvingVariant::EtaZero) => vec![vec![2], vec![-2, 1, 1]],
    }
}

/// Halve a rank-3 group of type {4,q}: restrict the regular action to the
/// index-2 subgroup generated by the halving words.
pub fn halving(
    g: &PermutationGroup,
    kind: Kind,
    variant: HalvingVariant,
) -> Result<PermutationGroup, PresentationError> {
    // Type {4,q}: the rank-2 rotation (rho0 rho1, or sigma1) has order 4.
    let probe: Word = match kind {
        Kind::Reflection => vec![1, 2],
        Kind::Rotation => vec![1],
    };
    let perm = g.word_permutation(&probe);
    let mut x = 0u32;
    let mut ord = 0usize;
    loop {
        x = perm[x as usize];
        ord += 1;
        if x == 0 {
            break;
        }
    }
    if ord != 4 {
        return Err(PresentationError::Precondition(format!(
            "halving requires type {{4,q}}, found first entry {ord}"
        )));
    }
    let words = halving_words(kind, variant);
    let perms: Vec<Vec<u32>> = words.iter().map(|w| g.word_permutation(w)).collect();
    // Orbit of the identity element under the new generators = the subgroup.
    let mut in_orbit = vec![false; g.degree];
    in_orbit[0] = true;
    let mut stack = vec![0u32];
    while let Some(p) = stack.pop() {
        for perm in &perms {
            let q = perm[p as usize];
            if !in_orbit[q as usize] {
                in_orbit[q as usize] = true;
                stack.push(q);
            }
        }
    }
    let orbit: Vec<u32> = (0..g.degree as u32).filter(|&p| in_orbit[p as usize]).collect();
    if orbit.len() * 2 != g.degree {
        return Err(PresentationError::Precondition(format!(
            "halving subgroup has index {} (edge graph not bipartite)",
            if orbit.is_empty() { 0 } else { g.degree / orbit.len() }
        )));
    }
    let mut new_id = vec![UNDEF; g.degree];
    for (i, &p) in orbit.iter().enumerate() {
        new_id[p as usize] = i as u32;
    }
    let generators: Vec<Vec<u32>> = perms
        .iter()
        .map(|perm| orbit.iter().map(|&p| new_id[perm[p as usize] as usize]).collect())
        .collect();
    Ok(PermutationGroup { degree: orbit.len(), generators })
}

/// End-to-end build: enumerate the group, check the declared order, and
/// synthesize the flag graph for the presentation's kind.
pub fn build_polytope(pres: &GroupPresentation, limit: usize) -> Result<FlagGraph, PresentationError> {
    let table = coset_enumerate(pres, &[], limit)?;
    if let Some(declared) = pres.order {
        if declared != table.coset_count() {
            return Err(PresentationError::OrderMismatch {
                declared,
                found: table.coset_count(),
            });
        }
    }
    let g = PermutationGroup::regular(&table);
    match pres.kind {
        Kind::Reflection => flag_graph_from_reflection_group(&g),
        Kind::Rotation => flag_graph_from_rotation_group(&g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::coxeter_presentation;
    use crate::symmetry::{classify_orbits, AutomorphismGroup, Verdict};

    fn rotation_pres(rank: usize, relators: Vec<Word>) -> GroupPresentation {
        let ngens = rank - 1;
        let mut all = GroupPresentation::mandatory_relators(Kind::Rotation, ngens);
        all.extend(relators);
        GroupPresentation { kind: Kind::Rotation, rank, ngens, order: None, relators: all, subgroup: vec![] }
    }

    fn power(letter: i16, n: usize) -> Word {
        std::iter::repeat(letter).take(n).collect()
    }

    #[test]
    fn parse_cube_grp() {
        let text = "cgroup 1\nkind reflection\nrank 3\norder 48\n\
                    rel g0^2\nrel g1^2\nrel g2^2\nrel (g0 g1)^4\nrel (g1 g2)^3\nrel (g0 g2)^2\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.kind, Kind::Reflection);
        assert_eq!(p.ngens, 3);
        assert_eq!(p.order, Some(48));
        assert!(p.relators.iter().any(|r| r == &vec![1i16, 2, 1, 2, 1, 2, 1, 2]));
    }

    #[test]
    fn parse_power_without_base_fails() {
        let text = "cgroup 1\nkind reflection\nrank 1\nrel g0 ^\n";
        assert!(matches!(parse_presentation(text), Err(PresentationError::Parse { .. })));
    }

    #[test]
    fn missing_mandatory_relator_detected() {
        let text = "cgroup 1\nkind reflection\nrank 3\nrel (g0 g1)^4\nrel (g1 g2)^3\n";
        assert!(matches!(parse_presentation(text), Err(PresentationError::MissingRelator(_))));
        let auto = format!("cgroup 1\nkind reflection\nrank 3\nauto-relators on\nrel (g0 g1)^4\nrel (g1 g2)^3\n");
        let p = parse_presentation(&auto).unwrap();
        let table = coset_enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(table.coset_count(), 48);
    }

    #[test]
    fn coxeter_group_orders() {
        for (ps, order) in [(vec![3, 3], 24), (vec![4, 3], 48), (vec![5, 3], 120), (vec![3, 4], 48)] {
            let pres = coxeter_presentation(&ps);
            let table = coset_enumerate(&pres, &[], 10_000).unwrap();
            assert_eq!(table.coset_count(), order, "[{ps:?}]");
        }
    }

    #[test]
    fn subgroup_index_counts_cosets() {
        // [4,3] over <g1, g2> (a vertex stabilizer): index 8.
        let pres = coxeter_presentation(&[4, 3]);
        let table = coset_enumerate(&pres, &[vec![2], vec![3]], 10_000).unwrap();
        assert_eq!(table.coset_count(), 8);
    }

    #[test]
    fn infinite_group_hits_the_limit() {
        let pres = coxeter_presentation(&[4, 4]);
        assert!(matches!(
            coset_enumerate(&pres, &[], 20_000),
            Err(PresentationError::LimitExceeded(20_000))
        ));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let pres = coxeter_presentation(&[5, 3]);
        let a = coset_enumerate(&pres, &[], 10_000).unwrap();
        let b = coset_enumerate(&pres, &[], 10_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reflection_build_of_cube() {
        let pres = coxeter_presentation(&[4, 3]);
        let fg = build_polytope(&pres, 10_000).unwrap();
        assert_eq!(fg.flag_count(), 48);
        let poset = fg.to_poset().unwrap();
        assert_eq!(poset.counts(), vec![8, 12, 6]);
        assert!(crate::flag::posets_isomorphic(&poset, &crate::catalog::cube()).unwrap());
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(aut.order(), 48);
    }

    #[test]
    fn rotation_build_of_tetrahedron_is_regular() {
        let pres = rotation_pres(3, vec![power(1, 3), power(2, 3)]);
        let fg = build_polytope(&pres, 10_000).unwrap();
        assert_eq!(fg.flag_count(), 24);
        let poset = fg.to_poset().unwrap();
        assert_eq!(poset.counts(), vec![4, 6, 4]);
        let aut = AutomorphismGroup::compute(&fg);
        let cls = classify_orbits(&fg, &aut).unwrap();
        assert_eq!(cls.verdict, Verdict::Regular);
    }

    /// {4,4}_{(b,c)} rotation presentation: sigma relations plus the
    /// translation relator t_x^b t_y^c with t_x = s1 s2^3, t_y = s2 t_x s2^-1.
    fn toroid_44(b: usize, c: usize) -> GroupPresentation {
        crate::catalog::toroid_44_presentation(b, c)
    }

    #[test]
    fn chiral_toroid_44_12() {
        let pres = toroid_44(1, 2);
        let table = coset_enumerate(&pres, &[], 10_000).unwrap();
        assert_eq!(table.coset_count(), 20);
        let fg = build_polytope(&pres, 10_000).unwrap();
        assert_eq!(fg.flag_count(), 40);
        let poset = fg.to_poset().unwrap();
        assert_eq!(poset.counts(), vec![5, 10, 5]);
        let aut = AutomorphismGroup::compute(&fg);
        let cls = classify_orbits(&fg, &aut).unwrap();
        assert_eq!(cls.verdict, Verdict::Chiral);
    }

    #[test]
    fn regular_toroid_44_20() {
        let pres = toroid_44(2, 0);
        let fg = build_polytope(&pres, 10_000).unwrap();
        assert_eq!(fg.flag_count(), 32);
        let aut = AutomorphismGroup::compute(&fg);
        assert_eq!(classify_orbits(&fg, &aut).unwrap().verdict, Verdict::Regular);
    }

    #[test]
    fn enantiomorph_swaps_handedness() {
        let pres = toroid_44(1, 2);
        let mirror = enantiomorph(&pres).unwrap();
        let a = build_polytope(&mirror, 10_000).unwrap();
        let b = build_polytope(&toroid_44(2, 1), 10_000).unwrap();
        assert!(crate::flag::isomorphic(&a, &b));
        let twice = enantiomorph(&mirror).unwrap();
        let c = build_polytope(&twice, 10_000).unwrap();
        let orig = build_polytope(&pres, 10_000).unwrap();
        assert!(crate::flag::isomorphic(&c, &orig));
    }

    #[test]
    fn enantiomorph_requires_rotation_kind() {
        let pres = coxeter_presentation(&[4, 3]);
        assert!(matches!(enantiomorph(&pres), Err(PresentationError::WrongKind { .. })));
    }

    #[test]
    fn halving_cube_gives_tetrahedron() {
        let pres = coxeter_presentation(&[4, 3]);
        let table = coset_enumerate(&pres, &[], 10_000).unwrap();
        let g = PermutationGroup::regular(&table);
        let half = halving(&g, Kind::Reflection, HalvingVariant::Eta).unwrap();
        assert_eq!(half.degree, 24);
        let fg = flag_graph_from_reflection_group(&half).unwrap();
        let poset = fg.to_poset().unwrap();
        assert_eq!(poset.counts(), vec![4, 6, 4]);
        // eta and eta0 give conjugate triples, hence isomorphic outputs.
        let half0 = halving(&g, Kind::Reflection, HalvingVariant::EtaZero).unwrap();
        let fg0 = flag_graph_from_reflection_group(&half0).unwrap();
        assert!(crate::flag::isomorphic(&fg, &fg0));
    }

    #[test]
    fn halving_rejects_wrong_type() {
        let pres = coxeter_presentation(&[3, 3]);
        let table = coset_enumerate(&pres, &[], 10_000).unwrap();
        let g = PermutationGroup::regular(&table);
        assert!(matches!(
            halving(&g, Kind::Reflection, HalvingVariant::Eta),
            Err(PresentationError::Precondition(_))
        ));
    }
}
