//! Plain-text formats `orthoposet v1` and `subsetfamily v1`, plus DOT export.
//! Writers are canonical: writing what was read reproduces the bytes.

use crate::constructions::{FamilyKind, SubsetFamily};
use crate::error::{Error, Result};
use crate::ortho::OrthoPoset;
use crate::poset::FinitePoset;

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Deterministic mapping of arbitrary labels onto the token alphabet:
/// commas become underscores, anything else outside the alphabet is dropped.
pub fn sanitize_label(label: &str) -> String {
    label
        .chars()
        .filter_map(|c| {
            if c == ',' {
                Some('_')
            } else if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                Some(c)
            } else {
                None
            }
        })
        .collect()
}

/// An `orthoposet v1` file before the axioms have been checked, so that a
/// file violating them can still be loaded and reported on.
pub struct RawOrthoposet {
    pub poset: FinitePoset,
    pub involution: Vec<usize>,
}

impl RawOrthoposet {
    pub fn into_ortho(self) -> Result<OrthoPoset> {
        OrthoPoset::new(self.poset, self.involution)
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next significant line: comments stripped, blanks skipped; 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_orthoposet(text: &str) -> Result<RawOrthoposet> {
    let mut lines = Lines::new(text);
    let (n, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if header != "orthoposet v1" {
        return Err(parse_err(n, format!("expected `orthoposet v1`, found `{header}`")));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut inv_pairs: Vec<(usize, String, String)> = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap();
        let args: Vec<&str> = parts.collect();
        match key {
            "element" => {
                let [l] = args[..] else {
                    return Err(parse_err(ln, "element takes one label"));
                };
                if !is_token(l) {
                    return Err(parse_err(ln, format!("bad token `{l}`")));
                }
                labels.push(l.to_string());
            }
            "cover" => {
                let [x, y] = args[..] else {
                    return Err(parse_err(ln, "cover takes two labels"));
                };
                covers.push((x.to_string(), y.to_string()));
            }
            "involution" => {
                let [x, y] = args[..] else {
                    return Err(parse_err(ln, "involution takes two labels"));
                };
                inv_pairs.push((ln, x.to_string(), y.to_string()));
            }
            other => return Err(parse_err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let poset = FinitePoset::build_from_covers(labels, &covers).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(0, other.to_string()),
    })?;
    let m = poset.len();
    let mut involution: Vec<Option<usize>> = vec![None; m];
    for (ln, x, y) in inv_pairs {
        let ix = poset.index_of(&x).ok_or_else(|| parse_err(ln, format!("unknown label `{x}`")))?;
        let iy = poset.index_of(&y).ok_or_else(|| parse_err(ln, format!("unknown label `{y}`")))?;
        for (a, b) in [(ix, iy), (iy, ix)] {
            match involution[a] {
                None => involution[a] = Some(b),
                Some(prev) if prev == b => {}
                Some(_) => {
                    return Err(parse_err(ln, format!("`{}` paired twice", poset.label(a))))
                }
            }
        }
    }
    let involution: Vec<usize> = involution
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(0, format!("`{}` has no involution pair", poset.label(i)))))
        .collect::<Result<_>>()?;
    Ok(RawOrthoposet { poset, involution })
}

/// Canonical form: elements in index order, covers sorted, one involution
/// line per orbit keyed by the smaller index.
pub fn write_orthoposet(o: &OrthoPoset) -> Result<String> {
    write_orthoposet_raw(o.poset(), o.involution())
}

pub fn write_orthoposet_raw(p: &FinitePoset, inv: &[usize]) -> Result<String> {
    let m = p.len();
    let mut toks: Vec<String> = Vec::with_capacity(m);
    for i in 0..m {
        let t = if is_token(p.label(i)) {
            p.label(i).to_string()
        } else {
            sanitize_label(p.label(i))
        };
        if t.is_empty() {
            return Err(Error::InvalidLabel(p.label(i).into()));
        }
        toks.push(t);
    }
    {
        let mut seen = std::collections::HashSet::new();
        for t in &toks {
            if !seen.insert(t) {
                return Err(Error::InvalidLabel(t.clone()));
            }
        }
    }
    let mut out = String::from("orthoposet v1\n");
    for t in &toks {
        out.push_str(&format!("element {t}\n"));
    }
    for &(x, y) in p.covers() {
        out.push_str(&format!("cover {} {}\n", toks[x as usize], toks[y as usize]));
    }
    for i in 0..m {
        if i <= inv[i] {
            out.push_str(&format!("involution {} {}\n", toks[i], toks[inv[i]]));
        }
    }
    Ok(out)
}

pub fn parse_subsetfamily(text: &str) -> Result<SubsetFamily> {
    let mut lines = Lines::new(text);
    let (n, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if header != "subsetfamily v1" {
        return Err(parse_err(n, format!("expected `subsetfamily v1`, found `{header}`")));
    }
    let (gl, ground_line) = lines.next().ok_or_else(|| parse_err(n, "missing `ground`"))?;
    let ground: u32 = match ground_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["ground", g] => g.parse().map_err(|_| parse_err(gl, "bad ground size"))?,
        _ => return Err(parse_err(gl, "expected `ground <n>`")),
    };
    if !(1..=24).contains(&ground) {
        return Err(parse_err(gl, "ground size must be between 1 and 24"));
    }
    let mut members = Vec::new();
    while let Some((ln, line)) = lines.next() {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["member", spec] => {
                members.push(parse_subset_token(spec, ground).map_err(|m| parse_err(ln, m))?)
            }
            _ => return Err(parse_err(ln, "expected `member <i,j,...>`")),
        }
    }
    SubsetFamily::from_members(ground, members, FamilyKind::Custom)
}

/// `empty` or a comma list of 1-based ground points.
pub fn parse_subset_token(spec: &str, ground: u32) -> std::result::Result<u32, String> {
    if spec == "empty" {
        return Ok(0);
    }
    let mut mask = 0u32;
    for part in spec.split(',') {
        let v: u32 = part.parse().map_err(|_| format!("bad ground point `{part}`"))?;
        if v == 0 || v > ground {
            return Err(format!("ground point {v} outside 1..={ground}"));
        }
        let bit = 1 << (v - 1);
        if mask & bit != 0 {
            return Err(format!("ground point {v} repeated"));
        }
        mask |= bit;
    }
    Ok(mask)
}

pub fn write_subsetfamily(f: &SubsetFamily) -> String {
    let mut out = String::from("subsetfamily v1\n");
    out.push_str(&format!("ground {}\n", f.ground()));
    for i in 0..f.len() {
        out.push_str(&format!("member {}\n", subset_token(f.mask(i))));
    }
    out
}

pub fn subset_token(mask: u32) -> String {
    if mask == 0 {
        return "empty".into();
    }
    let pts: Vec<String> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
    pts.join(",")
}

/// Either structure kind, detected from the version line.
pub enum Structure {
    Ortho(OrthoPoset),
    Family(SubsetFamily),
}

impl Structure {
    /// The orthoposet view (a family's inclusion order with complementation).
    pub fn ortho(&self) -> &OrthoPoset {
        match self {
            Structure::Ortho(o) => o,
            Structure::Family(f) => f.view(),
        }
    }

    pub fn family(&self) -> Option<&SubsetFamily> {
        match self {
            Structure::Ortho(_) => None,
            Structure::Family(f) => Some(f),
        }
    }
}

/// Raw counterpart of `Structure` for the checking pipeline.
pub enum RawStructure {
    Ortho(RawOrthoposet),
    Family(SubsetFamily),
}

pub fn detect_kind(text: &str) -> Result<&'static str> {
    let mut lines = Lines::new(text);
    let (n, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    match header {
        "orthoposet v1" => Ok("orthoposet"),
        "subsetfamily v1" => Ok("subsetfamily"),
        other => Err(parse_err(n, format!("unknown format header `{other}`"))),
    }
}

pub fn parse_raw(text: &str) -> Result<RawStructure> {
    match detect_kind(text)? {
        "orthoposet" => Ok(RawStructure::Ortho(parse_orthoposet(text)?)),
        _ => Ok(RawStructure::Family(parse_subsetfamily(text)?)),
    }
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    match parse_raw(text)? {
        RawStructure::Ortho(raw) => Ok(Structure::Ortho(raw.into_ortho()?)),
        RawStructure::Family(f) => Ok(Structure::Family(f)),
    }
}

/// Hasse diagram as DOT: one node per element, one edge per cover, rank
/// groups by longest-chain height. Output is a function of the structure.
pub fn to_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        out.push_str(&format!("  \"{}\";\n", p.label(i)));
    }
    let heights = p.heights();
    let max_h = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max_h {
        let level: Vec<usize> = (0..p.len()).filter(|&i| heights[i] == h).collect();
        if level.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for i in level {
            out.push_str(&format!(" \"{}\";", p.label(i)));
        }
        out.push_str(" }\n");
    }
    for &(x, y) in p.covers() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            p.label(x as usize),
            p.label(y as usize)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const O6: &str = include_str!("../fixtures/o6.txt");

    #[test]
    fn o6_round_trip_is_byte_exact() {
        let raw = parse_orthoposet(O6).unwrap();
        let o = raw.into_ortho().unwrap();
        assert_eq!(write_orthoposet(&o).unwrap(), O6);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# leading comment\northoposet v1\n\nelement x # trailing\nelement y\ncover x y\ninvolution x y\n";
        let raw = parse_orthoposet(text).unwrap();
        assert_eq!(raw.poset.len(), 2);
        assert_eq!(raw.involution, vec![1, 0]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_orthoposet("orthoposet v1\nelement x\nwhat x\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
        let err = parse_orthoposet("orthoposet v1\nelement x\ncover x z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn missing_involution_rejected() {
        let err = parse_orthoposet("orthoposet v1\nelement x\nelement y\ncover x y\n").unwrap_err();
        assert!(err.to_string().contains("involution"));
    }

    #[test]
    fn subset_tokens() {
        assert_eq!(parse_subset_token("empty", 6).unwrap(), 0);
        assert_eq!(parse_subset_token("1,4", 6).unwrap(), 0b1001);
        assert!(parse_subset_token("7", 6).is_err());
        assert!(parse_subset_token("1,1", 6).is_err());
        assert_eq!(subset_token(0b1001), "1,4");
        assert_eq!(subset_token(0), "empty");
    }

    #[test]
    fn sanitizer() {
        assert_eq!(sanitize_label("(0,a)"), "0_a");
        assert_eq!(sanitize_label("(a',b)"), "a'_b");
    }
}
