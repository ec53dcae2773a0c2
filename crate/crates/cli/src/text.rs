//! Text formats for posets (`elements:` / `covers:`) and simplicial
//! complexes (`facets:`), with a canonical writer for each.

use std::collections::HashMap;

use thiserror::Error;
use zipper_core::ops::FacetComplex;
use zipper_core::{MonotoneMap, Poset};

pub const POSET_HEADER: &str = "format: zipper-poset 1";
pub const FACETS_HEADER: &str = "format: zipper-facets 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: zipper_core::Error,
    },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A parsed input file: a poset, or a complex whose face poset is the subject.
#[derive(Clone, Debug)]
pub enum Subject {
    Poset(Poset),
    Facets(FacetComplex),
}

impl Subject {
    pub fn poset(&self) -> Poset {
        match self {
            Subject::Poset(p) => p.clone(),
            Subject::Facets(k) => k.face_poset(),
        }
    }
}

/// One `key: value` line with the column at which the value starts.
struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    offset: usize,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(syntax(line, col, "expected `key: value`"));
        };
        out.push(Entry {
            line,
            key: content[..colon].trim(),
            value: &content[colon + 1..],
            offset: colon + 2,
        });
    }
    Ok(out)
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens<'a>(e: &Entry<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in e.value.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((e.offset + s, &e.value[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((e.offset + s, &e.value[s..]));
    }
    out
}

fn check_label(
    line: usize,
    col: usize,
    label: &str,
    forbidden: &[char],
) -> Result<(), FormatError> {
    match label.char_indices().find(|(_, c)| forbidden.contains(c)) {
        Some((i, c)) => Err(syntax(
            line,
            col + i,
            format!("`{c}` is not allowed in a name"),
        )),
        None => Ok(()),
    }
}

fn check_header(e: &Entry<'_>, expected: &str) -> Result<(), FormatError> {
    let want = expected.trim_start_matches("format:").trim();
    if e.value.trim() == want {
        Ok(())
    } else {
        Err(syntax(
            e.line,
            e.offset,
            format!("unsupported format `{}`, expected `{want}`", e.value.trim()),
        ))
    }
}

/// True when the text declares facets rather than elements.
pub fn is_facet_text(text: &str) -> bool {
    entries(text)
        .map(|es| es.iter().any(|e| e.key == "facets"))
        .unwrap_or(false)
}

pub fn parse_subject(text: &str) -> Result<Subject, FormatError> {
    if is_facet_text(text) {
        parse_facets(text).map(Subject::Facets)
    } else {
        parse_poset(text).map(Subject::Poset)
    }
}

/// Reads `elements:` and `covers:` lines; each may repeat. A cover token
/// `a<b<c` stands for `a<b` and `b<c`. Relations need not be covers.
pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rel = Vec::new();
    let mut last_line = 0;
    let mut saw_elements = false;
    for e in entries(text)? {
        last_line = e.line;
        match e.key {
            "format" => check_header(&e, POSET_HEADER)?,
            "name" => {}
            "elements" => {
                saw_elements = true;
                for (col, t) in tokens(&e) {
                    check_label(e.line, col, t, &['<'])?;
                    if index.insert(t.to_string(), labels.len()).is_some() {
                        return Err(FormatError::Structure {
                            line: e.line,
                            source: zipper_core::Error::DuplicateLabel(t.into()),
                        });
                    }
                    labels.push(t.to_string());
                }
            }
            "covers" => {
                for (col, t) in tokens(&e) {
                    let parts: Vec<&str> = t.split('<').collect();
                    if parts.len() < 2 {
                        return Err(syntax(e.line, col, format!("expected `a<b`, found `{t}`")));
                    }
                    let mut at = col;
                    let mut ids = Vec::with_capacity(parts.len());
                    for part in parts {
                        if part.is_empty() {
                            return Err(syntax(e.line, at, "empty name in relation"));
                        }
                        let id = *index.get(part).ok_or_else(|| {
                            syntax(e.line, at, format!("unknown element `{part}`"))
                        })?;
                        ids.push(id);
                        at += part.len() + 1;
                    }
                    rel.extend(ids.windows(2).map(|w| (w[0], w[1])));
                }
            }
            other => return Err(syntax(e.line, 1, format!("unknown key `{other}`"))),
        }
    }
    if !saw_elements {
        return Err(syntax(last_line.max(1), 1, "missing `elements:` line"));
    }
    Poset::new(labels, &rel).map_err(|source| FormatError::Structure {
        line: last_line,
        source,
    })
}

/// Order of elements in canonical files: by height, then by label.
/// Returns the reordered poset and `pos[old] = new`.
pub fn canonical_form(p: &Poset) -> (Poset, Vec<usize>) {
    let h = p.heights();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| h[a].cmp(&h[b]).then_with(|| p.label(a).cmp(p.label(b))));
    let mut pos = vec![0; p.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    (p.permuted(&order), pos)
}

/// Canonical text: independent of the input's element order, so equal
/// posets (same labels, same order relation) give identical bytes.
pub fn write_poset(p: &Poset, name: Option<&str>) -> String {
    let (c, _) = canonical_form(p);
    let mut out = String::new();
    out.push_str(POSET_HEADER);
    out.push('\n');
    if let Some(n) = name {
        out.push_str(&format!("name: {n}\n"));
    }
    out.push_str("elements:");
    for l in c.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push_str("\ncovers:");
    let mut pairs = c.cover_pairs();
    pairs.sort_unstable_by_key(|&(a, b)| (b, a));
    for (a, b) in pairs {
        out.push_str(&format!(" {}<{}", c.label(a), c.label(b)));
    }
    out.push('\n');
    out
}

fn split_facet(token: &str) -> Vec<&str> {
    if token.contains(['.', ',']) {
        token.split(['.', ',']).collect()
    } else {
        token
            .char_indices()
            .map(|(i, c)| &token[i..i + c.len_utf8()])
            .collect()
    }
}

/// Reads `facets:` lines (and an optional `vertices:` line). A facet token
/// is split on `.` or `,` when present, otherwise into single characters.
pub fn parse_facets(text: &str) -> Result<FacetComplex, FormatError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut declared = false;
    let mut facets: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut last_line = 1;
    for e in entries(text)? {
        last_line = e.line;
        match e.key {
            "format" => check_header(&e, FACETS_HEADER)?,
            "name" => {}
            "vertices" => {
                declared = true;
                for (col, t) in tokens(&e) {
                    check_label(e.line, col, t, &['.', ',', '<'])?;
                    if index.insert(t.to_string(), vertices.len()).is_some() {
                        return Err(FormatError::Structure {
                            line: e.line,
                            source: zipper_core::Error::DuplicateLabel(t.into()),
                        });
                    }
                    vertices.push(t.to_string());
                }
            }
            "facets" => {
                for (col, t) in tokens(&e) {
                    check_label(e.line, col, t, &['<'])?;
                    let mut f = Vec::new();
                    for v in split_facet(t) {
                        if v.is_empty() {
                            return Err(syntax(e.line, col, "empty vertex name in facet"));
                        }
                        let id = match index.get(v) {
                            Some(&i) => i,
                            None if !declared => {
                                index.insert(v.to_string(), vertices.len());
                                vertices.push(v.to_string());
                                vertices.len() - 1
                            }
                            None => {
                                return Err(syntax(e.line, col, format!("undeclared vertex `{v}`")))
                            }
                        };
                        f.push(id);
                    }
                    facets.push((e.line, f));
                }
            }
            other => return Err(syntax(e.line, 1, format!("unknown key `{other}`"))),
        }
    }
    let line = facets.last().map_or(last_line, |f| f.0);
    FacetComplex::new(vertices, facets.into_iter().map(|f| f.1).collect())
        .map_err(|source| FormatError::Structure { line, source })
}

/// Canonical facet text: vertices sorted by name, facets sorted.
pub fn write_facets(k: &FacetComplex, name: Option<&str>) -> String {
    let c = canonical_complex(k);
    let mut out = String::new();
    out.push_str(FACETS_HEADER);
    out.push('\n');
    if let Some(n) = name {
        out.push_str(&format!("name: {n}\n"));
    }
    out.push_str("vertices:");
    for v in c.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push_str("\nfacets:");
    for f in c.facets() {
        out.push(' ');
        let names: Vec<&str> = f.iter().map(|&v| c.vertices()[v].as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            out.push_str(&names.concat());
        } else {
            out.push_str(&names.join("."));
        }
    }
    out.push('\n');
    out
}

/// The complex with vertices sorted by name.
pub fn canonical_complex(k: &FacetComplex) -> FacetComplex {
    let mut order: Vec<usize> = (0..k.vertices().len()).collect();
    order.sort_by(|&a, &b| k.vertices()[a].cmp(&k.vertices()[b]));
    let mut pos = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let vertices = order.iter().map(|&x| k.vertices()[x].clone()).collect();
    let facets = k
        .facets()
        .iter()
        .map(|f| f.iter().map(|&v| pos[v]).collect())
        .collect();
    FacetComplex::new(vertices, facets).expect("renaming keeps a valid complex")
}

/// Canonical text of either kind of subject, without a name line.
pub fn subject_text(s: &Subject) -> String {
    match s {
        Subject::Poset(p) => write_poset(p, None),
        Subject::Facets(k) => write_facets(k, None),
    }
}

/// Reads `map: a->x b->y` lines into a monotone map between the given posets.
pub fn parse_map(text: &str, source: Poset, target: Poset) -> Result<MonotoneMap, FormatError> {
    let mut table = vec![None; source.len()];
    let mut last_line = 1;
    for e in entries(text)? {
        last_line = e.line;
        if e.key != "map" {
            return Err(syntax(e.line, 1, format!("unknown key `{}`", e.key)));
        }
        for (col, t) in tokens(&e) {
            let Some((a, b)) = t.split_once("->") else {
                return Err(syntax(e.line, col, format!("expected `a->x`, found `{t}`")));
            };
            let x = source
                .index_of(a)
                .ok_or_else(|| syntax(e.line, col, format!("unknown source element `{a}`")))?;
            let y = target.index_of(b).ok_or_else(|| {
                syntax(
                    e.line,
                    col + a.len() + 2,
                    format!("unknown target element `{b}`"),
                )
            })?;
            if table[x].replace(y).is_some() {
                return Err(syntax(e.line, col, format!("`{a}` is mapped twice")));
            }
        }
    }
    if let Some(x) = table.iter().position(Option::is_none) {
        return Err(syntax(
            last_line,
            1,
            format!("no image for `{}`", source.label(x)),
        ));
    }
    MonotoneMap::new(source, target, table.into_iter().flatten().collect()).map_err(|source| {
        FormatError::Structure {
            line: last_line,
            source,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zipper_core::find_isomorphism;
    use zipper_core::ops::simplex;

    #[test]
    fn edge_from_text() {
        let p = parse_poset("elements: a b ab\ncovers: a<ab b<ab").unwrap();
        assert!(p.same_as(&simplex(&["a", "b"])));
    }

    #[test]
    fn facets_of_a_triangle() {
        let k = parse_facets("facets: abc").unwrap();
        assert!(find_isomorphism(&k.face_poset(), &simplex(&["a", "b", "c"])).is_some());
        let long = parse_facets("facets: v1.v2 v2,v3").unwrap();
        assert_eq!(long.vertices(), &["v1", "v2", "v3"]);
        assert_eq!(long.facets().len(), 2);
    }

    #[test]
    fn cycle_names_both_elements() {
        let err = parse_poset("elements: a b\ncovers: a<b b<a").unwrap_err();
        let msg = err.to_string();
        assert!(
            matches!(
                err,
                FormatError::Structure {
                    source: zipper_core::Error::Cycle(_),
                    ..
                }
            ),
            "{msg}"
        );
        assert!(msg.contains('a') && msg.contains('b'), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_poset("elements: a b\ncovers: a<c").unwrap_err(),
            FormatError::Syntax {
                line: 2,
                column: 11,
                message: "unknown element `c`".into()
            }
        );
        assert!(matches!(
            parse_poset("elements: a\nnonsense"),
            Err(FormatError::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_poset("elements: a a"),
            Err(FormatError::Structure {
                source: zipper_core::Error::DuplicateLabel(_),
                ..
            })
        ));
        assert!(matches!(
            parse_poset("covers: a<b"),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poset("elements: a\ncovers: a"),
            Err(FormatError::Syntax {
                line: 2,
                column: 9,
                ..
            })
        ));
    }

    #[test]
    fn canonical_text_round_trips() {
        let p = parse_poset("# shuffled\nelements: ab b a\ncovers: b<ab a<ab").unwrap();
        let text = write_poset(&p, Some("edge"));
        assert_eq!(
            text,
            "format: zipper-poset 1\nname: edge\nelements: a b ab\ncovers: a<ab b<ab\n"
        );
        assert_eq!(
            write_poset(&parse_poset(&text).unwrap(), Some("edge")),
            text
        );
        let k = parse_facets("facets: cb ba").unwrap();
        let ft = write_facets(&k, None);
        assert_eq!(
            ft,
            "format: zipper-facets 1\nvertices: a b c\nfacets: ab bc\n"
        );
        assert_eq!(write_facets(&parse_facets(&ft).unwrap(), None), ft);
    }

    #[test]
    fn maps_from_text() {
        let s = simplex(&["a", "b"]);
        let t = Poset::point("x");
        let f = parse_map("map: a->x b->x ab->x", s.clone(), t.clone()).unwrap();
        assert_eq!(f.table(), &[0, 0, 0]);
        assert!(matches!(
            parse_map("map: a->x", s.clone(), t.clone()),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_map("map: a->y b->x ab->x", s, t),
            Err(FormatError::Syntax {
                line: 1,
                column: 9,
                ..
            })
        ));
    }
}
