//! Line-oriented text format for groupoid (`.grpd`) and functor (`.fnct`)
//! documents, the JSON alternative, and DOT output.
//!
//! ```text
//! # pair on {1, 2}
//! format 1
//! object 1
//! object 2
//! arrow (1,2) 2 1
//! unit 1 (1,1)
//! inverse (1,2) (2,1)
//! compose (1,2) (2,1) (1,1)
//! ```
//!
//! `arrow` lists id, source, target; `compose x y z` reads `x ∘ y = z`.
//! Tokens are separated by whitespace; a token holding whitespace, `#`, `"`
//! or `\` is written in double quotes with `\"` and `\\` escapes. `#` starts
//! a comment outside quotes.

pub mod dot;

use std::fmt::Write as _;

use crate::document::{ArrowRecord, FunctorDocument, GroupoidDocument, GroupoidRef, FORMAT_VERSION};
use crate::error::{Error, Result};

fn tokenize(line: &str, lineno: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.peek() {
            None | Some('#') => return Ok(out),
            Some('"') => {
                chars.next();
                let mut tok = String::new();
                loop {
                    match chars.next() {
                        None => return Err(parse_error(lineno, "unterminated quoted token")),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(c @ ('"' | '\\')) => tok.push(c),
                            Some('n') => tok.push('\n'),
                            Some('r') => tok.push('\r'),
                            _ => return Err(parse_error(lineno, "bad escape in quoted token")),
                        },
                        Some(c) => tok.push(c),
                    }
                }
                if chars.peek().is_some_and(|c| !c.is_whitespace() && *c != '#') {
                    return Err(parse_error(lineno, "quoted token runs into the next one"));
                }
                out.push(tok);
            }
            Some(_) => {
                let mut tok = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '#' {
                        break;
                    }
                    if c == '"' || c == '\\' {
                        return Err(parse_error(lineno, "quote or backslash inside a bare token"));
                    }
                    tok.push(c);
                    chars.next();
                }
                out.push(tok);
            }
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// A token as written by the serializer.
pub fn quote(token: &str) -> String {
    let plain =
        !token.is_empty() && !token.chars().any(|c| c.is_whitespace() || matches!(c, '#' | '"' | '\\'));
    if plain {
        return token.to_string();
    }
    let mut s = String::from("\"");
    for c in token.chars() {
        match c {
            '"' | '\\' => {
                s.push('\\');
                s.push(c);
            }
            '\n' => s.push_str("\\n"),
            '\r' => s.push_str("\\r"),
            _ => s.push(c),
        }
    }
    s.push('"');
    s
}

fn arity(tokens: &[String], n: usize, line: usize) -> Result<()> {
    if tokens.len() == n + 1 {
        Ok(())
    } else {
        Err(parse_error(line, format!("{} takes {n} field(s), found {}", tokens[0], tokens.len() - 1)))
    }
}

/// Applies one groupoid line; returns false for keywords it does not know.
fn groupoid_line(doc: &mut GroupoidDocument, t: &[String], line: usize) -> Result<bool> {
    match t[0].as_str() {
        "format" => {
            arity(t, 1, line)?;
            doc.format_version = t[1].clone();
        }
        "object" => {
            arity(t, 1, line)?;
            doc.objects.push(t[1].clone());
        }
        "arrow" => {
            arity(t, 3, line)?;
            doc.arrows.push(ArrowRecord { id: t[1].clone(), src: t[2].clone(), tgt: t[3].clone() });
        }
        "unit" => {
            arity(t, 2, line)?;
            doc.units.push((t[1].clone(), t[2].clone()));
        }
        "inverse" => {
            arity(t, 2, line)?;
            doc.inverses.push((t[1].clone(), t[2].clone()));
        }
        "compose" => {
            arity(t, 3, line)?;
            doc.compose.push((t[1].clone(), t[2].clone(), t[3].clone()));
        }
        _ => return Ok(false),
    }
    Ok(true)
}

fn check_version(v: &str, line: usize) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(parse_error(line, format!("unsupported format version {v}")))
    }
}

/// Parses a `.grpd` document. Structural checks are left to
/// [`Groupoid::validate`](crate::Groupoid::validate).
pub fn parse_groupoid(text: &str) -> Result<GroupoidDocument> {
    let mut doc = GroupoidDocument::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = tokenize(raw, line)?;
        if t.is_empty() {
            continue;
        }
        if !groupoid_line(&mut doc, &t, line)? {
            return Err(parse_error(line, format!("unknown keyword {}", t[0])));
        }
        if t[0] == "format" {
            check_version(&doc.format_version, line)?;
        }
    }
    Ok(doc)
}

fn write_groupoid_body(out: &mut String, doc: &GroupoidDocument, indent: &str) {
    let mut line = |fields: &[&str]| {
        let q: Vec<String> = fields.iter().map(|f| quote(f)).collect();
        let _ = writeln!(out, "{indent}{}", q.join(" "));
    };
    line(&["format", &doc.format_version]);
    for o in &doc.objects {
        line(&["object", o]);
    }
    for a in &doc.arrows {
        line(&["arrow", &a.id, &a.src, &a.tgt]);
    }
    for (o, u) in &doc.units {
        line(&["unit", o, u]);
    }
    for (a, i) in &doc.inverses {
        line(&["inverse", a, i]);
    }
    for (x, y, z) in &doc.compose {
        line(&["compose", x, y, z]);
    }
}

/// Writes sections in the order format, objects, arrows, units, inverses,
/// compose.
pub fn serialize_groupoid(doc: &GroupoidDocument) -> String {
    let mut out = String::new();
    write_groupoid_body(&mut out, doc, "");
    out
}

/// Parses a `.fnct` document:
///
/// ```text
/// format 1
/// source path pair2.grpd
/// target begin
///   object *
///   ...
/// end
/// object 1 *
/// arrow (1,2) e
/// ```
pub fn parse_functor(text: &str) -> Result<FunctorDocument> {
    let mut format_version = FORMAT_VERSION.to_string();
    let mut ends: [Option<GroupoidRef>; 2] = [None, None];
    let mut inline: Option<(usize, GroupoidDocument)> = None;
    let mut object_map = Vec::new();
    let mut arrow_map = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = tokenize(raw, line)?;
        if t.is_empty() {
            continue;
        }
        if let Some((which, doc)) = inline.as_mut() {
            if t[0] == "end" {
                arity(&t, 0, line)?;
                ends[*which] = Some(GroupoidRef::Inline(std::mem::take(doc)));
                inline = None;
            } else if !groupoid_line(doc, &t, line)? {
                return Err(parse_error(line, format!("unknown keyword {} in inline groupoid", t[0])));
            }
            continue;
        }
        match t[0].as_str() {
            "format" => {
                arity(&t, 1, line)?;
                check_version(&t[1], line)?;
                format_version = t[1].clone();
            }
            "source" | "target" => {
                let which = usize::from(t[0] == "target");
                if ends[which].is_some() {
                    return Err(parse_error(line, format!("{} given twice", t[0])));
                }
                match t.get(1).map(String::as_str) {
                    Some("path") => {
                        arity(&t, 2, line)?;
                        ends[which] = Some(GroupoidRef::Path(t[2].clone()));
                    }
                    Some("begin") => {
                        arity(&t, 1, line)?;
                        inline = Some((which, GroupoidDocument::default()));
                    }
                    _ => return Err(parse_error(line, format!("{} expects `path <file>` or `begin`", t[0]))),
                }
            }
            "object" => {
                arity(&t, 2, line)?;
                object_map.push((t[1].clone(), t[2].clone()));
            }
            "arrow" => {
                arity(&t, 2, line)?;
                arrow_map.push((t[1].clone(), t[2].clone()));
            }
            k => return Err(parse_error(line, format!("unknown keyword {k}"))),
        }
    }
    if inline.is_some() {
        return Err(parse_error(text.lines().count(), "inline groupoid is not closed by `end`"));
    }
    let [source, target] = ends;
    let source = source.ok_or_else(|| parse_error(0, "missing source"))?;
    let target = target.ok_or_else(|| parse_error(0, "missing target"))?;
    Ok(FunctorDocument { format_version, source, target, object_map, arrow_map })
}

pub fn serialize_functor(doc: &FunctorDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format {}", quote(&doc.format_version));
    for (name, r) in [("source", &doc.source), ("target", &doc.target)] {
        match r {
            GroupoidRef::Path(p) => {
                let _ = writeln!(out, "{name} path {}", quote(p));
            }
            GroupoidRef::Inline(g) => {
                let _ = writeln!(out, "{name} begin");
                write_groupoid_body(&mut out, g, "  ");
                out.push_str("end\n");
            }
        }
    }
    for (k, v) in &doc.object_map {
        let _ = writeln!(out, "object {} {}", quote(k), quote(v));
    }
    for (k, v) in &doc.arrow_map {
        let _ = writeln!(out, "arrow {} {}", quote(k), quote(v));
    }
    out
}

pub fn groupoid_to_json(doc: &GroupoidDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn groupoid_from_json(text: &str) -> Result<GroupoidDocument> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
}

pub fn functor_to_json(doc: &FunctorDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn functor_from_json(text: &str) -> Result<FunctorDocument> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
}

/// Reads either format, JSON when the first non-blank character is `{`.
pub fn read_groupoid(text: &str) -> Result<GroupoidDocument> {
    if text.trim_start().starts_with('{') {
        groupoid_from_json(text)
    } else {
        parse_groupoid(text)
    }
}

pub fn read_functor(text: &str) -> Result<FunctorDocument> {
    if text.trim_start().starts_with('{') {
        functor_from_json(text)
    } else {
        parse_functor(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::groupoid::Groupoid;

    #[test]
    fn pair_round_trip() {
        let doc = GroupoidDocument::from_groupoid(&pair(&["1", "2"]));
        let text = serialize_groupoid(&doc);
        let back = parse_groupoid(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(serialize_groupoid(&back), text);
        assert_eq!(back.arrows.len(), 4);
        assert_eq!(back.compose.len(), 8);
        assert!(Groupoid::validate(&back).is_ok());
        assert_eq!(groupoid_from_json(&groupoid_to_json(&doc)).unwrap(), doc);
    }

    #[test]
    fn quoting() {
        for tok in ["a b", "#", "x\"y", "back\\slash", "", "plain"] {
            let line = format!("object {}", quote(tok));
            assert_eq!(tokenize(&line, 1).unwrap(), vec!["object".to_string(), tok.to_string()]);
        }
        assert_eq!(tokenize("unit a e # note", 1).unwrap().len(), 3);
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_groupoid("object a\nobjekt b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_groupoid("object \"a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_groupoid("arrow f a\n").unwrap_err();
        assert_eq!(err.to_string(), "parse error at line 1: arrow takes 3 field(s), found 2");
        assert!(parse_groupoid("format 2\n").is_err());
    }

    #[test]
    fn missing_unit_is_diagnosed() {
        let doc = parse_groupoid("object a\narrow e a a\ninverse e e\ncompose e e e\n").unwrap();
        let err = Groupoid::validate(&doc).unwrap_err();
        assert!(err.to_string().contains("unit missing for object a"));
    }

    #[test]
    fn functor_round_trip() {
        let doc = FunctorDocument {
            format_version: FORMAT_VERSION.into(),
            source: GroupoidRef::Path("my pair.grpd".into()),
            target: GroupoidRef::Inline(GroupoidDocument::from_groupoid(&null(&["*"]))),
            object_map: vec![("1".into(), "*".into())],
            arrow_map: vec![("(1,1)".into(), "(*,*)".into())],
        };
        let text = serialize_functor(&doc);
        let back = parse_functor(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(serialize_functor(&back), text);
        assert_eq!(functor_from_json(&functor_to_json(&doc)).unwrap(), doc);
        assert!(parse_functor("source begin\nobject a\n").is_err());
    }
}
