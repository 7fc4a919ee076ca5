//! The set-family text format.
//!
//! One set per line, elements separated by whitespace, `{}` for the empty
//! set. Lines starting with `#` are comments and blank lines are skipped. An
//! optional `@ground x y z` line before the first set fixes the ground set
//! and its order; without it the ground set is every element named, in
//! order of first appearance.

use std::collections::HashMap;
use std::sync::Arc;

use wgfam_core::{GroundSet, SetFamily, StateSet};

use crate::error::ParseError;

/// A parsed family file.
#[derive(Debug, Clone)]
pub struct FamilyDocument {
    pub family: SetFamily,
    /// Source line (1-based) of each set of `family`, in order.
    pub lines: Vec<usize>,
    /// Whether the file had an `@ground` line.
    pub ground_declared: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Keep the first copy of a repeated set instead of failing.
    pub dedupe: bool,
}

/// Parses raw bytes, reporting invalid UTF-8 with its line number.
pub fn parse_family_bytes(bytes: &[u8], options: ParseOptions) -> Result<FamilyDocument, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_family(text, options),
        Err(e) => {
            let line = 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
            Err(ParseError::new(line, "invalid UTF-8"))
        }
    }
}

pub fn parse_family(text: &str, options: ParseOptions) -> Result<FamilyDocument, ParseError> {
    let mut ground = GroundSet::new();
    let mut declared = false;
    let mut sets: Vec<StateSet> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut first_line: HashMap<StateSet, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(bad) = line.chars().find(|c| c.is_control() && !c.is_whitespace()) {
            return Err(ParseError::new(line_no, format!("bad character U+{:04X}", bad as u32)));
        }
        if let Some(rest) = line.strip_prefix('@') {
            let mut words = rest.split_whitespace();
            match words.next() {
                Some("ground") => {}
                Some(other) => {
                    return Err(ParseError::new(line_no, format!("unknown directive `@{other}`")))
                }
                None => return Err(ParseError::new(line_no, "empty directive")),
            }
            if declared {
                return Err(ParseError::new(line_no, "second @ground line"));
            }
            if !sets.is_empty() {
                return Err(ParseError::new(line_no, "@ground must come before the first set"));
            }
            for word in words {
                check_token(word).map_err(|m| ParseError::new(line_no, m))?;
                if ground.index_of(word).is_some() {
                    return Err(ParseError::new(line_no, format!("`{word}` declared twice")));
                }
                ground.intern(word).map_err(|e| ParseError::new(line_no, e.to_string()))?;
            }
            declared = true;
            continue;
        }

        let set = if line == "{}" {
            StateSet::new()
        } else {
            let mut set = StateSet::new();
            for token in line.split_whitespace() {
                check_token(token).map_err(|m| ParseError::new(line_no, m))?;
                let index = match ground.index_of(token) {
                    Some(i) => i,
                    None if declared => {
                        return Err(ParseError::new(
                            line_no,
                            format!("`{token}` is not in the declared ground set"),
                        ))
                    }
                    None => ground
                        .intern(token)
                        .map_err(|e| ParseError::new(line_no, e.to_string()))?,
                };
                if !set.insert(index) {
                    return Err(ParseError::new(line_no, format!("`{token}` repeated")));
                }
            }
            set
        };
        if let Some(&earlier) = first_line.get(&set) {
            if options.dedupe {
                continue;
            }
            return Err(ParseError::new(
                line_no,
                format!("duplicate of the set on line {earlier} (use --dedupe to drop repeats)"),
            ));
        }
        first_line.insert(set.clone(), line_no);
        sets.push(set);
        lines.push(line_no);
    }

    if sets.is_empty() {
        return Err(ParseError::new(text.lines().count().max(1), "no sets in input"));
    }
    let family = SetFamily::new(Arc::new(ground), sets)
        .map_err(|e| ParseError::new(lines[0], e.to_string()))?;
    Ok(FamilyDocument {
        family,
        lines,
        ground_declared: declared,
    })
}

/// Why a token cannot be an element name, if it cannot.
fn check_token(token: &str) -> Result<(), String> {
    if token == "{}" {
        return Err("`{}` must stand alone on its line".into());
    }
    if token.contains(['{', '}']) {
        return Err(format!("`{token}`: braces are not allowed in element names"));
    }
    if token.starts_with(['#', '@']) {
        return Err(format!("`{token}`: element names cannot start with `#` or `@`"));
    }
    Ok(())
}

/// Whether `name` can be written in the format.
pub fn is_valid_element_name(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(|c| c.is_whitespace() || c.is_control())
        && check_token(name).is_ok()
}

/// Element names of `set`, space separated, or `{}`.
pub fn format_set(ground: &GroundSet, set: &StateSet) -> String {
    ground.display(set)
}

/// Parses a set written as on a family line (`{}` or names), against an
/// existing ground set.
pub fn parse_set(ground: &GroundSet, text: &str) -> Result<StateSet, String> {
    let text = text.trim();
    if text == "{}" || text.is_empty() {
        return Ok(StateSet::new());
    }
    text.split_whitespace()
        .map(|t| {
            ground
                .index_of(t)
                .ok_or_else(|| format!("unknown element `{t}`"))
        })
        .collect()
}

/// Writes `f` in the text format, in the family's own set order.
///
/// An `@ground` line is written only when reading the sets back would not
/// reproduce the ground set by itself, so `parse_family(serialize_family(f))`
/// always gives back `f` with the same ground set.
pub fn serialize_family(f: &SetFamily) -> String {
    let ground = f.ground();
    let mut out = String::new();
    if !implied_ground_matches(f) {
        out.push_str("@ground");
        for name in ground.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for set in f.iter() {
        out.push_str(&format_set(ground, set));
        out.push('\n');
    }
    out
}

/// Whether interning the elements of `f` in reading order yields exactly
/// its ground set.
fn implied_ground_matches(f: &SetFamily) -> bool {
    let mut next = 0u32;
    let mut seen = vec![false; f.ground().len()];
    for set in f.iter() {
        for e in set.iter() {
            if !seen[e as usize] {
                if e != next {
                    return false;
                }
                seen[e as usize] = true;
                next += 1;
            }
        }
    }
    next as usize == f.ground().len()
}
