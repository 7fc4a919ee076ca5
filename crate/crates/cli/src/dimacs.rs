//! DIMACS CNF input restricted to 3-literal clauses.

use wgfam_core::sat::{Literal, Sat3Instance};

use crate::error::ParseError;

/// Parses a DIMACS CNF file whose clauses all have exactly three literals.
///
/// Accepts `c` comment lines, one `p cnf <vars> <clauses>` header before
/// any clause, clauses spread over any number of lines and terminated by
/// `0`, and an optional `%` end marker. Variable `i` becomes `x<i>`. A
/// clause containing both `v` and `-v` is rejected: it is always satisfied
/// and its gadget set could never keep an endpoint.
pub fn parse_dimacs(text: &str) -> Result<Sat3Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut clause_lines: Vec<usize> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(ParseError::new(line_no, "second problem line"));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(ParseError::new(line_no, "problem line after clauses"));
            }
            let words: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match words.as_slice() {
                ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            match parsed {
                Some(h) => header = Some(h),
                None => {
                    return Err(ParseError::new(line_no, "expected `p cnf <variables> <clauses>`"))
                }
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::new(line_no, "clause before the `p cnf` line"));
        };
        for word in line.split_whitespace() {
            let lit: i64 = word
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("`{word}` is not a literal")))?;
            if lit == 0 {
                if current.len() != 3 {
                    return Err(ParseError::new(
                        line_no,
                        format!("clause has {} literals, expected exactly 3", current.len()),
                    ));
                }
                clauses.push([current[0], current[1], current[2]]);
                clause_lines.push(current_start);
                current.clear();
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > num_vars {
                return Err(ParseError::new(
                    line_no,
                    format!("variable {var} exceeds the declared {num_vars}"),
                ));
            }
            if current.is_empty() {
                current_start = line_no;
            }
            current.push(if lit > 0 { Literal::pos(var - 1) } else { Literal::neg(var - 1) });
            if current.len() > 3 {
                return Err(ParseError::new(line_no, "clause has more than 3 literals"));
            }
        }
    }

    let Some((num_vars, num_clauses)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing `p cnf` line"));
    };
    if !current.is_empty() {
        return Err(ParseError::new(current_start, "clause not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(ParseError::new(
            last_line.max(1),
            format!("header declares {num_clauses} clauses, found {}", clauses.len()),
        ));
    }
    for (i, c) in clauses.iter().enumerate() {
        if c.iter().any(|a| c.iter().any(|b| a.var == b.var && a.negated != b.negated)) {
            return Err(ParseError::new(
                clause_lines[i],
                "clause contains a variable and its negation",
            ));
        }
    }
    Sat3Instance::with_numbered_variables(num_vars, clauses)
        .map_err(|e| ParseError::new(last_line.max(1), e.to_string()))
}
