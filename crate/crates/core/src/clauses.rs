//! Clause format: a DRS flattened to one clause per line.
//!
//! Fields are separated by whitespace; sense tags and other constants may be
//! double-quoted; `%` starts a comment. A file holds several DRSs separated
//! by blank lines. System output with several readings per sentence groups
//! them with marker comments:
//!
//! ```text
//! %%% item 1
//! % form 1
//! b1 REF e1
//! b1 sleep "v.01" e1
//!
//! % form 2
//! ...
//! ```
//!
//! Files without `%%% item` markers are read as one DRS per block.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drs::Sort;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clause {
    pub fields: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Variables are unquoted tokens made of one lowercase letter and digits,
/// such as `b1`, `x12`, `e3`.
pub fn is_variable(field: &str) -> bool {
    let mut chars = field.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && field.len() > 1
        && chars.all(|c| c.is_ascii_digit())
}

/// Sort letter of a variable field; `None` for constants.
pub fn variable_sort(field: &str) -> Option<char> {
    is_variable(field).then(|| field.chars().next().unwrap())
}

pub fn sort_letter(sort: Sort) -> char {
    sort.prefix()
}

impl Clause {
    pub fn new(fields: Vec<String>) -> Self {
        Clause { fields }
    }

    pub fn operator(&self) -> &str {
        self.fields.get(1).map(String::as_str).unwrap_or("")
    }

    pub fn parse_line(line: &str) -> Result<Option<Clause>, String> {
        let mut fields = Vec::new();
        let mut chars = line.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.peek() {
                None | Some('%') => break,
                Some('"') => {
                    let mut f = String::from('"');
                    chars.next();
                    loop {
                        match chars.next() {
                            Some('"') => break,
                            Some(c) => f.push(c),
                            None => return Err("unterminated quoted field".into()),
                        }
                    }
                    f.push('"');
                    fields.push(f);
                }
                Some(_) => {
                    let mut f = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_whitespace() || c == '%' {
                            break;
                        }
                        f.push(c);
                        chars.next();
                    }
                    fields.push(f);
                }
            }
        }
        match fields.len() {
            0 => Ok(None),
            1 => Err("clause needs at least a box and an operator".into()),
            _ => Ok(Some(Clause { fields })),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fields.join(" "))
    }
}

impl ClauseSet {
    pub fn new(clauses: Vec<Clause>) -> Self {
        ClauseSet { clauses }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Distinct variable fields in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for c in &self.clauses {
            for f in &c.fields {
                if is_variable(f) && !seen.contains(f) {
                    seen.push(f.clone());
                }
            }
        }
        seen
    }

    pub fn parse(text: &str) -> Result<ClauseSet, ClauseError> {
        let mut clauses = Vec::new();
        for (i, line) in text.lines().enumerate() {
            match Clause::parse_line(line) {
                Ok(Some(c)) => clauses.push(c),
                Ok(None) => {}
                Err(message) => {
                    return Err(ClauseError::Syntax {
                        line: i + 1,
                        message,
                    })
                }
            }
        }
        Ok(ClauseSet { clauses })
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}", c)?;
        }
        Ok(())
    }
}

fn item_marker(line: &str) -> bool {
    let rest = match line.trim().strip_prefix("%%% item") {
        Some(r) => r.trim(),
        None => return false,
    };
    !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())
}

fn form_marker(line: &str) -> bool {
    let rest = match line.trim().strip_prefix("% form") {
        Some(r) => r.trim(),
        None => return false,
    };
    !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit() || c == '/')
}

/// Reads a clause file into items, each holding zero or more readings.
pub fn parse_items(text: &str) -> Result<Vec<Vec<ClauseSet>>, ClauseError> {
    let lines: Vec<&str> = text.lines().collect();
    let grouped = lines.iter().any(|l| item_marker(l));
    let mut items: Vec<Vec<ClauseSet>> = Vec::new();
    // Current block: clauses plus whether a form marker opened it.
    let mut block: Option<(Vec<Clause>, bool)> = None;

    fn flush(
        block: &mut Option<(Vec<Clause>, bool)>,
        items: &mut Vec<Vec<ClauseSet>>,
        grouped: bool,
    ) {
        if let Some((clauses, marked)) = block.take() {
            if clauses.is_empty() && !marked {
                return;
            }
            let set = ClauseSet::new(clauses);
            if grouped {
                if let Some(last) = items.last_mut() {
                    last.push(set);
                }
            } else {
                items.push(vec![set]);
            }
        }
    }

    for (i, line) in lines.iter().enumerate() {
        if grouped && item_marker(line) {
            flush(&mut block, &mut items, grouped);
            items.push(Vec::new());
            continue;
        }
        if form_marker(line) {
            flush(&mut block, &mut items, grouped);
            block = Some((Vec::new(), true));
            continue;
        }
        if line.trim().is_empty() {
            if matches!(&block, Some((c, _)) if !c.is_empty()) {
                flush(&mut block, &mut items, grouped);
            }
            continue;
        }
        match Clause::parse_line(line) {
            Ok(Some(c)) => {
                if grouped && items.is_empty() {
                    return Err(ClauseError::Syntax {
                        line: i + 1,
                        message: "clause before the first item marker".into(),
                    });
                }
                block.get_or_insert_with(|| (Vec::new(), false)).0.push(c);
            }
            Ok(None) => {}
            Err(message) => {
                return Err(ClauseError::Syntax {
                    line: i + 1,
                    message,
                })
            }
        }
    }
    flush(&mut block, &mut items, grouped);
    Ok(items)
}

/// Writes items with item and form markers; the inverse of [`parse_items`].
pub fn write_items(items: &[Vec<ClauseSet>]) -> String {
    let mut out = String::new();
    for (i, forms) in items.iter().enumerate() {
        out.push_str(&format!("%%% item {}\n", i + 1));
        for (j, form) in forms.iter().enumerate() {
            out.push_str(&format!("% form {}/{}\n", j + 1, forms.len()));
            out.push_str(&form.to_string());
            out.push('\n');
        }
        if forms.is_empty() {
            out.push('\n');
        }
    }
    out
}
