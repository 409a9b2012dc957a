//! Text format for list assignments.
//!
//! ```text
//! lambda <comma-separated parts>
//! groups <q>
//! colour <id> <group-index>    # one line per colour
//! list <v> <colour ids...>     # one line per vertex
//! ```
//!
//! Serialization is canonical: colour lines ascending by id, list lines
//! ascending by vertex with ids ascending.

use std::fmt::Write as _;

use thiserror::Error;

use super::{AssignmentError, ListAssignment};
use crate::partitions::{Partition, PartitionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentParseError {
    #[error("line {line}: expected `lambda <parts>` first")]
    MissingLambda { line: usize },
    #[error("line {line}: bad partition: {source}")]
    BadPartition {
        line: usize,
        source: PartitionError,
    },
    #[error("line {line}: expected `groups <q>`")]
    MissingGroups { line: usize },
    #[error("line {line}: malformed `colour` line; expected `colour <id> <group>`")]
    MalformedColour { line: usize },
    #[error("line {line}: group index {index} out of range 1..={q}")]
    GroupOutOfRange { line: usize, index: usize, q: usize },
    #[error("line {line}: colour {colour} declared twice")]
    DuplicateColour { line: usize, colour: u32 },
    #[error("line {line}: malformed `list` line; expected `list <v> <ids...>`")]
    MalformedList { line: usize },
    #[error("line {line}: vertex {v} already has a list")]
    DuplicateList { line: usize, v: u32 },
    #[error("line {line}: colour {colour} was not declared")]
    UndeclaredColour { line: usize, colour: u32 },
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("vertex {v} has no list (vertices must be 1..=n with one list each)")]
    VertexWithoutList { v: u32 },
    #[error("no list lines found")]
    NoLists,
    #[error(transparent)]
    Malformed(#[from] AssignmentError),
}

impl ListAssignment {
    pub fn parse(text: &str) -> Result<Self, AssignmentParseError> {
        let mut lambda: Option<Partition> = None;
        let mut q: Option<usize> = None;
        let mut group_of: std::collections::BTreeMap<u32, usize> = Default::default();
        let mut lists: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for (line, raw) in text.lines().enumerate() {
            let line = line + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let mut fields = s.split_whitespace();
            let directive = fields.next().expect("nonempty line");
            let rest: Vec<&str> = fields.collect();
            match directive {
                "lambda" => {
                    let joined = rest.join(" ");
                    let parsed = Partition::parse(&joined)
                        .map_err(|source| AssignmentParseError::BadPartition { line, source })?;
                    lambda = Some(parsed);
                }
                "groups" => {
                    if lambda.is_none() {
                        return Err(AssignmentParseError::MissingLambda { line });
                    }
                    let [count] = rest[..] else {
                        return Err(AssignmentParseError::MissingGroups { line });
                    };
                    let parsed: usize = count
                        .parse()
                        .map_err(|_| AssignmentParseError::MissingGroups { line })?;
                    q = Some(parsed);
                }
                "colour" => {
                    let q = q.ok_or(AssignmentParseError::MissingGroups { line })?;
                    let parsed: Option<Vec<u32>> = rest.iter().map(|f| f.parse().ok()).collect();
                    let Some([id, group]) = parsed.as_deref() else {
                        return Err(AssignmentParseError::MalformedColour { line });
                    };
                    let (id, group) = (*id, *group as usize);
                    if group == 0 || group > q {
                        return Err(AssignmentParseError::GroupOutOfRange {
                            line,
                            index: group,
                            q,
                        });
                    }
                    if group_of.insert(id, group - 1).is_some() {
                        return Err(AssignmentParseError::DuplicateColour { line, colour: id });
                    }
                }
                "list" => {
                    let parsed: Option<Vec<u32>> = rest.iter().map(|f| f.parse().ok()).collect();
                    let Some(values) = parsed else {
                        return Err(AssignmentParseError::MalformedList { line });
                    };
                    let [v, colours @ ..] = values.as_slice() else {
                        return Err(AssignmentParseError::MalformedList { line });
                    };
                    if *v == 0 {
                        return Err(AssignmentParseError::MalformedList { line });
                    }
                    for &c in colours {
                        if !group_of.contains_key(&c) {
                            return Err(AssignmentParseError::UndeclaredColour { line, colour: c });
                        }
                    }
                    if lists.insert(*v, colours.to_vec()).is_some() {
                        return Err(AssignmentParseError::DuplicateList { line, v: *v });
                    }
                }
                other => {
                    return Err(AssignmentParseError::UnknownDirective {
                        line,
                        directive: other.to_string(),
                    });
                }
            }
        }
        let lambda = lambda.ok_or(AssignmentParseError::MissingLambda { line: 1 })?;
        let q = q.ok_or(AssignmentParseError::MissingGroups { line: 1 })?;
        if lists.is_empty() {
            return Err(AssignmentParseError::NoLists);
        }
        let n = *lists.keys().max().expect("nonempty") as usize;
        let mut list_vec = Vec::with_capacity(n);
        for v in 1..=n as u32 {
            match lists.remove(&v) {
                Some(list) => list_vec.push(list),
                None => return Err(AssignmentParseError::VertexWithoutList { v }),
            }
        }
        let mut groups = vec![Vec::new(); q];
        for (&colour, &g) in &group_of {
            groups[g].push(colour);
        }
        Ok(ListAssignment::new(lambda, list_vec, groups)?)
    }

    /// Canonical text; `parse` of the result reproduces the assignment.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "lambda {}", self.lambda().plain()).unwrap();
        writeln!(out, "groups {}", self.groups().len()).unwrap();
        let mut colours: Vec<(u32, usize)> = self
            .groups()
            .iter()
            .enumerate()
            .flat_map(|(gi, group)| group.iter().map(move |&c| (c, gi + 1)))
            .collect();
        colours.sort_unstable();
        for (c, gi) in colours {
            writeln!(out, "colour {c} {gi}").unwrap();
        }
        for v in 1..=self.n() as u32 {
            write!(out, "list {v}").unwrap();
            for c in self.list(v) {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "lambda 2,1\ngroups 2\ncolour 1 1\ncolour 2 1\ncolour 3 1\ncolour 4 2\ncolour 5 2\nlist 1 1 2 4\nlist 2 1 3 5\n";
        let l = ListAssignment::parse(text).unwrap();
        assert_eq!(l.serialize(), text);
        assert_eq!(l.lambda().plain(), "2,1");
        assert_eq!(l.n(), 2);
        assert_eq!(l.list(2), &[1, 3, 5]);
        assert_eq!(l.group_of(4), Some(1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = ListAssignment::parse("lambda 2\ngroups 1\ncolour 1 9\n").unwrap_err();
        assert_eq!(
            e,
            AssignmentParseError::GroupOutOfRange {
                line: 3,
                index: 9,
                q: 1
            }
        );
        let e = ListAssignment::parse("lambda 2\ngroups 1\ncolour 1 1\nlist 1 1 7\n").unwrap_err();
        assert_eq!(
            e,
            AssignmentParseError::UndeclaredColour { line: 4, colour: 7 }
        );
        let e = ListAssignment::parse("groups 1\n").unwrap_err();
        assert_eq!(e, AssignmentParseError::MissingLambda { line: 1 });
        let e =
            ListAssignment::parse("lambda 1\ngroups 1\ncolour 1 1\nlist 1 1\nlist 3 1\n").unwrap_err();
        assert_eq!(e, AssignmentParseError::VertexWithoutList { v: 2 });
    }

    #[test]
    fn comments_are_tolerated() {
        let text = "# witness\nlambda 1\ngroups 1\ncolour 7 1\nlist 1 7 # only list\n";
        let l = ListAssignment::parse(text).unwrap();
        assert_eq!(l.list(1), &[7]);
    }
}
