//! DIMACS CNF and edge-list parsers.

use super::{FrontendError, Graph, PartitionedGraph};
use crate::frontends::Cnf3;

fn syntax(line: usize, message: impl Into<String>) -> FrontendError {
    FrontendError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses `p cnf <vars> <clauses>` followed by zero-terminated clauses.
/// Lines starting with `c` are comments; a line `%` ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<Cnf3, FrontendError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(syntax(line_no, "second header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", n, m] => n.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
                _ => None,
            };
            header =
                Some(parsed.ok_or_else(|| syntax(line_no, "expected `p cnf <vars> <clauses>`"))?);
            continue;
        }
        let (vars, _) = header.ok_or_else(|| syntax(line_no, "clause before header"))?;
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| syntax(line_no, format!("bad literal `{token}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(syntax(
                    line_no,
                    format!("literal {lit} names an undeclared variable"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| syntax(last_line.max(1), "missing header"))?;
    if !current.is_empty() {
        return Err(syntax(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(syntax(
            last_line,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    Cnf3::new(vars, clauses)
}

/// A graph read from an edge list, with the parts given by `part` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub parts: Vec<Option<usize>>,
}

impl ParsedGraph {
    /// Requires every vertex to have a part below `t`.
    pub fn partitioned(&self, t: usize) -> Result<PartitionedGraph, FrontendError> {
        let part_of = self
            .parts
            .iter()
            .enumerate()
            .map(|(v, p)| p.ok_or(FrontendError::MissingPart(v)))
            .collect::<Result<Vec<_>, _>>()?;
        PartitionedGraph::new(self.graph.clone(), t, part_of)
    }
}

/// Lines are `u v` (an edge), `part u i` (vertex `u` is in part `i`) or
/// `vertices n` (at least `n` vertices). `#` starts a comment. Vertex count
/// is one more than the largest id mentioned.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, FrontendError> {
    let mut edges = Vec::new();
    let mut parts: Vec<(usize, usize, usize)> = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(line_no, format!("bad number `{s}`")))
        };
        match fields.as_slice() {
            ["part", u, i] => {
                let (u, i) = (num(u)?, num(i)?);
                n = n.max(u + 1);
                parts.push((line_no, u, i));
            }
            ["vertices", c] => n = n.max(num(c)?),
            [u, v] => {
                let (u, v) = (num(u)?, num(v)?);
                if u == v {
                    return Err(syntax(line_no, format!("self-loop at {u}")));
                }
                n = n.max(u.max(v) + 1);
                edges.push((u, v));
            }
            _ => {
                return Err(syntax(
                    line_no,
                    "expected `u v`, `part u i` or `vertices n`",
                ))
            }
        }
    }
    let mut part_of = vec![None; n];
    for (line_no, u, i) in parts {
        if part_of[u].is_some_and(|p| p != i) {
            return Err(syntax(line_no, format!("vertex {u} given two parts")));
        }
        part_of[u] = Some(i);
    }
    Ok(ParsedGraph {
        graph: Graph::new(n, &edges)?,
        parts: part_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_examples() {
        let phi = parse_dimacs_cnf("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(phi.clauses(), &[vec![1], vec![-1]]);
        assert_eq!(
            parse_dimacs_cnf("p cnf x 2\n").unwrap_err(),
            FrontendError::Syntax {
                line: 1,
                message: "expected `p cnf <vars> <clauses>`".into()
            }
        );
        assert_eq!(
            parse_dimacs_cnf("p cnf 2 4\n1 2 0\n1 0\n-1 2 0\n-1 0\n").unwrap_err(),
            FrontendError::OccurrenceBound {
                variable: 1,
                count: 4
            }
        );
        assert!(matches!(
            parse_dimacs_cnf("p cnf 4 1\n1 2 3 4 0\n"),
            Err(FrontendError::ClauseWidth { .. })
        ));
    }

    #[test]
    fn dimacs_layout() {
        let text = "c comment\np cnf 3 2\n1 -2\n 3 0 2 0\n%\n0\n";
        let phi = parse_dimacs_cnf(text).unwrap();
        assert_eq!(phi.clauses(), &[vec![1, -2, 3], vec![2]]);
        assert!(matches!(
            parse_dimacs_cnf("1 0\n"),
            Err(FrontendError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 1 1\n1\n"),
            Err(FrontendError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 1 2\n1 0\n"),
            Err(FrontendError::Syntax { .. })
        ));
        assert!(matches!(
            parse_dimacs_cnf("p cnf 1 1\n2 0\n"),
            Err(FrontendError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list() {
        let g =
            parse_edge_list("# triangle\n0 1\n1 2\n0 2\npart 0 0\npart 1 1\npart 2 2\n").unwrap();
        assert_eq!(g.graph.n(), 3);
        let h = g.partitioned(3).unwrap();
        assert_eq!(h.part(1), vec![1]);
        let plain = parse_edge_list("vertices 5\n0 1\n").unwrap();
        assert_eq!(plain.graph.n(), 5);
        assert_eq!(
            plain.partitioned(2).unwrap_err(),
            FrontendError::MissingPart(0)
        );
        assert!(matches!(
            parse_edge_list("0 1\nfoo\n"),
            Err(FrontendError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 3\n"),
            Err(FrontendError::Syntax { line: 1, .. })
        ));
    }
}
