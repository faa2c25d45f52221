//! Text format for graphs: `c` comment lines, one `p sp <n> <m>` header,
//! and `a <tail> <head> <length>` arc lines with 1-based vertex ids.

use crate::graph::{Graph, GraphError};

/// Parses the text format. Negative lengths are accepted here; whether
/// they are usable is decided by the solver that consumes the graph.
pub fn parse_graph_file(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, f64)> = Vec::new();
    let mut any_negative = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                if fields.next() != Some("sp") {
                    return Err(parse_err(lineno, "expected 'p sp <n> <m>'"));
                }
                let n = parse_field::<usize>(lineno, fields.next(), "vertex count")?;
                let m = parse_field::<usize>(lineno, fields.next(), "arc count")?;
                if n == 0 {
                    return Err(parse_err(lineno, "vertex count must be at least 1"));
                }
                header = Some((n, m));
            }
            Some("a") => {
                let Some((n, _)) = header else {
                    return Err(parse_err(lineno, "arc line before problem line"));
                };
                let tail = parse_field::<usize>(lineno, fields.next(), "tail")?;
                let head = parse_field::<usize>(lineno, fields.next(), "head")?;
                let length = parse_field::<f64>(lineno, fields.next(), "length")?;
                if tail == 0 || tail > n || head == 0 || head > n {
                    return Err(parse_err(
                        lineno,
                        &format!("arc ({tail}, {head}) out of range for n={n}"),
                    ));
                }
                if length < 0.0 {
                    any_negative = true;
                }
                raw.push((tail - 1, head - 1, length));
            }
            Some(tok) => {
                return Err(parse_err(lineno, &format!("unknown line type '{tok}'")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_err(0, "missing problem line"));
    };
    if raw.len() != m {
        return Err(parse_err(
            0,
            &format!("header declares {m} arcs but {} were given", raw.len()),
        ));
    }
    Ok(Graph::build(n, &raw, any_negative)?.0)
}

/// Writes a graph in the text format; `parse_graph_file` recovers it
/// exactly, up to arc order.
pub fn write_graph_file(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p sp {} {}\n", g.n(), g.m()));
    for arc in g.arcs() {
        out.push_str(&format!("a {} {} {}\n", arc.tail + 1, arc.head + 1, arc.length));
    }
    out
}

fn parse_err(line: usize, msg: &str) -> GraphError {
    GraphError::Parse { line, msg: msg.to_string() }
}

fn parse_field<T: std::str::FromStr>(
    lineno: usize,
    field: Option<&str>,
    what: &str,
) -> Result<T, GraphError> {
    let Some(s) = field else {
        return Err(parse_err(lineno, &format!("missing {what}")));
    };
    s.parse().map_err(|_| parse_err(lineno, &format!("bad {what} '{s}'")))
}
