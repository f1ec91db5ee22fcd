//! PACE 2017 text formats: `.gr` graphs (`p tw <n> <m>`, 1-indexed edge
//! lines) and `.td` tree decompositions (`s td <#bags> <max-bag-size> <n>`,
//! `b <id> <v...>` bag lines, then tree edges over bag ids). Comment lines
//! start with `c`. Writers emit canonical order so that reading and
//! re-writing a canonical file is byte-stable.

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone)]
pub struct GrFile {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct TdFile {
    pub td: TreeDecomposition,
    /// Vertex count of the host graph as declared in the header.
    pub declared_n: usize,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("{what} is not a number: '{token}'")))
}

pub fn read_gr(text: &str) -> Result<GrFile> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if graph.is_some() {
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            let f = fields(line);
            if f.len() != 4 || f[1] != "tw" {
                return Err(parse_err(line_no, "expected 'p tw <n> <m>'"));
            }
            let n = parse_usize(f[2], line_no, "vertex count")?;
            declared_m = parse_usize(f[3], line_no, "edge count")?;
            graph = Some(Graph::new(n));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| parse_err(line_no, "edge line before the problem line"))?;
        let f = fields(line);
        if f.len() != 2 {
            return Err(parse_err(line_no, "expected an edge line '<u> <v>'"));
        }
        let u = parse_usize(f[0], line_no, "endpoint")?;
        let v = parse_usize(f[1], line_no, "endpoint")?;
        if u == 0 || v == 0 {
            return Err(parse_err(line_no, "vertex ids are 1-indexed"));
        }
        g.add_edge(u - 1, v - 1)
            .map_err(|e| parse_err(line_no, e.to_string()))?;
        seen_m += 1;
    }

    let graph = graph.ok_or_else(|| parse_err(0, "missing problem line 'p tw <n> <m>'"))?;
    if seen_m != declared_m {
        warnings.push(format!(
            "header declares {declared_m} edges but {seen_m} edge lines were read"
        ));
    }
    Ok(GrFile { graph, warnings })
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

pub fn read_td(text: &str) -> Result<TdFile> {
    let mut header: Option<(usize, usize, usize)> = None; // (#bags, max-bag, n)
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('s') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate solution line"));
            }
            let f = fields(line);
            if f.len() != 5 || f[1] != "td" {
                return Err(parse_err(
                    line_no,
                    "expected 's td <#bags> <max-bag-size> <n>'",
                ));
            }
            let num_bags = parse_usize(f[2], line_no, "bag count")?;
            let max_bag = parse_usize(f[3], line_no, "max bag size")?;
            let n = parse_usize(f[4], line_no, "vertex count")?;
            header = Some((num_bags, max_bag, n));
            bags = vec![None; num_bags];
            continue;
        }
        let (num_bags, _, n) =
            header.ok_or_else(|| parse_err(line_no, "line before the solution line"))?;
        if line.starts_with('b') {
            let f = fields(line);
            if f.len() < 2 {
                return Err(parse_err(line_no, "expected 'b <bag-id> <v...>'"));
            }
            let id = parse_usize(f[1], line_no, "bag id")?;
            if id == 0 || id > num_bags {
                return Err(parse_err(
                    line_no,
                    format!("bag id {id} outside 1..={num_bags}"),
                ));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(line_no, format!("bag {id} defined twice")));
            }
            let mut bag = VertexSet::new();
            for tok in &f[2..] {
                let v = parse_usize(tok, line_no, "bag vertex")?;
                if v == 0 || v > n {
                    return Err(parse_err(line_no, format!("vertex {v} outside 1..={n}")));
                }
                bag.insert(v - 1);
            }
            bags[id - 1] = Some(bag);
            continue;
        }
        let f = fields(line);
        if f.len() != 2 {
            return Err(parse_err(line_no, "expected a tree edge '<i> <j>'"));
        }
        let a = parse_usize(f[0], line_no, "bag id")?;
        let b = parse_usize(f[1], line_no, "bag id")?;
        for id in [a, b] {
            if id == 0 || id > num_bags {
                return Err(parse_err(
                    line_no,
                    format!("bag id {id} outside 1..={num_bags}"),
                ));
            }
        }
        edges.push((a - 1, b - 1));
    }

    let (_, max_bag, n) = header.ok_or_else(|| parse_err(0, "missing solution line 's td ...'"))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.unwrap_or_else(|| {
                warnings.push(format!("bag {} has no 'b' line; treating as empty", i + 1));
                VertexSet::new()
            })
        })
        .collect();
    let actual_max = bags.iter().map(|b| b.len()).max().unwrap_or(0);
    if actual_max != max_bag {
        warnings.push(format!(
            "header declares max bag size {max_bag} but the largest bag has {actual_max}"
        ));
    }
    let td = TreeDecomposition::new(bags, edges)?;
    Ok(TdFile {
        td,
        declared_n: n,
        warnings,
    })
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.num_nodes(), max_bag, n);
    for (i, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    let mut edges: Vec<(usize, usize)> = td
        .edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn read_single_bag_td() {
        let file = read_td("s td 1 3 3\nb 1 1 2 3\n").unwrap();
        assert_eq!(file.td.num_nodes(), 1);
        assert_eq!(file.td.bag(0), &vs(&[0, 1, 2]));
        assert_eq!(file.declared_n, 3);
        assert!(file.warnings.is_empty());
    }

    #[test]
    fn width_mismatch_warns() {
        let file = read_td("s td 1 2 3\nb 1 1 2 3\n").unwrap();
        assert_eq!(file.warnings.len(), 1);
        assert!(file.warnings[0].contains("max bag size"));
    }

    #[test]
    fn gr_round_trip_with_comments() {
        let text = "c a comment\np tw 4 3\n1 2\n2 3\nc middle\n3 4\n";
        let file = read_gr(text).unwrap();
        assert_eq!(file.graph.n(), 4);
        assert_eq!(file.graph.m(), 3);
        let canonical = write_gr(&file.graph);
        let again = read_gr(&canonical).unwrap();
        assert_eq!(again.graph, file.graph);
        assert_eq!(write_gr(&again.graph), canonical);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = read_gr("p tw 2 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));

        let err = read_td("s td 1 1 1\nb 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn edge_count_mismatch_warns() {
        let file = read_gr("p tw 3 5\n1 2\n").unwrap();
        assert_eq!(file.warnings.len(), 1);
    }

    #[test]
    fn td_round_trip_stable() {
        let text = "s td 3 3 5\nb 1 1 2 3\nb 2 1 3 4\nb 3 1 4 5\n1 2\n2 3\n";
        let file = read_td(text).unwrap();
        assert_eq!(write_td(&file.td, file.declared_n), text);
    }

    #[test]
    fn out_of_range_vertex_is_an_error() {
        assert!(read_gr("p tw 2 1\n1 5\n").is_err());
        assert!(read_td("s td 1 1 2\nb 1 7\n").is_err());
    }
}
