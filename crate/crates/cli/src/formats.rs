//! Text file formats: base matrices, alist parity-check graphs, and
//! edge lists.
//!
//! All three renderers are canonical (sorted neighbor lists, fixed
//! whitespace), so rendering the same object twice is byte-identical,
//! which is what the replay guarantee rests on.

use protoldpc_core::graph::{tanner_girth, RegularGraph, TannerEdge, TannerGraph};
use protoldpc_core::proto::BaseMatrix;

use crate::error::CliError;

/// Parses base-matrix text: a `<rows> <cols>` header line, then `rows`
/// lines of `cols` nonnegative integers. Lines starting with `#` and
/// blank lines are ignored.
pub fn parse_base_matrix(text: &str) -> Result<BaseMatrix, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("empty matrix file"))?;
    let mut dims = header.split_whitespace();
    let rows: usize = parse_field(dims.next(), "rows")?;
    let cols: usize = parse_field(dims.next(), "cols")?;
    if dims.next().is_some() {
        return Err(bad("header must be exactly `<rows> <cols>`"));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| bad(&format!("expected {rows} matrix rows, found {i}")))?;
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| bad(&format!("row {i}: bad entry `{f}`"))))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(bad(&format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        entries.extend(row);
    }
    if lines.next().is_some() {
        return Err(bad(&format!("matrix has more than {rows} rows")));
    }
    BaseMatrix::new(rows, cols, entries).map_err(|e| bad(&format!("invalid matrix: {e}")))
}

/// Renders base-matrix text accepted by [`parse_base_matrix`].
pub fn render_base_matrix(b: &BaseMatrix) -> String {
    let mut out = format!("{} {}\n", b.rows(), b.cols());
    for i in 0..b.rows() {
        let row: Vec<String> = (0..b.cols()).map(|j| b.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a Tanner graph in alist format.
///
/// Line 1 `n m`, line 2 `dmax_v dmax_c`, then variable degrees, check
/// degrees, `n` lines of 1-indexed check neighbors (zero-padded to
/// `dmax_v`), and `m` lines of variable neighbors (zero-padded to
/// `dmax_c`). Neighbor lists are ascending; parallel edges repeat the
/// neighbor. Edge types are not representable in alist and are dropped.
pub fn render_alist(t: &TannerGraph) -> String {
    let n = t.variable_count();
    let m = t.check_count();
    let mut var_neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut chk_neighbors: Vec<Vec<u32>> = vec![Vec::new(); m];
    for e in t.edges() {
        var_neighbors[e.variable as usize].push(e.check + 1);
        chk_neighbors[e.check as usize].push(e.variable + 1);
    }
    for list in var_neighbors.iter_mut().chain(chk_neighbors.iter_mut()) {
        list.sort_unstable();
    }
    let dmax_v = var_neighbors.iter().map(Vec::len).max().unwrap_or(0);
    let dmax_c = chk_neighbors.iter().map(Vec::len).max().unwrap_or(0);
    let degrees = |lists: &[Vec<u32>]| {
        lists.iter().map(|l| l.len().to_string()).collect::<Vec<_>>().join(" ")
    };
    let padded = |lists: &[Vec<u32>], width: usize| {
        let mut out = String::new();
        for list in lists {
            let mut fields: Vec<String> = list.iter().map(u32::to_string).collect();
            fields.resize(width, String::from("0"));
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
        out
    };
    format!(
        "{n} {m}\n{dmax_v} {dmax_c}\n{}\n{}\n{}{}",
        degrees(&var_neighbors),
        degrees(&chk_neighbors),
        padded(&var_neighbors, dmax_v),
        padded(&chk_neighbors, dmax_c),
    )
}

/// Parses alist text and rebuilds the Tanner graph.
///
/// Both neighbor sections are read and cross-checked edge for edge, so a
/// file whose two halves disagree is rejected. The loaded graph carries
/// no edge types or lineage; its girth bound is measured exactly.
pub fn parse_alist(text: &str) -> Result<TannerGraph, CliError> {
    let mut numbers = text.split_whitespace().map(|f| {
        f.parse::<u64>().map_err(|_| bad(&format!("alist: non-numeric field `{f}`")))
    });
    let mut next = |what: &str| -> Result<u64, CliError> {
        numbers.next().ok_or_else(|| bad(&format!("alist: missing {what}")))?
    };
    let n = next("variable count")? as usize;
    let m = next("check count")? as usize;
    if n == 0 || m == 0 {
        return Err(bad("alist: empty graph"));
    }
    let dmax_v = next("dmax_v")? as usize;
    let dmax_c = next("dmax_c")? as usize;
    let mut var_degrees = Vec::with_capacity(n);
    for v in 0..n {
        let d = next(&format!("degree of variable {v}"))? as usize;
        if d > dmax_v {
            return Err(bad(&format!("alist: variable {v} degree {d} exceeds dmax {dmax_v}")));
        }
        var_degrees.push(d);
    }
    let mut chk_degrees = Vec::with_capacity(m);
    for c in 0..m {
        let d = next(&format!("degree of check {c}"))? as usize;
        if d > dmax_c {
            return Err(bad(&format!("alist: check {c} degree {d} exceeds dmax {dmax_c}")));
        }
        chk_degrees.push(d);
    }
    let mut read_block = |count: usize,
                          width: usize,
                          degrees: &[usize],
                          limit: usize,
                          side: &str|
     -> Result<Vec<Vec<u32>>, CliError> {
        let mut lists = Vec::with_capacity(count);
        for (node, &degree) in degrees.iter().enumerate() {
            let mut list = Vec::with_capacity(degree);
            for slot in 0..width {
                let raw = next(&format!("{side} {node} neighbor slot {slot}"))?;
                if slot < degree {
                    if raw == 0 || raw as usize > limit {
                        return Err(bad(&format!(
                            "alist: {side} {node} neighbor {raw} out of range 1..={limit}"
                        )));
                    }
                    list.push(raw as u32 - 1);
                } else if raw != 0 {
                    return Err(bad(&format!("alist: {side} {node} padding must be 0")));
                }
            }
            list.sort_unstable();
            lists.push(list);
        }
        Ok(lists)
    };
    let var_lists = read_block(n, dmax_v, &var_degrees, m, "variable")?;
    let chk_lists = read_block(m, dmax_c, &chk_degrees, n, "check")?;
    if numbers.next().is_some() {
        return Err(bad("alist: trailing data"));
    }

    let mut edges = Vec::new();
    for (v, list) in var_lists.iter().enumerate() {
        for &c in list {
            edges.push(TannerEdge { variable: v as u32, check: c, edge_type: 0 });
        }
    }
    let mut from_checks: Vec<(u32, u32)> = chk_lists
        .iter()
        .enumerate()
        .flat_map(|(c, list)| list.iter().map(move |&v| (v, c as u32)))
        .collect();
    from_checks.sort_unstable();
    let mut from_vars: Vec<(u32, u32)> = edges.iter().map(|e| (e.variable, e.check)).collect();
    from_vars.sort_unstable();
    if from_vars != from_checks {
        return Err(bad("alist: variable and check neighbor sections disagree"));
    }

    let girth = {
        let draft =
            TannerGraph::new(n, m, edges.clone(), protoldpc_core::graph::Girth::Infinite, 1, None)
                .map_err(|e| bad(&format!("alist: {e}")))?;
        tanner_girth(&draft)
    };
    TannerGraph::new(n, m, edges, girth, 1, None).map_err(|e| bad(&format!("alist: {e}")))
}

/// Renders a regular graph as edge-list text.
///
/// Header `vertices degree bipartite{0|1}`, then one line per edge:
/// `u w` or `u w color` when socket colors are present. A bipartite
/// graph has its left class in vertices `0..vertices/2`.
pub fn render_edge_list(g: &RegularGraph) -> String {
    let bipartite = u8::from(g.is_bipartite());
    let mut out = format!("{} {} {bipartite}\n", g.vertex_count(), g.degree());
    match g.socket_colors() {
        Some(colors) => {
            for (&(u, w), &s) in g.edges().iter().zip(colors) {
                out.push_str(&format!("{u} {w} {s}\n"));
            }
        }
        None => {
            for &(u, w) in g.edges() {
                out.push_str(&format!("{u} {w}\n"));
            }
        }
    }
    out
}

/// Parses edge-list text back into a validated regular graph.
pub fn parse_edge_list(text: &str) -> Result<RegularGraph, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("empty edge-list file"))?;
    let mut fields = header.split_whitespace();
    let vertices: usize = parse_field(fields.next(), "vertex count")?;
    let degree: usize = parse_field(fields.next(), "degree")?;
    let bipartite: u8 = parse_field(fields.next(), "bipartite flag")?;
    if fields.next().is_some() || bipartite > 1 {
        return Err(bad("header must be `vertices degree bipartite{0|1}`"));
    }
    let mut edges = Vec::new();
    let mut colors = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(bad(&format!("edge line `{line}` must be `u w` or `u w color`")));
        }
        let u: u32 = parse_field(fields.first().copied(), "edge endpoint")?;
        let w: u32 = parse_field(fields.get(1).copied(), "edge endpoint")?;
        edges.push((u, w));
        if let Some(&s) = fields.get(2) {
            colors.push(parse_field(Some(s), "socket color")?);
        }
    }
    if !colors.is_empty() && colors.len() != edges.len() {
        return Err(bad("either every edge line carries a color or none does"));
    }
    let left_count = (bipartite == 1).then_some(vertices / 2);
    RegularGraph::from_edges(
        vertices,
        degree,
        edges,
        left_count,
        (!colors.is_empty()).then_some(colors),
    )
    .map_err(|e| bad(&format!("invalid graph: {e}")))
}

fn parse_field<T: core::str::FromStr>(field: Option<&str>, what: &str) -> Result<T, CliError> {
    field
        .ok_or_else(|| bad(&format!("missing {what}")))?
        .parse()
        .map_err(|_| bad(&format!("bad {what} `{}`", field.unwrap_or_default())))
}

fn bad(msg: &str) -> CliError {
    CliError::Input(msg.into())
}
