//! Text graph files.
//!
//! ```text
//! planegraph 1
//! vertices 4
//! outer 0 2
//! 0: 1 2 3
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//! coordinates
//! 0 0/1 0/1
//! 1 4/1 0/1
//! 2 2/1 3/1
//! 3 2/1 1/1
//! ```
//!
//! Neighbour lists are clockwise. `outer` names one dart of the outer face,
//! or `none` for a graph without edges. The `coordinates` section is
//! optional; each line is a vertex id and two rational literals (`num/den`
//! or an integer). Blank lines and `#` comments are ignored. The canonical
//! form written by [`write_document`] lists vertices in id order with each
//! rotation starting at its smallest neighbour, the smallest dart of the
//! outer face, and every coordinate in lowest terms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::drawing::ExactDrawing;
use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, Kernel, Point};
use crate::plane_graph::{Dart, PlaneGraph, VertexId};

pub const MAGIC: &str = "planegraph";
pub const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub graph: PlaneGraph,
    pub drawing: Option<ExactDrawing>,
}

impl Document {
    pub fn new(graph: PlaneGraph) -> Self {
        Document { graph, drawing: None }
    }

    pub fn with_drawing(graph: PlaneGraph, drawing: ExactDrawing) -> Self {
        Document {
            graph,
            drawing: Some(drawing),
        }
    }
}

pub fn write_document(doc: &Document) -> String {
    let g = &doc.graph;
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    match g.outer_dart() {
        Some(d) => {
            let _ = writeln!(out, "outer {} {}", d.tail, d.head);
        }
        None => out.push_str("outer none\n"),
    }
    for v in g.vertices() {
        let _ = write!(out, "{v}:");
        for u in g.rotation(v) {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    if let Some(drawing) = &doc.drawing {
        out.push_str("coordinates\n");
        for (v, p) in drawing.iter() {
            let _ = writeln!(out, "{v} {} {}", format_rational(&p.x), format_rational(&p.y));
        }
    }
    out
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, split into tokens.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let chars = content.char_indices().chain([(content.len(), ' ')]);
        for (col, (byte, ch)) in chars.enumerate() {
            if ch.is_whitespace() {
                if let Some((s, c)) = start.take() {
                    tokens.push(Token {
                        text: &content[s..byte],
                        line: i + 1,
                        column: c + 1,
                    });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn parse_id(token: &Token<'_>) -> Result<VertexId> {
    token
        .text
        .parse()
        .map_err(|_| error(token.line, token.column, format!("expected a vertex id, found `{}`", token.text)))
}

fn expect_keyword(line: &[Token<'_>], keyword: &str, args: usize) -> Result<()> {
    let head = &line[0];
    if head.text != keyword {
        return Err(error(head.line, head.column, format!("expected `{keyword}`, found `{}`", head.text)));
    }
    if line.len() != args + 1 {
        let at = line.get(args + 1).unwrap_or(head);
        return Err(error(
            at.line,
            at.column,
            format!("`{keyword}` takes {args} argument(s), found {}", line.len() - 1),
        ));
    }
    Ok(())
}

/// Parses a graph file. Syntax errors carry a line and column; a rotation
/// system that breaks a graph invariant yields the structural error that
/// names the rule.
pub fn parse_document(text: &str) -> Result<Document> {
    let lines = tokenize(text);
    let mut iter = lines.iter().peekable();
    let eof_line = text.lines().count().max(1);

    let header = iter
        .next()
        .ok_or_else(|| error(1, 1, format!("empty document, expected `{MAGIC} {VERSION}`")))?;
    expect_keyword(header, MAGIC, 1)?;
    if header[1].text != VERSION {
        return Err(error(
            header[1].line,
            header[1].column,
            format!("unsupported version `{}`", header[1].text),
        ));
    }

    let count_line = iter.next().ok_or_else(|| error(eof_line, 1, "expected `vertices`"))?;
    expect_keyword(count_line, "vertices", 1)?;
    let count = parse_id(&count_line[1])?;

    let outer_line = iter.next().ok_or_else(|| error(eof_line, 1, "expected `outer`"))?;
    let outer = if outer_line.len() == 2 && outer_line[1].text == "none" {
        expect_keyword(outer_line, "outer", 1)?;
        None
    } else {
        expect_keyword(outer_line, "outer", 2)?;
        Some(Dart::new(parse_id(&outer_line[1])?, parse_id(&outer_line[2])?))
    };

    let mut rotation = BTreeMap::new();
    for _ in 0..count {
        let line = iter
            .next()
            .ok_or_else(|| error(eof_line, 1, format!("expected {count} neighbour lists")))?;
        let head = &line[0];
        let id_text = head.text.strip_suffix(':').ok_or_else(|| {
            error(head.line, head.column, format!("expected `<id>:`, found `{}`", head.text))
        })?;
        let v = parse_id(&Token {
            text: id_text,
            line: head.line,
            column: head.column,
        })?;
        let nbrs = line[1..].iter().map(parse_id).collect::<Result<Vec<_>>>()?;
        if rotation.insert(v, nbrs).is_some() {
            return Err(error(head.line, head.column, format!("vertex {v} listed twice")));
        }
    }
    let graph = PlaneGraph::from_rotation_map(rotation, outer)?;

    let mut drawing = None;
    if let Some(line) = iter.next() {
        expect_keyword(line, "coordinates", 0)?;
        let mut d = ExactDrawing::new(Kernel::Exact);
        for line in iter.by_ref() {
            if line.len() != 3 {
                return Err(error(
                    line[0].line,
                    line[0].column,
                    "coordinate lines are `<id> <x> <y>`",
                ));
            }
            let v = parse_id(&line[0])?;
            if !graph.contains_vertex(v) {
                return Err(error(line[0].line, line[0].column, format!("unknown vertex {v}")));
            }
            if d.point(v).is_some() {
                return Err(error(line[0].line, line[0].column, format!("vertex {v} placed twice")));
            }
            let mut coord = [None, None];
            for (slot, tok) in coord.iter_mut().zip(&line[1..]) {
                *slot = Some(parse_rational(tok.text).ok_or_else(|| {
                    error(tok.line, tok.column, format!("expected a rational literal, found `{}`", tok.text))
                })?);
            }
            let [x, y] = coord.map(Option::unwrap);
            d.set(v, Point::new(x, y));
        }
        drawing = Some(d);
    }
    Ok(Document { graph, drawing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::StructureError;
    use crate::geometry::ratio;
    use crate::io::generate;

    const K4: &str = "planegraph 1\nvertices 4\nouter 0 2\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";

    #[test]
    fn k4_round_trip() {
        let doc = parse_document(K4).unwrap();
        assert_eq!(doc.graph, generate::k4());
        assert_eq!((doc.graph.vertex_count(), doc.graph.edge_count()), (4, 6));
        assert_eq!(write_document(&doc), K4);
    }

    #[test]
    fn rational_coordinates_survive() {
        let text = format!("{K4}coordinates\n0 0/1 0/1\n1 4/1 0/1\n2 2/1 3/1\n3 2/1 1/3\n");
        let doc = parse_document(&text).unwrap();
        let d = doc.drawing.as_ref().unwrap();
        assert_eq!(d.point(3).unwrap().y, ratio(1, 3));
        assert_eq!(write_document(&doc), text);
    }

    #[test]
    fn loose_input_is_canonicalized() {
        let text = "# k4\nplanegraph 1\n\nvertices 4\nouter 2 1   # any outer dart\n1: 3 2 0\n0: 3 1 2\n2: 1 3 0\n3: 2 1 0\ncoordinates\n0 0 0\n1 8/2 0\n2 2 3\n3 2 1\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.graph, generate::k4());
        let canon = write_document(&doc);
        assert!(canon.starts_with(K4));
        assert_eq!(parse_document(&canon).unwrap(), doc);
    }

    #[test]
    fn asymmetric_adjacency_names_the_pair() {
        let text = "planegraph 1\nvertices 3\nouter 0 1\n0: 1 2\n1: 0\n2: 1\n";
        match parse_document(text) {
            Err(Error::Structure(e)) => {
                let msg = e.to_string();
                assert!(msg.contains("[symmetric]"), "{msg}");
                assert!(matches!(e, StructureError::Asymmetric(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_are_located() {
        let cases = [
            ("", 1, 1),
            ("graph 1\n", 1, 1),
            ("planegraph 2\n", 1, 12),
            ("planegraph 1\nvertices x\n", 2, 10),
            ("planegraph 1\nvertices 1\nouter none\n0 \n", 4, 1),
            ("planegraph 1\nvertices 2\nouter 0 1\n0: 1\n1: 0\ncoordinates\n0 1/0 1\n", 7, 3),
            ("planegraph 1\nvertices 2\nouter 0 1\n0: 1\n1: 0\ncoordinates\n5 1 1\n", 7, 1),
            ("planegraph 1\nvertices 2\nouter 0 1\n0: 1\n1: 0\nextra\n", 6, 1),
        ];
        for (text, line, column) in cases {
            match parse_document(text) {
                Err(Error::Parse { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn single_vertex() {
        let text = "planegraph 1\nvertices 1\nouter none\n0:\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.graph.vertex_count(), 1);
        assert_eq!(write_document(&doc), text);
    }

    #[test]
    fn generated_graphs_round_trip() {
        for g in [generate::octahedron(), generate::random_triangulation(30, 4).unwrap()] {
            let doc = Document::new(g);
            assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);
        }
    }
}
