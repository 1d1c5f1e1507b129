use serde::{Deserialize, Serialize};

use super::{EdgeSpec, Graph, GraphError, Position};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    src: String,
    dst: String,
}

/// Parses a graph file. Input whose first non-blank character is `{` is read
/// as JSON; anything else as the line format (`v <name>`, `e <id> <src> <dst>`,
/// `#` comments).
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_lines(text)
    }
}

fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        position: Position::Line { line: e.line(), column: Some(e.column()) },
        message: e.to_string(),
    })?;
    let edges = raw.edges.into_iter().map(|e| EdgeSpec::new(e.id, e.src, e.dst)).collect();
    Graph::new(raw.vertices, edges)
}

fn parse_lines(text: &str) -> Result<Graph, GraphError> {
    let mut vertices = Vec::new();
    let mut vertex_pos = Vec::new();
    let mut edges = Vec::new();
    let mut edge_pos = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some(&kind) = words.first() else { continue };
        let column = line.find(kind).map(|c| c + 1);
        let position = Position::Line { line: line_no, column };
        match (kind, words.len()) {
            ("v", 2) => {
                vertices.push(words[1].to_string());
                vertex_pos.push(position);
            }
            ("e", 4) => {
                edges.push(EdgeSpec::new(words[1], words[2], words[3]));
                edge_pos.push(position);
            }
            ("v", _) => {
                return Err(GraphError::Syntax { position, message: "expected `v <name>`".into() });
            }
            ("e", _) => {
                return Err(GraphError::Syntax { position, message: "expected `e <id> <src> <dst>`".into() });
            }
            (other, _) => {
                return Err(GraphError::Syntax {
                    position,
                    message: format!("unknown directive {other:?}"),
                });
            }
        }
    }
    Graph::with_positions(vertices, edges, &vertex_pos, &edge_pos)
}

pub(super) fn to_json(g: &Graph) -> String {
    let raw = RawGraph {
        vertices: g.vertices.clone(),
        edges: g
            .edges
            .iter()
            .map(|e| RawEdge {
                id: e.id.clone(),
                src: g.vertices[e.src].clone(),
                dst: g.vertices[e.dst].clone(),
            })
            .collect(),
    };
    serde_json::to_string(&raw).expect("graph serialization")
}

pub(super) fn to_text(g: &Graph) -> String {
    let mut out = String::new();
    for v in &g.vertices {
        out.push_str(&format!("v {v}\n"));
    }
    for e in &g.edges {
        out.push_str(&format!("e {} {} {}\n", e.id, g.vertices[e.src], g.vertices[e.dst]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_single_loop() {
        let g = parse_graph(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","dst":"v"}]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.sinks().is_empty());
    }

    #[test]
    fn json_path_graph() {
        let text = r#"{
            "vertices": ["v1", "v2", "v3"],
            "edges": [
                {"id": "f1", "src": "v1", "dst": "v2"},
                {"id": "f2", "src": "v2", "dst": "v3"}
            ]
        }"#;
        assert_eq!(parse_graph(text).unwrap().sinks(), vec!["v3"]);
    }

    #[test]
    fn json_dangling_endpoint() {
        let err = parse_graph(r#"{"vertices":["v"],"edges":[{"id":"e","src":"w","dst":"v"}]}"#).unwrap_err();
        assert!(err.to_string().contains("dangling endpoint"), "{err}");
        assert!(matches!(
            err,
            GraphError::DanglingEndpoint { position: Position::Element { field: "edges", index: 0 }, .. }
        ));
    }

    #[test]
    fn json_syntax_error_has_line() {
        let err = parse_graph("{\n\"vertices\": [\"v\",]\n}").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { position: Position::Line { line: 2, .. }, .. }), "{err}");
    }

    #[test]
    fn line_format() {
        let text = "# path\nv v1\nv v2\n\ne f v1 v2   # trailing comment\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertices(), &["v1".to_string(), "v2".to_string()]);
        assert_eq!(g.edge(0).id, "f");

        let err = parse_graph("v a\nv a\n").unwrap_err();
        assert!(matches!(
            err,
            GraphError::DuplicateVertex { position: Position::Line { line: 2, .. }, .. }
        ));
        let err = parse_graph("v a\ne x a b\n").unwrap_err();
        assert!(matches!(
            err,
            GraphError::DanglingEndpoint { position: Position::Line { line: 2, .. }, .. }
        ));
        let err = parse_graph("v a\nq\n").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { .. }));
    }

    #[test]
    fn serializations_parse_back() {
        let g = Graph::from_names(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "a")]).unwrap();
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }
}
