//! Target graphs and the compact notation used to name them on the command
//! line: `S<n>`, `P<n>`, `C<n>`, `K{<m>,<n>}`, `T@<path>`, `G@<path>`.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::format::{parse_graph, FormatError};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
}

/// A tree or graph given explicitly rather than by family and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitPattern {
    pub source: Option<PathBuf>,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSpec {
    /// `K_{1,n}`, center 0.
    Star(usize),
    /// Path on `n` vertices.
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Tree(ExplicitPattern),
    Graph(ExplicitPattern),
}

impl PatternSpec {
    /// Wraps an in-memory tree, checking that it is one.
    pub fn tree(graph: Graph) -> Result<Self, PatternError> {
        if !graph.is_tree() || !graph.is_simple() {
            return Err(PatternError::Semantic("pattern graph is not a tree".into()));
        }
        Ok(PatternSpec::Tree(ExplicitPattern {
            source: None,
            graph,
        }))
    }

    pub fn graph(graph: Graph) -> Result<Self, PatternError> {
        if !graph.is_simple() {
            return Err(PatternError::Semantic(
                "pattern graphs must be simple".into(),
            ));
        }
        Ok(PatternSpec::Graph(ExplicitPattern {
            source: None,
            graph,
        }))
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            PatternSpec::Star(n) => n + 1,
            PatternSpec::Path(n) | PatternSpec::Cycle(n) => *n,
            PatternSpec::CompleteBipartite(m, n) => m + n,
            PatternSpec::Tree(p) | PatternSpec::Graph(p) => p.graph.vertex_count(),
        }
    }

    fn check(self) -> Result<Self, PatternError> {
        let bad = match &self {
            PatternSpec::Star(0) => Some("star needs at least one leaf"),
            PatternSpec::Path(0) => Some("path needs at least one vertex"),
            PatternSpec::Cycle(n) if *n < 3 => Some("cycle needs at least three vertices"),
            PatternSpec::CompleteBipartite(m, n) if *m == 0 || *n == 0 => {
                Some("complete bipartite sides must be positive")
            }
            _ => None,
        };
        match bad {
            Some(msg) => Err(PatternError::Semantic(msg.into())),
            None => Ok(self),
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let explicit = |f: &mut fmt::Formatter<'_>, tag: char, p: &ExplicitPattern| match &p.source
        {
            Some(path) => write!(f, "{tag}@{}", path.display()),
            None => write!(f, "{tag}@<inline:{}v>", p.graph.vertex_count()),
        };
        match self {
            PatternSpec::Star(n) => write!(f, "S{n}"),
            PatternSpec::Path(n) => write!(f, "P{n}"),
            PatternSpec::Cycle(n) => write!(f, "C{n}"),
            PatternSpec::CompleteBipartite(m, n) => write!(f, "K{{{m},{n}}}"),
            PatternSpec::Tree(p) => explicit(f, 'T', p),
            PatternSpec::Graph(p) => explicit(f, 'G', p),
        }
    }
}

fn syntax(column: usize, message: impl Into<String>) -> PatternError {
    PatternError::Syntax {
        column,
        message: message.into(),
    }
}

/// Reads a decimal integer starting at byte `start`; columns are 1-based.
fn integer(text: &str, start: usize) -> Result<(usize, usize), PatternError> {
    let digits = text[start..]
        .bytes()
        .take_while(|b| b.is_ascii_digit())
        .count();
    if digits == 0 {
        return Err(syntax(start + 1, "expected a decimal integer"));
    }
    let value = text[start..start + digits]
        .parse()
        .map_err(|_| syntax(start + 1, "integer too large"))?;
    Ok((value, start + digits))
}

fn load(path: &Path) -> Result<Graph, PatternError> {
    let text = std::fs::read_to_string(path).map_err(|source| PatternError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text).map_err(|source| PatternError::File {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses the pattern notation. File-backed patterns are loaded and checked
/// here, so a returned spec is always ready to use.
pub fn parse_pattern(text: &str) -> Result<PatternSpec, PatternError> {
    if let Some(pos) = text.find(char::is_whitespace) {
        return Err(syntax(pos + 1, "whitespace is not allowed"));
    }
    let mut chars = text.chars();
    let head = chars.next().ok_or_else(|| syntax(1, "empty pattern"))?;
    let single = |ctor: fn(usize) -> PatternSpec| -> Result<PatternSpec, PatternError> {
        let (n, end) = integer(text, 1)?;
        if end != text.len() {
            return Err(syntax(end + 1, "unexpected trailing characters"));
        }
        ctor(n).check()
    };
    match head {
        'S' => single(PatternSpec::Star),
        'P' => single(PatternSpec::Path),
        'C' => single(PatternSpec::Cycle),
        'K' => {
            if !text[1..].starts_with('{') {
                return Err(syntax(2, "expected `{`"));
            }
            let (m, at) = integer(text, 2)?;
            if !text[at..].starts_with(',') {
                return Err(syntax(at + 1, "expected `,`"));
            }
            let (n, at) = integer(text, at + 1)?;
            if !text[at..].starts_with('}') {
                return Err(syntax(at + 1, "expected `}`"));
            }
            if at + 1 != text.len() {
                return Err(syntax(at + 2, "unexpected trailing characters"));
            }
            PatternSpec::CompleteBipartite(m, n).check()
        }
        'T' | 'G' => {
            if !text[1..].starts_with('@') {
                return Err(syntax(2, "expected `@`"));
            }
            if text.len() == 2 {
                return Err(syntax(3, "expected a file path"));
            }
            let path = PathBuf::from(&text[2..]);
            let graph = load(&path)?;
            let mut spec = if head == 'T' {
                PatternSpec::tree(graph)
            } else {
                PatternSpec::graph(graph)
            }
            .map_err(|e| PatternError::Semantic(format!("{}: {e}", path.display())))?;
            if let PatternSpec::Tree(p) | PatternSpec::Graph(p) = &mut spec {
                p.source = Some(path);
            }
            Ok(spec)
        }
        _ => Err(syntax(1, format!("unknown pattern family `{head}`"))),
    }
}

/// The canonical simple graph for a pattern.
///
/// Stars have center 0; paths run 0..n-1 in order; cycles close n-1 back to
/// 0; `K{m,n}` has side A = `0..m` (declared as its bipartition).
pub fn make_pattern_graph(spec: &PatternSpec) -> Graph {
    let edges: Vec<(usize, usize)> = match spec {
        PatternSpec::Star(n) => (1..=*n).map(|i| (0, i)).collect(),
        PatternSpec::Path(n) => (1..*n).map(|i| (i - 1, i)).collect(),
        PatternSpec::Cycle(n) => (0..*n).map(|i| (i, (i + 1) % n)).collect(),
        PatternSpec::CompleteBipartite(m, n) => {
            let g = Graph::new(
                m + n,
                (0..*m)
                    .flat_map(|a| (0..*n).map(move |b| (a, m + b)))
                    .collect(),
            )
            .expect("complete bipartite edges are in range");
            return g.with_bipartition(*m).expect("edges cross the split");
        }
        PatternSpec::Tree(p) | PatternSpec::Graph(p) => return p.graph.clone(),
    };
    Graph::new(spec.vertex_count(), edges).expect("pattern edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Girth};
    use std::io::Write;

    #[test]
    fn parses_families() {
        assert_eq!(parse_pattern("S3").unwrap(), PatternSpec::Star(3));
        assert_eq!(parse_pattern("P5").unwrap(), PatternSpec::Path(5));
        assert_eq!(parse_pattern("C10").unwrap(), PatternSpec::Cycle(10));
        assert_eq!(
            parse_pattern("K{2,4}").unwrap(),
            PatternSpec::CompleteBipartite(2, 4)
        );
    }

    #[test]
    fn reports_columns() {
        let col = |t: &str| match parse_pattern(t) {
            Err(PatternError::Syntax { column, .. }) => column,
            other => panic!("{t}: expected syntax error, got {other:?}"),
        };
        assert_eq!(col(""), 1);
        assert_eq!(col("X3"), 1);
        assert_eq!(col("S"), 2);
        assert_eq!(col("S3x"), 3);
        assert_eq!(col("K2,3"), 2);
        assert_eq!(col("K{2;3}"), 4);
        assert_eq!(col("K{2,3"), 6);
        assert_eq!(col("K{2,3}}"), 7);
        assert_eq!(col("S 3"), 2);
        assert_eq!(col("T3"), 2);
    }

    #[test]
    fn rejects_semantic_violations() {
        assert!(matches!(
            parse_pattern("C2"),
            Err(PatternError::Semantic(_))
        ));
        assert!(matches!(
            parse_pattern("S0"),
            Err(PatternError::Semantic(_))
        ));
        assert!(matches!(
            parse_pattern("K{0,3}"),
            Err(PatternError::Semantic(_))
        ));
        assert!(matches!(
            parse_pattern("P0"),
            Err(PatternError::Semantic(_))
        ));
    }

    #[test]
    fn loads_tree_files() {
        let dir = std::env::temp_dir().join(format!("pattern-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let tree = dir.join("spider.g");
        let mut f = std::fs::File::create(&tree).unwrap();
        writeln!(f, "n 4\ne 0 1\ne 0 2\ne 0 3").unwrap();
        let cyc = dir.join("cycle.g");
        std::fs::write(&cyc, "n 3\ne 0 1\ne 1 2\ne 2 0\n").unwrap();

        let spec = parse_pattern(&format!("T@{}", tree.display())).unwrap();
        assert_eq!(make_pattern_graph(&spec).edge_count(), 3);
        assert!(spec.to_string().starts_with("T@"));
        assert!(matches!(
            parse_pattern(&format!("T@{}", cyc.display())),
            Err(PatternError::Semantic(_))
        ));
        let g = parse_pattern(&format!("G@{}", cyc.display())).unwrap();
        assert_eq!(girth(&make_pattern_graph(&g)), Girth::Finite(3));
        assert!(matches!(
            parse_pattern(&format!("G@{}", dir.join("missing.g").display())),
            Err(PatternError::Io { .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn canonical_graphs() {
        let s3 = make_pattern_graph(&PatternSpec::Star(3));
        assert_eq!(s3.edges(), &[(0, 1), (0, 2), (0, 3)]);

        let k22 = make_pattern_graph(&PatternSpec::CompleteBipartite(2, 2));
        assert_eq!((k22.vertex_count(), k22.edge_count()), (4, 4));
        assert_eq!(girth(&k22), Girth::Finite(4));
        assert_eq!(k22.bipartition(), Some(2));

        let p5 = make_pattern_graph(&PatternSpec::Path(5));
        assert_eq!((p5.edge_count(), p5.max_degree()), (4, 2));

        let c5 = make_pattern_graph(&PatternSpec::Cycle(5));
        assert_eq!(girth(&c5), Girth::Finite(5));
    }

    #[test]
    fn display_matches_notation() {
        for t in ["S3", "P5", "C4", "K{2,3}"] {
            assert_eq!(parse_pattern(t).unwrap().to_string(), t);
        }
    }
}
