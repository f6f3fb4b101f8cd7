//! Assertion graphs, sequence graphs and the paths through them.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use indexmap::IndexMap;

use crate::diag::{self, Code, ParseError};
use crate::error::CheckError;
use crate::lattice::{InfoOrder, Quad};
use crate::netlist::{Netlist, State};
use crate::ste::{Sequence, SteAssertion};
use crate::tel::{self, Gtel, Tel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub dst: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("edge name `{0}` used twice")]
    DuplicateEdge(String),
    #[error("vertex name `{0}` used twice")]
    DuplicateVertex(String),
    #[error("vertex `{0}` is not reachable from the initial vertex")]
    Unreachable(String),
    #[error("edge refers to vertex index {0}, which does not exist")]
    NoSuchVertex(usize),
}

/// Vertices, edges and the initial vertex, without labels. Every vertex is
/// reachable from the initial one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    vertices: Vec<String>,
    init: VertexId,
    edges: Vec<Edge>,
    ine: Vec<Vec<EdgeId>>,
    succ: Vec<Vec<EdgeId>>,
}

impl Shape {
    pub fn new(
        vertices: Vec<String>,
        init: VertexId,
        edges: Vec<(String, VertexId, VertexId)>,
    ) -> Result<Shape, ShapeError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(ShapeError::DuplicateVertex(v.clone()));
            }
        }
        let nv = vertices.len();
        if init.0 >= nv {
            return Err(ShapeError::NoSuchVertex(init.0));
        }
        let mut out_of: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
        let mut into: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
        let mut es = Vec::with_capacity(edges.len());
        for (i, (name, src, dst)) in edges.into_iter().enumerate() {
            for v in [src, dst] {
                if v.0 >= nv {
                    return Err(ShapeError::NoSuchVertex(v.0));
                }
            }
            if es.iter().any(|e: &Edge| e.name == name) {
                return Err(ShapeError::DuplicateEdge(name));
            }
            out_of[src.0].push(EdgeId(i));
            into[dst.0].push(EdgeId(i));
            es.push(Edge { name, src, dst });
        }

        let mut seen = vec![false; nv];
        let mut stack = vec![init];
        seen[init.0] = true;
        while let Some(v) = stack.pop() {
            for e in &out_of[v.0] {
                let d = es[e.0].dst;
                if !seen[d.0] {
                    seen[d.0] = true;
                    stack.push(d);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(ShapeError::Unreachable(vertices[v].clone()));
        }

        let ine = es.iter().map(|e| into[e.src.0].clone()).collect();
        let succ = es.iter().map(|e| out_of[e.dst.0].clone()).collect();
        Ok(Shape {
            vertices,
            init,
            edges: es,
            ine,
            succ,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn init(&self) -> VertexId {
        self.init
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn is_initial(&self, e: EdgeId) -> bool {
        self.edges[e.0].src == self.init
    }

    /// Edges ending where `e` starts.
    pub fn ine(&self, e: EdgeId) -> &[EdgeId] {
        &self.ine[e.0]
    }

    /// Edges starting where `e` ends.
    pub fn successors(&self, e: EdgeId) -> &[EdgeId] {
        &self.succ[e.0]
    }

    /// `src->dst` for messages, or the edge id when there are parallel edges.
    pub fn describe(&self, e: EdgeId) -> String {
        let edge = &self.edges[e.0];
        format!(
            "{} ({}->{})",
            edge.name,
            self.vertex_name(edge.src),
            self.vertex_name(edge.dst)
        )
    }
}

/// A path of edges, each starting where the previous one ends. Paths built
/// by [`Path::new`] are initial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path(Vec<EdgeId>);

impl Path {
    pub fn new(shape: &Shape, edges: Vec<EdgeId>) -> Result<Path, CheckError> {
        let Some(first) = edges.first() else {
            return Err(CheckError::ShapeMismatch("empty path".into()));
        };
        if edges.iter().any(|e| e.0 >= shape.num_edges()) {
            return Err(CheckError::ShapeMismatch("path edge outside the graph".into()));
        }
        if !shape.is_initial(*first) {
            return Err(CheckError::ShapeMismatch(format!(
                "path starts with non-initial edge {}",
                shape.edge(*first).name
            )));
        }
        for w in edges.windows(2) {
            if shape.edge(w[0]).dst != shape.edge(w[1]).src {
                return Err(CheckError::ShapeMismatch(format!(
                    "edges {} and {} are not adjacent",
                    shape.edge(w[0]).name,
                    shape.edge(w[1]).name
                )));
            }
        }
        Ok(Path(edges))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len() - 1
    }

    pub fn render(&self, shape: &Shape) -> String {
        let names: Vec<&str> = self.0.iter().map(|e| shape.edge(*e).name.as_str()).collect();
        names.join(",")
    }
}

/// All initial paths of depth at most `bound`, shallowest first; paths of
/// equal depth are ordered lexicographically by edge declaration order.
pub fn enumerate_paths(shape: &Shape, bound: usize) -> Vec<Path> {
    let mut layer: Vec<Vec<EdgeId>> = shape
        .edge_ids()
        .filter(|e| shape.is_initial(*e))
        .map(|e| vec![e])
        .collect();
    let mut out = Vec::new();
    for depth in 0..=bound {
        out.extend(layer.iter().cloned().map(Path));
        if depth == bound {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|p| {
                shape.successors(*p.last().unwrap()).iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(*e);
                    q
                })
            })
            .collect();
    }
    out
}

/// One state per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqGraph(Vec<State>);

impl SeqGraph {
    pub fn new(states: Vec<State>) -> SeqGraph {
        SeqGraph(states)
    }

    pub fn filled(shape: &Shape, nodes: usize, v: Quad) -> SeqGraph {
        SeqGraph(vec![State::filled(nodes, v); shape.num_edges()])
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_three_valued(&self) -> bool {
        self.0.iter().all(State::is_three_valued)
    }

    pub fn check_shape(&self, shape: &Shape, nodes: usize) -> Result<(), CheckError> {
        if self.0.len() != shape.num_edges() {
            return Err(CheckError::ShapeMismatch(format!(
                "{} states for {} edges",
                self.0.len(),
                shape.num_edges()
            )));
        }
        if let Some(s) = self.0.iter().find(|s| s.len() != nodes) {
            return Err(CheckError::ShapeMismatch(format!(
                "state of {} nodes for a circuit of {nodes}",
                s.len()
            )));
        }
        Ok(())
    }

    /// Edge id -> node name -> value, in declaration order.
    pub fn to_json(&self, shape: &Shape, net: &Netlist) -> serde_json::Value {
        let map: IndexMap<&str, IndexMap<&str, Quad>> = shape
            .edge_ids()
            .map(|e| {
                let s = &self[e];
                let nodes = s.iter().map(|(n, v)| (net.name(n), v)).collect();
                (shape.edge(e).name.as_str(), nodes)
            })
            .collect();
        serde_json::to_value(map).expect("string keys serialize")
    }

    /// Edges labeled with their state vectors in netlist declaration order.
    pub fn to_dot(&self, shape: &Shape, net: &Netlist, title: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", title.replace('"', "\\\""));
        let order: Vec<&str> = net.names().iter().map(String::as_str).collect();
        out += &format!("  // state order: {}\n", order.join(" "));
        for (i, v) in shape.vertices().iter().enumerate() {
            let style = if VertexId(i) == shape.init() {
                ", shape=doublecircle"
            } else {
                ""
            };
            out += &format!("  \"{v}\" [label=\"{v}\"{style}];\n");
        }
        for e in shape.edge_ids() {
            let edge = shape.edge(e);
            out += &format!(
                "  \"{}\" -> \"{}\" [label=\"{}: {}\"];\n",
                shape.vertex_name(edge.src),
                shape.vertex_name(edge.dst),
                edge.name,
                self[e]
            );
        }
        out += "}\n";
        out
    }
}

impl Index<EdgeId> for SeqGraph {
    type Output = State;
    fn index(&self, e: EdgeId) -> &State {
        &self.0[e.0]
    }
}

impl IndexMut<EdgeId> for SeqGraph {
    fn index_mut(&mut self, e: EdgeId) -> &mut State {
        &mut self.0[e.0]
    }
}

impl InfoOrder for SeqGraph {
    fn leq(&self, other: &Self) -> bool {
        assert_eq!(self.0.len(), other.0.len(), "sequence graphs of different shape");
        self.0.iter().zip(&other.0).all(|(a, b)| a.leq(b))
    }

    fn lub(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "sequence graphs of different shape");
        SeqGraph(self.0.iter().zip(&other.0).map(|(a, b)| a.lub(b)).collect())
    }

    fn glb(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "sequence graphs of different shape");
        SeqGraph(self.0.iter().zip(&other.0).map(|(a, b)| a.glb(b)).collect())
    }
}

impl fmt::Display for SeqGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "e{i}: {s}")?;
        }
        write!(f, "}}")
    }
}

/// The sequence a path walks through: the state of each edge in turn.
pub fn seqp(shape: &Shape, sigma: &SeqGraph, rho: &Path) -> Result<Sequence, CheckError> {
    if sigma.len() != shape.num_edges() {
        return Err(CheckError::ShapeMismatch(format!(
            "{} states for {} edges",
            sigma.len(),
            shape.num_edges()
        )));
    }
    if rho.edges().iter().any(|e| e.0 >= shape.num_edges()) {
        return Err(CheckError::ShapeMismatch("path edge outside the graph".into()));
    }
    Ok(Sequence::new(rho.edges().iter().map(|e| sigma[*e].clone()).collect()))
}

/// A shape with antecedent and consequent labels on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionGraph {
    pub shape: Shape,
    pub consts: Vec<String>,
    ant: Vec<Gtel>,
    cons: Vec<Gtel>,
}

impl AssertionGraph {
    /// `labels` gives `(ant, cons)` per edge in edge order.
    pub fn new(shape: Shape, consts: Vec<String>, labels: Vec<(Gtel, Gtel)>) -> Result<AssertionGraph, CheckError> {
        if labels.len() != shape.num_edges() {
            return Err(CheckError::ShapeMismatch(format!(
                "{} labels for {} edges",
                labels.len(),
                shape.num_edges()
            )));
        }
        let (ant, cons): (Vec<Gtel>, Vec<Gtel>) = labels.into_iter().unzip();
        for g in ant.iter().chain(&cons) {
            if let Some(c) = g.tel().consts().into_iter().find(|c| !consts.iter().any(|d| d == c)) {
                return Err(CheckError::UndeclaredConstant(c.to_string()));
            }
        }
        Ok(AssertionGraph {
            shape,
            consts,
            ant,
            cons,
        })
    }

    pub fn parse(text: &str) -> Result<AssertionGraph, ParseError> {
        parse_agraph(text)
    }

    pub fn ant(&self, e: EdgeId) -> &Gtel {
        &self.ant[e.0]
    }

    pub fn cons(&self, e: EdgeId) -> &Gtel {
        &self.cons[e.0]
    }

    pub fn check_nodes(&self, net: &Netlist) -> Result<(), CheckError> {
        for g in self.ant.iter().chain(&self.cons) {
            g.tel().check_nodes(net)?;
        }
        Ok(())
    }
}

/// Renders in the file format; parsing the result gives back an equal graph.
impl fmt::Display for AssertionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.consts.is_empty() {
            writeln!(f, "const {}", self.consts.join(" "))?;
        }
        for v in self.shape.vertices() {
            writeln!(f, "vertex {v}")?;
        }
        writeln!(f, "init {}", self.shape.vertex_name(self.shape.init()))?;
        for e in self.shape.edge_ids() {
            let edge = self.shape.edge(e);
            writeln!(
                f,
                "edge {} {} -> {} [ {} / {} ]",
                edge.name,
                self.shape.vertex_name(edge.src),
                self.shape.vertex_name(edge.dst),
                self.ant(e),
                self.cons(e)
            )?;
        }
        Ok(())
    }
}

/// `A => C` for a path: the edge labels shifted to their time step and
/// conjoined.
pub fn ass(g: &AssertionGraph, rho: &Path) -> SteAssertion {
    let stack = |labels: &[Gtel]| {
        Tel::And(
            rho.edges()
                .iter()
                .enumerate()
                .map(|(t, e)| Tel::next_n(t, labels[e.0].tel().clone()))
                .collect(),
        )
    };
    SteAssertion::new(stack(&g.ant), stack(&g.cons))
}

/// `ass(G, rho)` for every initial path of depth at most `bound`, in
/// [`enumerate_paths`] order.
pub fn enumerate_assertions(g: &AssertionGraph, bound: usize) -> Vec<(Path, SteAssertion)> {
    enumerate_paths(&g.shape, bound)
        .into_iter()
        .map(|p| {
            let a = ass(g, &p);
            (p, a)
        })
        .collect()
}

struct PendingEdge {
    line: usize,
    name: (usize, String),
    src: (usize, String),
    dst: (usize, String),
    ant: Gtel,
    cons: Gtel,
}

fn parse_agraph(text: &str) -> Result<AssertionGraph, ParseError> {
    let mut consts: Vec<String> = Vec::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_at: HashMap<String, (usize, usize)> = HashMap::new();
    let mut init: Option<(usize, usize, String)> = None;
    let mut edges: Vec<PendingEdge> = Vec::new();

    let declare = |vertices: &mut Vec<String>,
                   vertex_at: &mut HashMap<String, (usize, usize)>,
                   line: usize,
                   col: usize,
                   name: &str|
     -> Result<(), ParseError> {
        if !diag::is_name(name) {
            return Err(ParseError::new(
                Code::Syntax,
                line,
                col,
                format!("`{name}` is not a valid vertex name"),
            ));
        }
        if !vertex_at.contains_key(name) {
            vertex_at.insert(name.to_string(), (line, col));
            vertices.push(name.to_string());
        }
        Ok(())
    };

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = diag::tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        match keyword {
            "const" => {
                for &(c, name) in &toks[1..] {
                    if !diag::is_name(name) || diag::is_reserved(name) {
                        return Err(ParseError::new(
                            Code::Syntax,
                            lineno,
                            c,
                            format!("`{name}` is not a valid constant name"),
                        ));
                    }
                    if consts.iter().any(|k| k == name) {
                        return Err(ParseError::new(
                            Code::DuplicateName,
                            lineno,
                            c,
                            format!("constant `{name}` declared twice"),
                        ));
                    }
                    consts.push(name.to_string());
                }
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(ParseError::new(Code::Syntax, lineno, col, "expected a vertex name"));
                }
                for &(c, name) in &toks[1..] {
                    if vertex_at.contains_key(name) {
                        return Err(ParseError::new(
                            Code::DuplicateName,
                            lineno,
                            c,
                            format!("vertex `{name}` declared twice"),
                        ));
                    }
                    declare(&mut vertices, &mut vertex_at, lineno, c, name)?;
                }
            }
            "init" => {
                let [_, (c, name)] = toks[..] else {
                    return Err(ParseError::new(Code::Syntax, lineno, col, "expected `init <vertex>`"));
                };
                if init.is_some() {
                    return Err(ParseError::new(
                        Code::DuplicateName,
                        lineno,
                        c,
                        "initial vertex declared twice",
                    ));
                }
                declare(&mut vertices, &mut vertex_at, lineno, c, name)?;
                init = Some((lineno, c, name.to_string()));
            }
            "edge" => edges.push(parse_edge(line, lineno, &toks, &consts)?),
            other => {
                return Err(ParseError::new(
                    Code::Syntax,
                    lineno,
                    col,
                    format!("unknown declaration `{other}` (expected const, vertex, init or edge)"),
                ))
            }
        }
    }

    let init = match init {
        Some((_, _, name)) => name,
        None => match vertices.first() {
            Some(v) => v.clone(),
            None => {
                return Err(ParseError::new(
                    Code::MissingInit,
                    text.lines().count().max(1),
                    1,
                    "graph declares no vertices",
                ))
            }
        },
    };
    let index = |name: &str| vertices.iter().position(|v| v == name).map(VertexId);

    let mut raw = Vec::with_capacity(edges.len());
    let mut labels = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        if edges[..i].iter().any(|p| p.name.1 == e.name.1) {
            return Err(ParseError::new(
                Code::DuplicateName,
                e.line,
                e.name.0,
                format!("edge `{}` declared twice", e.name.1),
            ));
        }
        let mut ends = [VertexId(0); 2];
        for (k, (c, v)) in [&e.src, &e.dst].into_iter().enumerate() {
            ends[k] = index(v).ok_or_else(|| {
                ParseError::new(Code::UnknownVertex, e.line, *c, format!("vertex `{v}` is not declared"))
            })?;
        }
        raw.push((e.name.1.clone(), ends[0], ends[1]));
        labels.push((e.ant.clone(), e.cons.clone()));
    }

    let shape = Shape::new(vertices.clone(), index(&init).unwrap(), raw).map_err(|err| match err {
        ShapeError::Unreachable(v) => {
            let (line, col) = vertex_at[&v];
            ParseError::new(
                Code::Unreachable,
                line,
                col,
                format!("vertex `{v}` is not reachable from `{init}`"),
            )
        }
        other => ParseError::new(Code::Syntax, 1, 1, other.to_string()),
    })?;
    Ok(AssertionGraph::new(shape, consts, labels).expect("labels were checked while parsing"))
}

fn parse_edge(line: &str, lineno: usize, toks: &[(usize, &str)], consts: &[String]) -> Result<PendingEdge, ParseError> {
    let err = |col: usize, msg: &str| ParseError::new(Code::Syntax, lineno, col, msg);
    let end_col = toks.last().map_or(1, |t| t.0 + t.1.chars().count());
    if toks.len() < 5 {
        return Err(err(end_col, "expected `edge <id> <src> -> <dst> [ ant / cons ]`"));
    }
    let (name, src, arrow, dst) = (toks[1], toks[2], toks[3], toks[4]);
    if !diag::is_name(name.1) {
        return Err(err(name.0, "invalid edge id"));
    }
    if arrow.1 != "->" {
        return Err(err(arrow.0, "expected `->`"));
    }
    for t in [src, dst] {
        if !diag::is_name(t.1) {
            return Err(err(t.0, "invalid vertex name"));
        }
    }
    let rest_col = dst.0 + dst.1.chars().count();
    let chars: Vec<char> = line.chars().collect();
    let rest: String = chars[rest_col - 1..].iter().collect();
    let rest = match rest.find('#') {
        Some(i) => &rest[..i],
        None => &rest[..],
    };
    let (ant, cons) = if rest.trim().is_empty() {
        (Gtel::truth(), Gtel::truth())
    } else {
        let trimmed = rest.trim_start();
        let open = rest_col + rest.chars().count() - trimmed.chars().count();
        if !trimmed.starts_with('[') {
            return Err(err(open, "expected `[` to start the edge label"));
        }
        let Some(close) = trimmed.rfind(']') else {
            return Err(err(end_col, "expected `]` to end the edge label"));
        };
        if !trimmed[close + 1..].trim().is_empty() {
            let c = open + trimmed[..close + 1].chars().count();
            return Err(err(c, "unexpected text after the edge label"));
        }
        let body = &trimmed[1..close];
        let Some(slash) = body.find('/') else {
            return Err(err(open, "expected `ant / cons` inside the edge label"));
        };
        let (a, c) = (&body[..slash], &body[slash + 1..]);
        let a_off = open;
        let c_off = open + a.chars().count() + 1;
        let side = |s: &str, off: usize| -> Result<Gtel, ParseError> {
            if s.trim().is_empty() {
                Ok(Gtel::truth())
            } else {
                tel::parse_gtel(s, consts).map_err(|e| e.at_offset(lineno, off))
            }
        };
        (side(a, a_off)?, side(c, c_off)?)
    };
    Ok(PendingEdge {
        line: lineno,
        name: (name.0, name.1.to_string()),
        src: (src.0, src.1.to_string()),
        dst: (dst.0, dst.1.to_string()),
        ant,
        cons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const MEMORY_GRAPH: &str = "\
const a
vertex init v w
edge e0 init -> v [ in = a & set = 1 / true ]
edge e1 v -> v [ set = 0 / true ]
edge e2 v -> w [ true / out = a ]
edge e3 w -> w
";

    const LATCH_GRAPH: &str = "\
vertex init v
edge e0 init -> v [ nin = 1 / ]
edge e1 v -> v [ / nout = 1 ]
";

    fn ids(g: &AssertionGraph, names: &[&str]) -> Vec<EdgeId> {
        names.iter().map(|n| g.shape.edge_by_name(n).unwrap()).collect()
    }

    #[test]
    fn memory_graph_parses() {
        let g = AssertionGraph::parse(MEMORY_GRAPH).unwrap();
        assert_eq!(g.shape.vertices(), ["init", "v", "w"]);
        assert_eq!(g.shape.num_edges(), 4);
        let e3 = g.shape.edge_by_name("e3").unwrap();
        assert!(g.ant(e3).tel().is_truth() && g.cons(e3).tel().is_truth());
        assert_eq!(g.ant(EdgeId(0)).to_string(), "in = a & set = 1");
    }

    #[test]
    fn ine_sets() {
        let g = AssertionGraph::parse(MEMORY_GRAPH).unwrap();
        let s = &g.shape;
        assert_eq!(s.ine(EdgeId(2)), ids(&g, &["e0", "e1"]));
        assert_eq!(s.ine(EdgeId(3)), ids(&g, &["e2", "e3"]));
        assert!(s.ine(EdgeId(0)).is_empty());
        assert!(s.is_initial(EdgeId(0)) && !s.is_initial(EdgeId(1)));
    }

    #[test]
    fn round_trip() {
        let g = AssertionGraph::parse(MEMORY_GRAPH).unwrap();
        let again = AssertionGraph::parse(&g.to_string()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn minimal_graph() {
        let g = AssertionGraph::parse("vertex a b\nedge e a -> b [ true / true ]\n").unwrap();
        assert_eq!(g.shape.vertices().len(), 2);
        assert_eq!(g.shape.init(), VertexId(0));
    }

    #[test]
    fn explicit_init() {
        let g = AssertionGraph::parse("vertex v\ninit s\nedge e s -> v\n").unwrap();
        assert_eq!(g.shape.vertex_name(g.shape.init()), "s");
    }

    #[test]
    fn parse_errors() {
        let e = AssertionGraph::parse("vertex a b\nedge e q -> b\n").unwrap_err();
        assert_eq!((e.code, e.line, e.col), (Code::UnknownVertex, 2, 8));
        let e = AssertionGraph::parse("vertex a b c\nedge e a -> b\n").unwrap_err();
        assert_eq!((e.code, e.line, e.col), (Code::Unreachable, 1, 12));
        let e = AssertionGraph::parse("# nothing\n").unwrap_err();
        assert_eq!(e.code, Code::MissingInit);
        let e = AssertionGraph::parse("vertex a b\nedge e a -> b [ N(x = 1) / ]\n").unwrap_err();
        assert_eq!((e.code, e.line, e.col), (Code::NextInGtel, 2, 17));
        let e = AssertionGraph::parse("vertex a b\nedge e a -> b [ x = c / ]\n").unwrap_err();
        assert_eq!((e.code, e.line, e.col), (Code::UnknownConstant, 2, 21));
        let e = AssertionGraph::parse("vertex a b\nedge e a -> b [ / x = 1 & ]\n").unwrap_err();
        assert_eq!((e.code, e.line), (Code::Syntax, 2));
        let e = AssertionGraph::parse("vertex a b\nedge e a -> b\nedge e b -> b\n").unwrap_err();
        assert_eq!((e.code, e.line), (Code::DuplicateName, 3));
        let e = AssertionGraph::parse("vertex a b\nedge e a => b\n").unwrap_err();
        assert_eq!((e.code, e.col), (Code::Syntax, 10));
    }

    #[test]
    fn seqp_walks_edges() {
        let s = Shape::new(
            vec!["init".into(), "v".into(), "w".into()],
            VertexId(0),
            vec![
                ("top".into(), VertexId(0), VertexId(1)),
                ("bot".into(), VertexId(0), VertexId(1)),
                ("vw".into(), VertexId(1), VertexId(2)),
                ("ww".into(), VertexId(2), VertexId(2)),
            ],
        )
        .unwrap();
        let sigma = SeqGraph::new(
            ["11X", "0XX", "XXX", "000"]
                .iter()
                .map(|v| v.parse().unwrap())
                .collect(),
        );
        let rho = Path::new(&s, vec![EdgeId(0), EdgeId(2), EdgeId(3), EdgeId(3)]).unwrap();
        assert_eq!(seqp(&s, &sigma, &rho).unwrap().to_string(), "[11X,XXX,000,000]");
        let single = Path::new(&s, vec![EdgeId(1)]).unwrap();
        assert_eq!(seqp(&s, &sigma, &single).unwrap().depth(), 0);
        assert!(Path::new(&s, vec![EdgeId(2)]).is_err());
        assert!(Path::new(&s, vec![EdgeId(0), EdgeId(3)]).is_err());
        let short = SeqGraph::new(vec![State::unknown(3)]);
        assert!(seqp(&s, &short, &rho).is_err());
    }

    #[test]
    fn latch_assertions() {
        let g = AssertionGraph::parse(LATCH_GRAPH).unwrap();
        let listed: Vec<String> = enumerate_assertions(&g, 2)
            .into_iter()
            .map(|(_, a)| a.simplified().to_string())
            .collect();
        assert_eq!(
            listed,
            [
                "nin = 1 => true",
                "nin = 1 => N(nout = 1)",
                "nin = 1 => N(nout = 1) & N N(nout = 1)",
            ]
        );
        let only_roots = enumerate_assertions(&g, 0);
        assert_eq!(only_roots.len(), 1);
        assert_eq!(only_roots[0].1.depth(), 0);
    }

    #[test]
    fn path_order_is_bfs() {
        let g = AssertionGraph::parse(MEMORY_GRAPH).unwrap();
        let paths: Vec<String> = enumerate_paths(&g.shape, 2)
            .iter()
            .map(|p| p.render(&g.shape))
            .collect();
        assert_eq!(paths, ["e0", "e0,e1", "e0,e2", "e0,e1,e1", "e0,e1,e2", "e0,e2,e3"]);
        for (p, a) in enumerate_assertions(&g, 3) {
            assert_eq!(a.depth(), p.depth());
        }
    }

    #[test]
    fn dumps() {
        let net = Netlist::parse("input nin\nor nout' nin nout\nreg nout nout'\n").unwrap();
        let g = AssertionGraph::parse(LATCH_GRAPH).unwrap();
        let sigma = SeqGraph::new(vec![net.state("11X").unwrap(), net.state("X11").unwrap()]);
        let json = sigma.to_json(&g.shape, &net);
        assert_eq!(
            json.to_string(),
            r#"{"e0":{"nin":"1","nout'":"1","nout":"X"},"e1":{"nin":"X","nout'":"1","nout":"1"}}"#
        );
        let dot = sigma.to_dot(&g.shape, &net, "latch");
        assert!(dot.contains("\"init\" -> \"v\" [label=\"e0: 11X\"]"));
        assert!(dot.contains("\"v\" -> \"v\" [label=\"e1: X11\"]"));
    }
}
