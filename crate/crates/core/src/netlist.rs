//! Gate-level netlists, circuit states, the induced closure function and
//! register propagation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use crate::diag::{self, Code, ParseError};
use crate::lattice::{InfoOrder, InvalidQuad, Quad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// A gate input: a node, possibly through an implicit inverter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lit {
    pub node: NodeId,
    pub negated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    And,
    Or,
}

impl GateKind {
    #[inline]
    pub fn apply(self, a: Quad, b: Quad) -> Quad {
        match self {
            GateKind::And => a.and4(b),
            GateKind::Or => a.or4(b),
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            GateKind::And => "and",
            GateKind::Or => "or",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub out: NodeId,
    pub lhs: Lit,
    pub rhs: Lit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Input,
    /// Register output; `input` is the node sampled one step earlier.
    Register {
        input: NodeId,
    },
    /// Output of the gate at this index of [`Netlist::gates`].
    Gate(usize),
}

/// A validated netlist. Nodes are numbered in declaration order; gates are
/// stored in a topological order of the combinational graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    kinds: Vec<NodeKind>,
    gates: Vec<Gate>,
    registers: Vec<(NodeId, NodeId)>,
}

impl Netlist {
    pub fn parse(text: &str) -> Result<Netlist, ParseError> {
        parse(text)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.kinds[id.0]
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn inputs(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(|n| self.kinds[n.0] == NodeKind::Input)
    }

    /// `(output, input)` pairs in declaration order.
    pub fn registers(&self) -> &[(NodeId, NodeId)] {
        &self.registers
    }

    /// Gates in topological order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// The induced closure function: forward propagation of the information
    /// in `s` through every gate, joined with what `s` already states.
    pub fn closure(&self, s: &State) -> State {
        assert_eq!(s.len(), self.len(), "state does not match netlist");
        let mut out = s.clone();
        for g in &self.gates {
            let a = out[g.lhs.node].not_if(g.lhs.negated);
            let b = out[g.rhs.node].not_if(g.rhs.negated);
            out[g.out] = g.kind.apply(a, b).lub(s[g.out]);
        }
        out
    }

    /// Information carried over a clock edge: each register output receives
    /// the current value of its input, every other node becomes `X`.
    pub fn nextf(&self, s: &State) -> State {
        assert_eq!(s.len(), self.len(), "state does not match netlist");
        let mut out = State::unknown(self.len());
        for &(reg, input) in &self.registers {
            out[reg] = s[input];
        }
        out
    }

    /// Plain Boolean evaluation of the gates; `None` if some input or
    /// register output is not Boolean.
    pub fn eval_boolean(&self, s: &State) -> Option<State> {
        let mut out = s.clone();
        for n in self.nodes() {
            if !matches!(self.kinds[n.0], NodeKind::Gate(_)) && !s[n].is_boolean() {
                return None;
            }
        }
        for g in &self.gates {
            let a = out[g.lhs.node] == Quad::One;
            let b = out[g.rhs.node] == Quad::One;
            let (a, b) = (a ^ g.lhs.negated, b ^ g.rhs.negated);
            out[g.out] = Quad::from_bool(match g.kind {
                GateKind::And => a && b,
                GateKind::Or => a || b,
            });
        }
        Some(out)
    }

    /// Parses a state vector written in declaration order, e.g. `11X`.
    pub fn state(&self, vector: &str) -> Result<State, InvalidQuad> {
        let s: State = vector.parse()?;
        if s.len() != self.len() {
            return Err(InvalidQuad(vector.to_string()));
        }
        Ok(s)
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |l: Lit| format!("{}{}", if l.negated { "!" } else { "" }, self.names[l.node.0]);
        for n in self.nodes() {
            match self.kinds[n.0] {
                NodeKind::Input => writeln!(f, "input {}", self.names[n.0])?,
                NodeKind::Register { input } => writeln!(f, "reg {} {}", self.names[n.0], self.names[input.0])?,
                NodeKind::Gate(i) => {
                    let g = self.gates[i];
                    writeln!(
                        f,
                        "{} {} {} {}",
                        g.kind.keyword(),
                        self.names[n.0],
                        lit(g.lhs),
                        lit(g.rhs)
                    )?
                }
            }
        }
        Ok(())
    }
}

struct RawRef<'a> {
    name: &'a str,
    negated: bool,
    line: usize,
    col: usize,
}

enum RawDef<'a> {
    Input,
    Register(RawRef<'a>),
    Gate(GateKind, RawRef<'a>, RawRef<'a>),
}

fn parse(text: &str) -> Result<Netlist, ParseError> {
    let mut defs: Vec<(&str, usize, usize, RawDef)> = Vec::new();
    let mut seen: HashMap<&str, (usize, usize)> = HashMap::new();

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = diag::tokens(line);
        let Some(&(kcol, keyword)) = toks.first() else {
            continue;
        };
        let arity = match keyword {
            "input" => 1,
            "reg" => 2,
            "and" | "or" => 3,
            other => {
                return Err(ParseError::new(
                    Code::Syntax,
                    lineno,
                    kcol,
                    format!("unknown definition `{other}` (expected input, reg, and, or)"),
                ))
            }
        };
        if toks.len() != arity + 1 {
            let col = toks.get(arity + 1).map_or(kcol, |t| t.0);
            return Err(ParseError::new(
                Code::Syntax,
                lineno,
                col,
                format!("`{keyword}` takes {arity} operand(s), found {}", toks.len() - 1),
            ));
        }
        let (ocol, out) = toks[1];
        check_name(out, lineno, ocol)?;
        let operand = |i: usize| -> Result<RawRef, ParseError> {
            let (col, tok) = toks[i];
            let (negated, name) = match tok.strip_prefix('!') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            check_name(name, lineno, col + negated as usize)?;
            Ok(RawRef {
                name,
                negated,
                line: lineno,
                col,
            })
        };
        let def = match keyword {
            "input" => RawDef::Input,
            "reg" => {
                let r = operand(2)?;
                if r.negated {
                    return Err(ParseError::new(
                        Code::Syntax,
                        lineno,
                        r.col,
                        "register inputs cannot be negated",
                    ));
                }
                RawDef::Register(r)
            }
            _ => {
                let kind = if keyword == "and" { GateKind::And } else { GateKind::Or };
                RawDef::Gate(kind, operand(2)?, operand(3)?)
            }
        };
        if let Some((pl, _)) = seen.get(out) {
            return Err(ParseError::new(
                Code::DuplicateDriver,
                lineno,
                ocol,
                format!("node `{out}` is already driven (line {pl})"),
            ));
        }
        seen.insert(out, (lineno, ocol));
        defs.push((out, lineno, ocol, def));
    }

    let names: Vec<String> = defs.iter().map(|d| d.0.to_string()).collect();
    let index: HashMap<String, NodeId> = names.iter().enumerate().map(|(i, n)| (n.clone(), NodeId(i))).collect();
    let resolve = |r: &RawRef| -> Result<Lit, ParseError> {
        index
            .get(r.name)
            .map(|&node| Lit {
                node,
                negated: r.negated,
            })
            .ok_or_else(|| {
                ParseError::new(
                    Code::UndeclaredNode,
                    r.line,
                    r.col,
                    format!("node `{}` is never defined", r.name),
                )
            })
    };

    let mut kinds = Vec::with_capacity(defs.len());
    let mut registers = Vec::new();
    let mut raw_gates: Vec<(Gate, usize, usize)> = Vec::new();
    for (i, (_, line, col, def)) in defs.iter().enumerate() {
        let id = NodeId(i);
        match def {
            RawDef::Input => kinds.push(NodeKind::Input),
            RawDef::Register(r) => {
                let input = resolve(r)?.node;
                registers.push((id, input));
                kinds.push(NodeKind::Register { input });
            }
            RawDef::Gate(kind, l, r) => {
                let gate = Gate {
                    kind: *kind,
                    out: id,
                    lhs: resolve(l)?,
                    rhs: resolve(r)?,
                };
                kinds.push(NodeKind::Gate(usize::MAX));
                raw_gates.push((gate, *line, *col));
            }
        }
    }

    // Kahn's algorithm over gate-to-gate dependencies, stable in declaration order.
    let gate_of: HashMap<NodeId, usize> = raw_gates.iter().enumerate().map(|(i, (g, _, _))| (g.out, i)).collect();
    let mut pending: Vec<usize> = raw_gates
        .iter()
        .map(|(g, _, _)| {
            [g.lhs.node, g.rhs.node]
                .iter()
                .filter(|n| gate_of.contains_key(n))
                .count()
        })
        .collect();
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); raw_gates.len()];
    for (i, (g, _, _)) in raw_gates.iter().enumerate() {
        for n in [g.lhs.node, g.rhs.node] {
            if let Some(&j) = gate_of.get(&n) {
                users[j].push(i);
            }
        }
    }
    let mut order = Vec::with_capacity(raw_gates.len());
    let mut ready: std::collections::BTreeSet<usize> = (0..raw_gates.len()).filter(|&i| pending[i] == 0).collect();
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &u in &users[i] {
            pending[u] -= 1;
            if pending[u] == 0 {
                ready.insert(u);
            }
        }
    }
    if order.len() != raw_gates.len() {
        let stuck = (0..raw_gates.len())
            .find(|&i| pending[i] > 0)
            .expect("some gate is left over");
        let (g, line, col) = raw_gates[stuck];
        return Err(ParseError::new(
            Code::CombinationalCycle,
            line,
            col,
            format!("node `{}` lies on a combinational cycle", names[g.out.0]),
        ));
    }

    let mut gates = Vec::with_capacity(order.len());
    for i in order {
        let g = raw_gates[i].0;
        kinds[g.out.0] = NodeKind::Gate(gates.len());
        gates.push(g);
    }

    Ok(Netlist {
        names,
        index,
        kinds,
        gates,
        registers,
    })
}

fn check_name(name: &str, line: usize, col: usize) -> Result<(), ParseError> {
    if !diag::is_name(name) {
        return Err(ParseError::new(
            Code::Syntax,
            line,
            col,
            format!("`{name}` is not a valid node name"),
        ));
    }
    if diag::is_reserved(name) {
        return Err(ParseError::new(
            Code::Syntax,
            line,
            col,
            format!("`{name}` is reserved by the formula language"),
        ));
    }
    Ok(())
}

/// A total assignment of lattice values to the nodes of one netlist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<Quad>);

impl State {
    pub fn new(values: Vec<Quad>) -> State {
        State(values)
    }

    pub fn filled(len: usize, v: Quad) -> State {
        State(vec![v; len])
    }

    pub fn unknown(len: usize) -> State {
        State::filled(len, Quad::X)
    }

    pub fn top(len: usize) -> State {
        State::filled(len, Quad::Top)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Quad] {
        &self.0
    }

    pub fn is_three_valued(&self) -> bool {
        !self.0.contains(&Quad::Top)
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, Quad)> + '_ {
        self.0.iter().enumerate().map(|(i, &v)| (NodeId(i), v))
    }
}

impl Index<NodeId> for State {
    type Output = Quad;
    fn index(&self, n: NodeId) -> &Quad {
        &self.0[n.0]
    }
}

impl IndexMut<NodeId> for State {
    fn index_mut(&mut self, n: NodeId) -> &mut Quad {
        &mut self.0[n.0]
    }
}

impl InfoOrder for State {
    fn leq(&self, other: &Self) -> bool {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    fn lub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        State(self.0.iter().zip(&other.0).map(|(a, b)| a.lub(*b)).collect())
    }

    fn glb(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        State(self.0.iter().zip(&other.0).map(|(a, b)| a.glb(*b)).collect())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for State {
    type Err = InvalidQuad;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Quad::from_char(c).ok_or_else(|| InvalidQuad(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(State)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AND_GATE: &str = "input p\ninput q\nand r p q\n";
    const LATCH: &str = "input nin\nor nout' nin nout\nreg nout nout'\n";

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    #[test]
    fn and_gate_closure_table() {
        let net = Netlist::parse(AND_GATE).unwrap();
        assert_eq!(net.names(), ["p", "q", "r"]);
        for (input, expected) in [("11X", "111"), ("1XX", "1XX"), ("XX1", "XX1"), ("0X1", "0XT")] {
            assert_eq!(net.closure(&st(input)), st(expected), "F({input})");
        }
    }

    #[test]
    fn empty_netlist() {
        let net = Netlist::parse("").unwrap();
        assert!(net.is_empty());
        let net = Netlist::parse("# nothing here\n\n").unwrap();
        assert_eq!(net.len(), 0);
    }

    #[test]
    fn duplicate_driver() {
        let err = Netlist::parse("input p\ninput q\nand r p q\nor r p q\n").unwrap_err();
        assert_eq!(err.code, Code::DuplicateDriver);
        assert_eq!((err.line, err.col), (4, 4));
        let err = Netlist::parse("input p\nreg p p\n").unwrap_err();
        assert_eq!(err.code, Code::DuplicateDriver);
    }

    #[test]
    fn undeclared_node() {
        let err = Netlist::parse("input p\nand r p q\n").unwrap_err();
        assert_eq!(err.code, Code::UndeclaredNode);
        assert_eq!((err.line, err.col), (2, 9));
        let err = Netlist::parse("reg r missing\n").unwrap_err();
        assert_eq!(err.code, Code::UndeclaredNode);
    }

    #[test]
    fn combinational_cycle() {
        let err = Netlist::parse("input p\nand a p b\nor b a p\n").unwrap_err();
        assert_eq!(err.code, Code::CombinationalCycle);
        // A register breaks the loop.
        Netlist::parse("input p\nand a p b\nreg b a\n").unwrap();
    }

    #[test]
    fn syntax_errors() {
        for bad in ["nand r p q", "and r p", "input 1p", "input N", "reg r !p", "input p q"] {
            let err = Netlist::parse(bad).unwrap_err();
            assert_eq!(err.code, Code::Syntax, "{bad}");
        }
    }

    #[test]
    fn forward_references_are_sorted() {
        let net = Netlist::parse("input a\nor c b a\nand b a a\n").unwrap();
        assert_eq!(net.names(), ["a", "c", "b"]);
        let order: Vec<&str> = net.gates().iter().map(|g| net.name(g.out)).collect();
        assert_eq!(order, ["b", "c"]);
        assert_eq!(net.closure(&st("1XX")), st("111"));
    }

    #[test]
    fn negated_literals() {
        // standalone inverter
        let net = Netlist::parse("input p\nor n !p !p\n").unwrap();
        assert_eq!(net.closure(&st("1X")), st("10"));
        assert_eq!(net.closure(&st("X1")), st("X1"));
        assert_eq!(net.closure(&st("TX")), st("TT"));
    }

    #[test]
    fn nextf_latch() {
        let net = Netlist::parse(LATCH).unwrap();
        assert_eq!(net.names(), ["nin", "nout'", "nout"]);
        assert_eq!(net.nextf(&st("11X")), st("XX1"));
        assert_eq!(net.nextf(&st("XXX")), st("XXX"));
        assert_eq!(net.nextf(&st("XXT")), st("XXX"));
    }

    #[test]
    fn boolean_agreement() {
        let net = Netlist::parse("input a\ninput b\nand c a !b\nor d c !a\n").unwrap();
        for v in 0..4u8 {
            let s = State::new(vec![
                Quad::from_bool(v & 1 == 1),
                Quad::from_bool(v & 2 == 2),
                Quad::X,
                Quad::X,
            ]);
            assert_eq!(Some(net.closure(&s)), net.eval_boolean(&s));
        }
    }

    #[test]
    fn render_round_trips() {
        let text = "input in\ninput set\nreg out out'\nand t1 in set\nand t2 out !set\nor out' t1 t2\n";
        let net = Netlist::parse(text).unwrap();
        assert_eq!(net.to_string(), text);
        assert_eq!(Netlist::parse(&net.to_string()).unwrap(), net);
    }
}
