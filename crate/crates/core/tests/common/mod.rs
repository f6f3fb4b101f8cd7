#![allow(dead_code)]

use gste::agraph::{AssertionGraph, SeqGraph, Shape, VertexId};
use gste::tel::{Prop, Tel};
use gste::{Gtel, Netlist, Quad, State};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const AND_GATE: &str = include_str!("../../models/and_gate.net");
pub const AND_CAUTIOUS: &str = include_str!("../../models/and_cautious.net");
pub const AND_CAUTIOUS_STE: &str = include_str!("../../models/and_cautious.ste");
pub const MEMORY_CELL: &str = include_str!("../../models/memory_cell.net");
pub const MEMORY_CELL_STE: &str = include_str!("../../models/memory_cell.ste");
pub const MEMORY_CELL_AG: &str = include_str!("../../models/memory_cell.ag");
pub const LATCH: &str = include_str!("../../models/latch.net");
pub const LATCH_AG: &str = include_str!("../../models/latch.ag");
pub const LATCH_CAUTIOUS_AG: &str = include_str!("../../models/latch_cautious.ag");
pub const INFO_LOSS: &str = include_str!("../../models/info_loss.net");
pub const INFO_LOSS_AG: &str = include_str!("../../models/info_loss.ag");
pub const REGISTER: &str = include_str!("../../models/register.net");
pub const REGISTER_AG: &str = include_str!("../../models/register.ag");
pub const REGISTER_BOTTOM_STE: &str = include_str!("../../models/register_bottom.ste");

pub fn models_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("models")
}

/// One node of a generated circuit. Gate operands refer to earlier nodes,
/// so every generated circuit is free of combinational cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSpec {
    Input,
    Reg(usize),
    And((usize, bool), (usize, bool)),
    Or((usize, bool), (usize, bool)),
}

pub fn render(specs: &[NodeSpec]) -> String {
    let lit = |(n, neg): (usize, bool)| format!("{}n{n}", if neg { "!" } else { "" });
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            NodeSpec::Input => format!("input n{i}\n"),
            NodeSpec::Reg(src) => format!("reg n{i} n{src}\n"),
            NodeSpec::And(a, b) => format!("and n{i} {} {}\n", lit(*a), lit(*b)),
            NodeSpec::Or(a, b) => format!("or n{i} {} {}\n", lit(*a), lit(*b)),
        })
        .collect()
}

pub fn build(specs: &[NodeSpec]) -> Netlist {
    Netlist::parse(&render(specs)).expect("generated netlists are well formed")
}

/// Every choice for node `i` of an `n`-node circuit.
pub fn node_choices(i: usize, n: usize) -> Vec<NodeSpec> {
    let mut out = vec![NodeSpec::Input];
    out.extend((0..n).map(NodeSpec::Reg));
    let lits: Vec<(usize, bool)> = (0..i).flat_map(|k| [(k, false), (k, true)]).collect();
    for a in &lits {
        for b in &lits {
            out.push(NodeSpec::And(*a, *b));
            out.push(NodeSpec::Or(*a, *b));
        }
    }
    out
}

/// All circuits with `1..=max_nodes` nodes in the generated family.
pub fn all_circuits(max_nodes: usize) -> Vec<Vec<NodeSpec>> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let mut partial: Vec<Vec<NodeSpec>> = vec![Vec::new()];
        for i in 0..n {
            let choices = node_choices(i, n);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

pub fn random_specs(rng: &mut StdRng, max_nodes: usize) -> Vec<NodeSpec> {
    let n = rng.gen_range(1..=max_nodes);
    (0..n)
        .map(|i| node_choices(i, n).choose(rng).unwrap().clone())
        .collect()
}

pub fn random_quad(rng: &mut StdRng) -> Quad {
    Quad::ALL[rng.gen_range(0..4)]
}

pub fn random_state(rng: &mut StdRng, nodes: usize) -> State {
    State::new((0..nodes).map(|_| random_quad(rng)).collect())
}

/// Random state biased towards `X`, the common case for antecedents.
pub fn sparse_state(rng: &mut StdRng, nodes: usize) -> State {
    State::new(
        (0..nodes)
            .map(|_| if rng.gen_bool(0.5) { Quad::X } else { random_quad(rng) })
            .collect(),
    )
}

/// A shape with at most `max_edges` edges and `max_vertices` vertices in
/// which every edge starts at an already reached vertex.
pub fn random_shape(rng: &mut StdRng, max_edges: usize, max_vertices: usize) -> Shape {
    let edges = rng.gen_range(1..=max_edges);
    let mut reached = 1;
    let mut list = Vec::with_capacity(edges);
    for i in 0..edges {
        let src = rng.gen_range(0..reached);
        let dst = rng.gen_range(0..(reached + 1).min(max_vertices));
        if dst == reached {
            reached += 1;
        }
        list.push((format!("e{i}"), VertexId(src), VertexId(dst)));
    }
    let vertices = (0..reached).map(|v| format!("v{v}")).collect();
    Shape::new(vertices, VertexId(0), list).unwrap()
}

/// Every reachable shape with exactly `edges` edges over vertices added in
/// order of first reach.
pub fn all_shapes(edges: usize) -> Vec<Shape> {
    fn go(i: usize, edges: usize, reached: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Shape>) {
        if i == edges {
            let list = acc
                .iter()
                .enumerate()
                .map(|(k, (s, d))| (format!("e{k}"), VertexId(*s), VertexId(*d)))
                .collect();
            let vertices = (0..reached).map(|v| format!("v{v}")).collect();
            out.push(Shape::new(vertices, VertexId(0), list).unwrap());
            return;
        }
        for s in 0..reached {
            for d in 0..=reached {
                acc.push((s, d));
                go(i + 1, edges, reached + (d == reached) as usize, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, edges, 1, &mut Vec::new(), &mut out);
    out
}

pub fn random_seq_graph(rng: &mut StdRng, shape: &Shape, nodes: usize) -> SeqGraph {
    SeqGraph::new((0..shape.num_edges()).map(|_| sparse_state(rng, nodes)).collect())
}

pub fn random_prop(rng: &mut StdRng, consts: &[String]) -> Prop {
    if consts.is_empty() || rng.gen_bool(0.3) {
        return Prop::Const(rng.gen());
    }
    let var = Prop::var(consts.choose(rng).unwrap().clone());
    match rng.gen_range(0..4) {
        0 => Prop::not(var),
        1 => Prop::and(var, Prop::var(consts.choose(rng).unwrap().clone())),
        2 => Prop::or(Prop::not(var), Prop::var(consts.choose(rng).unwrap().clone())),
        _ => var,
    }
}

/// A next-free formula over the nodes of `net`: a conjunction of up to
/// `max_atoms` atoms, some of them guarded.
pub fn random_label(rng: &mut StdRng, net: &Netlist, consts: &[String], max_atoms: usize) -> Tel {
    let atoms = rng.gen_range(0..=max_atoms);
    let parts: Vec<Tel> = (0..atoms)
        .map(|_| {
            let node = net.names().choose(rng).unwrap().clone();
            let atom = Tel::is_prop(node, random_prop(rng, consts));
            if !consts.is_empty() && rng.gen_bool(0.2) {
                Tel::guard(random_prop(rng, consts), atom)
            } else {
                atom
            }
        })
        .collect();
    match parts.len() {
        0 => Tel::truth(),
        1 => parts.into_iter().next().unwrap(),
        _ => Tel::And(parts),
    }
}

/// A formula of depth at most `max_depth` made of shifted labels.
pub fn random_tel(rng: &mut StdRng, net: &Netlist, consts: &[String], max_depth: usize) -> Tel {
    let depth = rng.gen_range(0..=max_depth);
    random_tel_of_depth(rng, net, consts, depth)
}

/// A formula of exactly `depth` made of shifted labels.
pub fn random_tel_of_depth(rng: &mut StdRng, net: &Netlist, consts: &[String], depth: usize) -> Tel {
    let mut parts = Vec::new();
    for t in 0..=depth {
        if t == depth || rng.gen_bool(0.6) {
            parts.push(Tel::next_n(t, random_label(rng, net, consts, 2)));
        }
    }
    Tel::And(parts)
}

pub fn random_agraph(rng: &mut StdRng, net: &Netlist, shape: Shape, consts: &[String]) -> AssertionGraph {
    let labels = (0..shape.num_edges())
        .map(|_| {
            let ant = Gtel::new(random_label(rng, net, consts, 2)).unwrap();
            let cons = Gtel::new(random_label(rng, net, consts, 1)).unwrap();
            (ant, cons)
        })
        .collect();
    AssertionGraph::new(shape, consts.to_vec(), labels).unwrap()
}

/// A path-shaped graph `v0 -> v1 -> ... -> v{len}`.
pub fn linear_shape(len: usize) -> Shape {
    Shape::new(
        (0..=len).map(|v| format!("v{v}")).collect(),
        VertexId(0),
        (0..len)
            .map(|i| (format!("e{i}"), VertexId(i), VertexId(i + 1)))
            .collect(),
    )
    .unwrap()
}

pub fn consts(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
