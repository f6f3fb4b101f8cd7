//! Brute-force reference semantics for cross-checking the engine on tiny
//! instances.
//!
//! Nothing here calls the engine's lattice tables, closure, register map,
//! defining states or fixpoint loops. Values are read as the set of Boolean
//! values they still allow (`0 = {0}`, `1 = {1}`, `X = {0,1}`, `T = {}`),
//! the order is reverse inclusion and every operation is derived from
//! that reading. Satisfaction follows the definitions literally and every
//! quantifier is a full enumeration, so sizes are capped.

use std::collections::HashMap;

use crate::agraph::{AssertionGraph, EdgeId, SeqGraph, Shape};
use crate::error::CheckError;
use crate::lattice::Quad;
use crate::netlist::{GateKind, Netlist, NodeId, NodeKind, State};
use crate::ste::{Sequence, SteSemantics};
use crate::tel::{Prop, Tel, Valuation};

/// Default bound on `nodes * (depth + 1)` for trajectory enumeration and on
/// `edges * nodes` for fixpoint enumeration.
pub const DEFAULT_SLOT_CAP: usize = 12;

const VALUES: [Quad; 4] = [Quad::Zero, Quad::One, Quad::X, Quad::Top];

fn allows(v: Quad) -> [bool; 2] {
    match v {
        Quad::Zero => [true, false],
        Quad::One => [false, true],
        Quad::X => [true, true],
        Quad::Top => [false, false],
    }
}

fn from_allowed(set: [bool; 2]) -> Quad {
    *VALUES.iter().find(|v| allows(**v) == set).unwrap()
}

pub fn leq(a: Quad, b: Quad) -> bool {
    let (a, b) = (allows(a), allows(b));
    (0..2).all(|i| !b[i] || a[i])
}

/// Least value above both, found by search over the order.
pub fn lub(a: Quad, b: Quad) -> Quad {
    let above: Vec<Quad> = VALUES.into_iter().filter(|c| leq(a, *c) && leq(b, *c)).collect();
    *above.iter().find(|c| above.iter().all(|d| leq(**c, *d))).unwrap()
}

/// Greatest value below both, found by search over the order.
pub fn glb(a: Quad, b: Quad) -> Quad {
    let below: Vec<Quad> = VALUES.into_iter().filter(|c| leq(*c, a) && leq(*c, b)).collect();
    *below.iter().find(|c| below.iter().all(|d| leq(*d, **c))).unwrap()
}

fn image(a: Quad, b: Quad, op: impl Fn(bool, bool) -> bool) -> Quad {
    let (a, b) = (allows(a), allows(b));
    let mut out = [false; 2];
    for x in 0..2 {
        for y in 0..2 {
            if a[x] && b[y] {
                out[op(x == 1, y == 1) as usize] = true;
            }
        }
    }
    from_allowed(out)
}

fn negate(a: Quad) -> Quad {
    let [z, o] = allows(a);
    from_allowed([o, z])
}

fn gate(kind: GateKind, a: Quad, b: Quad) -> Quad {
    match kind {
        GateKind::And => image(a, b, |x, y| x && y),
        GateKind::Or => image(a, b, |x, y| x || y),
    }
}

fn state_leq(a: &State, b: &State) -> bool {
    a.values().iter().zip(b.values()).all(|(x, y)| leq(*x, *y))
}

fn state_join(a: &State, b: &State) -> State {
    State::new(a.values().iter().zip(b.values()).map(|(x, y)| lub(*x, *y)).collect())
}

fn state_meet(a: &State, b: &State) -> State {
    State::new(a.values().iter().zip(b.values()).map(|(x, y)| glb(*x, *y)).collect())
}

/// The induced closure by chaotic iteration: raise any gate output below
/// what its inputs force until nothing changes. Gates are visited in
/// reverse order so that no topological sorting is relied upon.
pub fn closure(net: &Netlist, s: &State) -> State {
    let mut cur = s.clone();
    loop {
        let mut changed = false;
        for g in net.gates().iter().rev() {
            let read = |l: crate::netlist::Lit| {
                let v = cur[l.node];
                if l.negated {
                    negate(v)
                } else {
                    v
                }
            };
            let forced = gate(g.kind, read(g.lhs), read(g.rhs));
            let raised = lub(cur[g.out], forced);
            if raised != cur[g.out] {
                cur[g.out] = raised;
                changed = true;
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// Register outputs take their input's value; everything else is unknown.
pub fn nextf(net: &Netlist, s: &State) -> State {
    State::new(
        net.nodes()
            .map(|n| match net.kind(n) {
                NodeKind::Register { input } => s[input],
                _ => Quad::X,
            })
            .collect(),
    )
}

/// All states over the given alphabet, first node most significant.
pub fn all_states(nodes: usize, alphabet: &[Quad]) -> Vec<State> {
    let mut out = vec![Vec::with_capacity(nodes)];
    for _ in 0..nodes {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Quad>| {
                alphabet.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(State::new).collect()
}

fn alphabet(three_valued: bool) -> &'static [Quad] {
    if three_valued {
        &VALUES[..3]
    } else {
        &VALUES
    }
}

/// The closure function for sequences, for re-checking enumerated
/// trajectories.
pub fn f_seq(net: &Netlist, sigma: &Sequence) -> Sequence {
    let mut out: Vec<State> = Vec::new();
    for t in 0..=sigma.depth() {
        let s = match out.last() {
            None => closure(net, &sigma[t]),
            Some(prev) => closure(net, &state_join(&sigma[t], &nextf(net, prev))),
        };
        out.push(s);
    }
    Sequence::new(out)
}

fn check_cap(needed: usize, cap: usize) -> Result<(), CheckError> {
    if needed > cap {
        Err(CheckError::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// Every trajectory of depth `depth`, over `{0,1,X}` when `three_valued`.
/// A sequence is kept when each state is closed and contains what the
/// registers carry over from the previous state.
pub fn enum_trajectories(
    net: &Netlist,
    depth: usize,
    three_valued: bool,
    cap: usize,
) -> Result<Vec<Sequence>, CheckError> {
    check_cap(net.len() * (depth + 1), cap)?;
    let states = all_states(net.len(), alphabet(three_valued));
    let mut prefixes: Vec<Vec<State>> = states
        .iter()
        .filter(|s| closure(net, s) == **s)
        .map(|s| vec![s.clone()])
        .collect();
    let mut successors: HashMap<State, Vec<State>> = HashMap::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in prefixes {
            let carried = nextf(net, p.last().unwrap());
            let succ = successors.entry(carried).or_insert_with_key(|carried| {
                states
                    .iter()
                    .filter(|s| closure(net, &state_join(s, carried)) == **s)
                    .cloned()
                    .collect()
            });
            for s in succ.iter() {
                let mut q = p.clone();
                q.push(s.clone());
                next.push(q);
            }
        }
        prefixes = next;
    }
    Ok(prefixes.into_iter().map(Sequence::new).collect())
}

fn prop(p: &Prop, phi: &Valuation) -> bool {
    match p {
        Prop::Const(b) => *b,
        Prop::Var(v) => phi.get(v).expect("constant without a value"),
        Prop::Not(q) => !prop(q, phi),
        Prop::And(a, b) => prop(a, phi) && prop(b, phi),
        Prop::Or(a, b) => prop(a, phi) || prop(b, phi),
    }
}

/// `phi, sigma, t |= f` read off the definition. A symbolic atom `n = P`
/// stands for `(!P -> n is 0) & (P -> n is 1)`.
pub fn sat(net: &Netlist, phi: &Valuation, sigma: &Sequence, t: usize, f: &Tel) -> bool {
    let is = |node: &str, b: bool| {
        let n: NodeId = net.node(node).expect("formula node missing from netlist");
        leq(Quad::from_bool(b), sigma[t][n])
    };
    match f {
        Tel::Is(n, p) => (prop(p, phi) || is(n, false)) && (!prop(p, phi) || is(n, true)),
        Tel::And(fs) => fs.iter().all(|g| sat(net, phi, sigma, t, g)),
        Tel::Guard(p, g) => !prop(p, phi) || sat(net, phi, sigma, t, g),
        Tel::Next(g) => sat(net, phi, sigma, t + 1, g),
    }
}

/// Trajectory sets of one circuit, enumerated on first use per depth.
pub struct Trajectories<'a> {
    net: &'a Netlist,
    cap: usize,
    four: Vec<Option<Vec<Sequence>>>,
    three: Vec<Option<Vec<Sequence>>>,
}

impl<'a> Trajectories<'a> {
    pub fn new(net: &'a Netlist, cap: usize) -> Self {
        Trajectories {
            net,
            cap,
            four: Vec::new(),
            three: Vec::new(),
        }
    }

    pub fn get(&mut self, depth: usize, three_valued: bool) -> Result<&[Sequence], CheckError> {
        let table = if three_valued { &mut self.three } else { &mut self.four };
        if table.len() <= depth {
            table.resize(depth + 1, None);
        }
        if table[depth].is_none() {
            table[depth] = Some(enum_trajectories(self.net, depth, three_valued, self.cap)?);
        }
        Ok(table[depth].as_deref().unwrap())
    }
}

/// `phi |= A => C` under `semantics`, quantifying over enumerated
/// trajectories of depth `max(depth A, depth C)`.
pub fn check_ste(
    trajs: &mut Trajectories<'_>,
    ant: &Tel,
    cons: &Tel,
    phi: &Valuation,
    semantics: SteSemantics,
) -> Result<bool, CheckError> {
    let net = trajs.net;
    let depth = ant.depth().max(cons.depth());
    let implies = |tau: &Sequence| !sat(net, phi, tau, 0, ant) || sat(net, phi, tau, 0, cons);
    Ok(match semantics {
        SteSemantics::Normal => trajs.get(depth, true)?.iter().all(implies),
        SteSemantics::Simple => trajs.get(depth, false)?.iter().all(implies),
        SteSemantics::Cautious => {
            trajs.get(depth, false)?.iter().all(implies)
                && trajs.get(depth, true)?.iter().any(|tau| sat(net, phi, tau, 0, ant))
        }
    })
}

/// The least state satisfying a next-free formula, as the meet of every
/// satisfying state.
pub fn weakest_state(net: &Netlist, phi: &Valuation, f: &Tel) -> State {
    all_states(net.len(), &VALUES)
        .into_iter()
        .filter(|s| sat(net, phi, &Sequence::new(vec![s.clone()]), 0, f))
        .reduce(|a, b| state_meet(&a, &b))
        .expect("the all-T state satisfies every formula")
}

fn starts_at_init(shape: &Shape, e: EdgeId) -> bool {
    shape.edge(e).src == shape.init()
}

/// One step of the sequence-graph operator, with predecessor sets read off
/// the edge list.
pub fn fsg_step(net: &Netlist, shape: &Shape, sigma: &SeqGraph, delta: &SeqGraph) -> SeqGraph {
    SeqGraph::new(
        shape
            .edge_ids()
            .map(|e| {
                if starts_at_init(shape, e) {
                    return closure(net, &sigma[e]);
                }
                let src = shape.edge(e).src;
                let carried = shape
                    .edge_ids()
                    .filter(|i| shape.edge(*i).dst == src)
                    .map(|i| nextf(net, &delta[i]))
                    .reduce(|a, b| state_meet(&a, &b))
                    .unwrap();
                closure(net, &state_join(&sigma[e], &carried))
            })
            .collect(),
    )
}

/// Every sequence graph `delta` of the given shape with
/// `fsg_step(sigma, delta) = delta`.
pub fn enum_fixpoints(net: &Netlist, shape: &Shape, sigma: &SeqGraph, cap: usize) -> Result<Vec<SeqGraph>, CheckError> {
    let slots = shape.num_edges() * net.len();
    check_cap(slots, cap)?;
    let edge_states = all_states(net.len(), &VALUES);
    let mut out = Vec::new();
    let mut idx = vec![0usize; shape.num_edges()];
    loop {
        let delta = SeqGraph::new(idx.iter().map(|i| edge_states[*i].clone()).collect());
        if fsg_step(net, shape, sigma, &delta) == delta {
            out.push(delta);
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < edge_states.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The element above every other one, if there is one.
pub fn greatest(graphs: &[SeqGraph]) -> Option<&SeqGraph> {
    graphs.iter().find(|g| {
        graphs
            .iter()
            .all(|h| h.states().iter().zip(g.states()).all(|(a, b)| state_leq(a, b)))
    })
}

/// Initial paths of depth at most `bound` as edge lists, grown edge by
/// edge from the raw adjacency.
fn paths(shape: &Shape, bound: usize) -> Vec<Vec<EdgeId>> {
    let mut layer: Vec<Vec<EdgeId>> = shape
        .edge_ids()
        .filter(|e| starts_at_init(shape, *e))
        .map(|e| vec![e])
        .collect();
    let mut out = layer.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &layer {
            let end = shape.edge(*p.last().unwrap()).dst;
            for e in shape.edge_ids().filter(|e| shape.edge(*e).src == end) {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Whether every finite initial path of depth at most `bound`, read as an
/// STE assertion, holds in the simple semantics for every valuation.
pub fn forall_semantics_check(net: &Netlist, g: &AssertionGraph, bound: usize, cap: usize) -> Result<bool, CheckError> {
    let mut trajs = Trajectories::new(net, cap);
    let valuations = Valuation::enumerate(&g.consts);
    for path in paths(&g.shape, bound) {
        let all = |tau: &Sequence, phi: &Valuation, cons: bool| {
            path.iter().enumerate().all(|(t, e)| {
                let label = if cons { g.cons(*e) } else { g.ant(*e) };
                sat(net, phi, tau, t, label.tel())
            })
        };
        let taus = trajs.get(path.len() - 1, false)?;
        for phi in &valuations {
            if taus.iter().any(|tau| all(tau, phi, false) && !all(tau, phi, true)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
