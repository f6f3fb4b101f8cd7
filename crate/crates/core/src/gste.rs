//! The GSTE engine: the closure of sequence graphs as a greatest fixpoint,
//! defining trajectory graphs, and the check of an assertion graph under
//! every valuation of its symbolic constants.

use serde::Serialize;

use crate::agraph::{AssertionGraph, EdgeId, SeqGraph, Shape};
use crate::error::CheckError;
use crate::exec::Exec;
use crate::lattice::{InfoOrder, Quad};
use crate::netlist::{Netlist, State};
use crate::ste::WitnessKind;
use crate::tel::{self, Valuation};

/// One application of the sequence-graph operator for base graph `sigma`:
/// initial edges get `F(sigma(e))`, every other edge gets `sigma(e)` joined
/// with the meet of what its incoming edges carry over, then closed.
pub fn fsg_step(net: &Netlist, shape: &Shape, sigma: &SeqGraph, delta: &SeqGraph) -> SeqGraph {
    SeqGraph::new(
        shape
            .edge_ids()
            .map(|e| {
                if shape.is_initial(e) {
                    net.closure(&sigma[e])
                } else {
                    net.closure(&sigma[e].lub(&incoming(net, shape, delta, e)))
                }
            })
            .collect(),
    )
}

/// Meet over `ine(e)` of the register images of the incoming edges' states.
fn incoming(net: &Netlist, shape: &Shape, delta: &SeqGraph, e: EdgeId) -> State {
    shape
        .ine(e)
        .iter()
        .map(|i| net.nextf(&delta[*i]))
        .reduce(|a, b| a.glb(&b))
        .expect("a reachable non-initial edge has a predecessor")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub graph: SeqGraph,
    /// Operator applications, the last of which confirmed stability.
    pub iterations: usize,
}

/// Most applications a decreasing chain can take: every slot drops at most
/// twice (`T` to a Boolean to `X`), plus the confirming step.
pub fn iteration_cap(shape: &Shape, net: &Netlist) -> usize {
    2 * shape.num_edges() * net.len() + 2
}

/// The greatest fixpoint of [`fsg_step`], reached by iterating from the
/// all-`T` graph.
pub fn gfp_delta(net: &Netlist, shape: &Shape, sigma: &SeqGraph) -> Fixpoint {
    let cap = iteration_cap(shape, net);
    let mut delta = SeqGraph::filled(shape, net.len(), Quad::Top);
    for iterations in 1..=cap {
        let next = fsg_step(net, shape, sigma, &delta);
        assert!(next.leq(&delta), "fixpoint iteration must decrease");
        if next == delta {
            return Fixpoint {
                graph: next,
                iterations,
            };
        }
        delta = next;
    }
    panic!("no fixpoint after {cap} iterations");
}

/// The same fixpoint computed the other way: initial edges start closed,
/// the rest at `T`, and each step meets the old value with the new one.
pub fn gamma_iterate(net: &Netlist, shape: &Shape, sigma: &SeqGraph) -> Fixpoint {
    let cap = iteration_cap(shape, net);
    let mut gamma = SeqGraph::new(
        shape
            .edge_ids()
            .map(|e| {
                if shape.is_initial(e) {
                    net.closure(&sigma[e])
                } else {
                    State::top(net.len())
                }
            })
            .collect(),
    );
    for iterations in 1..=cap {
        let next = SeqGraph::new(
            shape
                .edge_ids()
                .map(|e| {
                    if shape.is_initial(e) {
                        gamma[e].clone()
                    } else {
                        let stepped = net.closure(&sigma[e].lub(&incoming(net, shape, &gamma, e)));
                        gamma[e].glb(&stepped)
                    }
                })
                .collect(),
        );
        if next == gamma {
            return Fixpoint {
                graph: next,
                iterations,
            };
        }
        gamma = next;
    }
    panic!("no fixpoint after {cap} iterations");
}

/// Per edge, the weakest state satisfying the antecedent label.
pub fn defining_seq_graph(net: &Netlist, phi: &Valuation, g: &AssertionGraph) -> SeqGraph {
    SeqGraph::new(
        g.shape
            .edge_ids()
            .map(|e| tel::defining_state(net, phi, g.ant(e)))
            .collect(),
    )
}

/// Per edge, the weakest state satisfying the consequent label.
pub fn defining_cons_graph(net: &Netlist, phi: &Valuation, g: &AssertionGraph) -> SeqGraph {
    SeqGraph::new(
        g.shape
            .edge_ids()
            .map(|e| tel::defining_state(net, phi, g.cons(e)))
            .collect(),
    )
}

/// The weakest trajectory graph satisfying the antecedents.
pub fn defining_traj_graph(net: &Netlist, phi: &Valuation, g: &AssertionGraph) -> Fixpoint {
    gfp_delta(net, &g.shape, &defining_seq_graph(net, phi, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GsteSemantics {
    Simple,
    Cautious,
}

#[derive(Clone, Copy, Debug)]
pub struct GsteOptions {
    pub semantics: GsteSemantics,
    /// Stop at the first refuted valuation and report one witness.
    pub fail_fast: bool,
    pub max_consts: usize,
    pub exec: Exec,
}

impl Default for GsteOptions {
    fn default() -> Self {
        GsteOptions {
            semantics: GsteSemantics::Simple,
            fail_fast: false,
            max_consts: 20,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GsteWitness {
    pub valuation: Valuation,
    pub edge: String,
    pub from: String,
    pub to: String,
    pub node: String,
    pub kind: WitnessKind,
    pub required: Quad,
    pub actual: Quad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationOutcome {
    pub valuation: Valuation,
    pub holds: bool,
    pub iterations: usize,
    #[serde(skip)]
    pub trajectory: SeqGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub satisfied: bool,
    pub semantics: GsteSemantics,
    pub valuations: Vec<ValuationOutcome>,
    pub witnesses: Vec<GsteWitness>,
}

impl Verdict {
    pub fn total_iterations(&self) -> usize {
        self.valuations.iter().map(|v| v.iterations).sum()
    }
}

fn check_valuation(
    net: &Netlist,
    g: &AssertionGraph,
    phi: &Valuation,
    semantics: GsteSemantics,
) -> (ValuationOutcome, Vec<GsteWitness>) {
    let ant = defining_seq_graph(net, phi, g);
    let cons = defining_cons_graph(net, phi, g);
    let Fixpoint { graph, iterations } = gfp_delta(net, &g.shape, &ant);
    let mut witnesses = Vec::new();
    for e in g.shape.edge_ids() {
        for (n, actual) in graph[e].iter() {
            let kind = if semantics == GsteSemantics::Cautious && actual == Quad::Top {
                (WitnessKind::Overconstrained, ant[e][n])
            } else if !cons[e][n].leq(actual) {
                (WitnessKind::Consequent, cons[e][n])
            } else {
                continue;
            };
            let edge = g.shape.edge(e);
            witnesses.push(GsteWitness {
                valuation: phi.clone(),
                edge: edge.name.clone(),
                from: g.shape.vertex_name(edge.src).to_string(),
                to: g.shape.vertex_name(edge.dst).to_string(),
                node: net.name(n).to_string(),
                kind: kind.0,
                required: kind.1,
                actual,
            });
        }
    }
    let outcome = ValuationOutcome {
        valuation: phi.clone(),
        holds: witnesses.is_empty(),
        iterations,
        trajectory: graph,
    };
    (outcome, witnesses)
}

/// Checks `g` for every valuation of its constants, in lexicographic order.
pub fn check_gste(net: &Netlist, g: &AssertionGraph, opts: &GsteOptions) -> Result<Verdict, CheckError> {
    g.check_nodes(net)?;
    if g.consts.len() > opts.max_consts {
        return Err(CheckError::TooManyConstants {
            found: g.consts.len(),
            cap: opts.max_consts,
        });
    }
    let valuations = Valuation::enumerate(&g.consts);
    let run = |phi: &Valuation| check_valuation(net, g, phi, opts.semantics);

    let mut results = Vec::with_capacity(valuations.len());
    if opts.fail_fast {
        let chunk = if opts.exec.is_parallel() { 64 } else { 1 };
        for batch in valuations.chunks(chunk) {
            let done = opts.exec.map(batch, run);
            let failed = done.iter().position(|(o, _)| !o.holds);
            match failed {
                Some(i) => {
                    let (outcome, mut ws) = done.into_iter().nth(i).unwrap();
                    ws.truncate(1);
                    results.push((outcome, ws));
                    break;
                }
                None => results.extend(done),
            }
        }
    } else {
        results = opts.exec.map(&valuations, run);
    }

    let (outcomes, witnesses): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let witnesses: Vec<GsteWitness> = witnesses.into_iter().flatten().collect();
    Ok(Verdict {
        satisfied: witnesses.is_empty(),
        semantics: opts.semantics,
        valuations: outcomes,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{enumerate_paths, seqp, VertexId};
    use crate::ste::f_seq;

    const LATCH: &str = "input nin\nor nout' nin nout\nreg nout nout'\n";

    fn latch_shape() -> Shape {
        Shape::new(
            vec!["init".into(), "v".into()],
            VertexId(0),
            vec![
                ("e0".into(), VertexId(0), VertexId(1)),
                ("e1".into(), VertexId(1), VertexId(1)),
            ],
        )
        .unwrap()
    }

    fn graph(states: &[&str]) -> SeqGraph {
        SeqGraph::new(states.iter().map(|s| s.parse().unwrap()).collect())
    }

    #[test]
    fn latch_steps() {
        let net = Netlist::parse(LATCH).unwrap();
        let shape = latch_shape();
        let sigma = graph(&["1XX", "XXX"]);
        let top = SeqGraph::filled(&shape, 3, Quad::Top);
        assert_eq!(fsg_step(&net, &shape, &sigma, &top), graph(&["11X", "XTT"]));
        let expected = graph(&["11X", "X11"]);
        assert_eq!(fsg_step(&net, &shape, &sigma, &expected), expected);
        let other = graph(&["11X", "XXX"]);
        assert_eq!(fsg_step(&net, &shape, &sigma, &other), other);

        let fix = gfp_delta(&net, &shape, &sigma);
        assert_eq!(fix.graph, expected);
        assert_eq!(fix.iterations, 3);
        assert_eq!(gamma_iterate(&net, &shape, &sigma).graph, expected);
    }

    #[test]
    fn register_free_single_edge() {
        let net = Netlist::parse("input p\ninput q\nand r p q\n").unwrap();
        let shape = Shape::new(
            vec!["i".into(), "v".into()],
            VertexId(0),
            vec![("e".into(), VertexId(0), VertexId(1))],
        )
        .unwrap();
        let sigma = graph(&["11X"]);
        assert_eq!(gfp_delta(&net, &shape, &sigma).graph, graph(&["111"]));
        let gamma = gamma_iterate(&net, &shape, &sigma);
        assert_eq!((gamma.graph, gamma.iterations), (graph(&["111"]), 1));
    }

    const MEMORY: &str = "input in\ninput set\nreg out out'\nand t1 in set\nand t2 out !set\nor out' t1 t2\n";
    const MEMORY_GRAPH: &str = "\
const a
vertex init v w
edge e0 init -> v [ in = a & set = 1 / true ]
edge e1 v -> v [ set = 0 / true ]
edge e2 v -> w [ true / out = a ]
edge e3 w -> w
";

    #[test]
    fn memory_cell_defining_graphs() {
        let net = Netlist::parse(MEMORY).unwrap();
        let g = AssertionGraph::parse(MEMORY_GRAPH).unwrap();
        let phi = Valuation::new([("a", true)]);
        let ant = defining_seq_graph(&net, &phi, &g);
        assert_eq!(ant, graph(&["11XXXX", "X0XXXX", "XXXXXX", "XXXXXX"]));
        let v = check_gste(&net, &g, &GsteOptions::default()).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.valuations.len(), 2);
        assert!(v
            .valuations
            .iter()
            .all(|o| o.iterations < iteration_cap(&g.shape, &net)));
    }

    #[test]
    fn info_loss_refuted() {
        let net = Netlist::parse("input npp\nreg np npp\nor nout np !np\n").unwrap();
        let g = AssertionGraph::parse(
            "vertex init v w\n\
             edge e0 init -> v [ npp = 1 / ]\n\
             edge e1 init -> v [ npp = 0 / ]\n\
             edge e2 v -> w [ / nout = 1 ]\n\
             edge e3 w -> w\n",
        )
        .unwrap();
        let v = check_gste(&net, &g, &GsteOptions::default()).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.witnesses.len(), 1);
        let w = &v.witnesses[0];
        assert_eq!(
            (
                w.edge.as_str(),
                w.from.as_str(),
                w.to.as_str(),
                w.node.as_str(),
                w.required,
                w.actual
            ),
            ("e2", "v", "w", "nout", Quad::One, Quad::X)
        );
        let traj = &v.valuations[0].trajectory;
        assert_eq!(traj[EdgeId(2)].to_string(), "XXX");
    }

    #[test]
    fn register_example_cautious() {
        let net = Netlist::parse("input reg'\nreg reg reg'\n").unwrap();
        let g = AssertionGraph::parse(
            "vertex init v w\n\
             edge e0 init -> v [ reg' = 1 / ]\n\
             edge e1 init -> v [ reg' = 0 / ]\n\
             edge e2 v -> w [ reg = 1 / reg = 1 ]\n",
        )
        .unwrap();
        for semantics in [GsteSemantics::Simple, GsteSemantics::Cautious] {
            let opts = GsteOptions {
                semantics,
                ..GsteOptions::default()
            };
            assert!(check_gste(&net, &g, &opts).unwrap().satisfied, "{semantics:?}");
        }
    }

    #[test]
    fn latch_simple_but_not_cautious() {
        let net = Netlist::parse(LATCH).unwrap();
        let g = AssertionGraph::parse(
            "vertex init v\nedge e0 init -> v [ nin = 1 / ]\nedge e1 v -> v [ nout = 0 / nout = 1 ]\n",
        )
        .unwrap();
        assert!(check_gste(&net, &g, &GsteOptions::default()).unwrap().satisfied);
        let cautious = GsteOptions {
            semantics: GsteSemantics::Cautious,
            ..GsteOptions::default()
        };
        let v = check_gste(&net, &g, &cautious).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.valuations[0].trajectory[EdgeId(1)].to_string(), "XTT");
        assert!(v
            .witnesses
            .iter()
            .all(|w| w.kind == WitnessKind::Overconstrained && w.edge == "e1"));
    }

    #[test]
    fn fail_fast_reports_first() {
        let net = Netlist::parse("input p\ninput q\nand r p q\n").unwrap();
        let g =
            AssertionGraph::parse("const a b\nvertex i v\nedge e i -> v [ p = a & q = b / r = 1 & p = 1 ]\n").unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let full = check_gste(
                &net,
                &g,
                &GsteOptions {
                    exec,
                    ..GsteOptions::default()
                },
            )
            .unwrap();
            assert_eq!(full.witnesses.len(), 5);
            let fast = GsteOptions {
                fail_fast: true,
                exec,
                ..GsteOptions::default()
            };
            let v = check_gste(&net, &g, &fast).unwrap();
            assert_eq!(v.witnesses.len(), 1);
            assert_eq!(v.valuations.len(), 1);
            assert_eq!(v.witnesses[0].valuation.to_string(), "a=0 b=0");
        }
    }

    #[test]
    fn constant_cap() {
        let net = Netlist::parse("input p\n").unwrap();
        let g = AssertionGraph::parse("const a b c\nvertex i v\nedge e i -> v\n").unwrap();
        let opts = GsteOptions {
            max_consts: 2,
            ..GsteOptions::default()
        };
        assert_eq!(
            check_gste(&net, &g, &opts).unwrap_err(),
            CheckError::TooManyConstants { found: 3, cap: 2 }
        );
    }

    #[test]
    fn derives_no_more_than_sequences() {
        let net = Netlist::parse(LATCH).unwrap();
        let shape = latch_shape();
        let sigma = graph(&["1XX", "X0X"]);
        let fix = gfp_delta(&net, &shape, &sigma).graph;
        for rho in enumerate_paths(&shape, 4) {
            let lhs = seqp(&shape, &fix, &rho).unwrap();
            let rhs = f_seq(&net, &seqp(&shape, &sigma, &rho).unwrap());
            assert!(lhs.leq(&rhs));
        }
    }
}
