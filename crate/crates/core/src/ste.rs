//! Finite sequences, the closure function for sequences, trajectories and
//! the three STE satisfaction relations.
//!
//! Every check goes through the weakest trajectory satisfying the
//! antecedent: `tau_A = F_seq(<A>)`. Then
//!
//! * simple:   `<C> <= tau_A`
//! * normal:   `tau_A` contains `T`, or `<C> <= tau_A`
//! * cautious: `<C> <= tau_A` and `tau_A` is free of `T`

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::Serialize;

use crate::diag::{self, Code, ParseError};
use crate::error::CheckError;
use crate::exec::Exec;
use crate::lattice::{InfoOrder, InvalidQuad, Quad};
use crate::netlist::{Netlist, NodeId, State};
use crate::tel::{self, Tel, Valuation};

/// States at times `0..=depth`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(Vec<State>);

impl Sequence {
    pub fn new(states: Vec<State>) -> Sequence {
        assert!(!states.is_empty(), "a sequence has at least one state");
        Sequence(states)
    }

    pub fn filled(nodes: usize, depth: usize, v: Quad) -> Sequence {
        Sequence(vec![State::filled(nodes, v); depth + 1])
    }

    pub fn depth(&self) -> usize {
        self.0.len() - 1
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn into_states(self) -> Vec<State> {
        self.0
    }

    pub fn is_three_valued(&self) -> bool {
        self.0.iter().all(State::is_three_valued)
    }

    /// First `(time, node)` holding `T`, scanning time-major.
    pub fn first_top(&self) -> Option<(usize, NodeId)> {
        self.0
            .iter()
            .enumerate()
            .find_map(|(t, s)| s.iter().find(|(_, v)| *v == Quad::Top).map(|(n, _)| (t, n)))
    }
}

impl Index<usize> for Sequence {
    type Output = State;
    fn index(&self, t: usize) -> &State {
        &self.0[t]
    }
}

impl InfoOrder for Sequence {
    fn leq(&self, other: &Self) -> bool {
        assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a.leq(b))
    }

    fn lub(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len());
        Sequence(self.0.iter().zip(&other.0).map(|(a, b)| a.lub(b)).collect())
    }

    fn glb(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len());
        Sequence(self.0.iter().zip(&other.0).map(|(a, b)| a.glb(b)).collect())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `[11X,X11]` or `11X,X11`.
impl FromStr for Sequence {
    type Err = InvalidQuad;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let states = body
            .split(',')
            .map(|v| v.trim().parse::<State>())
            .collect::<Result<Vec<_>, _>>()?;
        if states.is_empty() {
            return Err(InvalidQuad(s.to_string()));
        }
        Ok(Sequence(states))
    }
}

/// The closure function for sequences: closes time 0, then each later time
/// step joined with what the registers carry over from the closed previous
/// step.
pub fn f_seq(net: &Netlist, sigma: &Sequence) -> Sequence {
    let mut out: Vec<State> = Vec::with_capacity(sigma.0.len());
    for (t, s) in sigma.0.iter().enumerate() {
        let closed = if t == 0 {
            net.closure(s)
        } else {
            net.closure(&s.lub(&net.nextf(&out[t - 1])))
        };
        out.push(closed);
    }
    Sequence(out)
}

pub fn is_trajectory(net: &Netlist, sigma: &Sequence) -> bool {
    f_seq(net, sigma) == *sigma
}

/// The weakest sequence of the given depth satisfying `f` under `phi`: each
/// `N`-stratum of `f` contributes its defining state at its own time slot.
pub fn defining_sequence(net: &Netlist, phi: &Valuation, f: &Tel, depth: usize) -> Sequence {
    assert!(f.depth() <= depth, "formula is deeper than the sequence");
    let mut slots = vec![State::unknown(net.len()); depth + 1];
    tel::define_into(net, phi, f, 0, &mut slots);
    Sequence(slots)
}

/// An STE assertion `A => C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteAssertion {
    pub ant: Tel,
    pub cons: Tel,
}

impl SteAssertion {
    pub fn new(ant: Tel, cons: Tel) -> Self {
        SteAssertion { ant, cons }
    }

    pub fn depth(&self) -> usize {
        self.ant.depth().max(self.cons.depth())
    }

    pub fn check_nodes(&self, net: &Netlist) -> Result<(), CheckError> {
        self.ant.check_nodes(net)?;
        self.cons.check_nodes(net)?;
        Ok(())
    }

    pub(crate) fn check_consts(&self, consts: &[String]) -> Result<(), CheckError> {
        for c in self.ant.consts().into_iter().chain(self.cons.consts()) {
            if !consts.iter().any(|d| d == c) {
                return Err(CheckError::UndeclaredConstant(c.to_string()));
            }
        }
        Ok(())
    }

    /// The same assertion with `true` conjuncts removed, for display.
    pub fn simplified(&self) -> SteAssertion {
        SteAssertion::new(self.ant.simplified(), self.cons.simplified())
    }
}

impl fmt::Display for SteAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.ant, self.cons)
    }
}

/// Contents of an assertion file: `const` declarations followed by
/// `assert <A> => <C>` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionFile {
    pub consts: Vec<String>,
    pub assertions: Vec<SteAssertion>,
}

impl AssertionFile {
    pub fn parse(text: &str) -> Result<AssertionFile, ParseError> {
        let mut consts: Vec<String> = Vec::new();
        let mut pending: Vec<(usize, usize, String)> = Vec::new();
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
                "assert" => {
                    let body_col = toks.get(1).map_or(col + 6, |t| t.0);
                    let body: String = line.chars().skip(body_col - 1).collect();
                    let body = match body.find('#') {
                        Some(i) => body[..i].to_string(),
                        None => body,
                    };
                    pending.push((lineno, body_col, body));
                }
                other => {
                    return Err(ParseError::new(
                        Code::Syntax,
                        lineno,
                        col,
                        format!("unknown declaration `{other}` (expected const or assert)"),
                    ))
                }
            }
        }
        let mut assertions = Vec::with_capacity(pending.len());
        for (lineno, col, body) in pending {
            let body = body.as_str();
            let Some(split) = body.find("=>") else {
                return Err(ParseError::new(
                    Code::Syntax,
                    lineno,
                    col,
                    "expected `<antecedent> => <consequent>`",
                ));
            };
            let (a, c) = (&body[..split], &body[split + 2..]);
            let c_off = col - 1 + a.chars().count() + 2;
            let ant = tel::parse_tel(a, &consts).map_err(|e| e.at_offset(lineno, col - 1))?;
            let cons = tel::parse_tel(c, &consts).map_err(|e| e.at_offset(lineno, c_off))?;
            assertions.push(SteAssertion::new(ant, cons));
        }
        Ok(AssertionFile { consts, assertions })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SteSemantics {
    Normal,
    Simple,
    Cautious,
}

/// Why a check failed at one slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// The consequent asks for more than the antecedent's closure provides.
    Consequent,
    /// The antecedent's closure over-constrains a node.
    Overconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteWitness {
    pub kind: WitnessKind,
    pub time: usize,
    pub node: String,
    pub required: Quad,
    pub actual: Quad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteValuationResult {
    pub valuation: Valuation,
    pub holds: bool,
    pub witness: Option<SteWitness>,
}

/// Result of checking one assertion under every valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteVerdict {
    pub assertion: String,
    pub semantics: SteSemantics,
    pub satisfied: bool,
    pub valuations: Vec<SteValuationResult>,
}

/// Checks `A => C` for a single valuation. Formulas must only mention
/// nodes of `net` and constants assigned by `phi`.
pub fn check_ste_valuation(
    net: &Netlist,
    assertion: &SteAssertion,
    phi: &Valuation,
    semantics: SteSemantics,
) -> SteValuationResult {
    let depth = assertion.depth();
    let tau = f_seq(net, &defining_sequence(net, phi, &assertion.ant, depth));
    let required = defining_sequence(net, phi, &assertion.cons, depth);

    let shortfall = (0..=depth).find_map(|t| {
        required[t]
            .iter()
            .find(|&(n, v)| !v.leq(tau[t][n]))
            .map(|(n, v)| SteWitness {
                kind: WitnessKind::Consequent,
                time: t,
                node: net.name(n).to_string(),
                required: v,
                actual: tau[t][n],
            })
    });
    let conflict = tau.first_top().map(|(t, n)| SteWitness {
        kind: WitnessKind::Overconstrained,
        time: t,
        node: net.name(n).to_string(),
        required: defining_sequence(net, phi, &assertion.ant, depth)[t][n],
        actual: Quad::Top,
    });

    let witness = match semantics {
        SteSemantics::Simple => shortfall,
        SteSemantics::Normal => {
            if conflict.is_some() {
                None
            } else {
                shortfall
            }
        }
        SteSemantics::Cautious => conflict.or(shortfall),
    };
    SteValuationResult {
        valuation: phi.clone(),
        holds: witness.is_none(),
        witness,
    }
}

/// Checks `A => C` under every valuation of `consts`.
pub fn check_ste(
    net: &Netlist,
    assertion: &SteAssertion,
    consts: &[String],
    semantics: SteSemantics,
    exec: Exec,
) -> Result<SteVerdict, CheckError> {
    assertion.check_nodes(net)?;
    assertion.check_consts(consts)?;
    let valuations = Valuation::enumerate(consts);
    let results = exec.map(&valuations, |phi| check_ste_valuation(net, assertion, phi, semantics));
    Ok(SteVerdict {
        assertion: assertion.simplified().to_string(),
        semantics,
        satisfied: results.iter().all(|r| r.holds),
        valuations: results,
    })
}
