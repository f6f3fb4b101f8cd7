//! Trajectory evaluation logic: propositional guards over symbolic
//! constants, TEL formulas with the next-time operator, valuations,
//! satisfaction and defining states.
//!
//! An atom `n = b` is satisfied by any value at least as informative as `b`,
//! so an over-constrained node (`T`) satisfies both `n = 0` and `n = 1`.

use std::fmt;

use indexmap::IndexMap;
use serde::{Serialize, Serializer};

use crate::diag::{Code, ParseError};
use crate::lattice::Quad;
use crate::netlist::{Netlist, State};
use crate::ste::Sequence;

/// Boolean formula over symbolic constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop {
    Const(bool),
    Var(String),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn var(name: impl Into<String>) -> Prop {
        Prop::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Prop) -> Prop {
        Prop::Not(Box::new(p))
    }

    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Or(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, phi: &Valuation) -> bool {
        match self {
            Prop::Const(b) => *b,
            Prop::Var(v) => phi.get(v).unwrap_or_else(|| panic!("valuation does not assign `{v}`")),
            Prop::Not(p) => !p.eval(phi),
            Prop::And(a, b) => a.eval(phi) && b.eval(phi),
            Prop::Or(a, b) => a.eval(phi) || b.eval(phi),
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Prop::Const(_) => {}
            Prop::Var(v) => out.push(v),
            Prop::Not(p) => p.collect_vars(out),
            Prop::And(a, b) | Prop::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Prop::Or(..) => 1,
            Prop::And(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Prop::Const(true) => write!(f, "true"),
            Prop::Const(false) => write!(f, "false"),
            Prop::Var(v) => write!(f, "{v}"),
            Prop::Not(p) => {
                write!(f, "!")?;
                p.fmt_at(f, 3)
            }
            Prop::And(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " & ")?;
                b.fmt_at(f, 3)
            }
            Prop::Or(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " | ")?;
                b.fmt_at(f, 2)
            }
        }
    }
}

/// Evaluates a guard under a valuation.
pub fn eval_prop(phi: &Valuation, p: &Prop) -> bool {
    p.eval(phi)
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// A TEL formula. `Is(n, P)` stands for `(!P -> n is 0) & (P -> n is 1)`;
/// with a constant `P` it is the plain atom `n is b`. `And(vec![])` is `true`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tel {
    Is(String, Prop),
    And(Vec<Tel>),
    Guard(Prop, Box<Tel>),
    Next(Box<Tel>),
}

impl Tel {
    pub fn truth() -> Tel {
        Tel::And(Vec::new())
    }

    pub fn is(node: impl Into<String>, value: bool) -> Tel {
        Tel::Is(node.into(), Prop::Const(value))
    }

    pub fn is_prop(node: impl Into<String>, value: Prop) -> Tel {
        Tel::Is(node.into(), value)
    }

    pub fn guard(p: Prop, f: Tel) -> Tel {
        Tel::Guard(p, Box::new(f))
    }

    pub fn next(f: Tel) -> Tel {
        Tel::Next(Box::new(f))
    }

    /// `N^t f`.
    pub fn next_n(t: usize, f: Tel) -> Tel {
        (0..t).fold(f, |acc, _| Tel::next(acc))
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, Tel::And(v) if v.is_empty())
    }

    /// Maximal nesting of `N`.
    pub fn depth(&self) -> usize {
        match self {
            Tel::Is(..) => 0,
            Tel::And(fs) => fs.iter().map(Tel::depth).max().unwrap_or(0),
            Tel::Guard(_, f) => f.depth(),
            Tel::Next(f) => 1 + f.depth(),
        }
    }

    /// Node names mentioned by atoms, in order of appearance.
    pub fn nodes(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Tel::Is(n, _) = t {
                out.push(n.as_str());
            }
        });
        out
    }

    /// Symbolic constants mentioned anywhere in the formula.
    pub fn consts(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |t| match t {
            Tel::Is(_, p) | Tel::Guard(p, _) => p.collect_vars(&mut out),
            _ => {}
        });
        out
    }

    fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Tel)) {
        visit(self);
        match self {
            Tel::Is(..) => {}
            Tel::And(fs) => fs.iter().for_each(|f| f.walk(visit)),
            Tel::Guard(_, f) | Tel::Next(f) => f.walk(visit),
        }
    }

    /// Replaces every symbolic atom `n = P` by `(!P -> n = 0) & (P -> n = 1)`.
    pub fn expand(&self) -> Tel {
        match self {
            Tel::Is(n, Prop::Const(b)) => Tel::is(n.clone(), *b),
            Tel::Is(n, p) => Tel::And(vec![
                Tel::guard(Prop::not(p.clone()), Tel::is(n.clone(), false)),
                Tel::guard(p.clone(), Tel::is(n.clone(), true)),
            ]),
            Tel::And(fs) => Tel::And(fs.iter().map(Tel::expand).collect()),
            Tel::Guard(p, f) => Tel::guard(p.clone(), f.expand()),
            Tel::Next(f) => Tel::next(f.expand()),
        }
    }

    /// Drops `true` conjuncts and flattens nested conjunctions. Semantics are
    /// unchanged; the depth may shrink.
    pub fn simplified(&self) -> Tel {
        match self {
            Tel::Is(..) => self.clone(),
            Tel::And(fs) => {
                let mut out = Vec::new();
                for f in fs.iter().map(Tel::simplified) {
                    match f {
                        Tel::And(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                if out.len() == 1 {
                    out.pop().unwrap()
                } else {
                    Tel::And(out)
                }
            }
            Tel::Guard(p, f) => match f.simplified() {
                t if t.is_truth() => Tel::truth(),
                t => Tel::guard(p.clone(), t),
            },
            Tel::Next(f) => match f.simplified() {
                t if t.is_truth() => Tel::truth(),
                t => Tel::next(t),
            },
        }
    }

    /// Fails with the first node name that `net` does not define.
    pub fn check_nodes(&self, net: &Netlist) -> Result<(), UnknownNode> {
        match self.nodes().into_iter().find(|n| net.node(n).is_none()) {
            Some(n) => Err(UnknownNode(n.to_string())),
            None => Ok(()),
        }
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tel::And(fs) if fs.len() >= 2 => write!(f, "({self})"),
            Tel::And(fs) if fs.len() == 1 => fs[0].fmt_unary(f),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Tel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tel::Is(n, Prop::Const(b)) => write!(f, "{n} = {}", *b as u8),
            Tel::Is(n, p) => {
                write!(f, "{n} = ")?;
                p.fmt_at(f, 3)
            }
            Tel::And(fs) if fs.is_empty() => write!(f, "true"),
            Tel::And(fs) if fs.len() == 1 => fs[0].fmt(f),
            Tel::And(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    g.fmt_unary(f)?;
                }
                Ok(())
            }
            Tel::Guard(p, g) => {
                write!(f, "{p} -> ")?;
                g.fmt_unary(f)
            }
            Tel::Next(g) => match g.as_ref() {
                Tel::Next(_) => write!(f, "N {g}"),
                _ => write!(f, "N({g})"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("formula mentions node `{0}` which the netlist does not define")]
pub struct UnknownNode(pub String);

/// A TEL formula without next-time operators, as used on graph edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gtel(Tel);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("next-time operator is not allowed in an edge label: {0}")]
pub struct NotGtel(pub Tel);

impl Gtel {
    pub fn new(f: Tel) -> Result<Gtel, NotGtel> {
        if f.depth() == 0 {
            Ok(Gtel(f))
        } else {
            Err(NotGtel(f))
        }
    }

    pub fn truth() -> Gtel {
        Gtel(Tel::truth())
    }

    pub fn tel(&self) -> &Tel {
        &self.0
    }

    pub fn into_tel(self) -> Tel {
        self.0
    }
}

impl TryFrom<Tel> for Gtel {
    type Error = NotGtel;
    fn try_from(f: Tel) -> Result<Self, Self::Error> {
        Gtel::new(f)
    }
}

impl fmt::Display for Gtel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A total assignment of Boolean values to the declared symbolic constants,
/// kept sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Valuation(Vec<(String, bool)>);

impl Valuation {
    pub fn new<I, S>(pairs: I) -> Valuation
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        let mut v: Vec<(String, bool)> = pairs.into_iter().map(|(k, b)| (k.into(), b)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.dedup_by(|a, b| a.0 == b.0);
        Valuation(v)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0
            .binary_search_by(|(k, _)| k.as_str().cmp(name))
            .ok()
            .map(|i| self.0[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, b)| (k.as_str(), *b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^n` valuations of `consts` in lexicographic order: constants
    /// sorted by name, the first constant most significant, `0 < 1`.
    pub fn enumerate(consts: &[String]) -> Vec<Valuation> {
        let mut names: Vec<String> = consts.to_vec();
        names.sort();
        names.dedup();
        let n = names.len();
        assert!(n < usize::BITS as usize, "too many constants to enumerate");
        (0..1usize << n)
            .map(|bits| {
                Valuation(
                    names
                        .iter()
                        .enumerate()
                        .map(|(k, name)| (name.clone(), bits >> (n - 1 - k) & 1 == 1))
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(no constants)");
        }
        for (i, (k, b)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}={}", *b as u8)?;
        }
        Ok(())
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: IndexMap<&str, u8> = self.0.iter().map(|(k, b)| (k.as_str(), *b as u8)).collect();
        map.serialize(serializer)
    }
}

fn lookup(net: &Netlist, name: &str) -> crate::netlist::NodeId {
    net.node(name)
        .unwrap_or_else(|| panic!("formula node `{name}` is not in the netlist"))
}

fn atom_holds(phi: &Valuation, s: &State, net: &Netlist, node: &str, value: &Prop) -> bool {
    Quad::from_bool(value.eval(phi)).leq(s[lookup(net, node)])
}

/// `phi, s |= g` for an edge label. Node names must exist in `net`.
pub fn sat_state(net: &Netlist, phi: &Valuation, s: &State, g: &Gtel) -> bool {
    fn go(net: &Netlist, phi: &Valuation, s: &State, f: &Tel) -> bool {
        match f {
            Tel::Is(n, p) => atom_holds(phi, s, net, n, p),
            Tel::And(fs) => fs.iter().all(|g| go(net, phi, s, g)),
            Tel::Guard(p, g) => !p.eval(phi) || go(net, phi, s, g),
            Tel::Next(_) => unreachable!("edge labels are next-free"),
        }
    }
    go(net, phi, s, g.tel())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("formula of depth {formula} cannot be evaluated on a sequence of depth {sequence}")]
pub struct DepthMismatch {
    pub formula: usize,
    pub sequence: usize,
}

/// `phi, sigma |= f`. The sequence must be at least as deep as the formula.
pub fn sat_seq(net: &Netlist, phi: &Valuation, sigma: &Sequence, f: &Tel) -> Result<bool, DepthMismatch> {
    fn go(net: &Netlist, phi: &Valuation, sigma: &Sequence, t: usize, f: &Tel) -> bool {
        match f {
            Tel::Is(n, p) => atom_holds(phi, &sigma[t], net, n, p),
            Tel::And(fs) => fs.iter().all(|g| go(net, phi, sigma, t, g)),
            Tel::Guard(p, g) => !p.eval(phi) || go(net, phi, sigma, t, g),
            Tel::Next(g) => go(net, phi, sigma, t + 1, g),
        }
    }
    if f.depth() > sigma.depth() {
        return Err(DepthMismatch {
            formula: f.depth(),
            sequence: sigma.depth(),
        });
    }
    Ok(go(net, phi, sigma, 0, f))
}

/// Joins the defining value of every active atom into `slots`, one state per
/// time step starting at `t`.
pub(crate) fn define_into(net: &Netlist, phi: &Valuation, f: &Tel, t: usize, slots: &mut [State]) {
    match f {
        Tel::Is(n, p) => {
            let id = lookup(net, n);
            let slot = &mut slots[t][id];
            *slot = slot.lub(Quad::from_bool(p.eval(phi)));
        }
        Tel::And(fs) => fs.iter().for_each(|g| define_into(net, phi, g, t, slots)),
        Tel::Guard(p, g) => {
            if p.eval(phi) {
                define_into(net, phi, g, t, slots)
            }
        }
        Tel::Next(g) => define_into(net, phi, g, t + 1, slots),
    }
}

/// The weakest state satisfying `g` under `phi`.
pub fn defining_state(net: &Netlist, phi: &Valuation, g: &Gtel) -> State {
    let mut slot = [State::unknown(net.len())];
    define_into(net, phi, g.tel(), 0, &mut slot);
    let [s] = slot;
    s
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    Arrow,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Zero => write!(f, "`0`"),
            Tok::One => write!(f, "`1`"),
            Tok::Bang => write!(f, "`!`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Eq => write!(f, "`=`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Tok::Bang,
            '&' | '∧' => Tok::Amp,
            '|' | '∨' => Tok::Pipe,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '0' if !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) => Tok::Zero,
            '1' if !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) => Tok::One,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                while i + 1 < chars.len() && chars[i + 1] == '\'' {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError::new(
                    Code::Syntax,
                    1,
                    col,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    consts: &'a [String],
    allow_next: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &str, consts: &'a [String], allow_next: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end_col: text.chars().count() + 1,
            consts,
            allow_next,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(Code::Syntax, 1, self.col(), msg)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {t}")),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of formula")),
        }
    }

    // prop := and ('|' and)* ; and := unary ('&' unary)*
    // Constants are recorded with their columns and checked by the caller.
    fn prop_or(&mut self, vars: &mut Vec<(usize, String)>) -> Result<Prop, ParseError> {
        let mut p = self.prop_and(vars)?;
        while self.eat(&Tok::Pipe) {
            p = Prop::or(p, self.prop_and(vars)?);
        }
        Ok(p)
    }

    fn prop_and(&mut self, vars: &mut Vec<(usize, String)>) -> Result<Prop, ParseError> {
        let mut p = self.prop_unary(vars)?;
        while self.eat(&Tok::Amp) {
            p = Prop::and(p, self.prop_unary(vars)?);
        }
        Ok(p)
    }

    fn prop_unary(&mut self, vars: &mut Vec<(usize, String)>) -> Result<Prop, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Prop::not(self.prop_unary(vars)?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.prop_or(vars)?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Prop::Const(false))
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Prop::Const(true))
            }
            Some(Tok::Ident(s)) if s == "true" || s == "false" => {
                self.pos += 1;
                Ok(Prop::Const(s == "true"))
            }
            Some(Tok::Ident(s)) if s != "N" => {
                self.pos += 1;
                vars.push((col, s.clone()));
                Ok(Prop::Var(s))
            }
            _ => Err(self.unexpected("a symbolic constant")),
        }
    }

    fn check_consts(&self, vars: &[(usize, String)]) -> Result<(), ParseError> {
        for (col, v) in vars {
            if !self.consts.iter().any(|c| c == v) {
                return Err(ParseError::new(
                    Code::UnknownConstant,
                    1,
                    *col,
                    format!("`{v}` is not a declared symbolic constant"),
                ));
            }
        }
        Ok(())
    }

    fn prop(&mut self) -> Result<Prop, ParseError> {
        let mut vars = Vec::new();
        let p = self.prop_or(&mut vars)?;
        self.check_consts(&vars)?;
        Ok(p)
    }

    // tel := unary ('&' unary)*
    fn tel(&mut self) -> Result<Tel, ParseError> {
        let first = self.tel_unary()?;
        if self.peek() != Some(&Tok::Amp) {
            return Ok(first);
        }
        let mut fs = vec![first];
        while self.eat(&Tok::Amp) {
            fs.push(self.tel_unary()?);
        }
        Ok(Tel::And(fs))
    }

    fn tel_unary(&mut self) -> Result<Tel, ParseError> {
        if let Some(Tok::Ident(s)) = self.peek() {
            if s == "N" {
                if !self.allow_next {
                    return Err(ParseError::new(
                        Code::NextInGtel,
                        1,
                        self.col(),
                        "next-time operator `N` is not allowed in an edge label",
                    ));
                }
                self.pos += 1;
                return Ok(Tel::next(self.tel_unary()?));
            }
        }

        // Guard: a proposition followed by `->`.
        let save = self.pos;
        let mut vars = Vec::new();
        if self.prop_or(&mut vars).is_ok() && self.eat(&Tok::Arrow) {
            self.pos = save;
            let guard = self.prop()?;
            self.expect(Tok::Arrow)?;
            return Ok(Tel::guard(guard, self.tel_unary()?));
        }
        self.pos = save;

        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.tel()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Tel::truth())
            }
            Some(Tok::Ident(s)) if s != "false" => {
                self.pos += 1;
                self.expect(Tok::Eq)?;
                let value = match self.peek() {
                    Some(Tok::Zero) => {
                        self.pos += 1;
                        Prop::Const(false)
                    }
                    Some(Tok::One) => {
                        self.pos += 1;
                        Prop::Const(true)
                    }
                    _ => {
                        let mut vars = Vec::new();
                        let p = self.prop_unary(&mut vars)?;
                        self.check_consts(&vars)?;
                        p
                    }
                };
                Ok(Tel::Is(s, value))
            }
            _ => Err(self.unexpected("an atom `node = value`, `N`, `true`, a guard or `(`")),
        }
    }
}

/// Parses a guard proposition over the declared constants `consts`.
pub fn parse_prop(text: &str, consts: &[String]) -> Result<Prop, ParseError> {
    let mut p = Parser::new(text, consts, false)?;
    let prop = p.prop()?;
    p.finish()?;
    Ok(prop)
}

/// Parses a TEL formula. Diagnostics are reported on line 1; callers that
/// embed formulas in files shift them with the formula's position.
pub fn parse_tel(text: &str, consts: &[String]) -> Result<Tel, ParseError> {
    let mut p = Parser::new(text, consts, true)?;
    let f = p.tel()?;
    p.finish()?;
    Ok(f)
}

/// Parses an edge label; the next-time operator is rejected.
pub fn parse_gtel(text: &str, consts: &[String]) -> Result<Gtel, ParseError> {
    let mut p = Parser::new(text, consts, false)?;
    let f = p.tel()?;
    p.finish()?;
    Ok(Gtel(f))
}
