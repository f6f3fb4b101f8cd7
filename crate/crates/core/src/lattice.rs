//! The four-valued information lattice `{0, 1, X, T}`.
//!
//! `X` carries no information, `T` is over-constrained. The order is
//! `X <= 0 <= T` and `X <= 1 <= T`, with `0` and `1` incomparable. Every
//! operator is a constant table indexed by [`Quad::index`], so each table can
//! be audited cell by cell.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One element of the four-valued lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quad {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "X")]
    X,
    #[serde(rename = "T")]
    Top,
}

use Quad::{One as I, Top as T, Zero as O, X};

// Row/column order of every table: 0, 1, X, T.
const LEQ: [[bool; 4]; 4] = [
    //  0      1      X      T
    [true, false, false, true],  // 0
    [false, true, false, true],  // 1
    [true, true, true, true],    // X
    [false, false, false, true], // T
];

const LUB: [[Quad; 4]; 4] = [[O, T, O, T], [T, I, I, T], [O, I, X, T], [T, T, T, T]];

const GLB: [[Quad; 4]; 4] = [[O, X, X, O], [X, I, X, I], [X, X, X, X], [O, I, X, T]];

const AND: [[Quad; 4]; 4] = [[O, O, O, T], [O, I, X, T], [O, X, X, T], [T, T, T, T]];

const OR: [[Quad; 4]; 4] = [[O, I, X, T], [I, I, I, T], [X, I, X, T], [T, T, T, T]];

const NOT: [Quad; 4] = [I, O, X, T];

impl Quad {
    pub const ALL: [Quad; 4] = [O, I, X, T];
    /// The three values that can appear in a three-valued state.
    pub const THREE_VALUED: [Quad; 3] = [O, I, X];

    #[inline]
    pub const fn index(self) -> usize {
        match self {
            O => 0,
            I => 1,
            X => 2,
            T => 3,
        }
    }

    #[inline]
    pub const fn from_bool(b: bool) -> Quad {
        if b {
            I
        } else {
            O
        }
    }

    /// Information order: `self` is weaker than or equal to `other`.
    #[inline]
    pub fn leq(self, other: Quad) -> bool {
        LEQ[self.index()][other.index()]
    }

    #[inline]
    pub fn lub(self, other: Quad) -> Quad {
        LUB[self.index()][other.index()]
    }

    #[inline]
    pub fn glb(self, other: Quad) -> Quad {
        GLB[self.index()][other.index()]
    }

    #[inline]
    pub fn and4(self, other: Quad) -> Quad {
        AND[self.index()][other.index()]
    }

    #[inline]
    pub fn or4(self, other: Quad) -> Quad {
        OR[self.index()][other.index()]
    }

    #[inline]
    pub fn not4(self) -> Quad {
        NOT[self.index()]
    }

    /// Negates when `negate` is set; used for inverted gate inputs.
    #[inline]
    pub fn not_if(self, negate: bool) -> Quad {
        if negate {
            self.not4()
        } else {
            self
        }
    }

    pub fn is_boolean(self) -> bool {
        matches!(self, O | I)
    }

    pub fn as_char(self) -> char {
        match self {
            O => '0',
            I => '1',
            X => 'X',
            T => 'T',
        }
    }

    pub fn from_char(c: char) -> Option<Quad> {
        match c {
            '0' => Some(O),
            '1' => Some(I),
            'X' | 'x' => Some(X),
            'T' | '⊤' => Some(T),
            _ => None,
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Pointwise information order shared by states, sequences and sequence
/// graphs. Both operands must have the same shape; mixing shapes panics.
pub trait InfoOrder: Sized {
    fn leq(&self, other: &Self) -> bool;
    fn lub(&self, other: &Self) -> Self;
    fn glb(&self, other: &Self) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid lattice value {0:?} (expected one of 0, 1, X, T)")]
pub struct InvalidQuad(pub String);

impl FromStr for Quad {
    type Err = InvalidQuad;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next().and_then(Quad::from_char), chars.next()) {
            (Some(q), None) => Ok(q),
            _ => Err(InvalidQuad(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert!(X.leq(I));
        assert!(X.leq(O));
        assert!(!O.leq(I));
        assert!(!I.leq(O));
        assert!(O.leq(T) && I.leq(T));
        for a in Quad::ALL {
            assert!(a.leq(a));
        }
    }

    #[test]
    fn order_is_partial_order() {
        for a in Quad::ALL {
            for b in Quad::ALL {
                if a.leq(b) && b.leq(a) {
                    assert_eq!(a, b);
                }
                for c in Quad::ALL {
                    if a.leq(b) && b.leq(c) {
                        assert!(a.leq(c));
                    }
                }
            }
        }
    }

    #[test]
    fn lub_glb_examples() {
        assert_eq!(O.lub(I), T);
        assert_eq!(O.glb(I), X);
        for v in Quad::ALL {
            assert_eq!(X.lub(v), v);
            assert_eq!(T.glb(v), v);
        }
    }

    // Least upper bound / greatest lower bound recomputed from the order alone.
    fn lub_from_order(a: Quad, b: Quad) -> Quad {
        let uppers: Vec<Quad> = Quad::ALL.into_iter().filter(|v| a.leq(*v) && b.leq(*v)).collect();
        let least: Vec<Quad> = uppers
            .iter()
            .copied()
            .filter(|u| uppers.iter().all(|w| u.leq(*w)))
            .collect();
        assert_eq!(least.len(), 1);
        least[0]
    }

    fn glb_from_order(a: Quad, b: Quad) -> Quad {
        let lowers: Vec<Quad> = Quad::ALL.into_iter().filter(|v| v.leq(a) && v.leq(b)).collect();
        let greatest: Vec<Quad> = lowers
            .iter()
            .copied()
            .filter(|l| lowers.iter().all(|w| w.leq(*l)))
            .collect();
        assert_eq!(greatest.len(), 1);
        greatest[0]
    }

    #[test]
    fn lub_glb_are_order_bounds() {
        for a in Quad::ALL {
            for b in Quad::ALL {
                assert_eq!(a.lub(b), lub_from_order(a, b), "lub {a} {b}");
                assert_eq!(a.glb(b), glb_from_order(a, b), "glb {a} {b}");
            }
        }
    }

    #[test]
    fn logic_examples() {
        assert_eq!(I.and4(X), X);
        assert_eq!(O.and4(T), T);
        assert_eq!(X.or4(I), I);
        assert_eq!(X.not4(), X);
        assert_eq!(T.not4(), T);
    }

    #[test]
    fn logic_agrees_with_boolean() {
        for a in [false, true] {
            assert_eq!(Quad::from_bool(a).not4(), Quad::from_bool(!a));
            for b in [false, true] {
                let (qa, qb) = (Quad::from_bool(a), Quad::from_bool(b));
                assert_eq!(qa.and4(qb), Quad::from_bool(a && b));
                assert_eq!(qa.or4(qb), Quad::from_bool(a || b));
            }
        }
    }

    #[test]
    fn operators_are_monotone() {
        for a in Quad::ALL {
            for a2 in Quad::ALL.into_iter().filter(|v| a.leq(*v)) {
                assert!(a.not4().leq(a2.not4()));
                for b in Quad::ALL {
                    for b2 in Quad::ALL.into_iter().filter(|v| b.leq(*v)) {
                        assert!(a.and4(b).leq(a2.and4(b2)));
                        assert!(a.or4(b).leq(a2.or4(b2)));
                        assert!(a.lub(b).leq(a2.lub(b2)));
                        assert!(a.glb(b).leq(a2.glb(b2)));
                    }
                }
            }
        }
    }

    #[test]
    fn top_absorbs_logic() {
        for v in Quad::ALL {
            assert_eq!(T.and4(v), T);
            assert_eq!(v.and4(T), T);
            assert_eq!(T.or4(v), T);
            assert_eq!(v.or4(T), T);
        }
    }

    #[test]
    fn text_rendering() {
        let rendered: String = Quad::ALL.iter().map(|q| q.as_char()).collect();
        assert_eq!(rendered, "01XT");
        for q in Quad::ALL {
            assert_eq!(q.to_string().parse::<Quad>().unwrap(), q);
        }
        assert!("2".parse::<Quad>().is_err());
        assert!("XX".parse::<Quad>().is_err());
    }
}
