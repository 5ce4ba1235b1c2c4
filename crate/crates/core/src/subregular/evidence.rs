use std::fmt;

use crate::alphabet::Word;
use crate::subregular::order::{OrderedCover, StateOrder};
use crate::subregular::slt::SltRep;

/// Supporting data attached to a family verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    None,
    /// A single word on the wrong side of the property.
    Word(Word),
    /// `prefix · cycle* · suffix` stays in the language.
    Pump {
        prefix: Word,
        cycle: Word,
        suffix: Word,
    },
    /// `inside` is in the language, `outside` is not, and `outside` is
    /// obtained from `inside` by the operation the family must be closed under
    /// (transposition, rotation, suffix, shared long suffix).
    Pair {
        inside: Word,
        outside: Word,
    },
    /// The one-letter set X with L = V*X.
    Letters(Vec<char>),
    Slt(SltRep),
    Order(StateOrder),
    /// Ordered automaton given by the minimal-automaton states its states
    /// copy, least first.
    Cover(OrderedCover),
    /// Monoid element represented by `word`; its powers repeat from `index`
    /// with the given `period`.
    Power {
        word: Word,
        index: usize,
        period: usize,
    },
    Note(String),
}

impl Evidence {
    pub fn is_none(&self) -> bool {
        matches!(self, Evidence::None)
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::None => Ok(()),
            Evidence::Word(w) => write!(f, "witness={w}"),
            Evidence::Pump { prefix, cycle, suffix } => {
                write!(f, "pump={prefix}({cycle})*{suffix}")
            }
            Evidence::Pair { inside, outside } => write!(f, "in={inside};out={outside}"),
            Evidence::Letters(xs) => {
                let s: Vec<String> = xs.iter().map(|c| c.to_string()).collect();
                write!(f, "X={{{}}}", s.join(","))
            }
            Evidence::Slt(rep) => f.write_str(&rep.compact()),
            Evidence::Order(o) => write!(f, "order={o}"),
            Evidence::Cover(c) => write!(f, "cover={c}"),
            Evidence::Power { word, index, period } => {
                write!(f, "x={word};index={index};period={period}")
            }
            Evidence::Note(s) => f.write_str(s),
        }
    }
}

/// Outcome of an exact decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub evidence: Evidence,
}

impl Decision {
    pub fn yes(evidence: Evidence) -> Self {
        Self { holds: true, evidence }
    }

    pub fn no(evidence: Evidence) -> Self {
        Self { holds: false, evidence }
    }
}
