//! The standard separating languages and grammars, independent oracles for
//! them, and a harness that checks what can be checked about each.

pub mod oracle;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Word};
use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};
use crate::grammar::{Context, ContextualGrammar, LanguageHandle, Mode, SelectionPair};
use crate::subregular::{Family, SltRep};

pub use oracle::kk_oracle_upto;
pub use verify::{verify_all, verify_lemma, CheckOutcome, LemmaBounds, LemmaReport, SubCheck};

pub const MAX_HIERARCHY_H: usize = 4;
pub const MAX_K: usize = 4;
pub const MIN_N: usize = 2;
pub const MAX_N: usize = 3;
pub const MAX_WITNESS_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessId {
    /// {a} ∪ { a bⁿ a : n ≥ 0 }
    LAbna,
    /// { a bʰ }⁺
    SltHierarchy(usize),
    /// { aᵏ⁺¹ }
    LkFin(usize),
    MonToSlt1,
    CombToSlt1,
    DefToSlt,
    LEc35,
    LIc32,
    LIc33(usize),
    LIc34,
    LIc35,
    Dyck,
    Kk(usize),
}

impl WitnessId {
    /// Every id with every supported parameter.
    pub fn all() -> Vec<WitnessId> {
        use WitnessId::*;
        let mut v = vec![LAbna];
        v.extend((1..=MAX_HIERARCHY_H).map(SltHierarchy));
        v.extend((1..=MAX_K).map(LkFin));
        v.extend([MonToSlt1, CombToSlt1, DefToSlt, LEc35, LIc32]);
        v.extend((MIN_N..=MAX_N).map(LIc33));
        v.extend([LIc34, LIc35, Dyck]);
        v.extend((1..=MAX_K).map(Kk));
        v
    }

    pub fn name(&self) -> &'static str {
        match self {
            WitnessId::LAbna => "l-abna",
            WitnessId::SltHierarchy(_) => "slt-hierarchy",
            WitnessId::LkFin(_) => "lk-fin",
            WitnessId::MonToSlt1 => "mon-to-slt1",
            WitnessId::CombToSlt1 => "comb-to-slt1",
            WitnessId::DefToSlt => "def-to-slt",
            WitnessId::LEc35 => "l-ec-35",
            WitnessId::LIc32 => "l-ic-32",
            WitnessId::LIc33(_) => "l-ic-33",
            WitnessId::LIc34 => "l-ic-34",
            WitnessId::LIc35 => "l-ic-35",
            WitnessId::Dyck => "dyck",
            WitnessId::Kk(_) => "kk",
        }
    }

    pub fn parameter(&self) -> Option<usize> {
        match *self {
            WitnessId::SltHierarchy(p) | WitnessId::LkFin(p) | WitnessId::LIc33(p) | WitnessId::Kk(p) => Some(p),
            _ => None,
        }
    }

    fn check_range(self) -> Result<Self> {
        let bad = |range: &str| Err(Error::UnsupportedParameter(format!("{self} (supported: {range})")));
        match self {
            WitnessId::SltHierarchy(h) if !(1..=MAX_HIERARCHY_H).contains(&h) => bad("1 ≤ h ≤ 4"),
            WitnessId::LkFin(k) | WitnessId::Kk(k) if !(1..=MAX_K).contains(&k) => bad("1 ≤ k ≤ 4"),
            WitnessId::LIc33(n) if !(MIN_N..=MAX_N).contains(&n) => bad("2 ≤ n ≤ 3"),
            other => Ok(other),
        }
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for WitnessId {
    type Err = Error;

    /// Accepts `name`, `name(p)` and `name:p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::UnsupportedParameter(format!("unbalanced parenthesis in '{s}'")))?;
            (&s[..open], Some(inner))
        } else if let Some((n, p)) = s.split_once(':') {
            (n, Some(p))
        } else {
            (s, None)
        };
        let param = param
            .map(|p| {
                p.trim().parse::<usize>().map_err(|_| Error::UnsupportedParameter(format!("'{p}' is not a number")))
            })
            .transpose()?;
        let need = |f: fn(usize) -> WitnessId| match param {
            Some(p) => Ok(f(p)),
            None => Err(Error::UnsupportedParameter(format!("'{name}' needs a parameter, e.g. {name}(2)"))),
        };
        let plain = |id: WitnessId| match param {
            None => Ok(id),
            Some(_) => Err(Error::UnsupportedParameter(format!("'{name}' takes no parameter"))),
        };
        let id = match name {
            "l-abna" => plain(WitnessId::LAbna),
            "slt-hierarchy" => need(WitnessId::SltHierarchy),
            "lk-fin" => need(WitnessId::LkFin),
            "mon-to-slt1" => plain(WitnessId::MonToSlt1),
            "comb-to-slt1" => plain(WitnessId::CombToSlt1),
            "def-to-slt" => plain(WitnessId::DefToSlt),
            "l-ec-35" => plain(WitnessId::LEc35),
            "l-ic-32" => plain(WitnessId::LIc32),
            "l-ic-33" => need(WitnessId::LIc33),
            "l-ic-34" => plain(WitnessId::LIc34),
            "l-ic-35" => plain(WitnessId::LIc35),
            "dyck" => plain(WitnessId::Dyck),
            "kk" => need(WitnessId::Kk),
            other => Err(Error::UnsupportedParameter(format!("unknown witness '{other}'"))),
        }?;
        id.check_range()
    }
}

/// What an id stands for.
#[derive(Debug, Clone)]
pub enum Witness {
    Language(LanguageHandle),
    Grammar { grammar: ContextualGrammar, mode: Mode },
}

impl Witness {
    pub fn language(&self) -> Option<&LanguageHandle> {
        match self {
            Witness::Language(l) => Some(l),
            Witness::Grammar { .. } => None,
        }
    }

    pub fn grammar(&self) -> Option<(&ContextualGrammar, Mode)> {
        match self {
            Witness::Grammar { grammar, mode } => Some((grammar, *mode)),
            Witness::Language(_) => None,
        }
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("valid word literal")
}

fn rx(src: &str, alphabet: &str) -> LanguageHandle {
    LanguageHandle::regex(src, Some(alphabet)).expect("valid expression literal")
}

fn ctx(u: &str, v: &str) -> Context {
    Context::parse(u, v).expect("valid context literal")
}

fn abc(s: &str) -> Alphabet {
    Alphabet::from_chars(s).expect("valid alphabet literal")
}

fn power(c: char, n: usize) -> String {
    std::iter::repeat_n(c, n).collect()
}

pub fn l_abna() -> LanguageHandle {
    rx("a|ab*a", "ab")
}

pub fn slt_hierarchy(h: usize) -> LanguageHandle {
    let unit = format!("a{}", power('b', h));
    rx(&format!("{unit}({unit})*"), "ab")
}

pub fn lk_fin(k: usize) -> LanguageHandle {
    rx(&power('a', k + 1), "a")
}

/// The ⟨{a},{b},{a},∅⟩ representation of [`l_abna`].
pub fn l_abna_rep() -> SltRep {
    SltRep::parse_sets("ab", 1, &["a"], &["b"], &["a"], &[]).expect("valid representation")
}

pub fn l_ec_35_grammar() -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abc"),
        vec![
            SelectionPair::new(rx("(a|b)*", "ab"), vec![ctx("_", "a"), ctx("a", "_")]).with_family(Family::Ord),
            SelectionPair::new(rx("a*b(a|b)*", "ab"), vec![ctx("c", "c")]).with_family(Family::Ord),
        ],
        vec![w("_"), w("b")],
    )
}

/// The two-state automaton for a*b{a,b}*: z₀ loops on a, b leads to the
/// absorbing accepting z₁.
pub fn l_ec_35_order_dfa() -> Dfa {
    Dfa::new(abc("ab"), vec![vec![0, 1], vec![1, 1]], 0, [1]).expect("valid table")
}

pub fn l_ic_32_grammar() -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abcd"),
        vec![SelectionPair::new(rx("bb*", "b"), vec![ctx("c", "d")]).with_family(Family::SltK(1))],
        vec![w("ab")],
    )
}

/// Selector ⟨{aⁿ}, {a,b,c}ⁿ, {cⁿ}, ∅⟩.
pub fn l_ic_33_slt_selector(n: usize) -> SltRep {
    let v = abc("abc");
    SltRep::new(v.clone(), n, [Word::repeat('a', n)], v.words_of_length(n), [Word::repeat('c', n)], [])
        .expect("valid representation")
}

fn l_ic_33_axioms(n: usize) -> Vec<Word> {
    vec![
        w(&format!("{}{}{}", power('a', n), power('b', 2 * n), power('c', n))),
        w(&format!("{}{}{}", power('a', n - 1), power('b', n), power('c', n - 1))),
    ]
}

pub fn l_ic_33_slt_grammar(n: usize) -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abc"),
        vec![SelectionPair::new(LanguageHandle::from_slt(l_ic_33_slt_selector(n)), vec![ctx("a", "c")])
            .with_family(Family::SltK(n))],
        l_ic_33_axioms(n),
    )
}

pub fn l_ic_33_fin_grammar(n: usize) -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abc"),
        vec![SelectionPair::new(rx(&power('b', 2 * n), "b"), vec![ctx("a", "c")]).with_family(Family::Fin)],
        l_ic_33_axioms(n),
    )
}

pub fn l_ic_34_grammar() -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abcd"),
        vec![
            SelectionPair::new(rx("ab*c", "abc"), vec![ctx("a", "c")]).with_family(Family::SltK(1)),
            SelectionPair::new(rx("bc*d", "bcd"), vec![ctx("b", "d")]).with_family(Family::SltK(1)),
        ],
        vec![w("abcd")],
    )
}

pub fn l_ic_35_grammar() -> ContextualGrammar {
    ContextualGrammar::new(
        abc("ab"),
        vec![SelectionPair::new(rx("a*ba*ba*", "ab"), vec![ctx("a", "a")]).with_family(Family::Ord)],
        vec![w("ababaababa")],
    )
}

/// Four states z₀ ≤ z₁ ≤ z₂ ≤ z₃: a fixes every state, b moves one step up
/// and stays at z₃; z₂ accepts.
pub fn l_ic_35_order_dfa() -> Dfa {
    Dfa::new(abc("ab"), vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 3]], 0, [2]).expect("valid table")
}

pub fn dyck_grammar() -> ContextualGrammar {
    ContextualGrammar::new(abc("cd"), vec![SelectionPair::new(rx("(c|d)*", "cd"), vec![ctx("c", "d")])], vec![w("_")])
}

/// { aʳb : 0 ≤ r ≤ k+1 } ∪ {λ}
pub fn kk_selector(k: usize) -> LanguageHandle {
    let alts: Vec<String> = (0..=k + 1).map(|r| format!("{}b", power('a', r))).collect();
    rx(&format!("_|{}", alts.join("|")), "ab")
}

pub fn kk_grammar(k: usize) -> ContextualGrammar {
    ContextualGrammar::new(
        abc("abcd"),
        vec![SelectionPair::new(kk_selector(k), vec![ctx("c", "d")]).with_family(Family::Suf)],
        vec![
            w(&format!("{}b", power('a', k + 1))),
            w(&format!("{}{}b{}", power('c', k), power('a', 3 * k), power('d', k))),
        ],
    )
}

/// The object an id names. The three inclusion ids stand for their
/// properness witness, which is [`l_abna`].
pub fn build_witness(id: WitnessId) -> Result<Witness> {
    let id = id.check_range()?;
    let g = |grammar, mode| Ok(Witness::Grammar { grammar, mode });
    match id {
        WitnessId::LAbna | WitnessId::MonToSlt1 | WitnessId::CombToSlt1 | WitnessId::DefToSlt => {
            Ok(Witness::Language(l_abna()))
        }
        WitnessId::SltHierarchy(h) => Ok(Witness::Language(slt_hierarchy(h))),
        WitnessId::LkFin(k) => Ok(Witness::Language(lk_fin(k))),
        WitnessId::LEc35 => g(l_ec_35_grammar(), Mode::External),
        WitnessId::LIc32 => g(l_ic_32_grammar(), Mode::Internal),
        WitnessId::LIc33(n) => g(l_ic_33_slt_grammar(n), Mode::Internal),
        WitnessId::LIc34 => g(l_ic_34_grammar(), Mode::Internal),
        WitnessId::LIc35 => g(l_ic_35_grammar(), Mode::Internal),
        WitnessId::Dyck => g(dyck_grammar(), Mode::Internal),
        WitnessId::Kk(k) => g(kk_grammar(k), Mode::Internal),
    }
}

/// Direct enumeration of the language an id's grammar should generate.
pub fn oracle_upto(id: WitnessId, max_len: usize) -> Option<Vec<Word>> {
    Some(match id {
        WitnessId::LEc35 => oracle::ord_not_slt_upto(max_len),
        WitnessId::LIc32 => oracle::acnbdn_upto(max_len),
        WitnessId::LIc33(n) => oracle::ambncm_upto(n, max_len),
        WitnessId::LIc34 => oracle::anbmcndm_upto(max_len),
        WitnessId::LIc35 => oracle::five_blocks_upto(max_len),
        WitnessId::Dyck => oracle::dyck_upto(max_len),
        WitnessId::Kk(k) => oracle::kk_oracle_upto(k, max_len),
        _ => return None,
    })
}
