//! Regular expressions over {∅, λ, a, concatenation, union, star}.
//!
//! Surface syntax: juxtaposition concatenates, `|` is union, postfix `*` is
//! star, parentheses group, `_` is λ and `∅` (or `~`) is the empty language.
//! Whitespace is ignored.

use std::fmt;

use crate::alphabet::{is_reserved, Alphabet};
use crate::automata::dfa::Dfa;
use crate::automata::nfa::Nfa;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    Empty,
    Epsilon,
    Symbol(char),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Union(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

impl RegexAst {
    pub fn parse(src: &str) -> Result<Self> {
        let tokens: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut p = Parser { tokens, pos: 0, len: src.len() };
        let ast = p.union()?;
        if let Some(&(offset, c)) = p.tokens.get(p.pos) {
            return Err(Error::Regex { offset, message: format!("unexpected '{c}'") });
        }
        Ok(ast)
    }

    pub fn concat(l: RegexAst, r: RegexAst) -> Self {
        RegexAst::Concat(Box::new(l), Box::new(r))
    }

    pub fn union(l: RegexAst, r: RegexAst) -> Self {
        RegexAst::Union(Box::new(l), Box::new(r))
    }

    pub fn star(x: RegexAst) -> Self {
        RegexAst::Star(Box::new(x))
    }

    /// Literal word as a chain of concatenations (λ for the empty word).
    pub fn word(w: &[char]) -> Self {
        w.iter().map(|&c| RegexAst::Symbol(c)).reduce(RegexAst::concat).unwrap_or(RegexAst::Epsilon)
    }

    /// Union of the given expressions (∅ for none).
    pub fn any_of<I: IntoIterator<Item = RegexAst>>(items: I) -> Self {
        items.into_iter().reduce(RegexAst::union).unwrap_or(RegexAst::Empty)
    }

    /// Symbols occurring in the expression, sorted and deduplicated.
    pub fn symbols(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_symbols(&self, out: &mut Vec<char>) {
        match self {
            RegexAst::Empty | RegexAst::Epsilon => {}
            RegexAst::Symbol(c) => out.push(*c),
            RegexAst::Concat(l, r) | RegexAst::Union(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
            RegexAst::Star(x) => x.collect_symbols(out),
        }
    }

    /// Alphabet made of the symbols used in the expression.
    pub fn spanning_alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.symbols())
    }

    /// True iff the expression contains no union node.
    pub fn is_union_free(&self) -> bool {
        match self {
            RegexAst::Empty | RegexAst::Epsilon | RegexAst::Symbol(_) => true,
            RegexAst::Union(..) => false,
            RegexAst::Concat(l, r) => l.is_union_free() && r.is_union_free(),
            RegexAst::Star(x) => x.is_union_free(),
        }
    }

    /// Compiles to a minimal DFA over `alphabet`.
    pub fn compile(&self, alphabet: &Alphabet) -> Result<Dfa> {
        for c in self.symbols() {
            if !alphabet.contains(c) {
                return Err(Error::UnknownSymbol { symbol: c, alphabet: alphabet.to_string() });
            }
        }
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, f) = self.thompson(&mut nfa, alphabet);
        nfa.add_start(s);
        nfa.set_accepting(f, true);
        Ok(nfa.determinize())
    }

    fn thompson(&self, nfa: &mut Nfa, v: &Alphabet) -> (usize, usize) {
        match self {
            RegexAst::Empty => (nfa.add_state(false), nfa.add_state(false)),
            RegexAst::Epsilon => {
                let (s, f) = (nfa.add_state(false), nfa.add_state(false));
                nfa.add_eps(s, f);
                (s, f)
            }
            RegexAst::Symbol(c) => {
                let (s, f) = (nfa.add_state(false), nfa.add_state(false));
                nfa.add_move(s, v.index_of(*c).expect("checked"), f);
                (s, f)
            }
            RegexAst::Concat(l, r) => {
                let (ls, lf) = l.thompson(nfa, v);
                let (rs, rf) = r.thompson(nfa, v);
                nfa.add_eps(lf, rs);
                (ls, rf)
            }
            RegexAst::Union(l, r) => {
                let (s, f) = (nfa.add_state(false), nfa.add_state(false));
                let (ls, lf) = l.thompson(nfa, v);
                let (rs, rf) = r.thompson(nfa, v);
                nfa.add_eps(s, ls);
                nfa.add_eps(s, rs);
                nfa.add_eps(lf, f);
                nfa.add_eps(rf, f);
                (s, f)
            }
            RegexAst::Star(x) => {
                let (s, f) = (nfa.add_state(false), nfa.add_state(false));
                let (xs, xf) = x.thompson(nfa, v);
                nfa.add_eps(s, xs);
                nfa.add_eps(s, f);
                nfa.add_eps(xf, xs);
                nfa.add_eps(xf, f);
                (s, f)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexAst::Union(..) => 0,
            RegexAst::Concat(..) => 1,
            _ => 2,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            RegexAst::Empty => f.write_str("∅")?,
            RegexAst::Epsilon => f.write_str("_")?,
            RegexAst::Symbol(c) => write!(f, "{c}")?,
            RegexAst::Concat(l, r) => {
                l.fmt_prec(f, 1)?;
                r.fmt_prec(f, 2)?;
            }
            RegexAst::Union(l, r) => {
                l.fmt_prec(f, 0)?;
                f.write_str("|")?;
                r.fmt_prec(f, 1)?;
            }
            RegexAst::Star(x) => {
                x.fmt_prec(f, 2)?;
                f.write_str("*")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Parses and compiles in one step.
pub fn compile_regex(ast: &RegexAst, alphabet: &Alphabet) -> Result<Dfa> {
    ast.compile(alphabet)
}

struct Parser {
    tokens: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Regex { offset: self.offset(), message: message.into() })
    }

    fn union(&mut self) -> Result<RegexAst> {
        let mut left = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.concat()?;
            left = RegexAst::union(left, right);
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.starred()?);
        }
        match items.into_iter().reduce(RegexAst::concat) {
            Some(ast) => Ok(ast),
            None => self.err("empty expression (use '_' for the empty word)"),
        }
    }

    fn starred(&mut self) -> Result<RegexAst> {
        let mut atom = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = RegexAst::star(atom);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<RegexAst> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of expression");
        };
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            '_' => {
                self.pos += 1;
                Ok(RegexAst::Epsilon)
            }
            '∅' | '~' => {
                self.pos += 1;
                Ok(RegexAst::Empty)
            }
            c if is_reserved(c) => self.err(format!("unexpected '{c}'")),
            c => {
                self.pos += 1;
                Ok(RegexAst::Symbol(c))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;

    #[test]
    fn parse_and_display() {
        let ast = RegexAst::parse("a|ab*a").unwrap();
        assert_eq!(ast.to_string(), "a|ab*a");
        let ast = RegexAst::parse("((a|b)c)*").unwrap();
        assert_eq!(ast.to_string(), "((a|b)c)*");
        assert_eq!(RegexAst::parse("b b*").unwrap().to_string(), "bb*");
        assert!(RegexAst::parse("(ab").is_err());
        assert!(RegexAst::parse("a|").is_err());
        assert!(RegexAst::parse("a)").is_err());
    }

    #[test]
    fn union_free_syntactic_check() {
        assert!(RegexAst::parse("ab*a").unwrap().is_union_free());
        assert!(!RegexAst::parse("a|ab*a").unwrap().is_union_free());
        assert!(!RegexAst::parse("((a|b)c)*").unwrap().is_union_free());
    }

    #[test]
    fn symbol_outside_alphabet() {
        let ast = RegexAst::parse("ac").unwrap();
        let v = Alphabet::from_chars("ab").unwrap();
        assert!(matches!(ast.compile(&v), Err(Error::UnknownSymbol { symbol: 'c', .. })));
    }

    #[test]
    fn empty_language_has_no_accepting_state() {
        let v = Alphabet::from_chars("ab").unwrap();
        let d = RegexAst::Empty.compile(&v).unwrap();
        assert_eq!(d.accepting_states().count(), 0);
        assert_eq!(d.state_count(), 1);
    }

    #[test]
    fn cd_star_words_up_to_four() {
        let v = Alphabet::from_chars("cd").unwrap();
        let d = RegexAst::parse("(cd)*").unwrap().compile(&v).unwrap();
        let got: Vec<Word> = v.words_up_to(4).into_iter().filter(|w| d.accepts(w)).collect();
        assert_eq!(got, vec![Word::empty(), Word::from("cd"), Word::from("cdcd")]);
    }
}
