use std::fmt::Write;

use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};

use super::lines;

/// Parses `alphabet` / `states` / `start` / `accept` / `trans` lines. The
/// transition function must be total.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    parse_dfa_from(text, 0)
}

pub(crate) fn parse_dfa_from(text: &str, first_line: usize) -> Result<Dfa> {
    let ls = lines(text, first_line);
    let end = ls.last().map_or(first_line + 1, |l| l.number);
    let missing = |what: &str| Error::Parse { line: end, message: format!("missing '{what}' line") };

    let mut alphabet = None;
    let mut states: Option<usize> = None;
    let mut start = None;
    let mut accepting: Vec<(usize, usize)> = Vec::new();
    let mut trans = Vec::new();
    for l in &ls {
        match l.keyword {
            "alphabet" if alphabet.is_none() => alphabet = Some(l.alphabet()?),
            "states" if states.is_none() => {
                let n = l.number_arg()?;
                if n == 0 {
                    return l.err("an automaton needs at least one state");
                }
                states = Some(n);
            }
            "start" if start.is_none() => start = Some((l.number, l.number_arg()?)),
            "accept" => {
                for t in l.tokens() {
                    let q = t.parse().or_else(|_| l.err(format!("expected a state number, found '{t}'")))?;
                    accepting.push((l.number, q));
                }
            }
            "trans" => {
                let toks: Vec<&str> = l.tokens().collect();
                let [from, sym, to] = toks.as_slice() else {
                    return l.err("expected 'trans <state> <symbol> <state>'");
                };
                let from: usize = from.parse().or_else(|_| l.err(format!("bad state '{from}'")))?;
                let to: usize = to.parse().or_else(|_| l.err(format!("bad state '{to}'")))?;
                let mut cs = sym.chars();
                let (Some(c), None) = (cs.next(), cs.next()) else {
                    return l.err(format!("symbol '{sym}' is not a single character"));
                };
                trans.push((l, from, c, to));
            }
            "alphabet" | "states" | "start" => return l.err(format!("duplicate '{}' line", l.keyword)),
            other => return l.err(format!("unknown keyword '{other}'")),
        }
    }
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let n = states.ok_or_else(|| missing("states"))?;
    let (start_line, start) = start.ok_or_else(|| missing("start"))?;
    let in_range = |line: usize, q: usize| {
        if q < n {
            Ok(q)
        } else {
            Err(Error::Parse { line, message: format!("state {q} is outside 0..{n}") })
        }
    };
    in_range(start_line, start)?;
    let accepting = accepting.into_iter().map(|(line, q)| in_range(line, q)).collect::<Result<Vec<_>>>()?;
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; n];
    for (l, from, c, to) in trans {
        in_range(l.number, from)?;
        in_range(l.number, to)?;
        let Some(a) = alphabet.index_of(c) else {
            return l.err(format!("symbol '{c}' is not part of the alphabet {{{alphabet}}}"));
        };
        if table[from][a].replace(to).is_some() {
            return Err(Error::DuplicateTransition { state: from, symbol: c });
        }
    }
    let mut rows = Vec::with_capacity(n);
    for (q, row) in table.into_iter().enumerate() {
        let mut full = Vec::with_capacity(row.len());
        for (a, t) in row.into_iter().enumerate() {
            full.push(t.ok_or(Error::MissingTransition { state: q, symbol: alphabet.symbol(a) })?);
        }
        rows.push(full);
    }
    Dfa::new(alphabet, rows, start, accepting)
}

pub fn render_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    let v = d.alphabet();
    let syms: Vec<String> = v.symbols().iter().map(|c| c.to_string()).collect();
    let acc: Vec<String> = d.accepting_states().map(|q| q.to_string()).collect();
    writeln!(out, "alphabet {}", syms.join(" ")).unwrap();
    writeln!(out, "states {}", d.state_count()).unwrap();
    writeln!(out, "start {}", d.start()).unwrap();
    if acc.is_empty() {
        out.push_str("accept\n");
    } else {
        writeln!(out, "accept {}", acc.join(" ")).unwrap();
    }
    for q in 0..d.state_count() {
        for (a, c) in v.symbols().iter().enumerate() {
            writeln!(out, "trans {q} {c} {}", d.next(q, a)).unwrap();
        }
    }
    out
}
