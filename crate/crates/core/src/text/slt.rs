use std::collections::BTreeSet;
use std::fmt::Write;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::subregular::SltRep;

use super::lines;

/// Parses `slt k=K`, an optional `alphabet` line and `B`/`I`/`E`/`F` lines.
/// Without an alphabet line the alphabet is the set of symbols used.
pub fn parse_slt(text: &str) -> Result<SltRep> {
    parse_slt_from(text, 0)
}

pub(crate) fn parse_slt_from(text: &str, first_line: usize) -> Result<SltRep> {
    let ls = lines(text, first_line);
    let Some(head) = ls.first() else {
        return Err(Error::Parse { line: first_line + 1, message: "empty SLT description".into() });
    };
    if head.keyword != "slt" {
        return head.err("expected 'slt k=K' as the first line");
    }
    let k: usize = match head.rest.strip_prefix("k=").map(|n| n.trim().parse()) {
        Some(Ok(k)) if k >= 1 => k,
        _ => return head.err(format!("expected 'slt k=K' with K ≥ 1, found 'slt {}'", head.rest)),
    };
    let mut alphabet: Option<Alphabet> = None;
    let mut sets: [BTreeSet<Word>; 4] = Default::default();
    for l in &ls[1..] {
        let slot = match l.keyword {
            "alphabet" if alphabet.is_none() => {
                alphabet = Some(l.alphabet()?);
                continue;
            }
            "B" => 0,
            "I" => 1,
            "E" => 2,
            "F" => 3,
            other => return l.err(format!("unknown keyword '{other}'")),
        };
        for w in l.words()? {
            let ok = if slot == 3 { w.len() < k } else { w.len() == k };
            if !ok {
                let need = if slot == 3 { format!("shorter than k = {k}") } else { format!("of length k = {k}") };
                return Err(Error::SltInvariant(format!("line {}: {} word '{w}' must be {need}", l.number, l.keyword)));
            }
            if let Some(v) = &alphabet {
                if let Some(c) = w.iter().find(|c| !v.contains(**c)) {
                    return l.err(format!("symbol '{c}' is not part of the alphabet {{{v}}}"));
                }
            }
            sets[slot].insert(w);
        }
    }
    let alphabet = match alphabet {
        Some(v) => v,
        None => Alphabet::spanning(sets.iter().flatten())?,
    };
    let [b, i, e, f] = sets;
    SltRep::new(alphabet, k, b, i, e, f)
}

pub fn render_slt(rep: &SltRep) -> String {
    let mut out = String::new();
    let syms: Vec<String> = rep.alphabet().symbols().iter().map(|c| c.to_string()).collect();
    writeln!(out, "slt k={}", rep.k()).unwrap();
    writeln!(out, "alphabet {}", syms.join(" ")).unwrap();
    for (name, ws) in
        [("B", rep.begin_sorted()), ("I", rep.inner_sorted()), ("E", rep.end_sorted()), ("F", rep.short_sorted())]
    {
        out.push_str(name);
        for w in ws {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}
