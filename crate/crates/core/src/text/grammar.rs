use std::fmt::Write;
use std::path::Path;

use crate::alphabet::{Alphabet, Word};
use crate::automata::regex::RegexAst;
use crate::error::{Error, Result};
use crate::grammar::{Context, ContextualGrammar, LanguageHandle, LanguageSource, SelectionPair};
use crate::subregular::Family;

use super::dfa::{parse_dfa_from, render_dfa};
use super::slt::{parse_slt_from, render_slt};
use super::{lines, read, Line};

enum Select {
    Regex { line: usize, ast: RegexAst },
    Ready(LanguageHandle),
}

struct PairDraft {
    line: usize,
    select: Option<Select>,
    select_alphabet: Option<(usize, Alphabet)>,
    family: Option<Family>,
    contexts: Vec<Context>,
}

impl PairDraft {
    fn finish(self) -> Result<SelectionPair> {
        let selector = match self.select {
            None => return Err(Error::Parse { line: self.line, message: "pair has no 'select' line".into() }),
            Some(Select::Ready(h)) => {
                if let Some((line, _)) = self.select_alphabet {
                    return Err(Error::Parse {
                        line,
                        message: "'select-alphabet' applies to regex selectors only".into(),
                    });
                }
                h
            }
            Some(Select::Regex { line, ast }) => LanguageHandle::from_regex(ast, self.select_alphabet.map(|(_, a)| a))
                .map_err(|e| Error::Parse { line, message: e.to_string() })?,
        };
        let mut pair = SelectionPair::new(selector, self.contexts);
        pair.family = self.family;
        Ok(pair)
    }
}

fn parse_context(l: &Line) -> Result<Context> {
    let Some((u, v)) = l.rest.split_once(',') else {
        return l.err("expected 'context u , v' ('_' for an empty side)");
    };
    let side = |s: &str| {
        let s = s.trim();
        if s.is_empty() || s.split_whitespace().count() != 1 {
            return l.err(format!("context side '{s}' must be one word ('_' for λ)"));
        }
        Word::parse(s).or_else(|e| l.err(e.to_string()))
    };
    Ok(Context { u: side(u)?, v: side(v)? })
}

/// Collects the lines of an inline `select dfa` / `select slt` block up to
/// `end-select`, keeping original line numbers.
fn inline_block<'a>(
    text_lines: &[&'a str],
    ls: &[Line<'a>],
    idx: &mut usize,
    opener: usize,
) -> Result<(usize, String)> {
    let first = ls[*idx].number;
    let mut body = String::new();
    *idx += 1;
    while *idx < ls.len() {
        let l = &ls[*idx];
        if l.keyword == "end-select" {
            return Ok((first, body));
        }
        // keep blank slots so line numbers inside the block stay right
        while body.lines().count() + first < l.number - 1 {
            body.push('\n');
        }
        body.push_str(text_lines[l.number - 1]);
        body.push('\n');
        *idx += 1;
    }
    Err(Error::Parse { line: opener, message: "inline selector is missing 'end-select'".into() })
}

/// Parses the grammar format. `select dfa <path>` and `select slt <path>`
/// are resolved against `base`; without a path the selector follows inline
/// and ends at `end-select`.
pub fn parse_grammar(text: &str, base: Option<&Path>) -> Result<ContextualGrammar> {
    let text_lines: Vec<&str> = text.lines().collect();
    let ls = lines(text, 0);
    let mut alphabet: Option<Alphabet> = None;
    let mut axioms: Vec<(usize, Word)> = Vec::new();
    let mut pairs = Vec::new();
    let mut draft: Option<PairDraft> = None;
    let mut idx = 0;
    while idx < ls.len() {
        let l = &ls[idx];
        match (l.keyword, draft.as_mut()) {
            ("alphabet", None) if alphabet.is_none() => alphabet = Some(l.alphabet()?),
            ("alphabet", None) => return l.err("duplicate 'alphabet' line"),
            ("axiom", None) => axioms.extend(l.words()?.into_iter().map(|w| (l.number, w))),
            ("pair", None) => {
                draft = Some(PairDraft {
                    line: l.number,
                    select: None,
                    select_alphabet: None,
                    family: None,
                    contexts: Vec::new(),
                })
            }
            ("pair", Some(_)) => return l.err("'pair' inside a pair (missing 'end'?)"),
            ("end", Some(_)) => pairs.push(draft.take().expect("open pair").finish()?),
            ("select", Some(d)) => {
                if d.select.is_some() {
                    return l.err("a pair has exactly one 'select' line");
                }
                let (kind, arg) = l.rest.split_once(char::is_whitespace).unwrap_or((l.rest, ""));
                let arg = arg.trim();
                let at = |e: Error| match e {
                    Error::Parse { .. }
                    | Error::SltInvariant(_)
                    | Error::MissingTransition { .. }
                    | Error::DuplicateTransition { .. } => e,
                    other => Error::Parse { line: l.number, message: other.to_string() },
                };
                d.select = Some(match (kind, arg) {
                    ("regex", "") => return l.err("'select regex' needs an expression"),
                    ("regex", expr) => {
                        Select::Regex { line: l.number, ast: RegexAst::parse(expr).or_else(|e| l.err(e.to_string()))? }
                    }
                    ("dfa", "") => {
                        let (first, body) = inline_block(&text_lines, &ls, &mut idx, l.number)?;
                        Select::Ready(LanguageHandle::from_dfa(parse_dfa_from(&body, first).map_err(at)?))
                    }
                    ("slt", "") => {
                        let (first, body) = inline_block(&text_lines, &ls, &mut idx, l.number)?;
                        Select::Ready(LanguageHandle::from_slt(parse_slt_from(&body, first).map_err(at)?))
                    }
                    ("dfa", path) => {
                        let text = read(&base.unwrap_or(Path::new(".")).join(path)).map_err(at)?;
                        Select::Ready(LanguageHandle::from_dfa(parse_dfa_from(&text, 0).map_err(at)?))
                    }
                    ("slt", path) => {
                        let text = read(&base.unwrap_or(Path::new(".")).join(path)).map_err(at)?;
                        Select::Ready(LanguageHandle::from_slt(parse_slt_from(&text, 0).map_err(at)?))
                    }
                    (other, _) => return l.err(format!("unknown selector kind '{other}' (regex, dfa or slt)")),
                });
            }
            ("select-alphabet", Some(d)) => d.select_alphabet = Some((l.number, l.alphabet()?)),
            ("family", Some(d)) => {
                d.family =
                    Some(Family::parse(l.rest).ok_or_else(|| Error::Parse {
                        line: l.number,
                        message: format!("unknown family '{}'", l.rest),
                    })?)
            }
            ("context", Some(d)) => d.contexts.push(parse_context(l)?),
            (kw @ ("select" | "select-alphabet" | "family" | "context" | "end"), None) => {
                return l.err(format!("'{kw}' outside a pair"))
            }
            (kw @ ("alphabet" | "axiom"), Some(_)) => return l.err(format!("'{kw}' inside a pair (missing 'end'?)")),
            (other, _) => return l.err(format!("unknown keyword '{other}'")),
        }
        idx += 1;
    }
    if let Some(d) = draft {
        return Err(Error::Parse { line: d.line, message: "pair is missing 'end'".into() });
    }
    let alphabet = alphabet.ok_or(Error::Parse { line: 1, message: "missing 'alphabet' line".into() })?;
    for (line, w) in &axioms {
        if let Some(c) = w.iter().find(|c| !alphabet.contains(**c)) {
            return Err(Error::Parse {
                line: *line,
                message: format!("axiom '{w}' uses symbol '{c}' outside the alphabet"),
            });
        }
    }
    Ok(ContextualGrammar::new(alphabet, pairs, axioms.into_iter().map(|(_, w)| w).collect()))
}

fn indent(block: &str, by: &str) -> String {
    block.lines().map(|l| format!("{by}{l}\n")).collect()
}

/// Renders a grammar; automaton and SLT selectors are written inline.
pub fn render_grammar(g: &ContextualGrammar) -> String {
    let syms = |a: &Alphabet| a.symbols().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "alphabet {}", syms(&g.alphabet)).unwrap();
    if !g.axioms.is_empty() {
        let ws: Vec<String> = g.axioms.iter().map(|w| w.to_string()).collect();
        writeln!(out, "axiom {}", ws.join(" ")).unwrap();
    }
    for pair in &g.pairs {
        out.push_str("pair\n");
        match pair.selector.source() {
            LanguageSource::Regex(ast) => {
                writeln!(out, "  select regex {ast}").unwrap();
                writeln!(out, "  select-alphabet {}", syms(pair.selector.alphabet())).unwrap();
            }
            LanguageSource::Dfa => {
                out.push_str("  select dfa\n");
                out.push_str(&indent(&render_dfa(pair.selector.dfa()), "    "));
                out.push_str("  end-select\n");
            }
            LanguageSource::Slt(rep) => {
                out.push_str("  select slt\n");
                out.push_str(&indent(&render_slt(rep), "    "));
                out.push_str("  end-select\n");
            }
        }
        if let Some(f) = pair.family {
            writeln!(out, "  family {f}").unwrap();
        }
        for c in &pair.contexts {
            writeln!(out, "  context {} , {}", c.u, c.v).unwrap();
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const L_IC_32: &str = "\
alphabet a b c d
axiom ab
pair
  select regex b b*           # or: select dfa <path> | select slt <path>
  select-alphabet b           # optional
  family SLT1
  context c , d
end
";

    #[test]
    fn parses_the_documented_example() {
        let g = parse_grammar(L_IC_32, None).unwrap();
        assert_eq!(g.pairs.len(), 1);
        assert_eq!(g.pairs[0].contexts, vec![Context::parse("c", "d").unwrap()]);
        assert_eq!(g.axioms, vec![Word::from("ab")]);
        assert_eq!(g.pairs[0].family, Some(Family::SltK(1)));
        assert!(g.pairs[0].selector.contains(&['b', 'b']));
    }

    #[test]
    fn inline_selectors_round_trip() {
        let text = "\
alphabet a b c
axiom aabbbbcc abbc
pair
  select slt
    slt k=2
    alphabet a b c
    B aa
    I aa ab ac ba bb bc ca cb cc
    E cc
  end-select
  context a , c
end
pair
  select dfa
    alphabet b
    states 2
    start 0
    accept 1
    trans 0 b 1
    trans 1 b 1
  end-select
  context _ , a
end
";
        let g = parse_grammar(text, None).unwrap();
        assert_eq!(g.pairs.len(), 2);
        let again = parse_grammar(&render_grammar(&g), None).unwrap();
        assert_eq!(render_grammar(&again), render_grammar(&g));
        assert_eq!(again.pairs[1].contexts[0], Context::parse("_", "a").unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = L_IC_32.replace("context c , d", "context c d");
        assert!(matches!(parse_grammar(&bad, None), Err(Error::Parse { line: 7, .. })));
        let bad = L_IC_32.replace("end\n", "");
        assert!(matches!(parse_grammar(&bad, None), Err(Error::Parse { line: 3, .. })));
        let bad = L_IC_32.replace("axiom ab", "axiom ax");
        assert!(matches!(parse_grammar(&bad, None), Err(Error::Parse { line: 2, .. })));
        let bad = L_IC_32.replace("family SLT1", "family XYZ");
        assert!(matches!(parse_grammar(&bad, None), Err(Error::Parse { line: 6, .. })));
        let bad = "alphabet a\npair\n  select slt\n    slt k=2\n    F aa\n  end-select\n  context a , _\nend\n";
        assert!(matches!(parse_grammar(bad, None), Err(Error::SltInvariant(m)) if m.starts_with("line 5")));
    }
}
