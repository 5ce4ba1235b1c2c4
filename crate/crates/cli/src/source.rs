//! Language and sample sources named on the command line.

use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use subreg::grammar::{ContextualGrammar, LanguageHandle, Mode, SampleSource};
use subreg::text::{read_dfa_file, read_grammar_file, read_slt_file};
use subreg::witness::{build_witness, oracle_upto, Witness, WitnessId};
use subreg::Word;

pub const SOURCE_HELP: &str = "dfa:PATH | regex:EXPR | slt:PATH | grammar:PATH[:in|:ex] | witness:ID | oracle:ID";

pub enum Source {
    Language(LanguageHandle),
    Grammar(ContextualGrammar, Mode),
    Oracle(WitnessId),
}

fn grammar_spec(spec: &str) -> Result<(ContextualGrammar, Mode)> {
    let (path, mode) = match spec.rsplit_once(':') {
        Some((p, m @ ("in" | "ex"))) => (p, m.parse()?),
        _ => (spec, Mode::Internal),
    };
    let g = read_grammar_file(Path::new(path)).with_context(|| format!("reading grammar {path}"))?;
    Ok((g, mode))
}

/// Parses `kind:value`. A bare value is a file (by extension: `.slt`,
/// `.cg`, anything else is an automaton) when it exists, otherwise an
/// expression.
pub fn parse_source(spec: &str, alphabet: Option<&str>) -> Result<Source> {
    let (kind, value) = match spec.split_once(':') {
        Some((k @ ("dfa" | "regex" | "slt" | "grammar" | "witness" | "oracle"), v)) => (k, v),
        _ => {
            let path = Path::new(spec);
            let ext = path.extension().and_then(|e| e.to_str());
            let looks_like_file = spec.contains('/') || matches!(ext, Some("dfa" | "slt" | "cg"));
            let kind = if !path.is_file() {
                if looks_like_file {
                    bail!("no such file '{spec}'");
                }
                "regex"
            } else {
                match ext {
                    Some("slt") => "slt",
                    Some("cg") => "grammar",
                    _ => "dfa",
                }
            };
            (kind, spec)
        }
    };
    Ok(match kind {
        "dfa" => Source::Language(LanguageHandle::from_dfa(
            read_dfa_file(Path::new(value)).with_context(|| format!("reading automaton {value}"))?,
        )),
        "slt" => Source::Language(LanguageHandle::from_slt(
            read_slt_file(Path::new(value)).with_context(|| format!("reading SLT description {value}"))?,
        )),
        "regex" => Source::Language(
            LanguageHandle::regex(value, alphabet).with_context(|| format!("in expression '{value}'"))?,
        ),
        "grammar" => {
            let (g, mode) = grammar_spec(value)?;
            Source::Grammar(g, mode)
        }
        "witness" => match build_witness(value.parse()?)? {
            Witness::Language(l) => Source::Language(l),
            Witness::Grammar { grammar, mode } => Source::Grammar(grammar, mode),
        },
        "oracle" => {
            let id: WitnessId = value.parse()?;
            if oracle_upto(id, 0).is_none() {
                bail!("'{id}' has no grammar oracle");
            }
            Source::Oracle(id)
        }
        _ => unreachable!(),
    })
}

impl Source {
    pub fn language(self) -> Result<LanguageHandle> {
        match self {
            Source::Language(l) => Ok(l),
            _ => Err(anyhow!("a regular language is needed here, not a grammar or oracle ({SOURCE_HELP})")),
        }
    }

    pub fn sample_source(&self, max_len: usize) -> SampleSource {
        match self {
            Source::Language(l) => SampleSource::Dfa(l.dfa().clone()),
            Source::Grammar(g, mode) => SampleSource::Grammar(g.clone(), *mode),
            Source::Oracle(id) => {
                SampleSource::Words { alphabet: None, words: oracle_upto(*id, max_len).expect("checked when parsed") }
            }
        }
    }

    pub fn words(&self, max_len: usize) -> Result<Vec<Word>> {
        Ok(self.sample_source(max_len).sample(max_len)?)
    }
}
