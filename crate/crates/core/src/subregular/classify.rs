//! Runs every family test on one language and collects the verdicts.

use std::fmt;

use crate::alphabet::Word;
use crate::automata::dfa::Dfa;
use crate::automata::regex::RegexAst;
use crate::subregular::evidence::{Decision, Evidence};
use crate::subregular::families::{
    is_circular, is_combinational, is_commutative, is_definite, is_finite, is_monoidal, is_nilpotent, is_suffix_closed,
};
use crate::subregular::monoid::{noncounting_in, power_separating_in, TransitionMonoid};
use crate::subregular::order::{find_ordered_cover, is_orderable, CoverSearch};
use crate::subregular::slt::{default_k_max, is_slt_k, SltCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Fin,
    Mon,
    Nil,
    Comb,
    Def,
    Suf,
    Ord,
    Comm,
    Circ,
    Nc,
    Ps,
    Uf,
    SltK(usize),
    Slt,
}

impl Family {
    /// Parses names such as `FIN`, `slt1`, `SLT_2`, `SLT`.
    pub fn parse(s: &str) -> Option<Family> {
        let up = s.trim().to_ascii_uppercase();
        let f = match up.as_str() {
            "FIN" => Family::Fin,
            "MON" => Family::Mon,
            "NIL" => Family::Nil,
            "COMB" => Family::Comb,
            "DEF" => Family::Def,
            "SUF" => Family::Suf,
            "ORD" => Family::Ord,
            "COMM" => Family::Comm,
            "CIRC" => Family::Circ,
            "NC" => Family::Nc,
            "PS" => Family::Ps,
            "UF" => Family::Uf,
            "SLT" => Family::Slt,
            other => {
                let k: usize = other.strip_prefix("SLT")?.trim_start_matches('_').parse().ok()?;
                if k == 0 {
                    return None;
                }
                Family::SltK(k)
            }
        };
        Some(f)
    }

    /// Exact test of this family on `l`. `UF` cannot be decided from an
    /// automaton and `SLT` is only semi-decided, so both yield `None`.
    pub fn decide(&self, l: &Dfa) -> Option<Decision> {
        Some(match self {
            Family::Fin => is_finite(l),
            Family::Mon => is_monoidal(l),
            Family::Nil => is_nilpotent(l),
            Family::Comb => is_combinational(l),
            Family::Def => is_definite(l),
            Family::Suf => is_suffix_closed(l),
            Family::Ord => is_orderable(l),
            Family::Comm => is_commutative(l),
            Family::Circ => is_circular(l),
            Family::Nc => crate::subregular::monoid::is_noncounting(l),
            Family::Ps => crate::subregular::monoid::is_power_separating(l),
            Family::SltK(k) => match is_slt_k(l, *k).expect("k ≥ 1") {
                SltCheck::Yes(rep) => Decision::yes(Evidence::Slt(rep)),
                SltCheck::No { witness } => Decision::no(Evidence::Word(witness)),
            },
            Family::Uf | Family::Slt => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Fin => "FIN",
            Family::Mon => "MON",
            Family::Nil => "NIL",
            Family::Comb => "COMB",
            Family::Def => "DEF",
            Family::Suf => "SUF",
            Family::Ord => "ORD",
            Family::Comm => "COMM",
            Family::Circ => "CIRC",
            Family::Nc => "NC",
            Family::Ps => "PS",
            Family::Uf => "UF",
            Family::SltK(k) => return write!(f, "SLT{k}"),
            Family::Slt => "SLT",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// No positive answer was found for any parameter up to the bound.
    UnknownUpTo(usize),
    /// The question is outside what the tool decides for this input.
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::UnknownUpTo(k) => write!(f, "unknown_up_to({k})"),
            Verdict::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub family: Family,
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// Scope remark printed after the evidence.
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    /// Largest window length tried for SLT; defaults to (states)² + 1.
    pub k_max: Option<usize>,
    /// Expression the language was given as, for the syntactic UF check.
    pub expression: Option<RegexAst>,
    /// SLT_k lines printed beyond the first positive k.
    pub extra_slt_levels: usize,
    /// Monoid size above which NC and PS are reported as unknown.
    pub monoid_cap: Option<usize>,
    /// Copies per state allowed when searching ordered covers.
    pub cover_copies: Option<usize>,
    /// Candidate orders examined by the cover search.
    pub cover_budget: Option<usize>,
}

pub const DEFAULT_MONOID_CAP: usize = 200_000;
pub const DEFAULT_COVER_COPIES: usize = 2;
pub const DEFAULT_COVER_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub lines: Vec<ReportLine>,
    pub k_max: usize,
}

impl ClassificationReport {
    pub fn line(&self, family: Family) -> Option<&ReportLine> {
        self.lines.iter().find(|l| l.family == family)
    }

    pub fn verdict(&self, family: Family) -> Option<Verdict> {
        self.line(family).map(|l| l.verdict)
    }

    pub fn evidence(&self, family: Family) -> Option<&Evidence> {
        self.line(family).map(|l| &l.evidence)
    }

    /// Smallest k with an SLT_k yes line.
    pub fn slt_k(&self) -> Option<usize> {
        self.lines.iter().find_map(|l| match (l.family, l.verdict) {
            (Family::SltK(k), Verdict::Yes) => Some(k),
            _ => None,
        })
    }

    /// Human-readable report, one `FAMILY verdict [evidence] [note]` line per family.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&format!("{} {}", l.family, l.verdict));
            if !l.evidence.is_none() {
                out.push_str(&format!(" {}", l.evidence));
            }
            if let Some(n) = &l.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        out
    }

    /// Machine-readable `key=value` lines.
    pub fn render_porcelain(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&format!("family={} verdict={}", l.family, l.verdict));
            if !l.evidence.is_none() {
                out.push_str(&format!(" evidence={}", l.evidence.to_string().replace(' ', "_")));
            }
            out.push('\n');
        }
        out
    }

    /// Implications between families that this report breaks. Each entry
    /// names the implication; an empty list means the report is consistent.
    pub fn implication_violations(&self) -> Vec<String> {
        let v = |f: Family| self.verdict(f);
        let mut out = Vec::new();
        let mut need = |from: Family, to: Family, label: &str| {
            if v(from) == Some(Verdict::Yes) && matches!(v(to), Some(x) if !x.is_yes()) {
                out.push(format!("{from} => {to}{label}"));
            }
        };
        use Family::*;
        need(Mon, SltK(1), "");
        need(Comb, SltK(1), "");
        need(Def, Slt, "");
        need(SltK(1), Ord, " (empirical)");
        need(Ord, Nc, "");
        need(Slt, Nc, "");
        need(Nc, Ps, "");
        need(Fin, Nil, "");
        need(Nil, Def, "");
        need(Mon, Nil, "");
        need(Comb, Def, "");
        need(Mon, Suf, "");
        need(Mon, Comm, "");
        need(Comm, Circ, "");
        need(Suf, Ps, "");
        need(Def, Ord, "");
        let ks: Vec<usize> = self
            .lines
            .iter()
            .filter_map(|l| match l.family {
                SltK(k) => Some(k),
                _ => None,
            })
            .collect();
        for &k in &ks {
            need(SltK(k), Slt, "");
        }
        out
    }

    /// Levels k with SLT_k yes but SLT_{k+1} no, with the (k+1) counterexample.
    ///
    /// Words of length k+2 have no interior window at level k+1, so only
    /// their prefix and suffix are checked there. A language can therefore
    /// be SLT_k without being SLT_{k+1}: `a|ab*a` is SLT_1, but `aaa` passes
    /// every level-2 test. These gaps are kept apart from
    /// [`Self::implication_violations`] because they are not inconsistencies.
    pub fn hierarchy_gaps(&self) -> Vec<(usize, Word)> {
        self.lines
            .iter()
            .filter_map(|l| match (l.family, &l.evidence) {
                (Family::SltK(k1), Evidence::Word(w)) if k1 > 1 && l.verdict.is_no() => {
                    self.verdict(Family::SltK(k1 - 1)).filter(Verdict::is_yes).map(|_| (k1 - 1, w.clone()))
                }
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn line(family: Family, d: Decision) -> ReportLine {
    ReportLine { family, verdict: d.holds.into(), evidence: d.evidence, note: None }
}

/// ORD line: an order of the minimal automaton, else an ordered cover of
/// it, else `no` when the language counts (ordered languages never do).
fn order_line(d: &Dfa, nc: &ReportLine, options: &ClassifyOptions) -> ReportLine {
    let direct = is_orderable(d);
    if direct.holds {
        return ReportLine {
            family: Family::Ord,
            verdict: Verdict::Yes,
            evidence: direct.evidence,
            note: Some("minimal automaton".into()),
        };
    }
    if nc.verdict.is_no() {
        return ReportLine {
            family: Family::Ord,
            verdict: Verdict::No,
            evidence: nc.evidence.clone(),
            note: Some("not non-counting".into()),
        };
    }
    let copies = options.cover_copies.unwrap_or(DEFAULT_COVER_COPIES);
    let budget = options.cover_budget.unwrap_or(DEFAULT_COVER_BUDGET);
    match find_ordered_cover(d, copies, budget) {
        CoverSearch::Found(cover) => ReportLine {
            family: Family::Ord,
            verdict: Verdict::Yes,
            evidence: Evidence::Cover(cover),
            note: Some("ordered cover of the minimal automaton".into()),
        },
        CoverSearch::NoneUpTo { max_copies } => ReportLine {
            family: Family::Ord,
            verdict: Verdict::Unknown,
            evidence: Evidence::Note(format!("no ordered cover with at most {max_copies} copies per state")),
            note: None,
        },
        CoverSearch::BudgetExhausted => ReportLine {
            family: Family::Ord,
            verdict: Verdict::Unknown,
            evidence: Evidence::Note(format!("cover search stopped after {budget} candidates")),
            note: None,
        },
    }
}

/// Classifies `l` against every family. The result depends only on the
/// language (through its minimal automaton) and the options.
pub fn classify(l: &Dfa, options: &ClassifyOptions) -> ClassificationReport {
    let d = l.minimize();
    let k_max = options.k_max.unwrap_or_else(|| default_k_max(&d)).max(1);
    let mut lines = vec![
        line(Family::Fin, is_finite(&d)),
        line(Family::Mon, is_monoidal(&d)),
        line(Family::Nil, is_nilpotent(&d)),
        line(Family::Comb, is_combinational(&d)),
        line(Family::Def, is_definite(&d)),
        line(Family::Suf, is_suffix_closed(&d)),
    ];
    let cap = options.monoid_cap.unwrap_or(DEFAULT_MONOID_CAP);
    let (nc, ps) = match TransitionMonoid::build_capped(&d, cap) {
        Some(m) => (line(Family::Nc, noncounting_in(&m)), line(Family::Ps, power_separating_in(&d, &m))),
        None => {
            let unknown = |family| ReportLine {
                family,
                verdict: Verdict::Unknown,
                evidence: Evidence::Note(format!("transition monoid exceeds {cap} elements")),
                note: None,
            };
            (unknown(Family::Nc), unknown(Family::Ps))
        }
    };
    lines.push(order_line(&d, &nc, options));
    lines.push(line(Family::Comm, is_commutative(&d)));
    lines.push(line(Family::Circ, is_circular(&d)));
    let nc_no = nc.verdict.is_no().then(|| nc.evidence.clone());
    lines.push(nc);
    lines.push(ps);

    lines.push(match &options.expression {
        Some(ast) if ast.is_union_free() => ReportLine {
            family: Family::Uf,
            verdict: Verdict::Yes,
            evidence: Evidence::Note(format!("expr={ast}")),
            note: Some("syntactic check of the given expression".into()),
        },
        Some(_) => ReportLine {
            family: Family::Uf,
            verdict: Verdict::Unknown,
            evidence: Evidence::Note("given expression uses union".into()),
            note: Some("syntactic check of the given expression".into()),
        },
        None => ReportLine {
            family: Family::Uf,
            verdict: Verdict::Unknown,
            evidence: Evidence::Note("no expression given".into()),
            note: None,
        },
    });

    let mut found = None;
    let mut k = 1;
    while k <= k_max {
        let check = is_slt_k(&d, k).expect("k ≥ 1");
        let yes = check.holds();
        lines.push(match check {
            SltCheck::Yes(rep) => line(Family::SltK(k), Decision::yes(Evidence::Slt(rep))),
            SltCheck::No { witness } => line(Family::SltK(k), Decision::no(Evidence::Word(witness))),
        });
        if yes && found.is_none() {
            found = Some(k);
        }
        if let Some(first) = found {
            if k >= first + options.extra_slt_levels {
                break;
            }
        }
        k += 1;
    }
    lines.push(match (found, nc_no) {
        (Some(k), _) => ReportLine {
            family: Family::Slt,
            verdict: Verdict::Yes,
            evidence: Evidence::Note(format!("k={k}")),
            note: None,
        },
        (None, Some(evidence)) => {
            ReportLine { family: Family::Slt, verdict: Verdict::No, evidence, note: Some("not non-counting".into()) }
        }
        (None, _) => ReportLine {
            family: Family::Slt,
            verdict: Verdict::UnknownUpTo(k_max),
            evidence: Evidence::None,
            note: None,
        },
    });
    ClassificationReport { lines, k_max }
}
