use std::fmt;

use rayon::prelude::*;

use crate::alphabet::{Alphabet, Word};
use crate::automata::dfa::Dfa;
use crate::automata::factors::factor_sets;
use crate::error::{Error, Result};
use crate::grammar::{
    generate_bounded_observed, internal_successors, Comparison, ContextualGrammar, GenerateOptions, InvariantMonitor,
    LanguageHandle, Mode,
};
use crate::subregular::{
    definite_language, definite_to_slt, infer_slt, is_combinational, is_definite, is_finite, is_monoidal, is_orderable,
    is_slt_k, is_suffix_closed, slt_to_dfa, verify_order, SltCheck, SltInference, SltRep, StateOrder,
};

use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// A claim about all grammars of a family; proved by argument, not
    /// checkable by computation.
    OutOfScope,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "PASS",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub claim: String,
    pub outcome: CheckOutcome,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub id: WitnessId,
    pub checks: Vec<SubCheck>,
}

impl LemmaReport {
    /// True iff no executed check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let outcome = match c.outcome {
                CheckOutcome::OutOfScope => "out-of-scope (proof-level claim)".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{} {}: {outcome}", self.id, c.claim));
            if !c.evidence.is_empty() {
                out.push_str(&format!(" [{}]", c.evidence));
            }
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.id, if self.passed() { "PASS" } else { "FAIL" }));
        out
    }

    pub fn render_porcelain(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.checks.iter().enumerate() {
            let outcome = match c.outcome {
                CheckOutcome::Pass => "pass",
                CheckOutcome::Fail => "fail",
                CheckOutcome::OutOfScope => "out_of_scope",
            };
            out.push_str(&format!(
                "lemma={} check={} outcome={outcome} claim={:?} evidence={:?}\n",
                self.id,
                i + 1,
                c.claim,
                c.evidence
            ));
        }
        out.push_str(&format!("lemma={} result={}\n", self.id, if self.passed() { "pass" } else { "fail" }));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaBounds {
    /// Generation bound; the id's default (12, or 14 for l-ic-35) if absent.
    pub max_len: Option<usize>,
    /// Bound for "not SLT_k for any k ≤ k_max" checks.
    pub k_max: usize,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        Self { max_len: None, k_max: 8 }
    }
}

pub fn default_max_len(id: WitnessId) -> usize {
    match id {
        WitnessId::LIc35 => 14,
        _ => 12,
    }
}

struct Checks {
    items: Vec<SubCheck>,
}

impl Checks {
    fn new() -> Self {
        Self { items: Vec::new() }
    }

    fn check(&mut self, claim: impl Into<String>, ok: bool, evidence: impl Into<String>) {
        let outcome = if ok { CheckOutcome::Pass } else { CheckOutcome::Fail };
        self.items.push(SubCheck { claim: claim.into(), outcome, evidence: evidence.into() });
    }

    fn result(&mut self, claim: impl Into<String>, r: Result<(bool, String)>) {
        match r {
            Ok((ok, ev)) => self.check(claim, ok, ev),
            Err(e) => self.check(claim, false, format!("error: {e}")),
        }
    }

    fn out_of_scope(&mut self, claim: impl Into<String>) {
        self.items.push(SubCheck { claim: claim.into(), outcome: CheckOutcome::OutOfScope, evidence: String::new() });
    }
}

fn equivalent(a: &Dfa, b: &Dfa) -> Result<(bool, String)> {
    Ok(match a.distinguishing_word(b)? {
        None => (true, "equivalent".into()),
        Some(w) => (false, format!("differ on {w}")),
    })
}

/// SLT_k holds, and the returned representation denotes the language.
fn slt_yes(l: &Dfa, k: usize) -> Result<(bool, String)> {
    match is_slt_k(l, k)? {
        SltCheck::Yes(rep) => {
            let (same, ev) = equivalent(&slt_to_dfa(&rep), l)?;
            Ok((same, format!("{}; {ev}", rep.compact())))
        }
        SltCheck::No { witness } => Ok((false, format!("witness={witness}"))),
    }
}

/// SLT_k fails, and its witness is admitted by the canonical representation
/// ⟨B*, I*, E*, L∩V^{<k}⟩ while lying outside the language.
fn slt_no(l: &Dfa, k: usize) -> Result<(bool, String)> {
    match is_slt_k(l, k)? {
        SltCheck::Yes(rep) => Ok((false, rep.compact())),
        SltCheck::No { witness } => {
            let rep = canonical_rep(l, k)?;
            let admitted = rep.contains(&witness);
            let outside = !l.accepts(&witness);
            Ok((admitted && outside, format!("witness={witness}; canonical {}", rep.compact())))
        }
    }
}

fn canonical_rep(l: &Dfa, k: usize) -> Result<SltRep> {
    let fs = factor_sets(l, k)?;
    let short: Vec<Word> = l.enumerate_upto(k - 1);
    SltRep::new(l.alphabet().clone(), k, fs.prefixes, fs.interior, fs.suffixes, short)
}

fn not_slt_upto(l: &Dfa, k_max: usize) -> Result<(bool, String)> {
    Ok(match infer_slt(l, k_max)? {
        SltInference::Slt { k, rep } => (false, format!("SLT_{k}: {}", rep.compact())),
        SltInference::NotSltUpTo(k) => (true, format!("bounded: no k ≤ {k}")),
    })
}

fn decision(holds_expected: bool, d: crate::subregular::Decision) -> (bool, String) {
    (d.holds == holds_expected, d.evidence.to_string())
}

/// Generates with invariant monitoring and compares against `expected`.
fn generation_checks(
    c: &mut Checks,
    label: &str,
    g: &ContextualGrammar,
    mode: Mode,
    expected: &[Word],
    max_len: usize,
) -> Option<Vec<Word>> {
    let monitor = InvariantMonitor::new(g, mode);
    let opts = GenerateOptions { max_len, step_cap: None, parallel: true };
    let generated = match generate_bounded_observed(g, mode, &opts, &monitor) {
        Ok(ws) => ws,
        Err(e) => {
            c.check(format!("{label} generates the oracle set up to {max_len}"), false, format!("error: {e}"));
            return None;
        }
    };
    let cmp = Comparison::of(&generated, expected, max_len, Some(&g.alphabet));
    c.check(format!("{label} generates the oracle set up to {max_len}"), cmp.is_equal(), comparison_evidence(&cmp));
    let violations = monitor.violations();
    let mut claim = "every step lengthens the word".to_string();
    if mode == Mode::Internal {
        claim.push_str(" and the used pair still applies");
    }
    c.check(
        format!("{label}: {claim}"),
        violations.is_empty(),
        match violations.first() {
            None => format!("{} expansions, {} steps", monitor.expansions(), monitor.steps()),
            Some(v) => v.clone(),
        },
    );
    Some(generated)
}

fn comparison_evidence(cmp: &Comparison) -> String {
    if cmp.is_equal() {
        return format!("{} words", cmp.left_count);
    }
    let show = |ws: &[Word]| ws.iter().take(5).map(|w| w.to_string()).collect::<Vec<_>>().join(",");
    format!("only generated: {{{}}}; only oracle: {{{}}}", show(&cmp.only_left), show(&cmp.only_right))
}

fn orderable_with(c: &mut Checks, label: &str, sel: &LanguageHandle, table: &Dfa, states: usize) {
    let ord = StateOrder::identity(table.state_count());
    c.result(format!("{label} is accepted by the given {states}-state automaton"), equivalent(table, sel.dfa()));
    c.result(
        format!("the order z0<…<z{} is monotone for every letter", states - 1),
        verify_order(table, &ord).map(|ok| (ok, ord.to_string())),
    );
}

/// Runs every checkable sub-claim for `id`.
pub fn verify_lemma(id: WitnessId, bounds: LemmaBounds) -> Result<LemmaReport> {
    let id = id.check_range()?;
    let max_len = bounds.max_len.unwrap_or_else(|| default_max_len(id));
    if max_len > MAX_WITNESS_LEN {
        return Err(Error::UnsupportedParameter(format!("max_len {max_len} exceeds {MAX_WITNESS_LEN}")));
    }
    if bounds.k_max == 0 {
        return Err(Error::ZeroWindow);
    }
    let mut c = Checks::new();
    let abna = l_abna();
    let abna_slt1 = |c: &mut Checks| c.result("a|ab*a is SLT_1", slt_yes(abna.dfa(), 1));
    match id {
        WitnessId::LAbna => {
            abna_slt1(&mut c);
            c.result(
                "the representation ⟨{a},{b},{a},∅⟩ denotes a|ab*a",
                equivalent(&slt_to_dfa(&l_abna_rep()), abna.dfa()),
            );
            c.check(
                "a|ab*a is not definite",
                !is_definite(abna.dfa()).holds,
                is_definite(abna.dfa()).evidence.to_string(),
            );
        }
        WitnessId::SltHierarchy(h) => {
            let l = slt_hierarchy(h);
            c.result(format!("(ab^{h})+ is SLT_{}", h + 1), slt_yes(l.dfa(), h + 1));
            c.result(format!("(ab^{h})+ is not SLT_{h}"), slt_no(l.dfa(), h));
        }
        WitnessId::LkFin(k) => {
            let l = lk_fin(k);
            let name = format!("a^{}", k + 1);
            c.check(format!("{name} is finite"), is_finite(l.dfa()).holds, "");
            c.result(format!("{name} is not SLT_{k}"), slt_no(l.dfa(), k));
            let rep = canonical_rep(l.dfa(), k)?;
            let ak = Word::repeat('a', k);
            c.check(
                format!("the canonical representation for k={k} admits a^{k}"),
                rep.contains(&ak) && !l.contains(&ak),
                rep.compact(),
            );
        }
        WitnessId::MonToSlt1 => {
            for v in ["a", "ab", "abc"] {
                let alphabet = Alphabet::from_chars(v)?;
                let rep = SltRep::new(
                    alphabet.clone(),
                    1,
                    alphabet.words_of_length(1),
                    alphabet.words_of_length(1),
                    alphabet.words_of_length(1),
                    [Word::empty()],
                )?;
                let star = Dfa::universal(alphabet);
                c.check(format!("{{{v}}}* is monoidal"), is_monoidal(&star).holds, "");
                c.result(format!("⟨V,V,V,{{λ}}⟩ denotes {{{v}}}*"), equivalent(&slt_to_dfa(&rep), &star));
            }
            abna_slt1(&mut c);
            c.check(
                "a|ab*a is not monoidal",
                !is_monoidal(abna.dfa()).holds,
                is_monoidal(abna.dfa()).evidence.to_string(),
            );
        }
        WitnessId::CombToSlt1 => {
            let v = Alphabet::from_chars("ab")?;
            for x in [vec![], vec!['a'], vec!['b'], vec!['a', 'b']] {
                let xs: Vec<Word> = x.iter().map(|&s| Word::from_chars(vec![s])).collect();
                let comb = definite_language(&[], &xs, &v)?;
                let rep = SltRep::new(v.clone(), 1, v.words_of_length(1), v.words_of_length(1), xs.clone(), [])?;
                let xname = x.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
                c.check(format!("V*{{{xname}}} is combinational"), is_combinational(&comb).holds, "");
                c.result(format!("⟨V,V,{{{xname}}},∅⟩ denotes V*{{{xname}}}"), equivalent(&slt_to_dfa(&rep), &comb));
            }
            abna_slt1(&mut c);
            c.check(
                "a|ab*a is not combinational",
                !is_combinational(abna.dfa()).holds,
                is_combinational(abna.dfa()).evidence.to_string(),
            );
        }
        WitnessId::DefToSlt => {
            let v = Alphabet::from_chars("ab")?;
            let words = |ws: &[&str]| ws.iter().map(|s| Word::parse(s)).collect::<Result<Vec<_>>>();
            let samples: [(&[&str], &[&str]); 6] = [
                (&[], &["a"]),
                (&["_"], &["ab"]),
                (&["b", "ab"], &["bb", "ba"]),
                (&["aab"], &[]),
                (&["a"], &["_"]),
                (&["ba", "bab"], &["aba", "b"]),
            ];
            for (ds, de) in samples {
                let (ds, de) = (words(ds)?, words(de)?);
                let label = format!(
                    "D_s={} D_e={}",
                    crate::alphabet::format_word_set(&ds),
                    crate::alphabet::format_word_set(&de)
                );
                let l = definite_language(&ds, &de, &v)?;
                c.check(format!("{label} is definite"), is_definite(&l).holds, "");
                c.result(
                    format!("the SLT construction for {label} denotes the language"),
                    definite_to_slt(&ds, &de, &v).and_then(|rep| {
                        let (ok, ev) = equivalent(&slt_to_dfa(&rep), &l)?;
                        Ok((ok, format!("k={}; {ev}", rep.k())))
                    }),
                );
            }
            abna_slt1(&mut c);
            c.check(
                "a|ab*a is not definite",
                !is_definite(abna.dfa()).holds,
                is_definite(abna.dfa()).evidence.to_string(),
            );
        }
        WitnessId::LEc35 => {
            let g = l_ec_35_grammar();
            generation_checks(
                &mut c,
                "external grammar",
                &g,
                Mode::External,
                &oracle::ord_not_slt_upto(max_len),
                max_len,
            );
            let first = &g.pairs[0].selector;
            let d = is_orderable(first.dfa());
            c.check(
                "{a,b}* is ordered with one state",
                d.holds && first.dfa().state_count() == 1,
                d.evidence.to_string(),
            );
            orderable_with(&mut c, "a*b{a,b}*", &g.pairs[1].selector, &l_ec_35_order_dfa(), 2);
            let aba = LanguageHandle::regex("a*ba*", Some("ab"))?;
            c.result(format!("a*ba* is not SLT_k for k ≤ {}", bounds.k_max), not_slt_upto(aba.dfa(), bounds.k_max));
            c.out_of_scope("the language is not generated by any external grammar with SLT selection");
        }
        WitnessId::LIc32 => {
            let g = l_ic_32_grammar();
            generation_checks(&mut c, "internal grammar", &g, Mode::Internal, &oracle::acnbdn_upto(max_len), max_len);
            let sel = g.pairs[0].selector.dfa();
            c.result("b+ is SLT_1", slt_yes(sel, 1));
            let rep = SltRep::parse_sets("b", 1, &["b"], &["b"], &["b"], &[])?;
            c.result("⟨{b},{b},{b},∅⟩ denotes b+", equivalent(&slt_to_dfa(&rep), sel));
            c.out_of_scope("the language is not generated by any internal grammar with COMB selection");
        }
        WitnessId::LIc33(n) => {
            let expected = oracle::ambncm_upto(n, max_len);
            let slt = l_ic_33_slt_grammar(n);
            let fin = l_ic_33_fin_grammar(n);
            let a = generation_checks(&mut c, "SLT-selection grammar", &slt, Mode::Internal, &expected, max_len);
            let b = generation_checks(&mut c, "FIN-selection grammar", &fin, Mode::Internal, &expected, max_len);
            if let (Some(a), Some(b)) = (a, b) {
                let cmp = Comparison::of(&a, &b, max_len, Some(&slt.alphabet));
                c.check("the two grammars generate the same words", cmp.is_equal(), comparison_evidence(&cmp));
            }
            c.result(format!("the SLT selector is SLT_{n}"), slt_yes(slt.pairs[0].selector.dfa(), n));
            c.check(format!("b^{} is finite", 2 * n), is_finite(fin.pairs[0].selector.dfa()).holds, "");
            let short_axiom = &slt.axioms[0];
            c.check(
                format!("the axiom {short_axiom} has no selected subword (F = ∅)"),
                internal_successors(&slt, short_axiom).is_empty(),
                "",
            );
            c.out_of_scope(format!(
                "the language is not generated by any internal grammar with SLT_{} selection",
                n - 1
            ));
        }
        WitnessId::LIc34 => {
            let g = l_ic_34_grammar();
            generation_checks(&mut c, "internal grammar", &g, Mode::Internal, &oracle::anbmcndm_upto(max_len), max_len);
            for (pair, (expr, b, i, e)) in g.pairs.iter().zip([("ab*c", "a", "b", "c"), ("bc*d", "b", "c", "d")]) {
                let sel = pair.selector.dfa();
                c.result(format!("{expr} is SLT_1"), slt_yes(sel, 1));
                let alphabet: String = [b, i, e].concat();
                let rep = SltRep::parse_sets(&alphabet, 1, &[b], &[i], &[e], &[])?;
                c.result(format!("⟨{{{b}}},{{{i}}},{{{e}}},∅⟩ denotes {expr}"), equivalent(&slt_to_dfa(&rep), sel));
            }
            c.out_of_scope("the language is not generated by any internal grammar with DEF selection");
        }
        WitnessId::LIc35 => {
            let g = l_ic_35_grammar();
            let expected = oracle::five_blocks_upto(max_len);
            generation_checks(&mut c, "internal grammar", &g, Mode::Internal, &expected, max_len);
            orderable_with(&mut c, "a*ba*ba*", &g.pairs[0].selector, &l_ic_35_order_dfa(), 4);
            let least = oracle::five_blocks_upto(10).into_iter().next();
            c.check(
                "the axiom is the shortest word (p1=p2=p3=1)",
                least.as_ref() == Some(&g.axioms[0]),
                least.map(|w| w.to_string()).unwrap_or_default(),
            );
            c.result(
                format!("a*ba*ba* is not SLT_k for k ≤ {}", bounds.k_max),
                not_slt_upto(g.pairs[0].selector.dfa(), bounds.k_max),
            );
            c.out_of_scope("the language is not generated by any internal grammar with SLT selection");
        }
        WitnessId::Dyck => {
            let g = dyck_grammar();
            generation_checks(&mut c, "internal grammar", &g, Mode::Internal, &oracle::dyck_upto(max_len), max_len);
        }
        WitnessId::Kk(k) => {
            let g = kk_grammar(k);
            generation_checks(
                &mut c,
                "internal grammar",
                &g,
                Mode::Internal,
                &oracle::kk_oracle_upto(k, max_len),
                max_len,
            );
            let sel = g.pairs[0].selector.dfa();
            c.result(
                format!("{{a^r b : r ≤ {}}} ∪ {{λ}} is suffix-closed", k + 1),
                Ok(decision(true, is_suffix_closed(sel))),
            );
            c.out_of_scope(format!("the language is not generated by any internal grammar with SLT_{k} selection"));
        }
    }
    Ok(LemmaReport { id, checks: c.items })
}

/// Verifies several ids in parallel; reports come back in input order.
pub fn verify_all(ids: &[WitnessId], bounds: LemmaBounds) -> Result<Vec<LemmaReport>> {
    ids.par_iter().map(|&id| verify_lemma(id, bounds)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_lemmas_pass() {
        for id in [WitnessId::LAbna, WitnessId::SltHierarchy(2), WitnessId::LkFin(2), WitnessId::Dyck] {
            let r = verify_lemma(id, LemmaBounds::default()).unwrap();
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn l_ic_33_at_sixteen() {
        let r = verify_lemma(WitnessId::LIc33(2), LemmaBounds { max_len: Some(16), k_max: 4 }).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert!(r.checks.iter().any(|c| c.outcome == CheckOutcome::OutOfScope));
    }

    #[test]
    fn oversized_bounds_are_rejected() {
        assert!(verify_lemma(WitnessId::Dyck, LemmaBounds { max_len: Some(21), k_max: 4 }).is_err());
    }
}
