mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use subreg::grammar::{
    compare_bounded, derivation_trace, generate_bounded, validate_grammar, GenerateOptions, Mode, Severity,
};
use subreg::subregular::{classify, definite_to_slt, infer_slt, ClassifyOptions, SltInference};
use subreg::text::{read_grammar_file, render_dfa, render_slt, render_words};
use subreg::witness::{verify_all, LemmaBounds, WitnessId, MAX_WITNESS_LEN};
use subreg::{Alphabet, Error, LanguageSource, Word};

use source::{parse_source, SOURCE_HELP};

#[derive(Parser)]
#[command(
    name = "subreg",
    version,
    about = "Subregular language classification and contextual grammars with selection"
)]
struct Cli {
    /// Emit machine-readable key=value lines.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership in every family and print one line per family.
    Classify {
        #[arg(long, help = SOURCE_HELP)]
        input: String,
        /// Alphabet for a regex input (default: the symbols it uses).
        #[arg(long)]
        alphabet: Option<String>,
        /// Largest window length tried for SLT.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// List every word of the grammar's language up to a length bound.
    Generate {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long, default_value = "in")]
        mode: Mode,
        #[arg(long)]
        max_len: usize,
        /// Give up after expanding this many words.
        #[arg(long)]
        step_cap: Option<usize>,
        /// Print a shortest derivation of this word instead.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Compare two sources on all words up to a length bound.
    Compare {
        #[arg(long, help = SOURCE_HELP)]
        left: String,
        #[arg(long, help = SOURCE_HELP)]
        right: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Convert between representations.
    Convert(ConvertArgs),
    /// Check the computable claims attached to a witness.
    Verify {
        /// Witness id such as l-abna, kk(2) or l-ic-33:3, or `all`.
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
    /// List the words of a source up to a length bound.
    Enumerate {
        #[arg(long, help = SOURCE_HELP)]
        input: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        alphabet: Option<String>,
    },
}

#[derive(Args)]
struct ConvertArgs {
    /// D_s and D_e of a definite language D_s ∪ V*D_e, each a comma- or
    /// space-separated word list (`_` for λ, empty string for ∅).
    #[arg(long, num_args = 2, value_names = ["DS", "DE"], conflicts_with = "input")]
    definite: Option<Vec<String>>,
    #[arg(long)]
    alphabet: Option<String>,
    /// Language to convert (with --to).
    #[arg(long, help = SOURCE_HELP, requires = "to")]
    input: Option<String>,
    /// Target representation for --input: `dfa` (minimal) or `slt`.
    #[arg(long)]
    to: Option<String>,
    #[arg(long)]
    k_max: Option<usize>,
}

fn word_list(s: &str) -> Result<Vec<Word>> {
    let s = s.trim();
    if s.is_empty() || s == "{}" || s == "∅" {
        return Ok(Vec::new());
    }
    s.trim_start_matches('{')
        .trim_end_matches('}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| Word::parse(t).map_err(Into::into))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let porcelain = cli.porcelain;
    match cli.command {
        Command::Classify { input, alphabet, k_max } => {
            let lang = parse_source(&input, alphabet.as_deref())?.language()?;
            if k_max == Some(0) {
                bail!("--k-max must be at least 1");
            }
            let expression = match lang.source() {
                LanguageSource::Regex(ast) => Some(ast.clone()),
                _ => None,
            };
            let report = classify(lang.dfa(), &ClassifyOptions { k_max, expression, ..Default::default() });
            print!("{}", if porcelain { report.render_porcelain() } else { report.render() });
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { grammar, mode, max_len, step_cap, trace } => {
            let g = read_grammar_file(&grammar).with_context(|| format!("reading grammar {}", grammar.display()))?;
            let diags = validate_grammar(&g);
            for d in &diags {
                eprintln!("{}: {d}", grammar.display());
            }
            if diags.iter().any(|d| d.severity == Severity::Error) {
                bail!("grammar {} is invalid", grammar.display());
            }
            if let Some(target) = trace {
                let target = Word::parse(&target)?;
                return match derivation_trace(&g, mode, &target, max_len) {
                    Ok(t) => {
                        if porcelain {
                            let words: Vec<String> = std::iter::once(t.axiom.to_string())
                                .chain(t.steps.iter().map(|s| s.result.to_string()))
                                .collect();
                            println!("derivable=true steps={} trace={}", t.steps.len(), words.join(","));
                        } else {
                            println!("{t}");
                        }
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(e @ Error::NotDerivable { .. }) => {
                        if porcelain {
                            println!("derivable=false max_len={max_len}");
                        } else {
                            println!("{e}");
                        }
                        Ok(ExitCode::from(1))
                    }
                    Err(e) => Err(e.into()),
                };
            }
            let opts = GenerateOptions { max_len, step_cap, parallel: true };
            match generate_bounded(&g, mode, &opts) {
                Ok(words) => {
                    print!("{}", render_words(&words));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ Error::StepCapExhausted { .. }) => {
                    eprintln!("{e}; no complete result within the cap");
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Compare { left, right, max_len, alphabet } => {
            let l = parse_source(&left, alphabet.as_deref())?;
            let r = parse_source(&right, alphabet.as_deref())?;
            let cmp = compare_bounded(&l.sample_source(max_len), &r.sample_source(max_len), max_len)?;
            if porcelain {
                println!(
                    "equal={} max_len={max_len} left_count={} right_count={}",
                    cmp.is_equal(),
                    cmp.left_count,
                    cmp.right_count
                );
                for w in &cmp.only_left {
                    println!("only_left={w}");
                }
                for w in &cmp.only_right {
                    println!("only_right={w}");
                }
            } else if cmp.is_equal() {
                println!("equal up to length {max_len} ({} words)", cmp.left_count);
            } else {
                println!(
                    "different up to length {max_len} (left {} words, right {} words)",
                    cmp.left_count, cmp.right_count
                );
                for w in &cmp.only_left {
                    println!("only in left: {w}");
                }
                for w in &cmp.only_right {
                    println!("only in right: {w}");
                }
            }
            Ok(if cmp.is_equal() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Convert(args) => convert(args),
        Command::Verify { lemma, max_len, k_max } => {
            if max_len.is_some_and(|n| n > MAX_WITNESS_LEN) {
                bail!("--max-len is capped at {MAX_WITNESS_LEN}");
            }
            let ids = if lemma == "all" { WitnessId::all() } else { vec![lemma.parse()?] };
            let reports = verify_all(&ids, LemmaBounds { max_len, k_max })?;
            let mut ok = true;
            for r in &reports {
                print!("{}", if porcelain { r.render_porcelain() } else { r.render() });
                ok &= r.passed();
            }
            if ids.len() > 1 {
                let failed = reports.iter().filter(|r| !r.passed()).count();
                if porcelain {
                    println!("lemmas={} failed={failed}", reports.len());
                } else {
                    println!("{} of {} witnesses passed", reports.len() - failed, reports.len());
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Enumerate { input, max_len, alphabet } => {
            let src = parse_source(&input, alphabet.as_deref())?;
            print!("{}", render_words(&src.words(max_len)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn convert(args: ConvertArgs) -> Result<ExitCode> {
    if let Some(sets) = args.definite {
        let Some(v) = args.alphabet else {
            bail!("--definite needs --alphabet");
        };
        let v = Alphabet::from_chars(&v.replace([' ', ','], ""))?;
        let rep = definite_to_slt(&word_list(&sets[0])?, &word_list(&sets[1])?, &v)?;
        print!("{}", render_slt(&rep));
        return Ok(ExitCode::SUCCESS);
    }
    let (Some(input), Some(to)) = (args.input, args.to) else {
        bail!("use either --definite DS DE --alphabet V or --input SRC --to dfa|slt");
    };
    let lang = parse_source(&input, args.alphabet.as_deref())?.language()?;
    match to.as_str() {
        "dfa" => {
            print!("{}", render_dfa(lang.dfa()));
            Ok(ExitCode::SUCCESS)
        }
        "slt" => {
            let k_max = args.k_max.unwrap_or_else(|| subreg::subregular::default_k_max(lang.dfa()));
            match infer_slt(lang.dfa(), k_max)? {
                SltInference::Slt { rep, .. } => {
                    print!("{}", render_slt(&rep));
                    Ok(ExitCode::SUCCESS)
                }
                SltInference::NotSltUpTo(k) => {
                    eprintln!("not SLT_k for any k ≤ {k}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        other => bail!("unknown target '{other}' (dfa or slt)"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
