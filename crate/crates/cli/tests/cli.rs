use std::path::PathBuf;
use std::process::{Command, Output};

fn grammars() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../grammars")
}

fn grammar(name: &str) -> String {
    grammars().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subreg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_l_abna_passes() {
    let o = run(&["verify", "--lemma", "l-abna"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().ends_with("PASS"));
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--lemma", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("out-of-scope (proof-level claim)"));
}

#[test]
fn verify_rejects_parameters_out_of_range() {
    assert_eq!(run(&["verify", "--lemma", "kk(5)"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--lemma", "dyck", "--max-len", "21"]).status.code(), Some(2));
}

#[test]
fn generate_dyck() {
    let o = run(&["generate", "--grammar", &grammar("dyck.cg"), "--mode", "in", "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "_\ncd\nccdd\ncdcd\n");
}

#[test]
fn generate_is_byte_identical_across_runs() {
    let args = ["generate", "--grammar", &grammar("kk-1.cg"), "--mode", "in", "--max-len", "11"];
    let first = stdout(&run(&args));
    assert!(first.lines().count() > 100);
    for _ in 0..3 {
        assert_eq!(stdout(&run(&args)), first);
    }
}

#[test]
fn traces() {
    let o = run(&["generate", "--grammar", &grammar("l-ic-32.cg"), "--max-len", "8", "--trace", "acbd"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ab ⟹ acbd");
    let o = run(&["generate", "--grammar", &grammar("l-ic-32.cg"), "--max-len", "8", "--trace", "abc"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn grammar_files_match_their_oracles() {
    for (file, id, n) in [
        ("l-ic-32.cg", "l-ic-32", 12),
        ("l-ic-33-2.cg", "l-ic-33(2)", 12),
        ("l-ic-33-2-fin.cg", "l-ic-33(2)", 12),
        ("l-ic-34.cg", "l-ic-34", 12),
        ("l-ic-35.cg", "l-ic-35", 14),
        ("l-ic-35-dfa.cg", "l-ic-35", 14),
        ("dyck.cg", "dyck", 12),
        ("kk-1.cg", "kk(1)", 12),
        ("kk-2.cg", "kk(2)", 12),
    ] {
        let left = format!("grammar:{}:in", grammar(file));
        let o = run(&["compare", "--left", &left, "--right", &format!("oracle:{id}"), "--max-len", &n.to_string()]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}{}", stdout(&o), stderr(&o));
    }
    let left = format!("grammar:{}:ex", grammar("l-ec-35.cg"));
    let o = run(&["compare", "--left", &left, "--right", "oracle:l-ec-35", "--max-len", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn compare_reports_differences() {
    let o = run(&["compare", "--left", "regex:a*", "--right", "regex:aa*", "--max-len", "4", "--porcelain"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("equal=false"));
    assert!(out.contains("only_left=_\n"));
    assert!(!out.contains("only_right"));
}

#[test]
fn classify_l_abna() {
    let o = run(&["classify", "--input", "regex:a|ab*a"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SLT1 yes k=1;B={a};I={b};E={a};F={}"));
    assert!(out.lines().any(|l| l.starts_with("DEF no ")));
    let o = run(&["classify", "--input", "regex:a|ab*a", "--porcelain"]);
    assert!(stdout(&o).lines().all(|l| l.starts_with("family=") && l.contains(" verdict=")));
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = dir.path().join("partial.dfa");
    std::fs::write(&dfa, "alphabet a b\nstates 1\nstart 0\naccept 0\ntrans 0 a 0\n").unwrap();
    let o = run(&["classify", "--input", &format!("dfa:{}", dfa.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing transition from state 0 on symbol 'b'"), "{}", stderr(&o));

    let slt = dir.path().join("bad.slt");
    std::fs::write(&slt, "slt k=2\nB ab\nF ab\n").unwrap();
    let o = run(&["enumerate", "--input", &format!("slt:{}", slt.display()), "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("F word 'ab'"), "{}", stderr(&o));

    let cg = dir.path().join("bad.cg");
    std::fs::write(&cg, "alphabet a\naxiom a\npair\n  select regex a\n  context a b\nend\n").unwrap();
    let o = run(&["generate", "--grammar", &cg.to_string_lossy(), "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    assert_eq!(run(&["classify", "--input", "regex:(ab"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--grammar", "missing.cg", "--max-len", "3"]).status.code(), Some(2));
}

#[test]
fn declared_family_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cg = dir.path().join("mon.cg");
    std::fs::write(&cg, "alphabet a b\naxiom b\npair\n  select regex a*b(a|b)*\n  family MON\n  context a , _\nend\n")
        .unwrap();
    let o = run(&["generate", "--grammar", &cg.to_string_lossy(), "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("declared MON"), "{}", stderr(&o));
}

#[test]
fn conversions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["convert", "--input", "regex:a|ab*a", "--alphabet", "ab", "--to", "dfa"]);
    assert_eq!(o.status.code(), Some(0));
    let dfa = dir.path().join("abna.dfa");
    std::fs::write(&dfa, stdout(&o)).unwrap();
    let o =
        run(&["compare", "--left", &format!("dfa:{}", dfa.display()), "--right", "witness:l-abna", "--max-len", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = run(&["convert", "--definite", "b,ab", "a", "--alphabet", "ab"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("slt k=3\n"));
    let slt = dir.path().join("def.slt");
    std::fs::write(&slt, stdout(&o)).unwrap();
    let o = run(&[
        "compare",
        "--left",
        &format!("slt:{}", slt.display()),
        "--right",
        "regex:b|ab|(a|b)*a",
        "--alphabet",
        "ab",
        "--max-len",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn enumerate_sources() {
    let o = run(&["enumerate", "--input", &grammar("l-abna.slt"), "--max-len", "4"]);
    assert_eq!(stdout(&o), "a\naa\naba\nabba\n");
    let o = run(&["enumerate", "--input", "oracle:l-ic-32", "--max-len", "6"]);
    assert_eq!(stdout(&o), "ab\nacbd\naccbdd\n");
}
