//! End-to-end tests of the command dispatcher: every command is exercised
//! through the same entry point the binary uses.

use std::path::PathBuf;

use weylk0_cli::{run, CmdOutcome};

fn cli(args: &[&str]) -> CmdOutcome {
    run(std::iter::once("weylk0").chain(args.iter().copied()))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("weylk0-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const FIG_CFG: &str = "3 2\nH 0 2 2\nH 0 3 1\nH 1 2 1\nH 2 3 2\nH 2 4 1\nH 2 5 1\n\
                       V 0 1 3\nV 0 3 1\nV 1 1 1\nV 1 2 1\nV 1 3 2\nV 2 2 2\nV 2 3 2\n";

const PATH_CFG: &str = "3 2\nH 1 2 1\nH 2 3 1\nV 0 1 1\nV 1 1 1\nV 2 2 1\n";

#[test]
fn mul_prints_canonical_interval_class() {
    let out = cli(&["mul", "x+(1/2)*x-(5/2)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1*M[{1/2:1,5/2:1};(1/2,5/2)]\n");
}

#[test]
fn mul_vanishing_relation() {
    let out = cli(&["mul", "x-(1/2)*x+(3/2)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn mul_split_two_term_sum() {
    let out = cli(&["mul", "y+(1/2)*y-(1/2)"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "1*S[{1/2:2};(-inf,1/2);{}] + 1*S[{1/2:2};(1/2,inf);{}]\n"
    );
}

#[test]
fn normalize_prints_generator_words() {
    let out = cli(&["normalize", "x-(5/2)*x+(1/2)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1*x+(1/2)*x-(5/2)\n");
}

#[test]
fn syntax_errors_carry_offsets() {
    let out = cli(&["mul", "x+("]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("offset 3"), "stderr: {}", out.stderr);
}

#[test]
fn type_errors_are_reported() {
    let out = cli(&["mul", "g(2)*x+(1/2)", "--m", "3", "--n", "2"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cannot mix"));
    let out = cli(&["mul", "g(2)"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--m and --n"));
}

#[test]
fn cylinder_expression_evaluates_with_geometry() {
    let out = cli(&["mul", "--m", "3", "--n", "2", "xp+[3/2,3/2,5/2]*xp-[3/2,3/2,5/2]"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "0\n");
    // The crossing-resolution identity evaluated semantically: both sides
    // print the same canonical sum.
    let lhs = cli(&["mul", "--m", "3", "--n", "2",
        "xp+[3/2,3/2,5/2]*xp-[1/2,5/2,5/2] + xp+[1/2,5/2,5/2]*xp-[3/2,3/2,5/2]"]);
    let rhs = cli(&["mul", "--m", "3", "--n", "2",
        "xp+[1/2,3/2,5/2]*xp-[3/2,5/2,5/2]"]);
    assert_eq!(lhs.code, 0);
    assert_eq!(lhs.stdout, rhs.stdout);
    assert_eq!(lhs.stdout.matches(";0]").count(), 2, "two scale-zero classes: {}", lhs.stdout);
}

#[test]
fn simples_and_indecomposables_listings() {
    let out = cli(&["simples", "{1/2:1,5/2:2}"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 3);
    let out = cli(&["indecomposables", "{1/2:1}"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 4);
    let out = cli(&["indecomposables", "{1/2:1,5/2:1}"]);
    assert_eq!(out.stdout.lines().count(), 11);
}

#[test]
fn decompose_lists_the_chain() {
    let path = write_temp("decompose.cfg", FIG_CFG);
    let out = cli(&["decompose", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "7/2,7/2,7/2\n3/2,7/2,7/2\n3/2,5/2,5/2\n3/2,3/2,5/2\n");
}

#[test]
fn components_reports_five() {
    let path = write_temp("components.cfg", FIG_CFG);
    let out = cli(&["components", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 5);
    assert_eq!(out.stdout.matches("contractible=false").count(), 2);
}

#[test]
fn consistency_accepts_paths() {
    let path = write_temp("consistency.cfg", PATH_CFG);
    let out = cli(&["consistency", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("consistent: true\n"), "{}", out.stdout);
}

#[test]
fn render_is_deterministic_and_counts_labels() {
    let path = write_temp("render.cfg", FIG_CFG);
    let first = cli(&["render", path.to_str().unwrap()]);
    let second = cli(&["render", path.to_str().unwrap()]);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);

    let svg_path = std::env::temp_dir().join(format!("weylk0-test-{}.svg", std::process::id()));
    let out = cli(&["render", path.to_str().unwrap(), "--svg", svg_path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<text").count(), 13, "one label per edge");
}

#[test]
fn sl2_report() {
    let out = cli(&["sl2", "--k", "7/2", "--l", "-1/2", "--factors", "-+"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stdout.contains("dim = 4"));
    assert!(out.stdout.contains("h-spectrum = {3,1,-1,-3}"));
    assert!(out.stdout.contains("relations [e,f]=h, [h,e]=2e, [h,f]=-2f: OK"));
    assert!(out.stdout.contains("casimir = 15/2 (scalar)"));

    let out = cli(&["sl2", "--k", "7/2", "--l", "-1/2", "--factors", "--", "--window", "6"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("dim = 6"));
    assert!(out.stdout.contains("casimir = 15/2 (scalar)"));
}

#[test]
fn oracle_subcommand_small_family() {
    let out = cli(&["oracle-rank1", "--roots", "-1/2,1/2", "--max-mult", "1", "--window", "-6..6"]);
    assert_eq!(out.code, 0, "stdout: {}\nstderr: {}", out.stdout, out.stderr);
    assert!(out.stdout.contains("400 ordered pairs"), "{}", out.stdout);
    assert!(out.stdout.contains("0 failures"));
}

#[test]
fn verify_cylinder_subcommand() {
    let out = cli(&["verify-cylinder", "--m", "3", "--n", "2", "--max-height", "2"]);
    assert_eq!(out.code, 0, "stdout: {}", out.stdout);
    assert!(out.stdout.contains("(vii) crossing resolution"));
    assert!(!out.stdout.contains("FAILED"));
}

#[test]
fn outputs_match_direct_library_calls() {
    // The command is a thin wrapper: byte-identical to composing the
    // library calls directly.
    use weylk0_cli::eval::{eval, print_value};
    use weylk0_cli::parser::parse_expr;
    let expr = "x+(1/2)^2 + 2*x-(3/2) - 3";
    let direct = format!(
        "{}\n",
        print_value(&eval(&parse_expr(expr).unwrap(), None).unwrap())
    );
    let out = cli(&["mul", expr]);
    assert_eq!(out.stdout, direct);
}
