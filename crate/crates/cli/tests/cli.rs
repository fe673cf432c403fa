use std::path::PathBuf;
use std::process::Command;

use dualitykit::algebra::{check_kind, AlgebraKind};
use dualitykit::speclang::{check_report_from_record, load, parse_machine, render_report, Entity, Format, Renderable};
use dualitykit_cli::{run, Exit};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name).to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> dualitykit_cli::Outcome {
    let mut full = vec!["dualitykit"];
    full.extend_from_slice(args);
    run(full, None)
}

#[test]
fn verify_monadic_counts_partitions() {
    let out = cli(&["verify", "--theorem", "lem:monadic", "--max-n", "4"]);
    assert_eq!(out.code(), 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("PASS lem:monadic max-n=4 (checked=23, failed=0, alarms=0)"), "{}", out.stdout);
}

#[test]
fn missing_file() {
    let out = cli(&["check", "missing.dua"]);
    assert_eq!(out.exit, Some(Exit::Usage));
    assert!(out.stderr.contains("no such file"));
    assert!(out.stdout.is_empty());
}

#[test]
fn cm_of_two_chain_reparses() {
    let out = cli(&["cm", "--kind", "rdsa", "--name", "f2", &corpus("chain2_rdsa.dua")]);
    assert_eq!(out.code(), 0, "{}", out.stderr);
    let (_, model) = load(&out.stdout).unwrap();
    let Some(Entity::Algebra(a)) = model.get("f2_cm") else { panic!("{}", out.stdout) };
    assert_eq!(a.len(), 3);
    assert!(check_kind(a, AlgebraKind::Rdsa).unwrap().passed());
}

#[test]
fn cs_of_ill_formed_algebra_fails() {
    let out = cli(&["cs", "--kind", "rdsa", "--name", "c4", &corpus("chain4_algebra.dua")]);
    assert_eq!(out.exit, Some(Exit::Fail));
    assert!(out.stderr.contains("rdsa.M"), "{}", out.stderr);
}

#[test]
fn failing_check_has_witness_line() {
    let out = cli(&["check", &corpus("chain4_algebra.dua")]);
    assert_eq!(out.exit, Some(Exit::Fail));
    assert!(out.stdout.lines().any(|l| l == "FAIL rdsa.M witness a=1 b=2"), "{}", out.stdout);
}

#[test]
fn machine_output_carries_text_fields() {
    for file in ["chain4_algebra.dua", "monadic_space.dua", "bad_kind_override.dua", "r2a_point.dua"] {
        let path = corpus(file);
        let text = cli(&["check", &path]);
        let machine = cli(&["--format", "machine", "check", &path]);
        assert_eq!(text.exit, machine.exit);
        let mut rebuilt = String::new();
        for rec in parse_machine(&machine.stdout).unwrap() {
            match rec.key.as_str() {
                "report" => {
                    let r = check_report_from_record(&rec).unwrap();
                    rebuilt.push_str(&render_report(Renderable::Check(&r), Format::Text));
                }
                "roundtrip" => {
                    let sizes: Vec<String> = rec
                        .records("sizes")
                        .next()
                        .unwrap()
                        .pairs()
                        .into_iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    rebuilt.push_str(&format!(
                        "{} {} iso={} {}\n",
                        rec.value("status").unwrap(),
                        rec.value("name").unwrap(),
                        rec.value("iso").unwrap(),
                        sizes.join(" ")
                    ));
                    let r = check_report_from_record(rec.records("report").next().unwrap()).unwrap();
                    rebuilt.push_str(&render_report(Renderable::Check(&r), Format::Text));
                }
                other => panic!("unexpected record {other}"),
            }
        }
        assert_eq!(rebuilt, text.stdout, "{file}");
    }
}

#[test]
fn approx_prints_both_approximations() {
    let out = cli(&["approx", "--space", "s", "--set", "{1,3}", &corpus("monadic_space.dua")]);
    assert_eq!(out.stdout, "({3}, {1,2,3})\n");
    let out = cli(&["approx", "--space", "s", "--set", "{1,9}", &corpus("monadic_space.dua")]);
    assert_eq!(out.exit, Some(Exit::Usage));
    let out = cli(&["approx", "--space", "e", "--set", "{1}", &corpus("monadic_space.dua")]);
    assert_eq!(out.exit, Some(Exit::Usage));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["frobnicate"],
        vec!["cm", "--kind", "lattice", "--name", "x", "f.dua"],
        vec!["enumerate", "--family", "trees", "--n", "2"],
        vec!["verify", "--theorem", "nothing", "--max-n", "2"],
        vec!["--format", "xml", "verify", "--theorem", "DeM", "--max-n", "1"],
    ] {
        assert_eq!(cli(&args).exit, Some(Exit::Usage), "{args:?}");
    }
    assert_eq!(cli(&["--help"]).code(), 0);
}

#[test]
fn ceiling_override() {
    let args = ["dualitykit", "enumerate", "--family", "posets", "--n", "5", "--unlabeled"];
    assert_eq!(run(args, None).exit, Some(Exit::Usage));
    let out = run(args, Some("5"));
    assert_eq!(out.code(), 0);
    assert!(out.stdout.ends_with("# count=63\n"));
    assert_eq!(run(args, Some("five")).exit, Some(Exit::Usage));
    assert_eq!(run(args, Some("3")).exit, Some(Exit::Usage));
}

#[test]
fn parse_errors_name_the_position() {
    let dir = std::env::temp_dir().join(format!("dualitykit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.dua");
    std::fs::write(&bad, "space s { universe = {1}; classes = {{2}}; }\n").unwrap();
    let out = cli(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.exit, Some(Exit::Usage));
    assert!(out.stderr.contains(":1:39:") && out.stderr.contains("[semantic-error]"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_dualitykit");
    let out = Command::new(bin).args(["check", &corpus("long_chain_frame.dua")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL frame.RDS witness x=x"));
    let out = Command::new(bin).args(["check", "nowhere.dua"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no such file"));
    let out = Command::new(bin)
        .args(["enumerate", "--family", "partitions", "--n", "6"])
        .env("DUALITYKIT_CEILING", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
