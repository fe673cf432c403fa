//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Expected counts come from brute-force oracles below that filter all binary
//! relations (or all maps) on small carriers; nothing here reuses the
//! library's generators.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dualitykit::algebra::check_kind;
use dualitykit::duality::frame_conditions;
use dualitykit::enumerate::{verify_theorem, Ceilings, VerificationSummary};
use dualitykit::speclang::{load, parse_document, print_document, Decl, Entity};

/// A relation on `0..n` as an `n * n` bit code, bit `i * n + j` for `(i, j)`.
#[derive(Clone, Copy)]
struct Rel {
    n: usize,
    code: u64,
}

impl Rel {
    fn has(self, i: usize, j: usize) -> bool {
        self.code >> (i * self.n + j) & 1 == 1
    }

    fn all(n: usize) -> impl Iterator<Item = Rel> {
        (0..1u64 << (n * n)).map(move |code| Rel { n, code })
    }

    fn reflexive(self) -> bool {
        (0..self.n).all(|i| self.has(i, i))
    }

    fn symmetric(self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| !self.has(i, j) || self.has(j, i)))
    }

    fn antisymmetric(self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !(self.has(i, j) && self.has(j, i))))
    }

    fn transitive(self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(self.has(i, j) && self.has(j, k)) || self.has(i, k))))
    }

    fn equivalence(self) -> bool {
        self.reflexive() && self.symmetric() && self.transitive()
    }

    fn partial_order(self) -> bool {
        self.reflexive() && self.antisymmetric() && self.transitive()
    }

    fn complement(self) -> Rel {
        Rel { n: self.n, code: !self.code & ((1u64 << (self.n * self.n)) - 1) }
    }

    fn comparable(self, i: usize, j: usize) -> bool {
        self.has(i, j) || self.has(j, i)
    }

    /// Connected components of the comparability graph.
    fn components(self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for y in 0..self.n {
                    if !seen[y] && self.comparable(x, y) {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }
}

fn orders(n: usize) -> Vec<Rel> {
    Rel::all(n).filter(|r| r.partial_order()).collect()
}

/// Orders whose components are chains of at most two points.
fn rds_orders(n: usize) -> usize {
    orders(n).into_iter().filter(|r| r.components().iter().all(|c| c.len() <= 2)).count()
}

/// Orders whose components each have a least and a greatest element.
fn dsa_orders(n: usize) -> usize {
    orders(n)
        .into_iter()
        .filter(|r| {
            r.components().iter().all(|c| {
                c.iter().any(|&b| c.iter().all(|&x| r.has(b, x))) && c.iter().any(|&t| c.iter().all(|&x| r.has(x, t)))
            })
        })
        .count()
}

fn maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(n as u32)).map(move |mut c| {
        (0..n)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect()
    })
}

/// Orders with an order-reversing involution.
fn de_morgan_frames(n: usize) -> usize {
    let maps: Vec<Vec<usize>> = maps(n).filter(|f| (0..n).all(|x| f[f[x]] == x)).collect();
    orders(n)
        .into_iter()
        .map(|r| {
            maps.iter()
                .filter(|f| (0..n).all(|x| (0..n).all(|y| !r.has(x, y) || r.has(f[y], f[x]))))
                .count()
        })
        .sum()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    maps(n).filter(|f| f.iter().collect::<BTreeSet<_>>().len() == n).collect()
}

/// Orders up to relabeling: one smallest code per orbit.
fn unlabeled_orders(n: usize) -> usize {
    let perms = permutations(n);
    let canon = |r: Rel| {
        perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if r.has(i, j) {
                            code |= 1 << (p[i] * n + p[j]);
                        }
                    }
                }
                code
            })
            .min()
            .expect("nonempty")
    };
    orders(n).into_iter().map(canon).collect::<BTreeSet<_>>().len()
}

fn diversity_relations(n: usize) -> usize {
    Rel::all(n)
        .filter(|r| {
            (0..n).all(|i| !r.has(i, i))
                && r.symmetric()
                && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !r.has(x, y) || r.has(x, z) || r.has(z, y))))
        })
        .count()
}

fn bell(n: usize) -> usize {
    Rel::all(n).filter(|r| r.equivalence()).count()
}

fn sum_to(max_n: usize, f: impl Fn(usize) -> usize) -> u64 {
    (1..=max_n).map(|n| f(n) as u64).sum()
}

struct Line {
    ok: bool,
    detail: String,
}

fn summary_ok(s: &VerificationSummary) -> bool {
    s.failed() == 0 && s.alarms() == 0
}

fn verify(theorem: &str, max_n: usize) -> VerificationSummary {
    verify_theorem(theorem, max_n, &Ceilings::default()).unwrap_or_else(|e| panic!("{theorem}: {e}"))
}

/// Every tally of `s` checked exactly `expected` instances, none failed.
fn counted(s: &VerificationSummary, expected: u64) -> Line {
    let mut ok = summary_ok(s);
    let mut parts = Vec::new();
    for t in &s.tallies {
        ok &= t.checked == expected;
        parts.push(format!("{}: {}/{} passed", t.property, t.passed, t.checked));
        if t.failed > 0 {
            parts.push(format!("counterexample {}", t.counterexample.as_deref().unwrap_or("?")));
        }
    }
    if !ok {
        parts.push(format!("expected {expected} per property"));
    }
    Line { ok, detail: format!("{} [{}]", s.theorem, parts.join("; ")) }
}

fn merge(lines: Vec<Line>) -> Line {
    Line {
        ok: lines.iter().all(|l| l.ok),
        detail: lines.into_iter().map(|l| l.detail).collect::<Vec<_>>().join(" "),
    }
}

fn criterion_1() -> Line {
    counted(&verify("lem:monadic", 5), sum_to(5, bell))
}

fn criterion_2() -> Line {
    counted(&verify("lem:equiv", 4), sum_to(4, bell))
}

fn criterion_3() -> Line {
    counted(&verify("thm:monad", 4), sum_to(4, bell))
}

fn criterion_4() -> Line {
    let s = verify("thm:necsuff", 3);
    let t = &s.tallies[0];
    // every operator table on 2^k with k <= 3 atoms
    let tables: u64 = (1..=3u32).map(|k| 1u64 << (k * (1 << k))).sum();
    // sufficiency operators correspond to relations on the atoms
    let sufficiency: u64 = (1..=3u32).map(|k| 1u64 << (k * k)).sum();
    let note = format!("{sufficiency} sufficiency operators");
    let ok = summary_ok(&s) && t.checked == tables && t.note.as_deref() == Some(note.as_str());
    Line { ok, detail: format!("thm:necsuff [{}/{} tables agree; {}]", t.passed, t.checked, note) }
}

fn criterion_5() -> Line {
    // exhaustive to 3 points, then 4096 distinct sampled relations on 4
    let expected = sum_to(3, |n| 1 << (n * n)) + 4096;
    merge(vec![counted(&verify("repsuff1", 4), expected), counted(&verify("repsuff2", 4), expected)])
}

fn criterion_6() -> Line {
    let frames = sum_to(4, diversity_relations);
    let all = sum_to(4, |n| 1 << (n * n));
    let agree = sum_to(4, |n| {
        Rel::all(n)
            .filter(|r| {
                let fdiv = (0..n).all(|i| !r.has(i, i))
                    && r.symmetric()
                    && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !r.has(x, y) || r.has(x, z) || r.has(z, y))));
                fdiv == r.complement().equivalence()
            })
            .count()
    });
    let mut char_line = counted(&verify("div-complement", 4), all);
    char_line.ok &= agree == all;
    merge(vec![counted(&verify("repdiv1", 4), frames), counted(&verify("repdiv2", 4), frames), char_line])
}

fn criterion_7() -> Line {
    counted(&verify("DDLat", 4), sum_to(4, |n| orders(n).len()))
}

fn criterion_8() -> Line {
    counted(&verify("rhm:rsdaalg", 4), sum_to(4, bell))
}

fn criterion_9() -> Line {
    let frames = sum_to(4, rds_orders);
    merge(vec![
        counted(&verify("rdsa1", 4), frames),
        counted(&verify("rdsa2", 4), frames),
        // cm of every frame plus the rough-set algebra of every space
        counted(&verify("lem:reg", 4), frames + sum_to(4, bell)),
    ])
}

fn criterion_10() -> Line {
    counted(&verify("DeM", 3), sum_to(3, de_morgan_frames))
}

fn criterion_11() -> Line {
    let s = verify("rra-final", 3);
    let mut ok = summary_ok(&s);
    let mut parts = Vec::new();
    for t in &s.tallies {
        let defined = t.checked - t.undefined;
        ok &= defined > 0;
        let mut p = format!("{}: {}/{} passed", t.property, t.passed, defined);
        if t.undefined > 0 {
            p.push_str(&format!(", {} spaces with composition not closed", t.undefined));
        }
        parts.push(p);
    }
    // exhaustive at |X| <= 2: both spaces of each size are uniform, so all
    // must be defined
    let full = s.tally("full-algebra-r2a").expect("tally");
    ok &= full.checked == sum_to(3, bell) && full.checked - full.undefined >= sum_to(2, bell);
    Line { ok, detail: format!("rra-final [{}]", parts.join("; ")) }
}

fn criterion_12() -> Line {
    counted(&verify("cross-star", 5), sum_to(5, rds_orders))
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_dualitykit"))
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "dua"))
        .collect();
    files.sort();
    files
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
}

fn invoke(args: &[&str]) -> Run {
    let out = Command::new(bin()).args(args).env_remove("DUALITYKIT_CEILING").output().expect("spawn");
    Run { code: out.status.code().unwrap_or(-1), stdout: out.stdout }
}

/// Runs twice and requires byte-identical output.
fn invoke_stable(args: &[&str], problems: &mut Vec<String>) -> Run {
    let a = invoke(args);
    let b = invoke(args);
    if a.stdout != b.stdout || a.code != b.code {
        problems.push(format!("`{}` is not deterministic", args.join(" ")));
    }
    a
}

fn count_line(stdout: &[u8]) -> Option<usize> {
    let text = String::from_utf8_lossy(stdout);
    text.lines().last()?.strip_prefix("# count=")?.parse().ok()
}

fn criterion_13() -> Line {
    let mut problems = Vec::new();

    // enumeration counts against the oracles
    type Oracle = fn(usize) -> usize;
    let families: Vec<(&str, bool, Oracle)> = vec![
        ("partitions", false, bell),
        ("posets", false, |n| orders(n).len()),
        ("posets", true, unlabeled_orders),
        ("frames-monadic", false, bell),
        ("frames-diversity", false, diversity_relations),
        ("frames-bdl", false, |n| orders(n).len()),
        ("frames-dsa", false, dsa_orders),
        ("frames-rdsa", false, rds_orders),
        ("frames-demorgan", false, de_morgan_frames),
        ("frames-possibility", false, |n| 1 << (n * n)),
        ("frames-sufficiency", false, |n| 1 << (n * n)),
    ];
    let mut enumerated = 0;
    for (family, unlabeled, oracle) in &families {
        for n in 1..=4 {
            let ns = n.to_string();
            let mut args = vec!["enumerate", "--family", family, "--n", &ns];
            if *unlabeled {
                args.push("--unlabeled");
            }
            let run = invoke_stable(&args, &mut problems);
            let got = count_line(&run.stdout);
            if run.code != 0 || got != Some(oracle(n)) {
                problems.push(format!("{} gave {got:?}, oracle {}", args.join(" "), oracle(n)));
            }
            if n <= 3 {
                let text = String::from_utf8_lossy(&run.stdout);
                if let Err(e) = load(&text) {
                    problems.push(format!("{} output does not parse: {e}", args.join(" ")));
                }
            }
            enumerated += 1;
        }
    }

    // print-parse closure and stable output on the corpus
    let files = corpus();
    if files.len() != 20 {
        problems.push(format!("corpus has {} files, expected 20", files.len()));
    }
    let mut constructions = 0;
    for path in &files {
        let p = path.to_str().expect("utf-8 path");
        let text = std::fs::read_to_string(path).expect("read");
        let expected: i32 = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# expect: exit "))
            .and_then(|c| c.trim().parse().ok())
            .expect("corpus files start with an expected exit code");
        let (doc, model) = match load(&text) {
            Ok(x) => x,
            Err(e) => {
                problems.push(format!("{p}: {e}"));
                continue;
            }
        };
        let printed = print_document(&doc);
        // parse after print is the identity on the canonical form
        let canon = parse_document(&printed).ok();
        let back = canon.as_ref().and_then(|c| parse_document(&print_document(c)).ok());
        match (canon, back) {
            (Some(c), Some(b)) if c == b && print_document(&c) == printed => {}
            _ => problems.push(format!("{p}: canonical form does not reparse to itself")),
        }
        for format in ["text", "machine"] {
            let run = invoke_stable(&["--format", format, "check", p], &mut problems);
            if run.code != expected {
                problems.push(format!("{p}: check exited {} in {format} mode, expected {expected}", run.code));
            }
        }
        for d in &doc.declarations {
            let (cmd, name) = match d {
                Decl::Frame(f) => ("cm", &f.name.value),
                Decl::Algebra(a) => ("cs", &a.name.value),
                _ => continue,
            };
            let entity = model.get(name).expect("declared");
            let kind = entity.kind().expect("typed");
            let legal = match entity {
                Entity::Frame { frame, .. } => frame_conditions(frame, kind).is_ok_and(|r| r.passed()),
                Entity::Algebra(a) => check_kind(a, kind).is_ok_and(|r| r.passed()),
                Entity::Space(_) => false,
            };
            let run = invoke_stable(&[cmd, "--kind", &kind.to_string(), "--name", name, p], &mut problems);
            if !legal {
                if run.code == 0 {
                    problems.push(format!("{p}: {cmd} {name} accepted an ill-formed input"));
                }
                continue;
            }
            let out = String::from_utf8_lossy(&run.stdout).into_owned();
            let reparsed = match load(&out) {
                Ok((d, m)) => (d, m),
                Err(e) => {
                    problems.push(format!("{p}: {cmd} {name} output does not parse: {e}"));
                    continue;
                }
            };
            if print_document(&reparsed.0) != out {
                problems.push(format!("{p}: {cmd} {name} output is not canonical"));
            }
            let passes = match &reparsed.1.entities[0].1 {
                Entity::Algebra(a) => check_kind(a, kind).is_ok_and(|r| r.passed()),
                Entity::Frame { frame, .. } => frame_conditions(frame, kind).is_ok_and(|r| r.passed()),
                Entity::Space(_) => false,
            };
            if !passes {
                problems.push(format!("{p}: {cmd} {name} output fails the {kind} laws"));
            }
            constructions += 1;
        }
    }
    let verify_run = invoke_stable(&["--format", "machine", "verify", "--theorem", "lem:monadic", "--max-n", "4"], &mut problems);
    if verify_run.code != 0 {
        problems.push("verify lem:monadic exited non-zero".into());
    }

    let ok = problems.is_empty();
    let mut detail = format!(
        "infrastructure [{enumerated} enumeration counts; {} corpus files; {constructions} cm/cs outputs reparsed]",
        files.len()
    );
    for p in problems.iter().take(5) {
        detail.push_str(&format!("\n    {p}"));
    }
    Line { ok, detail }
}

fn main() {
    let criteria: [(fn() -> Line, u64); 13] = [
        (criterion_1, 30),
        (criterion_2, 10),
        (criterion_3, 30),
        (criterion_4, 60),
        (criterion_5, 60),
        (criterion_6, 30),
        (criterion_7, 60),
        (criterion_8, 30),
        (criterion_9, 60),
        (criterion_10, 60),
        (criterion_11, 180),
        (criterion_12, 10),
        (criterion_13, 60),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let ok = line.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} ({:.2}s, limit {limit}s{})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            line.detail,
            took.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("acceptance: {} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
