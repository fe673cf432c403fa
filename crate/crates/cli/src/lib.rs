//! Command-line driver: binds `.dua` documents to the engine.
//!
//! [`run`] never touches the process streams; it returns what should be
//! written to stdout and stderr together with the exit status, which keeps the
//! binary trivial and the behaviour testable in-process.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use dualitykit::algebra::{check_kind, AlgebraKind};
use dualitykit::approx::{approximations, build_rough_set_algebra};
use dualitykit::duality::{cm, cs, frame_conditions, roundtrip_algebra, roundtrip_frame, DualityError};
use dualitykit::enumerate::{enumerate, verify_theorem, Ceilings, EnumerationRequest, Family, Structure};
use dualitykit::pointset::PointSet;
use dualitykit::report::{CheckReport, DualityRoundtripReport};
use dualitykit::speclang::{
    escape, load, print_algebra, print_frame, print_space, render_report, Command as Run, Elem, Entity, Format, Model,
    Renderable,
};
use dualitykit::Frame;

pub const CEILING_VAR: &str = "DUALITYKIT_CEILING";

/// Process exit status; higher values win when combining results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Alarm = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of_report(r: &CheckReport) -> Exit {
        if r.has_alarm() {
            Exit::Alarm
        } else if r.passed() {
            Exit::Pass
        } else {
            Exit::Fail
        }
    }

    /// Usage errors dominate everything else: the run did not happen.
    fn combine(self, other: Exit) -> Exit {
        if self == Exit::Usage || other == Exit::Usage {
            Exit::Usage
        } else {
            self.max(other)
        }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: Option<Exit>,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.exit.unwrap_or(Exit::Pass).code()
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), exit: Some(Exit::Usage) }
    }
}

fn parse_kind(s: &str) -> Result<AlgebraKind, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: dualitykit::enumerate::EnumerateError| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "dualitykit", version, about = "Discrete dualities for rough-set and modal algebras")]
struct Cli {
    /// Output format: text or machine.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run every check declaration of a document.
    Check { file: PathBuf },
    /// Print the complex algebra of a declared frame.
    Cm {
        #[arg(long, value_parser = parse_kind)]
        kind: AlgebraKind,
        #[arg(long)]
        name: String,
        file: PathBuf,
    },
    /// Print the canonical frame of a declared algebra.
    Cs {
        #[arg(long, value_parser = parse_kind)]
        kind: AlgebraKind,
        #[arg(long)]
        name: String,
        file: PathBuf,
    },
    /// Run both representation roundtrips for a declared structure.
    Roundtrip {
        #[arg(long, value_parser = parse_kind)]
        kind: AlgebraKind,
        #[arg(long)]
        name: String,
        file: PathBuf,
    },
    /// Print the lower and upper approximation of a subset.
    Approx {
        #[arg(long)]
        space: String,
        #[arg(long)]
        set: String,
        file: PathBuf,
    },
    /// Print every structure of a family in canonical form.
    Enumerate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Posets up to isomorphism instead of labeled.
        #[arg(long)]
        unlabeled: bool,
    },
    /// Exhaustively verify a theorem on all small structures.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long = "max-n")]
        max_n: usize,
    },
}

/// Parses `args` (including the program name) and executes the command.
/// `ceiling` is the value of the ceiling override, if set.
pub fn run<I, T>(args: I, ceiling: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, exit: Some(Exit::Usage) }
            } else {
                Outcome { stdout: text, stderr: String::new(), exit: Some(Exit::Pass) }
            };
        }
    };
    let ceilings = match ceiling {
        None => Ceilings::default(),
        Some(v) => match v.trim().parse() {
            Ok(c) => Ceilings::uniform(c),
            Err(_) => return Outcome::usage(format!("{CEILING_VAR} must be a natural number, got `{v}`")),
        },
    };
    let format = cli.format;
    match cli.command {
        Cmd::Check { file } => with_model(&file, |m| check(m, format)),
        Cmd::Cm { kind, name, file } => with_model(&file, |m| construct_cm(m, &name, kind, format)),
        Cmd::Cs { kind, name, file } => with_model(&file, |m| construct_cs(m, &name, kind, format)),
        Cmd::Roundtrip { kind, name, file } => with_model(&file, |m| roundtrip(m, &name, kind, format)),
        Cmd::Approx { space, set, file } => with_model(&file, |m| approx(m, &space, &set, format)),
        Cmd::Enumerate { family, n, unlabeled } => {
            enumerate_cmd(EnumerationRequest { family, size: n, labeled: !unlabeled }, &ceilings, format)
        }
        Cmd::Verify { theorem, max_n } => verify(&theorem, max_n, &ceilings, format),
    }
}

fn with_model(path: &Path, body: impl FnOnce(&Model) -> Outcome) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Outcome::usage(format!("{}: no such file", path.display()))
        }
        Err(e) => return Outcome::usage(format!("{}: {e}", path.display())),
    };
    match load(&text) {
        Ok((_, model)) => body(&model),
        Err(e) => Outcome::usage(format!("{}:{e} [{}]", path.display(), e.code())),
    }
}

/// A report standing for a construction that could not run.
fn failed_report(name: &str, law: &str, err: &DualityError) -> CheckReport {
    let mut r = CheckReport::new(name);
    match err {
        e if e.is_alarm() => r.alarms.push(e.to_string()),
        DualityError::FrameInvariant { law, witness } | DualityError::Precondition { law, witness, .. } => {
            r.record(law, 0, Some(witness.clone()))
        }
        _ => r.record(law, 0, Some(vec![("error".into(), err.to_string())])),
    }
    r
}

fn renamed(mut r: CheckReport, name: &str) -> CheckReport {
    r.name = name.to_string();
    r
}

enum Item {
    Check(CheckReport),
    Roundtrip(DualityRoundtripReport),
}

impl Item {
    fn exit(&self) -> Exit {
        match self {
            Item::Check(r) => Exit::of_report(r),
            Item::Roundtrip(r) => Exit::of_report(&r.embedding),
        }
    }

    fn render(&self, format: Format) -> String {
        match self {
            Item::Check(r) => render_report(Renderable::Check(r), format),
            Item::Roundtrip(r) => render_report(Renderable::Roundtrip(r), format),
        }
    }
}

fn run_check(command: Run, entity: &Entity, kind: Option<AlgebraKind>, label: &str) -> Item {
    let kind = kind.or(entity.kind());
    let dual = |r: Result<CheckReport, DualityError>, law: &str| match r {
        Ok(r) => Item::Check(renamed(r, label)),
        Err(e) => Item::Check(failed_report(label, law, &e)),
    };
    match (command, entity, kind) {
        (Run::Approx, Entity::Space(s), _) => {
            let (a, _) = build_rough_set_algebra(s);
            dual(check_kind(&a, AlgebraKind::Rdsa).map_err(DualityError::from), "approx.signature")
        }
        (Run::Axioms, Entity::Frame { frame, .. }, Some(k)) => dual(frame_conditions(frame, k), "axioms.kind"),
        (Run::Axioms, Entity::Algebra(a), Some(k)) => {
            dual(check_kind(a, k).map_err(DualityError::from), "axioms.signature")
        }
        (Run::Cm, Entity::Frame { frame, .. }, Some(k)) => dual(
            cm(frame, k).and_then(|c| check_kind(&c.algebra, k).map_err(DualityError::from)),
            "cm.precondition",
        ),
        (Run::Cs, Entity::Algebra(a), Some(k)) => {
            dual(cs(a, k).and_then(|c| frame_conditions(&c.frame, k)), "cs.precondition")
        }
        (Run::RoundtripAlgebra, Entity::Algebra(a), Some(k)) => match roundtrip_algebra(a, k) {
            Ok(r) => Item::Roundtrip(DualityRoundtripReport { name: label.into(), ..r }),
            Err(e) => Item::Check(failed_report(label, "roundtrip-algebra.precondition", &e)),
        },
        (Run::RoundtripFrame, Entity::Frame { frame, .. }, Some(k)) => match roundtrip_frame(frame, k) {
            Ok(r) => Item::Roundtrip(DualityRoundtripReport { name: label.into(), ..r }),
            Err(e) => Item::Check(failed_report(label, "roundtrip-frame.precondition", &e)),
        },
        // Elaboration already rejects ill-typed targets.
        _ => Item::Check(failed_report(
            label,
            "check.target",
            &DualityError::KindMismatch(format!("command {command} does not apply to {}", entity.describe())),
        )),
    }
}

fn check(model: &Model, format: Format) -> Outcome {
    let mut out = Outcome { exit: Some(Exit::Pass), ..Outcome::default() };
    for c in &model.checks {
        for t in &c.on {
            let entity = model.get(&t.value).expect("elaboration resolves targets");
            let label = format!("{}/{}", c.name.value, t.value);
            let item = run_check(c.command.value, entity, c.kind.as_ref().map(|k| k.value), &label);
            out.exit = Some(out.exit.unwrap_or(Exit::Pass).combine(item.exit()));
            out.stdout.push_str(&item.render(format));
        }
    }
    if model.checks.is_empty() {
        out.stderr.push_str("warning: document declares no checks\n");
    }
    out
}

fn lookup<'m>(model: &'m Model, name: &str) -> Result<&'m Entity, Outcome> {
    model.get(name).ok_or_else(|| Outcome::usage(format!("no structure named `{name}`")))
}

/// A constructed structure: text mode prints it, machine mode wraps the text.
fn structure_output(record: &str, name: &str, text: String, format: Format) -> String {
    match format {
        Format::Text => text,
        Format::Machine => format!("{record} [\n  name={name}\n  text={}\n]\n", escape(&text)),
    }
}

fn construction_failure(e: DualityError) -> Outcome {
    let exit = if e.is_alarm() { Exit::Alarm } else { Exit::Fail };
    Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), exit: Some(exit) }
}

fn construct_cm(model: &Model, name: &str, kind: AlgebraKind, format: Format) -> Outcome {
    let frame = match lookup(model, name) {
        Ok(Entity::Frame { frame, .. }) => frame,
        Ok(e) => return Outcome::usage(format!("`{name}` is {}, not a frame", e.describe())),
        Err(o) => return o,
    };
    match cm(frame, kind) {
        Ok(c) => {
            let out = format!("{name}_cm");
            Outcome {
                stdout: structure_output("algebra", &out, print_algebra(&out, &c.algebra), format),
                stderr: String::new(),
                exit: Some(Exit::Pass),
            }
        }
        Err(e) => construction_failure(e),
    }
}

fn construct_cs(model: &Model, name: &str, kind: AlgebraKind, format: Format) -> Outcome {
    let a = match lookup(model, name) {
        Ok(Entity::Algebra(a)) => a,
        Ok(e) => return Outcome::usage(format!("`{name}` is {}, not an algebra", e.describe())),
        Err(o) => return o,
    };
    match cs(a, kind) {
        Ok(c) => {
            let out = format!("{name}_cs");
            Outcome {
                stdout: structure_output("frame", &out, print_frame(&out, kind, &c.frame), format),
                stderr: String::new(),
                exit: Some(Exit::Pass),
            }
        }
        Err(e) => construction_failure(e),
    }
}

fn roundtrip(model: &Model, name: &str, kind: AlgebraKind, format: Format) -> Outcome {
    let reports = match lookup(model, name) {
        Ok(Entity::Frame { frame, .. }) => roundtrip_frame(frame, kind).and_then(|f| {
            let a = cm(frame, kind)?.algebra;
            Ok([f, roundtrip_algebra(&a, kind)?])
        }),
        Ok(Entity::Algebra(a)) => roundtrip_algebra(a, kind).and_then(|r| {
            let fr = cs(a, kind)?.frame;
            Ok([r, roundtrip_frame(&fr, kind)?])
        }),
        Ok(e) => return Outcome::usage(format!("`{name}` is {}, not a frame or algebra", e.describe())),
        Err(o) => return o,
    };
    match reports {
        Ok(rs) => {
            let mut out = Outcome { exit: Some(Exit::Pass), ..Outcome::default() };
            for r in &rs {
                out.exit = Some(out.exit.unwrap_or(Exit::Pass).combine(Exit::of_report(&r.embedding)));
                out.stdout.push_str(&render_report(Renderable::Roundtrip(r), format));
            }
            out
        }
        Err(e) => construction_failure(e),
    }
}

fn approx(model: &Model, space: &str, set: &str, format: Format) -> Outcome {
    let s = match lookup(model, space) {
        Ok(Entity::Space(s)) => s,
        Ok(e) => return Outcome::usage(format!("`{space}` is {}, not a space", e.describe())),
        Err(o) => return o,
    };
    let members = match dualitykit::speclang::parse_elem(set) {
        Ok(Elem::Set(items)) => items,
        Ok(_) => return Outcome::usage(format!("--set expects a set literal such as {{1,2}}, got `{set}`")),
        Err(e) => return Outcome::usage(format!("--set: {e}")),
    };
    let mut y = PointSet::EMPTY;
    for m in &members {
        let label = m.label();
        match s.labels().iter().position(|l| *l == label) {
            Some(i) => y.insert(i),
            None => return Outcome::usage(format!("--set: element `{label}` not in the universe of `{space}`")),
        }
    }
    let r = approximations(s, y).expect("subset of the universe");
    let (lower, upper) = (s.set_label(r.lower), s.set_label(r.upper));
    let stdout = match format {
        Format::Text => format!("({lower}, {upper})\n"),
        Format::Machine => format!(
            "approx [\n  space={space}\n  set={}\n  lower={lower}\n  upper={upper}\n]\n",
            s.set_label(y)
        ),
    };
    Outcome { stdout, stderr: String::new(), exit: Some(Exit::Pass) }
}

fn enumerate_cmd(req: EnumerationRequest, ceilings: &Ceilings, format: Format) -> Outcome {
    let structures = match enumerate(req, ceilings) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let texts: Vec<String> = structures
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Structure::Space(sp) => print_space(&format!("s{}", i + 1), sp),
            Structure::Poset(p) => print_frame(&format!("p{}", i + 1), AlgebraKind::Bdl, &Frame::Ordered(p.clone())),
            Structure::Frame(f) => {
                let kind = match req.family {
                    Family::Frames(k) => k,
                    _ => unreachable!("frames come from a frame family"),
                };
                print_frame(&format!("f{}", i + 1), kind, f)
            }
        })
        .collect();
    let mut stdout = String::new();
    match format {
        Format::Text => {
            for t in &texts {
                stdout.push_str(t);
                stdout.push('\n');
            }
            let _ = writeln!(stdout, "# count={}", texts.len());
        }
        Format::Machine => {
            let _ = writeln!(stdout, "enumeration [");
            let _ = writeln!(stdout, "  family={}", req.family);
            let _ = writeln!(stdout, "  n={}", req.size);
            let _ = writeln!(stdout, "  labeled={}", req.labeled);
            let _ = writeln!(stdout, "  count={}", texts.len());
            for (i, t) in texts.iter().enumerate() {
                let _ = writeln!(stdout, "  structure [\n    index={}\n    text={}\n  ]", i + 1, escape(t));
            }
            let _ = writeln!(stdout, "]");
        }
    }
    Outcome { stdout, stderr: String::new(), exit: Some(Exit::Pass) }
}

fn verify(theorem: &str, max_n: usize, ceilings: &Ceilings, format: Format) -> Outcome {
    let start = Instant::now();
    let summary = match verify_theorem(theorem, max_n, ceilings) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let exit = if summary.alarms() > 0 {
        Exit::Alarm
    } else if summary.failed() > 0 {
        Exit::Fail
    } else {
        Exit::Pass
    };
    Outcome {
        stdout: render_report(Renderable::Summary(&summary), format),
        stderr: format!("wall time {:.2}s\n", start.elapsed().as_secs_f64()),
        exit: Some(exit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_precedence() {
        assert_eq!(Exit::Pass.combine(Exit::Fail), Exit::Fail);
        assert_eq!(Exit::Fail.combine(Exit::Alarm), Exit::Alarm);
        assert_eq!(Exit::Alarm.combine(Exit::Usage), Exit::Usage);
        assert_eq!(Exit::Pass.combine(Exit::Pass), Exit::Pass);
    }

    #[test]
    fn alarms_become_exit_three() {
        let r = failed_report("x", "law", &DualityError::Alarm("h is not a homomorphism".into()));
        assert_eq!(Exit::of_report(&r), Exit::Alarm);
        let r = failed_report("x", "law", &DualityError::NotClosed("comp".into()));
        assert_eq!(Exit::of_report(&r), Exit::Fail);
        assert_eq!(r.violations[0].law, "law");
    }
}
