//! Command-line front end. [`run`] parses arguments, runs one pipeline stage
//! and returns the exit code together with everything that should be written
//! to standard output and standard error.
//!
//! Exit codes: 0 definite answer, 2 definite negative, 3 inconclusive,
//! 1 usage, I/O or parse error.

pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::groebner::{buchberger, is_pbw_deformation, PbwVerdict, Status};
use crate::homog::{homogenize_presentation, specialize_presentation, Specialization};
use crate::hopf::{classify, classify_family, HopfFlags, HopfReport};
use crate::linalg::Matrix;
use crate::nakayama::{build_skew_extension, is_calabi_yau, jordan_structure, lift_nakayama, NakayamaError};
use crate::parser::{parse_presentation, render_matrix, PresentationSource};
use crate::presentation::Presentation;
use crate::AffineMap;
use report::{
    FamilyOut, GbOut, JordanOut, LiftOut, Outcome, PbwOut, PresentationOut, Report, SkewOut, SolutionOut,
    Timing,
};

#[derive(Debug, Parser)]
#[command(name = "filtered-nakayama", version, about = "Nakayama automorphisms of PBW deformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation degree for Gröbner computations (default 2·maxdeg+2).
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the timing field.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpecializeArg {
    /// t = 1, recovering the filtered algebra
    One,
    /// t = 0, recovering the associated graded algebra
    Zero,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Truncated Gröbner basis of the relations.
    Gb { file: PathBuf },
    /// Checks that FILE_U is a PBW deformation of the graded FILE_A.
    CheckPbw { file_a: PathBuf, file_u: PathBuf },
    /// Homogenizes with a central t, optionally specializing back.
    Homogenize {
        file: PathBuf,
        #[arg(long, value_enum)]
        specialize: Option<SpecializeArg>,
    },
    /// Lifts the file's graded_nakayama matrix to the filtered algebra.
    Nakayama { file: PathBuf },
    /// Builds U[z; μ] from the computed lift and checks its Nakayama map.
    SkewExt { file: PathBuf },
    /// Classifies Hopf actions from the lift and the relation shapes.
    ClassifyHopf {
        file: PathBuf,
        #[arg(long)]
        assume_semisimple: bool,
        #[arg(long)]
        assume_trivial_hdet: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::CheckPbw { .. } => "check-pbw",
            Command::Homogenize { .. } => "homogenize",
            Command::Nakayama { .. } => "nakayama",
            Command::SkewExt { .. } => "skew-ext",
            Command::ClassifyHopf { .. } => "classify-hopf",
        }
    }

    fn files(&self) -> Vec<&Path> {
        match self {
            Command::CheckPbw { file_a, file_u } => vec![file_a, file_u],
            Command::Gb { file }
            | Command::Homogenize { file, .. }
            | Command::Nakayama { file }
            | Command::SkewExt { file }
            | Command::ClassifyHopf { file, .. } => vec![file],
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Invocation {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Invocation {
            code: 1,
            stdout: String::new(),
            stderr,
        }
    }
}

struct Input {
    source: PresentationSource,
    presentation: Presentation,
}

fn load(path: &Path) -> Result<(Input, Vec<u8>), String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| format!("{}: not valid UTF-8", path.display()))?;
    let source = parse_presentation(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    let presentation = source.presentation();
    Ok((Input { source, presentation }, bytes))
}

fn digest(contents: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for (k, c) in contents.iter().enumerate() {
        if k > 0 {
            h.update([0u8]);
        }
        h.update(c);
    }
    h.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Invocation {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Invocation::usage(rendered),
            };
        }
    };
    let start = Instant::now();
    let mut inputs = Vec::new();
    let mut contents = Vec::new();
    for path in cli.command.files() {
        match load(path) {
            Ok((i, b)) => {
                inputs.push(i);
                contents.push(b);
            }
            Err(msg) => return Invocation::usage(msg),
        }
    }
    let arguments = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut report = Report::new(cli.command.name(), arguments, digest(&contents));
    let bound = |i: &Input| {
        cli.degree_bound
            .or(i.source.degree_bound())
            .unwrap_or_else(|| i.presentation.default_degree_bound())
    };

    let result = match &cli.command {
        Command::Gb { .. } => cmd_gb(&inputs[0], bound(&inputs[0]), &mut report),
        Command::CheckPbw { .. } => cmd_check_pbw(&inputs[0], &inputs[1], bound(&inputs[1]), &mut report),
        Command::Homogenize { specialize, .. } => cmd_homogenize(&inputs[0], *specialize, &mut report),
        Command::Nakayama { .. } => cmd_nakayama(&inputs[0], bound(&inputs[0]), &mut report).map(|_| ()),
        Command::SkewExt { .. } => cmd_skew_ext(&inputs[0], bound(&inputs[0]), &mut report),
        Command::ClassifyHopf {
            assume_semisimple,
            assume_trivial_hdet,
            ..
        } => {
            let flags = HopfFlags {
                assume_semisimple: *assume_semisimple,
                assume_trivial_hdet: *assume_trivial_hdet,
            };
            cmd_classify(&inputs[0], bound(&inputs[0]), flags, &mut report)
        }
    };
    if let Err(msg) = result {
        return Invocation::usage(msg);
    }
    if !cli.quiet {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    let stdout = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            report.debug = None;
            render_text(&report)
        }
    };
    Invocation {
        code: report.outcome.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

fn cmd_gb(input: &Input, bound: usize, report: &mut Report) -> Result<(), String> {
    let basis = buchberger(&input.presentation.relations, bound).map_err(|e| e.to_string())?;
    report.gb = Some(GbOut::new(&basis));
    report.add_gb_elements(&basis, &input.presentation.alphabet);
    if basis.status() == Status::Truncated {
        report.outcome = Outcome::Inconclusive;
        report.message = Some(format!("completion not reached within degree {bound}"));
    }
    Ok(())
}

fn cmd_check_pbw(a: &Input, u: &Input, bound: usize, report: &mut Report) -> Result<(), String> {
    let r = is_pbw_deformation(&a.presentation, &u.presentation, bound).map_err(|e| e.to_string())?;
    report.gb = Some(GbOut::new(&r.deformed_basis));
    report.add_gb_elements(&r.deformed_basis, &u.presentation.alphabet);
    report.outcome = match r.verdict {
        PbwVerdict::Verified => Outcome::Success,
        PbwVerdict::Refuted => Outcome::Negative,
        PbwVerdict::Inconclusive => Outcome::Inconclusive,
    };
    report.pbw = Some(PbwOut::new(&r));
    Ok(())
}

fn cmd_homogenize(input: &Input, mode: Option<SpecializeArg>, report: &mut Report) -> Result<(), String> {
    let h = homogenize_presentation(&input.presentation).map_err(|e| e.to_string())?;
    let out = match mode {
        None => h.base.clone(),
        Some(m) => {
            let mode = match m {
                SpecializeArg::One => Specialization::TToOne,
                SpecializeArg::Zero => Specialization::TToZero,
            };
            specialize_presentation(&h, mode).map_err(|e| e.to_string())?
        }
    };
    report.homogenized = Some(PresentationOut::new(&out));
    Ok(())
}

fn graded_matrix(input: &Input) -> Result<&Matrix, String> {
    input
        .source
        .graded_nakayama
        .as_ref()
        .ok_or_else(|| "input has no graded_nakayama block".to_string())
}

/// What the lift stage produced, for downstream stages.
enum Lifted {
    Unique(AffineMap),
    Several(Vec<AffineMap>),
    Family(crate::nakayama::AffineFamily),
    Failed,
}

fn cmd_nakayama(input: &Input, bound: usize, report: &mut Report) -> Result<Lifted, String> {
    let m = graded_matrix(input)?;
    let u = &input.presentation;
    report.jordan = Some(JordanOut::new(&jordan_structure(m)));
    let (lift, lifted) = lift_stage(u, m, bound, report)?;
    report.lift = Some(lift);
    Ok(lifted)
}

/// Runs the lift and records it; sets the outcome for negative and
/// inconclusive results. Input errors come back as `Err`.
fn lift_stage(u: &Presentation, m: &Matrix, bound: usize, report: &mut Report) -> Result<(LiftOut, Lifted), String> {
    let mut out = LiftOut::empty(m);
    match lift_nakayama(u, m, bound) {
        Ok(r) => {
            report.add_residual_system(&r.system, &u.alphabet);
            out.method = Some(r.method);
            out.solutions = r.solutions.iter().map(|phi| SolutionOut::new(phi, &u.alphabet)).collect();
            out.calabi_yau = Some(r.solutions.len() == 1 && is_calabi_yau(&r.solutions[0]));
            out.irrational_factors = r.irrational_factors.iter().map(|f| f.render("x")).collect();
            let lifted = if r.solutions.len() == 1 {
                Lifted::Unique(r.solutions[0].clone())
            } else {
                Lifted::Several(r.solutions)
            };
            Ok((out, lifted))
        }
        Err(e) => {
            let lifted = match e {
                NakayamaError::NotGradedAutomorphism => {
                    report.outcome = Outcome::Negative;
                    Lifted::Failed
                }
                NakayamaError::NoRationalSolution {
                    ref eliminant,
                    ref irrational_factors,
                } => {
                    report.outcome = Outcome::Negative;
                    out.eliminant = eliminant.as_ref().map(|p| p.render("x"));
                    out.irrational_factors = irrational_factors.iter().map(|f| f.render("x")).collect();
                    Lifted::Failed
                }
                NakayamaError::PositiveDimensional {
                    ref free,
                    ref family,
                    ref system,
                } => {
                    report.outcome = Outcome::Inconclusive;
                    report.add_residual_system(system, &u.alphabet);
                    out.free = free.clone();
                    out.family = family.as_ref().map(FamilyOut::new);
                    family.clone().map_or(Lifted::Failed, Lifted::Family)
                }
                NakayamaError::Truncated { .. } | NakayamaError::VerificationFailed => {
                    report.outcome = Outcome::Inconclusive;
                    Lifted::Failed
                }
                other => return Err(other.to_string()),
            };
            report.message = Some(e.to_string());
            Ok((out, lifted))
        }
    }
}

fn cmd_skew_ext(input: &Input, bound: usize, report: &mut Report) -> Result<(), String> {
    let phi = match cmd_nakayama(input, bound, report)? {
        Lifted::Unique(phi) => phi,
        Lifted::Several(_) => {
            report.outcome = Outcome::Inconclusive;
            report.message = Some("lift is not unique; no extension built".into());
            return Ok(());
        }
        _ => return Ok(()),
    };
    let ext = build_skew_extension(&input.presentation, &phi).map_err(|e| e.to_string())?;
    let id = Matrix::identity(ext.num_generators());
    let mut sub = Report::new("skew-ext", Vec::new(), String::new());
    let ext_bound = bound.max(ext.max_degree());
    let (identity_lift, _) = lift_stage(&ext, &id, ext_bound, &mut sub)?;
    report.outcome = sub.outcome;
    if sub.message.is_some() {
        report.message = sub.message;
    }
    report.skew_extension = Some(SkewOut {
        presentation: PresentationOut::new(&ext),
        identity_lift,
    });
    Ok(())
}

fn cmd_classify(input: &Input, bound: usize, flags: HopfFlags, report: &mut Report) -> Result<(), String> {
    let m = graded_matrix(input)?.clone();
    let u = &input.presentation;
    let hopf: HopfReport = match cmd_nakayama(input, bound, report)? {
        Lifted::Unique(phi) => classify(u, &phi, flags),
        Lifted::Several(phis) => {
            let reports: Vec<HopfReport> = phis.iter().map(|p| classify(u, p, flags)).collect();
            if reports.windows(2).all(|w| w[0].conclusions == w[1].conclusions) {
                reports.into_iter().next().expect("at least two")
            } else {
                report.outcome = Outcome::Inconclusive;
                report.message = Some("lifts disagree on the classification".into());
                return Ok(());
            }
        }
        Lifted::Family(f) => classify_family(u, &m, &f, flags),
        Lifted::Failed => return Ok(()),
    };
    report.outcome = if hopf.conclusions.is_empty() {
        Outcome::Inconclusive
    } else {
        Outcome::Success
    };
    report.message = None;
    report.hopf = Some(hopf);
    Ok(())
}

fn render_text(r: &Report) -> String {
    // a presentation is emitted as a plain `.alg` file so it can be piped back in
    if let Some(h) = &r.homogenized {
        return h.alg.clone();
    }
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", r.command);
    let _ = writeln!(s, "outcome: {}", serde_plain(&r.outcome));
    if let Some(m) = &r.message {
        let _ = writeln!(s, "message: {m}");
    }
    if let Some(gb) = &r.gb {
        let _ = writeln!(
            s,
            "gb: {} ({} elements, max degree {}, bound {})",
            serde_plain(&gb.status),
            gb.size,
            gb.max_degree,
            gb.degree_bound
        );
    }
    if let Some(p) = &r.pbw {
        let _ = writeln!(s, "pbw: {}", serde_plain(&p.verdict));
    }
    if let Some(j) = &r.jordan {
        let blocks: Vec<String> = j.blocks.iter().map(|b| format!("{}: {:?}", b.eigenvalue, b.blocks)).collect();
        let _ = writeln!(s, "jordan: {} [{}]", j.char_poly, blocks.join(", "));
    }
    if let Some(l) = &r.lift {
        write_lift(&mut s, "lift", l);
    }
    if let Some(x) = &r.skew_extension {
        let _ = writeln!(s, "extension relations:");
        for rel in &x.presentation.relations {
            let _ = writeln!(s, "  {rel}");
        }
        write_lift(&mut s, "extension lift", &x.identity_lift);
    }
    if let Some(h) = &r.hopf {
        let _ = writeln!(s, "hopf case: {}", serde_plain(&h.case));
        let tags: Vec<&str> = h.conclusions.iter().map(|c| c.tag()).collect();
        let _ = writeln!(s, "conclusions: {}", tags.join(", "));
        for g in &h.grouplike_relations {
            let _ = writeln!(s, "  {g}");
        }
        for c in h.failed_checks() {
            let _ = writeln!(s, "failed check: {} ({})", c.name, c.detail);
        }
    }
    if let Some(t) = &r.timing {
        let _ = writeln!(s, "elapsed: {} ms", t.elapsed_ms);
    }
    s
}

fn write_lift(s: &mut String, label: &str, l: &LiftOut) {
    let _ = writeln!(s, "{label} of {}:", render_matrix(&l.graded_matrix));
    for sol in &l.solutions {
        for img in &sol.images {
            let _ = writeln!(s, "  {img}");
        }
    }
    if let Some(cy) = l.calabi_yau {
        let _ = writeln!(s, "  calabi-yau: {cy}");
    }
    if let Some(f) = &l.family {
        let _ = writeln!(s, "  family: {:?} + span {:?}", f.particular, f.directions);
    }
}

fn serde_plain<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
