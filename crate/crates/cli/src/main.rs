//! `polyadic`: validate n-ary groups and inverse systems, build derived
//! forms and Post covers, and compute exact Haar measures of cylinder sets.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! construction is impossible, 2 for unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use polyadic::doc::{self, CylinderDoc, Document, FiniteGroupDoc, GroupDoc, PresentationDoc};
use polyadic::measure::{run_haar_suite, HaarContext, HaarSuiteConfig};
use polyadic::report::all_passed;
use polyadic::{
    build_post_cover, recover, verify_cover_properties, CheckConfig, Error, FiniteNaryGroup,
    HGPresentation, InverseSystem, RecoverConfig, VerificationReport, Witness,
};

#[derive(Parser)]
#[command(name = "polyadic", version, about = "Finite and profinite n-ary groups and their Haar measures")]
struct Cli {
    /// Emit machine-readable JSON reports
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest instance count an exhaustive check may enumerate
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,

    /// check-haar enumerates all top-level subsets when |top| <= depth
    #[arg(long, global = true, default_value_t = 16)]
    depth: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check on a group, presentation or system document
    Validate { path: PathBuf },
    /// Tabulate the n-ary group derived from a presentation
    Derive { path: PathBuf },
    /// Find a presentation of an n-ary group over the retract at a base point
    Recover {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
    /// The retract x.y = f(x, a, ..., a, y) over a base point a
    Retract {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
    /// The Post cover of a presented group (table groups are recovered first)
    PostCover {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
    /// m_p, m and m* of one cylinder set, with the identity verdict
    Measure {
        path: PathBuf,
        /// Cylinder as JSON: {"level": id, "subset": [..]}
        #[arg(long)]
        cylinder: String,
        /// Top-level element whose thread is the retract base point
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
    /// Identity, translation and automorphism suites over top-level subsets
    CheckHaar {
        path: PathBuf,
        /// Random subsets drawn when the top level is too large to enumerate
        #[arg(long, default_value_t = 4096)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
}

enum Failure {
    Input(String),
    Check(Vec<VerificationReport>),
    Construction(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Construction(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = CheckConfig {
        budget: cli.budget,
        seed: cli.seed,
        ..CheckConfig::default()
    };
    match run(&cli, &cfg) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(reports)) => {
            print!("{}", render(&reports, cli.json));
            ExitCode::from(1)
        }
        Err(Failure::Construction(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, cfg: &CheckConfig) -> Outcome {
    match &cli.command {
        Command::Validate { path } => validate(&read(path)?, cfg, cli.json),
        Command::Derive { path } => {
            let p = presentation_of(&read(path)?)?;
            let g = p.derive()?;
            Ok(doc::to_json(&GroupDoc::table_of(&g)?))
        }
        Command::Recover { path, base_point } => {
            let g = group_of(&read(path)?)?;
            let rcfg = RecoverConfig {
                check: *cfg,
                ..RecoverConfig::default()
            };
            let p = recover(&g, *base_point, &rcfg)?;
            Ok(doc::to_json(&PresentationDoc::from_presentation(&p)))
        }
        Command::Retract { path, base_point } => {
            let g = group_of(&read(path)?)?;
            Ok(doc::to_json(&FiniteGroupDoc::from_group(&g.retract(*base_point)?)))
        }
        Command::PostCover { path, base_point } => {
            let p = match read(path)? {
                Document::Group(GroupDoc::Table(t)) => {
                    let g = GroupDoc::Table(t).to_group()?;
                    let rcfg = RecoverConfig {
                        check: *cfg,
                        ..RecoverConfig::default()
                    };
                    recover(&g, *base_point, &rcfg)?
                }
                other => presentation_of(&other)?,
            };
            Ok(doc::to_json(&FiniteGroupDoc::from_cover(&build_post_cover(&p)?)))
        }
        Command::Measure {
            path,
            cylinder,
            base_point,
        } => {
            let system = system_of(&read(path)?, cfg)?;
            let cyl: CylinderDoc = serde_json::from_str(cylinder)
                .map_err(|e| Failure::Input(format!("cylinder: {e}")))?;
            let cyl = cyl.to_cylinder(&system).map_err(|e| Failure::Input(e.to_string()))?;
            let ctx = HaarContext::new(&system, system.thread_from_top(*base_point)?)?;
            let (measures, report) = ctx.check_haar_identity(&cyl);
            let out = if cli.json {
                doc::to_json(&measures)
            } else {
                format!(
                    "m_p = {}\nm   = {}\nm*  = {}\nidentity m_p = m = (n-1) m*: {}\n",
                    measures.m_p,
                    measures.m,
                    measures.m_star,
                    if measures.identity_holds { "holds" } else { "FAILS" }
                )
            };
            if report.failed() {
                print!("{out}");
                return Err(Failure::Check(vec![report]));
            }
            Ok(out)
        }
        Command::CheckHaar {
            path,
            samples,
            base_point,
        } => {
            let system = system_of(&read(path)?, cfg)?;
            let ctx = HaarContext::new(&system, system.thread_from_top(*base_point)?)?;
            let suite = HaarSuiteConfig {
                max_exhaustive_bits: cli.depth,
                samples: *samples,
                seed: cli.seed,
                ..HaarSuiteConfig::default()
            };
            let reports = run_haar_suite(&ctx, &suite)?;
            finish(reports, cli.json)
        }
    }
}

fn read(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn presentation_of(d: &Document) -> Result<HGPresentation, Failure> {
    match d {
        Document::Presentation(p) => Ok(p.to_presentation()?),
        Document::Group(GroupDoc::Presented(g)) => Ok(g.presentation.to_presentation()?),
        _ => Err(Failure::Input("expected a presentation document".into())),
    }
}

fn group_of(d: &Document) -> Result<FiniteNaryGroup, Failure> {
    match d {
        Document::Group(g) => Ok(g.to_group()?),
        Document::Presentation(p) => Ok(p.to_presentation()?.derive()?),
        Document::System(_) => Err(Failure::Input("expected a group document".into())),
    }
}

/// Parses and validates a system; any failed check aborts with exit 1.
fn system_of(d: &Document, cfg: &CheckConfig) -> Result<InverseSystem, Failure> {
    let Document::System(s) = d else {
        return Err(Failure::Input("expected a system document".into()));
    };
    let mut system = s.to_system()?;
    let reports = system.verify(cfg);
    if !all_passed(&reports) {
        return Err(Failure::Check(reports));
    }
    Ok(system)
}

fn error_report(subject: &str, check: &str, e: &Error) -> VerificationReport {
    let mut r = VerificationReport::new(subject, check);
    let values = match e {
        Error::GroupAxiom { witness, .. } => witness.clone(),
        _ => vec![],
    };
    r.record_failure(Witness::new(e.to_string(), values));
    r
}

fn validate(d: &Document, cfg: &CheckConfig, json: bool) -> Outcome {
    let mut reports = Vec::new();
    match d {
        Document::Group(GroupDoc::Table(_)) => {
            let mut g = group_of(d)?;
            reports.extend(g.verify(cfg)?);
        }
        Document::Group(GroupDoc::Presented(_)) | Document::Presentation(_) => {
            let p = match presentation_of(d) {
                Ok(p) => p,
                Err(Failure::Construction(_)) => {
                    let base = match d {
                        Document::Presentation(p) => &p.base,
                        Document::Group(GroupDoc::Presented(g)) => &g.presentation.base,
                        _ => unreachable!(),
                    };
                    let e = base.to_group().expect_err("construction failed on the base");
                    reports.push(error_report("presentation base", "group axioms", &e));
                    return finish(reports, json);
                }
                Err(other) => return Err(other),
            };
            let v = p.validate();
            let valid = v.passed();
            reports.push(v);
            if valid {
                let cover = build_post_cover(&p)?;
                let mut g = p.derive()?;
                reports.extend(g.verify(cfg)?);
                reports.extend(verify_cover_properties(&cover, &g, cfg));
            }
        }
        Document::System(s) => match s.to_system() {
            Ok(system) => {
                reports.extend(system.validate(cfg));
                if let Err(e) = system.induced_cover_system() {
                    reports.push(error_report("inverse system", "presentation compatibility", &e));
                }
            }
            Err(e) if e.is_input_error() || matches!(e, Error::System(_) | Error::Index(_)) => {
                return Err(Failure::Input(e.to_string()));
            }
            Err(e) => reports.push(error_report("inverse system", "levels", &e)),
        },
    }
    finish(reports, json)
}

fn finish(reports: Vec<VerificationReport>, json: bool) -> Outcome {
    if all_passed(&reports) {
        Ok(render(&reports, json))
    } else {
        Err(Failure::Check(reports))
    }
}

#[derive(Serialize)]
struct ReportSet<'a> {
    passed: bool,
    reports: &'a [VerificationReport],
}

fn render(reports: &[VerificationReport], json: bool) -> String {
    let passed = all_passed(reports);
    if json {
        return doc::to_json(&ReportSet { passed, reports });
    }
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| r.failed()).count();
    if passed {
        out.push_str(&format!("ok: {} checks passed\n", reports.len()));
    } else {
        out.push_str(&format!("FAILED: {failed} of {} checks\n", reports.len()));
    }
    out
}
