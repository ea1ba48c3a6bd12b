//! `xcone`: classify, certify, decompose and sample three-qubit X-states.

mod input;
mod report;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use xcone::certify::{
    decompose_constructive, decompose_dictionary, find_state_witness, find_witness_counterstate, verify_decomposition,
};
use xcone::classify::{classify_state, partition_class, witness_profile, SIGNATURE_CONES};
use xcone::criteria::{in_cone, necessary_check_general};
use xcone::extremals::{sample_cone_with_recipes, SampleSpread};
use xcone::{Cone, ConeId, DictionaryConfig, Error, IneqReport64, Tolerance64};

use input::{Document, Subject};
use report::{CertificateReport, CheckedCertificate, ClassifyReport, ConeStatus, DecompositionReport, Role, Status};
use suites::Suite;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "xcone", version, about = "Partial separability of three-qubit X-states")]
struct Cli {
    /// Comparison tolerance.
    #[arg(long, global = true, env = "XCONE_TOL", default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write NDJSON reports to this file (`-` for stdout) instead of a table.
    #[arg(long, value_name = "PATH")]
    json_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Constructive,
    Dictionary,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice profile and class of each input document.
    Classify {
        /// Input files (stdin when omitted or `-`).
        files: Vec<PathBuf>,
        /// Treat inputs as states or as witnesses.
        #[arg(long = "as", value_enum, default_value_t = Role::State)]
        role: Role,
        /// Attach certificates for every failed cone of the signature.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Separating certificate: a witness for a state outside a primal cone,
    /// or a counterstate for a witness outside a dual cone (`dual:` names).
    Witness {
        files: Vec<PathBuf>,
        #[arg(long)]
        cone: ConeId,
        #[command(flatten)]
        output: Output,
    },
    /// Decomposition into extreme rays.
    Decompose {
        files: Vec<PathBuf>,
        #[arg(long)]
        cone: ConeId,
        #[arg(long, value_enum, default_value_t = Method::Constructive)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Random cone members as NDJSON documents with their generator recipe.
    Sample {
        #[arg(long)]
        cone: ConeId,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        json_out: Option<PathBuf>,
    },
    /// Run a property suite; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let eps: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    Tolerance64::new(eps).map(|t| t.eps).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tolerance64 { eps: cli.tol };
    let code = match run(cli.command, &tol) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("xcone: {message}");
            code
        }
    };
    ExitCode::from(code)
}

type Outcome = Result<u8, (u8, String)>;

fn invalid(message: String) -> (u8, String) {
    (INVALID, message)
}

fn run(command: Command, tol: &Tolerance64) -> Outcome {
    match command {
        Command::Classify {
            files,
            role,
            certify,
            output,
        } => {
            let docs = input::load(&files, tol).map_err(invalid)?;
            let reports: Vec<Result<ClassifyReport, String>> =
                docs.par_iter().map(|d| classify(d, role, certify, tol)).collect();
            let mut ok = Vec::with_capacity(reports.len());
            let mut code = OK;
            for r in reports {
                match r {
                    Ok(r) => ok.push(r),
                    Err(e) => {
                        eprintln!("xcone: {e}");
                        code = NEGATIVE;
                    }
                }
            }
            emit(&output, &ok, report::render_classify)?;
            Ok(code)
        }
        Command::Witness { files, cone, output } => {
            let docs = input::load(&files, tol).map_err(invalid)?;
            let reports: Vec<_> = docs.par_iter().map(|d| certificate(d, cone, tol)).collect();
            emit(&output, &reports, report::render_certificate)?;
            Ok(worst(reports.iter().map(|r| r.verified)))
        }
        Command::Decompose {
            files,
            cone,
            method,
            output,
        } => {
            let docs = input::load(&files, tol).map_err(invalid)?;
            if method == Method::Constructive
                && !matches!(cone, ConeId::Primal(Cone::A | Cone::B | Cone::C | Cone::AbcMeet))
            {
                return Err(invalid(format!(
                    "constructive decomposition is available for A, B, C and A^B^C, not {cone}; use --method dictionary"
                )));
            }
            let reports: Vec<_> = docs.par_iter().map(|d| decompose(d, cone, method, tol)).collect();
            emit(&output, &reports, report::render_decomposition)?;
            Ok(worst(reports.iter().map(|r| r.verified)))
        }
        Command::Sample {
            cone,
            count,
            seed,
            json_out,
        } => {
            let samples = sample_cone_with_recipes::<f64>(cone, count, seed, &SampleSpread::default());
            let lines: Vec<_> = samples
                .into_iter()
                .enumerate()
                .map(|(k, s)| {
                    json!({
                        "label": format!("{cone}#{}", k + 1),
                        "cone": cone.to_string(),
                        "x": s.matrix,
                        "recipe": s.recipe,
                    })
                })
                .collect();
            write_ndjson(json_out.as_deref().unwrap_or("-".as_ref()), &lines)?;
            Ok(OK)
        }
        Command::Verify { suite, trials, seed } => {
            let outcome = suites::run(suite, trials, seed, tol);
            for line in &outcome.lines {
                println!("{line}");
            }
            println!("{}", if outcome.pass { "PASS" } else { "FAIL" });
            Ok(if outcome.pass { OK } else { NEGATIVE })
        }
    }
}

fn worst(verified: impl Iterator<Item = bool>) -> u8 {
    let mut code = OK;
    for v in verified {
        if !v {
            code = NEGATIVE;
        }
    }
    code
}

fn write_ndjson<R: Serialize>(path: &std::path::Path, records: &[R]) -> Result<(), (u8, String)> {
    let io_err = |e: io::Error| (NEGATIVE, format!("{}: {e}", path.display()));
    let mut sink: Box<dyn Write> = if path.as_os_str() == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(path).map_err(io_err)?))
    };
    for r in records {
        serde_json::to_writer(&mut sink, r).map_err(|e| (NEGATIVE, e.to_string()))?;
        sink.write_all(b"\n").map_err(io_err)?;
    }
    sink.flush().map_err(io_err)
}

fn emit<R: Serialize>(output: &Output, records: &[R], render: fn(&R) -> String) -> Result<(), (u8, String)> {
    match &output.json_out {
        Some(path) => write_ndjson(path, records),
        None => {
            let mut out = io::stdout().lock();
            for r in records {
                write!(out, "{}", render(r)).map_err(|e| (NEGATIVE, e.to_string()))?;
            }
            Ok(())
        }
    }
}

fn cone_id(role: Role, c: Cone) -> ConeId {
    match role {
        Role::State => ConeId::Primal(c),
        Role::Witness => ConeId::Dual(c),
    }
}

fn classify(doc: &Document, role: Role, certify: bool, tol: &Tolerance64) -> Result<ClassifyReport, String> {
    let x = doc.x_part();
    let profiled = match role {
        Role::State => classify_state(&x, tol),
        Role::Witness => witness_profile(&x, tol).map(|p| (p, partition_class(&p))),
    };
    let (profile, mut label) = profiled.map_err(|e| format!("{}: {e}", doc.origin))?;
    let mut positivity = profile.positivity;

    let mut cones = Vec::with_capacity(Cone::ALL.len());
    let mut inequalities: Vec<IneqReport64> = Vec::new();
    for c in Cone::ALL {
        let id = cone_id(role, c);
        let verdict = in_cone(&x, id, tol);
        for r in &verdict.reports {
            if !inequalities.iter().any(|q| q.kind == r.kind) {
                inequalities.push(*r);
            }
        }
        let (member, conclusive) = match &doc.subject {
            Subject::X(_) => (verdict.member, true),
            Subject::General(h) => {
                let g = necessary_check_general(h, id, tol);
                (g.verdict.member, g.conclusive)
            }
        };
        cones.push(ConeStatus {
            cone: id.to_string(),
            member,
            conclusive,
            min_relative_slack: verdict.min_slack(),
        });
    }

    let (x_shaped, off_x_norm) = match &doc.subject {
        Subject::X(_) => (true, 0.0),
        Subject::General(h) => (false, h.off_x_norm()),
    };
    if let (Subject::General(h), Role::State) = (&doc.subject, role) {
        if positivity && !h.is_psd(tol) {
            positivity = false;
            label = xcone::ClassLabel {
                name: "not a state".into(),
                base: None,
                pivot: None,
                ..label
            };
        }
    }
    let conclusive = !positivity || cones.iter().all(|c| c.conclusive);

    let mut certificates = Vec::new();
    if certify && profile.positivity {
        let targets: Vec<Cone> = if !positivity {
            Vec::new()
        } else {
            SIGNATURE_CONES.into_iter().filter(|&c| !profile.get(c)).collect()
        };
        for c in targets {
            let cert = match role {
                Role::State => find_state_witness(&x, c, tol),
                Role::Witness => find_witness_counterstate(&x, c, tol),
            };
            if let Ok(cert) = cert {
                let verified = cert.verify(&x, tol);
                certificates.push(CheckedCertificate {
                    certificate: cert,
                    verified,
                });
            }
        }
    } else if certify {
        let cert = match role {
            Role::State => find_state_witness(&x, Cone::AbcJoin, tol),
            Role::Witness => find_witness_counterstate(&x, Cone::AbcMeet, tol),
        };
        if let Ok(cert) = cert {
            let verified = cert.verify(&x, tol);
            certificates.push(CheckedCertificate {
                certificate: cert,
                verified,
            });
        }
    }

    Ok(ClassifyReport {
        document: doc.origin.clone(),
        label: doc.label.clone(),
        role,
        x_shaped,
        off_x_norm,
        positivity,
        class: label.name,
        signature: label.signature,
        pivot: label.pivot,
        conclusive,
        cones,
        inequalities,
        certificates,
    })
}

fn certificate(doc: &Document, cone: ConeId, tol: &Tolerance64) -> CertificateReport {
    let x = doc.x_part();
    let found = match cone {
        ConeId::Primal(c) => find_state_witness(&x, c, tol),
        ConeId::Dual(c) => find_witness_counterstate(&x, c, tol),
    };
    let mut report = CertificateReport {
        document: doc.origin.clone(),
        label: doc.label.clone(),
        cone: cone.to_string(),
        status: Status::Failed,
        certificate: None,
        verified: false,
        message: None,
    };
    match found {
        Ok(cert) => {
            report.verified = cert.verify(&x, tol);
            report.status = Status::Certificate;
            report.certificate = Some(cert);
        }
        Err(Error::IsMember(_)) if doc.is_x() => {
            report.status = Status::Member;
            report.message = Some(format!(
                "{} is a member of {}; no certificate exists",
                doc.name(),
                cone.describe()
            ));
        }
        Err(Error::IsMember(_)) => {
            report.status = Status::Inapplicable;
            report.message = Some(format!(
                "the X-part of {} is a member of {}; X-shaped certificates cannot separate it",
                doc.name(),
                cone.describe()
            ));
        }
        Err(e) => report.message = Some(e.to_string()),
    }
    if let Some(m) = &report.message {
        eprintln!("xcone: {}: {m}", doc.origin);
    }
    report
}

fn decompose(doc: &Document, cone: ConeId, method: Method, tol: &Tolerance64) -> DecompositionReport {
    let mut report = DecompositionReport {
        document: doc.origin.clone(),
        label: doc.label.clone(),
        cone: cone.to_string(),
        method: match method {
            Method::Constructive => "constructive",
            Method::Dictionary => "dictionary",
        }
        .to_string(),
        status: Status::Failed,
        decomposition: None,
        verified: false,
        message: None,
    };
    let x = match &doc.subject {
        Subject::X(x) => *x,
        Subject::General(_) => {
            report.status = Status::Inapplicable;
            report.message = Some(format!("{} is not X-shaped", doc.name()));
            eprintln!("xcone: {}: not X-shaped", doc.origin);
            return report;
        }
    };
    let result = match (method, cone) {
        (Method::Constructive, ConeId::Primal(c)) => decompose_constructive(&x, c, tol),
        (Method::Constructive, _) => Err(Error::Unsupported(format!("constructive decomposition for {cone}"))),
        (Method::Dictionary, _) => decompose_dictionary(&x, cone, &DictionaryConfig::default()),
    };
    match result {
        Ok(d) => {
            report.verified = verify_decomposition(&d, &x, tol);
            report.status = Status::Decomposition;
            if !report.verified {
                report.message = Some(format!("no verified decomposition (residual {:.3e})", d.residual));
            }
            report.decomposition = Some(d);
        }
        Err(Error::NotMember(_)) => {
            report.status = Status::NotMember;
            report.message = Some(format!("{} is not a member of {}", doc.name(), cone.describe()));
        }
        Err(e) => {
            report.status = Status::Inapplicable;
            report.message = Some(e.to_string());
        }
    }
    if let Some(m) = &report.message {
        eprintln!("xcone: {}: {m}", doc.origin);
    }
    report
}
