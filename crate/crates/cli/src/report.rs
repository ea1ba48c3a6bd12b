//! Report records and their terminal rendering.

use std::fmt::Write;

use serde::Serialize;
use xcone::{Certificate64, Decomposition64, IneqReport64, Party};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    State,
    Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeStatus {
    pub cone: String,
    pub member: bool,
    /// False when only a necessary condition was checked and it passed.
    pub conclusive: bool,
    pub min_relative_slack: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckedCertificate {
    pub certificate: Certificate64,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub document: String,
    pub label: Option<String>,
    pub role: Role,
    pub x_shaped: bool,
    pub off_x_norm: f64,
    pub positivity: bool,
    pub class: String,
    pub signature: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot: Option<Party>,
    pub conclusive: bool,
    pub cones: Vec<ConeStatus>,
    pub inequalities: Vec<IneqReport64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CheckedCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certificate,
    Decomposition,
    Member,
    NotMember,
    Inapplicable,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub document: String,
    pub label: Option<String>,
    pub cone: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate64>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub document: String,
    pub label: Option<String>,
    pub cone: String,
    pub method: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition64>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn heading(out: &mut String, document: &str, label: &Option<String>) {
    match label {
        Some(l) => writeln!(out, "{document}  {l}").unwrap(),
        None => writeln!(out, "{document}").unwrap(),
    }
}

pub fn render_classify(r: &ClassifyReport) -> String {
    let mut out = String::new();
    heading(&mut out, &r.document, &r.label);
    let class = if r.conclusive {
        r.class.clone()
    } else {
        format!("{} (X-part only, inconclusive)", r.class)
    };
    writeln!(out, "  class       {class}").unwrap();
    writeln!(out, "  signature   {}", r.signature).unwrap();
    writeln!(out, "  positivity  {}", yes(r.positivity)).unwrap();
    if !r.x_shaped {
        writeln!(out, "  off-X norm  {:e}", r.off_x_norm).unwrap();
    }
    writeln!(out, "  {:<12} {:<7} min relative slack", "cone", "member").unwrap();
    for c in &r.cones {
        let member = if c.conclusive {
            yes(c.member).to_string()
        } else {
            "maybe".to_string()
        };
        let slack = c
            .min_relative_slack
            .map_or_else(|| "-".to_string(), |s| format!("{s:.6e}"));
        writeln!(out, "  {:<12} {:<7} {slack}", c.cone, member).unwrap();
    }
    for c in &r.certificates {
        writeln!(
            out,
            "  {} in {}: pairing {:.6e} ({})",
            match c.certificate.kind {
                xcone::CertificateKind::Witness => "witness",
                xcone::CertificateKind::Counterstate => "counterstate",
            },
            c.certificate.cone.describe(),
            c.certificate.pairing,
            if c.verified { "verified" } else { "NOT verified" }
        )
        .unwrap();
    }
    out
}

pub fn render_certificate(r: &CertificateReport) -> String {
    let mut out = String::new();
    heading(&mut out, &r.document, &r.label);
    writeln!(out, "  cone        {}", r.cone).unwrap();
    match &r.certificate {
        Some(c) => {
            writeln!(
                out,
                "  {:<11} {}",
                format!("{:?}", c.kind).to_lowercase(),
                fmt_x(&c.object)
            )
            .unwrap();
            writeln!(out, "  family      {}", c.family).unwrap();
            if let Some(v) = c.violated {
                writeln!(out, "  violated    {v}").unwrap();
            }
            writeln!(out, "  pairing     {:.12e}", c.pairing).unwrap();
            writeln!(out, "  verified    {}", yes(r.verified)).unwrap();
        }
        None => writeln!(out, "  {}", r.message.as_deref().unwrap_or("no certificate")).unwrap(),
    }
    out
}

pub fn render_decomposition(r: &DecompositionReport) -> String {
    let mut out = String::new();
    heading(&mut out, &r.document, &r.label);
    writeln!(out, "  cone        {}  ({})", r.cone, r.method).unwrap();
    if let Some(d) = &r.decomposition {
        writeln!(out, "  terms       {}", d.terms.len()).unwrap();
        for t in &d.terms {
            writeln!(out, "    {:.6e} x {}", t.weight, t.family).unwrap();
        }
        writeln!(out, "  residual    {:.3e}", d.residual).unwrap();
        writeln!(out, "  verified    {}", yes(r.verified)).unwrap();
    }
    if let Some(m) = &r.message {
        writeln!(out, "  {m}").unwrap();
    }
    out
}

fn fmt_x(x: &xcone::XMatrix64) -> String {
    let z: Vec<String> = x.z.iter().map(|c| format!("{}{:+}i", c.re, c.im)).collect();
    format!("a={:?} b={:?} z=[{}]", x.a, x.b, z.join(", "))
}
