//! JSON form of [`SplitCertificate`]. Every number is a decimal string and
//! every polynomial is in the canonical printed form, so serialization is
//! byte-stable.

use serde::{Deserialize, Serialize};
use splitforge_core::cert::{
    CaseTag, EliminationMap, ExtensionProblem, IdentityRecord, MembershipTranscript, MinimalPrimeCert, Orientation,
    SplitCertificate, Witnesses,
};
use splitforge_core::poly::{BiPoly, Var};
use splitforge_core::quotient::QuadModElement;
use splitforge_core::ufd::{Ring, Ufd};

use crate::parser::{as_quadratic, parse_expr, parse_scalar, ParseError, Scope};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed certificate: {0}")]
pub struct DocError(pub String);

impl From<ParseError> for DocError {
    fn from(e: ParseError) -> Self {
        DocError(e.to_string())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub schema_version: String,
    pub problem: ProblemDoc,
    pub case: CaseDoc,
    pub witnesses: WitnessDoc,
    pub minimal_primes: Vec<PrimeDoc>,
    pub selected_prime: Option<String>,
    pub retraction: Vec<String>,
    pub transcripts: Vec<TranscriptDoc>,
    pub identities: Vec<IdentityDoc>,
    pub probe_seed: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub ring: String,
    pub f1: String,
    pub f2: String,
    #[serde(rename = "J")]
    pub j: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CaseDoc {
    pub kind: String,
    pub index: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WitnessDoc {
    None,
    Roots { x_roots: Vec<String>, y_roots: Vec<String> },
    Radical { c: String, d: String, u: String },
    CompletedSquare { half_a: String, half_c: String, c: String, d: String, u: String },
    Nonradical { orientation: String, e: String, half_minus: String, half_plus: String },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PrimeDoc {
    pub index: String,
    pub generators: Vec<String>,
    pub elimination: EliminationDoc,
}

/// Images of `x` and `y` as polynomials in `z` of degree at most one.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EliminationDoc {
    pub modulus: Option<String>,
    pub x: String,
    pub y: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TranscriptDoc {
    pub cofactors: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IdentityDoc {
    pub name: String,
    pub residual: String,
}

/// A certificate file holds one certificate or a list of them.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum CertificateFile {
    One(CertificateDoc),
    Many(Vec<CertificateDoc>),
}

impl CertificateFile {
    pub fn into_vec(self) -> Vec<CertificateDoc> {
        match self {
            CertificateFile::One(d) => vec![d],
            CertificateFile::Many(v) => v,
        }
    }
}

fn z_poly<R: Ring>(p: &QuadModElement<R>) -> String {
    (BiPoly::constant(p.p0.clone()) + BiPoly::monomial(p.p1.clone(), 1, 0)).display_with("z", "w")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn problem_doc<R: Ufd>(p: &ExtensionProblem<R>) -> ProblemDoc {
    ProblemDoc {
        ring: p.descriptor().to_string(),
        f1: p.f1.to_bipoly(Var::X).to_string(),
        f2: p.f2.to_bipoly(Var::Y).to_string(),
        j: strings(&p.j),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Standard => "standard",
        Orientation::Swapped => "swapped",
    }
}

pub fn to_doc<R: Ufd>(cert: &SplitCertificate<R>) -> CertificateDoc {
    let witnesses = match &cert.witnesses {
        Witnesses::None => WitnessDoc::None,
        Witnesses::Roots { x_roots, y_roots } => {
            WitnessDoc::Roots { x_roots: strings(x_roots), y_roots: strings(y_roots) }
        }
        Witnesses::Radical { c, d, u } => WitnessDoc::Radical { c: c.to_string(), d: d.to_string(), u: u.to_string() },
        Witnesses::CompletedSquare { half_a, half_c, c, d, u } => WitnessDoc::CompletedSquare {
            half_a: half_a.to_string(),
            half_c: half_c.to_string(),
            c: c.to_string(),
            d: d.to_string(),
            u: u.to_string(),
        },
        Witnesses::Nonradical { orientation, e, half_minus, half_plus } => WitnessDoc::Nonradical {
            orientation: orientation_name(*orientation).to_string(),
            e: e.to_string(),
            half_minus: half_minus.to_string(),
            half_plus: half_plus.to_string(),
        },
    };
    let minimal_primes = cert
        .minimal_primes
        .iter()
        .map(|p| PrimeDoc {
            index: p.index.to_string(),
            generators: strings(&p.generators),
            elimination: EliminationDoc {
                modulus: p.elimination.modulus.as_ref().map(|m| m.to_bipoly(Var::X).display_with("z", "w")),
                x: z_poly(&p.elimination.x_image),
                y: z_poly(&p.elimination.y_image),
            },
        })
        .collect();
    CertificateDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        problem: problem_doc(&cert.problem),
        case: CaseDoc { kind: cert.case.name().to_string(), index: cert.case.index().map(|i| i.to_string()) },
        witnesses,
        minimal_primes,
        selected_prime: cert.selected_prime().map(|p| p.index.to_string()),
        retraction: strings(&cert.retraction),
        transcripts: cert.transcripts.iter().map(|t| TranscriptDoc { cofactors: strings(&t.cofactors) }).collect(),
        identities: cert
            .identities
            .iter()
            .map(|i| IdentityDoc { name: i.name.clone(), residual: i.residual.to_string() })
            .collect(),
        probe_seed: cert.probe_seed.to_string(),
    }
}

fn scalar<R: Ufd>(ctx: &R::Ctx, s: &str, field: &str) -> Result<R, DocError> {
    parse_scalar::<R>(ctx, s).map_err(|e| DocError(format!("{field}: {e}")))
}

fn poly<R: Ufd>(ctx: &R::Ctx, s: &str, field: &str) -> Result<BiPoly<R>, DocError> {
    parse_expr::<R>(ctx, s, Scope::Algebra).map_err(|e| DocError(format!("{field}: {e}")))
}

fn z_elem<R: Ufd>(ctx: &R::Ctx, s: &str, field: &str) -> Result<QuadModElement<R>, DocError> {
    let p = parse_expr::<R>(ctx, s, Scope::Image).map_err(|e| DocError(format!("{field}: {e}")))?;
    if p.degree_in(Var::X).is_some_and(|d| d > 1) {
        return Err(DocError(format!("{field}: '{s}' has degree above 1 in z")));
    }
    Ok(QuadModElement::new(p.coeff(0, 0), p.coeff(1, 0)))
}

fn number<T: std::str::FromStr>(s: &str, field: &str) -> Result<T, DocError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DocError(format!("{field}: '{s}' is not a decimal number")));
    }
    s.parse().map_err(|_| DocError(format!("{field}: '{s}' is out of range")))
}

/// Reads the problem echo of a certificate.
pub fn problem_from_doc<R: Ufd>(ctx: &R::Ctx, d: &ProblemDoc) -> Result<ExtensionProblem<R>, DocError> {
    let ring = R::descriptor(ctx).to_string();
    if d.ring != ring {
        return Err(DocError(format!("problem.ring is '{}', expected '{ring}'", d.ring)));
    }
    let f1 = as_quadratic(&poly::<R>(ctx, &d.f1, "problem.f1")?, Var::X, "problem.f1", 1)?;
    let f2 = as_quadratic(&poly::<R>(ctx, &d.f2, "problem.f2")?, Var::Y, "problem.f2", 1)?;
    let j = d.j.iter().map(|g| poly::<R>(ctx, g, "problem.J")).collect::<Result<_, _>>()?;
    Ok(ExtensionProblem::new(ctx.clone(), f1, f2, j))
}

fn case_from_doc(d: &CaseDoc) -> Result<CaseTag, DocError> {
    let idx = |field| -> Result<u8, DocError> {
        let s = d.index.as_deref().ok_or_else(|| DocError(format!("case.index is required for {field}")))?;
        number(s, "case.index")
    };
    let tag = match d.kind.as_str() {
        "free" => {
            if d.index.is_some() {
                return Err(DocError("case.index must be null for free".into()));
            }
            CaseTag::Free
        }
        "reducible" => CaseTag::Reducible { index: idx("reducible")? as usize },
        "radical" => CaseTag::Radical { r: idx("radical")? },
        "completed-square" => CaseTag::CompletedSquare { r: idx("completed-square")? },
        "nonradical" => CaseTag::Nonradical { j: idx("nonradical")? },
        other => return Err(DocError(format!("unknown case kind '{other}'"))),
    };
    Ok(tag)
}

fn witnesses_from_doc<R: Ufd>(ctx: &R::Ctx, d: &WitnessDoc) -> Result<Witnesses<R>, DocError> {
    let s = |v: &str, f: &str| scalar::<R>(ctx, v, &format!("witnesses.{f}"));
    Ok(match d {
        WitnessDoc::None => Witnesses::None,
        WitnessDoc::Roots { x_roots, y_roots } => Witnesses::Roots {
            x_roots: x_roots.iter().map(|r| s(r, "x_roots")).collect::<Result<_, _>>()?,
            y_roots: y_roots.iter().map(|r| s(r, "y_roots")).collect::<Result<_, _>>()?,
        },
        WitnessDoc::Radical { c, d, u } => Witnesses::Radical { c: s(c, "c")?, d: s(d, "d")?, u: s(u, "u")? },
        WitnessDoc::CompletedSquare { half_a, half_c, c, d, u } => Witnesses::CompletedSquare {
            half_a: s(half_a, "half_a")?,
            half_c: s(half_c, "half_c")?,
            c: s(c, "c")?,
            d: s(d, "d")?,
            u: s(u, "u")?,
        },
        WitnessDoc::Nonradical { orientation, e, half_minus, half_plus } => Witnesses::Nonradical {
            orientation: match orientation.as_str() {
                "standard" => Orientation::Standard,
                "swapped" => Orientation::Swapped,
                other => return Err(DocError(format!("unknown orientation '{other}'"))),
            },
            e: s(e, "e")?,
            half_minus: s(half_minus, "half_minus")?,
            half_plus: s(half_plus, "half_plus")?,
        },
    })
}

fn prime_from_doc<R: Ufd>(ctx: &R::Ctx, d: &PrimeDoc) -> Result<MinimalPrimeCert<R>, DocError> {
    let modulus = match &d.elimination.modulus {
        None => None,
        Some(m) => {
            let p = parse_expr::<R>(ctx, m, Scope::Image).map_err(|e| DocError(format!("elimination.modulus: {e}")))?;
            Some(as_quadratic(&p, Var::X, "elimination.modulus", 1)?)
        }
    };
    Ok(MinimalPrimeCert {
        index: number(&d.index, "minimal_primes.index")?,
        generators: d
            .generators
            .iter()
            .map(|g| poly::<R>(ctx, g, "minimal_primes.generators"))
            .collect::<Result<_, _>>()?,
        elimination: EliminationMap {
            modulus,
            x_image: z_elem::<R>(ctx, &d.elimination.x, "elimination.x")?,
            y_image: z_elem::<R>(ctx, &d.elimination.y, "elimination.y")?,
        },
    })
}

/// Reads a certificate over the ring of `ctx`.
pub fn from_doc<R: Ufd>(ctx: &R::Ctx, d: &CertificateDoc) -> Result<SplitCertificate<R>, DocError> {
    if d.schema_version != SCHEMA_VERSION {
        return Err(DocError(format!("unsupported schema_version '{}'", d.schema_version)));
    }
    let retraction: Vec<R> =
        d.retraction.iter().map(|r| scalar::<R>(ctx, r, "retraction")).collect::<Result<_, _>>()?;
    let retraction: [R; 4] = retraction
        .try_into()
        .map_err(|v: Vec<R>| DocError(format!("retraction has {} entries, expected 4", v.len())))?;
    let cert = SplitCertificate {
        problem: problem_from_doc(ctx, &d.problem)?,
        case: case_from_doc(&d.case)?,
        witnesses: witnesses_from_doc(ctx, &d.witnesses)?,
        minimal_primes: d.minimal_primes.iter().map(|p| prime_from_doc(ctx, p)).collect::<Result<_, _>>()?,
        retraction,
        transcripts: d
            .transcripts
            .iter()
            .map(|t| {
                let cofactors =
                    t.cofactors.iter().map(|c| poly::<R>(ctx, c, "transcripts.cofactors")).collect::<Result<_, _>>()?;
                Ok(MembershipTranscript { cofactors })
            })
            .collect::<Result<_, DocError>>()?,
        identities: d
            .identities
            .iter()
            .map(|i| {
                Ok(IdentityRecord {
                    name: i.name.clone(),
                    residual: poly::<R>(ctx, &i.residual, "identities.residual")?,
                })
            })
            .collect::<Result<_, DocError>>()?,
        probe_seed: number(&d.probe_seed, "probe_seed")?,
    };
    let selected = cert.selected_prime().map(|p| p.index.to_string());
    if selected != d.selected_prime {
        return Err(DocError(format!(
            "selected_prime {:?} does not match case {}",
            d.selected_prime.as_deref().unwrap_or("null"),
            cert.case
        )));
    }
    Ok(cert)
}

pub fn to_json(file: &CertificateFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("certificate documents serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<CertificateFile, DocError> {
    serde_json::from_str(text).map_err(|e| DocError(e.to_string()))
}

/// Every certificate obtained by adding 1 to one numeric field.
///
/// Integer strings become `n + 1`; any other numeric payload `s` becomes
/// `(s) + 1`. Tags, names and the probe seed are left alone.
pub fn plus_one_mutations(doc: &CertificateDoc) -> Vec<CertificateDoc> {
    const SKIP: [&str; 6] = ["kind", "orientation", "name", "ring", "schema_version", "probe_seed"];
    fn bump(s: &str) -> String {
        match s.parse::<num_bigint::BigInt>() {
            Ok(n) => (n + 1u32).to_string(),
            Err(_) => format!("({s}) + 1"),
        }
    }
    fn walk(
        v: &serde_json::Value,
        key: Option<&str>,
        out: &mut Vec<serde_json::Value>,
        root: &serde_json::Value,
        path: &mut Vec<PathStep>,
    ) {
        match v {
            serde_json::Value::String(s) if !key.is_some_and(|k| SKIP.contains(&k)) => {
                let mut m = root.clone();
                *locate(&mut m, path) = serde_json::Value::String(bump(s));
                out.push(m);
            }
            serde_json::Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    path.push(PathStep::Index(i));
                    walk(item, key, out, root, path);
                    path.pop();
                }
            }
            serde_json::Value::Object(map) => {
                for (k, item) in map {
                    path.push(PathStep::Key(k.clone()));
                    walk(item, Some(k), out, root, path);
                    path.pop();
                }
            }
            _ => {}
        }
    }
    let root = serde_json::to_value(doc).expect("certificate documents serialize");
    let mut out = Vec::new();
    walk(&root, None, &mut out, &root, &mut Vec::new());
    out.into_iter().map(|v| serde_json::from_value(v).expect("mutation keeps the document shape")).collect()
}

enum PathStep {
    Key(String),
    Index(usize),
}

fn locate<'a>(v: &'a mut serde_json::Value, path: &[PathStep]) -> &'a mut serde_json::Value {
    path.iter().fold(v, |v, step| match step {
        PathStep::Key(k) => &mut v[k.as_str()],
        PathStep::Index(i) => &mut v[*i],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_problem, AnyProblem};
    use splitforge_core::splitting::{build_retraction, BuildOptions};
    use splitforge_core::ufd::Integer;

    fn radical_cert() -> SplitCertificate<Integer> {
        let AnyProblem::Integers(p) = parse_problem("ring: Z\nf1: x^2 - 18\nf2: y^2 - 8\nJ: 3*y - 2*x").unwrap() else {
            panic!("ring")
        };
        build_retraction(&p, &BuildOptions::default()).unwrap().remove(0)
    }

    #[test]
    fn round_trip() {
        let cert = radical_cert();
        let doc = to_doc(&cert);
        let json = to_json(&CertificateFile::One(doc.clone()));
        let back = from_json(&json).unwrap().into_vec();
        assert_eq!(back, vec![doc.clone()]);
        assert_eq!(from_doc::<Integer>(&(), &back[0]).unwrap(), cert);
        assert_eq!(to_json(&CertificateFile::One(to_doc(&from_doc::<Integer>(&(), &back[0]).unwrap()))), json);
    }

    #[test]
    fn radical_document_fields() {
        let doc = to_doc(&radical_cert());
        assert_eq!(doc.case, CaseDoc { kind: "radical".into(), index: Some("1".into()) });
        assert_eq!(doc.witnesses, WitnessDoc::Radical { c: "2".into(), d: "3".into(), u: "2".into() });
        assert_eq!(doc.retraction, vec!["1", "0", "0", "12"]);
        assert_eq!(doc.selected_prime.as_deref(), Some("1"));
        let p1 = doc.minimal_primes.iter().find(|p| p.index == "1").unwrap();
        assert_eq!(p1.elimination.modulus.as_deref(), Some("z^2 - 2"));
        assert_eq!(p1.elimination.x, "3*z");
        assert_eq!(p1.elimination.y, "2*z");
    }

    #[test]
    fn malformed_documents() {
        let doc = to_doc(&radical_cert());
        let mut bad = doc.clone();
        bad.selected_prime = Some("2".into());
        assert!(from_doc::<Integer>(&(), &bad).is_err());
        let mut bad = doc.clone();
        bad.retraction.pop();
        assert!(from_doc::<Integer>(&(), &bad).is_err());
        let mut bad = doc.clone();
        bad.problem.ring = "Q[t]".into();
        assert!(from_doc::<Integer>(&(), &bad).is_err());
        let mut bad = doc;
        bad.case.kind = "mystery".into();
        assert!(from_doc::<Integer>(&(), &bad).is_err());
        assert!(from_json("{\"schema_version\": 1}").is_err());
    }

    #[test]
    fn mutations_touch_each_numeric_field_once() {
        let doc = to_doc(&radical_cert());
        let muts = plus_one_mutations(&doc);
        assert!(muts.iter().all(|m| *m != doc));
        assert!(muts.iter().all(|m| m.probe_seed == doc.probe_seed));
        assert!(muts.iter().any(|m| m.retraction[3] == "13"));
        assert!(muts.iter().any(|m| m.problem.f1 == "(x^2 - 18) + 1"));
    }
}
