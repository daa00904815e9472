//! Built-in corpus of worked examples.

use serde::Serialize;
use splitforge_core::cert::ExtensionProblem;
use splitforge_core::splitting::{build_retraction, BuildOptions};
use splitforge_core::ufd::Ufd;
use splitforge_core::verify::verify_certificate;

use crate::parser::parse_problem;
use crate::with_problem;

pub struct Example {
    pub name: &'static str,
    pub text: &'static str,
    /// Expected case and retraction, or `None` when the build must fail.
    pub expect: Option<(&'static str, [&'static str; 4])>,
}

pub const CORPUS: &[Example] = &[
    Example {
        name: "radical",
        text: "ring: Z\nf1: x^2 - 18\nf2: y^2 - 8\nJ: 3*y - 2*x\n",
        expect: Some(("radical(1)", ["1", "0", "0", "12"])),
    },
    Example {
        name: "golden-diagonal",
        text: "ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y - x\n",
        expect: Some(("nonradical(1)", ["1", "0", "0", "1"])),
    },
    Example {
        name: "golden-antidiagonal",
        text: "ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y + x - 1\n",
        expect: Some(("nonradical(2)", ["1", "0", "1", "-1"])),
    },
    Example { name: "free", text: "ring: Z\nf1: x^2 - 2\nf2: y^2 - 3\n", expect: Some(("free", ["1", "0", "0", "0"])) },
    Example {
        name: "rational-shift",
        text: "ring: Q[t]\nf1: x^2 - 2*t*x + (t^2 - t)\nf2: y^2 - 2*y + (1 - 4*t)\nJ: y - 2*x + 2*t - 1\n",
        expect: Some(("completed-square(1)", ["1", "t", "1", "3*t"])),
    },
    Example {
        name: "prime-field",
        text: "ring: F5[t]\nf1: x^2 - t\nf2: y^2 - 4*t\nJ: y - 2*x\n",
        expect: Some(("radical(1)", ["1", "0", "0", "2*t"])),
    },
    Example {
        name: "split-point",
        text: "ring: Z\nf1: x^2 - 3*x + 2\nf2: y^2 - 5*y + 6\nJ: x - 1, y - 3\n",
        expect: Some(("reducible(2)", ["1", "1", "3", "3"])),
    },
    Example { name: "not-square-free", text: "ring: Z\nf1: x^2 - x - 11\nf2: y^2 - y - 11\nJ: y - x\n", expect: None },
];

#[derive(Serialize)]
struct Row {
    name: String,
    ring: String,
    case: String,
    retraction: Vec<String>,
    verified: bool,
    expected: bool,
    note: String,
}

fn evaluate<R: Ufd>(p: &ExtensionProblem<R>, ex: &Example, opts: &BuildOptions) -> Row {
    let ring = p.descriptor().to_string();
    match build_retraction(p, opts) {
        Ok(certs) => {
            let cert = &certs[0];
            let verified = verify_certificate(p, cert, None).passed();
            let case = cert.case.to_string();
            let retraction: Vec<String> = cert.retraction.iter().map(ToString::to_string).collect();
            let expected = ex.expect.is_some_and(|(c, r)| c == case && r.iter().zip(&retraction).all(|(a, b)| a == b));
            Row { name: ex.name.into(), ring, case, retraction, verified, expected, note: String::new() }
        }
        Err(e) => Row {
            name: ex.name.into(),
            ring,
            case: "-".into(),
            retraction: Vec::new(),
            verified: false,
            expected: ex.expect.is_none(),
            note: e.to_string(),
        },
    }
}

/// Runs the corpus, one thread per example. Returns the rendered table and
/// whether every example behaved as expected.
pub fn run_demo(opts: &BuildOptions, json: bool) -> (String, bool) {
    let rows: Vec<Row> = std::thread::scope(|s| {
        let handles: Vec<_> = CORPUS
            .iter()
            .map(|ex| {
                s.spawn(move || {
                    let problem = parse_problem(ex.text).expect("corpus problems parse");
                    with_problem!(&problem, p => evaluate(p, ex, opts))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("demo worker")).collect()
    });
    let ok = rows.iter().all(|r| r.expected && (r.verified || r.case == "-"));
    if json {
        let mut t = serde_json::to_string_pretty(&rows).expect("rows serialize");
        t.push('\n');
        return (t, ok);
    }
    let mut out = format!("{:<20} {:<6} {:<20} {:<28} {}\n", "example", "ring", "case", "rho(1, x, y, xy)", "result");
    for r in &rows {
        let rho = if r.retraction.is_empty() { "-".to_string() } else { r.retraction.join(", ") };
        let result = match (r.expected, r.case == "-") {
            (true, true) => format!("rejected as expected: {}", r.note),
            (true, false) if r.verified => "verified".to_string(),
            (_, true) => format!("UNEXPECTED ERROR: {}", r.note),
            _ => "MISMATCH".to_string(),
        };
        out.push_str(&format!("{:<20} {:<6} {:<20} {:<28} {}\n", r.name, r.ring, r.case, rho, result));
    }
    (out, ok)
}
