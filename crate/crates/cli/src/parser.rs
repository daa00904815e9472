//! Line-oriented problem files and the polynomial expression grammar.
//!
//! ```text
//! ring: Z | Q[t] | F<p>[t]
//! f1: <expr in x>
//! f2: <expr in y>
//! J: <expr>, <expr>, ...        (optional)
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, decimal integers, the ring
//! variable `t` and the algebra variables. Division is only allowed by a
//! constant that divides every coefficient exactly.

use std::fmt;

use num_bigint::BigInt;
use splitforge_core::cert::ExtensionProblem;
use splitforge_core::poly::{BiPoly, MonicQuadratic, Var};
use splitforge_core::ufd::{Fp, FpPoly, Integer, OddPrime, QPoly, Ufd};

const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}, found {found}")]
    Syntax { line: usize, column: usize, expected: String, found: String },
    #[error("line {line}: {name} must be monic, leading coefficient is {lead}")]
    NonMonic { line: usize, name: String, lead: String },
    #[error("line {line}: {message}")]
    WrongDegree { line: usize, message: String },
    #[error("line {line}: unknown ring '{ring}' (expected Z, Q[t] or F<p>[t] with p an odd prime)")]
    UnknownRing { line: usize, ring: String },
    #[error("line {line}: F{p}[t] has even characteristic; only odd primes are supported")]
    EvenPrime { line: usize, p: String },
}

fn syntax(line: usize, column: usize, expected: impl Into<String>, found: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, expected: expected.into(), found: found.into() }
}

/// Which identifiers an expression may mention, and what they stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// `x` and `y`.
    Algebra,
    /// `z`, read as the first algebra variable.
    Image,
}

impl Scope {
    fn lookup(self, name: char) -> Option<Var> {
        match (self, name) {
            (Scope::Algebra, 'x') => Some(Var::X),
            (Scope::Algebra, 'y') => Some(Var::Y),
            (Scope::Image, 'z') => Some(Var::X),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(c) | Tok::Op(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of line"),
        }
    }
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() {
            if chars.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric() || *n == '_') {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                return Err(syntax(line, col, "a variable or number", format!("'{word}'")));
            }
            out.push((Tok::Ident(c), col));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(syntax(line, col, "an operator, variable or number", format!("'{c}'")));
        }
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

/// Recursive-descent evaluator producing polynomials directly.
struct Parser<'a, R: Ufd> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    ctx: &'a R::Ctx,
    scope: Scope,
}

impl<R: Ufd> Parser<'_, R> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        syntax(self.line, self.col(), expected, self.peek().to_string())
    }

    fn expr(&mut self) -> Result<BiPoly<R>, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly<R>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match *self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let col = self.col();
                    let divisor = self.unary()?;
                    acc = self.divide(&acc, &divisor, col)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&self, num: &BiPoly<R>, den: &BiPoly<R>, col: usize) -> Result<BiPoly<R>, ParseError> {
        let c = den.coeff(0, 0);
        if den.num_terms() > 1 || (den.num_terms() == 1 && c.is_zero()) {
            return Err(syntax(self.line, col, "a constant divisor", format!("'{den}'")));
        }
        if c.is_zero() {
            return Err(syntax(self.line, col, "a nonzero divisor", "'0'"));
        }
        let mut out = BiPoly::zero(self.ctx);
        for (&(i, j), a) in num.iter() {
            let q =
                a.exact_div(&c).map_err(|_| syntax(self.line, col, format!("a divisor of {num}"), format!("'{c}'")))?;
            out = out + BiPoly::monomial(q, i, j);
        }
        Ok(out)
    }

    fn unary(&mut self) -> Result<BiPoly<R>, ParseError> {
        match *self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly<R>, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump().0 {
            Tok::Int(n) => {
                let e = u32::try_from(&n).ok().filter(|e| *e <= MAX_EXPONENT).ok_or_else(|| {
                    syntax(self.line, col, format!("an exponent at most {MAX_EXPONENT}"), format!("'{n}'"))
                })?;
                let mut acc = BiPoly::one(self.ctx);
                for _ in 0..e {
                    acc = acc * base.clone();
                }
                Ok(acc)
            }
            other => Err(syntax(self.line, col, "a nonnegative integer exponent", other.to_string())),
        }
    }

    fn atom(&mut self) -> Result<BiPoly<R>, ParseError> {
        let col = self.col();
        match self.bump().0 {
            Tok::Int(n) => Ok(BiPoly::constant(R::from_bigint(self.ctx, &n))),
            Tok::Ident(c) => {
                if let Some(v) = self.scope.lookup(c) {
                    return Ok(BiPoly::var(self.ctx, v));
                }
                let ring_var = R::descriptor(self.ctx).variable.and_then(|s| s.chars().next());
                match (ring_var == Some(c), R::indeterminate(self.ctx)) {
                    (true, Some(t)) => Ok(BiPoly::constant(t)),
                    _ => Err(syntax(self.line, col, "a variable of this ring", format!("'{c}'"))),
                }
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(syntax(self.line, col, "a number, variable or '('", other.to_string())),
        }
    }
}

/// Parses one expression; `line` and `col0` position error messages.
pub fn parse_expr_at<R: Ufd>(
    ctx: &R::Ctx,
    src: &str,
    scope: Scope,
    line: usize,
    col0: usize,
) -> Result<BiPoly<R>, ParseError> {
    let toks = tokenize(src, line, col0)?;
    let mut p = Parser::<R> { toks, pos: 0, line, ctx, scope };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of line"));
    }
    Ok(out)
}

pub fn parse_expr<R: Ufd>(ctx: &R::Ctx, src: &str, scope: Scope) -> Result<BiPoly<R>, ParseError> {
    parse_expr_at(ctx, src, scope, 1, 1)
}

/// Reads `p` as a monic quadratic in `v` alone.
pub fn as_quadratic<R: Ufd>(p: &BiPoly<R>, v: Var, name: &str, line: usize) -> Result<MonicQuadratic<R>, ParseError> {
    let var = if v == Var::X { "x" } else { "y" };
    if p.degree_in(v.other()).is_some_and(|d| d > 0) {
        return Err(ParseError::WrongDegree { line, message: format!("{name} must be a polynomial in {var} alone") });
    }
    let deg = p.degree_in(v).unwrap_or(0);
    if deg != 2 || p.is_zero() {
        return Err(ParseError::WrongDegree {
            line,
            message: format!(
                "{name} must have degree 2 in {var}, found {}",
                if p.is_zero() { "the zero polynomial".into() } else { deg.to_string() }
            ),
        });
    }
    let at = |k: u32| {
        if v == Var::X {
            p.coeff(k, 0)
        } else {
            p.coeff(0, k)
        }
    };
    let lead = at(2);
    if !lead.is_one() {
        return Err(ParseError::NonMonic { line, name: name.to_string(), lead: lead.to_string() });
    }
    Ok(MonicQuadratic::new(-at(1), at(0)))
}

/// A problem over one of the supported base rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyProblem {
    Integers(ExtensionProblem<Integer>),
    Rational(ExtensionProblem<QPoly>),
    Prime(ExtensionProblem<FpPoly>),
}

/// Runs a generic body against whichever ring the problem lives over.
#[macro_export]
macro_rules! with_problem {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::parser::AnyProblem::Integers($p) => $body,
            $crate::parser::AnyProblem::Rational($p) => $body,
            $crate::parser::AnyProblem::Prime($p) => $body,
        }
    };
}

impl AnyProblem {
    pub fn ring_name(&self) -> String {
        with_problem!(self, p => p.descriptor().to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rational,
    Prime(OddPrime),
}

pub fn parse_ring(text: &str, line: usize) -> Result<RingSpec, ParseError> {
    let t = text.trim();
    let unknown = || ParseError::UnknownRing { line, ring: t.to_string() };
    match t {
        "Z" => return Ok(RingSpec::Integers),
        "Q[t]" => return Ok(RingSpec::Rational),
        _ => {}
    }
    let digits = t.strip_prefix('F').and_then(|r| r.strip_suffix("[t]")).ok_or_else(unknown)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(unknown());
    }
    if digits.bytes().last().is_some_and(|b| (b - b'0').is_multiple_of(2)) {
        return Err(ParseError::EvenPrime { line, p: digits.to_string() });
    }
    let p: u64 = digits.parse().map_err(|_| unknown())?;
    Fp::modulus(p).map(RingSpec::Prime).ok_or_else(unknown)
}

struct Decl<'a> {
    line: usize,
    /// Column of the first character of `body`.
    col: usize,
    body: &'a str,
}

fn split_top_level(body: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &body[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &body[start..]));
    out
}

fn build<R: Ufd>(
    ctx: R::Ctx,
    f1: &Decl<'_>,
    f2: &Decl<'_>,
    j: Option<&Decl<'_>>,
) -> Result<ExtensionProblem<R>, ParseError> {
    let p1 = parse_expr_at::<R>(&ctx, f1.body, Scope::Algebra, f1.line, f1.col)?;
    let q1 = as_quadratic(&p1, Var::X, "f1", f1.line)?;
    let p2 = parse_expr_at::<R>(&ctx, f2.body, Scope::Algebra, f2.line, f2.col)?;
    let q2 = as_quadratic(&p2, Var::Y, "f2", f2.line)?;
    let mut gens = Vec::new();
    if let Some(d) = j {
        for (off, piece) in split_top_level(d.body) {
            gens.push(parse_expr_at::<R>(&ctx, piece, Scope::Algebra, d.line, d.col + piece_offset(d.body, off))?);
        }
    }
    Ok(ExtensionProblem::new(ctx, q1, q2, gens))
}

fn piece_offset(body: &str, byte_off: usize) -> usize {
    body[..byte_off].chars().count()
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<AnyProblem, ParseError> {
    const ORDER: [&str; 4] = ["ring", "f1", "f2", "J"];
    let mut decls: Vec<(usize, Decl<'_>)> = Vec::new();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(syntax(line, lead + 1, "a declaration 'name: value'", format!("'{}'", content.trim())));
        };
        let name = content[..colon].trim();
        let expected = ORDER.get(decls.len()).copied();
        let slot = match ORDER.iter().position(|k| *k == name) {
            Some(k) if k == decls.len() => k,
            _ => {
                let want = expected.map_or("end of file".to_string(), |e| format!("'{e}:'"));
                return Err(syntax(line, lead + 1, want, format!("'{name}:'")));
            }
        };
        let col = content[..colon + 1].chars().count() + 1;
        decls.push((slot, Decl { line, col, body: &content[colon + 1..] }));
    }
    if decls.len() < 3 {
        let want = format!("'{}:'", ORDER[decls.len()]);
        return Err(syntax(last_line.max(1), 1, want, "end of file"));
    }
    let ring = parse_ring(decls[0].1.body, decls[0].1.line)?;
    let (f1, f2, j) = (&decls[1].1, &decls[2].1, decls.get(3).map(|d| &d.1));
    Ok(match ring {
        RingSpec::Integers => AnyProblem::Integers(build((), f1, f2, j)?),
        RingSpec::Rational => AnyProblem::Rational(build((), f1, f2, j)?),
        RingSpec::Prime(p) => AnyProblem::Prime(build(p, f1, f2, j)?),
    })
}

/// Canonical text of a problem; [`parse_problem`] reads it back unchanged.
pub fn print_problem<R: Ufd>(p: &ExtensionProblem<R>) -> String {
    let f1 = p.f1.to_bipoly(Var::X);
    let f2 = p.f2.to_bipoly(Var::Y);
    let mut out = format!("ring: {}\nf1: {f1}\nf2: {f2}\n", p.descriptor());
    if !p.j.is_empty() {
        let gens: Vec<String> = p.j.iter().map(|g| g.to_string()).collect();
        out.push_str(&format!("J: {}\n", gens.join(", ")));
    }
    out
}

pub fn print_any(p: &AnyProblem) -> String {
    with_problem!(p, q => print_problem(q))
}

/// Parses a ring element; the algebra variables are rejected.
pub fn parse_scalar<R: Ufd>(ctx: &R::Ctx, src: &str) -> Result<R, ParseError> {
    let p = parse_expr::<R>(ctx, src, Scope::Image)?;
    if p.degree_in(Var::X).is_some_and(|d| d > 0) {
        return Err(syntax(1, 1, "an element of the base ring", format!("'{src}'")));
    }
    Ok(p.coeff(0, 0))
}
