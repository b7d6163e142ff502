//! Text format for rings and submodules.
//!
//! ```text
//! ring p=32003 n=3
//! submodule U
//! shifts 0 1
//! [x1^2, x3]
//! [x1*x2 - 3*x3^2, 0]
//! end
//! ```
//!
//! The `shifts` line is optional (default: rank inferred, all shifts zero).
//! Ideals list one polynomial per line, or several separated by commas.
//! `#` starts a comment.

use crate::error::{Error, Result};
use crate::field::DEFAULT_PRIME;
use crate::monomial::Monomial;
use crate::poly::{PolyVector, Term};
use crate::ring::{FreeModule, Ring};
use crate::submodule::Submodule;

/// A parsed input file: a ring and named submodules of free modules over it.
#[derive(Clone, Debug)]
pub struct Document {
    pub ring: Ring,
    pub modules: Vec<(String, Submodule)>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Submodule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// The first submodule in the file.
    pub fn first(&self) -> Option<&Submodule> {
        self.modules.first().map(|(_, m)| m)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.ring.header();
        s.push('\n');
        for (name, m) in &self.modules {
            s.push_str(&submodule_text(name, m));
        }
        s
    }
}

/// Renders one submodule block.
pub fn submodule_text(name: &str, m: &Submodule) -> String {
    let mut s = format!("submodule {name}\n");
    let shifts: Vec<String> = m.shifts().iter().map(|x| x.to_string()).collect();
    s.push_str(&format!("shifts {}\n", shifts.join(" ")));
    for g in m.gens() {
        s.push_str(&g.to_text(m.ring(), m.ambient().rank()));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

/// Parses a ring header such as `ring p=32003 n=4` (also accepts `p=.. n=..`
/// without the keyword, as used on the command line).
pub fn parse_ring_header(line: &str) -> Result<Ring> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let mut p = DEFAULT_PRIME;
    let mut n = None;
    for tok in line.split_whitespace() {
        if tok == "ring" {
            continue;
        }
        let (k, v) = tok.split_once('=').ok_or_else(|| err(format!("expected key=value, got `{tok}`")))?;
        let v: u64 = v.parse().map_err(|_| err(format!("bad number `{v}`")))?;
        match k {
            "p" => p = u32::try_from(v).map_err(|_| err(format!("characteristic {v} too large")))?,
            "n" => n = Some(v as usize),
            _ => return Err(err(format!("unknown ring parameter `{k}`"))),
        }
    }
    let n = n.ok_or_else(|| err("ring header needs n=".into()))?;
    Ring::new(p, n).map_err(|e| err(e.to_string()))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut ring: Option<Ring> = None;
    let mut modules = Vec::new();
    let mut block: Option<(String, usize, Option<Vec<i32>>, Vec<(usize, String)>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let Some(r) = ring else {
            if !line.starts_with("ring") {
                return Err(perr("file must start with a `ring` header".into()));
            }
            ring = Some(parse_ring_header(line).map_err(|e| relabel(e, lineno))?);
            continue;
        };
        if let Some(rest) = line.strip_prefix("submodule") {
            if block.is_some() {
                return Err(perr("nested submodule block".into()));
            }
            let name = rest.trim();
            if name.is_empty() {
                return Err(perr("submodule needs a name".into()));
            }
            block = Some((name.to_string(), lineno, None, Vec::new()));
            continue;
        }
        let Some(b) = block.as_mut() else {
            return Err(perr(format!("unexpected line outside a submodule block: `{line}`")));
        };
        if line == "end" {
            let (name, _, shifts, lines) = block.take().unwrap();
            modules.push((name, build_submodule(r, shifts, &lines)?));
        } else if let Some(rest) = line.strip_prefix("shifts") {
            let shifts: std::result::Result<Vec<i32>, _> = rest.split_whitespace().map(str::parse).collect();
            b.2 = Some(shifts.map_err(|_| perr("bad shift list".into()))?);
        } else {
            b.3.push((lineno, line.to_string()));
        }
    }
    if let Some((name, l, ..)) = block {
        return Err(Error::Parse { line: l, msg: format!("submodule `{name}` is missing `end`") });
    }
    let ring = ring.ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    Ok(Document { ring, modules })
}

fn relabel(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

fn build_submodule(ring: Ring, shifts: Option<Vec<i32>>, lines: &[(usize, String)]) -> Result<Submodule> {
    let mut elems: Vec<(usize, Vec<PolyVector>)> = Vec::new();
    for (lineno, line) in lines {
        for item in split_top_level(line, *lineno)? {
            let item = item.trim();
            if let Some(inner) = item.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or(Error::Parse { line: *lineno, msg: "unterminated vector".into() })?;
                let comps: Result<Vec<PolyVector>> =
                    split_top_level(inner, *lineno)?.iter().map(|c| parse_poly(&ring, c, *lineno)).collect();
                elems.push((*lineno, comps?));
            } else {
                elems.push((*lineno, vec![parse_poly(&ring, item, *lineno)?]));
            }
        }
    }
    let rank = match &shifts {
        Some(s) => s.len(),
        None => elems.iter().map(|(_, v)| v.len()).max().unwrap_or(1),
    };
    let ambient = FreeModule::new(shifts.unwrap_or_else(|| vec![0; rank]));
    let fr = ring.field();
    let mut gens = Vec::new();
    for (lineno, comps) in elems {
        if comps.len() != rank {
            return Err(Error::Parse { line: lineno, msg: format!("expected {rank} components, got {}", comps.len()) });
        }
        let mut v = PolyVector::zero();
        for (k, c) in comps.iter().enumerate() {
            v = v.add(&c.placed_at(k as u32), fr);
        }
        gens.push(v);
    }
    Submodule::new(ring, ambient, gens)
}

/// Splits at commas that are not nested in brackets or parentheses.
fn split_top_level(s: &str, line: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse { line, msg: "unbalanced brackets".into() });
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse { line, msg: "unbalanced brackets".into() });
    }
    out.push(cur);
    Ok(out.into_iter().filter(|x| !x.trim().is_empty()).collect())
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, n: usize, line: usize) -> Result<Vec<Tok>> {
    let err = |msg: String| Error::Parse { line, msg };
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let read_num = |i: &mut usize| -> Result<u64> {
        let st = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        s[st..*i].parse().map_err(|_| err(format!("number too large: {}", &s[st..*i])))
    };
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'0'..=b'9' => out.push(Tok::Num(read_num(&mut i)?)),
            b'x' => {
                i += 1;
                if i >= b.len() || !b[i].is_ascii_digit() {
                    return Err(err("variables are written x1..xn".into()));
                }
                let k = read_num(&mut i)? as usize;
                if k == 0 || k > n {
                    return Err(err(format!("variable x{k} outside x1..x{n}")));
                }
                out.push(Tok::Var(k - 1));
            }
            b'+' => (out.push(Tok::Plus), i += 1).1,
            b'-' => (out.push(Tok::Minus), i += 1).1,
            b'*' => (out.push(Tok::Star), i += 1).1,
            b'/' => (out.push(Tok::Slash), i += 1).1,
            b'^' => (out.push(Tok::Caret), i += 1).1,
            b'(' => (out.push(Tok::LParen), i += 1).1,
            b')' => (out.push(Tok::RParen), i += 1).1,
            _ => return Err(err(format!("unexpected character `{}`", c as char))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
    line: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<PolyVector> {
        let f = self.ring.field();
        let mut acc = PolyVector::zero();
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                sign_neg = true;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign_neg { acc.sub(&t, f) } else { acc.add(&t, f) };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyVector> {
        let f = self.ring.field();
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let x = self.factor()?;
                    acc = acc.mul_poly(&x, f);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(self.err("only integer divisors are allowed"));
                    };
                    self.pos += 1;
                    let d = f.from_i64((d % f.characteristic() as u64) as i64);
                    if d == 0 {
                        return Err(self.err("division by zero in the coefficient field"));
                    }
                    acc = acc.scale(f.inv(d), f);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let x = self.factor()?;
                    acc = acc.mul_poly(&x, f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyVector> {
        let f = self.ring.field();
        let base = match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                PolyVector::constant(f.from_i64((v % f.characteristic() as u64) as i64))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                PolyVector::var(i)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                e
            }
            _ => return Err(self.err("expected a number, variable or `(`")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(self.err("exponent must be a nonnegative integer"));
            };
            self.pos += 1;
            if e > u16::MAX as u64 / 2 {
                return Err(self.err("exponent too large"));
            }
            if base.len() == 1 && base.terms()[0].comp == 0 {
                let t = base.terms()[0];
                let mut m = Monomial::one();
                for _ in 0..e {
                    m = m.mul(&t.mono);
                }
                let mut c = 1;
                for _ in 0..e {
                    c = f.mul(c, t.coeff);
                }
                return Ok(PolyVector::from_terms(f, vec![Term::new(c, m, 0)]));
            }
            let mut acc = PolyVector::constant(1);
            for _ in 0..e {
                acc = acc.mul_poly(&base, f);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

/// Parses one polynomial over `ring`.
pub fn parse_poly(ring: &Ring, s: &str, line: usize) -> Result<PolyVector> {
    let toks = tokenize(s.trim(), ring.nvars(), line)?;
    if toks.is_empty() {
        return Err(Error::Parse { line, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, ring, line };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
