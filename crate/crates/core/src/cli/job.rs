//! The job language.
//!
//! ```text
//! ring x1..x6
//! ideal x1*x5 - x2*x4, x1*x6 - x3*x4, x2*x6 - x3*x5
//! cech
//! ```
//!
//! Statements end at `;` or at a line break outside brackets; `#` starts a
//! comment. Statements:
//!
//! * `ring x, y, z` or `ring x1..x6`: the base ring.
//! * `ideal g1, g2, [p, q], ...`: generators; `[p, q]` is the generator
//!   `p*q` given by its factors.
//! * `module V(x) + 2*V(x, y)`: a characteristic cycle other than `CC(R)`,
//!   written with the base primes of its components.
//! * `split V(0) | V(x)`: a direct-sum split of the module.
//! * `strategy single` or `strategy iterative`.
//! * one command: `localize`, `cech`, `lyubeznik` or `decompose`.

use std::sync::Arc;

use crate::cycles::{CharCycle, ConormalComponent, Strategy};
use crate::decompose::minimal_primes;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_polynomial_at, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Localize,
    Cech,
    Lyubeznik,
    Decompose,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Localize => "localize",
            Command::Cech => "cech",
            Command::Lyubeznik => "lyubeznik",
            Command::Decompose => "decompose",
        }
    }
}

/// A parsed and validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub ring: Arc<Ring>,
    pub cotangent: Arc<Ring>,
    pub generators: Vec<Vec<Polynomial>>,
    pub module: Option<CharCycle>,
    pub split: Option<Vec<CharCycle>>,
    pub strategy: Strategy,
    pub command: Command,
}

impl JobSpec {
    /// Generators as polynomials (products of their factors).
    pub fn generator_products(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|fs| fs[1..].iter().fold(fs[0].clone(), |acc, g| acc.mul_unchecked(g)))
            .collect()
    }
}

/// A piece of the input with the position of its first character.
#[derive(Clone, Debug)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// The sub-span starting `offset` bytes in.
    fn at(&self, offset: usize, len: usize) -> Span<'a> {
        let (mut line, mut column) = (self.line, self.column);
        for c in self.text[..offset].chars() {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Span {
            text: &self.text[offset..offset + len],
            line,
            column,
        }
    }

    /// Strips surrounding whitespace, keeping positions right.
    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let len = self.text.trim().len();
        self.at(start, len)
    }

    fn is_empty(&self) -> bool {
        self.text.trim().is_empty()
    }

    /// Splits at `sep` outside parentheses and brackets.
    fn split_top(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ if c == sep && depth == 0 => {
                    out.push(self.at(start, i - start));
                    start = i + c.len_utf8();
                }
                _ => {}
            }
        }
        out.push(self.at(start, self.text.len() - start));
        out
    }
}

/// Statements with comments removed.
fn statements(text: &str) -> Vec<Span<'_>> {
    let whole = Span { text, line: 1, column: 1 };
    let mut cuts: Vec<(usize, usize)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut in_comment = false;
    let mut comment_at = None;
    for (i, c) in text.char_indices() {
        if in_comment {
            if c == '\n' {
                in_comment = false;
                if depth <= 0 {
                    cuts.push((start, comment_at.unwrap_or(i)));
                    start = i + 1;
                    comment_at = None;
                }
            }
            continue;
        }
        match c {
            '#' => {
                in_comment = true;
                comment_at.get_or_insert(i);
            }
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ';' | '\n' if depth <= 0 => {
                cuts.push((start, comment_at.unwrap_or(i)));
                start = i + 1;
                comment_at = None;
            }
            _ => {}
        }
    }
    cuts.push((start, comment_at.unwrap_or(text.len())));
    cuts.into_iter()
        .map(|(from, to)| {
            let lead = text[from..to].len() - text[from..to].trim_start().len();
            whole.at(from + lead, to - from - lead)
        })
        .filter(|s| !s.is_empty())
        .collect()
}

fn keyword<'a>(s: &Span<'a>) -> (&'a str, Span<'a>) {
    let t = s.text;
    let end = t.find(char::is_whitespace).unwrap_or(t.len());
    (&t[..end], s.at(end, t.len() - end))
}

/// Expands `x1..x6` and splits on commas and blanks.
fn ring_names(rest: &Span<'_>) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for item in rest.split_top(',') {
        for word in item.text.split_whitespace() {
            if let Some((a, b)) = word.split_once("..") {
                let split = |w: &str| {
                    let digits = w.len() - w.trim_end_matches(|c: char| c.is_ascii_digit()).len();
                    let (p, n) = w.split_at(w.len() - digits);
                    n.parse::<usize>().ok().map(|n| (p.to_string(), n))
                };
                match (split(a), split(b)) {
                    (Some((pa, lo)), Some((pb, hi))) if pa == pb && !pa.is_empty() && lo <= hi => {
                        names.extend((lo..=hi).map(|i| format!("{pa}{i}")));
                    }
                    _ => return Err(item.trim().error(format!("bad variable range `{word}`"))),
                }
            } else {
                names.push(word.to_string());
            }
        }
    }
    if names.is_empty() {
        return Err(rest.error("empty ring declaration"));
    }
    Ok(names)
}

fn polynomial(ring: &Arc<Ring>, s: &Span<'_>) -> Result<Polynomial> {
    let s = s.trim();
    if s.is_empty() {
        return Err(s.error("expected a polynomial"));
    }
    parse_polynomial_at(ring, s.text, s.line, s.column)
}

fn generators(ring: &Arc<Ring>, rest: &Span<'_>) -> Result<Vec<Vec<Polynomial>>> {
    let mut out = Vec::new();
    for item in rest.split_top(',') {
        let item = item.trim();
        let factors = if let Some(inner) = item.text.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(item.error("unclosed `[`"));
            };
            let span = item.at(1, inner.len());
            span.split_top(',').iter().map(|f| polynomial(ring, f)).collect::<Result<Vec<_>>>()?
        } else {
            vec![polynomial(ring, &item)?]
        };
        if factors.iter().any(Polynomial::is_zero) {
            return Err(item.error("generator is zero"));
        }
        out.push(factors);
    }
    Ok(out)
}

/// `[k*]V(g, ...) + ...`
fn cycle(base: &Arc<Ring>, cotangent: &Arc<Ring>, s: &Span<'_>) -> Result<CharCycle> {
    let mut cc = CharCycle::zero(cotangent)?;
    for term in s.split_top('+') {
        let term = term.trim();
        let (mult, body) = match term.text.split_once('*') {
            Some((k, _)) if k.trim().chars().all(|c| c.is_ascii_digit()) && !k.trim().is_empty() => {
                let m: u64 = k.trim().parse().map_err(|_| term.error("bad multiplicity"))?;
                let off = k.len() + 1;
                (m, term.at(off, term.text.len() - off).trim())
            }
            _ => (1, term.clone()),
        };
        let inner = body
            .text
            .strip_prefix("V(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| body.error("expected a component `V(...)`"))?;
        let span = body.at(2, inner.len());
        let gens = span.split_top(',').iter().map(|g| polynomial(base, g)).collect::<Result<Vec<_>>>()?;
        let p = Ideal::new(base, gens)?;
        let primes = minimal_primes(&p)?;
        if primes.len() != 1 || !primes[0].prime.same_ideal(&p) {
            return Err(body.error(format!("{p} is not a prime ideal")));
        }
        if mult == 0 {
            return Err(term.error("multiplicity must be positive"));
        }
        cc.add(ConormalComponent::conormal_of(cotangent, &p)?, mult)?;
    }
    Ok(cc)
}

/// Parses a cycle in the `module` syntax over an existing job's rings.
pub fn parse_cycle(base: &Arc<Ring>, cotangent: &Arc<Ring>, text: &str) -> Result<CharCycle> {
    cycle(base, cotangent, &Span { text, line: 1, column: 1 })
}

/// Parses blocks separated by `|`.
pub fn parse_split(base: &Arc<Ring>, cotangent: &Arc<Ring>, text: &str) -> Result<Vec<CharCycle>> {
    let whole = Span { text, line: 1, column: 1 };
    whole.split_top('|').iter().map(|b| cycle(base, cotangent, b)).collect()
}

/// Parses and validates a job.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let mut ring: Option<(Arc<Ring>, Arc<Ring>)> = None;
    let mut gens: Option<Vec<Vec<Polynomial>>> = None;
    let mut module_text: Option<Span<'_>> = None;
    let mut split_text: Option<Span<'_>> = None;
    let mut strategy = Strategy::Iterative;
    let mut command: Option<(Command, Span<'_>)> = None;
    for st in statements(text) {
        let st = st.trim();
        let (word, rest) = keyword(&st);
        let need_ring = |ring: &Option<(Arc<Ring>, Arc<Ring>)>| {
            ring.clone().ok_or_else(|| st.error(format!("`{word}` before `ring`")))
        };
        match word {
            "ring" => {
                if ring.is_some() {
                    return Err(st.error("ring declared twice"));
                }
                let names = ring_names(&rest)?;
                let base = Ring::new(&names).map_err(|e| rest.trim().error(e.to_string()))?;
                let cot = Ring::cotangent(&base)?;
                ring = Some((base, cot));
            }
            "ideal" => {
                let (base, _) = need_ring(&ring)?;
                if gens.is_some() {
                    return Err(st.error("ideal declared twice"));
                }
                gens = Some(generators(&base, &rest)?);
            }
            "module" => module_text = Some(rest),
            "split" => split_text = Some(rest),
            "strategy" => {
                strategy = match rest.text.trim() {
                    "single" => Strategy::Single,
                    "iterative" => Strategy::Iterative,
                    other => return Err(rest.trim().error(format!("unknown strategy `{other}`"))),
                }
            }
            "localize" | "cech" | "lyubeznik" | "decompose" => {
                if command.is_some() {
                    return Err(st.error("more than one command"));
                }
                if !rest.is_empty() {
                    return Err(rest.trim().error(format!("`{word}` takes no arguments")));
                }
                let c = match word {
                    "localize" => Command::Localize,
                    "cech" => Command::Cech,
                    "lyubeznik" => Command::Lyubeznik,
                    _ => Command::Decompose,
                };
                command = Some((c, st.clone()));
            }
            _ => return Err(st.error(format!("unknown statement `{word}`"))),
        }
    }
    let whole = Span { text, line: 1, column: 1 };
    let (base, cot) = ring.ok_or_else(|| whole.error("missing `ring` declaration"))?;
    let (command, cmd_span) = command.ok_or_else(|| whole.error("missing command"))?;
    let generators = gens.unwrap_or_default();
    if generators.is_empty() {
        return Err(cmd_span.error(format!("`{}` needs at least one generator", command.name())));
    }
    let module = module_text.map(|m| cycle(&base, &cot, &m)).transpose()?;
    let split = split_text.map(|s| s.split_top('|').iter().map(|b| cycle(&base, &cot, b)).collect::<Result<Vec<_>>>()).transpose()?;
    if command == Command::Lyubeznik && module.is_some() {
        return Err(cmd_span.error("`lyubeznik` works on the ring itself and takes no module"));
    }
    if split.is_some() && module.is_none() {
        return Err(cmd_span.error("`split` needs a `module`"));
    }
    Ok(JobSpec {
        ring: base,
        cotangent: cot,
        generators,
        module,
        split,
        strategy,
        command,
    })
}
