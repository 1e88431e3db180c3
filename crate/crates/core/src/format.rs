//! Text formats: ring and group specs, system, matrix and certificate files.
//!
//! Ring specs: `Z/12`, `GR(4,2)`, `GF(9)`, `Z/4[X]/(X^2+X+1)`,
//! `Z/2[x,y]/(x^2,y^2)`, `UT(Z/2)`, `phi(Z/2 x Z/4)`, `summand(Z/6;3)`,
//! `table:<path>`, and products `A x B` (parentheses group).
//!
//! System files are line based:
//!
//! ```text
//! ring Z/4
//! vars x y
//! eq r0: 2*x + y = 3
//! eq 1*y = 1
//! ```
//!
//! `c*x` is a left coefficient, `x*c` a right one; any right coefficient or a
//! non-commutative ring makes the system two-sided. A `group <spec>` header
//! takes integer coefficients. Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::linsys::{GroupSystem, LinSystem, TwoSidedSystem};
use crate::matrix::Matrix;
use crate::reductions::build_phi_ring;
use crate::ring::{
    build_galois_ring, build_monomial_quotient, build_poly_quotient, build_product,
    build_table_ring_labeled, build_upper_triangular, build_zmod, Elem, FiniteRing,
};
use crate::solve::{Certificate, Witness};
use crate::structure;

/// Where a spec sits in its file, for error positions, and where relative
/// table paths resolve.
#[derive(Clone, Copy, Debug)]
struct Ctx<'a> {
    line: usize,
    column: usize,
    base: Option<&'a Path>,
}

impl Ctx<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column + offset, message)
    }

    fn at(&self, offset: usize) -> Self {
        Ctx {
            column: self.column + offset,
            ..*self
        }
    }

    fn lift(&self, offset: usize, e: Error) -> Error {
        match e {
            Error::Parse { .. } | Error::TooLarge { .. } | Error::NotARing { .. } | Error::NotAGroup { .. } => e,
            other => self.err(offset, other.to_string()),
        }
    }
}

/// Split at top-level occurrences of `sep` (outside brackets), returning
/// pieces with their byte offsets.
fn split_top<'s>(s: &'s str, sep: &str) -> Vec<(usize, &'s str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < s.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push((start, &s[start..i]));
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push((start, &s[start..]));
    out
}

/// Trim whitespace, returning the offset of the trimmed text.
fn trim_at(s: &str) -> (usize, &str) {
    let t = s.trim_start();
    let off = s.len() - t.len();
    (off, t.trim_end())
}

/// Content of `name(...)` when `s` is exactly that call.
fn call<'s>(s: &'s str, name: &str) -> Option<&'s str> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    balanced(inner).then_some(inner)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn number(ctx: Ctx, off: usize, s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| ctx.err(off, format!("expected a nonnegative integer, found '{}'", s.trim())))
}

pub fn parse_ring_spec(text: &str) -> Result<FiniteRing> {
    parse_ring_spec_in(text, None)
}

/// Ring spec with `table:` paths resolved against `base`.
pub fn parse_ring_spec_in(text: &str, base: Option<&Path>) -> Result<FiniteRing> {
    ring_spec(
        Ctx {
            line: 1,
            column: 1,
            base,
        },
        text,
    )
}

fn ring_spec(ctx: Ctx, text: &str) -> Result<FiniteRing> {
    let (off, s) = trim_at(text);
    let ctx = ctx.at(off);
    if s.is_empty() {
        return Err(ctx.err(0, "empty ring spec"));
    }
    let parts = split_top(s, " x ");
    if parts.len() > 1 {
        let rings = parts
            .iter()
            .map(|&(o, p)| ring_spec(ctx.at(o), p))
            .collect::<Result<Vec<_>>>()?;
        return build_product(&rings).map_err(|e| ctx.lift(0, e));
    }
    if let Some(path) = s.strip_prefix("table:") {
        return table_ring(ctx, path.trim(), s);
    }
    if s.starts_with('(') && s.ends_with(')') && balanced(&s[1..s.len() - 1]) {
        return ring_spec(ctx.at(1), &s[1..s.len() - 1]);
    }
    if let Some(args) = call(s, "GR") {
        let (q, r) = args
            .split_once(',')
            .ok_or_else(|| ctx.err(3, "GR needs two arguments"))?;
        let q = number(ctx, 3, q)?;
        let r = number(ctx, 4 + args.find(',').unwrap_or(0), r)?;
        return build_galois_ring(q, r as u32).map_err(|e| ctx.lift(0, e));
    }
    if let Some(args) = call(s, "GF") {
        let q = number(ctx, 3, args)?;
        let (p, k) = arith::prime_power(q).ok_or_else(|| ctx.err(3, format!("{q} is not a prime power")))?;
        return build_galois_ring(p, k).map_err(|e| ctx.lift(0, e));
    }
    if let Some(inner) = call(s, "UT") {
        let m = inner
            .trim()
            .strip_prefix("Z/")
            .ok_or_else(|| ctx.err(3, "UT takes Z/m"))?;
        let m = number(ctx, 5, m)?;
        return build_upper_triangular(m).map_err(|e| ctx.lift(0, e));
    }
    if let Some(inner) = call(s, "phi") {
        let g = group_spec(ctx.at(4), inner)?;
        return build_phi_ring(&g).map_err(|e| ctx.lift(0, e));
    }
    if let Some(inner) = call(s, "summand") {
        let (ring_off, ring_text, e_text) = match split_top(inner, ";").as_slice() {
            [(o, r), (_, e)] => (*o, *r, *e),
            _ => return Err(ctx.err(8, "summand takes 'ring;idempotent'")),
        };
        let r = ring_spec(ctx.at(8 + ring_off), ring_text)?;
        let e = r.parse_element(e_text).map_err(|e| ctx.lift(8, e))?;
        return structure::decompose_local(&r)
            .map_err(|e| ctx.lift(0, e))?
            .into_iter()
            .find(|x| x.e == e)
            .map(|x| x.ring)
            .ok_or_else(|| ctx.err(8, format!("{} is not a base idempotent", e_text.trim())));
    }
    if let Some(rest) = s.strip_prefix("Z/") {
        let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        let m = number(ctx, 2, &rest[..digits])?;
        let tail = &rest[digits..];
        if tail.is_empty() {
            return build_zmod(m).map_err(|e| ctx.lift(0, e));
        }
        return quotient(ctx.at(2 + digits), m, tail);
    }
    Err(ctx.err(0, format!("unrecognised ring spec '{s}'")))
}

/// `[X]/(f)` or `[x,y]/(x^a,y^b)` after `Z/m`.
fn quotient(ctx: Ctx, m: u64, tail: &str) -> Result<FiniteRing> {
    let close = tail
        .find(']')
        .filter(|_| tail.starts_with('['))
        .ok_or_else(|| ctx.err(0, "expected '[variables]'"))?;
    let vars: Vec<String> = tail[1..close].split(',').map(|v| v.trim().to_string()).collect();
    if vars.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric())) {
        return Err(ctx.err(1, "variables must be alphanumeric"));
    }
    let ideal_at = close + 1;
    let ideal = tail[ideal_at..]
        .strip_prefix("/(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ctx.err(ideal_at, "expected '/(...)'"))?;
    let ictx = ctx.at(ideal_at + 2);
    if vars == ["X"] {
        let (p, n) = arith::prime_power(m)
            .ok_or_else(|| ctx.err(0, format!("Z/{m}[X] needs a prime power modulus")))?;
        let f = parse_poly(ictx, ideal, m)?;
        return build_poly_quotient(p, n, &f).map_err(|e| ctx.lift(0, e));
    }
    let mut degrees = vec![0u32; vars.len()];
    for (o, gen) in split_top(ideal, ",") {
        let (o2, gen) = trim_at(gen);
        let (v, d) = gen
            .split_once('^')
            .ok_or_else(|| ictx.err(o + o2, "ideal generators must be x^d"))?;
        let k = vars
            .iter()
            .position(|x| x == v.trim())
            .ok_or_else(|| ictx.err(o + o2, format!("unknown variable '{}'", v.trim())))?;
        if degrees[k] != 0 {
            return Err(ictx.err(o + o2, format!("variable '{v}' bounded twice")));
        }
        degrees[k] = number(ictx, o + o2 + v.len() + 1, d)? as u32;
    }
    if let Some(k) = degrees.iter().position(|&d| d == 0) {
        return Err(ictx.err(0, format!("variable '{}' needs a bound", vars[k])));
    }
    build_monomial_quotient(m, &vars, &degrees).map_err(|e| ctx.lift(0, e))
}

/// `X^2+3*X+1` over `Z/q`, coefficients lowest first; `-` negates mod `q`.
fn parse_poly(ctx: Ctx, text: &str, q: u64) -> Result<Vec<u64>> {
    let mut coeffs: Vec<u64> = Vec::new();
    let normalized = text.replace('-', "+-");
    for (o, term) in split_top(&normalized, "+") {
        let (o2, term) = trim_at(term);
        if term.is_empty() {
            if o == 0 {
                continue;
            }
            return Err(ctx.err(o, "empty term"));
        }
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term),
        };
        let (c, mono) = match body.split_once('*') {
            Some((c, x)) => (number(ctx, o + o2, c)?, Some(x.trim())),
            None if body.starts_with('X') => (1, Some(body)),
            None => (number(ctx, o + o2, body)?, None),
        };
        let d = match mono {
            None => 0,
            Some("X") => 1,
            Some(x) => match x.strip_prefix("X^") {
                Some(d) => number(ctx, o + o2, d)? as usize,
                None => return Err(ctx.err(o + o2, format!("bad monomial '{x}'"))),
            },
        };
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        let c = c % q;
        let c = if neg { (q - c) % q } else { c };
        coeffs[d] = (coeffs[d] + c) % q;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

#[derive(Deserialize)]
struct TableFile {
    add: Vec<Vec<u32>>,
    #[serde(default)]
    mul: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    commutative: Option<bool>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

fn read_table(ctx: Ctx, path: &str) -> Result<TableFile> {
    let full: PathBuf = match ctx.base {
        Some(b) if Path::new(path).is_relative() => b.join(path),
        _ => PathBuf::from(path),
    };
    let text = std::fs::read_to_string(&full)
        .map_err(|e| ctx.err(6, format!("cannot read {}: {e}", full.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::parse(e.line(), e.column(), format!("{}: {e}", full.display()))
    })
}

/// `{"add": [[..]], "mul": [[..]], "commutative": bool, "names": [..]}`;
/// commutativity is detected when the flag is absent.
fn table_ring(ctx: Ctx, path: &str, spec: &str) -> Result<FiniteRing> {
    let t = read_table(ctx, path)?;
    let mul = t.mul.ok_or_else(|| ctx.err(6, "ring table needs 'mul'"))?;
    let commutative = t.commutative.unwrap_or_else(|| {
        mul.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| mul.get(j).and_then(|r| r.get(i)) == Some(&v)))
    });
    build_table_ring_labeled(&t.add, &mul, commutative, t.names, spec.to_string())
        .map_err(|e| ctx.lift(0, e))
}

pub fn parse_group_spec(text: &str) -> Result<AbelianGroup> {
    parse_group_spec_in(text, None)
}

/// Group specs: `Z/l`, products `A x B`, `(R,+)` for a ring spec `R`, and
/// `table:<path>` with an `add` table.
pub fn parse_group_spec_in(text: &str, base: Option<&Path>) -> Result<AbelianGroup> {
    group_spec(
        Ctx {
            line: 1,
            column: 1,
            base,
        },
        text,
    )
}

fn group_spec(ctx: Ctx, text: &str) -> Result<AbelianGroup> {
    let (off, s) = trim_at(text);
    let ctx = ctx.at(off);
    if s.is_empty() {
        return Err(ctx.err(0, "empty group spec"));
    }
    let parts = split_top(s, " x ");
    if parts.len() > 1 {
        let groups = parts
            .iter()
            .map(|&(o, p)| group_spec(ctx.at(o), p))
            .collect::<Result<Vec<_>>>()?;
        return AbelianGroup::product(&groups).map_err(|e| ctx.lift(0, e));
    }
    if let Some(path) = s.strip_prefix("table:") {
        let t = read_table(ctx, path.trim())?;
        return AbelianGroup::from_table_labeled(&t.add, s.to_string()).map_err(|e| ctx.lift(0, e));
    }
    if let Some(ring) = s.strip_prefix('(').and_then(|t| t.strip_suffix(",+)")) {
        return Ok(AbelianGroup::additive(&ring_spec(ctx.at(1), ring)?));
    }
    if s.starts_with('(') && s.ends_with(')') && balanced(&s[1..s.len() - 1]) {
        return group_spec(ctx.at(1), &s[1..s.len() - 1]);
    }
    if let Some(l) = s.strip_prefix("Z/") {
        return AbelianGroup::cyclic(number(ctx, 2, l)?).map_err(|e| ctx.lift(0, e));
    }
    Err(ctx.err(0, format!("unrecognised group spec '{s}'")))
}

/// Any of the three system kinds a file can hold.
#[derive(Clone, Debug)]
pub enum SystemFile {
    Ring(LinSystem),
    TwoSided(TwoSidedSystem),
    Group(GroupSystem),
}

enum Structure {
    Ring(FiniteRing),
    Group(AbelianGroup),
}

struct Term<'s> {
    offset: usize,
    var: usize,
    coeff: &'s str,
    right: bool,
}

struct Equation<'s> {
    line: usize,
    id: Option<String>,
    terms: Vec<Term<'s>>,
    rhs: (usize, &'s str),
}

/// Content lines with 1-based line numbers and the column of the content.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let (off, t) = trim_at(raw);
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, off + 1, t))
    })
}

fn keyword(t: &str) -> (&str, usize, &str) {
    match t.find(char::is_whitespace) {
        Some(k) => {
            let rest = &t[k..];
            let (o, r) = trim_at(rest);
            (&t[..k], k + o, r)
        }
        None => (t, t.len(), ""),
    }
}

/// Byte offset of the `:` ending an equation id. Ids and variables may both
/// contain `:`; the separator is the last top-level `:` followed by
/// whitespace, else the first one not inside a declared variable name.
fn id_separator(body: &str, vars: &[String]) -> Option<usize> {
    let colons: Vec<usize> = split_top(body, ":").iter().skip(1).map(|&(o, _)| o - 1).collect();
    let followed_by_space = |k: usize| body[k + 1..].starts_with(char::is_whitespace);
    if let Some(&k) = colons.iter().rev().find(|&&k| followed_by_space(k)) {
        return Some(k);
    }
    let is_break = |c: char| c.is_whitespace() || matches!(c, '*' | '+' | '=');
    colons.into_iter().find(|&k| {
        let lo = body[..k].rfind(is_break).map_or(0, |i| i + 1);
        let hi = body[k..].find(is_break).map_or(body.len(), |i| k + i);
        !vars.iter().any(|v| v == &body[lo..hi])
    })
}

fn parse_equation<'s>(line: usize, col: usize, body: &'s str, vars: &[String]) -> Result<Equation<'s>> {
    let err = |o: usize, m: String| Error::parse(line, col + o, m);
    let (id, start) = match id_separator(body, vars) {
        Some(k) => (Some(body[..k].trim().to_string()), k + 1),
        None => (None, 0),
    };
    if id.as_deref() == Some("") {
        return Err(err(0, "empty equation id".into()));
    }
    let eq = &body[start..];
    let sides = split_top(eq, "=");
    let [(_, lhs), (ro, rhs)] = sides.as_slice() else {
        return Err(err(start, "expected exactly one '='".into()));
    };
    let (rt, rhs_t) = trim_at(rhs);
    if rhs_t.is_empty() {
        return Err(err(start + ro, "missing right-hand side".into()));
    }
    let mut terms = Vec::new();
    for (o, t) in split_top(lhs, "+") {
        let (o2, t) = trim_at(t);
        let at = start + o + o2;
        if t.is_empty() {
            return Err(err(at, "empty term".into()));
        }
        if t == "0" && split_top(lhs, "+").len() == 1 {
            break;
        }
        let var_of = |x: &str| vars.iter().position(|v| v == x.trim());
        let term = match split_top(t, "*").as_slice() {
            [(_, x)] => {
                let var = var_of(x).ok_or_else(|| err(at, format!("unknown variable '{x}'")))?;
                Term {
                    offset: at,
                    var,
                    coeff: "1",
                    right: false,
                }
            }
            [(_, a), (_, b)] => match (var_of(a), var_of(b)) {
                (None, Some(var)) => Term {
                    offset: at,
                    var,
                    coeff: a.trim(),
                    right: false,
                },
                (Some(var), None) => Term {
                    offset: at,
                    var,
                    coeff: b.trim(),
                    right: true,
                },
                (Some(_), Some(_)) => return Err(err(at, "product of two variables".into())),
                (None, None) => return Err(err(at, format!("no variable in '{t}'"))),
            },
            _ => return Err(err(at, "expected coefficient*variable".into())),
        };
        terms.push(term);
    }
    Ok(Equation {
        line,
        id,
        terms,
        rhs: (col + start + ro + rt, rhs_t),
    })
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    parse_system_in(text, None)
}

/// System file, with `table:` paths resolved against `base`.
pub fn parse_system_in(text: &str, base: Option<&Path>) -> Result<SystemFile> {
    let mut structure: Option<Structure> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut equations = Vec::new();
    for (line, col, t) in content_lines(text) {
        let (kw, rest_at, rest) = keyword(t);
        let ctx = Ctx {
            line,
            column: col + rest_at,
            base,
        };
        match kw {
            "ring" | "group" if structure.is_some() => {
                return Err(Error::parse(line, col, "second ring/group header"))
            }
            "ring" => structure = Some(Structure::Ring(ring_spec(ctx, rest)?)),
            "group" => structure = Some(Structure::Group(group_spec(ctx, rest)?)),
            "vars" => {
                if vars.is_some() {
                    return Err(Error::parse(line, col, "second vars line"));
                }
                let v: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if v.is_empty() {
                    return Err(Error::parse(line, col + rest_at, "no variables"));
                }
                vars = Some(v);
            }
            "eq" => {
                let v = vars
                    .as_ref()
                    .ok_or_else(|| Error::parse(line, col, "equation before the vars line"))?;
                equations.push(parse_equation(line, col + rest_at, rest, v)?);
            }
            other => return Err(Error::parse(line, col, format!("unknown keyword '{other}'"))),
        }
    }
    let structure = structure.ok_or_else(|| Error::parse(1, 1, "missing ring or group header"))?;
    let vars = vars.ok_or_else(|| Error::parse(1, 1, "missing vars line"))?;
    if equations.is_empty() {
        return Err(Error::parse(1, 1, "no equations"));
    }
    let mut rows = Vec::new();
    for (k, e) in equations.iter().enumerate() {
        let id = e.id.clone().unwrap_or_else(|| format!("r{k}"));
        if rows.contains(&id) {
            return Err(Error::parse(e.line, 1, format!("duplicate equation id '{id}'")));
        }
        rows.push(id);
    }
    let elem_err = |line: usize, col: usize, e: Error| Error::parse(line, col, e.to_string());
    match structure {
        Structure::Group(g) => {
            let mut gs = GroupSystem::new(&g, rows, vars).map_err(|e| elem_err(1, 1, e))?;
            for (i, e) in equations.iter().enumerate() {
                for t in &e.terms {
                    let c: i64 = t.coeff.parse().map_err(|_| {
                        Error::parse(e.line, t.offset, format!("'{}' is not an integer", t.coeff))
                    })?;
                    gs.set(i, t.var, gs.get(i, t.var) + c);
                }
                let b = g.parse_element(e.rhs.1).map_err(|x| elem_err(e.line, e.rhs.0, x))?;
                gs.set_rhs(i, b);
            }
            Ok(SystemFile::Group(gs))
        }
        Structure::Ring(r) => {
            let two_sided = !r.is_commutative() || equations.iter().any(|e| e.terms.iter().any(|t| t.right));
            let mut ts = TwoSidedSystem::new(&r, rows, vars).map_err(|e| elem_err(1, 1, e))?;
            for (i, e) in equations.iter().enumerate() {
                for t in &e.terms {
                    let c = r.parse_element(t.coeff).map_err(|x| elem_err(e.line, t.offset, x))?;
                    if t.right {
                        ts.set_right(i, t.var, r.add(ts.right(i, t.var), c));
                    } else {
                        ts.set_left(i, t.var, r.add(ts.left(i, t.var), c));
                    }
                }
                let b = r.parse_element(e.rhs.1).map_err(|x| elem_err(e.line, e.rhs.0, x))?;
                ts.set_rhs(i, b);
            }
            if two_sided {
                Ok(SystemFile::TwoSided(ts))
            } else {
                Ok(SystemFile::Ring(ts.to_commutative()?))
            }
        }
    }
}

/// Canonical text of a system over a commutative ring.
pub fn write_system(s: &LinSystem) -> String {
    s.canonical_text()
}

pub fn write_twosided(ts: &TwoSidedSystem) -> String {
    let r = ts.ring();
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", r.label());
    let _ = writeln!(out, "vars {}", ts.col_ids().join(" "));
    for i in 0..ts.nrows() {
        let mut terms: Vec<String> = ts
            .left_terms(i)
            .map(|(j, a)| format!("{}*{}", r.name(a), ts.col_ids()[j]))
            .collect();
        terms.extend(ts.right_terms(i).map(|(j, a)| format!("{}*{}", ts.col_ids()[j], r.name(a))));
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = writeln!(out, "eq {}: {} = {}", ts.row_ids()[i], lhs, r.name(ts.rhs(i)));
    }
    out
}

pub fn write_group_system(gs: &GroupSystem) -> String {
    let g = gs.group();
    let mut out = String::new();
    let _ = writeln!(out, "group {}", g.label());
    let _ = writeln!(out, "vars {}", gs.col_ids().join(" "));
    for i in 0..gs.nrows() {
        let terms: Vec<String> = gs
            .row_terms(i)
            .map(|(j, c)| format!("{c}*{}", gs.col_ids()[j]))
            .collect();
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = writeln!(out, "eq {}: {} = {}", gs.row_ids()[i], lhs, g.name(gs.rhs(i)));
    }
    out
}

pub fn write_system_file(s: &SystemFile) -> String {
    match s {
        SystemFile::Ring(s) => write_system(s),
        SystemFile::TwoSided(ts) => write_twosided(ts),
        SystemFile::Group(gs) => write_group_system(gs),
    }
}

/// Matrix file: `ring`, `rows`, `cols` headers, then `row <id> = e e ..`.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    parse_matrix_in(text, None)
}

pub fn parse_matrix_in(text: &str, base: Option<&Path>) -> Result<Matrix> {
    let mut ring = None;
    let mut rows: Option<Vec<String>> = None;
    let mut cols: Option<Vec<String>> = None;
    let mut entries: Vec<(usize, usize, String, usize, &str)> = Vec::new();
    for (line, col, t) in content_lines(text) {
        let (kw, rest_at, rest) = keyword(t);
        let ctx = Ctx {
            line,
            column: col + rest_at,
            base,
        };
        match kw {
            "ring" => ring = Some(ring_spec(ctx, rest)?),
            "rows" => rows = Some(rest.split_whitespace().map(str::to_string).collect()),
            "cols" => cols = Some(rest.split_whitespace().map(str::to_string).collect()),
            "row" => {
                let (id, vals) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, col + rest_at, "expected 'row <id> = ...'"))?;
                let vals_at = col + rest_at + id.len() + 1;
                entries.push((line, vals_at, id.trim().to_string(), 0, vals));
            }
            other => return Err(Error::parse(line, col, format!("unknown keyword '{other}'"))),
        }
    }
    let ring = ring.ok_or_else(|| Error::parse(1, 1, "missing ring header"))?;
    let rows = rows.ok_or_else(|| Error::parse(1, 1, "missing rows header"))?;
    let cols = cols.ok_or_else(|| Error::parse(1, 1, "missing cols header"))?;
    let mut m = Matrix::zeros(&ring, rows.clone(), cols.clone());
    let mut seen = vec![false; rows.len()];
    for (line, at, id, _, vals) in entries {
        let i = rows
            .iter()
            .position(|r| *r == id)
            .ok_or_else(|| Error::parse(line, at, format!("unknown row '{id}'")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::parse(line, at, format!("row '{id}' given twice")));
        }
        let tokens: Vec<&str> = vals.split_whitespace().collect();
        if tokens.len() != cols.len() {
            return Err(Error::parse(
                line,
                at,
                format!("row '{id}' has {} entries, expected {}", tokens.len(), cols.len()),
            ));
        }
        for (j, tok) in tokens.iter().enumerate() {
            let x = ring
                .parse_element(tok)
                .map_err(|e| Error::parse(line, at, e.to_string()))?;
            m.set(i, j, x);
        }
    }
    Ok(m)
}

pub fn write_matrix(m: &Matrix) -> String {
    let r = m.ring();
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", r.label());
    let _ = writeln!(out, "rows {}", m.row_ids().join(" "));
    let _ = writeln!(out, "cols {}", m.col_ids().join(" "));
    for i in 0..m.nrows() {
        let vals: Vec<&str> = m.row(i).iter().map(|&x| r.name(x)).collect();
        let _ = writeln!(out, "row {} = {}", m.row_ids()[i], vals.join(" "));
    }
    out
}

/// Certificate text. Solutions list `var = element` in column order;
/// witnesses give the summand, the reduced ring and digest, and the row
/// combination as element indices of the reduced ring.
pub fn write_certificate(cols: &[String], name: &dyn Fn(Elem) -> String, cert: &Certificate) -> String {
    let mut out = String::new();
    match cert {
        Certificate::Solvable(x) => {
            out.push_str("certificate solvable\n");
            for (id, &v) in cols.iter().zip(x) {
                let _ = writeln!(out, "{id} = {}", name(v));
            }
        }
        Certificate::Unsolvable(w) => {
            out.push_str("certificate unsolvable\n");
            if let Some(y) = w.component {
                let _ = writeln!(out, "component {y}");
            }
            let _ = writeln!(out, "summand {}", w.summand);
            let _ = writeln!(out, "ring {}", w.label);
            let _ = writeln!(out, "digest {:016x}", w.digest);
            let idx: Vec<String> = w.combination.iter().map(|e| e.0.to_string()).collect();
            let _ = writeln!(out, "combination {}", idx.join(" "));
        }
    }
    out
}

pub fn parse_certificate(
    text: &str,
    cols: &[String],
    parse: &dyn Fn(&str) -> Result<Elem>,
) -> Result<Certificate> {
    let mut lines = content_lines(text);
    let (line, col, head) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty certificate"))?;
    match head {
        "certificate solvable" => {
            let mut x: Vec<Option<Elem>> = vec![None; cols.len()];
            for (line, col, t) in lines {
                let (id, v) = t
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, col, "expected 'var = value'"))?;
                let j = cols
                    .iter()
                    .position(|c| c == id.trim())
                    .ok_or_else(|| Error::parse(line, col, format!("unknown variable '{}'", id.trim())))?;
                if x[j].is_some() {
                    return Err(Error::parse(line, col, format!("'{}' assigned twice", id.trim())));
                }
                x[j] = Some(parse(v.trim()).map_err(|e| Error::parse(line, col + id.len() + 1, e.to_string()))?);
            }
            let missing: Vec<&str> = cols
                .iter()
                .zip(&x)
                .filter(|(_, v)| v.is_none())
                .map(|(c, _)| c.as_str())
                .collect();
            if !missing.is_empty() {
                return Err(Error::parse(line, col, format!("unassigned: {}", missing.join(" "))));
            }
            Ok(Certificate::Solvable(x.into_iter().map(Option::unwrap).collect()))
        }
        "certificate unsolvable" => {
            let mut component = None;
            let mut summand = None;
            let mut label = None;
            let mut digest = None;
            let mut combination = None;
            for (line, col, t) in lines {
                let (kw, at, rest) = keyword(t);
                let bad = |what: &str| Error::parse(line, col + at, format!("bad {what} '{rest}'"));
                match kw {
                    "component" => component = Some(rest.parse::<usize>().map_err(|_| bad("component"))?),
                    "summand" => summand = Some(rest.parse::<usize>().map_err(|_| bad("summand"))?),
                    "ring" => label = Some(rest.to_string()),
                    "digest" => digest = Some(u64::from_str_radix(rest, 16).map_err(|_| bad("digest"))?),
                    "combination" => {
                        combination = Some(
                            rest.split_whitespace()
                                .map(|v| v.parse::<u32>().map(Elem))
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|_| bad("combination"))?,
                        )
                    }
                    other => return Err(Error::parse(line, col, format!("unknown keyword '{other}'"))),
                }
            }
            let need = |what: &str| Error::parse(line, col, format!("witness lacks '{what}'"));
            Ok(Certificate::Unsolvable(Witness {
                component,
                summand: summand.ok_or_else(|| need("summand"))?,
                label: label.ok_or_else(|| need("ring"))?,
                digest: digest.ok_or_else(|| need("digest"))?,
                combination: combination.ok_or_else(|| need("combination"))?,
            }))
        }
        other => Err(Error::parse(line, col, format!("unknown certificate header '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs() {
        assert_eq!(parse_ring_spec("Z/12").unwrap().size(), 12);
        assert_eq!(parse_ring_spec("GR(4,2)").unwrap().size(), 16);
        assert_eq!(parse_ring_spec("GF(9)").unwrap().size(), 9);
        let r = parse_ring_spec("Z/4[X]/(X^2+X+1)").unwrap();
        assert_eq!(r.label(), "Z/4[X]/(X^2+X+1)");
        let p = parse_ring_spec("Z/2 x Z/3").unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.units().len(), 2);
        assert_eq!(parse_ring_spec("Z/2[x,y]/(x^2,y^2)").unwrap().size(), 16);
        assert_eq!(parse_ring_spec("UT(Z/2)").unwrap().size(), 8);
        assert_eq!(parse_ring_spec("phi(Z/3)").unwrap().size(), 9);
        assert_eq!(parse_ring_spec("summand(Z/6;3)").unwrap().size(), 2);
        assert_eq!(parse_ring_spec("(Z/2 x Z/2) x Z/3").unwrap().size(), 12);
    }

    #[test]
    fn labels_reparse() {
        for spec in ["Z/4[X]/(X^2+X+1)", "GR(4,2)", "Z/2 x (Z/3 x Z/5)", "UT(Z/3)", "phi(Z/2 x Z/4)"] {
            let r = parse_ring_spec(spec).unwrap();
            let again = parse_ring_spec(r.label()).unwrap();
            assert!(r.same_ring(&again), "{spec} -> {}", r.label());
        }
    }

    #[test]
    fn ring_spec_errors_carry_columns() {
        match parse_ring_spec("Z/2 x Q/3") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn system_round_trip() {
        let text = "ring Z/4\nvars x y\neq a: 2*x + y = 3\neq 1*y = 1\n";
        let SystemFile::Ring(s) = parse_system(text).unwrap() else {
            panic!("expected a ring system")
        };
        assert_eq!(s.row_ids(), &["a".to_string(), "r1".to_string()]);
        assert_eq!(s.get(0, 1), s.ring().one());
        let SystemFile::Ring(again) = parse_system(&write_system(&s)).unwrap() else {
            panic!()
        };
        assert_eq!(again.canonical_text(), s.canonical_text());
    }

    #[test]
    fn equation_ids_may_contain_colons() {
        let text = "ring Z/4\nvars x\neq neg:x.1: 2*x = 2\n";
        let SystemFile::Ring(s) = parse_system(text).unwrap() else {
            panic!("expected a ring system")
        };
        assert_eq!(s.row_ids(), &["neg:x.1".to_string()]);
        assert_eq!(s.rhs(0), s.ring().from_int(2));
    }

    #[test]
    fn two_sided_and_group_systems() {
        let text = "ring UT(Z/2)\nvars x\neq (1,1,0)*x + x*(0,1,1) = (1,0,1)\n";
        let SystemFile::TwoSided(ts) = parse_system(text).unwrap() else {
            panic!()
        };
        let SystemFile::TwoSided(again) = parse_system(&write_twosided(&ts)).unwrap() else {
            panic!()
        };
        assert_eq!(write_twosided(&again), write_twosided(&ts));

        let text = "group Z/2 x Z/4\nvars x y\neq 2*x + -1*y = (1,3)\n";
        let SystemFile::Group(gs) = parse_system(text).unwrap() else {
            panic!()
        };
        assert_eq!(gs.get(0, 1), -1);
        let SystemFile::Group(again) = parse_system(&write_group_system(&gs)).unwrap() else {
            panic!()
        };
        assert_eq!(write_group_system(&again), write_group_system(&gs));
    }

    #[test]
    fn system_errors() {
        match parse_system("ring Z/4\nvars x\neq 2*z = 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_system("vars x\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn matrix_round_trip() {
        let text = "ring Z/4\nrows a b\ncols a b\nrow a = 1 2\nrow b = 0 1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(write_matrix(&m), text);
    }

    #[test]
    fn certificate_round_trip() {
        let z4 = build_zmod(4).unwrap();
        let cols = vec!["x".to_string(), "y".to_string()];
        let name = |e: Elem| z4.name(e).to_string();
        let parse = |t: &str| z4.parse_element(t);
        let sol = Certificate::Solvable(vec![Elem(1), Elem(3)]);
        let text = write_certificate(&cols, &name, &sol);
        assert_eq!(parse_certificate(&text, &cols, &parse).unwrap(), sol);
        let w = Certificate::Unsolvable(Witness {
            component: Some(1),
            summand: 0,
            label: "Z/4".into(),
            digest: 0xdead_beef,
            combination: vec![Elem(2), Elem(0)],
        });
        let text = write_certificate(&cols, &name, &w);
        assert_eq!(parse_certificate(&text, &cols, &parse).unwrap(), w);
    }
}
