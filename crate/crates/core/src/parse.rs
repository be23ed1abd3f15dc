//! Text syntax for field descriptors, field elements and polynomials.
//!
//! Descriptors: `Q`, `F7`, `Q[t]/(t^2-2)`, nested by repetition as in
//! `F5[a]/(a^2-2)[b]/(b^2-a)`. Elements: `3/4`, `5`, `[1,0,2]` (coordinates
//! over the base, lowest degree first), or any constant expression such as
//! `1+t`. Polynomials: sums of products of coefficients, variables and
//! powers, with parentheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UniPoly};

/// Sparse polynomial in an arbitrary number of variables.
pub(crate) type Sparse = BTreeMap<Vec<u32>, FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

struct Ctx<'a> {
    field: &'a Field,
    vars: &'a [&'a str],
    generators: Vec<(String, FieldElement)>,
}

impl<'a> Ctx<'a> {
    fn new(field: &'a Field, vars: &'a [&'a str]) -> Ctx<'a> {
        let mut generators = Vec::new();
        let mut level = Some(field);
        while let Some(f) = level {
            if let (Some(name), Some(g)) = (f.generator_name(), f.generator()) {
                let lifted = g.lift_into(field).expect("generator of a subfield");
                generators.push((name.to_string(), lifted));
            }
            level = f.base();
        }
        Ctx {
            field,
            vars,
            generators,
        }
    }

    fn constant(&self, c: FieldElement) -> Sparse {
        let mut m = Sparse::new();
        if !c.is_zero() {
            m.insert(vec![0; self.vars.len()], c);
        }
        m
    }
}

fn add_into(acc: &mut Sparse, e: &[u32], c: &FieldElement) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(e) {
        Some(old) => {
            let s = &*old + c;
            if s.is_zero() {
                acc.remove(e);
            } else {
                *old = s;
            }
        }
        None => {
            acc.insert(e.to_vec(), c.clone());
        }
    }
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, &e, &(ca * cb));
        }
    }
    out
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            other => Err(Error::Parse(format!("expected '{c}', found {other:?}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "trailing input starting at {:?}",
                self.toks[self.pos]
            )))
        }
    }

    fn expr(&mut self, ctx: &Ctx) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut first = true;
        loop {
            let negate = if self.peek_sym('-') {
                self.next();
                true
            } else if self.peek_sym('+') {
                self.next();
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term(ctx)?;
            for (e, c) in &t {
                let c = if negate { -c } else { c.clone() };
                add_into(&mut acc, e, &c);
            }
        }
        Ok(acc)
    }

    fn term(&mut self, ctx: &Ctx) -> Result<Sparse> {
        let mut acc = self.power(ctx)?;
        while self.peek_sym('*') {
            self.next();
            let f = self.power(ctx)?;
            acc = sparse_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self, ctx: &Ctx) -> Result<Sparse> {
        let base = self.atom(ctx)?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.next();
        let e = match self.next() {
            Some(Tok::Num(n)) => {
                u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
            }
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        let mut acc = ctx.constant(ctx.field.one());
        for _ in 0..e {
            acc = sparse_mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self, ctx: &Ctx) -> Result<Sparse> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut c = ctx.field.from_bigint(&n);
                if self.peek_sym('/') {
                    self.next();
                    let d = match self.next() {
                        Some(Tok::Num(d)) => d,
                        other => {
                            return Err(Error::Parse(format!(
                                "expected denominator, found {other:?}"
                            )))
                        }
                    };
                    c = c.checked_div(&ctx.field.from_bigint(&d))?;
                }
                Ok(ctx.constant(c))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = ctx.vars.iter().position(|v| *v == name) {
                    let mut e = vec![0; ctx.vars.len()];
                    e[i] = 1;
                    let mut m = Sparse::new();
                    m.insert(e, ctx.field.one());
                    return Ok(m);
                }
                if let Some((_, g)) = ctx.generators.iter().find(|(n, _)| *n == name) {
                    return Ok(ctx.constant(g.clone()));
                }
                Err(Error::Parse(format!("unknown symbol '{name}'")))
            }
            Some(Tok::Sym('(')) => {
                let inner = self.expr(ctx)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Tok::Sym('[')) => {
                let base = ctx.field.base().ok_or_else(|| {
                    Error::Parse(format!("coefficient vector over {}", ctx.field))
                })?;
                let mut coords = Vec::new();
                loop {
                    coords.push(self.constant_in(base)?);
                    if self.peek_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect_sym(']')?;
                if coords.len() > ctx.field.relative_degree() {
                    return Err(Error::Parse(format!(
                        "coefficient vector longer than the degree of {}",
                        ctx.field
                    )));
                }
                Ok(ctx.constant(ctx.field.from_coords(coords)?))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn constant_in(&mut self, field: &Field) -> Result<FieldElement> {
        let ctx = Ctx::new(field, &[]);
        let m = self.expr(&ctx)?;
        Ok(m.get(&Vec::new()).cloned().unwrap_or_else(|| field.zero()))
    }

    fn field(&mut self) -> Result<Field> {
        let mut field = match self.next() {
            Some(Tok::Ident(s)) if s == "Q" => Field::rationals(),
            Some(Tok::Ident(s)) if s.starts_with('F') => {
                let p: u64 = s[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime field '{s}'")))?;
                Field::prime(p)?
            }
            other => return Err(Error::Parse(format!("expected field, found {other:?}"))),
        };
        while self.peek_sym('[') {
            self.next();
            let name = match self.next() {
                Some(Tok::Ident(n)) => n,
                other => {
                    return Err(Error::Parse(format!(
                        "expected generator name, found {other:?}"
                    )))
                }
            };
            self.expect_sym(']')?;
            self.expect_sym('/')?;
            self.expect_sym('(')?;
            let vars = [name.as_str()];
            let ctx = Ctx::new(&field, &vars);
            let m = self.expr(&ctx)?;
            self.expect_sym(')')?;
            let modulus = sparse_to_uni(&m, &field, &name);
            field = field.extension(modulus, &name)?;
        }
        Ok(field)
    }
}

fn sparse_to_uni(m: &Sparse, field: &Field, var: &str) -> UniPoly {
    let deg = m.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut v = vec![field.zero(); deg + 1];
    for (e, c) in m {
        v[e[0] as usize] = c.clone();
    }
    UniPoly::new(field.clone(), v, var)
}

/// Parses a field descriptor.
pub fn parse_field(text: &str) -> Result<Field> {
    let mut p = Parser::new(text)?;
    let f = p.field()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a constant of `field`.
pub fn parse_element(text: &str, field: &Field) -> Result<FieldElement> {
    let mut p = Parser::new(text)?;
    let c = p.constant_in(field)?;
    p.expect_end()?;
    Ok(c)
}

/// Parses a univariate polynomial in `var` over `field`.
pub fn parse_unipoly(text: &str, field: &Field, var: &str) -> Result<UniPoly> {
    let vars = [var];
    let m = parse_polynomial(text, field, &vars)?;
    Ok(sparse_to_uni(&m, field, var))
}

pub(crate) fn parse_polynomial(text: &str, field: &Field, vars: &[&str]) -> Result<Sparse> {
    let mut p = Parser::new(text)?;
    let ctx = Ctx::new(field, vars);
    let m = p.expr(&ctx)?;
    p.expect_end()?;
    Ok(m)
}
