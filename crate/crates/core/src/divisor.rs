//! Prime divisors encoded as finite chains of point blow-ups, the chain of a
//! monomial valuation produced by the subtractive Euclidean algorithm, and
//! the pullback of polynomials along a chain.
//!
//! After every step the exceptional coordinate is `x` for `Origin` and `Free`
//! charts and `y` for `AtInfinity`. The divisor of a chain of length `ν` is
//! the exceptional divisor of the blow-up of the last center, so its
//! valuation is the order at the origin of the final chart, and the residue
//! field generator is `t = Res(y_ν / x_ν)`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UniPoly};
use crate::parse;
use crate::poly::{BiPoly, ChartMap};

/// Choice of the next center on the exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupStep {
    /// Origin of the first chart, `(x, y) ← (x, x·y)`.
    Origin,
    /// Origin of the second chart, `(x, y) ← (x·y, y)`.
    AtInfinity,
    /// The point `y = c` of the first chart, `(x, y) ← (x, x·(y + c))`.
    /// With a minimal polynomial the residue field is first extended by a
    /// root of it and `c` becomes that root.
    Free {
        c: FieldElement,
        minpoly: Option<UniPoly>,
    },
}

impl BlowupStep {
    pub fn free(c: FieldElement) -> BlowupStep {
        BlowupStep::Free { c, minpoly: None }
    }

    /// A free point whose coordinate is a root of `minpoly`.
    pub fn free_algebraic(minpoly: UniPoly) -> BlowupStep {
        let c = minpoly.field().zero();
        BlowupStep::Free {
            c,
            minpoly: Some(minpoly),
        }
    }

    /// True for steps whose chart is monomial in the current coordinates.
    pub fn is_monomial(&self) -> bool {
        match self {
            BlowupStep::Origin | BlowupStep::AtInfinity => true,
            BlowupStep::Free { c, minpoly } => minpoly.is_none() && c.is_zero(),
        }
    }
}

impl fmt::Display for BlowupStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupStep::Origin => write!(f, "O"),
            BlowupStep::AtInfinity => write!(f, "I"),
            BlowupStep::Free {
                minpoly: Some(m), ..
            } => write!(f, "F({})", m.with_var("t")),
            BlowupStep::Free { c, .. } => write!(f, "F({c})"),
        }
    }
}

/// A prime divisor of `R` given by its blow-up chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisor {
    base: Field,
    steps: Vec<BlowupStep>,
    /// Residue field after each step; `fields[0]` is the base.
    fields: Vec<Field>,
}

/// Unimodular matrix of a monomial chain:
/// `x = x_ν^{k1} y_ν^{k2}`, `y = x_ν^{l1} y_ν^{l2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChartMatrix {
    pub k1: u64,
    pub k2: u64,
    pub l1: u64,
    pub l2: u64,
}

impl ChartMatrix {
    pub fn identity() -> ChartMatrix {
        ChartMatrix {
            k1: 1,
            k2: 0,
            l1: 0,
            l2: 1,
        }
    }

    pub fn det(&self) -> i128 {
        self.k1 as i128 * self.l2 as i128 - self.k2 as i128 * self.l1 as i128
    }

    /// Exponents `(c, d)` of `x_ν, y_ν` in the image of `x^a y^b`.
    pub fn apply(&self, a: u64, b: u64) -> (u64, u64) {
        (self.k1 * a + self.l1 * b, self.k2 * a + self.l2 * b)
    }
}

/// The chain of the monomial valuation `v(x) = α, v(y) = β` and its matrix.
pub fn euclid_matrix(alpha: u64, beta: u64) -> Result<(ChartMatrix, Vec<BlowupStep>)> {
    if alpha == 0 || beta == 0 || alpha.gcd(&beta) != 1 {
        return Err(Error::NotCoprime(alpha, beta));
    }
    let mut m = ChartMatrix::identity();
    let mut steps = Vec::new();
    let (mut a, mut b) = (alpha, beta);
    while (a, b) != (1, 1) {
        assert_ne!(a, b, "coprime weights meet only at (1, 1)");
        if a < b {
            // y ← x·y: X^p Y^q ↦ X^{p+q} Y^q
            b -= a;
            m.k1 += m.k2;
            m.l1 += m.l2;
            steps.push(BlowupStep::Origin);
        } else {
            // x ← x·y: X^p Y^q ↦ X^p Y^{p+q}
            a -= b;
            m.k2 += m.k1;
            m.l2 += m.l1;
            steps.push(BlowupStep::AtInfinity);
        }
    }
    Ok((m, steps))
}

pub fn generator_name(level: usize) -> String {
    format!("θ{level}")
}

/// Validates the chain, extending the residue field at each free step that
/// carries a minimal polynomial.
pub fn build_divisor(base: &Field, steps: Vec<BlowupStep>) -> Result<PrimeDivisor> {
    let mut fields = vec![base.clone()];
    let mut out = Vec::with_capacity(steps.len());
    let mut level = base.depth();
    for step in steps {
        let current = fields.last().unwrap().clone();
        let (step, next) = match step {
            BlowupStep::Free {
                minpoly: Some(mp), ..
            } => {
                let mp = mp.lift_into(&current)?;
                if mp.degree().unwrap_or(0) < 2 {
                    return Err(Error::InvalidModulus(format!(
                        "{mp} does not define an extension"
                    )));
                }
                let mp = mp.monic();
                level += 1;
                let name = generator_name(level);
                let ext = current.extension(mp.with_var(&name), &name)?;
                let c = ext.generator().unwrap();
                (
                    BlowupStep::Free {
                        c,
                        minpoly: Some(mp),
                    },
                    ext,
                )
            }
            BlowupStep::Free { c, minpoly: None } => {
                let c = c.lift_into(&current)?;
                (BlowupStep::Free { c, minpoly: None }, current)
            }
            other => (other, current),
        };
        out.push(step);
        fields.push(next);
    }
    Ok(PrimeDivisor {
        base: base.clone(),
        steps: out,
        fields,
    })
}

/// Chain of a monomial valuation over `base`.
pub fn monomial_divisor(base: &Field, alpha: u64, beta: u64) -> Result<PrimeDivisor> {
    let (_, steps) = euclid_matrix(alpha, beta)?;
    build_divisor(base, steps)
}

/// Total transform of a polynomial along a chain, in the form
/// `u · x^ex · y^ey · g` with `u` a unit of value `unit` at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub ex: u64,
    pub ey: u64,
    pub strict: BiPoly,
    pub unit: FieldElement,
}

impl Pullback {
    /// Value of the original polynomial under the divisor.
    pub fn value(&self) -> u64 {
        self.ex + self.ey + self.strict.order().unwrap() as u64
    }

    /// `Res` of the pulled-back leading form at `x_ν = 1, y_ν = t`, up to
    /// the common power of `x_ν` that cancels in any quotient of equal value.
    pub fn leading_restriction(&self, var: &str) -> UniPoly {
        let lf = self.strict.leading_form().binary_form_at_x1(var);
        lf.shift(self.ey as usize).scale(&self.unit)
    }
}

impl PrimeDivisor {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn steps(&self) -> &[BlowupStep] {
        &self.steps
    }

    /// `ν`, the number of blow-ups.
    pub fn nu(&self) -> usize {
        self.steps.len()
    }

    /// `K'`, the residue field of the final center.
    pub fn final_field(&self) -> &Field {
        self.fields.last().unwrap()
    }

    /// Residue field in which step `i` is performed.
    pub fn field_before(&self, i: usize) -> &Field {
        &self.fields[i]
    }

    /// True when every chart is monomial in the original coordinates.
    pub fn is_monomial(&self) -> bool {
        self.steps.iter().all(BlowupStep::is_monomial)
    }

    /// Replays the chain on `f`.
    pub fn pullback(&self, f: &BiPoly) -> Result<Pullback> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = f.lift_into(&self.base)?.with_vars(["x", "y"]);
        let mut st = Pullback {
            ex: 0,
            ey: 0,
            strict: f,
            unit: self.base.one(),
        };
        for (i, step) in self.steps.iter().enumerate() {
            let next_field = &self.fields[i + 1];
            if next_field != &self.fields[i] {
                st.strict = st.strict.lift_into(next_field)?;
                st.unit = st.unit.lift_into(next_field)?;
            }
            let chart = match step {
                BlowupStep::Origin => ChartMap::Translate1(next_field.zero()),
                BlowupStep::AtInfinity => ChartMap::Chart2,
                BlowupStep::Free { c, .. } => ChartMap::Translate1(c.clone()),
            };
            let (g, o) = st.strict.strict_transform(&chart)?;
            let o = o as u64;
            match &chart {
                ChartMap::Translate1(c) if c.is_zero() => {
                    st.ex += st.ey + o;
                }
                ChartMap::Translate1(c) => {
                    // y^ey ↦ x^ey (y + c)^ey, a unit with value c^ey
                    st.unit = &st.unit * &c.pow(st.ey);
                    st.ex += st.ey + o;
                    st.ey = 0;
                }
                ChartMap::Chart2 => {
                    st.ey += st.ex + o;
                }
            }
            st.strict = g;
        }
        Ok(st)
    }

    /// Value of `f` under the divisorial valuation.
    pub fn value(&self, f: &BiPoly) -> Result<u64> {
        Ok(self.pullback(f)?.value())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "steps": self.to_string(),
            "nu": self.nu(),
            "final_field": self.final_field().to_string(),
        })
    }
}

impl fmt::Display for PrimeDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    parts.push(cur);
    parts
}

/// Parses a chain such as `O,I,F(3/2),F(t^2-2)` over `base`. The argument of
/// `F` is a point when constant and a minimal polynomial in `t` otherwise.
pub fn parse_divisor(text: &str, base: &Field) -> Result<PrimeDivisor> {
    let mut steps = Vec::new();
    let mut current = base.clone();
    let trimmed = text.trim();
    if !trimmed.is_empty() {
        for part in split_top_level(trimmed) {
            let part = part.trim();
            let step = match part {
                "O" => BlowupStep::Origin,
                "I" => BlowupStep::AtInfinity,
                _ if part.starts_with("F(") && part.ends_with(')') => {
                    let inner = &part[2..part.len() - 1];
                    let poly = parse::parse_unipoly(inner, &current, "t")?;
                    match poly.degree() {
                        None => BlowupStep::free(current.zero()),
                        Some(0) => BlowupStep::free(poly.coeff(0)),
                        Some(1) => {
                            let root = (-poly.coeff(0)).checked_div(&poly.coeff(1))?;
                            BlowupStep::free(root)
                        }
                        Some(_) => BlowupStep::free_algebraic(poly.monic()),
                    }
                }
                _ => return Err(Error::Parse(format!("unknown blow-up step '{part}'"))),
            };
            // later steps parse over the field extended so far
            let d = build_divisor(&current, vec![step])?;
            current = d.final_field().clone();
            steps.push(d.steps[0].clone());
        }
    }
    build_divisor(base, steps)
}
