//! Sparse bivariate polynomials: the computational model of `K[x,y]`
//! localized at the origin, with the chart substitutions of a point blow-up
//! and the charts at infinity of the projective plane.

mod gcd;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{format_terms, Field, FieldElement, UniPoly};
use crate::parse;

pub use gcd::resultant_y;

/// Exponent pair `(a, b)` of `x^a y^b`.
pub type Exponent = (u32, u32);

/// One affine chart of the blow-up of the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartMap {
    /// `(x, y) ← (x, x·(y + c))`; the exceptional coordinate is `x`.
    Translate1(FieldElement),
    /// `(x, y) ← (x·y, y)`; the exceptional coordinate is `y`.
    Chart2,
}

/// Which affine chart at infinity of ℙ² to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InfinityChart {
    /// `(φ, ψ) = (1/x, y/x)`, the open set `X ≠ 0`.
    XChart,
    /// `(φ, ψ) = (1/y, x/y)`, the open set `Y ≠ 0`.
    YChart,
}

/// Sparse polynomial in two named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<Exponent, FieldElement>,
    vars: [Arc<str>; 2],
}

fn binomial_row(n: u32, field: &Field) -> Vec<FieldElement> {
    // C(n, k) = C(n, k-1) (n - k + 1) / k over the integers, then reduced
    let mut c = num_bigint::BigInt::from(1);
    let mut row = vec![field.from_bigint(&c)];
    for k in 1..=n as usize {
        c = c * (n as usize - k + 1) / k;
        row.push(field.from_bigint(&c));
    }
    row
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly::zero_with_vars(field, ["x", "y"])
    }

    pub fn zero_with_vars(field: &Field, vars: [&str; 2]) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
            vars: [Arc::from(vars[0]), Arc::from(vars[1])],
        }
    }

    fn empty_like(&self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: BTreeMap::new(),
            vars: self.vars.clone(),
        }
    }

    pub fn from_terms<I>(field: &Field, terms: I) -> BiPoly
    where
        I: IntoIterator<Item = (Exponent, FieldElement)>,
    {
        let mut p = BiPoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn constant(c: FieldElement) -> BiPoly {
        let field = c.field().clone();
        BiPoly::from_terms(&field, [((0, 0), c)])
    }

    pub fn monomial(c: FieldElement, a: u32, b: u32) -> BiPoly {
        let field = c.field().clone();
        BiPoly::from_terms(&field, [((a, b), c)])
    }

    pub fn x(field: &Field) -> BiPoly {
        BiPoly::monomial(field.one(), 1, 0)
    }

    pub fn y(field: &Field) -> BiPoly {
        BiPoly::monomial(field.one(), 0, 1)
    }

    /// Parses the polynomial text grammar over `field` in variables `x, y`.
    pub fn parse(text: &str, field: &Field) -> Result<BiPoly> {
        BiPoly::parse_with_vars(text, field, ["x", "y"])
    }

    pub fn parse_with_vars(text: &str, field: &Field, vars: [&str; 2]) -> Result<BiPoly> {
        let sparse = parse::parse_polynomial(text, field, &vars)?;
        let mut p = BiPoly::zero_with_vars(field, vars);
        for (e, c) in sparse {
            p.add_term((e[0], e[1]), &c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }

    pub fn with_vars(&self, vars: [&str; 2]) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.clone(),
            vars: [Arc::from(vars[0]), Arc::from(vars[1])],
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> FieldElement {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == 0 && b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0, 0)
    }

    /// Nonzero at the origin, i.e. a unit of the local ring.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// Order at the origin (the m-adic order); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Largest `(i, j)` such that `x^i y^j` divides `self`.
    pub fn monomial_content(&self) -> Exponent {
        let i = self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0);
        let j = self.terms.keys().map(|&(_, b)| b).min().unwrap_or(0);
        (i, j)
    }

    /// Exact division by `x^i y^j`; panics if it does not divide.
    pub fn div_monomial(&self, i: u32, j: u32) -> BiPoly {
        let mut out = self.empty_like();
        for (&(a, b), c) in &self.terms {
            assert!(a >= i && b >= j, "x^{i} y^{j} does not divide");
            out.terms.insert((a - i, b - j), c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> BiPoly {
        let mut out = self.empty_like();
        for (&(a, b), c) in &self.terms {
            out.terms.insert((a + i, b + j), c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &BiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        if self.vars != other.vars {
            return Err(Error::DescriptorMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars(),
                other.vars()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c);
        }
        out
    }

    pub fn scale(&self, k: &FieldElement) -> BiPoly {
        let mut out = self.empty_like();
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.empty_like();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut out = BiPoly::constant(self.field.one()).with_vars(self.vars());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for (&(a, b), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(a as u64)) * &y.pow(b as u64));
        }
        acc
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        let mut out = self.empty_like();
        for (&(a, b), c) in &self.terms {
            if a + b == d {
                out.terms.insert((a, b), c.clone());
            }
        }
        out
    }

    /// Lowest-degree homogeneous part (the tangent cone form).
    pub fn leading_form(&self) -> BiPoly {
        match self.order() {
            Some(r) => self.homogeneous_part(r),
            None => self.clone(),
        }
    }

    /// Dehomogenized binary form `h(1, t)` as a univariate polynomial.
    pub fn binary_form_at_x1(&self, var: &str) -> UniPoly {
        let deg = self.degree_in_y().unwrap_or(0) as usize;
        let mut v = vec![self.field.zero(); deg + 1];
        for (&(_, b), c) in &self.terms {
            v[b as usize] = &v[b as usize] + c;
        }
        UniPoly::new(self.field.clone(), v, var)
    }

    /// Restriction `f(0, y)` to the line `x = 0`.
    pub fn restrict_x0(&self, var: &str) -> UniPoly {
        let deg = self.degree_in_y().unwrap_or(0) as usize;
        let mut v = vec![self.field.zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            if a == 0 {
                v[b as usize] = c.clone();
            }
        }
        UniPoly::new(self.field.clone(), v, var)
    }

    /// Exchanges the roles of the two variables.
    pub fn swap(&self) -> BiPoly {
        let mut out = self.empty_like();
        for (&(a, b), c) in &self.terms {
            out.terms.insert((b, a), c.clone());
        }
        out
    }

    /// `f(x + dx, y + dy)`.
    pub fn translate(&self, dx: &FieldElement, dy: &FieldElement) -> BiPoly {
        let xs = BiPoly::from_terms(
            &self.field,
            [((1, 0), self.field.one()), ((0, 0), dx.clone())],
        );
        let ys = BiPoly::from_terms(
            &self.field,
            [((0, 1), self.field.one()), ((0, 0), dy.clone())],
        );
        self.compose(&xs, &ys)
    }

    /// Invertible linear change `f(a·x + b·y, c·x + d·y)`.
    pub fn linear_change(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Result<BiPoly> {
        if (&(a * d) - &(b * c)).is_zero() {
            return Err(Error::InvalidArgument("singular linear change".into()));
        }
        let xs = BiPoly::from_terms(&self.field, [((1, 0), a.clone()), ((0, 1), b.clone())]);
        let ys = BiPoly::from_terms(&self.field, [((1, 0), c.clone()), ((0, 1), d.clone())]);
        Ok(self.compose(&xs, &ys))
    }

    /// `f(xs, ys)` for polynomials `xs`, `ys` in the same variables.
    pub fn compose(&self, xs: &BiPoly, ys: &BiPoly) -> BiPoly {
        let dx = self.degree_in_x().unwrap_or(0);
        let dy = self.degree_in_y().unwrap_or(0);
        let mut xp = vec![BiPoly::constant(self.field.one())];
        for i in 1..=dx as usize {
            xp.push(xp[i - 1].mul(xs));
        }
        let mut yp = vec![BiPoly::constant(self.field.one())];
        for i in 1..=dy as usize {
            yp.push(yp[i - 1].mul(ys));
        }
        let mut out = BiPoly::zero(&self.field);
        for (&(a, b), c) in &self.terms {
            out = out.add(&xp[a as usize].mul(&yp[b as usize]).scale(c));
        }
        out.with_vars(self.vars())
    }

    /// Maps every coefficient into a tower over the current field.
    pub fn lift_into(&self, target: &Field) -> Result<BiPoly> {
        let mut out = BiPoly::zero_with_vars(target, self.vars());
        for (e, c) in &self.terms {
            out.terms.insert(*e, c.lift_into(target)?);
        }
        Ok(out)
    }

    /// Total transform `f ∘ chart`.
    pub fn substitute_chart(&self, chart: &ChartMap) -> BiPoly {
        let mut out = self.empty_like();
        match chart {
            ChartMap::Chart2 => {
                for (&(a, b), c) in &self.terms {
                    out.terms.insert((a, a + b), c.clone());
                }
            }
            ChartMap::Translate1(shift) => {
                assert!(
                    shift.field() == &self.field,
                    "chart shift lives over {}, polynomial over {}",
                    shift.field(),
                    self.field
                );
                if shift.is_zero() {
                    for (&(a, b), c) in &self.terms {
                        out.terms.insert((a + b, b), c.clone());
                    }
                    return out;
                }
                let maxb = self.degree_in_y().unwrap_or(0);
                let mut cpow = vec![self.field.one()];
                for i in 1..=maxb as usize {
                    cpow.push(&cpow[i - 1] * shift);
                }
                let mut rows: BTreeMap<u32, Vec<FieldElement>> = BTreeMap::new();
                for (&(a, b), c) in &self.terms {
                    let row = rows
                        .entry(b)
                        .or_insert_with(|| binomial_row(b, &self.field));
                    // x^{a+b} (y + c)^b = Σ_k C(b,k) c^{b-k} x^{a+b} y^k
                    for k in 0..=b {
                        let coef = &(c * &row[k as usize]) * &cpow[(b - k) as usize];
                        out.add_term((a + b, k), &coef);
                    }
                }
            }
        }
        out
    }

    /// Splits `f ∘ chart = E^e · f̃` with `E` the exceptional coordinate of the
    /// chart and `f̃` not divisible by `E`; `e` is the order of `f`.
    pub fn strict_transform(&self, chart: &ChartMap) -> Result<(BiPoly, u32)> {
        let order = self.order().ok_or(Error::ZeroPolynomial)?;
        let total = self.substitute_chart(chart);
        let (i, j) = total.monomial_content();
        let (strict, e) = match chart {
            ChartMap::Translate1(_) => (total.div_monomial(i, 0), i),
            ChartMap::Chart2 => (total.div_monomial(0, j), j),
        };
        assert_eq!(e, order, "exceptional multiplicity must equal the order");
        Ok((strict, e))
    }

    /// `Z^m f(X/Z, Y/Z)`.
    pub fn homogenize(&self, m: u32) -> Result<TriForm> {
        let degree = self.total_degree().unwrap_or(0);
        if m < degree {
            return Err(Error::DegreeTooSmall { m, degree });
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((a, b, m - a - b), c.clone()))
            .collect();
        Ok(TriForm {
            field: self.field.clone(),
            degree: m,
            terms,
        })
    }

    /// Numerator `N(φ, ψ)` and exponent `m` with `f = N / φ^m` in the chosen
    /// chart at infinity, `m` the total degree of `f`.
    pub fn to_infinity_chart(&self, which: InfinityChart) -> Result<(BiPoly, u32)> {
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let m = self.total_degree().unwrap();
        let mut out = BiPoly::zero_with_vars(&self.field, ["phi", "psi"]);
        for (&(a, b), c) in &self.terms {
            let psi = match which {
                InfinityChart::XChart => b,
                InfinityChart::YChart => a,
            };
            out.terms.insert((m - a - b, psi), c.clone());
        }
        Ok((out, m))
    }

    /// Greatest common divisor in `K[x, y]`, normalized so that the
    /// lexicographically largest term has coefficient one.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        gcd::bivariate_gcd(self, other).with_vars(self.vars())
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        gcd::bivariate_div(self, d).map(|q| q.with_vars(self.vars()))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let mut parts = Vec::new();
                for (v, e) in [(&self.vars[0], a), (&self.vars[1], b)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.to_string()),
                        _ => parts.push(format!("{v}^{e}")),
                    }
                }
                (c.clone(), parts.join("*"))
            })
            .collect();
        write!(f, "{}", format_terms(&terms))
    }
}

/// Homogeneous polynomial in `X, Y, Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriForm {
    field: Field,
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), FieldElement>,
}

impl TriForm {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &FieldElement)> {
        self.terms.iter()
    }

    /// Setting `Z = 1`.
    pub fn dehomogenize(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(&(a, b, _), c)| ((a, b), c.clone())),
        )
    }

    /// `F(X, Y, 0)`, the degree form cut out on the line at infinity.
    pub fn at_infinity(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .filter(|(&(_, _, c), _)| c == 0)
                .map(|(&(a, b, _), c)| ((a, b), c.clone())),
        )
    }
}

impl fmt::Display for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(&(a, b, c), k)| {
                let mut parts = Vec::new();
                for (v, e) in [("X", a), ("Y", b), ("Z", c)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.to_string()),
                        _ => parts.push(format!("{v}^{e}")),
                    }
                }
                (k.clone(), parts.join("*"))
            })
            .collect();
        write!(f, "{}", format_terms(&terms))
    }
}
