use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::{Field, FieldElement};
use crate::error::Result;

/// Dense univariate polynomial, lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, Debug)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
    var: Arc<str>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>, var: &str) -> UniPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == &field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field,
            coeffs,
            var: Arc::from(var),
        }
    }

    fn with_same_var(&self, coeffs: Vec<FieldElement>) -> UniPoly {
        let mut p = UniPoly {
            field: self.field.clone(),
            coeffs,
            var: self.var.clone(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: &Field, var: &str) -> UniPoly {
        UniPoly::new(field.clone(), Vec::new(), var)
    }

    pub fn constant(c: FieldElement, var: &str) -> UniPoly {
        UniPoly::new(c.field().clone(), vec![c], var)
    }

    /// `c * var^deg`.
    pub fn monomial(c: FieldElement, deg: usize, var: &str) -> UniPoly {
        let field = c.field().clone();
        let mut v = vec![field.zero(); deg];
        v.push(c);
        UniPoly::new(field, v, var)
    }

    pub fn var_poly(field: &Field, var: &str) -> UniPoly {
        UniPoly::monomial(field.one(), 1, var)
    }

    /// `var - root`.
    pub fn linear(root: &FieldElement, var: &str) -> UniPoly {
        UniPoly::new(root.field().clone(), vec![-root, root.field().one()], var)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(&self, var: &str) -> UniPoly {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.clone(),
            var: Arc::from(var),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Lowest power of the variable dividing `self` (zero for the zero polynomial).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        self.with_same_var(v)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        self.with_same_var(v)
    }

    pub fn neg(&self) -> UniPoly {
        self.with_same_var(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        self.with_same_var(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field, &self.var);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        self.with_same_var(v)
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        self.with_same_var(v)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut result = UniPoly::constant(self.field.one(), &self.var);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc_inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(&self.field, &self.var), self.with_same_var(r));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * dc);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (self.with_same_var(q), self.with_same_var(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division of {self} by {d}");
        q
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic (or zero).
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let zero = UniPoly::zero(&self.field, &self.var);
        let one = UniPoly::constant(self.field.one(), &self.var);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        self.with_same_var(v)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field, &inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(inner)
                .add(&UniPoly::constant(c.clone(), &inner.var));
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut result = UniPoly::constant(self.field.one(), &self.var).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Maps the coefficients into a tower over the current field.
    pub fn lift_into(&self, target: &Field) -> Result<UniPoly> {
        let v = self
            .coeffs
            .iter()
            .map(|c| c.lift_into(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(target.clone(), v, &self.var))
    }

    /// Monic polynomial with the same roots as `self`, each simple.
    ///
    /// In characteristic p the factors whose multiplicity is divisible by p
    /// are recovered by Frobenius descent on the p-th power part.
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero(), "squarefree part of zero");
        let parts = self.squarefree_decomposition();
        let mut acc = UniPoly::constant(self.field.one(), &self.var);
        for (g, _) in parts {
            // parts from the Frobenius branch can share factors with earlier ones
            let common = acc.gcd(&g);
            acc = acc.mul(&g.exact_div(&common));
        }
        acc
    }

    /// Squarefree parts `g_i` with multiplicities so that
    /// `monic(self) = Π g_i^{m_i}`. Over finite fields the same irreducible
    /// factor may occur in two entries.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return out;
        }
        let p = self.field.characteristic() as usize;
        let mut c = f.gcd(&f.derivative());
        let mut w = f.exact_div(&c);
        let mut i = 1;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y);
            if !fac.is_constant() {
                out.push((fac, i));
            }
            c = c.exact_div(&y);
            w = y;
            i += 1;
        }
        if !c.is_constant() {
            debug_assert!(p != 0, "leftover multiple factors in characteristic zero");
            let root = c.frobenius_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Inverse of the p-th power map on a polynomial in `var^p`.
    fn frobenius_root(&self) -> UniPoly {
        let p = self.field.characteristic() as usize;
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| c.frobenius_root())
            .collect();
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || c.is_zero()));
        self.with_same_var(v)
    }
}

/// Formats `Σ c·m` with explicit signs; `terms` pairs coefficients with
/// their monomial text (empty for the constant term).
pub(crate) fn format_terms(terms: &[(FieldElement, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let (neg, mag) = if c.prints_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => self.var.to_string(),
                    _ => format!("{}^{}", self.var, i),
                };
                (c.clone(), mono)
            })
            .collect();
        write!(f, "{}", format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(c: &[i64]) -> UniPoly {
        let q = Field::rationals();
        UniPoly::new(q.clone(), c.iter().map(|&n| q.from_i64(n)).collect(), "t")
    }

    fn fpoly(p: u64, c: &[i64]) -> UniPoly {
        let f = Field::prime(p).unwrap();
        UniPoly::new(f.clone(), c.iter().map(|&n| f.from_i64(n)).collect(), "t")
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(qpoly(&[-1, 0, 1]).gcd(&qpoly(&[-1, 1])), qpoly(&[-1, 1]));
        assert_eq!(
            qpoly(&[0, 0, 0, 1]).gcd(&qpoly(&[0, 0, 1])),
            qpoly(&[0, 0, 1])
        );
        // t^2+1 - (t^2-1) = 2, a unit
        assert_eq!(qpoly(&[1, 0, 1]).gcd(&qpoly(&[-1, 0, 1])), qpoly(&[1]));
        assert!(qpoly(&[]).gcd(&qpoly(&[])).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        assert_eq!(qpoly(&[2, -3, 0, 1]).squarefree_part(), qpoly(&[-2, 1, 1]));
        assert_eq!(qpoly(&[0, 0, 0, 0, 0, 1]).squarefree_part(), qpoly(&[0, 1]));
        // t^5 - 3 over F5 is (t - 3)^5
        assert_eq!(
            fpoly(5, &[-3, 0, 0, 0, 0, 1]).squarefree_part(),
            fpoly(5, &[-3, 1])
        );
        // (t-1)^7 (t+1)^2 over F7
        let f = fpoly(7, &[-1, 1]).pow(7).mul(&fpoly(7, &[1, 1]).pow(2));
        assert_eq!(f.squarefree_part(), fpoly(7, &[-1, 0, 1]));
    }

    #[test]
    fn division_identity() {
        let a = qpoly(&[3, 0, -2, 5, 1]);
        let b = qpoly(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn printing() {
        assert_eq!(qpoly(&[1, 1, 1]).to_string(), "t^2+t+1");
        assert_eq!(qpoly(&[-2, 0, 1]).to_string(), "t^2-2");
        assert_eq!(qpoly(&[0, -1]).to_string(), "-t");
        assert_eq!(qpoly(&[]).to_string(), "0");
    }
}
