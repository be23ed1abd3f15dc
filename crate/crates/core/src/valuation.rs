//! Monomial valuations `v(x) = α, v(y) = β` and the initial data they attach
//! to a polynomial: value, initial form and the edge set `B_f`.
//!
//! `B_f` is computed in the coordinates the polynomial is given in. When the
//! reference point has a zero coordinate, a change of coordinates may change
//! `B_f`; no such search is attempted.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::BiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    alpha: u64,
    beta: u64,
    note: Option<String>,
}

/// Minimal-weight data of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeData {
    /// The value `γ = v(f)`.
    pub gamma: u64,
    /// Terms `(a, b, λ)` with `aα + bβ = γ`, in lexicographic order.
    pub edge_terms: Vec<(u32, u32, FieldElement)>,
    /// The set `B_f`, ascending.
    pub b_set: Vec<u32>,
}

#[derive(Serialize)]
struct EdgeJson {
    gamma: u64,
    b_set: Vec<u32>,
    edge_terms: Vec<(u32, u32, String)>,
}

impl EdgeData {
    pub fn min_b(&self) -> u32 {
        self.b_set[0]
    }

    pub fn max_b(&self) -> u32 {
        *self.b_set.last().unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(EdgeJson {
            gamma: self.gamma,
            b_set: self.b_set.clone(),
            edge_terms: self
                .edge_terms
                .iter()
                .map(|(a, b, c)| (*a, *b, c.to_string()))
                .collect(),
        })
        .expect("serializable")
    }
}

impl MonomialValuation {
    /// Weights are divided by their gcd; the normalization is recorded.
    pub fn new(alpha: u64, beta: u64) -> Result<MonomialValuation> {
        if alpha == 0 || beta == 0 {
            return Err(Error::InvalidArgument(format!(
                "weights must be positive, got ({alpha}, {beta})"
            )));
        }
        let g = alpha.gcd(&beta);
        let note = (g > 1).then(|| {
            format!(
                "weights ({alpha}, {beta}) normalized to ({}, {})",
                alpha / g,
                beta / g
            )
        });
        Ok(MonomialValuation {
            alpha: alpha / g,
            beta: beta / g,
            note,
        })
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn normalization_note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn weight(&self, a: u32, b: u32) -> u64 {
        a as u64 * self.alpha + b as u64 * self.beta
    }

    pub fn value(&self, f: &BiPoly) -> Result<u64> {
        f.terms()
            .map(|(&(a, b), _)| self.weight(a, b))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Minimal-weight part of `f`, in variables `U, V`.
    pub fn initial_form(&self, f: &BiPoly) -> Result<BiPoly> {
        let gamma = self.value(f)?;
        let terms = f
            .terms()
            .filter(|(&(a, b), _)| self.weight(a, b) == gamma)
            .map(|(&e, c)| (e, c.clone()));
        Ok(BiPoly::from_terms(f.field(), terms).with_vars(["U", "V"]))
    }

    pub fn edge_data(&self, f: &BiPoly) -> Result<EdgeData> {
        let gamma = self.value(f)?;
        let edge_terms: Vec<_> = f
            .terms()
            .filter(|(&(a, b), _)| self.weight(a, b) == gamma)
            .map(|(&(a, b), c)| (a, b, c.clone()))
            .collect();
        let mut b_set: Vec<u32> = edge_terms.iter().map(|t| t.1).collect();
        b_set.sort_unstable();
        b_set.dedup();
        Ok(EdgeData {
            gamma,
            edge_terms,
            b_set,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn p(s: &str) -> BiPoly {
        BiPoly::parse(s, &Field::rationals()).unwrap()
    }

    fn v(a: u64, b: u64) -> MonomialValuation {
        MonomialValuation::new(a, b).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(v(2, 3).value(&p("y^2-x^3")), Ok(6));
        assert_eq!(v(1, 1).value(&p("x^2+x*y+y^2")), Ok(2));
        assert_eq!(v(1, 5).value(&p("y+x^2")), Ok(2));
        assert_eq!(v(1, 1).value(&p("0")), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn initial_forms() {
        let q = Field::rationals();
        let uv = |s: &str| BiPoly::parse_with_vars(s, &q, ["U", "V"]).unwrap();
        assert_eq!(
            v(2, 3).initial_form(&p("y^2-x^3+x^4")).unwrap(),
            uv("V^2-U^3")
        );
        assert_eq!(v(1, 1).initial_form(&p("x+y^2")).unwrap(), uv("U"));
        assert_eq!(v(1, 1).initial_form(&p("x+y")).unwrap(), uv("U+V"));
    }

    #[test]
    fn edges() {
        let e = v(1, 1).edge_data(&p("x^2+x*y+y^2")).unwrap();
        assert_eq!((e.gamma, e.b_set), (2, vec![0, 1, 2]));
        let e = v(2, 3).edge_data(&p("y^2-x^3")).unwrap();
        assert_eq!((e.gamma, e.b_set), (6, vec![0, 2]));
        let e = v(1, 1).edge_data(&p("y+x^2")).unwrap();
        assert_eq!((e.gamma, e.b_set), (1, vec![1]));
    }

    #[test]
    fn normalization() {
        let w = v(4, 6);
        assert_eq!((w.alpha(), w.beta()), (2, 3));
        assert!(w.normalization_note().is_some());
        assert!(v(2, 3).normalization_note().is_none());
        assert!(MonomialValuation::new(0, 1).is_err());
    }
}
