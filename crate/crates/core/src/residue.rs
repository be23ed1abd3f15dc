//! Residues `Res_v(z) ∈ K'(t)` along prime divisors, dicriticality, and
//! regeneration of a residue as a polynomial after a change of generator.
//!
//! A residue is dicritical when it is transcendental over `K`. Since `K'` is
//! algebraic over `K` and algebraically closed in `K'(t)`, this holds exactly
//! when the reduced fraction is nonconstant.

use serde::Serialize;

use crate::divisor::{euclid_matrix, PrimeDivisor};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UniPoly};
use crate::poly::BiPoly;
use crate::valuation::{EdgeData, MonomialValuation};

const T: &str = "t";

/// A reduced fraction in `K'(t)` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueElement {
    num: UniPoly,
    den: UniPoly,
}

impl ResidueElement {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<ResidueElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = den.field().clone();
        if num.is_zero() {
            return Ok(ResidueElement::zero(&field));
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let lc = den.leading().inv()?;
        Ok(ResidueElement {
            num: num.scale(&lc).with_var(T),
            den: den.scale(&lc).with_var(T),
        })
    }

    pub fn zero(field: &Field) -> ResidueElement {
        ResidueElement {
            num: UniPoly::zero(field, T),
            den: UniPoly::constant(field.one(), T),
        }
    }

    pub fn constant(c: FieldElement) -> ResidueElement {
        let field = c.field().clone();
        ResidueElement::new(UniPoly::constant(c, T), UniPoly::constant(field.one(), T))
            .expect("nonzero denominator")
    }

    pub fn from_poly(p: UniPoly) -> ResidueElement {
        let one = UniPoly::constant(p.field().one(), T);
        ResidueElement::new(p, one).expect("nonzero denominator")
    }

    /// `Σ c · t^e` with possibly negative exponents.
    pub fn from_laurent(field: &Field, terms: &[(i64, FieldElement)]) -> ResidueElement {
        let shift = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        let deg = terms.iter().map(|t| t.0 - shift).max().unwrap_or(0) as usize;
        let mut v = vec![field.zero(); deg + 1];
        for (e, c) in terms {
            let i = (e - shift) as usize;
            v[i] = &v[i] + c;
        }
        let num = UniPoly::new(field.clone(), v, T);
        let den = UniPoly::monomial(field.one(), (-shift) as usize, T);
        ResidueElement::new(num, den).expect("nonzero denominator")
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Denominator one.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `max(deg N, deg D)`, the degree of the map to ℙ¹.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    /// Value at `t = λ`, or `None` at a pole.
    pub fn eval(&self, lambda: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(lambda);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(lambda).checked_div(&d).expect("nonzero"))
    }

    pub fn lift_into(&self, target: &Field) -> Result<ResidueElement> {
        ResidueElement::new(self.num.lift_into(target)?, self.den.lift_into(target)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_string(), "den": self.den.to_string()})
    }
}

impl std::fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `t ↦ (ρ₁t' + ρ₂)/(θ₁t' + θ₂)` with `ρ₁θ₂ − ρ₂θ₁ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub rho1: FieldElement,
    pub rho2: FieldElement,
    pub theta1: FieldElement,
    pub theta2: FieldElement,
}

impl Mobius {
    pub fn new(
        rho1: FieldElement,
        rho2: FieldElement,
        theta1: FieldElement,
        theta2: FieldElement,
    ) -> Result<Mobius> {
        let det = &(&rho1 * &theta2) - &(&rho2 * &theta1);
        if det.is_zero() {
            return Err(Error::InvalidArgument(
                "singular Möbius transformation".into(),
            ));
        }
        Ok(Mobius {
            rho1,
            rho2,
            theta1,
            theta2,
        })
    }

    pub fn identity(field: &Field) -> Mobius {
        Mobius::new(field.one(), field.zero(), field.zero(), field.one()).unwrap()
    }

    /// `t ↦ 1/t'`.
    pub fn swap(field: &Field) -> Mobius {
        Mobius::new(field.zero(), field.one(), field.one(), field.zero()).unwrap()
    }

    pub fn inverse(&self) -> Mobius {
        Mobius::new(
            self.theta2.clone(),
            -&self.rho2,
            -&self.theta1,
            self.rho1.clone(),
        )
        .expect("inverse of an invertible map")
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &Field, rng: &mut R) -> Mobius {
        loop {
            let m = Mobius::new(
                field.random_element(rng),
                field.random_element(rng),
                field.random_element(rng),
                field.random_element(rng),
            );
            if let Ok(m) = m {
                return m;
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rho1.is_one() && self.rho2.is_zero() && self.theta1.is_zero() && self.theta2.is_one()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rho": [self.rho1.to_string(), self.rho2.to_string()],
            "theta": [self.theta1.to_string(), self.theta2.to_string()],
        })
    }
}

impl std::fmt::Display for Mobius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "t = ({}*t'+{})/({}*t'+{})",
            self.rho1, self.rho2, self.theta1, self.theta2
        )
    }
}

/// Substitutes `t ← (ρ₁t' + ρ₂)/(θ₁t' + θ₂)`, clears and reduces.
pub fn apply_mobius(r: &ResidueElement, m: &Mobius) -> ResidueElement {
    let field = r.field().clone();
    if r.is_zero() {
        return r.clone();
    }
    let p = UniPoly::new(field.clone(), vec![m.rho2.clone(), m.rho1.clone()], T);
    let q = UniPoly::new(field.clone(), vec![m.theta2.clone(), m.theta1.clone()], T);
    let l = r.degree();
    let mut ppow = vec![UniPoly::constant(field.one(), T)];
    let mut qpow = vec![UniPoly::constant(field.one(), T)];
    for i in 1..=l {
        ppow.push(ppow[i - 1].mul(&p));
        qpow.push(qpow[i - 1].mul(&q));
    }
    let homog = |h: &UniPoly| {
        let mut acc = UniPoly::zero(&field, T);
        for (i, c) in h.coeffs().iter().enumerate() {
            acc = acc.add(&ppow[i].mul(&qpow[l - i]).scale(c));
        }
        acc
    };
    ResidueElement::new(homog(&r.num), homog(&r.den)).expect("invertible substitution")
}

/// Definition of a dicritical residue: nonconstant in `K'(t)`.
pub fn is_dicritical(r: &ResidueElement) -> bool {
    !r.is_constant()
}

/// A generator change making `r` a polynomial, when one exists: `r` must have
/// at most one pole on ℙ¹ and that pole must be `K'`-rational.
pub fn polynomial_regenerable(r: &ResidueElement) -> Option<Mobius> {
    let field = r.field();
    if r.den.is_constant() {
        return Some(Mobius::identity(field));
    }
    let sf = r.den.squarefree_part();
    let deg_n = r.num.degree().unwrap_or(0);
    let deg_d = r.den.degree().unwrap();
    if sf.degree() != Some(1) || deg_n > deg_d {
        return None;
    }
    // sf is monic linear, t - pole; send the pole to infinity via t = pole + 1/t'
    let pole = -sf.coeff(0);
    Some(Mobius::new(pole, field.one(), field.one(), field.zero()).unwrap())
}

/// Residue of `f / (x^{a0} y^{b0})` along the monomial valuation, read off
/// the edge of `f` through the chart matrix.
pub fn residue_monomial(
    f: &BiPoly,
    a0: u32,
    b0: u32,
    v: &MonomialValuation,
) -> Result<ResidueElement> {
    let e = v.edge_data(f)?;
    check_on_line(a0, b0, v, &e)?;
    let (m, _) = euclid_matrix(v.alpha(), v.beta())?;
    let d0 = m.apply(a0 as u64, b0 as u64).1 as i64;
    let terms: Vec<(i64, FieldElement)> = e
        .edge_terms
        .iter()
        .map(|(a, b, c)| (m.apply(*a as u64, *b as u64).1 as i64 - d0, c.clone()))
        .collect();
    Ok(ResidueElement::from_laurent(f.field(), &terms))
}

fn check_on_line(a0: u32, b0: u32, v: &MonomialValuation, e: &EdgeData) -> Result<()> {
    let w = v.weight(a0, b0);
    if w != e.gamma {
        return Err(Error::ValueMismatch(format!(
            "v(x^{a0} y^{b0}) = {w} but v(f) = {}",
            e.gamma
        )));
    }
    Ok(())
}

/// Residue of `numer / denom` along a prime divisor, from the leading forms
/// of the pulled-back data at the final center.
pub fn residue_general(numer: &BiPoly, denom: &BiPoly, d: &PrimeDivisor) -> Result<ResidueElement> {
    let k = d.final_field();
    let pd = d.pullback(denom)?;
    if numer.is_zero() {
        return Ok(ResidueElement::zero(k));
    }
    let pn = d.pullback(numer)?;
    let (vn, vd) = (pn.value(), pd.value());
    if vn < vd {
        return Err(Error::NotInValuationRing(vn as i64 - vd as i64));
    }
    if vn > vd {
        return Ok(ResidueElement::zero(k));
    }
    ResidueElement::new(pn.leading_restriction(T), pd.leading_restriction(T))
}

/// The three cases of the monomial classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    NotMonomialApplicable,
    EdgeCard2Plus { regenerable: bool },
    EdgeSingleton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Verdict {
    pub case: CaseTag,
    pub b0: u32,
    pub b_min: u32,
    pub b_max: u32,
    pub gamma: u64,
    pub b_set: Vec<u32>,
}

impl Theorem2Verdict {
    /// Regenerability predicted from the edge alone. A singleton edge gives
    /// a monomial residue, which is a polynomial in `t` or in `1/t`.
    pub fn regenerable(&self) -> Option<bool> {
        match self.case {
            CaseTag::EdgeCard2Plus { regenerable } => Some(regenerable),
            CaseTag::EdgeSingleton => Some(true),
            CaseTag::NotMonomialApplicable => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.case {
            CaseTag::NotMonomialApplicable => "NotMonomialApplicable",
            CaseTag::EdgeCard2Plus { .. } => "EdgeCard2Plus",
            CaseTag::EdgeSingleton => "EdgeSingleton",
        }
    }
}

/// Decides regenerability of `f / (x^{a0} y^{b0})` from `B_f` and `b0` only.
pub fn classify_theorem2(
    f: &BiPoly,
    a0: u32,
    b0: u32,
    v: &MonomialValuation,
) -> Result<Theorem2Verdict> {
    let e = v.edge_data(f)?;
    check_on_line(a0, b0, v, &e)?;
    let (b_min, b_max) = (e.min_b(), e.max_b());
    let case = if e.b_set.len() >= 2 {
        CaseTag::EdgeCard2Plus {
            regenerable: b0 <= b_min || b0 >= b_max,
        }
    } else {
        CaseTag::EdgeSingleton
    };
    Ok(Theorem2Verdict {
        case,
        b0,
        b_min,
        b_max,
        gamma: e.gamma,
        b_set: e.b_set,
    })
}

/// Classification along an arbitrary chain; only chains that are monomial
/// in `(x, y)` are covered, with weights `v(x), v(y)` read off the chain.
pub fn classify_theorem2_divisor(
    f: &BiPoly,
    a0: u32,
    b0: u32,
    d: &PrimeDivisor,
) -> Result<Theorem2Verdict> {
    if !d.is_monomial() {
        let vf = d.value(f)?;
        return Ok(Theorem2Verdict {
            case: CaseTag::NotMonomialApplicable,
            b0,
            b_min: 0,
            b_max: 0,
            gamma: vf,
            b_set: Vec::new(),
        });
    }
    let k = d.base();
    let alpha = d.value(&BiPoly::x(k))?;
    let beta = d.value(&BiPoly::y(k))?;
    classify_theorem2(f, a0, b0, &MonomialValuation::new(alpha, beta)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem1Outcome {
    NotDicritical,
    Regenerable,
    Violation,
}

/// Outcome of checking `z = f / x^m` along a divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    pub residue: ResidueElement,
    pub dicritical: bool,
    pub witness: Option<Mobius>,
    /// The residue after applying the witness.
    pub regenerated: Option<ResidueElement>,
    pub outcome: Theorem1Outcome,
}

pub fn check_theorem1(f: &BiPoly, m: u32, d: &PrimeDivisor) -> Result<Theorem1Report> {
    let x = BiPoly::x(d.base());
    let vf = d.value(f)?;
    let vx = d.value(&x)?;
    if vf != m as u64 * vx {
        return Err(Error::ValueMismatch(format!(
            "v(f) = {vf} but m·v(x) = {}",
            m as u64 * vx
        )));
    }
    let r = residue_general(f, &x.pow(m), d)?;
    let dicritical = is_dicritical(&r);
    if !dicritical {
        return Ok(Theorem1Report {
            residue: r,
            dicritical,
            witness: None,
            regenerated: None,
            outcome: Theorem1Outcome::NotDicritical,
        });
    }
    let witness = polynomial_regenerable(&r);
    let regenerated = witness.as_ref().map(|w| apply_mobius(&r, w));
    let ok = regenerated.as_ref().is_some_and(|g| g.is_polynomial());
    Ok(Theorem1Report {
        residue: r,
        dicritical,
        witness,
        regenerated,
        outcome: if ok {
            Theorem1Outcome::Regenerable
        } else {
            Theorem1Outcome::Violation
        },
    })
}

/// Report in the shared JSON layout.
pub fn report_json(
    r: &ResidueElement,
    witness: Option<&Mobius>,
    verdict: &str,
    edge: Option<(&[u32], u64)>,
) -> serde_json::Value {
    serde_json::json!({
        "dicritical": is_dicritical(r),
        "residue": r.to_json(),
        "regenerable": witness.is_some(),
        "witness": witness.map(Mobius::to_json),
        "verdict": verdict,
        "B_f": edge.map(|e| e.0.to_vec()),
        "gamma": edge.map(|e| e.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{build_divisor, monomial_divisor};
    use crate::parse::parse_unipoly;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(s: &str) -> BiPoly {
        BiPoly::parse(s, &q()).unwrap()
    }

    fn r(num: &str, den: &str) -> ResidueElement {
        ResidueElement::new(
            parse_unipoly(num, &q(), "t").unwrap(),
            parse_unipoly(den, &q(), "t").unwrap(),
        )
        .unwrap()
    }

    fn v(a: u64, b: u64) -> MonomialValuation {
        MonomialValuation::new(a, b).unwrap()
    }

    #[test]
    fn monomial_residues() {
        let f = p("x^2+x*y+y^2");
        assert_eq!(
            residue_monomial(&f, 1, 1, &v(1, 1)).unwrap(),
            r("t^2+t+1", "t")
        );
        assert_eq!(
            residue_monomial(&f, 1, 1, &v(1, 1)).unwrap().to_string(),
            "(t^2+t+1)/t"
        );
        assert_eq!(
            residue_monomial(&f, 2, 0, &v(1, 1)).unwrap(),
            r("t^2+t+1", "1")
        );
        assert_eq!(
            residue_monomial(&p("y"), 1, 0, &v(1, 1)).unwrap(),
            r("t", "1")
        );
        assert!(matches!(
            residue_monomial(&f, 1, 0, &v(1, 1)),
            Err(Error::ValueMismatch(_))
        ));
    }

    #[test]
    fn general_residues() {
        let m = build_divisor(&q(), vec![]).unwrap();
        assert_eq!(residue_general(&p("y"), &p("x"), &m).unwrap(), r("t", "1"));
        assert_eq!(
            residue_general(&p("x^2+y^3"), &p("x^2"), &m).unwrap(),
            r("1", "1")
        );
        assert_eq!(
            residue_general(&p("x"), &p("x^2"), &m),
            Err(Error::NotInValuationRing(-1))
        );
        assert!(residue_general(&p("x^2"), &p("x"), &m).unwrap().is_zero());
        let f = p("y^2-x^3+x*y^3");
        let d = monomial_divisor(&q(), 2, 3).unwrap();
        assert_eq!(
            residue_general(&f, &p("x^3"), &d).unwrap(),
            residue_monomial(&f, 3, 0, &v(2, 3)).unwrap()
        );
    }

    #[test]
    fn dicriticality() {
        assert!(is_dicritical(&r("t", "1")));
        assert!(!is_dicritical(&r("5", "1")));
        assert!(is_dicritical(&r("t^2+t+1", "t")));
    }

    #[test]
    fn regenerability() {
        assert!(polynomial_regenerable(&r("t^2+t+1", "t")).is_none());
        let w = polynomial_regenerable(&r("1", "t-2")).unwrap();
        let g = apply_mobius(&r("1", "t-2"), &w);
        assert!(g.is_polynomial() && g.num().degree() == Some(1));
        assert!(polynomial_regenerable(&r("t^2+1", "t-1")).is_none());
        assert!(polynomial_regenerable(&r("1", "t^2+1")).is_none());
        assert!(polynomial_regenerable(&r("t", "(t-1)^2")).is_some());
    }

    #[test]
    fn mobius_examples() {
        let s = Mobius::swap(&q());
        assert_eq!(apply_mobius(&r("t", "1"), &s), r("1", "t"));
        assert_eq!(apply_mobius(&r("t^2+t+1", "t"), &s), r("1+t+t^2", "t"));
        let x = r("t^3-2", "t^2+1");
        assert_eq!(apply_mobius(&x, &Mobius::identity(&q())), x);
        let m = Mobius::new(
            q().from_i64(2),
            q().from_i64(3),
            q().from_i64(-1),
            q().from_i64(5),
        )
        .unwrap();
        assert_eq!(apply_mobius(&apply_mobius(&x, &m), &m.inverse()), x);
    }

    #[test]
    fn classification() {
        let f = p("x^2+x*y+y^2");
        let c = classify_theorem2(&f, 1, 1, &v(1, 1)).unwrap();
        assert_eq!(c.case, CaseTag::EdgeCard2Plus { regenerable: false });
        assert_eq!(c.b_set, vec![0, 1, 2]);
        let c = classify_theorem2(&f, 2, 0, &v(1, 1)).unwrap();
        assert_eq!(c.case, CaseTag::EdgeCard2Plus { regenerable: true });
        let c = classify_theorem2(&p("y"), 1, 0, &v(1, 1)).unwrap();
        assert_eq!((c.case, c.b0, c.b_min), (CaseTag::EdgeSingleton, 0, 1));
        let d = crate::divisor::parse_divisor("O,F(1)", &q()).unwrap();
        let c = classify_theorem2_divisor(&p("y^2-x^3"), 3, 0, &d).unwrap();
        assert_eq!(c.case, CaseTag::NotMonomialApplicable);
    }

    #[test]
    fn theorem1_examples() {
        let m = build_divisor(&q(), vec![]).unwrap();
        let rep = check_theorem1(&p("y"), 1, &m).unwrap();
        assert_eq!(rep.outcome, Theorem1Outcome::Regenerable);
        assert!(rep.witness.unwrap().is_identity());
        let rep = check_theorem1(&p("x^2+x*y+y^2"), 2, &m).unwrap();
        assert_eq!(rep.residue, r("t^2+t+1", "1"));
        assert_eq!(rep.outcome, Theorem1Outcome::Regenerable);
        let rep = check_theorem1(&p("x^2"), 2, &m).unwrap();
        assert_eq!(rep.outcome, Theorem1Outcome::NotDicritical);
        assert!(matches!(
            check_theorem1(&p("y^2"), 1, &m),
            Err(Error::ValueMismatch(_))
        ));
        let mp = parse_unipoly("t^2-2", &q(), "t").unwrap();
        let d = build_divisor(&q(), vec![crate::divisor::BlowupStep::free_algebraic(mp)]).unwrap();
        // y ← x(y + θ) turns y^2 - 2x^2 + x^3 into x^2 (y^2 + 2θy + x)
        let rep = check_theorem1(&p("y^2-2*x^2+x^3"), 3, &d).unwrap();
        let k = d.final_field();
        let theta = k.generator().unwrap();
        let expected = UniPoly::new(k.clone(), vec![k.one(), &theta + &theta], "t");
        assert_eq!(rep.residue, ResidueElement::from_poly(expected));
        assert_eq!(rep.outcome, Theorem1Outcome::Regenerable);
    }
}
