//! Univariate factorization with field-dependent capability.
//!
//! Finite fields (prime or towers over a prime field) get complete
//! factorization: squarefree decomposition, distinct-degree splitting and
//! randomized equal-degree splitting. In characteristic zero only roots are
//! searched for: rational roots over ℚ (after which degree 2 and 3 leftovers
//! are irreducible), and over a tower `B(θ)` the roots lying in `B`. Anything
//! else is reported as an unfactored remainder.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldElement, UniPoly};
use crate::error::{Error, Result};

/// Output of [`UniPoly::split_factors`].
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    /// Leading coefficient of the input.
    pub leading: FieldElement,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(UniPoly, usize)>,
    /// Monic squarefree pieces whose factorization is out of reach.
    pub unfactored: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// Fails with the unfactored part attached when incomplete.
    pub fn complete(self) -> Result<Factorization> {
        if self.is_complete() {
            return Ok(self);
        }
        let rest = self
            .unfactored
            .iter()
            .map(|(g, m)| {
                if *m == 1 {
                    format!("({g})")
                } else {
                    format!("({g})^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        Err(Error::FactorizationUnsupported(rest))
    }

    /// Multiplies everything back together.
    pub fn expand(&self) -> UniPoly {
        let var = self
            .factors
            .first()
            .or(self.unfactored.first())
            .map(|(g, _)| g.var().to_string())
            .unwrap_or_else(|| "t".into());
        let mut acc = UniPoly::constant(self.leading.clone(), &var);
        for (g, m) in self.factors.iter().chain(&self.unfactored) {
            acc = acc.mul(&g.pow(*m as u32));
        }
        acc
    }
}

impl UniPoly {
    /// Factorization into monic irreducibles, complete whenever the field
    /// capability allows. Randomized steps use a fixed default seed.
    pub fn split_factors(&self) -> Result<Factorization> {
        self.split_factors_seeded(0)
    }

    pub fn split_factors_seeded(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let leading = self.leading();
        let mut factors: Vec<(UniPoly, usize)> = Vec::new();
        let mut unfactored = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (g, m) in self.squarefree_decomposition() {
            let (irr, rest) = if self.field().is_finite() {
                (factor_squarefree_finite(&g, &mut rng), None)
            } else {
                factor_squarefree_char0(&g)?
            };
            for h in irr {
                match factors.iter_mut().find(|(f, _)| *f == h) {
                    Some(entry) => entry.1 += m,
                    None => factors.push((h, m)),
                }
            }
            if let Some(r) = rest {
                unfactored.push((r, m));
            }
        }
        factors.sort_by(|(a, _), (b, _)| factor_order(a, b));
        Ok(Factorization {
            leading,
            factors,
            unfactored,
        })
    }

    /// Distinct roots found within the field capability.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        let fac = self.split_factors()?;
        Ok(fac
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| -&g.coeff(0))
            .collect())
    }
}

/// Linear factors by root (numerically over ℚ), then by degree and text.
fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let (ra, rb) = (-&a.coeff(0), -&b.coeff(0));
        match (ra.as_rational(), rb.as_rational()) {
            (Some(x), Some(y)) if a.degree() == Some(1) => x.cmp(y),
            _ => match (ra.as_residue(), rb.as_residue()) {
                (Some(x), Some(y)) if a.degree() == Some(1) => x.cmp(&y),
                _ => a.to_string().cmp(&b.to_string()),
            },
        }
    })
}

/// Errors unless `modulus` is certified irreducible.
pub(crate) fn check_irreducible(modulus: &UniPoly) -> Result<()> {
    let deg = modulus.degree().unwrap_or(0);
    let fac = modulus.split_factors()?;
    let reducible = fac.factors.len() + fac.unfactored.len() > 1
        || fac
            .factors
            .iter()
            .chain(&fac.unfactored)
            .any(|(_, m)| *m > 1)
        || fac.factors.iter().any(|(g, _)| g.degree() != Some(deg));
    if reducible {
        return Err(Error::ReducibleMinimalPolynomial(modulus.to_string()));
    }
    if !fac.is_complete() {
        return Err(Error::IrreducibilityUnverifiable(modulus.to_string()));
    }
    Ok(())
}

/// First monic irreducible polynomial of the given degree over a finite
/// field, in the enumeration order of [`Field::element_from_index`].
pub fn find_irreducible(field: &Field, degree: usize, var: &str) -> Result<UniPoly> {
    let q = field
        .order()
        .ok_or_else(|| Error::InvalidArgument("irreducible search needs a finite field".into()))?;
    let total = q.pow(degree as u32);
    let mut n = BigUint::zero();
    while n < total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = n.clone();
        for _ in 0..degree {
            let (quo, r) = rest.div_rem(&q);
            coeffs.push(field.element_from_index(&r));
            rest = quo;
        }
        coeffs.push(field.one());
        let cand = UniPoly::new(field.clone(), coeffs, var);
        if !cand.coeff(0).is_zero() || degree == 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let sqf = cand.squarefree_part();
            if sqf == cand && factor_squarefree_finite(&cand, &mut rng).len() == 1 {
                return Ok(cand);
            }
        }
        n += 1u32;
    }
    Err(Error::InvalidArgument(format!(
        "no irreducible polynomial of degree {degree} over {field}"
    )))
}

// ---------------------------------------------------------------------------
// finite fields

fn factor_squarefree_finite(g: &UniPoly, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let q = g.field().order().unwrap();
    let x = UniPoly::var_poly(g.field(), g.var());
    let mut out = Vec::new();
    let mut rest = g.monic();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let gd = rest.gcd(&h.sub(&x));
        if !gd.is_one() {
            out.extend(equal_degree_split(&gd, d, &q, rng));
            rest = rest.exact_div(&gd);
            h = h.rem(&rest);
        }
        d += 1;
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}

fn equal_degree_split(g: &UniPoly, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let field = g.field();
    let p = field.characteristic();
    loop {
        let a = UniPoly::new(
            field.clone(),
            (0..n).map(|_| field.random_element(rng)).collect(),
            g.var(),
        );
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F2: a + a^2 + ... + a^(2^(k d - 1)), q = 2^k
            let k = field.absolute_degree();
            let two = BigUint::from(2u32);
            let mut term = a.rem(g);
            let mut acc = term.clone();
            for _ in 1..(k * d) {
                term = term.pow_mod(&two, g);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, g)
                .sub(&UniPoly::constant(field.one(), g.var()))
        };
        let f = g.gcd(&b);
        if !f.is_constant() && f.degree() != g.degree() {
            let mut out = equal_degree_split(&f, d, q, rng);
            out.extend(equal_degree_split(&g.exact_div(&f), d, q, rng));
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// characteristic zero

/// Returns the irreducible factors found and the leftover (if any).
fn factor_squarefree_char0(g: &UniPoly) -> Result<(Vec<UniPoly>, Option<UniPoly>)> {
    let g = g.monic();
    let roots = roots_char0(&g)?;
    let mut rest = g.clone();
    let mut out = Vec::new();
    for r in roots {
        let lin = UniPoly::linear(&r, g.var());
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    match rest.degree().unwrap_or(0) {
        0 => Ok((out, None)),
        1 => {
            out.push(rest);
            Ok((out, None))
        }
        2 | 3 if g.field().is_rationals() => {
            out.push(rest);
            Ok((out, None))
        }
        _ => Ok((out, Some(rest))),
    }
}

/// Distinct roots of a squarefree polynomial found by rational root search,
/// descending through extension levels.
fn roots_char0(g: &UniPoly) -> Result<Vec<FieldElement>> {
    let field = g.field();
    if field.is_rationals() {
        return rational_roots(g);
    }
    let base = field.base().expect("characteristic zero tower over Q");
    let deg = field.relative_degree();
    // g = Σ_j θ^j g_j with g_j over the base; common roots lie in the base
    let mut parts: Vec<Vec<FieldElement>> = vec![Vec::new(); deg];
    for c in g.coeffs() {
        let coords = c.coords().unwrap();
        for (j, cj) in coords.iter().enumerate() {
            parts[j].push(cj.clone());
        }
    }
    let mut common = UniPoly::zero(base, g.var());
    for p in parts {
        common = common.gcd(&UniPoly::new(base.clone(), p, g.var()));
    }
    if common.is_constant() {
        return Ok(Vec::new());
    }
    let base_roots = roots_char0(&common.squarefree_part())?;
    base_roots.iter().map(|r| r.lift_into(field)).collect()
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization by trial division; fails loudly past the bound.
fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        while (&n % &dd).is_zero() {
            n /= &dd;
            e += 1;
        }
        if e > 0 {
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let bound = BigUint::from(TRIAL_DIVISION_LIMIT);
        if n > &bound * &bound {
            return Err(Error::FactorizationUnsupported(format!(
                "integer {n} too large for trial division"
            )));
        }
        out.push((n, 1));
    }
    Ok(out)
}

fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor_integer(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

fn rational_roots(g: &UniPoly) -> Result<Vec<FieldElement>> {
    let field = g.field();
    let mut roots = Vec::new();
    let mut g = g.clone();
    if g.coeff(0).is_zero() {
        roots.push(field.zero());
        g = g.exact_div(&UniPoly::var_poly(field, g.var()));
    }
    if g.is_constant() {
        return Ok(roots);
    }
    let rats: Vec<BigRational> = g
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let a0 = ints[0].abs().to_biguint().unwrap();
    let an = ints.last().unwrap().abs().to_biguint().unwrap();
    let nums = divisors(&a0)?;
    let dens = divisors(&an)?;
    let mut seen: Vec<BigRational> = Vec::new();
    for n in &nums {
        for d in &dens {
            for sign in [1i32, -1] {
                let cand =
                    BigRational::new(BigInt::from(n.clone()) * sign, BigInt::from(d.clone()));
                if seen.contains(&cand) {
                    continue;
                }
                seen.push(cand.clone());
                let e = field.from_rational(&cand)?;
                if g.eval(&e).is_zero() {
                    roots.push(e);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        a.as_rational()
            .unwrap()
            .partial_cmp(b.as_rational().unwrap())
            .unwrap()
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(
            field.clone(),
            c.iter().map(|&n| field.from_i64(n)).collect(),
            "t",
        )
    }

    #[test]
    fn rational_split() {
        let q = Field::rationals();
        let fac = poly(&q, &[-1, 0, 1]).split_factors().unwrap();
        assert_eq!(
            fac.factors,
            vec![(poly(&q, &[1, 1]), 1), (poly(&q, &[-1, 1]), 1)]
        );
        // t^2 - 2: no rational root, quadratic, so irreducible
        let fac = poly(&q, &[-2, 0, 1]).split_factors().unwrap();
        assert_eq!(fac.factors, vec![(poly(&q, &[-2, 0, 1]), 1)]);
        assert!(fac.is_complete());
    }

    #[test]
    fn quartic_without_roots_is_unfactored() {
        let q = Field::rationals();
        // (t^2-2)(t^2-3)
        let f = poly(&q, &[6, 0, -5, 0, 1]);
        let fac = f.split_factors().unwrap();
        assert!(!fac.is_complete());
        assert!(matches!(
            fac.complete(),
            Err(Error::FactorizationUnsupported(_))
        ));
    }

    #[test]
    fn f5_split_by_exhaustive_search() {
        let f5 = Field::prime(5).unwrap();
        let fac = poly(&f5, &[1, 0, 1]).split_factors().unwrap();
        assert_eq!(
            fac.factors,
            vec![(poly(&f5, &[-2, 1]), 1), (poly(&f5, &[-3, 1]), 1)]
        );
        // oracle: roots by trying every element
        let brute: Vec<i64> = (0..5)
            .filter(|&a| poly(&f5, &[1, 0, 1]).eval(&f5.from_i64(a)).is_zero())
            .collect();
        assert_eq!(brute, vec![2, 3]);
    }

    #[test]
    fn finite_field_factorization_reexpands() {
        let f7 = Field::prime(7).unwrap();
        let f = poly(&f7, &[3, 1, 0, 2, 5, 1]).mul(&poly(&f7, &[1, 1]).pow(3));
        let fac = f.split_factors().unwrap();
        assert!(fac.is_complete());
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn irreducible_search() {
        let f5 = Field::prime(5).unwrap();
        for d in 2..=4 {
            let g = find_irreducible(&f5, d, "s").unwrap();
            assert_eq!(g.degree(), Some(d));
            check_irreducible(&g).unwrap();
        }
        let f2 = Field::prime(2).unwrap();
        let g = find_irreducible(&f2, 2, "s").unwrap();
        assert_eq!(g, poly(&f2, &[1, 1, 1]));
    }

    #[test]
    fn characteristic_two_splitting() {
        let f2 = Field::prime(2).unwrap();
        let g = find_irreducible(&f2, 2, "s").unwrap();
        let f4 = f2.extension(g, "w").unwrap();
        // t^4 - t splits completely over F4
        let f = poly(&f4, &[0, -1, 0, 0, 1]);
        let fac = f.split_factors().unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac
            .factors
            .iter()
            .all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn roots_in_base_of_quadratic_extension() {
        let q = Field::rationals();
        let k = q.extension(poly(&q, &[-2, 0, 1]), "th").unwrap();
        let th = k.generator().unwrap();
        // (t - 1)(t - th): the base root 1 is found, the linear leftover is kept
        let f = UniPoly::linear(&k.one(), "t").mul(&UniPoly::linear(&th, "t"));
        let fac = f.split_factors().unwrap();
        assert!(fac.is_complete());
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }
}
