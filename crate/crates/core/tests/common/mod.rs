//! Random instances shared by the property and acceptance suites.

#![allow(dead_code)]

use dicrit_core::divisor::{build_divisor, BlowupStep, PrimeDivisor};
use dicrit_core::field::{Field, FieldElement, UniPoly};
use dicrit_core::parse::parse_field;
use dicrit_core::poly::BiPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Field {
    Field::rationals()
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn f10007() -> Field {
    Field::prime(10007).unwrap()
}

pub fn f25() -> Field {
    parse_field("F5[a]/(a^2-2)").unwrap()
}

pub fn q_sqrt2() -> Field {
    parse_field("Q[a]/(a^2-2)").unwrap()
}

pub fn field_kinds() -> Vec<Field> {
    vec![q(), f5(), f10007(), f25(), q_sqrt2()]
}

pub fn pick_field(r: &mut ChaCha8Rng) -> Field {
    match r.gen_range(0..3) {
        0 => q(),
        1 => f5(),
        _ => f10007(),
    }
}

/// Polynomial with up to `terms` nonzero terms of total degree at most `deg`.
pub fn rand_poly(k: &Field, r: &mut ChaCha8Rng, deg: u32, terms: usize) -> BiPoly {
    let mut t = Vec::new();
    for _ in 0..terms {
        let a = r.gen_range(0..=deg);
        let b = r.gen_range(0..=deg - a);
        t.push(((a, b), k.random_nonzero(r)));
    }
    let f = BiPoly::from_terms(k, t);
    if f.is_zero() {
        BiPoly::constant(k.one())
    } else {
        f
    }
}

pub fn rand_nonzero_poly(k: &Field, r: &mut ChaCha8Rng, deg: u32, terms: usize) -> BiPoly {
    loop {
        let f = rand_poly(k, r, deg, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Polynomial with exactly `n` distinct terms in a box of the given size.
pub fn rand_poly_terms(k: &Field, r: &mut ChaCha8Rng, n: usize, a_max: u32, b_max: u32) -> BiPoly {
    let mut t = std::collections::BTreeMap::new();
    while t.len() < n {
        t.insert(
            (r.gen_range(0..=a_max), r.gen_range(0..=b_max)),
            k.random_nonzero(r),
        );
    }
    BiPoly::from_terms(k, t)
}

pub fn rand_unipoly(k: &Field, r: &mut ChaCha8Rng, deg: usize) -> UniPoly {
    let c: Vec<FieldElement> = (0..=deg).map(|_| k.random_element(r)).collect();
    UniPoly::new(k.clone(), c, "t")
}

pub fn coprime_pair(r: &mut ChaCha8Rng, max: u64) -> (u64, u64) {
    loop {
        let (a, b) = (r.gen_range(1..=max), r.gen_range(1..=max));
        if num_integer::gcd(a, b) == 1 {
            return (a, b);
        }
    }
}

/// Chain of the given depth mixing the three step kinds over rational
/// points of `k`.
pub fn rand_steps(k: &Field, r: &mut ChaCha8Rng, depth: usize) -> Vec<BlowupStep> {
    (0..depth)
        .map(|_| match r.gen_range(0..3) {
            0 => BlowupStep::Origin,
            1 => BlowupStep::AtInfinity,
            _ => BlowupStep::free(k.random_nonzero(r)),
        })
        .collect()
}

pub fn rand_divisor(k: &Field, r: &mut ChaCha8Rng, max_depth: usize) -> PrimeDivisor {
    let depth = r.gen_range(0..=max_depth);
    build_divisor(k, rand_steps(k, r, depth)).unwrap()
}
