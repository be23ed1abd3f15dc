//! Randomized invariants of every module. Each case draws a seed and builds
//! its instance from a seeded generator.

mod common;

use common::*;
use dicrit_core::divisor::{euclid_matrix, monomial_divisor};
use dicrit_core::field::{Field, UniPoly};
use dicrit_core::newton::{newton_polygon, position_test};
use dicrit_core::pencil::{dicriticals_at_infinity, monomialize, BlowupNode, PencilOptions};
use dicrit_core::poly::{resultant_y, BiPoly, ChartMap, InfinityChart};
use dicrit_core::residue::{
    apply_mobius, is_dicritical, polynomial_regenerable, residue_monomial, Mobius, ResidueElement,
};
use dicrit_core::valuation::MonomialValuation;
use proptest::prelude::*;
use rand::Rng;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in field_kinds() {
            let (a, b, c) = (k.random_element(&mut r), k.random_element(&mut r), k.random_element(&mut r));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn unipoly_gcd_divides(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [q(), f5(), f25()] {
            let (p, s) = (rand_unipoly(&k, &mut r, 5), rand_unipoly(&k, &mut r, 4));
            if p.is_zero() || s.is_zero() {
                continue;
            }
            let g = p.gcd(&s);
            prop_assert!(g.divides(&p) && g.divides(&s));
            prop_assert!(p.exact_div(&g).gcd(&s.exact_div(&g)).is_one());
        }
    }

    #[test]
    fn squarefree_and_factorization(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [q(), f5(), f25(), Field::prime(3).unwrap()] {
            let a = rand_unipoly(&k, &mut r, 2);
            let b = rand_unipoly(&k, &mut r, 3);
            let p = a.mul(&a).mul(&b);
            if p.is_zero() || p.is_constant() {
                continue;
            }
            let sf = p.squarefree_part();
            prop_assert!(sf.divides(&p));
            if k.characteristic() == 0 {
                prop_assert!(sf.gcd(&sf.derivative()).is_constant());
            }
            let fac = p.split_factors_seeded(seed).unwrap();
            prop_assert_eq!(fac.expand(), p.clone());
            if k.is_finite() {
                prop_assert!(fac.is_complete());
            }
        }
    }
}

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn chart_is_ring_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let (f, g) = (rand_poly(&k, &mut r, 4, 5), rand_poly(&k, &mut r, 4, 5));
        let charts = [ChartMap::Translate1(k.zero()), ChartMap::Translate1(k.random_element(&mut r)), ChartMap::Chart2];
        for c in &charts {
            let s = |h: &BiPoly| h.substitute_chart(c);
            prop_assert_eq!(s(&f.mul(&g)), s(&f).mul(&s(&g)));
            prop_assert_eq!(s(&f.add(&g)), s(&f).add(&s(&g)));
        }
    }

    #[test]
    fn strict_transform_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let f = rand_nonzero_poly(&k, &mut r, 5, 6);
        for c in [ChartMap::Translate1(k.zero()), ChartMap::Translate1(k.random_element(&mut r)), ChartMap::Chart2] {
            let (st, e) = f.strict_transform(&c).unwrap();
            let back = match c {
                ChartMap::Chart2 => st.mul_monomial(0, e),
                _ => st.mul_monomial(e, 0),
            };
            prop_assert_eq!(back, f.substitute_chart(&c));
            let exceptional_free = match c {
                ChartMap::Chart2 => st.terms().any(|(&(_, b), _)| b == 0),
                _ => st.terms().any(|(&(a, _), _)| a == 0),
            };
            prop_assert!(exceptional_free);
        }
    }

    #[test]
    fn homogenize_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let f = rand_nonzero_poly(&k, &mut r, 5, 6);
        let m = f.total_degree().unwrap();
        prop_assert_eq!(f.homogenize(m).unwrap().dehomogenize(), f.clone());
        prop_assert_eq!(f.homogenize(m + 2).unwrap().dehomogenize(), f.clone());
        if m > 0 {
            prop_assert!(f.homogenize(m - 1).is_err());
        }
    }

    #[test]
    fn valuation_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let (a, b) = coprime_pair(&mut r, 9);
        let v = MonomialValuation::new(a, b).unwrap();
        let f = rand_nonzero_poly(&k, &mut r, 5, 5);
        let g = rand_nonzero_poly(&k, &mut r, 5, 5);
        let (vf, vg) = (v.value(&f).unwrap(), v.value(&g).unwrap());
        prop_assert_eq!(v.value(&f.mul(&g)).unwrap(), vf + vg);
        prop_assert_eq!(
            v.initial_form(&f.mul(&g)).unwrap(),
            v.initial_form(&f).unwrap().mul(&v.initial_form(&g).unwrap())
        );
        let s = f.add(&g);
        if !s.is_zero() {
            let vs = v.value(&s).unwrap();
            prop_assert!(vs >= vf.min(vg));
            if vf != vg {
                prop_assert_eq!(vs, vf.min(vg));
            }
        }
        let e = v.edge_data(&f).unwrap();
        let mut bs: Vec<u32> = v.initial_form(&f).unwrap().terms().map(|(&(_, b), _)| b).collect();
        bs.sort_unstable();
        bs.dedup();
        prop_assert_eq!(e.b_set, bs);
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in field_kinds() {
            let f = rand_poly(&k, &mut r, 5, 6);
            prop_assert_eq!(BiPoly::parse(&f.to_string(), &k).unwrap(), f);
        }
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn infinity_chart_clears_denominators(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let f = rand_poly(&k, &mut r, 5, 6);
        prop_assume!(!f.is_constant());
        let m = f.total_degree().unwrap();
        // N(1/x, y/x) x^m: φ^i ψ^j ↦ x^{m-i-j} y^j
        let (n, e) = f.to_infinity_chart(InfinityChart::XChart).unwrap();
        prop_assert_eq!(e, m);
        let back = BiPoly::from_terms(&k, n.terms().map(|(&(i, j), c)| ((m - i - j, j), c.clone())));
        prop_assert_eq!(back, f.clone());
        let (n, _) = f.to_infinity_chart(InfinityChart::YChart).unwrap();
        let back = BiPoly::from_terms(&k, n.terms().map(|(&(i, j), c)| ((j, m - i - j), c.clone())));
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(cases(300))]

    #[test]
    fn newton_face_is_edge(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let f = rand_nonzero_poly(&k, &mut r, 6, 7);
        let poly = newton_polygon(&f).unwrap();
        for a in 1..=10u64 {
            for b in 1..=10u64 {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let e = MonomialValuation::new(a, b).unwrap().edge_data(&f).unwrap();
                let edge: Vec<(u32, u32)> = e.edge_terms.iter().map(|t| (t.0, t.1)).collect();
                prop_assert_eq!(poly.face_support(a, b), edge);
            }
        }
    }

    #[test]
    fn position_is_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let (a, b) = coprime_pair(&mut r, 6);
        let f = rand_nonzero_poly(&k, &mut r, 6, 6);
        let (v, vs) = (MonomialValuation::new(a, b).unwrap(), MonomialValuation::new(b, a).unwrap());
        let (e, es) = (v.edge_data(&f).unwrap(), vs.edge_data(&f.swap()).unwrap());
        for a0 in 0..=(e.gamma / a) as u32 {
            for b0 in 0..=(e.gamma / b) as u32 {
                let p = position_test((a0, b0), &v, &e);
                let ps = position_test((b0, a0), &vs, &es);
                prop_assert_eq!(p.is_ok(), ps.is_ok());
                if let (Ok(p), Ok(ps)) = (p, ps) {
                    prop_assert_eq!(p, ps);
                }
            }
        }
    }

    #[test]
    fn pullback_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = if r.gen_bool(0.5) { q() } else { f5() };
        let d = rand_divisor(&k, &mut r, 5);
        let f = rand_nonzero_poly(&k, &mut r, 4, 4);
        let g = rand_nonzero_poly(&k, &mut r, 4, 4);
        prop_assert_eq!(d.value(&f.mul(&g)).unwrap(), d.value(&f).unwrap() + d.value(&g).unwrap());
    }

    #[test]
    fn euclid_divisor_matches_valuation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let (a, b) = coprime_pair(&mut r, 12);
        let d = monomial_divisor(&k, a, b).unwrap();
        let f = rand_nonzero_poly(&k, &mut r, 6, 6);
        prop_assert_eq!(d.value(&f).unwrap(), MonomialValuation::new(a, b).unwrap().value(&f).unwrap());
    }

    #[test]
    fn mobius_round_trip_and_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let num = rand_unipoly(&k, &mut r, 3);
        let den = rand_unipoly(&k, &mut r, 2);
        prop_assume!(!den.is_zero());
        let res = ResidueElement::new(num, den).unwrap();
        let m = Mobius::random(&k, &mut r);
        let moved = apply_mobius(&res, &m);
        prop_assert_eq!(&apply_mobius(&moved, &m.inverse()), &res);
        prop_assert_eq!(polynomial_regenerable(&res).is_some(), polynomial_regenerable(&moved).is_some());
        prop_assert_eq!(is_dicritical(&res), is_dicritical(&moved));
        prop_assert_eq!(!is_dicritical(&res), res.num().is_constant() && res.den().is_constant());
    }

    #[test]
    fn singleton_edge_forces_off_vertex_point(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = pick_field(&mut r);
        let (a, b) = coprime_pair(&mut r, 8);
        let v = MonomialValuation::new(a, b).unwrap();
        let n = r.gen_range(1..=4);
        let f = rand_poly_terms(&k, &mut r, n, 6, 6);
        let e = v.edge_data(&f).unwrap();
        prop_assume!(e.b_set.len() == 1);
        for b0 in 0..=(e.gamma / b) as u32 {
            let rest = e.gamma - b * b0 as u64;
            if !rest.is_multiple_of(a) {
                continue;
            }
            let a0 = (rest / a) as u32;
            let res = residue_monomial(&f, a0, b0, &v).unwrap();
            if is_dicritical(&res) {
                prop_assert_ne!(b0, e.b_set[0]);
            }
        }
    }
}

/// Exponents of the total transform, which must be a monomial with unit 1.
fn total_monomial(d: &dicrit_core::divisor::PrimeDivisor, f: &BiPoly) -> (u64, u64) {
    let p = d.pullback(f).unwrap();
    assert!(p.unit.is_one());
    assert_eq!(p.strict.num_terms(), 1);
    let (&(i, j), c) = p.strict.terms().next().unwrap();
    assert!(c.is_one());
    (p.ex + i as u64, p.ey + j as u64)
}

#[test]
fn euclid_matrix_invariants() {
    let k = q();
    for a in 1..=200u64 {
        for b in 1..=200u64 {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            let (m, steps) = euclid_matrix(a, b).unwrap();
            assert_eq!(m.det(), 1);
            assert_eq!((m.k1 + m.k2, m.l1 + m.l2), (a, b));
            if a <= 40 && b <= 40 {
                let d = dicrit_core::divisor::build_divisor(&k, steps).unwrap();
                assert_eq!(total_monomial(&d, &BiPoly::x(&k)), (m.k1, m.k2));
                assert_eq!(total_monomial(&d, &BiPoly::y(&k)), (m.l1, m.l2));
            }
        }
    }
}

fn order_x(p: &UniPoly) -> Option<usize> {
    (!p.is_zero()).then(|| p.low_order())
}

fn leaf_is_principal(n: &BlowupNode) -> bool {
    !n.is_leaf() || n.is_locally_principal()
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn pencil_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = if r.gen_bool(0.5) { q() } else { f5() };
        let f = rand_poly_terms(&k, &mut r, 3, 3, 3);
        let g = rand_poly_terms(&k, &mut r, 3, 3, 3);
        // both curves pass through the origin
        let (f, g) = (f.sub(&BiPoly::constant(f.constant_term())), g.sub(&BiPoly::constant(g.constant_term())));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let tree = match monomialize(&f, &g, &PencilOptions::default()) {
            Ok(t) => t,
            Err(dicrit_core::Error::FactorizationUnsupported(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(tree.nodes().iter().all(|n| leaf_is_principal(n)));
        let mut ids: Vec<&str> = tree.nodes().iter().map(|n| n.id.as_str()).collect();
        let total = ids.len();
        ids.sort_unstable();
        ids.dedup();
        prop_assert_eq!(ids.len(), total);
        // depth is at most the intersection multiplicity at the origin
        let (fs, gs) = (&tree.start.f, &tree.start.g);
        let res = resultant_y(fs, gs);
        if let Some(i) = order_x(&res) {
            prop_assert!(tree.depth() <= i, "depth {} > {}", tree.depth(), i);
        }
    }
}

proptest! {
    #![proptest_config(cases(50))]

    #[test]
    fn infinity_swap_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = if r.gen_bool(0.5) { q() } else { f5() };
        let f = rand_poly(&k, &mut r, 3, 4);
        prop_assume!(!f.is_constant());
        let opts = PencilOptions::default();
        let (a, b) = match (dicriticals_at_infinity(&f, &opts), dicriticals_at_infinity(&f.swap(), &opts)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(dicrit_core::Error::FactorizationUnsupported(_)), Err(dicrit_core::Error::FactorizationUnsupported(_))) => return Ok(()),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        };
        prop_assert_eq!(a.points.len(), b.points.len());
        prop_assert_eq!(a.dicritical_divisors.len(), b.dicritical_divisors.len());
        let degs = |rep: &dicrit_core::pencil::InfinityReport| {
            let mut v: Vec<(usize, bool)> = rep.dicritical_divisors.iter()
                .map(|d| (d.residue.degree(), d.witness.is_some())).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(degs(&a), degs(&b));
    }
}

#[test]
fn resultant_order_examples() {
    let k = q();
    let p = |s: &str| BiPoly::parse(s, &k).unwrap();
    assert_eq!(order_x(&resultant_y(&p("y^2-x^3"), &p("x^3"))), Some(6));
    assert_eq!(order_x(&resultant_y(&p("y"), &p("x"))), Some(1));
}
