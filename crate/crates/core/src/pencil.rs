//! Resolution of the base points of a pencil `(f, g)` by point blow-ups,
//! dicritical exceptional divisors, and the application to the points at
//! infinity of a plane polynomial.
//!
//! Each node of a [`BlowupTree`] is the blow-up of one base point. The pair
//! `(F, G)` is carried in the local coordinates of that point with every
//! common monomial factor divided out; since the input pair is globally
//! coprime, the only common factors that appear are exceptional components,
//! which pass through the origin of a chart as `x = 0` or `y = 0`. A point
//! is then a base point exactly when both `F` and `G` vanish there.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::{build_divisor, generator_name, BlowupStep, PrimeDivisor};
use crate::error::{Error, Result};
use crate::field::{find_irreducible, Field, FieldElement, UniPoly};
use crate::poly::{BiPoly, ChartMap, InfinityChart};
use crate::residue::{is_dicritical, polynomial_regenerable, Mobius, ResidueElement};

pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilOptions {
    pub max_depth: usize,
    /// Seed for randomized factor splitting.
    pub seed: u64,
}

impl Default for PencilOptions {
    fn default() -> Self {
        PencilOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            seed: 0,
        }
    }
}

/// A pencil localized at the origin of some chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilState {
    pub f: BiPoly,
    pub g: BiPoly,
    /// Steps leading from the starting point to this one.
    pub chart_history: Vec<BlowupStep>,
    pub residue_field: Field,
}

fn strip_common_monomial(f: &BiPoly, g: &BiPoly) -> (BiPoly, BiPoly) {
    let (fi, fj) = f.monomial_content();
    let (gi, gj) = g.monomial_content();
    let (i, j) = (fi.min(gi), fj.min(gj));
    (f.div_monomial(i, j), g.div_monomial(i, j))
}

impl PencilState {
    /// Starts at the origin after dividing out `gcd(f, g)`.
    pub fn new(f: &BiPoly, g: &BiPoly) -> Result<PencilState> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.field() != g.field() {
            return Err(Error::DescriptorMismatch(format!(
                "{} vs {}",
                f.field(),
                g.field()
            )));
        }
        let f = f.with_vars(["x", "y"]);
        let g = g.with_vars(["x", "y"]);
        let h = f.gcd(&g);
        let f = f.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        let (f, g) = strip_common_monomial(&f, &g);
        Ok(PencilState {
            residue_field: f.field().clone(),
            f,
            g,
            chart_history: Vec::new(),
        })
    }

    /// Both members vanish at the origin.
    pub fn is_base_point(&self) -> bool {
        !self.f.is_unit() && !self.g.is_unit()
    }

    /// Orders of `F` and `G` at the origin.
    pub fn orders(&self) -> (u32, u32) {
        (self.f.order().unwrap(), self.g.order().unwrap())
    }

    /// Restriction of `F/G` to the exceptional line of the blow-up of the
    /// origin, in the coordinate `t = y/x`; `None` when it is identically
    /// infinite.
    pub fn exceptional_residue(&self) -> Option<ResidueElement> {
        let (of, og) = self.orders();
        if of > og {
            return Some(ResidueElement::zero(&self.residue_field));
        }
        if of < og {
            return None;
        }
        let num = self.f.leading_form().binary_form_at_x1("t");
        let den = self.g.leading_form().binary_form_at_x1("t");
        Some(ResidueElement::new(num, den).expect("nonzero leading form"))
    }

    /// Pair in the first chart of the blow-up of the origin.
    pub fn chart1_pair(&self) -> (BiPoly, BiPoly) {
        let chart = ChartMap::Translate1(self.residue_field.zero());
        strip_common_monomial(
            &self.f.substitute_chart(&chart),
            &self.g.substitute_chart(&chart),
        )
    }

    fn child(&self, f: BiPoly, g: BiPoly, step: BlowupStep, field: Field) -> PencilState {
        let (f, g) = strip_common_monomial(&f, &g);
        let mut chart_history = self.chart_history.clone();
        chart_history.push(step);
        PencilState {
            f,
            g,
            chart_history,
            residue_field: field,
        }
    }

    /// Base points on the exceptional line of the blow-up of the origin:
    /// points of the first chart ordered as the factors of the restricted
    /// gcd, then the origin of the second chart.
    pub fn base_points(&self, opts: &PencilOptions) -> Result<Vec<BasePoint>> {
        let mut out = Vec::new();
        let k = &self.residue_field;
        let (f1, g1) = self.chart1_pair();
        let h = f1.restrict_x0("y").gcd(&g1.restrict_x0("y"));
        if !h.is_constant() {
            let fac = h.split_factors_seeded(opts.seed)?.complete()?;
            for (p, _) in fac.factors {
                let (step, field, c) = if p.degree() == Some(1) {
                    let c = -p.coeff(0);
                    let step = if c.is_zero() {
                        BlowupStep::Origin
                    } else {
                        BlowupStep::free(c.clone())
                    };
                    (step, k.clone(), c)
                } else {
                    let name = generator_name(k.depth() + 1);
                    let ext = k.extension(p.with_var(&name), &name)?;
                    let theta = ext.generator().unwrap();
                    let step = BlowupStep::Free {
                        c: theta.clone(),
                        minpoly: Some(p.clone()),
                    };
                    (step, ext, theta)
                };
                let (fl, gl) = (f1.lift_into(&field)?, g1.lift_into(&field)?);
                let zero = field.zero();
                let state = self.child(
                    fl.translate(&zero, &c),
                    gl.translate(&zero, &c),
                    step,
                    field,
                );
                debug_assert!(state.is_base_point());
                out.push(BasePoint {
                    orders: state.orders(),
                    minpoly: (p.degree() != Some(1)).then_some(p),
                    state,
                });
            }
        }
        let (f2, g2) = strip_common_monomial(
            &self.f.substitute_chart(&ChartMap::Chart2),
            &self.g.substitute_chart(&ChartMap::Chart2),
        );
        if !f2.is_unit() && !g2.is_unit() {
            let state = self.child(f2, g2, BlowupStep::AtInfinity, k.clone());
            out.push(BasePoint {
                orders: state.orders(),
                minpoly: None,
                state,
            });
        }
        Ok(out)
    }
}

/// A base point on an exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub state: PencilState,
    /// Orders of `F` and `G` at the point.
    pub orders: (u32, u32),
    /// Minimal polynomial of the coordinate when it is not rational.
    pub minpoly: Option<UniPoly>,
}

impl BasePoint {
    pub fn step(&self) -> &BlowupStep {
        self.state.chart_history.last().unwrap()
    }
}

/// One blown-up point and the exceptional divisor `E_i` it creates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupNode {
    pub id: String,
    pub state: PencilState,
    /// Restriction of `F/G` to `E_i`; `None` when `E_i` is a pole.
    pub residue_map: Option<ResidueElement>,
    pub dicritical: bool,
    /// Pair in the first chart, used by the sampling oracle.
    pub chart1: (BiPoly, BiPoly),
    pub children: Vec<BlowupNode>,
}

impl BlowupNode {
    pub fn depth(&self) -> usize {
        self.state.chart_history.len() + 1
    }

    /// The prime divisor `E_i` as a chain over `base`.
    pub fn divisor(&self, base: &Field) -> Result<PrimeDivisor> {
        build_divisor(base, self.state.chart_history.clone())
    }

    /// No base point remains on `E_i`.
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// At every point of `E_i` one of the two members is a unit, so the ideal
    /// they generate is principal there.
    pub fn is_locally_principal(&self) -> bool {
        let (f1, g1) = &self.chart1;
        let h = f1.restrict_x0("y").gcd(&g1.restrict_x0("y"));
        let (f2, g2) = strip_common_monomial(
            &self.state.f.substitute_chart(&ChartMap::Chart2),
            &self.state.g.substitute_chart(&ChartMap::Chart2),
        );
        !h.is_zero() && h.is_constant() && (f2.is_unit() || g2.is_unit())
    }
}

/// Resolution tree of a pencil at one starting point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupTree {
    pub base_field: Field,
    pub start: PencilState,
    /// Empty when the starting point is not a base point.
    pub roots: Vec<BlowupNode>,
}

impl BlowupTree {
    pub fn nodes(&self) -> Vec<&BlowupNode> {
        fn walk<'a>(n: &'a BlowupNode, out: &mut Vec<&'a BlowupNode>) {
            out.push(n);
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        for r in &self.roots {
            walk(r, &mut out);
        }
        out
    }

    pub fn node(&self, id: &str) -> Option<&BlowupNode> {
        self.nodes().into_iter().find(|n| n.id == id)
    }

    pub fn depth(&self) -> usize {
        self.nodes().iter().map(|n| n.depth()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn node_json(n: &BlowupNode) -> serde_json::Value {
            serde_json::json!({
                "id": n.id,
                "chain": n.state.chart_history.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "field": n.state.residue_field.to_string(),
                "orders": [n.state.orders().0, n.state.orders().1],
                "residue": n.residue_map.as_ref().map(|r| r.to_string()),
                "dicritical": n.dicritical,
                "children": n.children.iter().map(node_json).collect::<Vec<_>>(),
            })
        }
        serde_json::json!({
            "field": self.base_field.to_string(),
            "f": self.start.f.to_string(),
            "g": self.start.g.to_string(),
            "nodes": self.roots.iter().map(node_json).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering; node labels carry the id, residue and flag.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{name}\" {{").unwrap();
        writeln!(s, "  node [shape=box];").unwrap();
        writeln!(s, "  start [label=\"start\", shape=point];").unwrap();
        write_dot_nodes(&mut s, "start", &self.roots, "");
        s.push_str("}\n");
        s
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn write_dot_nodes(s: &mut String, parent: &str, nodes: &[BlowupNode], prefix: &str) {
    for n in nodes {
        let key = format!("{prefix}{}", n.id);
        let residue = n
            .residue_map
            .as_ref()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "pole".into());
        let flag = if n.dicritical { "dicritical" } else { "" };
        writeln!(
            s,
            "  \"{key}\" [label=\"{}\\nres: {}\\n{flag}\"{}];",
            n.id,
            dot_escape(&residue),
            if n.dicritical { ", style=bold" } else { "" }
        )
        .unwrap();
        let edge = n
            .state
            .chart_history
            .last()
            .map(|st| st.to_string())
            .unwrap_or_default();
        writeln!(
            s,
            "  \"{parent}\" -> \"{key}\" [label=\"{}\"];",
            dot_escape(&edge)
        )
        .unwrap();
        write_dot_nodes(s, &key, &n.children, prefix);
    }
}

fn build_node(state: PencilState, counter: &mut usize, opts: &PencilOptions) -> Result<BlowupNode> {
    let depth = state.chart_history.len() + 1;
    if depth > opts.max_depth {
        return Err(Error::DepthExceeded(opts.max_depth));
    }
    *counter += 1;
    let id = format!("E{counter}");
    let residue_map = state.exceptional_residue();
    let dicritical = residue_map.as_ref().is_some_and(is_dicritical);
    let chart1 = state.chart1_pair();
    let mut children = Vec::new();
    for bp in state.base_points(opts)? {
        children.push(build_node(bp.state, counter, opts)?);
    }
    Ok(BlowupNode {
        id,
        state,
        residue_map,
        dicritical,
        chart1,
        children,
    })
}

/// Blows up base points until `(f, g)` is locally principal everywhere.
pub fn monomialize(f: &BiPoly, g: &BiPoly, opts: &PencilOptions) -> Result<BlowupTree> {
    let start = PencilState::new(f, g)?;
    monomialize_state(start, opts, &mut 0)
}

fn monomialize_state(
    start: PencilState,
    opts: &PencilOptions,
    counter: &mut usize,
) -> Result<BlowupTree> {
    let roots = if start.is_base_point() {
        vec![build_node(start.clone(), counter, opts)?]
    } else {
        Vec::new()
    };
    Ok(BlowupTree {
        base_field: start.residue_field.clone(),
        start,
        roots,
    })
}

/// Exceptional divisors whose restriction of `f/g` is nonconstant.
pub fn dicritical_components(tree: &BlowupTree) -> Vec<(String, ResidueElement)> {
    tree.nodes()
        .into_iter()
        .filter(|n| n.dicritical)
        .map(|n| (n.id.clone(), n.residue_map.clone().unwrap()))
        .collect()
}

/// `n` distinct random elements of `field` or, when it is too small, of an
/// extension of it found by irreducible search.
pub fn sample_points(field: &Field, n: usize, seed: u64) -> Result<Vec<FieldElement>> {
    let mut target = field.clone();
    if let Some(order) = field.order() {
        let mut k = 1u32;
        while order.pow(k) < BigUint::from(n) {
            k += 1;
        }
        if k > 1 {
            let name = format!("s{}", field.depth() + 1);
            let modulus = find_irreducible(field, k as usize, &name)?;
            target = field.extension_unchecked(modulus, &name);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FieldElement> = Vec::with_capacity(n);
    while out.len() < n {
        let e = if target.is_finite() {
            target.random_element(&mut rng)
        } else {
            let r = 4 * n as i64 + 8;
            target.from_i64(rng.gen_range(-r..=r))
        };
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Brute-force dicriticality test for `E_i`: evaluates the restriction of
/// `F/G` to the exceptional line at the sample arguments, skipping common
/// zeros, and reports whether two distinct projective values occur.
pub fn sampling_oracle(tree: &BlowupTree, id: &str, lambdas: &[FieldElement]) -> Result<bool> {
    let node = tree
        .node(id)
        .ok_or_else(|| Error::InvalidArgument(format!("no exceptional divisor {id}")))?;
    let (f1, g1) = &node.chart1;
    let (rf, rg) = (f1.restrict_x0("y"), g1.restrict_x0("y"));
    let bound = rf.degree().unwrap_or(0).max(rg.degree().unwrap_or(0));
    let needed = 2 * bound + 1;
    if lambdas.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: lambdas.len(),
        });
    }
    let target = lambdas[0].field().clone();
    let (rf, rg) = (rf.lift_into(&target)?, rg.lift_into(&target)?);
    let mut values: Vec<Option<FieldElement>> = Vec::new();
    for l in lambdas {
        let (a, b) = (rf.eval(l), rg.eval(l));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let v = if b.is_zero() {
            None
        } else {
            Some(a.checked_div(&b)?)
        };
        if !values.contains(&v) {
            values.push(v);
        }
        if values.len() >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A point on the line at infinity and the resolution of `f` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityPoint {
    pub chart: InfinityChart,
    /// Coordinate `ψ = c` in the chart; zero for the `YChart` point.
    pub coordinate: FieldElement,
    pub minpoly: Option<UniPoly>,
    pub tree: BlowupTree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicriticalAtInfinity {
    pub point: usize,
    pub id: String,
    pub residue: ResidueElement,
    pub witness: Option<Mobius>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityReport {
    pub degree: u32,
    pub points: Vec<InfinityPoint>,
    pub dicritical_divisors: Vec<DicriticalAtInfinity>,
}

impl InfinityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let points: Vec<_> = self
            .points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "chart": format!("{:?}", p.chart),
                    "coordinate": p.coordinate.to_string(),
                    "field": p.tree.base_field.to_string(),
                    "minpoly": p.minpoly.as_ref().map(|m| m.to_string()),
                    "tree": p.tree.to_json(),
                })
            })
            .collect();
        let divs: Vec<_> = self
            .dicritical_divisors
            .iter()
            .map(|d| {
                serde_json::json!({
                    "point": d.point,
                    "id": d.id,
                    "residue": d.residue.to_json(),
                    "regenerable": d.witness.is_some(),
                    "witness": d.witness.as_ref().map(Mobius::to_json),
                })
            })
            .collect();
        serde_json::json!({
            "degree": self.degree,
            "points": points,
            "dicritical_count": self.dicritical_divisors.len(),
            "dicritical_divisors": divs,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph \"infinity\" {\n  node [shape=box];\n");
        for (i, p) in self.points.iter().enumerate() {
            let root = format!("P{i}");
            writeln!(
                s,
                "  \"{root}\" [label=\"{:?} psi={}\", shape=ellipse];",
                p.chart,
                dot_escape(&p.coordinate.to_string())
            )
            .unwrap();
            write_dot_nodes(&mut s, &root, &p.tree.roots, &format!("{root}."));
        }
        s.push_str("}\n");
        s
    }
}

/// Points at infinity of `f = 0` and the dicritical divisors of `f` over
/// them, each local pair being `(N, φ^m)` with `f = N/φ^m` in the chart.
pub fn dicriticals_at_infinity(f: &BiPoly, opts: &PencilOptions) -> Result<InfinityReport> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let f = f.with_vars(["x", "y"]);
    let k = f.field().clone();
    let m = f.total_degree().unwrap();
    let form = f.homogeneous_part(m);
    let mut located: Vec<(InfinityChart, FieldElement, Option<UniPoly>)> = Vec::new();
    let at_x1 = form.binary_form_at_x1("psi");
    if !at_x1.is_constant() {
        let fac = at_x1.split_factors_seeded(opts.seed)?.complete()?;
        for (p, _) in fac.factors {
            if p.degree() == Some(1) {
                located.push((InfinityChart::XChart, -p.coeff(0), None));
            } else {
                let name = generator_name(k.depth() + 1);
                let ext = k.extension(p.with_var(&name), &name)?;
                located.push((InfinityChart::XChart, ext.generator().unwrap(), Some(p)));
            }
        }
    }
    if form.coeff(0, m).is_zero() {
        located.push((InfinityChart::YChart, k.zero(), None));
    }
    let mut points = Vec::new();
    let mut dicritical_divisors = Vec::new();
    for (chart, c, minpoly) in located {
        let field = c.field().clone();
        let (num, _) = f.to_infinity_chart(chart)?;
        let num = num.lift_into(&field)?.with_vars(["x", "y"]);
        let num = num.translate(&field.zero(), &c);
        let phi_m = BiPoly::monomial(field.one(), m, 0);
        let start = PencilState::new(&num, &phi_m)?;
        let tree = monomialize_state(start, opts, &mut 0)?;
        for (id, residue) in dicritical_components(&tree) {
            dicritical_divisors.push(DicriticalAtInfinity {
                point: points.len(),
                witness: polynomial_regenerable(&residue),
                id,
                residue,
            });
        }
        points.push(InfinityPoint {
            chart,
            coordinate: c,
            minpoly,
            tree,
        });
    }
    Ok(InfinityReport {
        degree: m,
        points,
        dicritical_divisors,
    })
}

/// Every dicritical divisor at infinity must have a residue that becomes a
/// polynomial after a change of generator.
pub fn corollary_check(f: &BiPoly, opts: &PencilOptions) -> Result<InfinityReport> {
    let report = dicriticals_at_infinity(f, opts)?;
    for d in &report.dicritical_divisors {
        let ok = d
            .witness
            .as_ref()
            .is_some_and(|w| crate::residue::apply_mobius(&d.residue, w).is_polynomial());
        if !ok {
            return Err(Error::CorollaryViolation(format!(
                "residue {} on {} at point {} is not regenerable",
                d.residue, d.id, d.point
            )));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(s: &str) -> BiPoly {
        BiPoly::parse(s, &q()).unwrap()
    }

    fn opts() -> PencilOptions {
        PencilOptions::default()
    }

    #[test]
    fn base_point_examples() {
        let st = PencilState::new(&p("y"), &p("x")).unwrap();
        assert!(st.is_base_point());
        assert!(st.base_points(&opts()).unwrap().is_empty());
        // both members become units on one chart or the other
        let st = PencilState::new(&p("y^2-x^3"), &p("x^2")).unwrap();
        assert_eq!(st.orders(), (2, 2));
        assert!(st.base_points(&opts()).unwrap().is_empty());
        let st = PencilState::new(&p("y^2-x^3"), &p("x^3")).unwrap();
        let bps = st.base_points(&opts()).unwrap();
        assert_eq!(bps.len(), 1);
        assert_eq!(bps[0].step(), &BlowupStep::Origin);
        assert_eq!(bps[0].orders, (1, 1));
        let st = PencilState::new(&p("x*y"), &p("x^3+y^3")).unwrap();
        let steps: Vec<_> = st
            .base_points(&opts())
            .unwrap()
            .iter()
            .map(|b| b.step().clone())
            .collect();
        assert_eq!(steps, vec![BlowupStep::Origin, BlowupStep::AtInfinity]);
    }

    #[test]
    fn monomialize_examples() {
        let t = monomialize(&p("y"), &p("x"), &opts()).unwrap();
        assert_eq!((t.depth(), t.nodes().len()), (1, 1));
        assert!(t
            .nodes()
            .iter()
            .all(|n| !n.is_leaf() || n.is_locally_principal()));
        let t = monomialize(&p("y^2-x^3"), &p("x^3"), &opts()).unwrap();
        assert!(t.depth() <= 4);
        assert!(t
            .nodes()
            .iter()
            .all(|n| !n.is_leaf() || n.is_locally_principal()));
        let t = monomialize(&p("x"), &p("x"), &opts()).unwrap();
        assert!(t.roots.is_empty());
    }

    #[test]
    fn dicritical_examples() {
        let t = monomialize(&p("y"), &p("x"), &opts()).unwrap();
        let d = dicritical_components(&t);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1.to_string(), "t");
        let t = monomialize(&p("y^2-x^3"), &p("x^3"), &opts()).unwrap();
        let nodes = t.nodes();
        let last = nodes.iter().max_by_key(|n| n.depth()).unwrap();
        assert!(last.dicritical);
        assert_eq!(last.residue_map.as_ref().unwrap().to_string(), "t-1");
        assert_eq!(nodes.len(), 3);
        assert!(nodes
            .iter()
            .filter(|n| n.id != last.id)
            .all(|n| !n.dicritical));
        let t = monomialize(&p("x"), &p("y+x"), &opts()).unwrap();
        let d = dicritical_components(&t);
        assert_eq!(d[0].1.to_string(), "1/(t+1)");
    }

    #[test]
    fn oracle_examples() {
        let t = monomialize(&p("y"), &p("x"), &opts()).unwrap();
        let ls: Vec<_> = (0..3).map(|i| q().from_i64(i)).collect();
        assert!(sampling_oracle(&t, "E1", &ls).unwrap());
        assert!(matches!(
            sampling_oracle(&t, "E1", &ls[..2]),
            Err(Error::InsufficientSamples { needed: 3, got: 2 })
        ));
        let t = monomialize(&p("x+y^2"), &p("x+y^3"), &opts()).unwrap();
        assert!(!t.nodes()[0].dicritical);
        let ls: Vec<_> = (0..9).map(|i| q().from_i64(i)).collect();
        assert!(!sampling_oracle(&t, "E1", &ls).unwrap());
        let f3 = Field::prime(3).unwrap();
        let ls = sample_points(&f3, 5, 0).unwrap();
        assert_eq!(ls[0].field().order().unwrap(), 9u32.into());
        let t = monomialize(
            &BiPoly::parse("y^2", &f3).unwrap(),
            &BiPoly::parse("x^2", &f3).unwrap(),
            &opts(),
        )
        .unwrap();
        assert!(sampling_oracle(&t, "E1", &ls).unwrap());
    }

    #[test]
    fn infinity_examples() {
        let r = dicriticals_at_infinity(&p("x"), &opts()).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].chart, InfinityChart::YChart);
        assert_eq!(r.dicritical_divisors.len(), 1);
        assert_eq!(r.dicritical_divisors[0].residue.to_string(), "t");
        assert!(r.dicritical_divisors[0].witness.is_some());
        let r = dicriticals_at_infinity(&p("x*y"), &opts()).unwrap();
        assert_eq!(r.points.len(), 2);
        for i in 0..2 {
            assert!(r.dicritical_divisors.iter().any(|d| d.point == i));
        }
        let f5 = Field::prime(5).unwrap();
        let r = dicriticals_at_infinity(&BiPoly::parse("x^2+y^2", &f5).unwrap(), &opts()).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(r.points.iter().all(|pt| pt.minpoly.is_none()));
        assert_eq!(
            dicriticals_at_infinity(&p("3"), &opts()),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn corollary_examples() {
        assert!(corollary_check(&p("x"), &opts()).is_ok());
        assert!(corollary_check(&p("x*y"), &opts()).is_ok());
        let f5 = Field::prime(5).unwrap();
        assert!(corollary_check(&BiPoly::parse("x^2+y^2", &f5).unwrap(), &opts()).is_ok());
        // x^2 + y^2 over Q: the points at infinity live over Q(θ1)
        let r = corollary_check(&p("x^2+y^2+x"), &opts()).unwrap();
        assert!(r.points[0].minpoly.is_some());
    }

    #[test]
    fn node_residue_matches_divisor_residue() {
        let (f, g) = (p("y^2-x^3"), p("x^3"));
        let t = monomialize(&f, &g, &opts()).unwrap();
        for n in t.nodes() {
            let d = n.divisor(&q()).unwrap();
            if let Some(r) = &n.residue_map {
                assert_eq!(&crate::residue::residue_general(&f, &g, &d).unwrap(), r);
            }
        }
    }
}
