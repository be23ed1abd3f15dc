//! The `dicrit` command line.
//!
//! Exit codes: 0 on success, 2 on input or contract errors, 1 on internal
//! failures such as a violated regeneration check. Errors are printed as one
//! line, `error: <Kind>: <message>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::divisor::{monomial_divisor, parse_divisor, PrimeDivisor};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::newton::{newton_polygon, position_test, render_ascii, render_svg, Annotation};
use crate::parse::parse_field;
use crate::pencil::{
    corollary_check, dicritical_components, dicriticals_at_infinity, monomialize, sample_points,
    sampling_oracle, BlowupTree, PencilOptions,
};
use crate::poly::BiPoly;
use crate::residue::{
    apply_mobius, check_theorem1, classify_theorem2, classify_theorem2_divisor, is_dicritical,
    polynomial_regenerable, report_json, residue_general, residue_monomial, ResidueElement,
    Theorem1Outcome,
};
use crate::valuation::MonomialValuation;

#[derive(Parser, Debug)]
#[command(
    name = "dicrit",
    version,
    about = "Dicritical divisors of plane rational functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residue of f/g (or f/x^a0 y^b0) along a divisor.
    Residue(Opts),
    /// Whether f/g is dicritical along a divisor, with a regeneration witness.
    Dicritical(Opts),
    /// Edge classification of f/x^a0 y^b0 along a monomial valuation.
    #[command(name = "classify-t2")]
    ClassifyT2(Opts),
    /// Regeneration check for f/x^m along a divisor.
    #[command(name = "check-t1")]
    CheckT1(Opts),
    /// Newton polygon of f.
    Newton(Opts),
    /// Resolution of the base points of the pencil (f, g).
    Resolve(Opts),
    /// Dicritical divisors of f at infinity.
    Infinity(Opts),
    /// Every dicritical divisor of f at infinity has a polynomial residue.
    Corollary(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Field descriptor such as Q, F7 or Q[a]/(a^2-2).
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long)]
    beta: Option<u64>,
    #[arg(long)]
    a0: Option<u32>,
    #[arg(long)]
    b0: Option<u32>,
    /// Blow-up chain such as O,I,F(1) or F(t^2-2).
    #[arg(long)]
    divisor: Option<String>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

/// Command output and whether it signals an internal failure.
struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            failed: false,
        }
    }
}

impl Opts {
    fn field(&self) -> Result<Field> {
        parse_field(&self.field)
    }

    fn poly(&self, name: &str, text: &Option<String>, k: &Field) -> Result<BiPoly> {
        let text = text
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))?;
        BiPoly::parse(text, k)
    }

    fn f(&self, k: &Field) -> Result<BiPoly> {
        self.poly("f", &self.f, k)
    }

    fn g(&self, k: &Field) -> Result<BiPoly> {
        self.poly("g", &self.g, k)
    }

    fn require<T: Copy>(&self, name: &str, v: Option<T>) -> Result<T> {
        v.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))
    }

    fn valuation(&self) -> Result<MonomialValuation> {
        MonomialValuation::new(
            self.require("alpha", self.alpha)?,
            self.require("beta", self.beta)?,
        )
    }

    fn point(&self) -> Result<(u32, u32)> {
        Ok((self.require("a0", self.a0)?, self.require("b0", self.b0)?))
    }

    /// The divisor from `--divisor`, or the monomial one from the weights.
    fn divisor(&self, k: &Field) -> Result<PrimeDivisor> {
        match &self.divisor {
            Some(text) => parse_divisor(text, k),
            None => {
                let v = self.valuation()?;
                monomial_divisor(k, v.alpha(), v.beta())
            }
        }
    }

    fn pencil_options(&self) -> PencilOptions {
        PencilOptions {
            seed: self.seed,
            ..PencilOptions::default()
        }
    }

    /// Denominator: `--g` when given, otherwise `x^a0 y^b0`.
    fn denominator(&self, k: &Field) -> Result<BiPoly> {
        if self.g.is_some() {
            return self.g(k);
        }
        let (a0, b0) = self.point()?;
        Ok(BiPoly::monomial(k.one(), a0, b0))
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `B_f` and `γ` when the residue came from a monomial valuation.
type EdgeSummary = Option<(Vec<u32>, u64)>;

fn residue_of(o: &Opts, k: &Field) -> Result<(ResidueElement, EdgeSummary)> {
    let f = o.f(k)?;
    if o.divisor.is_none() && o.g.is_none() {
        let v = o.valuation()?;
        let (a0, b0) = o.point()?;
        let e = v.edge_data(&f)?;
        let r = residue_monomial(&f, a0, b0, &v)?;
        return Ok((r, Some((e.b_set, e.gamma))));
    }
    let d = o.divisor(k)?;
    Ok((residue_general(&f, &o.denominator(k)?, &d)?, None))
}

fn cmd_residue(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let (r, _) = residue_of(o, &k)?;
    if o.json {
        return Ok(Outcome::ok(pretty(
            &serde_json::json!({ "residue": r.to_json() }),
        )));
    }
    Ok(Outcome::ok(format!("residue: {r}\n")))
}

fn cmd_dicritical(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let (r, edge) = residue_of(o, &k)?;
    let witness = polynomial_regenerable(&r);
    let verdict = if is_dicritical(&r) {
        "dicritical"
    } else {
        "not dicritical"
    };
    if o.json {
        let edge = edge.as_ref().map(|(b, g)| (b.as_slice(), *g));
        return Ok(Outcome::ok(pretty(&report_json(
            &r,
            witness.as_ref(),
            verdict,
            edge,
        ))));
    }
    let mut s = format!("residue: {r}\n{verdict}\n");
    match &witness {
        Some(w) => s.push_str(&format!(
            "witness: {w}\nregenerated: {}\n",
            apply_mobius(&r, w)
        )),
        None => s.push_str("no polynomial regeneration\n"),
    }
    Ok(Outcome::ok(s))
}

fn cmd_classify(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let f = o.f(&k)?;
    let (a0, b0) = o.point()?;
    let (verdict, r) = match &o.divisor {
        Some(text) => {
            let d = parse_divisor(text, &k)?;
            let x0y0 = BiPoly::monomial(k.one(), a0, b0);
            (
                classify_theorem2_divisor(&f, a0, b0, &d)?,
                residue_general(&f, &x0y0, &d)?,
            )
        }
        None => {
            let v = o.valuation()?;
            (
                classify_theorem2(&f, a0, b0, &v)?,
                residue_monomial(&f, a0, b0, &v)?,
            )
        }
    };
    let witness = polynomial_regenerable(&r);
    let predicted = verdict.regenerable();
    let position = if verdict.b_set.is_empty() {
        None
    } else {
        let v = o.valuation().ok();
        match v {
            Some(v) => Some(position_test((a0, b0), &v, &v.edge_data(&f)?)?),
            None => None,
        }
    };
    if o.json {
        let mut j = report_json(
            &r,
            witness.as_ref(),
            verdict.label(),
            (!verdict.b_set.is_empty()).then_some((verdict.b_set.as_slice(), verdict.gamma)),
        );
        j["regenerable"] = serde_json::json!(predicted);
        j["witness_found"] = serde_json::json!(witness.is_some());
        j["b0"] = serde_json::json!(verdict.b0);
        j["position"] = serde_json::json!(position.map(|p| format!("{p:?}")));
        return Ok(Outcome::ok(pretty(&j)));
    }
    let mut s = format!("case: {}\n", verdict.label());
    if !verdict.b_set.is_empty() {
        s.push_str(&format!(
            "B_f: {:?}\ngamma: {}\nb0: {} (range {}..{})\n",
            verdict.b_set, verdict.gamma, verdict.b0, verdict.b_min, verdict.b_max
        ));
    }
    if let Some(p) = position {
        s.push_str(&format!("position: {p:?}\n"));
    }
    s.push_str(&format!("residue: {r}\n"));
    s.push_str(&match predicted {
        Some(true) => "regenerable\n".to_string(),
        Some(false) => "not regenerable\n".to_string(),
        None => "classification not applicable\n".to_string(),
    });
    if let Some(w) = &witness {
        s.push_str(&format!("witness: {w}\n"));
    }
    Ok(Outcome::ok(s))
}

fn cmd_check_t1(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let f = o.f(&k)?;
    let m = o.require("m", o.m)?;
    let d = o.divisor(&k)?;
    let rep = check_theorem1(&f, m, &d)?;
    let failed = rep.outcome == Theorem1Outcome::Violation;
    if o.json {
        let mut j = report_json(
            &rep.residue,
            rep.witness.as_ref(),
            &format!("{:?}", rep.outcome),
            None,
        );
        j["divisor"] = d.to_json();
        j["regenerated"] = serde_json::json!(rep.regenerated.as_ref().map(|r| r.to_json()));
        return Ok(Outcome {
            text: pretty(&j),
            failed,
        });
    }
    let mut s = format!(
        "divisor: [{d}]\nresidue: {}\noutcome: {:?}\n",
        rep.residue, rep.outcome
    );
    if let (Some(w), Some(g)) = (&rep.witness, &rep.regenerated) {
        s.push_str(&format!("witness: {w}\nregenerated: {g}\n"));
    }
    Ok(Outcome { text: s, failed })
}

fn cmd_newton(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let f = o.f(&k)?;
    let poly = newton_polygon(&f)?;
    let ann = match (o.alpha, o.beta) {
        (Some(_), Some(_)) => {
            let v = o.valuation()?;
            let e = v.edge_data(&f)?;
            let face = poly.face_support(v.alpha(), v.beta());
            Some(Annotation {
                alpha: v.alpha(),
                beta: v.beta(),
                gamma: e.gamma,
                s0: o.a0.zip(o.b0),
                s1: face.first().copied(),
                s2: (face.len() > 1).then(|| *face.last().unwrap()),
            })
        }
        _ => None,
    };
    if let Some(path) = &o.svg {
        write_file(path, &render_svg(&poly, ann.as_ref()))?;
    }
    if o.json {
        return Ok(Outcome::ok(pretty(&poly.to_json())));
    }
    let mut s = format!("vertices: {:?}\n", poly.vertices);
    for e in &poly.edges {
        s.push_str(&format!(
            "edge {:?} -> {:?} normal {:?}\n",
            e.start, e.end, e.normal
        ));
    }
    s.push_str(&render_ascii(&poly, ann.as_ref()));
    Ok(Outcome::ok(s))
}

/// Runs the sampling oracle on every node and reports disagreements.
fn oracle_report(tree: &BlowupTree, o: &Opts) -> Result<Vec<(String, bool, bool)>> {
    let mut out = Vec::new();
    for n in tree.nodes() {
        let pts = sample_points(&n.state.residue_field, o.samples, o.seed)?;
        out.push((
            n.id.clone(),
            n.dicritical,
            sampling_oracle(tree, &n.id, &pts)?,
        ));
    }
    Ok(out)
}

fn cmd_resolve(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let (f, g) = (o.f(&k)?, o.g(&k)?);
    let tree = monomialize(&f, &g, &o.pencil_options())?;
    if let Some(path) = &o.dot {
        write_file(path, &tree.to_dot("pencil"))?;
    }
    let oracle = oracle_report(&tree, o)?;
    let failed = oracle.iter().any(|(_, a, b)| a != b);
    if o.json {
        let mut j = tree.to_json();
        j["dicritical"] = serde_json::json!(dicritical_components(&tree)
            .iter()
            .map(|(id, r)| serde_json::json!({"id": id, "residue": r.to_json()}))
            .collect::<Vec<_>>());
        j["oracle_agrees"] = serde_json::json!(!failed);
        return Ok(Outcome {
            text: pretty(&j),
            failed,
        });
    }
    let mut s = format!("pencil: ({}, {})\n", tree.start.f, tree.start.g);
    if tree.roots.is_empty() {
        s.push_str("no base point at the origin\n");
    }
    for n in tree.nodes() {
        let residue = n
            .residue_map
            .as_ref()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "pole".into());
        let chain: Vec<String> = n
            .state
            .chart_history
            .iter()
            .map(|c| c.to_string())
            .collect();
        s.push_str(&format!(
            "{}{} [{}] residue {}{}\n",
            "  ".repeat(n.depth() - 1),
            n.id,
            chain.join(","),
            residue,
            if n.dicritical { " dicritical" } else { "" }
        ));
    }
    for (id, a, b) in oracle.iter().filter(|(_, a, b)| a != b) {
        s.push_str(&format!(
            "oracle disagrees on {id}: flag {a}, sampling {b}\n"
        ));
    }
    Ok(Outcome { text: s, failed })
}

fn infinity_text(rep: &crate::pencil::InfinityReport) -> String {
    let mut s = format!(
        "degree {}: {} point(s) at infinity, {} dicritical divisor(s)\n",
        rep.degree,
        rep.points.len(),
        rep.dicritical_divisors.len()
    );
    for (i, p) in rep.points.iter().enumerate() {
        s.push_str(&format!("point {i}: {:?} psi = {}", p.chart, p.coordinate));
        if let Some(mp) = &p.minpoly {
            s.push_str(&format!(" over {}", mp));
        }
        s.push('\n');
    }
    for d in &rep.dicritical_divisors {
        s.push_str(&format!(
            "point {} {}: residue {}",
            d.point, d.id, d.residue
        ));
        match &d.witness {
            Some(w) => s.push_str(&format!(", witness {w}\n")),
            None => s.push_str(", no witness\n"),
        }
    }
    s
}

fn cmd_infinity(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let f = o.f(&k)?;
    let rep = dicriticals_at_infinity(&f, &o.pencil_options())?;
    if let Some(path) = &o.dot {
        write_file(path, &rep.to_dot())?;
    }
    if o.json {
        return Ok(Outcome::ok(pretty(&rep.to_json())));
    }
    Ok(Outcome::ok(infinity_text(&rep)))
}

fn cmd_corollary(o: &Opts) -> Result<Outcome> {
    let k = o.field()?;
    let f = o.f(&k)?;
    let rep = corollary_check(&f, &o.pencil_options())?;
    if o.json {
        return Ok(Outcome::ok(pretty(&rep.to_json())));
    }
    let mut s = infinity_text(&rep);
    s.push_str("every dicritical residue is a polynomial after a change of generator\n");
    Ok(Outcome::ok(s))
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Residue(o) => cmd_residue(o),
        Command::Dicritical(o) => cmd_dicritical(o),
        Command::ClassifyT2(o) => cmd_classify(o),
        Command::CheckT1(o) => cmd_check_t1(o),
        Command::Newton(o) => cmd_newton(o),
        Command::Resolve(o) => cmd_resolve(o),
        Command::Infinity(o) => cmd_infinity(o),
        Command::Corollary(o) => cmd_corollary(o),
    }
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            i32::from(o.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.kind());
            if e.is_internal() {
                1
            } else {
                2
            }
        }
    }
}

/// Runs the command line on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
