//! Command-line front end. `run` returns the exit code and writes output,
//! so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::cache::{johnson_image_cached, theta_der_basis_cached, BasisCache};
use crate::coef::format_q;
use crate::cyclic::CyclicPoly;
use crate::derivation::{DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::framing::{arf, classify_orbit, FramingData, OrbitDescriptor};
use crate::genus0::{self, RotationData, SpecialDer0};
use crate::goldman::{goldman_bracket, kappa_inverse, kk_action, turaev_cobracket, CyclicPair};
use crate::repring::{self, RepElement, SpCharacter};
use crate::serial::Json;
use crate::tensor::TensorPoly;
use crate::{genus1, morita};

#[derive(Parser, Debug)]
#[command(name = "johnsonlab", version, about = "Exact computations with loop operations and symplectic derivations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Genus of the once-bounded surface.
    #[arg(long, global = true, conflicts_with = "punctures")]
    pub genus: Option<usize>,
    /// Number of punctures of the sphere.
    #[arg(long, global = true)]
    pub punctures: Option<usize>,
    /// Base puncture whose class is eliminated.
    #[arg(long, global = true, default_value_t = 0)]
    pub base: usize,
    /// Weight (derivation degree) or truncation bound.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub weight: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for basis solves.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Basis cache directory; defaults to $JOHNSONLAB_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Goldman bracket of two cyclic polynomials.
    Bracket {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Turaev cobracket of a cyclic polynomial.
    Cobracket {
        #[arg(long)]
        x: String,
    },
    /// Action of a cyclic polynomial on a tensor polynomial.
    KkApply {
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Basis of θ-derivations of degree `--weight`.
    Derbasis {
        #[arg(long, default_value = "lie")]
        kind: String,
        /// Degree, may be 0 or -1 (overrides --weight).
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i32>,
    },
    /// Degree-`--weight` part of the subalgebra generated by the degree-1 Johnson image.
    JohnsonImage,
    /// A quadratic Pollack relation among the genus-one derivations.
    Pollack {
        #[arg(long)]
        which: u8,
    },
    /// The genus-one derivation with `b ↦ ad_b^{2n}(a)`.
    Epsilon {
        #[arg(long)]
        n: usize,
    },
    /// μ on a monomial of Sym^{2n+1}H, e.g. `--monomial a1,a1,b2`.
    Mu {
        #[arg(long)]
        monomial: String,
    },
    /// μ² on the invariant line of Λ²Sym^{2n+1}H.
    Mu2 {
        #[arg(long)]
        n: usize,
    },
    /// Trace of a derivation, or its vanishing on the Johnson image.
    EsTrace {
        #[arg(long, conflicts_with = "johnson")]
        derivation: Option<String>,
        /// Check every basis element of the Johnson image in degree `--weight`.
        #[arg(long)]
        johnson: bool,
    },
    /// Divergence of a special derivation.
    Div0 {
        #[command(flatten)]
        der: Der0Input,
    },
    /// Edge map `div + Σ rot(j)|u_j|`.
    Edge {
        #[command(flatten)]
        der: Der0Input,
        /// Rotation numbers, e.g. `1:2,2:-1`.
        #[arg(long, default_value = "")]
        rot: String,
    },
    /// Polylog divergence identity for `σ_{2m+1}`.
    AppendixA {
        #[arg(long)]
        m: usize,
    },
    /// Relations among the `e_{j,k}` in the derivation representation.
    Relations0 {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decompose a representation expression such as `L2(L3(H) - H)`.
    RepringDecompose {
        #[arg(long)]
        expr: String,
    },
    /// Graded Lie algebra from its homology Euler characteristic series.
    Mobius {
        /// Dimension mode: comma-separated integers `Φ_0,Φ_1,…`.
        #[arg(long, conflicts_with = "series", allow_hyphen_values = true)]
        phi: Option<String>,
        /// Character mode: a JSON array of representation-ring elements.
        #[arg(long)]
        series: Option<String>,
    },
    /// Arf invariant and orbit descriptor of a framing.
    Framing {
        #[arg(long, conflicts_with_all = ["rot_a", "rot_b"])]
        data: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rot_a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rot_b: Option<String>,
        /// Rotation numbers of non-separating simple closed curves (genus 1).
        #[arg(long, allow_hyphen_values = true)]
        scc: Option<String>,
    },
    /// `δ(κ⁻¹(μ²))` for exploration.
    ExploreMu2 {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Der0Input {
    /// Special derivation as JSON (literal, `@file`, or `-` for stdin).
    #[arg(long, conflicts_with = "ejk")]
    pub derivation: Option<String>,
    /// Generator `e_{j,k}` given as `j,k`.
    #[arg(long)]
    pub ejk: Option<String>,
}

/// Result of a subcommand: JSON payload, table text, and whether an identity check held.
struct Report {
    json: Value,
    table: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, table: String) -> Self {
        Report { json, table, ok: true }
    }

    fn check(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    if let Some(k) = cli.global.jobs {
        // Fails only if a pool already exists, e.g. on repeated calls in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    match execute(&cli) {
        Ok(rep) => {
            let text = match cli.global.format {
                Format::Json => {
                    let mut v = rep.json;
                    if let Value::Object(m) = &mut v {
                        m.insert("ok".into(), json!(rep.ok));
                    }
                    format!("{v}\n")
                }
                Format::Table => rep.table,
            };
            let _ = write!(out, "{text}");
            if rep.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_input<T: Json>(arg: &str) -> Result<T> {
    T::from_json_str(&read_input(arg)?)
}

fn symplectic(g: &Global) -> Result<Alphabet> {
    Alphabet::symplectic(g.genus.ok_or_else(|| Error::InvalidArgument("--genus is required".into()))?)
}

fn boundary(g: &Global) -> Result<Alphabet> {
    Alphabet::boundary(g.punctures.ok_or_else(|| Error::InvalidArgument("--punctures is required".into()))?, g.base)
}

fn weight(g: &Global) -> Result<u32> {
    g.weight.ok_or_else(|| Error::InvalidArgument("--weight is required".into()))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad integer `{x}`"))))
        .collect()
}

fn word_text(al: Alphabet, w: &Word) -> String {
    if w.is_empty() {
        return "∅".into();
    }
    w.letters().iter().map(|&l| al.letter_name(l)).collect::<Vec<_>>().join(" ")
}

fn tensor_table(t: &TensorPoly) -> String {
    let al = t.alphabet();
    let mut s = String::new();
    for (w, c) in t.sorted_terms() {
        s.push_str(&format!("{}\t{}\n", format_q(c), word_text(al, w)));
    }
    if s.is_empty() {
        s.push_str("0\n");
    }
    s
}

fn cyclic_table(c: &CyclicPoly) -> String {
    let al = c.alphabet();
    let mut s = String::new();
    for (w, a) in c.sorted_terms() {
        s.push_str(&format!("{}\t|{}|\n", format_q(a), word_text(al, w)));
    }
    if s.is_empty() {
        s.push_str("0\n");
    }
    s
}

fn pair_table(p: &CyclicPair) -> String {
    let al = p.alphabet();
    let mut s = String::new();
    for ((u, v), a) in p.sorted_terms() {
        s.push_str(&format!("{}\t|{}| ∧ |{}|\n", format_q(a), word_text(al, u), word_text(al, v)));
    }
    if s.is_empty() {
        s.push_str("0\n");
    }
    s
}

fn der_table(d: &ThetaDerivation) -> String {
    let al = d.alphabet();
    let mut s = format!("degree {} ({})\n", d.degree(), d.kind().name());
    for l in al.letters() {
        s.push_str(&format!("{} ↦\n", al.letter_name(l)));
        for line in tensor_table(d.value(l)).lines() {
            s.push_str(&format!("  {line}\n"));
        }
    }
    s
}

fn der0_table(d: &SpecialDer0) -> String {
    let al = d.alphabet();
    let mut s = format!("degree {}\n", d.degree());
    for (l, u) in d.components().iter().enumerate() {
        s.push_str(&format!("u[{}] =\n", al.letter_name(l as Letter)));
        for line in tensor_table(u).lines() {
            s.push_str(&format!("  {line}\n"));
        }
    }
    s
}

fn der0_input(g: &Global, input: &Der0Input) -> Result<SpecialDer0> {
    match (&input.derivation, &input.ejk) {
        (Some(d), None) => parse_input(d),
        (None, Some(jk)) => {
            let v = parse_ints(jk)?;
            let [j, k] = v.as_slice() else {
                return Err(Error::InvalidArgument("--ejk takes two indices `j,k`".into()));
            };
            if *j < 0 || *k < 0 {
                return Err(Error::InvalidArgument("puncture indices are non-negative".into()));
            }
            genus0::ejk_generator(boundary(g)?, *j as usize, *k as usize)
        }
        _ => Err(Error::InvalidArgument("give --derivation or --ejk".into())),
    }
}

fn parse_rotation(s: &str) -> Result<RotationData> {
    let mut rot = RotationData::new();
    for item in s.split(',').filter(|x| !x.trim().is_empty()) {
        let (p, r) = item
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("rotation entry `{item}` must be puncture:value")))?;
        let p: usize = p.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad puncture `{p}`")))?;
        let r: i64 = r.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad rotation `{r}`")))?;
        rot.insert(p, r);
    }
    Ok(rot)
}

fn rep_report(r: &RepElement, genus: usize) -> Result<Report> {
    let dim = r.dimension(genus)?;
    let mut table = String::new();
    for (p, m) in &r.terms {
        table.push_str(&format!("{m}\t{p:?}\n"));
    }
    table.push_str(&format!("dimension\t{dim}\n"));
    Ok(Report::new(json!({"decomposition": r.to_json(), "dimension": dim.to_string()}), table))
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let cache = BasisCache::from_flag_or_env(g.cache_dir.as_deref())?;
    match &cli.command {
        Command::Bracket { x, y } => {
            let r = goldman_bracket(&parse_input(x)?, &parse_input(y)?)?;
            Ok(Report::new(r.to_json(), cyclic_table(&r)))
        }
        Command::Cobracket { x } => {
            let r = turaev_cobracket(&parse_input(x)?)?;
            Ok(Report::new(r.to_json(), pair_table(&r)))
        }
        Command::KkApply { x, w } => {
            let r = kk_action(&parse_input(x)?, &parse_input(w)?)?;
            Ok(Report::new(r.to_json(), tensor_table(&r)))
        }
        Command::Derbasis { kind, degree } => {
            let al = symplectic(g)?;
            let kind = DerKind::parse(kind)?;
            let m = match degree {
                Some(m) => *m,
                None => weight(g)? as i32,
            };
            let s = theta_der_basis_cached(cache.as_ref(), al, m, kind)?;
            let basis: Vec<Value> = s.basis().iter().map(|d| d.to_json()).collect();
            let mut table = format!("dimension {}\n", s.dim());
            for (i, d) in s.basis().iter().enumerate() {
                table.push_str(&format!("# {i}\n{}", der_table(d)));
            }
            Ok(Report::new(json!({"degree": m, "kind": kind.name(), "dimension": s.dim(), "basis": basis}), table))
        }
        Command::JohnsonImage => {
            let al = symplectic(g)?;
            let m = weight(g)? as usize;
            let s = johnson_image_cached(cache.as_ref(), al, m)?;
            let full = theta_der_basis_cached(cache.as_ref(), al, m as i32, DerKind::Lie)?;
            let chi = repring::char_of_subspace(&s)?;
            let dec = repring::decompose(&chi)?;
            let table = format!("dim J_{m} = {}\ndim Der_{m} = {}\n", s.dim(), full.dim());
            Ok(Report::new(
                json!({"degree": m, "dimension": s.dim(), "ambient_dimension": full.dim(), "decomposition": dec.to_json()}),
                table,
            ))
        }
        Command::Pollack { which } => {
            let terms = genus1::pollack_relation(*which)?;
            let (holds, residual) = genus1::pollack_check(*which)?;
            let mut text = String::new();
            for (k, (c, i, j)) in terms.iter().enumerate() {
                let sign = if *c < 0 { "- " } else if k > 0 { "+ " } else { "" };
                let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                text.push_str(&format!("{}{sign}{mag}[ε{i},ε{j}]", if k > 0 { " " } else { "" }));
            }
            let table = format!(
                "relation {which}: {text} = 0\nresidual = {}\n",
                if holds { "0".to_string() } else { format!("{} terms", residual.coordinates().len()) }
            );
            Ok(Report::new(
                json!({"relation": which, "terms": terms, "holds": holds, "residual": residual.to_json()}),
                table,
            )
            .check(holds))
        }
        Command::Epsilon { n } => {
            let d = genus1::epsilon(Alphabet::symplectic(1)?, *n)?;
            Ok(Report::new(d.to_json(), der_table(&d)))
        }
        Command::Mu { monomial } => {
            let al = symplectic(g)?;
            let letters: Vec<Letter> = monomial
                .split(',')
                .map(|s| {
                    let e = al.parse_letter(s.trim())?;
                    Ok(e[0].0)
                })
                .collect::<Result<_>>()?;
            let d = morita::mu_odd(al, &letters)?;
            Ok(Report::new(d.to_json(), der_table(&d)))
        }
        Command::Mu2 { n } => {
            let d = morita::mu_squared(symplectic(g)?, *n)?;
            Ok(Report::new(d.to_json(), der_table(&d)))
        }
        Command::EsTrace { derivation, johnson } => {
            if *johnson {
                let al = symplectic(g)?;
                let m = weight(g)? as usize;
                let s = johnson_image_cached(cache.as_ref(), al, m)?;
                let mut nonzero = 0usize;
                for d in s.basis() {
                    if !morita::es_trace(d)?.is_zero() {
                        nonzero += 1;
                    }
                }
                let table = format!("J_{m}: {} basis elements, trace nonzero on {nonzero}\n", s.dim());
                Ok(Report::new(json!({"degree": m, "dimension": s.dim(), "nonzero": nonzero}), table)
                    .check(nonzero == 0))
            } else {
                let d: ThetaDerivation =
                    parse_input(derivation.as_deref().ok_or_else(|| Error::InvalidArgument("give --derivation or --johnson".into()))?)?;
                let t = morita::es_trace(&d)?;
                Ok(Report::new(t.to_json(), cyclic_table(&t)))
            }
        }
        Command::Div0 { der } => {
            let d = der0_input(g, der)?;
            let c = genus0::divergence(&d);
            Ok(Report::new(json!({"derivation": d.to_json(), "divergence": c.to_json()}), der0_table(&d) + &cyclic_table(&c)))
        }
        Command::Edge { der, rot } => {
            let d = der0_input(g, der)?;
            let c = genus0::edge_map(&d, &parse_rotation(rot)?);
            Ok(Report::new(json!({"derivation": d.to_json(), "edge": c.to_json()}), der0_table(&d) + &cyclic_table(&c)))
        }
        Command::AppendixA { m } => {
            let r = genus0::appendix_a_check(*m)?;
            let table = format!(
                "m = {m}\nbinomial expansion: {}\ndivergence value: {}\nidentity mod depth 2: {}\nlhs mod depth 2:\n{}rhs mod depth 2:\n{}",
                r.binomial_expansion_ok,
                r.divergence_ok,
                r.identity_ok,
                cyclic_table(&r.lhs_reduced),
                cyclic_table(&r.rhs_reduced)
            );
            Ok(Report::new(
                json!({
                    "m": m,
                    "binomial_expansion": r.binomial_expansion_ok,
                    "divergence_value": r.divergence_ok,
                    "identity": r.identity_ok,
                    "divergence": r.divergence.to_json(),
                    "lhs_reduced": r.lhs_reduced.to_json(),
                    "rhs_reduced": r.rhs_reduced.to_json(),
                }),
                table,
            )
            .check(r.passed()))
        }
        Command::Relations0 { n } => {
            let n = match (n, g.punctures) {
                (Some(n), _) => *n,
                (None, Some(p)) if p >= 1 => p - 1,
                _ => return Err(Error::InvalidArgument("give --n or --punctures".into())),
            };
            let r = genus0::relations_check(n)?;
            let table = format!(
                "n = {n}\nsum relations: {}\ncommuting relations: {}\ntriangle relations: {}\nfailures: {}\n",
                r.sum_relations,
                r.commuting_relations,
                r.triangle_relations,
                r.failures.len()
            );
            Ok(Report::new(
                json!({"n": n, "sum": r.sum_relations, "commuting": r.commuting_relations,
                       "triangle": r.triangle_relations, "failures": r.failures}),
                table,
            )
            .check(r.passed()))
        }
        Command::RepringDecompose { expr } => {
            let genus = g.genus.ok_or_else(|| Error::InvalidArgument("--genus is required".into()))?;
            let chi = RepExpr::new(expr, genus).parse()?;
            rep_report(&repring::decompose(&chi)?, genus)
        }
        Command::Mobius { phi, series } => {
            let n = weight(g)? as usize;
            match (phi, series) {
                (Some(p), None) => {
                    let phi: Vec<BigInt> = parse_ints(p)?.into_iter().map(BigInt::from).collect();
                    let h = repring::mobius_invert(&phi, n)?;
                    let h: Vec<String> = h.iter().map(|x| x.to_string()).collect();
                    let table = h.iter().enumerate().skip(1).map(|(i, x)| format!("{i}\t{x}\n")).collect();
                    Ok(Report::new(json!({"mode": "dimension", "h": h}), table))
                }
                (None, Some(s)) => {
                    let genus = g.genus.ok_or_else(|| Error::InvalidArgument("--genus is required".into()))?;
                    let phi: Vec<RepElement> = parse_input(s)?;
                    let h = repring::mobius_invert_rep(&phi, genus, n)?;
                    let mut table = String::new();
                    for (i, r) in h.iter().enumerate().skip(1) {
                        table.push_str(&format!("{i}\t{}\n", r.to_json()));
                    }
                    Ok(Report::new(json!({"mode": "character", "h": h.to_json()}), table))
                }
                _ => Err(Error::InvalidArgument("give --phi or --series".into())),
            }
        }
        Command::Framing { data, rot_a, rot_b, scc } => {
            let mut f: FramingData = match (data, rot_a, rot_b) {
                (Some(d), None, None) => parse_input(d)?,
                (None, Some(a), Some(b)) => FramingData::new(parse_ints(a)?, parse_ints(b)?)?,
                _ => return Err(Error::InvalidArgument("give --data, or both --rot-a and --rot-b".into())),
            };
            if let Some(s) = scc {
                f.scc = parse_ints(s)?.into_iter().enumerate().map(|(i, r)| (format!("c{i}"), r)).collect();
            }
            let a = arf(&f)?;
            let orbit = classify_orbit(&f)?;
            let ok = !matches!(orbit, OrbitDescriptor::Gcd { parity_consistent: false, .. });
            let table = match &orbit {
                OrbitDescriptor::Arf { arf } => format!("Arf = {arf}\norbit: Arf {arf}\n"),
                OrbitDescriptor::Gcd { gcd, arf, parity_consistent } => {
                    format!("Arf = {arf}\nA = {gcd}\nparity A ≡ 1 + Arf: {parity_consistent}\n")
                }
            };
            Ok(Report::new(json!({"arf": a, "orbit": serde_json::to_value(&orbit).expect("plain data")}), table).check(ok))
        }
        Command::ExploreMu2 { n } => {
            let al = symplectic(g)?;
            let d = morita::mu_squared(al, *n)?;
            let pre = kappa_inverse(&d)?;
            let r = turaev_cobracket(&pre)?;
            Ok(Report::new(json!({"n": n, "terms": r.len(), "cobracket": r.to_json()}), pair_table(&r)))
        }
    }
}

/// Parser for expressions over `Sp` characters:
/// `H`, `1`, `V[2,2]`, `L<k>(e)`, `S<k>(e)`, `P<d>(e)` (Adams), `e + e`, `e - e`, `e * e`, `<n> * e`.
struct RepExpr<'a> {
    s: &'a [u8],
    pos: usize,
    genus: usize,
}

impl<'a> RepExpr<'a> {
    fn new(s: &'a str, genus: usize) -> Self {
        RepExpr { s: s.as_bytes(), pos: 0, genus }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("byte {}", self.pos), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn parse(mut self) -> Result<SpCharacter> {
        let v = self.sum()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }

    fn sum(&mut self) -> Result<SpCharacter> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SpCharacter> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.atom()?)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SpCharacter> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'H') => {
                self.pos += 1;
                Ok(SpCharacter::defining(self.genus))
            }
            Some(b'V') => {
                self.pos += 1;
                self.expect(b'[')?;
                let mut parts = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        parts.push(self.number()? as u32);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                repring::irr_character(&parts, self.genus)
            }
            Some(op @ (b'L' | b'S' | b'P')) => {
                self.pos += 1;
                let k = self.number()?;
                self.expect(b'(')?;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(match op {
                    b'L' => v.exterior_power(k),
                    b'S' => v.symmetric_power(k),
                    _ => v.adams(k as u32),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(self.atom()?.scale(&BigInt::from(n)))
                } else {
                    Ok(SpCharacter::trivial(self.genus).scale(&BigInt::from(n)))
                }
            }
            _ => Err(self.err("expected H, V[..], L<k>(..), S<k>(..), P<d>(..), a number or `(`")),
        }
    }
}
