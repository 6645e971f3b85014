//! Job files, the command driver with parameter resampling, and text/JSON
//! reports.
//!
//! A job file looks like
//!
//! ```text
//! # comment
//! B: 4 2
//! 1 0
//! -2 1
//! 1 -2
//! 0 1
//! c: generic
//! convention: falling
//! seed: 7
//! window: 12
//! ```
//!
//! `c:` takes either `generic` or `n` rationals `p/q`, on the same line or
//! on the following lines.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{HornError, Result};
use crate::groebner::{alpha_membership, buchberger, generic_initial_ideal, lattice_basis_ideal, saturate_by_product, Limits};
use crate::horn::{alpha_vector, generic_rank, Convention, HornConfig, HornSystem, Params, RankReport};
use crate::linalg::Rat;
use crate::poly::MonomialOrder;
use crate::puiseux::{all_puiseux, format_x_terms, format_y_terms, PuiseuxPolynomial};
use crate::series::{coefficient_rank, full_basis, verify_annihilation, verify_horn_series, FullBasis, DEFAULT_WINDOW};
use crate::shift::{compatibility_check, horn_operators, psi_operator, resultant_certificate, special_form};
use crate::stdpairs::{admissible_pairs, dependent_multiplicity, embedded_pairs, standard_pairs, top_pairs};

/// Resampling cap for generic parameters.
pub const PARAMETER_RESAMPLE_CAP: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub rows: Vec<[i64; 2]>,
    pub params: Params,
    pub convention: Convention,
    pub seed: u64,
    pub window: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Rank,
    Puiseux,
    Series,
    Decompose,
    Identity,
    Psi,
    Verify,
    All,
}

impl FromStr for Command {
    type Err = HornError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rank" => Command::Rank,
            "puiseux" => Command::Puiseux,
            "series" => Command::Series,
            "decompose" => Command::Decompose,
            "identity" => Command::Identity,
            "psi" => Command::Psi,
            "verify" => Command::Verify,
            "all" => Command::All,
            other => return Err(HornError::InvalidInput(format!("unknown command {other:?}"))),
        })
    }
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Rank => "rank",
            Command::Puiseux => "puiseux",
            Command::Series => "series",
            Command::Decompose => "decompose",
            Command::Identity => "identity",
            Command::Psi => "psi",
            Command::Verify => "verify",
            Command::All => "all",
        }
    }
}

impl HornError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HornError::GenericityFailure(_) => 2,
            HornError::ResourceExhausted { .. } => 3,
            _ => 1,
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> HornError {
    HornError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_rational(tok: &str, line: usize, column: usize) -> Result<Rat> {
    let bad = || parse_err(line, column, format!("expected a rational p/q, found {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(parse_err(line, column, "zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_job(text: &str) -> Result<JobSpec> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut rows: Option<Vec<[i64; 2]>> = None;
    let mut params = Params::Generic { seed: 0 };
    let mut explicit_c: Option<Vec<Rat>> = None;
    let mut pending_c: Option<(usize, Vec<Rat>)> = None;
    let mut convention = Convention::Falling;
    let mut seed = 0u64;
    let mut window = DEFAULT_WINDOW;
    let mut idx = 0;
    while idx < lines.len() {
        let (ln, line) = lines[idx];
        idx += 1;
        let Some((key, rest)) = line.split_once(':') else {
            if let Some((_, vals)) = pending_c.as_mut() {
                let offset = line.len() - line.trim_start().len();
                for (col, tok) in tokens(line) {
                    vals.push(parse_rational(tok, ln, col)?);
                }
                let _ = offset;
                continue;
            }
            return Err(parse_err(ln, 1, "expected `key: value`"));
        };
        if let Some((_, vals)) = pending_c.take() {
            explicit_c = Some(vals);
        }
        let key = key.trim();
        let value_col = key.len() + 2;
        match key {
            "B" => {
                let dims = tokens(rest);
                if dims.len() != 2 {
                    return Err(parse_err(ln, value_col, "expected `B: n 2`"));
                }
                let n: usize = dims[0]
                    .1
                    .parse()
                    .map_err(|_| parse_err(ln, dims[0].0 + key.len() + 1, "row count must be an integer"))?;
                if dims[1].1 != "2" {
                    return Err(parse_err(ln, dims[1].0 + key.len() + 1, "B must have two columns"));
                }
                let mut b = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some(&(rl, rline)) = lines.get(idx) else {
                        return Err(parse_err(ln, 1, format!("expected {n} rows of B")));
                    };
                    idx += 1;
                    let toks = tokens(rline);
                    if toks.len() != 2 {
                        return Err(parse_err(rl, 1, "each row of B needs two integers"));
                    }
                    let mut r = [0i64; 2];
                    for (k, (col, tok)) in toks.iter().enumerate() {
                        r[k] = tok
                            .parse()
                            .map_err(|_| parse_err(rl, *col, format!("expected an integer, found {tok:?}")))?;
                    }
                    b.push(r);
                }
                rows = Some(b);
            }
            "c" => {
                let toks = tokens(rest);
                if toks.len() == 1 && toks[0].1 == "generic" {
                    explicit_c = None;
                } else {
                    let mut vals = Vec::new();
                    for (col, tok) in toks {
                        vals.push(parse_rational(tok, ln, col + key.len() + 1)?);
                    }
                    pending_c = Some((ln, vals));
                }
            }
            "convention" => {
                convention = rest
                    .trim()
                    .parse()
                    .map_err(|e: HornError| parse_err(ln, value_col, e.to_string()))?;
            }
            "seed" => {
                seed = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(ln, value_col, "seed must be a nonnegative integer"))?;
            }
            "window" => {
                window = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(ln, value_col, "window must be an integer"))?;
                if window < 1 {
                    return Err(parse_err(ln, value_col, "window must be positive"));
                }
            }
            other => return Err(parse_err(ln, 1, format!("unknown key {other:?}"))),
        }
    }
    if let Some((_, vals)) = pending_c.take() {
        explicit_c = Some(vals);
    }
    let rows = rows.ok_or_else(|| parse_err(1, 1, "missing `B:` block"))?;
    if let Some(c) = explicit_c {
        if c.len() != rows.len() {
            return Err(HornError::InvalidInput(format!(
                "parameter length: c has {} entries but B has {} rows",
                c.len(),
                rows.len()
            )));
        }
        params = Params::Explicit(c);
    }
    Ok(JobSpec {
        rows,
        params,
        convention,
        seed,
        window,
    })
}

impl JobSpec {
    pub fn config(&self) -> Result<HornConfig> {
        let params = match &self.params {
            Params::Generic { .. } => Params::Generic { seed: self.seed },
            p => p.clone(),
        };
        if self.rows.len() == 2 {
            HornConfig::pair_system([self.rows[0], self.rows[1]], params, self.convention)
        } else {
            HornConfig::new(self.rows.clone(), params, self.convention)
        }
    }

    fn canonical(&self) -> String {
        let b: Vec<String> = self.rows.iter().map(|r| format!("{} {}", r[0], r[1])).collect();
        let c = match &self.params {
            Params::Generic { .. } => "generic".to_string(),
            Params::Explicit(c) => c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        };
        format!(
            "B:{};c:{};convention:{};seed:{};window:{}",
            b.join(","),
            c,
            match self.convention {
                Convention::Falling => "falling",
                Convention::Rising => "rising",
            },
            self.seed,
            self.window
        )
    }

    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.canonical().as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub struct Report {
    pub text: String,
    pub json: Value,
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

fn puiseux_json(p: &PuiseuxPolynomial) -> Value {
    json!({
        "pair": [p.p + 1, p.q + 1],
        "base_point": p.base_point,
        "x_terms": p.x_terms.iter().map(|(e, c)| json!({"exponent": e, "coefficient": rat_str(c)})).collect::<Vec<_>>(),
        "y_terms": p.y_terms.iter().map(|(e, c)| json!({"exponent": rats(e), "coefficient": rat_str(c)})).collect::<Vec<_>>(),
    })
}

struct Ctx<'a> {
    spec: &'a JobSpec,
    cfg: HornConfig,
    sys: HornSystem,
    text: String,
    results: serde_json::Map<String, Value>,
}

fn need_full(cfg: &HornConfig) -> Result<()> {
    if cfg.is_zero_sum() && cfg.n() >= 3 {
        Ok(())
    } else {
        Err(HornError::InvalidInput(
            "this command needs a Horn configuration with at least three rows summing to zero".into(),
        ))
    }
}

impl Ctx<'_> {
    fn rank(&mut self) -> Result<RankReport> {
        need_full(&self.cfg)?;
        let r = generic_rank(&self.cfg)?;
        writeln!(self.text, "== rank ==\n{r}").unwrap();
        self.results.insert("rank".into(), serde_json::to_value(&r).unwrap());
        Ok(r)
    }

    fn puiseux(&mut self) -> Result<Vec<PuiseuxPolynomial>> {
        let polys = all_puiseux(&self.sys)?;
        writeln!(self.text, "== Puiseux polynomials ({}) ==", polys.len()).unwrap();
        for p in &polys {
            writeln!(self.text, "x: {}", format_x_terms(p.p, p.q, &p.x_terms)).unwrap();
            writeln!(self.text, "y: {}", format_y_terms(&p.y_terms)).unwrap();
        }
        self.results.insert(
            "puiseux".into(),
            json!({"count": polys.len(), "verified": true, "polynomials": polys.iter().map(puiseux_json).collect::<Vec<_>>()}),
        );
        Ok(polys)
    }

    fn basis(&mut self) -> Result<FullBasis> {
        need_full(&self.cfg)?;
        full_basis(&self.cfg, &self.sys, self.spec.window, self.spec.seed)
    }

    fn series(&mut self, fb: &FullBasis) -> Result<Value> {
        let a = self.cfg.gale_dual()?;
        writeln!(self.text, "== Gamma-series ({}), window {} ==", fb.series.len(), self.spec.window).unwrap();
        let mut list = Vec::new();
        let mut clean = true;
        for s in &fb.series {
            let xr = verify_annihilation(&s.phi, &a);
            let yr = verify_horn_series(s, &self.sys);
            clean &= xr.is_clean() && yr.is_clean();
            let root = s.root.as_ref().expect("series from a root");
            writeln!(
                self.text,
                "v = ({}) alpha = ({}, {}) terms = {} checked = {} frontier = {} violations = {}",
                rats(&s.phi.v).join(", "),
                s.alpha[0],
                s.alpha[1],
                s.phi.coeffs.len(),
                xr.checked + yr.checked,
                xr.frontier_excluded + yr.frontier_excluded,
                xr.violations.len() + yr.violations.len()
            )
            .unwrap();
            let sample: Vec<Value> = s
                .phi
                .coeffs
                .iter()
                .filter(|(z, _)| z[0].abs() + z[1].abs() <= 1)
                .map(|(z, c)| json!({"z": z, "exponent": rats(&s.exponent(*z)), "coefficient": rat_str(c)}))
                .collect();
            list.push(json!({
                "v": rats(&s.phi.v),
                "alpha": rats(&s.alpha),
                "standard_pair": {"eta": root.pair.eta, "sigma": root.pair.sigma.iter().map(|i| i + 1).collect::<Vec<_>>()},
                "terms": s.phi.coeffs.len(),
                "leading_terms": sample,
                "x_check": {"checked": xr.checked, "frontier_excluded": xr.frontier_excluded, "violations": xr.violations},
                "y_check": {"checked": yr.checked, "frontier_excluded": yr.frontier_excluded, "violations": yr.violations},
            }));
        }
        let v = json!({"window": self.spec.window, "weight": fb.initial.weight, "count": fb.series.len(), "clean": clean, "series": list});
        self.results.insert("series".into(), v.clone());
        Ok(v)
    }

    fn decompose(&mut self) -> Result<()> {
        need_full(&self.cfg)?;
        let rows = self.cfg.rows().to_vec();
        let gens = lattice_basis_ideal(&rows);
        let gb_i = buchberger(&gens, &MonomialOrder::grevlex())?;
        let sat = saturate_by_product(&gens, Limits::default())?;
        let ini_i = generic_initial_ideal(&gens, self.spec.seed)?;
        let ini_b = generic_initial_ideal(&sat.polys, self.spec.seed)?;
        let sp_i = standard_pairs(&ini_i.ideal);
        let sp_b = standard_pairs(&ini_b.ideal);
        let top_i = top_pairs(&sp_i, 2);
        let top_b = top_pairs(&sp_b, 2);
        let t = admissible_pairs(&top_i, &rows);
        let names: Vec<String> = (1..=rows.len()).map(|i| format!("d{i}")).collect();
        let show = |ps: &[crate::poly::SparsePolynomial]| ps.iter().map(|p| p.fmt_with(&names)).collect::<Vec<_>>();
        let mono = |e: &crate::poly::Exponent| crate::poly::SparsePolynomial::monomial(e.clone()).fmt_with(&names);
        let mut multiplicities = Vec::new();
        for p in crate::horn::index_table(&rows).iter().filter(|p| p.dependent) {
            multiplicities.push(json!({
                "pair": [p.i + 1, p.j + 1],
                "nu": p.nu,
                "multiplicity": dependent_multiplicity(&top_i, p.i, p.j),
            }));
        }
        let alpha = alpha_vector(&rows);
        let membership = alpha_membership(&rows, &alpha)?;
        writeln!(self.text, "== decomposition ==").unwrap();
        writeln!(self.text, "I   = <{}>", show(&gens).join(", ")).unwrap();
        writeln!(self.text, "I_B = <{}>", show(&sat.polys).join(", ")).unwrap();
        writeln!(self.text, "weight w = {:?}", ini_i.weight).unwrap();
        writeln!(
            self.text,
            "in_w(I): {} top pairs, {} in T, {} embedded pairs discarded",
            top_i.len(),
            t.len(),
            embedded_pairs(&sp_i, 2).len()
        )
        .unwrap();
        writeln!(
            self.text,
            "in_w(I_B): {} top pairs, {} embedded pairs discarded",
            top_b.len(),
            embedded_pairs(&sp_b, 2).len()
        )
        .unwrap();
        for m in &multiplicities {
            writeln!(self.text, "dependent pair {} : multiplicity {} (nu = {})", m["pair"], m["multiplicity"], m["nu"]).unwrap();
        }
        writeln!(
            self.text,
            "alpha = {:?}: d^alpha I_B in I is {} ({} generators)",
            alpha,
            membership.holds(),
            membership.checked
        )
        .unwrap();
        self.results.insert(
            "decompose".into(),
            json!({
                "lattice_basis_ideal": show(&gens),
                "groebner_basis_size": gb_i.polys.len(),
                "lattice_ideal": show(&sat.polys),
                "weight": ini_i.weight,
                "weight_lattice": ini_b.weight,
                "initial_ideal": ini_i.ideal.generators().iter().map(mono).collect::<Vec<_>>(),
                "initial_lattice_ideal": ini_b.ideal.generators().iter().map(mono).collect::<Vec<_>>(),
                "top_pairs": top_i.len(),
                "admissible_pairs": t.len(),
                "embedded_pairs": embedded_pairs(&sp_i, 2).len(),
                "lattice_top_pairs": top_b.len(),
                "dependent_multiplicities": multiplicities,
                "alpha": alpha,
                "alpha_membership": membership.holds(),
            }),
        );
        Ok(())
    }

    fn identity(&mut self) -> Result<()> {
        need_full(&self.cfg)?;
        let r = generic_rank(&self.cfg)?;
        let rows = self.cfg.rows().to_vec();
        let gens = lattice_basis_ideal(&rows);
        let ini_i = generic_initial_ideal(&gens, self.spec.seed)?;
        let sat = saturate_by_product(&gens, Limits::default())?;
        let ini_b = generic_initial_ideal(&sat.polys, self.spec.seed)?;
        let t = admissible_pairs(&top_pairs(&standard_pairs(&ini_i.ideal), 2), &rows).len() as i64;
        let top_b = top_pairs(&standard_pairs(&ini_b.ideal), 2).len() as i64;
        let lhs = r.product - r.sum_dependent;
        let rhs = r.rank_from_volume();
        let ok = lhs == rhs && t == r.rank && top_b == r.lattice_index * r.volume;
        writeln!(self.text, "== degree identity ==").unwrap();
        writeln!(self.text, "d1*d2 - sum_dep nu  = {lhs}").unwrap();
        writeln!(self.text, "g*vol + sum_indep nu = {rhs}").unwrap();
        writeln!(self.text, "#T(in_w(I))          = {t}").unwrap();
        writeln!(self.text, "#top pairs in_w(I_B) = {top_b} (g*vol = {})", r.lattice_index * r.volume).unwrap();
        writeln!(self.text, "identity holds       : {ok}").unwrap();
        self.results.insert(
            "identity".into(),
            json!({"lhs": lhs, "rhs": rhs, "admissible_pairs": t, "lattice_top_pairs": top_b, "g_vol": r.lattice_index * r.volume, "holds": ok}),
        );
        if !ok {
            return Err(HornError::IdentityViolation(
                "combinatorial and Gröbner counts disagree".into(),
            ));
        }
        Ok(())
    }

    fn psi(&mut self) -> Result<()> {
        let ops = horn_operators(&self.sys);
        let psi = psi_operator(&ops.p, &ops.q);
        let comp = compatibility_check(&ops.p, &ops.q);
        writeln!(self.text, "== operators ==").unwrap();
        writeln!(self.text, "H1  = {:?}", ops.h[0]).unwrap();
        writeln!(self.text, "H2  = {:?}", ops.h[1]).unwrap();
        writeln!(self.text, "Psi = {:?}", psi).unwrap();
        writeln!(
            self.text,
            "compatibility: commutator {}, Q relation {}, ratio consistency {}",
            comp.commutator_vanishes, comp.q_relation, comp.ratio_consistent
        )
        .unwrap();
        let mut v = json!({
            "h1": format!("{:?}", ops.h[0]),
            "h2": format!("{:?}", ops.h[1]),
            "psi": format!("{:?}", psi),
            "compatibility": {"commutator_vanishes": comp.commutator_vanishes, "q_relation": comp.q_relation, "ratio_consistent": comp.ratio_consistent},
        });
        match special_form(&self.sys) {
            Ok(sf) => {
                let cert = resultant_certificate(&sf)?;
                writeln!(self.text, "special form: f(t) = {}, g(t) = {}", sf.f, sf.g).unwrap();
                writeln!(self.text, "Res(f, g) = {}", cert.resultant).unwrap();
                writeln!(self.text, "reduced Psi = {:?}", cert.psi).unwrap();
                v["special_form"] = json!({
                    "f": rats(&sf.f.0),
                    "g": rats(&sf.g.0),
                    "resultant": rat_str(&cert.resultant),
                    "reduced_psi": format!("{:?}", cert.psi),
                    "identities_checked": cert.identities_checked,
                    "explicit_combination": cert.combination.is_some(),
                });
            }
            Err(HornError::UnsupportedShape(m)) => {
                writeln!(self.text, "special form: not detected ({m})").unwrap();
                v["special_form"] = Value::Null;
            }
            Err(e) => return Err(e),
        }
        self.results.insert("psi".into(), v);
        Ok(())
    }

    fn verify(&mut self) -> Result<()> {
        need_full(&self.cfg)?;
        let r = generic_rank(&self.cfg)?;
        let fb = self.basis()?;
        let s = self.series(&fb)?;
        let polys = self.puiseux()?;
        let indep = coefficient_rank(&fb, 3);
        let ok = fb.series.len() as i64 == r.lattice_index * r.volume
            && polys.len() as i64 == r.puiseux_rank
            && fb.len() as i64 == r.rank
            && indep == fb.len()
            && s["clean"] == json!(true);
        writeln!(
            self.text,
            "== verification ==\nseries {} (g*vol {}), Puiseux {} (expected {}), rank {}; independent {}: {}",
            fb.series.len(),
            r.lattice_index * r.volume,
            polys.len(),
            r.puiseux_rank,
            r.rank,
            indep,
            ok
        )
        .unwrap();
        self.results.insert(
            "verify".into(),
            json!({"series": fb.series.len(), "puiseux": polys.len(), "rank": r.rank, "independent": indep, "ok": ok}),
        );
        if !ok {
            return Err(HornError::Violation("solution basis failed verification".into()));
        }
        Ok(())
    }
}

fn run_once(command: Command, spec: &JobSpec, attempt: u32) -> Result<Report> {
    let cfg = spec.config()?;
    let sys = cfg.realize(attempt);
    let mut ctx = Ctx {
        spec,
        cfg,
        sys,
        text: String::new(),
        results: serde_json::Map::new(),
    };
    match command {
        Command::Rank => {
            ctx.rank()?;
        }
        Command::Puiseux => {
            ctx.puiseux()?;
        }
        Command::Series => {
            let fb = ctx.basis()?;
            ctx.series(&fb)?;
        }
        Command::Decompose => ctx.decompose()?,
        Command::Identity => ctx.identity()?,
        Command::Psi => ctx.psi()?,
        Command::Verify => ctx.verify()?,
        Command::All => {
            ctx.rank()?;
            ctx.decompose()?;
            ctx.identity()?;
            ctx.psi()?;
            ctx.verify()?;
        }
    }
    let json = json!({
        "schema": 1,
        "command": command.name(),
        "config": {
            "digest": spec.digest(),
            "B": spec.rows,
            "convention": spec.convention,
            "c": match &spec.params { Params::Generic { .. } => json!("generic"), Params::Explicit(c) => json!(rats(c)) },
            "seed": spec.seed,
            "window": spec.window,
        },
        "parameters": rats(&ctx.sys.c),
        "attempt": attempt,
        "results": Value::Object(ctx.results),
    });
    Ok(Report { text: ctx.text, json })
}

/// Runs a command, resampling generic parameters after a genericity failure.
pub fn run(command: Command, spec: &JobSpec) -> Result<Report> {
    let generic = matches!(spec.params, Params::Generic { .. });
    let mut last = None;
    for attempt in 0..PARAMETER_RESAMPLE_CAP {
        match run_once(command, spec, attempt) {
            Err(e @ HornError::GenericityFailure(_)) if generic => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
