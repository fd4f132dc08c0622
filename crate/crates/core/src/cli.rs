//! Command-line front end. `run` never panics on bad input: every error
//! becomes an exit code and a message.

use std::fs;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::enumerate::enumerate;
use crate::error::Error;
use crate::forms::{brown_properties_check, van_der_blij_check, IntegralLattice, LatticeInvolution, QuadraticSpace};
use crate::golden::diff_golden;
use crate::notation::{parse, parse_oriented, parse_real, Parsed};
use crate::orientation::{admissible_orientations, pair_census, DEFAULT_SEARCH_LIMIT};
use crate::rules::{check_all, CheckOptions};
use crate::scheme::{CurveClass, RealScheme, Surface, TypeClaim};
use crate::verdict::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "realcurves",
    version,
    about = "Check real schemes of algebraic curves against classical prohibitions"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    /// plane, hyperboloid or ellipsoid
    #[arg(long, default_value = "plane")]
    surface: String,
    #[arg(long, conflicts_with = "bidegree")]
    degree: Option<u32>,
    /// M1,M2
    #[arg(long)]
    bidegree: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a scheme and print its canonical form and invariants.
    Parse {
        #[command(flatten)]
        curve: CurveArgs,
        scheme: Option<String>,
        #[arg(long)]
        batch: Option<String>,
    },
    /// Run every prohibition on a scheme.
    Check {
        #[command(flatten)]
        curve: CurveArgs,
        scheme: Option<String>,
        /// I, II or unknown
        #[arg(long = "type", default_value = "unknown")]
        claim: String,
        #[arg(long)]
        orientation: Option<String>,
        /// Exit with 3 when no rule applies.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        batch: Option<String>,
        /// Auxiliary degrees for the nest rules, e.g. 1,2,3
        #[arg(long)]
        aux_degrees: Option<String>,
    },
    /// List the complex orientations allowed by Rokhlin's and Orevkov's formulas.
    Orient {
        #[command(flatten)]
        curve: CurveArgs,
        scheme: String,
        /// Largest number of components searched.
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
    /// Enumerate all schemes of a class and report the admissible ones.
    Enumerate {
        #[command(flatten)]
        curve: CurveArgs,
        /// Largest number of components (default: Harnack bound).
        #[arg(long)]
        limit: Option<usize>,
        /// Keep only schemes admissible under this claim.
        #[arg(long = "type")]
        claim: Option<String>,
        #[arg(long)]
        aux_degrees: Option<String>,
    },
    /// Compare the engine with a shipped classification table.
    Diff {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        aux_degrees: Option<String>,
    },
    /// Finite quadratic forms given as words in A+, A-, U, V.
    Form {
        /// brown, classify or check
        action: String,
        word: String,
    },
    /// Invariants of a lattice file or of E8, D4, U, or diag:a,b,...
    Lattice { spec: String },
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<S: AsRef<str>>(args: &[S]) -> (i32, String) {
    let argv = std::iter::once("realcurves".to_string()).chain(args.iter().map(|s| s.as_ref().to_string()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (code, e.to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => (exit_code_of(&e), error_text(&e, json)),
    }
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::NotApplicable(_) | Error::NoSeparation(_) => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    }
}

fn error_value(e: &Error) -> Value {
    match e {
        Error::Parse { position, message } => json!({"error": "parse", "position": position, "message": message}),
        other => json!({"error": other.kind(), "message": other.to_string()}),
    }
}

fn error_text(e: &Error, json: bool) -> String {
    if json {
        format!("{}\n", error_value(e))
    } else {
        format!("error: {}\n", e)
    }
}

fn usage(m: impl Into<String>) -> Error {
    Error::Parse { position: 0, message: m.into() }
}

fn curve_of(c: &CurveArgs) -> Result<(Surface, CurveClass), Error> {
    let surface = Surface::from_name(&c.surface)
        .ok_or_else(|| usage(format!("unknown surface '{}' (plane, hyperboloid, ellipsoid)", c.surface)))?;
    let class = match (c.degree, &c.bidegree) {
        (Some(d), None) => CurveClass::Degree(d),
        (None, Some(b)) => {
            let (x, y) = b.split_once(',').ok_or_else(|| usage("--bidegree expects M1,M2"))?;
            let x = x.trim().parse().map_err(|_| usage("--bidegree expects M1,M2"))?;
            let y = y.trim().parse().map_err(|_| usage("--bidegree expects M1,M2"))?;
            CurveClass::Bidegree(x, y)
        }
        _ => return Err(usage("give --degree N or --bidegree M1,M2")),
    };
    class.check_for(surface).map_err(|e| usage(e.to_string()))?;
    Ok((surface, class))
}

fn claim_of(s: &str) -> Result<TypeClaim, Error> {
    TypeClaim::from_name(s).ok_or_else(|| usage(format!("unknown type '{}' (I, II, unknown)", s)))
}

fn aux_of(s: &Option<String>) -> Result<CheckOptions, Error> {
    match s {
        None => Ok(CheckOptions::default()),
        Some(t) => {
            let mut degrees = Vec::new();
            for p in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let d: u32 = p.parse().map_err(|_| usage(format!("bad auxiliary degree '{}'", p)))?;
                if d == 0 {
                    return Err(usage("auxiliary degrees are positive"));
                }
                degrees.push(d);
            }
            Ok(CheckOptions { aux_degrees: degrees })
        }
    }
}

fn read_batch(path: &str) -> Result<Vec<String>, Error> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {}", path, e)))?;
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect())
}

fn inputs(scheme: Option<String>, batch: Option<String>) -> Result<(Vec<String>, bool), Error> {
    match (scheme, batch) {
        (Some(s), None) => Ok((vec![s], false)),
        (None, Some(b)) => Ok((read_batch(&b)?, true)),
        (Some(_), Some(_)) => Err(usage("give either a scheme or --batch, not both")),
        (None, None) => Err(usage("missing scheme")),
    }
}

fn dispatch(cli: Cli) -> Result<(i32, String), Error> {
    let json = cli.json;
    match cli.command {
        Command::Parse { curve, scheme, batch } => {
            let (surface, class) = curve_of(&curve)?;
            let (lines, is_batch) = inputs(scheme, batch)?;
            let mut code = EXIT_OK;
            let mut values = Vec::new();
            let mut text = String::new();
            for line in &lines {
                match parse(line, surface, class) {
                    Ok(p) => {
                        let v = parsed_value(&p);
                        text.push_str(&parsed_text(&p));
                        values.push(v);
                    }
                    Err(e) => {
                        code = code.max(exit_code_of(&e));
                        text.push_str(&error_text(&e, false));
                        values.push(error_value(&e));
                    }
                }
            }
            Ok((code, finish(json, is_batch, values, text)))
        }
        Command::Check { curve, scheme, claim, orientation, strict, batch, aux_degrees } => {
            let (surface, class) = curve_of(&curve)?;
            let claim = claim_of(&claim)?;
            let opts = aux_of(&aux_degrees)?;
            let (lines, is_batch) = inputs(scheme, batch)?;
            let oriented = match &orientation {
                Some(o) if is_batch => {
                    return Err(usage(format!("--orientation cannot be combined with --batch ({})", o)))
                }
                Some(o) => Some(parse_oriented(o, surface, class)?),
                None => None,
            };
            let mut code = EXIT_OK;
            let mut values = Vec::new();
            let mut text = String::new();
            for line in &lines {
                match parse_real(line, surface, class) {
                    Ok(s) => {
                        let r = check_all(&s, claim, oriented.as_ref(), &opts);
                        code = code.max(report_code(&r, strict));
                        text.push_str(&r.to_text());
                        values.push(r.to_json());
                    }
                    Err(e) => {
                        code = code.max(exit_code_of(&e));
                        text.push_str(&error_text(&e, false));
                        values.push(error_value(&e));
                    }
                }
            }
            Ok((code, finish(json, is_batch, values, text)))
        }
        Command::Orient { curve, scheme, limit } => {
            let (surface, class) = curve_of(&curve)?;
            let s = parse_real(&scheme, surface, class)?;
            let found = admissible_orientations(&s, limit)?;
            // bit vectors giving the same oriented scheme up to reversal are listed once
            let mut distinct: Vec<(String, usize, crate::orientation::PairCensus)> = Vec::new();
            for c in &found {
                let o = c.apply(&s)?;
                let text = o.render().min(o.flip().render());
                match distinct.iter_mut().find(|d| d.0 == text) {
                    Some(d) => d.1 += 1,
                    None => distinct.push((text, 1, pair_census(&o)?)),
                }
            }
            let mut text = format!(
                "{}: {} orientation class(es) up to global reversal, {} distinct oriented scheme(s)\n",
                s.render(),
                found.len(),
                distinct.len()
            );
            let mut rows = Vec::new();
            for (o, n, census) in &distinct {
                text.push_str(&format!(
                    "  {}  x{}  Pi+ {} Pi- {} k+ {} k- {}\n",
                    o, n, census.pi_plus, census.pi_minus, census.k_plus, census.k_minus
                ));
                rows.push(json!({"orientation": o, "multiplicity": n, "census": census}));
            }
            let v = json!({"scheme": s.render(), "surface": surface.name(), "class": class.text(), "count": found.len(), "distinct": rows.len(), "schemes": rows});
            Ok((EXIT_OK, if json { format!("{}\n", v) } else { text }))
        }
        Command::Enumerate { curve, limit, claim, aux_degrees } => {
            let (surface, class) = curve_of(&curve)?;
            let opts = aux_of(&aux_degrees)?;
            let filter = claim.as_deref().map(claim_of).transpose()?;
            let entries = enumerate(surface, class, limit, &opts)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in &entries {
                let claims = e.admissible_claims();
                let keep = match filter {
                    Some(c) => claims.contains(&c),
                    None => !claims.is_empty(),
                };
                if !keep {
                    continue;
                }
                let names: Vec<&str> = claims.iter().map(|c| c.name()).collect();
                text.push_str(&format!("{}\t{}\n", e.text, names.join(",")));
                rows.push(json!({"scheme": e.text, "admissible_claims": names}));
            }
            let v = json!({"surface": surface.name(), "class": class.text(), "count": rows.len(), "candidates": entries.len(), "schemes": rows});
            Ok((EXIT_OK, if json { format!("{}\n", v) } else { text }))
        }
        Command::Diff { curve, aux_degrees } => {
            let (surface, class) = curve_of(&curve)?;
            let opts = aux_of(&aux_degrees)?;
            let d = diff_golden(surface, class, &opts)?;
            let code = if d.missing.is_empty() { EXIT_OK } else { EXIT_FAILED };
            let mut text =
                format!("{} {}: {} missing, {} extra\n", surface.name(), class.text(), d.missing.len(), d.extra.len());
            for m in &d.missing {
                text.push_str(&format!(
                    "  missing {} [{}] rejected as {} by {}\n",
                    m.scheme,
                    m.tag,
                    m.claim.name(),
                    m.failed_rules.join(",")
                ));
            }
            for x in &d.extra {
                text.push_str(&format!("  extra   {}\n", x));
            }
            let v = serde_json::to_value(&d).expect("diff serializes");
            Ok((code, if json { format!("{}\n", v) } else { text }))
        }
        Command::Form { action, word } => {
            let q = QuadraticSpace::from_word(&word)?;
            match action.as_str() {
                "brown" => {
                    let b = q.brown()?;
                    Ok((
                        EXIT_OK,
                        if json { format!("{}\n", json!({"form": word, "brown": b})) } else { format!("{}\n", b) },
                    ))
                }
                "classify" => {
                    let c = q.classify()?;
                    let w = crate::forms::quadratic::word_text(&c.word);
                    let v = json!({"form": word, "rank": c.rank, "parity": c.parity.to_string(), "brown": c.brown, "normal_form": w});
                    let t = format!("rank {} {} brown {}: {}\n", c.rank, c.parity, c.brown, w);
                    Ok((EXIT_OK, if json { format!("{}\n", v) } else { t }))
                }
                "check" => {
                    let vs = brown_properties_check(&q)?;
                    let code = if vs.iter().any(|v| v.failed()) { EXIT_FAILED } else { EXIT_OK };
                    Ok((code, verdict_list(json, &vs)))
                }
                other => Err(usage(format!("unknown form action '{}' (brown, classify, check)", other))),
            }
        }
        Command::Lattice { spec } => lattice_command(&spec, json),
    }
}

fn lattice_command(spec: &str, json: bool) -> Result<(i32, String), Error> {
    let (l, inv) = match spec {
        "E8" | "e8" => (IntegralLattice::e8(), None),
        "D4" | "d4" => (IntegralLattice::d4(), None),
        "U" | "u" => (IntegralLattice::u(), None),
        s if s.starts_with("diag:") => {
            let vals: Vec<i64> = s[5..]
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| usage("diag: expects comma-separated integers"))?;
            (IntegralLattice::diag(&vals), None)
        }
        path => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {}", path, e)))?;
            IntegralLattice::parse(&text)?
        }
    };
    let inv_data = l.invariants()?;
    let disc = l.discriminant()?;
    let mut v = json!({
        "rank": l.rank(),
        "signature": inv_data.signature,
        "determinant": inv_data.determinant.to_string(),
        "parity": if inv_data.even { "even" } else { "odd" },
        "discriminant": disc.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "rank {} signature {} determinant {} {}\ndiscriminant group: {}\n",
        l.rank(),
        inv_data.signature,
        inv_data.determinant,
        if inv_data.even { "even" } else { "odd" },
        if disc.factors.is_empty() {
            "trivial".to_string()
        } else {
            disc.factors.iter().map(|f| format!("Z/{}", f)).collect::<Vec<_>>().join(" + ")
        }
    );
    let mut code = EXIT_OK;
    match &disc.form {
        Some(q) => {
            let c = q.classify()?;
            let w = crate::forms::quadratic::word_text(&c.word);
            text.push_str(&format!("discriminant form: {} (brown {})\n", w, c.brown));
            v["discriminant_form"] = json!(w);
            v["brown"] = json!(c.brown);
            let vs = van_der_blij_check(&l)?;
            if vs.iter().any(|x| x.failed()) {
                code = EXIT_FAILED;
            }
            text.push_str(&verdict_list(false, &vs));
            v["verdicts"] = serde_json::to_value(&vs).expect("verdicts serialize");
        }
        None => {
            let why = disc.unsupported.clone().unwrap_or_default();
            text.push_str(&format!("discriminant form: unsupported ({})\n", why));
            v["discriminant_form"] = Value::Null;
        }
    }
    if let Some(m) = inv {
        let e = LatticeInvolution::new(l.clone(), m)?.eigenlattices()?;
        let dp = e.plus.determinant();
        let dm = e.minus.determinant();
        text.push_str(&format!(
            "eigenlattices: L+ rank {} det {}, L- rank {} det {}, dim J = {}\n",
            e.plus.rank(),
            dp,
            e.minus.rank(),
            dm,
            e.dim_j
        ));
        v["eigenlattices"] = json!({
            "plus": {"rank": e.plus.rank(), "determinant": dp.to_string()},
            "minus": {"rank": e.minus.rank(), "determinant": dm.to_string()},
            "dim_j": e.dim_j,
        });
    }
    Ok((code, if json { format!("{}\n", v) } else { text }))
}

fn verdict_list(json: bool, vs: &[crate::verdict::Verdict]) -> String {
    if json {
        return format!("{}\n", json!({"verdicts": vs}));
    }
    vs.iter()
        .map(|v| {
            let status = match v.pass {
                None => "n/a ",
                Some(true) => "pass",
                Some(false) => "FAIL",
            };
            format!("  {} {:<22} {:?} {} {:?}  ({})\n", status, v.rule_id, v.lhs, v.relation, v.rhs, v.notes)
        })
        .collect()
}

/// Exit code of a single report: 1 when prohibited, 3 under `strict`
/// when no rule applies, 0 otherwise.
pub fn report_code(r: &Report, strict: bool) -> i32 {
    if !r.admissible {
        EXIT_FAILED
    } else if strict && !r.any_applicable() {
        EXIT_NOT_APPLICABLE
    } else {
        EXIT_OK
    }
}

fn parsed_value(p: &Parsed) -> Value {
    let s: RealScheme = p.real();
    let (l, h, total) = s.component_counts();
    let mut v = json!({
        "scheme": p.render(),
        "surface": s.surface().name(),
        "class": s.class().text(),
        "oriented": matches!(p, Parsed::Oriented(_)),
        "ovals": l,
        "noncontractible": h,
        "components": total,
        "genus": s.genus(),
        "defect": s.m_defect(),
        "max_depth": s.max_depth(),
    });
    if let Ok(c) = s.chi_halves() {
        v["chi"] = json!(c);
    }
    if let Ok((p_, n_)) = s.parity_counts() {
        v["p"] = json!(p_);
        v["n"] = json!(n_);
    }
    v
}

fn parsed_text(p: &Parsed) -> String {
    let v = parsed_value(p);
    let s = p.real();
    let mut t = format!(
        "{}\n  {} of class {}: {} components ({} ovals, {} noncontractible), genus {}, defect {}\n",
        p.render(),
        s.surface().name(),
        s.class().text(),
        v["components"],
        v["ovals"],
        v["noncontractible"],
        v["genus"],
        v["defect"]
    );
    if let (Some(pp), Some(nn)) = (v.get("p"), v.get("n")) {
        t.push_str(&format!("  p = {}, n = {}\n", pp, nn));
    }
    if let Some(c) = v.get("chi") {
        t.push_str(&format!(
            "  chi halves {} / {}{}\n",
            c["plus"],
            c["minus"],
            if c["ambiguous"] == json!(true) { " (labels ambiguous)" } else { "" }
        ));
    }
    t
}

fn finish(json: bool, batch: bool, values: Vec<Value>, text: String) -> String {
    if !json {
        return text;
    }
    if batch {
        format!("{}\n", Value::Array(values))
    } else {
        format!("{}\n", values.into_iter().next().unwrap_or(Value::Null))
    }
}
