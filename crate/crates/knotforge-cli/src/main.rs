//! Command-line surface over the knotforge library.
//!
//! Exit codes: 0 success, 1 precondition or usage error, 2 inconclusive
//! (no recurrence within the caps), 3 internal assertion failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use knotforge::ajpipeline::{
    aj_verify, degree_survey, riley_irreducible, survey_riley, AJConfig, AJError,
};
use knotforge::apoly::a_polynomial;
use knotforge::cjones::{braid_for, jones_table, BraidWord};
use knotforge::exactalg::LaurentPoly;
use knotforge::qholo::{
    minimal_recurrence, operator_balance_check, specialize_and_quotient, QHoloError,
};
use knotforge::twobridge::{riley_polynomial, TwoBridgeKnot};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Search caps dL,dM,dt for recurrence guessing.
#[derive(Clone, Copy, Debug)]
struct Caps {
    dl: u32,
    dm: u32,
    dt: u32,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated integers dL,dM,dt".into());
    }
    let nums: Vec<u32> = parts
        .iter()
        .map(|p| p.parse::<u32>().map_err(|e| format!("bad cap {p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if nums.iter().any(|&n| n == 0) {
        return Err("caps must be positive".into());
    }
    Ok(Caps { dl: nums[0], dm: nums[1], dt: nums[2] })
}

#[derive(Parser, Debug)]
#[command(name = "knotforge", version, about = "Exact A-polynomial and colored Jones toolkit for two-bridge knots")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for colored Jones caches (KNOTFORGE_CACHE overrides).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recurrence search caps as dL,dM,dt.
    #[arg(long, global = true, value_parser = parse_caps, default_value = "6,12,12")]
    caps: Caps,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Riley polynomial φ(s,u) of b(p,q) and its parabolic irreducibility.
    Riley {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// A-polynomial of b(p,q) by elimination, with its symmetry certificate.
    Apoly {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// One colored Jones polynomial of a braid closure.
    Jones {
        /// Comma-separated braid word, e.g. 1,-2,1,-2.
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: u32,
        #[arg(long)]
        color: u32,
    },
    /// Minimal recurrence of the colored Jones table of a braid closure.
    Recur {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: u32,
        /// Largest color in the fitted table.
        #[arg(long)]
        nmax: u32,
    },
    /// Compare the elimination-side Â with the recurrence-side α̂ of b(p,q).
    Aj {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Riley irreducibility across all b(p,q) with p up to pmax.
    SurveyRiley {
        #[arg(long)]
        pmax: u64,
    },
    /// Â degree bounds across the hyperbolic catalog knots with p up to pmax.
    SurveyDegree {
        #[arg(long)]
        pmax: u64,
    },
}

/// Failure modes mapped to process exit codes.
enum CliError {
    /// Bad arguments or unsatisfiable preconditions: exit 1.
    Usage(String),
    /// Recurrence not found within the caps: exit 2.
    Inconclusive(String),
    /// Broken internal invariant, e.g. a failed (l-1) quotient: exit 3.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Inconclusive(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Inconclusive(m) | CliError::Internal(m) => m,
        }
    }
}

fn knot(p: i64, q: i64) -> Result<TwoBridgeKnot, CliError> {
    TwoBridgeKnot::new(p, q).map_err(|e| CliError::Usage(e.to_string()))
}

fn braid(word: &str, strands: u32) -> Result<BraidWord, CliError> {
    let letters: Vec<i32> = word
        .split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|e| format!("bad braid letter {t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map_err(CliError::Usage)?;
    BraidWord::new(strands, letters).map_err(|e| CliError::Usage(e.to_string()))
}

/// KNOTFORGE_CACHE wins over --cache-dir; the directory is created so cache
/// writes can land.
fn cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    let dir = std::env::var_os("KNOTFORGE_CACHE").map(PathBuf::from).or_else(|| flag.clone());
    if let Some(d) = &dir {
        if let Err(e) = std::fs::create_dir_all(d) {
            eprintln!("warning: cache directory {}: {e}", d.display());
        }
    }
    dir
}

fn laurent_json(p: &LaurentPoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(&e, c)| {
            let coeff = if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            serde_json::json!([e, coeff])
        })
        .collect();
    serde_json::json!({ "var": "t", "terms": terms })
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&json).expect("report serializes"))
        }
    }
}

fn qholo_error(e: QHoloError) -> CliError {
    match e {
        QHoloError::NotFound { .. } => CliError::Inconclusive(e.to_string()),
        QHoloError::TableTooSmall { .. } => CliError::Usage(e.to_string()),
        QHoloError::MissingEntry { .. } | QHoloError::QuotientFailed => {
            CliError::Internal(e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cache = cache_dir(&cli.cache_dir);
    match cli.cmd {
        Cmd::Riley { p, q } => {
            let k = knot(p, q)?;
            let rp = riley_polynomial(&k);
            let irreducible = riley_irreducible(&k);
            emit(
                cli.format,
                format!(
                    "knot: {k}\nphi(s,u) = {}\ndegree_u: {}\nirreducible: {}",
                    rp.phi,
                    rp.phi.degree("u"),
                    irreducible
                ),
                serde_json::json!({
                    "knot": { "p": k.p(), "q": k.q() },
                    "phi": rp.phi.to_json(),
                    "degree": rp.phi.degree("u"),
                    "irreducible": irreducible,
                }),
            );
        }
        Cmd::Apoly { p, q } => {
            let k = knot(p, q)?;
            let rep = a_polynomial(&k).map_err(|e| CliError::Internal(e.to_string()))?;
            let (delta, ma, lb) = rep.balanced_cert;
            emit(
                cli.format,
                format!(
                    "knot: {k}\nA(m,l) = {}\nAhat(m,l) = {}\nm_degree: {}\nl_degree: {}\n\
                     balanced: sigma(Ahat) = {}m^{ma}*l^{lb}*Ahat\nin_Z_m2_l: {}\n\
                     balanced_irreducible: {}",
                    rep.a,
                    rep.ahat,
                    rep.m_degree,
                    rep.l_degree,
                    if delta >= 0 { "+" } else { "-" },
                    rep.in_z_m2_l,
                    rep.balanced_irreducible,
                ),
                serde_json::json!({
                    "knot": { "p": k.p(), "q": k.q() },
                    "A": rep.a.to_json(),
                    "Ahat": rep.ahat.to_json(),
                    "m_degree": rep.m_degree,
                    "l_degree": rep.l_degree,
                    "balanced_cert": { "sign": delta, "m_power": ma, "l_power": lb },
                    "in_Z_m2_l": rep.in_z_m2_l,
                    "balanced_irreducible": rep.balanced_irreducible,
                }),
            );
        }
        Cmd::Jones { braid: word, strands, color } => {
            if color == 0 {
                return Err(CliError::Usage("color must be at least 1".into()));
            }
            let b = braid(&word, strands)?;
            let table = jones_table(&b, color, cache.as_deref())
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let j = table.get(color as i64).expect("computed color is present");
            emit(
                cli.format,
                j.to_string(),
                serde_json::json!({
                    "braid": { "strands": b.strands(), "letters": b.letters() },
                    "color": color,
                    "jones": laurent_json(&j),
                }),
            );
        }
        Cmd::Recur { braid: word, strands, nmax } => {
            let b = braid(&word, strands)?;
            let table = jones_table(&b, nmax, cache.as_deref())
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let op = minimal_recurrence(&table, cli.caps.dl, cli.caps.dm, cli.caps.dt)
                .map_err(qholo_error)?;
            let witness = specialize_and_quotient(&op).map_err(qholo_error)?;
            let balanced = operator_balance_check(&op);
            let mut text = format!(
                "order: {}\ncaps: dM={} dt={}\nfit: colors {}..{}\nholdout: colors {}..{}",
                op.dl(),
                op.caps().0,
                op.caps().1,
                op.fit_window().0,
                op.fit_window().1,
                op.holdout_window().0,
                op.holdout_window().1,
            );
            for (i, a) in op.coeffs().iter().enumerate() {
                text.push_str(&format!("\na[{i}] = {a}"));
            }
            text.push_str(&format!(
                "\nalpha(-1,m,l) = {}\nhat_alpha = {}\nbalanced: {balanced}",
                witness.alpha_at_minus1, witness.hat_alpha
            ));
            emit(
                cli.format,
                text,
                serde_json::json!({
                    "braid": { "strands": b.strands(), "letters": b.letters() },
                    "operator": op.to_json(),
                    "alpha_at_minus1": witness.alpha_at_minus1.to_json(),
                    "hat_alpha": witness.hat_alpha.to_json(),
                    "balanced": balanced,
                }),
            );
        }
        Cmd::Aj { p, q } => {
            let k = knot(p, q)?;
            let b = braid_for(&k).ok_or_else(|| {
                CliError::Usage(format!("no braid presentation of {k} in the catalog"))
            })?;
            let cfg = AJConfig {
                max_dl: cli.caps.dl,
                max_dm: cli.caps.dm,
                max_dt: cli.caps.dt,
                n_jones: 12,
                cache_dir: cache,
            };
            let v = aj_verify(&k, &b, &cfg).map_err(|e| match e {
                AJError::Inconclusive { source: QHoloError::QuotientFailed, .. } => {
                    CliError::Internal(e.to_string())
                }
                AJError::Inconclusive { .. } => CliError::Inconclusive(e.to_string()),
                AJError::Braid(_) => CliError::Usage(e.to_string()),
                AJError::APoly(_) => CliError::Internal(e.to_string()),
            })?;
            let r = &v.report;
            emit(
                cli.format,
                format!(
                    "knot: {k}\nmatch: {}\nm_shift: {}\nsign: {}\nAhat      = {}\n\
                     hat_alpha = {}\nriley_irreducible: {}\nsufficient_condition_met: {}\n\
                     timings_ms: apoly={} jones={} recurrence={}",
                    r.matches,
                    r.m_shift,
                    if r.sign >= 0 { "+1" } else { "-1" },
                    r.ahat,
                    r.hat_alpha,
                    r.riley_irreducible,
                    r.sufficient_condition_met,
                    v.timings.apoly_ms,
                    v.timings.jones_ms,
                    v.timings.recurrence_ms,
                ),
                v.to_json(),
            );
        }
        Cmd::SurveyRiley { pmax } => {
            if pmax > 60 {
                return Err(CliError::Usage("survey budget is pmax <= 60".into()));
            }
            let rows = survey_riley(pmax);
            let text: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "b({},{}): degree {}, irreducible={}, prime_p={}",
                        r.p, r.q, r.degree, r.irreducible, r.prime_p
                    )
                })
                .collect();
            let json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "p": r.p,
                        "q": r.q,
                        "degree": r.degree,
                        "irreducible": r.irreducible,
                        "prime_p": r.prime_p,
                    })
                })
                .collect();
            emit(cli.format, text.join("\n"), serde_json::Value::Array(json));
        }
        Cmd::SurveyDegree { pmax } => {
            if pmax > 25 {
                return Err(CliError::Usage("survey budget is pmax <= 25".into()));
            }
            let rows = degree_survey(pmax).map_err(|e| CliError::Internal(e.to_string()))?;
            let text: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "b({},{}): m_degree={} l_degree={} candidates={:?} min_two={} all_pass={}",
                        r.knot.p(),
                        r.knot.q(),
                        r.m_degree,
                        r.l_degree,
                        r.candidate_d,
                        r.min_two,
                        r.all_pass,
                    )
                })
                .collect();
            let json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "p": r.knot.p(),
                        "q": r.knot.q(),
                        "m_degree": r.m_degree,
                        "l_degree": r.l_degree,
                        "candidate_d": r.candidate_d,
                        "per_candidate": r.per_candidate,
                        "min_two": r.min_two,
                        "all_pass": r.all_pass,
                    })
                })
                .collect();
            emit(cli.format, text.join("\n"), serde_json::Value::Array(json));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // Internal assertions (debug invariants, cited facts that must hold)
    // panic; report them as exit 3 rather than a raw abort.
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
        Err(_) => ExitCode::from(3),
    }
}
