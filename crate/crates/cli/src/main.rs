//! q-congruence workbench CLI: verify single statements, sweep parameter
//! grids from a config file, and check the transformation identities.

use qcw_cli::output;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qcw_core::campaigns::{
    run_eq_multi, run_sweep, CampaignConfig, CaseReport, MChoice, ReportSet,
};
use qcw_core::campaigns::{
    verify_conjecture1, verify_conjecture2, verify_eq_3rd_noa, verify_gsdiff, verify_gw2,
    verify_lemma_31, verify_lemma_32, verify_lemma_mod_square, verify_sec5_conjecture,
    verify_sec5_theorem, verify_theorem1_mod_power, verify_theorem2,
};
use qcw_core::congruence::Verdict;
use qcw_core::transforms::{
    sample_andrews_outcomes, sample_gasper_values, sample_ms0_values, sample_watson_agreement,
};

use output::{OutputRecord, CSV_HEADER};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qcw",
    version,
    about = "Exact verifier for q-hypergeometric congruences modulo cyclotomic powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one statement instance; params are key=value pairs.
    Verify {
        /// Statement id: thm1 | thm2 | conj1 | conj2 | 3rd-noa | gw2 |
        /// gsdiff | sec5-thm | sec5-conj | lemma-mod-square | lemma31 |
        /// lemma32
        statement: String,
        /// Statement parameters, e.g. d=3 r=1 n=5 m=paper
        params: Vec<String>,
        /// Write the remainder polynomial of a FAIL verdict to this file.
        #[arg(long)]
        dump_remainder: Option<PathBuf>,
    },
    /// Run a sweep from a TOML config; one output record per case.
    Sweep {
        config: PathBuf,
        /// Worker count (default: QCW_JOBS or the available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        timeout_secs: Option<u64>,
        /// Write records to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "jsonl")]
        format: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for full remainder polynomials of FAIL verdicts.
        #[arg(long)]
        dump_remainder: Option<PathBuf>,
    },
    /// Check a transformation/summation identity at seeded rational points.
    Identity {
        /// One of: andrews | watson | gasper | ms0 | eqmulti
        which: String,
        /// Series count m (andrews, gasper, ms0).
        #[arg(long)]
        m: Option<usize>,
        /// Truncation order N.
        #[arg(long = "N")]
        big_n: Option<u32>,
        /// Karlsson-Minton total nu = n_1 + ... + n_m (gasper, ms0).
        #[arg(long, default_value_t = 0)]
        nu: u32,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// eqmulti parameters: d=.. r=.. n=..
        params: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            statement,
            params,
            dump_remainder,
        } => cmd_verify(&statement, &params, dump_remainder.as_deref()),
        Command::Sweep {
            config,
            jobs,
            timeout_secs,
            out,
            format,
            seed,
            dump_remainder,
        } => cmd_sweep(
            &config,
            jobs,
            timeout_secs,
            out.as_deref(),
            &format,
            seed,
            dump_remainder.as_deref(),
        ),
        Command::Identity {
            which,
            m,
            big_n,
            nu,
            points,
            seed,
            params,
        } => cmd_identity(&which, m, big_n, nu, points, seed, &params),
    };
    ExitCode::from(code)
}

// ---- verify ----

struct Params {
    map: BTreeMap<String, String>,
}

impl Params {
    fn parse(pairs: &[String], allowed: &[&str]) -> Result<Params, String> {
        let mut map = BTreeMap::new();
        for pair in pairs {
            let Some((key, value)) = pair.split_once('=') else {
                return Err(format!("expected key=value, got '{pair}'"));
            };
            if !allowed.contains(&key) {
                return Err(format!(
                    "unknown parameter '{key}' (expected one of: {})",
                    allowed.join(", ")
                ));
            }
            map.insert(key.to_string(), value.to_string());
        }
        Ok(Params { map })
    }

    fn int(&self, key: &str) -> Result<i64, String> {
        let value = self
            .map
            .get(key)
            .ok_or_else(|| format!("missing parameter '{key}'"))?;
        value
            .parse()
            .map_err(|_| format!("parameter '{key}' must be an integer, got '{value}'"))
    }

    fn m_choice(&self) -> Result<MChoice, String> {
        match self.map.get("m") {
            None => Ok(MChoice::Paper),
            Some(raw) => MChoice::from_str(raw).map_err(|e| e.to_string()),
        }
    }
}

fn run_verify(statement: &str, pairs: &[String]) -> Result<Vec<CaseReport>, String> {
    let reports = match statement {
        "thm1" => {
            let p = Params::parse(pairs, &["d", "r", "n", "m", "phi_exponent"])?;
            let phi_exponent = match p.map.get("phi_exponent") {
                None => 4,
                Some(raw) => raw
                    .parse()
                    .map_err(|_| "phi_exponent must be a positive integer".to_string())?,
            };
            vec![CaseReport::Congruence(verify_theorem1_mod_power(
                p.int("d")?,
                p.int("r")?,
                p.int("n")?,
                p.m_choice()?,
                phi_exponent,
            ))]
        }
        "thm2" => {
            let p = Params::parse(pairs, &["d", "n"])?;
            let (a, b) = verify_theorem2(p.int("d")?, p.int("n")?);
            vec![CaseReport::Congruence(a), CaseReport::Congruence(b)]
        }
        "conj1" => {
            let p = Params::parse(pairs, &["d", "n", "m"])?;
            vec![CaseReport::Congruence(verify_conjecture1(
                p.int("d")?,
                p.int("n")?,
                p.m_choice()?,
            ))]
        }
        "conj2" => {
            let p = Params::parse(pairs, &["d", "n", "m"])?;
            vec![CaseReport::Congruence(verify_conjecture2(
                p.int("d")?,
                p.int("n")?,
                p.m_choice()?,
            ))]
        }
        "3rd-noa" => {
            let p = Params::parse(pairs, &["n"])?;
            vec![CaseReport::Congruence(verify_eq_3rd_noa(p.int("n")?))]
        }
        "gw2" => {
            let p = Params::parse(pairs, &["n"])?;
            vec![CaseReport::Congruence(verify_gw2(p.int("n")?))]
        }
        "gsdiff" => {
            let p = Params::parse(pairs, &["n"])?;
            vec![CaseReport::Congruence(verify_gsdiff(p.int("n")?))]
        }
        "sec5-thm" => {
            let p = Params::parse(pairs, &["n", "m"])?;
            vec![CaseReport::Congruence(verify_sec5_theorem(
                p.int("n")?,
                p.m_choice()?,
            ))]
        }
        "sec5-conj" => {
            let p = Params::parse(pairs, &["n", "m"])?;
            vec![CaseReport::Congruence(verify_sec5_conjecture(
                p.int("n")?,
                p.m_choice()?,
            ))]
        }
        "lemma-mod-square" => {
            let p = Params::parse(pairs, &["alpha", "r", "d", "n", "k"])?;
            vec![CaseReport::Congruence(verify_lemma_mod_square(
                p.int("alpha")?,
                p.int("r")?,
                p.int("d")?,
                p.int("n")?,
                p.int("k")?,
            ))]
        }
        "lemma31" => {
            let p = Params::parse(pairs, &["d", "n", "a_exponent", "k"])?;
            vec![CaseReport::Congruence(verify_lemma_31(
                p.int("d")?,
                p.int("n")?,
                p.int("a_exponent")?,
                p.int("k")?,
            ))]
        }
        "lemma32" => {
            let p = Params::parse(pairs, &["d", "n", "a_exponent", "k"])?;
            vec![CaseReport::Congruence(verify_lemma_32(
                p.int("d")?,
                p.int("n")?,
                p.int("a_exponent")?,
                p.int("k")?,
            ))]
        }
        other => return Err(format!("unknown statement '{other}'")),
    };
    Ok(reports)
}

fn exit_code_for(reports: &[CaseReport]) -> u8 {
    if reports.iter().any(|r| r.verdict() == Verdict::Fail) {
        EXIT_FAIL
    } else if reports
        .iter()
        .any(|r| matches!(r.verdict(), Verdict::Inapplicable | Verdict::Timeout))
    {
        EXIT_INAPPLICABLE
    } else {
        EXIT_OK
    }
}

fn cmd_verify(statement: &str, pairs: &[String], dump_remainder: Option<&Path>) -> u8 {
    let reports = match run_verify(statement, pairs) {
        Ok(reports) => reports,
        Err(message) => {
            eprintln!("usage error: {message}");
            return EXIT_USAGE;
        }
    };
    for report in &reports {
        println!("{}", OutputRecord::from_case(report).to_json_line());
        if let (Some(path), CaseReport::Congruence(r)) = (dump_remainder, report) {
            if r.verdict == Verdict::Fail {
                if let Some(rem) = &r.remainder {
                    if let Err(e) = fs::write(path, rem.canonical_text()) {
                        eprintln!("could not write remainder to {}: {e}", path.display());
                    }
                }
            }
        }
    }
    exit_code_for(&reports)
}

// ---- sweep ----

fn write_records(
    reports: &ReportSet,
    out: Option<&Path>,
    format: &str,
) -> Result<(), String> {
    let mut lines = Vec::with_capacity(reports.len() + 1);
    match format {
        "jsonl" => {
            for report in &reports.reports {
                lines.push(OutputRecord::from_case(report).to_json_line());
            }
        }
        "csv" => {
            lines.push(CSV_HEADER.to_string());
            for report in &reports.reports {
                lines.push(OutputRecord::from_case(report).to_csv_row());
            }
        }
        other => return Err(format!("unknown format '{other}' (expected jsonl | csv)")),
    }
    let body = lines.join("\n") + "\n";
    match out {
        None => print!("{body}"),
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?
        }
    }
    Ok(())
}

fn dump_failing_remainders(reports: &ReportSet, dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    for report in &reports.reports {
        if let CaseReport::Congruence(r) = report {
            if r.verdict == Verdict::Fail {
                if let Some(rem) = &r.remainder {
                    let text = rem.canonical_text();
                    let path = dir.join(format!("{}.txt", output::digest_text(&text)));
                    fs::write(&path, text)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_sweep(
    config_path: &Path,
    jobs: Option<usize>,
    timeout_secs: Option<u64>,
    out: Option<&Path>,
    format: &str,
    seed: Option<u64>,
    dump_remainder: Option<&Path>,
) -> u8 {
    let text = match fs::read_to_string(config_path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read config {}: {e}", config_path.display());
            return EXIT_USAGE;
        }
    };
    let mut config = match CampaignConfig::from_toml(&text) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("config error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(jobs) = jobs {
        config.jobs = Some(jobs);
    } else if config.jobs.is_none() {
        if let Some(env_jobs) = std::env::var("QCW_JOBS").ok().and_then(|v| v.parse().ok()) {
            config.jobs = Some(env_jobs);
        }
    }
    if let Some(secs) = timeout_secs {
        config.timeout_secs = secs;
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let start = Instant::now();
    let set = match run_sweep(&config) {
        Ok(set) => set,
        Err(e) => {
            eprintln!("config error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(message) = write_records(&set, out, format) {
        eprintln!("{message}");
        return EXIT_USAGE;
    }
    if let Some(dir) = dump_remainder {
        if let Err(message) = dump_failing_remainders(&set, dir) {
            eprintln!("{message}");
            return EXIT_USAGE;
        }
    }
    let summary = set
        .summary()
        .iter()
        .map(|(verdict, count)| format!("{count} {verdict}"))
        .collect::<Vec<_>>()
        .join(", ");
    eprintln!(
        "sweep: {} cases ({summary}) in {:.1}s",
        set.len(),
        start.elapsed().as_secs_f64()
    );
    if set.any_fail() {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

// ---- identity ----

fn emit_point_records<W: Write>(
    writer: &mut W,
    statement: &str,
    base: &BTreeMap<String, String>,
    outcomes: impl Iterator<Item = (usize, String, bool)>,
    wall_ms: u64,
) -> bool {
    let mut all_hold = true;
    for (index, point, holds) in outcomes {
        let mut params = base.clone();
        params.insert("point".into(), index.to_string());
        params.insert("at".into(), point);
        let record = OutputRecord {
            schema_version: output::SCHEMA_VERSION.into(),
            statement: statement.into(),
            params,
            verdict: if holds { "PASS" } else { "FAIL" }.into(),
            remainder_digest: String::new(),
            wall_ms,
        };
        writeln!(writer, "{}", record.to_json_line()).ok();
        all_hold &= holds;
    }
    all_hold
}

fn cmd_identity(
    which: &str,
    m: Option<usize>,
    big_n: Option<u32>,
    nu: u32,
    points: usize,
    seed: u64,
    params: &[String],
) -> u8 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let start = Instant::now();
    let base = |pairs: &[(&str, String)]| -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("seed".into(), seed.to_string());
        for (k, v) in pairs {
            map.insert((*k).into(), v.clone());
        }
        map
    };
    match which {
        "andrews" => {
            let m = m.unwrap_or(2);
            let n_cap = big_n.unwrap_or(2);
            let outcomes = match sample_andrews_outcomes(m, n_cap, points, seed) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_INAPPLICABLE;
                }
            };
            let wall = start.elapsed().as_millis() as u64;
            let ok = emit_point_records(
                &mut out,
                "andrews",
                &base(&[("m", m.to_string()), ("N", n_cap.to_string())]),
                outcomes
                    .iter()
                    .map(|o| (o.index, o.point.to_string(), o.holds())),
                wall,
            );
            if ok { EXIT_OK } else { EXIT_FAIL }
        }
        "watson" => {
            let n_cap = big_n.unwrap_or(2);
            let agreements = match sample_watson_agreement(n_cap, points, seed) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_INAPPLICABLE;
                }
            };
            let wall = start.elapsed().as_millis() as u64;
            let ok = emit_point_records(
                &mut out,
                "watson",
                &base(&[("N", n_cap.to_string())]),
                agreements.iter().map(|a| {
                    (
                        a.watson.index,
                        a.watson.point.to_string(),
                        a.watson.holds() && a.verdicts_agree(),
                    )
                }),
                wall,
            );
            if ok { EXIT_OK } else { EXIT_FAIL }
        }
        "gasper" | "ms0" => {
            let m = m.unwrap_or(if which == "gasper" { 1 } else { 2 });
            let n_cap = big_n.unwrap_or(nu + 1);
            let mut all_hold = true;
            for n_list in compositions(m, nu) {
                let outcomes = if which == "gasper" {
                    sample_gasper_values(m, &n_list, n_cap, points, seed)
                } else {
                    sample_ms0_values(m, &n_list, n_cap, points, seed)
                };
                let outcomes = match outcomes {
                    Ok(o) => o,
                    Err(e) => {
                        eprintln!("{e}");
                        return EXIT_INAPPLICABLE;
                    }
                };
                let n_desc = n_list
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let wall = start.elapsed().as_millis() as u64;
                all_hold &= emit_point_records(
                    &mut out,
                    which,
                    &base(&[
                        ("m", m.to_string()),
                        ("N", n_cap.to_string()),
                        ("n_list", format!("[{n_desc}]")),
                    ]),
                    outcomes
                        .iter()
                        .map(|o| (o.index, o.point.to_string(), o.holds())),
                    wall,
                );
            }
            if all_hold { EXIT_OK } else { EXIT_FAIL }
        }
        "eqmulti" => {
            let p = match Params::parse(params, &["d", "r", "n"]) {
                Ok(p) => p,
                Err(message) => {
                    eprintln!("usage error: {message}");
                    return EXIT_USAGE;
                }
            };
            let (d, r, n) = match (p.int("d"), p.int("r"), p.int("n")) {
                (Ok(d), Ok(r), Ok(n)) => (d, r, n),
                (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => {
                    eprintln!("usage error: {e}");
                    return EXIT_USAGE;
                }
            };
            let report = CaseReport::Identity(run_eq_multi(d, r, n));
            println!("{}", OutputRecord::from_case(&report).to_json_line());
            exit_code_for(&[report])
        }
        other => {
            eprintln!(
                "unknown identity '{other}' (expected andrews | watson | gasper | ms0 | eqmulti)"
            );
            EXIT_USAGE
        }
    }
}

/// Ordered splittings of `total` into `parts` nonnegative summands.
fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(parts - 1, left - v, prefix, out);
            prefix.pop();
        }
    }
    if parts == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}
