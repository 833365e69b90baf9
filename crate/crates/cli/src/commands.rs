use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use pentaparity::gf2poly::{factor_count, pent_poly, BitPoly, PentShape};
use pentaparity::search::{
    audit_prefilter, check_record, enumerate, prepare_resume, read_records, stats, survey_each,
    Format, NFilter, RecordWriter, SParity, SearchError, SearchRecord, SurveyConfig, SurveyStats,
};
use pentaparity::swan::{
    parity_from_discriminant, pent_discriminant_closed_form, pentanomial_parity,
    reducibility_certificate, trinomial_parity, SwanError,
};
use pentaparity::verify::{run_all, VerifyBounds};
use pentaparity::zpoly::{
    discriminant_mod8, discriminant_mod8_classical, lift, power_sums, SumModulus,
};
use pentaparity::{Gf2Error, IntPoly};
use serde_json::json;

use crate::{
    Command, DiscArgs, Oracle, OutFormat, PolyArgs, PowerSumArgs, PredictArgs, SearchArgs,
    StatsArgs, VerifyArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 1.
    Usage(String),
    /// Files and streams: exit 1.
    Io(String),
    /// A checked invariant failed: exit 2.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}
usage_from!(Gf2Error, SwanError, pentaparity::zpoly::ZpolyError);

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::CertificateContradiction { .. } => CliError::Invariant(e.to_string()),
            SearchError::RangeTooLow(_) => CliError::Usage(e.to_string()),
            _ => CliError::Io(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn parse_sum_modulus(s: &str) -> std::result::Result<SumModulus, String> {
    if s == "exact" {
        return Ok(SumModulus::Exact);
    }
    let k = s
        .strip_prefix("2^")
        .and_then(|k| k.parse::<u32>().ok())
        .ok_or_else(|| format!("expected exact or 2^k, got {s:?}"))?;
    if k == 0 {
        return Err("modulus 2^0 is trivial; use k >= 1".into());
    }
    Ok(SumModulus::Pow2(k))
}

pub fn parse_rate(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(r) if r > 0.0 && r <= 1.0 => Ok(r),
        _ => Err(format!("expected a fraction in (0, 1], got {s:?}")),
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Predict(a) => predict(a),
        Command::Test(a) => test(a),
        Command::Disc(a) => disc(a),
        Command::Powersums(a) => powersums(a),
        Command::Search(a) => search(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Verify(a) => verify(a),
    }
}

fn reject_csv(format: OutFormat) -> Result<()> {
    if format == OutFormat::Csv {
        return Err(CliError::Usage(
            "--format csv is not available for this command".into(),
        ));
    }
    Ok(())
}

fn target(args: &PolyArgs) -> Result<(BitPoly, Option<PentShape>)> {
    match (&args.poly, args.n, args.s) {
        (Some(hex), _, _) => Ok((BitPoly::from_hex(hex)?, None)),
        (None, Some(n), Some(s)) => {
            let shape = PentShape::new(n, s)?;
            Ok((pent_poly(shape), Some(shape)))
        }
        _ => Err(CliError::Usage("give --poly, or both --n and --s".into())),
    }
}

fn predict(a: PredictArgs) -> Result<()> {
    let n = a.n;
    if let Some(k) = a.k {
        let v = trinomial_parity(n, k)?;
        println!("X^{n} + X^{k} + 1: {v}");
        return Ok(());
    }
    let shape = PentShape::new(n, a.s.expect("clap requires --s or --k"))?;
    match reducibility_certificate(shape)? {
        Some(c) => println!("reducible ({c})"),
        None => println!("no reducibility certificate (n \u{2261} {} mod 8)", n % 8),
    }
    if let Ok(v) = pentanomial_parity(shape) {
        println!("parity: {v}");
    }
    Ok(())
}

fn plural(count: usize) -> &'static str {
    if count == 1 {
        ""
    } else {
        "s"
    }
}

fn test(a: PolyArgs) -> Result<()> {
    reject_csv(a.format)?;
    let (f, _) = target(&a)?;
    let count = factor_count(&f)?;
    if a.format == OutFormat::Json {
        let by_degree: BTreeMap<String, usize> = count
            .by_degree
            .iter()
            .map(|(d, c)| (d.to_string(), *c))
            .collect();
        let v = json!({
            "poly": f.to_hex(),
            "degree": f.degree(),
            "irreducible": count.is_irreducible(),
            "factors": count.total,
            "by_degree": by_degree,
            "squarefree": count.squarefree,
            "parity": count.parity(),
        });
        println!("{v}");
        return Ok(());
    }
    let status = if count.is_irreducible() {
        "irreducible"
    } else {
        "reducible"
    };
    let mut line = format!("{status}, {} factor{}", count.total, plural(count.total));
    if count.total > 1 {
        let parts: Vec<String> = count
            .by_degree
            .iter()
            .map(|(d, c)| format!("{c} of degree {d}"))
            .collect();
        line.push_str(&format!(" ({})", parts.join(", ")));
    }
    if !count.squarefree {
        line.push_str("; not squarefree, counted with multiplicity");
    }
    println!("{line}");
    Ok(())
}

/// `D mod 8` of the 0/1 lift: through `H = nF - XF'` when `F(0) = 1`,
/// through `F'` otherwise.
fn resultant_residue(f: &IntPoly) -> Result<u8> {
    Ok(if f.constant_term() == 1.into() {
        discriminant_mod8(f)?
    } else {
        discriminant_mod8_classical(f)?
    })
}

fn disc(a: DiscArgs) -> Result<()> {
    reject_csv(a.target.format)?;
    let (f, shape) = target(&a.target)?;
    let lifted = lift(&f)?;
    let degree = lifted.degree().unwrap_or(0);

    let closed = match (a.oracle, shape) {
        (Oracle::Resultant, _) => None,
        (Oracle::Closed, None) => {
            return Err(CliError::Usage(
                "the closed form needs a shape (--n, --s)".into(),
            ));
        }
        (Oracle::Closed, Some(sh)) => Some(pent_discriminant_closed_form(sh)?),
        (Oracle::Both, sh) => sh.and_then(|sh| pent_discriminant_closed_form(sh).ok()),
    };
    let exact = match a.oracle {
        Oracle::Closed => None,
        _ => Some(resultant_residue(&lifted)?),
    };
    let agree = match (closed, exact) {
        (Some(c), Some(e)) => Some(c == e),
        _ => None,
    };
    let residue = exact.or(closed).expect("at least one oracle ran");
    let verdict = parity_from_discriminant(degree, residue);

    if a.target.format == OutFormat::Json {
        let v = json!({
            "closed_form": closed,
            "resultant": exact,
            "agree": agree,
            "parity": verdict.as_ref().ok().map(|v| v.parity),
        });
        println!("{v}");
    } else {
        match closed {
            Some(c) => println!("closed form: {c}"),
            None if a.oracle == Oracle::Both => {
                println!("closed form: not available (needs n odd, s even)")
            }
            None => {}
        }
        if let Some(e) = exact {
            println!("resultant: {e}");
        }
        match agree {
            Some(true) => println!("agree"),
            Some(false) => println!("disagree"),
            None => {}
        }
        match &verdict {
            Ok(v) => println!("parity: {v}"),
            Err(e) => println!("parity: not determined ({e})"),
        }
    }
    if agree == Some(false) {
        return Err(CliError::Invariant(format!(
            "closed form {} and resultant {} disagree",
            closed.unwrap_or(0),
            exact.unwrap_or(0)
        )));
    }
    Ok(())
}

fn powersums(a: PowerSumArgs) -> Result<()> {
    let (f, _) = target(&a.target)?;
    let lifted = lift(&f)?;
    let upto = a.upto.unwrap_or(2 * lifted.degree().unwrap_or(0));
    let table = power_sums(&lifted, upto, a.modulus)?;
    let modulus = match a.modulus {
        SumModulus::Exact => "exact".to_string(),
        SumModulus::Pow2(k) => format!("2^{k}"),
    };
    match a.target.format {
        OutFormat::Json => {
            let values: Vec<String> = table.values().iter().map(|v| v.to_string()).collect();
            println!("{}", json!({ "modulus": modulus, "values": values }));
        }
        OutFormat::Csv => {
            println!("m,S_m");
            for (m, v) in table.values().iter().enumerate() {
                println!("{m},{v}");
            }
        }
        OutFormat::Human => {
            println!("# power sums of {lifted} ({modulus})");
            for (m, v) in table.values().iter().enumerate() {
                println!("S_{m} = {v}");
            }
        }
    }
    Ok(())
}

/// Prints `n: s1 s2 ...` for one column of irreducibles.
struct TablePrinter {
    enabled: bool,
    current: Option<(usize, Vec<usize>)>,
}

impl TablePrinter {
    fn push(&mut self, r: &SearchRecord) {
        if !self.enabled || !r.outcome.is_irreducible() {
            return;
        }
        match &mut self.current {
            Some((n, ss)) if *n == r.n => ss.push(r.s),
            _ => {
                self.finish();
                self.current = Some((r.n, vec![r.s]));
            }
        }
    }

    fn finish(&mut self) {
        if let Some((n, ss)) = self.current.take() {
            let ss: Vec<String> = ss.iter().map(|s| s.to_string()).collect();
            println!("{n}: {}", ss.join(" "));
        }
    }
}

fn summary_lines(st: &SurveyStats, n_min: usize, n_max: usize) -> Vec<String> {
    let hist = |h: &BTreeMap<u8, usize>| {
        h.iter()
            .filter(|(_, c)| **c > 0)
            .map(|(r, c)| format!("{r}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    vec![
        format!(
            "# checked {} shapes with {n_min} <= n < {n_max}",
            st.total_checked
        ),
        format!("# irreducible: {}", st.total_irreducible),
        format!("# irreducible by n mod 8: {}", hist(&st.n_mod8)),
        format!("# irreducible by s mod 8: {}", hist(&st.s_mod8)),
        format!(
            "# distinct n with an irreducible: {}",
            st.distinct_n_with_irr
        ),
        format!(
            "# frequency: {:.5} (baseline {})",
            st.frequency, st.baseline_frequency
        ),
    ]
}

fn search(a: SearchArgs) -> Result<()> {
    let n_filter = a.n_parity.unwrap_or(match a.s_parity {
        SParity::Even => NFilter::OddOnly,
        SParity::Odd => NFilter::All,
    });
    let config = SurveyConfig {
        prune: !a.no_prune,
        prefilter_depth: a.prefilter_depth,
        jobs: a.jobs,
    };
    // Validate the range before touching any file.
    let _ = enumerate(a.n_min, a.n_max, a.s_parity, n_filter)?;

    let file_format = if a.format == OutFormat::Json {
        Format::JsonLines
    } else {
        Format::Csv
    };
    let mut records: Vec<SearchRecord> = Vec::new();
    let mut start = a.n_min;
    let mut writer: Option<RecordWriter<Box<dyn Write>>> = match &a.out {
        Some(path) => {
            if a.resume {
                let state = prepare_resume(path, file_format)?;
                if let Some(n) = state.restart_n {
                    start = start.max(n);
                }
                records = state.kept;
            }
            Some(open_output(path, file_format, a.resume)?)
        }
        None if a.format != OutFormat::Human => Some(RecordWriter::new(
            Box::new(std::io::stdout()),
            file_format,
            true,
        )),
        None => None,
    };
    let table_to_stdout = a.out.is_some() || a.format == OutFormat::Human;
    let mut table = TablePrinter {
        enabled: table_to_stdout,
        current: None,
    };
    for r in &records {
        check_record(r)?;
        table.push(r);
    }

    let shapes = enumerate(start, a.n_max, a.s_parity, n_filter)?;
    let mut last_n = None;
    survey_each(shapes, &config, |r| {
        if let Some(w) = writer.as_mut() {
            if last_n.is_some_and(|n| n != r.n) {
                w.flush()?;
            }
            w.write(&r)?;
        }
        last_n = Some(r.n);
        table.push(&r);
        records.push(r);
        Ok(())
    })?;
    table.finish();
    if let Some(w) = writer.as_mut() {
        w.flush()?;
    }

    let st = stats(&records);
    for line in summary_lines(&st, a.n_min, a.n_max) {
        if table_to_stdout {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    if let Some(rate) = a.audit {
        let report = audit_prefilter(&records, rate, 0);
        let line = format!(
            "# audit: re-tested {} of {} prefilter rejections, {} disagreement{}",
            report.sampled,
            report.candidates,
            report.failures.len(),
            plural(report.failures.len())
        );
        if table_to_stdout {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        if let Some(bad) = report.failures.first() {
            return Err(CliError::Invariant(format!(
                "prefilter rejected irreducible {bad}"
            )));
        }
    }
    Ok(())
}

fn open_output(path: &Path, format: Format, append: bool) -> Result<RecordWriter<Box<dyn Write>>> {
    let file = if append {
        OpenOptions::new().create(true).append(true).open(path)?
    } else {
        File::create(path)?
    };
    let header = file.metadata()?.len() == 0;
    Ok(RecordWriter::new(Box::new(file), format, header))
}

fn stats_cmd(a: StatsArgs) -> Result<()> {
    reject_csv(a.format)?;
    let format = match a.input.extension().and_then(|e| e.to_str()) {
        Some("json" | "jsonl") => Format::JsonLines,
        _ => Format::Csv,
    };
    let records = read_records(File::open(&a.input)?, format)?;
    for r in &records {
        check_record(r)?;
    }
    let st = stats(&records);
    if a.format == OutFormat::Json {
        println!("{}", serde_json::to_string_pretty(&st)?);
        return Ok(());
    }
    let hist = |h: &BTreeMap<u8, usize>| {
        h.iter()
            .map(|(r, c)| format!("{r}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("total_checked: {}", st.total_checked);
    println!("total_irreducible: {}", st.total_irreducible);
    println!("n_mod8: {}", hist(&st.n_mod8));
    println!("s_mod8: {}", hist(&st.s_mod8));
    println!("distinct_n_with_irr: {}", st.distinct_n_with_irr);
    println!("frequency: {}", st.frequency);
    println!("baseline_frequency: {}", st.baseline_frequency);
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<()> {
    reject_csv(a.format)?;
    let base = a.upto.map(VerifyBounds::up_to).unwrap_or_default();
    let bounds = VerifyBounds {
        samples: a.samples,
        seed: a.seed,
        ..base
    };
    let reports = run_all(&bounds);
    if a.format == OutFormat::Json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            println!("{r}");
            for msg in r.failures.iter().take(10) {
                println!("  failure: {msg}");
            }
            for msg in r.notes.iter().take(10) {
                println!("  note: {msg}");
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::Invariant(format!(
            "{failed} suite{} failed",
            plural(failed)
        )));
    }
    Ok(())
}
