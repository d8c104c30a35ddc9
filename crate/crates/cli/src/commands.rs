use std::time::{SystemTime, UNIX_EPOCH};

use kiselman::boolmat::{self, BoolMatrix};
use kiselman::counting::{self, ExactRational};
use kiselman::monotone;
use kiselman::morphisms;
use kiselman::verify::{self, VerifyConfig};
use kiselman::{Endomorphism, Error, RewriteSystem, SetSequence, Subset, Word};
use serde_json::{json, Value};

use crate::output::{emit, Format, Output};
use crate::{Cli, Command, CountArgs, ExportWhat, Failure, Method};

/// Cayley tables are refused above this many elements.
pub const TABLE_LIMIT: usize = 2_000;

const COUNT_GUARD_BITS: usize = counting::DEFAULT_GUARD_BITS;
const VERIFY_GUARD_BITS: usize = 20;

/// A finished command: the output to emit, and a failure to report after it.
type Outcome = (Output, Option<Failure>);

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let (output, failure) = match &cli.command {
        Command::Elements {
            n,
            idempotents_only,
        } => elements(cli, *n, *idempotents_only, g.format)?,
        Command::Endos { n, method } => endos(*n, *method, cli, g.format)?,
        Command::Count(args) => count(args, g.guard_bits.unwrap_or(COUNT_GUARD_BITS))?,
        Command::Verify {
            n,
            suite,
            samples,
            seed,
            no_timestamp,
        } => {
            let suites: Vec<kiselman::Suite> = if suite.is_empty() {
                kiselman::Suite::ALL.to_vec()
            } else {
                suite.iter().map(|&s| s.into()).collect()
            };
            let cfg = VerifyConfig {
                max_rank: *n,
                guard_bits: g.guard_bits.unwrap_or(VERIFY_GUARD_BITS),
                max_rules: g.max_rules,
                max_elements: g.max_elements,
                samples: *samples,
                seed: *seed,
                ..VerifyConfig::default()
            };
            run_verify(&suites, &cfg, *no_timestamp, csv(g.format))?
        }
        Command::Export { n, what } => export(cli, *n, *what)?,
    };
    let format = g.format.unwrap_or(match cli.command {
        Command::Export { .. } => Format::Json,
        _ => Format::Table,
    });
    emit(&output.render(format), g.output.as_deref())?;
    failure.map_or(Ok(()), Err)
}

fn heads(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn system(cli: &Cli, n: usize) -> Result<RewriteSystem, Failure> {
    Ok(RewriteSystem::completed(n, cli.global.max_rules)?)
}

fn csv(format: Option<Format>) -> bool {
    format == Some(Format::Csv)
}

fn word_cell(w: &Word, csv: bool) -> String {
    if csv {
        w.dotted()
    } else {
        w.to_string()
    }
}

fn set_cell(x: Subset, csv: bool) -> String {
    if csv {
        x.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    } else {
        x.to_string()
    }
}

fn matrix_cell(m: &BoolMatrix, csv: bool) -> String {
    if csv {
        m.flat_digits()
    } else {
        m.to_string()
    }
}

fn elements(
    cli: &Cli,
    n: usize,
    idempotents_only: bool,
    format: Option<Format>,
) -> Result<Outcome, Failure> {
    let rs = system(cli, n)?;
    let all = rs.enumerate_elements(cli.global.max_elements)?;
    let csv = csv(format);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for e in &all {
        let idem = rs.is_idempotent(e)?;
        if idempotents_only && !idem {
            continue;
        }
        rows.push(vec![
            rows.len().to_string(),
            word_cell(e.nf(), csv),
            e.nf().len().to_string(),
            set_cell(e.content(), csv),
            idem.to_string(),
        ]);
        records.push(json!({
            "word": e.nf(),
            "content": e.content(),
            "idempotent": idem,
        }));
    }
    let count = rows.len();
    let failure = (idempotents_only && count != 1 << n).then(|| {
        Failure::Check(format!(
            "{count} idempotents in K_{n}, expected {}",
            1u64 << n
        ))
    });
    Ok((
        Output {
            headers: heads(&["index", "word", "length", "content", "idempotent"]),
            rows,
            footer: Some(format!("count: {count}")),
            json: json!({
                "n": n,
                "idempotents_only": idempotents_only,
                "count": count,
                "elements": records,
            }),
        },
        failure,
    ))
}

fn discover_endos(cli: &Cli, n: usize, method: Method) -> Result<Vec<Endomorphism>, Failure> {
    Ok(match method {
        Method::Brute => morphisms::brute_force_enumerate_end(
            &system(cli, n)?,
            morphisms::DEFAULT_BRUTE_FORCE_GUARD,
        )?,
        Method::Monotone => monotone::enumerate(n, monotone::DEFAULT_ENUMERATION_GUARD)?
            .iter()
            .map(Endomorphism::from_sequence)
            .collect::<kiselman::Result<_>>()?,
    })
}

fn endos(n: usize, method: Method, cli: &Cli, format: Option<Format>) -> Result<Outcome, Failure> {
    let ends = discover_endos(cli, n, method)?;
    let expected = boolmat::count_dn(n, morphisms::DEFAULT_BRUTE_FORCE_GUARD)?;
    let csv = csv(format);
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (i, f) in ends.iter().enumerate() {
        let seq = f.phi();
        let matrix = morphisms::psi(&seq)?;
        let images: Vec<Word> = (1..=n).map(|k| f.image_word(k)).collect();
        let image_cell = images
            .iter()
            .map(|w| word_cell(w, csv))
            .collect::<Vec<_>>()
            .join(if csv { ";" } else { " " });
        let seq_cell = if csv {
            seq.parts()
                .iter()
                .map(|&x| set_cell(x, true))
                .collect::<Vec<_>>()
                .join(";")
        } else {
            seq.to_string()
        };
        rows.push(vec![
            i.to_string(),
            image_cell,
            seq_cell,
            matrix_cell(&matrix, csv),
        ]);
        records.push(json!({
            "index": i,
            "images": images,
            "sequence": seq,
            "matrix": matrix,
        }));
    }
    let count = ends.len();
    let failure = (count as u64 != expected).then(|| {
        Failure::Check(format!(
            "{count} endomorphisms found, but |D_{n}| = {expected}"
        ))
    });
    let method_name = match method {
        Method::Brute => "brute",
        Method::Monotone => "monotone",
    };
    Ok((
        Output {
            headers: heads(&["index", "images", "sequence", "matrix"]),
            rows,
            footer: Some(format!(
                "count: {count} ({method_name}), |D_{n}| = {expected}"
            )),
            json: json!({
                "n": n,
                "method": method_name,
                "count": count,
                "dn_count": expected,
                "endomorphisms": records,
            }),
        },
        failure,
    ))
}

enum Closed {
    Skipped,
    Integral(String),
    NonIntegral(ExactRational),
}

fn count(args: &CountArgs, guard_bits: usize) -> Result<Outcome, Failure> {
    let cells: Vec<(usize, usize)> = if args.grid {
        if args.brute_only {
            (1..=args.max_bits)
                .flat_map(|m| (1..=args.max_bits / m).map(move |n| (m, n)))
                .collect()
        } else {
            counting::formula_grid(args.max_bits)
        }
    } else {
        let (m, n) = (args.m.expect("required"), args.n.expect("required"));
        if !args.brute_only && !(2..=5).contains(&m) {
            return Err(Failure::Usage(format!(
                "the closed formula covers 2 <= m <= 5, got m = {m}; pass --brute-only to count by search"
            )));
        }
        vec![(m, n)]
    };
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut disagreements = 0;
    for (m, n) in cells {
        let closed = if args.brute_only {
            Closed::Skipped
        } else {
            match counting::closed_count(m, n) {
                Ok(c) => Closed::Integral(c.value.to_string()),
                Err(Error::NonIntegralCount { .. }) => {
                    Closed::NonIntegral(counting::closed_value(m, n)?)
                }
                Err(e) => return Err(e.into()),
            }
        };
        let brute = if args.closed_only {
            None
        } else {
            Some(counting::brute_count(m, n, guard_bits)?.value.to_string())
        };
        let agree = match (&closed, &brute) {
            (Closed::Integral(c), Some(b)) => Some(c == b),
            (Closed::NonIntegral(_), _) => Some(false),
            _ => None,
        };
        if agree == Some(false) {
            disagreements += 1;
        }
        let closed_text = match &closed {
            Closed::Skipped => None,
            Closed::Integral(c) => Some(c.clone()),
            Closed::NonIntegral(q) => Some(q.to_string()),
        };
        let dash = || "-".to_string();
        rows.push(vec![
            m.to_string(),
            n.to_string(),
            closed_text.clone().unwrap_or_else(dash),
            brute.clone().unwrap_or_else(dash),
            agree.map_or_else(dash, |a| if a { "agree".into() } else { "DISAGREE".into() }),
        ]);
        records.push(json!({
            "m": m,
            "n": n,
            "closed": closed_text,
            "brute": brute,
            "agree": agree,
        }));
    }
    let total = rows.len();
    let failure = (disagreements > 0)
        .then(|| Failure::Check(format!("{disagreements} of {total} counts disagree")));
    Ok((
        Output {
            headers: heads(&["m", "n", "closed", "brute", "agree"]),
            rows,
            footer: Some(if disagreements > 0 {
                format!("{disagreements} of {total} rows disagree")
            } else {
                format!(
                    "{total} {}, no disagreements",
                    if total == 1 { "row" } else { "rows" }
                )
            }),
            json: json!({
                "rows": records,
                "all_agree": disagreements == 0,
            }),
        },
        failure,
    ))
}

fn run_verify(
    suites: &[kiselman::Suite],
    cfg: &VerifyConfig,
    no_timestamp: bool,
    csv: bool,
) -> Result<Outcome, Failure> {
    let mut report = verify::run(suites, cfg)?;
    if no_timestamp {
        report.clear_timing();
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    if !no_timestamp {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json["generated_at_unix"] = Value::from(now);
    }
    let field = |s: &str| {
        if csv {
            s.replace(',', ";")
        } else {
            s.to_string()
        }
    };
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.suite.to_string(),
                c.id.clone(),
                field(&c.scope),
                if c.passed { "pass" } else { "FAIL" }.to_string(),
                field(c.counterexample.as_deref().unwrap_or_default()),
            ]
        })
        .collect();
    let failed = report.failures().count();
    let total = report.checks.len();
    let mut footer = format!("{} of {total} checks passed", total - failed);
    if let Some(ms) = report.wall_time_ms {
        footer.push_str(&format!(" in {ms} ms"));
    }
    let failure =
        (failed > 0).then(|| Failure::Check(format!("{failed} of {total} checks failed")));
    Ok((
        Output {
            headers: heads(&["suite", "check", "scope", "status", "counterexample"]),
            rows,
            footer: Some(footer),
            json,
        },
        failure,
    ))
}

fn table_guard(len: usize) -> Result<(), Failure> {
    if len > TABLE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "Cayley table elements",
            requested: len,
            limit: TABLE_LIMIT,
        }
        .into());
    }
    Ok(())
}

/// Square table of product indices, rendered with one labelled row per left factor.
fn cayley(labels: Vec<String>, products: Vec<Vec<usize>>, json: Value) -> Output {
    let rows = labels
        .iter()
        .zip(&products)
        .enumerate()
        .map(|(i, (label, row))| {
            let mut cells = vec![i.to_string(), label.clone()];
            cells.extend(row.iter().map(usize::to_string));
            cells
        })
        .collect();
    let mut headers = heads(&["index", "element"]);
    headers.extend((0..labels.len()).map(|i| i.to_string()));
    Output {
        headers,
        rows,
        footer: Some(format!("{} elements", labels.len())),
        json,
    }
}

fn export(cli: &Cli, n: usize, what: ExportWhat) -> Result<Outcome, Failure> {
    let csv = csv(cli.global.format);
    match what {
        ExportWhat::Elements => elements(cli, n, false, cli.global.format),
        ExportWhat::Endos => endos(n, Method::Monotone, cli, cli.global.format),
        ExportWhat::Rules => {
            let rs = system(cli, n)?;
            let rows = rs
                .rules()
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        i.to_string(),
                        word_cell(&r.lhs, csv),
                        word_cell(&r.rhs, csv),
                    ]
                })
                .collect();
            let json = serde_json::to_value(&rs).expect("serializable");
            Ok((
                Output {
                    headers: heads(&["index", "lhs", "rhs"]),
                    rows,
                    footer: Some(format!("{} rules", rs.rules().len())),
                    json,
                },
                None,
            ))
        }
        ExportWhat::KnTable => {
            let rs = system(cli, n)?;
            let all = rs.enumerate_elements(cli.global.max_elements)?;
            table_guard(all.len())?;
            let mut products = Vec::with_capacity(all.len());
            for a in &all {
                let mut row = Vec::with_capacity(all.len());
                for b in &all {
                    let p = rs.multiply(a, b)?;
                    match all.binary_search(&p) {
                        Ok(i) => row.push(i),
                        Err(_) => {
                            return Err(Failure::Check(format!("{a} * {b} = {p} is not listed")))
                        }
                    }
                }
                products.push(row);
            }
            let json = json!({
                "n": n,
                "elements": all,
                "table": products,
            });
            let labels = all.iter().map(|e| word_cell(e.nf(), csv)).collect();
            Ok((cayley(labels, products, json), None))
        }
        ExportWhat::DnTable => {
            let dn = boolmat::enumerate_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD)?;
            table_guard(dn.len())?;
            let mut products = Vec::with_capacity(dn.len());
            for a in &dn {
                let mut row = Vec::with_capacity(dn.len());
                for b in &dn {
                    let p = a.mul(b)?;
                    match dn.binary_search(&p) {
                        Ok(i) => row.push(i),
                        Err(_) => {
                            return Err(Failure::Check(format!("{a} * {b} = {p} leaves D_{n}")))
                        }
                    }
                }
                products.push(row);
            }
            let sequences: Vec<SetSequence> = dn
                .iter()
                .map(morphisms::psi_inv)
                .collect::<kiselman::Result<_>>()?;
            let json = json!({
                "n": n,
                "elements": dn,
                "sequences": sequences,
                "table": products,
            });
            let labels = dn.iter().map(|m| matrix_cell(m, csv)).collect();
            Ok((cayley(labels, products, json), None))
        }
    }
}
