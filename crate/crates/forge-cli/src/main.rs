use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eulerian_forge::bijections::{
    banner_fstat, banner_to_word_f, parse_word, phi_twofix, psi_inverse, psi_necklace, show_word, theta_banner,
    upsilon, upsilon_inverse, word_to_banner_f, MarkedSequence, Necklace, TwoFixBanner,
};
use eulerian_forge::chromatic::{chromatic_qsym, omega_chromatic_f, verify_chromatic_poset, NaturalUnitIntervalPoset};
use eulerian_forge::decval::{
    verify_decrease_merged, verify_horizontal_derangements, verify_decrease_theorem, verify_product_difference, verify_eta_limit,
};
use eulerian_forge::eulerqsym::{flagq_closed, flagq_recurrence, refinedq_from_gf, FlagQ};
use eulerian_forge::perm::ColoredPermutation;
use eulerian_forge::qeuler::{a_brute, a_from_expo, a_recurrence, apoly_json, flag_rows, APoly};
use eulerian_forge::report::VerificationReport;
use eulerian_forge::stats::{admissible_inversions, colored_stats, fdes_abs, hook_stats, rawlings_stats, rix};
use eulerian_forge::suites::{criterion, module_suite, Budget, CRITERIA, MODULE_SUITES};
use eulerian_forge::{ForgeError, Result};

#[derive(Parser)]
#[command(name = "eulerian-forge", version, about = "Colored Eulerian statistics, polynomials and verification suites")]
struct Cli {
    /// Worker threads for enumeration-heavy work.
    #[arg(long, global = true, env = "EULERIAN_FORGE_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics of one colored permutation, e.g. "5^2 2^1 4^0 3^2 1^2 6^0".
    Stats {
        /// Optional length check for the permutation.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        perm: String,
        /// Gap for the Rawlings statistics.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The polynomial A_n(t, r, q).
    Apoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = ApolyMethod::Recurrence)]
        method: ApolyMethod,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Set r = 0, leaving the derangement polynomial in t and q.
        #[arg(long)]
        r0: bool,
    },
    /// The h-expansions Q_(n,k,j) as CSV rows.
    Qtable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = QMethod::Recurrence)]
        method: QMethod,
        /// Same as `--method refined`.
        #[arg(long)]
        refined: bool,
    },
    /// Apply one of the bijections.
    Bijection {
        #[arg(long, value_enum, alias = "name")]
        map: MapName,
        /// Banner or necklace letters (`3^1 ~2^0 1^0`), integers for `f`,
        /// or a JSON two-fix-banner for `phi`.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Value exchanged with k+1 by psi.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Apply the inverse map.
        #[arg(long)]
        inverse: bool,
    },
    /// Chromatic quasisymmetric function of G^c_(n,k).
    Chromatic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        /// Color word c_1..c_n, e.g. "0 1 0".
        #[arg(long)]
        colorword: String,
    },
    /// Decrease value theorem checks.
    Decval {
        #[arg(long)]
        r: usize,
        #[arg(long = "L")]
        len: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Run verification suites.
    Verify {
        /// A module suite or an acceptance criterion name.
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        /// Every acceptance criterion.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "small")]
        budget: Budget,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Keep wall times in the output.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ApolyMethod {
    Recurrence,
    Brute,
    Expo,
}

#[derive(Clone, Copy, ValueEnum)]
enum QMethod {
    Recurrence,
    Closed,
    Refined,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    Psi,
    Theta,
    Phi,
    Upsilon,
    F,
}

enum Output {
    Json(Value),
    Csv(Vec<Vec<String>>),
}

struct Outcome {
    output: Output,
    passed: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome {
            output: Output::Json(value),
            passed: true,
        }
    }
}

fn apoly(n: usize, l: usize, method: ApolyMethod) -> Result<APoly> {
    if l == 0 {
        return Err(ForgeError::OutOfRange("l must be at least 1".into()));
    }
    match method {
        ApolyMethod::Recurrence => Ok(a_recurrence(n, l)),
        ApolyMethod::Brute => Ok(a_brute(n, l)),
        ApolyMethod::Expo => a_from_expo(n, l).map(|mut v| v.pop().expect("n + 1 entries")),
    }
}

fn qtable(n: usize, l: usize, method: QMethod) -> Result<FlagQ> {
    if l == 0 {
        return Err(ForgeError::OutOfRange("l must be at least 1".into()));
    }
    match method {
        QMethod::Recurrence => Ok(flagq_recurrence(n, l)),
        QMethod::Closed => Ok(flagq_closed(n, l)),
        QMethod::Refined => refinedq_from_gf(n, l).map(|r| r.aggregate()),
    }
}

fn necklace(text: &str) -> Result<Necklace> {
    Necklace::new(parse_word(text)?)
}

fn bijection(map: MapName, input: &str, l: usize, k: usize, inverse: bool) -> Result<Value> {
    Ok(match map {
        MapName::Psi => {
            let r = necklace(input)?;
            let image = if inverse { psi_inverse(&r, k) } else { psi_necklace(&r, k) };
            json!({"input": r.to_string(), "k": k, "image": image.to_string()})
        }
        MapName::Theta => {
            let b = parse_word(input)?;
            let image = theta_banner(&b, l)?;
            json!({
                "input": show_word(&b),
                "image": show_word(&image),
                "fstat": [banner_fstat(&b, l), banner_fstat(&image, l)],
            })
        }
        MapName::Phi => {
            let v: TwoFixBanner = serde_json::from_str(input)
                .map_err(|e| ForgeError::InvalidInput(format!("two-fix-banner JSON: {e}")))?;
            let image = phi_twofix(&v, l)?;
            json!({"input": v, "image": image, "fexc": [v.fexc(l), image.fexc(l)]})
        }
        MapName::Upsilon if inverse => {
            let (banner, seq) = input
                .split_once('|')
                .ok_or_else(|| ForgeError::InvalidInput("expected `banner | value^color`".into()))?;
            let letter = parse_word(seq)?;
            let [x] = letter.as_slice() else {
                return Err(ForgeError::InvalidInput("expected one letter after `|`".into()));
            };
            let seq = MarkedSequence {
                word: vec![x.value],
                mark: 0,
                color: x.color,
            };
            let image = upsilon_inverse(&parse_word(banner)?, &seq)?;
            json!({"image": show_word(&image)})
        }
        MapName::Upsilon => {
            let b = parse_word(input)?;
            let (rest, seq) = upsilon(&b)?;
            json!({"input": show_word(&b), "banner": show_word(&rest), "sequence": seq})
        }
        MapName::F if inverse => {
            let b = parse_word(input)?;
            json!({"input": show_word(&b), "word": banner_to_word_f(&b, l)?})
        }
        MapName::F => {
            let w: Vec<usize> = input
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| ForgeError::InvalidInput(format!("bad letter `{x}`"))))
                .collect::<Result<_>>()?;
            json!({"input": w, "banner": show_word(&word_to_banner_f(&w, l)?)})
        }
    })
}

fn strip_timing(mut r: VerificationReport, keep: bool) -> VerificationReport {
    if !keep {
        r.wall_time_ms = 0;
    }
    r
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Stats { n, l, perm, k } => {
            let pi = ColoredPermutation::parse(&perm, l)?;
            if let Some(n) = n.filter(|&n| n != pi.len()) {
                return Err(ForgeError::InvalidInput(format!("permutation has {} letters, n = {n}", pi.len())));
            }
            let (fdes, fdes_abs) = fdes_abs(&pi);
            let letters: Vec<_> = pi.letters().collect();
            Ok(Outcome::ok(json!({
                "perm": pi.to_string(),
                "l": l,
                "stats": colored_stats(&pi),
                "hook": hook_stats(&pi),
                "ai": admissible_inversions(&pi),
                "rix": rix(&letters),
                "des_abs": fdes,
                "fdes_abs": fdes_abs,
                "rawlings": rawlings_stats(&pi, k)?,
                "k": k,
            })))
        }
        Command::Apoly { n, l, method, format, r0 } => {
            let mut a = apoly(n, l, method)?;
            if r0 {
                a.poly = a.poly.specialize(1, 0);
            }
            Ok(match format {
                Format::Json => Outcome::ok(apoly_json(&a)),
                Format::Csv => {
                    let mut rows = vec![vec!["k".to_string(), "j".into(), "coefficient".into()]];
                    rows.extend(flag_rows(&a).into_iter().map(|(k, j, c)| vec![k.to_string(), j.to_string(), c.to_string()]));
                    Outcome {
                        output: Output::Csv(rows),
                        passed: true,
                    }
                }
            })
        }
        Command::Qtable { n, l, method, refined } => {
            let q = qtable(n, l, if refined { QMethod::Refined } else { method })?;
            let mut rows = vec![vec!["k".to_string(), "j".into(), "h_expansion".into()]];
            rows.extend(q.entries().into_iter().map(|((k, j), f)| vec![k.to_string(), j.to_string(), f.to_string()]));
            Ok(Outcome {
                output: Output::Csv(rows),
                passed: true,
            })
        }
        Command::Bijection { map, input, l, k, inverse } => bijection(map, &input, l, k, inverse).map(Outcome::ok),
        Command::Chromatic { n, l, k, colorword } => {
            let colors: Vec<usize> = colorword
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|x| x.parse().map_err(|_| ForgeError::InvalidInput(format!("bad color `{x}`"))))
                .collect::<Result<_>>()?;
            if colors.len() != n {
                return Err(ForgeError::InvalidInput(format!("color word has {} letters, n = {n}", colors.len())));
            }
            if let Some(c) = colors.iter().find(|&&c| c >= l) {
                return Err(ForgeError::OutOfRange(format!("color {c} with l = {l}")));
            }
            let poset = NaturalUnitIntervalPoset::new(colors, k)?;
            let g = poset.incomparability_graph();
            let vars = n.max(1);
            let verdicts = verify_chromatic_poset(&poset);
            let passed = verdicts.iter().all(|v| v.passed);
            Ok(Outcome {
                output: Output::Json(json!({
                    "n": n,
                    "k": k,
                    "colors": poset.colors(),
                    "edges": g.edges(),
                    "natural_unit_interval": poset.unit_interval_violation().is_none(),
                    "X_G": chromatic_qsym(&g, vars).to_string(),
                    "omega_X_G": omega_chromatic_f(&g, vars)?,
                    "verdicts": verdicts,
                })),
                passed,
            })
        }
        Command::Decval { r, len, l } => {
            let mut report = VerificationReport::new("decval").param("r", r).param("L", len).param("l", l);
            report.push(verify_decrease_theorem(r, len));
            report.push(verify_decrease_merged(r, len));
            report.extend(verify_horizontal_derangements(r, len));
            report.push(verify_product_difference(r));
            if len >= 1 {
                report.push(verify_eta_limit(l, len - 1, len));
            }
            let passed = report.passed();
            Ok(Outcome {
                output: Output::Json(serde_json::to_value(&report).expect("serializable")),
                passed,
            })
        }
        Command::Verify { suite, all, budget, n, l, timings } => {
            let reports: Vec<VerificationReport> = match (suite, all) {
                (_, true) => (1..=CRITERIA.len()).map(|i| criterion(i, budget)).collect::<Result<_>>()?,
                (Some(name), false) => match CRITERIA.iter().position(|c| *c == name) {
                    Some(i) => vec![criterion(i + 1, budget)?],
                    None => vec![module_suite(&name, n, l)?],
                },
                (None, false) => {
                    return Err(ForgeError::InvalidInput(format!(
                        "give --all or --suite with one of: {}, {}",
                        MODULE_SUITES.join(", "),
                        CRITERIA.join(", ")
                    )))
                }
            };
            let reports: Vec<_> = reports.into_iter().map(|r| strip_timing(r, timings)).collect();
            let passed = reports.iter().all(VerificationReport::passed);
            Ok(Outcome {
                output: Output::Json(json!({"budget": budget.name(), "passed": passed, "reports": reports})),
                passed,
            })
        }
    }
}

fn emit(output: &Output) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match output {
        Output::Json(v) => {
            serde_json::to_writer_pretty(&mut out, v)?;
            writeln!(out)
        }
        Output::Csv(rows) => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(outcome) => {
            match emit(&outcome.output) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                Ok(()) => {}
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
