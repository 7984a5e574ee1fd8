//! Dispatch from parsed arguments to library calls and serialized output.

use std::path::PathBuf;

use confstab_core::certify::{
    certify_range, rn_slope, slope_input_range, ComplementProfile, Orientation, SlopeBound,
};
use confstab_core::enumerate::{enumerate_generators, AdmissibilityMode, EnumerationBounds};
use confstab_core::hilbert::{
    hilbert_by_enumeration, hilbert_by_product, rational_table, Coefficients, HilbertTable,
};
use confstab_core::ops::{AmbientDim, Prime};
use confstab_core::stability::{
    check_theorem_range, verify_unstable_facts, z_half_report, LemmaReport, TheoremRangeReport,
};
use confstab_core::Big;

use crate::config::{
    ambient_dim, check_cap, degree_bound, parse_primes, parse_slope, resolve_coeff, CertifyArgs,
    Cli, Command, Format, GeneratorsArgs, HilbertArgs, OracleArgs, OutputOpts, StabilityArgs,
    ZHalfArgs, MAX_BOUND, MAX_K_MAX,
};
use crate::{thread_cap, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// A checked claim failed on the computed data; exit code 1 after the
    /// report is emitted.
    ClaimFailed(String),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: String,
    pub destination: Option<PathBuf>,
    pub verdict: Verdict,
    /// Human-oriented one-liner, printed to stderr so stdout stays
    /// machine-readable and byte-stable.
    pub summary: Option<String>,
}

impl Outcome {
    fn ok(output: String, opts: &OutputOpts) -> Self {
        Outcome {
            output,
            destination: opts.output.clone(),
            verdict: Verdict::Pass,
            summary: None,
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Generators(args) => cmd_generators(args),
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Stability(args) => cmd_stability(args),
        Command::ZHalf(args) => cmd_z_half(args),
        Command::Certify(args) => cmd_certify(args),
        Command::OracleRp(args) => cmd_oracle_rp(args),
    }
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn big_bounds(d: u64, k: u64) -> EnumerationBounds<Big> {
    EnumerationBounds::new(Big::from(d), Big::from(k)).expect("weight bound >= 1 checked upstream")
}

fn big_generators(n: AmbientDim, p: Prime, d: u64, k: u64) -> confstab_core::BigGeneratorSet {
    enumerate_generators(n, p, big_bounds(d, k), AdmissibilityMode::FormalS)
}

fn cmd_generators(args: GeneratorsArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, args.unsafe_large)?;
    let p = match resolve_coeff(&args.coeff, args.unsafe_large)? {
        Coefficients::Fp(p) => p,
        Coefficients::Rational => {
            return Err(CliError::Config(
                "generator enumeration needs an odd prime; the rational content is the closed \
                 form used by `hilbert --coeff Q`"
                    .to_string(),
            ))
        }
    };
    if args.max_weight == 0 {
        return Err(CliError::Config("max-weight must be >= 1".to_string()));
    }
    check_cap("max-weight", args.max_weight, MAX_BOUND, args.unsafe_large)?;
    let d = degree_bound(n, args.max_degree, args.max_weight, args.unsafe_large)?;

    let gens = big_generators(n, p, d, args.max_weight);
    let output = match args.output.format {
        Format::Tsv => gens.to_tsv(),
        Format::Json => json_text(&gens.to_json()),
    };
    Ok(Outcome::ok(output, &args.output))
}

/// Builds the table for one coefficient field, running both engines and
/// insisting they agree for the mod-p case.
fn dual_engine_table(
    n: AmbientDim,
    coeff: Coefficients,
    d: u64,
    k: u64,
) -> Result<HilbertTable<Big>, CliError> {
    match coeff {
        Coefficients::Rational => Ok(rational_table(n, &big_bounds(d, k))),
        Coefficients::Fp(p) => {
            let gens = big_generators(n, p, d, k);
            let (by_enum, by_prod) = if thread_cap() >= 2 {
                std::thread::scope(|scope| {
                    let handle = scope.spawn(|| hilbert_by_enumeration(&gens));
                    let prod = hilbert_by_product(&gens);
                    (handle.join().expect("engine thread"), prod)
                })
            } else {
                (hilbert_by_enumeration(&gens), hilbert_by_product(&gens))
            };
            let differences = by_enum.differences(&by_prod);
            if !differences.is_empty() {
                let listing: Vec<String> = differences
                    .iter()
                    .take(20)
                    .map(|(i, k, a, b)| format!("({i}, {k}): enumeration {a} vs product {b}"))
                    .collect();
                return Err(CliError::EngineDisagreement(listing.join("; ")));
            }
            Ok(by_enum)
        }
    }
}

fn cmd_hilbert(args: HilbertArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, args.unsafe_large)?;
    let coeff = resolve_coeff(&args.coeff, args.unsafe_large)?;
    if args.max_weight == 0 {
        return Err(CliError::Config("max-weight must be >= 1".to_string()));
    }
    check_cap("max-weight", args.max_weight, MAX_BOUND, args.unsafe_large)?;
    let d = degree_bound(n, args.max_degree, args.max_weight, args.unsafe_large)?;

    let table = dual_engine_table(n, coeff, d, args.max_weight)?;
    let output = match args.output.format {
        Format::Tsv => table.to_tsv(),
        Format::Json => json_text(&table.to_json()),
    };
    Ok(Outcome::ok(output, &args.output))
}

fn stability_json(
    claim: &str,
    pass: bool,
    report: &TheoremRangeReport<Big>,
    facts: Option<&LemmaReport>,
    counterexamples: &[(Big, Big)],
) -> serde_json::Value {
    serde_json::json!({
        "claim": claim,
        "grid": {
            "n": report.n.get(),
            "coeff": report.coeff.to_string(),
            "max_degree": report.max_degree.to_string(),
            "max_weight": report.max_weight.to_string(),
        },
        "pass": pass,
        "counterexamples": counterexamples
            .iter()
            .map(|(i, k)| serde_json::json!({"i": i.to_string(), "k": k.to_string()}))
            .collect::<Vec<_>>(),
        "caveats": report.caveats,
        "ranges": report
            .ranges
            .iter()
            .map(|(k, r)| serde_json::json!({"k": k.to_string(), "r": r.to_string()}))
            .collect::<Vec<_>>(),
        "slope_one": {
            "pass": report.pass,
            "counterexamples": report
                .counterexamples
                .iter()
                .map(|(i, k)| serde_json::json!({"i": i.to_string(), "k": k.to_string()}))
                .collect::<Vec<_>>(),
        },
        "half_slope": {
            "pass": report.half_slope_pass,
            "counterexamples": report
                .half_slope_counterexamples
                .iter()
                .map(|(i, k)| serde_json::json!({"i": i.to_string(), "k": k.to_string()}))
                .collect::<Vec<_>>(),
        },
        "injectivity_violations": report.injectivity_violations,
        "monotonicity_notes": report.monotonicity_notes,
        "facts": facts.map(|f| f.to_json()),
    })
}

fn cmd_stability(args: StabilityArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, args.unsafe_large)?;
    let coeff = resolve_coeff(&args.coeff, args.unsafe_large)?;
    if args.max == 0 {
        return Err(CliError::Config("max must be >= 1".to_string()));
    }
    check_cap("max", args.max, MAX_BOUND, args.unsafe_large)?;

    // The instability facts are claims about ambient dimension >= 3 and
    // prime coefficients; elsewhere only the range checks apply.
    let facts = match coeff {
        Coefficients::Fp(p) if n.get() >= 3 => {
            let gens = big_generators(n, p, args.max, args.max);
            Some(verify_unstable_facts(&gens))
        }
        _ => None,
    };
    let table = dual_engine_table(n, coeff, args.max, args.max)?;
    let report = check_theorem_range(&table).map_err(|e| CliError::Config(e.to_string()))?;

    let (claim, pass, counterexamples): (String, bool, Vec<(Big, Big)>) = if n.get() >= 3 {
        let facts_pass = facts.as_ref().is_none_or(LemmaReport::pass);
        (
            report.claim.clone(),
            report.pass && facts_pass && report.injectivity_violations.is_empty(),
            report.counterexamples.clone(),
        )
    } else {
        (
            format!(
                "adding a particle induces H_i(C_k(R^{}); {}) -> H_i(C_(k+1)) isomorphisms \
                 for i <= k/2",
                n.get(),
                report.coeff
            ),
            report.half_slope_pass,
            report.half_slope_counterexamples.clone(),
        )
    };

    let output = match args.output.format {
        Format::Tsv => {
            let mut out = String::new();
            for (k, r) in &report.ranges {
                out.push_str(&format!("{k}\t{r}\n"));
            }
            out
        }
        Format::Json => json_text(&stability_json(
            &claim,
            pass,
            &report,
            facts.as_ref(),
            &counterexamples,
        )),
    };

    let verdict = if pass {
        Verdict::Pass
    } else {
        Verdict::ClaimFailed(format!("stability: FAIL - {claim}"))
    };
    Ok(Outcome {
        output,
        destination: args.output.output.clone(),
        verdict,
        summary: pass.then(|| format!("stability: PASS - {claim}")),
    })
}

fn cmd_z_half(args: ZHalfArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, args.unsafe_large)?;
    if n.get() < 3 {
        return Err(CliError::Config(
            "the Z[1/2] aggregation needs ambient dimension >= 3".to_string(),
        ));
    }
    if args.max == 0 {
        return Err(CliError::Config("max must be >= 1".to_string()));
    }
    check_cap("max", args.max, MAX_BOUND, args.unsafe_large)?;
    let primes = parse_primes(&args.primes, args.unsafe_large)?;

    // Per-prime tables are independent pure computations; build them on a
    // small scoped pool capped by CONFSTAB_THREADS.
    let workers = thread_cap().min(primes.len()).max(1);
    let chunk = primes.len().div_ceil(workers);
    let mut tables: Vec<HilbertTable<Big>> = std::thread::scope(|scope| {
        let handles: Vec<_> = primes
            .chunks(chunk)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|p| {
                            let gens = big_generators(n, *p, args.max, args.max);
                            hilbert_by_enumeration(&gens)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("table worker"))
            .collect()
    });
    tables.push(rational_table(n, &big_bounds(args.max, args.max)));

    let report = z_half_report(&tables).map_err(|e| CliError::Config(e.to_string()))?;

    let output = match args.output.format {
        Format::Tsv => {
            let mut out = String::new();
            for (coeff, pass) in &report.per_coefficient {
                out.push_str(&format!("{coeff}\t{pass}\n"));
            }
            for caveat in &report.caveats {
                out.push_str(&format!("# caveat: {caveat}\n"));
            }
            out
        }
        Format::Json => json_text(&report.to_json()),
    };
    let verdict = if report.pass {
        Verdict::Pass
    } else {
        Verdict::ClaimFailed("z-half: FAIL - a sampled coefficient field failed the slope-1 check".to_string())
    };
    Ok(Outcome {
        output,
        destination: args.output.output.clone(),
        verdict,
        summary: report.pass.then(|| format!("z-half: PASS - {}", report.claim)),
    })
}

fn cmd_certify(args: CertifyArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, args.unsafe_large)?;
    if args.q == 0 || args.q > n.get() {
        return Err(CliError::Config(format!(
            "codimension q = {} must satisfy 1 <= q <= n = {}",
            args.q,
            n.get()
        )));
    }
    check_cap("k-max", args.k_max, MAX_K_MAX, args.unsafe_large)?;
    let profile =
        ComplementProfile::new(n, n.get() - args.q).map_err(|e| CliError::Config(e.to_string()))?;

    let slope = match (&args.input_slope, &args.coeff.p, &args.coeff.coeff) {
        (Some(text), None, None) => SlopeBound::Finite(parse_slope(text)?),
        (None, _, _) => {
            let coeff = resolve_coeff(&args.coeff, args.unsafe_large)?;
            match rn_slope(n, coeff).map_err(|e| CliError::Config(e.to_string()))? {
                SlopeBound::Finite(r) => SlopeBound::Finite(r),
                SlopeBound::Infinite => {
                    return Err(CliError::Config(
                        "this coefficient field has no finite slope on R^n (no e-free \
                         generators); pass --input-slope explicitly"
                            .to_string(),
                    ))
                }
            }
        }
        (Some(_), _, _) => {
            return Err(CliError::Config(
                "pass either --input-slope or a coefficient field, not both".to_string(),
            ))
        }
    };

    let k_max = args.k_max as usize;
    let input =
        slope_input_range::<u64>(slope, k_max).map_err(|e| CliError::Config(e.to_string()))?;
    let orientation = if args.twisted {
        Orientation::Twisted
    } else {
        Orientation::Trivial
    };
    let cert = certify_range(&input, &profile, orientation, k_max)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let output = match args.output.format {
        Format::Tsv => cert.to_tsv(),
        Format::Json => json_text(&cert.to_json()),
    };
    Ok(Outcome::ok(output, &args.output))
}

fn cmd_oracle_rp(args: OracleArgs) -> Result<Outcome, CliError> {
    let n = ambient_dim(args.n, false)?;
    let coeff = resolve_coeff(&args.coeff, false)?;
    let dims = crate::oracle::rp_homology(n.get(), coeff);

    let output = match args.output.format {
        Format::Tsv => {
            let mut out = String::new();
            for (i, dim) in dims.iter().enumerate() {
                out.push_str(&format!("{i}\t{dim}\n"));
            }
            out
        }
        Format::Json => json_text(&serde_json::json!({
            "n": n.get(),
            "coeff": coeff.to_string(),
            "space": format!("RP^{}", n.get() - 1),
            "dims": dims
                .iter()
                .enumerate()
                .map(|(i, d)| serde_json::json!({"i": i, "dim": d}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(output, &args.output))
}
