use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use shimura_gate::badprimes::{fr_set, n1_set, EnumerationOptions, DEFAULT_BUDGET};
use shimura_gate::certify::{certify, CertificateVerdict, CertifyOptions};
use shimura_gate::classgrp::{class_group, generating_primes, ingest_class_data, ClassGroupData, FormClassGroup};
use shimura_gate::lemma::{elimination_verdict, LemmaScenario};
use shimura_gate::numfield::NumberField;
use shimura_gate::quatalg::{conic_local_solvable, hilbert_symbol, splits_over, Place, QuaternionAlgebra};
use shimura_gate::Error;

const EXIT_INAPPLICABLE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(name = "shimura-gate", version, about = "Non-existence certificates for rational points on Shimura curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting data (e, f, g) of rational primes in an abelian field.
    Split {
        #[command(flatten)]
        field: FieldArg,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', required = true)]
        prime: Vec<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hilbert symbol (a, b)_v, at one place or at every relevant place.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// A prime or `inf`.
        #[arg(long)]
        place: Option<Place>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Whether a quaternion algebra splits over a field.
    Quatsplit {
        #[command(flatten)]
        quat: QuatArg,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Class group of a discriminant, or generating primes of a field.
    Classgroup {
        /// Fundamental discriminant.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["field", "class_data"])]
        disc: Option<i64>,
        #[command(flatten)]
        field: OptFieldArg,
        /// Validate this class data instead of computing it.
        #[arg(long)]
        class_data: Option<PathBuf>,
        /// Largest prime scanned for generators.
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Roots of x^2 + a x + n with a^2 <= 4n.
    Fr {
        #[arg(long)]
        norm: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Bad-prime sets N0, T, Ram and N1 of a field.
    Badprimes {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        class_data: Option<PathBuf>,
        #[command(flatten)]
        run: RunArg,
        /// Also list every norm value.
        #[arg(long)]
        values: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replay the trace elimination for N = q^odd at a prime p.
    LemmaCheck {
        #[arg(long)]
        norm: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        prime: u64,
        /// Quaternion discriminant.
        #[arg(long)]
        disc: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Local solvability of r x^2 + s y^2 + t z^2 = 0.
    Conic {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        place: Place,
        /// Local degree of the extension; taken from --field when omitted.
        #[arg(long, conflicts_with = "field")]
        local_degree: Option<u64>,
        #[arg(long, default_value_t = 1, conflicts_with = "field")]
        ramification: u64,
        #[command(flatten)]
        field: OptFieldArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Audit the hypotheses for (k, B) and emit a certificate.
    Certify {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        quat: QuatArg,
        /// Class data for the working field (k, or kW on the extended route).
        #[arg(long)]
        class_data: Option<PathBuf>,
        #[command(flatten)]
        run: RunArg,
        /// Emit the certificate even if the exclusion set is symbolic or
        /// incompletely factored.
        #[arg(long)]
        allow_symbolic: bool,
        #[arg(long, default_value_t = 10_000)]
        witness_bound: u64,
        #[arg(long, default_value_t = 1_000_000)]
        w_bound: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct FieldArg {
    /// Field spec: a JSON file or inline JSON.
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct OptFieldArg {
    /// Field spec: a JSON file or inline JSON.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct QuatArg {
    /// Quaternion discriminant.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    disc: Option<u64>,
    #[arg(long, allow_hyphen_values = true, requires = "b")]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    b: Option<i64>,
}

#[derive(Args)]
struct RunArg {
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct OutArg {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArg {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json(&self, v: &Value) -> anyhow::Result<()> {
        self.emit(&(serde_json::to_string_pretty(v)? + "\n"))
    }
}

fn read_field(arg: &str) -> anyhow::Result<NumberField> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading field spec {arg}"))?
    };
    Ok(NumberField::from_json(&text)?)
}

fn read_quat(q: &QuatArg) -> anyhow::Result<QuaternionAlgebra> {
    match (q.disc, q.a, q.b) {
        (Some(d), _, _) => Ok(QuaternionAlgebra::from_discriminant(d)?),
        (None, Some(a), Some(b)) => Ok(QuaternionAlgebra::from_pair(a, b)?),
        _ => bail!("give --disc or both --a and --b"),
    }
}

fn read_class_data(k: &NumberField, path: &Option<PathBuf>, bound: u64) -> anyhow::Result<ClassGroupData> {
    match path {
        Some(p) => {
            let payload = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(ingest_class_data(k, &payload)?)
        }
        None => Ok(generating_primes(k, bound)?),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Split { field, prime, out } => {
            let k = read_field(&field.field)?;
            let rows = prime
                .iter()
                .map(|&p| k.splitting_data(p).map(|s| json!(s)))
                .collect::<Result<Vec<_>, _>>()?;
            out.json(&json!({ "field": k.spec(), "degree": k.degree(), "splitting": rows }))?;
        }
        Command::Hilbert { a, b, place, out } => {
            let places = match place {
                Some(p) => vec![p],
                None => {
                    let mut ps = vec![Place::Infinite, Place::Finite(2)];
                    for x in [a, b] {
                        let mut m = x.unsigned_abs();
                        let mut p = 3;
                        while p * p <= m {
                            if m % p == 0 {
                                ps.push(Place::Finite(p));
                                while m % p == 0 {
                                    m /= p;
                                }
                            }
                            p += 2;
                        }
                        if m > 2 {
                            ps.push(Place::Finite(m));
                        }
                    }
                    ps.sort();
                    ps.dedup();
                    ps
                }
            };
            let mut rows = Vec::new();
            let mut product = 1i64;
            for p in places {
                let s = hilbert_symbol(a, b, p)?;
                product *= s as i64;
                rows.push(json!({ "place": p, "symbol": s }));
            }
            let mut v = json!({ "a": a, "b": b, "symbols": rows });
            if place.is_none() {
                v["product"] = json!(product);
            }
            out.json(&v)?;
        }
        Command::Quatsplit { quat, field, out } => {
            let b = read_quat(&quat)?;
            let k = read_field(&field.field)?;
            let v = splits_over(&b, &k)?;
            out.json(&json!({
                "field": k.spec(),
                "disc": b.discriminant(),
                "ramified": b.ramified_primes(),
                "splits": v.splits,
                "witness": v.witness(),
                "evidence": v.evidence,
            }))?;
        }
        Command::Classgroup { disc, field, class_data, bound, out } => {
            if let Some(d) = disc {
                let grp = FormClassGroup::new(d)?;
                let mut v = json!({
                    "D": d,
                    "h": grp.order(),
                    "narrow_h": grp.narrow_order(),
                    "elementary_two_group": grp.is_elementary_two_group(),
                });
                if d < 0 {
                    let (_, forms) = class_group(d)?;
                    v["forms"] = json!(forms.iter().map(|f| f.as_array()).collect::<Vec<_>>());
                }
                out.json(&v)?;
            } else {
                let spec = field.field.ok_or_else(|| anyhow!("give --disc or --field"))?;
                let k = read_field(&spec)?;
                out.emit(&(read_class_data(&k, &class_data, bound)?.to_json() + "\n"))?;
            }
        }
        Command::Fr { norm, out } => {
            let set = fr_set(norm);
            out.json(&json!({ "n": norm, "count": set.len(), "candidates": set }))?;
        }
        Command::Badprimes { field, class_data, run, values, out } => {
            let k = read_field(&field.field)?;
            let cg = read_class_data(&k, &class_data, 100_000)?;
            let opts = EnumerationOptions { budget: run.budget, threads: run.threads, ..Default::default() };
            let sets = n1_set(&k, &cg, &opts)?;
            let mut v = json!(sets);
            if values {
                v["values"] = json!(shimura_gate::badprimes::m2_values(&k, &cg, &opts)?);
            }
            out.json(&v)?;
        }
        Command::LemmaCheck { norm, q, prime, disc, out } => {
            let b = QuaternionAlgebra::from_discriminant(disc)?;
            let r = elimination_verdict(&LemmaScenario { n: norm, q, p: prime }, &b)?;
            out.json(&json!(r))?;
        }
        Command::Conic { r, s, t, place, local_degree, ramification, field, out } => {
            let (degree, e, k) = match (local_degree, field.field) {
                (Some(d), _) => (d, ramification, None),
                (None, Some(spec)) => {
                    let k = read_field(&spec)?;
                    match place {
                        Place::Finite(p) => {
                            let sp = k.splitting_data(p)?;
                            (sp.local_degree(), sp.e, Some(k))
                        }
                        Place::Infinite => {
                            let d = if k.is_totally_real() { 1 } else { 2 };
                            (d, 1, Some(k))
                        }
                    }
                }
                (None, None) => bail!("give --local-degree or --field"),
            };
            let solvable = conic_local_solvable((r, s, t), place, degree, e)?;
            let mut v = json!({
                "coeffs": [r, s, t],
                "place": place,
                "local_degree": degree,
                "ramification_index": e,
                "solvable": solvable,
            });
            if let Some(k) = k {
                v["field"] = json!(k.spec());
            }
            out.json(&v)?;
        }
        Command::Certify { field, quat, class_data, run, allow_symbolic, witness_bound, w_bound, out } => {
            let k = read_field(&field.field)?;
            let b = read_quat(&quat)?;
            let class_data = match class_data {
                Some(p) => Some(fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?),
                None => None,
            };
            let opts = CertifyOptions {
                witness_bound,
                w_bound,
                class_data,
                enumeration: EnumerationOptions { budget: run.budget, threads: run.threads, ..Default::default() },
                allow_symbolic,
                ..Default::default()
            };
            let cert = certify(&k, &b, &opts)?;
            out.emit(&cert.to_canonical_json())?;
            return Ok(match cert.verdict {
                CertificateVerdict::Certified => 0,
                CertificateVerdict::Inapplicable => {
                    if let Some(h) = cert.failed_hypothesis() {
                        eprintln!("inapplicable: hypothesis {} fails", h.name);
                    }
                    EXIT_INAPPLICABLE
                }
                CertificateVerdict::Withheld => {
                    eprintln!("withheld: exclusion set not fully enumerated; pass --allow-symbolic to emit anyway");
                    EXIT_REFUSED
                }
            });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded { .. }) => ExitCode::from(EXIT_REFUSED),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
