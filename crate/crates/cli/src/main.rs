//! Command-line front end for the Schubert calculus engine.
//!
//! Exit codes: 0 success, 1 math/verification failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_cli::{cache, suites};
use schubert_core::cohomology::{chevalley_cup, cup, CohClass};
use schubert_core::grassmann::{
    grass_poset, k_pieri, lr_coefficients, pieri_divisor_cohomology, projective_k_model,
    GrassIndex, KPieriMode, Partition, Theory as GrTheory,
};
use schubert_core::ktheory::{convert, dualize, k_chevalley, multiply, KBasis, KClass};
use schubert_core::oracle::{cone_counterexample, ConeFitConfig, SuiteReport};
use schubert_core::weyl::{BruhatPoset, Permutation, Weight};
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_WINDOW_GUARD: usize = 6;

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Exact Schubert calculus in the cohomology and Grothendieck rings of GL_n flag varieties"
)]
struct Cli {
    /// Acknowledge windows above the guard (default 6; env SCHUBERT_MAX_WINDOW)
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    O,
    I,
}

impl From<BasisArg> for KBasis {
    fn from(b: BasisArg) -> KBasis {
        match b {
            BasisArg::O => KBasis::O,
            BasisArg::I => KBasis::I,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    H,
    K,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    /// weakly increasing parts, area = dimension
    Dim,
    /// weakly decreasing parts, area = codimension
    Codim,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PieriArg {
    /// cohomology divisor rule
    H,
    /// K: multiplication by the ample line bundle
    KLine,
    /// K: multiplication by its inverse
    KLineInverse,
    /// K: multiplication by the structure sheaf of the Schubert divisor
    KDivisor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PosetKind {
    Bruhat,
    Grass,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CacheAction {
    Build,
    Load,
    Gc,
}

#[derive(Args)]
struct PairArgs {
    /// window n
    #[arg(long)]
    n: usize,
    /// first permutation, comma-separated one-line notation
    #[arg(long)]
    v: String,
    /// second permutation
    #[arg(long)]
    w: String,
}

#[derive(Subcommand)]
enum Command {
    /// Cup product [X_v] cup [X_w] in the Schubert basis
    Cup(PairArgs),
    /// Product O_v . O_w in the Grothendieck ring (O basis)
    Kmul(PairArgs),
    /// Chevalley formula c_1(L_lambda) cup [X_w]
    Chevalley {
        #[arg(long)]
        n: usize,
        /// weight, comma-separated integers
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        w: String,
    },
    /// K-Chevalley expansion of [L_lambda] . O_w (dominant lambda)
    Kchevalley {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        w: String,
    },
    /// Convert a K-class between the O and I bases
    Convert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum)]
        from: BasisArg,
        #[arg(long, value_enum)]
        to: BasisArg,
    },
    /// Duality involution of a basis element
    Dualize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "o")]
        basis: BasisArg,
    },
    /// Moebius function of the Bruhat order
    Mobius(PairArgs),
    /// Littlewood-Richardson coefficients of Gr(d, n)
    Lr {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// partition, comma-separated parts (may be empty: "")
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "h")]
        theory: TheoryArg,
        #[arg(long, value_enum, default_value = "codim")]
        convention: ConventionArg,
    },
    /// Pieri rules on the Grassmannian
    Pieri {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// multi-index, comma-separated increasing values
        #[arg(long)]
        index: String,
        #[arg(long, value_enum, default_value = "h")]
        mode: PieriArg,
    },
    /// The Hilbert-polynomial model of K(P^n)
    Hilbert {
        #[arg(long)]
        n: usize,
        /// dimension of the linear subspace (with --k: evaluate chi)
        #[arg(long)]
        j: Option<usize>,
        /// twist to evaluate chi(O_{P^j}(k)) at
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// decompose a polynomial given by rational coefficients "a0,a1/2,..."
        #[arg(long, allow_hyphen_values = true)]
        decompose: Option<String>,
    },
    /// The cone counterexample class for a degree-d curve
    Cone {
        #[arg(long)]
        d: usize,
    },
    /// Run a verification suite; exit 0 on pass, 1 on failure
    Verify {
        /// one of: duality, positivity, signs, mobius, chevalley-routes,
        /// pieri, hilbert, cone, stability
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dmax: Option<usize>,
        /// triple sample size for sampled scans at n >= 5
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value = "2024")]
        seed: u64,
    },
    /// Export posets or structure-constant tables
    Export {
        #[command(subcommand)]
        what: ExportCmd,
    },
    /// Build, load or garbage-collect persisted structure-constant tables
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        theory: Option<TheoryArg>,
        /// cache directory (env SCHUBERT_CACHE_DIR, default ./.schubert-cache)
        #[arg(long, env = "SCHUBERT_CACHE_DIR")]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Bruhat order of S_n or containment order of Gr(d, n)
    Poset {
        #[arg(long, value_enum)]
        kind: PosetKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// output path; "-" for stdout
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Full structure-constant table of S_n in one theory
    Table {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<schubert_core::Error> for Failure {
    fn from(e: schubert_core::Error) -> Failure {
        Failure::Math(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Math(format!("{e:#}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Math(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn window_guard() -> usize {
    std::env::var("SCHUBERT_MAX_WINDOW")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_WINDOW_GUARD)
}

fn check_window(n: usize, allow_large: bool) -> Result<(), Failure> {
    let guard = window_guard();
    if n > guard && !allow_large {
        return Err(Failure::Usage(format!(
            "window {n} exceeds the guard {guard}; pass --allow-large to acknowledge \
             the factorial blow-up (or raise SCHUBERT_MAX_WINDOW)"
        )));
    }
    Ok(())
}

fn parse_perm(s: &str, n: usize) -> Result<Permutation, Failure> {
    let images: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse permutation '{s}'")))?;
    if images.len() != n {
        return Err(Failure::Usage(format!(
            "permutation '{s}' has {} entries, expected {n}",
            images.len()
        )));
    }
    Permutation::new(images).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_weight(s: &str, n: usize) -> Result<Weight, Failure> {
    let entries: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse weight '{s}'")))?;
    if entries.len() != n {
        return Err(Failure::Usage(format!(
            "weight '{s}' has {} entries, expected {n}",
            entries.len()
        )));
    }
    Ok(Weight::new(entries))
}

fn parse_parts(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse parts '{s}'")))
}

fn parse_partition(
    s: &str,
    d: usize,
    n: usize,
    convention: ConventionArg,
) -> Result<Partition, Failure> {
    let mut parts = parse_parts(s)?;
    match convention {
        ConventionArg::Codim => {
            Partition::from_dual(parts, d, n).map_err(|e| Failure::Usage(e.to_string()))
        }
        ConventionArg::Dim => {
            if parts.len() > d {
                return Err(Failure::Usage(format!("more than {d} parts in '{s}'")));
            }
            // pad leading zeros: dimension-convention parts are increasing
            let mut full = vec![0usize; d - parts.len()];
            full.append(&mut parts);
            Partition::new(full, d, n).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn partition_out(p: &Partition, convention: ConventionArg) -> Vec<usize> {
    match convention {
        ConventionArg::Dim => p.parts().to_vec(),
        ConventionArg::Codim => p.dual_decreasing(),
    }
}

fn emit(value: &impl serde::Serialize) -> Result<(), Failure> {
    println!("{}", serde_json::to_string(value).map_err(Failure::from)?);
    Ok(())
}

fn write_out(path: &str, content: &str) -> Result<(), Failure> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content).map_err(|e| Failure::Math(format!("writing {path}: {e}")))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Cup(args) => {
            check_window(args.n, cli.allow_large)?;
            let v = parse_perm(&args.v, args.n)?;
            let w = parse_perm(&args.w, args.n)?;
            let prod = cup(&CohClass::schubert(&v), &CohClass::schubert(&w))?;
            emit(&prod.to_wire())?;
            Ok(0)
        }
        Command::Kmul(args) => {
            check_window(args.n, cli.allow_large)?;
            let v = parse_perm(&args.v, args.n)?;
            let w = parse_perm(&args.w, args.n)?;
            let prod = multiply(&KClass::o_class(&v), &KClass::o_class(&w))?;
            emit(&prod.to_wire())?;
            Ok(0)
        }
        Command::Chevalley { n, lambda, w } => {
            check_window(n, cli.allow_large)?;
            let lam = parse_weight(&lambda, n)?;
            let w = parse_perm(&w, n)?;
            emit(&chevalley_cup(&lam, &w).to_wire())?;
            Ok(0)
        }
        Command::Kchevalley { n, lambda, w } => {
            check_window(n, cli.allow_large)?;
            let lam = parse_weight(&lambda, n)?;
            let w = parse_perm(&w, n)?;
            let exp = k_chevalley(&lam, &w)?;
            let mut class = KClass::zero(n, KBasis::O);
            for (v, c) in exp {
                class.add_term(v, c);
            }
            emit(&class.to_wire())?;
            Ok(0)
        }
        Command::Convert { n, w, from, to } => {
            check_window(n, cli.allow_large)?;
            let w = parse_perm(&w, n)?;
            let start = match from {
                BasisArg::O => KClass::o_class(&w),
                BasisArg::I => KClass::i_class(&w),
            };
            emit(&convert(&start, to.into()).to_wire())?;
            Ok(0)
        }
        Command::Dualize { n, w, basis } => {
            check_window(n, cli.allow_large)?;
            let w = parse_perm(&w, n)?;
            let start = match basis {
                BasisArg::O => KClass::o_class(&w),
                BasisArg::I => KClass::i_class(&w),
            };
            emit(&dualize(&start)?.to_wire())?;
            Ok(0)
        }
        Command::Mobius(args) => {
            check_window(args.n, cli.allow_large)?;
            let v = parse_perm(&args.v, args.n)?;
            let w = parse_perm(&args.w, args.n)?;
            println!("{}", Permutation::mobius(&v, &w)?);
            Ok(0)
        }
        Command::Lr {
            d,
            n,
            lambda,
            mu,
            theory,
            convention,
        } => {
            check_window(n, cli.allow_large)?;
            let lam = parse_partition(&lambda, d, n, convention)?;
            let mu = parse_partition(&mu, d, n, convention)?;
            let theory = match theory {
                TheoryArg::H => GrTheory::H,
                TheoryArg::K => GrTheory::K,
            };
            let out = lr_coefficients(&lam, &mu, theory)?;
            let terms: Vec<serde_json::Value> = out
                .iter()
                .map(|(nu, c)| {
                    serde_json::json!({
                        "partition": partition_out(nu, convention),
                        "coeff": c.to_string(),
                    })
                })
                .collect();
            emit(&serde_json::json!({
                "d": d, "n": n,
                "theory": match theory { GrTheory::H => "H", GrTheory::K => "K" },
                "convention": match convention { ConventionArg::Dim => "dimension", ConventionArg::Codim => "codimension" },
                "terms": terms,
            }))?;
            Ok(0)
        }
        Command::Pieri { d, n, index, mode } => {
            check_window(n, cli.allow_large)?;
            let parts = parse_parts(&index)?;
            let i = GrassIndex::new(parts, d, n).map_err(|e| Failure::Usage(e.to_string()))?;
            let out = match mode {
                PieriArg::H => pieri_divisor_cohomology(&i)?,
                PieriArg::KLine => k_pieri(&i, KPieriMode::LineBundle)?,
                PieriArg::KLineInverse => k_pieri(&i, KPieriMode::LineBundleInverse)?,
                PieriArg::KDivisor => k_pieri(&i, KPieriMode::Divisor)?,
            };
            let terms: Vec<serde_json::Value> = out
                .iter()
                .map(|(j, c)| serde_json::json!({ "index": j.indices(), "coeff": c.to_string() }))
                .collect();
            emit(&serde_json::json!({ "d": d, "n": n, "index": i.indices(), "terms": terms }))?;
            Ok(0)
        }
        Command::Hilbert { n, j, k, decompose } => {
            let model = projective_k_model(n);
            match (j, k, decompose) {
                (Some(j), Some(k), None) => {
                    println!("{}", model.euler(j, k)?);
                    Ok(0)
                }
                (None, None, Some(spec)) => {
                    let coeffs: Result<Vec<num_rational::BigRational>, Failure> = spec
                        .split(',')
                        .map(|t| {
                            let t = t.trim();
                            let (num, den) = match t.split_once('/') {
                                Some((a, b)) => (a, b),
                                None => (t, "1"),
                            };
                            let num: num_bigint::BigInt = num
                                .parse()
                                .map_err(|_| Failure::Usage(format!("bad rational '{t}'")))?;
                            let den: num_bigint::BigInt = den
                                .parse()
                                .map_err(|_| Failure::Usage(format!("bad rational '{t}'")))?;
                            Ok(num_rational::BigRational::new(num, den))
                        })
                        .collect();
                    let p = schubert_core::grassmann::HilbertPoly::from_coeffs(coeffs?);
                    let c = model.decompose(&p)?;
                    emit(&c.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
                    Ok(0)
                }
                _ => Err(Failure::Usage(
                    "hilbert needs either --j and --k, or --decompose".to_string(),
                )),
            }
        }
        Command::Cone { d } => {
            let class = cone_counterexample(d, ConeFitConfig::default())?;
            emit(&class)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n,
            dmax,
            samples,
            seed,
        } => {
            let report = run_suite(&suite, n, dmax, samples, seed, cli.allow_large)?;
            emit(&report)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Export { what } => match what {
            ExportCmd::Poset {
                kind,
                n,
                d,
                format,
                out,
            } => {
                check_window(n, cli.allow_large)?;
                match kind {
                    PosetKind::Bruhat => {
                        let poset = BruhatPoset::full(n);
                        let content = match format {
                            FormatArg::Dot => poset.to_dot(&format!("bruhat_s{n}")),
                            FormatArg::Json => {
                                format!("{}\n", serde_json::to_string(&poset)?)
                            }
                        };
                        write_out(&out, &content)?;
                    }
                    PosetKind::Grass => {
                        let d = d.ok_or_else(|| {
                            Failure::Usage("grass poset needs --d".to_string())
                        })?;
                        let poset =
                            grass_poset(d, n).map_err(|e| Failure::Usage(e.to_string()))?;
                        let content = match format {
                            FormatArg::Dot => poset.to_dot(&format!("gr_{d}_{n}")),
                            FormatArg::Json => {
                                format!("{}\n", serde_json::to_string(&poset)?)
                            }
                        };
                        write_out(&out, &content)?;
                    }
                }
                Ok(0)
            }
            ExportCmd::Table { theory, n, out } => {
                check_window(n, cli.allow_large)?;
                let theory = match theory {
                    TheoryArg::H => cache::Theory::H,
                    TheoryArg::K => cache::Theory::K,
                };
                let table = cache::compute_table(theory, n)?;
                let entries: Vec<serde_json::Value> = table
                    .iter()
                    .map(|((v, w, x), c)| {
                        serde_json::json!({ "v": v, "w": w, "x": x, "c": c.to_string() })
                    })
                    .collect();
                let content = format!(
                    "{}\n",
                    serde_json::to_string(&serde_json::json!({
                        "engine_version": cache::ENGINE_VERSION,
                        "theory": theory.tag(),
                        "window": n,
                        "entries": entries,
                    }))?
                );
                write_out(&out, &content)?;
                Ok(0)
            }
        },
        Command::Cache {
            action,
            n,
            theory,
            dir,
        } => {
            let dir = dir.unwrap_or_else(|| PathBuf::from(".schubert-cache"));
            let theories: Vec<cache::Theory> = match theory {
                Some(TheoryArg::H) => vec![cache::Theory::H],
                Some(TheoryArg::K) => vec![cache::Theory::K],
                None => vec![cache::Theory::H, cache::Theory::K],
            };
            match action {
                CacheAction::Build => {
                    let n = n.ok_or_else(|| Failure::Usage("cache build needs --n".into()))?;
                    check_window(n, cli.allow_large)?;
                    let mut status = Vec::new();
                    for t in &theories {
                        let entries = cache::build(&dir, *t, n)?;
                        status.push(serde_json::json!({
                            "theory": t.tag(), "window": n, "entries": entries,
                        }));
                    }
                    emit(&status)?;
                    Ok(0)
                }
                CacheAction::Load => {
                    let n = n.ok_or_else(|| Failure::Usage("cache load needs --n".into()))?;
                    let mut status = Vec::new();
                    for t in &theories {
                        let table = cache::load(&dir, *t, n)?;
                        status.push(serde_json::json!({
                            "theory": t.tag(), "window": n, "entries": table.len(),
                            "checksum": "ok",
                        }));
                    }
                    emit(&status)?;
                    Ok(0)
                }
                CacheAction::Gc => {
                    let removed = cache::gc(&dir)?;
                    emit(&serde_json::json!({
                        "removed": removed
                            .iter()
                            .map(|p| p.display().to_string())
                            .collect::<Vec<_>>(),
                    }))?;
                    Ok(0)
                }
            }
        }
    }
}

fn run_suite(
    suite: &str,
    n: Option<usize>,
    dmax: Option<usize>,
    samples: Option<usize>,
    seed: u64,
    allow_large: bool,
) -> Result<SuiteReport, Failure> {
    let n_or = |d: usize| n.unwrap_or(d);
    if let Some(n) = n {
        check_window(n, allow_large)?;
    }
    let report = match suite {
        "duality" => suites::duality(n_or(4), seed)?,
        "positivity" => {
            let n = n_or(4);
            if n <= 4 {
                suites::positivity(n)?
            } else {
                suites::positivity_sampled(n, samples.unwrap_or(10_000), seed)?
            }
        }
        "signs" => {
            let n = n_or(4);
            if n <= 4 {
                suites::signs(n)?
            } else {
                suites::signs_sampled(n, samples.unwrap_or(10_000), seed)?
            }
        }
        "mobius" => suites::mobius(n_or(4))?,
        "chevalley-routes" => suites::chevalley_routes(n_or(4))?,
        "pieri" => suites::pieri()?,
        "hilbert" => suites::hilbert(n_or(6), seed)?,
        "cone" => suites::cone(dmax.unwrap_or(8))?,
        "stability" => suites::stability()?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite '{other}'; expected one of duality, positivity, signs, mobius, \
                 chevalley-routes, pieri, hilbert, cone, stability"
            )))
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
