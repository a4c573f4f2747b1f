//! `cousin`: compute composition factors and weight filtrations of local
//! cohomology of Schubert varieties in Grassmannians, and verify the results
//! against the linear-algebra oracle.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cousin_core::cousin::{
    cousin_terms, local_cohomology, verify_instance, CousinError, OracleBudget,
};
use cousin_core::det::{closed_form_multiplicity, enumerated_multiplicities, DetInstance};
use cousin_core::dyck::{
    enumerate_patterns, pattern_degree, pattern_diagram, pattern_json, pattern_weight,
    BulletFilter, PatternFilter,
};
use cousin_core::verma::weight_filtration;
use cousin_core::young::{parse_partition, GrassContext, Partition};
use serde_json::json;
use std::process::ExitCode;

const BUDGET_ENV: &str = "COUSIN_ORACLE_BUDGET";

#[derive(Parser)]
#[command(
    name = "cousin",
    version,
    about = "Local cohomology of Grassmannian Schubert varieties via Dyck patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Plain-ASCII diagram glyphs
    #[arg(long, global = true)]
    ascii: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Diagram,
}

#[derive(Args)]
struct Instance {
    /// Subspace dimension k of Gr(k,n)
    #[arg(long)]
    k: usize,
    /// Ambient dimension n of Gr(k,n)
    #[arg(long)]
    n: usize,
    /// Partition "a1,a2,..." inside the k x (n-k) rectangle
    #[arg(long)]
    partition: String,
}

impl Instance {
    fn resolve(&self) -> Result<(GrassContext, Partition), CliError> {
        let ctx = GrassContext::new(self.k, self.n).map_err(|e| CliError::Usage(e.to_string()))?;
        let a = parse_partition(&self.partition).map_err(|e| CliError::Usage(e.to_string()))?;
        ctx.check_fits(&a).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((ctx, a))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate admissible augmented Dyck patterns in a partition
    Patterns {
        #[command(flatten)]
        instance: Instance,
        /// Minimum path length (1 or 3)
        #[arg(long, default_value_t = 3)]
        min_path_len: usize,
        /// Restrict to an exact bullet count
        #[arg(long)]
        bullets: Option<usize>,
        /// Restrict to an exact path count
        #[arg(long)]
        paths: Option<usize>,
    },
    /// Composition factors and weights of local cohomology, per degree
    Localcoh {
        #[command(flatten)]
        instance: Instance,
        /// Only this cohomological degree
        #[arg(long)]
        degree: Option<usize>,
        /// Only this weight
        #[arg(long)]
        weight: Option<i64>,
    },
    /// Weight filtration of the parabolic Verma module (or its dual)
    Verma {
        #[command(flatten)]
        instance: Instance,
        /// The dual module instead of the Verma module
        #[arg(long)]
        dual: bool,
    },
    /// Terms and differential pairs of the Cousin complex
    Gc {
        #[command(flatten)]
        instance: Instance,
    },
    /// Determinantal multiplicities: enumeration against the closed form
    Det {
        /// Row count m of the matrix space (m >= n)
        #[arg(long)]
        m: usize,
        /// Column count n
        #[arg(long)]
        n: usize,
        /// Rank bound
        #[arg(long)]
        rank: usize,
        /// Emit the closed form only, skipping enumeration
        #[arg(long)]
        closed_form_only: bool,
    },
    /// Run every consistency check on one instance or a whole context
    Verify {
        /// Subspace dimension k of Gr(k,n)
        #[arg(long)]
        k: usize,
        /// Ambient dimension n of Gr(k,n)
        #[arg(long)]
        n: usize,
        /// Partition to verify (omit with --sweep)
        #[arg(long)]
        partition: Option<String>,
        /// Verify every partition in the context
        #[arg(long)]
        sweep: bool,
        /// Oracle budget "MAX_BASIS" or "MAX_DIM,MAX_BASIS"
        /// (default from COUSIN_ORACLE_BUDGET, else 16,50000)
        #[arg(long)]
        oracle_budget: Option<String>,
        /// Resume a sweep from this instance index
        #[arg(long, default_value_t = 0)]
        from_index: usize,
    },
}

enum CliError {
    Usage(String),
    Budget(String),
    Mismatch(String),
}

impl From<CousinError> for CliError {
    fn from(e: CousinError) -> Self {
        match e {
            CousinError::BudgetExceeded(msg) => CliError::Budget(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: oracle budget exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Mismatch(msg)) => {
            eprintln!("error: verification mismatch: {msg}");
            ExitCode::from(4)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Patterns {
            instance,
            min_path_len,
            bullets,
            paths,
        } => cmd_patterns(&cli, instance, *min_path_len, *bullets, *paths),
        Command::Localcoh {
            instance,
            degree,
            weight,
        } => cmd_localcoh(&cli, instance, *degree, *weight),
        Command::Verma { instance, dual } => cmd_verma(&cli, instance, *dual),
        Command::Gc { instance } => cmd_gc(&cli, instance),
        Command::Det {
            m,
            n,
            rank,
            closed_form_only,
        } => cmd_det(&cli, *m, *n, *rank, *closed_form_only),
        Command::Verify {
            k,
            n,
            partition,
            sweep,
            oracle_budget,
            from_index,
        } => cmd_verify(
            &cli,
            *k,
            *n,
            partition.as_deref(),
            *sweep,
            oracle_budget.as_deref(),
            *from_index,
        ),
    }
}

fn cmd_patterns(
    cli: &Cli,
    instance: &Instance,
    min_path_len: usize,
    bullets: Option<usize>,
    paths: Option<usize>,
) -> Result<(), CliError> {
    if min_path_len != 1 && min_path_len != 3 {
        return Err(CliError::Usage(
            "--min-path-len must be 1 or 3".to_string(),
        ));
    }
    let (ctx, a) = instance.resolve()?;
    let filter = PatternFilter {
        min_path_len,
        bullets: match bullets {
            Some(t) => BulletFilter::Exactly(t),
            None => BulletFilter::Any,
        },
        path_count: paths,
    };
    let pats = enumerate_patterns(&a, &filter);
    if cli.format == Format::Json {
        let items: Vec<serde_json::Value> =
            pats.iter().map(|p| pattern_json(&ctx, p)).collect();
        println!("{}", serde_json::to_string_pretty(&json!(items)).unwrap());
        return Ok(());
    }
    println!("{} pattern(s) in {} inside {}", pats.len(), a, ctx);
    for (i, pat) in pats.iter().enumerate() {
        let q = pattern_degree(&ctx, pat);
        let w = pattern_weight(&ctx, pat);
        println!(
            "\n[{i}] q={q} p={w} quotient={} paths={} bullets={}",
            pat.quotient().expect("enumerated patterns are admissible"),
            pat.path_count(),
            pat.bullet_count()
        );
        let diagram = pattern_diagram(pat, cli.ascii);
        if diagram.is_empty() {
            println!("(empty diagram)");
        } else {
            println!("{diagram}");
        }
    }
    Ok(())
}

fn cmd_localcoh(
    cli: &Cli,
    instance: &Instance,
    degree: Option<usize>,
    weight: Option<i64>,
) -> Result<(), CliError> {
    let (ctx, a) = instance.resolve()?;
    let mut cohomology = local_cohomology(&ctx, &a)?;
    if let Some(q) = degree {
        cohomology.retain(|&d, _| d == q);
    }
    let filtered: Vec<(usize, serde_json::Value)> = cohomology
        .iter()
        .map(|(&q, module)| {
            let mut v = module.to_json();
            if let Some(p) = weight {
                let layers = v["layers"].as_array().cloned().unwrap_or_default();
                v["layers"] = json!(layers
                    .into_iter()
                    .filter(|l| l["p"] == json!(p))
                    .collect::<Vec<_>>());
            }
            (q, v)
        })
        .collect();
    if cli.format == Format::Json {
        let degrees: Vec<serde_json::Value> = filtered
            .iter()
            .map(|(q, v)| {
                let mut entry = v.clone();
                entry["q"] = json!(q);
                entry
            })
            .collect();
        let out = json!({
            "context": ctx,
            "partition": a,
            "cohomology": degrees,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }
    println!("local cohomology of {} in {}", a, ctx);
    if filtered.is_empty() {
        println!("(zero)");
    }
    for (q, v) in filtered {
        println!("H^{q}:");
        for layer in v["layers"].as_array().unwrap() {
            let factors: Vec<String> = layer["factors"]
                .as_array()
                .unwrap()
                .iter()
                .map(describe_factor)
                .collect();
            println!("  p={}: {}", layer["p"], factors.join(" + "));
        }
    }
    Ok(())
}

fn describe_factor(f: &serde_json::Value) -> String {
    let label: Vec<u64> = f["label"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    let parts: Vec<String> = label.iter().map(|x| x.to_string()).collect();
    let mult = f["mult"].as_u64().unwrap();
    let twist = &f["twist"];
    let head = if mult == 1 {
        String::new()
    } else {
        format!("{mult}x")
    };
    format!("{head}L({}) ({twist})", parts.join(","))
}

fn cmd_verma(cli: &Cli, instance: &Instance, dual: bool) -> Result<(), CliError> {
    let (ctx, a) = instance.resolve()?;
    let module =
        weight_filtration(&ctx, &a, dual).map_err(|e| CliError::Usage(e.to_string()))?;
    let v = module.to_json();
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
        return Ok(());
    }
    let name = if dual { "dual Verma" } else { "Verma" };
    println!("weight filtration of the {name} module of {} in {}", a, ctx);
    for layer in v["layers"].as_array().unwrap() {
        let factors: Vec<String> = layer["factors"]
            .as_array()
            .unwrap()
            .iter()
            .map(describe_factor)
            .collect();
        println!("  p={}: {}", layer["p"], factors.join(" + "));
    }
    Ok(())
}

fn cmd_gc(cli: &Cli, instance: &Instance) -> Result<(), CliError> {
    let (ctx, a) = instance.resolve()?;
    let complex = cousin_terms(&ctx, &a)?;
    if cli.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&complex.to_json()).unwrap()
        );
        return Ok(());
    }
    println!("Cousin complex of {} in {}", a, ctx);
    for (j, summands) in complex.terms() {
        let names: Vec<String> = summands.iter().map(|b| format!("N{b}")).collect();
        println!("  degree {j}: {}", names.join(" + "));
    }
    println!("  {} differential pair(s)", complex.differentials().len());
    Ok(())
}

fn cmd_det(
    cli: &Cli,
    m: usize,
    n: usize,
    rank: usize,
    closed_form_only: bool,
) -> Result<(), CliError> {
    let inst = DetInstance::new(m, n, rank).map_err(|e| CliError::Usage(e.to_string()))?;
    let enumerated = if closed_form_only {
        None
    } else {
        Some(enumerated_multiplicities(&inst).map_err(|e| CliError::Usage(e.to_string()))?)
    };
    let mut per_s = Vec::new();
    let mut all_match = true;
    for s in 0..=rank {
        let closed = closed_form_multiplicity(&inst, s).map_err(|e| CliError::Usage(e.to_string()))?;
        match &enumerated {
            None => per_s.push(json!({ "s": s, "gen_poly": closed.to_json() })),
            Some(e) => {
                let stratum = &e[&s];
                if stratum.gen_poly != closed || !stratum.weights_ok {
                    all_match = false;
                }
                per_s.push(json!({
                    "s": s,
                    "gen_poly": stratum.gen_poly.to_json(),
                    "weights_ok": stratum.weights_ok,
                }));
            }
        }
    }
    let match_field = if closed_form_only {
        "skipped"
    } else if all_match {
        "ok"
    } else {
        "mismatch"
    };
    let out = json!({ "per_s": per_s, "match": match_field });
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("determinantal strata of rank <= {rank} in {m}x{n} matrices");
        for s in 0..=rank {
            let closed = closed_form_multiplicity(&inst, s).unwrap();
            println!("  s={s}: {closed}");
        }
        println!("  enumeration: {match_field}");
    }
    if !closed_form_only && !all_match {
        return Err(CliError::Mismatch(format!(
            "determinantal enumeration disagrees with the closed form at m={m} n={n} rank={rank}"
        )));
    }
    Ok(())
}

fn parse_budget(explicit: Option<&str>) -> Result<OracleBudget, CliError> {
    let spec = match explicit {
        Some(s) => Some(s.to_string()),
        None => std::env::var(BUDGET_ENV).ok(),
    };
    let mut budget = OracleBudget::default();
    if let Some(spec) = spec {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad budget component `{s}`")))
        };
        match parts.as_slice() {
            [basis] => budget.max_basis = parse(basis)?,
            [dim, basis] => {
                budget.max_dim = parse(dim)?;
                budget.max_basis = parse(basis)?;
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "budget must be MAX_BASIS or MAX_DIM,MAX_BASIS, got `{spec}`"
                )))
            }
        }
    }
    Ok(budget)
}

fn cmd_verify(
    cli: &Cli,
    k: usize,
    n: usize,
    partition: Option<&str>,
    sweep: bool,
    oracle_budget: Option<&str>,
    from_index: usize,
) -> Result<(), CliError> {
    let ctx = GrassContext::new(k, n).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = parse_budget(oracle_budget)?;
    let instances: Vec<Partition> = match (partition, sweep) {
        (Some(text), false) => {
            let a = parse_partition(text).map_err(|e| CliError::Usage(e.to_string()))?;
            ctx.check_fits(&a).map_err(|e| CliError::Usage(e.to_string()))?;
            vec![a]
        }
        (None, true) => ctx.partitions(),
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --partition or --sweep".to_string(),
            ))
        }
    };
    let total = instances.len();
    let mut first_failure: Option<String> = None;
    for (index, a) in instances.into_iter().enumerate().skip(from_index) {
        let report = verify_instance(&ctx, &a, &budget)?;
        if cli.format == Format::Json {
            let mut v = report.to_json(&ctx, &a);
            v["index"] = json!(index);
            println!("{}", serde_json::to_string(&v).unwrap());
        } else {
            let status = if report.ok() { "ok" } else { "MISMATCH" };
            println!("[{}/{}] {}: {status}", index + 1, total, a);
        }
        if !report.ok() && first_failure.is_none() {
            first_failure = Some(format!("{a} in {ctx}"));
        }
    }
    match first_failure {
        None => Ok(()),
        Some(instance) => Err(CliError::Mismatch(instance)),
    }
}
