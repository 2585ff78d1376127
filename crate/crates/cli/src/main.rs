use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use quandlekit::alexmod::{alexander_polynomial, alexander_presentation, crowell_data, longitude, reduced_presentation};
use quandlekit::finquot::{FiniteRing, IsoOptions};
use quandlekit::linkdiag::{catalog, Diagram};
use quandlekit::quandle::mq_of_link;
use quandlekit::verify::{self, VerifyOptions};

const EXIT_ERROR: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "quandlekit", version, about = "Alexander modules, Crowell maps and medial quandles of link diagrams")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Characteristic of the coefficient ring F_p[t]/(q).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Modulus of the coefficient ring, e.g. "t^2+t+1".
    #[arg(long, global = true)]
    q: Option<String>,
    /// Largest finite module enumerated by isomorphism search.
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    budget_module: u64,
    /// Largest finite quandle built or compared.
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    budget_quandle: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Presentations, Crowell data, longitudes and the Alexander polynomial.
    Alexander { link: String },
    /// Finite shadow of the medial quandle (default ring F_2[t]/(t^2 + t + 1)).
    Medial { link: String },
    /// Compare module and medial-quandle shadows of two links ring by ring.
    Compare { first: String, second: String },
    /// Run the named property checks.
    Verify {
        /// Run every check on every catalog link (the default).
        #[arg(long)]
        all: bool,
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long = "link")]
        links: Vec<String>,
        /// Treat known deviations as failures.
        #[arg(long)]
        strict: bool,
    },
    /// Built-in and user catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] quandlekit::Error),
    #[error("{0}")]
    Input(String),
}

impl<E: Into<quandlekit::Error>> From<E> for Wrapped {
    fn from(e: E) -> Self {
        Wrapped(CliError::Core(e.into()))
    }
}

/// Lets `?` convert every library error type.
struct Wrapped(CliError);

impl From<CliError> for Wrapped {
    fn from(e: CliError) -> Self {
        Wrapped(e)
    }
}

type Result<T> = std::result::Result<T, Wrapped>;

fn input_error(msg: impl Into<String>) -> Wrapped {
    Wrapped(CliError::Input(msg.into()))
}

fn user_catalog() -> Result<Vec<(PathBuf, Diagram)>> {
    let Some(dir) = std::env::var_os("QUANDLEKIT_CATALOG") else {
        return Ok(Vec::new());
    };
    let entries = std::fs::read_dir(&dir).map_err(|e| input_error(format!("{}: {e}", Path::new(&dir).display())))?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_file()).collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(&p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        let d = Diagram::parse(&text).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        out.push((p, d));
    }
    Ok(out)
}

/// A file path, a built-in catalog name, or a name from the user catalog.
fn resolve(source: &str) -> Result<Diagram> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{source}: {e}")))?;
        return Ok(Diagram::parse(&text)?);
    }
    if let Some(d) = catalog::get(source) {
        return Ok(d);
    }
    user_catalog()?
        .into_iter()
        .map(|(_, d)| d)
        .find(|d| d.name() == source)
        .ok_or_else(|| input_error(format!("'{source}' is neither a file nor a catalog entry")))
}

fn all_links() -> Result<Vec<Diagram>> {
    let mut links = catalog::all();
    links.extend(user_catalog()?.into_iter().map(|(_, d)| d));
    Ok(links)
}

impl Config {
    /// The ring given by `--p`/`--q`, if either is set.
    fn ring(&self) -> Result<Option<FiniteRing>> {
        if self.p.is_none() && self.q.is_none() {
            return Ok(None);
        }
        let p = self.p.unwrap_or(2);
        let q = self.q.as_deref().unwrap_or("t^2 + t + 1");
        Ok(Some(FiniteRing::parse(p, q)?))
    }

    fn rings(&self) -> Result<Vec<FiniteRing>> {
        Ok(match self.ring()? {
            Some(r) => vec![r],
            None => FiniteRing::defaults(),
        })
    }

    /// Writes JSON or text to stdout. A closed pipe is not an error.
    fn print(&self, value: serde_json::Value, text: impl FnOnce() -> String) {
        let out = if self.json {
            serde_json::to_string_pretty(&value).expect("JSON values serialize")
        } else {
            text()
        };
        let _ = writeln!(std::io::stdout().lock(), "{out}");
    }
}

fn cmd_alexander(cfg: &Config, link: &str) -> Result<u8> {
    let d = resolve(link)?;
    let full = alexander_presentation(&d);
    let reduced = reduced_presentation(&d);
    let crowell = crowell_data(&d, false);
    let delta = alexander_polynomial(&reduced)?;
    let mut longitudes = Vec::new();
    for i in 1..=d.mu() {
        longitudes.push(longitude(&d, i)?.display_with(reduced.generators()));
    }
    let phi: Vec<String> = crowell.phi.iter().map(|p| p.to_string()).collect();
    let value = json!({
        "schema": 1,
        "link": d.name(),
        "components": d.mu(),
        "presentation": full.to_json(),
        "reduced_presentation": reduced.to_json(),
        "crowell": {"phi": phi, "ztail": crowell.ztail},
        "longitudes": longitudes,
        "alexander_polynomial": delta.to_string(),
    });
    cfg.print(value, || {
        let mut s = format!("link {} ({} component(s))\n\npresentation\n{full}\nreduced presentation\n{reduced}\nCrowell map\n", d.name(), d.mu());
        for (g, (p, z)) in full.generators().iter().zip(phi.iter().zip(&crowell.ztail)) {
            s.push_str(&format!("  {g} -> ({p}, {z:?})\n"));
        }
        s.push_str("\nlongitudes\n");
        for (i, l) in longitudes.iter().enumerate() {
            s.push_str(&format!("  chi_{} = {l}\n", i + 1));
        }
        s.push_str(&format!("\nΔ(t) = {delta}"));
        s
    });
    Ok(0)
}

fn cmd_medial(cfg: &Config, link: &str) -> Result<u8> {
    let d = resolve(link)?;
    let ring = match cfg.ring()? {
        Some(r) => r,
        None => FiniteRing::parse(2, "t^2 + t + 1")?,
    };
    let q = mq_of_link(&d, &ring, cfg.budget_quandle)?;
    q.check_axioms()?;
    let mut value = q.to_json();
    value["link"] = json!(d.name());
    value["ring"] = json!(ring.to_string());
    value["block_sizes"] = json!(q.block_sizes());
    cfg.print(value, || {
        let mut s = format!("medial quandle of {} over {ring}\n{} element(s), block sizes {:?}\n\n", d.name(), q.size(), q.block_sizes());
        for (i, e) in q.elements().iter().enumerate() {
            s.push_str(&format!("  {i}: {e}\n"));
        }
        s.push('\n');
        s.push_str(q.cayley_table().trim_end());
        s
    });
    Ok(0)
}

fn show_iso(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "isomorphic",
        Some(false) => "not isomorphic",
        None => "over budget",
    }
}

fn cmd_compare(cfg: &Config, first: &str, second: &str) -> Result<u8> {
    let d1 = resolve(first)?;
    let d2 = resolve(second)?;
    let opts = IsoOptions { max_elements: cfg.budget_module, ..Default::default() };
    let c = verify::compare(&d1, &d2, &cfg.rings()?, opts, cfg.budget_quandle)?;
    let mut value = serde_json::to_value(&c).expect("comparison serializes");
    value["schema"] = json!(1);
    value["consistent"] = json!(c.consistent());
    value["distinguishing_rings"] = json!(c.distinguishing_rings());
    cfg.print(value, || {
        let mut s = format!("{} vs {}\n", c.first, c.second);
        for r in &c.rings {
            s.push_str(&format!(
                "  {:<24} dim M {}/{}  dim ker {}/{}  modules {}  quandles {}{}\n",
                r.ring,
                r.module_dims.0,
                r.module_dims.1,
                r.kernel_dims.0,
                r.kernel_dims.1,
                show_iso(r.modules_isomorphic),
                show_iso(r.quandles_isomorphic),
                if r.consistent { "" } else { "  INCONSISTENT" }
            ));
        }
        let dist = c.distinguishing_rings();
        if dist.is_empty() {
            s.push_str("not distinguished");
        } else {
            s.push_str(&format!("distinguished in {}", dist.join(", ")));
        }
        if !c.asserted {
            s.push_str("\n(isomorphism correspondence not asserted for this pair)");
        }
        s
    });
    Ok(if !c.consistent() {
        EXIT_VERIFY
    } else if c.any_budget_exceeded() {
        EXIT_BUDGET
    } else {
        0
    })
}

fn cmd_verify(cfg: &Config, all: bool, checks: &[String], links: &[String], strict: bool) -> Result<u8> {
    let names: Vec<&str> = if all { Vec::new() } else { checks.iter().map(String::as_str).collect() };
    let diagrams = if links.is_empty() || all {
        all_links()?
    } else {
        links.iter().map(|l| resolve(l)).collect::<Result<_>>()?
    };
    let opts = VerifyOptions {
        rings: cfg.rings()?,
        quandle_budget: cfg.budget_quandle,
        module_budget: cfg.budget_module,
        seed: cfg.seed,
        ..Default::default()
    };
    let report = verify::run(&names, &diagrams, &opts)?;
    cfg.print(report.to_json(), || report.to_string());
    Ok(if report.is_failure(strict) { EXIT_VERIFY } else { 0 })
}

fn cmd_catalog(cfg: &Config, action: &CatalogAction) -> Result<u8> {
    match action {
        CatalogAction::List => {
            let mut rows: Vec<(String, String)> = catalog::names()
                .map(|n| (n.to_string(), catalog::entry(n).expect("listed").summary.to_string()))
                .collect();
            for (path, d) in user_catalog()? {
                rows.push((d.name().to_string(), format!("user entry {}", path.display())));
            }
            let value = json!({
                "schema": 1,
                "entries": rows.iter().map(|(n, s)| json!({"name": n, "summary": s})).collect::<Vec<_>>(),
            });
            cfg.print(value, || rows.iter().map(|(n, s)| format!("{n:<16} {s}")).collect::<Vec<_>>().join("\n"));
        }
        CatalogAction::Show { name } => {
            let d = resolve(name)?;
            let value = json!({"schema": 1, "name": d.name(), "components": d.mu(), "text": d.to_text()});
            cfg.print(value, || d.to_text().trim_end().to_string());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.cfg;
    let result = match &cli.command {
        Command::Alexander { link } => cmd_alexander(cfg, link),
        Command::Medial { link } => cmd_medial(cfg, link),
        Command::Compare { first, second } => cmd_compare(cfg, first, second),
        Command::Verify { all, checks, links, strict } => cmd_verify(cfg, *all, checks, links, *strict),
        Command::Catalog { action } => cmd_catalog(cfg, action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Wrapped(e)) => {
            eprintln!("error: {e}");
            let budget = matches!(&e, CliError::Core(c) if c.is_budget());
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_ERROR })
        }
    }
}
