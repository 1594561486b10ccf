use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use oca_core::ca::{is_oca_pair, latin_square};
use oca_core::codes::classify_code;
use oca_core::lcs::{linear_components, span_basis};
use oca_core::sbox::is_multipermutation;
use oca_core::search::{self, aggregate, MAX_DIAMETER, MIN_DIAMETER};
use oca_core::{report, LocalRule, SBox, SearchReport};

#[derive(Parser)]
#[command(
    name = "oca-sbox",
    version,
    about = "S-boxes from orthogonal cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive search over all pairs of bipermutive rules of one diameter.
    Search {
        #[arg(short, long, value_parser = diameter_parser())]
        diameter: usize,
        /// Worker threads (defaults to the number of cores).
        #[arg(short, long, env = "OCA_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        /// Write the report here; the aggregate table then goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Orthogonality and S-box analysis of one pair of rules.
    Analyze {
        #[arg(short, long, value_parser = diameter_parser())]
        diameter: usize,
        /// First rule number (decimal or 0x-hex).
        #[arg(value_parser = parse_rule_number)]
        rule_f: u128,
        /// Second rule number (decimal or 0x-hex).
        #[arg(value_parser = parse_rule_number)]
        rule_g: u128,
    },
    /// Truth table, ANF and cryptographic measures of one rule.
    RuleInfo {
        #[arg(short, long, value_parser = diameter_parser())]
        diameter: usize,
        #[arg(value_parser = parse_rule_number)]
        rule: u128,
    },
    /// Re-aggregate a JSON report written by `search`.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

fn diameter_parser() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::new().range(MIN_DIAMETER as u64..=MAX_DIAMETER as u64)
}

fn parse_rule_number(s: &str) -> std::result::Result<u128, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u128::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid rule number {s:?}: {e}"))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Search {
            diameter,
            workers,
            output,
            format,
        } => cmd_search(diameter, workers, output, format),
        Command::Analyze {
            diameter,
            rule_f,
            rule_g,
        } => cmd_analyze(diameter, rule_f, rule_g),
        Command::RuleInfo { diameter, rule } => cmd_rule_info(diameter, rule),
        Command::Classify { input, format } => cmd_classify(input, format),
    }
}

fn load_rule(number: u128, diameter: usize) -> LocalRule {
    LocalRule::from_rule_number(number, diameter)
        .unwrap_or_else(|e| Cli::command().error(ErrorKind::ValueValidation, e).exit())
}

fn render(report: &SearchReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => report::to_json(report)?,
        Format::Csv => report::to_csv(report)?,
        Format::Table => report::render_table(report),
    })
}

fn cmd_search(
    diameter: usize,
    workers: Option<u64>,
    output: Option<PathBuf>,
    format: Format,
) -> Result<()> {
    let workers = workers.map_or_else(search::default_workers, |w| w as usize);
    let report = search::run_search(diameter, workers)?;
    let mut stdout = std::io::stdout().lock();
    match output {
        Some(path) => {
            fs::write(&path, render(&report, format)?)
                .with_context(|| format!("cannot write report to {}", path.display()))?;
            write!(stdout, "{}", report::render_table(&report))?;
        }
        None => write!(stdout, "{}", render(&report, format)?)?,
    }
    Ok(())
}

fn cmd_rule_info(diameter: usize, number: u128) -> Result<()> {
    let rule = load_rule(number, diameter);
    let table: String = rule
        .table()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect();
    println!("rule:           {number} (0x{number:x}), diameter {diameter}");
    println!("truth table:    {table}");
    println!("anf:            {}", rule.anf());
    println!("degree:         {}", rule.degree());
    println!("balanced:       {}", rule.is_balanced());
    println!("nonlinearity:   {}", rule.nonlinearity());
    println!(
        "linear:         {}",
        if rule.is_linear() {
            "yes"
        } else if rule.is_affine() {
            "affine"
        } else {
            "no"
        }
    );
    match rule.generating_function() {
        Some(g) => {
            println!("bipermutive:    yes, g = {}", g.anf());
            if let Ok(poly) = rule.rule_polynomial() {
                println!("polynomial:     {poly}");
            }
        }
        None => println!("bipermutive:    no"),
    }
    Ok(())
}

fn cmd_analyze(diameter: usize, number_f: u128, number_g: u128) -> Result<()> {
    let f = load_rule(number_f, diameter);
    let g = load_rule(number_g, diameter);
    let rules = [("f", number_f, &f), ("g", number_g, &g)];
    if let Some((_, number, _)) = rules.iter().find(|(_, _, rule)| !rule.is_bipermutive()) {
        bail!("rule {number} (d={diameter}) is not bipermutive");
    }
    for (label, number, rule) in rules {
        println!(
            "{label}: rule {number}, anf {}, nonlinearity {}",
            rule.anf(),
            rule.nonlinearity()
        );
    }
    if !is_oca_pair(&f, &g)? {
        println!("not orthogonal");
        return Ok(());
    }
    println!("orthogonal");
    let sbox = SBox::from_oca(&f, &g)?;
    let members = linear_components(&sbox);
    let code = span_basis(sbox.n(), &members)?;
    let class = classify_code(&code);
    println!(
        "latin square f:\n{}",
        latin_square(&f)?.to_grid_string().trim_end()
    );
    println!(
        "latin square g:\n{}",
        latin_square(&g)?.to_grid_string().trim_end()
    );
    println!("sbox:             {}", sbox.to_hex_line());
    println!("bijective:        {}", sbox.is_bijective());
    println!("multipermutation: {}", is_multipermutation(&f, &g)?);
    println!("nonlinearity:     {}", sbox.nonlinearity());
    println!("degree:           {}", sbox.degree());
    println!("lcs members:      {}", members.len());
    println!("lcs dim:          {}", code.dimension());
    for row in code.basis_strings() {
        println!("  {row}");
    }
    match &class.generator {
        Some(generator) => println!(
            "code:             polynomial, generator {generator}, {}",
            if class.is_cyclic {
                "cyclic"
            } else {
                "not cyclic"
            }
        ),
        None => println!("code:             not polynomial"),
    }
    Ok(())
}

fn cmd_classify(input: PathBuf, format: Format) -> Result<()> {
    let text =
        fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
    let mut report = report::from_json(&text)?;
    report.aggregation = aggregate(&report.records);
    print!("{}", render(&report, format)?);
    Ok(())
}
