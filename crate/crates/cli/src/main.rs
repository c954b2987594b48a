use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holo24::affine::module_table_text;
use holo24::lattice;
use holo24::qseries::{hauptmodul, hauptmodul_s_power};
use holo24_cli::scenario::parse_ideal;
use holo24_cli::{render_summary, render_text, run_scenario, scenario_paths, RunOptions, ScenarioFile};

const MODULE_TABLES: &[&str] = &["E6:3", "D7:3", "E7:3", "C5:3", "A5:1", "A3:1", "G2:1", "G2:2", "A1:1"];

#[derive(Parser)]
#[command(name = "holo24", version, about = "Checks Z2-orbifold constructions of holomorphic c = 24 VOAs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run scenario files, or every *.toml in the given directories.
    Run {
        #[arg(default_value = "scenarios")]
        paths: Vec<PathBuf>,
        /// Only run the scenario with this name.
        #[arg(long)]
        scenario: Option<String>,
        /// Truncation of the fitted character, in half-units of the exponent.
        #[arg(long, default_value_t = 8)]
        trunc: i64,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Show expected values and series coefficients.
        #[arg(short, long)]
        verbose: bool,
    },
    /// List the scenarios in a directory.
    List {
        #[arg(default_value = "scenarios")]
        dir: PathBuf,
    },
    /// Print conformal-weight tables, the lattice Gram data or q-series.
    DumpTables {
        /// Module table to print, as TYPE:LEVEL; repeatable.
        #[arg(long = "module")]
        modules: Vec<String>,
        /// Print the basis and Gram matrix of the Niemeier lattice.
        #[arg(long)]
        lattice: bool,
        /// Print f, f(S), f(S)^-1 and f(S)^-2.
        #[arg(long)]
        series: bool,
        #[arg(long, default_value_t = 8)]
        trunc: i64,
    },
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<ScenarioFile>, String> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            files.extend(scenario_paths(p).map_err(|e| e.to_string())?);
        } else {
            files.push(p.clone());
        }
    }
    files
        .iter()
        .map(|f| ScenarioFile::load(f).map_err(|e| format!("parse failure: {e}")))
        .collect()
}

fn run(paths: &[PathBuf], filter: Option<&str>, opts: RunOptions, json: bool, verbose: bool) -> ExitCode {
    let mut files = match load_all(paths) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if let Some(name) = filter {
        files.retain(|f| f.name() == name);
        if files.is_empty() {
            eprintln!("no scenario named {name:?}");
            return ExitCode::from(2);
        }
    }
    let reports: Vec<_> = files.iter().map(|f| run_scenario(f, opts)).collect();
    let passed = reports.iter().all(|r| r.passed());
    if json {
        let v = serde_json::json!({ "passed": passed, "scenarios": reports });
        println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
    } else {
        for r in &reports {
            print!("{}", render_text(r, verbose));
        }
        println!();
        print!("{}", render_summary(&reports));
        println!("{} of {} scenarios passed", reports.iter().filter(|r| r.passed()).count(), reports.len());
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn list(dir: &PathBuf) -> ExitCode {
    let files = match load_all(std::slice::from_ref(dir)) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    for f in files {
        let flag = if f.assumptions.is_empty() { "" } else { "  [assumption]" };
        println!(
            "{:<12} {:<26} -> {:<26} {}{flag}",
            f.name(),
            f.scenario.ambient,
            f.scenario.expected_result,
            f.path.display()
        );
    }
    ExitCode::SUCCESS
}

fn dump(modules: &[String], lat: bool, series: bool, trunc: i64) -> Result<(), String> {
    let mut modules = modules.to_vec();
    if modules.is_empty() && !lat && !series {
        modules = MODULE_TABLES.iter().map(|s| s.to_string()).collect();
    }
    for m in &modules {
        let (t, k) = parse_ideal(m)?;
        println!("# {t}:{k}");
        print!("{}", module_table_text(t, k).map_err(|e| e.to_string())?);
    }
    if lat {
        let n = lattice::build_niemeier().map_err(|e| e.to_string())?;
        print!("{}", n.dump());
    }
    if series {
        let t = trunc.max(1);
        println!("# f\n{}", hauptmodul(t).map_err(|e| e.to_string())?.dump());
        for n in [1, -1, -2] {
            let s = hauptmodul_s_power(n, t).map_err(|e| e.to_string())?;
            println!("# f(S)^{n}\n{}", s.dump());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run {
            paths,
            scenario,
            trunc,
            json,
            verbose,
        } => run(&paths, scenario.as_deref(), RunOptions { trunc }, json, verbose),
        Cmd::List { dir } => list(&dir),
        Cmd::DumpTables {
            modules,
            lattice,
            series,
            trunc,
        } => match dump(&modules, lattice, series, trunc) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
    }
}
