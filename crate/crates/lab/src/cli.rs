//! `wavelab list` and `wavelab run <demo>...|all`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::demos::{list_demos, run_demo, Demo, DemoError, DemoOutput, Params};
use crate::report::write_report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wavelab", version, about = "Run numerical demonstrations and write JSON/CSV reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized demo.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Directory receiving `<demo>.json` and CSV plot data.
    #[arg(long, global = true, default_value = "./reports")]
    out_dir: PathBuf,

    /// Point count of the reference grid (gauss-to-cauchy target, moment-tomography).
    #[arg(long, global = true)]
    grid_n: Option<usize>,

    /// Half-width of the reference grid (gauss-to-cauchy target, moment-tomography).
    #[arg(long, global = true)]
    grid_l: Option<f64>,

    /// Write JSON reports only: no CSV files and no summary lines.
    #[arg(long, global = true)]
    json_only: bool,

    /// Run the selected demos concurrently.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the demo catalog.
    List,
    /// Run one or more demos by name, or `all`.
    Run {
        #[arg(required = true, value_name = "DEMO")]
        demos: Vec<String>,
    },
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match &cli.command {
        Command::List => {
            list(cli.json_only);
            EXIT_PASS
        }
        Command::Run { demos } => match resolve(demos) {
            Ok(selected) => run(&cli, &selected),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
    }
}

fn list(json: bool) {
    let catalog = list_demos();
    if json {
        println!("{}", serde_json::to_string_pretty(&catalog).expect("catalog serializes"));
        return;
    }
    for e in catalog {
        println!("{:<18} {:<45} {}", e.name, e.anchor, e.description);
    }
}

fn resolve(names: &[String]) -> Result<Vec<Demo>, DemoError> {
    if names.iter().any(|n| n == "all") {
        return Ok(Demo::ALL.to_vec());
    }
    let mut out = Vec::new();
    for n in names {
        let d: Demo = n.parse()?;
        if !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(out)
}

fn run(cli: &Cli, demos: &[Demo]) -> i32 {
    let params = Params { seed: cli.seed, grid_n: cli.grid_n, grid_l: cli.grid_l };
    let results: Vec<Result<DemoOutput, DemoError>> = if cli.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = demos.iter().map(|&d| s.spawn(move || run_demo(d, &params))).collect();
            handles.into_iter().map(|h| h.join().expect("demo thread panicked")).collect()
        })
    } else {
        demos.iter().map(|&d| run_demo(d, &params)).collect()
    };

    let mut code = EXIT_PASS;
    for (demo, result) in demos.iter().zip(results) {
        match result.map_err(|e| e.to_string()).and_then(|out| emit(&out, &cli.out_dir, cli.json_only)) {
            Ok(true) => {}
            Ok(false) => code = code.max(EXIT_CHECK_FAILURE),
            Err(e) => {
                eprintln!("error: {demo}: {e}");
                code = EXIT_USAGE;
            }
        }
    }
    code
}

/// Write the report (and CSV unless `json_only`); returns whether every check passed.
fn emit(out: &DemoOutput, dir: &Path, json_only: bool) -> Result<bool, String> {
    let path = write_report(&out.report, dir).map_err(|e| format!("writing report: {e}"))?;
    if !json_only {
        for s in &out.series {
            s.write_to(dir).map_err(|e| format!("writing {}: {e}", s.file_name))?;
        }
        let r = &out.report;
        let passed = r.checks.iter().filter(|c| c.pass).count();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<18} {passed}/{} checks  {} ms  {}",
            r.demo,
            r.checks.len(),
            r.duration_ms,
            path.display()
        );
        for c in r.failures() {
            println!("     failed: {} (expected {}, observed {}, tol {:e})", c.name, c.expected, c.observed, c.tol);
        }
    }
    Ok(out.report.passed())
}
