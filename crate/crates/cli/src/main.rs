mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use fbm_hull::verification::{select_experiments, staircase_trace, ExperimentConfig};
use fbm_hull::RandomSeed;

use output::{CliError, ManifestEntry, OutputDir, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "fbm-hull", version, about = "Fractional Brownian motion hull simulations and checks")]
struct Cli {
    /// JSON configuration file; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed, overriding the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads, overriding the config.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write sampled paths as CSV (t, x_1..x_d).
    Simulate,
    /// Run verification experiments: t1, t2, t3, reversibility, lamperti,
    /// scaling, anchor, generator, geometry or all.
    Verify { selector: String },
    /// Write the hull functional step trace of one path.
    Staircase {
        #[arg(long, default_value_t = 0)]
        path: u64,
    },
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Input("--workers must be at least 1".into()));
        }
        cfg.workers = w;
    }
    cfg.validate().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(cfg)
}

fn simulate(cfg: &ExperimentConfig, out: &OutputDir) -> Result<Vec<ManifestEntry>, CliError> {
    let ens = cfg.ensemble()?;
    let sampler = ens.sampler()?;
    let mut files = vec![];
    for i in 0..ens.paths {
        let path = sampler.sample(ens.seed, i as u64);
        let mut csv = String::from("t");
        for j in 1..=path.dim() {
            csv.push_str(&format!(",x_{j}"));
        }
        csv.push('\n');
        for (k, p) in path.samples.iter().enumerate() {
            csv.push_str(&path.grid.time(k).to_string());
            for v in p {
                csv.push(',');
                csv.push_str(&v.to_string());
            }
            csv.push('\n');
        }
        let name = format!("path_{i:05}.csv");
        out.write(&name, &csv)?;
        files.push(name);
    }
    Ok(vec![ManifestEntry { name: "simulate".into(), files, wall_time_secs: 0.0 }])
}

fn staircase(cfg: &ExperimentConfig, out: &OutputDir, index: u64) -> Result<Vec<ManifestEntry>, CliError> {
    let ens = cfg.ensemble()?;
    let trace = staircase_trace(&ens, index)?;
    let mut csv = String::from("t,volume,surface,diameter\n");
    for p in trace {
        let f = p.functionals;
        csv.push_str(&format!("{},{},{},{}\n", p.t, f.volume, f.surface, f.diameter));
    }
    out.write("staircase.csv", &csv)?;
    Ok(vec![ManifestEntry { name: "staircase".into(), files: vec!["staircase.csv".into()], wall_time_secs: 0.0 }])
}

/// Runs the selected experiments; returns manifest entries and whether
/// every check passed.
fn verify(cfg: &ExperimentConfig, out: &OutputDir, selector: &str) -> Result<(Vec<ManifestEntry>, bool), CliError> {
    let experiments = select_experiments(selector).map_err(|e| CliError::Input(e.to_string()))?;
    let mut entries = vec![];
    let mut reports = vec![];
    for exp in experiments {
        let start = Instant::now();
        let report = exp.run(cfg)?;
        let mut files = vec![];
        for table in &report.tables {
            let name = format!("{}_{}.csv", report.experiment, table.name);
            out.write(&name, &table.to_csv())?;
            files.push(name);
        }
        eprintln!(
            "{:<14} {}  ({:.1}s)",
            report.experiment,
            if report.passed() { "pass" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        entries.push(ManifestEntry { name: report.experiment.clone(), files, wall_time_secs: start.elapsed().as_secs_f64() });
        reports.push(report);
    }
    let all_passed = reports.iter().all(|r| r.passed());
    out.write_json("summary.json", &output::summary(&reports))?;
    out.write_json("failures.json", &output::failures(&reports))?;
    Ok((entries, all_passed))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = load_config(cli)?;
    let out = OutputDir::create(&cli.out)?;
    let start = Instant::now();
    let (command, entries, passed) = match &cli.command {
        Command::Simulate => ("simulate".to_string(), simulate(&cfg, &out)?, true),
        Command::Staircase { path } => ("staircase".to_string(), staircase(&cfg, &out, *path)?, true),
        Command::Verify { selector } => {
            let (entries, passed) = verify(&cfg, &out, selector)?;
            (format!("verify {selector}"), entries, passed)
        }
    };
    let manifest = RunManifest {
        schema_version: 1,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command,
        master_seed: RandomSeed::new(cfg.seed).master,
        wall_time_secs: start.elapsed().as_secs_f64(),
        config: cfg,
        outputs: entries,
    };
    out.write_json("manifest.json", &manifest)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
      "steps": 64,
      "paths": 3,
      "experiments": {
        "t1": { "steps": 256, "paths": 40 },
        "geometry": { "hull_instances": 50, "cover_sets": 20, "hausdorff_triples": 20 }
      }
    }"#;

    fn invoke(dir: &std::path::Path, config: &str, args: &[&str]) -> Result<bool, CliError> {
        let cfg = dir.join("config.json");
        std::fs::write(&cfg, config).unwrap();
        let mut argv = vec!["fbm-hull".to_string(), "--config".into(), cfg.display().to_string()];
        argv.extend(["--out".to_string(), dir.join("out").display().to_string()]);
        argv.extend(args.iter().map(|a| a.to_string()));
        run(&Cli::try_parse_from(argv).unwrap())
    }

    fn read(dir: &std::path::Path, name: &str) -> String {
        std::fs::read_to_string(dir.join("out").join(name)).unwrap()
    }

    #[test]
    fn malformed_configs_are_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        for bad in ["{ not json", r#"{ "hurst": 1.5 }"#, r#"{ "steps": 100 }"#, r#"{ "unknown_key": 1 }"#] {
            assert!(matches!(invoke(dir.path(), bad, &["simulate"]), Err(CliError::Input(_))), "{bad}");
        }
        assert!(matches!(invoke(dir.path(), "{}", &["verify", "t9"]), Err(CliError::Input(_))));
        assert!(matches!(invoke(dir.path(), "{}", &["--workers", "0", "simulate"]), Err(CliError::Input(_))));
    }

    #[test]
    fn simulate_writes_paths_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        assert!(invoke(dir.path(), SMALL, &["--seed", "7", "simulate"]).unwrap());
        for i in 0..3 {
            let text = read(dir.path(), &format!("path_{i:05}.csv"));
            let lines: Vec<&str> = text.lines().collect();
            assert_eq!(lines[0], "t,x_1,x_2");
            assert_eq!(lines.len(), 66);
            assert_eq!(lines[1], "0,0,0");
            assert!(lines[65].starts_with("1,"));
        }
        let manifest: serde_json::Value = serde_json::from_str(&read(dir.path(), "manifest.json")).unwrap();
        assert_eq!(manifest["command"], "simulate");
        assert_eq!(manifest["config"]["seed"], 7);
    }

    #[test]
    fn staircase_trace_is_non_decreasing() {
        let dir = tempfile::tempdir().unwrap();
        assert!(invoke(dir.path(), SMALL, &["staircase", "--path", "2"]).unwrap());
        let text = read(dir.path(), "staircase.csv");
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,volume,surface,diameter"));
        let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
        assert_eq!(rows.len(), 65);
        for w in rows.windows(2) {
            assert!(w[1][0] > w[0][0]);
            assert!((1..4).all(|c| w[1][c] >= w[0][c]));
        }
    }

    #[test]
    fn verify_writes_tables_and_summaries() {
        let dir = tempfile::tempdir().unwrap();
        let passed = invoke(dir.path(), SMALL, &["verify", "t1"]).unwrap();
        assert_eq!(read(dir.path(), "t1_curve.csv").lines().next(), Some("hurst,k,p_hat,stderr"));
        let summary: serde_json::Value = serde_json::from_str(&read(dir.path(), "summary.json")).unwrap();
        assert_eq!(summary["passed"], passed);
        let failures: serde_json::Value = serde_json::from_str(&read(dir.path(), "failures.json")).unwrap();
        assert_eq!(failures["failed"].as_array().unwrap().is_empty(), passed);
        assert!(invoke(dir.path(), SMALL, &["verify", "geometry"]).unwrap());
    }
}
