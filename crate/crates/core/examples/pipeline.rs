//! Runs every CLI command on `examples/pipeline.toml` into a temporary
//! directory and lists the artifacts.

use expander_lcc::cli::config::RunConfig;
use expander_lcc::cli::{run_command, Command};

fn main() -> expander_lcc::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pipeline.toml");
    let mut cfg = RunConfig::load(path.as_ref())?;
    let dir = std::env::temp_dir().join("expander-lcc-pipeline");
    cfg.output.dir = dir.clone();
    for cmd in [
        Command::Build,
        Command::Encode,
        Command::Corrupt,
        Command::Correct,
        Command::Experiment,
        Command::Walkstats,
    ] {
        println!("{cmd:?}: {:?}", run_command(cmd, &cfg)?);
    }
    let mut names: Vec<_> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect();
    names.sort();
    println!("artifacts in {}: {}", dir.display(), names.join(", "));
    Ok(())
}
