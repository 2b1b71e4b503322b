use clap::Parser;
use qfront_cli::commands::{run, Cli};

const THREADS_VAR: &str = "QFRONT_THREADS";

fn init_pool() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
    if n == 0 {
        anyhow::bail!("{THREADS_VAR} must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let code = match init_pool().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}
