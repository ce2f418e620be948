use std::io::Write;

use clap::Parser;
use hbip_cli::{run, Args, RunConfig};

fn main() {
    let args = Args::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut diag = std::io::stderr();
    let code = match RunConfig::from_args(args).and_then(|config| run(&config, &mut out, &mut diag)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(failure) => {
            let _ = writeln!(diag, "error: {failure}");
            failure.exit_code()
        }
    };
    let _ = out.flush();
    std::process::exit(code);
}
