use std::io::{Read, Write};

use clap::Parser;
use expfield_cli::{run, Cli, STEP_LIMIT_VAR};

fn main() {
    let cli = Cli::parse();
    let env = std::env::var(STEP_LIMIT_VAR).ok();
    let outcome = run(&cli, env.as_deref(), || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    });
    let text = outcome.render(cli.options.json);
    if outcome.exit_code == 0 || cli.options.json {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    std::process::exit(outcome.exit_code);
}
