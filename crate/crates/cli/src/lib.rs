//! Command-line front end: argument parsing, certificate I/O and the
//! instance table.

/// `println!` that ignores a closed stdout.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

pub mod args;
pub mod commands;
pub mod table;

use brace_forge::cert::exit_code;
use brace_forge::search::AutScan;
use brace_forge::{Error, Result};

use args::{Cli, Command, TableFormat};

fn dispatch(cli: Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Schema(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Psl2 { q, out, brace } => commands::cmd_psl2(q, &out, brace.check()).map(drop),
        Command::Realize {
            factorization,
            index,
            construction,
            full_scan,
            with_brace,
            brace,
            search,
            out,
        } => {
            let scan = if full_scan { AutScan::Full } else { AutScan::Generators };
            let config = commands::search_config(&search);
            let check = with_brace.then(|| brace.check());
            commands::cmd_realize(&factorization, index, construction, scan, check, &config, &out).map(drop)
        }
        Command::Search {
            code,
            group,
            aut,
            allow_nonexact,
            search,
            out,
        } => commands::cmd_search(code, &group, aut.as_deref(), allow_nonexact, &search, &out).map(drop),
        Command::Brace { cert, out, brace } => commands::cmd_brace(&cert, &out, brace.check()).map(drop),
        Command::Ybe { cert, out } => commands::cmd_ybe(&cert, &out).map(drop),
        Command::VerifyCert { file } => commands::cmd_verify(&file).map(drop),
        Command::Table {
            format,
            q,
            no_code1,
            brace,
        } => {
            let rows = table::instance_rows(&q, !no_code1, brace.check())?;
            let text = match format {
                TableFormat::Text => table::render_text(&rows),
                TableFormat::Csv => table::render_csv(&rows),
            };
            {
                use std::io::Write as _;
                let _ = write!(std::io::stdout(), "{text}");
            };
            if rows.iter().all(table::InstanceRow::passed) {
                Ok(())
            } else {
                Err(Error::verification("table", "an instance failed a check"))
            }
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                Error::Verification { invariant, detail } => {
                    eprintln!("FAIL [{invariant}]: {detail}")
                }
                other => eprintln!("error: {other}"),
            }
            exit_code(&e)
        }
    }
}
