use std::process::ExitCode;

use nakayama_cli::{parse_args, run};

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = run(&config);
    if config.json {
        print!("{}", outcome.report);
    } else if outcome.code == 1 {
        eprintln!("{}", outcome.summary);
    } else {
        println!("{}", outcome.summary);
    }
    ExitCode::from(outcome.code as u8)
}
