//! The twelve acceptance checks, one line each. Runs without the libtest
//! harness so the lines are always printed; any failure exits non-zero.

use std::process::{Command, ExitCode};

use fieldsep::FactorConfig;
use fieldsep_cli::corpus;

/// Two separate processes must print the same bytes.
fn binary_is_deterministic() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fieldsep"))
            .args(["verify-paper", "--corpus", "builtin", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit statuses {} and {}", a.status, b.status));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("two processes printed {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let cfg = FactorConfig::default();
    let mut failed = 0;
    for id in 1..=12 {
        let mut r = corpus::run_criterion(id, &cfg);
        if id == 12 && r.pass {
            match binary_is_deterministic() {
                Ok(d) => r.detail = format!("{}; {d}", r.detail),
                Err(e) => {
                    r.pass = false;
                    r.detail = e;
                }
            }
        }
        let mark = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark}: {} ({})", r.id, r.name, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
