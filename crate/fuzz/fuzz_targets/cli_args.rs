#![no_main]

use clap::Parser;
use elindep_cli::Cli;
use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated; only parsing is exercised, nothing runs.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("elindep").chain(text.split('\0'));
    if let Err(e) = Cli::try_parse_from(args) {
        let _ = e.render();
    }
});
