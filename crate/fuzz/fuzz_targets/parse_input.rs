#![no_main]

use libfuzzer_sys::fuzz_target;
use ratinv_cli::input::parse_input;

// The input-file parser rejects with a diagnostic and never panics.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Err(e) = parse_input(src) {
        let _ = (e.qualified_name(), e.position(), e.to_string());
    }
});
