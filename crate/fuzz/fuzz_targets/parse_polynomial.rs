#![no_main]

use libfuzzer_sys::fuzz_target;
use ratinv::exactpoly::{parse, print, Ring};

// Any accepted input prints canonically and reparses to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let ring = Ring::new(["t1", "t2", "t3", "x", "y", "X1", "X2"]);
    if let Ok(p) = parse(src, &ring) {
        let text = print(&p);
        assert_eq!(parse(&text, &ring).expect("canonical text parses"), p);
    }
});
