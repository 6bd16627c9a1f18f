#![no_main]

use bchroma::io::{parse_dimacs, write_dimacs};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_dimacs(text) {
        let again = parse_dimacs(&write_dimacs(&g, &[])).expect("written DIMACS parses");
        assert_eq!(again, g);
    }
});
