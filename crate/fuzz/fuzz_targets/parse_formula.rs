#![no_main]

use bchroma::io::{parse_formula, write_formula};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_formula(text) {
        let again = parse_formula(&write_formula(&f)).expect("written formula parses");
        assert_eq!(again, f);
        for clause in f.clauses() {
            assert!(clause.iter().all(|&v| v < f.variables()));
        }
    }
});
