#![no_main]

use bchroma::pattern::PatternName;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<PatternName>() {
        let again: PatternName = p.to_string().parse().expect("displayed pattern parses");
        assert_eq!(again, p);
        assert!(p.graph().n() <= 64);
    }
});
