#![no_main]

use libfuzzer_sys::fuzz_target;
use qkostant::freealg::{format_expr, parse_expr};

fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else { return };
    let n = 1 + (k % 4) as usize;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(p) = parse_expr(text, n) {
        let printed = format_expr(&p);
        let back = parse_expr(&printed, n).expect("printed form parses");
        assert_eq!(back, p, "{printed}");
    }
});
