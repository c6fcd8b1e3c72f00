#![no_main]

use libfuzzer_sys::fuzz_target;
use qkostant::freealg::parse_expr;

// First byte picks the grid size, the rest is the expression.
fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else { return };
    let n = 1 + (k % 4) as usize;
    if let Ok(text) = std::str::from_utf8(rest) {
        let _ = parse_expr(text, n);
    }
});
