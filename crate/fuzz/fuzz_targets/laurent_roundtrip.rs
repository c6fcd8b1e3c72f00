#![no_main]

use libfuzzer_sys::fuzz_target;
use qkostant::coeff::LaurentScalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = text.parse::<LaurentScalar>() {
        let printed = a.to_string();
        let back: LaurentScalar = printed.parse().expect("printed form parses");
        assert_eq!(back, a, "{printed}");
    }
});
