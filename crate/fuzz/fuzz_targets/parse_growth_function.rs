#![no_main]

use libfuzzer_sys::fuzz_target;
use qhgeo::conditions::parse_growth_function;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_growth_function(text) {
        for t in [0.0, 0.5, 1.0, 10.0, 1e6] {
            let _ = f.eval(t);
            let _ = f.inverse(t);
        }
    }
});
