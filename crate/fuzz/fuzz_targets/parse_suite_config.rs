#![no_main]

use libfuzzer_sys::fuzz_target;
use qhgeo::suite::SuiteConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = SuiteConfig::from_toml(text);
    }
});
