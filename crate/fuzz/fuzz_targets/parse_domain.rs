#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = qhgeo::parse_domain(text) {
        // anything accepted must survive a round trip
        let again = qhgeo::parse_domain(&spec.to_json()).expect("serialized spec reparses");
        assert_eq!(again, spec);
    }
});
