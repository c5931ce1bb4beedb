#![no_main]

use libfuzzer_sys::fuzz_target;
use qhgeo::{compile, parse_domain, Point2};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_domain(text) else { return };
    let Ok(d) = compile(&spec) else { return };
    let b = d.bounding_box();
    for (u, v) in [(0.5, 0.5), (0.25, 0.75), (0.9, 0.1)] {
        let p = Point2::new(b.min.x + u * b.width(), b.min.y + v * b.height());
        if d.contains(p) {
            let delta = d.boundary_distance(p).expect("inside points have a boundary distance");
            assert!(delta > 0.0);
        }
    }
});
