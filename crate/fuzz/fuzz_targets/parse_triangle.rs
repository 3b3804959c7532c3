#![no_main]

use hypfeuer_cli::parse_triangle;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(points) = parse_triangle(text) {
        assert!(points.iter().all(|p| p.z().norm() < 1.0));
    }
});
