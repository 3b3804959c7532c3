#![no_main]

use hypfeuer_cli::scenario::parse_scenario;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_scenario(text) {
        // Accepted scenarios re-serialize to an accepted scenario.
        let again = serde_json::to_string(&s).expect("scenarios serialize");
        assert_eq!(parse_scenario(&again).expect("round trip"), s);
    }
});
