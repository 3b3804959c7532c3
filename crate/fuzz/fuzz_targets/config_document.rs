#![no_main]

use hypfeuer_cli::document::ConfigDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = ConfigDocument::from_json(text) {
        // Reading back the configuration must not panic.
        let _ = doc.config();
        let again = ConfigDocument::from_json(&doc.to_json()).expect("written documents parse");
        assert_eq!(again.to_json(), doc.to_json());
    }
});
