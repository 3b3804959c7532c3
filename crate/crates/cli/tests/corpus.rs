//! Replays the fuzz corpus through the same invariants as the fuzz targets.

use std::path::PathBuf;

use hypfeuer_cli::document::ConfigDocument;
use hypfeuer_cli::scenario::parse_scenario;
use hypfeuer_cli::{format_complex, parse_complex, parse_triangle};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn complex_seeds() {
    let mut parsed = 0;
    for s in seeds("parse_complex") {
        if let Ok(z) = parse_complex(&s) {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!((back.re.to_bits(), back.im.to_bits()), (z.re.to_bits(), z.im.to_bits()), "{s}");
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn triangle_seeds() {
    let results: Vec<bool> = seeds("parse_triangle").iter().map(|s| parse_triangle(s).is_ok()).collect();
    assert!(results.contains(&true) && results.contains(&false));
}

#[test]
fn scenario_seeds() {
    for s in seeds("scenario_json") {
        let parsed = parse_scenario(&s).unwrap();
        let again = serde_json::to_string(&parsed).unwrap();
        assert_eq!(parse_scenario(&again).unwrap(), parsed);
    }
}

#[test]
fn document_seeds() {
    for s in seeds("config_document") {
        let doc = ConfigDocument::from_json(&s).unwrap();
        doc.config().unwrap();
        assert_eq!(doc.to_json(), s);
    }
}
