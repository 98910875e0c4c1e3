//! The JSON files under `fixtures/` are the serialized corpus. Set
//! `BERKDISC_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use berkdisc::corpus::corpus;
use berkdisc::json::parse_fixture;

#[test]
fn fixture_files_match_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bless = std::env::var_os("BERKDISC_BLESS").is_some();
    for entry in corpus() {
        let path = dir.join(format!("{}.json", entry.name()));
        let text = entry.fixture.to_json().to_pretty_string();
        if bless {
            fs::write(&path, &text).unwrap();
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(on_disk, text, "{} is stale", path.display());

        let loaded = parse_fixture(&on_disk).unwrap();
        assert_eq!(loaded.morphism, entry.fixture.morphism);
        assert_eq!(loaded.fibers.len(), entry.fixture.fibers.len());
        for (a, b) in loaded.fibers.iter().zip(&entry.fixture.fibers) {
            assert_eq!(a.center(), b.center());
            assert_eq!(a.roots(), b.roots());
        }
    }
}
