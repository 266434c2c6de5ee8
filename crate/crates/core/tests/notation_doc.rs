use std::fs;
use std::path::PathBuf;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// `fourtile::module::item` paths quoted in the notation table.
fn linked_paths(doc: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for line in doc.lines().filter(|l| l.starts_with("| ")) {
        for span in line.split('`').skip(1).step_by(2) {
            if let Some(rest) = span.strip_prefix("fourtile::") {
                let (module, item) = rest.split_once("::").expect("module::item");
                out.push((module.to_string(), item.to_string()));
            }
        }
    }
    out
}

fn declares(source: &str, item: &str) -> bool {
    ["pub struct", "pub enum", "pub fn", "pub const", "pub type"]
        .iter()
        .any(|kw| {
            source.lines().any(|l| {
                l.trim_start().starts_with(&format!("{kw} {item}")) && {
                    let after = &l.trim_start()[kw.len() + 1 + item.len()..];
                    !after.starts_with(|c: char| c.is_alphanumeric() || c == '_')
                }
            })
        })
}

#[test]
fn every_symbol_row_links_to_an_item() {
    let doc = fs::read_to_string(root().join("docs/notation.md")).unwrap();
    let rows = doc
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| Symbol"))
        .count();
    let paths = linked_paths(&doc);
    assert!(rows >= 30 && paths.len() >= rows, "{rows} rows, {} links", paths.len());
    for line in doc
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| Symbol"))
    {
        assert!(line.contains("`fourtile::"), "row without a link: {line}");
    }
    for (module, item) in paths {
        let src = fs::read_to_string(root().join(format!("crates/core/src/{module}.rs")))
            .unwrap_or_else(|_| panic!("no module {module}"));
        assert!(declares(&src, &item), "fourtile::{module}::{item} not found");
    }
}

#[test]
fn lint_catches_a_missing_item() {
    assert!(declares("pub struct SideLabel {", "SideLabel"));
    assert!(!declares("pub struct SideLabels {", "SideLabel"));
    assert!(!declares("struct Hidden;", "Hidden"));
}
