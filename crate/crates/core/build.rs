//! Embeds `golden/*.golden` as a static case list. A file without a `ref:`
//! tag, a `name:` or an `expect:` line stops the build.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::{env, fs};

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(':')))
        .map(str::trim)
        .filter(|v| !v.is_empty())
}

fn main() {
    let dir = Path::new("golden");
    println!("cargo:rerun-if-changed=golden");
    let mut files: Vec<_> = fs::read_dir(dir)
        .expect("golden directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "golden"))
        .collect();
    files.sort();

    let mut names = BTreeSet::new();
    let mut out = String::from("&[\n");
    for path in &files {
        println!("cargo:rerun-if-changed={}", path.display());
        let text = fs::read_to_string(path).expect("readable golden file");
        let shown = path.display();
        let name = field(&text, "name").unwrap_or_else(|| panic!("{shown}: missing `name:`"));
        let reference = field(&text, "ref").unwrap_or_else(|| panic!("{shown}: missing `ref:` tag"));
        let expect = field(&text, "expect").unwrap_or_else(|| panic!("{shown}: missing `expect:`"));
        assert!(names.insert(name.to_string()), "{shown}: duplicate case name `{name}`");
        writeln!(
            out,
            "    GoldenCase {{ name: {name:?}, reference: {reference:?}, expect: {expect:?} }},"
        )
        .unwrap();
    }
    out.push_str("]\n");
    let dest = Path::new(&env::var("OUT_DIR").unwrap()).join("golden_cases.rs");
    fs::write(dest, out).expect("write generated cases");
}
