use std::path::PathBuf;

use flipcheck::scripts::{parse_script, run_script, shipped};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts")
}

// Set FLIPCHECK_BLESS=1 to rewrite the shipped files from the generators.
#[test]
fn shipped_scripts_match_generators() {
    let bless = std::env::var_os("FLIPCHECK_BLESS").is_some();
    for (path, text) in shipped(2, 5) {
        let text = text.unwrap_or_else(|e| panic!("{path}: {e}"));
        let file = root().join(&path);
        if bless {
            std::fs::create_dir_all(file.parent().unwrap()).unwrap();
            std::fs::write(&file, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
        assert_eq!(on_disk, text, "{path} differs from its generator");
    }
}

#[test]
fn shipped_scripts_replay() {
    for (path, _) in shipped(2, 5) {
        let text = std::fs::read_to_string(root().join(&path)).unwrap();
        let script = parse_script(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        let out = run_script(&script, false).unwrap();
        assert!(out.ok(), "{path}: {:?}", out.failure);
        assert!(out.count_conserved, "{path}");
    }
}
