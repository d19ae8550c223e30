//! Replays the checked-in fuzz seeds through the same entry points as the
//! fuzz targets, so the seeds stay valid inputs.

use std::fs;
use std::path::PathBuf;

use superchar::algebra::AlgebraFile;
use superchar::export::{GroupSource, TheoryFile};
use superchar::parabolic::{Composition, RookPlacement, Shape};
use superchar::scalars::Cyclotomic;
use superchar::Budget;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).expect("seeds are UTF-8")
}

#[test]
fn composition_seeds_parse() {
    for (name, data) in seeds("composition") {
        let c: Composition = text(&data).parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
    }
}

#[test]
fn rook_placement_seeds_parse() {
    for (name, data) in seeds("rook_placement") {
        let (head, tail) = text(&data).split_once('\n').unwrap();
        let comp: Composition = head.parse().unwrap();
        RookPlacement::parse(&comp, tail).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn shape_seeds_parse() {
    for (name, data) in seeds("shape") {
        Shape::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn cyclotomic_seeds_parse() {
    for (name, data) in seeds("cyclotomic") {
        let order = u32::from(data[0] % 64) + 1;
        Cyclotomic::parse(text(&data[1..]), order).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn algebra_seeds_build() {
    for (name, data) in seeds("algebra_file") {
        let definition = AlgebraFile::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        GroupSource::Algebra { definition }
            .build(&Budget::new(1 << 12))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn theory_seeds_verify() {
    for (name, data) in seeds("theory_file") {
        let file = TheoryFile::from_json(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = file.reverify(&Budget::new(1 << 12), false).unwrap();
        assert!(report.passed(), "{name}");
        assert_eq!(report, file.report);
    }
}
