//! Byte-exact SVG regression figures. Run with `UPDATE_GOLDEN=1` to rewrite
//! the files after an intended output change.

use std::path::PathBuf;

use mathplay::curves::{ParametricCurve, StitchStyle};
use mathplay::figures::{self, Figure, DEFAULT_SAMPLES};

fn cases() -> Vec<(&'static str, Figure)> {
    vec![
        ("modular-360-2", Figure::ModularChords { n: 360, k: 2 }),
        ("koch-4", figures::preset("koch", 4).unwrap().unwrap()),
        ("sierpinski-4", figures::preset("sierpinski", 4).unwrap().unwrap()),
        ("cardioid", Figure::Curve { curve: ParametricCurve::Cardioid, samples: DEFAULT_SAMPLES }),
        ("cycloid", Figure::Curve { curve: ParametricCurve::Cycloid { r: 1.0 }, samples: DEFAULT_SAMPLES }),
        ("stitch-10", Figure::Stitch { n: 10, style: StitchStyle::PerpendicularSum }),
        ("tree-60-20", Figure::tree(60.0, 20.0)),
        ("skip-10-1", Figure::SkipCount { n: 10, skip: 1 }),
    ]
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn figures_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, figure) in cases() {
        let svg = figure.svg().unwrap();
        assert_eq!(svg, figure.svg().unwrap(), "{name} is not deterministic");
        let path = golden_dir().join(format!("{name}.svg"));
        if update {
            std::fs::write(&path, &svg).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(svg == expected, "{name} differs from {}", path.display());
    }
}

#[test]
fn golden_shapes() {
    let read = |name: &str| std::fs::read_to_string(golden_dir().join(format!("{name}.svg"))).unwrap();
    assert_eq!(read("modular-360-2").matches("<path").count(), 358);
    let koch = read("koch-4");
    assert_eq!(koch.matches("<path").count(), 1);
    assert_eq!(koch.matches(" L ").count(), 256);
    assert_eq!(read("stitch-10").matches("<path").count(), 9);
}
