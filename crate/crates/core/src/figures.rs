//! Named figure recipes shared by every front end, so the same parameters
//! always produce the same SVG bytes.

use serde::{Deserialize, Serialize};

use crate::curves::{self, ParametricCurve, StitchStyle};
use crate::error::Result;
use crate::lsystem::{self, LSystem, RenderSpec};
use crate::turtle::{self, Drawing, SvgStyle};

pub const DEFAULT_SAMPLES: usize = 720;
pub const DEFAULT_TREE_DECREMENT: f64 = 10.0;
pub const DEFAULT_TREE_MIN_LEN: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "figure", rename_all = "kebab-case")]
pub enum Figure {
    ModularChords { n: u32, k: u32 },
    SkipCount { n: u32, skip: u32 },
    Stitch { n: u32, style: StitchStyle },
    Curve { curve: ParametricCurve, samples: usize },
    Lsystem { system: LSystem, spec: RenderSpec },
    Tree { len: f64, theta: f64, decrement: f64, min_len: f64 },
    Mandelbrot { width: usize, height: usize, max_iter: u32 },
}

impl Figure {
    /// The recursive tree with the usual shrink of 10 per level and leaves
    /// below length 5 dropped.
    pub fn tree(len: f64, theta: f64) -> Self {
        Figure::Tree {
            len,
            theta,
            decrement: DEFAULT_TREE_DECREMENT,
            min_len: DEFAULT_TREE_MIN_LEN,
        }
    }

    pub fn drawing(&self) -> Result<Drawing> {
        match self {
            Figure::ModularChords { n, k } => Ok(curves::modular_chords(*n, *k)?.to_drawing()),
            Figure::SkipCount { n, skip } => curves::skip_count_drawing(*n, *skip),
            Figure::Stitch { n, style } => Ok(curves::segments_to_drawing(&curves::curve_stitch(*n, *style)?)),
            Figure::Curve { curve, samples } => curve.sample(*samples),
            Figure::Lsystem { system, spec } => lsystem::render(system, spec),
            Figure::Tree { len, theta, decrement, min_len } => turtle::recursive_tree(*len, *theta, *decrement, *min_len),
            Figure::Mandelbrot { width, height, max_iter } => Ok(curves::mandelbrot_drawing(*width, *height, *max_iter)),
        }
    }

    pub fn svg(&self) -> Result<String> {
        Ok(svg(&self.drawing()?))
    }
}

/// SVG with the default style.
pub fn svg(drawing: &Drawing) -> String {
    turtle::emit_svg(drawing, &SvgStyle::default())
}

/// Polylines as `[x, y]` pairs, for clients that draw themselves.
pub fn points(drawing: &Drawing) -> Vec<Vec<[f64; 2]>> {
    drawing
        .polylines()
        .iter()
        .map(|line| line.iter().map(|p| [p.x, p.y]).collect())
        .collect()
}

/// Renders a preset by name, e.g. `"koch"`.
pub fn preset(name: &str, order: u32) -> Option<Result<Figure>> {
    let text = lsystem::presets::by_name(name)?;
    Some(lsystem::parse(text).map(|system| Figure::Lsystem {
        system,
        spec: RenderSpec::with_order(order),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koch_order_four_is_one_path() {
        let svg = preset("koch", 4).unwrap().unwrap().svg().unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches(" L ").count(), 256);
    }

    #[test]
    fn modular_fan_path_count() {
        let svg = Figure::ModularChords { n: 360, k: 2 }.svg().unwrap();
        assert_eq!(svg.matches("<path").count(), 358);
    }

    #[test]
    fn points_mirror_polylines() {
        let d = Figure::Stitch { n: 4, style: StitchStyle::PerpendicularSum }.drawing().unwrap();
        let pts = points(&d);
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0], vec![[1.0, 0.0], [0.0, 3.0]]);
    }

    #[test]
    fn unknown_preset() {
        assert!(preset("dragon", 3).is_none());
    }
}
