//! Plane figures: modular chord diagrams, skip counting on a circle, curve
//! stitching, rolling-circle curves and Mandelbrot escape times.
//!
//! Circle points are residues `0..n` placed counterclockwise from the +x
//! axis on the unit circle. Labels shown to people run `1..=n`, with
//! residue 0 displayed as `n`.

use std::collections::HashSet;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::turtle::{Drawing, Point};

/// Multiplication-table gallery at modulus 360.
pub const MOD_360_GALLERY: [(u32, u32); 4] = [(360, 6), (360, 7), (360, 9), (360, 10)];
/// Doubling diagrams whose chords envelope a cardioid.
pub const DOUBLING_GALLERY: [(u32, u32); 4] = [(7, 2), (36, 2), (66, 2), (360, 2)];

/// Position of residue `m` among `n` equally spaced points on a circle.
pub fn circle_point(n: u32, m: u32, radius: f64) -> Point {
    let (s, c) = (TAU * f64::from(m % n) / f64::from(n)).sin_cos();
    Point::new(radius * c, radius * s)
}

/// Human-facing label of residue `m`.
pub fn label(n: u32, m: u32) -> u32 {
    match m % n {
        0 => n,
        r => r,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDiagram {
    pub n: u32,
    pub k: u32,
    /// `(m, k·m mod n)` in order of first appearance, distinct as unordered pairs.
    pub chords: Vec<(u32, u32)>,
}

pub fn modular_chords(n: u32, k: u32) -> Result<ChordDiagram> {
    if n < 2 {
        return Err(Error::invalid("a chord diagram needs at least 2 points"));
    }
    let mut seen = HashSet::new();
    let mut chords = Vec::new();
    for m in 0..n {
        let image = ((u64::from(k) * u64::from(m)) % u64::from(n)) as u32;
        if image != m && seen.insert((m.min(image), m.max(image))) {
            chords.push((m, image));
        }
    }
    Ok(ChordDiagram { n, k, chords })
}

impl ChordDiagram {
    pub fn to_drawing(&self) -> Drawing {
        self.chords
            .iter()
            .map(|&(a, b)| vec![circle_point(self.n, a, 1.0), circle_point(self.n, b, 1.0)])
            .collect()
    }
}

/// Visits every `(skip + 1)`-th label starting from `start`, returning the
/// closed cycle of 1-based labels (the start appears at both ends).
pub fn skip_count_path(n: u32, skip: u32, start: u32) -> Result<Vec<u32>> {
    if n < 2 {
        return Err(Error::invalid("skip counting needs at least 2 points"));
    }
    if skip < 1 {
        return Err(Error::invalid("skip must be at least 1"));
    }
    if !(1..=n).contains(&start) {
        return Err(Error::invalid(format!("start must be a label in 1..={n}")));
    }
    let step = u64::from(skip) + 1;
    let n64 = u64::from(n);
    let first = u64::from(start) % n64;
    let mut path = vec![label(n, first as u32)];
    let mut at = (first + step) % n64;
    while at != first {
        path.push(label(n, at as u32));
        at = (at + step) % n64;
    }
    path.push(start);
    Ok(path)
}

/// All distinct skip-counting cycles, each drawn as a closed polygon.
pub fn skip_count_drawing(n: u32, skip: u32) -> Result<Drawing> {
    let mut visited = vec![false; n as usize + 1];
    let mut drawing = Drawing::new();
    for start in 1..=n {
        if visited[start as usize] {
            continue;
        }
        let cycle = skip_count_path(n, skip, start)?;
        for &l in &cycle {
            visited[l as usize] = true;
        }
        drawing.push(cycle.iter().map(|&l| circle_point(n, l, 1.0)).collect());
    }
    Ok(drawing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StitchStyle {
    /// Joins `(i, 0)` to `(0, N - i)`.
    PerpendicularSum,
    /// The same family mirrored across the y axis as well.
    VShape,
}

pub fn curve_stitch(count: u32, style: StitchStyle) -> Result<Vec<(Point, Point)>> {
    if count < 2 {
        return Err(Error::invalid("curve stitching needs N >= 2"));
    }
    let n = f64::from(count);
    let quadrant = (1..count).map(|i| {
        let i = f64::from(i);
        (Point::new(i, 0.0), Point::new(0.0, n - i))
    });
    Ok(match style {
        StitchStyle::PerpendicularSum => quadrant.collect(),
        StitchStyle::VShape => quadrant
            .flat_map(|(a, b)| [(a, b), (Point::new(-a.x, a.y), b)])
            .collect(),
    })
}

pub fn segments_to_drawing(segments: &[(Point, Point)]) -> Drawing {
    segments.iter().map(|&(a, b)| vec![a, b]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ParametricCurve {
    /// Polar `r = 1 + cos θ`.
    Cardioid,
    /// Point on a circle of radius `r` rolling along the x axis.
    Cycloid { r: f64 },
    /// Point on a circle of radius `small` rolling outside one of radius `big`.
    Epicycloid { big: f64, small: f64 },
}

impl ParametricCurve {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ParametricCurve::Cardioid => true,
            ParametricCurve::Cycloid { r } => r > 0.0 && r.is_finite(),
            ParametricCurve::Epicycloid { big, small } => {
                big > 0.0 && small > 0.0 && big.is_finite() && small.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid("radii must be positive"))
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        match *self {
            ParametricCurve::Cardioid => {
                let r = 1.0 + t.cos();
                Point::new(r * t.cos(), r * t.sin())
            }
            ParametricCurve::Cycloid { r } => Point::new(r * (t - t.sin()), r * (1.0 - t.cos())),
            ParametricCurve::Epicycloid { big, small } => {
                let sum = big + small;
                let spin = sum / small * t;
                Point::new(sum * t.cos() - small * spin.cos(), sum * t.sin() - small * spin.sin())
            }
        }
    }

    /// Parameter interval traced by [`sample`](Self::sample).
    ///
    /// Epicycloids close after `q` turns when `big / small = p / q`; ratios
    /// without a small denominator are cut off at 100 turns.
    pub fn parameter_range(&self) -> (f64, f64) {
        match *self {
            ParametricCurve::Cardioid => (0.0, TAU),
            ParametricCurve::Cycloid { .. } => (0.0, 2.0 * TAU),
            ParametricCurve::Epicycloid { big, small } => (0.0, TAU * closing_turns(big / small) as f64),
        }
    }

    /// `samples` points uniformly spaced in the parameter, as one polyline.
    pub fn sample(&self, samples: usize) -> Result<Drawing> {
        self.validate()?;
        if samples < 2 {
            return Err(Error::invalid("need at least 2 samples"));
        }
        let (t0, t1) = self.parameter_range();
        let last = (samples - 1) as f64;
        let mut d = Drawing::new();
        d.push(
            (0..samples)
                .map(|i| self.point_at(t0 + (t1 - t0) * i as f64 / last))
                .collect(),
        );
        Ok(d)
    }
}

/// Smallest `q <= 100` with `ratio * q` integral (to 1e-9), else 100.
fn closing_turns(ratio: f64) -> u32 {
    (1..=100)
        .find(|&q| {
            let x = ratio * f64::from(q);
            (x - x.round()).abs() < 1e-9 * x.max(1.0)
        })
        .unwrap_or(100)
}

pub fn sample_parametric(curve: &ParametricCurve, samples: usize) -> Result<Drawing> {
    curve.sample(samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `self² + c`
    pub fn square_add(self, c: Complex) -> Complex {
        Complex::new(self.re * self.re - self.im * self.im + c.re, 2.0 * self.re * self.im + c.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Escape {
    Bounded,
    /// First `k` with `|z_k| > 2`, counting `z_1 = c`.
    Escaped(u32),
}

/// Iterates `z ← z² + c` from 0 for up to `max_iter` steps.
pub fn mandelbrot_escape(c: Complex, max_iter: u32) -> Escape {
    let mut z = Complex::default();
    for k in 1..=max_iter {
        z = z.square_add(c);
        if z.norm_sqr() > 4.0 {
            return Escape::Escaped(k);
        }
    }
    Escape::Bounded
}

/// Escape results over a `width × height` raster of the rectangle
/// `lo..hi`, row-major from the top row. Each cell is sampled at its centre.
pub fn mandelbrot_grid(lo: Complex, hi: Complex, width: usize, height: usize, max_iter: u32) -> Vec<Escape> {
    let dx = (hi.re - lo.re) / width as f64;
    let dy = (hi.im - lo.im) / height as f64;
    (0..height)
        .flat_map(|row| {
            let im = hi.im - (row as f64 + 0.5) * dy;
            (0..width).map(move |col| Complex::new(lo.re + (col as f64 + 0.5) * dx, im))
        })
        .map(|c| mandelbrot_escape(c, max_iter))
        .collect()
}

/// Bounded cells of a grid as a drawing of tiny horizontal runs.
pub fn mandelbrot_drawing(width: usize, height: usize, max_iter: u32) -> Drawing {
    let (lo, hi) = (Complex::new(-2.0, -1.25), Complex::new(0.5, 1.25));
    let grid = mandelbrot_grid(lo, hi, width, height, max_iter);
    let dx = (hi.re - lo.re) / width as f64;
    let dy = (hi.im - lo.im) / height as f64;
    let mut d = Drawing::new();
    for row in 0..height {
        let y = hi.im - (row as f64 + 0.5) * dy;
        let mut col = 0;
        while col < width {
            if grid[row * width + col] == Escape::Bounded {
                let start = col;
                while col < width && grid[row * width + col] == Escape::Bounded {
                    col += 1;
                }
                d.push_segment(
                    Point::new(lo.re + start as f64 * dx, y),
                    Point::new(lo.re + col as f64 * dx, y),
                );
            } else {
                col += 1;
            }
        }
    }
    d
}

/// Cardioid bounding the main bulb of the Mandelbrot set,
/// `c = e^{it}/2 - e^{2it}/4`.
pub fn main_bulb_point(t: f64) -> Complex {
    Complex::new(t.cos() / 2.0 - (2.0 * t).cos() / 4.0, t.sin() / 2.0 - (2.0 * t).sin() / 4.0)
}
