//! Turtle virtual machine, the recursive tree generator, and SVG output.
//!
//! Angles are degrees, counterclockwise positive, heading 0 along +x.
//! A drawing is broken into a new polyline only when the pen lifts
//! (`Move`) or the turtle jumps back to a saved state (`Pop`).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Ordered polylines in abstract user units (+y up).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Drawing {
    polylines: Vec<Vec<Point>>,
}

impl Drawing {
    pub fn new() -> Self {
        Drawing::default()
    }

    /// Appends a polyline; anything shorter than two points is dropped.
    /// Panics on non-finite coordinates.
    pub fn push(&mut self, polyline: Vec<Point>) {
        assert!(
            polyline.iter().all(|p| p.x.is_finite() && p.y.is_finite()),
            "drawing points must be finite"
        );
        if polyline.len() >= 2 {
            self.polylines.push(polyline);
        }
    }

    pub fn push_segment(&mut self, a: Point, b: Point) {
        self.push(vec![a, b]);
    }

    pub fn polylines(&self) -> &[Vec<Point>] {
        &self.polylines
    }

    pub fn into_polylines(self) -> Vec<Vec<Point>> {
        self.polylines
    }

    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.polylines.iter().map(|p| p.len() - 1).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.polylines.iter().flatten().copied()
    }

    /// `(min, max)` corners, or `None` for an empty drawing.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let mut pts = self.points();
        let first = pts.next()?;
        Some(pts.fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }
}

impl FromIterator<Vec<Point>> for Drawing {
    fn from_iter<I: IntoIterator<Item = Vec<Point>>>(iter: I) -> Self {
        let mut d = Drawing::new();
        for p in iter {
            d.push(p);
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TurtleCommand {
    /// Move with the pen down; negative distances walk backwards.
    Forward(f64),
    /// Move with the pen up.
    Move(f64),
    /// Turn by signed degrees; positive is a left (counterclockwise) turn.
    Turn(f64),
    Push,
    Pop,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurtleState {
    pub position: Point,
    heading: f64,
    pub stack: Vec<(Point, f64)>,
}

impl Default for TurtleState {
    fn default() -> Self {
        TurtleState::new(Point::ORIGIN, 0.0)
    }
}

impl TurtleState {
    pub fn new(position: Point, heading: f64) -> Self {
        TurtleState {
            position,
            heading: normalize_degrees(heading),
            stack: Vec::new(),
        }
    }

    /// Heading in `[0, 360)`.
    pub fn heading(&self) -> f64 {
        self.heading
    }

    pub fn turn(&mut self, degrees: f64) {
        self.heading = normalize_degrees(self.heading + degrees);
    }

    fn advance(&mut self, distance: f64) {
        let (sin, cos) = sin_cos_degrees(self.heading);
        self.position.x += distance * cos;
        self.position.y += distance * sin;
    }
}

fn normalize_degrees(deg: f64) -> f64 {
    let h = deg.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if h >= 360.0 {
        0.0
    } else {
        h
    }
}

/// Exact on the four axis headings so axis-aligned programs stay exact.
fn sin_cos_degrees(deg: f64) -> (f64, f64) {
    match deg {
        d if d == 0.0 => (0.0, 1.0),
        d if d == 90.0 => (1.0, 0.0),
        d if d == 180.0 => (0.0, -1.0),
        d if d == 270.0 => (-1.0, 0.0),
        d => d.to_radians().sin_cos(),
    }
}

/// Runs `program` from `start`, returning the drawing and the final state.
pub fn run(program: &[TurtleCommand], start: TurtleState) -> Result<(Drawing, TurtleState)> {
    let mut state = start;
    let mut drawing = Drawing::new();
    let mut current: Vec<Point> = Vec::new();

    for (index, cmd) in program.iter().enumerate() {
        match *cmd {
            TurtleCommand::Forward(d) => {
                if current.is_empty() {
                    current.push(state.position);
                }
                state.advance(d);
                current.push(state.position);
            }
            TurtleCommand::Move(d) => {
                drawing.push(std::mem::take(&mut current));
                state.advance(d);
            }
            TurtleCommand::Turn(a) => state.turn(a),
            TurtleCommand::Push => state.stack.push((state.position, state.heading)),
            TurtleCommand::Pop => {
                let (pos, heading) = state.stack.pop().ok_or(Error::UnbalancedPop { index })?;
                drawing.push(std::mem::take(&mut current));
                state.position = pos;
                state.heading = heading;
            }
        }
    }
    drawing.push(current);
    Ok((drawing, state))
}

pub fn interpret(program: &[TurtleCommand], start: TurtleState) -> Result<Drawing> {
    run(program, start).map(|(d, _)| d)
}

/// Turtle program for the recursive tree: draw the trunk, grow three
/// children (turned `+theta`, `0`, `-theta` from the trunk) each
/// `decrement` shorter, then walk back down. Branches shorter than
/// `min_len` are not drawn.
pub fn recursive_tree_program(len: f64, theta: f64, decrement: f64, min_len: f64) -> Result<Vec<TurtleCommand>> {
    if !(decrement > 0.0) {
        return Err(Error::invalid("tree decrement must be positive"));
    }
    fn grow(out: &mut Vec<TurtleCommand>, len: f64, theta: f64, dec: f64, min_len: f64) {
        if len < min_len {
            return;
        }
        out.push(TurtleCommand::Forward(len));
        out.push(TurtleCommand::Turn(theta));
        grow(out, len - dec, theta, dec, min_len);
        out.push(TurtleCommand::Turn(-theta));
        grow(out, len - dec, theta, dec, min_len);
        out.push(TurtleCommand::Turn(-theta));
        grow(out, len - dec, theta, dec, min_len);
        out.push(TurtleCommand::Turn(theta));
        // the walk back retraces the trunk, so it adds no ink
        out.push(TurtleCommand::Move(-len));
    }
    let mut out = Vec::new();
    grow(&mut out, len, theta, decrement, min_len);
    Ok(out)
}

/// The tree grown upward from the origin.
pub fn recursive_tree(len: f64, theta: f64, decrement: f64, min_len: f64) -> Result<Drawing> {
    let program = recursive_tree_program(len, theta, decrement, min_len)?;
    interpret(&program, TurtleState::new(Point::ORIGIN, 90.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvgStyle {
    pub stroke: String,
    /// Stroke width as a fraction of the larger viewBox side.
    pub stroke_width: f64,
    pub background: Option<String>,
    /// Rendered size in pixels of the larger side.
    pub size: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            stroke: "black".into(),
            stroke_width: 0.002,
            background: None,
            size: 600,
        }
    }
}

fn fmt_coord(out: &mut String, v: f64) {
    // keeps "-0.000000" out of the output
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    write!(out, "{v:.6}").expect("write to string");
}

/// Serializes `drawing` as an SVG 1.1 document: one `<path>` per polyline,
/// six-decimal coordinates, y flipped so +y points up, and a viewBox equal to
/// the bounding box grown by 5% on each side.
pub fn emit_svg(drawing: &Drawing, style: &SvgStyle) -> String {
    let (min_x, min_y, width, height) = match drawing.bounds() {
        None => (0.0, 0.0, 1.0, 1.0),
        Some((lo, hi)) => {
            // SVG space: y is flipped
            let (x0, y0) = (lo.x, -hi.y);
            let (w, h) = (hi.x - lo.x, hi.y - lo.y);
            let span = w.max(h);
            if span == 0.0 {
                (x0 - 0.5, y0 - 0.5, 1.0, 1.0)
            } else {
                // a flat drawing borrows padding from its other side
                let pad_x = 0.05 * if w > 0.0 { w } else { span };
                let pad_y = 0.05 * if h > 0.0 { h } else { span };
                (x0 - pad_x, y0 - pad_y, w + 2.0 * pad_x, h + 2.0 * pad_y)
            }
        }
    };
    let longest = width.max(height);
    let px = f64::from(style.size);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"");
    fmt_coord(&mut out, px * width / longest);
    out.push_str("\" height=\"");
    fmt_coord(&mut out, px * height / longest);
    out.push_str("\" viewBox=\"");
    for (i, v) in [min_x, min_y, width, height].into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        fmt_coord(&mut out, v);
    }
    out.push_str("\">\n");
    if let Some(bg) = &style.background {
        out.push_str("<rect x=\"");
        fmt_coord(&mut out, min_x);
        out.push_str("\" y=\"");
        fmt_coord(&mut out, min_y);
        out.push_str("\" width=\"");
        fmt_coord(&mut out, width);
        out.push_str("\" height=\"");
        fmt_coord(&mut out, height);
        let _ = writeln!(out, "\" fill=\"{}\"/>", escape_attr(bg));
    }
    let _ = write!(
        out,
        "<g fill=\"none\" stroke=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\" stroke-width=\"",
        escape_attr(&style.stroke)
    );
    fmt_coord(&mut out, style.stroke_width * longest);
    out.push_str("\">\n");
    for line in drawing.polylines() {
        out.push_str("<path d=\"");
        for (i, p) in line.iter().enumerate() {
            out.push_str(if i == 0 { "M " } else { " L " });
            fmt_coord(&mut out, p.x);
            out.push(' ');
            fmt_coord(&mut out, -p.y);
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape_attr(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use TurtleCommand::*;

    fn square() -> Vec<TurtleCommand> {
        [Forward(200.0), Turn(90.0)].repeat(4)
    }

    #[test]
    fn square_closes() {
        let (d, end) = run(&square(), TurtleState::default()).unwrap();
        assert_eq!(d.polylines().len(), 1);
        let line = &d.polylines()[0];
        assert_eq!(line.len(), 5);
        assert_eq!(line[0], line[4]);
        assert_eq!(end.position, Point::ORIGIN);
        assert_eq!(end.heading(), 0.0);
    }

    #[test]
    fn backwards_draws_to_negative_x() {
        let d = interpret(&[Forward(-25.0)], TurtleState::default()).unwrap();
        assert_eq!(d.polylines(), &[vec![Point::new(0.0, 0.0), Point::new(-25.0, 0.0)]]);
    }

    #[test]
    fn push_pop_is_a_no_op() {
        let start = TurtleState::new(Point::new(3.0, 4.0), 30.0);
        let (d, end) = run(&[Push, Pop], start.clone()).unwrap();
        assert!(d.is_empty());
        assert_eq!(end, start);
    }

    #[test]
    fn unbalanced_pop_is_reported() {
        let err = interpret(&[Forward(1.0), Pop], TurtleState::default()).unwrap_err();
        assert_eq!(err, Error::UnbalancedPop { index: 1 });
    }

    #[test]
    fn move_and_pop_break_polylines() {
        let program = [Forward(1.0), Move(1.0), Forward(1.0), Push, Turn(90.0), Forward(1.0), Pop, Forward(1.0)];
        let d = interpret(&program, TurtleState::default()).unwrap();
        assert_eq!(d.polylines().len(), 3);
        assert_eq!(d.segment_count(), 4);
    }

    #[test]
    fn heading_is_normalized() {
        let mut s = TurtleState::default();
        s.turn(-90.0);
        assert_eq!(s.heading(), 270.0);
        s.turn(450.0);
        assert_eq!(s.heading(), 0.0);
        s.turn(-1e-18);
        assert!(s.heading() < 360.0);
    }

    #[test]
    fn tree_segment_counts() {
        assert!(recursive_tree(4.0, 20.0, 10.0, 5.0).unwrap().is_empty());
        assert_eq!(recursive_tree(10.0, 20.0, 10.0, 5.0).unwrap().segment_count(), 1);
        assert_eq!(recursive_tree(30.0, 20.0, 10.0, 5.0).unwrap().segment_count(), 13);
        assert!(recursive_tree(30.0, 20.0, 0.0, 5.0).is_err());
    }

    #[test]
    fn tree_returns_to_its_root() {
        let program = recursive_tree_program(50.0, 25.0, 10.0, 5.0).unwrap();
        let (_, end) = run(&program, TurtleState::new(Point::ORIGIN, 90.0)).unwrap();
        assert!(end.position.norm() < 1e-9);
        assert!((end.heading() - 90.0).abs() < 1e-9);
    }

    #[test]
    fn svg_empty_drawing() {
        let svg = emit_svg(&Drawing::new(), &SvgStyle::default());
        assert!(svg.contains("viewBox=\"0.000000 0.000000 1.000000 1.000000\""));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn svg_single_segment() {
        let mut d = Drawing::new();
        d.push_segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        let svg = emit_svg(&d, &SvgStyle::default());
        assert!(svg.contains("<path d=\"M 0.000000 0.000000 L 1.000000 0.000000\"/>"));
        assert!(svg.contains("viewBox=\"-0.050000 -0.050000 1.100000 0.100000\""));
    }

    #[test]
    fn svg_flips_y() {
        let mut d = Drawing::new();
        d.push_segment(Point::new(0.0, 0.0), Point::new(0.0, 2.0));
        let svg = emit_svg(&d, &SvgStyle::default());
        assert!(svg.contains("M 0.000000 0.000000 L 0.000000 -2.000000"));
    }

    #[test]
    fn svg_square() {
        let d = interpret(&square(), TurtleState::default()).unwrap();
        let svg = emit_svg(&d, &SvgStyle::default());
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(
            "<path d=\"M 0.000000 0.000000 L 200.000000 0.000000 L 200.000000 -200.000000 \
             L 0.000000 -200.000000 L 0.000000 0.000000\"/>"
        ));
        assert!(svg.contains("viewBox=\"-10.000000 -210.000000 220.000000 220.000000\""));
    }

    #[test]
    fn svg_escapes_style() {
        let style = SvgStyle {
            stroke: "a\"b".into(),
            background: Some("white".into()),
            ..SvgStyle::default()
        };
        let svg = emit_svg(&Drawing::new(), &style);
        assert!(svg.contains("stroke=\"a&quot;b\""));
        assert!(svg.contains("<rect "));
    }
}
