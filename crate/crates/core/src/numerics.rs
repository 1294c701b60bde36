//! Small numeric kernel: plane rotation, disk masks, the two-loop resistor
//! matrix, Buffon's needle, and exact integer sequences.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::turtle::Point;

/// Rotates every point counterclockwise by `theta` radians about the origin.
pub fn rotate(points: &[Point], theta: f64) -> Vec<Point> {
    let (s, c) = theta.sin_cos();
    points
        .iter()
        .map(|p| Point::new(p.x * c - p.y * s, p.x * s + p.y * c))
        .collect()
}

/// Selects pixels outside the disk of radius `ratio * width` centred on the
/// image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskMask {
    pub width: u32,
    pub height: u32,
    pub ratio: f64,
}

impl DiskMask {
    pub const DEFAULT_RATIO: f64 = 0.45;

    pub fn new(width: u32, height: u32, ratio: f64) -> Result<Self> {
        if width == 0 || height == 0 || !(ratio > 0.0) {
            return Err(Error::invalid("mask needs positive dimensions and ratio"));
        }
        Ok(DiskMask { width, height, ratio })
    }

    /// True when pixel `(x, y)` is masked (outside the disk).
    pub fn is_masked(&self, x: u32, y: u32) -> bool {
        let dx = f64::from(x) - f64::from(self.width) / 2.0;
        let dy = f64::from(y) - f64::from(self.height) / 2.0;
        let r = self.ratio * f64::from(self.width);
        dx * dx + dy * dy > r * r
    }

    pub fn masked_count(&self) -> u64 {
        (0..self.width)
            .map(|x| (0..self.height).filter(|&y| self.is_masked(x, y)).count() as u64)
            .sum()
    }
}

pub fn disk_mask(width: u32, height: u32, ratio: f64) -> Result<impl Fn(u32, u32) -> bool> {
    let mask = DiskMask::new(width, height, ratio)?;
    Ok(move |x, y| mask.is_masked(x, y))
}

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        Mat2([[c, -s], [s, c]])
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    /// `xᵀ M x`
    pub fn quadratic_form(&self, x: [f64; 2]) -> f64 {
        let [[a, b], [c, d]] = self.0;
        x[0] * (a * x[0] + b * x[1]) + x[1] * (c * x[0] + d * x[1])
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[a, b], [c, d]] = self.0;
        Point::new(a * p.x + b * p.y, c * p.x + d * p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResistorSet(pub [f64; 5]);

impl ResistorSet {
    pub fn new(ohms: [f64; 5]) -> Result<Self> {
        if ohms.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
            return Err(Error::invalid("resistances must be positive"));
        }
        Ok(ResistorSet(ohms))
    }
}

/// Loop-resistance matrix `[[R1+R2+R4, R2], [R2, R2+R3+R5]]`; `R2` is the
/// branch shared by both loops.
pub fn resistor_matrix(r: &ResistorSet) -> Mat2 {
    let [r1, r2, r3, r4, r5] = r.0;
    Mat2([[r1 + r2 + r4, r2], [r2, r2 + r3 + r5]])
}

/// Positive definiteness of a symmetric 2×2 matrix by leading principal minors.
pub fn is_positive_definite(m: &Mat2) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(m.0[0][0] > 0.0 && m.det() > 0.0)
}

/// Identifier of the generator behind [`buffon_estimate`]; part of the
/// reproducibility contract.
pub const PRNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeedleSpec {
    pub length: f64,
    pub spacing: f64,
    pub drops: u64,
    pub seed: u64,
}

impl NeedleSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length <= self.spacing && self.spacing.is_finite()) {
            return Err(Error::invalid("need 0 < length <= spacing"));
        }
        if self.drops == 0 {
            return Err(Error::invalid("need at least one drop"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuffonResult {
    pub estimate: f64,
    pub crossings: u64,
    pub drops: u64,
}

/// One needle drop: centre distance `d` from the nearest line and acute
/// angle `phi` with the lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drop {
    pub distance: f64,
    pub angle: f64,
}

impl Drop {
    pub fn crosses(&self, length: f64) -> bool {
        self.distance <= length / 2.0 * self.angle.sin()
    }
}

/// Stream of drops: `d ~ U[0, t/2]`, `phi ~ U[0, π/2)`, both drawn from one
/// ChaCha8 stream in that order.
pub fn needle_drops(spacing: f64, seed: u64, stream: u64) -> impl Iterator<Item = Drop> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    std::iter::repeat_with(move || {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        Drop {
            distance: u * spacing / 2.0,
            angle: v * FRAC_PI_2,
        }
    })
}

/// `π ≈ 2·l·n / (t·c)` from a given sequence of drops.
pub fn buffon_from_drops(length: f64, spacing: f64, drops: impl IntoIterator<Item = Drop>) -> Result<BuffonResult> {
    let (mut n, mut c) = (0u64, 0u64);
    for d in drops {
        n += 1;
        c += u64::from(d.crosses(length));
    }
    if c == 0 {
        return Err(Error::EstimateUndefined { drops: n });
    }
    Ok(BuffonResult {
        estimate: 2.0 * length * n as f64 / (spacing * c as f64),
        crossings: c,
        drops: n,
    })
}

pub fn buffon_estimate(spec: &NeedleSpec) -> Result<BuffonResult> {
    spec.validate()?;
    let drops = needle_drops(spec.spacing, spec.seed, 0).take(spec.drops as usize);
    buffon_from_drops(spec.length, spec.spacing, drops)
}

/// Splits the drops over `workers` threads. Worker `i` uses ChaCha stream
/// `i` of the same seed and drops `n / w` needles, plus one when
/// `i < n mod w`. Results depend on `(seed, workers)` only; one worker
/// reproduces [`buffon_estimate`].
pub fn buffon_estimate_parallel(spec: &NeedleSpec, workers: usize) -> Result<BuffonResult> {
    spec.validate()?;
    if workers == 0 {
        return Err(Error::invalid("need at least one worker"));
    }
    let w = workers as u64;
    let crossings: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..w)
            .map(|i| {
                let share = spec.drops / w + u64::from(i < spec.drops % w);
                scope.spawn(move || {
                    needle_drops(spec.spacing, spec.seed, i)
                        .take(share as usize)
                        .filter(|d| d.crosses(spec.length))
                        .count() as u64
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    if crossings == 0 {
        return Err(Error::EstimateUndefined { drops: spec.drops });
    }
    Ok(BuffonResult {
        estimate: 2.0 * spec.length * spec.drops as f64 / (spec.spacing * crossings as f64),
        crossings,
        drops: spec.drops,
    })
}

/// `F_n` with `F_1 = F_2 = 1` (and `F_0 = 0`).
pub fn fibonacci(n: u32) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 1..n {
        let next = a.checked_add(b).ok_or(Error::Overflow("Fibonacci number exceeds 128 bits"))?;
        a = b;
        b = next;
    }
    Ok(b)
}

/// `(F_1 + … + F_n, F_{n+2} − 1)`
pub fn fib_sum_check(n: u32) -> Result<(u128, u128)> {
    let mut lhs = 0u128;
    for k in 1..=n {
        lhs = lhs.checked_add(fibonacci(k)?).ok_or(Error::Overflow("sum exceeds 128 bits"))?;
    }
    Ok((lhs, fibonacci(n + 2)? - 1))
}

/// `(F_1² + … + F_n², F_n · F_{n+1})`
pub fn fib_square_sum_check(n: u32) -> Result<(u128, u128)> {
    let overflow = || Error::Overflow("sum of squares exceeds 128 bits");
    let mut lhs = 0u128;
    for k in 1..=n {
        let f = fibonacci(k)?;
        lhs = f.checked_mul(f).and_then(|sq| lhs.checked_add(sq)).ok_or_else(overflow)?;
    }
    let rhs = fibonacci(n)?.checked_mul(fibonacci(n + 1)?).ok_or_else(overflow)?;
    Ok((lhs, rhs))
}

/// Row `n` of Pascal's triangle (row 0 is `[1]`), built additively.
pub fn pascal_row(n: u32) -> Result<Vec<u128>> {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for pair in row.windows(2) {
            next.push(pair[0].checked_add(pair[1]).ok_or(Error::Overflow("binomial exceeds 128 bits"))?);
        }
        next.push(1);
        row = next;
    }
    Ok(row)
}

/// First `count` fractional digits of `1 / (b² − b − 1)` in base `b`, by
/// long division. Base 10 gives `1/89`.
pub fn fib_reciprocal_digits(base: u32, count: usize) -> Result<String> {
    if base < 2 || base > 36 {
        return Err(Error::invalid("base must be in 2..=36"));
    }
    let b = u64::from(base);
    let divisor = b * b - b - 1;
    if divisor == 1 {
        // base 2: 1/1 has no fractional digits
        return Ok("0".repeat(count));
    }
    let mut remainder = 1u64;
    let mut digits = String::with_capacity(count);
    for _ in 0..count {
        remainder *= b;
        let digit = (remainder / divisor) as u32;
        remainder %= divisor;
        digits.push(char::from_digit(digit, base).expect("digit below base"));
    }
    Ok(digits)
}

/// `1 + 2 + … + n`
pub fn gauss_sum(n: u64) -> u128 {
    let n = u128::from(n);
    n * (n + 1) / 2
}
