use super::{check_min_size, GrayImage};
use crate::error::Result;

/// Gradient orientation, quantized to the four neighbor axes.
///
/// Angles are measured counter-clockwise from +x with +y pointing up the
/// image, so `Deg45` runs toward the upper-right neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Deg0,
    Deg45,
    Deg90,
    Deg135,
}

/// Raw 3×3 Sobel responses.
///
/// `gx` grows with intensity to the right, `gy` with intensity upward
/// (top row minus bottom row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobelResponse {
    pub width: usize,
    pub height: usize,
    pub gx: Vec<i32>,
    pub gy: Vec<i32>,
}

/// Scaled magnitudes (0..=255) and quantized directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientField {
    pub width: usize,
    pub height: usize,
    pub magnitude: Vec<u8>,
    pub direction: Vec<Direction>,
}

/// Sobel responses with clamp-to-edge borders.
pub fn sobel(gray: &GrayImage) -> Result<SobelResponse> {
    let (w, h) = (gray.width(), gray.height());
    check_min_size(w, h)?;
    let px = |x: usize, y: usize| i32::from(gray.get(x, y));
    let mut gx = Vec::with_capacity(w * h);
    let mut gy = Vec::with_capacity(w * h);
    for y in 0..h {
        let up = y.saturating_sub(1);
        let down = (y + 1).min(h - 1);
        for x in 0..w {
            let left = x.saturating_sub(1);
            let right = (x + 1).min(w - 1);
            gx.push(
                px(right, up) + 2 * px(right, y) + px(right, down)
                    - px(left, up)
                    - 2 * px(left, y)
                    - px(left, down),
            );
            gy.push(
                px(left, up) + 2 * px(x, up) + px(right, up)
                    - px(left, down)
                    - 2 * px(x, down)
                    - px(right, down),
            );
        }
    }
    Ok(SobelResponse {
        width: w,
        height: h,
        gx,
        gy,
    })
}

/// Nearest of the four bins to `atan2(gy, gx)` taken modulo 180°.
///
/// The 22.5° and 67.5° boundaries are tested exactly in integers using
/// tan 22.5° = √2 − 1 and tan 67.5° = √2 + 1. Integer gradients can never sit
/// on a boundary, so there is no tie rule.
pub fn quantize_direction(gx: i32, gy: i32) -> Direction {
    let ax = i64::from(gx).abs();
    let ay = i64::from(gy).abs();
    // ay < (√2 − 1)·ax  ⇔  (ax + ay)² < 2·ax²
    if (ax + ay) * (ax + ay) < 2 * ax * ax || (ax == 0 && ay == 0) {
        return Direction::Deg0;
    }
    // ay > (√2 + 1)·ax  ⇔  ay > ax ∧ (ay − ax)² > 2·ax²
    if ay > ax && (ay - ax) * (ay - ax) > 2 * ax * ax {
        return Direction::Deg90;
    }
    if (gx > 0) == (gy > 0) {
        Direction::Deg45
    } else {
        Direction::Deg135
    }
}

/// round(sqrt(n)) computed exactly.
fn rounded_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    // sqrt(n) > r + 0.5  ⇔  n > r² + r (n is an integer)
    if n > r * r + r {
        r + 1
    } else {
        r
    }
}

/// Sobel magnitudes rescaled so the image maximum maps to 255, with
/// quantized directions.
pub fn gradients(smoothed: &GrayImage) -> Result<GradientField> {
    let s = sobel(smoothed)?;
    let raw: Vec<u64> =
        s.gx.iter()
            .zip(&s.gy)
            .map(|(&gx, &gy)| {
                let (gx, gy) = (i64::from(gx), i64::from(gy));
                rounded_sqrt((gx * gx + gy * gy) as u64)
            })
            .collect();
    let max = raw.iter().copied().max().unwrap_or(0);
    let magnitude = raw
        .iter()
        .map(|&m| {
            if max == 0 {
                0
            } else {
                ((510 * m + max) / (2 * max)) as u8
            }
        })
        .collect();
    let direction =
        s.gx.iter()
            .zip(&s.gy)
            .map(|(&gx, &gy)| quantize_direction(gx, gy))
            .collect();
    Ok(GradientField {
        width: s.width,
        height: s.height,
        magnitude,
        direction,
    })
}
