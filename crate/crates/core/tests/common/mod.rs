//! Brute-force reference implementations and fixtures shared by the
//! integration tests. None of this calls into the stage code it checks.
#![allow(dead_code)]

use edgestego::canny::Direction;
use edgestego::{CannyParams, EdgeMap, GrayImage, RgbImage};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The parameter sets exercised throughout: (sigma tenths, low, high).
pub const PARAM_SETS: [(u8, u8, u8); 4] = [(10, 20, 30), (15, 5, 40), (20, 20, 30), (30, 0, 255)];

pub fn params(set: (u8, u8, u8)) -> CannyParams {
    CannyParams::new(set.0, set.1, set.2).unwrap()
}

fn clamp(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

/// Direct 2-D Gaussian convolution with clamped borders.
pub fn smooth_2d(gray: &GrayImage, sigma: f64) -> GrayImage {
    let radius = (3.0 * sigma).ceil() as isize;
    let weight =
        |dx: isize, dy: isize| (-((dx * dx + dy * dy) as f64) / (2.0 * sigma * sigma)).exp();
    let mut total = 0.0;
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            total += weight(dx, dy);
        }
    }
    let (w, h) = (gray.width(), gray.height());
    GrayImage::from_fn(w, h, |x, y| {
        let mut acc = 0.0;
        for dy in -radius..=radius {
            for dx in -radius..=radius {
                let sx = clamp(x as isize + dx, w);
                let sy = clamp(y as isize + dy, h);
                acc += weight(dx, dy) * f64::from(gray.get(sx, sy));
            }
        }
        (acc / total).round().clamp(0.0, 255.0) as u8
    })
}

/// 3×3 Sobel by explicit correlation. `gy` is positive when the image is
/// brighter above the pixel.
pub fn sobel_3x3(gray: &GrayImage) -> (Vec<i32>, Vec<i32>) {
    const KX: [[i32; 3]; 3] = [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]];
    const KY: [[i32; 3]; 3] = [[1, 2, 1], [0, 0, 0], [-1, -2, -1]];
    let (w, h) = (gray.width(), gray.height());
    let mut gx = vec![0; w * h];
    let mut gy = vec![0; w * h];
    for y in 0..h {
        for x in 0..w {
            let (mut sx, mut sy) = (0, 0);
            for (r, (kx_row, ky_row)) in KX.iter().zip(&KY).enumerate() {
                for c in 0..3 {
                    let v = i32::from(gray.get(
                        clamp(x as isize + c as isize - 1, w),
                        clamp(y as isize + r as isize - 1, h),
                    ));
                    sx += kx_row[c] * v;
                    sy += ky_row[c] * v;
                }
            }
            gx[y * w + x] = sx;
            gy[y * w + x] = sy;
        }
    }
    (gx, gy)
}

/// Reference non-maximum suppression; neighbor offsets come from the unit
/// vector at the bin angle (y up), mapped into image coordinates (y down).
pub fn nms_reference(w: usize, h: usize, mag: &[u8], dir: &[Direction]) -> Vec<u8> {
    let mut out = vec![0u8; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let angle: f64 = match dir[i] {
                Direction::Deg0 => 0.0,
                Direction::Deg45 => 45.0,
                Direction::Deg90 => 90.0,
                Direction::Deg135 => 135.0,
            };
            let (ux, uy) = (
                angle.to_radians().cos().round() as isize,
                angle.to_radians().sin().round() as isize,
            );
            let mut keep = true;
            for sign in [1isize, -1] {
                let nx = x as isize + sign * ux;
                let ny = y as isize - sign * uy;
                let neighbor = if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    0
                } else {
                    mag[ny as usize * w + nx as usize]
                };
                if mag[i] < neighbor {
                    keep = false;
                }
            }
            out[i] = if keep { mag[i] } else { 0 };
        }
    }
    out
}

/// Hysteresis by relaxation to a fixpoint over the 8-neighbor graph.
pub fn hysteresis_fixpoint(w: usize, h: usize, mag: &[u8], low: u8, high: u8) -> Vec<bool> {
    let candidate = |m: u8| m > 0 && m >= low;
    let mut edge: Vec<bool> = mag.iter().map(|&m| m > 0 && m >= high).collect();
    loop {
        let mut changed = false;
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if edge[i] || !candidate(mag[i]) {
                    continue;
                }
                let linked = (-1isize..=1).any(|dy| {
                    (-1isize..=1).any(|dx| {
                        let (nx, ny) = (x as isize + dx, y as isize + dy);
                        nx >= 0
                            && ny >= 0
                            && nx < w as isize
                            && ny < h as isize
                            && edge[ny as usize * w + nx as usize]
                    })
                });
                if linked {
                    edge[i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return edge;
        }
    }
}

pub fn random_gray(rng: &mut TestRng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| rng.gen())
}

/// A cover with some structure: random rectangles and discs over a noisy
/// background, so edge maps are neither empty nor saturated.
pub fn random_cover(rng: &mut TestRng, w: usize, h: usize) -> RgbImage {
    let background: [u8; 3] = rng.gen();
    let mut img = RgbImage::from_fn(w, h, |_, _| background);
    for _ in 0..rng.gen_range(2..6) {
        let color: [u8; 3] = rng.gen();
        let (cx, cy) = (rng.gen_range(0..w) as f64, rng.gen_range(0..h) as f64);
        let r = rng.gen_range(3.0..(w.min(h) as f64 / 2.0));
        let disc = rng.gen_bool(0.5);
        for y in 0..h {
            for x in 0..w {
                let (dx, dy) = ((x as f64 - cx).abs(), (y as f64 - cy).abs());
                let inside = if disc {
                    dx * dx + dy * dy < r * r
                } else {
                    dx < r && dy < r * 0.6
                };
                if inside {
                    img.set(x, y, color);
                }
            }
        }
    }
    for px in img.pixels().to_vec().iter().enumerate() {
        let (i, &p) = px;
        let noisy = p.map(|c| c.saturating_add_signed(rng.gen_range(-6i8..=6)));
        img.set(i % w, i / w, noisy);
    }
    img
}

/// Flips `count` random bits among channel bits 0..2.
pub fn flip_low_bits(rng: &mut TestRng, img: &RgbImage, count: usize) -> RgbImage {
    let mut out = img.clone();
    for _ in 0..count {
        let x = rng.gen_range(0..img.width());
        let y = rng.gen_range(0..img.height());
        let c = rng.gen_range(0..3);
        let bit = rng.gen_range(0..3);
        out.get_mut(x, y)[c] ^= 1 << bit;
    }
    out
}

pub fn random_payload(rng: &mut TestRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen()).collect()
}

/// Number of 8-connected components among edge pixels.
pub fn edge_components(map: &EdgeMap) -> usize {
    let (w, h) = (map.width(), map.height());
    let mut seen = vec![false; w * h];
    let mut components = 0;
    for (sx, sy) in map.coords() {
        if seen[sy * w + sx] {
            continue;
        }
        components += 1;
        let mut stack = vec![(sx, sy)];
        seen[sy * w + sx] = true;
        while let Some((x, y)) = stack.pop() {
            for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                    if map.is_edge(nx, ny) && !seen[ny * w + nx] {
                        seen[ny * w + nx] = true;
                        stack.push((nx, ny));
                    }
                }
            }
        }
    }
    components
}
