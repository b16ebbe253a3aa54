use super::{CannyParams, GrayImage};
use crate::error::{Error, Result};

/// Normalized 1-D Gaussian taps for `sigma`, indexed `-radius..=radius`
/// with `radius = ceil(3 * sigma)`.
pub fn gaussian_kernel(sigma: f64) -> Result<Vec<f64>> {
    if !(1.0..=3.0).contains(&sigma) {
        return Err(Error::ParamOutOfRange(format!(
            "gaussian sigma {sigma} is outside 1.0..=3.0"
        )));
    }
    let radius = (3.0 * sigma).ceil() as i64;
    let denom = 2.0 * sigma * sigma;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / denom).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in &mut taps {
        *t /= sum;
    }
    Ok(taps)
}

#[inline]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

/// Separable Gaussian blur with clamp-to-edge borders.
///
/// The horizontal pass feeds the vertical pass in full double precision; only
/// the final value is rounded half up to 8 bits.
pub fn smooth(gray: &GrayImage, params: &CannyParams) -> GrayImage {
    let kernel = gaussian_kernel(params.sigma()).expect("CannyParams keeps sigma in range");
    let radius = (kernel.len() / 2) as isize;
    let (w, h) = (gray.width(), gray.height());
    let src = gray.values();

    let mut horizontal = vec![0f64; w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0f64;
            for (k, &tap) in kernel.iter().enumerate() {
                let sx = clamp_index(x as isize + k as isize - radius, w);
                acc += tap * f64::from(row[sx]);
            }
            horizontal[y * w + x] = acc;
        }
    }

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0f64;
            for (k, &tap) in kernel.iter().enumerate() {
                let sy = clamp_index(y as isize + k as isize - radius, h);
                acc += tap * horizontal[sy * w + x];
            }
            out.push((acc + 0.5).floor().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(w, h, out)
}
