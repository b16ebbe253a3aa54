//! Distortion measurements between a cover and its carrier.

use crate::canny::{detect_edges, CannyParams};
use crate::error::{Error, Result};
use crate::image_io::RgbImage;

#[derive(Debug, Clone, PartialEq)]
pub struct DiffReport {
    pub changed_pixels: usize,
    pub changed_channels: usize,
    pub max_channel_delta: u8,
    pub mse: f64,
    /// `f64::INFINITY` when the images are identical.
    pub psnr_db: f64,
}

impl DiffReport {
    /// One-line `key=value` record.
    pub fn to_record(&self) -> String {
        format!(
            "changed_pixels={} changed_channels={} max_channel_delta={} mse={:.6} psnr_db={}",
            self.changed_pixels,
            self.changed_channels,
            self.max_channel_delta,
            self.mse,
            format_psnr(self.psnr_db)
        )
    }
}

/// PSNR with four decimals, or `inf`.
pub fn format_psnr(psnr_db: f64) -> String {
    if psnr_db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{psnr_db:.4}")
    }
}

fn check_same_size(a: &RgbImage, b: &RgbImage) -> Result<()> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            a_width: a.width(),
            a_height: a.height(),
            b_width: b.width(),
            b_height: b.height(),
        });
    }
    Ok(())
}

pub fn psnr(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0f64 * 255.0 / mse).log10()
    }
}

pub fn diff(a: &RgbImage, b: &RgbImage) -> Result<DiffReport> {
    check_same_size(a, b)?;
    let mut changed_pixels = 0;
    let mut changed_channels = 0;
    let mut max_channel_delta = 0u8;
    let mut sq_sum = 0u64;
    for (pa, pb) in a.pixels().iter().zip(b.pixels()) {
        if pa != pb {
            changed_pixels += 1;
        }
        for (&ca, &cb) in pa.iter().zip(pb) {
            let d = ca.abs_diff(cb);
            if d != 0 {
                changed_channels += 1;
                max_channel_delta = max_channel_delta.max(d);
                sq_sum += u64::from(d) * u64::from(d);
            }
        }
    }
    let mse = sq_sum as f64 / (3 * a.pixels().len()) as f64;
    Ok(DiffReport {
        changed_pixels,
        changed_channels,
        max_channel_delta,
        mse,
        psnr_db: psnr(mse),
    })
}

/// True iff both images yield the same edge map under `params`.
pub fn verify_stability(
    original: &RgbImage,
    carrier: &RgbImage,
    params: &CannyParams,
) -> Result<bool> {
    check_same_size(original, carrier)?;
    Ok(detect_edges(original, params)? == detect_edges(carrier, params)?)
}
