use super::GrayImage;
use crate::image_io::RgbImage;

/// Clears the three embedding bits of a channel.
pub const CHANNEL_MASK: u8 = 0xF8;

/// BT.601 luma of the masked channels, rounded half up.
///
/// Integer weights summing to 1000 give the exact rounded value with no
/// floating point involved.
pub fn to_masked_gray(image: &RgbImage) -> GrayImage {
    let values = image
        .pixels()
        .iter()
        .map(|&[r, g, b]| {
            let r = u32::from(r & CHANNEL_MASK);
            let g = u32::from(g & CHANNEL_MASK);
            let b = u32::from(b & CHANNEL_MASK);
            ((299 * r + 587 * g + 114 * b + 500) / 1000).min(255) as u8
        })
        .collect();
    GrayImage::new(image.width(), image.height(), values)
}
