//! 24-bit uncompressed BMP reading and writing.
//!
//! The reader accepts `BITMAPINFOHEADER` (40 bytes) and the V4/V5 extensions,
//! in either row order, with `biBitCount == 24` and `BI_RGB`. Anything carrying
//! a color table or a non-RGB compression is rejected rather than converted.
//! The writer always emits a bottom-up file with a 40-byte info header.

use crate::error::{Error, Result};

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;
const V4_HEADER_LEN: usize = 108;
const V5_HEADER_LEN: usize = 124;
/// 72 DPI expressed in pixels per metre.
const PIXELS_PER_METRE: i32 = 2835;

/// An 8-bit-per-channel RGB pixel grid, row-major with the origin top-left.
#[derive(Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    /// A black image. Panics if either dimension is zero.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be non-zero");
        RgbImage {
            width,
            height,
            pixels: vec![[0; 3]; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimension);
        }
        if pixels.len() != width * height {
            return Err(Error::MalformedFile(format!(
                "pixel buffer holds {} pixels, expected {}x{}",
                pixels.len(),
                width,
                height
            )));
        }
        Ok(RgbImage {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be non-zero");
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        RgbImage {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn get_mut(&mut self, x: usize, y: usize) -> &mut [u8; 3] {
        &mut self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        self.pixels[y * self.width + x] = rgb;
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<[u8; 3]> {
        self.pixels
    }
}

impl std::fmt::Debug for RgbImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RgbImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

/// Bytes per stored row, including padding to a 4-byte boundary.
#[inline]
pub fn row_stride(width: usize) -> usize {
    (width * 3).div_ceil(4) * 4
}

fn u16_at(bytes: &[u8], offset: usize) -> u16 {
    u16::from_le_bytes([bytes[offset], bytes[offset + 1]])
}

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

fn i32_at(bytes: &[u8], offset: usize) -> i32 {
    i32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

/// Decodes a 24-bit `BI_RGB` BMP.
pub fn read_bmp(bytes: &[u8]) -> Result<RgbImage> {
    if bytes.len() < FILE_HEADER_LEN + 4 {
        return Err(Error::MalformedFile("file shorter than its headers".into()));
    }
    if &bytes[0..2] != b"BM" {
        return Err(Error::MalformedFile("missing 'BM' signature".into()));
    }
    let data_offset = u32_at(bytes, 10) as usize;
    let info_len = u32_at(bytes, 14) as usize;
    match info_len {
        INFO_HEADER_LEN | V4_HEADER_LEN | V5_HEADER_LEN => {}
        12 | 64 => {
            return Err(Error::UnsupportedFormat(format!(
                "{info_len}-byte info header (OS/2 bitmap)"
            )))
        }
        other => {
            return Err(Error::MalformedFile(format!(
                "unrecognised info header size {other}"
            )))
        }
    }
    if bytes.len() < FILE_HEADER_LEN + info_len {
        return Err(Error::MalformedFile("truncated info header".into()));
    }

    let h = FILE_HEADER_LEN;
    let raw_width = i32_at(bytes, h + 4);
    let raw_height = i32_at(bytes, h + 8);
    let planes = u16_at(bytes, h + 12);
    let bit_count = u16_at(bytes, h + 14);
    let compression = u32_at(bytes, h + 16);
    let colors_used = u32_at(bytes, h + 32);

    if planes != 1 {
        return Err(Error::MalformedFile(format!(
            "plane count {planes}, expected 1"
        )));
    }
    if bit_count != 24 {
        return Err(Error::UnsupportedFormat(format!(
            "{bit_count} bits per pixel, only 24 is supported"
        )));
    }
    if compression != 0 {
        return Err(Error::UnsupportedFormat(format!(
            "compression type {compression}, only BI_RGB (0) is supported"
        )));
    }
    if colors_used != 0 {
        return Err(Error::UnsupportedFormat(format!(
            "color table with {colors_used} entries"
        )));
    }
    if raw_width == 0 || raw_height == 0 {
        return Err(Error::ZeroDimension);
    }
    if raw_width < 0 {
        return Err(Error::MalformedFile(format!("negative width {raw_width}")));
    }
    if raw_height == i32::MIN {
        return Err(Error::MalformedFile("height out of range".into()));
    }

    let width = raw_width as usize;
    let top_down = raw_height < 0;
    let height = raw_height.unsigned_abs() as usize;
    let stride = row_stride(width);

    if data_offset < FILE_HEADER_LEN + info_len {
        return Err(Error::MalformedFile(format!(
            "pixel data offset {data_offset} overlaps the headers"
        )));
    }
    let data_len = stride
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedFile("image dimensions overflow".into()))?;
    let data = data_offset
        .checked_add(data_len)
        .and_then(|end| bytes.get(data_offset..end))
        .ok_or_else(|| Error::MalformedFile("truncated pixel data".into()))?;

    let mut pixels = vec![[0u8; 3]; width * height];
    for (file_row, row) in data.chunks_exact(stride).enumerate() {
        let y = if top_down {
            file_row
        } else {
            height - 1 - file_row
        };
        let dst = &mut pixels[y * width..(y + 1) * width];
        for (px, bgr) in dst.iter_mut().zip(row.chunks_exact(3)) {
            *px = [bgr[2], bgr[1], bgr[0]];
        }
    }
    Ok(RgbImage {
        width,
        height,
        pixels,
    })
}

/// Encodes an image as a bottom-up 24-bit BMP with a 40-byte info header.
pub fn write_bmp(image: &RgbImage) -> Vec<u8> {
    let stride = row_stride(image.width);
    let data_len = stride * image.height;
    let data_offset = FILE_HEADER_LEN + INFO_HEADER_LEN;
    let file_len = data_offset + data_len;

    let mut out = Vec::with_capacity(file_len);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&(file_len as u32).to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(data_offset as u32).to_le_bytes());

    out.extend_from_slice(&(INFO_HEADER_LEN as u32).to_le_bytes());
    out.extend_from_slice(&(image.width as i32).to_le_bytes());
    out.extend_from_slice(&(image.height as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METRE.to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METRE.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());

    let pad = stride - image.width * 3;
    for row in image.pixels.chunks_exact(image.width).rev() {
        for &[r, g, b] in row {
            out.extend_from_slice(&[b, g, r]);
        }
        out.extend(std::iter::repeat_n(0u8, pad));
    }
    out
}
