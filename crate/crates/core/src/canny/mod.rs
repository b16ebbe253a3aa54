//! Deterministic Canny edge detection over an LSB-masked luminance plane.
//!
//! Stages: [`to_masked_gray`] → [`smooth`] → [`gradients`] →
//! [`non_max_suppression`] → [`hysteresis`]. Floating point appears only in
//! the Gaussian kernel and the smoothing sums; every stage boundary is an
//! integer grid, so the edge set is reproducible bit for bit.
//!
//! The grayscale projection ignores bits 0..2 of every channel. Rewriting
//! those bits can therefore never move an edge, which is what lets a receiver
//! rediscover the carrier pixels after they have been modified.

mod gradient;
mod gray;
mod hysteresis;
mod nms;
mod smooth;

pub use gradient::{gradients, quantize_direction, sobel, Direction, GradientField, SobelResponse};
pub use gray::{to_masked_gray, CHANNEL_MASK};
pub use hysteresis::hysteresis;
pub use nms::non_max_suppression;
pub use smooth::{gaussian_kernel, smooth};

use crate::error::{Error, Result};
use crate::image_io::RgbImage;

pub const MIN_SIGMA_TENTHS: u8 = 10;
pub const MAX_SIGMA_TENTHS: u8 = 30;

/// The three values sender and receiver must agree on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CannyParams {
    sigma_tenths: u8,
    low_threshold: u8,
    high_threshold: u8,
}

impl CannyParams {
    /// `sigma_tenths` is sigma × 10, so 15 means sigma = 1.5.
    pub fn new(sigma_tenths: u8, low_threshold: u8, high_threshold: u8) -> Result<Self> {
        if !(MIN_SIGMA_TENTHS..=MAX_SIGMA_TENTHS).contains(&sigma_tenths) {
            return Err(Error::ParamOutOfRange(format!(
                "sigma {}.{} is outside 1.0..=3.0",
                sigma_tenths / 10,
                sigma_tenths % 10
            )));
        }
        if low_threshold > high_threshold {
            return Err(Error::ParamOutOfRange(format!(
                "low threshold {low_threshold} exceeds high threshold {high_threshold}"
            )));
        }
        Ok(CannyParams {
            sigma_tenths,
            low_threshold,
            high_threshold,
        })
    }

    #[inline]
    pub fn sigma_tenths(&self) -> u8 {
        self.sigma_tenths
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        f64::from(self.sigma_tenths) / 10.0
    }

    #[inline]
    pub fn low_threshold(&self) -> u8 {
        self.low_threshold
    }

    #[inline]
    pub fn high_threshold(&self) -> u8 {
        self.high_threshold
    }
}

impl std::fmt::Display for CannyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sigma={}.{} low={} high={}",
            self.sigma_tenths / 10,
            self.sigma_tenths % 10,
            self.low_threshold,
            self.high_threshold
        )
    }
}

/// Single-channel 8-bit grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    values: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, values: Vec<u8>) -> Self {
        assert_eq!(values.len(), width * height, "gray buffer length");
        GrayImage {
            width,
            height,
            values,
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        GrayImage {
            width,
            height,
            values,
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
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.values[y * self.width + x]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }
}

/// Per-pixel edge membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    membership: Vec<bool>,
}

impl EdgeMap {
    pub fn empty(width: usize, height: usize) -> Self {
        EdgeMap {
            width,
            height,
            membership: vec![false; width * height],
        }
    }

    pub fn from_membership(width: usize, height: usize, membership: Vec<bool>) -> Self {
        assert_eq!(membership.len(), width * height, "edge map length");
        EdgeMap {
            width,
            height,
            membership,
        }
    }

    /// An edge map holding exactly the given coordinates.
    pub fn from_coords(width: usize, height: usize, coords: &[(usize, usize)]) -> Self {
        let mut map = EdgeMap::empty(width, height);
        for &(x, y) in coords {
            map.set(x, y, true);
        }
        map
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
    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        self.membership[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, edge: bool) {
        self.membership[y * self.width + x] = edge;
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    /// Number of edge pixels.
    pub fn count(&self) -> usize {
        self.membership.iter().filter(|&&e| e).count()
    }

    /// Edge coordinates in row-major order.
    pub fn coords(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(move |(i, _)| (i % w, i / w))
    }

    /// White-on-black rendering of the edge set.
    pub fn to_rgb(&self) -> RgbImage {
        RgbImage::from_fn(self.width, self.height, |x, y| {
            if self.is_edge(x, y) {
                [255; 3]
            } else {
                [0; 3]
            }
        })
    }
}

pub(crate) fn check_min_size(width: usize, height: usize) -> Result<()> {
    if width < 3 || height < 3 {
        return Err(Error::ImageTooSmall { width, height });
    }
    Ok(())
}

/// Runs the full pipeline on `image`.
///
/// Equal inputs give identical maps, and so does any image that differs from
/// `image` only in channel bits 0..2.
pub fn detect_edges(image: &RgbImage, params: &CannyParams) -> Result<EdgeMap> {
    check_min_size(image.width(), image.height())?;
    let gray = to_masked_gray(image);
    let smoothed = smooth(&gray, params);
    let field = gradients(&smoothed)?;
    let thinned = non_max_suppression(&field);
    Ok(hysteresis(&thinned, params))
}
