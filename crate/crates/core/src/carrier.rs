//! Edge map → ordered carrier pixels, and hiding capacity.
//!
//! Row 0 is reserved for the stego header and never carries payload, even
//! where it contains edges. The remaining edge pixels are used in row-major
//! order.

use crate::canny::EdgeMap;

/// Payload bits stored in one carrier pixel (3 LSBs × 3 channels).
pub const BITS_PER_CARRIER: usize = 9;

/// Rows at the top of the image that never carry payload.
pub const RESERVED_ROWS: usize = 1;

/// Carrier pixel coordinates `(x, y)`, strictly increasing in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CarrierSequence {
    coords: Vec<(usize, usize)>,
}

impl CarrierSequence {
    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, usize)> {
        self.coords.iter()
    }
}

impl<'a> IntoIterator for &'a CarrierSequence {
    type Item = &'a (usize, usize);
    type IntoIter = std::slice::Iter<'a, (usize, usize)>;

    fn into_iter(self) -> Self::IntoIter {
        self.coords.iter()
    }
}

pub fn enumerate_carriers(edges: &EdgeMap) -> CarrierSequence {
    CarrierSequence {
        coords: edges
            .coords()
            .filter(|&(_, y)| y >= RESERVED_ROWS)
            .collect(),
    }
}

/// Whole payload bytes that fit in `carrier_pixels` pixels.
#[inline]
pub fn capacity_for(carrier_pixels: usize) -> usize {
    carrier_pixels * BITS_PER_CARRIER / 8
}

pub fn capacity_bytes(edges: &EdgeMap) -> usize {
    let reserved = RESERVED_ROWS.min(edges.height()) * edges.width();
    let carriers = edges.membership()[reserved..]
        .iter()
        .filter(|&&e| e)
        .count();
    capacity_for(carriers)
}
