//! Covering and uncovering: header framing, 3-LSB bit packing, embed/extract.
//!
//! # Carrier layout
//!
//! Header (80 bits, each field MSB-first, in this order):
//!
//! | field          | bits |
//! |----------------|------|
//! | magic `0x5347` | 16   |
//! | version `1`    | 8    |
//! | sigma × 10     | 8    |
//! | low threshold  | 8    |
//! | high threshold | 8    |
//! | payload length | 32   |
//!
//! Header bits go into bit 0 of R, G, B of pixels `(0,0)`, `(1,0)`, … `(26,0)`;
//! the B channel of `(26,0)` is left alone.
//!
//! Payload bytes are serialized MSB-first and consumed 9 bits per carrier
//! pixel: bits `q..q+3` land in R bits 2,1,0, `q+3..q+6` in G, `q+6..q+9` in B.
//! The final pixel is zero-padded.

use crate::canny::{check_min_size, detect_edges, CannyParams};
use crate::carrier::{capacity_for, enumerate_carriers, BITS_PER_CARRIER};
use crate::error::{Error, Result};
use crate::image_io::RgbImage;

pub const HEADER_MAGIC: u16 = 0x5347;
pub const HEADER_VERSION: u8 = 1;
pub const HEADER_BITS: usize = 80;
const HEADER_BYTES: usize = HEADER_BITS / 8;
/// Pixels of row 0 holding the header, one bit per channel.
pub const HEADER_PIXELS: usize = HEADER_BITS.div_ceil(3);

/// Embedding bits per channel.
const LSB_COUNT: u8 = 3;

/// Parameters and payload length stored in the carrier's reserved row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoHeader {
    pub params: CannyParams,
    pub payload_len: u32,
}

impl StegoHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_BYTES] {
        let mut out = [0u8; HEADER_BYTES];
        out[0..2].copy_from_slice(&HEADER_MAGIC.to_be_bytes());
        out[2] = HEADER_VERSION;
        out[3] = self.params.sigma_tenths();
        out[4] = self.params.low_threshold();
        out[5] = self.params.high_threshold();
        out[6..10].copy_from_slice(&self.payload_len.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8; HEADER_BYTES]) -> Result<Self> {
        let magic = u16::from_be_bytes([bytes[0], bytes[1]]);
        if magic != HEADER_MAGIC {
            return Err(Error::BadMagic { found: magic });
        }
        if bytes[2] != HEADER_VERSION {
            return Err(Error::UnsupportedVersion(bytes[2]));
        }
        let params = CannyParams::new(bytes[3], bytes[4], bytes[5]).map_err(|e| match e {
            Error::ParamOutOfRange(msg) => Error::CorruptHeader(msg),
            other => other,
        })?;
        let payload_len = u32::from_be_bytes(bytes[6..10].try_into().unwrap());
        Ok(StegoHeader {
            params,
            payload_len,
        })
    }
}

/// Replaces the `n` low bits of `value` with `bits`.
#[inline]
pub fn lsb_replace(value: u8, n: u8, bits: u8) -> u8 {
    debug_assert!((1..=8).contains(&n));
    let mask = ((1u16 << n) - 1) as u8;
    debug_assert!(bits <= mask, "{bits:#b} does not fit in {n} bits");
    (value & !mask) | (bits & mask)
}

/// Serializes bytes MSB-first.
pub fn pack_bits(data: &[u8]) -> Vec<bool> {
    data.iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1 == 1))
        .collect()
}

/// Inverse of [`pack_bits`]; a trailing partial byte is dropped.
pub fn unpack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks_exact(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b)))
        .collect()
}

fn check_carrier_shape(image: &RgbImage) -> Result<()> {
    check_min_size(image.width(), image.height())?;
    if image.width() < HEADER_PIXELS {
        return Err(Error::ImageTooNarrow {
            width: image.width(),
            required: HEADER_PIXELS,
        });
    }
    Ok(())
}

fn write_header(image: &mut RgbImage, header: &StegoHeader) {
    let bits = pack_bits(&header.to_bytes());
    for (i, chunk) in bits.chunks(3).enumerate() {
        let px = image.get_mut(i, 0);
        for (channel, &bit) in px.iter_mut().zip(chunk) {
            *channel = lsb_replace(*channel, 1, u8::from(bit));
        }
    }
}

/// Reads and validates the header without running edge detection.
pub fn read_header(carrier: &RgbImage) -> Result<StegoHeader> {
    check_carrier_shape(carrier)?;
    let bits: Vec<bool> = (0..HEADER_PIXELS)
        .flat_map(|x| carrier.get(x, 0))
        .take(HEADER_BITS)
        .map(|channel| channel & 1 == 1)
        .collect();
    let bytes: [u8; HEADER_BYTES] = unpack_bits(&bits).try_into().unwrap();
    StegoHeader::from_bytes(&bytes)
}

/// Hides `payload` in the edge pixels of `image` and records `params` and the
/// payload length in row 0. The input is left untouched.
pub fn embed(image: &RgbImage, payload: &[u8], params: &CannyParams) -> Result<RgbImage> {
    check_carrier_shape(image)?;
    let payload_len =
        u32::try_from(payload.len()).map_err(|_| Error::PayloadTooLarge(payload.len()))?;

    let carriers = enumerate_carriers(&detect_edges(image, params)?);
    let available = capacity_for(carriers.len());
    if payload.len() > available {
        return Err(Error::CapacityExceeded {
            available,
            required: payload.len(),
        });
    }

    let mut out = image.clone();
    write_header(
        &mut out,
        &StegoHeader {
            params: *params,
            payload_len,
        },
    );

    let bits = pack_bits(payload);
    for (&(x, y), group) in carriers.iter().zip(bits.chunks(BITS_PER_CARRIER)) {
        let px = out.get_mut(x, y);
        for (c, channel) in px.iter_mut().enumerate() {
            let field = group
                .iter()
                .skip(c * 3)
                .take(3)
                .chain(std::iter::repeat(&false))
                .take(3)
                .fold(0u8, |acc, &b| (acc << 1) | u8::from(b));
            *channel = lsb_replace(*channel, LSB_COUNT, field);
        }
    }
    Ok(out)
}

/// Payload and parameters recovered from a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub payload: Vec<u8>,
    pub params: CannyParams,
}

/// Recovers the payload by re-running edge detection with the parameters
/// found in the header.
pub fn extract(carrier: &RgbImage) -> Result<Extracted> {
    let header = read_header(carrier)?;
    let declared = header.payload_len as usize;
    let carriers = enumerate_carriers(&detect_edges(carrier, &header.params)?);
    let capacity = capacity_for(carriers.len());
    if declared > capacity {
        return Err(Error::TruncatedPayload { declared, capacity });
    }

    let needed_bits = declared * 8;
    let needed_pixels = needed_bits.div_ceil(BITS_PER_CARRIER);
    let mut bits = Vec::with_capacity(needed_pixels * BITS_PER_CARRIER);
    for &(x, y) in carriers.iter().take(needed_pixels) {
        for channel in carrier.get(x, y) {
            for shift in (0..LSB_COUNT).rev() {
                bits.push((channel >> shift) & 1 == 1);
            }
        }
    }
    bits.truncate(needed_bits);
    Ok(Extracted {
        payload: unpack_bits(&bits),
        params: header.params,
    })
}
