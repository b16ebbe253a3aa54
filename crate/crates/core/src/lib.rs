//! Edge-guided image steganography.
//!
//! Payload bits replace the three least significant bits of every channel of
//! pixels that a parameterized Canny detector marks as edges. The detector
//! only looks at bits 3..7 of each channel, so the receiver recovers the exact
//! same pixel set from the carrier using the parameters stored in its first
//! row.
//!
//! ```
//! use edgestego::{embed, extract, CannyParams, RgbImage};
//!
//! let cover = RgbImage::from_fn(64, 48, |x, y| {
//!     if (x / 16 + y / 16) % 2 == 0 { [30, 60, 90] } else { [200, 190, 40] }
//! });
//! let params = CannyParams::new(15, 5, 40).unwrap();
//! let carrier = embed(&cover, b"hello", &params).unwrap();
//! let recovered = extract(&carrier).unwrap();
//! assert_eq!(recovered.payload, b"hello");
//! assert_eq!(recovered.params, params);
//! ```

pub mod canny;
pub mod carrier;
pub mod codec;
pub mod error;
pub mod image_io;
pub mod metrics;

pub use canny::{detect_edges, CannyParams, EdgeMap, GrayImage};
pub use carrier::{capacity_bytes, enumerate_carriers, CarrierSequence};
pub use codec::{embed, extract, read_header, Extracted, StegoHeader};
pub use error::{Error, Result};
pub use image_io::{read_bmp, write_bmp, RgbImage};
pub use metrics::{diff, verify_stability, DiffReport};
