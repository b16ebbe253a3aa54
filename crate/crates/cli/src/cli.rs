//! Argument definitions and subcommand dispatch.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use edgestego::carrier::capacity_for;
use edgestego::codec::HEADER_MAGIC;
use edgestego::metrics::format_psnr;
use edgestego::{
    detect_edges, diff, embed, enumerate_carriers, extract, read_bmp, read_header, write_bmp,
    CannyParams, Error, RgbImage,
};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_FORMAT: u8 = 3;
pub const EXIT_CAPACITY: u8 = 4;
pub const EXIT_EXTRACTION: u8 = 5;

/// Hide data in the edge pixels of 24-bit BMP images.
#[derive(Debug, Parser)]
#[command(name = "edgestego", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hide a file inside a cover image.
    Embed {
        #[arg(long = "in", value_name = "BMP")]
        input: PathBuf,
        /// File whose bytes are hidden.
        #[arg(long, value_name = "FILE")]
        data: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_name = "BMP")]
        out: PathBuf,
    },
    /// Recover the hidden file from a carrier image.
    Extract {
        #[arg(long = "in", value_name = "BMP")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Fail unless the carrier was made with this sigma.
        #[arg(long, value_parser = parse_sigma, value_name = "SIGMA")]
        expect_sigma: Option<u8>,
        #[arg(long, value_name = "0..255")]
        expect_low: Option<u8>,
        #[arg(long, value_name = "0..255")]
        expect_high: Option<u8>,
    },
    /// Report how many bytes an image can hide.
    Capacity {
        #[arg(long = "in", value_name = "BMP")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Also list the first N carrier coordinates.
        #[arg(long, value_name = "N")]
        coords: Option<usize>,
    },
    /// Render the detected edges as a white-on-black BMP.
    Edges {
        #[arg(long = "in", value_name = "BMP")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_name = "BMP")]
        out: PathBuf,
    },
    /// Print the header of a carrier image.
    Inspect {
        #[arg(long = "in", value_name = "BMP")]
        input: PathBuf,
    },
    /// Compare two images of equal size.
    Metrics {
        #[arg(long, value_name = "BMP")]
        a: PathBuf,
        #[arg(long, value_name = "BMP")]
        b: PathBuf,
        /// Print a single key=value line instead of the table.
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Gaussian sigma, 1.0 to 3.0 with one decimal.
    #[arg(long, value_parser = parse_sigma, value_name = "SIGMA")]
    sigma: u8,
    /// Low hysteresis threshold.
    #[arg(long, value_name = "0..255")]
    low: u8,
    /// High hysteresis threshold.
    #[arg(long, value_name = "0..255")]
    high: u8,
}

impl ParamArgs {
    fn to_params(&self) -> Result<CannyParams, CliError> {
        Ok(CannyParams::new(self.sigma, self.low, self.high)?)
    }
}

/// Parses "D.D" into tenths; anything else is rejected.
pub fn parse_sigma(s: &str) -> Result<u8, String> {
    let bytes = s.as_bytes();
    let well_formed = bytes.len() == 3
        && bytes[0].is_ascii_digit()
        && bytes[1] == b'.'
        && bytes[2].is_ascii_digit();
    if !well_formed {
        return Err(format!(
            "expected a value like 1.5 with exactly one decimal, got {s:?}"
        ));
    }
    let tenths = (bytes[0] - b'0') * 10 + (bytes[2] - b'0');
    if !(10..=30).contains(&tenths) {
        return Err(format!("sigma {s} is outside 1.0..=3.0"));
    }
    Ok(tenths)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, source: io::Error },
    Library(Error),
    ParamMismatch(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::ParamMismatch(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::Library(e) => e.name(),
            CliError::ParamMismatch(_) => "ParamMismatch",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::ParamMismatch(_) => EXIT_EXTRACTION,
            CliError::Library(e) => match e {
                Error::ParamOutOfRange(_) => EXIT_USAGE,
                Error::MalformedFile(_)
                | Error::UnsupportedFormat(_)
                | Error::ZeroDimension
                | Error::DimensionMismatch { .. } => EXIT_FORMAT,
                Error::ImageTooSmall { .. }
                | Error::ImageTooNarrow { .. }
                | Error::CapacityExceeded { .. }
                | Error::PayloadTooLarge(_) => EXIT_CAPACITY,
                Error::BadMagic { .. }
                | Error::UnsupportedVersion(_)
                | Error::CorruptHeader(_)
                | Error::TruncatedPayload { .. } => EXIT_EXTRACTION,
            },
        }
    }

    pub fn hint(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "run with --help to see the expected arguments",
            CliError::Io { .. } => "check that the path exists and is readable or writable",
            CliError::ParamMismatch(_) => {
                "the carrier was made with different parameters; confirm them with the sender"
            }
            CliError::Library(e) => match e {
                Error::MalformedFile(_) => {
                    "the file is not a valid BMP; re-export it as a 24-bit BMP"
                }
                Error::UnsupportedFormat(_) => {
                    "convert the image to an uncompressed 24-bit BMP without a palette"
                }
                Error::ZeroDimension => "use an image with at least one row and column",
                Error::ImageTooSmall { .. } => "use an image of at least 3x3 pixels",
                Error::ImageTooNarrow { .. } => "use an image at least 27 pixels wide",
                Error::ParamOutOfRange(_) => "sigma must be 1.0..3.0 and low must not exceed high",
                Error::CapacityExceeded { .. } => {
                    "use a smaller payload, a larger or busier image, or lower thresholds"
                }
                Error::PayloadTooLarge(_) => "split the payload into pieces under 4 GiB",
                Error::BadMagic { .. } => {
                    "this image does not carry a payload written by this tool"
                }
                Error::UnsupportedVersion(_) => {
                    "the carrier was written by a newer version of the tool"
                }
                Error::CorruptHeader(_) => {
                    "the carrier header is damaged; obtain an unmodified copy"
                }
                Error::TruncatedPayload { .. } => {
                    "the carrier was altered after embedding; obtain an unmodified copy"
                }
                Error::DimensionMismatch { .. } => "compare images of the same size",
            },
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_image(path: &Path) -> Result<RgbImage, CliError> {
    Ok(read_bmp(&read_file(path)?)?)
}

/// Refuses to overwrite an input file.
fn check_distinct(input: &Path, out: &Path) -> Result<(), CliError> {
    let same = match (fs::canonicalize(input), fs::canonicalize(out)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    if same {
        return Err(CliError::Usage(format!(
            "output {} would overwrite the input",
            out.display()
        )));
    }
    Ok(())
}

fn sigma_str(tenths: u8) -> String {
    format!("{}.{}", tenths / 10, tenths % 10)
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Embed {
            input,
            data,
            params,
            out: out_path,
        } => {
            check_distinct(&input, &out_path)?;
            check_distinct(&data, &out_path)?;
            let params = params.to_params()?;
            let cover = load_image(&input)?;
            let payload = read_file(&data)?;
            let carrier = embed(&cover, &payload, &params)?;
            write_file(&out_path, &write_bmp(&carrier))?;

            let m = enumerate_carriers(&detect_edges(&cover, &params)?).len();
            let used = (payload.len() * 8).div_ceil(9);
            writeln!(out, "parameters:     {params}").map_err(stdout_err)?;
            writeln!(out, "carrier pixels: {m}").map_err(stdout_err)?;
            writeln!(out, "capacity:       {} bytes", capacity_for(m)).map_err(stdout_err)?;
            writeln!(
                out,
                "bytes used:     {} ({used} carrier pixels)",
                payload.len()
            )
            .map_err(stdout_err)?;
            writeln!(out, "wrote {}", out_path.display()).map_err(stdout_err)?;
        }
        Command::Extract {
            input,
            out: out_path,
            expect_sigma,
            expect_low,
            expect_high,
        } => {
            check_distinct(&input, &out_path)?;
            let carrier = load_image(&input)?;
            let header = read_header(&carrier)?;
            let p = header.params;
            let mut mismatches = Vec::new();
            if let Some(s) = expect_sigma.filter(|&s| s != p.sigma_tenths()) {
                mismatches.push(format!(
                    "sigma {} (expected {})",
                    sigma_str(p.sigma_tenths()),
                    sigma_str(s)
                ));
            }
            if let Some(l) = expect_low.filter(|&l| l != p.low_threshold()) {
                mismatches.push(format!("low {} (expected {l})", p.low_threshold()));
            }
            if let Some(h) = expect_high.filter(|&h| h != p.high_threshold()) {
                mismatches.push(format!("high {} (expected {h})", p.high_threshold()));
            }
            if !mismatches.is_empty() {
                return Err(CliError::ParamMismatch(format!(
                    "carrier header has {}",
                    mismatches.join(", ")
                )));
            }
            let recovered = extract(&carrier)?;
            write_file(&out_path, &recovered.payload)?;
            writeln!(out, "parameters: {}", recovered.params).map_err(stdout_err)?;
            writeln!(out, "recovered:  {} bytes", recovered.payload.len()).map_err(stdout_err)?;
            writeln!(out, "wrote {}", out_path.display()).map_err(stdout_err)?;
        }
        Command::Capacity {
            input,
            params,
            coords,
        } => {
            let params = params.to_params()?;
            let image = load_image(&input)?;
            let edges = detect_edges(&image, &params)?;
            let carriers = enumerate_carriers(&edges);
            let m = carriers.len();
            writeln!(out, "edge pixels:    {}", edges.count()).map_err(stdout_err)?;
            writeln!(out, "carrier pixels: {m}").map_err(stdout_err)?;
            writeln!(out, "capacity bits:  {}", m * 9).map_err(stdout_err)?;
            writeln!(out, "capacity bytes: {}", capacity_for(m)).map_err(stdout_err)?;
            if let Some(n) = coords {
                for &(x, y) in carriers.iter().take(n) {
                    writeln!(out, "({x:03},{y:03})").map_err(stdout_err)?;
                }
            }
        }
        Command::Edges {
            input,
            params,
            out: out_path,
        } => {
            check_distinct(&input, &out_path)?;
            let params = params.to_params()?;
            let edges = detect_edges(&load_image(&input)?, &params)?;
            write_file(&out_path, &write_bmp(&edges.to_rgb()))?;
            writeln!(out, "edge pixels: {}", edges.count()).map_err(stdout_err)?;
            writeln!(out, "wrote {}", out_path.display()).map_err(stdout_err)?;
        }
        Command::Inspect { input } => {
            let header = read_header(&load_image(&input)?)?;
            let p = header.params;
            writeln!(out, "magic:          {HEADER_MAGIC:#06x}").map_err(stdout_err)?;
            writeln!(out, "version:        {}", edgestego::codec::HEADER_VERSION)
                .map_err(stdout_err)?;
            writeln!(out, "sigma:          {}", sigma_str(p.sigma_tenths())).map_err(stdout_err)?;
            writeln!(out, "low threshold:  {}", p.low_threshold()).map_err(stdout_err)?;
            writeln!(out, "high threshold: {}", p.high_threshold()).map_err(stdout_err)?;
            writeln!(out, "payload length: {} bytes", header.payload_len).map_err(stdout_err)?;
        }
        Command::Metrics { a, b, machine } => {
            let report = diff(&load_image(&a)?, &load_image(&b)?)?;
            if machine {
                writeln!(out, "{}", report.to_record()).map_err(stdout_err)?;
            } else {
                writeln!(out, "changed pixels     {}", report.changed_pixels)
                    .map_err(stdout_err)?;
                writeln!(out, "changed channels   {}", report.changed_channels)
                    .map_err(stdout_err)?;
                writeln!(out, "max channel delta  {}", report.max_channel_delta)
                    .map_err(stdout_err)?;
                writeln!(out, "mse                {:.6}", report.mse).map_err(stdout_err)?;
                writeln!(out, "psnr               {} dB", format_psnr(report.psnr_db))
                    .map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}
