use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use edgestego::{read_bmp, write_bmp, RgbImage};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_edgestego"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .output()
        .expect("failed to spawn edgestego")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Checkerboard of colored blocks with a little texture.
fn cover() -> RgbImage {
    RgbImage::from_fn(96, 64, |x, y| {
        let block = (x / 16 + y / 16) % 3;
        let base = [[30u8, 60, 90], [210, 180, 40], [120, 20, 160]][block];
        base.map(|c| c.wrapping_add(((x * 7 + y * 13) % 5) as u8))
    })
}

fn write_cover(dir: &Path) -> String {
    let path = dir.join("cover.bmp");
    fs::write(&path, write_bmp(&cover())).unwrap();
    path.to_str().unwrap().to_owned()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn embed_then_extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_cover(dir.path());
    let secret = p(dir.path(), "secret.bin");
    let payload: Vec<u8> = (0..=255u8).cycle().take(300).collect();
    fs::write(&secret, &payload).unwrap();
    let carrier = p(dir.path(), "carrier.bmp");
    let cover_bytes = fs::read(&cover).unwrap();

    let o = run(&[
        "embed", "--in", &cover, "--data", &secret, "--sigma", "1.5", "--low", "5", "--high", "40",
        "--out", &carrier,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("carrier pixels:"), "{text}");
    assert!(text.contains("bytes used:     300"), "{text}");
    assert_eq!(fs::read(&cover).unwrap(), cover_bytes, "input modified");

    let recovered = p(dir.path(), "recovered.bin");
    let o = run(&["extract", "--in", &carrier, "--out", &recovered]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(&recovered).unwrap(), payload);
    assert!(
        stdout(&o).contains("sigma=1.5 low=5 high=40"),
        "{}",
        stdout(&o)
    );

    let o = run(&[
        "extract",
        "--in",
        &carrier,
        "--out",
        &recovered,
        "--expect-sigma",
        "1.5",
        "--expect-low",
        "5",
        "--expect-high",
        "40",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));

    let o = run(&[
        "extract",
        "--in",
        &carrier,
        "--out",
        &recovered,
        "--expect-sigma",
        "2.0",
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("ParamMismatch"));

    let o = run(&["inspect", "--in", &carrier]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("0x5347")
            && text.contains("sigma:          1.5")
            && text.contains("300 bytes"),
        "{text}"
    );

    let o = run(&["metrics", "--a", &cover, "--b", &carrier, "--machine"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!(line.starts_with("changed_pixels="), "{line}");
    let psnr: f64 = line
        .trim()
        .rsplit("psnr_db=")
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(psnr >= 31.23);
}

#[test]
fn capacity_reports_counts_and_coords() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_cover(dir.path());
    let o = run(&[
        "capacity", "--in", &cover, "--sigma", "2.0", "--low", "20", "--high", "30", "--coords",
        "5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let field = |key: &str| -> usize {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    let m = field("carrier pixels:");
    assert!(m > 0);
    assert_eq!(field("capacity bits:"), 9 * m);
    assert_eq!(field("capacity bytes:"), 9 * m / 8);
    let coords: Vec<&str> = text.lines().filter(|l| l.starts_with('(')).collect();
    assert_eq!(coords.len(), 5);
    assert!(
        coords.iter().all(|c| c.len() == 9 && c.ends_with(')')),
        "{coords:?}"
    );
}

#[test]
fn edges_output_is_binary() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_cover(dir.path());
    let out = p(dir.path(), "edges.bmp");
    let o = run(&[
        "edges", "--in", &cover, "--sigma", "1.0", "--low", "20", "--high", "40", "--out", &out,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let img = read_bmp(&fs::read(&out).unwrap()).unwrap();
    assert!(img
        .pixels()
        .iter()
        .all(|&px| px == [0; 3] || px == [255; 3]));
    assert!(img.pixels().contains(&[255; 3]));
}

#[test]
fn inspect_plain_image_is_bad_magic() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_cover(dir.path());
    let o = run(&["inspect", "--in", &cover]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("BadMagic"));
    assert!(stderr(&o).contains("hint:"));
}

#[test]
fn error_classes_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write_cover(dir.path());
    let junk = p(dir.path(), "junk.bmp");
    fs::write(&junk, b"not a bitmap").unwrap();
    let big = p(dir.path(), "big.bin");
    fs::write(&big, vec![0u8; 100_000]).unwrap();
    let out = p(dir.path(), "out.bmp");

    // usage
    assert_eq!(run(&["embed"]).status.code(), Some(1));
    assert_eq!(
        run(&["capacity", "--in", &cover, "--sigma", "1.55", "--low", "1", "--high", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["capacity", "--in", &cover, "--sigma", "1.5", "--low", "50", "--high", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["capacity", "--in", &cover, "--sigma", "1.5", "--low", "1", "--high", "256"])
            .status
            .code(),
        Some(1)
    );
    // io
    let missing = p(dir.path(), "missing.bmp");
    assert_eq!(run(&["inspect", "--in", &missing]).status.code(), Some(2));
    // format
    let o = run(&["inspect", "--in", &junk]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("MalformedFile"));
    // capacity
    let o = run(&[
        "embed", "--in", &cover, "--data", &big, "--sigma", "1.5", "--low", "5", "--high", "40",
        "--out", &out,
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("CapacityExceeded"));
    assert!(!Path::new(&out).exists());
    // refuses to overwrite its input
    let o = run(&[
        "edges", "--in", &cover, "--sigma", "1.5", "--low", "5", "--high", "40", "--out", &cover,
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn narrow_image_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let narrow = p(dir.path(), "narrow.bmp");
    fs::write(&narrow, write_bmp(&RgbImage::new(20, 20))).unwrap();
    let data = p(dir.path(), "d.bin");
    fs::write(&data, b"").unwrap();
    let out = p(dir.path(), "out.bmp");
    let o = run(&[
        "embed", "--in", &narrow, "--data", &data, "--sigma", "1.0", "--low", "0", "--high", "10",
        "--out", &out,
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("ImageTooNarrow"));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("embed"));
}
