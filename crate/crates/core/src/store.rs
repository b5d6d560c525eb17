//! On-disk datasets: PBM (P1) curve images, PGM (P2, maxval 2) masks and a
//! `manifest.json` listing every image/mask pair.
//!
//! Writers are deterministic: identical datasets produce identical bytes.

use std::fs;
use std::path::{Component, Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{CurveScreen, Dataset, GeneratorParams, Split, SplitCounts};
use crate::geometry::{BinaryImage, Dims};
use crate::oracle::{flood_fill_outside, InsidenessMask, Label};

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";
pub const MASK_MAXVAL: u8 = 2;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{what}: {message}")]
    Parse { what: String, message: String },
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("manifest: {0}")]
    Manifest(String),
}

fn parse_err(what: &str, message: impl Into<String>) -> StoreError {
    StoreError::Parse {
        what: what.to_string(),
        message: message.into(),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

// ---------------------------------------------------------------------------
// Netpbm

/// P1 text, one image row per line, digits unseparated.
pub fn write_pbm(img: &BinaryImage) -> String {
    let mut out = format!("P1\n{} {}\n", img.width(), img.height());
    for row in img.data().chunks(img.width()) {
        out.extend(row.iter().map(|&v| if v == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// P2 text with maxval 2: 0 outside, 1 inside, 2 curve.
pub fn write_pgm_mask(mask: &InsidenessMask) -> String {
    let dims = mask.dims();
    let mut out = format!("P2\n{} {}\n{}\n", dims.width, dims.height, MASK_MAXVAL);
    for row in mask.labels().chunks(dims.width) {
        let line: Vec<String> = row.iter().map(|l| l.level().to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Splits netpbm text into header tokens and the remaining body, dropping
/// `#` comments.
struct Tokens<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn skip_space(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn next_token(&mut self) -> Option<&'a str> {
        self.skip_space();
        let bytes = self.text.as_bytes();
        let start = self.pos;
        while self.pos < bytes.len()
            && !bytes[self.pos].is_ascii_whitespace()
            && bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn next_number(&mut self, what: &str, field: &str) -> Result<usize, StoreError> {
        let tok = self
            .next_token()
            .ok_or_else(|| parse_err(what, format!("missing {field}")))?;
        tok.parse()
            .map_err(|_| parse_err(what, format!("bad {field} `{tok}`")))
    }

    /// Next single P1 digit; P1 allows digits without separators.
    fn next_bit(&mut self) -> Option<u8> {
        self.skip_space();
        let b = *self.text.as_bytes().get(self.pos)?;
        self.pos += 1;
        Some(b)
    }
}

fn header(tokens: &mut Tokens<'_>, magic: &str, what: &str) -> Result<Dims, StoreError> {
    match tokens.next_token() {
        Some(m) if m == magic => {}
        Some(m) => return Err(parse_err(what, format!("expected {magic}, found `{m}`"))),
        None => return Err(parse_err(what, "empty file")),
    }
    let width = tokens.next_number(what, "width")?;
    let height = tokens.next_number(what, "height")?;
    if width == 0 || height == 0 {
        return Err(parse_err(what, "zero-sized image"));
    }
    Ok(Dims::new(height, width))
}

pub fn parse_pbm(text: &str, what: &str) -> Result<BinaryImage, StoreError> {
    let mut t = Tokens::new(text);
    let dims = header(&mut t, "P1", what)?;
    let mut data = Vec::with_capacity(dims.len());
    for i in 0..dims.len() {
        match t.next_bit() {
            Some(b'0') => data.push(0),
            Some(b'1') => data.push(1),
            Some(c) => {
                return Err(parse_err(
                    what,
                    format!("pixel {i}: unexpected `{}`", c as char),
                ))
            }
            None => {
                return Err(parse_err(
                    what,
                    format!("truncated after {i} of {} pixels", dims.len()),
                ))
            }
        }
    }
    if t.next_token().is_some() {
        return Err(parse_err(what, "trailing data"));
    }
    BinaryImage::from_vec(dims.height, dims.width, data).map_err(|e| parse_err(what, e.to_string()))
}

pub fn parse_pgm_mask(text: &str, what: &str) -> Result<InsidenessMask, StoreError> {
    let mut t = Tokens::new(text);
    let dims = header(&mut t, "P2", what)?;
    let maxval = t.next_number(what, "maxval")?;
    if maxval != MASK_MAXVAL as usize {
        return Err(parse_err(
            what,
            format!("maxval must be {MASK_MAXVAL}, found {maxval}"),
        ));
    }
    let mut labels = Vec::with_capacity(dims.len());
    for i in 0..dims.len() {
        let v = t.next_number(what, &format!("pixel {i}"))?;
        let label = u8::try_from(v)
            .ok()
            .and_then(Label::from_level)
            .ok_or_else(|| parse_err(what, format!("pixel {i}: level {v} out of range")))?;
        labels.push(label);
    }
    if t.next_token().is_some() {
        return Err(parse_err(what, "trailing data"));
    }
    Ok(InsidenessMask::new(dims, labels))
}

// ---------------------------------------------------------------------------
// Manifest

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub max_vertices: Option<usize>,
    pub max_retries: usize,
    pub screen: CurveScreen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    pub split: Split,
    pub image: String,
    pub mask: String,
    /// Seed of the individual curve, when it came from a generator.
    pub seed: Option<u64>,
}

/// Field order here is the key order in `manifest.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub family: String,
    pub image_size: usize,
    pub seed: Option<u64>,
    pub generator: Option<GeneratorInfo>,
    pub counts: SplitCounts,
    pub records: Vec<Record>,
}

impl DatasetManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, StoreError> {
        let m: DatasetManifest = serde_json::from_str(text)?;
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), StoreError> {
        if self.format_version != FORMAT_VERSION {
            return Err(StoreError::Manifest(format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        for split in Split::ALL {
            let n = self.records.iter().filter(|r| r.split == split).count();
            if n != self.counts.get(split) {
                return Err(StoreError::Manifest(format!(
                    "{split}: counts say {} but {n} records are listed",
                    self.counts.get(split)
                )));
            }
        }
        for (i, r) in self.records.iter().enumerate() {
            if r.index != i {
                return Err(StoreError::Manifest(format!(
                    "record {i} has index {}",
                    r.index
                )));
            }
            for p in [&r.image, &r.mask] {
                let ok = Path::new(p)
                    .components()
                    .all(|c| matches!(c, Component::Normal(_)));
                if !ok || p.is_empty() {
                    return Err(StoreError::Manifest(format!(
                        "record {i}: path `{p}` must be relative"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One labelled image as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredSample {
    pub split: Split,
    pub seed: Option<u64>,
    pub image: BinaryImage,
    pub mask: InsidenessMask,
}

/// A dataset in its on-disk form; also the result of [`load_dataset`].
#[derive(Debug, Clone, PartialEq)]
pub struct StoredDataset {
    pub manifest: DatasetManifest,
    pub samples: Vec<StoredSample>,
}

fn file_stem(split: Split, n: usize) -> String {
    format!("{split}_{n:05}")
}

fn build_records(samples: &[(Split, Option<u64>)]) -> (Vec<Record>, SplitCounts) {
    let mut counts = SplitCounts {
        train: 0,
        val: 0,
        test: 0,
    };
    let records = samples
        .iter()
        .enumerate()
        .map(|(index, &(split, seed))| {
            let n = match split {
                Split::Train => &mut counts.train,
                Split::Val => &mut counts.val,
                Split::Test => &mut counts.test,
            };
            let stem = file_stem(split, *n);
            *n += 1;
            Record {
                index,
                split,
                image: format!("images/{stem}.pbm"),
                mask: format!("masks/{stem}.pgm"),
                seed,
            }
        })
        .collect();
    (records, counts)
}

impl StoredDataset {
    pub fn from_generated(ds: &Dataset) -> Self {
        let p: &GeneratorParams = &ds.params;
        let keys: Vec<_> = ds.samples.iter().map(|s| (s.split, Some(s.seed))).collect();
        let (records, counts) = build_records(&keys);
        let max_vertices = match p.family {
            crate::generators::Family::Polar { max_vertices } => Some(max_vertices),
            _ => None,
        };
        StoredDataset {
            manifest: DatasetManifest {
                format_version: FORMAT_VERSION,
                family: p.family.to_string(),
                image_size: p.image_size,
                seed: Some(p.seed),
                generator: Some(GeneratorInfo {
                    max_vertices,
                    max_retries: p.max_retries,
                    screen: p.screen,
                }),
                counts,
                records,
            },
            samples: ds
                .samples
                .iter()
                .map(|s| StoredSample {
                    split: s.split,
                    seed: Some(s.seed),
                    image: s.curve.image().clone(),
                    mask: s.mask.clone(),
                })
                .collect(),
        }
    }

    /// Square curve images without generator provenance, all in the test
    /// split, labelled by flood fill.
    pub fn from_images(family: &str, images: &[BinaryImage]) -> Result<Self, StoreError> {
        let size = images.first().map_or(0, |i| i.height());
        if images.iter().any(|i| i.dims() != Dims::new(size, size)) {
            return Err(StoreError::Manifest(
                "images must be square and equally sized".into(),
            ));
        }
        let keys: Vec<_> = images.iter().map(|_| (Split::Test, None)).collect();
        let (records, counts) = build_records(&keys);
        Ok(StoredDataset {
            manifest: DatasetManifest {
                format_version: FORMAT_VERSION,
                family: family.to_string(),
                image_size: size,
                seed: None,
                generator: None,
                counts,
                records,
            },
            samples: images
                .iter()
                .map(|img| StoredSample {
                    split: Split::Test,
                    seed: None,
                    image: img.clone(),
                    mask: flood_fill_outside(img),
                })
                .collect(),
        })
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), StoreError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    fs::write(path, contents).map_err(io_err(path))
}

/// Writes images, masks and the manifest under `dir`, creating it if needed.
pub fn write_dataset(dir: &Path, ds: &StoredDataset) -> Result<(), StoreError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (record, sample) in ds.manifest.records.iter().zip(&ds.samples) {
        write_file(&dir.join(&record.image), &write_pbm(&sample.image))?;
        write_file(&dir.join(&record.mask), &write_pgm_mask(&sample.mask))?;
    }
    write_file(&dir.join(MANIFEST_FILE), &ds.manifest.to_json())
}

fn read_text(path: &Path) -> Result<String, StoreError> {
    fs::read_to_string(path).map_err(io_err(path))
}

pub fn load_manifest(dir: &Path) -> Result<DatasetManifest, StoreError> {
    DatasetManifest::from_json(&read_text(&dir.join(MANIFEST_FILE))?)
}

/// Reads a dataset written by [`write_dataset`], checking that every image
/// matches the manifest's size and its mask.
pub fn load_dataset(dir: &Path) -> Result<StoredDataset, StoreError> {
    let manifest = load_manifest(dir)?;
    let expected = Dims::new(manifest.image_size, manifest.image_size);
    let mut samples = Vec::with_capacity(manifest.records.len());
    for r in &manifest.records {
        let image = parse_pbm(&read_text(&dir.join(&r.image))?, &r.image)?;
        let mask = parse_pgm_mask(&read_text(&dir.join(&r.mask))?, &r.mask)?;
        if image.dims() != expected || mask.dims() != expected {
            return Err(StoreError::Manifest(format!(
                "record {}: expected {expected}, image is {} and mask is {}",
                r.index,
                image.dims(),
                mask.dims()
            )));
        }
        let consistent = image
            .data()
            .iter()
            .zip(mask.labels())
            .all(|(&v, &l)| (v == 1) == (l == Label::Curve));
        if !consistent {
            return Err(StoreError::Manifest(format!(
                "record {}: mask curve pixels differ from the image",
                r.index
            )));
        }
        samples.push(StoredSample {
            split: r.split,
            seed: r.seed,
            image,
            mask,
        });
    }
    Ok(StoredDataset { manifest, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_dataset, Family};

    #[test]
    fn pbm_layout() {
        let img = BinaryImage::from_ascii("#.\n.#\n#.").unwrap();
        assert_eq!(write_pbm(&img), "P1\n2 3\n10\n01\n10\n");
    }

    #[test]
    fn pgm_layout() {
        let img = BinaryImage::from_ascii(
            "....
             .###
             .#.#
             .###",
        )
        .unwrap();
        let text = write_pgm_mask(&flood_fill_outside(&img));
        assert_eq!(text, "P2\n4 4\n2\n0 0 0 0\n0 2 2 2\n0 2 1 2\n0 2 2 2\n");
    }

    #[test]
    fn parsers_accept_comments_and_spacing() {
        let img = parse_pbm("P1 # a comment\n3 2\n1 0 1\n# mid\n0 1 0\n", "t").unwrap();
        assert_eq!(img, BinaryImage::from_ascii("#.#\n.#.").unwrap());
        let m = parse_pgm_mask("P2\n2 1\n2\n2\n1\n", "t").unwrap();
        assert_eq!(m.labels(), &[Label::Curve, Label::Inside]);
    }

    #[test]
    fn parsers_reject_bad_input() {
        assert!(parse_pbm("", "t").is_err());
        assert!(parse_pbm("P2\n1 1\n0", "t").is_err());
        assert!(parse_pbm("P1\n2 2\n101", "t").is_err());
        assert!(parse_pbm("P1\n1 1\n2", "t").is_err());
        assert!(parse_pbm("P1\n1 1\n1 1", "t").is_err());
        assert!(parse_pgm_mask("P2\n1 1\n255\n0", "t").is_err());
        assert!(parse_pgm_mask("P2\n1 1\n2\n3", "t").is_err());
        assert!(parse_pgm_mask("P2\n0 1\n2\n", "t").is_err());
    }

    #[test]
    fn dataset_round_trip() {
        let params = crate::generators::GeneratorParams::new(Family::Polar { max_vertices: 9 }, 11);
        let counts = SplitCounts {
            train: 3,
            val: 2,
            test: 1,
        };
        let ds = StoredDataset::from_generated(&build_dataset(&params, counts).unwrap());
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), &ds).unwrap();
        assert_eq!(load_dataset(dir.path()).unwrap(), ds);
        assert!(dir.path().join("images/val_00001.pbm").exists());
        assert!(dir.path().join("masks/test_00000.pgm").exists());
    }

    #[test]
    fn manifest_key_order_is_fixed() {
        let ds = StoredDataset::from_images(
            "custom",
            &[BinaryImage::from_ascii(".....\n.###.\n.#.#.\n.###.\n.....").unwrap()],
        )
        .unwrap();
        let json = ds.manifest.to_json();
        let keys = [
            "format_version",
            "family",
            "image_size",
            "seed",
            "generator",
            "counts",
            "records",
        ];
        let pos: Vec<usize> = keys
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn manifest_checks() {
        let ds = StoredDataset::from_images("x", &[]).unwrap();
        let mut m = ds.manifest.clone();
        m.format_version = 99;
        assert!(DatasetManifest::from_json(&m.to_json()).is_err());
        let mut m = ds.manifest;
        m.counts.train = 1;
        assert!(DatasetManifest::from_json(&m.to_json()).is_err());
        let bad = r#"{"format_version":1,"family":"x","image_size":5,"seed":null,"generator":null,
            "counts":{"train":0,"val":0,"test":1},
            "records":[{"index":0,"split":"test","image":"../etc/passwd","mask":"m.pgm","seed":null}]}"#;
        assert!(DatasetManifest::from_json(bad).is_err());
    }

    #[test]
    fn load_detects_mismatched_mask() {
        let img = BinaryImage::from_ascii(".....\n.###.\n.#.#.\n.###.\n.....").unwrap();
        let ds = StoredDataset::from_images("x", &[img]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_dataset(dir.path(), &ds).unwrap();
        fs::write(
            dir.path().join("masks/test_00000.pgm"),
            "P2\n5 5\n2\n".to_string() + &"0 ".repeat(25),
        )
        .unwrap();
        assert!(load_dataset(dir.path()).is_err());
        fs::remove_file(dir.path().join("images/test_00000.pbm")).unwrap();
        assert!(matches!(
            load_dataset(dir.path()),
            Err(StoreError::Io { .. })
        ));
    }
}
