//! Seeded generators for the four curve families and dataset assembly.
//!
//! Every generator draws candidates from a ChaCha8 stream seeded with the
//! caller's seed and keeps the first candidate that passes
//! [`validate_jordan_curve`] (and, under [`CurveScreen::LocallyFillable`],
//! whose background is equally connected under 4- and 8-adjacency). The
//! output is a pure function of the arguments.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{validate_jordan_curve, BinaryImage, Dims, JordanCurve, PixelCoord};
use crate::oracle::{flood_fill_outside, four_eight_consistent, InsidenessMask};

pub const DEFAULT_MAX_RETRIES: usize = 10_000;
/// Vertex caps of the named Polar datasets.
pub const POLAR_VERTEX_CAPS: [usize; 5] = [4, 9, 14, 19, 24];
pub const POLAR_MIN_RADIUS: f64 = 3.0;
pub const POLAR_MAX_RADIUS: f64 = 14.0;
/// Inclusive range of the spiral's starting row and column.
pub const SPIRAL_START: (usize, usize) = (10, 20);
pub const DIGS_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{family}: no acceptable curve after {attempts} attempts")]
    RetryExhausted { family: String, attempts: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// Curve family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Polar { max_vertices: usize },
    Spiral,
    Digs,
    RandomWalk,
}

impl Family {
    /// Image side used by the published datasets.
    pub fn default_size(self) -> usize {
        match self {
            Family::Polar { .. } => 32,
            Family::Spiral | Family::Digs | Family::RandomWalk => 42,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Polar { max_vertices } => write!(f, "polar{max_vertices}"),
            Family::Spiral => f.write_str("spiral"),
            Family::Digs => f.write_str("digs"),
            Family::RandomWalk => f.write_str("random-walk"),
        }
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    /// `polar<N>`, `spiral`, `digs`, `random-walk`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        match s.as_str() {
            "spiral" => Ok(Family::Spiral),
            "digs" => Ok(Family::Digs),
            "random-walk" | "randomwalk" | "walk" => Ok(Family::RandomWalk),
            _ => {
                let n = s
                    .strip_prefix("polar")
                    .and_then(|n| n.trim_start_matches(['-', '_']).parse::<usize>().ok())
                    .ok_or_else(|| {
                        GeneratorError::InvalidParams(format!("unknown family `{s}`"))
                    })?;
                if n < 3 {
                    return Err(GeneratorError::InvalidParams(format!(
                        "polar curves need at least 3 vertices, got {n}"
                    )));
                }
                Ok(Family::Polar { max_vertices: n })
            }
        }
    }
}

/// Which candidates a generator keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveScreen {
    /// Any digital Jordan curve off the border.
    JordanOnly,
    /// Jordan curves whose outside region is also connected through edge
    /// neighbours alone; curves with a diagonal-only passage to the outside
    /// are dropped.
    #[default]
    LocallyFillable,
}

impl CurveScreen {
    fn accept(self, img: &BinaryImage) -> Option<JordanCurve> {
        let curve = validate_jordan_curve(img).ok()?;
        match self {
            CurveScreen::JordanOnly => Some(curve),
            CurveScreen::LocallyFillable => four_eight_consistent(img).then_some(curve),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub family: Family,
    pub image_size: usize,
    pub seed: u64,
    pub max_retries: usize,
    pub screen: CurveScreen,
}

impl GeneratorParams {
    pub fn new(family: Family, seed: u64) -> Self {
        Self {
            family,
            image_size: family.default_size(),
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            screen: CurveScreen::default(),
        }
    }

    pub fn with_size(mut self, image_size: usize) -> Self {
        self.image_size = image_size;
        self
    }

    pub fn with_max_retries(mut self, max_retries: usize) -> Self {
        self.max_retries = max_retries;
        self
    }

    pub fn with_screen(mut self, screen: CurveScreen) -> Self {
        self.screen = screen;
        self
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let min = match self.family {
            Family::Polar { .. } => 9,
            Family::Spiral => 12,
            Family::Digs => 16,
            Family::RandomWalk => 8,
        };
        if self.image_size < min {
            return Err(GeneratorError::InvalidParams(format!(
                "{} needs an image side of at least {min}, got {}",
                self.family, self.image_size
            )));
        }
        if let Family::Polar { max_vertices } = self.family {
            if max_vertices < 3 {
                return Err(GeneratorError::InvalidParams(
                    "polar curves need at least 3 vertices".into(),
                ));
            }
        }
        if self.max_retries == 0 {
            return Err(GeneratorError::InvalidParams(
                "max_retries must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Generates one curve of the configured family.
pub fn generate(params: &GeneratorParams) -> Result<JordanCurve, GeneratorError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let size = params.image_size;
    for _ in 0..params.max_retries {
        let candidate = match params.family {
            Family::Polar { max_vertices } => polar_candidate(&mut rng, max_vertices, size),
            Family::Spiral => spiral_candidate(&mut rng, size),
            Family::Digs => digs_candidate(&mut rng, size).map(|(img, _)| img),
            Family::RandomWalk => walk_candidate(&mut rng, size),
        };
        if let Some(curve) = candidate.and_then(|img| params.screen.accept(&img)) {
            return Ok(curve);
        }
    }
    Err(GeneratorError::RetryExhausted {
        family: params.family.to_string(),
        attempts: params.max_retries,
    })
}

pub fn gen_polar(
    seed: u64,
    max_vertices: usize,
    size: usize,
) -> Result<JordanCurve, GeneratorError> {
    generate(&GeneratorParams::new(Family::Polar { max_vertices }, seed).with_size(size))
}

pub fn gen_spiral(seed: u64, size: usize) -> Result<JordanCurve, GeneratorError> {
    generate(&GeneratorParams::new(Family::Spiral, seed).with_size(size))
}

pub fn gen_digs(seed: u64, size: usize) -> Result<JordanCurve, GeneratorError> {
    generate(&GeneratorParams::new(Family::Digs, seed).with_size(size))
}

pub fn gen_random_walk(seed: u64, size: usize) -> Result<JordanCurve, GeneratorError> {
    generate(&GeneratorParams::new(Family::RandomWalk, seed).with_size(size))
}

// ---------------------------------------------------------------------------
// Polar

/// Center range and radius cap for a square image: the disk of radius
/// `max_radius` around any admissible center keeps one pixel of margin.
pub fn polar_geometry(size: usize) -> (usize, usize, f64) {
    let max_radius = POLAR_MAX_RADIUS.min(((size - 3) / 2) as f64);
    let r = max_radius as usize;
    (1 + r, size - 2 - r, max_radius)
}

/// 4-connected digital segment from `a` to `b`, both ends included. Each
/// step moves along the axis whose next half-step stays closer to the ideal line.
pub fn digital_segment(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let (dr, dc) = (b.0 - a.0, b.1 - a.1);
    let (sr, sc) = (dr.signum(), dc.signum());
    let (nr, nc) = (dr.abs(), dc.abs());
    let mut out = Vec::with_capacity((nr + nc + 1) as usize);
    let (mut r, mut c) = a;
    out.push((r, c));
    let (mut ir, mut ic) = (0, 0);
    while ir < nr || ic < nc {
        // compare (ic + 1/2) / nc against (ir + 1/2) / nr without division
        let step_col = ir == nr || (ic < nc && (1 + 2 * ic) * nr <= (1 + 2 * ir) * nc);
        if step_col {
            c += sc;
            ic += 1;
        } else {
            r += sr;
            ir += 1;
        }
        out.push((r, c));
    }
    out
}

fn polar_candidate(rng: &mut ChaCha8Rng, max_vertices: usize, size: usize) -> Option<BinaryImage> {
    let (lo, hi, max_radius) = polar_geometry(size);
    let cy = rng.gen_range(lo..=hi) as f64;
    let cx = rng.gen_range(lo..=hi) as f64;
    let k = rng.gen_range(3..=max_vertices);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let vertices: Vec<(i64, i64)> = angles
        .iter()
        .map(|&theta| {
            let radius = rng.gen_range(POLAR_MIN_RADIUS..=max_radius);
            (
                (cy + radius * theta.sin()).round() as i64,
                (cx + radius * theta.cos()).round() as i64,
            )
        })
        .collect();

    let mut path: Vec<(i64, i64)> = Vec::new();
    for i in 0..k {
        let seg = digital_segment(vertices[i], vertices[(i + 1) % k]);
        for p in seg {
            if path.last() != Some(&p) {
                path.push(p);
            }
        }
    }
    if path.len() > 1 && path.first() == path.last() {
        path.pop();
    }
    let dims = Dims::new(size, size);
    let mut img = BinaryImage::zeros(size, size).ok()?;
    for &(r, c) in &path {
        let p = PixelCoord::new(usize::try_from(r).ok()?, usize::try_from(c).ok()?);
        if !dims.contains(p) || img.is_set(p) {
            // off the canvas or the outline crosses itself
            return None;
        }
        img.set(p, 1).ok()?;
    }
    Some(img)
}

// ---------------------------------------------------------------------------
// Region helpers shared by Spiral and Digs

/// Inclusive axis-aligned pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rect {
    r0: i64,
    c0: i64,
    r1: i64,
    c1: i64,
}

impl Rect {
    fn grow(self, m: i64) -> Rect {
        Rect {
            r0: self.r0 - m,
            c0: self.c0 - m,
            r1: self.r1 + m,
            c1: self.c1 + m,
        }
    }

    fn intersects(&self, o: &Rect) -> bool {
        self.r0 <= o.r1 && o.r0 <= self.r1 && self.c0 <= o.c1 && o.c0 <= self.c1
    }

    fn within(&self, lo: i64, hi: i64) -> bool {
        self.r0 >= lo && self.c0 >= lo && self.r1 <= hi && self.c1 <= hi
    }
}

/// Region pixels with at least one 8-neighbour outside the region.
fn region_boundary(region: &[bool], size: usize) -> BinaryImage {
    let mut img = BinaryImage::zeros(size, size).expect("non-empty");
    let inside = |r: i64, c: i64| {
        r >= 0
            && c >= 0
            && (r as usize) < size
            && (c as usize) < size
            && region[r as usize * size + c as usize]
    };
    for r in 0..size as i64 {
        for c in 0..size as i64 {
            if !inside(r, c) {
                continue;
            }
            let edge = (-1..=1).any(|dr| (-1..=1).any(|dc| !inside(r + dr, c + dc)));
            if edge {
                img.set(PixelCoord::new(r as usize, c as usize), 1)
                    .expect("in bounds");
            }
        }
    }
    img
}

fn paint(region: &mut [bool], size: usize, rect: &Rect, value: bool) {
    for r in rect.r0..=rect.r1 {
        for c in rect.c0..=rect.c1 {
            region[r as usize * size + c as usize] = value;
        }
    }
}

// ---------------------------------------------------------------------------
// Spiral

const DIRECTIONS: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
/// Consecutive rejected extensions after which the walk is considered full.
const SPIRAL_PATIENCE: usize = 200;

fn spiral_start_range(size: usize) -> (usize, usize) {
    if size >= 42 {
        SPIRAL_START
    } else {
        (size / 4, size / 2)
    }
}

/// Thick random walk: each segment runs `3..=10` pixels in a random
/// direction and is thickened by `1..=4` pixels on every side. A segment
/// is kept only if its thickened box stays one pixel clear of every earlier
/// box except its predecessor. The curve is the region's inner boundary.
fn spiral_candidate(rng: &mut ChaCha8Rng, size: usize) -> Option<BinaryImage> {
    let (lo, hi) = spiral_start_range(size);
    let mut pos = (rng.gen_range(lo..=hi) as i64, rng.gen_range(lo..=hi) as i64);
    let limit = size as i64 - 2;
    let mut boxes: Vec<Rect> = Vec::new();
    let mut last_dir: Option<(i64, i64)> = None;
    let mut failures = 0;
    while failures < SPIRAL_PATIENCE {
        let dir = DIRECTIONS[rng.gen_range(0..4)];
        let len = rng.gen_range(3..=10);
        let t = rng.gen_range(1..=4);
        if last_dir.is_some_and(|d| d == (-dir.0, -dir.1)) {
            failures += 1;
            continue;
        }
        let end = (pos.0 + dir.0 * len, pos.1 + dir.1 * len);
        let rect = Rect {
            r0: pos.0.min(end.0),
            c0: pos.1.min(end.1),
            r1: pos.0.max(end.0),
            c1: pos.1.max(end.1),
        }
        .grow(t);
        let clear = rect.within(1, limit) && {
            let halo = rect.grow(1);
            let older = boxes.len().saturating_sub(1);
            boxes[..older].iter().all(|b| !halo.intersects(b))
        };
        if clear {
            boxes.push(rect);
            pos = end;
            last_dir = Some(dir);
            failures = 0;
        } else {
            failures += 1;
        }
    }
    if boxes.is_empty() {
        return None;
    }
    let mut region = vec![false; size * size];
    for b in &boxes {
        paint(&mut region, size, b, true);
    }
    Some(region_boundary(&region, size))
}

// ---------------------------------------------------------------------------
// Digs

/// Minimum material left between digs and between a dig and the far wall.
const DIG_MATERIAL: i64 = 3;
const DIG_ATTEMPTS: usize = 50;

/// Filled rectangle with `1..=10` rectangular notches cut in from its
/// sides. Each notch has a random width and a random depth of
/// `1..=side-2`; the depth is then reduced until the notch keeps
/// [`DIG_MATERIAL`] pixels from earlier notches and from the opposite wall.
/// Returns the boundary and the number of digs cut.
fn digs_candidate(rng: &mut ChaCha8Rng, size: usize) -> Option<(BinaryImage, usize)> {
    let max_side = size as i64 - 2;
    let min_side = 2 * DIG_MATERIAL + 4;
    let h = rng.gen_range(min_side..=max_side);
    let w = rng.gen_range(min_side..=max_side);
    let r0 = rng.gen_range(1..=size as i64 - 1 - h);
    let c0 = rng.gen_range(1..=size as i64 - 1 - w);
    let outer = Rect {
        r0,
        c0,
        r1: r0 + h - 1,
        c1: c0 + w - 1,
    };
    let k = rng.gen_range(1..=DIGS_MAX);
    let mut digs: Vec<Rect> = Vec::new();
    for _ in 0..k {
        let mut placed = false;
        for _ in 0..DIG_ATTEMPTS {
            if let Some(d) = try_dig(rng, &outer, &digs) {
                digs.push(d);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    let mut region = vec![false; size * size];
    paint(&mut region, size, &outer, true);
    for d in &digs {
        paint(&mut region, size, d, false);
    }
    Some((region_boundary(&region, size), digs.len()))
}

fn try_dig(rng: &mut ChaCha8Rng, outer: &Rect, digs: &[Rect]) -> Option<Rect> {
    // side: 0 top, 1 bottom, 2 left, 3 right
    let side = rng.gen_range(0..4);
    let vertical = side < 2;
    let (along_lo, along_hi, across) = if vertical {
        (outer.c0, outer.c1, outer.r1 - outer.r0 + 1)
    } else {
        (outer.r0, outer.r1, outer.c1 - outer.c0 + 1)
    };
    // keep material on both flanks of the notch
    let lo = along_lo + DIG_MATERIAL;
    let hi = along_hi - DIG_MATERIAL;
    if hi < lo {
        return None;
    }
    let thickness = rng.gen_range(1..=(hi - lo + 1).min(across - 2));
    let start = rng.gen_range(lo..=hi - thickness + 1);
    let mut depth = rng.gen_range(1..=across - 2).min(across - DIG_MATERIAL);
    let make = |depth: i64| -> Rect {
        match side {
            0 => Rect {
                r0: outer.r0,
                r1: outer.r0 + depth - 1,
                c0: start,
                c1: start + thickness - 1,
            },
            1 => Rect {
                r0: outer.r1 - depth + 1,
                r1: outer.r1,
                c0: start,
                c1: start + thickness - 1,
            },
            2 => Rect {
                r0: start,
                r1: start + thickness - 1,
                c0: outer.c0,
                c1: outer.c0 + depth - 1,
            },
            _ => Rect {
                r0: start,
                r1: start + thickness - 1,
                c0: outer.c1 - depth + 1,
                c1: outer.c1,
            },
        }
    };
    while depth >= 1 {
        let dig = make(depth);
        let halo = dig.grow(DIG_MATERIAL);
        if digs.iter().all(|d| !halo.intersects(d)) {
            return Some(dig);
        }
        depth -= 1;
    }
    None
}

/// Number of digs cut by the Digs generator for `seed`, alongside the curve.
pub fn gen_digs_with_count(seed: u64, size: usize) -> Result<(JordanCurve, usize), GeneratorError> {
    let params = GeneratorParams::new(Family::Digs, seed).with_size(size);
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_retries {
        if let Some((img, k)) = digs_candidate(&mut rng, size) {
            if let Some(curve) = params.screen.accept(&img) {
                return Ok((curve, k));
            }
        }
    }
    Err(GeneratorError::RetryExhausted {
        family: params.family.to_string(),
        attempts: params.max_retries,
    })
}

// ---------------------------------------------------------------------------
// Random walk

/// Depth-first self-avoiding walk over interior pixels. A step is valid when
/// the new pixel touches no earlier walk pixel except the current one; a
/// step that also touches the start closes the curve once it is at least
/// eight pixels long. Dead ends backtrack. The search gives up after a step
/// budget proportional to the image area.
fn walk_candidate(rng: &mut ChaCha8Rng, size: usize) -> Option<BinaryImage> {
    let n = size as i64;
    let interior = |p: (i64, i64)| p.0 >= 1 && p.1 >= 1 && p.0 <= n - 2 && p.1 <= n - 2;
    let idx = |p: (i64, i64)| (p.0 * n + p.1) as usize;
    let start = (rng.gen_range(1..=n - 2), rng.gen_range(1..=n - 2));
    let mut on = vec![false; size * size];
    on[idx(start)] = true;
    let mut path = vec![start];
    let mut options: Vec<Vec<(i64, i64)>> = vec![shuffled_dirs(rng)];
    let budget = 20 * size * size;
    for _ in 0..budget {
        let opts = options.last_mut()?;
        let Some(d) = opts.pop() else {
            // dead end: backtrack
            let p = path.pop().expect("path and options have equal length");
            on[idx(p)] = false;
            options.pop();
            continue;
        };
        let cur = *path.last().expect("non-empty path");
        let next = (cur.0 + d.0, cur.1 + d.1);
        if !interior(next) || on[idx(next)] {
            continue;
        }
        let touching: Vec<(i64, i64)> = DIRECTIONS
            .iter()
            .map(|e| (next.0 + e.0, next.1 + e.1))
            .filter(|&q| q != cur && interior(q) && on[idx(q)])
            .collect();
        match touching.as_slice() {
            [] => {
                on[idx(next)] = true;
                path.push(next);
                options.push(shuffled_dirs(rng));
            }
            [only] if *only == start && path.len() + 1 >= crate::geometry::MIN_CURVE_LEN => {
                path.push(next);
                let mut img = BinaryImage::zeros(size, size).ok()?;
                for p in path {
                    img.set(PixelCoord::new(p.0 as usize, p.1 as usize), 1)
                        .ok()?;
                }
                return Some(img);
            }
            _ => {}
        }
    }
    None
}

fn shuffled_dirs(rng: &mut ChaCha8Rng) -> Vec<(i64, i64)> {
    let mut d = DIRECTIONS.to_vec();
    d.shuffle(rng);
    d
}

// ---------------------------------------------------------------------------
// Datasets

/// Fraction of differing curve pixels above which two curves count as dissimilar.
pub const DISSIMILARITY_THRESHOLD: f64 = 0.25;

/// Symmetric difference of the two curves' pixel sets relative to the
/// larger curve. Panics if the images differ in size.
pub fn dissimilarity(a: &BinaryImage, b: &BinaryImage) -> f64 {
    let diff = a.hamming(b);
    let denom = a.count_ones().max(b.count_ones());
    if denom == 0 {
        0.0
    } else {
        diff as f64 / denom as f64
    }
}

/// True when at least a quarter of the curve pixels are in different places.
pub fn dissimilar(a: &JordanCurve, b: &JordanCurve) -> Result<bool, GeneratorError> {
    if a.dims() != b.dims() {
        return Err(GeneratorError::InvalidParams(format!(
            "cannot compare {} and {} curves",
            a.dims(),
            b.dims()
        )));
    }
    Ok(dissimilarity(a.image(), b.image()) >= DISSIMILARITY_THRESHOLD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Val, Split::Test];

    fn stream(self) -> u64 {
        match self {
            Split::Train => 0,
            Split::Val => 1,
            Split::Test => 2,
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        })
    }
}

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of candidate `counter` in `split`, derived from the dataset seed.
pub fn derive_seed(dataset_seed: u64, split: Split, counter: u64) -> u64 {
    mix64(mix64(mix64(dataset_seed) ^ split.stream()) ^ counter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub val: usize,
    pub test: usize,
}

impl SplitCounts {
    pub fn get(&self, split: Split) -> usize {
        match split {
            Split::Train => self.train,
            Split::Val => self.val,
            Split::Test => self.test,
        }
    }

    pub fn total(&self) -> usize {
        self.train + self.val + self.test
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub split: Split,
    /// Seed the curve was generated from.
    pub seed: u64,
    pub curve: JordanCurve,
    pub mask: InsidenessMask,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub params: GeneratorParams,
    pub counts: SplitCounts,
    /// Train samples first, then validation, then test.
    pub samples: Vec<Sample>,
}

impl Dataset {
    pub fn split(&self, split: Split) -> impl Iterator<Item = &Sample> {
        self.samples.iter().filter(move |s| s.split == split)
    }
}

/// Generates the training curves, then validation and test curves that are
/// each dissimilar to every training curve, and labels all of them by flood
/// fill. `params.seed` is the dataset seed; curve seeds derive from it.
pub fn build_dataset(
    params: &GeneratorParams,
    counts: SplitCounts,
) -> Result<Dataset, GeneratorError> {
    params.validate()?;
    let curve_params = |seed| GeneratorParams { seed, ..*params };
    let mut samples = Vec::with_capacity(counts.total());
    let mut train: Vec<JordanCurve> = Vec::with_capacity(counts.train);
    for split in Split::ALL {
        let mut counter = 0u64;
        let mut rejected = 0usize;
        let mut accepted = 0;
        while accepted < counts.get(split) {
            let seed = derive_seed(params.seed, split, counter);
            counter += 1;
            let curve = generate(&curve_params(seed))?;
            if split != Split::Train {
                let mut ok = true;
                for t in &train {
                    if !dissimilar(&curve, t)? {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    rejected += 1;
                    if rejected >= params.max_retries {
                        return Err(GeneratorError::RetryExhausted {
                            family: format!("{} ({split}, dissimilarity)", params.family),
                            attempts: rejected,
                        });
                    }
                    continue;
                }
            }
            rejected = 0;
            let mask = flood_fill_outside(curve.image());
            if split == Split::Train {
                train.push(curve.clone());
            }
            samples.push(Sample {
                split,
                seed,
                curve,
                mask,
            });
            accepted += 1;
        }
    }
    Ok(Dataset {
        params: *params,
        counts,
        samples,
    })
}
