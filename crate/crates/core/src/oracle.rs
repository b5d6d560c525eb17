//! Exact insideness ground truth.
//!
//! Two independent routes: [`flood_fill_outside`] applies the region
//! definition directly (8-connected 0-pixel paths to the border), while
//! [`ray_parity_insideness`] counts horizontal ray crossings and reads the
//! parity. They must agree on every 0-pixel of a valid digital Jordan curve.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{validate_jordan_curve, BinaryImage, Dims, PixelCoord, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("mask sizes differ: {0} vs {1}")]
    DimensionMismatch(Dims, Dims),
    #[error("image is not a digital Jordan curve: {0}")]
    InvalidCurve(#[from] Violation),
}

/// Per-pixel insideness label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Outside,
    Inside,
    Curve,
}

impl Label {
    /// File/level encoding: 0 outside, 1 inside, 2 curve.
    pub fn level(self) -> u8 {
        match self {
            Label::Outside => 0,
            Label::Inside => 1,
            Label::Curve => 2,
        }
    }

    pub fn from_level(level: u8) -> Option<Self> {
        match level {
            0 => Some(Label::Outside),
            1 => Some(Label::Inside),
            2 => Some(Label::Curve),
            _ => None,
        }
    }

    /// Scalar network target: inside is 1, outside and curve are 0.
    pub fn target(self) -> u8 {
        u8::from(self == Label::Inside)
    }
}

/// Row-major three-way labelling of an image.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InsidenessMask {
    dims: Dims,
    labels: Vec<Label>,
}

impl InsidenessMask {
    pub fn new(dims: Dims, labels: Vec<Label>) -> Self {
        assert_eq!(dims.len(), labels.len(), "label count must match dims");
        Self { dims, labels }
    }

    /// Builds a mask from a per-background-pixel `inside` predicate; 1-pixels become `Curve`.
    pub fn from_inside_fn(img: &BinaryImage, mut inside: impl FnMut(PixelCoord) -> bool) -> Self {
        let dims = img.dims();
        let labels = (0..dims.len())
            .map(|i| {
                let p = dims.coord(i);
                if img.is_set(p) {
                    Label::Curve
                } else if inside(p) {
                    Label::Inside
                } else {
                    Label::Outside
                }
            })
            .collect();
        Self { dims, labels }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, p: PixelCoord) -> Label {
        self.labels[self.dims.index(p)]
    }

    pub fn set(&mut self, p: PixelCoord, label: Label) {
        let i = self.dims.index(p);
        self.labels[i] = label;
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn inside_pixels(&self) -> Vec<PixelCoord> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == Label::Inside)
            .map(|(i, _)| self.dims.coord(i))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let dims = Dims::new(self.dims.width, self.dims.height);
        let mut labels = vec![Label::Outside; self.labels.len()];
        for r in 0..self.dims.height {
            for c in 0..self.dims.width {
                labels[c * dims.width + r] = self.labels[r * self.dims.width + c];
            }
        }
        Self { dims, labels }
    }
}

impl std::fmt::Debug for InsidenessMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "InsidenessMask {}:", self.dims)?;
        for row in self.labels.chunks(self.dims.width) {
            let line: String = row
                .iter()
                .map(|l| match l {
                    Label::Outside => '.',
                    Label::Inside => 'o',
                    Label::Curve => '#',
                })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Which neighbourhood a background flood fill may step through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

/// Background pixels reachable from the border through 0-pixels under the
/// given connectivity. Returns a row-major flag per pixel.
pub fn reachable_from_border(img: &BinaryImage, conn: Connectivity) -> Vec<bool> {
    let dims = img.dims();
    let (h, w) = (dims.height, dims.width);
    let mut seen = vec![false; dims.len()];
    let mut queue = VecDeque::new();
    for (i, flag) in seen.iter_mut().enumerate() {
        let p = dims.coord(i);
        let on_border = p.row == 0 || p.col == 0 || p.row + 1 == h || p.col + 1 == w;
        if on_border && !img.is_set(p) {
            *flag = true;
            queue.push_back(p);
        }
    }
    let deltas: &[(isize, isize)] = match conn {
        Connectivity::Four => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
        Connectivity::Eight => &[
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ],
    };
    while let Some(p) = queue.pop_front() {
        for &(dr, dc) in deltas {
            let (Some(r), Some(c)) = (p.row.checked_add_signed(dr), p.col.checked_add_signed(dc))
            else {
                continue;
            };
            if r >= h || c >= w {
                continue;
            }
            let q = PixelCoord::new(r, c);
            let j = dims.index(q);
            if !seen[j] && !img.is_set(q) {
                seen[j] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Ground truth by the region definition: a 0-pixel is outside iff an
/// 8-connected path of 0-pixels links it to the border.
pub fn flood_fill_outside(img: &BinaryImage) -> InsidenessMask {
    let outside = reachable_from_border(img, Connectivity::Eight);
    let dims = img.dims();
    InsidenessMask::from_inside_fn(img, |p| !outside[dims.index(p)])
}

/// True when 4-connected and 8-connected background fills from the border
/// reach the same pixels. Local propagation over edge neighbours (the
/// coloring routine) can only reproduce the outside region on such images.
pub fn four_eight_consistent(img: &BinaryImage) -> bool {
    reachable_from_border(img, Connectivity::Four)
        == reachable_from_border(img, Connectivity::Eight)
}

/// Horizontal ray crossing counts, `counts[i][j] = sum_{v >= 0} X[i][j+v] * X[i+1][j+v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingsField {
    dims: Dims,
    counts: Vec<u32>,
}

impl CrossingsField {
    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn get(&self, p: PixelCoord) -> u32 {
        self.counts[self.dims.index(p)]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn max(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

/// Rightward ray crossings. Row `i + 1` past the last row reads as zeros.
pub fn horizontal_crossings(img: &BinaryImage) -> CrossingsField {
    let dims = img.dims();
    let (h, w) = (dims.height, dims.width);
    let mut counts = vec![0u32; dims.len()];
    for i in 0..h {
        let mut acc = 0;
        for j in (0..w).rev() {
            if i + 1 < h
                && img.is_set(PixelCoord::new(i, j))
                && img.is_set(PixelCoord::new(i + 1, j))
            {
                acc += 1;
            }
            counts[i * w + j] = acc;
        }
    }
    CrossingsField { dims, counts }
}

/// Ground truth by crossing parity: a 0-pixel is inside iff its rightward
/// ray crosses the curve an odd number of times. Only meaningful for
/// Jordan curves, so the image is validated first.
pub fn ray_parity_insideness(img: &BinaryImage) -> Result<InsidenessMask, OracleError> {
    validate_jordan_curve(img)?;
    let field = horizontal_crossings(img);
    Ok(InsidenessMask::from_inside_fn(img, |p| {
        field.get(p) % 2 == 1
    }))
}

/// Pixel and image level agreement between a prediction and the truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub per_pixel: f64,
    /// 1 when every compared pixel matches, else 0.
    pub per_image: u8,
    pub compared: usize,
    pub mismatched: usize,
}

/// Compares two masks. With `include_curve == false`, pixels labelled
/// `Curve` in `truth` are skipped.
pub fn per_image_accuracy(
    pred: &InsidenessMask,
    truth: &InsidenessMask,
    include_curve: bool,
) -> Result<Accuracy, OracleError> {
    if pred.dims != truth.dims {
        return Err(OracleError::DimensionMismatch(pred.dims, truth.dims));
    }
    let mut compared = 0;
    let mut mismatched = 0;
    for (&p, &t) in pred.labels.iter().zip(&truth.labels) {
        if !include_curve && t == Label::Curve {
            continue;
        }
        compared += 1;
        if p != t {
            mismatched += 1;
        }
    }
    let per_pixel = if compared == 0 {
        1.0
    } else {
        (compared - mismatched) as f64 / compared as f64
    };
    Ok(Accuracy {
        per_pixel,
        per_image: u8::from(mismatched == 0),
        compared,
        mismatched,
    })
}
