//! The coloring routine as a sigmoidal convolutional RNN.
//!
//! Every step recomputes each pixel from itself and its four edge
//! neighbours, `h' = sigma(q * (sum h - 5 X - 1/2))`: a background pixel
//! turns on (outside) as soon as any pixel in its neighbourhood is on, a
//! curve pixel never does. Starting from the image border, the on-set grows
//! until it covers the outside region reachable through edge neighbours.

use crate::geometry::{BinaryImage, PixelCoord};
use crate::oracle::InsidenessMask;

use super::{sigmoid, NetworkError};

/// Default saturation scale; `sigma(+-32)` is within `1.3e-14` of `{1, 0}`.
pub const DEFAULT_Q: f64 = 64.0;

/// Hidden map of the coloring RNN.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoringState {
    pub height: usize,
    pub width: usize,
    pub hidden: Vec<f64>,
    pub step: usize,
}

impl ColoringState {
    /// 1 on the image border, 0 elsewhere.
    pub fn border_init(height: usize, width: usize) -> Self {
        let hidden = (0..height * width)
            .map(|i| {
                let (r, c) = (i / width, i % width);
                if r == 0 || c == 0 || r + 1 == height || c + 1 == width {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        Self {
            height,
            width,
            hidden,
            step: 0,
        }
    }

    pub fn binarize(&self) -> Vec<u8> {
        self.hidden.iter().map(|&v| u8::from(v > 0.5)).collect()
    }

    /// Largest distance of any hidden value from the nearer of 0 and 1.
    pub fn saturation_error(&self) -> f64 {
        self.hidden
            .iter()
            .map(|&v| v.min(1.0 - v))
            .fold(0.0, f64::max)
    }
}

/// One synchronous update. Neighbours outside the image read as 1.
pub fn coloring_step_rnn(
    state: &ColoringState,
    img: &BinaryImage,
    q: f64,
) -> Result<ColoringState, NetworkError> {
    if q <= 0.0 || !q.is_finite() {
        return Err(NetworkError::InvalidParameter(format!(
            "q must be positive, got {q}"
        )));
    }
    let (h, w) = (state.height, state.width);
    if img.height() != h || img.width() != w {
        return Err(NetworkError::Shape(format!(
            "state is {h}x{w}, image is {}",
            img.dims()
        )));
    }
    let read = |r: isize, c: isize| -> f64 {
        if r < 0 || c < 0 || r as usize >= h || c as usize >= w {
            1.0
        } else {
            state.hidden[r as usize * w + c as usize]
        }
    };
    let mut hidden = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            let (ri, ci) = (r as isize, c as isize);
            let sum = read(ri, ci)
                + read(ri - 1, ci)
                + read(ri + 1, ci)
                + read(ri, ci - 1)
                + read(ri, ci + 1);
            let x = f64::from(img.get(PixelCoord::new(r, c)));
            hidden[r * w + c] = sigmoid(q * (sum - 5.0 * x - 0.5));
        }
    }
    Ok(ColoringState {
        height: h,
        width: w,
        hidden,
        step: state.step + 1,
    })
}

/// Result of unrolling a recurrent solver to its fixpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoringOutcome {
    pub mask: InsidenessMask,
    /// Updates applied, including the final one that changed nothing.
    pub steps: usize,
    /// Whether the binarized outside set never lost a pixel.
    pub monotone: bool,
    /// Worst distance of a post-sigmoid activation from `{0, 1}` over all steps.
    pub max_saturation_error: f64,
}

/// Unrolls the coloring RNN from the border initialisation until the
/// binarized map stops changing. Fails with `NoConvergence` after
/// `max_steps` updates.
pub fn run_coloring(
    img: &BinaryImage,
    q: f64,
    max_steps: usize,
) -> Result<ColoringOutcome, NetworkError> {
    let mut state = ColoringState::border_init(img.height(), img.width());
    let mut labels = state.binarize();
    let mut monotone = true;
    let mut max_err: f64 = 0.0;
    for _ in 0..max_steps {
        state = coloring_step_rnn(&state, img, q)?;
        max_err = max_err.max(state.saturation_error());
        let next = state.binarize();
        monotone &= labels.iter().zip(&next).all(|(&a, &b)| b >= a);
        if next == labels {
            let mask = outside_map_to_mask(img, &next);
            return Ok(ColoringOutcome {
                mask,
                steps: state.step,
                monotone,
                max_saturation_error: max_err,
            });
        }
        labels = next;
    }
    Err(NetworkError::NoConvergence { steps: max_steps })
}

/// Reads a binarized recurrent output (1 = outside) as an insideness mask.
pub fn outside_map_to_mask(img: &BinaryImage, outside: &[u8]) -> InsidenessMask {
    InsidenessMask::from_inside_fn(img, |p| outside[p.row * img.width() + p.col] == 0)
}

/// One row of the per-step coloring oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruthRow {
    /// Input pixel value.
    pub x: u8,
    /// Hidden bits of the neighbourhood in reading order: up, left, centre, right, down.
    pub bits: [u8; 5],
    pub output: u8,
}

impl TruthRow {
    pub fn bits_string(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

/// All 64 input combinations of one coloring step, in ascending binary
/// order of `x` followed by the five bits. The output is on iff the pixel
/// is background and at least one neighbourhood bit is on.
pub fn coloring_truth_table() -> Vec<TruthRow> {
    (0u8..64)
        .map(|code| {
            let x = code >> 5;
            let bits = [4, 3, 2, 1, 0].map(|k| (code >> k) & 1);
            let output = u8::from(x == 0 && bits.contains(&1));
            TruthRow { x, bits, output }
        })
        .collect()
}

/// Evaluates a truth-table row through [`coloring_step_rnn`] on a `3x3`
/// patch and returns the raw centre activation.
pub fn rnn_on_truth_row(row: &TruthRow, q: f64) -> Result<f64, NetworkError> {
    let mut img = BinaryImage::zeros(3, 3).expect("non-empty");
    img.set(PixelCoord::new(1, 1), row.x).expect("in bounds");
    let mut hidden = vec![0.0; 9];
    for (&b, idx) in row.bits.iter().zip([1, 3, 4, 5, 7]) {
        hidden[idx] = f64::from(b);
    }
    let state = ColoringState {
        height: 3,
        width: 3,
        hidden,
        step: 0,
    };
    Ok(coloring_step_rnn(&state, &img, q)?.hidden[4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::flood_fill_outside;

    fn ring5() -> BinaryImage {
        BinaryImage::from_ascii(
            ".....
             .###.
             .#.#.
             .###.
             .....",
        )
        .unwrap()
    }

    #[test]
    fn border_neighbour_turns_on() {
        let img = BinaryImage::zeros(4, 4).unwrap();
        let state = ColoringState {
            height: 4,
            width: 4,
            hidden: vec![0.0; 16],
            step: 0,
        };
        let next = coloring_step_rnn(&state, &img, DEFAULT_Q).unwrap();
        // (0, 1) sees the row above the image, which reads as 1
        assert!(next.hidden[1] > 1.0 - 1e-12);
        // (1, 1) has no lit neighbour yet
        assert!(next.hidden[5] < 1e-12);
    }

    #[test]
    fn curve_pixel_blocks() {
        let mut img = BinaryImage::zeros(3, 3).unwrap();
        img.set(PixelCoord::new(1, 1), 1).unwrap();
        let state = ColoringState {
            height: 3,
            width: 3,
            hidden: vec![1.0; 9],
            step: 0,
        };
        let next = coloring_step_rnn(&state, &img, DEFAULT_Q).unwrap();
        assert!(next.hidden[4] < 1e-12);
    }

    #[test]
    fn truth_table_rows() {
        let t = coloring_truth_table();
        assert_eq!(t.len(), 64);
        assert_eq!(
            (t[0].x, t[0].bits_string().as_str(), t[0].output),
            (0, "00000", 0)
        );
        assert_eq!(
            (t[8].x, t[8].bits_string().as_str(), t[8].output),
            (0, "01000", 1)
        );
        assert_eq!(
            (t[63].x, t[63].bits_string().as_str(), t[63].output),
            (1, "11111", 0)
        );
        assert_eq!(t.iter().filter(|r| r.output == 1).count(), 31);
    }

    #[test]
    fn rnn_reproduces_truth_table() {
        for row in coloring_truth_table() {
            let y = rnn_on_truth_row(&row, DEFAULT_Q).unwrap();
            assert_eq!(u8::from(y > 0.5), row.output, "{row:?}");
            assert!(y.min(1.0 - y) < 1e-6);
        }
    }

    #[test]
    fn ring_fixpoint() {
        let img = ring5();
        let out = run_coloring(&img, DEFAULT_Q, 25).unwrap();
        assert_eq!(out.mask.inside_pixels(), vec![PixelCoord::new(2, 2)]);
        assert_eq!(out.mask, flood_fill_outside(&img));
        assert!(out.steps <= 25);
        assert!(out.monotone);
        assert!(out.max_saturation_error < 1e-6);
    }

    #[test]
    fn needs_enough_steps() {
        // a blank 9x9 image needs four expansions to reach the centre and
        // one more update to confirm the fixpoint
        let img = BinaryImage::zeros(9, 9).unwrap();
        assert!(matches!(
            run_coloring(&img, DEFAULT_Q, 3),
            Err(NetworkError::NoConvergence { steps: 3 })
        ));
        assert_eq!(run_coloring(&img, DEFAULT_Q, 81).unwrap().steps, 5);
    }

    #[test]
    fn rejects_bad_q() {
        let img = ring5();
        assert!(run_coloring(&img, 0.0, 25).is_err());
    }
}
