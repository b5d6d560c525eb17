//! Convolutional LSTM cells with hand-set weights.
//!
//! Standard gate equations over a one-channel input `X` and one-channel
//! hidden state `H`, each gate a `3x3` zero-padded convolution of both:
//!
//! ```text
//! i = sigma(Wxi * X + Whi * H + bi)      f = sigma(Wxf * X + Whf * H + bf)
//! o = sigma(Wxo * X + Who * H + bo)      g = tanh(Wxg * X + Whg * H + bg)
//! C' = f . C + i . g                     H' = o . tanh(C')
//! ```
//!
//! Both constructed cells saturate `i -> 1`, `f -> 0` and `g -> 1`, so the
//! cell state is 1 everywhere and `H' = tanh(1) * o`. The routine lives in
//! the output gate. Hidden values are therefore `0` or [`HIDDEN_ON`]; the
//! coloring cell divides its hidden weights by that level so a lit
//! neighbour counts as 1, and binarization thresholds `H` at 0.5.

use crate::geometry::BinaryImage;
use crate::oracle::InsidenessMask;

use super::coloring::outside_map_to_mask;
use super::{sigmoid, NetworkError};

/// Hidden level of an "on" pixel: `tanh(1)`.
pub const HIDDEN_ON: f64 = 0.761_594_155_955_764_9;

/// `3x3` taps in row-major order, centre at index 4.
pub type Kernel3 = [f64; 9];

const ZERO3: Kernel3 = [0.0; 9];
const CROSS: Kernel3 = [0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0];
const CENTRE: Kernel3 = [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0];

fn scaled(k: Kernel3, s: f64) -> Kernel3 {
    k.map(|v| v * s)
}

/// Input kernel, hidden kernel and bias of one gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    pub input: Kernel3,
    pub hidden: Kernel3,
    pub bias: f64,
}

impl Gate {
    fn constant(bias: f64) -> Self {
        Self {
            input: ZERO3,
            hidden: ZERO3,
            bias,
        }
    }
}

/// Initial hidden and cell state of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateInit {
    Zero,
    /// 1 on the image border, 0 elsewhere.
    Border,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvLstmSpec {
    pub name: String,
    pub input_gate: Gate,
    pub forget_gate: Gate,
    pub output_gate: Gate,
    pub candidate: Gate,
    pub q: f64,
    pub init: StateInit,
}

fn check_q(q: f64) -> Result<(), NetworkError> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(NetworkError::InvalidParameter(format!(
            "q must be positive, got {q}"
        )))
    }
}

/// Cell that copies its input: `o = sigma(q X - q/2)` with no hidden
/// connection into the output gate.
pub fn build_identity_convlstm(q: f64) -> Result<ConvLstmSpec, NetworkError> {
    check_q(q)?;
    Ok(ConvLstmSpec {
        name: "identity".into(),
        input_gate: Gate::constant(q),
        forget_gate: Gate::constant(-q),
        output_gate: Gate {
            input: scaled(CENTRE, q),
            hidden: ZERO3,
            bias: -q / 2.0,
        },
        candidate: Gate::constant(q),
        q,
        init: StateInit::Zero,
    })
}

/// Cell whose output gate performs one coloring step,
/// `o = sigma(q (sum_{cross} H / tanh(1) - 5 X - 1/2))`, starting from a
/// border-lit state.
pub fn build_coloring_convlstm(q: f64) -> Result<ConvLstmSpec, NetworkError> {
    check_q(q)?;
    Ok(ConvLstmSpec {
        name: "coloring".into(),
        input_gate: Gate::constant(q),
        forget_gate: Gate::constant(-q),
        output_gate: Gate {
            input: scaled(CENTRE, -5.0 * q),
            hidden: scaled(CROSS, q / HIDDEN_ON),
            bias: -q / 2.0,
        },
        candidate: Gate::constant(q),
        q,
        init: StateInit::Border,
    })
}

/// Hidden and cell state of one cell over an image.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmState {
    pub height: usize,
    pub width: usize,
    pub hidden: Vec<f64>,
    pub cell: Vec<f64>,
}

impl LstmState {
    pub fn init(spec: &ConvLstmSpec, height: usize, width: usize) -> Self {
        let plane: Vec<f64> = (0..height * width)
            .map(|i| {
                let (r, c) = (i / width, i % width);
                let border = r == 0 || c == 0 || r + 1 == height || c + 1 == width;
                match spec.init {
                    StateInit::Border if border => 1.0,
                    _ => 0.0,
                }
            })
            .collect();
        Self {
            height,
            width,
            hidden: plane.clone(),
            cell: plane,
        }
    }

    pub fn binarize(&self) -> Vec<u8> {
        self.hidden.iter().map(|&v| u8::from(v > 0.5)).collect()
    }
}

fn conv3(plane: &[f64], h: usize, w: usize, r: usize, c: usize, k: &Kernel3) -> f64 {
    let mut s = 0.0;
    for (t, &kv) in k.iter().enumerate() {
        if kv == 0.0 {
            continue;
        }
        let rr = r as isize + (t / 3) as isize - 1;
        let cc = c as isize + (t % 3) as isize - 1;
        if rr >= 0 && cc >= 0 && (rr as usize) < h && (cc as usize) < w {
            s += kv * plane[rr as usize * w + cc as usize];
        }
    }
    s
}

fn gate_preactivation(
    g: &Gate,
    x: &[f64],
    hid: &[f64],
    h: usize,
    w: usize,
    r: usize,
    c: usize,
) -> f64 {
    conv3(x, h, w, r, c, &g.input) + conv3(hid, h, w, r, c, &g.hidden) + g.bias
}

impl ConvLstmSpec {
    /// One time step on input plane `x`.
    pub fn step(&self, x: &[f64], state: &LstmState) -> LstmState {
        let (h, w) = (state.height, state.width);
        let mut hidden = vec![0.0; h * w];
        let mut cell = vec![0.0; h * w];
        for r in 0..h {
            for c in 0..w {
                let pre = |g: &Gate| gate_preactivation(g, x, &state.hidden, h, w, r, c);
                let i = sigmoid(pre(&self.input_gate));
                let f = sigmoid(pre(&self.forget_gate));
                let o = sigmoid(pre(&self.output_gate));
                let g = pre(&self.candidate).tanh();
                let k = r * w + c;
                cell[k] = f * state.cell[k] + i * g;
                hidden[k] = o * cell[k].tanh();
            }
        }
        LstmState {
            height: h,
            width: w,
            hidden,
            cell,
        }
    }
}

/// Final binarized output of a stack and the number of steps unrolled.
#[derive(Debug, Clone, PartialEq)]
pub struct StackOutcome {
    /// Last cell's hidden map thresholded at 0.5.
    pub output: Vec<u8>,
    pub steps: usize,
    /// Whether the last cell's binarized on-set never lost a pixel.
    pub monotone: bool,
}

impl StackOutcome {
    /// Reads the output as an outside map (1 = outside).
    pub fn to_mask(&self, img: &BinaryImage) -> InsidenessMask {
        outside_map_to_mask(img, &self.output)
    }
}

/// Unrolls stacked cells over the image. At each step cell 0 reads the
/// image and cell `k` reads the new hidden map of cell `k - 1`. Stops once
/// every cell's binarized hidden map is unchanged by a step.
pub fn run_convlstm_stack(
    cells: &[ConvLstmSpec],
    img: &BinaryImage,
    max_steps: usize,
) -> Result<StackOutcome, NetworkError> {
    if cells.is_empty() {
        return Err(NetworkError::InvalidParameter(
            "stack needs at least one cell".into(),
        ));
    }
    let (h, w) = (img.height(), img.width());
    let x: Vec<f64> = img.data().iter().map(|&v| f64::from(v)).collect();
    let mut states: Vec<LstmState> = cells.iter().map(|c| LstmState::init(c, h, w)).collect();
    let mut labels: Vec<Vec<u8>> = states.iter().map(LstmState::binarize).collect();
    let mut monotone = true;
    for step in 1..=max_steps {
        let mut input = x.clone();
        for (cell, state) in cells.iter().zip(states.iter_mut()) {
            *state = cell.step(&input, state);
            input.clone_from(&state.hidden);
        }
        let next: Vec<Vec<u8>> = states.iter().map(LstmState::binarize).collect();
        let (last_prev, last_next) = (labels.last().unwrap(), next.last().unwrap());
        monotone &= last_prev.iter().zip(last_next).all(|(&a, &b)| b >= a);
        if next == labels {
            return Ok(StackOutcome {
                output: next.last().unwrap().clone(),
                steps: step,
                monotone,
            });
        }
        labels = next;
    }
    Err(NetworkError::NoConvergence { steps: max_steps })
}

/// Insideness from a stack whose first cell colors and whose remaining cells
/// pass the signal through.
pub fn stack_convlstms(
    cells: &[ConvLstmSpec],
    img: &BinaryImage,
    max_steps: usize,
) -> Result<InsidenessMask, NetworkError> {
    Ok(run_convlstm_stack(cells, img, max_steps)?.to_mask(img))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PixelCoord;
    use crate::networks::coloring::{run_coloring, DEFAULT_Q};

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
    fn hidden_on_level_is_tanh_one() {
        assert!((HIDDEN_ON - 1f64.tanh()).abs() < 1e-16);
    }

    #[test]
    fn identity_cell_copies_input() {
        let cell = build_identity_convlstm(DEFAULT_Q).unwrap();
        let img = ring5();
        let x: Vec<f64> = img.data().iter().map(|&v| f64::from(v)).collect();
        let s = cell.step(&x, &LstmState::init(&cell, 5, 5));
        assert_eq!(s.binarize(), img.data());
        for (&hv, &xv) in s.hidden.iter().zip(&x) {
            assert!((hv - HIDDEN_ON * xv).abs() < 1e-9);
        }
    }

    #[test]
    fn coloring_cell_matches_rnn_on_ring() {
        let img = ring5();
        let cell = build_coloring_convlstm(DEFAULT_Q).unwrap();
        let lstm = stack_convlstms(&[cell], &img, 25).unwrap();
        let rnn = run_coloring(&img, DEFAULT_Q, 25).unwrap();
        assert_eq!(lstm, rnn.mask);
        assert_eq!(lstm.inside_pixels(), vec![PixelCoord::new(2, 2)]);
    }

    #[test]
    fn first_step_lights_pixels_next_to_the_border() {
        let img = BinaryImage::zeros(6, 6).unwrap();
        let cell = build_coloring_convlstm(DEFAULT_Q).unwrap();
        let x = vec![0.0; 36];
        let s = cell.step(&x, &LstmState::init(&cell, 6, 6));
        let on = s.binarize();
        for r in 0..6 {
            for c in 0..6 {
                let ring = r.min(c).min(5 - r).min(5 - c);
                assert_eq!(on[r * 6 + c], u8::from(ring <= 1), "({r}, {c})");
            }
        }
        let _ = img;
    }

    #[test]
    fn curve_pixels_stay_dark() {
        let img = ring5();
        let cell = build_coloring_convlstm(DEFAULT_Q).unwrap();
        let x: Vec<f64> = img.data().iter().map(|&v| f64::from(v)).collect();
        let mut s = LstmState::init(&cell, 5, 5);
        for _ in 0..10 {
            s = cell.step(&x, &s);
            for p in img.ones() {
                assert!(s.hidden[p.row * 5 + p.col] < 1e-9);
            }
        }
    }

    #[test]
    fn stacks_with_identity() {
        let img = ring5();
        let col = build_coloring_convlstm(DEFAULT_Q).unwrap();
        let id = build_identity_convlstm(DEFAULT_Q).unwrap();
        let one = run_convlstm_stack(std::slice::from_ref(&col), &img, 25).unwrap();
        let two = run_convlstm_stack(&[col, id.clone()], &img, 25).unwrap();
        assert_eq!(one.output, two.output);

        let ident = run_convlstm_stack(std::slice::from_ref(&id), &img, 25).unwrap();
        assert_eq!(ident.output, img.data());
        let ident2 = run_convlstm_stack(&[id.clone(), id], &img, 25).unwrap();
        assert_eq!(ident2.output, img.data());
    }

    #[test]
    fn empty_stack_is_an_error() {
        assert!(run_convlstm_stack(&[], &ring5(), 5).is_err());
        assert!(build_coloring_convlstm(-1.0).is_err());
    }
}
