//! Feed-forward ReLU networks that compute insideness by ray crossing parity.
//!
//! Layer 1 marks columns where row `i` and row `i+1` both carry the curve,
//! `[X(i,j) + X(i+1,j) - 1]_+`. The crossing layer sums those marks along the
//! rightward ray, either with one `1 x N` all-ones kernel or with `log2 N`
//! dilated `3x3` layers. The parity head turns the count into 1 (odd, inside)
//! or 0 (even, outside).

use crate::geometry::BinaryImage;
use crate::oracle::InsidenessMask;

use super::{conv2d, ConvLayerSpec, FeatureTensor, NetworkError, Nonlinearity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayNetKind {
    /// One `1 x N` summing layer.
    Direct,
    /// `log2 N` dilated layers with dilations `1, 2, ..., N/2`.
    Dilated,
}

impl RayNetKind {
    pub fn name(self) -> &'static str {
        match self {
            RayNetKind::Direct => "ray-net",
            RayNetKind::Dilated => "dilated-net",
        }
    }
}

/// A constructed ray-intersection network.
#[derive(Debug, Clone, PartialEq)]
pub struct RayNetSpec {
    pub kind: RayNetKind,
    /// Widest image the network handles.
    pub n: usize,
    /// Largest crossing count the parity head resolves.
    pub c: usize,
    pub layers: Vec<ConvLayerSpec>,
    /// Number of leading layers whose output is the crossing field.
    pub crossing_depth: usize,
}

/// Hidden-layer thresholds of the parity head for one triplet `u`.
fn triplet_biases(u: usize) -> [f64; 3] {
    let base = 2.0 * u as f64;
    [0.5 - base, 0.0 - base, -0.5 - base]
}

/// Two `1x1` layers computing `n mod 2` for integers `0 <= n <= c`.
///
/// For each even number `2u <= c` a triplet of ReLUs thresholds at
/// `2u - 1/2`, `2u` and `2u + 1/2`; the output unit weighs each triplet by
/// `(-2, 4, -2)` and adds 1. A triplet contributes -1 when the input equals
/// `2u` and 0 otherwise, so the output is 0 on even inputs and 1 on odd ones.
pub fn build_parity_head(c: usize) -> Vec<ConvLayerSpec> {
    let triplets = c / 2 + 1;
    let width = 3 * triplets;
    let hidden_bias: Vec<f64> = (0..triplets).flat_map(triplet_biases).collect();
    let hidden =
        ConvLayerSpec::pointwise(1, width, vec![1.0; width], hidden_bias, Nonlinearity::Relu)
            .expect("valid shape");
    let out_weights: Vec<f64> = (0..triplets).flat_map(|_| [-2.0, 4.0, -2.0]).collect();
    let output = ConvLayerSpec::pointwise(width, 1, out_weights, vec![1.0], Nonlinearity::Relu)
        .expect("valid shape");
    vec![hidden, output]
}

/// Runs the parity head on a single scalar.
pub fn eval_parity_head(head: &[ConvLayerSpec], n: f64) -> Result<f64, NetworkError> {
    let mut x = FeatureTensor::from_values(1, 1, 1, vec![n])?;
    for layer in head {
        x = conv2d(&x, layer)?;
    }
    Ok(x.get(0, 0, 0))
}

fn crossing_marks_layer() -> ConvLayerSpec {
    // 2x1 kernel anchored at its top tap: reads (i, j) and (i+1, j)
    ConvLayerSpec::new(
        (2, 1),
        (1, 1),
        (0, 0),
        1,
        vec![1.0, 1.0],
        vec![-1.0],
        Nonlinearity::Relu,
    )
    .expect("valid shape")
}

/// `1 x n` all-ones kernel anchored at its left end: sums columns `j..j+n`.
pub fn ray_sum_layer(n: usize) -> ConvLayerSpec {
    ConvLayerSpec::new(
        (1, n),
        (1, 1),
        (0, 0),
        1,
        vec![1.0; n],
        vec![0.0],
        Nonlinearity::Relu,
    )
    .expect("valid shape")
}

/// Centred kernel `[[0,0,0],[0,1,1],[0,0,0]]` at dilation `d`: adds the
/// activation `d` columns to the right.
pub fn dilated_pair_layer(d: usize) -> ConvLayerSpec {
    let mut k = vec![0.0; 9];
    k[4] = 1.0;
    k[5] = 1.0;
    ConvLayerSpec::new((3, 3), (1, 1), (1, 1), d, k, vec![0.0], Nonlinearity::Relu)
        .expect("valid shape")
}

/// Four-layer network with a `1 x n` crossing layer and a parity head for
/// counts up to `c`.
pub fn build_ray_net(n: usize, c: usize) -> Result<RayNetSpec, NetworkError> {
    if n < 3 {
        return Err(NetworkError::InvalidParameter(format!(
            "ray network needs N >= 3, got {n}"
        )));
    }
    if c > n {
        return Err(NetworkError::InvalidParameter(format!(
            "crossing bound C = {c} exceeds N = {n}"
        )));
    }
    let mut layers = vec![crossing_marks_layer(), ray_sum_layer(n)];
    layers.extend(build_parity_head(c));
    Ok(RayNetSpec {
        kind: RayNetKind::Direct,
        n,
        c,
        layers,
        crossing_depth: 2,
    })
}

/// Ray network whose crossing sums come from dilated convolutions. A side
/// that is not a power of two is rounded up; zero columns add no crossings.
pub fn build_dilated_ray_net(n: usize) -> Result<RayNetSpec, NetworkError> {
    if n < 3 {
        return Err(NetworkError::InvalidParameter(format!(
            "ray network needs N >= 3, got {n}"
        )));
    }
    let canvas = n.next_power_of_two();
    let mut layers = vec![crossing_marks_layer()];
    let mut d = 1;
    while d < canvas {
        layers.push(dilated_pair_layer(d));
        d *= 2;
    }
    let crossing_depth = layers.len();
    layers.extend(build_parity_head(canvas));
    Ok(RayNetSpec {
        kind: RayNetKind::Dilated,
        n: canvas,
        c: canvas,
        layers,
        crossing_depth,
    })
}

impl RayNetSpec {
    fn check_fits(&self, img: &BinaryImage) -> Result<(), NetworkError> {
        if img.height() > self.n || img.width() > self.n {
            return Err(NetworkError::SizeOverflow {
                height: img.height(),
                width: img.width(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// Activations after every layer, first to last.
    pub fn forward(&self, img: &BinaryImage) -> Result<Vec<FeatureTensor>, NetworkError> {
        self.check_fits(img)?;
        let mut x = FeatureTensor::from_image(img);
        let mut out = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            x = conv2d(&x, layer)?;
            out.push(x.clone());
        }
        Ok(out)
    }

    /// Output of the last summing layer: the crossing count at every pixel.
    pub fn crossing_field(&self, img: &BinaryImage) -> Result<FeatureTensor, NetworkError> {
        self.check_fits(img)?;
        let mut x = FeatureTensor::from_image(img);
        for layer in &self.layers[..self.crossing_depth] {
            x = conv2d(&x, layer)?;
        }
        Ok(x)
    }
}

/// Runs the network and thresholds its output at 0.5; 1-pixels keep the
/// `Curve` label.
pub fn eval_net(net: &RayNetSpec, img: &BinaryImage) -> Result<InsidenessMask, NetworkError> {
    let acts = net.forward(img)?;
    let out = acts.last().expect("network has layers").channel(0);
    Ok(InsidenessMask::from_inside_fn(img, |p| {
        out[p.row * img.width() + p.col] > 0.5
    }))
}
