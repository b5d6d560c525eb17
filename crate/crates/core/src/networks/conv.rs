use super::{FeatureTensor, NetworkError};

/// Elementwise output nonlinearity of a layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nonlinearity {
    Relu,
    /// `sigma(q * z)`
    Sigmoid(f64),
    None,
}

impl Nonlinearity {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Nonlinearity::Relu => z.max(0.0),
            Nonlinearity::Sigmoid(q) => sigmoid(q * z),
            Nonlinearity::None => z,
        }
    }
}

pub fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// One convolutional layer.
///
/// Tap `(v, w)` of the `kh x kw` kernel reads the input at
/// `(i + d * (v - anchor.0), j + d * (w - anchor.1))`, so a centred `3x3`
/// kernel has anchor `(1, 1)` and a kernel anchored at `(0, 0)` only looks
/// down and to the right. Reads outside the input are zero. Bias is one
/// scalar per output channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvLayerSpec {
    pub kh: usize,
    pub kw: usize,
    pub cin: usize,
    pub cout: usize,
    pub anchor: (usize, usize),
    pub dilation: usize,
    /// `[v][w][c][o]` row-major.
    pub kernel: Vec<f64>,
    pub bias: Vec<f64>,
    pub nonlinearity: Nonlinearity,
}

impl ConvLayerSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        (kh, kw): (usize, usize),
        (cin, cout): (usize, usize),
        anchor: (usize, usize),
        dilation: usize,
        kernel: Vec<f64>,
        bias: Vec<f64>,
        nonlinearity: Nonlinearity,
    ) -> Result<Self, NetworkError> {
        let layer = Self {
            kh,
            kw,
            cin,
            cout,
            anchor,
            dilation,
            kernel,
            bias,
            nonlinearity,
        };
        layer.check()?;
        Ok(layer)
    }

    /// `1x1` layer mapping `cin` channels to `cout` channels; `weights` is `[c][o]`.
    pub fn pointwise(
        cin: usize,
        cout: usize,
        weights: Vec<f64>,
        bias: Vec<f64>,
        nonlinearity: Nonlinearity,
    ) -> Result<Self, NetworkError> {
        Self::new((1, 1), (cin, cout), (0, 0), 1, weights, bias, nonlinearity)
    }

    pub fn check(&self) -> Result<(), NetworkError> {
        if self.kh == 0 || self.kw == 0 || self.cin == 0 || self.cout == 0 {
            return Err(NetworkError::Shape(
                "layer dimensions must be positive".into(),
            ));
        }
        if self.dilation == 0 {
            return Err(NetworkError::Shape("dilation must be at least 1".into()));
        }
        if self.anchor.0 >= self.kh || self.anchor.1 >= self.kw {
            return Err(NetworkError::Shape(format!(
                "anchor {:?} outside a {}x{} kernel",
                self.anchor, self.kh, self.kw
            )));
        }
        let expected = self.kh * self.kw * self.cin * self.cout;
        if self.kernel.len() != expected {
            return Err(NetworkError::Shape(format!(
                "kernel has {} weights, expected {expected}",
                self.kernel.len()
            )));
        }
        if self.bias.len() != self.cout {
            return Err(NetworkError::Shape(format!(
                "bias has {} entries, expected {}",
                self.bias.len(),
                self.cout
            )));
        }
        if self.kernel.iter().chain(&self.bias).any(|v| !v.is_finite()) {
            return Err(NetworkError::Shape("weights must be finite".into()));
        }
        Ok(())
    }

    pub fn weight(&self, v: usize, w: usize, c: usize, o: usize) -> f64 {
        self.kernel[((v * self.kw + w) * self.cin + c) * self.cout + o]
    }
}

/// Zero-padded dilated convolution with the layer's nonlinearity; output has
/// the input's spatial size.
pub fn conv2d(input: &FeatureTensor, layer: &ConvLayerSpec) -> Result<FeatureTensor, NetworkError> {
    if input.channels() != layer.cin {
        return Err(NetworkError::Shape(format!(
            "layer expects {} input channels, got {}",
            layer.cin,
            input.shape_string()
        )));
    }
    let (h, w) = (input.height(), input.width());
    let d = layer.dilation as isize;
    let mut out = FeatureTensor::zeros(h, w, layer.cout);
    // taps with all-zero weights are skipped; the 1xN ray kernel is dense but
    // the dilated and parity layers are mostly zeros
    let taps: Vec<(isize, isize, usize, usize, f64)> = (0..layer.kh)
        .flat_map(|v| (0..layer.kw).map(move |w| (v, w)))
        .flat_map(|(v, w)| {
            (0..layer.cin).flat_map(move |c| (0..layer.cout).map(move |o| (v, w, c, o)))
        })
        .filter_map(|(v, w, c, o)| {
            let k = layer.weight(v, w, c, o);
            (k != 0.0).then(|| {
                (
                    d * (v as isize - layer.anchor.0 as isize),
                    d * (w as isize - layer.anchor.1 as isize),
                    c,
                    o,
                    k,
                )
            })
        })
        .collect();
    let mut acc = vec![0.0; layer.cout];
    for i in 0..h {
        for j in 0..w {
            acc.copy_from_slice(&layer.bias);
            for &(dr, dc, c, o, k) in &taps {
                acc[o] += input.get_padded(i as isize + dr, j as isize + dc, c) * k;
            }
            for (o, &z) in acc.iter().enumerate() {
                out.set(i, j, o, layer.nonlinearity.apply(z));
            }
        }
    }
    Ok(out)
}
