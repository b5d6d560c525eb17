use crate::geometry::BinaryImage;

use super::NetworkError;

/// `height x width x channels` activation volume, channel-fastest layout.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTensor {
    height: usize,
    width: usize,
    channels: usize,
    values: Vec<f64>,
}

impl FeatureTensor {
    pub fn zeros(height: usize, width: usize, channels: usize) -> Self {
        Self {
            height,
            width,
            channels,
            values: vec![0.0; height * width * channels],
        }
    }

    pub fn from_values(
        height: usize,
        width: usize,
        channels: usize,
        values: Vec<f64>,
    ) -> Result<Self, NetworkError> {
        if values.len() != height * width * channels {
            return Err(NetworkError::Shape(format!(
                "{} values for a {height}x{width}x{channels} tensor",
                values.len()
            )));
        }
        Ok(Self {
            height,
            width,
            channels,
            values,
        })
    }

    /// Single-channel tensor holding the image's 0/1 values.
    pub fn from_image(img: &BinaryImage) -> Self {
        Self {
            height: img.height(),
            width: img.width(),
            channels: 1,
            values: img.data().iter().map(|&v| f64::from(v)).collect(),
        }
    }

    /// Stacks two single-channel tensors into one two-channel tensor.
    pub fn stack(a: &FeatureTensor, b: &FeatureTensor) -> Result<Self, NetworkError> {
        if a.channels != 1 || b.channels != 1 || a.height != b.height || a.width != b.width {
            return Err(NetworkError::Shape(format!(
                "cannot stack {} and {}",
                a.shape_string(),
                b.shape_string()
            )));
        }
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .flat_map(|(&x, &y)| [x, y])
            .collect();
        Ok(Self {
            height: a.height,
            width: a.width,
            channels: 2,
            values,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> f64 {
        self.values[(row * self.width + col) * self.channels + channel]
    }

    /// Zero-padded read at signed coordinates.
    pub fn get_padded(&self, row: isize, col: isize, channel: usize) -> f64 {
        if row < 0 || col < 0 || row as usize >= self.height || col as usize >= self.width {
            0.0
        } else {
            self.get(row as usize, col as usize, channel)
        }
    }

    pub fn set(&mut self, row: usize, col: usize, channel: usize, value: f64) {
        let i = (row * self.width + col) * self.channels + channel;
        self.values[i] = value;
    }

    /// One channel as a row-major plane.
    pub fn channel(&self, channel: usize) -> Vec<f64> {
        self.values
            .iter()
            .skip(channel)
            .step_by(self.channels)
            .copied()
            .collect()
    }

    /// Thresholds channel 0 at 0.5.
    pub fn binarize(&self) -> Vec<u8> {
        self.channel(0).iter().map(|&v| u8::from(v > 0.5)).collect()
    }

    pub(crate) fn shape_string(&self) -> String {
        format!("{}x{}x{}", self.height, self.width, self.channels)
    }
}
