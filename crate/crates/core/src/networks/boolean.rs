//! Boolean NOT and AND as single ReLU layers.

use super::{conv2d, ConvLayerSpec, FeatureTensor, NetworkError, Nonlinearity};

fn check_binary(x: &FeatureTensor) -> Result<(), NetworkError> {
    match x.values().iter().position(|&v| v != 0.0 && v != 1.0) {
        Some(index) => Err(NetworkError::NonBinary {
            index,
            value: x.values()[index],
        }),
        None => Ok(()),
    }
}

/// `[-x + 1]_+`
pub fn not_layer() -> ConvLayerSpec {
    ConvLayerSpec::pointwise(1, 1, vec![-1.0], vec![1.0], Nonlinearity::Relu).expect("valid shape")
}

/// `[x1 + x2 - 1]_+` over a two-channel input.
pub fn and_layer() -> ConvLayerSpec {
    ConvLayerSpec::pointwise(2, 1, vec![1.0, 1.0], vec![-1.0], Nonlinearity::Relu)
        .expect("valid shape")
}

/// Elementwise NOT of a single-channel 0/1 tensor.
pub fn boolean_not_net(x: &FeatureTensor) -> Result<FeatureTensor, NetworkError> {
    check_binary(x)?;
    conv2d(x, &not_layer())
}

/// Elementwise AND of two single-channel 0/1 tensors.
pub fn boolean_and_net(
    x1: &FeatureTensor,
    x2: &FeatureTensor,
) -> Result<FeatureTensor, NetworkError> {
    check_binary(x1)?;
    check_binary(x2)?;
    let stacked = FeatureTensor::stack(x1, x2)?;
    conv2d(&stacked, &and_layer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(v: f64) -> FeatureTensor {
        FeatureTensor::from_values(1, 1, 1, vec![v]).unwrap()
    }

    #[test]
    fn not_truth_table() {
        assert_eq!(boolean_not_net(&scalar(0.0)).unwrap().values(), &[1.0]);
        assert_eq!(boolean_not_net(&scalar(1.0)).unwrap().values(), &[0.0]);
    }

    #[test]
    fn and_truth_table() {
        for a in [0.0, 1.0] {
            for b in [0.0, 1.0] {
                let y = boolean_and_net(&scalar(a), &scalar(b)).unwrap();
                assert_eq!(y.values(), &[a * b]);
            }
        }
    }

    #[test]
    fn rejects_non_binary_and_mismatched_input() {
        assert!(matches!(
            boolean_not_net(&scalar(0.5)),
            Err(NetworkError::NonBinary { .. })
        ));
        let a = FeatureTensor::zeros(2, 2, 1);
        let b = FeatureTensor::zeros(2, 3, 1);
        assert!(matches!(
            boolean_and_net(&a, &b),
            Err(NetworkError::Shape(_))
        ));
    }
}
