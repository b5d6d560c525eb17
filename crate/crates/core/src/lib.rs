//! Insideness laboratory: digital Jordan curves, exact inside/outside ground
//! truth, seeded curve generators, analytically constructed networks that
//! solve insideness exactly, and Jordan curve counting.

pub mod enumeration;
pub mod generators;
pub mod geometry;
pub mod networks;
pub mod oracle;
pub mod solvers;
pub mod store;

pub use generators::{
    build_dataset, dissimilar, generate, CurveScreen, Dataset, Family, GeneratorError,
    GeneratorParams, Sample, Split, SplitCounts,
};
pub use geometry::{
    is_border, neighbors4, neighbors8, validate_jordan_curve, BinaryImage, Dims, GeometryError,
    JordanCurve, PixelCoord, Violation,
};
pub use oracle::{
    flood_fill_outside, horizontal_crossings, per_image_accuracy, ray_parity_insideness, Accuracy,
    CrossingsField, InsidenessMask, Label, OracleError,
};
pub use solvers::{solve, PreparedSolver, Solver, SolverError, SolverRun};
pub use store::{load_dataset, write_dataset, DatasetManifest, StoreError, StoredDataset};
