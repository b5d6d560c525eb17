//! Uniform entry point over the oracles and the analytic networks.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::BinaryImage;
use crate::networks::{
    build_coloring_convlstm, build_dilated_ray_net, build_identity_convlstm, build_ray_net,
    eval_net, run_coloring, run_convlstm_stack, NetworkError, RayNetSpec, DEFAULT_Q,
};
use crate::oracle::{flood_fill_outside, ray_parity_insideness, InsidenessMask, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solver {
    Flood,
    RayOracle,
    RayNet,
    DilatedNet,
    Rnn,
    ConvLstm,
    Stacked,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("unknown solver `{0}` (expected one of: flood, ray-oracle, ray-net, dilated-net, rnn, convlstm, stacked)")]
    Unknown(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Solver {
    pub const ALL: [Solver; 7] = [
        Solver::Flood,
        Solver::RayOracle,
        Solver::RayNet,
        Solver::DilatedNet,
        Solver::Rnn,
        Solver::ConvLstm,
        Solver::Stacked,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Flood => "flood",
            Solver::RayOracle => "ray-oracle",
            Solver::RayNet => "ray-net",
            Solver::DilatedNet => "dilated-net",
            Solver::Rnn => "rnn",
            Solver::ConvLstm => "convlstm",
            Solver::Stacked => "stacked",
        }
    }

    pub fn is_recurrent(self) -> bool {
        matches!(self, Solver::Rnn | Solver::ConvLstm | Solver::Stacked)
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Solver::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| SolverError::Unknown(s.to_string()))
    }
}

/// A solver's prediction for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverRun {
    pub mask: InsidenessMask,
    /// Recurrent updates to the fixpoint, including the confirming one.
    pub steps: Option<usize>,
    /// Whether the recurrent outside set only grew.
    pub monotone: Option<bool>,
}

impl SolverRun {
    fn feedforward(mask: InsidenessMask) -> Self {
        Self {
            mask,
            steps: None,
            monotone: None,
        }
    }
}

/// A solver with networks built for one image size, reusable across images.
#[derive(Debug, Clone)]
pub struct PreparedSolver {
    solver: Solver,
    size: usize,
    ray: Option<RayNetSpec>,
}

impl PreparedSolver {
    /// Builds the network (if any) for square images of side `size`.
    pub fn new(solver: Solver, size: usize) -> Result<Self, SolverError> {
        let ray = match solver {
            Solver::RayNet => Some(build_ray_net(size, size)?),
            Solver::DilatedNet => Some(build_dilated_ray_net(size)?),
            _ => None,
        };
        Ok(Self { solver, size, ray })
    }

    pub fn solver(&self) -> Solver {
        self.solver
    }

    /// Recurrent solvers get `height * width + 1` updates, enough to reach
    /// the fixpoint and confirm it on any image.
    pub fn run(&self, img: &BinaryImage) -> Result<SolverRun, SolverError> {
        let max_steps = img.height() * img.width() + 1;
        match self.solver {
            Solver::Flood => Ok(SolverRun::feedforward(flood_fill_outside(img))),
            Solver::RayOracle => Ok(SolverRun::feedforward(ray_parity_insideness(img)?)),
            Solver::RayNet | Solver::DilatedNet => {
                let net = self.ray.as_ref().expect("built in new");
                Ok(SolverRun::feedforward(eval_net(net, img)?))
            }
            Solver::Rnn => {
                let out = run_coloring(img, DEFAULT_Q, max_steps)?;
                Ok(SolverRun {
                    mask: out.mask,
                    steps: Some(out.steps),
                    monotone: Some(out.monotone),
                })
            }
            Solver::ConvLstm | Solver::Stacked => {
                let mut cells = vec![build_coloring_convlstm(DEFAULT_Q)?];
                if self.solver == Solver::Stacked {
                    cells.push(build_identity_convlstm(DEFAULT_Q)?);
                }
                let out = run_convlstm_stack(&cells, img, max_steps)?;
                Ok(SolverRun {
                    mask: out.to_mask(img),
                    steps: Some(out.steps),
                    monotone: Some(out.monotone),
                })
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// One-off convenience wrapper around [`PreparedSolver`].
pub fn solve(solver: Solver, img: &BinaryImage) -> Result<SolverRun, SolverError> {
    PreparedSolver::new(solver, img.height().max(img.width()))?.run(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_spiral;

    #[test]
    fn names_round_trip() {
        for s in Solver::ALL {
            assert_eq!(s.name().parse::<Solver>().unwrap(), s);
        }
        assert!(matches!(
            "cnn".parse::<Solver>(),
            Err(SolverError::Unknown(_))
        ));
    }

    #[test]
    fn all_solvers_agree_on_a_spiral() {
        let img = gen_spiral(3, 42).unwrap().into_image();
        let truth = flood_fill_outside(&img);
        for s in Solver::ALL {
            let run = solve(s, &img).unwrap();
            assert_eq!(run.mask, truth, "{s}");
            assert_eq!(run.steps.is_some(), s.is_recurrent());
        }
    }

    #[test]
    fn local_solvers_miss_diagonal_only_outside() {
        // (4,4) reaches the outside only through its diagonal (3,3)
        let img = BinaryImage::from_ascii(
            "...####
             ...#..#
             ...##.#
             ###.#.#
             #.###.#
             #.....#
             #######",
        )
        .unwrap()
        .pad(1);
        let truth = flood_fill_outside(&img);
        let q = crate::geometry::PixelCoord::new(4, 4);
        for s in Solver::ALL {
            let run = solve(s, &img).unwrap();
            if s.is_recurrent() {
                assert_eq!(run.mask.get(q), crate::oracle::Label::Inside, "{s}");
            } else {
                assert_eq!(run.mask, truth, "{s}");
            }
        }
    }
}
