use std::fs;
use std::io::Write;
use std::path::Path;

use insideness_core::store::{load_dataset, StoredDataset};
use insideness_core::{per_image_accuracy, PreparedSolver, Solver};
use serde::{ser::Error as _, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::{CliError, VerifyArgs};

pub const REPORT_TXT: &str = "report.txt";
pub const REPORT_JSON: &str = "report.json";

fn six_places<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    RawValue::from_string(format!("{x:.6}"))
        .map_err(S::Error::custom)?
        .serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureEntry {
    pub index: usize,
    pub image: String,
    pub mismatched: usize,
    pub compared: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepStats {
    pub min: usize,
    #[serde(serialize_with = "six_places")]
    pub mean: f64,
    pub max: usize,
    /// Pixels per image; no image should need more steps.
    pub bound: usize,
    pub over_bound: usize,
    /// Images whose outside set shrank at some step.
    pub non_monotone: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub solver: String,
    pub dataset: String,
    pub include_curve: bool,
    pub images: usize,
    pub compared_pixels: usize,
    pub mismatched_pixels: usize,
    #[serde(serialize_with = "six_places")]
    pub per_pixel_accuracy: f64,
    #[serde(serialize_with = "six_places")]
    pub per_image_accuracy: f64,
    pub steps: Option<StepStats>,
    pub failures: Vec<FailureEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s += &format!("solver: {}\n", self.solver);
        s += &format!("dataset: {}\n", self.dataset);
        s += &format!("include curve: {}\n", self.include_curve);
        s += &format!("images: {}\n", self.images);
        s += &format!(
            "per-pixel accuracy: {:.6} ({} of {} pixels wrong)\n",
            self.per_pixel_accuracy, self.mismatched_pixels, self.compared_pixels
        );
        s += &format!("per-image accuracy: {:.6}\n", self.per_image_accuracy);
        if let Some(st) = &self.steps {
            s += &format!(
                "steps to fixpoint: min {} mean {:.6} max {} (bound {}, {} over)\n",
                st.min, st.mean, st.max, st.bound, st.over_bound
            );
            s += &format!("non-monotone runs: {}\n", st.non_monotone);
        }
        s += &format!("failures: {}\n", self.failures.len());
        for f in &self.failures {
            s += &format!(
                "  #{} {} {}/{} pixels wrong\n",
                f.index, f.image, f.mismatched, f.compared
            );
        }
        s += &format!("result: {}\n", if self.passed() { "PASS" } else { "FAIL" });
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

fn dataset_id(ds: &StoredDataset) -> String {
    let m = &ds.manifest;
    let mut id = format!("{} {}x{}", m.family, m.image_size, m.image_size);
    if let Some(seed) = m.seed {
        id += &format!(" seed {seed}");
    }
    id
}

/// Scores one solver over every image of a loaded dataset, in manifest order.
pub fn verify_dataset(
    ds: &StoredDataset,
    solver: Solver,
    include_curve: bool,
) -> Result<VerificationReport, CliError> {
    let prepared = PreparedSolver::new(solver, ds.manifest.image_size)?;
    let mut compared = 0;
    let mut mismatched = 0;
    let mut failures = Vec::new();
    let mut steps: Vec<usize> = Vec::new();
    let mut non_monotone = 0;
    for (record, sample) in ds.manifest.records.iter().zip(&ds.samples) {
        let run = prepared.run(&sample.image)?;
        let acc = per_image_accuracy(&run.mask, &sample.mask, include_curve)?;
        compared += acc.compared;
        mismatched += acc.mismatched;
        if acc.per_image == 0 {
            failures.push(FailureEntry {
                index: record.index,
                image: record.image.clone(),
                mismatched: acc.mismatched,
                compared: acc.compared,
            });
        }
        if let Some(n) = run.steps {
            steps.push(n);
        }
        if run.monotone == Some(false) {
            non_monotone += 1;
        }
    }
    let images = ds.samples.len();
    let bound = ds.manifest.image_size * ds.manifest.image_size;
    let steps = (solver.is_recurrent() && !steps.is_empty()).then(|| StepStats {
        min: *steps.iter().min().expect("non-empty"),
        mean: steps.iter().sum::<usize>() as f64 / steps.len() as f64,
        max: *steps.iter().max().expect("non-empty"),
        bound,
        over_bound: steps.iter().filter(|&&s| s > bound).count(),
        non_monotone,
    });
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok(VerificationReport {
        solver: solver.name().to_string(),
        dataset: dataset_id(ds),
        include_curve,
        images,
        compared_pixels: compared,
        mismatched_pixels: mismatched,
        per_pixel_accuracy: ratio(compared - mismatched, compared),
        per_image_accuracy: ratio(images - failures.len(), images),
        steps,
        failures,
    })
}

/// Verifies a dataset directory and writes `report.txt` and `report.json`.
pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<VerificationReport, CliError> {
    let solver: Solver = args.solver.parse()?;
    let ds = load_dataset(&args.data)?;
    let report = verify_dataset(&ds, solver, args.include_curve)?;
    let dir = args.report_dir.as_deref().unwrap_or(&args.data);
    write_report(dir, &report)?;
    out.write_all(report.to_text().as_bytes())?;
    Ok(report)
}

fn write_report(dir: &Path, report: &VerificationReport) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(REPORT_TXT), report.to_text()).map_err(io)?;
    fs::write(dir.join(REPORT_JSON), report.to_json()).map_err(io)?;
    Ok(())
}
