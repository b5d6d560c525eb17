use std::fs;
use std::io::Write;
use std::path::Path;

use insideness_core::generators::{
    build_dataset, CurveScreen, Family, GeneratorParams, SplitCounts,
};
use insideness_core::store::{load_manifest, write_dataset, StoredDataset, MANIFEST_FILE};

use crate::{CliError, GenArgs, Outcome};

/// Writes a generated dataset to `args.out`. An existing output directory
/// must be empty or hold an earlier dataset, whose files are replaced.
pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let family: Family = args.family.parse()?;
    let mut params = GeneratorParams::new(family, args.seed).with_max_retries(args.max_retries);
    if let Some(size) = args.size {
        params = params.with_size(size);
    }
    if args.allow_diagonal_gaps {
        params = params.with_screen(CurveScreen::JordanOnly);
    }
    let counts = SplitCounts {
        train: args.train,
        val: args.val,
        test: args.test,
    };
    let dataset = build_dataset(&params, counts)?;
    let stored = StoredDataset::from_generated(&dataset);
    clear_previous(&args.out)?;
    write_dataset(&args.out, &stored)?;
    writeln!(
        out,
        "wrote {} image/mask pairs ({} train, {} val, {} test) of {family} {}x{} to {}",
        counts.total(),
        counts.train,
        counts.val,
        counts.test,
        params.image_size,
        params.image_size,
        args.out.display()
    )?;
    Ok(Outcome::Pass)
}

fn clear_previous(dir: &Path) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    if !dir.exists() {
        return Ok(());
    }
    let empty = fs::read_dir(dir).map_err(io)?.next().is_none();
    if empty {
        return Ok(());
    }
    if !dir.join(MANIFEST_FILE).is_file() {
        return Err(CliError::Usage(format!(
            "{} is not empty and holds no {MANIFEST_FILE}; refusing to write into it",
            dir.display()
        )));
    }
    let old = load_manifest(dir)?;
    for r in &old.records {
        for rel in [&r.image, &r.mask] {
            let p = dir.join(rel);
            if p.is_file() {
                fs::remove_file(&p).map_err(io)?;
            }
        }
    }
    for sub in ["images", "masks"] {
        let p = dir.join(sub);
        if p.is_dir() && fs::read_dir(&p).map_err(io)?.next().is_none() {
            fs::remove_dir(&p).map_err(io)?;
        }
    }
    for stale in ["report.txt", "report.json"] {
        let p = dir.join(stale);
        if p.is_file() {
            fs::remove_file(&p).map_err(io)?;
        }
    }
    Ok(())
}
