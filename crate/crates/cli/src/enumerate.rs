use std::io::Write;

use insideness_core::enumeration::{
    count_grid_cycles, count_jordan_curves_exact, enumerate_jordan_curves_exact,
    jordan_lower_bound, lower_bound_curves, EnumerationError,
};
use insideness_core::store::{write_dataset, StoredDataset};

use crate::{CliError, EnumerateArgs, Outcome};

pub fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.image_size.is_none() && args.grid.is_none() {
        return Err(CliError::Usage(
            "enumerate needs --image-size or --grid".into(),
        ));
    }
    if args.image_size.is_none() && (args.exact || args.emit.is_some()) {
        return Err(CliError::Usage(
            "--exact and --emit need --image-size".into(),
        ));
    }
    if let Some(k) = args.grid {
        writeln!(out, "grid {k}x{k}: {} cycles", count_grid_cycles(k, k)?)?;
    }
    let Some(n) = args.image_size else {
        return Ok(Outcome::Pass);
    };
    match jordan_lower_bound(n) {
        Ok(lb) => writeln!(out, "image size {n}: lower bound {lb}")?,
        Err(EnumerationError::InvalidSize(why)) if args.exact => {
            writeln!(out, "image size {n}: no lower bound ({why})")?
        }
        Err(e) => return Err(e.into()),
    }
    if args.exact {
        writeln!(
            out,
            "image size {n}: exact count {}",
            count_jordan_curves_exact(n)?
        )?;
    }
    if let Some(dir) = &args.emit {
        let (family, curves) = if args.exact {
            (format!("exact-{n}"), enumerate_jordan_curves_exact(n)?)
        } else {
            (format!("lower-bound-{n}"), lower_bound_curves(n)?)
        };
        write_dataset(dir, &StoredDataset::from_images(&family, &curves)?)?;
        writeln!(out, "wrote {} curves to {}", curves.len(), dir.display())?;
    }
    Ok(Outcome::Pass)
}
