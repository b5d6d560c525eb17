use std::io::Write;

use insideness_core::networks::{
    boolean_and_net, boolean_not_net, build_dilated_ray_net, build_parity_head, build_ray_net,
    coloring_truth_table, eval_parity_head, rnn_on_truth_row, write_netspec, FeatureTensor,
};

use crate::{CliError, NetspecArgs, Outcome, ParityArgs, TruthTableArgs};

/// Prints the coloring step table in ascending binary order of the input
/// pixel followed by the up, left, centre, right and down hidden bits, with
/// the RNN's activation for each row.
pub fn cmd_truth_table(args: &TruthTableArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    writeln!(out, "x ulcrd target rnn")?;
    let mut matched = 0;
    let table = coloring_truth_table();
    for row in &table {
        let act = rnn_on_truth_row(row, args.q)?;
        let bit = u8::from(act > 0.5);
        matched += usize::from(bit == row.output);
        writeln!(
            out,
            "{} {} {} {:.6}",
            row.x,
            row.bits_string(),
            row.output,
            act
        )?;
    }
    writeln!(out, "rnn matches {matched}/{} rows", table.len())?;
    let mut ok = matched == table.len();
    if args.boolean {
        ok &= boolean_tables(out)?;
    }
    Ok(Outcome::from_bool(ok))
}

fn boolean_tables(out: &mut dyn Write) -> Result<bool, CliError> {
    let mut ok = true;
    writeln!(out, "NOT")?;
    for x in [0.0, 1.0] {
        let t = FeatureTensor::from_values(1, 1, 1, vec![x])?;
        let y = boolean_not_net(&t)?.get(0, 0, 0);
        let want = 1.0 - x;
        ok &= y == want;
        writeln!(out, "{x} -> {y}")?;
    }
    writeln!(out, "AND")?;
    for (a, b) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        let ta = FeatureTensor::from_values(1, 1, 1, vec![a])?;
        let tb = FeatureTensor::from_values(1, 1, 1, vec![b])?;
        let y = boolean_and_net(&ta, &tb)?.get(0, 0, 0);
        ok &= y == a * b;
        writeln!(out, "{a} {b} -> {y}")?;
    }
    Ok(ok)
}

pub fn cmd_parity(args: &ParityArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let head = build_parity_head(args.c);
    let counts: Vec<usize> = match args.n {
        Some(n) if n > args.c => {
            return Err(CliError::Usage(format!("--n {n} exceeds --c {}", args.c)));
        }
        Some(n) => vec![n],
        None => (0..=args.c).collect(),
    };
    let mut ok = true;
    for n in counts {
        let y = eval_parity_head(&head, n as f64)?;
        let pass = y == (n % 2) as f64;
        ok &= pass;
        if args.n.is_some() {
            writeln!(out, "{y}")?;
        } else {
            writeln!(
                out,
                "n={n} head={y} expected={} {}",
                n % 2,
                if pass { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(Outcome::from_bool(ok))
}

pub fn cmd_netspec(args: &NetspecArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let net = match args.kind.as_str() {
        "ray-net" => build_ray_net(args.n, args.n)?,
        "dilated-net" => build_dilated_ray_net(args.n)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown network kind `{other}` (expected ray-net or dilated-net)"
            )))
        }
    };
    out.write_all(write_netspec(&net).as_bytes())?;
    Ok(Outcome::Pass)
}
