use std::time::Instant;

use anyhow::{bail, Result};
use sepcheck_core::{
    decompose, is_fully_separable, is_pq_separable, is_pq_separable_subset, oracle_fully_separable,
    oracle_pq, random_structured_state,
};
use serde_json::{json, Value};

use crate::args::{BenchArgs, CheckFullArgs, CheckPqArgs, DecomposeArgs, RandomArgs};
use crate::report::{split_counters, CommandEcho, InputDigest, Report, Verification};
use crate::{bench, exit, io};

fn elapsed_ns(start: Instant) -> u64 {
    start.elapsed().as_nanos() as u64
}

pub fn check_full(args: &CheckFullArgs) -> Result<(Report, u8)> {
    let state = io::read_state(&args.file)?;
    let tol = args.tol.tolerances();
    let start = Instant::now();
    let full = is_fully_separable(&state, &tol);
    let timing_ns = elapsed_ns(start);

    let mut code = if full.separable {
        exit::SEPARABLE
    } else {
        exit::NOT_SEPARABLE
    };
    let verify = args.verify.then(|| {
        let oracle_separable = oracle_fully_separable(&state, tol.rank);
        Verification {
            oracle_separable,
            agrees: oracle_separable == full.separable,
        }
    });
    if verify.as_ref().is_some_and(|v| !v.agrees) {
        code = exit::ORACLE_DISAGREES;
    }
    let (result, counters) = split_counters(serde_json::to_value(&full)?);
    let report = Report {
        command: CommandEcho {
            name: "check-full".into(),
            args: json!({ "file": args.file, "verify": args.verify }),
        },
        input: Some(InputDigest::of(&state, tol.zero)),
        tolerances: tol,
        result,
        verify,
        counters,
        timing_ns,
    };
    Ok((report, code))
}

pub fn check_pq(args: &CheckPqArgs) -> Result<(Report, u8)> {
    let state = io::read_state(&args.file)?;
    let tol = args.tol.tolerances();
    let start = Instant::now();
    let pq = match (&args.subset, args.p) {
        (Some(subset), _) => is_pq_separable_subset(&state, subset, &tol)?,
        (None, Some(p)) => is_pq_separable(&state, p, &tol)?,
        (None, None) => bail!("one of --p or --subset is required"),
    };
    let timing_ns = elapsed_ns(start);

    let mut code = if pq.separable {
        exit::SEPARABLE
    } else {
        exit::NOT_SEPARABLE
    };
    let verify = if args.verify {
        let checked = match &pq.permutation {
            Some(perm) => state.permute_qubits(perm)?,
            None => state.clone(),
        };
        let oracle_separable = oracle_pq(&checked, pq.p, tol.rank)?;
        Some(Verification {
            oracle_separable,
            agrees: oracle_separable == pq.separable,
        })
    } else {
        None
    };
    if verify.as_ref().is_some_and(|v| !v.agrees) {
        code = exit::ORACLE_DISAGREES;
    }
    let (result, counters) = split_counters(serde_json::to_value(&pq)?);
    let report = Report {
        command: CommandEcho {
            name: "check-pq".into(),
            args: json!({
                "file": args.file,
                "p": args.p,
                "subset": args.subset,
                "verify": args.verify,
            }),
        },
        input: Some(InputDigest::of(&state, tol.zero)),
        tolerances: tol,
        result,
        verify,
        counters,
        timing_ns,
    };
    Ok((report, code))
}

pub fn decompose_file(args: &DecomposeArgs) -> Result<(Report, u8)> {
    let state = io::read_state(&args.file)?;
    let tol = args.tol.tolerances();
    let start = Instant::now();
    let tree = decompose(&state, &tol)?;
    let timing_ns = elapsed_ns(start);
    let report = Report {
        command: CommandEcho {
            name: "decompose".into(),
            args: json!({ "file": args.file }),
        },
        input: Some(InputDigest::of(&state, tol.zero)),
        tolerances: tol,
        counters: json!({ "blocks": tree.blocks.len() }),
        result: serde_json::to_value(&tree)?,
        verify: None,
        timing_ns,
    };
    Ok((report, exit::OK))
}

/// Resolves `--n` / `--blocks` into block sizes.
pub fn block_sizes(n: Option<usize>, blocks: Option<&[usize]>) -> Result<Vec<usize>> {
    let sizes = match (n, blocks) {
        (_, Some(b)) => b.to_vec(),
        (Some(n), None) => vec![n],
        (None, None) => bail!("one of --n or --blocks is required"),
    };
    if sizes.is_empty() || sizes.contains(&0) {
        bail!("block sizes must be positive, got {sizes:?}");
    }
    let total: usize = sizes.iter().sum();
    if let Some(n) = n {
        if n != total {
            bail!("--n {n} does not match block sizes {sizes:?} (total {total})");
        }
    }
    Ok(sizes)
}

/// Writes the state file. With `--out` a short report goes to stdout;
/// otherwise the state itself does.
pub fn random(args: &RandomArgs) -> Result<(Option<Report>, u8)> {
    let sizes = block_sizes(args.n, args.blocks.as_deref())?;
    let start = Instant::now();
    let state = random_structured_state(&sizes, args.seed, None)?;
    let timing_ns = elapsed_ns(start);
    io::write_state(&state, args.out.as_deref())?;
    let Some(out) = &args.out else {
        return Ok((None, exit::OK));
    };
    let report = Report {
        command: CommandEcho {
            name: "random".into(),
            args: json!({ "n": args.n, "blocks": args.blocks, "seed": args.seed, "out": out }),
        },
        input: None,
        tolerances: Default::default(),
        result: json!({ "n": state.n(), "blocks": sizes, "out": out }),
        verify: None,
        counters: Value::Null,
        timing_ns,
    };
    Ok((Some(report), exit::OK))
}

pub fn bench(args: &BenchArgs) -> Result<(Report, u8)> {
    if args.n_min > args.n_max {
        bail!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max);
    }
    if args.n_max > 28 {
        bail!("--n-max {} is beyond the supported 28 qubits", args.n_max);
    }
    let tol = args.tol.tolerances();
    let start = Instant::now();
    let rows = bench::run(args.n_min, args.n_max, args.reps, args.seed, &tol);
    let timing_ns = elapsed_ns(start);
    let report = Report {
        command: CommandEcho {
            name: "bench".into(),
            args: json!({
                "n_min": args.n_min,
                "n_max": args.n_max,
                "reps": args.reps,
                "seed": args.seed,
            }),
        },
        input: None,
        tolerances: tol,
        result: json!({ "rows": rows }),
        verify: None,
        counters: Value::Null,
        timing_ns,
    };
    Ok((report, exit::OK))
}
