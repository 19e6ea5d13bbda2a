use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use eo_algebra::morava::MAX_SEARCH_FIELD;
use eo_algebra::stunted::PkParams;

use crate::commands::{self, PkArgs, WindowArgs};
use crate::error::CliError;
use crate::report::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub p: u64,
    pub k: u32,
    pub c: i64,
    pub top: i64,
}

pub fn load_grid(path: &Path) -> Result<Vec<GridPoint>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Grid {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointOutcome {
    pub point: GridPoint,
    pub verdicts: Vec<Verdict>,
    pub skipped: Vec<String>,
    pub error: Option<String>,
}

impl PointOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdicts.iter().all(|v| v.pass)
    }
}

fn battery(pt: GridPoint, precision: Option<usize>) -> Result<(Vec<Verdict>, Vec<String>), CliError> {
    if !eo_algebra::fp::is_prime(pt.p) {
        return Err(eo_algebra::Error::NotPrime(pt.p).into());
    }
    let params = PkParams::new(pt.p, pt.k)?;
    let pk = PkArgs { p: pt.p, k: pt.k };
    let w = WindowArgs { pk, c: pt.c, top: pt.top };
    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();

    verdicts.extend(commands::decompose(&w)?.1);
    verdicts.extend(commands::free_gens(&w)?.1);
    verdicts.extend(commands::finite_support(&w)?.1);
    verdicts.extend(commands::thom_linear(&w)?.1);
    verdicts.extend(commands::tate_check(&pk, pt.c, Some(pt.top.max(pt.c)), 1)?.1);
    verdicts.extend(commands::known_orders(&pk, None)?.1);
    verdicts.extend(commands::coproduct(pt.p, pt.k)?.1);

    let n = params.n as u32;
    if pt.p.checked_pow(n).is_some_and(|q| q <= MAX_SEARCH_FIELD) {
        verdicts.extend(commands::verify_tk(&pk, precision)?.1);
    } else {
        skipped.push(format!("verify-tk: residue field {}^{} exceeds the search cap", pt.p, n));
    }
    Ok((verdicts, skipped))
}

pub fn run_point(pt: GridPoint, precision: Option<usize>) -> PointOutcome {
    match battery(pt, precision) {
        Ok((verdicts, skipped)) => PointOutcome { point: pt, verdicts, skipped, error: None },
        Err(e) => PointOutcome {
            point: pt,
            verdicts: Vec::new(),
            skipped: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

pub fn sweep(grid: &Path, precision: Option<usize>) -> Result<(Value, Vec<Verdict>), CliError> {
    let points = load_grid(grid)?;
    let outcomes: Vec<PointOutcome> = points.par_iter().map(|&pt| run_point(pt, precision)).collect();
    let verdicts = outcomes
        .iter()
        .map(|o| {
            let pt = o.point;
            Verdict::new(
                format!("battery at p={} k={} c={} top={}", pt.p, pt.k, pt.c, pt.top),
                "sweep",
                o.passed(),
            )
        })
        .collect();
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    Ok((json!({ "points": outcomes, "failed": failed }), verdicts))
}
