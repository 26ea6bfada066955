//! Runs the requested suites and assembles the report.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::config::{Suite, ValidatedConfig};
use crate::error::LabError;
use crate::report::{sort_rows, ExperimentReport, Row};
use crate::suites::{self, Cell, CellResult};

/// Runs cells on up to `jobs` threads. Results keep the order of `cells`.
pub fn run_cells(cells: Vec<Cell<'_>>, jobs: usize) -> Result<Vec<Row>, LabError> {
    let ids: Vec<String> = cells.iter().map(|c| c.id.clone()).collect();
    let results: Vec<CellResult> = if jobs <= 1 || cells.len() <= 1 {
        cells.into_iter().map(|c| (c.work)()).collect()
    } else {
        let n = cells.len();
        let slots: Vec<Mutex<Option<Cell<'_>>>> =
            cells.into_iter().map(|c| Mutex::new(Some(c))).collect();
        let out: Vec<Mutex<Option<CellResult>>> = (0..n).map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..jobs.min(n) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let cell = slots[i]
                        .lock()
                        .expect("slot lock")
                        .take()
                        .expect("cell taken once");
                    let r = (cell.work)();
                    *out[i].lock().expect("result lock") = Some(r);
                });
            }
        });
        out.into_iter()
            .map(|m| m.into_inner().expect("result lock").expect("cell ran"))
            .collect()
    };
    let mut rows = Vec::new();
    for (id, r) in ids.into_iter().zip(results) {
        match r {
            Ok(mut v) => rows.append(&mut v),
            Err(message) => return Err(LabError::Cell { cell: id, message }),
        }
    }
    Ok(rows)
}

fn suite_rows(cfg: &ValidatedConfig, suite: Suite, jobs: usize) -> Result<Vec<Row>, LabError> {
    let cell_err = |message: String| LabError::Cell {
        cell: suite.name().to_string(),
        message,
    };
    match suite {
        Suite::Guillemin => run_cells(suites::guillemin::cells(cfg), jobs),
        Suite::Theorem1 => {
            let ctx = suites::theorem1::Context::new(cfg.geometry.clone());
            run_cells(suites::theorem1::cells(cfg, &ctx), jobs)
        }
        Suite::Index => {
            let ctx = suites::index::Context::new(cfg.geometry.clone(), cfg.config.index.order);
            run_cells(suites::index::cells(cfg, &ctx), jobs)
        }
        Suite::Resolution => {
            let mut rows = run_cells(suites::resolution::cells(cfg).map_err(cell_err)?, jobs)?;
            suites::resolution::finish(cfg, &mut rows);
            Ok(rows)
        }
        Suite::Unbounded => run_cells(suites::unbounded::cells(cfg).map_err(cell_err)?, jobs),
    }
}

/// Executes every requested suite in a fixed order.
pub fn run(cfg: &ValidatedConfig, jobs: usize) -> Result<ExperimentReport, LabError> {
    let requested: Vec<Suite> = Suite::ALL.into_iter().filter(|s| cfg.has(*s)).collect();
    let mut rows = Vec::new();
    let mut timing = Vec::new();
    for &s in &requested {
        let t = Instant::now();
        rows.append(&mut suite_rows(cfg, s, jobs)?);
        timing.push((s, t.elapsed().as_secs_f64()));
    }
    sort_rows(&mut rows);
    Ok(ExperimentReport {
        run_id: cfg.config.run_id(),
        suites: requested,
        rows,
        timing,
    })
}
