// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON outputs of a run.
//!
//! Floats use Rust's shortest round-trip formatting, so identical runs give
//! byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::lattice::LatticeModel;
use crate::operators::{moments, LbOperator};
use crate::runner::{Profile, RunOutput};

/// `step,x,y,rho,ux,uy` for every snapshot.
pub fn fields_csv(out: &RunOutput, lat: &LatticeModel) -> String {
    let mut s = String::from("step,x,y,rho,ux,uy\n");
    for (step, f) in &out.snapshots {
        let g = f.grid;
        let m = moments(&g, lat, &f.df);
        let (ux, uy) = (m.ux(), m.uy());
        for y in 0..g.ny {
            for x in 0..g.nx {
                let k = x + y * g.nx;
                let _ = writeln!(s, "{step},{x},{y},{},{},{}", m.rho[k], ux[k], uy[k]);
            }
        }
    }
    s
}

pub fn profile_csv(p: &Profile, engine_tag: &str) -> String {
    let mut s = format!(
        "{},{q}_{engine_tag},{q}_{}\n",
        p.axis,
        p.reference_tag,
        q = p.quantity
    );
    for ((c, v), r) in p.coords.iter().zip(&p.values).zip(&p.reference) {
        let _ = writeln!(s, "{c},{v},{r}");
    }
    s
}

/// Nonzero entries of an operator as `row,col,value`, row-major.
pub fn spy_csv(op: &LbOperator) -> String {
    let mut t = op.triplets();
    t.sort_by_key(|&(r, c, _)| (r, c));
    let mut s = String::from("row,col,value\n");
    for (r, c, v) in t {
        let _ = writeln!(s, "{r},{c},{v}");
    }
    s
}

fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `fields.csv`, the profile files, `spy.csv` and `report.json`.
pub fn write_artifacts(out: &RunOutput, lat: &LatticeModel, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let tag = out.report.engine.tag();
    let mut written = vec![write(dir, "fields.csv", &fields_csv(out, lat))?];
    for p in &out.profiles {
        written.push(write(dir, p.file, &profile_csv(p, tag))?);
    }
    written.push(write(dir, "spy.csv", &spy_csv(&out.streaming))?);
    let json = serde_json::to_string_pretty(&out.report)
        .map_err(|e| Error::config(format!("report serialization: {e}")))?;
    written.push(write(dir, "report.json", &(json + "\n"))?);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CaseConfig, CaseId};
    use crate::lattice::d2q9;
    use crate::runner::run_case;

    #[test]
    fn deterministic_files() {
        let mut cfg = CaseConfig::preset(CaseId::Cavity);
        cfg.steps = 5;
        cfg.output_every = Some(2);
        let a = run_case(&cfg).unwrap();
        let b = run_case(&cfg).unwrap();
        let lat = d2q9();
        assert_eq!(fields_csv(&a, &lat), fields_csv(&b, &lat));
        // Steps 2, 4 and the final step 5.
        assert_eq!(fields_csv(&a, &lat).lines().count(), 1 + 3 * 100);
        assert_eq!(a.profiles.len(), 2);

        let dir = tempfile::tempdir().unwrap();
        let files = write_artifacts(&a, &lat, dir.path()).unwrap();
        let names: Vec<_> = files
            .iter()
            .map(|p| p.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(
            names,
            [
                "fields.csv",
                "profile.csv",
                "profile_x.csv",
                "spy.csv",
                "report.json"
            ]
        );
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
                .unwrap();
        assert_eq!(report["status"], "PASS");
        assert_eq!(report["case"], "cavity");
        let spy = std::fs::read_to_string(dir.path().join("spy.csv")).unwrap();
        assert_eq!(spy.lines().count(), 1 + 1024);
    }

    #[test]
    fn poiseuille_profile_schema() {
        let mut cfg = CaseConfig::preset(CaseId::Poiseuille);
        cfg.steps = 3;
        let out = run_case(&cfg).unwrap();
        let csv = profile_csv(&out.profiles[0], out.report.engine.tag());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("y,ux_quantum,ux_analytic"));
        assert_eq!(lines.count(), cfg.grid.ny);
    }
}
