use std::fmt::Write;

use wickforge_core::{Error, Result};

use crate::{json, RunConfig, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Csv,
}

/// Triangulated grid of a slice surface in slice coordinates
/// `(y_1.., x_..)`. OBJ output needs three coordinates; in higher
/// dimensions coordinates that are constant over the mesh are dropped.
pub fn mesh(target: &Target, format: MeshFormat, cfg: &RunConfig) -> Result<String> {
    cfg.validate()?;
    let slice = target.slice.as_ref().ok_or_else(|| Error::ComplexEntry(target.id.clone()))?;
    let grid = cfg.grid_for(&target.grid).real_part();
    let membership = wickforge_core::verify_in_slice(&target.chart, slice, &grid)?;
    if !membership.in_slice() {
        return Err(Error::NotInSlice(membership.worst()));
    }
    let verts: Vec<Vec<f64>> = grid
        .points()
        .map(|(u, v)| Ok(slice.real_coords(&target.chart.point(u, v)?)))
        .collect::<Result<_>>()?;
    let (nu, nv) = (grid.u.count, grid.v.count);
    let mut out = String::new();
    match format {
        MeshFormat::Csv => {
            let header: Vec<String> = (1..=slice.ambient_dim())
                .map(|k| if slice.mask()[k - 1] { format!("y{k}") } else { format!("x{k}") })
                .collect();
            writeln!(out, "i,j,{}", header.join(",")).unwrap();
            for (k, p) in verts.iter().enumerate() {
                let cols: Vec<String> = p.iter().map(|&x| json::float(x)).collect();
                writeln!(out, "{},{},{}", k / nv, k % nv, cols.join(",")).unwrap();
            }
        }
        MeshFormat::Obj => {
            let keep: Vec<usize> = if slice.ambient_dim() == 3 {
                vec![0, 1, 2]
            } else {
                (0..slice.ambient_dim()).filter(|&c| verts.iter().any(|p| p[c] != verts[0][c])).collect()
            };
            if keep.len() != 3 {
                return Err(Error::Unsupported(format!(
                    "OBJ export of a surface spanning {} coordinates; use --format csv",
                    keep.len()
                )));
            }
            writeln!(out, "# {} ({} x {} grid)", target.id, nu, nv).unwrap();
            for p in &verts {
                writeln!(out, "v {} {} {}", json::float(p[keep[0]]), json::float(p[keep[1]]), json::float(p[keep[2]])).unwrap();
            }
            let idx = |i: usize, j: usize| i * nv + j + 1;
            for i in 0..nu - 1 {
                for j in 0..nv - 1 {
                    writeln!(out, "f {} {} {}", idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)).unwrap();
                    writeln!(out, "f {} {} {}", idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)).unwrap();
                }
            }
        }
    }
    Ok(out)
}
