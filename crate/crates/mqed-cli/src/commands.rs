//! The data-producing subcommands.

use anyhow::{Context, Result};
use nalgebra::Vector3;
use rayon::prelude::*;

use mqed_core::conductivity::Nonlocal1DKernel;
use mqed_core::constants::PhysicalConstants;
use mqed_core::duality::rotate_responses;
use mqed_core::fluctuations::{
    field_fluctuation_spectrum_1d, field_fluctuation_spectrum_k, integral_relation_residual_1d,
};
use mqed_core::green::{solve_green_1d, solve_green_k};
use mqed_core::media::{classify, decompose_magnetoelectric, MediumModel};
use mqed_core::tensors::cre;

use crate::output::{push_tensor, tensor_columns, Cell, Table};

/// Classification report for one model at a reference frequency.
pub fn classify_json(model: &MediumModel, omega: f64, tol: f64) -> Result<String> {
    let rs = model.evaluate(cre(omega))?;
    let class = classify(&rs, tol);
    let (kappa, chi) = decompose_magnetoelectric(&rs);
    let doc = serde_json::json!({
        "schema_version": 1,
        "model": model.name,
        "omega": omega,
        "class": class.kind,
        "reciprocal": class.reciprocal,
        "nonreciprocal_magnetoelectric": class.nonreciprocal_magnetoelectric,
        "kappa_norm": kappa.norm(),
        "chi_norm": chi.norm(),
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

fn response_columns() -> Vec<String> {
    let mut cols = vec!["omega".to_string()];
    for name in ["eps", "xi", "zeta", "mu"] {
        cols.extend(tensor_columns(name));
    }
    cols
}

/// Tabulated responses over the frequency grid.
pub fn evaluate_table(model: &MediumModel, omegas: &[f64]) -> Result<Table> {
    let mut table = Table::new("evaluate", response_columns());
    let rows: mqed_core::Result<Vec<Vec<Cell>>> = omegas
        .par_iter()
        .map(|&w| {
            let rs = model.evaluate(cre(w))?;
            let mut row = vec![Cell::Float(w)];
            for t in rs.slots() {
                push_tensor(&mut row, t);
            }
            Ok(row)
        })
        .collect();
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}

/// Green tensor sweep at fixed k.
pub fn green_table(
    model: &MediumModel,
    k: &Vector3<f64>,
    omegas: &[f64],
    kc: &PhysicalConstants,
) -> Result<Table> {
    let mut cols = vec![
        "omega".to_string(),
        "kx".to_string(),
        "ky".to_string(),
        "kz".to_string(),
    ];
    cols.extend(tensor_columns("G"));
    cols.push("right_residual".into());
    cols.push("left_residual".into());
    let mut table = Table::new("green", cols);

    let rows: Result<Vec<Vec<Cell>>> = omegas
        .par_iter()
        .map(|&w| {
            let g = solve_green_k(model, k, cre(w), kc)
                .with_context(|| format!("green solve at k=({},{},{}), omega={w}", k.x, k.y, k.z))?;
            let mut row = vec![
                Cell::Float(w),
                Cell::Float(k.x),
                Cell::Float(k.y),
                Cell::Float(k.z),
            ];
            push_tensor(&mut row, &g.tensor);
            row.push(Cell::Float(g.right_residual));
            row.push(Cell::Float(g.left_residual));
            Ok(row)
        })
        .collect();
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}

/// Field fluctuation spectrum sweep at fixed k.
pub fn spectrum_table(
    model: &MediumModel,
    k: &Vector3<f64>,
    omegas: &[f64],
    kc: &PhysicalConstants,
) -> Result<Table> {
    let mut cols = vec![
        "omega".to_string(),
        "kx".to_string(),
        "ky".to_string(),
        "kz".to_string(),
    ];
    cols.extend(tensor_columns("S"));
    cols.push("min_eigenvalue".into());
    let mut table = Table::new("spectrum", cols);

    let rows: Result<Vec<Vec<Cell>>> = omegas
        .par_iter()
        .map(|&w| {
            let g = solve_green_k(model, k, cre(w), kc)
                .with_context(|| format!("green solve at k=({},{},{}), omega={w}", k.x, k.y, k.z))?;
            let s = field_fluctuation_spectrum_k(&g, kc)
                .with_context(|| format!("spectrum at omega={w}"))?;
            let mut row = vec![
                Cell::Float(w),
                Cell::Float(k.x),
                Cell::Float(k.y),
                Cell::Float(k.z),
            ];
            push_tensor(&mut row, &s.tensor);
            row.push(Cell::Float(s.min_eigenvalue));
            Ok(row)
        })
        .collect();
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}

/// Duality-rotated responses tabulated per frequency. Rotated Lorentz
/// mixtures need not be Lorentz, so the snapshot is a table, not a
/// refitted parametric model.
pub fn dualize_table(model: &MediumModel, theta: f64, omegas: &[f64]) -> Result<Table> {
    let mut cols = vec!["theta".to_string()];
    cols.extend(response_columns());
    let mut table = Table::new("dualize", cols);
    let rows: mqed_core::Result<Vec<Vec<Cell>>> = omegas
        .par_iter()
        .map(|&w| {
            let rs = rotate_responses(&model.evaluate(cre(w))?, theta);
            let mut row = vec![Cell::Float(theta), Cell::Float(w)];
            for t in rs.slots() {
                push_tensor(&mut row, t);
            }
            Ok(row)
        })
        .collect();
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}

/// 1-D non-local simulation: Green residuals, the discrete integral
/// relation and the field spectrum diagonal at the quartile grid points.
#[allow(clippy::too_many_arguments)]
pub fn sim1d_table(
    n: usize,
    length: f64,
    ell: f64,
    wp: f64,
    gamma: f64,
    omegas: &[f64],
    kc: &PhysicalConstants,
) -> Result<Table> {
    let kern = Nonlocal1DKernel::new(n, length, ell, wp, gamma, *kc)?;
    let q1 = n / 4;
    let mid = n / 2;
    let q3 = (3 * n) / 4;
    let cols = vec![
        "omega".to_string(),
        "n".to_string(),
        "green_residual".to_string(),
        "fdt_residual".to_string(),
        "spectrum_trace".to_string(),
        "spectrum_min_eig".to_string(),
        "re_S_q1".to_string(),
        "im_S_q1".to_string(),
        "re_S_mid".to_string(),
        "im_S_mid".to_string(),
        "re_S_q3".to_string(),
        "im_S_q3".to_string(),
    ];
    let mut table = Table::new("sim1d", cols);
    let rows: Result<Vec<Vec<Cell>>> = omegas
        .par_iter()
        .map(|&w| {
            let g = solve_green_1d(&kern, cre(w))
                .with_context(|| format!("1-D solve at omega={w}"))?;
            let fdt = integral_relation_residual_1d(&kern, w)?;
            let s = field_fluctuation_spectrum_1d(&g, kc)?;
            let trace: f64 = (0..n).map(|i| s.matrix[(i, i)].re).sum();
            Ok(vec![
                Cell::Float(w),
                Cell::Int(n as i64),
                Cell::Float(g.residual),
                Cell::Float(fdt),
                Cell::Float(trace),
                Cell::Float(s.min_eigenvalue),
                Cell::Float(s.matrix[(q1, q1)].re),
                Cell::Float(s.matrix[(q1, q1)].im),
                Cell::Float(s.matrix[(mid, mid)].re),
                Cell::Float(s.matrix[(mid, mid)].im),
                Cell::Float(s.matrix[(q3, q3)].re),
                Cell::Float(s.matrix[(q3, q3)].im),
            ])
        })
        .collect();
    for row in rows? {
        table.push_row(row);
    }
    Ok(table)
}
