//! Data series behind the error/disturbance plot and the Gaussian bound plot.

use std::f64::consts::FRAC_PI_2;

use crate::bounds::gaussian::{gaussian_bound, GaussianKind, GaussianParams};
use crate::channels::basis::conjugate_basis;
use crate::channels::constructions::mz_apparatus;
use crate::error::{Error, Result};
use crate::measures;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// Mach-Zehnder error/disturbance trajectory with the qubit bounds.
    Fig5,
    /// Gaussian bounds against `c` on a log grid.
    Fig7,
}

impl std::str::FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig5" => Ok(Which::Fig5),
            "fig7" => Ok(Which::Fig7),
            _ => Err(Error::InvalidArgument(format!("unknown figure {s:?}; expected fig5 or fig7"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub const FIG5_COLUMNS: [&str; 5] = ["theta", "epsilon_x", "nu_z", "nu_bound", "eta_bound"];
pub const FIG7_COLUMNS: [&str; 4] = ["c", "sigma_q_sigma_p", "measurement", "preparation"];

/// Smallest measurement disturbance allowed at error `eps` for conjugate
/// qubit observables.
pub fn nu_lower_bound(eps: f64) -> f64 {
    let a = 0.5 - (2.0 * eps.max(0.0)).sqrt();
    let b = if eps < 0.5 { 0.5 * (0.5 - eps).powi(2) } else { 0.0 };
    a.max(b).max(0.0)
}

/// Smallest preparation disturbance allowed at error `eps`.
pub fn eta_lower_bound(eps: f64) -> f64 {
    (0.5 - (2.0 * eps.max(0.0)).sqrt()).max(0.0)
}

/// One row of the Fig. 5 table.
pub fn fig5_row(theta: f64) -> Result<Vec<f64>> {
    let (z, x) = conjugate_basis(2)?;
    let e = mz_apparatus(theta)?;
    let eps = measures::epsilon(&e, &x)?.value;
    let nu = measures::nu(&e, &z)?.value;
    Ok(vec![theta, eps, nu, nu_lower_bound(eps), eta_lower_bound(eps)])
}

pub fn fig5_grid(grid: usize) -> Vec<f64> {
    (0..grid)
        .map(|k| FRAC_PI_2 * k as f64 / (grid - 1) as f64)
        .collect()
}

/// `c` from 1e-3 to 1e3, log spaced; an odd count contains `c = 1`.
pub fn fig7_grid(grid: usize) -> Vec<f64> {
    (0..grid)
        .map(|k| {
            if 2 * k + 1 == grid {
                1.0
            } else {
                10f64.powf(-3.0 + 6.0 * k as f64 / (grid - 1) as f64)
            }
        })
        .collect()
}

pub fn fig7_row(c: f64) -> Result<Vec<f64>> {
    let p = GaussianParams::from_c(c)?;
    Ok(vec![
        c,
        c / 2.0,
        gaussian_bound(&p, GaussianKind::Measurement),
        gaussian_bound(&p, GaussianKind::Preparation),
    ])
}

pub fn figure_data(which: Which, grid: usize) -> Result<FigureTable> {
    if grid < 2 {
        return Err(Error::InvalidArgument(format!("grid needs at least 2 points, got {grid}")));
    }
    let (columns, rows): (&[&str], Vec<Vec<f64>>) = match which {
        Which::Fig5 => (
            &FIG5_COLUMNS,
            fig5_grid(grid).into_iter().map(fig5_row).collect::<Result<_>>()?,
        ),
        Which::Fig7 => (
            &FIG7_COLUMNS,
            fig7_grid(grid).into_iter().map(fig7_row).collect::<Result<_>>()?,
        ),
    };
    Ok(FigureTable {
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}
