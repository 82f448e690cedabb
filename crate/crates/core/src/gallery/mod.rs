//! Worked examples, each packaged as a self-checking report.

pub mod figures;

pub use figures::{fig5_row, figure_data, FigureTable, Which};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use crate::channels::basis::{conjugate_basis, Basis};
use crate::channels::choi::Device;
use crate::channels::constructions::{ideal_measurement, mz_apparatus};
use crate::channels::stinespring::Isometry;
use crate::error::{Error, Result};
use crate::measures::{self, radius_of_states};
use crate::numerics::eig::{operator_norm, psd_pinv_sqrt, psd_sqrt, trace_norm};
use crate::numerics::matrix::{pauli_z, ComplexMatrix, C64};
use crate::numerics::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Equal,
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub name: String,
    pub value: f64,
    pub check: Check,
    pub tolerance: f64,
    /// Where the expected number comes from.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryReport {
    pub name: String,
    pub computed: Vec<(String, f64)>,
    pub expected: Vec<Expectation>,
    pub pass: bool,
}

impl GalleryReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), computed: vec![], expected: vec![], pass: true }
    }

    fn value(&mut self, name: &str, v: f64) {
        self.computed.push((name.into(), v));
    }

    fn expect(&mut self, name: &str, value: f64, check: Check, tolerance: f64, source: &str) {
        self.expected.push(Expectation {
            name: name.into(),
            value,
            check,
            tolerance,
            source: source.into(),
        });
    }

    fn finish(mut self) -> Self {
        self.pass = self.expected.iter().all(|e| match self.get(&e.name) {
            None => false,
            Some(v) => match e.check {
                Check::Equal => (v - e.value).abs() <= e.tolerance,
                Check::AtLeast => v >= e.value - e.tolerance,
                Check::AtMost => v <= e.value + e.tolerance,
            },
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.computed.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// The qutrit basis pair whose measurements are better told apart with an
/// entangled probe.
pub fn appendix_a_bases() -> (Basis, Basis) {
    let b = Basis::computational(3).with_label("b");
    let rows: [[f64; 3]; 3] = [[2.0, 2.0, -1.0], [-1.0, 2.0, 2.0], [2.0, -1.0, 2.0]];
    let vectors = rows
        .iter()
        .map(|r| r.iter().map(|&v| C64::new(v / 3.0, 0.0)).collect())
        .collect();
    let theta = Basis::new("theta", vectors).expect("rows are orthonormal");
    (b, theta)
}

pub fn appendix_a() -> Result<GalleryReport> {
    let (b, theta) = appendix_a_bases();
    let e1 = ideal_measurement(&b, false);
    let e2 = ideal_measurement(&theta, false);
    let mut r = GalleryReport::new("appendix_a");

    let unent = measures::unentangled_distinguishability(&e1, &e2)?;
    let diamond = measures::diamond_distance(&Device::from(e1.clone()), &Device::from(e2.clone()))?;

    // witness from the printed probe state
    let rho = ComplexMatrix::from_real(3, 3, &[2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0])?
        .scale_real(1.0 / 6.0);
    let sq = ComplexMatrix::identity(3).kron(&psd_sqrt(&rho)?);
    let omega: Vec<C64> = (0..9).map(|i| if i % 4 == 0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect();
    let psi = &(&sq * &ComplexMatrix::projector(&omega)) * &sq;
    let witness: f64 = (0..3)
        .map(|k| {
            let t = &b.projector(k) - &theta.projector(k);
            let m = &t.kron(&ComplexMatrix::identity(3)) * &psi;
            trace_norm(&m.partial_trace(&[3, 3], &[1]).expect("square"))
        })
        .sum::<f64>()
        * 0.5;

    r.value("delta_unentangled", unent);
    r.value("delta", diamond.value);
    r.value("delta_max_form", diamond.max_value);
    r.value("witness", witness);
    r.value("entanglement_advantage", diamond.value - unent);
    r.expect("delta_unentangled", 5f64.sqrt() / 3.0, Check::Equal, 1e-9, "sign enumeration");
    r.expect("delta", 3f64.sqrt() / 2.0, Check::AtLeast, 1e-7, "entangled probe");
    r.expect("witness", 3f64.sqrt() / 2.0, Check::AtLeast, 1e-9, "entangled probe");
    r.expect("entanglement_advantage", 0.0, Check::AtLeast, 0.0, "strict separation");
    let mut r = r.finish();
    if r.get("entanglement_advantage").is_some_and(|v| v <= 0.0) {
        r.pass = false;
    }
    Ok(r)
}

/// Column-normalized weights `p[y][z]` of the counterexample channel.
pub fn counterexample_weights(d: usize) -> Result<Vec<Vec<f64>>> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the counterexample needs an even d >= 2, got {d}"
        )));
    }
    let h = d / 2;
    Ok((0..d)
        .map(|y| {
            (0..d)
                .map(|z| match z {
                    0 => if y < h { 2.0 / d as f64 } else { 0.0 },
                    1 => if y >= h { 2.0 / d as f64 } else { 0.0 },
                    _ => 1.0 / d as f64,
                })
                .collect()
        })
        .collect())
}

/// Dilation `|z> -> Σ_y √p_yz |y>_B |z>_C |y>_D` with `BC` as output and
/// `D` as environment.
pub fn counterexample_isometry(d: usize) -> Result<Isometry> {
    let p = counterexample_weights(d)?;
    let mut v = ComplexMatrix::zeros(d * d * d, d);
    for z in 0..d {
        for (y, row) in p.iter().enumerate() {
            let bc = y * d + z;
            v[(bc * d + y, z)] = C64::new(row[z].sqrt(), 0.0);
        }
    }
    Isometry::new(v, d * d, d)
}

/// Average success of the square-root measurement on equiprobable states.
pub fn pgm_success(states: &[ComplexMatrix]) -> Result<f64> {
    let n = states.len() as f64;
    let mut s = ComplexMatrix::zeros(states[0].rows(), states[0].cols());
    for rho in states {
        s += rho;
    }
    let inv = psd_pinv_sqrt(&s, 1e-12)?;
    Ok(states
        .iter()
        .map(|rho| {
            let el = &(&inv * rho) * &inv;
            (&el * rho).trace().re
        })
        .sum::<f64>()
        / n)
}

pub fn counterexample(d: usize) -> Result<GalleryReport> {
    counterexample_with(d, &Tolerances::DEFAULT)
}

pub fn counterexample_with(d: usize, tol: &Tolerances) -> Result<GalleryReport> {
    let iso = counterexample_isometry(d)?;
    let n = iso.channel();
    let complement = iso.complement();
    let (z, x) = conjugate_basis(d)?;
    let outputs = (0..d)
        .map(|k| n.apply(&x.projector(k)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = GalleryReport::new(&format!("counterexample_d{d}"));
    r.value("p_guess", pgm_success(&outputs)?);
    let s = d as f64 + 2f64.sqrt() - 2.0;
    r.expect("p_guess", s * s / (d * d) as f64, Check::Equal, 1e-9, "closed form");
    if d <= 4 {
        let comp_out = (0..d)
            .map(|k| complement.apply(&z.projector(k)))
            .collect::<Result<Vec<_>>>()?;
        let radius = radius_of_states(&comp_out, tol)?;
        let eps = measures::best_measurement_error_with(&n, &x, tol)?;
        r.value("complement_radius", radius.value);
        r.value("best_measurement_error", eps.value);
        r.expect("complement_radius", 0.5, Check::AtLeast, tol.duality_gap, "disjoint outputs for z = 0, 1");
        r.expect("best_measurement_error", 0.125, Check::AtLeast, tol.duality_gap, "corollary bound");
    }
    Ok(r.finish())
}

/// Mach-Zehnder device with which-way coupling `theta` and phase `phi`:
/// isometry `Σ_x e^{ixφ} |φ_x><φ_x| ⊗ |γ_x>` into system ⊗ ancilla.
pub fn englert_isometry(theta: f64, phi: f64) -> Result<ComplexMatrix> {
    let (_, fourier) = conjugate_basis(2)?;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let gamma = [[c, s], [s, c]];
    let mut u = ComplexMatrix::zeros(4, 2);
    for (xi, g) in gamma.iter().enumerate() {
        let p = fourier.projector(xi).scale(C64::from_polar(1.0, xi as f64 * phi));
        for q in 0..2 {
            for a in 0..2 {
                for i in 0..2 {
                    u[(q * 2 + a, i)] += p[(q, i)] * g[a];
                }
            }
        }
    }
    Ok(u)
}

pub fn englert(theta: f64, phi: f64) -> Result<GalleryReport> {
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta must lie in [0, pi/2], got {theta}")));
    }
    let u = englert_isometry(theta, phi)?;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let g0 = [C64::new(c, 0.0), C64::new(s, 0.0)];
    let g1 = [C64::new(s, 0.0), C64::new(c, 0.0)];
    let dist = 0.5 * trace_norm(&(&ComplexMatrix::projector(&g0) - &ComplexMatrix::projector(&g1)));
    let zq = pauli_z().kron(&ComplexMatrix::identity(2));
    let vis = operator_norm(&(&(&u.adjoint() * &zq) * &u));

    let (z, x) = conjugate_basis(2)?;
    let e = mz_apparatus(theta)?;
    let mut r = GalleryReport::new("englert");
    r.value("theta", theta);
    r.value("phi", phi);
    r.value("D", dist);
    r.value("V", vis);
    r.value("V2_plus_D2", vis * vis + dist * dist);
    r.expect("D", theta.cos(), Check::Equal, 1e-12, "pure-state distinguishability");
    r.expect("V", theta.sin(), Check::Equal, 1e-12, "visibility operator");
    r.expect("V2_plus_D2", 1.0, Check::Equal, 1e-12, "duality relation");
    let eps = measures::epsilon(&e, &x)?.value;
    let nu = measures::nu(&e, &z)?.value;
    let eta = measures::eta(&e, &z)?.value;
    let eta_hat = measures::eta_hat(&e, &z)?.value;
    for (name, v, want) in [
        ("epsilon_x", eps, 0.5 * (1.0 - dist)),
        ("nu_z", nu, 0.5 * (1.0 - vis)),
        ("eta_z", eta, 0.5 * (1.0 - vis)),
        ("eta_hat_z", eta_hat, 0.5 * (1.0 - vis)),
    ] {
        r.value(name, v);
        r.expect(name, want, Check::Equal, 1e-6, "from D and V");
    }
    Ok(r.finish())
}

/// Every report of the gallery, in a fixed order.
pub fn run_all() -> Result<Vec<GalleryReport>> {
    let mut out = vec![appendix_a()?, counterexample(2)?, counterexample(4)?];
    for th in [0.0, FRAC_PI_3, FRAC_PI_2] {
        out.push(englert(th, 0.0)?);
    }
    out.push(englert(FRAC_PI_3, 1.1)?);
    Ok(out)
}

/// Names accepted by [`run_one`].
pub const REPORTS: [&str; 3] = ["appendix_a", "counterexample", "englert"];

pub fn run_one(name: &str) -> Result<Vec<GalleryReport>> {
    match name {
        "appendix_a" => Ok(vec![appendix_a()?]),
        "counterexample" => Ok(vec![counterexample(2)?, counterexample(4)?]),
        "englert" => [0.0, FRAC_PI_3, FRAC_PI_2]
            .iter()
            .map(|&t| englert(t, 0.0))
            .collect(),
        other => Err(Error::InvalidArgument(format!(
            "unknown gallery report {other:?}; expected one of {REPORTS:?}"
        ))),
    }
}
