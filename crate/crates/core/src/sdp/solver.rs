//! Primal-dual interior point method (HKM direction, Mehrotra predictor-corrector).

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::Result;
use crate::sdp::problem::{
    BlockKind, BlockSpec, BlockValue, Certificate, SdpProblem, SdpSolution, SolveStatus,
};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const MAX_ITER: usize = 200;
const REFINE_STEPS: usize = 3;
const SHORT_STEP: f64 = 0.2;
const RECENTER_SIGMA: f64 = 0.5;
const STEP_FRACTION: f64 = 0.95;
const BLOWUP: f64 = 1e10;

#[derive(Debug, Clone)]
enum Blk {
    Dense(DMatrix<f64>),
    Diag(DVector<f64>),
}

impl Blk {
    fn zeros(spec: &BlockSpec) -> Self {
        match spec.kind {
            BlockKind::Psd => Blk::Dense(DMatrix::zeros(spec.size, spec.size)),
            BlockKind::Nonneg => Blk::Diag(DVector::zeros(spec.size)),
        }
    }

    fn identity(spec: &BlockSpec, t: f64) -> Self {
        match spec.kind {
            BlockKind::Psd => Blk::Dense(DMatrix::identity(spec.size, spec.size) * t),
            BlockKind::Nonneg => Blk::Diag(DVector::from_element(spec.size, t)),
        }
    }

    fn negated(&self) -> Self {
        match self {
            Blk::Dense(m) => Blk::Dense(-m),
            Blk::Diag(v) => Blk::Diag(-v),
        }
    }

    fn norm_sq(&self) -> f64 {
        match self {
            Blk::Dense(m) => m.norm_squared(),
            Blk::Diag(v) => v.norm_squared(),
        }
    }

    fn max_abs(&self) -> f64 {
        match self {
            Blk::Dense(m) => m.amax(),
            Blk::Diag(v) => v.amax(),
        }
    }

    fn axpy(&mut self, a: f64, other: &Blk) {
        match (self, other) {
            (Blk::Dense(m), Blk::Dense(o)) => *m += o * a,
            (Blk::Diag(v), Blk::Diag(o)) => *v += o * a,
            _ => unreachable!("block kind mismatch"),
        }
    }

    fn inner(&self, other: &Blk) -> f64 {
        match (self, other) {
            (Blk::Dense(m), Blk::Dense(o)) => m.dot(o),
            (Blk::Diag(v), Blk::Diag(o)) => v.dot(o),
            _ => unreachable!("block kind mismatch"),
        }
    }

    fn to_value(&self) -> BlockValue {
        match self {
            Blk::Dense(m) => BlockValue::Psd {
                size: m.nrows(),
                data: m.transpose().as_slice().to_vec(),
            },
            Blk::Diag(v) => BlockValue::Nonneg(v.as_slice().to_vec()),
        }
    }
}

type Entries = Vec<(usize, usize, f64)>;

/// Problem data laid out for the iteration.
struct Data {
    specs: Vec<BlockSpec>,
    c: Vec<Blk>,
    /// `rows[i]`: (block, entries) pairs of constraint `i`.
    rows: Vec<Vec<(usize, Entries)>>,
    /// `by_block[b]`: (row, index into `rows[row]`) pairs touching block `b`.
    by_block: Vec<Vec<(usize, usize)>>,
    b: DVector<f64>,
}

impl Data {
    fn new(p: &SdpProblem) -> Self {
        let specs = p.blocks.clone();
        let mut c: Vec<Blk> = specs.iter().map(Blk::zeros).collect();
        for &(blk, i, j, v) in &p.objective.terms {
            add_sym(&mut c[blk], i, j, v);
        }
        let mut rows = Vec::with_capacity(p.equalities.len());
        let mut by_block = vec![Vec::new(); specs.len()];
        for (r, (f, _)) in p.equalities.iter().enumerate() {
            let mut f = f.clone();
            f.canonicalize();
            let mut per: Vec<(usize, Entries)> = Vec::new();
            for &(blk, i, j, v) in &f.terms {
                match per.last_mut() {
                    Some((b, e)) if *b == blk => e.push((i, j, v)),
                    _ => per.push((blk, vec![(i, j, v)])),
                }
            }
            for (k, (blk, _)) in per.iter().enumerate() {
                by_block[*blk].push((r, k));
            }
            rows.push(per);
        }
        let b = DVector::from_iterator(p.equalities.len(), p.equalities.iter().map(|e| e.1));
        Self {
            specs,
            c,
            rows,
            by_block,
            b,
        }
    }

    fn m(&self) -> usize {
        self.rows.len()
    }

    /// `<A_i, G>` for each `i`, with `G` per block (not necessarily symmetric).
    fn apply(&self, x: &[Blk]) -> DVector<f64> {
        DVector::from_iterator(
            self.m(),
            self.rows.iter().map(|per| {
                per.iter()
                    .map(|(blk, ents)| pair(ents, &x[*blk]))
                    .sum::<f64>()
            }),
        )
    }

    /// `Σ_i y_i A_i`.
    fn adjoint(&self, y: &DVector<f64>) -> Vec<Blk> {
        let mut out: Vec<Blk> = self.specs.iter().map(Blk::zeros).collect();
        for (i, per) in self.rows.iter().enumerate() {
            if y[i] == 0.0 {
                continue;
            }
            for (blk, ents) in per {
                for &(p, q, v) in ents {
                    add_sym(&mut out[*blk], p, q, v * y[i]);
                }
            }
        }
        out
    }
}

fn add_sym(b: &mut Blk, i: usize, j: usize, v: f64) {
    match b {
        Blk::Dense(m) => {
            m[(i, j)] += v;
            if i != j {
                m[(j, i)] += v;
            }
        }
        Blk::Diag(d) => d[i] += v,
    }
}

/// `Tr(A G)` for symmetric sparse `A`.
fn pair(ents: &Entries, g: &Blk) -> f64 {
    match g {
        Blk::Dense(m) => ents
            .iter()
            .map(|&(p, q, v)| {
                if p == q {
                    v * m[(p, p)]
                } else {
                    v * (m[(p, q)] + m[(q, p)])
                }
            })
            .sum(),
        Blk::Diag(d) => ents.iter().map(|&(p, _, v)| v * d[p]).sum(),
    }
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn spd_inverse(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let ch = m.clone().cholesky()?;
    let inv = ch.inverse();
    Some(sym(&inv))
}

/// Largest `α` with `x + α dx` in the cone (infinite if unbounded).
fn max_step(x: &Blk, dx: &Blk) -> f64 {
    match (x, dx) {
        (Blk::Dense(xm), Blk::Dense(dm)) => {
            let ch = match xm.clone().cholesky() {
                Some(c) => c,
                None => return 0.0,
            };
            let l = ch.l();
            let t = match l.solve_lower_triangular(dm) {
                Some(t) => t,
                None => return 0.0,
            };
            let w = match l.solve_lower_triangular(&t.transpose()) {
                Some(w) => w,
                None => return 0.0,
            };
            let lmin = SymmetricEigen::new(sym(&w)).eigenvalues.min();
            if lmin < 0.0 {
                -1.0 / lmin
            } else {
                f64::INFINITY
            }
        }
        (Blk::Diag(xv), Blk::Diag(dv)) => xv
            .iter()
            .zip(dv.iter())
            .filter(|(_, &d)| d < 0.0)
            .map(|(&x, &d)| -x / d)
            .fold(f64::INFINITY, f64::min),
        _ => unreachable!("block kind mismatch"),
    }
}

fn cone_step(x: &[Blk], dx: &[Blk]) -> f64 {
    let a = x
        .iter()
        .zip(dx)
        .map(|(x, d)| max_step(x, d))
        .fold(f64::INFINITY, f64::min);
    (STEP_FRACTION * a).min(1.0)
}

fn total_inner(a: &[Blk], b: &[Blk]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.inner(y)).sum()
}

fn total_norm(a: &[Blk]) -> f64 {
    a.iter().map(Blk::norm_sq).sum::<f64>().sqrt()
}

/// Schur complement `M_ij = Tr(A_i X A_j S^{-1})`.
fn schur(data: &Data, x: &[Blk], sinv: &[Blk]) -> DMatrix<f64> {
    let m = data.m();
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for (blk, touching) in data.by_block.iter().enumerate() {
        match (&x[blk], &sinv[blk]) {
            (Blk::Dense(xm), Blk::Dense(si)) => {
                let n = xm.nrows();
                for &(i, ki) in touching {
                    let ents = &data.rows[i][ki].1;
                    // T = A_i S^{-1}, nonzero only in rows touched by A_i
                    let mut t_rows: Vec<(usize, DVector<f64>)> = Vec::new();
                    let mut slot = vec![usize::MAX; n];
                    let mut add_row = |p: usize, row: DVector<f64>| {
                        if slot[p] == usize::MAX {
                            slot[p] = t_rows.len();
                            t_rows.push((p, row));
                        } else {
                            t_rows[slot[p]].1 += row;
                        }
                    };
                    for &(p, q, v) in ents {
                        add_row(p, si.row(q).transpose() * v);
                        if p != q {
                            add_row(q, si.row(p).transpose() * v);
                        }
                    }
                    // G = X T
                    let mut g = DMatrix::<f64>::zeros(n, n);
                    for (p, row) in &t_rows {
                        g.ger(1.0, &xm.column(*p), row, 1.0);
                    }
                    let g = Blk::Dense(g);
                    for &(j, kj) in touching {
                        mat[(i, j)] += pair(&data.rows[j][kj].1, &g);
                    }
                }
            }
            (Blk::Diag(xv), Blk::Diag(sv)) => {
                let w = xv.component_mul(sv);
                for &(i, ki) in touching {
                    let mut wi = DVector::<f64>::zeros(w.len());
                    for &(p, _, v) in &data.rows[i][ki].1 {
                        wi[p] += v * w[p];
                    }
                    let wi = Blk::Diag(wi);
                    for &(j, kj) in touching {
                        mat[(i, j)] += pair(&data.rows[j][kj].1, &wi);
                    }
                }
            }
            _ => unreachable!("block kind mismatch"),
        }
    }
    sym(&mat)
}

/// Cholesky factor of the Schur matrix after symmetric diagonal scaling,
/// with a growing diagonal shift as a last resort.
struct Factor {
    scale: DVector<f64>,
    kind: FactorKind,
}

enum FactorKind {
    Chol(nalgebra::Cholesky<f64, nalgebra::Dyn>),
    Lu(nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>),
}

impl Factor {
    fn new(m: DMatrix<f64>) -> Self {
        let scale = m.diagonal().map(|d| if d > 0.0 { 1.0 / d.sqrt() } else { 1.0 });
        let mut m = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * scale[i] * scale[j]);
        if let Some(c) = m.clone().cholesky() {
            return Factor { scale, kind: FactorKind::Chol(c) };
        }
        let mut shift = 1e-14;
        for _ in 0..6 {
            for k in 0..m.nrows() {
                m[(k, k)] += shift;
            }
            if let Some(c) = m.clone().cholesky() {
                return Factor { scale, kind: FactorKind::Chol(c) };
            }
            shift *= 100.0;
        }
        Factor { scale, kind: FactorKind::Lu(m.lu()) }
    }

    fn solve(&self, r: &DVector<f64>) -> DVector<f64> {
        let r = r.component_mul(&self.scale);
        let z = match &self.kind {
            FactorKind::Chol(c) => c.solve(&r),
            FactorKind::Lu(l) => l.solve(&r).unwrap_or_else(|| DVector::zeros(r.len())),
        };
        z.component_mul(&self.scale)
    }
}

/// Cholesky factor of the constraint Gram matrix `G_ij = <A_i, A_j>`, used to
/// put primal directions back on `A(dX) = R_p` after the Schur solve.
struct GramProjector(Option<nalgebra::Cholesky<f64, nalgebra::Dyn>>);

impl GramProjector {
    fn new(data: &Data) -> Self {
        let m = data.m();
        let mut g = DMatrix::<f64>::zeros(m, m);
        let mut e = DVector::<f64>::zeros(m);
        for j in 0..m {
            e[j] = 1.0;
            g.set_column(j, &data.apply(&data.adjoint(&e)));
            e[j] = 0.0;
        }
        GramProjector(sym(&g).cholesky())
    }

    /// Least-norm `δ` with `A(δ) = r`.
    fn lift(&self, data: &Data, r: &DVector<f64>) -> Option<Vec<Blk>> {
        self.0.as_ref().map(|c| data.adjoint(&c.solve(r)))
    }
}

/// `dS = R_d - A^T dy` and `dX = R_c - sym(X dS S^{-1})`.
fn recover(
    data: &Data,
    x: &[Blk],
    sinv: &[Blk],
    rd: &[Blk],
    rc: &[Blk],
    dy: &DVector<f64>,
) -> (Vec<Blk>, Vec<Blk>) {
    let at = data.adjoint(dy);
    let ds: Vec<Blk> = rd
        .iter()
        .zip(&at)
        .map(|(r, a)| {
            let mut d = r.clone();
            d.axpy(-1.0, a);
            d
        })
        .collect();
    let dx: Vec<Blk> = rc
        .iter()
        .zip(x)
        .zip(&ds)
        .zip(sinv)
        .map(|(((rc, x), ds), s)| match (rc, x, ds, s) {
            (Blk::Dense(rc), Blk::Dense(x), Blk::Dense(ds), Blk::Dense(s)) => {
                Blk::Dense(rc - sym(&(x * ds * s)))
            }
            (Blk::Diag(rc), Blk::Diag(x), Blk::Diag(ds), Blk::Diag(s)) => {
                Blk::Diag(rc - x.component_mul(ds).component_mul(s))
            }
            _ => unreachable!("block kind mismatch"),
        })
        .collect();
    (dx, ds)
}

/// Search direction for a given complementarity right-hand side `rc`.
fn direction(
    data: &Data,
    factor: &Factor,
    gram: &GramProjector,
    x: &[Blk],
    sinv: &[Blk],
    rp: &DVector<f64>,
    rd: &[Blk],
    rc: &[Blk],
) -> (Vec<Blk>, DVector<f64>, Vec<Blk>) {
    // X R_d S^{-1}
    let xrs: Vec<Blk> = x
        .iter()
        .zip(rd)
        .zip(sinv)
        .map(|((x, r), s)| match (x, r, s) {
            (Blk::Dense(x), Blk::Dense(r), Blk::Dense(s)) => Blk::Dense(x * r * s),
            (Blk::Diag(x), Blk::Diag(r), Blk::Diag(s)) => {
                Blk::Diag(x.component_mul(r).component_mul(s))
            }
            _ => unreachable!("block kind mismatch"),
        })
        .collect();
    let rhs = rp - data.apply(rc) + data.apply(&xrs);
    let mut dy = factor.solve(&rhs);
    let (mut dx, mut ds) = recover(data, x, sinv, rd, rc, &dy);
    let mut res = rp - data.apply(&dx);
    // the factored Schur matrix carries rounding (and possibly a diagonal
    // shift); refine against the operator while that helps
    for _ in 0..REFINE_STEPS {
        let dy_next = &dy + factor.solve(&res);
        let (dx_next, ds_next) = recover(data, x, sinv, rd, rc, &dy_next);
        let res_next = rp - data.apply(&dx_next);
        if res_next.norm() >= 0.5 * res.norm() {
            break;
        }
        (dy, dx, ds, res) = (dy_next, dx_next, ds_next, res_next);
    }
    // whatever is left goes through the well-conditioned Gram system
    if let Some(delta) = gram.lift(data, &res) {
        for (d, e) in dx.iter_mut().zip(&delta) {
            d.axpy(1.0, e);
        }
    }
    (dx, dy, ds)
}

/// Solve with the default tolerance.
pub fn solve(p: &SdpProblem) -> Result<SdpSolution> {
    solve_with(p, DEFAULT_TOL)
}

pub fn solve_with(p: &SdpProblem, tol: f64) -> Result<SdpSolution> {
    p.check()?;
    let data = Data::new(p);
    let gram = GramProjector::new(&data);
    let m = data.m();
    let n_total: usize = data.specs.iter().map(|s| s.size).sum();

    let bmax = data.b.amax();
    let cmax = data.c.iter().map(Blk::max_abs).fold(0.0, f64::max);
    let tau_p = 1.0 + bmax;
    let tau_d = 1.0 + cmax;
    let mut x: Vec<Blk> = data.specs.iter().map(|s| Blk::identity(s, tau_p)).collect();
    let mut s: Vec<Blk> = data.specs.iter().map(|s| Blk::identity(s, tau_d)).collect();
    let mut y = DVector::<f64>::zeros(m);

    let bnorm = data.b.norm();
    let cnorm = total_norm(&data.c);
    let mut status = SolveStatus::MaxIter;
    let mut iterations = 0;
    let (mut pinf, mut dinf);
    let mut last_step = 1.0f64;
    // (merit, x, y, s, pinf, dinf) of the best iterate seen, returned on a stall
    let mut best: Option<(f64, Vec<Blk>, DVector<f64>, Vec<Blk>, f64, f64)> = None;

    loop {
        let ax = data.apply(&x);
        let rp = &data.b - &ax;
        let aty = data.adjoint(&y);
        let rd: Vec<Blk> = data
            .c
            .iter()
            .zip(&aty)
            .zip(&s)
            .map(|((c, a), s)| {
                let mut r = c.clone();
                r.axpy(-1.0, a);
                r.axpy(-1.0, s);
                r
            })
            .collect();
        let pobj = total_inner(&data.c, &x);
        let dobj = data.b.dot(&y);
        pinf = rp.norm() / (1.0 + bnorm);
        dinf = total_norm(&rd) / (1.0 + cnorm);
        let relgap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());

        if relgap <= tol && pinf <= tol && dinf <= tol {
            status = SolveStatus::Optimal;
            break;
        }
        let merit = relgap.max(pinf).max(dinf);
        if merit.is_finite() && best.as_ref().is_none_or(|b| merit < b.0) {
            best = Some((merit, x.clone(), y.clone(), s.clone(), pinf, dinf));
        }
        let size = x
            .iter()
            .chain(&s)
            .map(Blk::max_abs)
            .fold(y.amax(), f64::max);
        if !size.is_finite() || size > BLOWUP {
            status = SolveStatus::Infeasible;
            break;
        }
        if iterations >= MAX_ITER {
            break;
        }
        iterations += 1;

        let sinv: Option<Vec<Blk>> = s
            .iter()
            .map(|b| match b {
                Blk::Dense(m) => spd_inverse(m).map(Blk::Dense),
                Blk::Diag(v) => Some(Blk::Diag(v.map(|e| 1.0 / e))),
            })
            .collect();
        let Some(sinv) = sinv else {
            break;
        };
        let mu = total_inner(&x, &s) / n_total as f64;
        let factor = Factor::new(schur(&data, &x, &sinv));

        // predictor
        let rc_aff: Vec<Blk> = x.iter().map(Blk::negated).collect();
        let (dx_a, _, ds_a) = direction(&data, &factor, &gram, &x, &sinv, &rp, &rd, &rc_aff);
        let ap = cone_step(&x, &dx_a);
        let ad = cone_step(&s, &ds_a);
        let mut x_a = x.clone();
        let mut s_a = s.clone();
        for k in 0..x.len() {
            x_a[k].axpy(ap, &dx_a[k]);
            s_a[k].axpy(ad, &ds_a[k]);
        }
        let mu_aff = total_inner(&x_a, &s_a) / n_total as f64;
        let mut sigma = if mu > 0.0 {
            (mu_aff / mu).max(0.0).powi(3).min(1.0)
        } else {
            0.0
        };
        // a short previous step means the iterate hugs the boundary: recenter
        if last_step < SHORT_STEP {
            sigma = sigma.max(RECENTER_SIGMA);
        }

        // corrector
        let rc: Vec<Blk> = x
            .iter()
            .zip(&sinv)
            .zip(dx_a.iter().zip(&ds_a))
            .map(|((x, si), (dxa, dsa))| match (x, si, dxa, dsa) {
                (Blk::Dense(x), Blk::Dense(si), Blk::Dense(dxa), Blk::Dense(dsa)) => {
                    Blk::Dense(si * (sigma * mu) - x - sym(&(dxa * dsa * si)))
                }
                (Blk::Diag(x), Blk::Diag(si), Blk::Diag(dxa), Blk::Diag(dsa)) => Blk::Diag(
                    si * (sigma * mu) - x - dxa.component_mul(dsa).component_mul(si),
                ),
                _ => unreachable!("block kind mismatch"),
            })
            .collect();
        let (dx, dy, ds) = direction(&data, &factor, &gram, &x, &sinv, &rp, &rd, &rc);
        let ap = cone_step(&x, &dx);
        let ad = cone_step(&s, &ds);
        if ap == 0.0 && ad == 0.0 {
            break;
        }
        last_step = ap.min(ad);
        for k in 0..x.len() {
            x[k].axpy(ap, &dx[k]);
            s[k].axpy(ad, &ds[k]);
        }
        y += dy * ad;
    }

    if status == SolveStatus::MaxIter {
        if let Some((_, bx, by, bs, bp, bd)) = best {
            (x, y, s, pinf, dinf) = (bx, by, bs, bp, bd);
        }
    }
    let primal_value = total_inner(&data.c, &x);
    let dual_value = data.b.dot(&y);
    Ok(SdpSolution {
        primal_value,
        dual_value,
        gap: (primal_value - dual_value).abs(),
        status,
        iterations,
        primal_blocks: x.iter().map(Blk::to_value).collect(),
        dual_slack: s.iter().map(Blk::to_value).collect(),
        dual_multipliers: y.as_slice().to_vec(),
        primal_residual: pinf,
        dual_residual: dinf,
    })
}

/// Recompute feasibility residuals and cone membership from the problem data,
/// independently of the iteration that produced `sol`.
pub fn certify(p: &SdpProblem, sol: &SdpSolution) -> Certificate {
    let value = |v: &BlockValue, i: usize, j: usize| v.get(i, j);
    let eval = |f: &crate::sdp::problem::Functional, blocks: &[BlockValue]| -> f64 {
        f.terms
            .iter()
            .map(|&(b, i, j, v)| {
                if i == j {
                    v * value(&blocks[b], i, i)
                } else {
                    v * (value(&blocks[b], i, j) + value(&blocks[b], j, i))
                }
            })
            .sum()
    };
    let primal_residual = p
        .equalities
        .iter()
        .map(|(f, rhs)| (eval(f, &sol.primal_blocks) - rhs).abs())
        .fold(0.0, f64::max);

    // C - Σ y_i A_i - S, densely
    let mut resid: Vec<DMatrix<f64>> = p
        .blocks
        .iter()
        .map(|s| DMatrix::zeros(s.size, s.size))
        .collect();
    let mut put = |b: usize, i: usize, j: usize, v: f64| {
        resid[b][(i, j)] += v;
        if i != j {
            resid[b][(j, i)] += v;
        }
    };
    for &(b, i, j, v) in &p.objective.terms {
        put(b, i, j, v);
    }
    for ((f, _), &yi) in p.equalities.iter().zip(&sol.dual_multipliers) {
        for &(b, i, j, v) in &f.terms {
            put(b, i, j, -yi * v);
        }
    }
    let mut dual_residual: f64 = 0.0;
    for (b, spec) in p.blocks.iter().enumerate() {
        for i in 0..spec.size {
            for j in 0..spec.size {
                if spec.kind == BlockKind::Nonneg && i != j {
                    continue;
                }
                let r = resid[b][(i, j)] - sol.dual_slack[b].get(i, j);
                dual_residual = dual_residual.max(r.abs());
            }
        }
    }

    let min_eig = |blocks: &[BlockValue]| -> f64 {
        blocks
            .iter()
            .map(|bv| match bv {
                BlockValue::Psd { size, data } => {
                    let m = DMatrix::from_row_slice(*size, *size, data);
                    SymmetricEigen::new(sym(&m)).eigenvalues.min()
                }
                BlockValue::Nonneg(v) => v.iter().copied().fold(f64::INFINITY, f64::min),
            })
            .fold(f64::INFINITY, f64::min)
    };
    let primal_objective = eval(&p.objective, &sol.primal_blocks);
    let dual_objective = p
        .equalities
        .iter()
        .zip(&sol.dual_multipliers)
        .map(|((_, rhs), yi)| rhs * yi)
        .sum();
    Certificate {
        primal_residual,
        dual_residual,
        min_primal_eigenvalue: min_eig(&sol.primal_blocks),
        min_dual_eigenvalue: min_eig(&sol.dual_slack),
        primal_objective,
        dual_objective,
    }
}
