//! Meromorphic continuation from operator spectra.
//!
//! The continued logarithmic derivatives are the N = 1 resolvent identities
//! solved for the zeta side:
//!
//! L^s(s) = Σ m(λ) [1/(s − iλ) − 1/(s + iλ)]
//! L_S(s) = Σ m(μ) [1/(s − i√μ) + 1/(s + i√μ)] − 4π dim(χ) Vol(X) P_σ(s)
//!
//! and d/ds log Z = ½(L_S + L^s). Log-zeta values come from integrating
//! these along paths that avoid the catalogued singularities.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::data::{same_eigenvalue, DiracSpectrum, LaplaceSpectrum, LengthSpectrum, SingularityRecord, ZetaKind};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_segment, integrate_to_infinity, Tolerance};
use crate::rep::{case_of, plancherel, GammaRep, MRep, PlancherelConfig, PlancherelPoly, WeylCase};
use crate::zeta::{log_ruelle, log_selberg, GrowthModel, ZetaRequest};

/// Points closer than this to a pole are refused.
pub const SINGULARITY_EXCLUSION: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Distinct resolvent shifts s₁, …, s_N with distinct squares.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventGrid {
    shifts: Vec<Complex64>,
}

impl ResolventGrid {
    pub fn new(shifts: Vec<Complex64>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::DegenerateShifts("at least one shift is required".into()));
        }
        for (i, a) in shifts.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::DegenerateShifts(format!("shift {i} is not finite")));
            }
            for (j, b) in shifts.iter().enumerate().take(i) {
                if (a * a - b * b).norm() <= 1e-14 * (a * a).norm().max(1.0) {
                    return Err(Error::DegenerateShifts(format!("shifts {j} and {i} have equal squares")));
                }
            }
        }
        Ok(ResolventGrid { shifts })
    }

    pub fn shifts(&self) -> &[Complex64] {
        &self.shifts
    }
}

/// w_i = Π_{j≠i} 1/(s_j² − s_i²), so that Π 1/(x + s_i²) = Σ w_i/(x + s_i²).
pub fn partial_fraction_weights(grid: &ResolventGrid) -> Vec<Complex64> {
    let sq: Vec<Complex64> = grid.shifts.iter().map(|s| s * s).collect();
    (0..sq.len())
        .map(|i| {
            sq.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, sj)| acc / (sj - sq[i]))
        })
        .collect()
}

fn check_pole(s: Complex64, pole: Complex64) -> Result<()> {
    if (s - pole).norm() < SINGULARITY_EXCLUSION {
        Err(Error::AtSingularity { s, location: pole })
    } else {
        Ok(())
    }
}

/// Continued d/ds log Z^s from the Dirac spectrum.
pub fn continued_super_logderiv(s: Complex64, dirac: &DiracSpectrum) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for e in dirac.entries() {
        let (p, q) = (I * e.value, -I * e.value);
        check_pole(s, p)?;
        check_pole(s, q)?;
        total += (1.0 / (s - p) - 1.0 / (s - q)) * e.multiplicity as f64;
    }
    Ok(total)
}

/// Data of the polynomial (identity) term of L_S.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityData {
    pub poly: PlancherelPoly,
    pub dim_chi: usize,
    pub volume: f64,
}

impl IdentityData {
    pub fn new(sigma: &MRep, chi: &GammaRep, volume: Option<f64>, config: &PlancherelConfig) -> Result<Self> {
        let volume = volume.ok_or(Error::MissingVolume)?;
        if !(volume >= 0.0 && volume.is_finite()) {
            return Err(Error::Schema(format!("volume {volume} must be nonnegative")));
        }
        Ok(IdentityData {
            poly: plancherel(sigma, config)?,
            dim_chi: chi.dimension(),
            volume,
        })
    }

    /// 4π dim(χ) Vol(X) P_σ(s).
    pub fn term(&self, s: Complex64) -> Complex64 {
        self.poly.at(s) * (4.0 * std::f64::consts::PI * self.dim_chi as f64 * self.volume)
    }
}

/// Square roots ±i√μ of a Laplace eigenvalue's poles; `None` for μ = 0.
fn laplace_poles(mu: Complex64) -> Option<(Complex64, Complex64)> {
    if mu.norm() == 0.0 {
        None
    } else {
        let r = mu.sqrt();
        Some((I * r, -I * r))
    }
}

/// Continued d/ds log S from the Laplace spectrum and the identity term.
pub fn continued_sym_logderiv(s: Complex64, laplace: &LaplaceSpectrum, identity: &IdentityData) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for e in laplace.entries() {
        let m = e.multiplicity as f64;
        match laplace_poles(e.value) {
            Some((p, q)) => {
                check_pole(s, p)?;
                check_pole(s, q)?;
                total += (1.0 / (s - p) + 1.0 / (s - q)) * m;
            }
            None => {
                check_pole(s, Complex64::new(0.0, 0.0))?;
                total += 2.0 * m / s;
            }
        }
    }
    Ok(total - identity.term(s))
}

/// Continued d/ds log Z = ½(L_S + L^s).
pub fn continued_selberg_logderiv(
    s: Complex64,
    dirac: &DiracSpectrum,
    laplace: &LaplaceSpectrum,
    identity: &IdentityData,
) -> Result<Complex64> {
    Ok(0.5 * (continued_sym_logderiv(s, laplace, identity)? + continued_super_logderiv(s, dirac)?))
}

/// Two evaluations of one resolvent identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolventCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// |lhs − rhs| / max(|rhs|, 1).
    pub gap: f64,
}

impl ResolventCheck {
    fn new(lhs: Complex64, rhs: Complex64) -> Self {
        ResolventCheck {
            lhs,
            rhs,
            gap: (lhs - rhs).norm() / rhs.norm().max(1.0),
        }
    }
}

/// Σ_i w_i (−i/2) L^s(s_i) against Σ_k m(λ_k) λ_k Π_i 1/(λ_k² + s_i²).
pub fn super_resolvent_check(grid: &ResolventGrid, dirac: &DiracSpectrum) -> Result<ResolventCheck> {
    let w = partial_fraction_weights(grid);
    let mut lhs = Complex64::new(0.0, 0.0);
    for (s, w) in grid.shifts().iter().zip(&w) {
        lhs += w * (-0.5 * I) * continued_super_logderiv(*s, dirac)?;
    }
    let rhs = dirac
        .entries()
        .iter()
        .map(|e| {
            let l2 = e.value * e.value;
            let prod: Complex64 = grid.shifts().iter().map(|s| 1.0 / (l2 + s * s)).product();
            e.value * prod * e.multiplicity as f64
        })
        .sum();
    Ok(ResolventCheck::new(lhs, rhs))
}

/// Σ_i w_i L_S(s_i)/(2s_i) against Σ_k m(μ_k) Π_i 1/(μ_k + s_i²) minus the
/// weighted identity term.
pub fn sym_resolvent_check(
    grid: &ResolventGrid,
    laplace: &LaplaceSpectrum,
    identity: &IdentityData,
) -> Result<ResolventCheck> {
    if let Some(i) = grid.shifts().iter().position(|s| s.norm() == 0.0) {
        return Err(Error::DegenerateShifts(format!("shift {i} is zero")));
    }
    let w = partial_fraction_weights(grid);
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut polynomial = Complex64::new(0.0, 0.0);
    for (s, w) in grid.shifts().iter().zip(&w) {
        lhs += w * continued_sym_logderiv(*s, laplace, identity)? / (2.0 * s);
        polynomial += w * identity.term(*s) / (2.0 * s);
    }
    let spectral: Complex64 = laplace
        .entries()
        .iter()
        .map(|e| {
            let prod: Complex64 = grid.shifts().iter().map(|s| 1.0 / (e.value + s * s)).product();
            prod * e.multiplicity as f64
        })
        .sum();
    Ok(ResolventCheck::new(lhs, spectral - polynomial))
}

const RESIDUE_MIN_NODES: usize = 32;
const RESIDUE_MAX_NODES: usize = 1 << 16;
const RESIDUE_AGREEMENT: f64 = 1e-10;

/// (1/2πi)∮_{|s−s₀|=r} f(s) ds by the trapezoidal rule with node doubling.
pub fn residue_at<F>(f: F, s0: Complex64, radius: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::NoConvergence(format!("contour radius {radius} must be positive")));
    }
    let sample = |n: usize, offset: usize, stride: usize| -> Result<Complex64> {
        let terms: Vec<Result<Complex64>> = (0..n / stride)
            .into_par_iter()
            .map(|j| {
                let k = offset + j * stride;
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                f(s0 + w * radius).map(|v| v * w)
            })
            .collect();
        terms.into_iter().sum()
    };
    let mut n = RESIDUE_MIN_NODES;
    let mut sum = sample(n, 0, 1)?;
    let mut previous = sum * (radius / n as f64);
    while n < RESIDUE_MAX_NODES {
        // the doubled rule reuses the existing nodes and adds the odd ones
        sum += sample(2 * n, 1, 2)?;
        n *= 2;
        let current = sum * (radius / n as f64);
        if (current - previous).norm() <= RESIDUE_AGREEMENT {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NoConvergence(format!(
        "contour residue at {s0} did not settle with {RESIDUE_MAX_NODES} nodes"
    )))
}

/// One parity comparison m_s(λ) against m(λ²).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParityEntry {
    pub lambda: [f64; 2],
    pub super_multiplicity: i64,
    pub laplace_multiplicity: u32,
    pub ok: bool,
}

/// Catalogued singularities with the parity comparisons behind them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityCatalog {
    pub records: Vec<SingularityRecord>,
    pub parity: Vec<ParityEntry>,
    /// Branch convention of √ used for Z = (S·Z^s)^{1/2}.
    pub branch: &'static str,
}

impl SingularityCatalog {
    pub fn locations(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for r in &self.records {
            if !out.iter().any(|&p| same_eigenvalue(p, r.location)) {
                out.push(r.location);
            }
        }
        out
    }

    pub fn of_kind(&self, kind: ZetaKind) -> impl Iterator<Item = &SingularityRecord> {
        self.records.iter().filter(move |r| r.zeta_kind == kind)
    }
}

fn candidate_locations(dirac: &DiracSpectrum, laplace: &LaplaceSpectrum) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    let mut push = |p: Complex64| {
        if !out.iter().any(|&q| same_eigenvalue(p, q)) {
            out.push(p);
        }
    };
    for e in dirac.entries() {
        push(I * e.value);
        push(-I * e.value);
    }
    for e in laplace.entries() {
        match laplace_poles(e.value) {
            Some((p, q)) => {
                push(p);
                push(q);
            }
            None => push(Complex64::new(0.0, 0.0)),
        }
    }
    out
}

fn parity_at(dirac: &DiracSpectrum, laplace: &LaplaceSpectrum, p: Complex64) -> (Complex64, i64, u32, i64) {
    // adding 0.0 clears the signed zeros that −i·p leaves behind
    let lambda = -I * p + Complex64::new(0.0, 0.0);
    let ms = dirac.multiplicity(lambda) as i64 - dirac.multiplicity(-lambda) as i64;
    let m = laplace.multiplicity(lambda * lambda);
    let s_order = if p.norm() == 0.0 { 2 * m as i64 } else { m as i64 };
    (lambda, ms, m, s_order)
}

/// Parity comparisons for every candidate location, without failing.
pub fn parity_report(dirac: &DiracSpectrum, laplace: Option<&LaplaceSpectrum>) -> Vec<ParityEntry> {
    let derived;
    let laplace = match laplace {
        Some(l) => l,
        None => {
            derived = crate::data::square_spectrum(dirac);
            &derived
        }
    };
    candidate_locations(dirac, laplace)
        .into_iter()
        .map(|p| {
            let (lambda, ms, m, s_order) = parity_at(dirac, laplace, p);
            ParityEntry {
                lambda: [lambda.re, lambda.im],
                super_multiplicity: ms,
                laplace_multiplicity: m,
                ok: (ms + s_order).rem_euclid(2) == 0,
            }
        })
        .collect()
}

/// Singularities of Z^s, S and Z with their orders.
///
/// The Laplace spectrum defaults to the square of the Dirac spectrum; an
/// independently supplied one is checked for parity against it.
pub fn singularity_catalog(dirac: &DiracSpectrum, laplace: Option<&LaplaceSpectrum>) -> Result<SingularityCatalog> {
    let derived;
    let laplace = match laplace {
        Some(l) => l,
        None => {
            derived = crate::data::square_spectrum(dirac);
            &derived
        }
    };
    let locations = candidate_locations(dirac, laplace);
    let mut super_records = Vec::new();
    let mut sym_records = Vec::new();
    let mut selberg_records = Vec::new();
    let mut parity = Vec::new();
    for p in locations {
        let (lambda, ms, m, s_order) = parity_at(dirac, laplace, p);
        let ok = (ms + s_order).rem_euclid(2) == 0;
        parity.push(ParityEntry {
            lambda: [lambda.re, lambda.im],
            super_multiplicity: ms,
            laplace_multiplicity: m,
            ok,
        });
        if !ok {
            return Err(Error::ParityViolation {
                lambda,
                super_multiplicity: ms,
                laplace_multiplicity: m,
            });
        }
        let record = |order: i64, zeta_kind| SingularityRecord {
            location: p,
            order,
            zeta_kind,
        };
        if ms != 0 {
            super_records.push(record(ms, ZetaKind::Super));
        }
        if s_order != 0 {
            sym_records.push(record(s_order, ZetaKind::Symmetrized));
        }
        let z_order = (ms + s_order) / 2;
        if z_order != 0 {
            selberg_records.push(record(z_order, ZetaKind::Selberg));
        }
    }
    let mut records = super_records;
    records.extend(sym_records);
    records.extend(selberg_records);
    Ok(SingularityCatalog {
        records,
        parity,
        branch: "principal branch at the anchor point, continued along the integration path",
    })
}

/// Where a log-zeta path ends and what value the log takes there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathEnd {
    /// Horizontal ray to +∞, where the log vanishes.
    Infinity,
    /// A point with known log value.
    Anchor { point: Complex64, log_value: Complex64 },
}

/// Integration path for [`log_zeta_by_path`].
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub waypoints: Vec<Complex64>,
    pub end: PathEnd,
    /// Minimum clearance between the path and catalogued singularities.
    pub detour_radius: f64,
}

impl Default for PathSpec {
    fn default() -> Self {
        PathSpec {
            waypoints: Vec::new(),
            end: PathEnd::Infinity,
            detour_radius: 0.05,
        }
    }
}

const PATH_TOL: Tolerance = Tolerance::absolute(1e-12);
const RAY_SEGMENT: f64 = 20.0;

fn distance_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let u = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * u)).norm()
}

fn blocking(a: Complex64, b: Complex64, singularities: &[Complex64], clearance: f64) -> Option<Complex64> {
    singularities
        .iter()
        .copied()
        .find(|&p| distance_to_segment(p, a, b) < clearance)
}

fn ray_blocking(a: Complex64, singularities: &[Complex64], clearance: f64) -> Option<Complex64> {
    singularities
        .iter()
        .copied()
        .find(|&p| p.re > a.re - clearance && (p.im - a.im).abs() < clearance)
        .filter(|&p| distance_to_segment(p, a, a + RAY_SEGMENT.max(p.re - a.re + 1.0)) < clearance)
}

/// log ζ(s) from its continued logarithmic derivative:
/// log ζ(end) − ∫_s^{end} L(w) dw along the path.
pub fn log_zeta_by_path<F>(s: Complex64, logderiv: F, singularities: &[Complex64], path: &PathSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    for &p in singularities {
        check_pole(s, p)?;
    }
    let near_start = singularities
        .iter()
        .map(|p| (p - s).norm())
        .fold(f64::INFINITY, f64::min);
    // segments leaving s may pass closer than the radius to a point s is already close to
    let clearance = path.detour_radius.min(0.5 * near_start);

    let mut points = vec![s];
    points.extend(path.waypoints.iter().copied());
    let (target, end_value) = match path.end {
        PathEnd::Infinity => (None, Complex64::new(0.0, 0.0)),
        PathEnd::Anchor { point, log_value } => {
            points.push(point);
            (Some(point), log_value)
        }
    };
    if target.is_none() && path.waypoints.is_empty() {
        if let Some(p) = ray_blocking(s, singularities, clearance) {
            let lift = detour_height(s, p, singularities, clearance)?;
            points.push(s + I * lift);
        }
    }

    let mut integral = Complex64::new(0.0, 0.0);
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if let Some(p) = blocking(a, b, singularities, clearance) {
            return Err(Error::PathThroughSingularity { location: p });
        }
        integral += integrate_path_segment(&logderiv, a, b)?;
    }
    if target.is_none() {
        let start = *points.last().expect("path has a start");
        if let Some(p) = ray_blocking(start, singularities, clearance) {
            return Err(Error::PathThroughSingularity { location: p });
        }
        let mid = start + RAY_SEGMENT;
        integral += integrate_path_segment(&logderiv, start, mid)?;
        integral += integrate_ray_tail(&logderiv, mid)?;
    }
    Ok(end_value - integral)
}

fn detour_height(s: Complex64, blocker: Complex64, singularities: &[Complex64], clearance: f64) -> Result<f64> {
    for step in 1..=64 {
        for sign in [1.0, -1.0] {
            let lift = sign * step as f64 * clearance * 2.0;
            let lifted = s + I * lift;
            if blocking(s, lifted, singularities, clearance).is_none()
                && ray_blocking(lifted, singularities, clearance).is_none()
            {
                return Ok(lift);
            }
        }
    }
    Err(Error::PathThroughSingularity { location: blocker })
}

fn integrate_path_segment<F>(f: &F, a: Complex64, b: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let failure = std::cell::Cell::new(None);
    let value = integrate_segment(
        |z| match f(z) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        },
        a,
        b,
        PATH_TOL,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(value?.value)
}

fn integrate_ray_tail<F>(f: &F, start: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let failure = std::cell::Cell::new(None);
    let value = integrate_to_infinity(
        |x| match f(start + (x - start.re)) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        },
        start.re,
        PATH_TOL,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(value?.value)
}

/// Spectral data and anchors for evaluating continued zeta values.
#[derive(Clone, Debug)]
pub struct ContinuationContext {
    pub dirac: DiracSpectrum,
    pub laplace: LaplaceSpectrum,
    pub identity: IdentityData,
    pub catalog: SingularityCatalog,
    /// Anchor for log S, where only the derivative is known spectrally.
    pub sym_anchor: (Complex64, Complex64),
    pub detour_radius: f64,
}

impl ContinuationContext {
    /// Builds the context; log S is normalized to vanish at `anchor_point`
    /// unless `anchor_log` supplies a value.
    pub fn new(
        dirac: DiracSpectrum,
        laplace: Option<LaplaceSpectrum>,
        identity: IdentityData,
        anchor_point: Complex64,
        anchor_log: Option<Complex64>,
    ) -> Result<Self> {
        let laplace = laplace.unwrap_or_else(|| crate::data::square_spectrum(&dirac));
        let catalog = singularity_catalog(&dirac, Some(&laplace))?;
        Ok(ContinuationContext {
            dirac,
            laplace,
            identity,
            catalog,
            sym_anchor: (anchor_point, anchor_log.unwrap_or_default()),
            detour_radius: 0.05,
        })
    }

    /// log ζ(s) for ζ ∈ {Z^s, S, Z}.
    pub fn log_value(&self, kind: ZetaKind, s: Complex64) -> Result<Complex64> {
        let locations = self.catalog.locations();
        let super_path = PathSpec {
            detour_radius: self.detour_radius,
            ..PathSpec::default()
        };
        let sym_path = PathSpec {
            waypoints: Vec::new(),
            end: PathEnd::Anchor {
                point: self.sym_anchor.0,
                log_value: self.sym_anchor.1,
            },
            detour_radius: self.detour_radius,
        };
        let log_super = || log_zeta_by_path(s, |w| continued_super_logderiv(w, &self.dirac), &locations, &super_path);
        let log_sym = || {
            log_zeta_by_path(
                s,
                |w| continued_sym_logderiv(w, &self.laplace, &self.identity),
                &locations,
                &sym_path,
            )
        };
        match kind {
            ZetaKind::Super => log_super(),
            ZetaKind::Symmetrized => log_sym(),
            ZetaKind::Selberg => Ok(0.5 * (log_sym()? + log_super()?)),
            other => Err(Error::Unsupported(format!("continuation of the {other} zeta function"))),
        }
    }
}

/// R and its Selberg-factor combination at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorizationCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// |lhs − rhs| / |lhs|.
    pub gap: f64,
}

/// R(s; σ_k) against Z(s−1; σ_k) Z(s+1; σ_k) / (Z(s; σ_{k+1}) Z(s; σ_{k−1})) for d = 3.
pub fn ruelle_factorization_check(
    s: Complex64,
    sigma: &MRep,
    chi: &GammaRep,
    spectrum: &LengthSpectrum,
    growth: &GrowthModel,
) -> Result<FactorizationCheck> {
    if sigma.dimension() != 3 {
        return Err(Error::Unsupported("the Ruelle factorization is implemented for d = 3".into()));
    }
    let up = sigma.shifted_d3(1.0)?;
    let down = sigma.shifted_d3(-1.0)?;
    let req = |s: Complex64, sigma| ZetaRequest {
        s,
        sigma,
        chi,
        spectrum,
        kind: ZetaKind::Selberg,
        growth: *growth,
    };
    let log_r = log_ruelle(&ZetaRequest {
        kind: ZetaKind::Ruelle,
        ..req(s, sigma)
    })?
    .value;
    let log_rhs = log_selberg(&req(s - 1.0, sigma))?.value + log_selberg(&req(s + 1.0, sigma))?.value
        - log_selberg(&req(s, &up))?.value
        - log_selberg(&req(s, &down))?.value;
    let lhs = log_r.exp();
    let rhs = log_rhs.exp();
    Ok(FactorizationCheck {
        lhs,
        rhs,
        gap: ((log_rhs - log_r).exp() - 1.0).norm(),
    })
}

/// Gate for the super and symmetrized kinds.
pub fn require_case_b(sigma: &MRep) -> Result<()> {
    match case_of(sigma) {
        WeylCase::B => Ok(()),
        WeylCase::A => Err(Error::CaseA),
    }
}
