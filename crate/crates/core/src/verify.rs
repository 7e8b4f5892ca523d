//! Seeded self-verification suites.
//!
//! Each suite draws its cases from a ChaCha generator seeded by the caller,
//! compares every computed quantity against an independent evaluation, and
//! reports the worst gap together with the first failing case.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::continuation::{
    continued_selberg_logderiv, continued_super_logderiv, continued_sym_logderiv, partial_fraction_weights,
    residue_at, ruelle_factorization_check, singularity_catalog, super_resolvent_check, sym_resolvent_check,
    IdentityData, ResolventGrid,
};
use crate::data::{
    angle_distance, square_spectrum, super_multiplicity, wrap_angle, DiracSpectrum, Eigenpair, GeodesicClass,
    LaplaceSpectrum, LengthSpectrum, ZetaKind,
};
use crate::enumerate::{complex_length, enumerate_spectrum, inverse_sl2, EnumerationConfig, GroupPresentation, Mat2};
use crate::error::{Error, Result};
use crate::rep::{plancherel, GammaRep, MRep, PlancherelConfig};
use crate::trace::{fourier_gaussian_check, heat_identity_term, identity_term_dirac, identity_term_dirac_with, laplace_kernel_check, HeatParams};
use crate::zeta::{log_derivative_super, log_derivative_symmetrized, log_ruelle, log_selberg, log_super, log_symmetrized, GrowthModel, ZetaRequest};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Kernels,
    PartialFractions,
    Residues,
    Logderiv,
    Factorization,
    Parity,
    TraceScaling,
    EulerProduct,
    Enumerator,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Kernels,
        Suite::PartialFractions,
        Suite::Residues,
        Suite::Logderiv,
        Suite::Factorization,
        Suite::Parity,
        Suite::TraceScaling,
        Suite::EulerProduct,
        Suite::Enumerator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernels => "kernels",
            Suite::PartialFractions => "partial-fractions",
            Suite::Residues => "residues",
            Suite::Logderiv => "logderiv",
            Suite::Factorization => "factorization",
            Suite::Parity => "parity",
            Suite::TraceScaling => "trace-scaling",
            Suite::EulerProduct => "euler-product",
            Suite::Enumerator => "enumerator",
        }
    }

    fn default_cases(self) -> usize {
        match self {
            Suite::Kernels => 10,
            Suite::PartialFractions => 100,
            Suite::Residues | Suite::Parity => 25,
            Suite::Logderiv => 5,
            Suite::Factorization => 5,
            Suite::TraceScaling => 3,
            Suite::EulerProduct => 5,
            Suite::Enumerator => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown suite '{s}'")))
    }
}

/// Suite parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Number of random draws; each suite has its own default.
    pub cases: Option<usize>,
    /// Feeds a spectrum that violates the parity condition to the parity
    /// suite as if it were valid input.
    pub inject_violation: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            cases: None,
            inject_violation: false,
        }
    }
}

/// Machine-readable outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_gap: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

struct Tally {
    suite: Suite,
    cases: usize,
    max_gap: f64,
    failed: bool,
    counterexample: Option<Value>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            cases: 0,
            max_gap: 0.0,
            failed: false,
            counterexample: None,
        }
    }

    fn fail(&mut self, context: Value) {
        self.failed = true;
        if self.counterexample.is_none() {
            self.counterexample = Some(context);
        }
    }

    /// One numerical comparison against its tolerance.
    fn gap(&mut self, gap: f64, tol: f64, context: impl FnOnce() -> Value) {
        self.cases += 1;
        if gap.is_finite() {
            self.max_gap = self.max_gap.max(gap);
        }
        if !(gap <= tol) {
            let mut ctx = context();
            ctx["gap"] = json!(gap);
            ctx["tolerance"] = json!(tol);
            self.fail(ctx);
        }
    }

    /// One yes/no property.
    fn check(&mut self, ok: bool, context: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.fail(context());
        }
    }

    /// A comparison whose computation itself may fail.
    fn attempt<T>(&mut self, value: Result<T>, context: impl FnOnce() -> Value) -> Option<T> {
        match value {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                let mut ctx = context();
                ctx["error"] = json!(e.to_string());
                self.fail(ctx);
                None
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.name().into(),
            cases: self.cases,
            max_gap: self.max_gap,
            pass: !self.failed,
            counterexample: self.counterexample,
        }
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn eigen_json(entries: &[Eigenpair]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!({"value": pair(e.value), "multiplicity": e.multiplicity}))
            .collect(),
    )
}

/// Runs one suite.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let cases = cfg.cases.unwrap_or_else(|| suite.default_cases()).max(1);
    // one stream per suite so that suites are reproducible in isolation
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut tally = Tally::new(suite);
    match suite {
        Suite::Kernels => kernels(&mut tally, cases),
        Suite::PartialFractions => partial_fractions(&mut tally, &mut rng, cases),
        Suite::Residues => residues(&mut tally, &mut rng, cases),
        Suite::Logderiv => logderiv(&mut tally, &mut rng, cases),
        Suite::Factorization => factorization(&mut tally, &mut rng, cases),
        Suite::Parity => parity(&mut tally, &mut rng, cases, cfg.inject_violation),
        Suite::TraceScaling => trace_scaling(&mut tally, &mut rng, cases),
        Suite::EulerProduct => euler_product(&mut tally, &mut rng, cases),
        Suite::Enumerator => enumerator(&mut tally, &mut rng, cases),
    }
    tally.finish()
}

/// Runs every suite in order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, cfg)).collect()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

const KERNEL_GAP: f64 = 1e-10;

fn kernels(tally: &mut Tally, n: usize) {
    let lengths = log_grid(0.1, 5.0, n);
    for &l in &lengths {
        for &s in &log_grid(0.2, 5.0, n) {
            let s = Complex64::new(s, 0.0);
            let ctx = || json!({"check": "laplace", "l": l, "s": pair(s)});
            if let Some(k) = tally.attempt(laplace_kernel_check(l, s), ctx) {
                tally.gap(k.gap, KERNEL_GAP, ctx);
            }
        }
        for &t in &log_grid(0.05, 10.0, n) {
            let ctx = || json!({"check": "fourier", "l": l, "t": t});
            if let Some(k) = tally.attempt(fourier_gaussian_check(l, t), ctx) {
                tally.gap(k.gap, KERNEL_GAP, ctx);
            }
        }
    }
}

/// Shifts in the right half-plane whose squares are pairwise separated.
pub fn random_grid(rng: &mut impl Rng, n: usize) -> ResolventGrid {
    loop {
        let shifts: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(rng.random_range(0.5..2.5), rng.random_range(-1.0..1.0)))
            .collect();
        let separated = shifts.iter().enumerate().all(|(i, a)| {
            shifts[..i].iter().all(|b| (a * a - b * b).norm() >= 0.5)
        });
        if separated {
            return ResolventGrid::new(shifts).expect("separated shifts are valid");
        }
    }
}

fn partial_fractions(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    for _ in 0..n {
        let size = rng.random_range(1..=6);
        let grid = random_grid(rng, size);
        let w = partial_fraction_weights(&grid);
        let squares: Vec<Complex64> = grid.shifts().iter().map(|s| s * s).collect();
        let shifts_json = || Value::Array(grid.shifts().iter().map(|&s| pair(s)).collect());
        let mut drawn = 0;
        while drawn < 50 {
            let x = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            if squares.iter().any(|q| (x + q).norm() < 0.3) {
                continue;
            }
            drawn += 1;
            let product: Complex64 = squares.iter().map(|q| 1.0 / (x + q)).product();
            let sum: Complex64 = squares.iter().zip(&w).map(|(q, w)| w / (x + q)).sum();
            tally.gap((product - sum).norm() / product.norm(), 1e-11, || {
                json!({"check": "weights", "shifts": shifts_json(), "x": pair(x)})
            });
        }
        if size <= 5 {
            let dirac = random_dirac(rng, 6, false);
            let identity = random_identity(rng);
            let ctx = || json!({"check": "full-resolvent", "shifts": shifts_json(), "dirac": eigen_json(dirac.entries())});
            if let Some(r) = tally.attempt(super_resolvent_check(&grid, &dirac), ctx) {
                tally.gap(r.gap, 1e-10, ctx);
            }
            if let Some(r) = tally.attempt(sym_resolvent_check(&grid, &square_spectrum(&dirac), &identity), ctx) {
                tally.gap(r.gap, 1e-10, ctx);
            }
        }
    }
}

/// Random spectrum with at most `max` entries: complex eigenvalues with
/// |arg λ²| < π/4, some mirrored pairs ±λ, and optionally a zero mode.
pub fn random_dirac(rng: &mut impl Rng, max: usize, allow_zero: bool) -> DiracSpectrum {
    let target = rng.random_range(1..=max);
    let mut entries: Vec<Eigenpair> = Vec::new();
    let mut poles: Vec<Complex64> = Vec::new();
    if allow_zero && rng.random_bool(0.3) {
        entries.push(Eigenpair::real(0.0, rng.random_range(1..=4)));
        poles.push(Complex64::new(0.0, 0.0));
    }
    let mut attempts = 0;
    while entries.len() < target && attempts < 10_000 {
        attempts += 1;
        let mirror = !entries.is_empty() && rng.random_bool(0.25);
        let value = if mirror {
            let e = entries[rng.random_range(0..entries.len())].value;
            if e.norm() == 0.0 || entries.iter().any(|x| (x.value + e).norm() < 1e-12) {
                continue;
            }
            -e
        } else {
            let r = rng.random_range(0.5..8.0);
            let phi = rng.random_range(-0.35..0.35) + if rng.random_bool(0.5) { 0.0 } else { std::f64::consts::PI };
            let v = Complex64::from_polar(r, phi);
            let new_poles = [I * v, -I * v];
            if new_poles.iter().any(|p| poles.iter().any(|q| (p - q).norm() < 0.15)) {
                continue;
            }
            poles.extend(new_poles);
            v
        };
        entries.push(Eigenpair::new(value, rng.random_range(1..=4)));
    }
    DiracSpectrum::new(entries).expect("generated eigenvalues are distinct")
}

fn random_identity(rng: &mut impl Rng) -> IdentityData {
    let k = rng.random_range(1..=4) as f64 * 0.5;
    let sigma = MRep::d3(k).expect("d = 3 weights are valid");
    IdentityData::new(
        &sigma,
        &GammaRep::trivial(rng.random_range(1..=2)),
        Some(rng.random_range(0.5..5.0)),
        &PlancherelConfig::default(),
    )
    .expect("volume is present")
}

/// Distinct pole locations of the continued log-derivatives of a spectrum.
fn pole_set(dirac: &DiracSpectrum) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for e in dirac.entries() {
        for p in [I * e.value, -I * e.value] {
            if !out.iter().any(|q| (p - q).norm() < 1e-12) {
                out.push(p);
            }
        }
    }
    out
}

fn contour_radius(p: Complex64, poles: &[Complex64]) -> f64 {
    let nearest = poles
        .iter()
        .filter(|q| (*q - p).norm() > 1e-12)
        .map(|q| (q - p).norm())
        .fold(f64::INFINITY, f64::min);
    (0.4 * nearest).min(0.05)
}

const RESIDUE_GAP: f64 = 1e-8;

fn residues(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    for _ in 0..n {
        let dirac = random_dirac(rng, 20, true);
        let laplace = square_spectrum(&dirac);
        let identity = random_identity(rng);
        let poles = pole_set(&dirac);
        let spectrum = || eigen_json(dirac.entries());
        for &p in &poles {
            let r = contour_radius(p, &poles);
            let lambda = -I * p;
            let ctx = |what: &str| json!({"check": what, "dirac": spectrum(), "pole": pair(p), "radius": r});
            let expected = super_multiplicity(&dirac, lambda) as f64;
            if let Some(v) = tally.attempt(residue_at(|s| continued_super_logderiv(s, &dirac), p, r), || ctx("super")) {
                tally.gap((v - expected).norm(), RESIDUE_GAP, || ctx("super"));
            }
            let m = laplace.multiplicity(lambda * lambda) as f64;
            let expected = if p.norm() == 0.0 { 2.0 * m } else { m };
            let residue = residue_at(|s| continued_sym_logderiv(s, &laplace, &identity), p, r);
            if let Some(v) = tally.attempt(residue, || ctx("symmetrized")) {
                tally.gap((v - expected).norm(), RESIDUE_GAP, || ctx("symmetrized"));
            }
        }
        // the identity term alone is entire
        let centre = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let radius = rng.random_range(0.1..2.0);
        let empty = LaplaceSpectrum::default();
        let ctx = || json!({"check": "polynomial-control", "centre": pair(centre), "radius": radius});
        if let Some(v) = tally.attempt(residue_at(|s| continued_sym_logderiv(s, &empty, &identity), centre, radius), ctx) {
            tally.gap(v.norm(), 1e-12, ctx);
        }
    }
}

/// Three primitive classes with words in the generators `a`, `b`.
pub fn random_toy_spectrum(rng: &mut impl Rng) -> LengthSpectrum {
    let mut lengths: Vec<f64> = (0..3).map(|_| rng.random_range(0.5..3.0)).collect();
    lengths.sort_by(f64::total_cmp);
    let words = ["a", "b", "ab"];
    let classes = lengths
        .iter()
        .zip(words)
        .map(|(&l, w)| GeodesicClass::new(l, wrap_angle(rng.random_range(-3.2..3.2)), 1).with_word(w))
        .collect();
    LengthSpectrum::new(3, 3.5, 1e-9, None, "random toy", classes).expect("distinct random lengths")
}

/// One-dimensional unitary χ on `a`, `b`.
pub fn random_scalar_chi(rng: &mut impl Rng) -> GammaRep {
    GammaRep::scalar(&[
        ('a', Complex64::from_polar(1.0, rng.random_range(-3.0..3.0))),
        ('b', Complex64::from_polar(1.0, rng.random_range(-3.0..3.0))),
    ])
    .expect("unit scalars are invertible")
}

fn spectrum_json(spectrum: &LengthSpectrum) -> Value {
    spectrum.to_value()
}

fn logderiv(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    const H: f64 = 1e-5;
    let growth = GrowthModel::default();
    for case in 0..n {
        let spectrum = random_toy_spectrum(rng);
        let chi = random_scalar_chi(rng);
        let k = [1.0, 0.5, 2.0, -1.5][case % 4];
        let sigma = MRep::d3(k).expect("valid weight");
        let abscissa = crate::zeta::abscissa(ZetaKind::Symmetrized, 3, &growth);
        for _ in 0..10 {
            let s = Complex64::new(rng.random_range(abscissa + 1.0..abscissa + 4.0), rng.random_range(-5.0..5.0));
            let ctx = |what: &str| json!({"check": what, "s": pair(s), "k": k, "spectrum": spectrum_json(&spectrum)});
            for (kind, name) in [(ZetaKind::Symmetrized, "symmetrized"), (ZetaKind::Super, "super")] {
                let eval = |s: Complex64| {
                    let req = ZetaRequest {
                        s,
                        sigma: &sigma,
                        chi: &chi,
                        spectrum: &spectrum,
                        kind,
                        growth,
                    };
                    match kind {
                        ZetaKind::Super => log_super(&req),
                        _ => log_symmetrized(&req),
                    }
                    .map(|v| v.value)
                };
                let fd = eval(s + H).and_then(|a| eval(s - H).map(|b| (a - b) / (2.0 * H)));
                let exact = match kind {
                    ZetaKind::Super => log_derivative_super(s, &sigma, &chi, &spectrum, &growth),
                    _ => log_derivative_symmetrized(s, &sigma, &chi, &spectrum, &growth),
                };
                let both = fd.and_then(|fd| exact.map(|e| (fd, e.value)));
                if let Some((fd, exact)) = tally.attempt(both, || ctx(name)) {
                    tally.gap((fd - exact).norm(), 1e-6, || ctx(name));
                }
            }
        }
    }
}

fn factorization(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    let growth = GrowthModel::default();
    for case in 0..n {
        let spectrum = random_toy_spectrum(rng);
        let chi = random_scalar_chi(rng);
        let k = [1.0, 0.5, -1.5, 2.0, 0.0][case % 5];
        let sigma = MRep::d3(k).expect("valid weight");
        for _ in 0..5 {
            let s = Complex64::new(rng.random_range(3.0..6.0), rng.random_range(-3.0..3.0));
            let ctx = || json!({"s": pair(s), "k": k, "spectrum": spectrum_json(&spectrum)});
            if let Some(r) = tally.attempt(ruelle_factorization_check(s, &sigma, &chi, &spectrum, &growth), ctx) {
                tally.gap(r.gap, 1e-9, ctx);
            }
        }
    }
}

/// Orders are compared against residues of the continued log-derivatives.
fn parity(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize, inject: bool) {
    for _ in 0..n {
        let dirac = random_dirac(rng, 12, true);
        let laplace = square_spectrum(&dirac);
        let identity = random_identity(rng);
        let spectrum = || eigen_json(dirac.entries());
        let Some(catalog) = tally.attempt(singularity_catalog(&dirac, None), || json!({"check": "catalog", "dirac": spectrum()})) else {
            continue;
        };
        let poles = pole_set(&dirac);
        let order = |kind: ZetaKind, p: Complex64| {
            catalog
                .of_kind(kind)
                .find(|r| (r.location - p).norm() < 1e-12)
                .map_or(0, |r| r.order) as f64
        };
        for &p in &poles {
            let r = contour_radius(p, &poles);
            let ctx = || json!({"check": "selberg-order", "dirac": spectrum(), "pole": pair(p)});
            let residue = residue_at(|s| continued_selberg_logderiv(s, &dirac, &laplace, &identity), p, r);
            if let Some(v) = tally.attempt(residue, ctx) {
                tally.gap((v - order(ZetaKind::Selberg, p)).norm(), RESIDUE_GAP, ctx);
            }
            let lambda = -I * p;
            let sum = super_multiplicity(&dirac, lambda)
                + laplace.multiplicity(lambda * lambda) as i64 * if p.norm() == 0.0 { 2 } else { 1 };
            tally.check(sum % 2 == 0, || json!({"check": "integral-order", "dirac": spectrum(), "pole": pair(p)}));
        }
        // an independently supplied Laplace spectrum with one multiplicity bumped
        let bumpable: Vec<&Eigenpair> = laplace.entries().iter().filter(|e| e.value.norm() > 0.0).collect();
        if !bumpable.is_empty() {
            let target = bumpable[rng.random_range(0..bumpable.len())].value;
            let bumped: Vec<Eigenpair> = laplace
                .entries()
                .iter()
                .map(|e| Eigenpair::new(e.value, e.multiplicity + u32::from(e.value == target)))
                .collect();
            let bumped = LaplaceSpectrum::new(bumped).expect("same eigenvalues");
            let rejected = matches!(singularity_catalog(&dirac, Some(&bumped)), Err(Error::ParityViolation { .. }));
            tally.check(rejected, || {
                json!({"check": "violation-rejected", "dirac": spectrum(), "laplace": eigen_json(bumped.entries())})
            });
        }
    }
    if inject {
        let dirac = DiracSpectrum::new(vec![Eigenpair::real(1.0, 1)]).expect("valid");
        let laplace = LaplaceSpectrum::new(vec![Eigenpair::real(1.0, 2)]).expect("valid");
        let ctx = || json!({"check": "injected", "dirac": eigen_json(dirac.entries()), "laplace": eigen_json(laplace.entries())});
        tally.attempt(singularity_catalog(&dirac, Some(&laplace)), ctx);
    }
}

fn trace_scaling(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    let cfg = PlancherelConfig::default();
    let c = cfg.normalization;
    for &t in &log_grid(0.1, 10.0, n.max(3)) {
        let params = HeatParams::new(t).expect("positive t");
        let ctx = || json!({"check": "dirac-identity", "t": t});
        if let Some(v) = tally.attempt(identity_term_dirac(&params, &cfg), ctx) {
            tally.gap(v.abs(), 1e-12, ctx);
        }
        // a density that is not even in λ must leave a visible contribution
        let perturbed = identity_term_dirac_with(|x| c * (x * x + 0.25) + x, |x| c * (x * x + 0.25) - x, &params);
        let ctx = || json!({"check": "perturbed-control", "t": t});
        if let Some(v) = tally.attempt(perturbed, ctx) {
            tally.check(v.abs() > 1e-3, || {
                let mut ctx = ctx();
                ctx["value"] = json!(v);
                ctx
            });
        }
        let k = rng.random_range(0..=6) as f64 * 0.5;
        let dim = rng.random_range(1..=3);
        let volume = rng.random_range(0.5..5.0);
        let ctx = || json!({"check": "heat-identity", "t": t, "k": k, "dim": dim, "volume": volume});
        let sigma = MRep::d3(k).expect("valid weight");
        if let Some(poly) = tally.attempt(plancherel(&sigma, &cfg), ctx) {
            let pi = std::f64::consts::PI;
            // Gaussian moments ∫e^{−tλ²} = √(π/t), ∫λ²e^{−tλ²} = √π/(2t^{3/2})
            let oracle = 2.0 * dim as f64 * volume * c * (pi.sqrt() / (2.0 * t.powf(1.5)) + k * k * (pi / t).sqrt());
            let value = heat_identity_term(t, dim, volume, &poly);
            tally.gap((value - oracle).abs() / oracle.abs(), 1e-12, ctx);
        }
    }
}

/// The Euler products truncated at symmetric power and class power 40.
fn euler_product(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    const POWERS: u32 = 40;
    let growth = GrowthModel::default();
    for _ in 0..n {
        let l = rng.random_range(0.8..2.5);
        let theta = rng.random_range(-3.1..3.1);
        let alpha = rng.random_range(-3.1..3.1);
        // powers of a class carry wrapped angles, so only integer weights have a lift-free product
        let k = rng.random_range(-2..=2) as f64;
        let s = Complex64::new(rng.random_range(5.0..8.0), rng.random_range(-4.0..4.0));
        let classes = (1..=POWERS)
            .map(|p| GeodesicClass::new(p as f64 * l, wrap_angle(p as f64 * theta), p).with_word("a".repeat(p as usize)))
            .collect();
        let spectrum = LengthSpectrum::new(3, POWERS as f64 * l + 1.0, 1e-9, None, "single class", classes)
            .expect("powers of one class");
        let chi = GammaRep::scalar(&[('a', Complex64::from_polar(1.0, alpha))]).expect("unit scalar");
        let sigma = MRep::d3(k).expect("valid weight");
        let ctx = |what: &str| json!({"check": what, "l": l, "theta": theta, "alpha": alpha, "k": k, "s": pair(s)});
        let base = Complex64::from_polar(1.0, alpha + k * theta);

        let mut product = Complex64::new(1.0, 0.0);
        for a in 0..=POWERS {
            for b in 0..=(POWERS - a) {
                let x = base
                    * Complex64::from_polar(1.0, (a as f64 - b as f64) * theta)
                    * (-((a + b) as f64) * l).exp()
                    * (-(s + 1.0) * l).exp();
                product *= 1.0 - x;
            }
        }
        let req = ZetaRequest {
            s,
            sigma: &sigma,
            chi: &chi,
            spectrum: &spectrum,
            kind: ZetaKind::Selberg,
            growth,
        };
        if let Some(v) = tally.attempt(log_selberg(&req), || ctx("selberg")) {
            tally.gap((v.value - product.ln()).norm(), 1e-10, || ctx("selberg"));
        }
        let ruelle = 1.0 - base * (-s * l).exp();
        let req = ZetaRequest {
            kind: ZetaKind::Ruelle,
            ..req
        };
        if let Some(v) = tally.attempt(log_ruelle(&req), || ctx("ruelle")) {
            tally.gap((v.value - ruelle.ln()).norm(), 1e-10, || ctx("ruelle"));
        }
    }
}

fn diag(a: Complex64) -> Mat2 {
    Mat2::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0 / a)
}

/// Two loxodromic generators in general position.
pub fn two_generator_example() -> GroupPresentation {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let h = Mat2::new(one, Complex64::new(2.0, 0.0), zero, one);
    let a = h * diag(Complex64::new(1.5, 0.4)) * inverse_sl2(&h);
    let h = Mat2::new(one, zero, Complex64::new(2.0, 1.0), one);
    let b = h * diag(Complex64::new(0.8, -1.1)) * inverse_sl2(&h);
    GroupPresentation::new(vec![('a', a), ('b', b)], false).expect("valid generators")
}

/// The cyclic group generated by diag(2, 1/2).
pub fn cyclic_example() -> GroupPresentation {
    GroupPresentation::new(vec![('g', diag(Complex64::new(2.0, 0.0)))], false).expect("valid generator")
}

fn random_word(rng: &mut impl Rng, len: usize) -> String {
    const LETTERS: [char; 4] = ['a', 'A', 'b', 'B'];
    let mut word = String::new();
    let mut last: Option<char> = None;
    while word.len() < len {
        let c = LETTERS[rng.random_range(0..4)];
        if last.is_some_and(|l| l != c && l.eq_ignore_ascii_case(&c)) {
            continue;
        }
        word.push(c);
        last = Some(c);
    }
    word
}

fn enumerator(tally: &mut Tally, rng: &mut ChaCha8Rng, n: usize) {
    let cfg = EnumerationConfig {
        max_word_length: 3,
        length_cutoff: 5.0,
        ..EnumerationConfig::default()
    };
    let ln2 = 2f64.ln();
    match enumerate_spectrum(&cyclic_example(), &cfg) {
        Ok(report) => {
            let classes = report.spectrum.classes();
            tally.check(classes.len() == 3, || json!({"check": "cyclic-count", "classes": classes.len()}));
            for (i, class) in classes.iter().enumerate() {
                let p = i as u32 + 1;
                let ctx = || json!({"check": "cyclic-class", "power": p});
                tally.gap((class.length - 2.0 * p as f64 * ln2).abs() + class.angle.abs(), 1e-12, ctx);
                tally.check(class.multiplicity == p, ctx);
            }
        }
        Err(e) => tally.fail(json!({"check": "cyclic", "error": e.to_string()})),
    }
    let presentation = two_generator_example();
    for _ in 0..n {
        let len = rng.random_range(1..=6);
        let word = random_word(rng, len);
        let Some(g) = tally.attempt(presentation.word_matrix(&word), || json!({"word": word})) else {
            continue;
        };
        // det = ad − bc loses about e^l relative digits, so keep products well conditioned
        let Ok((l, theta)) = complex_length(&g) else {
            continue;
        };
        if l > 8.0 {
            continue;
        }
        let h = loop {
            let m = Mat2::from_fn(|_, _| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)));
            let det = m.determinant();
            if det.norm() > 0.2 {
                break m / det.sqrt();
            }
        };
        let conj = h * g * inverse_sl2(&h);
        let ctx = || json!({"check": "conjugation", "word": word});
        if let Some((lc, tc)) = tally.attempt(complex_length(&conj), ctx) {
            tally.gap((lc - l).abs() + angle_distance(tc, theta), 1e-9, ctx);
        }
        let power = rng.random_range(2..=4);
        if power as f64 * l > 12.0 {
            continue;
        }
        let ctx = || json!({"check": "power", "word": word, "power": power});
        if let Some((lp, tp)) = tally.attempt(complex_length(&g.pow(power)), ctx) {
            let p = power as f64;
            tally.gap((lp - p * l).abs() + angle_distance(tp, wrap_angle(p * theta)), 1e-9, ctx);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_the_default_seed() {
        for report in run_all(&VerifyConfig::default()) {
            assert!(report.pass, "{}", serde_json::to_string(&report).unwrap());
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn injected_violation_fails_the_parity_suite() {
        let cfg = VerifyConfig {
            inject_violation: true,
            cases: Some(2),
            ..VerifyConfig::default()
        };
        let report = run_suite(Suite::Parity, &cfg);
        assert!(!report.pass);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce["check"], "injected");
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = VerifyConfig {
            seed: 17,
            cases: Some(4),
            ..VerifyConfig::default()
        };
        let a = run_suite(Suite::Residues, &cfg);
        let b = run_suite(Suite::Residues, &cfg);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
