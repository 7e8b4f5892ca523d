//! Geometric and spectral sides of the Dirac and heat trace formulas for
//! case (b), the identity contributions, and the two kernel identities used
//! to pass between them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::data::{DiracSpectrum, LaplaceSpectrum, LengthSpectrum, TruncatedValue};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_real_line, integrate_to_infinity, Tolerance};
use crate::rep::{case_of, plancherel, rho_norm, GammaRep, MRep, PlancherelConfig, PlancherelPoly, WeylCase};
use crate::zeta::{class_factors, GrowthModel};

/// Heat time and quadrature controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatParams {
    pub t: f64,
    pub quadrature_abs_tol: f64,
    /// Half-width of the compact λ-window; 0 selects it from t.
    pub lambda_window: f64,
}

impl HeatParams {
    pub fn new(t: f64) -> Result<Self> {
        let p = HeatParams {
            t,
            quadrature_abs_tol: 1e-11,
            lambda_window: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(Error::Schema(format!("heat time t = {} must be positive", self.t)));
        }
        if !(self.quadrature_abs_tol > 0.0) || self.lambda_window < 0.0 {
            return Err(Error::Schema("quadrature tolerance and window must be positive".into()));
        }
        Ok(())
    }

    fn window(&self) -> f64 {
        if self.lambda_window > 0.0 {
            self.lambda_window
        } else {
            (50.0 / self.t).sqrt()
        }
    }
}

fn require_case_b(sigma: &MRep) -> Result<()> {
    match case_of(sigma) {
        WeylCase::B => Ok(()),
        WeylCase::A => Err(Error::CaseA),
    }
}

/// Bound on Σ_{l > L} A·l^p·e^{−l²/4t}·e^{−βl} under the counting model.
fn gaussian_tail(spectrum: &LengthSpectrum, growth: &GrowthModel, amplitude: f64, power: i32, beta: f64, t: f64) -> f64 {
    let c = growth.constant_for(spectrum);
    if c == 0.0 {
        return 0.0;
    }
    let g = growth.exponent_for(spectrum.dimension());
    let big_l = spectrum.cutoff();
    let f = |l: f64| {
        let log = (power as f64) * l.ln() - l * l / (4.0 * t) + (g - beta) * l;
        Complex64::new(log.exp(), 0.0)
    };
    integrate_to_infinity(f, big_l, Tolerance { abs: 1e-300, rel: 1e-6 })
        .map(|r| amplitude * c * g * r.value.re)
        .unwrap_or(f64::INFINITY)
}

/// Σ (−2πi/(4πt)^{3/2}) l² tr(χ ⊗ (σ − wσ)) e^{−l²/4t} / (n_Γ D(γ)), with D(γ) = e^{|ρ|l} det(Id − Ad|n̄).
pub fn dirac_geometric_side(
    t: f64,
    spectrum: &LengthSpectrum,
    sigma: &MRep,
    chi: &GammaRep,
    growth: &GrowthModel,
) -> Result<TruncatedValue> {
    require_case_b(sigma)?;
    HeatParams::new(t)?;
    let factors = class_factors(spectrum, sigma, chi)?;
    let rho = rho_norm(spectrum.dimension());
    let prefactor = Complex64::new(0.0, -2.0 * PI) / (4.0 * PI * t).powf(1.5);
    let mut value = Complex64::new(0.0, 0.0);
    let mut amplitude = 2.0 * chi.dimension() as f64;
    for f in &factors {
        let diff = f.trace_chi * (f.trace_sigma - f.trace_wsigma);
        amplitude = amplitude.max(diff.norm());
        let d_gamma = (rho * f.length).exp() * f.nbar_det;
        value += prefactor * f.length * f.length * diff * (-f.length * f.length / (4.0 * t)).exp() / (f.power * d_gamma);
    }
    let q = 1.0 - (-spectrum.cutoff()).exp();
    let amplitude = amplitude * prefactor.norm() / q.powi(spectrum.dimension() as i32 - 1);
    Ok(TruncatedValue {
        value,
        tail_bound: gaussian_tail(spectrum, growth, amplitude, 2, rho, t),
        terms_used: factors.len(),
    })
}

/// Identity and geodesic parts of a geometric side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometricSide {
    pub identity: Complex64,
    pub geodesic: TruncatedValue,
}

impl GeometricSide {
    pub fn total(&self) -> Complex64 {
        self.identity + self.geodesic.value
    }
}

/// 2 dim(χ) Vol(X) ∫ e^{−tλ²} P_σ(iλ) dλ.
pub fn heat_identity_term(t: f64, dim_chi: usize, volume: f64, poly: &PlancherelPoly) -> f64 {
    2.0 * dim_chi as f64 * volume * poly.gaussian_integral(t)
}

/// Identity term plus Σ (l/n_Γ) L_sym(γ; σ + wσ) e^{−l²/4t} / (4πt)^{1/2}.
pub fn heat_geometric_side(
    t: f64,
    spectrum: &LengthSpectrum,
    sigma: &MRep,
    chi: &GammaRep,
    plancherel_config: &PlancherelConfig,
    growth: &GrowthModel,
) -> Result<GeometricSide> {
    require_case_b(sigma)?;
    HeatParams::new(t)?;
    let volume = spectrum.volume().ok_or(Error::MissingVolume)?;
    let poly = plancherel(sigma, plancherel_config)?;
    let identity = Complex64::new(heat_identity_term(t, chi.dimension(), volume, &poly), 0.0);
    let factors = class_factors(spectrum, sigma, chi)?;
    let rho = rho_norm(spectrum.dimension());
    let norm = 1.0 / (4.0 * PI * t).sqrt();
    let mut value = Complex64::new(0.0, 0.0);
    let mut amplitude = 2.0 * chi.dimension() as f64;
    for f in &factors {
        let sum = f.trace_chi * (f.trace_sigma + f.trace_wsigma);
        amplitude = amplitude.max(sum.norm());
        let l_sym = sum * (-rho * f.length).exp() / f.nbar_det;
        value += l_sym * (f.length / f.power) * (-f.length * f.length / (4.0 * t)).exp() * norm;
    }
    let q = 1.0 - (-spectrum.cutoff()).exp();
    let amplitude = amplitude * norm / q.powi(spectrum.dimension() as i32 - 1);
    Ok(GeometricSide {
        identity,
        geodesic: TruncatedValue {
            value,
            tail_bound: gaussian_tail(spectrum, growth, amplitude, 1, rho, t),
            terms_used: factors.len(),
        },
    })
}

/// Tr(D e^{−tD²}) = Σ m(λ) λ e^{−tλ²}.
pub fn dirac_spectral_side(t: f64, dirac: &DiracSpectrum) -> Complex64 {
    dirac
        .entries()
        .iter()
        .map(|e| e.value * e.multiplicity as f64 * (-t * e.value * e.value).exp())
        .sum()
}

/// Tr(e^{−tA}) = Σ m(μ) e^{−tμ}.
pub fn heat_spectral_side(t: f64, laplace: &LaplaceSpectrum) -> Complex64 {
    laplace
        .entries()
        .iter()
        .map(|e| (-t * e.value).exp() * e.multiplicity as f64)
        .sum()
}

/// Quadrature value, closed form, and their distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
}

impl KernelCheck {
    fn new(lhs: Complex64, rhs: Complex64) -> Self {
        KernelCheck {
            lhs,
            rhs,
            gap: (lhs - rhs).norm(),
        }
    }
}

const KERNEL_TOL: Tolerance = Tolerance::absolute(1e-13);

/// ∫₀^∞ e^{−ts²} (4πt)^{−3/2} e^{−l²/4t} dt against e^{−ls}/(4πl).
///
/// The integral is taken in v with t = t*·e^v centred at the saddle
/// t* = l/(2|s|); it converges only for Re(s²) > 0.
pub fn laplace_kernel_check(l: f64, s: Complex64) -> Result<KernelCheck> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Schema(format!("length {l} must be positive")));
    }
    if !(s.re > 0.0 && (s * s).re > 0.0) {
        return Err(Error::NoConvergence(format!("the heat-time integral needs Re(s²) > 0, got s = {s}")));
    }
    let s2 = s * s;
    let t_star = l / (2.0 * s.norm());
    let integrand = |v: f64| {
        let t = t_star * v.exp();
        let log = -t * s2 - l * l / (4.0 * t) - 1.5 * (4.0 * PI * t).ln() + t.ln();
        log.exp()
    };
    let half_width = (1.0 + 60.0 / (l * s.norm())).acosh() + 2.0;
    let lhs = integrate_real_line(integrand, 0.0, half_width, KERNEL_TOL)?.value;
    let rhs = (-l * s).exp() / (4.0 * PI * l);
    Ok(KernelCheck::new(lhs, rhs))
}

/// (1/2π) ∫ λ e^{−tλ²} e^{−ilλ} dλ against −i l √π e^{−l²/4t} / (4π t^{3/2}).
pub fn fourier_gaussian_check(l: f64, t: f64) -> Result<KernelCheck> {
    if !(l >= 0.0 && l.is_finite() && t > 0.0 && t.is_finite()) {
        return Err(Error::Schema(format!("need l >= 0 and t > 0, got l = {l}, t = {t}")));
    }
    let integrand = |x: f64| Complex64::from_polar(x * (-t * x * x).exp() / (2.0 * PI), -l * x);
    let lhs = integrate_real_line(integrand, 0.0, (50.0 / t).sqrt(), KERNEL_TOL)?.value;
    let rhs = Complex64::new(0.0, -l * PI.sqrt() * (-l * l / (4.0 * t)).exp() / (4.0 * PI * t.powf(1.5)));
    Ok(KernelCheck::new(lhs, rhs))
}

/// ∫ λ e^{−tλ²} P₊(iλ) dλ + ∫ (−λ) e^{−tλ²} P₋(iλ) dλ for arbitrary densities.
pub fn identity_term_dirac_with(
    p_plus: impl Fn(f64) -> f64,
    p_minus: impl Fn(f64) -> f64,
    params: &HeatParams,
) -> Result<f64> {
    params.validate()?;
    let t = params.t;
    let tol = Tolerance::absolute(params.quadrature_abs_tol.min(1e-13));
    let plus = integrate_real_line(
        |x| Complex64::new(x * (-t * x * x).exp() * p_plus(x), 0.0),
        0.0,
        params.window(),
        tol,
    )?;
    let minus = integrate_real_line(
        |x| Complex64::new(-x * (-t * x * x).exp() * p_minus(x), 0.0),
        0.0,
        params.window(),
        tol,
    )?;
    Ok(plus.value.re + minus.value.re)
}

/// Dirac identity contribution for the half-spin pair s^±.
pub fn identity_term_dirac(params: &HeatParams, config: &PlancherelConfig) -> Result<f64> {
    let plus = plancherel(&MRep::half_spin(3, true)?, config)?;
    let minus = plancherel(&MRep::half_spin(3, false)?, config)?;
    identity_term_dirac_with(
        |x| plus.at_i_lambda(Complex64::new(x, 0.0)).re,
        |x| minus.at_i_lambda(Complex64::new(x, 0.0)).re,
        params,
    )
}

/// Geometric/spectral comparison for one heat time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceReport {
    pub t: f64,
    pub formula: &'static str,
    pub geometric: [f64; 2],
    pub spectral: [f64; 2],
    pub gap: f64,
    pub identity_term: f64,
    pub tolerances: TraceTolerances,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceTolerances {
    pub quadrature_abs: f64,
    pub geodesic_tail_bound: f64,
}

impl TraceReport {
    pub fn new(
        t: f64,
        formula: &'static str,
        geometric: Complex64,
        spectral: Complex64,
        identity_term: f64,
        tolerances: TraceTolerances,
    ) -> Self {
        TraceReport {
            t,
            formula,
            geometric: [geometric.re, geometric.im],
            spectral: [spectral.re, spectral.im],
            gap: (geometric - spectral).norm(),
            identity_term,
            tolerances,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Eigenpair, GeodesicClass};
    use crate::rep::ad_nbar_det;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spectrum(classes: Vec<GeodesicClass>) -> LengthSpectrum {
        LengthSpectrum::new(3, 6.0, 1e-9, Some(1.0), "", classes).unwrap()
    }

    fn toy() -> LengthSpectrum {
        spectrum(vec![
            GeodesicClass::new(1.1, 0.7, 1),
            GeodesicClass::new(1.6, -2.0, 1),
            GeodesicClass::new(2.2, 1.4, 2),
        ])
    }

    #[test]
    fn dirac_geometric_vanishes_for_real_holonomy() {
        let sp = spectrum(vec![GeodesicClass::new(1.0, 0.0, 1), GeodesicClass::new(1.2, PI, 1)]);
        let v = dirac_geometric_side(0.7, &sp, &MRep::d3(1.0).unwrap(), &GammaRep::trivial(1), &GrowthModel::default()).unwrap();
        assert!(v.value.norm() < 1e-16);
        let empty = LengthSpectrum::empty(3, 1.0).unwrap();
        let v = dirac_geometric_side(0.7, &empty, &MRep::d3(1.0).unwrap(), &GammaRep::trivial(1), &GrowthModel::default()).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
        assert!(matches!(
            dirac_geometric_side(0.7, &empty, &MRep::d3(0.0).unwrap(), &GammaRep::trivial(1), &GrowthModel::default()),
            Err(Error::CaseA)
        ));
    }

    #[test]
    fn dirac_geometric_single_class_via_fourier_integral() {
        let (l, theta, t) = (1.3, 0.9, 0.8);
        let sp = spectrum(vec![GeodesicClass::new(l, theta, 1)]);
        let sigma = MRep::d3(1.0).unwrap();
        let v = dirac_geometric_side(t, &sp, &sigma, &GammaRep::trivial(1), &GrowthModel::default()).unwrap();
        let fourier = fourier_gaussian_check(l, t).unwrap().lhs;
        let d_gamma = l.exp() * ad_nbar_det(l, theta);
        let diff = c(0.0, 2.0 * theta.sin());
        let expected = fourier * l * diff / d_gamma;
        assert!((v.value - expected).norm() < 1e-10, "{} vs {}", v.value, expected);
    }

    #[test]
    fn dirac_geometric_linear_in_inverse_multiplicity() {
        let one = spectrum(vec![GeodesicClass::new(1.0, 0.5, 1), GeodesicClass::new(2.0, 1.0, 2)]);
        let mut doubled_classes = one.classes().to_vec();
        // the invariant forbids doubling in place, so compare termwise on the power class
        doubled_classes.truncate(1);
        let sigma = MRep::d3(1.0).unwrap();
        let chi = GammaRep::trivial(1);
        let g = GrowthModel::default();
        let full = dirac_geometric_side(0.9, &one, &sigma, &chi, &g).unwrap().value;
        let root = dirac_geometric_side(0.9, &spectrum(doubled_classes), &sigma, &chi, &g).unwrap().value;
        let power_term = full - root;
        let as_primitive = dirac_geometric_side(0.9, &spectrum(vec![GeodesicClass::new(2.0, 1.0, 1)]), &sigma, &chi, &g)
            .unwrap()
            .value;
        assert!((power_term * 2.0 - as_primitive).norm() < 1e-15);
    }

    #[test]
    fn heat_identity_term_closed_form() {
        let sp = LengthSpectrum::new(3, 1.0, 1e-9, Some(1.0), "", vec![]).unwrap();
        let k: f64 = 2.0;
        let cfg = PlancherelConfig::default();
        let cc = cfg.normalization;
        for t in [0.3, 1.0, 4.0] {
            let side = heat_geometric_side(t, &sp, &MRep::d3(k).unwrap(), &GammaRep::trivial(1), &cfg, &GrowthModel::default()).unwrap();
            let expected = 2.0 * cc * (PI.sqrt() / (2.0 * t.powf(1.5)) + k * k * (PI / t).sqrt());
            assert!((side.identity.re - expected).abs() < 1e-14);
            assert_eq!(side.geodesic.value, c(0.0, 0.0));
        }
        let no_volume = LengthSpectrum::empty(3, 1.0).unwrap();
        assert!(matches!(
            heat_geometric_side(1.0, &no_volume, &MRep::d3(1.0).unwrap(), &GammaRep::trivial(1), &cfg, &GrowthModel::default()),
            Err(Error::MissingVolume)
        ));
    }

    #[test]
    fn heat_identity_scales_with_volume_and_dimension() {
        let poly = plancherel(&MRep::d3(1.5).unwrap(), &PlancherelConfig::default()).unwrap();
        let base = heat_identity_term(0.7, 1, 1.0, &poly);
        assert!((heat_identity_term(0.7, 3, 1.0, &poly) - 3.0 * base).abs() < 1e-15);
        assert!((heat_identity_term(0.7, 1, 2.5, &poly) - 2.5 * base).abs() < 1e-15);
    }

    #[test]
    fn heat_geodesic_term_by_hand_and_decay() {
        let (l, theta, t) = (1.4, 0.6, 0.5);
        let sp = spectrum(vec![GeodesicClass::new(l, theta, 1)]);
        let k = 1.0;
        let side = heat_geometric_side(t, &sp, &MRep::d3(k).unwrap(), &GammaRep::trivial(1), &PlancherelConfig::default(), &GrowthModel::default()).unwrap();
        let l_sym = 2.0 * (k * theta).cos() * (-l).exp() / ad_nbar_det(l, theta);
        let expected = l * l_sym * (-l * l / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
        assert!((side.geodesic.value - expected).norm() < 1e-15);
        for t in [1e2, 1e4, 1e6] {
            let side = heat_geometric_side(t, &sp, &MRep::d3(k).unwrap(), &GammaRep::trivial(1), &PlancherelConfig::default(), &GrowthModel::default()).unwrap();
            assert!(side.geodesic.value.norm() <= l * l_sym.norm() / (4.0 * PI * t).sqrt());
        }
    }

    #[test]
    fn spectral_sides() {
        let d = DiracSpectrum::new(vec![Eigenpair::real(1.0, 2), Eigenpair::real(-1.0, 1)]).unwrap();
        assert!((dirac_spectral_side(1.0, &d) - (-1f64).exp()).norm() < 1e-15);
        let sym = DiracSpectrum::new(vec![Eigenpair::real(1.5, 2), Eigenpair::real(-1.5, 2)]).unwrap();
        assert!(dirac_spectral_side(0.4, &sym).norm() < 1e-15);
        assert_eq!(dirac_spectral_side(1.0, &DiracSpectrum::default()), c(0.0, 0.0));
        let lap = LaplaceSpectrum::new(vec![Eigenpair::real(0.0, 3)]).unwrap();
        assert!((heat_spectral_side(2.7, &lap) - 3.0).norm() < 1e-15);
        let lap = LaplaceSpectrum::new(vec![Eigenpair::real(1.0, 3)]).unwrap();
        assert!((heat_spectral_side(1.0, &lap) - 3.0 * (-1f64).exp()).norm() < 1e-15);
        let sq = crate::data::square_spectrum(&d);
        assert!((heat_spectral_side(1.0, &sq) - 3.0 * (-1f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn laplace_kernel_examples() {
        let r = laplace_kernel_check(2.0, c(1.0, 0.0)).unwrap();
        assert!((r.rhs.re - (-2f64).exp() / (8.0 * PI)).abs() < 1e-17);
        assert!(r.gap <= 1e-10, "{}", r.gap);
        let r = laplace_kernel_check(1.0, c(2.0, 0.0)).unwrap();
        assert!((r.rhs - (-2f64).exp() / (4.0 * PI)).norm() < 1e-16);
        assert!(r.gap <= 1e-10);
        assert!(laplace_kernel_check(1.0, c(1.0, 0.8)).unwrap().gap <= 1e-10);
        assert!(laplace_kernel_check(1.0, c(0.5, 1.0)).is_err());
        // closed form depends on l·s and the 1/(4πl) prefactor only
        let a = laplace_kernel_check(1.0, c(3.0, 0.0)).unwrap().rhs;
        let b = laplace_kernel_check(3.0, c(1.0, 0.0)).unwrap().rhs;
        assert!((a - 3.0 * b).norm() < 1e-16);
    }

    #[test]
    fn fourier_examples() {
        let r = fourier_gaussian_check(1.0, 1.0).unwrap();
        assert!((r.rhs - c(0.0, -PI.sqrt() * (-0.25f64).exp() / (4.0 * PI))).norm() < 1e-16);
        assert!(r.gap <= 1e-10);
        assert!(fourier_gaussian_check(2.0, 0.5).unwrap().gap <= 1e-10);
        assert!(fourier_gaussian_check(0.0, 1.3).unwrap().lhs.norm() < 1e-15);
    }

    #[test]
    fn dirac_identity_term_vanishes() {
        for t in [0.1, 1.0, 10.0] {
            let v = identity_term_dirac(&HeatParams::new(t).unwrap(), &PlancherelConfig::default()).unwrap();
            assert!(v.abs() <= 1e-12);
        }
        let cc = PlancherelConfig::default().normalization;
        let t: f64 = 10.0;
        let v = identity_term_dirac_with(
            |x| cc * (x * x + 0.25) + x,
            |x| cc * (x * x + 0.25) - x,
            &HeatParams::new(t).unwrap(),
        )
        .unwrap();
        assert!((v - PI.sqrt() / t.powf(1.5)).abs() < 1e-12);
        assert!(v > 1e-3);
    }

    #[test]
    fn d_gamma_matches_super_log_derivative_term() {
        // ∫₀^∞ e^{−ts²}·(Dirac coefficient)dt = (−i/2)(l/n)e^{−|ρ|l}e^{−ls}/det
        let s = c(1.7, 0.4);
        for (l, theta, n) in [(1.1, 0.7, 1.0), (2.2, 1.4, 2.0), (0.6, -2.5, 1.0)] {
            let kernel = laplace_kernel_check(l, s).unwrap().lhs;
            let d_gamma = l.exp() * ad_nbar_det(l, theta);
            let integrated = c(0.0, -2.0 * PI) * kernel * l * l / (n * d_gamma);
            let expected = c(0.0, -0.5) * (l / n) * (-l).exp() * (-l * s).exp() / ad_nbar_det(l, theta);
            assert!((integrated - expected).norm() <= 1e-9);
        }
    }

    #[test]
    fn dirac_geometric_large_t_slope() {
        let sp = toy();
        let sigma = MRep::d3(1.0).unwrap();
        let chi = GammaRep::trivial(1);
        let g = GrowthModel::default();
        let (t1, t2) = (1e4, 1e5);
        let a = dirac_geometric_side(t1, &sp, &sigma, &chi, &g).unwrap().value.norm();
        let b = dirac_geometric_side(t2, &sp, &sigma, &chi, &g).unwrap().value.norm();
        let slope = (b.ln() - a.ln()) / (t2.ln() - t1.ln());
        assert!((slope + 1.5).abs() < 0.1, "{slope}");
    }
}
