//! Truncated class-sum evaluation of the five zeta functions and the two
//! logarithmic derivatives, in their half-planes of convergence.
//!
//! log Z(s; σ) = −Σ (1/n_Γ) tr χ(γ) tr σ(m_γ) e^{−(s+|ρ|)l} / det(Id − Ad|n̄)
//! log R(s; σ) = −Σ (1/n_Γ) tr χ(γ) tr σ(m_γ) e^{−s l}
//!
//! Omitted classes are bounded with a counting model N(L) ≤ C e^{gL}; the
//! bound is model-based, not rigorous.

use num_complex::Complex64;
use serde::Serialize;

use crate::data::{GeodesicClass, LengthSpectrum, TruncatedValue, ZetaKind};
use crate::error::{Error, Result};
use crate::rep::{ad_nbar_det, case_of, character_chi, character_sigma, rho_norm, weyl_action, GammaRep, MRep, WeylCase};

/// Geodesic counting model N(L) ≤ C e^{gL} used for tail bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GrowthModel {
    /// Exponent g; defaults to 2|ρ|.
    pub exponent: Option<f64>,
    /// Constant C; fitted to the spectrum when absent.
    pub constant: Option<f64>,
}

impl GrowthModel {
    pub fn with_exponent(g: f64) -> Self {
        GrowthModel {
            exponent: Some(g),
            constant: None,
        }
    }

    pub fn exponent_for(&self, dimension: u32) -> f64 {
        self.exponent.unwrap_or(2.0 * rho_norm(dimension))
    }

    /// C from a least-squares fit of ln N(l_i) − g l_i with the slope held at g.
    pub fn constant_for(&self, spectrum: &LengthSpectrum) -> f64 {
        if let Some(c) = self.constant {
            return c;
        }
        let g = self.exponent_for(spectrum.dimension());
        let classes = spectrum.classes();
        if classes.is_empty() {
            return 0.0;
        }
        let mean = classes
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1) as f64).ln() - g * c.length)
            .sum::<f64>()
            / classes.len() as f64;
        mean.exp()
    }
}

/// One zeta evaluation.
#[derive(Clone, Copy, Debug)]
pub struct ZetaRequest<'a> {
    pub s: Complex64,
    pub sigma: &'a MRep,
    pub chi: &'a GammaRep,
    pub spectrum: &'a LengthSpectrum,
    pub kind: ZetaKind,
    pub growth: GrowthModel,
}

/// Abscissa beyond which the class sums of `kind` converge under the growth model.
pub fn abscissa(kind: ZetaKind, dimension: u32, growth: &GrowthModel) -> f64 {
    let g = growth.exponent_for(dimension);
    match kind {
        ZetaKind::Ruelle | ZetaKind::SuperRuelle => g,
        _ => g - rho_norm(dimension),
    }
}

fn check_region(s: Complex64, abscissa: f64) -> Result<()> {
    if s.re > abscissa && s.is_finite() {
        Ok(())
    } else {
        Err(Error::ConvergenceRegion { s, abscissa })
    }
}

/// Per-class scalars entering every sum.
#[derive(Clone, Copy, Debug)]
pub struct ClassFactors {
    pub length: f64,
    pub power: f64,
    pub trace_chi: Complex64,
    pub trace_sigma: Complex64,
    pub trace_wsigma: Complex64,
    pub nbar_det: Complex64,
}

fn class_factor(index: usize, class: &GeodesicClass, sigma: &MRep, chi: &GammaRep) -> Result<ClassFactors> {
    let trace_chi = if chi.is_trivial() {
        Complex64::new(chi.dimension() as f64, 0.0)
    } else {
        let word = class.word.as_deref().ok_or(Error::MissingWord { index })?;
        character_chi(chi, word)?
    };
    let (trace_sigma, trace_wsigma, nbar_det) = if sigma.dimension() == 3 {
        (
            character_sigma(sigma, class.angle)?,
            character_sigma(&weyl_action(sigma), class.angle)?,
            ad_nbar_det(class.length, class.angle),
        )
    } else {
        let missing = |what: &str| {
            Error::Unsupported(format!("class {index} needs a supplied {what} for d = {}", sigma.dimension()))
        };
        (
            class.sigma_trace.ok_or_else(|| missing("sigma_trace"))?,
            class.wsigma_trace.ok_or_else(|| missing("wsigma_trace"))?,
            class.nbar_det.ok_or_else(|| missing("nbar_det"))?,
        )
    };
    Ok(ClassFactors {
        length: class.length,
        power: class.multiplicity as f64,
        trace_chi,
        trace_sigma,
        trace_wsigma,
        nbar_det,
    })
}

/// Class factors of every class, in spectrum order.
pub fn class_factors(spectrum: &LengthSpectrum, sigma: &MRep, chi: &GammaRep) -> Result<Vec<ClassFactors>> {
    if sigma.dimension() != spectrum.dimension() {
        return Err(Error::InvalidRep(format!(
            "sigma has dimension {}, spectrum has {}",
            sigma.dimension(),
            spectrum.dimension()
        )));
    }
    spectrum
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| class_factor(i, c, sigma, chi))
        .collect()
}

#[derive(Clone, Copy)]
enum Series {
    Selberg,
    Ruelle,
}

struct TailInput {
    exponent: f64,
    amplitude: f64,
    decay: f64,
    with_length: bool,
}

fn tail_bound(spectrum: &LengthSpectrum, growth: &GrowthModel, input: TailInput) -> f64 {
    let c = growth.constant_for(spectrum);
    if c == 0.0 {
        return 0.0;
    }
    let g = input.exponent;
    let b = input.decay - g;
    let l = spectrum.cutoff();
    let integral = if input.with_length {
        (-b * l).exp() * (l / b + 1.0 / (b * b))
    } else {
        (-b * l).exp() / b
    };
    input.amplitude * c * g * integral
}

fn amplitude(factors: &[ClassFactors], chi: &GammaRep, spectrum: &LengthSpectrum, series: Series, trace: impl Fn(&ClassFactors) -> Complex64) -> f64 {
    let observed = factors
        .iter()
        .map(|f| (f.trace_chi * trace(f)).norm())
        .fold(chi.dimension() as f64, f64::max);
    match series {
        Series::Ruelle => observed,
        Series::Selberg => {
            let q = 1.0 - (-spectrum.cutoff()).exp();
            observed / q.powi(spectrum.dimension() as i32 - 1)
        }
    }
}

fn log_series(
    s: Complex64,
    sigma: &MRep,
    chi: &GammaRep,
    spectrum: &LengthSpectrum,
    growth: &GrowthModel,
    series: Series,
    weyl: bool,
) -> Result<TruncatedValue> {
    let d = spectrum.dimension();
    let kind = match series {
        Series::Selberg => ZetaKind::Selberg,
        Series::Ruelle => ZetaKind::Ruelle,
    };
    check_region(s, abscissa(kind, d, growth))?;
    let factors = class_factors(spectrum, sigma, chi)?;
    let rho = rho_norm(d);
    let pick = |f: &ClassFactors| if weyl { f.trace_wsigma } else { f.trace_sigma };
    let mut value = Complex64::new(0.0, 0.0);
    for f in &factors {
        let term = f.trace_chi * pick(f) / f.power;
        value -= match series {
            Series::Selberg => term * (-(s + rho) * f.length).exp() / f.nbar_det,
            Series::Ruelle => term * (-s * f.length).exp(),
        };
    }
    let decay = match series {
        Series::Selberg => s.re + rho,
        Series::Ruelle => s.re,
    };
    let tail = tail_bound(
        spectrum,
        growth,
        TailInput {
            exponent: growth.exponent_for(d),
            amplitude: amplitude(&factors, chi, spectrum, series, pick),
            decay,
            with_length: false,
        },
    );
    Ok(TruncatedValue {
        value,
        tail_bound: tail,
        terms_used: factors.len(),
    })
}

fn require_case_b(sigma: &MRep) -> Result<()> {
    match case_of(sigma) {
        WeylCase::B => Ok(()),
        WeylCase::A => Err(Error::CaseA),
    }
}

/// log Z(s; σ, χ).
pub fn log_selberg(req: &ZetaRequest) -> Result<TruncatedValue> {
    log_series(req.s, req.sigma, req.chi, req.spectrum, &req.growth, Series::Selberg, false)
}

/// log R(s; σ, χ).
pub fn log_ruelle(req: &ZetaRequest) -> Result<TruncatedValue> {
    log_series(req.s, req.sigma, req.chi, req.spectrum, &req.growth, Series::Ruelle, false)
}

fn pair(req: &ZetaRequest, series: Series, sign: f64) -> Result<TruncatedValue> {
    require_case_b(req.sigma)?;
    let a = log_series(req.s, req.sigma, req.chi, req.spectrum, &req.growth, series, false)?;
    let b = log_series(req.s, req.sigma, req.chi, req.spectrum, &req.growth, series, true)?;
    let mut out = a.combine(1.0, b, sign);
    out.terms_used = a.terms_used;
    Ok(out)
}

/// log S = log Z(σ) + log Z(wσ).
pub fn log_symmetrized(req: &ZetaRequest) -> Result<TruncatedValue> {
    pair(req, Series::Selberg, 1.0)
}

/// log Z^s = log Z(σ) − log Z(wσ).
pub fn log_super(req: &ZetaRequest) -> Result<TruncatedValue> {
    pair(req, Series::Selberg, -1.0)
}

/// log R^s = log R(σ) − log R(wσ).
pub fn log_super_ruelle(req: &ZetaRequest) -> Result<TruncatedValue> {
    pair(req, Series::Ruelle, -1.0)
}

/// Dispatches on `req.kind`.
pub fn log_zeta(req: &ZetaRequest) -> Result<TruncatedValue> {
    match req.kind {
        ZetaKind::Selberg => log_selberg(req),
        ZetaKind::Ruelle => log_ruelle(req),
        ZetaKind::Symmetrized => log_symmetrized(req),
        ZetaKind::Super => log_super(req),
        ZetaKind::SuperRuelle => log_super_ruelle(req),
    }
}

fn log_derivative(
    s: Complex64,
    sigma: &MRep,
    chi: &GammaRep,
    spectrum: &LengthSpectrum,
    growth: &GrowthModel,
    sign: f64,
) -> Result<TruncatedValue> {
    require_case_b(sigma)?;
    let d = spectrum.dimension();
    check_region(s, abscissa(ZetaKind::Selberg, d, growth))?;
    let factors = class_factors(spectrum, sigma, chi)?;
    let rho = rho_norm(d);
    let combined = |f: &ClassFactors| f.trace_sigma + f.trace_wsigma * sign;
    let mut value = Complex64::new(0.0, 0.0);
    for f in &factors {
        let l_sym = f.trace_chi * combined(f) * (-rho * f.length).exp() / f.nbar_det;
        value += l_sym * (f.length / f.power) * (-s * f.length).exp();
    }
    let tail = tail_bound(
        spectrum,
        growth,
        TailInput {
            exponent: growth.exponent_for(d),
            amplitude: amplitude(&factors, chi, spectrum, Series::Selberg, combined),
            decay: s.re + rho,
            with_length: true,
        },
    );
    Ok(TruncatedValue {
        value,
        tail_bound: tail,
        terms_used: factors.len(),
    })
}

/// d/ds log Z^s = Σ (l/n_Γ) L_sym(γ; σ − wσ) e^{−sl}.
pub fn log_derivative_super(
    s: Complex64,
    sigma: &MRep,
    chi: &GammaRep,
    spectrum: &LengthSpectrum,
    growth: &GrowthModel,
) -> Result<TruncatedValue> {
    log_derivative(s, sigma, chi, spectrum, growth, -1.0)
}

/// d/ds log S = Σ (l/n_Γ) L_sym(γ; σ + wσ) e^{−sl}.
pub fn log_derivative_symmetrized(
    s: Complex64,
    sigma: &MRep,
    chi: &GammaRep,
    spectrum: &LengthSpectrum,
    growth: &GrowthModel,
) -> Result<TruncatedValue> {
    log_derivative(s, sigma, chi, spectrum, growth, 1.0)
}

/// L_sym(γ; σ) = tr χ(γ) tr σ(m_γ) e^{−|ρ|l} / det(Id − Ad|n̄) for one class.
pub fn l_sym(factors: &ClassFactors, trace_sigma: Complex64, dimension: u32) -> Complex64 {
    factors.trace_chi * trace_sigma * (-rho_norm(dimension) * factors.length).exp() / factors.nbar_det
}

/// Output row of a zeta evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaRecord {
    pub s: [f64; 2],
    pub kind: ZetaKind,
    pub value_re: f64,
    pub value_im: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl ZetaRecord {
    pub fn new(s: Complex64, kind: ZetaKind, value: &TruncatedValue) -> Self {
        ZetaRecord {
            s: [s.re, s.im],
            kind,
            value_re: value.value.re,
            value_im: value.value.im,
            tail_bound: value.tail_bound,
            terms_used: value.terms_used,
        }
    }

    pub const CSV_HEADER: [&'static str; 7] = ["s_re", "s_im", "kind", "value_re", "value_im", "tail_bound", "terms_used"];

    pub fn csv_row(&self) -> [String; 7] {
        [
            self.s[0].to_string(),
            self.s[1].to_string(),
            self.kind.to_string(),
            self.value_re.to_string(),
            self.value_im.to_string(),
            self.tail_bound.to_string(),
            self.terms_used.to_string(),
        ]
    }
}
