//! Representation data: σ ∈ M̂ by highest weight, the twist χ of Γ by
//! generator matrices, and the scalar shadows the zeta functions consume
//! (characters, adjoint determinants on n̄, the shift c(σ), the Plancherel
//! polynomial).

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

/// |ρ| = (d − 1)/2.
pub fn rho_norm(dimension: u32) -> f64 {
    (dimension as f64 - 1.0) / 2.0
}

/// ρ_m = (n − 1, …, 1, 0) with n = (d − 1)/2.
pub fn rho_m(dimension: u32) -> Vec<f64> {
    let n = (dimension as usize - 1) / 2;
    (0..n).map(|j| (n - 1 - j) as f64).collect()
}

/// Highest weight ν_σ of an irreducible representation of M = Spin(d − 1).
///
/// Weights are stored doubled so that integer and half-integer weights are
/// both exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MRep {
    dimension: u32,
    doubled: Vec<i64>,
}

impl MRep {
    pub fn new(dimension: u32, weight: &[f64]) -> Result<Self> {
        if dimension < 3 || dimension % 2 == 0 {
            return Err(Error::InvalidRep(format!("dimension {dimension} is not an odd integer >= 3")));
        }
        let n = (dimension as usize - 1) / 2;
        if weight.len() != n {
            return Err(Error::InvalidRep(format!(
                "dimension {dimension} needs {n} weight entries, got {}",
                weight.len()
            )));
        }
        let mut doubled = Vec::with_capacity(n);
        for &w in weight {
            let d = 2.0 * w;
            if !d.is_finite() || (d - d.round()).abs() > 1e-12 {
                return Err(Error::InvalidRep(format!("weight entry {w} is not a half-integer")));
            }
            doubled.push(d.round() as i64);
        }
        let parity = doubled[0].rem_euclid(2);
        if doubled.iter().any(|d| d.rem_euclid(2) != parity) {
            return Err(Error::InvalidRep("weights must be all integers or all half-integers".into()));
        }
        for j in 0..n.saturating_sub(1) {
            let lower = if j + 1 == n - 1 { doubled[j + 1].abs() } else { doubled[j + 1] };
            if doubled[j] < lower {
                return Err(Error::InvalidRep(format!("weights {weight:?} are not dominant")));
            }
        }
        Ok(MRep { dimension, doubled })
    }

    /// The d = 3 representation σ_k with character e^{ikθ}.
    pub fn d3(k: f64) -> Result<Self> {
        MRep::new(3, &[k])
    }

    /// Spin weight ν_s = (½, …, ½).
    pub fn spin(dimension: u32) -> Result<Self> {
        let n = (dimension as usize).saturating_sub(1) / 2;
        MRep::new(dimension, &vec![0.5; n])
    }

    /// Half-spin representation s⁺ (`plus`) or s⁻ with last entry ∓½.
    pub fn half_spin(dimension: u32, plus: bool) -> Result<Self> {
        let s = MRep::spin(dimension)?;
        Ok(if plus { s } else { weyl_action(&s) })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn weight(&self) -> Vec<f64> {
        self.doubled.iter().map(|&d| d as f64 / 2.0).collect()
    }

    /// Last weight coordinate ν_n (the single weight k when d = 3).
    pub fn last(&self) -> f64 {
        *self.doubled.last().expect("weight is nonempty") as f64 / 2.0
    }

    /// The d = 3 representation with weight shifted by `delta`.
    pub fn shifted_d3(&self, delta: f64) -> Result<Self> {
        if self.dimension != 3 {
            return Err(Error::Unsupported("weight shifts are only defined for d = 3".into()));
        }
        MRep::d3(self.last() + delta)
    }
}

impl fmt::Display for MRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weight().iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// σ ↦ wσ: negates the last weight coordinate.
pub fn weyl_action(sigma: &MRep) -> MRep {
    let mut out = sigma.clone();
    if let Some(last) = out.doubled.last_mut() {
        *last = -*last;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylCase {
    /// wσ = σ.
    A,
    /// wσ ≠ σ.
    B,
}

pub fn case_of(sigma: &MRep) -> WeylCase {
    if sigma.doubled.last().copied().unwrap_or(0) == 0 {
        WeylCase::A
    } else {
        WeylCase::B
    }
}

/// tr σ(m_γ) for d = 3: e^{ikθ}.
pub fn character_sigma(sigma: &MRep, angle: f64) -> Result<Complex64> {
    if sigma.dimension != 3 {
        return Err(Error::Unsupported(format!(
            "characters of Spin({}) are not computed; supply per-class sigma_trace",
            sigma.dimension - 1
        )));
    }
    Ok(Complex64::from_polar(1.0, sigma.last() * angle))
}

/// c(σ) = −|ρ|² − |ρ_m|² + |ν_σ + ρ_m|².
pub fn c_shift(sigma: &MRep) -> f64 {
    let rho = rho_norm(sigma.dimension);
    let rm = rho_m(sigma.dimension);
    let rm2: f64 = rm.iter().map(|x| x * x).sum();
    let shifted: f64 = sigma.weight().iter().zip(&rm).map(|(v, r)| (v + r) * (v + r)).sum();
    -rho * rho - rm2 + shifted
}

/// det(Id − Ad(m_γ a_γ)|n̄) for d = 3: 1 − 2e^{−l}cos θ + e^{−2l}.
pub fn ad_nbar_det(length: f64, angle: f64) -> Complex64 {
    let q = (-length).exp();
    Complex64::new(1.0 - 2.0 * q * angle.cos() + q * q, 0.0)
}

/// tr S^k(Ad(m_γ a_γ)|n̄) for d = 3: e^{−kl} Σ_{a+b=k} e^{i(a−b)θ}.
pub fn sym_power_trace(k: u32, length: f64, angle: f64) -> Complex64 {
    let sum: Complex64 = (0..=k)
        .map(|a| Complex64::from_polar(1.0, (2.0 * a as f64 - k as f64) * angle))
        .sum();
    sum * (-(k as f64) * length).exp()
}

/// Finite-dimensional representation χ of Γ by its generator images.
///
/// A symbol whose swapped-case form names a generator stands for that
/// generator's inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRep {
    dimension: usize,
    images: BTreeMap<char, DMatrix<Complex64>>,
    inverses: BTreeMap<char, DMatrix<Complex64>>,
}

#[derive(Deserialize)]
struct RawGammaRep {
    dimension: usize,
    images: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

pub(crate) fn swap_case(c: char) -> char {
    if c.is_uppercase() {
        c.to_lowercase().next().unwrap_or(c)
    } else {
        c.to_uppercase().next().unwrap_or(c)
    }
}

impl GammaRep {
    /// Trivial representation on ℂ^dimension: every word maps to the identity.
    pub fn trivial(dimension: usize) -> Self {
        GammaRep {
            dimension,
            images: BTreeMap::new(),
            inverses: BTreeMap::new(),
        }
    }

    pub fn new(dimension: usize, images: BTreeMap<char, DMatrix<Complex64>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidRep("dimension must be positive".into()));
        }
        let mut inverses = BTreeMap::new();
        for (&name, m) in &images {
            if m.nrows() != dimension || m.ncols() != dimension {
                return Err(Error::InvalidRep(format!(
                    "image of '{name}' is {}x{}, expected {dimension}x{dimension}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let inv = m
                .clone()
                .try_inverse()
                .filter(|inv| inv.iter().all(|z| z.is_finite()))
                .ok_or_else(|| Error::InvalidRep(format!("image of '{name}' is singular")))?;
            inverses.insert(name, inv);
        }
        Ok(GammaRep {
            dimension,
            images,
            inverses,
        })
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let raw: RawGammaRep = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
        let mut images = BTreeMap::new();
        for (name, rows) in raw.images {
            let mut chars = name.chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::Schema(format!("generator name '{name}' must be a single symbol"))),
            };
            if rows.len() != raw.dimension || rows.iter().any(|r| r.len() != raw.dimension) {
                return Err(Error::Schema(format!("image of '{name}' has the wrong shape")));
            }
            let m = DMatrix::from_fn(raw.dimension, raw.dimension, |i, j| {
                Complex64::new(rows[i][j][0], rows[i][j][1])
            });
            images.insert(symbol, m);
        }
        GammaRep::new(raw.dimension, images)
    }

    /// One-dimensional representation with scalar images.
    pub fn scalar(images: &[(char, Complex64)]) -> Result<Self> {
        GammaRep::new(
            1,
            images
                .iter()
                .map(|&(c, z)| (c, DMatrix::from_element(1, 1, z)))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_trivial(&self) -> bool {
        self.images.is_empty()
    }

    /// Checks that every generator name of a presentation has an image.
    pub fn check_names<'a>(&self, names: impl IntoIterator<Item = &'a char>) -> Result<()> {
        if self.is_trivial() {
            return Ok(());
        }
        for &n in names {
            if !self.images.contains_key(&n) {
                return Err(Error::InvalidRep(format!("no image for generator '{n}'")));
            }
        }
        Ok(())
    }

    fn image(&self, symbol: char) -> Result<&DMatrix<Complex64>> {
        self.images
            .get(&symbol)
            .or_else(|| self.inverses.get(&swap_case(symbol)))
            .ok_or(Error::UnknownSymbol(symbol))
    }
}

/// tr χ(word): trace of the ordered product of generator images.
pub fn character_chi(chi: &GammaRep, word: &str) -> Result<Complex64> {
    if chi.is_trivial() {
        return Ok(Complex64::new(chi.dimension as f64, 0.0));
    }
    let mut acc = DMatrix::<Complex64>::identity(chi.dimension, chi.dimension);
    for c in word.chars() {
        acc = acc * chi.image(c)?;
    }
    Ok(acc.trace())
}

/// Normalization and optional coefficient override for the Plancherel density.
#[derive(Clone, Debug, PartialEq)]
pub struct PlancherelConfig {
    pub normalization: f64,
    /// Even-degree coefficients [c₀, c₂, c₄, …] of P(iλ) in powers of λ.
    pub coefficients: Option<Vec<f64>>,
}

impl Default for PlancherelConfig {
    fn default() -> Self {
        PlancherelConfig {
            normalization: 1.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI),
            coefficients: None,
        }
    }
}

/// Even polynomial P_σ(iλ) = normalization · Σ_j coefficients[j] λ^j.
#[derive(Clone, Debug, PartialEq)]
pub struct PlancherelPoly {
    coefficients: Vec<f64>,
    normalization: f64,
}

impl PlancherelPoly {
    /// Builds from coefficients indexed by degree in λ; odd ones must vanish.
    pub fn new(coefficients: Vec<f64>, normalization: f64) -> Result<Self> {
        if !(normalization.is_finite() && normalization > 0.0) {
            return Err(Error::InvalidRep("Plancherel normalization must be positive".into()));
        }
        if coefficients.iter().skip(1).step_by(2).any(|&c| c != 0.0) {
            return Err(Error::InvalidRep("Plancherel polynomial must be even".into()));
        }
        Ok(PlancherelPoly {
            coefficients,
            normalization,
        })
    }

    /// Builds from even coefficients [c₀, c₂, …].
    pub fn from_even(even: &[f64], normalization: f64) -> Result<Self> {
        let mut coefficients = vec![0.0; (2 * even.len()).saturating_sub(1)];
        for (j, &c) in even.iter().enumerate() {
            coefficients[2 * j] = c;
        }
        PlancherelPoly::new(coefficients, normalization)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// P(iλ).
    pub fn at_i_lambda(&self, lambda: Complex64) -> Complex64 {
        let sum = self
            .coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c);
        sum * self.normalization
    }

    /// P(z), i.e. the polynomial in iλ evaluated at iλ = z.
    pub fn at(&self, z: Complex64) -> Complex64 {
        self.at_i_lambda(Complex64::new(0.0, -1.0) * z)
    }

    /// ∫_ℝ e^{−tλ²} P(iλ) dλ in closed form from Gaussian moments.
    pub fn gaussian_integral(&self, t: f64) -> f64 {
        let mut moment = (std::f64::consts::PI / t).sqrt();
        let mut total = 0.0;
        for (j, &c) in self.coefficients.iter().step_by(2).enumerate() {
            total += c * moment;
            // ∫e^{−tλ²}λ^{2j+2} = (2j+1)/(2t) · ∫e^{−tλ²}λ^{2j}
            moment *= (2 * j + 1) as f64 / (2.0 * t);
        }
        total * self.normalization
    }
}

/// The Plancherel polynomial of σ. For d = 3 it is c(λ² + k²); other
/// dimensions need explicit coefficients in the configuration.
pub fn plancherel(sigma: &MRep, config: &PlancherelConfig) -> Result<PlancherelPoly> {
    if let Some(even) = &config.coefficients {
        return PlancherelPoly::from_even(even, config.normalization);
    }
    if sigma.dimension != 3 {
        return Err(Error::Unsupported(
            "Plancherel polynomials for d > 3 need explicit coefficients".into(),
        ));
    }
    let k = sigma.last();
    PlancherelPoly::from_even(&[k * k, 1.0], config.normalization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn det_oracle(l: f64, theta: f64) -> f64 {
        // det(I − e^{−l} R(θ)) of the real 2×2 rotation block
        let q = (-l).exp();
        let m = nalgebra::Matrix2::new(1.0 - q * theta.cos(), q * theta.sin(), -q * theta.sin(), 1.0 - q * theta.cos());
        m.determinant()
    }

    #[test]
    fn weyl_action_examples() {
        assert_eq!(weyl_action(&MRep::d3(2.0).unwrap()).last(), -2.0);
        assert_eq!(weyl_action(&MRep::d3(0.0).unwrap()), MRep::d3(0.0).unwrap());
        let s = MRep::spin(5).unwrap();
        assert_eq!(weyl_action(&s).weight(), vec![0.5, -0.5]);
        assert_eq!(weyl_action(&MRep::half_spin(5, true).unwrap()), MRep::half_spin(5, false).unwrap());
    }

    #[test]
    fn case_examples() {
        assert_eq!(case_of(&MRep::d3(1.0).unwrap()), WeylCase::B);
        assert_eq!(case_of(&MRep::d3(0.0).unwrap()), WeylCase::A);
        assert_eq!(case_of(&MRep::new(5, &[1.0, 0.0]).unwrap()), WeylCase::A);
    }

    #[test]
    fn weight_validation() {
        assert!(MRep::new(5, &[1.0, 0.5]).is_err());
        assert!(MRep::new(5, &[0.0, 1.0]).is_err());
        assert!(MRep::new(5, &[1.0, -1.0]).is_ok());
        assert!(MRep::new(4, &[1.0]).is_err());
        assert!(MRep::d3(0.3).is_err());
        assert!(MRep::d3(-1.5).is_ok());
    }

    #[test]
    fn character_sigma_examples() {
        let ch = |k: f64, t: f64| character_sigma(&MRep::d3(k).unwrap(), t).unwrap();
        assert!((ch(1.0, 0.0) - 1.0).norm() < 1e-15);
        assert!((ch(2.0, PI / 2.0) + 1.0).norm() < 1e-15);
        assert!((ch(-1.0, PI / 3.0) - Complex64::from_polar(1.0, -PI / 3.0)).norm() < 1e-15);
        assert!(matches!(character_sigma(&MRep::spin(5).unwrap(), 0.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn character_chi_examples() {
        let trivial = GammaRep::trivial(3);
        assert_eq!(character_chi(&trivial, "abAB").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(character_chi(&trivial, "").unwrap(), Complex64::new(3.0, 0.0));
        let scalar = GammaRep::scalar(&[('g', Complex64::new(2.0, 0.0))]).unwrap();
        assert_eq!(character_chi(&scalar, "gg").unwrap(), Complex64::new(4.0, 0.0));
        assert!((character_chi(&scalar, "gG").unwrap() - 1.0).norm() < 1e-15);
        assert!(matches!(character_chi(&scalar, "x"), Err(Error::UnknownSymbol('x'))));
    }

    #[test]
    fn gamma_rep_json() {
        let chi = GammaRep::from_json(r#"{"dimension":2,"images":{"a":[[[0,0],[1,0]],[[1,0],[0,0]]]}}"#).unwrap();
        assert_eq!(character_chi(&chi, "a").unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(character_chi(&chi, "aa").unwrap(), Complex64::new(2.0, 0.0));
        assert!(GammaRep::from_json(r#"{"dimension":1,"images":{"a":[[[0,0]]]}}"#).is_err());
    }

    #[test]
    fn ad_nbar_det_examples() {
        let l = 2f64.ln();
        assert!((ad_nbar_det(l, 0.0).re - 0.25).abs() < 1e-15);
        assert!((ad_nbar_det(l, PI).re - 2.25).abs() < 1e-15);
        assert!((ad_nbar_det(l, 0.0).re - det_oracle(l, 0.0)).abs() < 1e-15);
        assert!((ad_nbar_det(20.0, 1.0) - 1.0).norm() <= 3.0 * (-20f64).exp());
    }

    #[test]
    fn sym_power_examples() {
        assert!((sym_power_trace(0, 1.0, 0.3) - 1.0).norm() < 1e-15);
        assert!((sym_power_trace(1, 2f64.ln(), 0.0) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn sym_power_generating_function() {
        let (l, theta) = (0.7, 1.1);
        let x = (-0.5f64).exp();
        let partial: Complex64 = (0..200).map(|k| sym_power_trace(k, l, theta) * x.powi(k as i32)).sum();
        let exact = 1.0 / ad_nbar_det(l + 0.5, theta);
        let q = x * (-l).exp();
        let tail = 201.0 * q.powi(200) / (1.0 - q).powi(2);
        assert!((partial - exact).norm() <= tail + 1e-14);
    }

    #[test]
    fn c_shift_examples() {
        assert_eq!(c_shift(&MRep::d3(1.0).unwrap()), 0.0);
        assert_eq!(c_shift(&MRep::d3(0.0).unwrap()), -1.0);
        assert_eq!(c_shift(&MRep::d3(2.0).unwrap()), 3.0);
    }

    #[test]
    fn plancherel_examples() {
        let cfg = PlancherelConfig::default();
        let p0 = plancherel(&MRep::d3(0.0).unwrap(), &cfg).unwrap();
        assert_eq!(p0.coefficients(), &[0.0, 0.0, 1.0]);
        let plus = plancherel(&MRep::half_spin(3, true).unwrap(), &cfg).unwrap();
        let minus = plancherel(&MRep::half_spin(3, false).unwrap(), &cfg).unwrap();
        assert_eq!(plus, minus);
        for k in -4..=4 {
            let p = plancherel(&MRep::d3(k as f64 / 2.0).unwrap(), &cfg).unwrap();
            assert_eq!(p.coefficients()[1], 0.0);
        }
        assert!(matches!(plancherel(&MRep::spin(5).unwrap(), &cfg), Err(Error::Unsupported(_))));
        assert!(PlancherelPoly::new(vec![1.0, 0.5], 1.0).is_err());
    }

    #[test]
    fn plancherel_evaluation() {
        let p = plancherel(&MRep::d3(2.0).unwrap(), &PlancherelConfig { normalization: 1.0, coefficients: None }).unwrap();
        // P(iλ) = λ² + 4, so P(z) = 4 − z²
        assert!((p.at_i_lambda(Complex64::new(3.0, 0.0)) - 13.0).norm() < 1e-14);
        assert!((p.at(Complex64::new(3.0, 0.0)) + 5.0).norm() < 1e-14);
        let t: f64 = 0.7;
        let expected = PI.sqrt() / (2.0 * t.powf(1.5)) + 4.0 * (PI / t).sqrt();
        assert!((p.gaussian_integral(t) - expected).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn weyl_involution(k2 in -20i64..20) {
            let s = MRep::d3(k2 as f64 / 2.0).unwrap();
            prop_assert_eq!(weyl_action(&weyl_action(&s)), s);
        }

        #[test]
        fn character_sum_and_difference(k2 in -20i64..20, theta in -PI..PI) {
            let s = MRep::d3(k2 as f64 / 2.0).unwrap();
            let k = s.last();
            let a = character_sigma(&s, theta).unwrap();
            let b = character_sigma(&weyl_action(&s), theta).unwrap();
            prop_assert!((a + b - 2.0 * (k * theta).cos()).norm() < 1e-12);
            prop_assert!((a - b - Complex64::new(0.0, 2.0 * (k * theta).sin())).norm() < 1e-12);
        }

        #[test]
        fn det_matches_rotation_block(l in 0.01f64..10.0, theta in -PI..PI) {
            prop_assert!((ad_nbar_det(l, theta).re - det_oracle(l, theta)).abs() < 1e-12);
        }

        #[test]
        fn chi_cyclic_invariance(word in "[abAB]{1,8}", r in 0usize..8) {
            let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.5, 3.0].map(|x| Complex64::new(x, 0.1)));
            let b = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.3].map(|x| Complex64::new(x, -0.2)));
            let chi = GammaRep::new(2, [('a', a), ('b', b)].into_iter().collect()).unwrap();
            let r = r % word.len();
            let rotated = format!("{}{}", &word[r..], &word[..r]);
            let x = character_chi(&chi, &word).unwrap();
            let y = character_chi(&chi, &rotated).unwrap();
            prop_assert!((x - y).norm() <= 1e-9 * x.norm().max(1.0));
        }

        #[test]
        fn plancherel_weyl_invariant(k2 in -20i64..20) {
            let s = MRep::d3(k2 as f64 / 2.0).unwrap();
            let cfg = PlancherelConfig::default();
            prop_assert_eq!(plancherel(&s, &cfg).unwrap(), plancherel(&weyl_action(&s), &cfg).unwrap());
        }
    }
}
