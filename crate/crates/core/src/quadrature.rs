//! Adaptive Gauss–Kronrod (G7/K15) quadrature for complex-valued integrands.
//!
//! Finite intervals are bisected adaptively, worst interval first. Infinite
//! ranges are handled by the rational substitution `x = a + u/(1-u)`, which
//! maps `[0, 1)` onto `[a, ∞)`; integrands that decay at least like `x^-2`
//! stay bounded under it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Positive Kronrod abscissae; odd indices are the Gauss nodes, index 7 is the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 20_000;

/// Absolute / relative stopping tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-11,
            rel: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    (value, error)
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        });
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_err = error;

    while total_err > tol.target(total) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tolerance: tol.target(total),
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tolerance: tol.target(total),
            });
        }
        let (lv, le) = kronrod15(&f, worst.a, mid);
        let (rv, re) = kronrod15(&f, mid, worst.b);
        evaluations += 30;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        // resum periodically to shed accumulated rounding in the running totals
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }

    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(QuadResult {
        value: pieces.iter().map(|p| p.value).sum(),
        error: pieces.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

/// Integrates `f` over `[a, ∞)`.
pub fn integrate_to_infinity<F>(f: F, a: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate(
        |u| {
            let w = 1.0 - u;
            let val = f(a + u / w) / (w * w);
            if val.is_finite() {
                val
            } else {
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Integrates `f` over the whole real line: a compact window
/// `[centre - half_width, centre + half_width]` plus two substituted tails.
pub fn integrate_real_line<F>(f: F, centre: f64, half_width: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let part = Tolerance {
        abs: tol.abs / 3.0,
        rel: tol.rel,
    };
    let lo = centre - half_width;
    let hi = centre + half_width;
    let core = integrate(&f, lo, hi, part)?;
    let right = integrate_to_infinity(&f, hi, part)?;
    let left = integrate_to_infinity(|x| f(2.0 * lo - x), lo, part)?;
    Ok(QuadResult {
        value: left.value + core.value + right.value,
        error: left.error + core.error + right.error,
        evaluations: left.evaluations + core.evaluations + right.evaluations,
    })
}

/// Integrates a holomorphic-path integrand along the straight segment `z0 → z1`.
pub fn integrate_segment<F>(f: F, z0: Complex64, z1: Complex64, tol: Tolerance) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let dz = z1 - z0;
    let inner = integrate(|tau| f(z0 + dz * tau), 0.0, 1.0, Tolerance {
        abs: tol.abs / dz.norm().max(f64::MIN_POSITIVE),
        rel: tol.rel,
    })?;
    Ok(QuadResult {
        value: inner.value * dz,
        error: inner.error * dz.norm(),
        evaluations: inner.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn polynomials_are_exact() {
        // K15 integrates degree <= 22 exactly.
        let r = integrate(real(|x| x.powi(10) - 3.0 * x.powi(3)), -1.0, 2.0, Tolerance::default()).unwrap();
        let exact = (2f64.powi(11) + 1.0) / 11.0 - 3.0 * (16.0 - 1.0) / 4.0;
        assert!((r.value.re - exact).abs() < 1e-12);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn oscillatory_gaussian_matches_closed_form() {
        // ∫ e^{-x²} cos(5x) dx = √π e^{-25/4}
        let r = integrate_real_line(real(|x| (-x * x).exp() * (5.0 * x).cos()), 0.0, 7.0, Tolerance::absolute(1e-14)).unwrap();
        assert!((r.value.re - PI.sqrt() * (-6.25f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite_algebraic_decay() {
        // ∫_1^∞ x^{-2} dx = 1
        let r = integrate_to_infinity(real(|x| 1.0 / (x * x)), 1.0, Tolerance::absolute(1e-13)).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segment_integral_of_entire_function() {
        let z0 = Complex64::new(0.0, 0.0);
        let z1 = Complex64::new(1.0, 2.0);
        let r = integrate_segment(|z| z.exp(), z0, z1, Tolerance::absolute(1e-13)).unwrap();
        assert!((r.value - (z1.exp() - 1.0)).norm() < 1e-12);
    }

    #[test]
    fn non_integrable_tail_is_reported() {
        let err = integrate_to_infinity(real(|x| 1.0 / x), 1.0, Tolerance::absolute(1e-10));
        assert!(matches!(err, Err(Error::QuadratureFailure { .. })));
    }
}
