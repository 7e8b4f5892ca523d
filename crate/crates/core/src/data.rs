//! Shared domain types: length spectra, operator spectra, singularity records.
//!
//! Everything here is validated at construction and immutable afterwards.
//! Complex numbers in text formats are `[re, im]` pairs except where the
//! operator-spectrum schema spells out `re`/`im` fields.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default comparison tolerance for ingested length data.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Two eigenvalues closer than `EIGEN_MATCH_TOL * max(1, |λ|)` are the same eigenvalue.
pub const EIGEN_MATCH_TOL: f64 = 1e-9;

/// Reduces an angle to the branch `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    // rem_euclid can land exactly on -π after the shift only through rounding
    if r <= -PI {
        r += 2.0 * PI;
    }
    r
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

pub(crate) mod pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}

/// One Γ-conjugacy class, i.e. one closed geodesic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub length: f64,
    /// Holonomy rotation angle in `(-π, π]`.
    pub angle: f64,
    /// Power of the underlying primitive class.
    pub multiplicity: u32,
    pub primitive: bool,
    #[serde(default)]
    pub word: Option<String>,
    /// Supplied trace of σ(m_γ), used when the M-character cannot be computed (d > 3).
    #[serde(default, with = "pair", skip_serializing_if = "Option::is_none")]
    pub sigma_trace: Option<Complex64>,
    /// Supplied trace of wσ(m_γ) (d > 3).
    #[serde(default, with = "pair", skip_serializing_if = "Option::is_none")]
    pub wsigma_trace: Option<Complex64>,
    /// Supplied det(Id - Ad(m_γ a_γ)|n̄) (d > 3).
    #[serde(default, with = "pair", skip_serializing_if = "Option::is_none")]
    pub nbar_det: Option<Complex64>,
}

impl GeodesicClass {
    pub fn new(length: f64, angle: f64, multiplicity: u32) -> Self {
        GeodesicClass {
            length,
            angle,
            multiplicity,
            primitive: multiplicity == 1,
            word: None,
            sigma_trace: None,
            wsigma_trace: None,
            nbar_det: None,
        }
    }

    pub fn with_word(mut self, word: impl Into<String>) -> Self {
        self.word = Some(word.into());
        self
    }

    fn check(&self, index: usize) -> Result<()> {
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::invariant(Some(index), format!("length {} is not positive", self.length)));
        }
        if !(self.angle.is_finite() && self.angle > -PI && self.angle <= PI) {
            return Err(Error::invariant(Some(index), format!("angle {} outside (-π, π]", self.angle)));
        }
        if self.multiplicity == 0 {
            return Err(Error::invariant(Some(index), "multiplicity must be at least 1"));
        }
        if self.primitive != (self.multiplicity == 1) {
            return Err(Error::invariant(
                Some(index),
                format!("primitive = {} contradicts multiplicity {}", self.primitive, self.multiplicity),
            ));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawLengthSpectrum {
    dimension: u32,
    cutoff: f64,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    volume: Option<f64>,
    #[serde(default)]
    source: String,
    classes: Vec<GeodesicClass>,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

/// All classes with length up to `cutoff`, plus manifold metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthSpectrum {
    dimension: u32,
    cutoff: f64,
    tolerance: f64,
    volume: Option<f64>,
    source: String,
    classes: Vec<GeodesicClass>,
}

impl LengthSpectrum {
    /// Builds and validates a spectrum. Classes must already be sorted by length.
    pub fn new(
        dimension: u32,
        cutoff: f64,
        tolerance: f64,
        volume: Option<f64>,
        source: impl Into<String>,
        classes: Vec<GeodesicClass>,
    ) -> Result<Self> {
        let spectrum = LengthSpectrum {
            dimension,
            cutoff,
            tolerance,
            volume,
            source: source.into(),
            classes,
        };
        spectrum.validate()?;
        Ok(spectrum)
    }

    /// An empty spectrum, handy for identity-only evaluations.
    pub fn empty(dimension: u32, cutoff: f64) -> Result<Self> {
        Self::new(dimension, cutoff, DEFAULT_TOLERANCE, None, "", Vec::new())
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn volume(&self) -> Option<f64> {
        self.volume
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn classes(&self) -> &[GeodesicClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Copy with a different volume (validated).
    pub fn with_volume(&self, volume: Option<f64>) -> Result<Self> {
        let mut out = self.clone();
        out.volume = volume;
        out.validate()?;
        Ok(out)
    }

    /// Restriction to classes of length `<= cutoff`.
    pub fn truncate(&self, cutoff: f64) -> Result<Self> {
        let classes = self
            .classes
            .iter()
            .filter(|c| c.length <= cutoff)
            .cloned()
            .collect();
        Self::new(self.dimension, cutoff.min(self.cutoff), self.tolerance, self.volume, self.source.clone(), classes)
    }

    fn validate(&self) -> Result<()> {
        if self.dimension < 3 || self.dimension % 2 == 0 {
            return Err(Error::invariant(None, format!("dimension {} is not an odd integer >= 3", self.dimension)));
        }
        if !(self.cutoff.is_finite() && self.cutoff > 0.0) {
            return Err(Error::invariant(None, "cutoff must be positive"));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::invariant(None, "tolerance must be positive"));
        }
        if let Some(v) = self.volume {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invariant(None, "volume must be positive"));
            }
        }
        let tol = self.tolerance;
        for (i, c) in self.classes.iter().enumerate() {
            c.check(i)?;
            if c.length > self.cutoff {
                return Err(Error::invariant(
                    Some(i),
                    format!("length {} exceeds cutoff {}", c.length, self.cutoff),
                ));
            }
            if i > 0 && c.length < self.classes[i - 1].length {
                return Err(Error::invariant(Some(i), "classes are not sorted by length"));
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            for (j, d) in self.classes.iter().enumerate().skip(i + 1) {
                if d.length - c.length > tol {
                    break;
                }
                if angle_distance(c.angle, d.angle) <= tol {
                    return Err(Error::invariant(
                        Some(j),
                        format!("duplicates class {i} (length {}, angle {})", d.length, d.angle),
                    ));
                }
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.multiplicity > 1 && self.find_root(c, c.multiplicity).is_none() {
                return Err(Error::invariant(
                    Some(i),
                    format!(
                        "multiplicity {} but no root class of length {} is present",
                        c.multiplicity,
                        c.length / c.multiplicity as f64
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Index of a class `γ0` with `γ0^n` matching `class` in length and angle.
    fn find_root(&self, class: &GeodesicClass, n: u32) -> Option<usize> {
        let nf = n as f64;
        let target = class.length / nf;
        let tol = self.tolerance;
        let start = self.classes.partition_point(|c| c.length < target - tol);
        self.classes[start..]
            .iter()
            .take_while(|c| c.length <= target + tol)
            .position(|c| angle_distance(nf * c.angle, class.angle) <= nf * tol)
            .map(|p| p + start)
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let raw: RawLengthSpectrum =
            serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
        Self::new(raw.dimension, raw.cutoff, raw.tolerance, raw.volume, raw.source, raw.classes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("length spectrum serializes")
    }

    /// The JSON document as a value, for embedding in larger records.
    pub fn to_value(&self) -> serde_json::Value {
        let raw = RawLengthSpectrum {
            dimension: self.dimension,
            cutoff: self.cutoff,
            tolerance: self.tolerance,
            volume: self.volume,
            source: self.source.clone(),
            classes: self.classes.clone(),
        };
        serde_json::to_value(&raw).expect("length spectrum serializes")
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let raw: RawLengthSpectrum = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        Self::new(raw.dimension, raw.cutoff, raw.tolerance, raw.volume, raw.source, raw.classes)
    }

    /// CSV export: header `length,angle,multiplicity,primitive,word`, one class per row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["length", "angle", "multiplicity", "primitive", "word"])
            .map_err(csv_err)?;
        for c in &self.classes {
            w.write_record([
                c.length.to_string(),
                c.angle.to_string(),
                c.multiplicity.to_string(),
                c.primitive.to_string(),
                c.word.clone().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Parses a length-spectrum JSON document.
pub fn parse_length_spectrum(document: &str) -> Result<LengthSpectrum> {
    LengthSpectrum::from_json(document)
}

/// An eigenvalue with its algebraic multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: Complex64,
    pub multiplicity: u32,
}

impl Eigenpair {
    pub fn new(value: Complex64, multiplicity: u32) -> Self {
        Eigenpair { value, multiplicity }
    }

    pub fn real(value: f64, multiplicity: u32) -> Self {
        Eigenpair::new(Complex64::new(value, 0.0), multiplicity)
    }
}

pub(crate) fn same_eigenvalue(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= EIGEN_MATCH_TOL * a.norm().max(b.norm()).max(1.0)
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    re: f64,
    im: f64,
    multiplicity: u32,
}

#[derive(Serialize, Deserialize)]
struct RawSpectrum {
    entries: Vec<RawEntry>,
}

fn validate_entries(entries: &[Eigenpair]) -> Result<()> {
    for (i, e) in entries.iter().enumerate() {
        if !e.value.is_finite() {
            return Err(Error::invariant(Some(i), "eigenvalue is not finite"));
        }
        if e.multiplicity == 0 {
            return Err(Error::invariant(Some(i), "multiplicity must be at least 1"));
        }
        if let Some(j) = entries[..i].iter().position(|f| same_eigenvalue(f.value, e.value)) {
            return Err(Error::invariant(Some(i), format!("eigenvalue {} repeats entry {j}", e.value)));
        }
    }
    Ok(())
}

fn entries_from_json(document: &str) -> Result<Vec<Eigenpair>> {
    let raw: RawSpectrum = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
    Ok(raw
        .entries
        .into_iter()
        .map(|e| Eigenpair::new(Complex64::new(e.re, e.im), e.multiplicity))
        .collect())
}

fn entries_to_json(entries: &[Eigenpair]) -> String {
    let raw = RawSpectrum {
        entries: entries
            .iter()
            .map(|e| RawEntry {
                re: e.value.re,
                im: e.value.im,
                multiplicity: e.multiplicity,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("spectrum serializes")
}

fn multiplicity_in(entries: &[Eigenpair], value: Complex64) -> u32 {
    entries
        .iter()
        .find(|e| same_eigenvalue(e.value, value))
        .map_or(0, |e| e.multiplicity)
}

macro_rules! operator_spectrum {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Default)]
        pub struct $name {
            entries: Vec<Eigenpair>,
        }

        impl $name {
            pub fn new(entries: Vec<Eigenpair>) -> Result<Self> {
                validate_entries(&entries)?;
                Ok($name { entries })
            }

            pub fn entries(&self) -> &[Eigenpair] {
                &self.entries
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn total_multiplicity(&self) -> u64 {
                self.entries.iter().map(|e| e.multiplicity as u64).sum()
            }

            /// m(λ), zero when λ is not an eigenvalue.
            pub fn multiplicity(&self, value: Complex64) -> u32 {
                multiplicity_in(&self.entries, value)
            }

            pub fn from_json(document: &str) -> Result<Self> {
                Self::new(entries_from_json(document)?)
            }

            pub fn to_json(&self) -> String {
                entries_to_json(&self.entries)
            }
        }
    };
}

operator_spectrum!(
    /// Eigenvalues of the twisted Dirac operator with algebraic multiplicities.
    DiracSpectrum
);

operator_spectrum!(
    /// Eigenvalues of the twisted Bochner–Laplace type operator `A = D²`.
    LaplaceSpectrum
);

/// Squares a Dirac spectrum: μ = λ², multiplicities of colliding squares are added.
pub fn square_spectrum(dirac: &DiracSpectrum) -> LaplaceSpectrum {
    let mut out: Vec<Eigenpair> = Vec::new();
    for e in dirac.entries() {
        let mu = e.value * e.value;
        match out.iter_mut().find(|f| same_eigenvalue(f.value, mu)) {
            Some(f) => f.multiplicity += e.multiplicity,
            None => out.push(Eigenpair::new(mu, e.multiplicity)),
        }
    }
    LaplaceSpectrum { entries: out }
}

/// m_s(λ) = m(λ) − m(−λ).
pub fn super_multiplicity(dirac: &DiracSpectrum, lambda: Complex64) -> i64 {
    dirac.multiplicity(lambda) as i64 - dirac.multiplicity(-lambda) as i64
}

/// The five zeta functions of the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaKind {
    Selberg,
    Ruelle,
    Symmetrized,
    Super,
    SuperRuelle,
}

impl ZetaKind {
    pub const ALL: [ZetaKind; 5] = [
        ZetaKind::Selberg,
        ZetaKind::Ruelle,
        ZetaKind::Symmetrized,
        ZetaKind::Super,
        ZetaKind::SuperRuelle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZetaKind::Selberg => "selberg",
            ZetaKind::Ruelle => "ruelle",
            ZetaKind::Symmetrized => "symmetrized",
            ZetaKind::Super => "super",
            ZetaKind::SuperRuelle => "super_ruelle",
        }
    }

    /// Kinds defined only when σ is not Weyl-invariant.
    pub fn needs_case_b(self) -> bool {
        matches!(self, ZetaKind::Symmetrized | ZetaKind::Super | ZetaKind::SuperRuelle)
    }
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ZetaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZetaKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown zeta kind '{s}'")))
    }
}

/// A catalogued zero or pole: `order` is the residue of the logarithmic derivative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityRecord {
    #[serde(with = "complex_pair")]
    pub location: Complex64,
    pub order: i64,
    pub zeta_kind: ZetaKind,
}

pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// A truncated series value with a model-based estimate of the omitted part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl TruncatedValue {
    pub fn zero() -> Self {
        TruncatedValue {
            value: Complex64::new(0.0, 0.0),
            tail_bound: 0.0,
            terms_used: 0,
        }
    }

    /// `a·self + b·other`, with tail bounds combined in absolute value.
    pub fn combine(self, a: f64, other: TruncatedValue, b: f64) -> TruncatedValue {
        TruncatedValue {
            value: self.value * a + other.value * b,
            tail_bound: a.abs() * self.tail_bound + b.abs() * other.tail_bound,
            terms_used: self.terms_used + other.terms_used,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dirac(pairs: &[(f64, u32)]) -> DiracSpectrum {
        DiracSpectrum::new(pairs.iter().map(|&(v, m)| Eigenpair::real(v, m)).collect()).unwrap()
    }

    #[test]
    fn wrap_angle_branch() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(0.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn parse_empty_spectrum() {
        let s = parse_length_spectrum(
            r#"{"dimension":3,"cutoff":1.0,"tolerance":1e-9,"volume":null,"source":"","classes":[]}"#,
        )
        .unwrap();
        assert!(s.is_empty());
        assert_eq!(s.cutoff(), 1.0);
    }

    #[test]
    fn parse_single_class() {
        let s = parse_length_spectrum(
            r#"{"dimension":3,"cutoff":2.0,"tolerance":1e-9,"volume":null,"source":"toy",
                "classes":[{"length":1.0,"angle":0.0,"multiplicity":1,"primitive":true,"word":null}]}"#,
        )
        .unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.classes()[0].primitive);
    }

    #[test]
    fn missing_root_is_an_invariant_violation() {
        let err = parse_length_spectrum(
            r#"{"dimension":3,"cutoff":3.0,"tolerance":1e-9,"volume":null,"source":"",
                "classes":[{"length":2.0,"angle":0.0,"multiplicity":2,"primitive":false,"word":null}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invariant { index: Some(0), .. }), "{err}");
    }

    #[test]
    fn root_with_doubled_angle_is_accepted() {
        let classes = vec![
            GeodesicClass::new(1.0, PI / 3.0, 1),
            GeodesicClass::new(2.0, 2.0 * PI / 3.0, 2),
        ];
        LengthSpectrum::new(3, 3.0, 1e-9, None, "", classes).unwrap();
        // a root whose doubled angle wraps around the branch cut
        let classes = vec![
            GeodesicClass::new(1.0, 2.0, 1),
            GeodesicClass::new(2.0, wrap_angle(4.0), 2),
        ];
        LengthSpectrum::new(3, 3.0, 1e-9, None, "", classes).unwrap();
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_length_spectrum("{}"), Err(Error::Schema(_))));
        assert!(matches!(
            parse_length_spectrum(r#"{"dimension":"three","cutoff":1.0,"classes":[]}"#),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn class_invariants() {
        let bad = |classes: Vec<GeodesicClass>| LengthSpectrum::new(3, 5.0, 1e-9, None, "", classes).unwrap_err();
        assert!(matches!(bad(vec![GeodesicClass::new(-1.0, 0.0, 1)]), Error::Invariant { .. }));
        assert!(matches!(bad(vec![GeodesicClass::new(6.0, 0.0, 1)]), Error::Invariant { .. }));
        let mut c = GeodesicClass::new(1.0, 0.0, 1);
        c.primitive = false;
        assert!(matches!(bad(vec![c]), Error::Invariant { .. }));
        assert!(matches!(
            bad(vec![GeodesicClass::new(2.0, 0.0, 1), GeodesicClass::new(1.0, 0.0, 1)]),
            Error::Invariant { index: Some(1), .. }
        ));
        assert!(matches!(
            bad(vec![GeodesicClass::new(1.0, 0.5, 1), GeodesicClass::new(1.0 + 1e-12, 0.5, 1)]),
            Error::Invariant { index: Some(1), .. }
        ));
        // same length, different holonomy: fine
        LengthSpectrum::new(3, 5.0, 1e-9, None, "", vec![GeodesicClass::new(1.0, 0.5, 1), GeodesicClass::new(1.0, -0.5, 1)])
            .unwrap();
        assert!(LengthSpectrum::new(4, 5.0, 1e-9, None, "", vec![]).is_err());
    }

    #[test]
    fn csv_export_has_header() {
        let s = LengthSpectrum::new(
            3,
            3.0,
            1e-9,
            None,
            "",
            vec![GeodesicClass::new(1.5, 0.25, 1).with_word("ab")],
        )
        .unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "length,angle,multiplicity,primitive,word\n1.5,0.25,1,true,ab\n");
    }

    #[test]
    fn square_spectrum_examples() {
        assert!(square_spectrum(&DiracSpectrum::default()).is_empty());
        let sq = square_spectrum(&dirac(&[(1.0, 2), (-1.0, 1)]));
        assert_eq!(sq.entries(), &[Eigenpair::real(1.0, 3)]);
        let sq = square_spectrum(&DiracSpectrum::new(vec![Eigenpair::new(c(0.0, 2.0), 1)]).unwrap());
        assert_eq!(sq.entries().len(), 1);
        assert!((sq.entries()[0].value - c(-4.0, 0.0)).norm() < 1e-15);
        assert_eq!(sq.entries()[0].multiplicity, 1);
    }

    #[test]
    fn super_multiplicity_examples() {
        let d = dirac(&[(1.0, 2), (-1.0, 1)]);
        assert_eq!(super_multiplicity(&d, c(1.0, 0.0)), 1);
        assert_eq!(super_multiplicity(&d, c(-1.0, 0.0)), -1);
        assert_eq!(super_multiplicity(&dirac(&[(3.0, 5)]), c(2.0, 0.0)), 0);
    }

    #[test]
    fn operator_spectrum_rejects_duplicates() {
        assert!(DiracSpectrum::new(vec![Eigenpair::real(1.0, 1), Eigenpair::real(1.0, 2)]).is_err());
        assert!(DiracSpectrum::new(vec![Eigenpair::real(1.0, 0)]).is_err());
    }

    #[test]
    fn operator_spectrum_json() {
        let d = DiracSpectrum::from_json(r#"{"entries":[{"re":1.0,"im":0.5,"multiplicity":2}]}"#).unwrap();
        assert_eq!(d.entries()[0], Eigenpair::new(c(1.0, 0.5), 2));
        assert_eq!(DiracSpectrum::from_json(&d.to_json()).unwrap(), d);
        assert!(matches!(DiracSpectrum::from_json(r#"{"entries":[{"re":1.0}]}"#), Err(Error::Schema(_))));
    }

    #[test]
    fn zeta_kind_names_round_trip() {
        for k in ZetaKind::ALL {
            assert_eq!(k.name().parse::<ZetaKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
    }
}
