//! Length-spectrum enumeration for d = 3 from generators in SL(2, ℂ).
//!
//! Words are expanded breadth-first over the generators and their inverses
//! with immediate cancellation. Only cyclically reduced words in minimal
//! rotation are classified, by trace bucket first and (length, angle) second.

use std::collections::HashMap;
use std::path::Path;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::data::{angle_distance, wrap_angle, GeodesicClass, LengthSpectrum};
use crate::error::{Error, Result};
use crate::rep::swap_case;

pub type Mat2 = Matrix2<Complex64>;

/// Tolerance on |det g − 1| for generators.
pub const DET_TOLERANCE: f64 = 1e-12;

/// Eigenvalue moduli within this distance of 1 are not loxodromic.
pub const LOXODROMIC_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawMatrix {
    Flat([[f64; 2]; 4]),
    Nested([[[f64; 2]; 2]; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawGenerator {
    name: String,
    matrix: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<RawGenerator>,
    includes_inverses: bool,
}

/// Generators of Γ ⊂ SL(2, ℂ) with one symbol each.
///
/// When `includes_inverses` is false the inverse of generator `a` is written
/// with the swapped-case symbol `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    names: Vec<char>,
    generators: Vec<Mat2>,
    includes_inverses: bool,
}

impl GroupPresentation {
    pub fn new(generators: Vec<(char, Mat2)>, includes_inverses: bool) -> Result<Self> {
        let mut names = Vec::with_capacity(generators.len());
        let mut mats = Vec::with_capacity(generators.len());
        for (name, m) in generators {
            let det = m.determinant();
            if (det - 1.0).norm() > DET_TOLERANCE {
                return Err(Error::InvalidPresentation(format!(
                    "generator '{name}' has determinant {det}, expected 1"
                )));
            }
            if names.contains(&name) {
                return Err(Error::InvalidPresentation(format!("generator name '{name}' repeats")));
            }
            names.push(name);
            mats.push(m);
        }
        if !includes_inverses {
            for &n in &names {
                let inv = swap_case(n);
                if inv == n {
                    return Err(Error::InvalidPresentation(format!(
                        "'{n}' has no case pair to denote its inverse"
                    )));
                }
                if names.contains(&inv) {
                    return Err(Error::InvalidPresentation(format!(
                        "'{inv}' is reserved for the inverse of '{n}'"
                    )));
                }
            }
        }
        Ok(GroupPresentation {
            names,
            generators: mats,
            includes_inverses,
        })
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let raw: RawPresentation = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
        let mut gens = Vec::with_capacity(raw.generators.len());
        for g in raw.generators {
            let mut chars = g.name.chars();
            let name = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::Schema(format!("generator name '{}' must be a single symbol", g.name))),
            };
            let e = match g.matrix {
                RawMatrix::Flat(e) => e,
                RawMatrix::Nested([[a, b], [c, d]]) => [a, b, c, d],
            };
            let z = |p: [f64; 2]| Complex64::new(p[0], p[1]);
            gens.push((name, Mat2::new(z(e[0]), z(e[1]), z(e[2]), z(e[3]))));
        }
        GroupPresentation::new(gens, raw.includes_inverses)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.raw()).expect("presentation serializes")
    }

    fn raw(&self) -> RawPresentation {
        RawPresentation {
            generators: self
                .names
                .iter()
                .zip(&self.generators)
                .map(|(n, m)| RawGenerator {
                    name: n.to_string(),
                    matrix: RawMatrix::Flat([m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]].map(|z| [z.re, z.im])),
                })
                .collect(),
            includes_inverses: self.includes_inverses,
        }
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn includes_inverses(&self) -> bool {
        self.includes_inverses
    }

    /// Full alphabet: generators, then formal inverses when not supplied.
    fn alphabet(&self) -> Alphabet {
        let mut symbols = self.names.clone();
        let mut mats = self.generators.clone();
        if !self.includes_inverses {
            for (n, m) in self.names.iter().zip(&self.generators) {
                symbols.push(swap_case(*n));
                mats.push(inverse_sl2(m));
            }
        }
        let size = symbols.len();
        let inverse = (0..size)
            .map(|i| {
                if self.includes_inverses {
                    (0..size).find(|&j| is_identity(&(mats[i] * mats[j]), 1e-12))
                } else {
                    Some((i + size / 2) % size)
                }
            })
            .collect();
        Alphabet { symbols, mats, inverse }
    }

    /// The matrix of a word over the generator symbols and their inverses.
    pub fn word_matrix(&self, word: &str) -> Result<Mat2> {
        let alphabet = self.alphabet();
        let mut acc = Mat2::identity();
        for c in word.chars() {
            let i = alphabet.symbols.iter().position(|&s| s == c).ok_or(Error::UnknownSymbol(c))?;
            acc *= alphabet.mats[i];
        }
        Ok(acc)
    }
}

struct Alphabet {
    symbols: Vec<char>,
    mats: Vec<Mat2>,
    inverse: Vec<Option<usize>>,
}

pub(crate) fn inverse_sl2(m: &Mat2) -> Mat2 {
    Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

fn is_identity(m: &Mat2, tol: f64) -> bool {
    (m - Mat2::identity()).iter().all(|z| z.norm() <= tol)
}

/// Bounds and tolerances for [`enumerate_spectrum`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub max_word_length: usize,
    pub length_cutoff: f64,
    pub trace_bucket_tolerance: f64,
    pub parallel_width: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_word_length: 6,
            length_cutoff: 5.0,
            trace_bucket_tolerance: 1e-9,
            parallel_width: 1,
        }
    }
}

impl EnumerationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_length == 0 || self.parallel_width == 0 {
            return Err(Error::InvalidPresentation(
                "max_word_length and parallel_width must be positive".into(),
            ));
        }
        if !(self.length_cutoff > 0.0 && self.length_cutoff.is_finite()) {
            return Err(Error::InvalidPresentation("length_cutoff must be positive".into()));
        }
        if !(self.trace_bucket_tolerance > 0.0 && self.trace_bucket_tolerance.is_finite()) {
            return Err(Error::InvalidPresentation("trace_bucket_tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Complex length (l, θ) of a loxodromic element of SL(2, ℂ).
pub fn complex_length(g: &Mat2) -> Result<(f64, f64)> {
    let tr = g.trace();
    let det = g.determinant();
    let root = (tr * tr - det * 4.0).sqrt();
    let (p, q) = (tr + root, tr - root);
    let big = if p.norm() >= q.norm() { p } else { q } * 0.5;
    let ratio = big * big / det;
    let modulus = big.norm() / det.norm().sqrt();
    if (modulus - 1.0).abs() <= LOXODROMIC_TOLERANCE {
        return Err(Error::NotLoxodromic { word: None, trace: tr });
    }
    Ok((ratio.norm().ln(), wrap_angle(ratio.arg())))
}

/// Trace bucket used to shortlist candidate conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyKey {
    pub re: i64,
    pub im: i64,
}

fn key_of_trace(tr: Complex64, tol: f64) -> ConjugacyKey {
    ConjugacyKey {
        re: (tr.re / tol).round() as i64,
        im: (tr.im / tol).round() as i64,
    }
}

pub fn conjugacy_key(g: &Mat2, tol: f64) -> ConjugacyKey {
    key_of_trace(g.trace(), tol)
}

/// Result of [`primitive_decomposition`]: classes plus indices whose root was ambiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub classes: Vec<GeodesicClass>,
    pub ambiguous: Vec<usize>,
}

/// Assigns each class the largest n for which an n-th root is present.
pub fn primitive_decomposition(classes: &[(f64, f64, Option<String>)], tol: f64) -> Decomposition {
    let min_length = classes.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let mut out = Vec::with_capacity(classes.len());
    let mut ambiguous = Vec::new();
    for (i, (l, theta, word)) in classes.iter().enumerate() {
        let max_n = ((l + tol) / min_length).floor().max(1.0) as u32;
        let mut multiplicity = 1;
        for n in (2..=max_n).rev() {
            let nf = n as f64;
            let roots = classes
                .iter()
                .filter(|(l0, t0, _)| (l0 - l / nf).abs() <= tol && angle_distance(nf * t0, *theta) <= nf * tol)
                .count();
            if roots > 0 {
                multiplicity = n;
                if roots > 1 {
                    ambiguous.push(i);
                }
                break;
            }
        }
        let mut class = GeodesicClass::new(*l, *theta, multiplicity);
        class.word = word.clone();
        out.push(class);
    }
    Decomposition { classes: out, ambiguous }
}

/// Spectrum plus enumeration diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationReport {
    pub spectrum: LengthSpectrum,
    /// Some word at the maximal word length was still shorter than the cutoff.
    pub cutoff_incomplete: bool,
    pub ambiguous_roots: Vec<usize>,
    pub words_examined: usize,
}

impl EnumerationReport {
    pub fn to_value(&self) -> serde_json::Value {
        serde_json::json!({
            "cutoff_incomplete": self.cutoff_incomplete,
            "ambiguous_roots": self.ambiguous_roots,
            "words_examined": self.words_examined,
            "spectrum": self.spectrum.to_value(),
        })
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let field = |name: &str| value.get(name).cloned().ok_or_else(|| Error::Schema(format!("missing field '{name}'")));
        let schema = |e: serde_json::Error| Error::Schema(e.to_string());
        Ok(EnumerationReport {
            cutoff_incomplete: serde_json::from_value(field("cutoff_incomplete")?).map_err(schema)?,
            ambiguous_roots: serde_json::from_value(field("ambiguous_roots")?).map_err(schema)?,
            words_examined: serde_json::from_value(field("words_examined")?).map_err(schema)?,
            spectrum: LengthSpectrum::from_value(field("spectrum")?)?,
        })
    }
}

#[derive(Clone)]
struct Word {
    letters: Vec<u8>,
    matrix: Mat2,
}

struct Candidate {
    word: String,
    trace: Complex64,
    length: f64,
    angle: f64,
}

fn is_minimal_rotation(letters: &[u8]) -> bool {
    (1..letters.len()).all(|r| {
        let rotated = letters[r..].iter().chain(&letters[..r]);
        letters.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

fn classify(word: &Word, alphabet: &Alphabet) -> Result<Option<Candidate>> {
    let letters = &word.letters;
    let (first, last) = (letters[0] as usize, letters[letters.len() - 1] as usize);
    if letters.len() > 1 && alphabet.inverse[last] == Some(first) {
        return Ok(None);
    }
    if !is_minimal_rotation(letters) || is_identity(&word.matrix, 1e-9) {
        return Ok(None);
    }
    let text: String = letters.iter().map(|&i| alphabet.symbols[i as usize]).collect();
    let (length, angle) = complex_length(&word.matrix).map_err(|e| match e {
        Error::NotLoxodromic { trace, .. } => Error::NotLoxodromic {
            word: Some(text.clone()),
            trace,
        },
        other => other,
    })?;
    Ok(Some(Candidate {
        word: text,
        trace: word.matrix.trace(),
        length,
        angle,
    }))
}

/// Enumerates conjugacy classes of length at most `cfg.length_cutoff` among
/// words of length at most `cfg.max_word_length`.
pub fn enumerate_spectrum(presentation: &GroupPresentation, cfg: &EnumerationConfig) -> Result<EnumerationReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel_width)
        .build()
        .map_err(|e| Error::InvalidPresentation(e.to_string()))?;
    pool.install(|| enumerate_in_pool(presentation, cfg))
}

fn enumerate_in_pool(presentation: &GroupPresentation, cfg: &EnumerationConfig) -> Result<EnumerationReport> {
    let alphabet = presentation.alphabet();
    let tol = cfg.trace_bucket_tolerance;
    let mut frontier: Vec<Word> = (0..alphabet.symbols.len())
        .map(|i| Word {
            letters: vec![i as u8],
            matrix: alphabet.mats[i],
        })
        .collect();
    let mut found: Vec<Candidate> = Vec::new();
    let mut buckets: HashMap<ConjugacyKey, Vec<usize>> = HashMap::new();
    let mut words_examined = 0;
    let mut cutoff_incomplete = false;

    for depth in 1..=cfg.max_word_length {
        if depth > 1 {
            frontier = frontier
                .par_iter()
                .flat_map_iter(|w| {
                    let last = *w.letters.last().expect("words are nonempty") as usize;
                    let alphabet = &alphabet;
                    (0..alphabet.symbols.len())
                        .filter(move |&j| alphabet.inverse[last] != Some(j))
                        .map(move |j| {
                            let mut letters = w.letters.clone();
                            letters.push(j as u8);
                            Word {
                                letters,
                                matrix: w.matrix * alphabet.mats[j],
                            }
                        })
                })
                .collect();
        }
        words_examined += frontier.len();
        let classified: Vec<Result<Option<Candidate>>> =
            frontier.par_iter().map(|w| classify(w, &alphabet)).collect();
        let mut level = Vec::new();
        for c in classified {
            if let Some(c) = c? {
                level.push(c);
            }
        }
        if depth == cfg.max_word_length {
            cutoff_incomplete = level.iter().any(|c| c.length < cfg.length_cutoff);
        }
        for c in level {
            if c.length > cfg.length_cutoff || is_known(&c, &found, &buckets, tol) {
                continue;
            }
            buckets.entry(key_of_trace(c.trace, tol)).or_default().push(found.len());
            found.push(c);
        }
    }

    found.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.angle.total_cmp(&b.angle))
            .then_with(|| a.word.cmp(&b.word))
    });
    let triples: Vec<(f64, f64, Option<String>)> =
        found.into_iter().map(|c| (c.length, c.angle, Some(c.word))).collect();
    let decomposition = primitive_decomposition(&triples, tol);
    let source = format!(
        "enumerated: max_word_length={} length_cutoff={} trace_bucket_tolerance={:e} cutoff_incomplete={}",
        cfg.max_word_length, cfg.length_cutoff, tol, cutoff_incomplete
    );
    let spectrum = LengthSpectrum::new(3, cfg.length_cutoff, tol, None, source, decomposition.classes)?;
    Ok(EnumerationReport {
        spectrum,
        cutoff_incomplete,
        ambiguous_roots: decomposition.ambiguous,
        words_examined,
    })
}

fn is_known(c: &Candidate, found: &[Candidate], buckets: &HashMap<ConjugacyKey, Vec<usize>>, tol: f64) -> bool {
    // ±g act identically on hyperbolic space, so both trace signs are searched
    for tr in [c.trace, -c.trace] {
        let key = key_of_trace(tr, tol);
        for dre in -1..=1 {
            for dim in -1..=1 {
                let neighbour = ConjugacyKey {
                    re: key.re + dre,
                    im: key.im + dim,
                };
                if let Some(ids) = buckets.get(&neighbour) {
                    if ids.iter().any(|&i| {
                        (found[i].length - c.length).abs() <= tol && angle_distance(found[i].angle, c.angle) <= tol
                    }) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Checks that every class word reproduces its (length, angle).
pub fn verify_words(spectrum: &LengthSpectrum, presentation: &GroupPresentation) -> Result<()> {
    let tol = spectrum.tolerance();
    for (i, c) in spectrum.classes().iter().enumerate() {
        if let Some(word) = &c.word {
            let (l, theta) = complex_length(&presentation.word_matrix(word)?)?;
            if (l - c.length).abs() > tol || angle_distance(theta, c.angle) > tol {
                return Err(Error::invariant(
                    Some(i),
                    format!("word '{word}' has complex length ({l}, {theta}), class records ({}, {})", c.length, c.angle),
                ));
            }
        }
    }
    Ok(())
}

/// Hex SHA-256 of the presentation and the result-affecting configuration.
pub fn cache_key(presentation: &GroupPresentation, cfg: &EnumerationConfig) -> String {
    let document = serde_json::json!({
        "presentation": serde_json::to_value(presentation.raw()).expect("presentation serializes"),
        "max_word_length": cfg.max_word_length,
        "length_cutoff": cfg.length_cutoff,
        "trace_bucket_tolerance": cfg.trace_bucket_tolerance,
    });
    hex::encode(Sha256::digest(document.to_string().as_bytes()))
}

/// Enumerates through a file cache in `dir`. Returns the report and whether it was a hit.
pub fn enumerate_cached(
    presentation: &GroupPresentation,
    cfg: &EnumerationConfig,
    dir: &Path,
) -> Result<(EnumerationReport, bool)> {
    let path = dir.join(format!("{}.json", cache_key(presentation, cfg)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
        return Ok((EnumerationReport::from_value(value)?, true));
    }
    let report = enumerate_spectrum(presentation, cfg)?;
    std::fs::create_dir_all(dir)?;
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(&report.to_value()).expect("report serializes"))?;
    std::fs::rename(&tmp, &path)?;
    Ok((report, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(a: Complex64) -> Mat2 {
        Mat2::new(a, c(0.0, 0.0), c(0.0, 0.0), 1.0 / a)
    }

    fn cyclic() -> GroupPresentation {
        GroupPresentation::new(vec![('g', diag(c(2.0, 0.0)))], false).unwrap()
    }

    // Eigenvalue oracle: roots of λ² − tr λ + 1 by the textbook formula.
    fn oracle(g: &Mat2) -> (f64, f64) {
        let t = g.trace();
        let r = (t * t - 4.0).sqrt();
        let a = (t + r) / 2.0;
        let b = (t - r) / 2.0;
        let lam = if a.norm() > b.norm() { a } else { b };
        (2.0 * lam.norm().ln(), wrap_angle(2.0 * lam.arg()))
    }

    #[test]
    fn complex_length_examples() {
        let (l, t) = complex_length(&diag(c(2.0, 0.0))).unwrap();
        assert!((l - 2.0 * 2f64.ln()).abs() < 1e-15 && t.abs() < 1e-15);
        let lam = Complex64::from_polar(2.0, PI / 4.0);
        let h = Mat2::new(c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0), c(1.0, 0.0));
        let g = h * diag(lam) * inverse_sl2(&h);
        let (l, t) = complex_length(&g).unwrap();
        assert!((l - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((t - PI / 2.0).abs() < 1e-14);
        let (ol, ot) = oracle(&g);
        assert!((l - ol).abs() < 1e-14 && (t - ot).abs() < 1e-14);
        let rot = diag(Complex64::from_polar(1.0, PI / 3.0));
        assert!(matches!(complex_length(&rot), Err(Error::NotLoxodromic { .. })));
    }

    #[test]
    fn conjugacy_key_examples() {
        let k = |t: Complex64| key_of_trace(t, 1e-6);
        assert_eq!(k(c(2.5, 0.0)), k(c(2.5, 4e-7)));
        assert_ne!(k(c(2.5, 0.0)), k(c(-2.5, 0.0)));
        let g = diag(c(2.0, 0.0));
        let h = Mat2::new(c(2.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let h_inv = h.try_inverse().unwrap();
        assert_eq!(conjugacy_key(&g, 1e-6), conjugacy_key(&(h * g * h_inv), 1e-6));
    }

    #[test]
    fn cyclic_group_powers() {
        let cfg = EnumerationConfig {
            max_word_length: 3,
            length_cutoff: 5.0,
            ..Default::default()
        };
        let report = enumerate_spectrum(&cyclic(), &cfg).unwrap();
        let classes = report.spectrum.classes();
        assert_eq!(classes.len(), 3);
        for (n, class) in classes.iter().enumerate() {
            let n = n as u32 + 1;
            assert!((class.length - 2.0 * n as f64 * 2f64.ln()).abs() < 1e-12);
            assert_eq!(class.multiplicity, n);
            assert_eq!(class.word.as_deref(), Some("ggg".get(..n as usize).unwrap()));
        }
        assert!(report.cutoff_incomplete);
        let cfg = EnumerationConfig {
            length_cutoff: 4.0,
            ..cfg
        };
        assert_eq!(enumerate_spectrum(&cyclic(), &cfg).unwrap().spectrum.len(), 2);
    }

    #[test]
    fn empty_presentation() {
        let p = GroupPresentation::new(vec![], false).unwrap();
        let report = enumerate_spectrum(&p, &EnumerationConfig::default()).unwrap();
        assert!(report.spectrum.is_empty());
        assert!(!report.cutoff_incomplete);
    }

    #[test]
    fn inverse_pair_collapses_to_one_class() {
        let g = diag(c(2.0, 0.0));
        let p = GroupPresentation::new(vec![('g', g), ('h', inverse_sl2(&g))], true).unwrap();
        let cfg = EnumerationConfig {
            max_word_length: 1,
            ..Default::default()
        };
        let spectrum = enumerate_spectrum(&p, &cfg).unwrap().spectrum;
        assert_eq!(spectrum.len(), 1);
        assert_eq!(spectrum.classes()[0].word.as_deref(), Some("g"));
    }

    #[test]
    fn elliptic_generator_names_the_word() {
        let p = GroupPresentation::new(vec![('r', diag(Complex64::from_polar(1.0, 1.0)))], false).unwrap();
        match enumerate_spectrum(&p, &EnumerationConfig::default()) {
            Err(Error::NotLoxodromic { word: Some(w), .. }) => assert_eq!(w, "r"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn primitive_decomposition_examples() {
        let l = 0.9;
        let d = primitive_decomposition(&[(l, 0.0, None), (2.0 * l, 0.0, None), (3.0 * l, 0.0, None)], 1e-9);
        assert_eq!(d.classes.iter().map(|c| c.multiplicity).collect::<Vec<_>>(), vec![1, 2, 3]);
        let d = primitive_decomposition(&[(l, 0.3, None)], 1e-9);
        assert!(d.classes[0].primitive);
        let d = primitive_decomposition(&[(l, PI / 3.0, None), (2.0 * l, 2.0 * PI / 3.0, None)], 1e-9);
        assert_eq!(d.classes[1].multiplicity, 2);
        // a non-matching holonomy is not a root
        let d = primitive_decomposition(&[(l, PI / 3.0, None), (2.0 * l, 0.1, None)], 1e-9);
        assert_eq!(d.classes[1].multiplicity, 1);
    }

    #[test]
    fn presentation_json_round_trip() {
        let doc = r#"{"generators":[{"name":"a","matrix":[[2,0],[0,0],[0,0],[0.5,0]]}],"includes_inverses":false}"#;
        let p = GroupPresentation::from_json(doc).unwrap();
        assert_eq!(GroupPresentation::from_json(&p.to_json()).unwrap(), p);
        let bad = r#"{"generators":[{"name":"a","matrix":[[2,0],[0,0],[0,0],[1,0]]}],"includes_inverses":false}"#;
        assert!(matches!(GroupPresentation::from_json(bad), Err(Error::InvalidPresentation(_))));
        assert!(matches!(GroupPresentation::from_json("[]"), Err(Error::Schema(_))));
    }

    #[test]
    fn words_reproduce_classes() {
        let p = two_generator();
        let cfg = EnumerationConfig {
            max_word_length: 4,
            length_cutoff: 8.0,
            ..Default::default()
        };
        let report = enumerate_spectrum(&p, &cfg).unwrap();
        assert!(report.spectrum.len() > 5);
        verify_words(&report.spectrum, &p).unwrap();
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = EnumerationConfig {
            max_word_length: 3,
            length_cutoff: 6.0,
            ..Default::default()
        };
        let (first, hit) = enumerate_cached(&two_generator(), &cfg, dir.path()).unwrap();
        assert!(!hit);
        let (second, hit) = enumerate_cached(&two_generator(), &cfg, dir.path()).unwrap();
        assert!(hit);
        assert_eq!(first, second);
        let other = EnumerationConfig { parallel_width: 3, ..cfg };
        assert_eq!(cache_key(&two_generator(), &cfg), cache_key(&two_generator(), &other));
    }

    pub(crate) fn two_generator() -> GroupPresentation {
        let a = Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let a = a * diag(c(1.5, 0.4)) * inverse_sl2(&a);
        let b = Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0));
        let b = b * diag(c(0.8, -1.1)) * inverse_sl2(&b);
        GroupPresentation::new(vec![('a', a), ('b', b)], false).unwrap()
    }

    #[test]
    fn determinism_across_widths() {
        let p = two_generator();
        let base = EnumerationConfig {
            max_word_length: 5,
            length_cutoff: 9.0,
            ..Default::default()
        };
        let one = enumerate_spectrum(&p, &base).unwrap();
        let four = enumerate_spectrum(&p, &EnumerationConfig { parallel_width: 4, ..base }).unwrap();
        assert_eq!(one, four);
    }

    proptest! {
        #[test]
        fn conjugation_invariance(
            lr in 0.2f64..3.0, la in -3.0f64..3.0,
            h in proptest::array::uniform8(-2.0f64..2.0),
        ) {
            let g = diag(Complex64::from_polar(lr.exp(), la));
            let h = Mat2::new(c(h[0], h[1]), c(h[2], h[3]), c(h[4], h[5]), c(h[6], h[7]));
            prop_assume!(h.determinant().norm() > 0.1);
            let conj = h * g * h.try_inverse().unwrap();
            let (l0, t0) = complex_length(&g).unwrap();
            let (l1, t1) = complex_length(&conj).unwrap();
            prop_assert!((l0 - l1).abs() < 1e-9);
            prop_assert!(angle_distance(t0, t1) < 1e-9);
        }

        #[test]
        fn power_law(lr in 0.1f64..1.0, la in -3.0f64..3.0, n in 1i32..=5) {
            let g = diag(Complex64::from_polar(lr.exp(), la));
            let (l, t) = complex_length(&g).unwrap();
            let (ln, tn) = complex_length(&g.pow(n as u32)).unwrap();
            prop_assert!((ln - n as f64 * l).abs() < 1e-9);
            prop_assert!(angle_distance(tn, n as f64 * t) < 1e-9);
        }
    }
}
