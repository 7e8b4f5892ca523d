//! Subcommand implementations. Every command writes one document to its
//! output; diagnostics go to standard error.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use zeta_core::continuation::{ContinuationContext, IdentityData};
use zeta_core::enumerate::{cache_key, enumerate_cached};
use zeta_core::trace::{dirac_geometric_side, dirac_spectral_side, heat_geometric_side, heat_spectral_side, identity_term_dirac};
use zeta_core::zeta::abscissa;
use zeta_core::{
    log_zeta, run_suite, singularity_catalog, square_spectrum, Complex64, DiracSpectrum, EnumerationConfig, GammaRep,
    GroupPresentation, GrowthModel, HeatParams, LaplaceSpectrum, LengthSpectrum, MRep, PlancherelConfig, Suite,
    TraceReport, TraceTolerances, VerifyConfig, ZetaKind, ZetaRecord, ZetaRequest,
};

use crate::config::ConfigFile;
use crate::grid::{complex_grid, log_grid, Pair, Reals};
use crate::{
    Cli, CliError, Command, ContinueArgs, EnumerateArgs, Format, GrowthArgs, OutputArgs, PlancherelArgs, RepArgs,
    ReportArgs, SGridArgs, TraceArgs, VerifyArgs, ZetaArgs,
};

const DEFAULT_CACHE_DIR: &str = ".zeta-cache";

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Enumerate(a) => enumerate(&cfg, a),
        Command::Zeta(a) => zeta(&cfg, a),
        Command::Trace(a) => trace(&cfg, a),
        Command::Verify(a) => verify(&cfg, a),
        Command::Continue(a) => continuation(&cfg, a),
        Command::Report(a) => report(&cfg, a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn required<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{name} (flag or config key)")))
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Core(e.into()))
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

struct Output {
    format: Format,
    path: Option<PathBuf>,
}

fn output(cfg: &ConfigFile, section: &str, args: OutputArgs, default: Format) -> Result<Output, CliError> {
    Ok(Output {
        format: cfg.pick(args.format, section, "format")?.unwrap_or(default),
        path: cfg.pick(args.output, section, "output")?,
    })
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        write_to(self.path.as_deref(), text)
    }
}

fn growth(cfg: &ConfigFile, section: &str, args: GrowthArgs) -> Result<GrowthModel, CliError> {
    Ok(GrowthModel {
        exponent: cfg.pick(args.growth_exponent, section, "growth-exponent")?,
        constant: cfg.pick(args.growth_constant, section, "growth-constant")?,
    })
}

fn sigma(cfg: &ConfigFile, section: &str, args: &RepArgs, dimension: u32, default_spin: bool) -> Result<MRep, CliError> {
    match cfg.pick(args.sigma.clone(), section, "sigma")? {
        Some(Reals(w)) => Ok(MRep::new(dimension, &w)?),
        None if default_spin => Ok(MRep::spin(dimension)?),
        None => Err(CliError::Usage("missing --sigma (flag or config key)".into())),
    }
}

fn chi(cfg: &ConfigFile, section: &str, args: &RepArgs) -> Result<GammaRep, CliError> {
    match cfg.pick(args.chi.clone(), section, "chi")? {
        Some(path) => Ok(GammaRep::from_json(&read(&path)?)?),
        None => Ok(GammaRep::trivial(1)),
    }
}

fn plancherel_config(cfg: &ConfigFile, section: &str, args: PlancherelArgs) -> Result<PlancherelConfig, CliError> {
    let default = PlancherelConfig::default();
    Ok(PlancherelConfig {
        normalization: cfg
            .pick(args.plancherel_normalization, section, "plancherel.normalization")?
            .unwrap_or(default.normalization),
        coefficients: cfg
            .pick(args.plancherel_coefficients, section, "plancherel.coefficients")?
            .map(|r| r.0),
    })
}

fn s_grid(cfg: &ConfigFile, section: &str, args: SGridArgs) -> Result<Option<Vec<Complex64>>, CliError> {
    let start: Option<Pair> = cfg.pick(args.s_start, section, "s-start")?;
    let stop: Option<Pair> = cfg.pick(args.s_stop, section, "s-stop")?;
    let step: Option<Pair> = cfg.pick(args.s_step, section, "s-step")?;
    match start {
        None if stop.is_some() || step.is_some() => Err(CliError::Usage("--s-stop/--s-step need --s-start".into())),
        None => Ok(None),
        Some(start) => complex_grid(start.0, stop.map(|p| p.0), step.map(|p| p.0)).map(Some),
    }
}

fn parse_kind(text: &str) -> Result<ZetaKind, CliError> {
    text.parse::<ZetaKind>().map_err(|e| CliError::Usage(e.to_string()))
}

fn load_spectrum(path: &Path) -> Result<LengthSpectrum, CliError> {
    Ok(LengthSpectrum::from_json(&read(path)?)?)
}

fn enumerate(cfg: &ConfigFile, args: EnumerateArgs) -> Result<(), CliError> {
    const S: &str = "enumerate";
    let path = required(cfg.pick(args.presentation, S, "presentation")?, "presentation")?;
    let presentation = GroupPresentation::from_json(&read(&path)?)?;
    let defaults = EnumerationConfig::default();
    let ecfg = EnumerationConfig {
        max_word_length: cfg.pick(args.max_word_length, S, "max-word-length")?.unwrap_or(defaults.max_word_length),
        length_cutoff: cfg.pick(args.cutoff, S, "cutoff")?.unwrap_or(defaults.length_cutoff),
        trace_bucket_tolerance: cfg
            .pick(args.bucket_tolerance, S, "bucket-tolerance")?
            .unwrap_or(defaults.trace_bucket_tolerance),
        parallel_width: cfg.pick(args.parallel_width, S, "parallel-width")?.unwrap_or(defaults.parallel_width),
    };
    ecfg.validate()?;
    let cache_dir = args
        .cache_dir
        .or_else(|| std::env::var_os("ZETA_CACHE_DIR").map(PathBuf::from))
        .or(cfg.pick(None, S, "cache-dir")?)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
    if presentation.names().is_empty() {
        eprintln!("warning: the presentation has no generators; the spectrum is empty");
    }
    let (report, hit) = enumerate_cached(&presentation, &ecfg, &cache_dir)?;
    let key = cache_key(&presentation, &ecfg);
    eprintln!("cache {}: {}", if hit { "hit" } else { "miss" }, cache_dir.join(format!("{key}.json")).display());
    let spectrum_path = cache_dir.join(format!("{key}.spectrum.json"));
    let spectrum_json = report.spectrum.to_json() + "\n";
    write_to(Some(&spectrum_path), &spectrum_json)?;

    let out = output(cfg, S, args.out, Format::Json)?;
    if let Some(path) = &out.path {
        match out.format {
            Format::Json => write_to(Some(path), &spectrum_json)?,
            Format::Csv => {
                let mut buf = Vec::new();
                report.spectrum.write_csv(&mut buf)?;
                write_to(Some(path), &String::from_utf8(buf).expect("csv is utf-8"))?;
            }
        }
    }
    let classes = report.spectrum.classes();
    let summary = json!({
        "classes": classes.len(),
        "min_length": classes.first().map(|c| c.length),
        "max_length": classes.last().map(|c| c.length),
        "cutoff": report.spectrum.cutoff(),
        "cutoff_incomplete": report.cutoff_incomplete,
        "ambiguous_roots": report.ambiguous_roots,
        "words_examined": report.words_examined,
        "spectrum_path": spectrum_path.display().to_string(),
    });
    write_to(None, &pretty(&summary))
}

fn zeta(cfg: &ConfigFile, args: ZetaArgs) -> Result<(), CliError> {
    const S: &str = "zeta";
    let spectrum = load_spectrum(&required(cfg.pick(args.spectrum, S, "spectrum")?, "spectrum")?)?;
    let kind = parse_kind(&required(cfg.pick(args.kind, S, "kind")?, "kind")?)?;
    let sigma = sigma(cfg, S, &args.rep, spectrum.dimension(), false)?;
    let chi = chi(cfg, S, &args.rep)?;
    let grid = required(s_grid(cfg, S, args.grid)?, "s-start")?;
    let growth = growth(cfg, S, args.growth)?;
    let out = output(cfg, S, args.out, Format::Json)?;
    let mut records = Vec::with_capacity(grid.len());
    for s in grid {
        let value = log_zeta(&ZetaRequest {
            s,
            sigma: &sigma,
            chi: &chi,
            spectrum: &spectrum,
            kind,
            growth,
        })?;
        records.push(ZetaRecord::new(s, kind, &value));
    }
    match out.format {
        Format::Json => out.emit(&pretty(&records)),
        Format::Csv => {
            let mut text = ZetaRecord::CSV_HEADER.join(",") + "\n";
            for r in &records {
                text += &r.csv_row().join(",");
                text.push('\n');
            }
            out.emit(&text)
        }
    }
}

fn trace(cfg: &ConfigFile, args: TraceArgs) -> Result<(), CliError> {
    const S: &str = "trace";
    let formula = required(cfg.pick(args.formula, S, "formula")?, "formula")?;
    let mut spectrum = load_spectrum(&required(cfg.pick(args.spectrum, S, "spectrum")?, "spectrum")?)?;
    if let Some(v) = cfg.pick(args.volume, S, "volume")? {
        spectrum = spectrum.with_volume(Some(v))?;
    }
    let sigma = sigma(cfg, S, &args.rep, spectrum.dimension(), true)?;
    let chi = chi(cfg, S, &args.rep)?;
    let t_start = required(cfg.pick(args.t_start, S, "t-start")?, "t-start")?;
    let t_stop = cfg.pick(args.t_stop, S, "t-stop")?.unwrap_or(t_start);
    let t_count = cfg.pick(args.t_count, S, "t-count")?.unwrap_or(1);
    let times = log_grid(t_start, t_stop, t_count)?;
    let pcfg = plancherel_config(cfg, S, args.plancherel)?;
    let growth = growth(cfg, S, args.growth)?;
    let dirac = cfg
        .pick(args.dirac, S, "dirac")?
        .map(|p| read(&p).and_then(|t| Ok(DiracSpectrum::from_json(&t)?)))
        .transpose()?;
    let laplace = cfg
        .pick(args.laplace, S, "laplace")?
        .map(|p| read(&p).and_then(|t| Ok(LaplaceSpectrum::from_json(&t)?)))
        .transpose()?;
    let out = output(cfg, S, args.out, Format::Json)?;

    let mut reports = Vec::with_capacity(times.len());
    for t in times {
        let params = HeatParams::new(t)?;
        let report = match formula.as_str() {
            "dirac" => {
                let dirac = dirac.as_ref().ok_or_else(|| CliError::Usage("the dirac formula needs --dirac".into()))?;
                let geodesic = dirac_geometric_side(t, &spectrum, &sigma, &chi, &growth)?;
                let identity = identity_term_dirac(&params, &pcfg)?;
                TraceReport::new(
                    t,
                    "dirac",
                    geodesic.value + identity,
                    dirac_spectral_side(t, dirac),
                    identity,
                    TraceTolerances {
                        quadrature_abs: params.quadrature_abs_tol,
                        geodesic_tail_bound: geodesic.tail_bound,
                    },
                )
            }
            "heat" => {
                let laplace = match (&laplace, &dirac) {
                    (Some(l), _) => l.clone(),
                    (None, Some(d)) => square_spectrum(d),
                    (None, None) => return Err(CliError::Usage("the heat formula needs --laplace or --dirac".into())),
                };
                let side = heat_geometric_side(t, &spectrum, &sigma, &chi, &pcfg, &growth)?;
                TraceReport::new(
                    t,
                    "heat",
                    side.total(),
                    heat_spectral_side(t, &laplace),
                    side.identity.re,
                    TraceTolerances {
                        quadrature_abs: params.quadrature_abs_tol,
                        geodesic_tail_bound: side.geodesic.tail_bound,
                    },
                )
            }
            other => return Err(CliError::Usage(format!("unknown formula '{other}' (expected heat or dirac)"))),
        };
        reports.push(report);
    }
    match out.format {
        Format::Json => out.emit(&pretty(&reports)),
        Format::Csv => {
            let mut text = String::from("t,formula,geometric_re,geometric_im,spectral_re,spectral_im,gap,identity_term,tail_bound\n");
            for r in &reports {
                text += &format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.t,
                    r.formula,
                    r.geometric[0],
                    r.geometric[1],
                    r.spectral[0],
                    r.spectral[1],
                    r.gap,
                    r.identity_term,
                    r.tolerances.geodesic_tail_bound
                );
            }
            out.emit(&text)
        }
    }
}

fn verify(cfg: &ConfigFile, args: VerifyArgs) -> Result<(), CliError> {
    const S: &str = "verify";
    let suite = cfg.pick(args.suite, S, "suite")?.unwrap_or_else(|| "all".into());
    let vcfg = VerifyConfig {
        seed: cfg.pick(args.seed, S, "seed")?.unwrap_or(0),
        cases: cfg.pick(args.cases, S, "cases")?,
        inject_violation: cfg.flag(args.inject_violation, S, "inject-violation")?,
    };
    let path = cfg.pick(args.output, S, "output")?;
    let reports = if suite == "all" {
        Suite::ALL.iter().map(|&s| run_suite(s, &vcfg)).collect::<Vec<_>>()
    } else {
        let suite = suite.parse::<Suite>().map_err(|e| CliError::Usage(e.to_string()))?;
        vec![run_suite(suite, &vcfg)]
    };
    let text = if reports.len() == 1 { pretty(&reports[0]) } else { pretty(&reports) };
    write_to(path.as_deref(), &text)?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        let ce = r.counterexample.clone().unwrap_or(Value::Null);
        eprintln!("suite {} failed; first counterexample: {}", r.suite, serde_json::to_string(&ce).expect("json"));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn continuation(cfg: &ConfigFile, args: ContinueArgs) -> Result<(), CliError> {
    const S: &str = "continue";
    let dirac = DiracSpectrum::from_json(&read(&required(cfg.pick(args.dirac, S, "dirac")?, "dirac")?)?)?;
    let laplace = cfg
        .pick(args.laplace, S, "laplace")?
        .map(|p| read(&p).and_then(|t| Ok(LaplaceSpectrum::from_json(&t)?)))
        .transpose()?;
    let catalog = singularity_catalog(&dirac, laplace.as_ref())?;
    let grid = s_grid(cfg, S, args.grid)?;
    let catalog_path = cfg.pick(args.catalog_output, S, "catalog-output")?;
    let out = output(cfg, S, args.out, Format::Csv)?;
    let Some(grid) = grid else {
        return write_to(out.path.as_deref().or(catalog_path.as_deref()), &pretty(&catalog));
    };
    if let Some(p) = &catalog_path {
        write_to(Some(p), &pretty(&catalog))?;
    }

    let kind = parse_kind(&cfg.pick(args.kind, S, "kind")?.unwrap_or_else(|| "selberg".into()))?;
    let sigma = sigma(cfg, S, &args.rep, 3, true)?;
    let chi = chi(cfg, S, &args.rep)?;
    let pcfg = plancherel_config(cfg, S, args.plancherel)?;
    let volume = cfg.pick(args.volume, S, "volume")?;
    // the super zeta function needs no identity term
    let volume = if kind == ZetaKind::Super { volume.or(Some(0.0)) } else { volume };
    let identity = IdentityData::new(&sigma, &chi, volume, &pcfg)?;
    let anchor = cfg.pick(args.anchor, S, "anchor")?.map_or(Complex64::new(10.0, 0.0), |p| p.0);
    let anchor_log = cfg.pick(args.anchor_log, S, "anchor-log")?.map(|p| p.0);
    let mut ctx = ContinuationContext::new(dirac, laplace, identity, anchor, anchor_log)?;
    if let Some(r) = cfg.pick(args.detour_radius, S, "detour-radius")? {
        ctx.detour_radius = r;
    }
    let mut rows = Vec::with_capacity(grid.len());
    for s in grid {
        let log = ctx.log_value(kind, s)?;
        rows.push((s, log, log.exp()));
    }
    match out.format {
        Format::Csv => {
            let mut text = String::from("s_re,s_im,abs_z,arg_z,log_re,log_im\n");
            for (s, log, z) in &rows {
                text += &format!("{},{},{},{},{},{}\n", s.re, s.im, z.norm(), z.arg(), log.re, log.im);
            }
            out.emit(&text)
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(s, log, z)| json!({"s": [s.re, s.im], "abs": z.norm(), "arg": z.arg(), "log": [log.re, log.im]}))
                .collect();
            out.emit(&pretty(&json!({"kind": kind, "branch": ctx.catalog.branch, "values": values})))
        }
    }
}

fn report(cfg: &ConfigFile, args: ReportArgs) -> Result<(), CliError> {
    const S: &str = "report";
    let spectrum = load_spectrum(&required(cfg.pick(args.spectrum, S, "spectrum")?, "spectrum")?)?;
    let growth = growth(cfg, S, args.growth)?;
    let out = output(cfg, S, args.out, Format::Json)?;
    let classes = spectrum.classes();
    match out.format {
        Format::Json => {
            let d = spectrum.dimension();
            let abscissas: serde_json::Map<String, Value> = ZetaKind::ALL
                .iter()
                .map(|&k| (k.name().to_string(), json!(abscissa(k, d, &growth))))
                .collect();
            let summary = json!({
                "dimension": d,
                "classes": classes.len(),
                "primitive_classes": classes.iter().filter(|c| c.primitive).count(),
                "min_length": classes.first().map(|c| c.length),
                "max_length": classes.last().map(|c| c.length),
                "cutoff": spectrum.cutoff(),
                "tolerance": spectrum.tolerance(),
                "volume": spectrum.volume(),
                "source": spectrum.source(),
                "growth": {"exponent": growth.exponent_for(d), "constant": growth.constant_for(&spectrum)},
                "abscissas": abscissas,
            });
            out.emit(&pretty(&summary))
        }
        Format::Csv => {
            // counting function N(L) at each class length
            let mut text = String::from("length,count\n");
            for (i, c) in classes.iter().enumerate() {
                text += &format!("{},{}\n", c.length, i + 1);
            }
            out.emit(&text)
        }
    }
}
