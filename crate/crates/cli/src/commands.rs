use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use anyhow::{Context, Result};
use checkerboard::bessel::SeriesOptions;
use checkerboard::dirac::{dirac_residual, ResidualReport, Region};
use checkerboard::io::{format_real, write_sweep_csv, SCHEMA_VERSION};
use checkerboard::linear::linear_converge;
use checkerboard::paths::{enumerate_paths_capped, Direction};
use checkerboard::propagator::{closed_matrix_with, exact_components, exact_matrix, Component, LatticeSpec, PropagatorMatrix};
use checkerboard::rational::{format_rational, serde_text};
use checkerboard::spacetime::{boost, compose, is_member, MWitness};
use checkerboard::{AmplitudePolynomial, Complex64, Rational, SpacetimePoint};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{BoostArgs, Cli, Command, ConvergeArgs, Format, Model};

pub fn run(cli: &Cli) -> Result<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    if !(cli.tolerance > 0.0) {
        return Err(checkerboard::Error::InvalidParameter("tolerance must be positive".into()).into());
    }
    let text = match &cli.command {
        Command::Member { t, x } => member(cli.format.unwrap_or(Format::Json), t, x)?,
        Command::Boost(args) => boost_cmd(cli.format.unwrap_or(Format::Json), args)?,
        Command::Spectrum { max_pq } => spectrum(cli.format.unwrap_or(Format::Csv), *max_pq)?,
        Command::Enumerate { p, q, start, end } => {
            enumerate(cli.format.unwrap_or(Format::Text), *p, *q, *start, *end, cli.cap)?
        }
        Command::Exact { p, q, t } => exact(cli.format.unwrap_or(Format::Json), *p, *q, t)?,
        Command::Propagator { t, x } => propagator(cli.format.unwrap_or(Format::Json), *t, *x, cli.tolerance)?,
        Command::Converge(args) => converge(cli.format.unwrap_or(Format::Csv), args)?,
        Command::DiracCheck { t0, t1, xfrac, h } => dirac_check(cli.format.unwrap_or(Format::Json), *t0, *t1, *xfrac, *h)?,
    };
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn unsupported(format: Format, command: &str) -> anyhow::Error {
    checkerboard::Error::InvalidParameter(format!("{command} does not support {format:?} output")).into()
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<&Complex64> for ComplexJson {
    fn from(z: &Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct MatrixJson {
    psi_pp: ComplexJson,
    psi_pm: ComplexJson,
    psi_mp: ComplexJson,
    psi_mm: ComplexJson,
}

impl From<&PropagatorMatrix<f64>> for MatrixJson {
    fn from(m: &PropagatorMatrix<f64>) -> Self {
        Self {
            psi_pp: (&m.psi_pp).into(),
            psi_pm: (&m.psi_pm).into(),
            psi_mp: (&m.psi_mp).into(),
            psi_mm: (&m.psi_mm).into(),
        }
    }
}

fn matrix_csv(m: &PropagatorMatrix<f64>) -> String {
    let mut out = String::from("component,re,im,schema_version\n");
    for c in Component::ALL {
        let z = m.get(c);
        let _ = writeln!(out, "{},{},{},{SCHEMA_VERSION}", c.label(), format_real(z.re), format_real(z.im));
    }
    out
}

#[derive(Serialize)]
struct MemberJson<'a> {
    schema_version: u32,
    #[serde(with = "serde_text")]
    t: &'a Rational,
    #[serde(with = "serde_text")]
    x: &'a Rational,
    member: bool,
    witness: Option<MWitness>,
}

fn member(format: Format, t: &Rational, x: &Rational) -> Result<String> {
    let witness = is_member(&SpacetimePoint::new(t.clone(), x.clone()));
    match format {
        Format::Json => to_json(&MemberJson {
            schema_version: SCHEMA_VERSION,
            t,
            x,
            member: witness.is_some(),
            witness,
        }),
        Format::Csv => {
            let mut out = String::from("t,x,member,n,m,p,q,schema_version\n");
            let (t, x) = (format_rational(t), format_rational(x));
            let _ = match witness {
                Some(w) => writeln!(out, "{t},{x},true,{},{},{},{},{SCHEMA_VERSION}", w.n, w.m, w.p, w.q),
                None => writeln!(out, "{t},{x},false,,,,,{SCHEMA_VERSION}"),
            };
            Ok(out)
        }
        Format::Text => Err(unsupported(format, "member")),
    }
}

#[derive(Serialize)]
struct PointJson {
    t: String,
    x: String,
    member: bool,
}

#[derive(Serialize)]
struct SampleJson {
    seed: u64,
    bound: i64,
    pairs: usize,
    closure_ok: usize,
    determinant_ok: usize,
}

#[derive(Serialize)]
struct BoostJson {
    schema_version: u32,
    p: i64,
    q: i64,
    generator: [String; 2],
    matrix: [[String; 2]; 2],
    #[serde(with = "serde_text")]
    velocity: Rational,
    #[serde(with = "serde_text")]
    determinant: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sample: Option<SampleJson>,
}

fn nonzero_in(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

fn boost_cmd(format: Format, args: &BoostArgs) -> Result<String> {
    if format != Format::Json {
        return Err(unsupported(format, "boost"));
    }
    let b = boost(args.p, args.q)?;
    let (gp, gq) = b.generator();
    let image = match (&args.t, &args.x) {
        (Some(t), Some(x)) => {
            let moved = b.apply(&SpacetimePoint::new(t.clone(), x.clone()));
            Some(PointJson {
                member: is_member(&moved).is_some(),
                t: format_rational(&moved.t),
                x: format_rational(&moved.x),
            })
        }
        _ => None,
    };
    let sample = if args.sample > 0 {
        if args.bound < 1 {
            return Err(checkerboard::Error::InvalidParameter("bound must be at least 1".into()).into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let (mut closure_ok, mut determinant_ok) = (0, 0);
        for _ in 0..args.sample {
            let (p1, q1) = (nonzero_in(&mut rng, args.bound), nonzero_in(&mut rng, args.bound));
            let (p2, q2) = (nonzero_in(&mut rng, args.bound), nonzero_in(&mut rng, args.bound));
            let b1 = boost(p1, q1)?;
            let product = compose(&b1, &boost(p2, q2)?);
            if product == boost(BigInt::from(p1) * p2, BigInt::from(q1) * q2)? {
                closure_ok += 1;
            }
            if b1.determinant().is_one() {
                determinant_ok += 1;
            }
        }
        Some(SampleJson {
            seed: args.seed,
            bound: args.bound,
            pairs: args.sample,
            closure_ok,
            determinant_ok,
        })
    } else {
        None
    };
    let e = b.entries();
    to_json(&BoostJson {
        schema_version: SCHEMA_VERSION,
        p: args.p,
        q: args.q,
        generator: [gp.to_string(), gq.to_string()],
        matrix: [
            [format_rational(e[0][0]), format_rational(e[0][1])],
            [format_rational(e[1][0]), format_rational(e[1][1])],
        ],
        velocity: b.velocity(),
        determinant: b.determinant(),
        image,
        sample,
    })
}

fn spectrum(format: Format, max_pq: u64) -> Result<String> {
    let values = checkerboard::spacetime::velocity_spectrum(max_pq)?;
    match format {
        Format::Csv | Format::Text => {
            let mut out = String::from("v,schema_version\n");
            for v in &values {
                let _ = writeln!(out, "{},{SCHEMA_VERSION}", format_rational(v));
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct SpectrumJson {
                schema_version: u32,
                max_pq: u64,
                velocities: Vec<String>,
            }
            to_json(&SpectrumJson {
                schema_version: SCHEMA_VERSION,
                max_pq,
                velocities: values.iter().map(format_rational).collect(),
            })
        }
    }
}

#[derive(Serialize)]
struct PathJson {
    path: String,
    #[serde(rename = "R")]
    bends: u32,
    #[serde(rename = "R_plus")]
    bends_to_right: u32,
    #[serde(rename = "R_minus")]
    bends_to_left: u32,
    amplitude: AmplitudePolynomial,
}

fn enumerate(format: Format, p: u32, q: u32, start: Direction, end: Direction, cap: u32) -> Result<String> {
    let rows: Vec<PathJson> = enumerate_paths_capped(p, q, start, end, cap)?
        .map(|path| PathJson {
            path: path.to_string(),
            bends: path.bends(),
            bends_to_right: path.bends_to_right(),
            bends_to_left: path.bends_to_left(),
            amplitude: path.amplitude(),
        })
        .collect();
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{} R={} R+={} R-={} amplitude={}",
                    r.path, r.bends, r.bends_to_right, r.bends_to_left, r.amplitude
                );
            }
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::from("path,R,R_plus,R_minus,order,coefficient,schema_version\n");
            for r in &rows {
                let (order, coeff) = r.amplitude.terms().next().expect("a path amplitude is a monomial");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{order},{coeff},{SCHEMA_VERSION}",
                    r.path, r.bends, r.bends_to_right, r.bends_to_left
                );
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct EnumerateJson {
                schema_version: u32,
                #[serde(rename = "P")]
                p: u32,
                #[serde(rename = "Q")]
                q: u32,
                start: char,
                end: char,
                paths: Vec<PathJson>,
            }
            to_json(&EnumerateJson {
                schema_version: SCHEMA_VERSION,
                p,
                q,
                start: start.symbol(),
                end: end.symbol(),
                paths: rows,
            })
        }
    }
}

fn exact(format: Format, p: u32, q: u32, t: &Rational) -> Result<String> {
    let spec = LatticeSpec::new(p, q, t.clone())?;
    let values = exact_matrix(&spec);
    match format {
        Format::Csv => Ok(matrix_csv(&values)),
        Format::Json => {
            #[derive(Serialize)]
            struct ComponentJson {
                polynomial: AmplitudePolynomial,
                value: ComplexJson,
            }
            #[derive(Serialize)]
            struct ExactJson {
                schema_version: u32,
                #[serde(rename = "P")]
                p: u32,
                #[serde(rename = "Q")]
                q: u32,
                #[serde(with = "serde_text")]
                t: Rational,
                #[serde(with = "serde_text")]
                x: Rational,
                #[serde(with = "serde_text")]
                v: Rational,
                #[serde(with = "serde_text")]
                eps0: Rational,
                psi_pp: ComponentJson,
                psi_pm: ComponentJson,
                psi_mp: ComponentJson,
                psi_mm: ComponentJson,
            }
            let [pp, pm, mp, mm] = exact_components(p, q).map(|(c, poly)| ComponentJson {
                polynomial: poly,
                value: values.get(c).into(),
            });
            to_json(&ExactJson {
                schema_version: SCHEMA_VERSION,
                p,
                q,
                t: spec.t.clone(),
                x: spec.x(),
                v: spec.velocity(),
                eps0: spec.eps0(),
                psi_pp: pp,
                psi_pm: pm,
                psi_mp: mp,
                psi_mm: mm,
            })
        }
        Format::Text => Err(unsupported(format, "exact")),
    }
}

fn propagator(format: Format, t: f64, x: f64, tolerance: f64) -> Result<String> {
    let opts = SeriesOptions {
        tolerance,
        ..SeriesOptions::default()
    };
    let m = closed_matrix_with(t, x, &opts)?;
    match format {
        Format::Csv => Ok(matrix_csv(&m)),
        Format::Json => {
            #[derive(Serialize)]
            struct PropagatorJson {
                schema_version: u32,
                t: f64,
                x: f64,
                s: f64,
                #[serde(flatten)]
                matrix: MatrixJson,
            }
            to_json(&PropagatorJson {
                schema_version: SCHEMA_VERSION,
                t,
                x,
                s: ((t - x) * (t + x)).sqrt(),
                matrix: (&m).into(),
            })
        }
        Format::Text => Err(unsupported(format, "propagator")),
    }
}

fn converge(format: Format, args: &ConvergeArgs) -> Result<String> {
    let (model, records) = match args.model {
        Model::Quadratic => ("quadratic", checkerboard::propagator::convergence_sweep(&args.t, &args.v, &args.p)?),
        Model::Linear => ("linear", linear_converge(&args.t, &args.v, &args.n)?),
    };
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &records)?;
            Ok(String::from_utf8(buf)?)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct ConvergeJson<'a> {
                schema_version: u32,
                model: &'a str,
                rows: &'a [checkerboard::propagator::SweepRecord],
            }
            to_json(&ConvergeJson {
                schema_version: SCHEMA_VERSION,
                model,
                rows: &records,
            })
        }
        Format::Text => Err(unsupported(format, "converge")),
    }
}

fn dirac_check(format: Format, t0: f64, t1: f64, xfrac: f64, h: f64) -> Result<String> {
    if format != Format::Json {
        return Err(unsupported(format, "dirac-check"));
    }
    #[derive(Serialize)]
    struct DiracJson {
        schema_version: u32,
        #[serde(flatten)]
        report: ResidualReport,
    }
    let report = dirac_residual(&Region::new(t0, t1, xfrac), h)?;
    to_json(&DiracJson {
        schema_version: SCHEMA_VERSION,
        report,
    })
}
