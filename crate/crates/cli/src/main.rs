use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hsleaf::artifacts::{builtin_g, builtin_g_hat, builtin_h};
use hsleaf::barriers::{Barrier, BarrierKind};
use hsleaf::certfile::CertificateFile;
use hsleaf::odes::{indicial_degrees, IndicialQuery};
use hsleaf::report::{check_suite_with, BuiltinBarriers};
use hsleaf::series::{expand_profile_chain, verify_asymptotic_claim};
use hsleaf::shooting::{estimate_b, integrate, integrate_davini, sum_report};
use hsleaf::synth::{improve_bound, numeric_c23, synthesize, tail_coefficients, SynthConfig};
use hsleaf::{Error, Leaf};

#[derive(Parser)]
#[command(
    name = "hsleaf",
    version,
    about = "Barrier certificates and asymptotics for the Hardt-Simon leaves of C(S4xS2)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum LeafArg {
    #[value(alias = "plus_leaf", alias = "+")]
    Plus,
    #[value(alias = "minus_leaf", alias = "-")]
    Minus,
}

impl From<LeafArg> for Leaf {
    fn from(l: LeafArg) -> Leaf {
        match l {
            LeafArg::Plus => Leaf::Plus,
            LeafArg::Minus => Leaf::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    #[value(name = "plus_leaf", alias = "plus")]
    PlusLeaf,
    #[value(name = "minus_leaf", alias = "minus")]
    MinusLeaf,
    Davini,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(alias = "sub")]
    Subsolution,
    #[value(alias = "super")]
    Supersolution,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuiltinArg {
    G,
    #[value(name = "g_hat", alias = "g-hat")]
    GHat,
    H,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the built-in suite: identities, goldens, the three barriers, inequalities, indicial degrees, series.
    PaperCheck {
        #[arg(long)]
        json: bool,
        /// Replace the embedded barriers (JSON with fields g, g_hat, h).
        #[arg(long, hide = true)]
        barriers: Option<PathBuf>,
    },
    /// Re-verify a certificate file from scratch.
    Verify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Integrate a profile equation from its singular start.
    Solve {
        #[arg(value_enum)]
        system: SystemArg,
        /// End point: s for the leaf equations, t (< t₀) for Davini's equation.
        #[arg(long, default_value_t = 1e6)]
        s_max: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the samples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Estimate b from the numeric solution and compare with the certified bounds.
    FitB {
        #[arg(value_enum)]
        leaf: LeafArg,
        #[arg(long)]
        json: bool,
    },
    /// Synthesize and certify a barrier.
    Synth {
        /// JSON configuration; missing fields take their defaults.
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        leaf: Option<LeafArg>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Tighten the tail towards the numeric estimate afterwards.
        #[arg(long)]
        improve: bool,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degrees of the Jacobi field mode (j, k) on the cone over S^p x S^q.
    Indicial { p: u32, q: u32, j: u32, k: u32 },
    /// Expand the profile of a leaf at infinity and check the claimed coefficients.
    Expand {
        #[arg(value_enum)]
        leaf: LeafArg,
    },
    /// Certify a built-in barrier and write its certificate file.
    Export {
        #[arg(value_enum)]
        barrier: BuiltinArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit codes: 0 pass, 1 paper-check item failed, 2 verification failed, 3 precision cap,
/// 4 I/O or parse error, 5 numerical integration or fit failure.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CertificationFailed(_) | Error::SynthesisFailed(_) => 2,
        Error::PrecisionCap { .. } => 3,
        Error::Parse(_) | Error::Invalid(_) | Error::Domain(_) | Error::Incompatible(_) => 4,
        Error::Integration { .. } | Error::IllConditioned(_) => 5,
        Error::NotExtractable(_) | Error::TruncationInsufficient(_) => 2,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, body: &str) -> Result<(), Error> {
    fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn check_suite(as_json: bool, barriers: Option<PathBuf>) -> Result<u8, Error> {
    let art = match barriers {
        Some(p) => serde_json::from_str::<BuiltinBarriers>(&read(&p)?)
            .map_err(|e| Error::Parse(e.to_string()))?,
        None => BuiltinBarriers::default(),
    };
    let report = check_suite_with(&art);
    if as_json {
        println!("{}", json(&report));
    } else {
        print!("{}", report.to_text());
        if let Some(f) = &report.first_failure {
            eprintln!("first failing item: {f}");
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn verify(path: &Path, as_json: bool) -> Result<u8, Error> {
    let file = CertificateFile::from_json(&read(path)?)?;
    let r = file.reverify()?;
    if as_json {
        println!("{}", json(&r));
    } else {
        println!(
            "{} {:?} with {} pieces",
            file.system
                .leaf()
                .map(|l| l.to_string())
                .unwrap_or_default(),
            file.kind,
            file.pieces.len()
        );
        for f in &r.failures {
            println!("{f}");
        }
        if !r.evidence_matches {
            println!("note: stored evidence differs from the recomputation");
        }
        println!(
            "{}",
            if r.pass {
                "verified"
            } else {
                "verification failed"
            }
        );
    }
    Ok(if r.pass { 0 } else { 2 })
}

fn solve(system: SystemArg, s_max: f64, tol: f64, csv: Option<PathBuf>) -> Result<u8, Error> {
    let (header, samples, stats) = match system {
        SystemArg::Davini => ("t,dphi", integrate_davini(s_max, tol, 400)?, None),
        SystemArg::PlusLeaf | SystemArg::MinusLeaf => {
            let leaf = if matches!(system, SystemArg::PlusLeaf) {
                Leaf::Plus
            } else {
                Leaf::Minus
            };
            let tr = integrate(leaf, s_max, tol)?;
            ("s,w", tr.samples.clone(), Some(tr.stats))
        }
    };
    let (x, y) = *samples.last().expect("at least the start sample");
    println!("end point {x:e}: {y:.12e}");
    if let Some(st) = stats {
        println!("{} accepted steps, {} rejected", st.accepted, st.rejected);
    }
    if let Some(p) = csv {
        let mut body = format!("{header}\n");
        for (a, b) in &samples {
            body += &format!("{a:e},{b:e}\n");
        }
        write(&p, &body)?;
        println!("wrote {} samples to {}", samples.len(), p.display());
    }
    Ok(0)
}

fn fit_b(leaf: Leaf, as_json: bool) -> Result<u8, Error> {
    let est = estimate_b(leaf)?;
    if as_json {
        println!("{}", json(&est));
        return Ok(0);
    }
    let sign = if leaf == Leaf::Plus { "+" } else { "-" };
    println!(
        "b{sign} ≈ {:.4}, certified interval {}",
        est.b,
        est.interval_string()
    );
    println!(
        "c_2/3 = {:.6}, c_1/3 = {:.6} (predicted {:.6}, {:.2}% off), window [{:e}, {:e}]",
        est.fit.c23,
        est.fit.c13,
        est.fit.predicted_c13,
        100.0 * est.fit.c13_rel_error,
        est.fit.window.0,
        est.fit.window.1
    );
    if leaf == Leaf::Plus {
        let minus = estimate_b(Leaf::Minus)?;
        let sum = sum_report(&est, &minus);
        println!(
            "b+ + b- ≈ {:.4}, certified ≤ {:.4}",
            sum.sum, sum.certified_upper
        );
    }
    Ok(if est.inside { 0 } else { 2 })
}

fn describe(b: &Barrier, file: &CertificateFile) {
    if let Some((c23, c13, c0)) = tail_coefficients(b) {
        println!("tail: c_2/3 = {c23}, c_1/3 = {c13}, c_0 = {c0}");
    }
    if let Some(bound) = &file.summary.bound {
        let rel = match bound.side {
            hsleaf::shooting::Side::Lower => "≥",
            hsleaf::shooting::Side::Upper => "≤",
        };
        println!(
            "implied: (3√2/2)^(2/3)·b/9 {rel} {} (b {rel} {:.4})",
            bound.scaled, bound.value
        );
    }
}

fn synth(
    config: Option<PathBuf>,
    leaf: Option<LeafArg>,
    kind: Option<KindArg>,
    improve: bool,
    out: Option<PathBuf>,
) -> Result<u8, Error> {
    let mut cfg = match config {
        Some(p) => serde_json::from_str::<SynthConfig>(&read(&p)?)
            .map_err(|e| Error::Parse(format!("config: {e}")))?,
        None => SynthConfig::default(),
    };
    if let Some(l) = leaf {
        cfg.leaf = l.into();
    }
    if let Some(k) = kind {
        cfg.kind = match k {
            KindArg::Subsolution => BarrierKind::Subsolution,
            KindArg::Supersolution => BarrierKind::Supersolution,
        };
    }
    let t = Instant::now();
    let (mut barrier, _) = synthesize(&cfg)?;
    println!(
        "{} {:?}: {} pieces certified in {:.1?}",
        cfg.leaf,
        cfg.kind,
        barrier.pieces.len(),
        t.elapsed()
    );
    if improve {
        barrier = improve_bound(&barrier, numeric_c23(cfg.leaf)?, cfg.tail_grid)?;
        println!("improved in {:.1?}", t.elapsed());
    }
    let file = CertificateFile::emit(&barrier, "synthesized")?;
    describe(&barrier, &file);
    if let Some(p) = out {
        write(&p, &file.to_json())?;
        println!("certificate written to {}", p.display());
    }
    Ok(if file.summary.pass { 0 } else { 2 })
}

fn indicial(p: u32, q: u32, j: u32, k: u32) -> Result<u8, Error> {
    if p == 0 || q == 0 {
        return Err(Error::Invalid("p and q must be positive".into()));
    }
    let r = indicial_degrees(IndicialQuery { p, q, j, k });
    println!(
        "mu = {}, degrees = {{{}, {}}}",
        r.mu, r.gamma_plus, r.gamma_minus
    );
    Ok(0)
}

fn expand(leaf: Leaf) -> Result<u8, Error> {
    let rep = expand_profile_chain(leaf)?;
    let show = |name: &str, s: &hsleaf::series::PuiseuxSeries| {
        println!("{name}:");
        for (e, c) in s.table() {
            println!("  ρ^{e}: {c}");
        }
    };
    show("s(ρ)", &rep.s_of_r);
    show("w − linear part", &rep.w_minus_linear);
    let v = verify_asymptotic_claim(leaf)?;
    println!(
        "claimed s^(2/3), s^(1/3) terms: {} (residual O(ρ^{}))",
        if v.pass { "confirmed" } else { "REFUTED" },
        v.residual_order
    );
    Ok(if v.pass { 0 } else { 2 })
}

fn export(which: BuiltinArg, out: Option<PathBuf>) -> Result<u8, Error> {
    let (name, b) = match which {
        BuiltinArg::G => ("g", builtin_g()),
        BuiltinArg::GHat => ("g_hat", builtin_g_hat()),
        BuiltinArg::H => ("h", builtin_h()),
    };
    let file = CertificateFile::emit(&b, name)?;
    match out {
        Some(p) => {
            write(&p, &file.to_json())?;
            println!(
                "{name}: {} certificate written to {}",
                if file.summary.pass {
                    "passing"
                } else {
                    "FAILING"
                },
                p.display()
            );
        }
        None => println!("{}", file.to_json()),
    }
    Ok(if file.summary.pass { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::PaperCheck { json, barriers } => check_suite(json, barriers),
        Cmd::Verify { path, json } => verify(&path, json),
        Cmd::Solve {
            system,
            s_max,
            tol,
            csv,
        } => solve(system, s_max, tol, csv),
        Cmd::FitB { leaf, json } => fit_b(leaf.into(), json),
        Cmd::Synth {
            config,
            leaf,
            kind,
            improve,
            out,
        } => synth(config, leaf, kind, improve, out),
        Cmd::Indicial { p, q, j, k } => indicial(p, q, j, k),
        Cmd::Expand { leaf } => expand(leaf.into()),
        Cmd::Export { barrier, out } => export(barrier, out),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
