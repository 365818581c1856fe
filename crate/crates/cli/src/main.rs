use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use wciscope::lab::{self, LabReport};
use wciscope::qs::{cone_dimension_probe, search_singular_points, QsStatus, SearchOptions, DEFAULT_BUDGET};
use wciscope::schema::DescriptorFile;
use wciscope::search::{search, IndexFilter, SearchBounds};
use wciscope::wci::{HilbertSeries, WellFormedness};
use wciscope::{AutStructure, ClassificationReport, Exec, SingularStratum, WciDescriptor, WeightedProjectiveSpace};

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;

/// Weighted projective spaces and weighted complete intersections.
///
/// Set WCISCOPE_THREADS to cap parallelism (1 runs sequentially).
#[derive(Parser, Debug)]
#[command(name = "wciscope", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Base seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Primes used by finite-field checks.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = vec![5u64, 7, 11])]
    primes: Vec<u64>,
    /// Points examined per prime; below this size the scan is exhaustive.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Highest degree listed in graded dimensions and Hilbert series.
    #[arg(long, global = true, default_value_t = 10)]
    up_to: u64,
    /// Attach a quasi-smoothness probe of a seeded general member.
    #[arg(long, global = true)]
    probe_qs: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Well-formedness, singular strata, Picard generator and graded dimensions.
    Wps {
        #[arg(required = true)]
        weights: Vec<u64>,
    },
    /// Invariants of a weighted complete intersection.
    Classify {
        /// Weights, comma separated.
        #[arg(long, short, value_delimiter = ',', required_unless_present = "file")]
        weights: Vec<u64>,
        /// Degrees, comma separated.
        #[arg(long, short, value_delimiter = ',', required_unless_present = "file")]
        degrees: Vec<u64>,
        /// Descriptor JSON file instead of --weights/--degrees.
        #[arg(long, conflicts_with_all = ["weights", "degrees"])]
        file: Option<String>,
        /// Report strata at exactly codimension 2 as indeterminate.
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate descriptors within bounds.
    Search(SearchArgs),
    /// Dimensions of the automorphism group of P(weights).
    Aut {
        #[arg(required = true)]
        weights: Vec<u64>,
    },
    /// Look for singular points on the affine cone of an explicit intersection.
    Qs {
        /// Descriptor JSON file with equations.
        file: String,
        /// Use the Euler relation to skip equation evaluation.
        #[arg(long)]
        euler_shortcut: bool,
        /// Also count cone points over F_p to estimate the codimension.
        #[arg(long)]
        probe_dim: Option<u64>,
        /// Exit with status 1 unless a singular cone point is found.
        #[arg(long)]
        expect_singular: bool,
    },
    /// Reconstruct and verify the explicit examples.
    Lab {
        #[command(subcommand)]
        example: LabCommand,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    /// Largest ambient dimension N.
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    max_weight: u64,
    #[arg(long, default_value_t = 1)]
    min_degree: u64,
    #[arg(long)]
    max_degree: u64,
    /// Codimension, 1 or 2.
    #[arg(long, default_value_t = 1)]
    codim: usize,
    /// any, pos, zero, neg or an exact integer.
    #[arg(long, default_value = "any", allow_hyphen_values = true)]
    index: String,
}

#[derive(Subcommand, Debug)]
enum LabCommand {
    /// x_{N-1} x_N + F = 0 in P(1^{N-1}, a, a) with its torus action.
    Torus { n: usize, a: u64 },
    /// x_{N-3} x_{N-1} + x_{N-2} x_N + F = 0 in P(1^{N-1}, a, a) with its additive action.
    Additive {
        n: usize,
        a: u64,
        /// Seed for the shift polynomial (defaults to --seed).
        #[arg(long)]
        phi_seed: Option<u64>,
    },
    /// f_2 = f_{2m} = 0 in P(1^N, m) with an automorphism acting trivially.
    TrivialAction {
        n: usize,
        m: u64,
        /// Seed for g (defaults to --seed).
        #[arg(long)]
        g_seed: Option<u64>,
    },
    /// The two hypersurfaces with a known singular point on the cone.
    NonQs,
    /// Intersection numbers of the surface built from a nodal plane curve.
    NodalCurve { d: u64 },
    /// Every identity over the standard parameter grid and 20 seeds.
    Sweep,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Verification(String),
}

impl From<wciscope::Error> for Failure {
    fn from(e: wciscope::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = Exec::from_env();
    match run(&cli, exec) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFICATION_FAILED)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID_INPUT)
        }
    }
}

fn run(cli: &Cli, exec: Exec) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Wps { weights } => cmd_wps(g, weights.clone()),
        Command::Classify { weights, degrees, file, strict } => {
            let d = match file {
                Some(path) => DescriptorFile::from_json(&read(path)?)?.parse()?.descriptor().clone(),
                None => WciDescriptor::new(weights.clone(), degrees.clone())?,
            };
            cmd_classify(g, &d, *strict)
        }
        Command::Search(args) => cmd_search(g, args, exec),
        Command::Aut { weights } => {
            let report = AutStructure::of(&WeightedProjectiveSpace::new(weights.clone())?)?;
            Ok(render(g, &report, |r| {
                format!(
                    "weights {:?}\nunipotent {}\nreductive {}\ntotal {}\nphi dims {:?}\nfactors {:?}\n",
                    r.weights, r.unipotent_dim, r.reductive_dim, r.total_dim, r.per_weight_phi_dims, r.reductive_factors
                )
            }))
        }
        Command::Qs { file, euler_shortcut, probe_dim, expect_singular } => {
            cmd_qs(g, file, *euler_shortcut, *probe_dim, *expect_singular, exec)
        }
        Command::Lab { example } => cmd_lab(g, example, exec),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{path}: {e}")))
}

fn options(g: &Global, exec: Exec, default_budget: u64) -> SearchOptions {
    SearchOptions {
        primes: g.primes.clone(),
        budget: g.budget.unwrap_or(default_budget),
        seed: g.seed,
        euler_shortcut: false,
        exec,
    }
}

fn render<T: Serialize>(g: &Global, value: &T, text: impl FnOnce(&T) -> String) -> String {
    if g.json {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text(value)
    }
}

#[derive(Serialize)]
struct WpsReport {
    weights: Vec<u64>,
    well_formed: bool,
    singular_strata: Option<Vec<SingularStratum>>,
    picard_generator: u64,
    graded_dims: Vec<u64>,
}

fn cmd_wps(g: &Global, weights: Vec<u64>) -> Outcome {
    let p = WeightedProjectiveSpace::new(weights)?;
    let well_formed = p.is_well_formed();
    let report = WpsReport {
        weights: p.weights().to_vec(),
        well_formed,
        singular_strata: if well_formed { Some(p.singular_strata()?) } else { None },
        picard_generator: p.picard_generator(),
        graded_dims: p.hilbert_series(g.up_to),
    };
    Ok(render(g, &report, |r| {
        let mut s = format!("{p}\nwell_formed {}\n", r.well_formed);
        if let Some(strata) = &r.singular_strata {
            for st in strata {
                let _ = writeln!(s, "stratum {:?} gcd {} dim {}", st.indices, st.gcd, st.dim);
            }
        }
        let _ = writeln!(s, "picard {}\ngraded_dims {:?}", r.picard_generator, r.graded_dims);
        s
    }))
}

#[derive(Serialize)]
struct ClassifyReport {
    classification: ClassificationReport,
    wellformedness: WellFormedness,
    hilbert_series: HilbertSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    qs: Option<wciscope::search::QsProbe>,
}

fn cmd_classify(g: &Global, d: &WciDescriptor, strict: bool) -> Outcome {
    let report = ClassifyReport {
        classification: d.classify(),
        wellformedness: d.generic_wellformedness(strict)?,
        hilbert_series: d.hilbert_series(g.up_to),
        qs: g.probe_qs.then(|| wciscope::search::probe_general_member(d, &options(g, Exec::Sequential, 20_000))),
    };
    if report.classification.linear_cone {
        eprintln!("warning: {d} is an intersection with a linear cone");
    }
    Ok(render(g, &report, |r| {
        let c = &r.classification;
        let mut s = format!(
            "{d}\ndimension {}\nindex {}\nkind {:?}\nomega O_X({})\nrationally_connected {}\nnot_uniruled {:?}\n",
            c.dimension, c.index, c.kind, c.canonical_sheaf_exponent, c.rationally_connected, c.not_uniruled
        );
        if let Some(note) = c.class_group_note {
            let _ = writeln!(s, "class_group {}", note.code());
        }
        if c.cy_stabilizer_note {
            s.push_str("cy_stabilizer_note true\n");
        }
        let _ = writeln!(s, "linear_cone {}", c.linear_cone);
        let _ = writeln!(s, "wellformedness {}", wellformedness_text(&r.wellformedness));
        let _ = writeln!(s, "hilbert {:?}", r.hilbert_series.coefficients);
        if let Some(qs) = &r.qs {
            let _ = writeln!(s, "qs {}", serde_json::to_string(qs).expect("serializes"));
        }
        s
    }))
}

fn wellformedness_text(w: &WellFormedness) -> String {
    match w {
        WellFormedness::WellFormed => "well_formed".into(),
        WellFormedness::Fails { stratum } => format!("fails on {:?}", stratum.stratum.indices),
        WellFormedness::Indeterminate { stratum } => format!("indeterminate on {:?}", stratum.stratum.indices),
    }
}

fn cmd_search(g: &Global, args: &SearchArgs, exec: Exec) -> Outcome {
    let bounds = SearchBounds {
        min_n: args.min_n,
        max_n: args.max_n,
        max_weight: args.max_weight,
        min_degree: args.min_degree,
        max_degree: args.max_degree,
        codim: args.codim,
        index: args.index.parse::<IndexFilter>()?,
    };
    let probe = g.probe_qs.then(|| options(g, exec, 20_000));
    let hits = search(&bounds, probe.as_ref(), exec)?;
    Ok(render(g, &hits, |hits| {
        let mut s = String::new();
        for h in hits {
            let c = &h.classification;
            let _ = write!(s, "{:?} {:?} index {} {:?}", c.weights, c.degrees, c.index, c.kind);
            if let Some(qs) = &h.qs {
                let _ = write!(s, " qs {}", serde_json::to_string(qs).expect("serializes"));
            }
            s.push('\n');
        }
        s
    }))
}

fn cmd_qs(g: &Global, file: &str, euler_shortcut: bool, probe_dim: Option<u64>, expect_singular: bool, exec: Exec) -> Outcome {
    let parsed = DescriptorFile::from_json(&read(file)?)?.parse()?;
    let x = parsed
        .explicit()
        .ok_or_else(|| Failure::Invalid(format!("{file}: no equations given")))?;
    let opts = SearchOptions { euler_shortcut, ..options(g, exec, DEFAULT_BUDGET) };
    let verdict = search_singular_points(x, &opts)?;
    let confirmed = verdict.witnesses.iter().map(|w| x.confirm_over_rationals(w)).collect::<Result<Vec<_>, _>>()?;
    let probe = probe_dim.map(|p| cone_dimension_probe(x, p, exec)).transpose()?;
    let report = json!({
        "weights": x.descriptor().weights(),
        "degrees": x.descriptor().degrees(),
        "verdict": verdict,
        "witness_confirmed_over_q": confirmed,
        "cone_dimension_probe": probe,
    });
    let out = render(g, &report, |_| {
        let mut s = format!("{}\nstatus {:?}\n", x.descriptor(), verdict.status);
        for (w, ok) in verdict.witnesses.iter().zip(&confirmed) {
            let _ = writeln!(s, "witness {:?} over F_{} confirmed_over_q {}", w.point, w.prime, ok);
        }
        for scan in &verdict.scans {
            let _ = writeln!(
                s,
                "F_{} {:?} examined {} cone_points {}",
                scan.prime, scan.mode, scan.points_examined, scan.cone_points
            );
        }
        if let Some(p) = &probe {
            let _ = writeln!(
                s,
                "cone count over F_{} {} estimated codim {} expected {}",
                p.prime, p.count, p.estimated_codim, p.expected_codim
            );
        }
        s
    });
    if expect_singular && verdict.status != QsStatus::SingularConePointFound {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

const SWEEP_SEEDS: u64 = 20;

fn lab_reports(g: &Global, example: &LabCommand, exec: Exec) -> Result<Vec<LabReport>, Failure> {
    let qs = g.probe_qs.then(|| options(g, Exec::Sequential, 20_000));
    Ok(match example {
        LabCommand::Torus { n, a } => vec![lab::torus_hypersurface(*n, *a, g.seed)?.report(qs.as_ref())?],
        LabCommand::Additive { n, a, phi_seed } => {
            vec![lab::additive_hypersurface(*n, *a, phi_seed.unwrap_or(g.seed), g.seed)?.report(qs.as_ref())?]
        }
        LabCommand::TrivialAction { n, m, g_seed } => {
            vec![lab::trivial_action_intersection(*n, *m, g_seed.unwrap_or(g.seed), g.seed)?.report()?]
        }
        LabCommand::NonQs => {
            let opts = SearchOptions { primes: vec![5], ..options(g, exec, DEFAULT_BUDGET) };
            lab::non_quasi_smooth_examples().iter().map(|e| e.report(&opts)).collect::<Result<_, _>>()?
        }
        LabCommand::NodalCurve { d } => vec![lab::nodal_curve_surface(*d)?.report()],
        LabCommand::Sweep => sweep(g.seed, exec)?,
    })
}

/// Seeds `seed..seed+20` for every `N` in 4..=6 and `a` in 1..=3 (torus and
/// additive) and `m` in 2..=3 (trivial action), then the non-quasi-smooth
/// pair and the nodal-curve numbers for `d` in 4..=12.
fn sweep(seed: u64, exec: Exec) -> Result<Vec<LabReport>, Failure> {
    #[derive(Clone, Copy)]
    enum Job {
        Torus(usize, u64, u64),
        Additive(usize, u64, u64),
        Trivial(usize, u64, u64),
    }
    let mut jobs = Vec::new();
    for n in 4..=6 {
        for s in seed..seed + SWEEP_SEEDS {
            for a in 1..=3 {
                jobs.push(Job::Torus(n, a, s));
                jobs.push(Job::Additive(n, a, s));
            }
            for m in 2..=3 {
                jobs.push(Job::Trivial(n, m, s));
            }
        }
    }
    let mut reports = exec
        .map(&jobs, |job| match *job {
            Job::Torus(n, a, s) => lab::torus_hypersurface(n, a, s)?.report(None),
            Job::Additive(n, a, s) => lab::additive_hypersurface(n, a, s, s)?.report(None),
            Job::Trivial(n, m, s) => lab::trivial_action_intersection(n, m, s, s)?.report(),
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let opts = SearchOptions { primes: vec![5], exec, ..Default::default() };
    for e in lab::non_quasi_smooth_examples() {
        reports.push(e.report(&opts)?);
    }
    for d in 4..=12 {
        reports.push(lab::nodal_curve_surface(d)?.report());
    }
    Ok(reports)
}

fn cmd_lab(g: &Global, example: &LabCommand, exec: Exec) -> Outcome {
    let reports = lab_reports(g, example, exec)?;
    let all_verified = reports.iter().all(|r| r.verified);
    let out = render(g, &reports, |reports| {
        let mut s = String::new();
        for r in reports {
            let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "{} {} verified={}", r.example, params.join(" "), r.verified);
            if reports.len() == 1 {
                for (k, v) in &r.details {
                    let _ = writeln!(s, "  {k}: {v}");
                }
            }
        }
        if reports.len() > 1 {
            let ok = reports.iter().filter(|r| r.verified).count();
            let _ = writeln!(s, "{ok}/{} verified", reports.len());
        }
        s
    });
    if all_verified {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
