//! Command-line front end. See README.md for usage and FORMAT.md for the
//! input and output formats.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_mcm::chambers::enumerate_chambers;
use toric_mcm::cone::{Cone, FaceLattice};
use toric_mcm::engine::{
    depth, graded_local_cohomology, mcm_check, mcm_enumerate, realization_system,
    singularity_sets, xi_of_ideal,
};
use toric_mcm::feasibility::integer_feasible;
use toric_mcm::simplicial::{relative_cohomology_dims, FieldSpec};
use toric_mcm::toric::{cosupport, support, Divisor, MonomialIdeal};

use input::{parse_ideal_flag, parse_int_csv, parse_problem, ProblemFile};

#[derive(Parser)]
#[command(
    name = "toric-mcm",
    about = "Exact local cohomology, chamber, and Cohen-Macaulay computations \
             for normal semigroup rings",
    version
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Problem file (JSON; see FORMAT.md)
    #[arg(short, long, global = true)]
    input: Option<String>,
    /// Override the divisor, e.g. `0,-2,0,0`
    #[arg(long, global = true)]
    divisor: Option<String>,
    /// Override the ideal: `maximal` or generators `1,1,0;0,0,1`
    #[arg(long, global = true)]
    ideal: Option<String>,
    /// Override the field characteristic (0 or a prime)
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker count for sweeps (default: available parallelism, or
    /// TORIC_MCM_JOBS)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on the number of rays for 2^n sweeps
    #[arg(long, global = true, default_value_t = toric_mcm::DEFAULT_RAY_CAP)]
    cap_rays: usize,
    /// Cap on the lattice rank
    #[arg(long, global = true, default_value_t = 6)]
    cap_rank: usize,
    /// Cap on the enumeration box
    #[arg(long, global = true, default_value_t = 5)]
    cap_box: u32,
    /// Re-verify reported witnesses by substitution and print the outcome
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Face lattice of the cone
    Faces,
    /// Support of the monomial ideal
    Support,
    /// Cosupport complex of the monomial ideal
    Cosupport,
    /// Classify every chamber of the shifted arrangement
    Chambers,
    /// One graded piece of local cohomology
    Cohomology {
        /// Degree m, e.g. `0,1,-1`
        #[arg(long)]
        degree: String,
    },
    /// Depth of the module
    Depth,
    /// Cohen-Macaulay certification and enumeration
    Mcm {
        #[command(subcommand)]
        action: McmAction,
    },
    /// Singularity filtration
    Singularity,
}

#[derive(Subcommand)]
enum McmAction {
    /// Certify whether the module is maximal Cohen-Macaulay
    Check,
    /// Sweep a divisor box and list the Cohen-Macaulay classes found
    Enumerate {
        /// Coefficient box half-width
        #[arg(long = "box", default_value_t = 3)]
        box_bound: u32,
    },
}

enum CliError {
    Usage(String),
    Validation(String),
    Cap(String),
}

impl CliError {
    fn report(&self) -> (u8, &str) {
        match self {
            CliError::Usage(m) | CliError::Validation(m) => (2, m.as_str()),
            CliError::Cap(m) => (3, m.as_str()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, msg) = e.report();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

struct Setup {
    cone: Cone,
    lattice: FaceLattice,
    divisor: Divisor,
    ideal: MonomialIdeal,
    field: FieldSpec,
}

fn load(opts: &GlobalOpts) -> Result<Setup, CliError> {
    let path = opts
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing --input <file>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let ProblemFile { lattice_rank, rays, divisor, ideal, field } =
        parse_problem(&text).map_err(CliError::Validation)?;
    if lattice_rank > opts.cap_rank {
        return Err(CliError::Cap(format!(
            "lattice rank {lattice_rank} exceeds --cap-rank {}",
            opts.cap_rank
        )));
    }
    if rays.len() > opts.cap_rays {
        return Err(CliError::Cap(format!(
            "{} rays exceed --cap-rays {}",
            rays.len(),
            opts.cap_rays
        )));
    }
    let n_rays = rays.len();
    let cone = Cone::validate(lattice_rank, rays)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let divisor = match &opts.divisor {
        Some(text) => {
            let coeffs = parse_int_csv(text).map_err(CliError::Validation)?;
            if coeffs.len() != n_rays {
                return Err(CliError::Validation(format!(
                    "--divisor has {} coefficients but there are {n_rays} rays",
                    coeffs.len()
                )));
            }
            Divisor::new(coeffs)
        }
        None => divisor.map(Divisor::new).unwrap_or_else(|| Divisor::zero(n_rays)),
    };
    let ideal = match &opts.ideal {
        Some(text) => parse_ideal_flag(text).map_err(CliError::Validation)?,
        None => ideal,
    };
    let field = match opts.field {
        Some(c) => FieldSpec::new(c).map_err(|e| CliError::Validation(e.to_string()))?,
        None => field,
    };
    let lattice = FaceLattice::compute(&cone);
    // reject invalid generators up front
    support(&cone, &lattice, &ideal).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(Setup { cone, lattice, divisor, ideal, field })
}

fn configure_jobs(opts: &GlobalOpts) {
    let jobs = opts.jobs.or_else(|| {
        std::env::var("TORIC_MCM_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = jobs {
        // a second build_global is harmless; the first configuration wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn emit(format: Format, json: serde_json::Value, table: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(&json).expect("serializable")),
        Format::Table => print!("{table}"),
    }
}

fn cap_err(e: toric_mcm::TooManyRays) -> CliError {
    CliError::Cap(e.to_string())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_jobs(&cli.opts);
    let setup = load(&cli.opts)?;
    let Setup { cone, lattice, divisor, ideal, field } = &setup;
    let opts = &cli.opts;
    match &cli.command {
        Command::Faces => {
            emit(
                opts.format,
                output::faces_json(cone, lattice),
                output::faces_table(cone, lattice),
            );
        }
        Command::Support => {
            let s =
                support(cone, lattice, ideal).map_err(|e| CliError::Validation(e.to_string()))?;
            emit(
                opts.format,
                output::support_json(lattice, &s),
                output::support_table(lattice, &s),
            );
        }
        Command::Cosupport => {
            let s =
                support(cone, lattice, ideal).map_err(|e| CliError::Validation(e.to_string()))?;
            let xi = cosupport(lattice, &s);
            emit(opts.format, output::complex_json(&xi), output::complex_table(&xi));
        }
        Command::Chambers => {
            let xi = xi_of_ideal(cone, lattice, ideal)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let reports = enumerate_chambers(cone, lattice, divisor, &xi, field, opts.cap_rays)
                .map_err(cap_err)?;
            if opts.verify {
                let mut checked = 0;
                for r in &reports {
                    if let Some(w) = &r.lattice_witness {
                        let sys = realization_system(cone, divisor, r.pi);
                        if !sys.satisfied_by_integer(w) {
                            return Err(CliError::Validation(format!(
                                "witness for {} failed substitution",
                                r.pi
                            )));
                        }
                        checked += 1;
                    }
                }
                eprintln!("verify: {checked} lattice witnesses re-checked by substitution");
            }
            emit(
                opts.format,
                output::chambers_json(divisor, &reports),
                output::chambers_table(&reports),
            );
        }
        Command::Cohomology { degree } => {
            let m = parse_int_csv(degree).map_err(CliError::Validation)?;
            if m.len() != cone.rank() {
                return Err(CliError::Validation(format!(
                    "--degree has {} entries but the rank is {}",
                    m.len(),
                    cone.rank()
                )));
            }
            let report = graded_local_cohomology(cone, lattice, divisor, ideal, &m, field)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            if opts.verify {
                // independent path: relative cohomology of the pair, shifted
                let xi = xi_of_ideal(cone, lattice, ideal)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                let rel = relative_cohomology_dims(report.sigma_m, &xi, field);
                for (i, &d) in report.dims.iter().enumerate() {
                    if d != rel.dim(i as isize - 1) {
                        return Err(CliError::Validation(format!(
                            "two cohomology paths disagree at level {i}"
                        )));
                    }
                }
                eprintln!("verify: relative-complex path agrees at every level");
            }
            emit(
                opts.format,
                output::cohomology_json(&report),
                output::cohomology_table(&report),
            );
        }
        Command::Depth => {
            let d = depth(cone, lattice, divisor, field, opts.cap_rays).map_err(cap_err)?;
            emit(opts.format, output::depth_json(d), format!("depth: {d}\n"));
        }
        Command::Mcm { action } => match action {
            McmAction::Check => {
                let cert =
                    mcm_check(cone, lattice, divisor, field, opts.cap_rays).map_err(cap_err)?;
                if opts.verify {
                    if let Some(v) = &cert.violation {
                        let sys = realization_system(cone, divisor, v.pi);
                        if !sys.satisfied_by_integer(&v.witness) {
                            return Err(CliError::Validation(
                                "violation witness failed substitution".into(),
                            ));
                        }
                        eprintln!("verify: violation witness re-checked by substitution");
                    } else {
                        for (pi, d) in &cert.per_pi {
                            if matches!(d, toric_mcm::engine::McmDisjunct::NoLatticePoint { .. }) {
                                let sys = realization_system(cone, divisor, *pi);
                                if integer_feasible(&sys)
                                    .map_err(|e| CliError::Validation(e.to_string()))?
                                    .is_feasible()
                                {
                                    return Err(CliError::Validation(format!(
                                        "subset {pi} unexpectedly feasible"
                                    )));
                                }
                            }
                        }
                        eprintln!("verify: all infeasibility verdicts re-checked");
                    }
                }
                emit(opts.format, output::mcm_json(&cert), output::mcm_table(&cert));
            }
            McmAction::Enumerate { box_bound } => {
                if *box_bound > opts.cap_box {
                    return Err(CliError::Cap(format!(
                        "--box {box_bound} exceeds --cap-box {}",
                        opts.cap_box
                    )));
                }
                let classes = mcm_enumerate(cone, lattice, *box_bound, field, opts.cap_rays)
                    .map_err(cap_err)?;
                emit(
                    opts.format,
                    output::classes_json(*box_bound, &classes),
                    output::classes_table(*box_bound, &classes),
                );
            }
        },
        Command::Singularity => {
            let sets = singularity_sets(cone, lattice, divisor, field, opts.cap_rays)
                .map_err(cap_err)?;
            emit(
                opts.format,
                output::singularity_json(lattice, &sets),
                output::singularity_table(lattice, &sets),
            );
        }
    }
    Ok(())
}
