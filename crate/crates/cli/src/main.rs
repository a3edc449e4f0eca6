//! `fqiso`: instance generation, splitting, maximal orders, lattice
//! reduction and certificate checking.
//!
//! Exit codes: 0 success, 1 certificate rejected by `verify`, 2 not split,
//! 3 invalid input, 4 promise violation detected mid-run.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fqiso::io::{AlgebraFile, GroundTruthFile, IsoFile, LatticeFile};
use fqiso::lattice::{reduce_basis, reduce_generators};
use fqiso::order::{maximal_order_fqx, maximal_order_infinity};
use fqiso::polyrat::RatField;
use fqiso::split::{split_pipeline, verify_images};
use fqiso::Error;

#[derive(Parser)]
#[command(name = "fqiso", version, about = "Explicit isomorphisms A -> M_n(F_q(x))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random split instance with a separate ground-truth file.
    Gen {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        max_deg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Algebra file (stdout if omitted).
        #[arg(short)]
        o: Option<PathBuf>,
        /// Ground-truth change of basis.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Run the splitting pipeline and write the isomorphism.
    Split {
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        check_associativity: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Maximal order over F_q[x] or at the prime 1/x.
    Maxorder {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = RingArg::Fx)]
        ring: RingArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        check_associativity: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Reduced basis of a lattice (or of the module spanned by generators).
    Reduce {
        lattice: PathBuf,
        /// Characteristic for files without a "p" field.
        #[arg(long)]
        p: Option<u32>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Re-check an isomorphism file against an algebra file.
    Verify { algebra: PathBuf, iso: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Fx,
    Infty,
}

enum Failure {
    Lib(Error),
    Input(String),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Input(_) => 3,
            Failure::Lib(e) => match e {
                Error::NotSplit => 2,
                Error::NotPrime(_)
                | Error::Reducible
                | Error::InvalidInput(_)
                | Error::NotUnital
                | Error::NotSquare
                | Error::Dependent
                | Error::NotFullRank
                | Error::NotReduced(_)
                | Error::ZeroPolynomial
                | Error::DegenerateSeed => 3,
                Error::PromiseViolation(_)
                | Error::RootFailure
                | Error::DegenerateBasis
                | Error::NotIdempotentModRadical
                | Error::BadIdempotent(_)
                | Error::VerificationFailure(_) => 4,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Input(s) => format!("invalid input: {s}"),
            Failure::Rejected(s) => format!("rejected: {s}"),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_algebra(path: &Path, check: bool) -> Result<fqiso::algebra::StructureAlgebra, Failure> {
    let file: AlgebraFile = read_json(path)?;
    let alg = file.to_algebra()?;
    if check {
        alg.check_associativity()?;
    }
    Ok(alg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { p, e, n, max_deg, seed, o, truth } => {
            let inst = fqiso::gen::gen_instance(p, e, n, max_deg, seed)?;
            write_json(o.as_deref(), &AlgebraFile::from_algebra(&inst.algebra))?;
            if let Some(t) = truth {
                write_json(Some(&t), &GroundTruthFile::new(&inst))?;
            }
        }
        Command::Split { algebra, seed, check_associativity, o } => {
            let alg = load_algebra(&algebra, check_associativity)?;
            let res = split_pipeline(&alg, seed)?;
            write_json(o.as_deref(), &IsoFile::new(alg.field(), &res.iso, &res.report))?;
        }
        Command::Maxorder { algebra, ring, seed, check_associativity, o } => {
            let alg = load_algebra(&algebra, check_associativity)?;
            let rep = match ring {
                RingArg::Fx => maximal_order_fqx(&alg, seed)?,
                RingArg::Infty => maximal_order_infinity(&alg, seed)?,
            };
            write_json(o.as_deref(), &LatticeFile::from_order(alg.field(), &rep))?;
        }
        Command::Reduce { lattice, p, o } => {
            let file: LatticeFile = read_json(&lattice)?;
            let field = file.field(p)?;
            let rf = RatField::new(field.clone());
            let l = file.to_lattice(&rf)?;
            let reduced = if l.vectors.len() == l.m {
                match reduce_basis(&rf, &l) {
                    Ok((r, _)) => r,
                    Err(Error::Dependent | Error::NotFullRank) => reduce_generators(&rf, l.m, &l.vectors)?,
                    Err(e) => return Err(e.into()),
                }
            } else {
                reduce_generators(&rf, l.m, &l.vectors)?
            };
            write_json(o.as_deref(), &LatticeFile::from_lattice(&field, &reduced))?;
        }
        Command::Verify { algebra, iso } => {
            let alg = load_algebra(&algebra, false)?;
            let file: IsoFile = read_json(&iso)?;
            if file.n != alg.degree() {
                return Err(Failure::Rejected(format!("n = {} but the algebra has degree {}", file.n, alg.degree())));
            }
            let images = file.images(alg.rf())?;
            match verify_images(&alg, &images) {
                Ok(()) => eprintln!("ok: {} basis products checked", alg.dim() * alg.dim()),
                Err(Error::VerificationFailure(why)) => return Err(Failure::Rejected(why)),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fqiso: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
