//! `hibi`: build distributive lattices, analyse the singular locus of their
//! Hibi toric varieties and cross-check the result.
//!
//! Exit codes: 0 success, 1 a verification disagreement or violated
//! invariant, 2 invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hibi_core::grid::{grid_embed, ideals_of_grid, random_grid, validate_grid, GridFile};
use hibi_core::io::{to_dot, LatticeFile, SingularLocusReport};
use hibi_core::lattice::DEFAULT_IDEAL_CAP;
use hibi_core::oracle::{cross_validate, OracleConfig};
use hibi_core::{DistLattice, Error, GridPoint, HibiData, JoinIrreducibleGrid, MinusculeSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hibi", version, about = "Singular loci of Hibi toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a lattice and write it as lattice JSON.
    Build {
        #[command(flatten)]
        input: Input,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report the singular locus of a lattice's Hibi variety.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a DOT Hasse diagram with singular intervals highlighted.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Cross-check face classification against the Jacobian criterion.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Seed for face sampling; HIBI_SEED takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate all faces of lattices up to this size.
        #[arg(long, default_value_t = 20)]
        full_enum_threshold: usize,
        /// Random faces to add above the threshold.
        #[arg(long, default_value_t = 200)]
        sample_count: usize,
        /// Worker threads for per-face checks (0 = all cores).
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        /// Include the per-face verdicts in the report.
        #[arg(long)]
        faces: bool,
    },
    /// Print grid coordinates for the join irreducibles of a lattice.
    GridEmbed {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a random grid lattice inside [1, width] × [1, height].
    RandomGrid {
        #[arg(long, default_value_t = 5)]
        width: u32,
        #[arg(long, default_value_t = 5)]
        height: u32,
        /// HIBI_SEED takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exactly one lattice source.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Lattice JSON file.
    lattice: Option<PathBuf>,
    /// Minuscule lattice, e.g. A4:2, B3:3, D5:1, E6:1.
    #[arg(long)]
    minuscule: Option<String>,
    /// Poset JSON file (same format as lattice JSON); builds its lattice of ideals.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Grid JSON file; builds the lattice of ideals of the grid.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// The chain with this many elements.
    #[arg(long)]
    chain: Option<usize>,
}

/// A loaded lattice, with grid coordinates for its join irreducibles when
/// the input supplies them.
struct Loaded {
    lattice: DistLattice,
    jgrid: Option<JoinIrreducibleGrid>,
}

impl Input {
    fn load(&self) -> anyhow::Result<Loaded> {
        let plain = |lattice| Ok(Loaded { lattice, jgrid: None });
        if let Some(path) = &self.lattice {
            let f: LatticeFile = read_json(path)?;
            return plain(f.to_lattice()?);
        }
        if let Some(s) = &self.minuscule {
            let spec: MinusculeSpec = s.parse()?;
            let lattice = spec.build()?;
            let jgrid = Some(spec.join_irreducible_grid(&lattice)?);
            return Ok(Loaded { lattice, jgrid });
        }
        if let Some(path) = &self.poset {
            let f: LatticeFile = read_json(path)?;
            let name = if f.name.is_empty() { stem(path) } else { format!("I({})", f.name) };
            return plain(DistLattice::ideals_lattice(&f.to_poset()?, DEFAULT_IDEAL_CAP)?.with_name(name));
        }
        if let Some(path) = &self.grid {
            let f: GridFile = read_json(path)?;
            let (lattice, jgrid) = ideals_of_grid(&validate_grid(f.points)?)?;
            return Ok(Loaded { lattice: lattice.with_name(stem(path)), jgrid: Some(jgrid) });
        }
        if let Some(k) = self.chain {
            if k == 0 {
                bail!(Error::InvalidSpec("chain(0)".into(), "a lattice needs at least one element".into()));
            }
            return plain(DistLattice::chain(k)?);
        }
        unreachable!("clap requires one input")
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Pretty JSON with arrays of scalars kept on one line, so points print as `[x, y]`.
fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let pretty = serde_json::to_string_pretty(value)?;
    let b = pretty.as_bytes();
    let mut out = String::with_capacity(pretty.len());
    let (mut i, mut in_str) = (0, false);
    while i < b.len() {
        let c = pretty[i..].chars().next().unwrap();
        if in_str {
            if c == '\\' {
                out.push_str(&pretty[i..i + 2]);
                i += 2;
                continue;
            }
            in_str = c != '"';
        } else if c == '"' {
            in_str = true;
        } else if c == '[' {
            if let Some(end) = scalar_array_end(b, i) {
                let items: Vec<&str> = pretty[i + 1..end].split(',').map(str::trim).collect();
                out.push('[');
                out.push_str(&items.join(", "));
                out.push(']');
                i = end + 1;
                continue;
            }
        }
        out.push_str(&pretty[i..i + c.len_utf8()]);
        i += c.len_utf8();
    }
    out.push('\n');
    Ok(out)
}

/// Index of the `]` closing the array at `start` if it holds only numbers,
/// booleans or null.
fn scalar_array_end(b: &[u8], start: usize) -> Option<usize> {
    let mut j = start + 1;
    while j < b.len() {
        match b[j] {
            b']' => return (j > start + 1 && b[start + 1..j].iter().any(|c| !c.is_ascii_whitespace())).then_some(j),
            b'[' | b'{' | b'"' => return None,
            _ => j += 1,
        }
    }
    None
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> anyhow::Result<()> {
    let text = to_json(value)?;
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn seed_from_env(flag: u64) -> anyhow::Result<u64> {
    match std::env::var("HIBI_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("HIBI_SEED={s} is not an integer")),
        Err(_) => Ok(flag),
    }
}

#[derive(Serialize)]
struct EmbeddedGrid {
    labels: Vec<String>,
    points: Vec<GridPoint>,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Build { input, output } => {
            let l = input.load()?.lattice;
            emit(&LatticeFile::from_lattice(&l), output.as_deref())?;
            eprintln!("{}: {} elements, dim {}", l.name(), l.len(), l.join_irreducibles().count());
            Ok(0)
        }
        Command::Analyze { input, output, dot } => {
            let Loaded { lattice: l, jgrid } = input.load()?;
            let data = match jgrid {
                Some(jg) => HibiData::with_grid(&l, jg)?,
                None => HibiData::new(&l)?,
            };
            let locus = data.singular_locus(&l)?;
            let report = SingularLocusReport::new(&l, &locus);
            emit(&report, output.as_deref())?;
            if let Some(p) = dot {
                fs::write(&p, to_dot(&l, Some(&locus))).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(if report.pure_codim3 { 0 } else { 1 })
        }
        Command::Verify { input, output, seed, full_enum_threshold, sample_count, parallelism, faces } => {
            let l = input.load()?.lattice;
            let cfg = OracleConfig {
                full_enum_threshold,
                sample_count,
                seed: seed_from_env(seed)?,
                parallelism,
                ..OracleConfig::default()
            };
            let mut report = cross_validate(&l, &cfg)?;
            if !faces {
                report.faces.clear();
            }
            emit(&report, output.as_deref())?;
            eprintln!(
                "{}: {} faces ({:?}), {} singular, {} disagreements",
                report.lattice,
                report.num_faces,
                report.mode,
                report.num_singular,
                report.disagreements.len()
            );
            Ok(if report.all_agree { 0 } else { 1 })
        }
        Command::GridEmbed { input, output } => {
            let l = input.load()?.lattice;
            let elems = l.nonzero_join_irreducibles();
            if elems.is_empty() {
                bail!(Error::EmptyGrid);
            }
            let j = DistLattice::from_poset(l.poset().induced(&elems))
                .map_err(|e| Error::JoinIrreduciblesNotLattice(e.to_string()))?;
            let emb = grid_embed(&j)?;
            let labels = elems.iter().map(|&e| l.label(e).to_string()).collect();
            emit(&EmbeddedGrid { labels, points: emb.coords }, output.as_deref())?;
            Ok(0)
        }
        Command::RandomGrid { width, height, seed, output } => {
            if width == 0 || height == 0 {
                bail!(Error::InvalidSpec(format!("{width}x{height}"), "bounds must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env(seed)?);
            emit(&GridFile { points: random_grid(width, height, &mut rng) }, output.as_deref())?;
            Ok(0)
        }
    }
}

/// Violated invariants exit 1; everything else is bad input.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::TheoremViolation(_)
            | Error::ClassifierDisagreement(_)
            | Error::EnumerationMismatch(_)
            | Error::CoordinateMismatch(_)
            | Error::VerificationFailed(_)
            | Error::RoundtripFailed(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
