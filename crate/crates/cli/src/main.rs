use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use waring4_core::atlas::{cmd_atlas, AtlasConfig};
use waring4_core::decompose::{decompose, sample_point, verify_decomposition, SampleConfig};
use waring4_core::poly::HomogeneousForm;
use waring4_core::report::{binary_text, AtlasJson, ClassifyJson, DecompositionJson, SampleJson, SylvesterJson, VerifyJson};
use waring4_core::schemes::{parse_scheme, Degree4Scheme};
use waring4_core::stratify::{classify_scheme, Verdict};
use waring4_core::sylvester::{binary_rank_with_rng, BinaryForm};
use waring4_core::Error;

#[derive(Parser)]
#[command(name = "waring4", version, about = "Exact Waring ranks of forms in the span of a degree-4 scheme")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "WARING4_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct Sampling {
    /// Half-width of the integer grid for sampled coefficients.
    #[arg(long, default_value_t = 3)]
    grid: i64,
    #[arg(long, default_value_t = 50)]
    retries: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, border rank and apolar witness of a binary form.
    Sylvester {
        /// Binary form in x0, x1 (inline or a file path).
        #[arg(long)]
        form: String,
    },
    /// Stratum of the forms in the span of a scheme.
    Classify {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Verified decomposition of a form in the span of a scheme; samples one if no form is given.
    Decompose {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        form: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Exact check of a decomposition written by `decompose`.
    Verify {
        /// Output of `decompose`.
        #[arg(long)]
        witness: PathBuf,
        /// Form to check against; defaults to the form recorded in the witness.
        #[arg(long)]
        form: Option<String>,
    },
    /// Random form in the span of a scheme, off every proper subscheme span.
    Sample {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Random instances of every configuration for each small (m, d).
    Atlas {
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
        #[arg(long, default_value_t = 1)]
        per_config: usize,
    },
}

enum Failure {
    Parse(String),
    Unclassified(String),
    Verification(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Unclassified(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Unclassified(m) | Failure::Verification(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Degree(_) | Error::Dimension(_) | Error::Scheme(_) => Failure::Parse(e.to_string()),
            Error::Verification(_) => Failure::Verification(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

/// Contents of the file if `arg` names one, `arg` itself otherwise.
fn inline_or_file(arg: &str) -> Result<String, Failure> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(std::fs::read_to_string(p)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn read_scheme(path: &Path) -> Result<Degree4Scheme, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(parse_scheme(&text)?)
}

fn read_form(arg: &str, a: &Degree4Scheme, d: usize) -> Result<HomogeneousForm, Failure> {
    let f = HomogeneousForm::parse(&inline_or_file(arg)?, Some(a.ambient_dim() + 1))?;
    if f.degree() != d {
        return Err(Failure::Parse(format!("form has degree {}, expected {d}", f.degree())));
    }
    Ok(f)
}

struct Output {
    json: String,
    table: String,
}

fn render<T: Serialize>(value: &T, table: String) -> Output {
    Output { json: serde_json::to_string_pretty(value).expect("serializable") + "\n", table }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let seed = cli.common.seed;
    match &cli.command {
        Command::Sylvester { form } => {
            let f = HomogeneousForm::parse(&inline_or_file(form)?, Some(2))?;
            let g = BinaryForm::from_form(&f)?;
            let cert = binary_rank_with_rng(&g, &mut rng(seed))?;
            let j = SylvesterJson::new(&g, &cert);
            let mut t = format!("degree       {}\nborder rank  {}\nrank         {}\nwitness      {}\n", j.degree, j.border_rank, j.rank, j.witness_poly);
            if let Some(pts) = &j.rational_points {
                let _ = writeln!(t, "points       {}", pts.len());
            }
            Ok(render(&j, t))
        }
        Command::Classify { scheme, degree } => {
            let a = read_scheme(scheme)?;
            let r = classify_scheme(&a, *degree)?;
            let j = ClassifyJson::new(&r, *degree);
            let t = format!(
                "configuration  {}\nspan           P^{}\nverdict        {}\nrank           {}\nrecipe         {}\n",
                j.configuration,
                j.span_dim,
                j.verdict,
                j.rank.map_or("-".into(), |r| r.to_string()),
                j.recipe.clone().unwrap_or_else(|| "-".into())
            );
            let out = render(&j, t);
            if let Verdict::Unclassified(tag) = &r.verdict {
                emit(cli, &out)?;
                return Err(Failure::Unclassified(format!("unclassified: {tag}")));
            }
            Ok(out)
        }
        Command::Decompose { scheme, degree, form, sampling } => {
            let a = read_scheme(scheme)?;
            let f = match form {
                Some(s) => read_form(s, &a, *degree)?,
                None => sample_point(&a, *degree, seed, &sampling.config())?.form,
            };
            let cls = classify_scheme(&a, *degree)?;
            if let Verdict::Unclassified(tag) = &cls.verdict {
                return Err(Failure::Unclassified(format!("unclassified: {tag}")));
            }
            let out = decompose(&a, *degree, &f, seed)?;
            let verified = out.report.member && out.report.irredundant;
            let recipe = out.classification.verdict.recipe().map(|r| r.to_string());
            let j = DecompositionJson::new(&f, &out.decomposition, recipe, verified);
            let mut t = format!("form    {}\nrank    {}\nrecipe  {}\n", j.form, j.rank, j.recipe.clone().unwrap_or_default());
            for p in &out.decomposition.explicit {
                let _ = writeln!(t, "point   {} * ({})^{degree}", p.1, linear(&p.0));
            }
            for b in &out.decomposition.blocks {
                let _ = writeln!(t, "block   {} points on a degree-{} curve, roots of {}", b.h.degree(), b.carrier.degree(), binary_text(&b.h));
            }
            Ok(render(&j, t))
        }
        Command::Verify { witness, form } => {
            let text = std::fs::read_to_string(witness).map_err(|e| Failure::Parse(format!("{}: {e}", witness.display())))?;
            let w = DecompositionJson::parse(&text)?;
            let dec = w.to_decomposition()?;
            let n = dec
                .explicit
                .first()
                .map(|p| p.0.len())
                .or_else(|| dec.blocks.first().map(|b| b.carrier.num_vars()))
                .ok_or_else(|| Failure::Parse("empty decomposition".into()))?;
            let f = HomogeneousForm::parse(&inline_or_file(form.as_deref().unwrap_or(&w.form))?, Some(n))?;
            let r = verify_decomposition(&f, &dec);
            let j = VerifyJson::new(&r);
            let t = format!("member       {}\nirredundant  {}\nsize         {}\n", j.member, j.irredundant, j.size);
            let out = render(&j, t);
            if !j.verified {
                emit(cli, &out)?;
                return Err(Failure::Verification("the witness does not verify".into()));
            }
            Ok(out)
        }
        Command::Sample { scheme, degree, sampling } => {
            let a = read_scheme(scheme)?;
            let s = sample_point(&a, *degree, seed, &sampling.config())?;
            let j = SampleJson::new(&s);
            let t = format!(
                "form                {}\nattempts            {}\ncatalecticant rank  {}\n",
                j.form,
                j.attempts,
                j.catalecticant_rank.map_or("-".into(), |r| r.to_string())
            );
            Ok(render(&j, t))
        }
        Command::Atlas { m_max, d_max, per_config } => {
            let atlas = cmd_atlas(&AtlasConfig { m_max: *m_max, d_min: 3, d_max: *d_max, per_config: *per_config, seed })?;
            let j = AtlasJson::new(&atlas);
            let mut t = String::from("m  d  realized             table                within  unreachable\n");
            for c in &j.cells {
                let _ = writeln!(t, "{:<2} {:<2} {:<20} {:<20} {:<7} {}", c.m, c.d, set(&c.realized), set(&c.table), c.within_table, set(&c.unreachable));
            }
            let out = render(&j, t);
            if j.cells.iter().any(|c| !c.within_table) {
                emit(cli, &out)?;
                return Err(Failure::Verification("realized ranks outside the table".into()));
            }
            Ok(out)
        }
    }
}

impl Sampling {
    fn config(&self) -> SampleConfig {
        SampleConfig { grid: self.grid, retries: self.retries }
    }
}

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_chacha::rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn linear(p: &[waring4_core::Scalar]) -> String {
    HomogeneousForm::linear(p).to_string()
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let text = if cli.common.format == Format::Json { &out.json } else { &out.table };
    match &cli.common.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("waring4: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
