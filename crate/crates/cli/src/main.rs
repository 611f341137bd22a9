use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dcat::dblcat::{restrict_span, DoubleCategory, Span};
use dcat::dsl::{parse_document, print_document, Document, Entry, Failure, Report};
use dcat::family::{terminal_dictionary, DblFam, FamProarrow};
use dcat::theory::{check_model, check_transformation, cmon_category_to_model, model_to_cmon_category};
use dcat::universal::sample::{Sampler, Sizes};
use dcat::universal::{
    check_iso_strong, check_universal_coproduct, check_universal_product, diagonal_proarrow, span_coproduct, span_product, CheckOptions,
};

#[derive(Parser)]
#[command(name = "dcat", version, about = "Spans, double families, (co)products and model checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Carrier bound for bounded checks.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    bound: u64,
    /// Cap on the number of cases a checker examines.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled suites (ChaCha8 seeded from this value).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Composite of two spans or two span families.
    Compose { file: PathBuf, first: String, second: String },
    /// Product of a span family.
    Product { file: PathBuf, family: Option<String> },
    /// Coproduct of a span family.
    Coproduct { file: PathBuf, family: Option<String> },
    /// Restriction of a span along two functions into its feet.
    Restrict { file: PathBuf, span: String, left: String, right: String },
    /// Diagonal proarrow of a set.
    Diagonal { file: PathBuf, set: Option<String> },
    /// Bounded check of the product and coproduct of a family, or of 50
    /// sampled families when no file is given.
    CheckUniversal { file: Option<PathBuf>, family: Option<String> },
    /// Whether the product comparisons of a composable pair are invertible,
    /// or the iso-strong law on 200 sampled pairs when no file is given.
    CheckIsoStrong { file: Option<PathBuf>, first: Option<String>, second: Option<String> },
    /// Checks a model of a theory.
    CheckModel { file: PathBuf, model: Option<String> },
    /// Checks a transformation between models.
    CheckTransformation { file: PathBuf, transformation: Option<String> },
    /// Bounded check that families over the terminal double category are
    /// spans.
    FamIsoSpan,
    /// Prints a document canonically; with a model, also checks that it
    /// survives the trip through CMon-categories.
    Roundtrip { file: PathBuf, model: Option<String> },
}

/// A usage, input or parse error.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Outcome {
    doc: Document,
    summary: String,
    passed: bool,
}

impl Outcome {
    fn done(doc: Document, summary: String) -> Self {
        Outcome { doc, summary, passed: true }
    }

    fn checked(mut doc: Document, what: String, report: Report) -> Self {
        let passed = report.passed();
        let summary = format!("{what}: {} ({} cases, {} failures)", if passed { "pass" } else { "fail" }, report.cases, report.failures.len());
        doc.insert("report", Entry::report(report));
        Outcome { doc, summary, passed }
    }
}

fn load(path: &Path) -> Result<Document, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// The given entry name, or the only entry of that kind.
fn pick(doc: &Document, given: Option<String>, kind: &str) -> Result<String, Usage> {
    if let Some(name) = given {
        return Ok(name);
    }
    match doc.names_of(kind).as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(Usage(format!("no {kind} entry in the document"))),
        many => Err(Usage(format!("several {kind} entries ({}); name one", many.join(", ")))),
    }
}

fn opts(cli: &Cli) -> CheckOptions {
    CheckOptions {
        bound: cli.bound as usize,
        budget: cli.budget as usize,
    }
}

fn universal_failures(m: &FamProarrow<Span>, opts: &CheckOptions, prefix: &str) -> Result<(usize, Vec<Failure>), Usage> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in [check_universal_product(&Span, &span_product(m)?, opts), check_universal_coproduct(&Span, &span_coproduct(m)?, opts)] {
        let part = Report::from(&r);
        cases += part.cases;
        failures.extend(part.failures.into_iter().map(|f| Failure {
            instance: format!("{prefix}{}", f.instance),
            ..f
        }));
    }
    Ok((cases, failures))
}

fn iso_strong_failures(m: &FamProarrow<Span>, n: &FamProarrow<Span>, names: (&str, &str)) -> Result<Vec<Failure>, Usage> {
    let v = check_iso_strong(&Span, m, n)?;
    let legs = if v.legs_bijective { "adjacent legs bijective" } else { "adjacent legs not bijective" };
    let mut out = Vec::new();
    if !v.composite_iso() {
        let c = &v.composite.cell;
        out.push(Failure {
            check: "product-comparison".into(),
            instance: format!("Π_{{{},{}}}", names.0, names.1),
            detail: Some(format!("source apex {}, target apex {}, {legs}", c.src().apex().len(), c.dst().apex().len())),
        });
    }
    for (which, c) in ["source of first", "target of first", "target of second"].iter().zip(&v.identities) {
        if !c.is_iso() {
            out.push(Failure {
                check: "identity-comparison".into(),
                instance: format!("Π_x at the {which}"),
                detail: Some(format!("source apex {}, target apex {}", c.cell.src().apex().len(), c.cell.dst().apex().len())),
            });
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Outcome, Usage> {
    let fam = DblFam::covariant(Span);
    match &cli.command {
        Command::Compose { file, first, second } => {
            let mut doc = load(file)?;
            let kind = doc.entries.get(first).map(Entry::kind).unwrap_or("span");
            let composite = if kind == "family-proarrow" {
                let m = fam.compose_pro(&doc.family_proarrow(first)?, &doc.family_proarrow(second)?)?;
                Entry::family_proarrow(&m)
            } else {
                Entry::span(&doc.span(first)?.compose(&doc.span(second)?)?)
            };
            doc.insert("composite", composite);
            Ok(Outcome::done(doc, format!("composite of {first} and {second}")))
        }
        Command::Product { file, family } | Command::Coproduct { file, family } => {
            let product = matches!(cli.command, Command::Product { .. });
            let mut doc = load(file)?;
            let name = pick(&doc, family.clone(), "family-proarrow")?;
            let m = doc.family_proarrow(&name)?;
            let (label, cone) = if product { ("product", span_product(&m)?) } else { ("coproduct", span_coproduct(&m)?) };
            doc.insert(label, Entry::span(&cone.pro));
            for (side, legs) in [("src", &cone.src_legs), ("dst", &cone.dst_legs)] {
                for (i, f) in legs.iter().enumerate() {
                    doc.insert(format!("{label}.{side}.{i}"), Entry::function(f));
                }
            }
            Ok(Outcome::done(doc, format!("{label} of {name}: apex of {} elements", cone.pro.apex().len())))
        }
        Command::Restrict { file, span, left, right } => {
            let mut doc = load(file)?;
            let (r, _) = restrict_span(&doc.span(span)?, &doc.function(left)?, &doc.function(right)?)?;
            let size = r.apex().len();
            doc.insert("restriction", Entry::span(&r));
            Ok(Outcome::done(doc, format!("restriction of {span}: apex of {size} elements")))
        }
        Command::Diagonal { file, set } => {
            let mut doc = load(file)?;
            let name = pick(&doc, set.clone(), "finset")?;
            let d = diagonal_proarrow(&Span, &doc.finset(&name)?)?;
            doc.insert("diagonal", Entry::span(&d.proarrow));
            doc.insert("diagonal.arrow", Entry::function(&d.arrow));
            Ok(Outcome::done(doc, format!("diagonal of {name}: apex of {} elements", d.proarrow.apex().len())))
        }
        Command::CheckUniversal { file: Some(file), family } => {
            let doc = load(file)?;
            let name = pick(&doc, family.clone(), "family-proarrow")?;
            let (cases, failures) = universal_failures(&doc.family_proarrow(&name)?, &opts(cli), "")?;
            Ok(Outcome::checked(doc, format!("check-universal {name}"), Report::new(cases, failures)))
        }
        Command::CheckUniversal { file: None, .. } => {
            let mut sampler = Sampler::new(cli.seed.unwrap_or(0));
            let sizes = Sizes {
                max_index: 2,
                max_carrier: 2,
                max_apex: 2,
                min_carrier: 1,
            };
            let mut doc = Document::new();
            let (mut cases, mut failures) = (0, Vec::new());
            for k in 0..50 {
                let m = sampler.span_family(&sizes)?;
                let (c, f) = universal_failures(&m, &opts(cli), &format!("case.{k}: "))?;
                cases += c;
                if !f.is_empty() {
                    doc.insert(format!("case.{k}"), Entry::family_proarrow(&m));
                }
                failures.extend(f);
            }
            Ok(Outcome::checked(doc, "check-universal on 50 sampled families".into(), Report::new(cases, failures)))
        }
        Command::CheckIsoStrong { file: Some(file), first, second } => {
            let doc = load(file)?;
            let names = doc.names_of("family-proarrow");
            let (first, second) = match (first, second) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                (None, None) if names.len() == 2 => (names[0].to_string(), names[1].to_string()),
                _ => return Err(Usage("name two family-proarrow entries".into())),
            };
            let failures = iso_strong_failures(&doc.family_proarrow(&first)?, &doc.family_proarrow(&second)?, (&first, &second))?;
            Ok(Outcome::checked(doc, format!("check-iso-strong {first} {second}"), Report::new(4, failures)))
        }
        Command::CheckIsoStrong { file: None, .. } => {
            let mut sampler = Sampler::new(cli.seed.unwrap_or(0));
            let mut doc = Document::new();
            let mut failures = Vec::new();
            for k in 0..200 {
                let (m, n) = sampler.bijective_pair(&Sizes::default())?;
                let (a, b) = (format!("case.{k}.m"), format!("case.{k}.n"));
                let f = iso_strong_failures(&m, &n, (&a, &b))?;
                if !f.is_empty() {
                    doc.insert(a, Entry::family_proarrow(&m));
                    doc.insert(b, Entry::family_proarrow(&n));
                }
                failures.extend(f);
            }
            Ok(Outcome::checked(doc, "check-iso-strong on 200 sampled pairs with bijective legs".into(), Report::new(800, failures)))
        }
        Command::CheckModel { file, model } => {
            let doc = load(file)?;
            let name = pick(&doc, model.clone(), "model")?;
            let report = check_model(&doc.model(&name)?, cli.bound as usize);
            Ok(Outcome::checked(doc, format!("check-model {name}"), Report::from(&report)))
        }
        Command::CheckTransformation { file, transformation } => {
            let doc = load(file)?;
            let name = pick(&doc, transformation.clone(), "transformation")?;
            let report = check_transformation(&doc.transformation(&name)?);
            Ok(Outcome::checked(doc, format!("check-transformation {name}"), Report::from(&report)))
        }
        Command::FamIsoSpan => {
            let r = terminal_dictionary::verify(cli.bound as usize, cli.budget as usize)?;
            let failures = r
                .failures
                .iter()
                .map(|f| Failure {
                    check: "dictionary".into(),
                    instance: f.clone(),
                    detail: None,
                })
                .collect();
            let cases = r.objects + r.arrows + r.proarrows + r.cells + r.compositions;
            let what = format!(
                "fam-iso-span at bound {}{}: {} objects, {} arrows, {} proarrows, {} cells, {} composites",
                cli.bound,
                if r.partial { " (budget exhausted)" } else { "" },
                r.objects,
                r.arrows,
                r.proarrows,
                r.cells,
                r.compositions
            );
            Ok(Outcome::checked(Document::new(), what, Report::new(cases, failures)))
        }
        Command::Roundtrip { file, model } => {
            let doc = load(file)?;
            let Some(name) = model else {
                let summary = format!("{} entries", doc.entries.len());
                return Ok(Outcome::done(doc, summary));
            };
            let m = doc.model(name)?;
            let mut failures = Vec::new();
            match model_to_cmon_category(&m) {
                Err(e) => failures.push(Failure {
                    check: "cmon-roundtrip".into(),
                    instance: name.clone(),
                    detail: Some(e.to_string()),
                }),
                Ok(c) => {
                    let back = cmon_category_to_model(&c)?;
                    let again = model_to_cmon_category(&back)?;
                    if back != m || again != c {
                        failures.push(Failure {
                            check: "cmon-roundtrip".into(),
                            instance: name.clone(),
                            detail: Some("the model differs from the one rebuilt from its CMon-category".into()),
                        });
                    }
                }
            }
            Ok(Outcome::checked(doc, format!("roundtrip {name}"), Report::new(1, failures)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(Usage(msg)) => {
            eprintln!("dcat: error: {msg}");
            ExitCode::from(2)
        }
        Ok(outcome) => {
            let text = print_document(&outcome.doc);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("dcat: error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            eprintln!("{}", outcome.summary);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
