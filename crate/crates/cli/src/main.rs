use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqzeta::arc_oracle::{oracle_series, ArcError, MonomialGerm, SignAction};
use eqzeta::cohomology::{page_to_triples, run_job, CohomologyJob};
use eqzeta::ratpoly::TSeriesU;
use eqzeta::resolution::{
    catalog_get, catalog_names, res_parse, res_serialize, validate_resolution, ResolutionData,
    ResolutionError,
};
use eqzeta::zeta::{distinguish, evaluate, ZetaError, ZetaVariant};

const EXIT_UNEQUAL: u8 = 1;
const EXIT_SEMANTIC: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "eqzeta",
    version,
    about = "Equivariant motivic zeta functions from resolution data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Naive,
    Plus,
    Minus,
}

impl From<Variant> for ZetaVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Naive => ZetaVariant::Naive,
            Variant::Plus => ZetaVariant::Plus,
            Variant::Minus => ZetaVariant::Minus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Display,
    Json,
    Rational,
    Series,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the zeta function of a resolution file ("-" for stdin).
    Compute {
        file: String,
        #[arg(long, value_enum, default_value = "naive")]
        variant: Variant,
        /// Also expand as a series in T up to this order.
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long, value_enum, default_value = "display")]
        format: Format,
    },
    /// Compare two resolution files. Exit 0 if equal, 1 if not.
    Compare {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "naive")]
        variant: Variant,
        /// Highest power of T searched for a differing coefficient.
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Series of a monomial germ computed directly from truncated arcs.
    Oracle {
        /// Exponents N1,N2,...
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        /// Sign of the germ: +1 or -1.
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: String,
        /// Action of the generator: e1,e2,... with each ei in {+1,-1}.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "trivial_group")]
        action: Option<String>,
        /// Use the trivial group.
        #[arg(long)]
        trivial_group: bool,
        #[arg(long, value_enum, default_value = "naive")]
        variant: Variant,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Browse the built-in fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a Hochschild–Serre computation and print the Betti series.
    Cohomology {
        file: String,
        #[arg(long, value_enum, default_value = "display")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List fixture names.
    List,
    /// Print a fixture as resolution JSON.
    Show { name: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn semantic(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_SEMANTIC,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::InvalidResolution(diags) => Failure::semantic(
                diags
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join("\n"),
            ),
            other => Failure::semantic(other.to_string()),
        }
    }
}

impl From<ArcError> for Failure {
    fn from(e: ArcError) -> Self {
        Failure::semantic(e.to_string())
    }
}

fn read_input(path: &str) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    let result = if path == "-" {
        io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        fs::read(path).map(|b| bytes = b)
    };
    result.map_err(|e| Failure::semantic(format!("cannot read {path}: {e}")))?;
    Ok(bytes)
}

fn load_resolution(path: &str) -> Result<ResolutionData, Failure> {
    let res = res_parse(&read_input(path)?).map_err(|e| match e {
        ResolutionError::Parse { .. } | ResolutionError::Schema { .. } => {
            Failure::parse(format!("{path}: {e}"))
        }
        ResolutionError::UnknownFixture(_) => Failure::semantic(e.to_string()),
    })?;
    let diags = validate_resolution(&res);
    if !diags.is_empty() {
        let lines: Vec<String> = diags.iter().map(|d| format!("{path}: {d}")).collect();
        return Err(Failure::semantic(lines.join("\n")));
    }
    Ok(res)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn series_lines(series: &TSeriesU) -> String {
    (1..=series.order())
        .map(|n| format!("T^{n}: {}\n", series.coeff(n)))
        .collect()
}

fn cmd_compute(
    file: &str,
    variant: Variant,
    expand: Option<usize>,
    format: Format,
) -> Result<String, Failure> {
    let res = load_resolution(file)?;
    let expand = match format {
        Format::Series => Some(expand.unwrap_or(8)),
        _ => expand,
    };
    let out = evaluate(&res, variant.into(), expand)?;
    Ok(match format {
        Format::Display => {
            let mut text = format!("{}\n", out.display);
            if let Some(series) = &out.series {
                text.push_str(&series_lines(series));
            }
            text
        }
        Format::Rational => format!("{}\n", out.rational),
        Format::Series => series_lines(out.series.as_ref().expect("expanded")),
        Format::Json => format!("{}\n", to_json(&out)),
    })
}

fn cmd_compare(
    a: &str,
    b: &str,
    variant: Variant,
    order: usize,
) -> Result<(String, bool), Failure> {
    let ra = load_resolution(a)?;
    let rb = load_resolution(b)?;
    let report = distinguish(&ra, &rb, variant.into(), order)?;
    Ok((format!("{}\n", to_json(&report)), report.equal))
}

fn parse_sign(s: &str) -> Result<i64, Failure> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(Failure::semantic(format!(
            "invalid sign {other:?}; expected +1 or -1"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    exponents: Vec<u32>,
    sign: &str,
    action: Option<&str>,
    trivial_group: bool,
    variant: Variant,
    order: usize,
    format: Format,
) -> Result<String, Failure> {
    let d = exponents.len();
    let germ = MonomialGerm::new(exponents, parse_sign(sign)?)?;
    let action = if trivial_group {
        SignAction::trivial_group(d)
    } else {
        let text = action.ok_or_else(|| Failure::semantic("give --action or --trivial-group"))?;
        let eps = text
            .split(',')
            .map(parse_sign)
            .collect::<Result<Vec<_>, _>>()?;
        SignAction::new(&eps)?
    };
    let series = oracle_series(&germ, &action, variant.into(), order)?;
    Ok(match format {
        Format::Json => format!("{}\n", to_json(&series)),
        _ => series_lines(&series),
    })
}

fn cmd_catalog(action: &CatalogAction) -> Result<String, Failure> {
    match action {
        CatalogAction::List => Ok(catalog_names().iter().map(|n| format!("{n}\n")).collect()),
        CatalogAction::Show { name } => {
            let res = catalog_get(name).map_err(|e| Failure::semantic(e.to_string()))?;
            Ok(String::from_utf8(res_serialize(&res)).expect("JSON is UTF-8"))
        }
    }
}

/// Number of Laurent coefficients printed after the top one.
const LAURENT_TERMS: i64 = 8;

fn cmd_cohomology(file: &str, format: Format) -> Result<String, Failure> {
    let bytes = read_input(file)?;
    let job: CohomologyJob =
        serde_json::from_slice(&bytes).map_err(|e| Failure::parse(format!("{file}: {e}")))?;
    let result = run_job(&job).map_err(|e| Failure::semantic(format!("{file}: {e}")))?;
    if format == Format::Json {
        let value = serde_json::json!({
            "e2": page_to_triples(&result.e2),
            "e_infinity": page_to_triples(&result.e_infinity),
            "series": result.series,
            "display": result.display,
        });
        return Ok(format!("{}\n", to_json(&value)));
    }
    let mut text = format!("{}\nrational: {}\n", result.display, result.series);
    if let Some(top) = result.series.top_exponent() {
        let expansion = result
            .series
            .laurent(top - LAURENT_TERMS)
            .map_err(|e| Failure::semantic(e.to_string()))?;
        let terms: Vec<String> = expansion
            .terms()
            .filter(|(_, c)| c.bits() != 0)
            .map(|(k, c)| format!("{c}*u^{k}"))
            .collect();
        text.push_str(&format!(
            "laurent: {} + O(u^{})\n",
            terms.join(" + "),
            top - LAURENT_TERMS - 1
        ));
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute {
            file,
            variant,
            expand,
            format,
        } => cmd_compute(file, *variant, *expand, *format).map(|s| (s, 0)),
        Command::Compare {
            a,
            b,
            variant,
            order,
        } => cmd_compare(a, b, *variant, *order)
            .map(|(s, equal)| (s, if equal { 0 } else { EXIT_UNEQUAL })),
        Command::Oracle {
            exponents,
            sign,
            action,
            trivial_group,
            variant,
            order,
            format,
        } => cmd_oracle(
            exponents.clone(),
            sign,
            action.as_deref(),
            *trivial_group,
            *variant,
            *order,
            *format,
        )
        .map(|s| (s, 0)),
        Command::Catalog { action } => cmd_catalog(action).map(|s| (s, 0)),
        Command::Cohomology { file, format } => cmd_cohomology(file, *format).map(|s| (s, 0)),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
