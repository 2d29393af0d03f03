//! Command-line driver: parses the query, runs the requested computation
//! with the doubling precision-retry policy, and prints a text or JSON
//! report.
//!
//! Exit codes: 0 on success (and passing verdicts), 1 when a reciprocity
//! verdict fails, 2 on input errors or precision-cap exhaustion.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use parshin::coeff::CoeffField;
use parshin::error::Error;
use parshin::geometry::{Chart, PlanePoint};
use parshin::parse;
use parshin::reciprocity::{self, with_retry};
use parshin::report;

#[derive(Parser)]
#[command(
    name = "parshin",
    about = "Exact rank-2 valuations, Parshin symbols and reciprocity laws on the plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Coefficient field: Q, Fp:7, Fp:2/x^2+x+1
    #[arg(long)]
    field: String,
    /// Initial precision budget (default 32; env PARSHIN_PRECISION)
    #[arg(long)]
    precision: Option<i64>,
    /// Precision cap for the doubling retry policy
    #[arg(long, default_value_t = 1024)]
    retry_cap: i64,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// nu_L(f, g) for elements of k'((t))((u)) given as factored expressions
    Symbol {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Central-extension commutator of two elements (equals [k':k] nu_L)
    Commutator {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Puiseux branches of a plane curve at a point
    Branches {
        #[command(flatten)]
        common: Common,
        /// Curve polynomial in x, y
        #[arg(long)]
        curve: String,
        /// Point coordinates "x,y"
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "affine")]
        chart: String,
    },
    /// Verify the reciprocity law around a point
    PointLaw {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "affine")]
        chart: String,
    },
    /// Verify the reciprocity law along a projective curve
    CurveLaw {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Homogeneous curve equation in X, Y, Z
        #[arg(long)]
        curve: String,
    },
}

fn initial_precision(c: &Common) -> i64 {
    if let Some(p) = c.precision {
        return p.max(4);
    }
    if let Ok(v) = std::env::var("PARSHIN_PRECISION") {
        if let Ok(p) = v.parse::<i64>() {
            return p.max(4);
        }
    }
    32
}

fn parse_chart(s: &str) -> Result<Chart, Error> {
    match s.to_ascii_lowercase().as_str() {
        "affine" | "xy" => Ok(Chart::Affine),
        "xz" | "chart-xz" => Ok(Chart::XZ),
        "yz" | "chart-yz" => Ok(Chart::YZ),
        other => Err(Error::Syntax {
            pos: 0,
            msg: format!("unknown chart '{}'", other),
        }),
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Symbol { common, f, g } => {
            let field = parse_field_checked(&common)?;
            let prec = initial_precision(&common);
            let value = with_retry(prec, common.retry_cap, |p| {
                let fe = parse::parse_element_expr(&f, &field, p, p)?;
                let ge = parse::parse_element_expr(&g, &field, p, p)?;
                parshin::series::nu_symbol(&fe, &ge)
            })?;
            if common.json {
                println!(
                    "{}",
                    report::value_report_json("symbol", &field.spec_string(), &f, &g, value)
                );
            } else {
                println!("{}", value);
            }
            Ok(0)
        }
        Command::Commutator { common, f, g } => {
            let field = parse_field_checked(&common)?;
            let prec = initial_precision(&common);
            let value = with_retry(prec, common.retry_cap, |p| {
                let fe = parse::parse_element_expr(&f, &field, p, p)?;
                let ge = parse::parse_element_expr(&g, &field, p, p)?;
                parshin::central::commutator(&fe, &ge, 0)
            })?;
            if common.json {
                println!(
                    "{}",
                    report::value_report_json("commutator", &field.spec_string(), &f, &g, value)
                );
            } else {
                println!("{}", value);
            }
            Ok(0)
        }
        Command::Branches {
            common,
            curve,
            point,
            chart,
        } => {
            let field = parse_field_checked(&common)?;
            let chart = parse_chart(&chart)?;
            let q = parse::parse_poly2(&curve, &field)?;
            let (x, y) = parse::parse_point(&point, &field)?;
            let pt = PlanePoint::rational(chart, &field, x, y);
            let prec = initial_precision(&common);
            let branches = with_retry(prec, common.retry_cap, |p| {
                parshin::geometry::branches_at_point(&q, &pt, p)
            })?;
            if common.json {
                println!(
                    "{}",
                    report::branches_report_json(&field.spec_string(), &curve, &pt.id, &branches)
                );
            } else {
                print!("{}", report::branches_report_text(&curve, &pt.id, &branches));
            }
            Ok(0)
        }
        Command::PointLaw {
            common,
            f,
            g,
            point,
            chart,
        } => {
            let field = parse_field_checked(&common)?;
            let chart = parse_chart(&chart)?;
            let ff = with_chart(parse::parse_function_expr(&f, &field)?, chart);
            let gg = with_chart(parse::parse_function_expr(&g, &field)?, chart);
            let (x, y) = parse::parse_point(&point, &field)?;
            let pt = PlanePoint::rational(chart, &field, x, y);
            let prec = initial_precision(&common);
            let rep = with_retry(prec, common.retry_cap, |p| {
                reciprocity::point_law_check(&ff, &gg, &pt, p)
            })?;
            if common.json {
                println!("{}", report::law_report_json(&rep));
            } else {
                print!("{}", report::law_report_text(&rep));
            }
            Ok(if rep.verdict { 0 } else { 1 })
        }
        Command::CurveLaw {
            common,
            f,
            g,
            curve,
        } => {
            let field = parse_field_checked(&common)?;
            let ff = parse::parse_function_expr(&f, &field)?;
            let gg = parse::parse_function_expr(&g, &field)?;
            let c_hom = parse::parse_curve(&curve, &field)?;
            let prec = initial_precision(&common);
            let rep = with_retry(prec, common.retry_cap, |p| {
                reciprocity::curve_law_check(&ff, &gg, &c_hom, p)
            })?;
            if common.json {
                println!("{}", report::law_report_json(&rep));
            } else {
                print!("{}", report::law_report_text(&rep));
            }
            Ok(if rep.verdict { 0 } else { 1 })
        }
    }
}

fn with_chart(
    mut f: parshin::geometry::FactoredFunction,
    chart: Chart,
) -> parshin::geometry::FactoredFunction {
    f.chart = chart;
    f
}

fn parse_field_checked(c: &Common) -> Result<CoeffField, Error> {
    if let Some(p) = c.precision {
        if p < 4 {
            return Err(Error::Syntax {
                pos: 0,
                msg: "precision must be at least 4".into(),
            });
        }
        if c.retry_cap < p {
            return Err(Error::Syntax {
                pos: 0,
                msg: "retry cap must be at least the precision".into(),
            });
        }
    }
    parse::parse_field_spec(&c.field)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
