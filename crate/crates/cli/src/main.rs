use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lambda_conn::cartier::{
    cartier_op, is_logarithmic, p_curvature_rank1, CartierError, Derivation, OneForm,
};
use lambda_conn::chern::{chern_series, default_order, segre_series, total_class, total_class_to};
use lambda_conn::connections::{
    filtration_check, horizontal_sections, p_curvature_matrix, ConnError, ConnRegistry,
    MatrixConnection,
};
use lambda_conn::format::{element_json, render_class, render_series, Format};
use lambda_conn::lambda_ring::{gamma_series, K0Element, LambdaError, RingPresentation};
use lambda_conn::matrix::{RatMatrix, RatVector};
use lambda_conn::ore::{
    companion_connection, cyclic_vector, ore_mul, ore_pcurvature, ore_right_divide, OreError,
    DEFAULT_CYCLIC_ATTEMPTS,
};
use lambda_conn::parse::{
    matrix_to_json, parse_element, parse_form, parse_matrix, parse_ratfun, parse_skewpoly,
    parse_triple, ParseError,
};
use lambda_conn::verify::{run_verify_with, VerifyError, VerifyOptions};

/// Exact λ-ring and characteristic-p connection computations.
#[derive(Parser, Debug)]
#[command(name = "lambda-conn", version)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Globals {
    /// Characteristic of the base field F_p(t).
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Ring presentation: a JSON file, or inline JSON starting with `{`.
    #[arg(long, global = true, value_name = "FILE")]
    ring: Option<String>,
    /// Truncation order for series, or the top degree for `total`.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true, default_value_t = 100)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// json, latex or text.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Virtual Chern class c_l(x), or c_0..c_N when no degree is given.
    Chern {
        element: String,
        degree: Option<usize>,
    },
    /// Segre class s_l(x), or s_0..s_N when no degree is given.
    Segre {
        element: String,
        degree: Option<usize>,
    },
    /// Total Chern class of an effective element.
    Total { element: String },
    /// The series γ_t(x).
    Gamma { element: String },
    /// Cartier operator Cω(d).
    Cartier {
        form: String,
        /// Coefficient f of the derivation f·d/dt.
        #[arg(long, default_value = "1")]
        derivation: String,
    },
    /// p-curvature of a rank-1 connection d + ω, or of a matrix connection.
    Pcurv {
        form: Option<String>,
        #[arg(long, value_name = "FILE")]
        matrix: Option<String>,
        #[arg(long, default_value = "1")]
        derivation: String,
    },
    /// Finds x with ω = dx/x.
    Dlog { form: String },
    /// Horizontal sections of a matrix connection over F_p(t^p).
    Descend {
        #[arg(long, value_name = "FILE")]
        matrix: String,
    },
    /// Exterior-power filtration check on an exact triple.
    FiltrationCheck {
        #[arg(long, value_name = "FILE")]
        triple: String,
        #[arg(long)]
        l: usize,
    },
    /// Chern class of a connection in the K₀ generated by connections.
    ConnChern {
        degree: usize,
        #[arg(long, value_name = "FILE", conflicts_with = "triple")]
        matrix: Option<String>,
        #[arg(long, value_name = "FILE")]
        triple: Option<String>,
    },
    /// Skew polynomials in K{T}.
    #[command(subcommand)]
    Ore(OreCommand),
    /// Runs a property suite.
    Verify {
        suite: String,
        /// Compare p-curvature against the (-1)^p-signed closed form.
        #[arg(long)]
        signed: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OreCommand {
    Mul {
        left: String,
        right: String,
    },
    /// Right division P = Q·D + R.
    Div {
        dividend: String,
        divisor: String,
    },
    /// p-curvature of the companion connection of a monic P.
    Pcurv {
        poly: String,
    },
    /// Cyclic vector search for a matrix connection.
    Cyclic {
        #[arg(long, value_name = "FILE")]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_CYCLIC_ATTEMPTS)]
        attempts: usize,
    },
}

enum CliError {
    Usage(String),
    Precondition(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LambdaError> for CliError {
    fn from(e: LambdaError) -> Self {
        match e {
            LambdaError::Json(_) => CliError::Usage(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ConnError> for CliError {
    fn from(e: ConnError) -> Self {
        match e {
            ConnError::InternalCheck(_) => CliError::Verification(e.to_string()),
            ConnError::Lambda(l) => l.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CartierError> for CliError {
    fn from(e: CartierError) -> Self {
        match e {
            CartierError::InternalCheck(_) => CliError::Verification(e.to_string()),
            CartierError::Mismatch(..) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<OreError> for CliError {
    fn from(e: OreError) -> Self {
        match e {
            OreError::Conn(c) => c.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn json_list(items: &[String]) -> String {
    format!("[{}]", items.join(","))
}

fn vector_json(v: &RatVector) -> String {
    json_list(
        &v.iter()
            .map(|x| json_str(&x.to_string()))
            .collect::<Vec<_>>(),
    )
}

fn vector_text(v: &RatVector) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

struct Ctx<'a> {
    g: &'a Globals,
}

impl Ctx<'_> {
    fn prime(&self) -> Result<u32, CliError> {
        self.g
            .p
            .ok_or_else(|| CliError::Usage("this command needs --p".to_string()))
    }

    fn ring(&self) -> Result<RingPresentation, CliError> {
        let source = self
            .g
            .ring
            .as_deref()
            .ok_or_else(|| CliError::Usage("this command needs --ring".to_string()))?;
        let text = if source.trim_start().starts_with('{') {
            source.to_string()
        } else {
            read_input(source)?
        };
        Ok(RingPresentation::from_json(&text)?)
    }

    fn element(&self, pres: &RingPresentation, text: &str) -> Result<K0Element, CliError> {
        let x = parse_element(text)?;
        pres.check_element(&x)?;
        Ok(x)
    }

    fn matrix(&self, path: &str) -> Result<(u32, RatMatrix), CliError> {
        Ok(parse_matrix(&read_input(path)?, self.g.p)?)
    }

    fn connection(&self, path: &str) -> Result<MatrixConnection, CliError> {
        let (_, a) = self.matrix(path)?;
        Ok(MatrixConnection::new(a)?)
    }

    fn render_matrix(&self, m: &RatMatrix) -> String {
        match self.g.format {
            Format::Json => matrix_to_json(m.modulus(), m),
            _ => m.to_string(),
        }
    }
}

fn class_listing(ctx: &Ctx, prefix: &str, coeffs: &[K0Element], only: Option<usize>) -> String {
    let fmt = ctx.g.format;
    if let Some(l) = only {
        return render_class(&coeffs[l], l, fmt);
    }
    match fmt {
        Format::Json => json_list(
            &coeffs
                .iter()
                .enumerate()
                .map(|(l, c)| render_class(c, l, fmt))
                .collect::<Vec<_>>(),
        ),
        Format::Latex => coeffs
            .iter()
            .enumerate()
            .map(|(l, c)| format!("{prefix}_{{{l}}} = {}", render_class(c, l, fmt)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Text => coeffs
            .iter()
            .enumerate()
            .map(|(l, c)| format!("{prefix}_{l}: {c}"))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn classes(
    ctx: &Ctx,
    element: &str,
    degree: Option<usize>,
    segre: bool,
) -> Result<String, CliError> {
    let pres = ctx.ring()?;
    let x = ctx.element(&pres, element)?;
    let order = match (degree, ctx.g.max_degree) {
        (Some(l), _) => l,
        (None, Some(n)) => n,
        (None, None) => default_order(&pres, &x)?,
    };
    let series = if segre {
        segre_series(&pres, &x, order)?
    } else {
        chern_series(&pres, &x, order)?
    };
    let prefix = if segre { "s" } else { "c" };
    Ok(class_listing(ctx, prefix, series.coeffs(), degree))
}

fn total(ctx: &Ctx, element: &str) -> Result<String, CliError> {
    let pres = ctx.ring()?;
    let x = ctx.element(&pres, element)?;
    let c = match ctx.g.max_degree {
        Some(n) => total_class_to(&pres, &x, n)?,
        None => total_class(&pres, &x)?,
    };
    Ok(match ctx.g.format {
        Format::Json => format!("{{\"total\":{}}}", element_json(&c)),
        fmt => render_class(&c, 0, fmt),
    })
}

fn gamma(ctx: &Ctx, element: &str) -> Result<String, CliError> {
    let pres = ctx.ring()?;
    let x = ctx.element(&pres, element)?;
    let order = match ctx.g.max_degree {
        Some(n) => n,
        None => default_order(&pres, &x)?,
    };
    Ok(render_series(
        &gamma_series(&pres, &x, order)?,
        ctx.g.format,
    ))
}

fn cartier(ctx: &Ctx, form: &str, derivation: &str) -> Result<String, CliError> {
    let p = ctx.prime()?;
    let w = parse_form(form, p)?;
    let d = Derivation(parse_ratfun(derivation, p)?);
    let v = cartier_op(&w, &d)?;
    Ok(match (ctx.g.format, v.to_k()) {
        (Format::Json, k) => format!(
            "{{\"p\":{p},\"value\":{},\"in_k\":{}}}",
            json_str(&v.to_string()),
            k.is_some()
        ),
        (_, Some(k)) => k.to_string(),
        (_, None) => format!("{v}  (s^{p} = t)"),
    })
}

fn pcurv(
    ctx: &Ctx,
    form: Option<&str>,
    matrix: Option<&str>,
    derivation: &str,
) -> Result<String, CliError> {
    match (form, matrix) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either a form or --matrix, not both".to_string(),
        )),
        (None, None) => Err(CliError::Usage("give a form or --matrix".to_string())),
        (None, Some(path)) => {
            let c = ctx.connection(path)?;
            Ok(ctx.render_matrix(&p_curvature_matrix(&c)?))
        }
        (Some(form), None) => {
            let p = ctx.prime()?;
            let w = parse_form(form, p)?;
            let d = Derivation(parse_ratfun(derivation, p)?);
            let psi = p_curvature_rank1(&w, &d)?;
            Ok(match ctx.g.format {
                Format::Json => format!("{{\"p\":{p},\"psi\":{}}}", json_str(&psi.to_string())),
                _ => psi.to_string(),
            })
        }
    }
}

fn dlog(ctx: &Ctx, form: &str) -> Result<String, CliError> {
    let p = ctx.prime()?;
    let w: OneForm = parse_form(form, p)?;
    let x = is_logarithmic(&w);
    Ok(match (ctx.g.format, x) {
        (Format::Json, Some(x)) => format!(
            "{{\"logarithmic\":true,\"witness\":{}}}",
            json_str(&x.to_string())
        ),
        (Format::Json, None) => "{\"logarithmic\":false,\"witness\":null}".to_string(),
        (_, Some(x)) => x.to_string(),
        (_, None) => "none".to_string(),
    })
}

fn descend(ctx: &Ctx, matrix: &str) -> Result<String, CliError> {
    let c = ctx.connection(matrix)?;
    let h = horizontal_sections(&c)?;
    Ok(match ctx.g.format {
        Format::Json => format!(
            "{{\"dimension\":{},\"sections\":{}}}",
            h.dimension(),
            json_list(&h.vectors.iter().map(vector_json).collect::<Vec<_>>())
        ),
        _ => {
            let mut lines = vec![format!("dimension: {}", h.dimension())];
            lines.extend(h.vectors.iter().map(vector_text));
            lines.join("\n")
        }
    })
}

fn filtration(ctx: &Ctx, triple: &str, l: usize) -> Result<String, CliError> {
    let t = parse_triple(&read_input(triple)?, ctx.g.p)?;
    let report = filtration_check(&t, l)?;
    let out = match ctx.g.format {
        Format::Json => {
            let steps: Vec<String> = report
                .steps
                .iter()
                .map(|s| {
                    format!(
                        "{{\"i\":{},\"quotient_dim\":{},\"stable\":{},\"quotient_matches\":{}}}",
                        s.i, s.quotient_dim, s.stable, s.quotient_matches
                    )
                })
                .collect();
            format!(
                "{{\"l\":{},\"passed\":{},\"steps\":{}}}",
                report.l,
                report.passed(),
                json_list(&steps)
            )
        }
        _ => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut lines: Vec<String> = report
                .steps
                .iter()
                .map(|s| {
                    format!(
                        "F_{}/F_{}: dim {}, stable {}, quotient matches {}",
                        s.i,
                        s.i + 1,
                        s.quotient_dim,
                        yes(s.stable),
                        yes(s.quotient_matches)
                    )
                })
                .collect();
            lines.push(format!(
                "result: {}",
                if report.passed() { "PASS" } else { "FAIL" }
            ));
            lines.join("\n")
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        println!("{out}");
        Err(CliError::Verification(format!(
            "filtration check failed for l = {l}"
        )))
    }
}

fn conn_chern(
    ctx: &Ctx,
    degree: usize,
    matrix: Option<&str>,
    triple: Option<&str>,
) -> Result<String, CliError> {
    let reg = ConnRegistry::new();
    let class = match (matrix, triple) {
        (Some(path), None) => {
            let c = ctx.connection(path)?;
            reg.conn_chern(&c, degree)?
        }
        (None, Some(path)) => {
            let t = parse_triple(&read_input(path)?, ctx.g.p)?;
            let x = reg.register_triple(&t)?;
            lambda_conn::chern::chern_class(&reg.presentation(), &x, degree)?
        }
        _ => return Err(CliError::Usage("give --matrix or --triple".to_string())),
    };
    let rendered = render_class(&class, degree, ctx.g.format);
    if ctx.g.format != Format::Text {
        return Ok(rendered);
    }
    let mut lines = vec![rendered];
    for g in reg.presentation().generators() {
        let sym = lambda_conn::lambda_ring::LambdaSymbol::new(g.name.clone(), 1);
        if let Some(c) = reg.materialize(&sym)? {
            lines.push(format!("[{}]: {}", g.name, c.matrix()));
        }
    }
    Ok(lines.join("\n"))
}

fn ore(ctx: &Ctx, cmd: &OreCommand) -> Result<String, CliError> {
    let fmt = ctx.g.format;
    let quoted = |s: String| match fmt {
        Format::Json => json_str(&s),
        _ => s,
    };
    match cmd {
        OreCommand::Mul { left, right } => {
            let p = ctx.prime()?;
            let a = parse_skewpoly(left, p)?;
            let b = parse_skewpoly(right, p)?;
            Ok(quoted(ore_mul(&a, &b)?.to_string()))
        }
        OreCommand::Div { dividend, divisor } => {
            let p = ctx.prime()?;
            let a = parse_skewpoly(dividend, p)?;
            let d = parse_skewpoly(divisor, p)?;
            let (q, r) = ore_right_divide(&a, &d)?;
            Ok(match fmt {
                Format::Json => format!(
                    "{{\"quotient\":{},\"remainder\":{}}}",
                    json_str(&q.to_string()),
                    json_str(&r.to_string())
                ),
                _ => format!("quotient: {q}\nremainder: {r}"),
            })
        }
        OreCommand::Pcurv { poly } => {
            let p = ctx.prime()?;
            let pp = parse_skewpoly(poly, p)?;
            Ok(ctx.render_matrix(&ore_pcurvature(&pp)?))
        }
        OreCommand::Cyclic { matrix, attempts } => {
            let c = ctx.connection(matrix)?;
            match cyclic_vector(&c, ctx.g.seed, *attempts) {
                Ok(found) => {
                    let companion = companion_connection(&found.poly)?;
                    Ok(match fmt {
                        Format::Json => format!(
                            "{{\"found\":true,\"vector\":{},\"poly\":{},\"attempts\":{},\"companion\":{}}}",
                            vector_json(&found.v),
                            json_str(&found.poly.to_string()),
                            found.attempts,
                            matrix_to_json(c.modulus(), companion.matrix())
                        ),
                        _ => format!(
                            "vector: {}\npoly: {}\nattempts: {}\ncompanion: {}",
                            vector_text(&found.v),
                            found.poly,
                            found.attempts,
                            companion.matrix()
                        ),
                    })
                }
                Err(OreError::NoCyclicVector { attempts }) => Ok(match fmt {
                    Format::Json => format!("{{\"found\":false,\"attempts\":{attempts}}}"),
                    _ => format!("none found in {attempts} attempts"),
                }),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn verify(ctx: &Ctx, suite: &str, signed: bool) -> Result<String, CliError> {
    let opts = VerifyOptions { p: ctx.g.p, signed };
    let report = run_verify_with(suite, ctx.g.trials, ctx.g.seed, &opts)?;
    let out = match ctx.g.format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    };
    if report.passed() {
        Ok(out)
    } else {
        println!("{out}");
        Err(CliError::Verification(format!(
            "{} of {} trials failed",
            report.failures.len(),
            report.trials
        )))
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let ctx = Ctx { g: &cli.globals };
    match &cli.command {
        Command::Chern { element, degree } => classes(&ctx, element, *degree, false),
        Command::Segre { element, degree } => classes(&ctx, element, *degree, true),
        Command::Total { element } => total(&ctx, element),
        Command::Gamma { element } => gamma(&ctx, element),
        Command::Cartier { form, derivation } => cartier(&ctx, form, derivation),
        Command::Pcurv {
            form,
            matrix,
            derivation,
        } => pcurv(&ctx, form.as_deref(), matrix.as_deref(), derivation),
        Command::Dlog { form } => dlog(&ctx, form),
        Command::Descend { matrix } => descend(&ctx, matrix),
        Command::FiltrationCheck { triple, l } => filtration(&ctx, triple, *l),
        Command::ConnChern {
            degree,
            matrix,
            triple,
        } => conn_chern(&ctx, *degree, matrix.as_deref(), triple.as_deref()),
        Command::Ore(cmd) => ore(&ctx, cmd),
        Command::Verify { suite, signed } => verify(&ctx, suite, *signed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
