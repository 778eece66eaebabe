//! Argument parsing and subcommand drivers.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use minimax_core::signals::{
    detect_spindle, extract_extrema, support_resistance_pipeline, SpindleConfig,
};
use minimax_core::{
    minimax, rolling_minimax, Direction, IndicatorParams, MiniMaxSeries, RollingConfig,
};

use crate::error::{CliError, Result};
use crate::input::{ingest_reader, parse_delimiter, ColumnRef, Ingested, InputSpec, Source};
use crate::output::{self, Format, OutputSpec, RollMeta, SignalRecord};
use crate::svg::{emit_svg, SvgCanvas};

#[derive(Debug, Parser)]
#[command(
    name = "minimax",
    version,
    about = "Moving mini-max indicator for price series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mini-max weights for the whole series.
    Compute(Shared),
    /// Mini-max weights over sliding windows.
    Roll(RollArgs),
    /// Resistance/support crossings, spindle intervals and extrema.
    Signals(SignalsArgs),
    /// Two-panel SVG chart of prices and mini-max curves.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Up,
    Down,
    Both,
}

impl DirectionArg {
    fn name(self) -> &'static str {
        match self {
            DirectionArg::Up => "up",
            DirectionArg::Down => "down",
            DirectionArg::Both => "both",
        }
    }

    fn wants(self, d: Direction) -> bool {
        matches!(
            (self, d),
            (DirectionArg::Both, _)
                | (DirectionArg::Up, Direction::Up)
                | (DirectionArg::Down, Direction::Down)
        )
    }
}

#[derive(Debug, Args)]
pub struct Shared {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: Source,
    /// Price column, by header name or 0-based position [default: close].
    #[arg(long)]
    pub price_col: Option<ColumnRef>,
    /// Optional timestamp column, echoed in the output.
    #[arg(long)]
    pub time_col: Option<ColumnRef>,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
    /// The input has no header row.
    #[arg(long)]
    pub no_header: bool,
    /// Smoothing window width.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = DirectionArg::Both)]
    pub direction: DirectionArg,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Decimal digits for emitted weights.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
}

#[derive(Debug, Args)]
pub struct RollArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Window length in samples.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub window: u32,
    /// Stride between window starts.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub hop: u32,
}

#[derive(Debug, Args)]
pub struct SignalsArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Moving-average period for the crossing search.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub ma_period: Option<u32>,
    /// Report resistance/support crossings (needs --ma-period).
    #[arg(long)]
    pub crossings: bool,
    /// Report spindle intervals.
    #[arg(long)]
    pub spindle: bool,
    /// Spindle band, in units of 1/n [default: 0.5].
    #[arg(long, value_parser = non_negative)]
    pub band: Option<f64>,
    /// Minimum spindle length [default: 2m].
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub min_len: Option<u32>,
    /// Minimum sign changes inside a spindle [default: 3].
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub min_crossings: Option<u32>,
    /// Also report mini-max extrema with at least this prominence.
    #[arg(long, value_parser = unit_interval)]
    pub prominence: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub shared: Shared,
    #[arg(long, default_value_t = 900)]
    pub width: u32,
    #[arg(long, default_value_t = 560)]
    pub height: u32,
}

fn non_negative(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a non-negative number, got {s:?}")),
    }
}

fn unit_interval(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("expected a number in [0, 1], got {s:?}")),
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run_with_io<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => run_compute(a, stdin, stdout),
        Command::Roll(a) => run_roll(a, stdin, stdout),
        Command::Signals(a) => run_signals(a, stdin, stdout),
        Command::Plot(a) => run_plot(a, stdin, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "minimax: {e}");
            e.exit_code()
        }
    }
}

fn ingest(shared: &Shared, stdin: &mut dyn Read) -> Result<Ingested> {
    let spec = InputSpec {
        source: shared.input.clone(),
        price_col: shared.price_col.clone(),
        time_col: shared.time_col.clone(),
        has_header: !shared.no_header,
        delimiter: shared.delimiter,
    };
    match &spec.source {
        Source::Stdin => ingest_reader(stdin, &spec),
        Source::Path(_) => crate::input::ingest_csv(&spec),
    }
}

fn output_spec(shared: &Shared, default: Format) -> OutputSpec {
    OutputSpec {
        format: shared.format.unwrap_or(default),
        precision: shared.precision as usize,
    }
}

/// Writes through `stdout` or into the `--output` file.
fn with_output(
    shared: &Shared,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    if shared.output == "-" {
        body(stdout)?;
        stdout.flush()?;
    } else {
        let file = File::create(&shared.output)
            .map_err(|e| CliError::Config(format!("cannot create {}: {e}", shared.output)))?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn params(m: u32, d: Direction) -> Result<IndicatorParams> {
    Ok(IndicatorParams::new(m as usize, d)?)
}

fn curves(
    data: &Ingested,
    shared: &Shared,
) -> Result<(Option<MiniMaxSeries>, Option<MiniMaxSeries>)> {
    let pick = |d: Direction| -> Result<Option<MiniMaxSeries>> {
        if shared.direction.wants(d) {
            Ok(Some(minimax(&data.series, &params(shared.m, d)?)))
        } else {
            Ok(None)
        }
    };
    Ok((pick(Direction::Up)?, pick(Direction::Down)?))
}

pub fn run_compute(a: &Shared, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let data = ingest(a, stdin)?;
    let (u, d) = curves(&data, a)?;
    let spec = output_spec(a, Format::Csv);
    let labels = data.timestamp_labels.as_deref();
    with_output(a, stdout, |out| match spec.format {
        Format::Csv => output::write_compute_csv(
            out,
            &data.series,
            labels,
            u.as_ref(),
            d.as_ref(),
            spec.precision,
        ),
        Format::Json => output::write_compute_json(
            out,
            &data.series,
            labels,
            u.as_ref(),
            d.as_ref(),
            a.m as usize,
            a.direction.name(),
            spec.precision,
        ),
        Format::Svg => {
            let svg = emit_svg(&data.series, u.as_ref(), d.as_ref(), SvgCanvas::default())?;
            out.write_all(svg.as_bytes())?;
            Ok(())
        }
    })
}

pub fn run_roll(a: &RollArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let s = &a.shared;
    let spec = output_spec(s, Format::Csv);
    if spec.format == Format::Svg {
        return Err(CliError::Usage("roll supports csv and json output".into()));
    }
    let data = ingest(s, stdin)?;
    let window = a.window as usize;
    if data.series.len() < window {
        return Err(CliError::Data(format!(
            "series of {} samples is shorter than the window of {window}",
            data.series.len()
        )));
    }
    let roll = |d: Direction| -> Result<Option<minimax_core::RollingResult>> {
        if !s.direction.wants(d) {
            return Ok(None);
        }
        let cfg = RollingConfig::new(window, a.hop as usize, params(s.m, d)?)?;
        Ok(Some(rolling_minimax(&data.series, &cfg)?))
    };
    let (up, down) = (roll(Direction::Up)?, roll(Direction::Down)?);
    with_output(s, stdout, |out| match spec.format {
        Format::Json => output::write_roll_json(
            out,
            up.as_ref(),
            down.as_ref(),
            &RollMeta {
                m: s.m as usize,
                direction: s.direction.name(),
                window,
                hop: a.hop as usize,
                precision: spec.precision,
            },
        ),
        _ => output::write_roll_csv(
            out,
            &data.series,
            up.as_ref(),
            down.as_ref(),
            spec.precision,
        ),
    })
}

pub fn run_signals(a: &SignalsArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let s = &a.shared;
    let spec = output_spec(s, Format::Csv);
    if spec.format == Format::Svg {
        return Err(CliError::Usage(
            "signals supports csv and json output".into(),
        ));
    }
    if a.crossings && a.ma_period.is_none() {
        return Err(CliError::Usage("--crossings requires --ma-period".into()));
    }
    // Without explicit selection: spindles always, crossings when a period is given.
    let (want_crossings, want_spindle) = if a.crossings || a.spindle {
        (a.crossings, a.spindle)
    } else {
        (a.ma_period.is_some(), true)
    };

    let data = ingest(s, stdin)?;
    let m = s.m as usize;
    let mut records = Vec::new();

    if want_crossings {
        let period = a.ma_period.expect("checked above") as usize;
        if data.series.len() < period + 1 {
            return Err(CliError::Data(format!(
                "series of {} samples is too short for --ma-period {period}",
                data.series.len()
            )));
        }
        for e in support_resistance_pipeline(&data.series, m, period)? {
            if s.direction.wants(e.kind.direction()) {
                records.push(SignalRecord::crossing(&e, period - 1));
            }
        }
    }

    let u = minimax(&data.series, &params(s.m, Direction::Up)?);
    let d = minimax(&data.series, &params(s.m, Direction::Down)?);
    if want_spindle {
        let defaults = SpindleConfig::for_window(m);
        let cfg = SpindleConfig {
            band: a.band.unwrap_or(defaults.band),
            min_len: a.min_len.map_or(defaults.min_len, |v| v as usize),
            min_crossings: a
                .min_crossings
                .map_or(defaults.min_crossings, |v| v as usize),
        };
        records.extend(
            detect_spindle(&u, &d, &cfg)?
                .iter()
                .map(SignalRecord::spindle),
        );
    }
    if let Some(p) = a.prominence {
        for c in [&u, &d] {
            if s.direction.wants(c.direction()) {
                records.extend(extract_extrema(c, p)?.iter().map(SignalRecord::extremum));
            }
        }
    }
    output::sort_records(&mut records);

    with_output(s, stdout, |out| match spec.format {
        Format::Json => output::write_signals_json(
            out,
            &records,
            m,
            a.ma_period.map(|p| p as usize),
            spec.precision,
        ),
        _ => output::write_signals_csv(out, &records, spec.precision),
    })
}

pub fn run_plot(a: &PlotArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let s = &a.shared;
    if matches!(s.format, Some(f) if f != Format::Svg) {
        return Err(CliError::Usage("plot only writes svg".into()));
    }
    let data = ingest(s, stdin)?;
    let (u, d) = curves(&data, s)?;
    let canvas = SvgCanvas {
        width: a.width,
        height: a.height,
    };
    let svg = emit_svg(&data.series, u.as_ref(), d.as_ref(), canvas)?;
    with_output(s, stdout, |out| {
        out.write_all(svg.as_bytes())?;
        Ok(())
    })
}
