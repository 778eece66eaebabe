//! Delimited-text price ingestion.

use std::fs::File;
use std::io::{self, Read};
use std::path::PathBuf;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveDateTime};
use minimax_core::PriceSeries;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Stdin,
}

impl FromStr for Source {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(if s == "-" {
            Source::Stdin
        } else {
            Source::Path(PathBuf::from(s))
        })
    }
}

/// A column picked by header name or by 0-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_string()),
        })
    }
}

impl std::fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnRef::Name(n) => write!(f, "'{n}'"),
            ColumnRef::Index(i) => write!(f, "#{i}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InputSpec {
    pub source: Source,
    /// `None` picks a column named `close` (OHLC files), or the only column.
    pub price_col: Option<ColumnRef>,
    pub time_col: Option<ColumnRef>,
    pub has_header: bool,
    pub delimiter: u8,
}

impl InputSpec {
    pub fn new(source: Source) -> Self {
        Self {
            source,
            price_col: None,
            time_col: None,
            has_header: true,
            delimiter: b',',
        }
    }

    pub fn price_col(mut self, col: ColumnRef) -> Self {
        self.price_col = Some(col);
        self
    }

    pub fn time_col(mut self, col: ColumnRef) -> Self {
        self.time_col = Some(col);
        self
    }
}

/// Parses a delimiter flag: one ASCII character, or `tab` / `\t`.
pub fn parse_delimiter(s: &str) -> std::result::Result<u8, String> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!(
            "delimiter must be a single ASCII character, got {s:?}"
        )),
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub series: PriceSeries,
    /// Timestamp cells as written in the input, for echoing back.
    pub timestamp_labels: Option<Vec<String>>,
}

pub fn ingest_csv(spec: &InputSpec) -> Result<Ingested> {
    match &spec.source {
        Source::Stdin => ingest_reader(io::stdin().lock(), spec),
        Source::Path(p) => {
            let file = File::open(p)
                .map_err(|e| CliError::Config(format!("cannot open {}: {e}", p.display())))?;
            ingest_reader(file, spec)
        }
    }
}

pub fn ingest_reader<R: Read>(reader: R, spec: &InputSpec) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(spec.has_header)
        .delimiter(spec.delimiter)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader);

    let headers: Option<Vec<String>> = if spec.has_header {
        Some(rdr.headers()?.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut prices = Vec::new();
    let mut labels = Vec::new();
    let mut times = Vec::new();
    let mut columns: Option<(usize, Option<usize>)> = None;

    for (row, record) in rdr.records().enumerate() {
        let row = row + 1;
        let record = record.map_err(|e| CliError::Data(format!("row {row}: {e}")))?;
        let (price_idx, time_idx) = match columns {
            Some(c) => c,
            None => {
                let width = record.len();
                let price = match &spec.price_col {
                    Some(c) => resolve(c, headers.as_deref(), width)?,
                    None => default_price_column(headers.as_deref(), width)?,
                };
                let time = spec
                    .time_col
                    .as_ref()
                    .map(|c| resolve(c, headers.as_deref(), width))
                    .transpose()?;
                *columns.insert((price, time))
            }
        };

        let cell = &record[price_idx];
        let price: f64 = cell
            .parse()
            .map_err(|_| CliError::Data(format!("row {row}: unparsable price {cell:?}")))?;
        if !(price.is_finite() && price > 0.0) {
            return Err(CliError::Data(format!(
                "row {row}: price must be strictly positive, got {cell}"
            )));
        }
        prices.push(price);

        if let Some(t) = time_idx {
            let cell = &record[t];
            times.push(parse_time(cell).ok_or_else(|| {
                CliError::Data(format!("row {row}: unparsable timestamp {cell:?}"))
            })?);
            labels.push(cell.to_string());
        }
    }

    if prices.len() < 2 {
        return Err(CliError::Data(format!(
            "need at least 2 price rows, found {}",
            prices.len()
        )));
    }
    if let Some(i) = times.windows(2).position(|w| w[1] < w[0]) {
        return Err(CliError::Data(format!(
            "row {}: timestamps are not sorted",
            i + 2
        )));
    }

    let series = if spec.time_col.is_some() {
        PriceSeries::with_timestamps(prices, times)?
    } else {
        PriceSeries::new(prices)?
    };
    Ok(Ingested {
        series,
        timestamp_labels: spec.time_col.as_ref().map(|_| labels),
    })
}

fn resolve(col: &ColumnRef, headers: Option<&[String]>, width: usize) -> Result<usize> {
    let found = match (col, headers) {
        (ColumnRef::Name(name), Some(h)) => h.iter().position(|x| x == name),
        (ColumnRef::Name(_), None) => {
            return Err(CliError::Config(format!(
                "column {col} selected by name but the input has no header"
            )))
        }
        (ColumnRef::Index(i), Some(h)) => {
            // A header literally named like a number wins over the position.
            h.iter()
                .position(|x| x == &i.to_string())
                .or((*i < width).then_some(*i))
        }
        (ColumnRef::Index(i), None) => (*i < width).then_some(*i),
    };
    found.ok_or_else(|| CliError::Config(format!("column {col} not found in input")))
}

fn default_price_column(headers: Option<&[String]>, width: usize) -> Result<usize> {
    if let Some(i) = headers.and_then(|h| h.iter().position(|x| x.eq_ignore_ascii_case("close"))) {
        return Ok(i);
    }
    if width == 1 {
        return Ok(0);
    }
    Err(CliError::Config(
        "no 'close' column and several columns present; pass --price-col".into(),
    ))
}

/// Numeric time, RFC 3339, `YYYY-MM-DD HH:MM:SS` or `YYYY-MM-DD`, as
/// seconds.
fn parse_time(s: &str) -> Option<f64> {
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.timestamp() as f64);
    }
    for fmt in ["%Y-%m-%d %H:%M:%S", "%Y-%m-%dT%H:%M:%S"] {
        if let Ok(t) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(t.and_utc().timestamp() as f64);
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|t| t.and_utc().timestamp() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> InputSpec {
        InputSpec::new(Source::Stdin)
    }

    #[test]
    fn two_rows_with_time() {
        let got = ingest_reader(
            "t,close\n1,100\n2,101\n".as_bytes(),
            &spec()
                .price_col("close".parse().unwrap())
                .time_col("t".parse().unwrap()),
        )
        .unwrap();
        assert_eq!(got.series.values(), &[100.0, 101.0]);
        assert_eq!(got.series.timestamps(), Some(&[1.0, 2.0][..]));
        assert_eq!(got.timestamp_labels.unwrap(), ["1", "2"]);
    }

    #[test]
    fn missing_column_is_config_error() {
        let err = ingest_reader(
            "t,close\n1,100\n2,101\n".as_bytes(),
            &spec().price_col("open".parse().unwrap()),
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn negative_price_names_row() {
        let err = ingest_reader("t,close\n1,100\n2,101\n3,-5\n".as_bytes(), &spec()).unwrap_err();
        assert!(
            matches!(err, CliError::Data(ref m) if m.contains("row 3")),
            "{err}"
        );
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn unparsable_and_short_inputs() {
        let err = ingest_reader("close\n1\nabc\n".as_bytes(), &spec()).unwrap_err();
        assert!(err.to_string().contains("row 2"));
        let err = ingest_reader("close\n1\n".as_bytes(), &spec()).unwrap_err();
        assert!(matches!(err, CliError::Data(_)));
    }

    #[test]
    fn ohlc_defaults_to_close() {
        let text = "date;open;high;low;close\n2024-01-02;1;3;0.5;2\n2024-01-03;2;4;1.5;3.5\n";
        let mut s = spec().time_col("date".parse().unwrap());
        s.delimiter = b';';
        let got = ingest_reader(text.as_bytes(), &s).unwrap();
        assert_eq!(got.series.values(), &[2.0, 3.5]);
        let t = got.series.timestamps().unwrap();
        assert_eq!(t[1] - t[0], 86_400.0);
    }

    #[test]
    fn headerless_by_index() {
        let mut s = spec().price_col(ColumnRef::Index(1));
        s.has_header = false;
        let got = ingest_reader("a,5\nb,6\nc,7\n".as_bytes(), &s).unwrap();
        assert_eq!(got.series.values(), &[5.0, 6.0, 7.0]);
        s.price_col = Some(ColumnRef::Name("close".into()));
        assert!(matches!(
            ingest_reader("a,5\nb,6\n".as_bytes(), &s),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn ambiguous_default_column() {
        assert!(matches!(
            ingest_reader("a,b\n1,2\n3,4\n".as_bytes(), &spec()),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn unsorted_timestamps_rejected() {
        let s = spec().time_col("t".parse().unwrap());
        let err = ingest_reader("t,close\n2,1\n1,2\n".as_bytes(), &s).unwrap_err();
        assert!(matches!(err, CliError::Data(_)));
    }

    #[test]
    fn delimiters() {
        assert_eq!(parse_delimiter(";"), Ok(b';'));
        assert_eq!(parse_delimiter("tab"), Ok(b'\t'));
        assert!(parse_delimiter(";;").is_err());
        assert!(parse_delimiter("é").is_err());
    }
}
