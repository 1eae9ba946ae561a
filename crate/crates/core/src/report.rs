//! Deterministic text output: shortest round-trip floats and CSV rows.

use std::io::Write;

/// Shortest representation that parses back to the same f64. Negative
/// zero prints as "0"; non-finite values print as "inf", "-inf", "nan".
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{v}");
    // Display never uses exponents; switch to them for very large/small
    // magnitudes so that rows stay short.
    let e = format!("{v:e}");
    if e.len() < s.len() {
        e
    } else {
        s
    }
}

pub fn parse_float(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => s.parse().ok(),
    }
}

/// Serde adapter: finite values stay JSON numbers, others become strings.
pub mod float_repr {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str(&super::format_float(*v))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => super::parse_float(&t).ok_or_else(|| serde::de::Error::custom(format!("bad float {t:?}"))),
        }
    }
}

/// A cell in a CSV row.
pub enum Cell<'a> {
    F(f64),
    I(i64),
    U(u64),
    B(bool),
    S(&'a str),
    Empty,
}

impl Cell<'_> {
    fn render(&self) -> String {
        match self {
            Cell::F(v) => format_float(*v),
            Cell::I(v) => v.to_string(),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(s) => s.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

// keeps the io kind so callers can tell a closed pipe from a real failure
fn csv_to_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

/// Writes CSV with a fixed header; quoting is handled by the csv crate.
pub struct CsvOut<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvOut<W> {
    pub fn new(w: W, header: &[&str]) -> std::io::Result<Self> {
        let mut inner = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        inner.write_record(header).map_err(csv_to_io)?;
        Ok(Self { inner })
    }

    pub fn row(&mut self, cells: &[Cell<'_>]) -> std::io::Result<()> {
        self.inner.write_record(cells.iter().map(Cell::render)).map_err(csv_to_io)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for &v in &[0.1, -2.5, 1e-300, 6.02214076e23, std::f64::consts::PI, 212.0, -1.0] {
            let s = format_float(v);
            assert_eq!(parse_float(&s), Some(v), "{s}");
        }
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(-1.0), "-1");
        assert_eq!(format_float(1e-20), "1e-20");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut buf = Vec::new();
        let mut w = CsvOut::new(&mut buf, &["a", "b"]).unwrap();
        w.row(&[Cell::F(0.5), Cell::S("x, y")]).unwrap();
        w.finish().unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n0.5,\"x, y\"\n");
    }
}
