//! Reading and writing `time,delta` datasets.
//!
//! One observation per line: a positive time and an event indicator (1 for
//! an observed failure, 0 for a censored time). Blank lines and lines
//! starting with `#` are ignored, and a `time,delta` header is optional.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::distributions::CensoredSample;
use crate::error::{Error, Result};

/// Survival times in days of 43 leukemia patients, all uncensored.
pub const LEUKEMIA_SURVIVAL: &str = include_str!("../../data/leukemia_survival.csv");
/// Initial remission times in days of 66 leukemia patients, 14 censored.
pub const REMISSION_TIMES: &str = include_str!("../../data/remission_times.csv");

/// The datasets shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bundled {
    LeukemiaSurvival,
    RemissionTimes,
}

impl Bundled {
    pub const ALL: [Bundled; 2] = [Bundled::LeukemiaSurvival, Bundled::RemissionTimes];

    pub fn name(self) -> &'static str {
        match self {
            Bundled::LeukemiaSurvival => "leukemia-survival",
            Bundled::RemissionTimes => "remission-times",
        }
    }

    pub fn contents(self) -> &'static str {
        match self {
            Bundled::LeukemiaSurvival => LEUKEMIA_SURVIVAL,
            Bundled::RemissionTimes => REMISSION_TIMES,
        }
    }

    pub fn sample(self) -> CensoredSample {
        parse_dataset(self.contents()).expect("bundled datasets are valid")
    }
}

impl FromStr for Bundled {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == s || b.name().replace('-', "_") == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown bundled dataset '{s}' (available: leukemia-survival, remission-times)"
                ))
            })
    }
}

/// Parses dataset text. Errors name the offending line.
pub fn parse_dataset(text: &str) -> Result<CensoredSample> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut times = Vec::new();
    let mut deltas = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let is_header = first
            && record
                .get(0)
                .is_some_and(|f| f.eq_ignore_ascii_case("time"));
        first = false;
        if is_header {
            continue;
        }
        let bad = |message: String| Error::Parse { line, message };
        if record.len() != 2 {
            return Err(bad(format!(
                "expected 2 fields (time,delta), found {}",
                record.len()
            )));
        }
        let time: f64 = record[0]
            .parse()
            .map_err(|_| bad(format!("time '{}' is not a number", &record[0])))?;
        if !(time.is_finite() && time > 0.0) {
            return Err(bad(format!(
                "time must be positive and finite, got {}",
                &record[0]
            )));
        }
        let delta = match &record[1] {
            "1" => true,
            "0" => false,
            other => return Err(bad(format!("delta must be 0 or 1, got '{other}'"))),
        };
        times.push(time);
        deltas.push(delta);
    }
    if times.is_empty() {
        return Err(Error::EmptyDataset);
    }
    CensoredSample::new(times, deltas)
}

/// Reads a dataset file.
pub fn ingest(path: impl AsRef<Path>) -> Result<CensoredSample> {
    parse_dataset(&std::fs::read_to_string(path)?)
}

/// Formats a sample so that [`parse_dataset`] returns it unchanged.
pub fn emit(sample: &CensoredSample) -> String {
    let mut out = String::from("time,delta\n");
    for (t, &d) in sample.times().iter().zip(sample.deltas()) {
        // Display for f64 prints the shortest string that reads back exactly
        writeln!(out, "{t},{}", u8::from(d)).expect("writing to a String");
    }
    out
}

pub fn write_dataset(path: impl AsRef<Path>, sample: &CensoredSample) -> Result<()> {
    std::fs::write(path, emit(sample))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_counts() {
        let leuk = Bundled::LeukemiaSurvival.sample();
        assert_eq!((leuk.len(), leuk.events()), (43, 43));
        let rem = Bundled::RemissionTimes.sample();
        assert_eq!((rem.len(), rem.events()), (66, 52));
    }

    #[test]
    fn header_comments_and_blank_lines() {
        let s = parse_dataset("# note\n\ntime,delta\n1.5,1\n  2 , 0 \n# tail\n3,1\n").unwrap();
        assert_eq!(s.times(), &[1.5, 2.0, 3.0]);
        assert_eq!(s.deltas(), &[true, false, true]);
        let s = parse_dataset("4,1\n5,0\n").unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn bad_rows_name_their_line() {
        let line_of = |text: &str| match parse_dataset(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(line_of("time,delta\n1,1\n5,2\n"), 3);
        assert_eq!(line_of("# c\n1,1\n-2,1\n"), 3);
        assert_eq!(line_of("1,1\nabc,1\n"), 2);
        assert_eq!(line_of("1,1,1\n"), 1);
        assert_eq!(line_of("0,1\n"), 1);
        assert_eq!(line_of("inf,1\n"), 1);
    }

    #[test]
    fn empty_inputs() {
        assert!(matches!(parse_dataset(""), Err(Error::EmptyDataset)));
        assert!(matches!(
            parse_dataset("# only\ntime,delta\n"),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn emit_round_trips() {
        let s = CensoredSample::new(
            vec![0.1, 1e-300, 123456.789, 2.0 / 3.0],
            vec![true, false, true, false],
        )
        .unwrap();
        assert_eq!(parse_dataset(&emit(&s)).unwrap(), s);
    }

    #[test]
    fn bundled_names_parse() {
        for b in Bundled::ALL {
            assert_eq!(b.name().parse::<Bundled>().unwrap(), b);
        }
        assert!("nope".parse::<Bundled>().is_err());
    }
}
