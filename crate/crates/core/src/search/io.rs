use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::{SearchError, SearchRecord};

/// On-disk record formats. Both carry `n, s, outcome, elapsed_us`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Comma-separated with a header row.
    Csv,
    /// One JSON object per line.
    JsonLines,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" => Ok(Format::JsonLines),
            _ => Err(format!("expected csv or json, got {s:?}")),
        }
    }
}

pub enum RecordWriter<W: Write> {
    Csv(Box<csv::Writer<W>>),
    JsonLines(BufWriter<W>),
}

impl<W: Write> RecordWriter<W> {
    /// `header` controls the CSV header row; set it to false when appending.
    pub fn new(inner: W, format: Format, header: bool) -> Self {
        match format {
            Format::Csv => RecordWriter::Csv(Box::new(
                csv::WriterBuilder::new()
                    .has_headers(header)
                    .from_writer(inner),
            )),
            Format::JsonLines => RecordWriter::JsonLines(BufWriter::new(inner)),
        }
    }

    pub fn write(&mut self, record: &SearchRecord) -> Result<(), SearchError> {
        match self {
            RecordWriter::Csv(w) => w.serialize(record)?,
            RecordWriter::JsonLines(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), SearchError> {
        match self {
            RecordWriter::Csv(w) => w.flush()?,
            RecordWriter::JsonLines(w) => w.flush()?,
        }
        Ok(())
    }
}

pub fn read_records<R: Read>(reader: R, format: Format) -> Result<Vec<SearchRecord>, SearchError> {
    match format {
        Format::Csv => {
            let mut rdr = csv::Reader::from_reader(reader);
            let out = rdr
                .deserialize()
                .collect::<Result<Vec<SearchRecord>, _>>()?;
            Ok(out)
        }
        Format::JsonLines => {
            let mut out = Vec::new();
            for (i, line) in BufReader::new(reader).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let record = serde_json::from_str(&line).map_err(|e| SearchError::Malformed {
                    line: i + 1,
                    reason: e.to_string(),
                })?;
                out.push(record);
            }
            Ok(out)
        }
    }
}

/// What survives of an interrupted run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResumeState {
    /// Records of every fully written column.
    pub kept: Vec<SearchRecord>,
    /// First `n` to recompute, if the file held any records.
    pub restart_n: Option<usize>,
}

/// Reads an existing output file, drops the rows of its last `n` (which may
/// be partial) and rewrites the file with what remains. A missing file is an
/// empty state.
pub fn prepare_resume(path: &Path, format: Format) -> Result<ResumeState, SearchError> {
    let records = match File::open(path) {
        Ok(f) => read_records(f, format)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let Some(last_n) = records.iter().map(|r| r.n).max() else {
        return Ok(ResumeState {
            kept: Vec::new(),
            restart_n: None,
        });
    };
    let kept: Vec<SearchRecord> = records.into_iter().filter(|r| r.n < last_n).collect();
    let mut w = RecordWriter::new(File::create(path)?, format, true);
    for r in &kept {
        w.write(r)?;
    }
    w.flush()?;
    Ok(ResumeState {
        kept,
        restart_n: Some(last_n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Outcome;
    use std::io::Cursor;

    fn rec(n: usize, s: usize, outcome: Outcome) -> SearchRecord {
        SearchRecord {
            n,
            s,
            outcome,
            elapsed_us: 12,
            smallest_factor_degree: None,
        }
    }

    fn to_bytes(records: &[SearchRecord], format: Format) -> Vec<u8> {
        let mut buf = Vec::new();
        {
            let mut w = RecordWriter::new(&mut buf, format, true);
            records.iter().for_each(|r| w.write(r).unwrap());
            w.flush().unwrap();
        }
        buf
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(to_bytes(
            &[
                rec(7, 2, Outcome::Irreducible),
                rec(11, 2, Outcome::ReducibleCertified),
            ],
            Format::Csv,
        ))
        .unwrap();
        assert_eq!(
            text,
            "n,s,outcome,elapsed_us\n7,2,irr,12\n11,2,red_cert,12\n"
        );
    }

    #[test]
    fn round_trip_both_formats() {
        let records: Vec<_> = Outcome::ALL
            .iter()
            .enumerate()
            .map(|(i, &o)| rec(7 + 2 * i, 2, o))
            .collect();
        for format in [Format::Csv, Format::JsonLines] {
            let bytes = to_bytes(&records, format);
            assert_eq!(read_records(Cursor::new(bytes), format).unwrap(), records);
        }
        let line = String::from_utf8(to_bytes(&records[..1], Format::JsonLines)).unwrap();
        assert_eq!(
            line,
            "{\"n\":7,\"s\":2,\"outcome\":\"irr\",\"elapsed_us\":12}\n"
        );
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(read_records(
            Cursor::new("n,s,outcome,elapsed_us\n7,2,maybe,1\n"),
            Format::Csv
        )
        .is_err());
        let err = read_records(Cursor::new("{\"n\":7}\n"), Format::JsonLines).unwrap_err();
        assert!(matches!(err, SearchError::Malformed { line: 1, .. }));
    }

    #[test]
    fn resume_drops_the_last_column() {
        let dir = std::env::temp_dir().join(format!("pentaparity-resume-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        for format in [Format::Csv, Format::JsonLines] {
            let path = dir.join("out");
            let records = vec![
                rec(7, 2, Outcome::Irreducible),
                rec(9, 2, Outcome::ReducibleSmallFactor),
                rec(11, 2, Outcome::ReducibleCertified),
            ];
            std::fs::write(&path, to_bytes(&records, format)).unwrap();
            let state = prepare_resume(&path, format).unwrap();
            assert_eq!(state.restart_n, Some(11));
            assert_eq!(state.kept, records[..2].to_vec());
            assert_eq!(
                read_records(File::open(&path).unwrap(), format).unwrap(),
                records[..2].to_vec()
            );
            std::fs::remove_file(&path).unwrap();
            let fresh = prepare_resume(&path, format).unwrap();
            assert_eq!(
                fresh,
                ResumeState {
                    kept: vec![],
                    restart_n: None
                }
            );
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
