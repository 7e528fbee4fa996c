//! CSV / JSONL dataset files and their metadata sidecar.
//!
//! Values are written with Rust's shortest round-trip float formatting, so
//! reading a file back reproduces every value bit-exactly. Each data file
//! `<path>` gets a `<path>.meta` sidecar of `key=value` lines.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use indexmap::IndexMap;

use crate::data_vector::DataVector;
use crate::environment::names;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stochastics::{GAUSSIAN_METHOD, GENERATOR_NAME};

use super::Dataset;

/// Version of the column layout and sidecar keys.
pub const SCHEMA_VERSION: u32 = 1;

const TRAJECTORY: &str = "Trajectory";
const STEP: &str = "Step";
const NEXT_SUFFIX: &str = "_next";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

pub fn metadata_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".meta");
    PathBuf::from(os)
}

fn tuple_header() -> Vec<String> {
    let mut header = vec![TRAJECTORY.to_owned(), STEP.to_owned()];
    header.extend(names::OBSERVATION.iter().map(|s| s.to_string()));
    header.extend(names::ACTION.iter().map(|s| s.to_string()));
    header.extend(
        names::OBSERVATION
            .iter()
            .map(|s| format!("{s}{NEXT_SUFFIX}")),
    );
    header.push(names::REWARD.to_owned());
    header
}

fn trace_header() -> Vec<String> {
    let mut header = vec![TRAJECTORY.to_owned(), STEP.to_owned()];
    header.extend(names::ACTION.iter().map(|s| s.to_string()));
    header.extend(names::EXTENDED_STATE.iter().map(|s| s.to_string()));
    header.push(names::REWARD.to_owned());
    header
}

/// Writes every `(O, a, O', r)` tuple, one row per tuple, plus the sidecar.
pub fn write_dataset<S: Scalar>(dataset: &Dataset<S>, path: &Path, format: Format) -> Result<()> {
    let rows = dataset
        .trajectories
        .iter()
        .enumerate()
        .flat_map(|(i, traj)| {
            traj.tuples.iter().enumerate().map(move |(step, t)| {
                let mut row = Vec::with_capacity(19);
                row.push(S::lit(i as f64));
                row.push(S::lit(step as f64));
                row.extend_from_slice(&t.observation);
                row.extend_from_slice(&t.action);
                row.extend_from_slice(&t.next_observation);
                row.push(t.reward);
                row
            })
        });
    write_table(path, format, &tuple_header(), rows)?;
    write_sidecar(dataset, path, format, "tuples")
}

/// Writes the per-step extended state of every trajectory, plus the sidecar.
/// Trajectories must have been recorded with extended states.
pub fn write_trace<S: Scalar>(dataset: &Dataset<S>, path: &Path, format: Format) -> Result<()> {
    let mut rows = Vec::with_capacity(dataset.tuple_count());
    for (i, traj) in dataset.trajectories.iter().enumerate() {
        let extended = traj.extended.as_ref().ok_or_else(|| {
            Error::InvalidParameter("trajectory was recorded without extended states".into())
        })?;
        for (step, (t, ext)) in traj.tuples.iter().zip(extended).enumerate() {
            let mut row = Vec::with_capacity(34);
            row.push(S::lit(i as f64));
            row.push(S::lit(step as f64));
            row.extend_from_slice(&t.action);
            row.extend(ext.values());
            row.push(t.reward);
            rows.push(row);
        }
    }
    write_table(path, format, &trace_header(), rows.into_iter())?;
    write_sidecar(dataset, path, format, "trace")
}

fn write_table<S: Scalar>(
    path: &Path,
    format: Format,
    header: &[String],
    rows: impl Iterator<Item = Vec<S>>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer
                .write_record(header)
                .map_err(|e| Error::format(path, e))?;
            for row in rows {
                check_finite(path, &row)?;
                writer
                    .write_record(row.iter().map(ToString::to_string))
                    .map_err(|e| Error::format(path, e))?;
            }
            writer.flush().map_err(|e| Error::io(path, e))?;
        }
        Format::Jsonl => {
            let keys: Vec<String> = header
                .iter()
                .map(|k| serde_json::to_string(k).expect("strings serialise"))
                .collect();
            let mut line = String::new();
            for row in rows {
                check_finite(path, &row)?;
                line.clear();
                line.push('{');
                for (i, (k, v)) in keys.iter().zip(&row).enumerate() {
                    if i > 0 {
                        line.push(',');
                    }
                    line.push_str(k);
                    line.push(':');
                    line.push_str(&v.to_string());
                }
                line.push_str("}\n");
                out.write_all(line.as_bytes())
                    .map_err(|e| Error::io(path, e))?;
            }
        }
    }
    out.flush().map_err(|e| Error::io(path, e))
}

fn check_finite<S: Scalar>(path: &Path, row: &[S]) -> Result<()> {
    if row.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::format(path, "refusing to write a non-finite value"))
    }
}

fn write_sidecar<S: Scalar>(
    dataset: &Dataset<S>,
    path: &Path,
    format: Format,
    kind: &str,
) -> Result<()> {
    let set_points: Vec<String> = dataset
        .trajectories
        .iter()
        .map(|t| t.set_point.to_string())
        .collect();
    let entries = [
        ("schema_version", SCHEMA_VERSION.to_string()),
        (
            "schema_fingerprint",
            format!("{:016x}", names::schema_fingerprint()),
        ),
        ("crate_version", env!("CARGO_PKG_VERSION").to_owned()),
        ("kind", kind.to_owned()),
        ("format", format.to_string()),
        ("scalar", std::any::type_name::<S>().to_owned()),
        ("seed", dataset.seed.to_string()),
        ("generator", GENERATOR_NAME.to_owned()),
        ("gaussian", GAUSSIAN_METHOD.to_owned()),
        ("miscalibration", dataset.miscalibration.clone()),
        ("policy", "max-entropy".to_owned()),
        ("set_points", set_points.join(",")),
        ("steps", dataset.steps.to_string()),
        ("rows", dataset.tuple_count().to_string()),
    ];
    let meta = metadata_path(path);
    let mut text = String::new();
    for (k, v) in entries {
        text.push_str(k);
        text.push('=');
        text.push_str(&v);
        text.push('\n');
    }
    std::fs::write(&meta, text).map_err(|e| Error::io(meta, e))
}

/// Reads the `key=value` sidecar of a data file.
pub fn read_metadata(path: &Path) -> Result<IndexMap<String, String>> {
    let meta = metadata_path(path);
    let text = std::fs::read_to_string(&meta).map_err(|e| Error::io(&meta, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split_once('=')
                .map(|(k, v)| (k.to_owned(), v.to_owned()))
                .ok_or_else(|| Error::format(&meta, format!("malformed line `{line}`")))
        })
        .collect()
}

/// Reads every row of a file produced by [`write_dataset`] or [`write_trace`].
pub fn read_dataset<S: Scalar>(path: &Path, format: Format) -> Result<Vec<DataVector<S>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let parse = |s: &str| {
        s.parse::<S>()
            .map_err(|_| Error::format(path, format!("`{s}` is not a number")))
    };
    let mut rows = Vec::new();
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(BufReader::new(file));
            let header: Vec<String> = reader
                .headers()
                .map_err(|e| Error::format(path, e))?
                .iter()
                .map(str::to_owned)
                .collect();
            for record in reader.records() {
                let record = record.map_err(|e| Error::format(path, e))?;
                let values = record.iter().map(parse).collect::<Result<Vec<S>>>()?;
                rows.push(DataVector::from_pairs(header.iter().cloned().zip(values))?);
            }
        }
        Format::Jsonl => {
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::io(path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let object: IndexMap<String, serde_json::Number> =
                    serde_json::from_str(&line).map_err(|e| Error::format(path, e))?;
                let pairs = object
                    .into_iter()
                    .map(|(k, v)| parse(&v.to_string()).map(|v| (k, v)))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(DataVector::from_pairs(pairs)?);
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate_dataset, rollout, BuiltinPolicy, RunSpec};

    #[test]
    fn header_layouts() {
        let h = tuple_header();
        assert_eq!(h.len(), 2 + 6 + 3 + 6 + 1);
        assert_eq!(&h[2..8], names::OBSERVATION.map(String::from));
        assert_eq!(h[8], "DeltaVelocity");
        assert_eq!(h[11], "SetPoint_next");
        assert_eq!(h.last().unwrap(), "RewardTotal");
        assert!(trace_header()
            .iter()
            .any(|k| k == names::OPERATIONAL_COST_CONV));
    }

    #[test]
    fn csv_and_jsonl_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_dataset(&RunSpec::new(vec![20.0, 80.0], 25, 3)).unwrap();
        for format in [Format::Csv, Format::Jsonl] {
            let path = dir.path().join(format!("d.{format}"));
            write_dataset(&ds, &path, format).unwrap();
            let rows: Vec<DataVector<f64>> = read_dataset(&path, format).unwrap();
            assert_eq!(rows.len(), 50);
            for (row, t) in rows
                .iter()
                .zip(ds.trajectories.iter().flat_map(|t| &t.tuples))
            {
                assert_eq!(row.values()[2..8], t.observation);
                assert_eq!(row.values()[8..11], t.action);
                assert_eq!(row.values()[11..17], t.next_observation);
                assert_eq!(
                    row.value("RewardTotal").unwrap().to_bits(),
                    t.reward.to_bits()
                );
            }
            let meta = read_metadata(&path).unwrap();
            assert_eq!(meta["seed"], "3");
            assert_eq!(meta["miscalibration"], "disabled");
            assert_eq!(meta["generator"], GENERATOR_NAME);
            assert_eq!(meta["rows"], "50");
        }
    }

    #[test]
    fn f32_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_dataset(&RunSpec::<f32>::new(vec![50.0], 20, 9)).unwrap();
        for format in [Format::Csv, Format::Jsonl] {
            let path = dir.path().join(format!("f.{format}"));
            write_dataset(&ds, &path, format).unwrap();
            let rows: Vec<DataVector<f32>> = read_dataset(&path, format).unwrap();
            for (row, t) in rows.iter().zip(&ds.trajectories[0].tuples) {
                assert_eq!(
                    row.value("RewardTotal").unwrap().to_bits(),
                    t.reward.to_bits()
                );
            }
        }
    }

    #[test]
    fn trace_requires_extended_states() {
        let dir = tempfile::tempdir().unwrap();
        let spec = RunSpec::new(vec![50.0], 5, 1);
        let plain = generate_dataset(&spec).unwrap();
        assert!(write_trace(&plain, &dir.path().join("t.csv"), Format::Csv).is_err());
        let traced = rollout(&spec, &BuiltinPolicy::MaxEntropy, true).unwrap();
        let path = dir.path().join("t.jsonl");
        write_trace(&traced, &path, Format::Jsonl).unwrap();
        let rows: Vec<DataVector<f64>> = read_dataset(&path, Format::Jsonl).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows[0].contains(names::OPERATIONAL_COST_CONV));
        assert!(rows[0].contains(names::FATIGUE_LATENT_V));
    }

    #[test]
    fn io_errors_carry_the_path() {
        let ds = generate_dataset(&RunSpec::new(vec![50.0], 1, 1)).unwrap();
        let path = Path::new("/nonexistent-dir/x.csv");
        let err = write_dataset(&ds, path, Format::Csv).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn format_parse() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("jsonl".parse::<Format>().unwrap(), Format::Jsonl);
        assert!("xml".parse::<Format>().is_err());
    }
}
