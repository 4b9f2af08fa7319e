use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{CensusReport, FieldTally, QuarticRecord};

pub const CHECKPOINT_SCHEMA: u32 = 1;

const RECORDS: &str = "records.jsonl";
const CHECKPOINT: &str = "checkpoint.json";
const SUMMARY: &str = "summary.csv";
const REPORT: &str = "report.json";

/// Resumable state, written after every completed batch of base fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema: u32,
    pub x: u64,
    /// Number of base fields fully written.
    pub cursor: usize,
    /// Length of records.jsonl at that point.
    pub jsonl_bytes: u64,
    pub tallies: Vec<FieldTally>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let ck: Checkpoint = serde_json::from_str(&text)?;
        if ck.schema != CHECKPOINT_SCHEMA {
            return Err(Error::Parse(format!("checkpoint schema {} (expected {CHECKPOINT_SCHEMA})", ck.schema)));
        }
        if ck.cursor != ck.tallies.len() {
            return Err(Error::Parse("checkpoint cursor does not match its tallies".into()));
        }
        Ok(ck)
    }
}

/// The on-disk line format: every integer as a decimal string.
#[derive(Serialize)]
struct Line<'a> {
    base_disc: String,
    ideal_label: &'a str,
    selmer_bits: String,
    rel_disc_norm: String,
    abs_disc: String,
    galois: &'a str,
    minpoly: &'a [String; 5],
}

pub fn record_line(r: &QuarticRecord) -> String {
    let line = Line {
        base_disc: r.base_disc.to_string(),
        ideal_label: &r.ideal_label,
        selmer_bits: r.selmer_bits.to_string(),
        rel_disc_norm: r.rel_disc_norm.to_string(),
        abs_disc: r.abs_disc.to_string(),
        galois: r.galois.as_str(),
        minpoly: &r.minpoly,
    };
    serde_json::to_string(&line).expect("plain data serializes")
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub(super) struct Sink {
    dir: PathBuf,
    checkpoint: Checkpoint,
}

impl Sink {
    pub(super) fn open(dir: &Path, x: u64, resume: Option<&Path>) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let records = dir.join(RECORDS);
        let checkpoint = match resume {
            Some(path) => {
                let ck = Checkpoint::load(path)?;
                if ck.x != x {
                    return Err(Error::Parse(format!("checkpoint is for X = {}, not {x}", ck.x)));
                }
                // drop anything written after the checkpoint
                let f = OpenOptions::new().write(true).open(&records)?;
                if f.metadata()?.len() < ck.jsonl_bytes {
                    return Err(Error::Parse("records file is shorter than the checkpoint says".into()));
                }
                f.set_len(ck.jsonl_bytes)?;
                f.sync_all()?;
                ck
            }
            None => {
                File::create(&records)?.sync_all()?;
                Checkpoint { schema: CHECKPOINT_SCHEMA, x, cursor: 0, jsonl_bytes: 0, tallies: Vec::new() }
            }
        };
        let sink = Sink { dir: dir.to_path_buf(), checkpoint };
        sink.save()?;
        Ok(sink)
    }

    pub(super) fn tallies(&self) -> &[FieldTally] {
        &self.checkpoint.tallies
    }

    fn save(&self) -> Result<()> {
        let bytes = serde_json::to_vec_pretty(&self.checkpoint)?;
        write_atomic(&self.dir.join(CHECKPOINT), &bytes)
    }

    pub(super) fn append<'a>(
        &mut self,
        records: impl Iterator<Item = &'a QuarticRecord>,
        tallies: &[FieldTally],
    ) -> Result<()> {
        let f = OpenOptions::new().append(true).open(self.dir.join(RECORDS))?;
        let mut w = BufWriter::new(f);
        let mut written = 0u64;
        for r in records {
            let line = record_line(r);
            w.write_all(line.as_bytes())?;
            w.write_all(b"\n")?;
            written += line.len() as u64 + 1;
        }
        let f = w.into_inner().map_err(|e| e.into_error())?;
        f.sync_all()?;
        self.checkpoint.jsonl_bytes += written;
        self.checkpoint.cursor = tallies.len();
        self.checkpoint.tallies = tallies.to_vec();
        self.save()
    }

    pub(super) fn finish(&mut self, report: &CensusReport) -> Result<()> {
        let csv = format!(
            "X,pair_count,N_D4,N_C4,N_V4,raw_D4,raw_V4\n{},{},{},{},{},{},{}\n",
            report.x, report.pair_count, report.n_d4, report.n_c4, report.n_v4, report.raw_d4, report.raw_v4
        );
        write_atomic(&self.dir.join(SUMMARY), csv.as_bytes())?;
        write_atomic(&self.dir.join(REPORT), &serde_json::to_vec_pretty(report)?)
    }
}
