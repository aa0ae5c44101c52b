//! JSON Lines census files: one object per isomorphism class, sorted by
//! canonical key. Coordinates are 1-based in the file.

use std::io::{BufRead, Write};

use anyhow::{bail, Context};
use ghw_core::bits::bit_indices;
use ghw_core::{Census, CensusEntry, Generator, GhwPresentation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub flips: Vec<usize>,
    pub halves: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLine {
    pub dim: usize,
    pub support: Vec<usize>,
    pub generators: Vec<GeneratorRecord>,
    pub canonical_key: String,
    pub beta1: usize,
    pub orientable: bool,
    pub betti: Vec<u64>,
    pub h1_order: u64,
    pub out_order: u64,
}

fn coords(mask: u64) -> Vec<usize> {
    bit_indices(mask).map(|i| i + 1).collect()
}

fn mask(dim: usize, coords: &[usize]) -> anyhow::Result<u64> {
    coords.iter().try_fold(0u64, |m, &c| {
        if !(1..=dim).contains(&c) {
            bail!("coordinate {c} outside 1..={dim}");
        }
        Ok(m | 1 << (c - 1))
    })
}

impl CensusLine {
    pub fn from_entry(dim: usize, e: &CensusEntry) -> Self {
        CensusLine {
            dim,
            support: coords(e.presentation.support()),
            generators: e
                .presentation
                .gens()
                .iter()
                .map(|g| GeneratorRecord { flips: coords(g.sign.0), halves: coords(g.translation.0) })
                .collect(),
            canonical_key: e.key.to_hex(),
            beta1: e.beta1,
            orientable: e.orientable,
            betti: e.betti.as_slice().to_vec(),
            h1_order: e.h1_order,
            out_order: e.out_order,
        }
    }

    /// Rebuilds the entry, recomputing every cached invariant and checking it
    /// against the stored value.
    pub fn to_entry(&self) -> anyhow::Result<CensusEntry> {
        let gens = self
            .generators
            .iter()
            .map(|g| Ok(Generator::new(mask(self.dim, &g.flips)?, mask(self.dim, &g.halves)?)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let presentation = GhwPresentation::new(self.dim, gens)?;
        let entry = CensusEntry::new(presentation)?;
        let recomputed = CensusLine::from_entry(self.dim, &entry);
        if &recomputed != self {
            bail!("stored data disagrees with recomputation for key {}", self.canonical_key);
        }
        Ok(entry)
    }
}

pub fn write_census(census: &Census, mut out: impl Write) -> anyhow::Result<()> {
    for e in &census.entries {
        serde_json::to_writer(&mut out, &CensusLine::from_entry(census.dim, e))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_census(input: impl BufRead) -> anyhow::Result<Census> {
    let mut dim = None;
    let mut entries: Vec<CensusEntry> = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CensusLine = serde_json::from_str(&line).with_context(|| format!("census line {}", idx + 1))?;
        if *dim.get_or_insert(record.dim) != record.dim {
            bail!("census line {} has dimension {} in a file of dimension {}", idx + 1, record.dim, dim.unwrap_or(0));
        }
        let entry = record.to_entry().with_context(|| format!("census line {}", idx + 1))?;
        if let Some(prev) = entries.last() {
            if prev.key >= entry.key {
                bail!("census line {} is out of order or duplicated", idx + 1);
            }
        }
        entries.push(entry);
    }
    let dim = dim.context("empty census file")?;
    Ok(Census { dim, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghw_core::{enumerate_census, EnumerationOptions};

    #[test]
    fn round_trip_is_byte_identical() {
        let census = enumerate_census(4, &EnumerationOptions::default()).unwrap();
        let mut first = Vec::new();
        write_census(&census, &mut first).unwrap();
        let parsed = read_census(first.as_slice()).unwrap();
        assert_eq!(parsed, census);
        let mut second = Vec::new();
        write_census(&parsed, &mut second).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn tampered_lines_are_rejected() {
        let census = enumerate_census(3, &EnumerationOptions::default()).unwrap();
        let mut text = Vec::new();
        write_census(&census, &mut text).unwrap();
        let text = String::from_utf8(text).unwrap().replacen("\"beta1\":1", "\"beta1\":0", 1);
        assert!(read_census(text.as_bytes()).is_err());
    }
}
