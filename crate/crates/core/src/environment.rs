//! Local citation environments around a seed journal.
//!
//! A journal belongs to the seed's environment when its share of the seed's
//! total citations, in one direction, is strictly above a threshold (1% by
//! default). Shares are taken against the seed's totals in the full matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{CitationMatrix, JournalId};

/// Default contribution threshold: more than 1% of the seed's citations.
pub const DEFAULT_MIN_CONTRIBUTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Journals the seed cites (the seed's row).
    Citing,
    /// Journals citing the seed (the seed's column).
    Cited,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Citing => "citing",
            Direction::Cited => "cited",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "citing" => Ok(Direction::Citing),
            "cited" => Ok(Direction::Cited),
            _ => Err(format!("unknown direction {s:?} (expected citing or cited)")),
        }
    }
}

/// Gross and self-citation-free totals of one environment member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvironmentTotals {
    pub gross: u64,
    pub net_of_self: u64,
}

/// The journals around a seed in one direction, with the submatrix they span.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedEnvironment {
    seed: JournalId,
    direction: Direction,
    threshold: f64,
    seed_total: u64,
    members: Vec<JournalId>,
    links: Vec<u64>,
    submatrix: CitationMatrix,
}

impl SeedEnvironment {
    pub fn seed(&self) -> &JournalId {
        &self.seed
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Seed first, then by descending contribution, ties by id.
    pub fn members(&self) -> &[JournalId] {
        &self.members
    }

    pub fn is_member(&self, id: &JournalId) -> bool {
        self.members.contains(id)
    }

    pub fn submatrix(&self) -> &CitationMatrix {
        &self.submatrix
    }

    /// The seed's full-matrix total in the environment direction.
    pub fn seed_total(&self) -> u64 {
        self.seed_total
    }

    /// Direct citations between `id` and the seed, in the environment
    /// direction, counted in the full matrix. For the seed this is its
    /// self-citation count.
    pub fn link(&self, id: &JournalId) -> Option<u64> {
        self.members.iter().position(|m| m == id).map(|k| self.links[k])
    }

    /// Share of the seed's total contributed by `id`.
    pub fn contribution(&self, id: &JournalId) -> Option<f64> {
        self.link(id).map(|c| c as f64 / self.seed_total as f64)
    }

    /// Gross total of `id` within the submatrix (diagonal included), and
    /// the same total without the diagonal cell.
    pub fn totals(&self, id: &JournalId) -> Result<EnvironmentTotals> {
        if !self.is_member(id) {
            return Err(Error::NotAMember(id.clone()));
        }
        let totals = self.submatrix.totals(id)?;
        let gross = match self.direction {
            Direction::Cited => totals.cited,
            Direction::Citing => totals.citing,
        };
        Ok(EnvironmentTotals {
            gross,
            net_of_self: gross - totals.self_cites,
        })
    }
}

/// Extracts the environment of `seed` in direction `direction`.
///
/// A journal `j` other than the seed qualifies iff its direct link to the
/// seed divided by the seed's total in that direction is strictly greater
/// than `threshold`.
///
/// ```
/// use citenv::environment::{extract_environment, Direction};
/// use citenv::ingest::{parse_citation_csv, JournalId};
///
/// let m = parse_citation_csv("A,S,50\nB,S,50\nC,S,1\nS,S,98".as_bytes(), 2005).unwrap();
/// let s = JournalId::new("S").unwrap();
/// let env = extract_environment(&m, &s, Direction::Cited, 0.01).unwrap();
/// let ids: Vec<&str> = env.members().iter().map(|j| j.as_str()).collect();
/// // C contributes 1/199 of the seed's citations and stays out.
/// assert_eq!(ids, ["S", "A", "B"]);
/// ```
pub fn extract_environment(
    matrix: &CitationMatrix,
    seed: &JournalId,
    direction: Direction,
    threshold: f64,
) -> Result<SeedEnvironment> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let s = matrix
        .index_of(seed)
        .ok_or_else(|| Error::UnknownJournal(seed.clone()))?;
    let links = match direction {
        Direction::Cited => matrix.col_at(s),
        Direction::Citing => matrix.row_at(s),
    };
    let seed_total: u64 = links.iter().map(|&(_, c)| c).sum();
    if seed_total == 0 {
        return Err(Error::IsolatedSeed {
            seed: seed.clone(),
            direction,
        });
    }

    let denominator = seed_total as f64;
    let mut qualified: Vec<(usize, u64)> = links
        .iter()
        .copied()
        .filter(|&(j, c)| j != s && c as f64 / denominator > threshold)
        .collect();
    // indices follow id order, so the secondary key is the id tie-break
    qualified.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let self_link = links.iter().find(|&&(j, _)| j == s).map_or(0, |&(_, c)| c);
    let mut members = vec![seed.clone()];
    let mut member_links = vec![self_link];
    for (j, c) in qualified {
        members.push(matrix.id_at(j).clone());
        member_links.push(c);
    }
    let submatrix = matrix.restrict(&members);

    Ok(SeedEnvironment {
        seed: seed.clone(),
        direction,
        threshold,
        seed_total,
        members,
        links: member_links,
        submatrix,
    })
}
