//! Journal-level indicators: impact factor, quasi impact factor, h-index and
//! self-citation rate.
//!
//! Impact factors are exact rationals; round them only for display.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{CitationMatrix, JournalId};

/// Exact quotient of citation counts.
pub type Quotient = Ratio<u64>;

/// Citations received in year `t` by items published in `t−1` and `t−2`,
/// divided by the citable items published in those two years.
///
/// ```
/// use citenv::metrics::impact_factor;
/// use num_traits::ToPrimitive;
///
/// let jif = impact_factor(63, 63, 50, 50).unwrap();
/// assert_eq!(jif.to_f64(), Some(1.26));
/// ```
pub fn impact_factor(cites_to_t1: u64, cites_to_t2: u64, citable_t1: u64, citable_t2: u64) -> Result<Quotient> {
    let items = citable_t1 + citable_t2;
    if items == 0 {
        return Err(Error::NoCitableItems);
    }
    Ok(Ratio::new(cites_to_t1 + cites_to_t2, items))
}

/// [`impact_factor`] with within-journal self-citations removed from the
/// numerator.
pub fn quasi_impact_factor(
    cites_to_t1: u64,
    cites_to_t2: u64,
    citable_t1: u64,
    citable_t2: u64,
    self_cites_to_t1: u64,
    self_cites_to_t2: u64,
) -> Result<Quotient> {
    for (self_cites, cites) in [(self_cites_to_t1, cites_to_t1), (self_cites_to_t2, cites_to_t2)] {
        if self_cites > cites {
            return Err(Error::SelfCitesExceedCites { self_cites, cites });
        }
    }
    impact_factor(
        cites_to_t1 - self_cites_to_t1,
        cites_to_t2 - self_cites_to_t2,
        citable_t1,
        citable_t2,
    )
}

/// Largest `h` such that at least `h` items have at least `h` citations.
pub fn h_index(citation_counts: &[u64]) -> usize {
    let mut sorted = citation_counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .enumerate()
        .take_while(|&(rank, &c)| c > rank as u64)
        .count()
}

/// Share of a journal's received citations that come from itself.
pub fn self_citation_rate(m: &CitationMatrix, journal: &JournalId) -> Result<f64> {
    let totals = m.totals(journal)?;
    if totals.cited == 0 {
        return Err(Error::ZeroCitedTotal(journal.clone()));
    }
    Ok(totals.self_cites as f64 / totals.cited as f64)
}

/// Counts recorded for the items a journal published in one year.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationYear {
    /// Articles, proceedings papers, reviews and letters, but not
    /// editorials and obituaries, as classified by the data supplier.
    pub citable_items: u64,
    /// Citing year → citations received in that year.
    pub cites_received: BTreeMap<i32, u64>,
    /// Citing year → citations received from the journal itself.
    pub self_cites_received: BTreeMap<i32, u64>,
}

/// A journal's citation history keyed by publication year.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearlyCounts {
    pub journal: JournalId,
    pub years: BTreeMap<i32, PublicationYear>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpactRecord {
    pub journal: JournalId,
    pub year: i32,
    pub if_value: Quotient,
    pub quasi_if_value: Quotient,
}

impl ImpactRecord {
    /// Impact factor and quasi impact factor of `counts` for census year `year`.
    pub fn compute(counts: &YearlyCounts, year: i32) -> Result<ImpactRecord> {
        let window = |published: i32| {
            counts.years.get(&published).ok_or_else(|| Error::MissingYear {
                journal: counts.journal.clone(),
                year: published,
            })
        };
        let (t1, t2) = (window(year - 1)?, window(year - 2)?);
        let cites = |p: &PublicationYear| p.cites_received.get(&year).copied().unwrap_or(0);
        let self_cites = |p: &PublicationYear| p.self_cites_received.get(&year).copied().unwrap_or(0);
        Ok(ImpactRecord {
            journal: counts.journal.clone(),
            year,
            if_value: impact_factor(cites(t1), cites(t2), t1.citable_items, t2.citable_items)?,
            quasi_if_value: quasi_impact_factor(
                cites(t1),
                cites(t2),
                t1.citable_items,
                t2.citable_items,
                self_cites(t1),
                self_cites(t2),
            )?,
        })
    }

    pub fn if_f64(&self) -> f64 {
        self.if_value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn quasi_if_f64(&self) -> f64 {
        self.quasi_if_value.to_f64().unwrap_or(f64::NAN)
    }
}
