//! Journal citation matrices: parsing, merging and persistence.
//!
//! A [`CitationMatrix`] holds one year of aggregated journal-to-journal
//! citation counts. Rows are citing journals, columns are cited journals,
//! and the diagonal holds within-journal self-citations.
//!
//! The interchange format is a plain edge list:
//!
//! ```text
//! citing,cited,count
//! JEvolEcon,ResPolicy,12
//! ResPolicy,JEvolEcon,9
//! JEvolEcon,JEvolEcon,31
//! ```
//!
//! The header line is optional. Duplicate `(citing, cited)` rows are summed,
//! so per-issue extracts can be concatenated before parsing.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EDGE_HEADER: [&str; 3] = ["citing", "cited", "count"];
const REGISTRY_HEADER: [&str; 3] = ["id", "display_name", "source_index"];

/// Short abbreviation token identifying a journal, e.g. `JEvolEcon`.
///
/// Identifiers are nonempty and contain no whitespace, commas or double
/// quotes, so they can be written unquoted into every export format.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct JournalId(String);

impl JournalId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        let reason = if id.is_empty() {
            Some("empty")
        } else if id.chars().any(char::is_whitespace) {
            Some("contains whitespace")
        } else if id.contains(',') || id.contains('"') {
            Some("contains a comma or double quote")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidJournalId { id, reason }),
            None => Ok(JournalId(id)),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JournalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for JournalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JournalId::new(s)
    }
}

impl TryFrom<String> for JournalId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        JournalId::new(s)
    }
}

impl TryFrom<&str> for JournalId {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        JournalId::new(s)
    }
}

impl From<JournalId> for String {
    fn from(id: JournalId) -> String {
        id.0
    }
}

impl AsRef<str> for JournalId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Citation index a journal was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SourceIndex {
    #[default]
    Sci,
    Ssci,
    /// Covered by both indices; only produced by [`merge_indices`].
    Both,
}

impl SourceIndex {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceIndex::Sci => "SCI",
            SourceIndex::Ssci => "SSCI",
            SourceIndex::Both => "BOTH",
        }
    }
}

impl fmt::Display for SourceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "SCI" => Ok(SourceIndex::Sci),
            "SSCI" => Ok(SourceIndex::Ssci),
            "BOTH" => Ok(SourceIndex::Both),
            _ => Err(format!("unknown source index {s:?} (expected SCI, SSCI or BOTH)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Journal {
    pub id: JournalId,
    pub display_name: String,
    pub source_index: SourceIndex,
}

impl Journal {
    /// A journal whose display name is its abbreviation.
    pub fn new(id: JournalId, source_index: SourceIndex) -> Self {
        Journal {
            display_name: id.as_str().to_owned(),
            id,
            source_index,
        }
    }
}

/// Per-journal marginals of a [`CitationMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Totals {
    /// Column sum: citations received, self-citations included.
    pub cited: u64,
    /// Row sum: references given, self-citations included.
    pub citing: u64,
    /// The diagonal cell.
    pub self_cites: u64,
}

/// Sparse journal-to-journal citation counts for one year.
///
/// Journals are kept sorted by id, so internal indices follow lexicographic
/// id order. Only positive counts are stored. Once built, a matrix is
/// immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationMatrix {
    year: i32,
    journals: Vec<Journal>,
    lookup: HashMap<JournalId, usize>,
    /// `rows[i]`: (cited index, count), sorted by cited index.
    rows: Vec<Vec<(usize, u64)>>,
    /// `cols[j]`: (citing index, count), sorted by citing index.
    cols: Vec<Vec<(usize, u64)>>,
}

impl CitationMatrix {
    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn journals(&self) -> &[Journal] {
        &self.journals
    }

    pub fn journal_ids(&self) -> impl Iterator<Item = &JournalId> + '_ {
        self.journals.iter().map(|j| &j.id)
    }

    pub fn journal(&self, id: &JournalId) -> Option<&Journal> {
        self.lookup.get(id).map(|&i| &self.journals[i])
    }

    pub fn contains(&self, id: &JournalId) -> bool {
        self.lookup.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }

    /// Number of stored (nonzero) cells.
    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Sum of all cells.
    pub fn total(&self) -> u64 {
        self.rows.iter().flatten().map(|&(_, c)| c).sum()
    }

    pub fn cell(&self, citing: &JournalId, cited: &JournalId) -> u64 {
        match (self.lookup.get(citing), self.lookup.get(cited)) {
            (Some(&i), Some(&j)) => self.cell_at(i, j),
            _ => 0,
        }
    }

    /// Nonzero cells as `(citing, cited, count)` in row-major id order.
    pub fn cells(&self) -> impl Iterator<Item = (&JournalId, &JournalId, u64)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .map(move |&(j, c)| (&self.journals[i].id, &self.journals[j].id, c))
        })
    }

    pub fn totals(&self, id: &JournalId) -> Result<Totals> {
        let i = self.require(id)?;
        Ok(Totals {
            cited: self.cols[i].iter().map(|&(_, c)| c).sum(),
            citing: self.rows[i].iter().map(|&(_, c)| c).sum(),
            self_cites: self.cell_at(i, i),
        })
    }

    /// Outgoing counts of `id` towards each of `columns`; absent journals read as 0.
    pub fn row_profile(&self, id: &JournalId, columns: &[JournalId]) -> Result<Vec<u64>> {
        let i = self.require(id)?;
        if columns.is_empty() {
            return Err(Error::EmptyColumns);
        }
        Ok(columns
            .iter()
            .map(|c| self.lookup.get(c).map_or(0, |&j| self.cell_at(i, j)))
            .collect())
    }

    /// Incoming counts of `id` from each of `columns`; absent journals read as 0.
    pub fn col_profile(&self, id: &JournalId, columns: &[JournalId]) -> Result<Vec<u64>> {
        let j = self.require(id)?;
        if columns.is_empty() {
            return Err(Error::EmptyColumns);
        }
        Ok(columns
            .iter()
            .map(|c| self.lookup.get(c).map_or(0, |&i| self.cell_at(i, j)))
            .collect())
    }

    /// The submatrix on `members`: their journal records and the cells
    /// whose endpoints are both members. Unknown ids are ignored.
    pub fn restrict(&self, members: &[JournalId]) -> CitationMatrix {
        let mut builder = MatrixBuilder::new(self.year);
        let mut keep = vec![false; self.len()];
        for id in members {
            if let Some(&i) = self.lookup.get(id) {
                keep[i] = true;
                builder.insert_journal(self.journals[i].clone());
            }
        }
        for (i, row) in self.rows.iter().enumerate().filter(|(i, _)| keep[*i]) {
            for &(j, c) in row.iter().filter(|(j, _)| keep[*j]) {
                builder.add_unchecked(&self.journals[i].id, &self.journals[j].id, c);
            }
        }
        builder.build()
    }

    /// Replaces display names and source indices from a registry. Registry
    /// entries for journals absent from the matrix are added as journals
    /// without cells.
    pub fn with_registry(&self, registry: &[Journal]) -> CitationMatrix {
        let mut builder = self.to_builder();
        for journal in registry {
            builder.insert_journal(journal.clone());
        }
        builder.build()
    }

    /// Writes the edge list in row-major id order, header included.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = BufWriter::new(writer);
        writeln!(w, "{}", EDGE_HEADER.join(","))?;
        for (citing, cited, count) in self.cells() {
            writeln!(w, "{citing},{cited},{count}")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("ids and counts are UTF-8")
    }

    pub fn metadata(&self) -> MatrixMetadata {
        MatrixMetadata {
            format: METADATA_FORMAT.to_owned(),
            year: self.year,
            duplicate_rows: CountPolicy::Sum,
            merge_overlap: CountPolicy::Sum,
            journals: self.journals.clone(),
        }
    }

    /// Rebuilds a matrix from a persisted edge list and its sidecar.
    pub fn from_csv_and_metadata<R: Read>(reader: R, metadata: &MatrixMetadata) -> Result<Self> {
        let mut builder = MatrixBuilder::new(metadata.year);
        for journal in &metadata.journals {
            builder.insert_journal(journal.clone());
        }
        read_edges(reader, &mut builder, true)?;
        Ok(builder.build())
    }

    /// Writes `path` (edge list) and its sidecar (see [`sidecar_path`]).
    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_csv(File::create(path)?)?;
        let meta = File::create(sidecar_path(path))?;
        serde_json::to_writer_pretty(BufWriter::new(meta), &self.metadata())?;
        Ok(())
    }

    /// Loads a matrix written by [`CitationMatrix::save`].
    pub fn load(path: &Path) -> Result<Self> {
        let meta = File::open(sidecar_path(path))?;
        let metadata: MatrixMetadata = serde_json::from_reader(BufReader::new(meta))?;
        Self::from_csv_and_metadata(BufReader::new(File::open(path)?), &metadata)
    }

    pub(crate) fn index_of(&self, id: &JournalId) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub(crate) fn id_at(&self, i: usize) -> &JournalId {
        &self.journals[i].id
    }

    pub(crate) fn row_at(&self, i: usize) -> &[(usize, u64)] {
        &self.rows[i]
    }

    pub(crate) fn col_at(&self, j: usize) -> &[(usize, u64)] {
        &self.cols[j]
    }

    pub(crate) fn cell_at(&self, i: usize, j: usize) -> u64 {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |&(k, _)| k).map_or(0, |pos| row[pos].1)
    }

    fn require(&self, id: &JournalId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownJournal(id.clone()))
    }

    fn to_builder(&self) -> MatrixBuilder {
        let mut builder = MatrixBuilder::new(self.year);
        for journal in &self.journals {
            builder.insert_journal(journal.clone());
        }
        for (citing, cited, count) in self.cells() {
            builder.add_unchecked(citing, cited, count);
        }
        builder
    }
}

const METADATA_FORMAT: &str = "citenv-matrix/1";

/// How coinciding counts were combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountPolicy {
    Sum,
}

/// Sidecar document persisted next to a matrix edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixMetadata {
    pub format: String,
    pub year: i32,
    /// Duplicate `(citing, cited)` rows in the edge list.
    pub duplicate_rows: CountPolicy,
    /// Cells of journals covered by both merged indices.
    pub merge_overlap: CountPolicy,
    pub journals: Vec<Journal>,
}

/// `matrix.csv` → `matrix.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

/// Incremental construction of a [`CitationMatrix`].
#[derive(Debug, Clone)]
pub struct MatrixBuilder {
    year: i32,
    default_index: SourceIndex,
    journals: Vec<Journal>,
    lookup: HashMap<JournalId, usize>,
    cells: HashMap<(usize, usize), u64>,
}

impl MatrixBuilder {
    pub fn new(year: i32) -> Self {
        MatrixBuilder {
            year,
            default_index: SourceIndex::default(),
            journals: Vec::new(),
            lookup: HashMap::new(),
            cells: HashMap::new(),
        }
    }

    /// Source index assigned to journals first seen in a citation row.
    pub fn source_index(mut self, index: SourceIndex) -> Self {
        self.default_index = index;
        self
    }

    /// Adds a journal, or replaces the record of an existing one.
    pub fn insert_journal(&mut self, journal: Journal) -> &mut Self {
        match self.lookup.get(&journal.id) {
            Some(&i) => self.journals[i] = journal,
            None => {
                self.lookup.insert(journal.id.clone(), self.journals.len());
                self.journals.push(journal);
            }
        }
        self
    }

    /// Adds `count` citations from `citing` to `cited`, summing with any
    /// earlier count for the same pair. Zero counts register both journals
    /// but store no cell.
    pub fn add_citation(&mut self, citing: &JournalId, cited: &JournalId, count: u64) -> Result<&mut Self> {
        let i = self.intern(citing);
        let j = self.intern(cited);
        if count > 0 {
            let cell = self.cells.entry((i, j)).or_insert(0);
            *cell = cell.checked_add(count).ok_or_else(|| Error::CountOverflow {
                citing: citing.clone(),
                cited: cited.clone(),
            })?;
        }
        Ok(self)
    }

    fn add_unchecked(&mut self, citing: &JournalId, cited: &JournalId, count: u64) {
        self.add_citation(citing, cited, count)
            .expect("counts copied from a valid matrix cannot overflow");
    }

    fn intern(&mut self, id: &JournalId) -> usize {
        if let Some(&i) = self.lookup.get(id) {
            return i;
        }
        let i = self.journals.len();
        self.journals.push(Journal::new(id.clone(), self.default_index));
        self.lookup.insert(id.clone(), i);
        i
    }

    pub fn build(self) -> CitationMatrix {
        let mut order: Vec<usize> = (0..self.journals.len()).collect();
        order.sort_by(|&a, &b| self.journals[a].id.cmp(&self.journals[b].id));
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }

        let n = order.len();
        let mut rows = vec![Vec::new(); n];
        let mut cols = vec![Vec::new(); n];
        for (&(i, j), &c) in &self.cells {
            rows[remap[i]].push((remap[j], c));
            cols[remap[j]].push((remap[i], c));
        }
        for list in rows.iter_mut().chain(cols.iter_mut()) {
            list.sort_unstable_by_key(|&(k, _)| k);
        }

        let mut slots: Vec<Option<Journal>> = self.journals.into_iter().map(Some).collect();
        let journals: Vec<Journal> = order
            .iter()
            .map(|&old| slots[old].take().expect("each journal is moved once"))
            .collect();
        let lookup = journals.iter().enumerate().map(|(i, j)| (j.id.clone(), i)).collect();

        CitationMatrix {
            year: self.year,
            journals,
            lookup,
            rows,
            cols,
        }
    }
}

/// Parses an edge list (`citing,cited,count`) into a matrix for `year`.
///
/// Journals first seen here are tagged with the default source index
/// ([`SourceIndex::Sci`]); use [`parse_citation_csv_from`] to pick another.
///
/// ```
/// use citenv::ingest::{parse_citation_csv, JournalId};
///
/// let m = parse_citation_csv("A,B,5\nB,A,2\nA,A,7".as_bytes(), 2005).unwrap();
/// let a = JournalId::new("A").unwrap();
/// let b = JournalId::new("B").unwrap();
/// assert_eq!(m.cell(&a, &b), 5);
/// assert_eq!(m.totals(&a).unwrap().cited, 9);
/// ```
pub fn parse_citation_csv<R: Read>(reader: R, year: i32) -> Result<CitationMatrix> {
    parse_citation_csv_from(reader, year, SourceIndex::default())
}

pub fn parse_citation_csv_from<R: Read>(reader: R, year: i32, index: SourceIndex) -> Result<CitationMatrix> {
    let mut builder = MatrixBuilder::new(year).source_index(index);
    read_edges(reader, &mut builder, false)?;
    Ok(builder.build())
}

fn read_edges<R: Read>(reader: R, builder: &mut MatrixBuilder, allow_empty: bool) -> Result<()> {
    let mut rows = 0usize;
    for (n, record) in csv_records(reader).enumerate() {
        let (line, fields) = record?;
        if n == 0 && fields == EDGE_HEADER {
            continue;
        }
        if fields.len() != 3 {
            return Err(parse_error(line, format!("expected 3 fields, found {}", fields.len())));
        }
        let citing = JournalId::new(fields[0].as_str()).map_err(|e| parse_error(line, e.to_string()))?;
        let cited = JournalId::new(fields[1].as_str()).map_err(|e| parse_error(line, e.to_string()))?;
        let count = parse_count(&fields[2]).map_err(|msg| parse_error(line, msg))?;
        builder
            .add_citation(&citing, &cited, count)
            .map_err(|e| parse_error(line, e.to_string()))?;
        rows += 1;
    }
    if rows == 0 && !allow_empty {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

fn parse_count(field: &str) -> std::result::Result<u64, String> {
    match field.parse::<u64>() {
        Ok(c) => Ok(c),
        Err(_) if field.starts_with('-') && field[1..].parse::<u64>().is_ok() => Err(format!("negative count {field}")),
        Err(_) => Err(format!("count {field:?} is not a nonnegative integer")),
    }
}

/// Parses a journal registry (`id,display_name,source_index`).
pub fn parse_registry<R: Read>(reader: R) -> Result<Vec<Journal>> {
    let mut journals = Vec::new();
    for (n, record) in csv_records(reader).enumerate() {
        let (line, fields) = record?;
        if n == 0 && fields == REGISTRY_HEADER {
            continue;
        }
        if fields.len() != 3 {
            return Err(parse_error(line, format!("expected 3 fields, found {}", fields.len())));
        }
        let id = JournalId::new(fields[0].as_str()).map_err(|e| parse_error(line, e.to_string()))?;
        if fields[1].is_empty() {
            return Err(parse_error(line, "empty display name".into()));
        }
        let source_index = fields[2].parse().map_err(|msg| parse_error(line, msg))?;
        journals.push(Journal {
            id,
            display_name: fields[1].clone(),
            source_index,
        });
    }
    Ok(journals)
}

fn csv_records<R: Read>(reader: R) -> impl Iterator<Item = Result<(u64, Vec<String>)>> {
    let reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    reader.into_records().map(|record| {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        Ok((line, record.iter().map(str::to_owned).collect()))
    })
}

fn parse_error(line: u64, message: String) -> Error {
    Error::Parse { line, message }
}

/// Merges two same-year matrices drawn from different indices.
///
/// The journal set is the union; journals present in both come out tagged
/// [`SourceIndex::Both`] and keep `a`'s display name. Counts for identical
/// `(citing, cited)` pairs are summed.
pub fn merge_indices(a: &CitationMatrix, b: &CitationMatrix) -> Result<CitationMatrix> {
    if a.year != b.year {
        return Err(Error::YearMismatch {
            left: a.year,
            right: b.year,
        });
    }
    let mut builder = a.to_builder();
    for journal in &b.journals {
        match a.journal(&journal.id) {
            Some(existing) => {
                builder.insert_journal(Journal {
                    source_index: SourceIndex::Both,
                    ..existing.clone()
                });
            }
            None => {
                builder.insert_journal(journal.clone());
            }
        }
    }
    for (citing, cited, count) in b.cells() {
        builder.add_citation(citing, cited, count)?;
    }
    Ok(builder.build())
}
