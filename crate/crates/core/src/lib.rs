//! Citation environments of scholarly journals.
//!
//! The crate follows one analysis from raw journal-to-journal citation
//! counts to publication-ready output:
//!
//! 1. [`ingest`]: parse, merge and persist a [`CitationMatrix`].
//! 2. [`environment`]: pick the journals around a seed journal that
//!    contribute more than a threshold share of its citations.
//! 3. [`similarity`]: compare the members' citation profiles with Salton's
//!    cosine and keep pairs above a visualization threshold.
//! 4. [`centrality`]: degree, closeness, betweenness and eigenvector
//!    centrality on the similarity graph and the full citation graph.
//! 5. [`metrics`]: impact factor, quasi impact factor, h-index and
//!    self-citation rate.
//! 6. [`export`]: Pajek, DOT, JSON and aligned text tables.
//!
//! [`pipeline::analyze`] runs steps 2–4 in one call:
//!
//! ```
//! use citenv::ingest::{parse_citation_csv, JournalId};
//! use citenv::pipeline::{analyze, PipelineOptions};
//!
//! let csv = "citing,cited,count\n\
//!            B,A,3\nC,A,3\nA,B,3\nC,B,3\nA,C,3\nB,C,3\nA,A,2\n";
//! let matrix = parse_citation_csv(csv.as_bytes(), 2005).unwrap();
//! let seed = JournalId::new("A").unwrap();
//! let analysis = analyze(&matrix, &PipelineOptions::new(seed)).unwrap();
//! assert_eq!(analysis.graph.edges().len(), 3);
//! ```
//!
//! [`CitationMatrix`]: ingest::CitationMatrix

pub mod centrality;
pub mod environment;
mod error;
pub mod export;
pub mod ingest;
pub mod metrics;
pub mod pipeline;
pub mod similarity;

pub use error::{Error, Result};
