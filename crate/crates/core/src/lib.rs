//! Temporal k-core and temporal (k,X)-core queries over timestamped
//! multigraphs.
//!
//! ```
//! use txc_core::{run_otcd, TcqOptions, TemporalGraph, TimeInterval};
//!
//! let g = TemporalGraph::from_labeled([
//!     ("a", "b", 1),
//!     ("b", "c", 2),
//!     ("a", "c", 3),
//!     ("c", "d", 4),
//!     ("a", "b", 5),
//! ])
//! .unwrap();
//! let window = TimeInterval::new(1, 5).unwrap();
//! let cores = run_otcd(&g, 2, window, &TcqOptions::default()).unwrap();
//! assert_eq!(cores.len(), 3);
//! ```

pub mod error;
pub mod graph;
pub mod measures;
pub mod oracle;
pub mod prune;
pub mod snapshot;
pub mod tcq;
pub mod tel;
pub mod txcq;
pub mod zone;

pub use error::{GraphError, MeasureError, QueryError, TelError};
pub use graph::{
    generate_synthetic, parse_edge_list, read_edge_list_file, write_edge_list, Normalization,
    ParseOptions, ParsedGraph, SyntheticModel, SyntheticSpec, TemporalEdge, TemporalGraph,
    TimeInterval, Timestamp, VertexId, VertexLabels,
};
pub use measures::{
    Better, Direction, EvalContext, MeasureDescriptor, MeasureRegistry, MeasureValue, Sensitivity,
};
pub use prune::{Cell, PruneTable};
pub use snapshot::CoreSnapshot;
pub use tcq::{
    run_otcd, run_otcd_star, run_tcd, CoreCatalog, RuleCounts, TcqOptions, TcqStats, ZoneScan,
};
pub use tel::Tel;
pub use txcq::{
    run_tcd_star, run_txcq, Answer, QueryMode, QueryResult, QuerySpec, QueryStats, Qualifying,
    ResultEntry, WalkStats,
};
pub use zone::ZoneRecord;
