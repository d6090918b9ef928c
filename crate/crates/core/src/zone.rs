use std::sync::Arc;

use crate::graph::{TimeInterval, Timestamp};
use crate::snapshot::CoreSnapshot;

/// One distinct temporal k-core together with the subintervals that induce
/// it: every `[ts, te]` with `a <= ts <= tti.ts` and `tti.te <= te <= b` for
/// some LTI `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneRecord {
    pub core: Arc<CoreSnapshot>,
    pub tti: TimeInterval,
    /// Pairwise non-nested, sorted by `te` descending.
    pub ltis: Vec<TimeInterval>,
}

impl ZoneRecord {
    /// Sorts and deduplicates `ltis`.
    pub fn new(core: Arc<CoreSnapshot>, mut ltis: Vec<TimeInterval>) -> Self {
        let tti = core.tti().expect("zone of an empty core");
        ltis.sort_by(|x, y| y.te().cmp(&x.te()).then(y.ts().cmp(&x.ts())));
        ltis.dedup();
        debug_assert!(ltis.iter().all(|l| l.encloses(&tti)));
        ZoneRecord { core, tti, ltis }
    }

    pub fn contains(&self, w: TimeInterval) -> bool {
        w.ts() <= self.tti.ts()
            && w.te() >= self.tti.te()
            && self
                .ltis
                .iter()
                .any(|l| l.ts() <= w.ts() && w.te() <= l.te())
    }

    /// Smallest LTI start: the top row of the zone.
    pub fn min_start(&self) -> Timestamp {
        self.ltis.iter().map(|l| l.ts()).min().unwrap_or(self.tti.ts())
    }

    /// Largest LTI end: the rightmost column of the zone.
    pub fn max_end(&self) -> Timestamp {
        self.ltis.iter().map(|l| l.te()).max().unwrap_or(self.tti.te())
    }

    /// Rightmost in-zone column of row `r`.
    pub fn max_end_for_row(&self, r: Timestamp) -> Option<Timestamp> {
        if r > self.tti.ts() {
            return None;
        }
        self.ltis.iter().filter(|l| l.ts() <= r).map(|l| l.te()).max()
    }

    /// Topmost in-zone row of column `c`.
    pub fn min_start_for_col(&self, c: Timestamp) -> Option<Timestamp> {
        if c < self.tti.te() {
            return None;
        }
        self.ltis.iter().filter(|l| l.te() >= c).map(|l| l.ts()).min()
    }

    /// Every member interval in schedule order (row ascending, column
    /// descending).
    pub fn members(&self) -> Vec<TimeInterval> {
        let mut out = Vec::new();
        for r in self.min_start()..=self.tti.ts() {
            if let Some(b) = self.max_end_for_row(r) {
                for c in (self.tti.te()..=b).rev() {
                    out.push(TimeInterval::raw(r, c));
                }
            }
        }
        out
    }

    pub fn member_count(&self) -> u64 {
        (self.min_start()..=self.tti.ts())
            .filter_map(|r| self.max_end_for_row(r))
            .map(|b| (b - self.tti.te() + 1) as u64)
            .sum()
    }

    /// Sum of `width + height` over the LTI rectangles.
    pub fn rectangle_perimeter_sum(&self) -> u64 {
        self.ltis
            .iter()
            .map(|l| ((l.te() - self.tti.te() + 1) + (self.tti.ts() - l.ts() + 1)) as u64)
            .sum()
    }

    /// `p + q`: rows plus columns spanned by the whole zone.
    pub fn rows_plus_cols(&self) -> u64 {
        ((self.tti.ts() - self.min_start() + 1) + (self.max_end() - self.tti.te() + 1)) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{TemporalEdge, VertexId};

    fn iv(ts: i64, te: i64) -> TimeInterval {
        TimeInterval::new(ts, te).unwrap()
    }

    /// Zone with TTI [4,5] and LTIs [1,6], [2,7], [3,8].
    pub(crate) fn staircase() -> ZoneRecord {
        let e = |t| TemporalEdge::new(VertexId(0), VertexId(1), t);
        let core = Arc::new(CoreSnapshot::from_edges(1, vec![e(4), e(5)]));
        ZoneRecord::new(core, vec![iv(1, 6), iv(3, 8), iv(2, 7)])
    }

    #[test]
    fn ltis_sorted_by_end_descending() {
        let z = staircase();
        assert_eq!(z.ltis, vec![iv(3, 8), iv(2, 7), iv(1, 6)]);
    }

    #[test]
    fn membership_is_the_rectangle_union() {
        let z = staircase();
        assert!(z.contains(iv(2, 6)));
        assert!(!z.contains(iv(1, 8)));
        assert!(z.contains(z.tti));
        assert!(z.ltis.iter().all(|&l| z.contains(l)));
        assert!(!z.contains(iv(5, 6)));
        assert!(!z.contains(iv(4, 4)));
        let members = z.members();
        assert_eq!(members.len() as u64, z.member_count());
        assert_eq!(members.len(), 2 + 3 + 4 + 4);
        assert!(members.iter().all(|&w| z.contains(w)));
    }

    #[test]
    fn row_and_column_extents() {
        let z = staircase();
        assert_eq!(z.max_end_for_row(1), Some(6));
        assert_eq!(z.max_end_for_row(4), Some(8));
        assert_eq!(z.max_end_for_row(5), None);
        assert_eq!(z.min_start_for_col(8), Some(3));
        assert_eq!(z.min_start_for_col(5), Some(1));
        assert_eq!(z.min_start_for_col(4), None);
        assert_eq!(z.rectangle_perimeter_sum(), (2 + 4) + (3 + 3) + (4 + 2));
        assert_eq!(z.rows_plus_cols(), 4 + 4);
    }
}
