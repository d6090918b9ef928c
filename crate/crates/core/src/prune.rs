use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{TimeInterval, Timestamp};

/// One entry of the schedule table: row `ts`, column `te`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub ts: Timestamp,
    pub te: Timestamp,
}

impl Cell {
    pub fn new(ts: Timestamp, te: Timestamp) -> Self {
        debug_assert!(ts <= te);
        Cell { ts, te }
    }

    pub fn interval(self) -> TimeInterval {
        TimeInterval::raw(self.ts, self.te)
    }
}

impl From<TimeInterval> for Cell {
    fn from(w: TimeInterval) -> Self {
        Cell::new(w.ts(), w.te())
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.ts, self.te)
    }
}

/// Covered cells of a triangular schedule table over `[Ts, Te]`.
///
/// Each row keeps a set of disjoint column ranges (start → end, inclusive).
/// Touching ranges are merged on insert, so the set for a row is always as
/// small as possible and "next open column at or below c" needs a single
/// predecessor lookup.
///
/// Visited cells are covered as well, but counted apart from pruned ones.
#[derive(Clone, Debug)]
pub struct PruneTable {
    window: TimeInterval,
    rows: Vec<BTreeMap<Timestamp, Timestamp>>,
    covered: Vec<u64>,
    pruned: u64,
    visited: u64,
}

impl PruneTable {
    pub fn new(window: TimeInterval) -> Self {
        let n = window.duration() as usize;
        PruneTable {
            window,
            rows: vec![BTreeMap::new(); n],
            covered: vec![0; n],
            pruned: 0,
            visited: 0,
        }
    }

    pub fn window(&self) -> TimeInterval {
        self.window
    }

    pub fn total_cells(&self) -> u64 {
        self.window.subinterval_count()
    }

    pub fn pruned(&self) -> u64 {
        self.pruned
    }

    pub fn visited(&self) -> u64 {
        self.visited
    }

    fn row_index(&self, r: Timestamp) -> Option<usize> {
        if self.window.contains(r) {
            Some((r - self.window.ts()) as usize)
        } else {
            None
        }
    }

    fn row_len(&self, r: Timestamp) -> u64 {
        (self.window.te() - r + 1) as u64
    }

    /// Covers `[r, lo..=hi]` (clamped to the table) and returns how many
    /// cells were not covered before.
    fn cover(&mut self, r: Timestamp, lo: Timestamp, hi: Timestamp) -> u64 {
        let Some(i) = self.row_index(r) else { return 0 };
        let lo = lo.max(r);
        let hi = hi.min(self.window.te());
        if lo > hi {
            return 0;
        }
        let row = &mut self.rows[i];
        let mut start = lo;
        let mut end = hi;
        let mut already = 0u64;

        if let Some((&s, &e)) = row.range(..=lo).next_back() {
            if e + 1 >= lo {
                start = s;
                already += (e.min(hi) - lo + 1).max(0) as u64;
                end = end.max(e);
                row.remove(&s);
            }
        }
        let absorbed: Vec<(Timestamp, Timestamp)> = row
            .range(lo..=hi.saturating_add(1))
            .map(|(&s, &e)| (s, e))
            .collect();
        for (s, e) in absorbed {
            row.remove(&s);
            already += (e.min(hi) - s.max(lo) + 1).max(0) as u64;
            end = end.max(e);
        }
        row.insert(start, end);
        let fresh = (hi - lo + 1) as u64 - already;
        self.covered[i] += fresh;
        fresh
    }

    /// Marks `[r, lo..=hi]` pruned; returns the number of newly pruned cells.
    pub fn prune(&mut self, r: Timestamp, lo: Timestamp, hi: Timestamp) -> u64 {
        let fresh = self.cover(r, lo, hi);
        self.pruned += fresh;
        fresh
    }

    /// Records a visit so the cell never counts as pruned later.
    pub fn visit(&mut self, cell: Cell) {
        let fresh = self.cover(cell.ts, cell.te, cell.te);
        debug_assert_eq!(fresh, 1, "cell {cell:?} visited twice or after pruning");
        self.visited += fresh;
    }

    pub fn is_covered(&self, cell: Cell) -> bool {
        let Some(i) = self.row_index(cell.ts) else { return false };
        self.rows[i]
            .range(..=cell.te)
            .next_back()
            .is_some_and(|(_, &e)| e >= cell.te)
    }

    /// Largest uncovered column `c` of row `r` with `r <= c <= at_most`.
    pub fn next_open(&self, r: Timestamp, at_most: Timestamp) -> Option<Timestamp> {
        let i = self.row_index(r)?;
        let c = at_most.min(self.window.te());
        if c < r {
            return None;
        }
        let c = match self.rows[i].range(..=c).next_back() {
            Some((&s, &e)) if e >= c => s - 1,
            _ => c,
        };
        (c >= r).then_some(c)
    }

    pub fn row_exhausted(&self, r: Timestamp) -> bool {
        self.row_index(r)
            .map_or(true, |i| self.covered[i] == self.row_len(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(ts: i64, te: i64) -> PruneTable {
        PruneTable::new(TimeInterval::new(ts, te).unwrap())
    }

    #[test]
    fn merges_and_counts() {
        let mut p = table(1, 10);
        assert_eq!(p.prune(1, 3, 4), 2);
        assert_eq!(p.prune(1, 6, 7), 2);
        assert_eq!(p.prune(1, 5, 5), 1);
        assert_eq!(p.rows[0].len(), 1);
        assert_eq!(p.prune(1, 2, 8), 2);
        assert_eq!(p.prune(1, 1, 10), 3);
        assert_eq!(p.pruned(), 10);
        assert_eq!(p.rows[0].len(), 1);
    }

    #[test]
    fn clamps_to_triangle() {
        let mut p = table(1, 5);
        assert_eq!(p.prune(3, 1, 9), 3);
        assert_eq!(p.prune(9, 1, 9), 0);
        assert!(p.row_exhausted(3));
        assert!(!p.row_exhausted(2));
    }

    #[test]
    fn next_open_jumps_over_pruned_runs() {
        let mut p = table(1, 10);
        p.prune(2, 6, 9);
        assert_eq!(p.next_open(2, 10), Some(10));
        assert_eq!(p.next_open(2, 9), Some(5));
        p.prune(2, 2, 5);
        assert_eq!(p.next_open(2, 9), None);
        assert_eq!(p.next_open(4, 3), None);
    }

    #[test]
    fn visits_are_not_pruned() {
        let mut p = table(1, 5);
        p.visit(Cell::new(1, 5));
        assert_eq!(p.prune(1, 1, 5), 4);
        assert_eq!(p.visited(), 1);
        assert!(p.is_covered(Cell::new(1, 3)));
        assert!(!p.is_covered(Cell::new(2, 3)));
        assert_eq!(p.total_cells(), 15);
    }
}
