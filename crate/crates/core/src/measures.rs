//! Core measurements `X(·)`.
//!
//! A measure is classified by how its value moves while the query interval
//! ranges over one time zone (all intervals inducing the same core):
//!
//! * insensitive: constant over the zone;
//! * monotonic: never worsens as the interval shrinks (or, mirrored, as it
//!   expands);
//! * nonmonotonic: anything else.
//!
//! Values are exact rationals so ties and thresholds compare exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use rand::Rng;

use crate::error::MeasureError;
use crate::graph::{TemporalGraph, TimeInterval};
use crate::snapshot::CoreSnapshot;
use crate::zone::ZoneRecord;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(pub Ratio<i64>);

impl MeasureValue {
    pub fn int(n: i64) -> Self {
        MeasureValue(Ratio::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        MeasureValue(Ratio::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MeasureValue {
    type Err = MeasureError;

    /// Accepts integers, `a/b` and plain decimals (`0.7` is read as `7/10`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MeasureError::BadValue(s.to_owned());
        let t = s.trim();
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let whole: i64 = match int.trim_start_matches(['-', '+']) {
                "" => 0,
                digits => digits.parse().map_err(|_| bad())?,
            };
            let den = 10i64.pow(frac.len() as u32);
            let num = whole
                .checked_mul(den)
                .and_then(|w| w.checked_add(frac.parse::<i64>().ok()?))
                .ok_or_else(bad)?;
            let num = if negative { -num } else { num };
            return Ok(MeasureValue(Ratio::new(num, den)));
        }
        let r: Ratio<i64> = t.parse().map_err(|_| bad())?;
        Ok(MeasureValue(r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Better {
    Higher,
    Lower,
}

impl FromStr for Better {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "higher" | "max" | "maximize" => Ok(Better::Higher),
            "lower" | "min" | "minimize" => Ok(Better::Lower),
            _ => Err(MeasureError::BadValue(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The value never gets worse when the interval shrinks.
    ImprovesOnShrink,
    /// The value never gets worse when the interval expands.
    ImprovesOnExpand,
}

impl Direction {
    fn flip(self) -> Self {
        match self {
            Direction::ImprovesOnShrink => Direction::ImprovesOnExpand,
            Direction::ImprovesOnExpand => Direction::ImprovesOnShrink,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sensitivity {
    Insensitive,
    Monotonic(Direction),
    Nonmonotonic,
}

impl Sensitivity {
    pub fn name(self) -> &'static str {
        match self {
            Sensitivity::Insensitive => "time-insensitive",
            Sensitivity::Monotonic(_) => "time-monotonic",
            Sensitivity::Nonmonotonic => "time-nonmonotonic",
        }
    }
}

/// Read-only data a measure may consult besides the core itself.
#[derive(Clone, Copy)]
pub struct EvalContext<'a> {
    pub graph: &'a TemporalGraph,
    /// Every zone of the query window.
    pub zones: Option<&'a [ZoneRecord]>,
    /// The zone the evaluated interval belongs to.
    pub zone: Option<&'a ZoneRecord>,
}

impl<'a> EvalContext<'a> {
    pub fn new(graph: &'a TemporalGraph) -> Self {
        EvalContext {
            graph,
            zones: None,
            zone: None,
        }
    }

    pub fn with_zones(self, zones: &'a [ZoneRecord]) -> Self {
        EvalContext {
            zones: Some(zones),
            ..self
        }
    }

    pub fn in_zone(self, zone: &'a ZoneRecord) -> Self {
        EvalContext {
            zone: Some(zone),
            ..self
        }
    }
}

pub type Evaluator = Arc<
    dyn Fn(&CoreSnapshot, TimeInterval, &EvalContext<'_>) -> Result<MeasureValue, MeasureError>
        + Send
        + Sync,
>;

#[derive(Clone)]
pub struct MeasureDescriptor {
    id: String,
    sensitivity: Sensitivity,
    better: Better,
    params: BTreeMap<String, MeasureValue>,
    evaluator: Evaluator,
}

impl fmt::Debug for MeasureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureDescriptor")
            .field("id", &self.id)
            .field("sensitivity", &self.sensitivity)
            .field("better", &self.better)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl MeasureDescriptor {
    pub fn new<F>(id: impl Into<String>, sensitivity: Sensitivity, better: Better, f: F) -> Self
    where
        F: Fn(&CoreSnapshot, TimeInterval, &EvalContext<'_>) -> Result<MeasureValue, MeasureError>
            + Send
            + Sync
            + 'static,
    {
        MeasureDescriptor {
            id: id.into(),
            sensitivity,
            better,
            params: BTreeMap::new(),
            evaluator: Arc::new(f),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn sensitivity(&self) -> Sensitivity {
        self.sensitivity
    }

    pub fn better(&self) -> Better {
        self.better
    }

    pub fn params(&self) -> &BTreeMap<String, MeasureValue> {
        &self.params
    }

    pub fn param(&self, key: &str) -> Option<MeasureValue> {
        self.params.get(key).copied()
    }

    pub fn with_param(mut self, key: impl Into<String>, value: MeasureValue) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    /// Changes which end of the scale is preferred. A monotonic measure's
    /// direction is relative to preference, so it flips along with it.
    pub fn with_better(mut self, better: Better) -> Self {
        if better != self.better {
            if let Sensitivity::Monotonic(d) = self.sensitivity {
                self.sensitivity = Sensitivity::Monotonic(d.flip());
            }
            self.better = better;
        }
        self
    }

    pub fn eval(
        &self,
        core: &CoreSnapshot,
        w: TimeInterval,
        ctx: &EvalContext<'_>,
    ) -> Result<MeasureValue, MeasureError> {
        (self.evaluator)(core, w, ctx)
    }

    /// `Greater` when `a` is strictly better than `b`.
    pub fn compare(&self, a: MeasureValue, b: MeasureValue) -> Ordering {
        match self.better {
            Better::Higher => a.cmp(&b),
            Better::Lower => b.cmp(&a),
        }
    }

    /// `value ≽ sigma`.
    pub fn satisfies(&self, value: MeasureValue, sigma: MeasureValue) -> bool {
        self.compare(value, sigma) != Ordering::Less
    }
}

fn nonempty(core: &CoreSnapshot, id: &'static str) -> Result<(), MeasureError> {
    if core.is_empty() {
        Err(MeasureError::EmptyCore(id))
    } else {
        Ok(())
    }
}

fn duration(w: TimeInterval) -> i64 {
    w.duration()
}

pub fn size() -> MeasureDescriptor {
    MeasureDescriptor::new("size", Sensitivity::Insensitive, Better::Higher, |core, _, _| {
        Ok(MeasureValue::int(core.vertex_count() as i64))
    })
}

pub fn frequency() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "frequency",
        Sensitivity::Insensitive,
        Better::Higher,
        |core, _, _| {
            nonempty(core, "frequency")?;
            let min = core.min_pair_multiplicity().unwrap_or(0);
            Ok(MeasureValue::int(min as i64))
        },
    )
}

pub fn time_span() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "time_span",
        Sensitivity::Insensitive,
        Better::Higher,
        |core, _, _| {
            nonempty(core, "time_span")?;
            Ok(MeasureValue::int(core.tti().map_or(0, |t| t.span())))
        },
    )
}

pub fn persistence() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "persistence",
        Sensitivity::Insensitive,
        Better::Higher,
        |core, _, ctx| {
            nonempty(core, "persistence")?;
            let zone = ctx.zone.ok_or(MeasureError::MissingContext {
                measure: "persistence",
                what: "the zone of the core",
            })?;
            let best = zone
                .ltis
                .iter()
                .map(|l| l.span() - zone.tti.span())
                .max()
                .unwrap_or(0);
            Ok(MeasureValue::int(best))
        },
    )
}

/// Largest number of zones sharing `vertices` whose TTIs can be chained with
/// a gap of at least `p` between consecutive ones.
pub fn periodic_chain(zones: &[ZoneRecord], vertices: &[crate::graph::VertexId], p: i64) -> i64 {
    let mut ttis: Vec<TimeInterval> = zones
        .iter()
        .filter(|z| z.core.vertices() == vertices)
        .map(|z| z.tti)
        .collect();
    ttis.sort_by_key(|t| (t.te(), t.ts()));
    let mut count = 0;
    let mut last_end: Option<i64> = None;
    for t in ttis {
        if last_end.map_or(true, |e| t.ts() - e >= p) {
            count += 1;
            last_end = Some(t.te());
        }
    }
    count
}

/// Gap parameter `p` defaults to 1 (TTIs must not share a timestamp).
pub fn periodicity() -> MeasureDescriptor {
    periodicity_with_gap(MeasureValue::int(1))
}

pub fn periodicity_with_gap(p: MeasureValue) -> MeasureDescriptor {
    MeasureDescriptor::new(
        "periodicity",
        Sensitivity::Insensitive,
        Better::Higher,
        move |core, _, ctx| {
            nonempty(core, "periodicity")?;
            let zones = ctx.zones.ok_or(MeasureError::MissingContext {
                measure: "periodicity",
                what: "the zone list",
            })?;
            if !p.0.is_integer() || *p.0.numer() < 0 {
                return Err(MeasureError::Undefined {
                    measure: "periodicity".into(),
                    message: format!("gap must be a non-negative integer, got {p}"),
                });
            }
            Ok(MeasureValue::int(periodic_chain(
                zones,
                core.vertices(),
                *p.0.numer(),
            )))
        },
    )
    .with_param("p", p)
}

pub fn growth_rate() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "growth_rate",
        Sensitivity::Monotonic(Direction::ImprovesOnShrink),
        Better::Higher,
        |core, w, _| {
            nonempty(core, "growth_rate")?;
            Ok(MeasureValue::ratio(core.vertex_count() as i64, duration(w)))
        },
    )
}

pub fn burstiness() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "burstiness",
        Sensitivity::Monotonic(Direction::ImprovesOnShrink),
        Better::Higher,
        |core, w, _| {
            nonempty(core, "burstiness")?;
            let sum: i64 = core.core_degrees().map(|(_, d)| d as i64).sum();
            Ok(MeasureValue::ratio(sum, duration(w)))
        },
    )
}

pub fn engagement() -> MeasureDescriptor {
    MeasureDescriptor::new(
        "engagement",
        Sensitivity::Monotonic(Direction::ImprovesOnShrink),
        Better::Higher,
        |core, w, ctx| {
            nonempty(core, "engagement")?;
            let all = ctx.graph.projected_degrees(core.vertices(), w);
            let mut best: Option<Ratio<i64>> = None;
            for ((_, d), n) in core.core_degrees().zip(all) {
                let r = Ratio::new(d as i64, (n as i64).max(1));
                best = Some(best.map_or(r, |b| b.min(r)));
            }
            Ok(MeasureValue(best.expect("nonempty core")))
        },
    )
}

pub const BUILTIN_IDS: [&str; 8] = [
    "size",
    "frequency",
    "time_span",
    "persistence",
    "periodicity",
    "growth_rate",
    "burstiness",
    "engagement",
];

/// Measures available by id.
#[derive(Clone, Debug)]
pub struct MeasureRegistry {
    measures: BTreeMap<String, MeasureDescriptor>,
}

impl Default for MeasureRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MeasureRegistry {
    pub fn empty() -> Self {
        MeasureRegistry {
            measures: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        for m in [
            size(),
            frequency(),
            time_span(),
            persistence(),
            periodicity(),
            growth_rate(),
            burstiness(),
            engagement(),
        ] {
            r.measures.insert(m.id.clone(), m);
        }
        r
    }

    pub fn register_udf(&mut self, m: MeasureDescriptor) -> Result<(), MeasureError> {
        if self.measures.contains_key(&m.id) {
            return Err(MeasureError::Duplicate(m.id));
        }
        self.measures.insert(m.id.clone(), m);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<MeasureDescriptor, MeasureError> {
        self.measures
            .get(id)
            .cloned()
            .ok_or_else(|| MeasureError::Unknown(id.to_owned()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.measures.keys().map(String::as_str)
    }
}

/// A sampled pair `inner ⊂ outer` of one zone whose values contradict the
/// declared sensitivity.
#[derive(Clone, Debug)]
pub struct AuditViolation {
    pub zone: TimeInterval,
    pub inner: TimeInterval,
    pub outer: TimeInterval,
    pub inner_value: MeasureValue,
    pub outer_value: MeasureValue,
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub checked: usize,
    pub violations: Vec<AuditViolation>,
}

/// Samples nested member pairs of random zones and checks them against the
/// declared sensitivity. Nonmonotonic measures declare nothing and always
/// pass.
pub fn audit_sensitivity<R: Rng>(
    m: &MeasureDescriptor,
    graph: &TemporalGraph,
    zones: &[ZoneRecord],
    samples: usize,
    rng: &mut R,
) -> Result<AuditReport, MeasureError> {
    let mut report = AuditReport::default();
    let candidates: Vec<&ZoneRecord> = zones.iter().filter(|z| z.member_count() > 1).collect();
    if candidates.is_empty() || m.sensitivity == Sensitivity::Nonmonotonic {
        return Ok(report);
    }
    let base = EvalContext::new(graph).with_zones(zones);
    for _ in 0..samples {
        let z = candidates[rng.gen_range(0..candidates.len())];
        let (inner, outer) = nested_pair(z, rng);
        let ctx = base.in_zone(z);
        let vi = m.eval(&z.core, inner, &ctx)?;
        let vo = m.eval(&z.core, outer, &ctx)?;
        let ok = match m.sensitivity {
            Sensitivity::Insensitive => vi == vo,
            Sensitivity::Monotonic(Direction::ImprovesOnShrink) => m.compare(vi, vo).is_ge(),
            Sensitivity::Monotonic(Direction::ImprovesOnExpand) => m.compare(vo, vi).is_ge(),
            Sensitivity::Nonmonotonic => true,
        };
        report.checked += 1;
        if !ok {
            report.violations.push(AuditViolation {
                zone: z.tti,
                inner,
                outer,
                inner_value: vi,
                outer_value: vo,
            });
        }
    }
    Ok(report)
}

/// Random `inner ⊊ outer`, both members of `z`. The zone must have more
/// than one member.
pub fn nested_pair<R: Rng>(z: &ZoneRecord, rng: &mut R) -> (TimeInterval, TimeInterval) {
    let wide: Vec<TimeInterval> = z.ltis.iter().copied().filter(|l| *l != z.tti).collect();
    let lti = wide[rng.gen_range(0..wide.len())];
    loop {
        let ts_o = rng.gen_range(lti.ts()..=z.tti.ts());
        let te_o = rng.gen_range(z.tti.te()..=lti.te());
        let ts_i = rng.gen_range(ts_o..=z.tti.ts());
        let te_i = rng.gen_range(z.tti.te()..=te_o);
        if (ts_i, te_i) != (ts_o, te_o) {
            return (TimeInterval::raw(ts_i, te_i), TimeInterval::raw(ts_o, te_o));
        }
    }
}
