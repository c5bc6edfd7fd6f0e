//! Reports, serialized as JSON with sorted keys or rendered as text tables.

use serde::{Serialize, Serializer};
use ureg_core::balance::BalanceReport;
use ureg_core::scan::{Kind, ScanSummary, UniverseSummary};
use ureg_core::{FFMatrix, Subspace, Transformation};

/// Cardinals are numbers while they fit in `u64` and decimal strings beyond.
fn cardinal<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(small) => s.serialize_u64(small),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Balance {
    #[serde(serialize_with = "cardinal")]
    pub collapse: u128,
    #[serde(serialize_with = "cardinal")]
    pub defect: u128,
    pub semi_balanced: bool,
}

impl From<BalanceReport> for Balance {
    fn from(b: BalanceReport) -> Self {
        Self {
            collapse: b.collapse,
            defect: b.defect,
            semi_balanced: b.semi_balanced,
        }
    }
}

/// A map as JSON: an image list or matrix rows.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MapValue {
    Images(Vec<usize>),
    Rows(Vec<Vec<u32>>),
}

impl From<&Transformation> for MapValue {
    fn from(t: &Transformation) -> Self {
        MapValue::Images(t.images().to_vec())
    }
}

impl From<&FFMatrix> for MapValue {
    fn from(m: &FFMatrix) -> Self {
        MapValue::Rows(m.row_vecs())
    }
}

impl MapValue {
    pub fn render(&self) -> String {
        match self {
            MapValue::Images(v) => format!("[{}]", join(v, " ")),
            MapValue::Rows(rows) => format!(
                "[{}]",
                rows.iter()
                    .map(|r| join(r, " "))
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
        }
    }
}

/// A subset of points or a subspace given by its RREF basis rows.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SubsetValue {
    Points(Vec<usize>),
    Basis(Vec<Vec<u32>>),
}

impl From<&Subspace> for SubsetValue {
    fn from(s: &Subspace) -> Self {
        SubsetValue::Basis(s.basis_rows())
    }
}

impl SubsetValue {
    pub fn render(&self) -> String {
        match self {
            SubsetValue::Points(v) => format!("{{{}}}", join(v, ", ")),
            SubsetValue::Basis(rows) if rows.is_empty() => "{0}".to_string(),
            SubsetValue::Basis(rows) => format!(
                "span{{{}}}",
                rows.iter()
                    .map(|r| format!("({})", join(r, ",")))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Transformation-specific quantities behind the three conditions.
#[derive(Debug, Clone, Serialize)]
pub struct TransformSets {
    pub transversal: Vec<usize>,
    pub restricted_transversal: Vec<usize>,
    pub collapse_set: Vec<usize>,
    pub restricted_collapse_set: Vec<usize>,
    pub defect_set: Vec<usize>,
    pub restricted_defect_set: Vec<usize>,
}

/// Linear-specific dimensions behind the three conditions.
#[derive(Debug, Clone, Serialize)]
pub struct LinearDims {
    pub dim_w: usize,
    pub rank: usize,
    pub restricted_rank: usize,
    pub dim_w_cap_range: usize,
    pub restricted_nullity: usize,
    pub restricted_corank: usize,
    pub codim_w_plus_transversal: usize,
    pub codim_w_plus_range: usize,
    pub transversal: Vec<Vec<u32>>,
    pub restricted_transversal: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Details {
    Transform(TransformSets),
    Linear(LinearDims),
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub unit_regular: bool,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub details: Details,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub unit: MapValue,
    /// `f·g`
    pub fg: MapValue,
    /// `f·g·f`
    pub fgf: MapValue,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub unit_regular: bool,
    pub unit: Option<MapValue>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub n: usize,
    pub subset: SubsetValue,
    pub map: MapValue,
    pub decision: Decision,
    pub balance: Balance,
    /// Point-by-point balance of a linear map, when small enough to expand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub materialized_balance: Option<Balance>,
    pub witness: Option<WitnessReport>,
    pub oracle: Option<OracleReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Exhaustive {
    pub total: usize,
    pub unit_regular: usize,
    pub semi_balanced: usize,
    pub all_unit_regular: bool,
    pub all_semi_balanced: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemigroupReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub n: usize,
    pub subset: SubsetValue,
    pub unit_regular: bool,
    pub unit_regular_reason: String,
    pub semi_balanced: bool,
    pub semi_balanced_reason: String,
    /// `None` when the universe is too large to enumerate.
    pub exhaustive: Option<Exhaustive>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniverseRow {
    pub n: usize,
    pub subset: SubsetValue,
    pub total: usize,
    pub unit_regular: usize,
    pub oracle_unit_regular: usize,
    pub semi_balanced: usize,
    pub disagreements: usize,
    pub witness_failures: usize,
    pub balance_mismatches: usize,
    pub semigroup_predicate: bool,
    pub semigroup_exhaustive: bool,
}

impl From<&UniverseSummary> for UniverseRow {
    fn from(u: &UniverseSummary) -> Self {
        let subset = match u.p {
            None => SubsetValue::Points(u.subset.iter().map(|v| v[0] as usize).collect()),
            Some(_) => SubsetValue::Basis(u.subset.clone()),
        };
        Self {
            n: u.n,
            subset,
            total: u.total,
            unit_regular: u.unit_regular,
            oracle_unit_regular: u.oracle_unit_regular,
            semi_balanced: u.semi_balanced,
            disagreements: u.disagreements,
            witness_failures: u.witness_failures,
            balance_mismatches: u.balance_mismatches,
            semigroup_predicate: u.semigroup_predicate,
            semigroup_exhaustive: u.semigroup_exhaustive,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub max_n: usize,
    pub universes: usize,
    pub total: usize,
    pub unit_regular: usize,
    pub semi_balanced: usize,
    pub disagreements: usize,
    pub witness_failures: usize,
    pub balance_mismatches: usize,
    pub ureg_outside_balanced: usize,
    pub semigroup_mismatches: usize,
    pub clean: bool,
    pub rows: Vec<UniverseRow>,
}

impl From<&ScanSummary> for ScanReport {
    fn from(s: &ScanSummary) -> Self {
        Self {
            kind: match s.kind {
                Kind::Transform => "transform",
                Kind::Linear => "linear",
            },
            p: s.p,
            max_n: s.max_n,
            universes: s.universes.len(),
            total: s.total(),
            unit_regular: s.unit_regular(),
            semi_balanced: s.semi_balanced(),
            disagreements: s.disagreements(),
            witness_failures: s.witness_failures(),
            balance_mismatches: s.balance_mismatches(),
            ureg_outside_balanced: s.ureg_outside_balanced(),
            semigroup_mismatches: s.semigroup_mismatches(),
            clean: s.is_clean(),
            rows: s.universes.iter().map(UniverseRow::from).collect(),
        }
    }
}

/// Pretty JSON with keys in sorted order.
pub fn to_json<T: Serialize>(report: &T) -> serde_json::Result<String> {
    let value = serde_json::to_value(report)?;
    serde_json::to_string_pretty(&value)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Two aligned columns.
#[derive(Default)]
struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    fn row(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.rows.push((key.into(), value.into()));
        self
    }

    fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        self.rows
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

impl CheckReport {
    pub fn render(&self) -> String {
        let linear = self.p.is_some();
        let s = if linear { "W" } else { "Y" };
        let mut t = Table::default();
        t.row("kind", self.kind);
        if let Some(p) = self.p {
            t.row("p", p.to_string());
        }
        t.row("n", self.n.to_string())
            .row(s, self.subset.render())
            .row("f", self.map.render())
            .row("unit-regular", yes(self.decision.unit_regular));
        let d = &self.decision;
        if linear {
            t.row(format!("  (i)   R(f|{s}) = {s} ∩ R(f)"), yes(d.cond_i))
                .row(
                    format!("  (ii)  nullity(f|{s}) = corank(f|{s})"),
                    yes(d.cond_ii),
                )
                .row(
                    format!("  (iii) codim({s} + T_f) = codim({s} + R(f))"),
                    yes(d.cond_iii),
                );
        } else {
            t.row(format!("  (i)   f|{s} semi-balanced"), yes(d.cond_i))
                .row(format!("  (ii)  R(f|{s}) = {s} ∩ R(f)"), yes(d.cond_ii))
                .row(
                    format!("  (iii) |C(f) \\ C(f|{s})| = |D(f) \\ D(f|{s})|"),
                    yes(d.cond_iii),
                );
        }
        match &d.details {
            Details::Transform(sets) => {
                t.row(
                    "transversal",
                    format!("{{{}}}", join(&sets.transversal, ", ")),
                );
            }
            Details::Linear(dims) => {
                t.row("rank f", dims.rank.to_string())
                    .row("rank f|W", dims.restricted_rank.to_string())
                    .row("dim W ∩ R(f)", dims.dim_w_cap_range.to_string())
                    .row(
                        "transversal",
                        SubsetValue::Basis(dims.transversal.clone()).render(),
                    );
            }
        }
        t.row("collapse", self.balance.collapse.to_string())
            .row("defect", self.balance.defect.to_string())
            .row("semi-balanced", yes(self.balance.semi_balanced));
        if let Some(m) = &self.materialized_balance {
            t.row(
                "point-by-point",
                format!("collapse {}, defect {}", m.collapse, m.defect),
            );
        }
        if let Some(w) = &self.witness {
            t.row("witness g", w.unit.render())
                .row("f·g", w.fg.render())
                .row("f·g·f", w.fgf.render())
                .row("witness verified", yes(w.verified));
        }
        if let Some(o) = &self.oracle {
            t.row("oracle", yes(o.unit_regular));
            if let Some(u) = &o.unit {
                t.row("oracle unit", u.render());
            }
            t.row("agreement", yes(o.agrees));
        }
        t.render()
    }
}

impl SemigroupReport {
    pub fn render(&self) -> String {
        let s = if self.p.is_some() { "W" } else { "Y" };
        let mut t = Table::default();
        t.row("kind", self.kind);
        if let Some(p) = self.p {
            t.row("p", p.to_string());
        }
        t.row("n", self.n.to_string())
            .row(s, self.subset.render())
            .row(
                "unit-regular",
                format!("{} ({})", yes(self.unit_regular), self.unit_regular_reason),
            )
            .row(
                "semi-balanced",
                format!(
                    "{} ({})",
                    yes(self.semi_balanced),
                    self.semi_balanced_reason
                ),
            );
        match &self.exhaustive {
            None => {
                t.row("exhaustive", "skipped (beyond enumeration bound)");
            }
            Some(e) => {
                t.row("elements", e.total.to_string())
                    .row("unit-regular elements", e.unit_regular.to_string())
                    .row("semi-balanced elements", e.semi_balanced.to_string())
                    .row("confirmed", yes(e.agrees));
            }
        }
        t.render()
    }
}

impl ScanReport {
    pub fn render(&self) -> String {
        let mut out = Table::default();
        out.row("kind", self.kind);
        if let Some(p) = self.p {
            out.row("p", p.to_string());
        }
        out.row("max n", self.max_n.to_string())
            .row("universes", self.universes.to_string())
            .row("total", self.total.to_string())
            .row("unit-regular", self.unit_regular.to_string())
            .row("semi-balanced", self.semi_balanced.to_string())
            .row("disagreements", self.disagreements.to_string())
            .row("witness failures", self.witness_failures.to_string())
            .row("balance mismatches", self.balance_mismatches.to_string())
            .row("ureg outside B", self.ureg_outside_balanced.to_string())
            .row(
                "semigroup mismatches",
                self.semigroup_mismatches.to_string(),
            );
        let mut text = out.render();
        text.push('\n');

        let header = [
            "n",
            "subset",
            "total",
            "ureg",
            "oracle",
            "balanced",
            "disagree",
            "witness-fail",
            "semigroup",
        ];
        let body: Vec<[String; 9]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.subset.render(),
                    r.total.to_string(),
                    r.unit_regular.to_string(),
                    r.oracle_unit_regular.to_string(),
                    r.semi_balanced.to_string(),
                    r.disagreements.to_string(),
                    r.witness_failures.to_string(),
                    yes(r.semigroup_predicate).to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                body.iter()
                    .map(|r| r[i].chars().count())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let mut s = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        text.push_str(&line(header.to_vec()));
        for r in &body {
            text.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        text
    }
}
