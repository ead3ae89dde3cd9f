//! The characteristic-subgroup criterion for `R(G,[M]) = ∅` and the census
//! tables `|R(G,[M])|` over all pairs of a fixed order.
//!
//! If `|CharSub_m(M)| > |Sub_m(G)|` for some `m` then `R(G,[M])` is empty.
//! The converse does not hold, so a report can certify emptiness but never
//! nonemptiness.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::group::{automorphism_group, FiniteGroup};
use crate::holomorph::{byott_quotient, holomorph, regular_subgroups};
use crate::lattice::{divisors, LatticeSummary};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub m: usize,
    pub char_sub: usize,
    pub sub: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    EmptyCertified,
    NoObstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub g: String,
    pub m: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ObstructionReport {
    pub fn is_empty_certified(&self) -> bool {
        self.verdict == Verdict::EmptyCertified
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(w) => write!(f, "EMPTY: m={}, CharSub={} > Sub={}", w.m, w.char_sub, w.sub),
            None => write!(f, "NO_OBSTRUCTION"),
        }
    }
}

/// First divisor `m` (increasing) with `|CharSub_m(M)| > |Sub_m(G)|`.
pub fn first_witness(g: &LatticeSummary, m: &LatticeSummary) -> Result<Option<Witness>> {
    if g.order != m.order {
        return Err(Error::OrderMismatch {
            left: g.order,
            right: m.order,
        });
    }
    Ok(divisors(g.order).into_iter().find_map(|d| {
        let (c, s) = (m.char_count(d), g.sub_count(d));
        (c > s).then_some(Witness { m: d, char_sub: c, sub: s })
    }))
}

pub fn report_from_summaries(g: &LatticeSummary, m: &LatticeSummary) -> Result<ObstructionReport> {
    let witness = first_witness(g, m)?;
    Ok(ObstructionReport {
        g: g.name.clone(),
        m: m.name.clone(),
        verdict: if witness.is_some() {
            Verdict::EmptyCertified
        } else {
            Verdict::NoObstruction
        },
        witness,
    })
}

pub fn char_obstruction(g: &FiniteGroup, m: &FiniteGroup, limits: &Limits) -> Result<ObstructionReport> {
    if g.order() != m.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: m.order(),
        });
    }
    let (gs, ms) = rayon::join(|| LatticeSummary::compute(g, limits), || LatticeSummary::compute(m, limits));
    report_from_summaries(&gs?, &ms?)
}

/// Lattice summaries of every catalog group of order `n`, in catalog order.
pub fn summaries_of_order(catalog: &Catalog, n: usize, limits: &Limits) -> Result<Vec<LatticeSummary>> {
    catalog
        .groups_of_order(n)?
        .par_iter()
        .map(|e| LatticeSummary::compute(e.group(), limits))
        .collect()
}

/// All ordered pairs `(G, M)` of order `n` certified empty.
pub fn empty_pairs_for_order(catalog: &Catalog, n: usize, limits: &Limits) -> Result<Vec<ObstructionReport>> {
    let sums = summaries_of_order(catalog, n, limits)?;
    let mut out = Vec::new();
    for g in &sums {
        for m in &sums {
            let r = report_from_summaries(g, m)?;
            if r.is_empty_certified() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// `(|Z|, |R|²)` for order `n`: certified-empty ordered pairs against all pairs.
pub fn z_statistics(catalog: &Catalog, n: usize, limits: &Limits) -> Result<(usize, usize)> {
    let k = catalog.groups_of_order(n)?.len();
    Ok((empty_pairs_for_order(catalog, n, limits)?.len(), k * k))
}

/// `|S(M,[G])|` for every catalog group `G` of the order of `M`, in catalog
/// order: one regular-subgroup search in `Hol(M)`, each hit classified.
pub fn s_column(catalog: &Catalog, m: &CatalogEntry, limits: &Limits) -> Result<Vec<u64>> {
    let n = m.order();
    let groups = catalog.groups_of_order(n)?;
    let hol = holomorph(m.group(), limits)?;
    let found = regular_subgroups(&hol.group, None);
    let classes: Vec<usize> = found
        .par_iter()
        .map(|r| {
            let g = r.to_finite_group()?;
            let entry = catalog
                .classify(&g)
                .ok_or_else(|| Error::Consistency(format!("regular subgroup of Hol({}) matches no catalog group", m.name())))?;
            groups
                .iter()
                .position(|e| e.name() == entry.name())
                .ok_or_else(|| Error::Consistency("classified outside the order".into()))
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; groups.len()];
    for c in classes {
        counts[c] += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    ObstructionZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusCell {
    pub count: u64,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// `|R(G,[M])|` for all catalog pairs of one order; rows `G`, columns `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub order: usize,
    pub names: Vec<String>,
    pub display_names: Vec<String>,
    pub cells: Vec<Vec<CensusCell>>,
}

impl CensusTable {
    pub fn count(&self, g: &str, m: &str) -> Option<u64> {
        let i = self.names.iter().position(|n| n == g)?;
        let j = self.names.iter().position(|n| n == m)?;
        Some(self.cells[i][j].count)
    }

    pub fn row(&self, g: &str) -> Option<Vec<u64>> {
        let i = self.names.iter().position(|n| n == g)?;
        Some(self.cells[i].iter().map(|c| c.count).collect())
    }

    pub fn zero_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.count == 0).count()
    }

    pub fn certified_cells(&self) -> usize {
        self.cells
            .iter()
            .flatten()
            .filter(|c| c.provenance == Provenance::ObstructionZero)
            .count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.display_names {
            out.push(',');
            out.push_str(&csv_field(name));
        }
        out.push('\n');
        for (name, row) in self.display_names.iter().zip(&self.cells) {
            out.push_str(&csv_field(name));
            for c in row {
                out.push(',');
                out.push_str(&c.count.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Like [`to_csv`](Self::to_csv), plus a block listing each certified
    /// cell with its witness.
    pub fn witnesses_text(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if let Some(w) = c.witness {
                    out.push_str(&format!(
                        "{},{},m={},CharSub={},Sub={}\n",
                        csv_field(&self.display_names[i]),
                        csv_field(&self.display_names[j]),
                        w.m,
                        w.char_sub,
                        w.sub
                    ));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("census serializes");
        s.push('\n');
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds the table from precomputed `S` columns (one per `M`, catalog
/// order). Every certified cell must come out as 0, and every Byott
/// quotient must be exact; either failure is a consistency error.
pub fn assemble_census(catalog: &Catalog, n: usize, columns: &[Vec<u64>], limits: &Limits) -> Result<CensusTable> {
    let groups = catalog.groups_of_order(n)?;
    let k = groups.len();
    if columns.len() != k || columns.iter().any(|c| c.len() != k) {
        return Err(Error::Consistency(format!("census of order {n} needs a {k}×{k} block of counts")));
    }
    let auts: Vec<usize> = groups
        .par_iter()
        .map(|e| automorphism_group(e.group(), limits).map(|a| a.order()))
        .collect::<Result<_>>()?;
    let sums = summaries_of_order(catalog, n, limits)?;
    let mut cells = Vec::with_capacity(k);
    for (i, g) in groups.iter().enumerate() {
        let mut row = Vec::with_capacity(k);
        for (j, m) in groups.iter().enumerate() {
            let count = byott_quotient(auts[i], auts[j], columns[j][i] as usize)?;
            let witness = first_witness(&sums[i], &sums[j])?;
            if witness.is_some() && count != 0 {
                return Err(Error::Consistency(format!(
                    "obstruction certifies R({},[{}]) empty but enumeration finds {count}",
                    g.name(),
                    m.name()
                )));
            }
            row.push(CensusCell {
                count,
                provenance: if witness.is_some() {
                    Provenance::ObstructionZero
                } else {
                    Provenance::Computed
                },
                witness,
            });
        }
        cells.push(row);
    }
    Ok(CensusTable {
        order: n,
        names: groups.iter().map(|e| e.name().to_string()).collect(),
        display_names: groups.iter().map(|e| e.display().to_string()).collect(),
        cells,
    })
}

/// Full census for order `n` without caching.
pub fn census(catalog: &Catalog, n: usize, limits: &Limits) -> Result<CensusTable> {
    let groups = catalog.groups_of_order(n)?;
    let columns = groups
        .iter()
        .map(|m| s_column(catalog, m, limits))
        .collect::<Result<Vec<_>>>()?;
    assemble_census(catalog, n, &columns, limits)
}
