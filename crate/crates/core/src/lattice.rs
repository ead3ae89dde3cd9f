//! Subgroup lattices: all subgroups, normal and characteristic ones, and
//! the index-two count `I₂(G) = [G:G²] − 1`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{automorphism_group, generating_set, FiniteGroup, GroupMap};
use crate::Limits;

/// A subgroup of some parent group, as its sorted member list plus a
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    /// The subgroup of `g` generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            members: g.closure(gens),
            generators: gens.to_vec(),
        }
    }

    /// Wraps a member list, checking closure.
    pub fn from_members(g: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup {
            generators: members.clone(),
            members,
        };
        if sub.members.first() != Some(&0)
            || sub.members.iter().any(|&a| sub.members.iter().any(|&b| !sub.contains(g.mul(a, b))))
        {
            return Err(Error::Precondition("member set is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let g_gens = generating_set(g);
        g_gens.iter().all(|&s| {
            let s_inv = g.inv(s);
            self.generators
                .iter()
                .all(|&h| self.contains(g.mul(g.mul(s, h), s_inv)))
        })
    }

    /// `φ(H) ⊆ H` for each map, which for automorphisms means `φ(H) = H`.
    pub fn is_invariant_under(&self, maps: &[GroupMap]) -> bool {
        maps.iter()
            .all(|phi| self.generators.iter().all(|&h| self.contains(phi.apply(h))))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.members).cmp(&(other.order(), &other.members))
    }
}

/// Every subgroup of `g`, sorted by `(order, members)`.
///
/// Starts from the cyclic subgroups and repeatedly joins each subgroup
/// found so far with one more cyclic subgroup. Every subgroup generated by
/// `k` elements turns up in layer `k`.
pub fn all_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    if g.order() > limits.lattice {
        return Err(Error::OrderBound {
            what: "subgroup lattice",
            order: g.order(),
            limit: limits.lattice,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic_reps = Vec::new();
    let mut frontier = Vec::new();
    for x in g.elements() {
        let sub = Subgroup::generated(g, &[x]);
        if seen.insert(sub.members.clone()) {
            cyclic_reps.push(x);
            frontier.push(sub);
        }
    }
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let candidates: Vec<Vec<Subgroup>> = frontier
            .par_iter()
            .map(|h| {
                let mut local: HashSet<Vec<usize>> = HashSet::new();
                let mut out = Vec::new();
                let mut gens = h.generators.clone();
                gens.push(0);
                for &x in &cyclic_reps {
                    if h.contains(x) {
                        continue;
                    }
                    *gens.last_mut().unwrap() = x;
                    let members = g.closure(&gens);
                    if local.insert(members.clone()) {
                        out.push(Subgroup {
                            members,
                            generators: gens.clone(),
                        });
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for sub in candidates.into_iter().flatten() {
            if seen.insert(sub.members.clone()) {
                next.push(sub);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    for s in &all {
        if !g.order().is_multiple_of(s.order()) {
            return Err(Error::Consistency(format!(
                "subgroup of order {} in a group of order {}",
                s.order(),
                g.order()
            )));
        }
    }
    Ok(all)
}

pub fn normal_subgroups(g: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<Subgroup> {
    subgroups.iter().filter(|s| s.is_normal_in(g)).cloned().collect()
}

/// Subgroups stable under every automorphism, tested against a generating
/// set of `Aut(g)`.
pub fn characteristic_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    let subs = all_subgroups(g, limits)?;
    let aut = automorphism_group(g, limits)?;
    Ok(invariant_subgroups(&subs, aut.generators()))
}

pub fn invariant_subgroups(subgroups: &[Subgroup], maps: &[GroupMap]) -> Vec<Subgroup> {
    subgroups
        .iter()
        .filter(|s| s.is_invariant_under(maps))
        .cloned()
        .collect()
}

/// Subgroup, normal-subgroup and characteristic-subgroup counts for one
/// divisor `m` of the group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeRow {
    pub m: usize,
    pub sub: usize,
    pub normal: usize,
    pub characteristic: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSummary {
    pub name: String,
    pub order: usize,
    pub rows: Vec<LatticeRow>,
}

impl LatticeSummary {
    pub fn compute(g: &FiniteGroup, limits: &Limits) -> Result<Self> {
        let subs = all_subgroups(g, limits)?;
        let aut = automorphism_group(g, limits)?;
        let n = g.order();
        let mut rows: Vec<LatticeRow> = divisors(n)
            .into_iter()
            .map(|m| LatticeRow {
                m,
                sub: 0,
                normal: 0,
                characteristic: 0,
            })
            .collect();
        for s in &subs {
            let row = rows.iter_mut().find(|r| r.m == s.order()).unwrap();
            row.sub += 1;
            if s.is_invariant_under(aut.generators()) {
                row.characteristic += 1;
                row.normal += 1;
            } else if s.is_normal_in(g) {
                row.normal += 1;
            }
        }
        Ok(LatticeSummary {
            name: g.name().unwrap_or("-").to_string(),
            order: n,
            rows,
        })
    }

    pub fn row(&self, m: usize) -> Option<&LatticeRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn sub_count(&self, m: usize) -> usize {
        self.row(m).map_or(0, |r| r.sub)
    }

    pub fn char_count(&self, m: usize) -> usize {
        self.row(m).map_or(0, |r| r.characteristic)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| Error::Parse("empty lattice summary".into()))?;
        let mut parts = head.trim_start_matches("# ").splitn(2, ' ');
        let name = parts.next().unwrap_or("-").to_string();
        let order = parts
            .next()
            .and_then(|s| s.trim().strip_prefix("order="))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{head}`")))?;
        if lines.next() != Some("m,sub,normal,char") {
            return Err(Error::Parse("missing column header".into()));
        }
        let rows = lines
            .map(|l| {
                let v: Vec<usize> = l
                    .split(',')
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad row `{l}`"))))
                    .collect::<Result<_>>()?;
                match v[..] {
                    [m, sub, normal, characteristic] => Ok(LatticeRow {
                        m,
                        sub,
                        normal,
                        characteristic,
                    }),
                    _ => Err(Error::Parse(format!("bad row `{l}`"))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(LatticeSummary { name, order, rows })
    }
}

impl fmt::Display for LatticeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} order={}", self.name, self.order)?;
        writeln!(f, "m,sub,normal,char")?;
        for r in &self.rows {
            writeln!(f, "{},{},{},{}", r.m, r.sub, r.normal, r.characteristic)?;
        }
        Ok(())
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `G² = ⟨g² | g ∈ G⟩`.
pub fn squares_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut squares: Vec<usize> = g.elements().map(|x| g.mul(x, x)).collect();
    squares.sort_unstable();
    squares.dedup();
    Subgroup::generated(g, &squares)
}

/// Number of index-two subgroups, `[G:G²] − 1`.
pub fn index_two_count(g: &FiniteGroup) -> usize {
    g.order() / squares_subgroup(g).order() - 1
}

/// `(z₂, u₂)`: how many of `groups` have no index-two subgroup, and how
/// many have exactly one.
pub fn z2_u2(groups: &[&FiniteGroup]) -> Result<(usize, usize)> {
    if let Some(first) = groups.first() {
        if let Some(other) = groups.iter().find(|g| g.order() != first.order()) {
            return Err(Error::OrderMismatch {
                left: first.order(),
                right: other.order(),
            });
        }
    }
    let counts: Vec<usize> = groups.iter().map(|g| index_two_count(g)).collect();
    Ok((
        counts.iter().filter(|&&c| c == 0).count(),
        counts.iter().filter(|&&c| c == 1).count(),
    ))
}
