//! Permutation-group side: `λ(G)`, `Hol(N)`, regular subgroup search,
//! Byott's translation `|R(G,[M])| = |Aut G|/|Aut M| · |S(M,[G])|`,
//! direct enumeration of `R(G)` in small degree, and the orbit map `Ψ`.
//!
//! Points are element indices of the group being permuted, so point `0`
//! is the identity.

use std::fmt;

use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::group::{automorphism_group, FiniteGroup, Invariants};
use crate::lattice::{all_subgroups, Subgroup};
use crate::perm::{PermGroup, Permutation};
use crate::Limits;

/// Largest degree accepted by [`direct_r`] and the brute-force normalizer.
pub const DIRECT_DEGREE_LIMIT: usize = 8;

/// `λ(G)`: the permutations `x ↦ a·x`.
pub fn left_regular(g: &FiniteGroup) -> PermGroup {
    let elements = g
        .elements()
        .map(|a| Permutation::from_images_unchecked(g.elements().map(|x| g.mul(a, x) as u32).collect()))
        .collect();
    PermGroup::from_elements_unchecked(g.order(), elements)
}

/// `ρ(G)`: the permutations `x ↦ x·a⁻¹`.
pub fn right_regular(g: &FiniteGroup) -> PermGroup {
    let elements = g
        .elements()
        .map(|a| {
            let ai = g.inv(a);
            Permutation::from_images_unchecked(g.elements().map(|x| g.mul(x, ai) as u32).collect())
        })
        .collect();
    PermGroup::from_elements_unchecked(g.order(), elements)
}

/// `Hol(N) = λ(N)·Aut(N)` inside `Sym(N)`, with `|Aut(N)|` alongside.
#[derive(Debug, Clone)]
pub struct Holomorph {
    pub group: PermGroup,
    pub aut_order: usize,
}

pub fn holomorph(n: &FiniteGroup, limits: &Limits) -> Result<Holomorph> {
    let aut = automorphism_group(n, limits)?;
    let mut elements = Vec::with_capacity(n.order() * aut.order());
    for a in n.elements() {
        for phi in aut.maps() {
            elements.push(Permutation::from_images_unchecked(
                n.elements().map(|x| n.mul(a, phi.apply(x)) as u32).collect(),
            ));
        }
    }
    let group = PermGroup::from_elements_unchecked(n.order(), elements);
    if group.order() != n.order() * aut.order() {
        return Err(Error::Consistency(format!(
            "|Hol| = {} but |N|·|Aut N| = {}",
            group.order(),
            n.order() * aut.order()
        )));
    }
    Ok(Holomorph {
        group,
        aut_order: aut.order(),
    })
}

/// Every permutation of `0..degree`, in lexicographic order.
pub fn all_permutations(degree: usize) -> Vec<Permutation> {
    fn go(cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation::from_images_unchecked(cur.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u32);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; degree], &mut out);
    out
}

/// Normalizer of `group` in the full symmetric group, by testing every
/// permutation. Only for degree at most [`DIRECT_DEGREE_LIMIT`].
pub fn normalizer_in_symmetric(group: &PermGroup) -> Result<PermGroup> {
    check_direct_degree(group.degree())?;
    let elements = all_permutations(group.degree())
        .into_iter()
        .filter(|p| group.is_normalized_by(p))
        .collect();
    Ok(PermGroup::from_elements_unchecked(group.degree(), elements))
}

/// Centralizer of `group` in the full symmetric group, by brute force.
pub fn centralizer_in_symmetric(group: &PermGroup) -> Result<PermGroup> {
    check_direct_degree(group.degree())?;
    let elements = all_permutations(group.degree())
        .into_iter()
        .filter(|p| group.elements().iter().all(|q| p.compose(q) == q.compose(p)))
        .collect();
    Ok(PermGroup::from_elements_unchecked(group.degree(), elements))
}

fn check_direct_degree(degree: usize) -> Result<()> {
    if degree > DIRECT_DEGREE_LIMIT {
        return Err(Error::OrderBound {
            what: "symmetric-group search",
            order: degree,
            limit: DIRECT_DEGREE_LIMIT,
        });
    }
    Ok(())
}

/// A regular permutation group found by the search.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularSubgroup {
    members: Vec<Permutation>,
}

impl RegularSubgroup {
    pub fn degree(&self) -> usize {
        self.members.len()
    }

    /// Members sorted; the identity is first.
    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn as_perm_group(&self) -> PermGroup {
        PermGroup::from_elements_unchecked(self.degree(), self.members.clone())
    }

    pub fn to_finite_group(&self) -> Result<FiniteGroup> {
        self.as_perm_group().to_finite_group()
    }

    /// The member sending point `0` to `x`.
    pub fn element_at(&self, x: usize) -> &Permutation {
        self.members.iter().find(|p| p.apply(0) == x).expect("regular")
    }
}

impl fmt::Debug for RegularSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}

/// A regular subgroup tagged with its isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubgroupRecord {
    pub ambient: String,
    pub iso_class: String,
    pub subgroup: RegularSubgroup,
}

impl RegularSubgroupRecord {
    /// Header line followed by one permutation per line, image notation.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "regular degree={} class={} ambient={}\n",
            self.subgroup.degree(),
            self.iso_class,
            self.ambient
        );
        for p in self.subgroup.members() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| Error::Parse("empty record".into()))?;
        let field = |key: &str| {
            head.split_whitespace()
                .find_map(|t| t.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("missing `{key}` in `{head}`")))
        };
        if !head.starts_with("regular ") {
            return Err(Error::Parse(format!("bad header `{head}`")));
        }
        let degree: usize = field("degree")?.parse().map_err(|_| Error::Parse("bad degree".into()))?;
        let members = lines
            .map(|l| {
                let images = l
                    .trim()
                    .trim_start_matches('[')
                    .trim_end_matches(']')
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad permutation `{l}`"))))
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let group = PermGroup::from_elements_unchecked(degree, members.clone());
        if members.len() != degree || group.order() != degree || !group.is_regular() {
            return Err(Error::Parse("members do not form a regular group".into()));
        }
        Ok(RegularSubgroupRecord {
            ambient: field("ambient")?,
            iso_class: field("class")?,
            subgroup: RegularSubgroup {
                members: group.elements().to_vec(),
            },
        })
    }
}

/// One search candidate: an element sending `0` to a given point, together
/// with everything that must be added alongside it.
struct Candidate {
    adds: Vec<Vec<u32>>,
}

/// A semiregular group under construction, stored as "the element sending
/// 0 to x" for each reached point x.
#[derive(Clone)]
struct Semiregular {
    n: usize,
    slots: Vec<u32>,
    present: Vec<bool>,
    size: usize,
    gens: Vec<Vec<u32>>,
}

impl Semiregular {
    fn trivial(n: usize) -> Self {
        let mut slots = vec![0u32; n * n];
        slots[..n].iter_mut().enumerate().for_each(|(i, s)| *s = i as u32);
        let mut present = vec![false; n];
        present[0] = true;
        Semiregular {
            n,
            slots,
            present,
            size: 1,
            gens: Vec::new(),
        }
    }

    /// `⟨H, adds⟩` built one right coset `H∘c` at a time, or `None` as
    /// soon as a coset element has a fixed point, lands on a point already
    /// taken by a different element, or has an order outside `allowed`; or
    /// when the final size cannot divide the degree.
    ///
    /// The union of cosets is closed once `c∘s` lies in it for every coset
    /// representative `c` and every generator `s`.
    fn extend(&self, adds: &[Vec<u32>], allowed: &[bool]) -> Option<Semiregular> {
        let n = self.n;
        if !adds.iter().all(|g| self.first_coset_ok(g)) {
            return None;
        }
        let restricted = !allowed.iter().all(|&a| a);
        let mut next = self.clone();
        next.gens.extend(adds.iter().cloned());
        let h_points: Vec<usize> = (0..n).filter(|&x| self.present[x]).collect();
        let mut reps: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut c = vec![0u32; n];
        let mut e = vec![0u32; n];
        let mut i = 0;
        while i < reps.len() {
            for s in 0..next.gens.len() {
                for (ci, &si) in c.iter_mut().zip(&next.gens[s]) {
                    *ci = reps[i][si as usize];
                }
                let y = c[0] as usize;
                if next.present[y] {
                    if next.slots[y * n..(y + 1) * n] != c[..] {
                        return None;
                    }
                    continue;
                }
                for &hp in &h_points {
                    let h = &self.slots[hp * n..(hp + 1) * n];
                    for (ei, &ci) in e.iter_mut().zip(c.iter()) {
                        *ei = h[ci as usize];
                    }
                    let p = e[0] as usize;
                    if next.present[p] || e.iter().enumerate().any(|(k, &v)| v as usize == k) {
                        return None;
                    }
                    if restricted && allowed.get(images_order(&e)) != Some(&true) {
                        return None;
                    }
                    next.slots[p * n..(p + 1) * n].copy_from_slice(&e);
                    next.present[p] = true;
                    next.size += 1;
                }
                reps.push(c.clone());
            }
            i += 1;
        }
        if !n.is_multiple_of(next.size) {
            return None;
        }
        Some(next)
    }

    /// Cheap necessary condition, checked before any allocation: every
    /// element of `H∘g` is fixed-point-free and sends 0 to a fresh point.
    fn first_coset_ok(&self, g: &[u32]) -> bool {
        let n = self.n;
        if self.present[g[0] as usize] {
            return true;
        }
        (0..n).filter(|&hp| self.present[hp]).all(|hp| {
            let h = &self.slots[hp * n..(hp + 1) * n];
            !self.present[h[g[0] as usize] as usize] && g.iter().enumerate().all(|(k, &gk)| h[gk as usize] as usize != k)
        })
    }

    fn first_missing(&self) -> Option<usize> {
        self.present.iter().position(|&p| !p)
    }

    fn into_subgroup(self) -> RegularSubgroup {
        let n = self.n;
        let mut members: Vec<Permutation> = (0..n)
            .map(|x| Permutation::from_images_unchecked(self.slots[x * n..(x + 1) * n].to_vec()))
            .collect();
        members.sort_unstable();
        RegularSubgroup { members }
    }
}

/// Order of a permutation given by its images (lcm of cycle lengths).
fn images_order(images: &[u32]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut order = 1;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

fn search(state: Semiregular, candidates: &[Vec<Candidate>], allowed: &[bool], out: &mut Vec<RegularSubgroup>) {
    let Some(x) = state.first_missing() else {
        out.push(state.into_subgroup());
        return;
    };
    for c in &candidates[x] {
        if let Some(next) = state.extend(&c.adds, allowed) {
            search(next, candidates, allowed, out);
        }
    }
}

/// Runs the search. At each step the smallest point outside the orbit of
/// 0 is `x`, and the only member of a regular group sending 0 to `x` is
/// added; so each regular group is reached along exactly one path.
fn run_search(n: usize, candidates: Vec<Vec<Candidate>>, allowed: &[bool]) -> Vec<RegularSubgroup> {
    let root = Semiregular::trivial(n);
    let mut found: Vec<RegularSubgroup> = match root.first_missing() {
        None => vec![root.into_subgroup()],
        Some(x) => candidates[x]
            .par_iter()
            .flat_map_iter(|c| {
                let mut out = Vec::new();
                if let Some(next) = root.extend(&c.adds, allowed) {
                    search(next, &candidates, allowed, &mut out);
                }
                out
            })
            .collect(),
    };
    found.sort_unstable();
    let before = found.len();
    found.dedup();
    debug_assert_eq!(before, found.len(), "search reached a regular subgroup twice");
    found
}

fn allowed_orders(n: usize, orders: Option<&[usize]>) -> Vec<bool> {
    let mut allowed = vec![orders.is_none(); n + 1];
    if let Some(orders) = orders {
        for &o in orders {
            if o <= n {
                allowed[o] = true;
            }
        }
    }
    allowed
}

/// Every regular subgroup of `ambient`. When `orders` is given, only
/// subgroups whose element orders all lie in it are produced.
pub fn regular_subgroups(ambient: &PermGroup, orders: Option<&[usize]>) -> Vec<RegularSubgroup> {
    let n = ambient.degree();
    let allowed = allowed_orders(n, orders);
    let mut candidates: Vec<Vec<Candidate>> = (0..n).map(|_| Vec::new()).collect();
    for p in ambient.elements() {
        let x = p.apply(0);
        if x != 0 && p.is_fixed_point_free() && allowed.get(p.order()) == Some(&true) {
            candidates[x].push(Candidate {
                adds: vec![p.images().to_vec()],
            });
        }
    }
    run_search(n, candidates, &allowed)
}

/// Regular subgroups of `ambient` isomorphic to `target`.
pub fn regular_subgroups_iso_to(ambient: &PermGroup, target: &FiniteGroup) -> Result<Vec<RegularSubgroup>> {
    if ambient.degree() != target.order() {
        return Err(Error::OrderMismatch {
            left: ambient.degree(),
            right: target.order(),
        });
    }
    let orders: Vec<usize> = target.order_profile().into_iter().map(|(o, _)| o).collect();
    let want = Invariants::of(target);
    let mut out = Vec::new();
    for r in regular_subgroups(ambient, Some(&orders)) {
        let g = r.to_finite_group()?;
        if Invariants::of(&g) == want && crate::group::iso::isomorphism_after_screening(&g, target).is_some() {
            out.push(r);
        }
    }
    Ok(out)
}

/// `|Aut(G)|/|Aut(M)| · |S(M,[G])|`, where `S(M,[G])` is the set of
/// regular subgroups of `Hol(M)` isomorphic to `G`.
pub fn byott_count(g: &FiniteGroup, m: &FiniteGroup, limits: &Limits) -> Result<u64> {
    if g.order() != m.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: m.order(),
        });
    }
    let hol = holomorph(m, limits)?;
    let s = regular_subgroups_iso_to(&hol.group, g)?.len();
    let aut_g = automorphism_group(g, limits)?.order();
    byott_quotient(aut_g, hol.aut_order, s)
}

/// `aut_g · s / aut_m`, failing loudly if the division is not exact.
pub fn byott_quotient(aut_g: usize, aut_m: usize, s: usize) -> Result<u64> {
    let num = (aut_g as u64) * (s as u64);
    if !num.is_multiple_of(aut_m as u64) {
        return Err(Error::Consistency(format!(
            "|Aut G|·|S| = {aut_g}·{s} is not divisible by |Aut M| = {aut_m}"
        )));
    }
    Ok(num / aut_m as u64)
}

/// `|R(G,[M])|` for two catalog groups.
pub fn count_r(catalog: &Catalog, g_name: &str, m_name: &str, limits: &Limits) -> Result<u64> {
    let g = catalog.lookup(g_name)?;
    let m = catalog.lookup(m_name)?;
    byott_count(g.group(), m.group(), limits)
}

/// Every regular `N ≤ Sym(G)` normalized by `λ(G)`, each tagged with its
/// catalog class.
///
/// Same search as [`regular_subgroups`] over all of `Sym(G)`, except that a
/// chosen element brings its whole `λ(G)`-conjugacy orbit along.
pub fn direct_r(g: &FiniteGroup, catalog: &Catalog) -> Result<Vec<RegularSubgroupRecord>> {
    let n = g.order();
    check_direct_degree(n)?;
    let lambda = left_regular(g);
    let allowed = allowed_orders(n, None);
    let mut candidates: Vec<Vec<Candidate>> = (0..n).map(|_| Vec::new()).collect();
    for p in all_permutations(n) {
        let x = p.apply(0);
        if x == 0 || !p.is_fixed_point_free() {
            continue;
        }
        let mut orbit: Vec<Permutation> = lambda.elements().iter().map(|l| l.conjugate(&p)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        candidates[x].push(Candidate {
            adds: orbit.into_iter().map(|q| q.images().to_vec()).collect(),
        });
    }
    let label = format!("Sym({})", g.name().unwrap_or("G"));
    run_search(n, candidates, &allowed)
        .into_iter()
        .map(|sub| {
            let abstract_group = sub.to_finite_group()?;
            let class = catalog
                .classify(&abstract_group)
                .ok_or_else(|| Error::Consistency("regular subgroup matches no catalog group".into()))?;
            Ok(RegularSubgroupRecord {
                ambient: label.clone(),
                iso_class: class.name().to_string(),
                subgroup: sub,
            })
        })
        .collect()
}

/// `Ψ(P)`: the orbit of the identity point under `P`, as a subgroup of `g`.
///
/// `record` must be normalized by `λ(g)` and `p_members` must be a
/// `λ(g)`-stable subgroup of it.
pub fn psi(record: &RegularSubgroup, p_members: &[Permutation], g: &FiniteGroup) -> Result<Subgroup> {
    if record.degree() != g.order() {
        return Err(Error::OrderMismatch {
            left: record.degree(),
            right: g.order(),
        });
    }
    let n_group = record.as_perm_group();
    let lambda = left_regular(g);
    if !lambda.elements().iter().all(|l| n_group.is_normalized_by(l)) {
        return Err(Error::Precondition("N is not normalized by λ(G)".into()));
    }
    let p_group = PermGroup::from_elements_unchecked(g.order(), p_members.to_vec());
    if p_members.iter().any(|p| !n_group.contains(p)) {
        return Err(Error::Precondition("P is not contained in N".into()));
    }
    if !lambda.elements().iter().all(|l| p_group.is_normalized_by(l)) {
        return Err(Error::Precondition("P is not stable under λ(G)".into()));
    }
    let orbit: Vec<usize> = p_group.elements().iter().map(|p| p.apply(0)).collect();
    let j = Subgroup::from_members(g, orbit)
        .map_err(|_| Error::Precondition("orbit of the identity is not a subgroup".into()))?;
    if j.order() != p_group.order() {
        return Err(Error::Consistency(format!(
            "|Ψ(P)| = {} but |P| = {}",
            j.order(),
            p_group.order()
        )));
    }
    Ok(j)
}

/// All subgroups of `record` stable under conjugation by `λ(g)`, as sorted
/// member lists.
pub fn lambda_stable_subgroups(record: &RegularSubgroup, g: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<Permutation>>> {
    let n_group = record.as_perm_group();
    let abstract_group = n_group.to_finite_group()?;
    let lambda = left_regular(g);
    let mut out = Vec::new();
    for sub in all_subgroups(&abstract_group, limits)? {
        let members: Vec<Permutation> = sub.members().iter().map(|&i| n_group.elements()[i].clone()).collect();
        let pg = PermGroup::from_elements_unchecked(g.order(), members);
        if lambda.elements().iter().all(|l| pg.is_normalized_by(l)) {
            out.push(pg.elements().to_vec());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dicyclic, dihedral};

    #[test]
    fn regular_representations() {
        let c2 = cyclic(2).unwrap();
        let l = left_regular(&c2);
        assert_eq!(l.elements().len(), 2);
        assert!(l.is_regular());
        let a4 = alternating(4).unwrap();
        let l = left_regular(&a4);
        assert!(l.is_regular());
        assert!(l.elements().iter().filter(|p| !p.is_identity()).all(Permutation::is_fixed_point_free));
        let c3 = left_regular(&cyclic(3).unwrap());
        assert_eq!(c3.elements().iter().filter(|p| p.order() == 3).count(), 2);
    }

    #[test]
    fn holomorph_orders() {
        let limits = Limits::default();
        assert_eq!(holomorph(&cyclic(6).unwrap(), &limits).unwrap().group.order(), 12);
        assert_eq!(holomorph(&dihedral(2).unwrap(), &limits).unwrap().group.order(), 24);
    }

    #[test]
    fn hol_c4_regular_subgroups() {
        let hol = holomorph(&cyclic(4).unwrap(), &Limits::default()).unwrap();
        assert_eq!(hol.group.order(), 8);
        let all = regular_subgroups(&hol.group, None);
        assert_eq!(all.len(), 2);
        assert_eq!(regular_subgroups_iso_to(&hol.group, &cyclic(4).unwrap()).unwrap().len(), 1);
        assert_eq!(regular_subgroups_iso_to(&hol.group, &dihedral(2).unwrap()).unwrap().len(), 1);
        for r in &all {
            assert!(r.as_perm_group().is_regular());
        }
    }

    #[test]
    fn byott_small() {
        let limits = Limits::default();
        let c4 = cyclic(4).unwrap();
        let k4 = dihedral(2).unwrap();
        assert_eq!(byott_count(&k4, &c4, &limits).unwrap(), 3);
        assert_eq!(byott_count(&c4, &k4, &limits).unwrap(), 1);
        assert!(matches!(
            byott_count(&c4, &cyclic(5).unwrap(), &limits),
            Err(Error::OrderMismatch { .. })
        ));
        assert!(matches!(byott_quotient(2, 4, 3), Err(Error::Consistency(_))));
    }

    #[test]
    fn direct_r_tiny() {
        let cat = Catalog::standard();
        let r = direct_r(&cyclic(2).unwrap(), cat).unwrap();
        assert_eq!(r.len(), 1);
        let r = direct_r(&cyclic(3).unwrap(), cat).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].iso_class, "C3");
        assert!(matches!(
            direct_r(&dicyclic(3).unwrap(), cat),
            Err(Error::OrderBound { .. })
        ));
    }

    #[test]
    fn psi_extremes() {
        let g = cyclic(6).unwrap();
        let records = direct_r(&g, Catalog::standard()).unwrap();
        for rec in &records {
            let members = rec.subgroup.members();
            let trivial = psi(&rec.subgroup, &members[..1], &g).unwrap();
            assert_eq!(trivial.members(), &[0]);
            let full = psi(&rec.subgroup, members, &g).unwrap();
            assert_eq!(full.order(), 6);
        }
    }

    #[test]
    fn record_text_round_trip() {
        let g = dihedral(3).unwrap();
        let records = direct_r(&g, Catalog::standard()).unwrap();
        let text = records[0].to_text();
        assert!(text.starts_with("regular degree=6 class="));
        assert_eq!(RegularSubgroupRecord::from_text(&text).unwrap(), records[0]);
        assert!(RegularSubgroupRecord::from_text("regular degree=2 class=C2 ambient=x\n[0 1]\n").is_err());
    }
}
