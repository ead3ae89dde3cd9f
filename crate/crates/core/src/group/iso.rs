//! Isomorphism testing and automorphism enumeration by backtracking over
//! images of a small generating set.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{FiniteGroup, GroupMap};
use crate::error::{Error, Result};
use crate::Limits;

/// Isomorphism invariants used to screen candidate pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub order: usize,
    pub order_profile: Vec<(usize, usize)>,
    pub center: usize,
    /// Orders of `G ⊇ G' ⊇ G'' ⊇ …` until the series stabilizes.
    pub derived_series: Vec<usize>,
    /// `(element order, class size, number of elements)`.
    pub class_profile: Vec<(usize, usize, usize)>,
}

impl Invariants {
    pub fn of(g: &FiniteGroup) -> Self {
        let mut derived_series = vec![g.order()];
        let mut current: Vec<usize> = g.elements().collect();
        loop {
            let next = derived_of(g, &current);
            if next.len() == current.len() {
                break;
            }
            derived_series.push(next.len());
            current = next;
        }
        let sizes = g.class_sizes();
        let mut profile: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        for x in g.elements() {
            *profile.entry((g.element_order(x), sizes[x])).or_default() += 1;
        }
        Invariants {
            order: g.order(),
            order_profile: g.order_profile(),
            center: g.center().len(),
            derived_series,
            class_profile: profile.into_iter().map(|((o, s), c)| (o, s, c)).collect(),
        }
    }
}

fn derived_of(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut comms = HashSet::new();
    for &a in members {
        for &b in members {
            comms.insert(g.commutator(a, b));
        }
    }
    let gens: Vec<usize> = comms.into_iter().collect();
    g.closure(&gens)
}

/// A generating set built greedily: each step adds the element outside the
/// current subgroup whose addition yields the largest subgroup.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut size = 1;
    while size < n {
        let mut best = (0usize, usize::MAX);
        let mut trial = gens.clone();
        trial.push(0);
        for x in (0..n).filter(|&x| !inside[x]) {
            *trial.last_mut().unwrap() = x;
            let s = g.closure_unsorted(&trial).len();
            if s > best.0 {
                best = (s, x);
            }
            if s == n {
                break;
            }
        }
        gens.push(best.1);
        inside.iter_mut().for_each(|v| *v = false);
        let members = g.closure_unsorted(&gens);
        for &m in &members {
            inside[m] = true;
        }
        size = members.len();
    }
    gens
}

/// Builds the homomorphism on `⟨gens⟩` sending `gens[i] ↦ images[i]` by a
/// walk over the Cayley graph, checking every edge. Entries outside
/// `⟨gens⟩` are `u32::MAX`. Returns `None` when the assignment does not
/// extend (or, with `injective`, when the extension is not injective).
pub(crate) fn extend_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    injective: bool,
) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; source.order()];
    let mut used = vec![false; target.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let img = target.mul(fx, t) as u32;
            if map[y] == u32::MAX {
                if injective && used[img as usize] {
                    return None;
                }
                used[img as usize] = true;
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

fn element_signatures(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let sizes = g.class_sizes();
    g.elements().map(|x| (g.element_order(x), sizes[x])).collect()
}

/// Depth-first search over images of `gens`. `visit` receives each
/// complete isomorphism and returns `false` to stop the search.
fn search_isomorphisms(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(Vec<u32>) -> bool,
) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_homomorphism(g, h, gens, images, true).expect("checked on the way down");
        debug_assert!(map.iter().all(|&x| x != u32::MAX));
        return visit(map);
    }
    for &c in &candidates[depth] {
        if images.contains(&c) {
            continue;
        }
        images.push(c);
        let ok = extend_homomorphism(g, h, &gens[..=depth], images, true).is_some();
        if ok && !search_isomorphisms(g, h, gens, candidates, images, visit) {
            images.pop();
            return false;
        }
        images.pop();
    }
    true
}

fn candidate_lists(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize]) -> Vec<Vec<usize>> {
    let sg = element_signatures(g);
    let sh = element_signatures(h);
    gens.iter()
        .map(|&s| h.elements().filter(|&y| sh[y] == sg[s]).collect())
        .collect()
}

/// An isomorphism `g → h`, if the groups are isomorphic.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    if g.order() != h.order() || Invariants::of(g) != Invariants::of(h) {
        return None;
    }
    isomorphism_after_screening(g, h)
}

/// Backtracking without the invariant screen, for callers that already
/// compared invariants.
pub(crate) fn isomorphism_after_screening(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    let gens = generating_set(g);
    let candidates = candidate_lists(g, h, &gens);
    let mut found = None;
    search_isomorphisms(g, h, &gens, &candidates, &mut Vec::new(), &mut |map| {
        found = Some(GroupMap::from_images(map));
        false
    });
    found
}

/// The full automorphism group, plus a generating subset of it.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    maps: Vec<GroupMap>,
    generators: Vec<GroupMap>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Every automorphism, sorted by image list; the identity comes first.
    pub fn maps(&self) -> &[GroupMap] {
        &self.maps
    }

    /// Automorphisms generating the whole group, chosen greedily in sorted
    /// order.
    pub fn generators(&self) -> &[GroupMap] {
        &self.generators
    }
}

/// Enumerates `Aut(g)`.
pub fn automorphism_group(g: &FiniteGroup, limits: &Limits) -> Result<AutomorphismGroup> {
    if g.order() > limits.automorphism {
        return Err(Error::OrderBound {
            what: "automorphism group",
            order: g.order(),
            limit: limits.automorphism,
        });
    }
    let gens = generating_set(g);
    let candidates = candidate_lists(g, g, &gens);
    // Split on the first generator's image; each branch is independent.
    let first: Vec<usize> = candidates.first().cloned().unwrap_or_default();
    // |Aut| can dwarf |G| (GL₆(2) for C₂⁶), so the count is capped too.
    let found = AtomicUsize::new(0);
    let cap = limits.closure;
    let mut maps: Vec<GroupMap> = if gens.is_empty() {
        vec![GroupMap::identity(g.order())]
    } else {
        first
            .par_iter()
            .flat_map_iter(|&c| {
                let mut out = Vec::new();
                if extend_homomorphism(g, g, &gens[..1], &[c], true).is_some() {
                    let mut images = vec![c];
                    search_isomorphisms(g, g, &gens, &candidates, &mut images, &mut |m| {
                        out.push(GroupMap::from_images(m));
                        found.fetch_add(1, Ordering::Relaxed) < cap
                    });
                }
                out
            })
            .collect()
    };
    if found.load(Ordering::Relaxed) > cap {
        return Err(Error::OrderBound {
            what: "automorphism count",
            order: found.load(Ordering::Relaxed),
            limit: cap,
        });
    }
    maps.sort_unstable();
    let generators = greedy_generators(&maps);
    Ok(AutomorphismGroup { maps, generators })
}

fn greedy_generators(maps: &[GroupMap]) -> Vec<GroupMap> {
    let mut gens: Vec<GroupMap> = Vec::new();
    let mut closure: HashSet<GroupMap> = HashSet::new();
    let mut elements: Vec<GroupMap> = Vec::new();
    if let Some(id) = maps.first() {
        closure.insert(id.clone());
        elements.push(id.clone());
    }
    for m in maps {
        if closure.len() == maps.len() {
            break;
        }
        if closure.contains(m) {
            continue;
        }
        gens.push(m.clone());
        // Every old element times every generator, then keep closing.
        let mut i = 0;
        while i < elements.len() {
            for s in &gens {
                let next = elements[i].compose(s);
                if closure.insert(next.clone()) {
                    elements.push(next);
                }
            }
            i += 1;
        }
    }
    gens
}
