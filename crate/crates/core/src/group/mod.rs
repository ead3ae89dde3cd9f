//! Finite groups as explicit Cayley tables.
//!
//! Elements are indices `0..n` and the identity is always index `0`.
//! Element order is construction order; every constructor documents how
//! indices map to elements.

pub(crate) mod iso;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::Limits;

pub use iso::{automorphism_group, generating_set, is_isomorphic, AutomorphismGroup, Invariants};

/// Groups up to this order have associativity checked on every triple.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    element_orders: Vec<u32>,
    name: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates and wraps a row-major Cayley table.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if table.len() != order * order {
            return Err(Error::NotAGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let n = order;
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] == a + 1 {
                    return Err(Error::NotAGroup(format!("row {a} repeats {x}")));
                }
                seen[x] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] == b + 1 {
                    return Err(Error::NotAGroup(format!("column {b} repeats {x}")));
                }
                seen[x] = b + 1;
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
            if table[b * n + a] != 0 {
                return Err(Error::NotAGroup(format!("{a} has no two-sided inverse")));
            }
            inverses[a] = b as u32;
        }
        let mut g = FiniteGroup {
            order,
            table,
            inverses,
            element_orders: Vec::new(),
            name: None,
        };
        g.check_associativity()?;
        g.element_orders = (0..n).map(|x| g.compute_element_order(x) as u32).collect();
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
            }
            return Ok(());
        }
        // Elements c with (ab)c = a(bc) for all a, b form a set closed under
        // products. So it is enough to check a generating set, provided
        // right multiplication by it reaches every element from 0.
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut frontier = vec![0usize];
        let mut count = 1;
        while count < n {
            let next = reached.iter().position(|&r| !r).unwrap();
            gens.push(next);
            // Re-run the walk with the enlarged generating set.
            reached.iter_mut().for_each(|r| *r = false);
            reached[0] = true;
            frontier.clear();
            frontier.push(0);
            count = 1;
            let mut i = 0;
            while i < frontier.len() {
                let x = frontier[i];
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                        count += 1;
                    }
                }
                i += 1;
            }
        }
        for &c in &gens {
            for a in 0..n {
                for b in 0..n {
                    if bad(a, b, c) {
                        return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order(a);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Smallest `k ≥ 1` with `x^k = 1`.
    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders[x] as usize
    }

    /// Number of elements of each order, keyed by order.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for x in self.elements() {
            *counts.entry(self.element_order(x)).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = self.closure_unsorted(gens);
        members.sort_unstable();
        members
    }

    pub(crate) fn closure_unsorted(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order;
        let mut comms = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                comms[self.commutator(a, b)] = true;
            }
        }
        let gens: Vec<usize> = (0..n).filter(|&x| comms[x]).collect();
        self.closure(&gens)
    }

    /// Conjugacy class sizes, indexed by element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let n = self.order;
        let mut size = vec![0usize; n];
        let mut done = vec![false; n];
        let mut mark = vec![false; n];
        for x in 0..n {
            if done[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.mul(self.mul(g, x), self.inv(g));
                if !mark[y] {
                    mark[y] = true;
                    class.push(y);
                }
            }
            for &y in &class {
                size[y] = class.len();
                done[y] = true;
                mark[y] = false;
            }
        }
        size
    }

    /// Cayley table restricted to `members` (which must be a subgroup
    /// containing 0 first), as a new group.
    pub fn subgroup_as_group(&self, members: &[usize]) -> Result<FiniteGroup> {
        let mut index = vec![u32::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i as u32;
        }
        if members.first() != Some(&0) {
            return Err(Error::Precondition("subgroup must list the identity first".into()));
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let c = index[self.mul(a, b)];
                if c == u32::MAX {
                    return Err(Error::Precondition("members are not closed".into()));
                }
                table.push(c);
            }
        }
        FiniteGroup::from_table(k, table)
    }

    /// Versioned text record: header lines followed by the flattened table.
    pub fn to_record(&self) -> String {
        let mut out = String::from("hgs-group v1\n");
        out.push_str(&format!("name {}\n", self.name.as_deref().unwrap_or("-")));
        out.push_str(&format!("order {}\n", self.order));
        out.push_str("table\n");
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("hgs-group v1") {
            return Err(Error::Parse("missing `hgs-group v1` header".into()));
        }
        let name = lines
            .next()
            .and_then(|l| l.strip_prefix("name "))
            .ok_or_else(|| Error::Parse("missing name line".into()))?
            .trim()
            .to_string();
        let order: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("order "))
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse("missing order line".into()))?;
        if lines.next().map(str::trim) != Some("table") {
            return Err(Error::Parse("missing table marker".into()));
        }
        let table = lines
            .flat_map(str::split_whitespace)
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let g = FiniteGroup::from_table(order, table)?;
        Ok(if name == "-" { g } else { g.with_name(name) })
    }
}

/// `C_n` with `a·b = (a + b) mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    FiniteGroup::from_table(n, table)
}

/// `D_m = ⟨r, s | r^m = s² = 1, srs = r⁻¹⟩` of order `2m`; `r^i s^j` is
/// index `i + m·j`.
pub fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let n = 2 * m;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i, j) = (x % m, x / m);
        for y in 0..n {
            let (k, l) = (y % m, y / m);
            let (ri, sj) = if j == 0 {
                ((i + k) % m, l)
            } else {
                ((i + m - k) % m, (1 + l) % 2)
            };
            table.push((ri + m * sj) as u32);
        }
    }
    FiniteGroup::from_table(n, table)
}

/// `Q_m = ⟨a, b | a^{2m} = 1, b² = a^m, b⁻¹ab = a⁻¹⟩` of order `4m`;
/// `a^i b^j` is index `i + 2m·j`.
pub fn dicyclic(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let h = 2 * m;
    let n = 2 * h;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i, j) = (x % h, x / h);
        for y in 0..n {
            let (k, l) = (y % h, y / h);
            let (ai, bj) = match (j, l) {
                (0, _) => ((i + k) % h, l),
                (_, 0) => ((i + h - k) % h, 1),
                _ => ((i + h - k + m) % h, 0),
            };
            table.push((ai + h * bj) as u32);
        }
    }
    FiniteGroup::from_table(n, table)
}

/// Closes permutation generators and tabulates the result. Elements are
/// indexed in breadth-first discovery order, identity first.
pub fn from_permutation_generators(
    degree: usize,
    gens: &[Permutation],
    limits: &Limits,
) -> Result<FiniteGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!("{g} is not on {degree} points")));
        }
    }
    let elements = perm::close(degree, gens, limits.closure)?;
    let n = elements.len();
    if n > limits.table {
        return Err(Error::OrderBound {
            what: "Cayley table",
            order: n,
            limit: limits.table,
        });
    }
    let index: HashMap<&Permutation, u32> =
        elements.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            // Row a, column b holds a·b = "apply b, then a".
            table.push(index[&a.compose(b)]);
        }
    }
    FiniteGroup::from_table(n, table)
}

/// `S_n` on `0..n`, generated by `(0 1)` and `(0 1 … n−1)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    let gens = if n == 1 {
        vec![]
    } else {
        vec![
            Permutation::from_cycles(n, &[&[0, 1]])?,
            Permutation::from_cycles(n, &[&cycle])?,
        ]
    };
    from_permutation_generators(n, &gens, &Limits::default())
}

/// `A_n` on `0..n`, generated by the 3-cycles `(i i+1 i+2)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let gens = (0..n.saturating_sub(2))
        .map(|i| {
            let i = i as u32;
            Permutation::from_cycles(n, &[&[i, i + 1, i + 2]])
        })
        .collect::<Result<Vec<_>>>()?;
    from_permutation_generators(n, &gens, &Limits::default())
}

/// `g × h` with `(x, y)` at index `x·|h| + y`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let action = vec![GroupMap::identity(g.order()); h.order()];
    semidirect_product(g, h, &action)
}

pub fn direct_product_all(factors: &[FiniteGroup]) -> Result<FiniteGroup> {
    let mut acc = cyclic(1)?;
    for f in factors {
        acc = direct_product(&acc, f)?;
    }
    Ok(acc)
}

/// `g ⋊ h` on pairs `(x, y)` (index `x·|h| + y`) with
/// `(x, y)(x', y') = (x·φ_y(x'), y·y')`, where `action[y] = φ_y`.
pub fn semidirect_product(g: &FiniteGroup, h: &FiniteGroup, action: &[GroupMap]) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng
        .checked_mul(nh)
        .filter(|&n| n <= Limits::default().table)
        .ok_or(Error::OrderBound {
            what: "product",
            order: ng.saturating_mul(nh),
            limit: Limits::default().table,
        })?;
    if action.len() != nh {
        return Err(Error::InvalidAction(format!(
            "{} maps given for a group of order {nh}",
            action.len()
        )));
    }
    for (y, phi) in action.iter().enumerate() {
        if !phi.is_automorphism(g) {
            return Err(Error::InvalidAction(format!("image of {y} is not an automorphism")));
        }
    }
    for y in 0..nh {
        for z in 0..nh {
            let lhs = &action[h.mul(y, z)];
            if (0..ng).any(|x| lhs.apply(x) != action[y].apply(action[z].apply(x))) {
                return Err(Error::InvalidAction(format!("φ({y}·{z}) ≠ φ({y})∘φ({z})")));
            }
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (x, y) = (a / nh, a % nh);
        for b in 0..n {
            let (x2, y2) = (b / nh, b % nh);
            let px = g.mul(x, action[y].apply(x2));
            table.push((px * nh + h.mul(y, y2)) as u32);
        }
    }
    FiniteGroup::from_table(n, table)
}

/// Extends an assignment of automorphisms of `g` to generators of `h` into
/// a full action `h → Aut(g)`, failing if it is not a homomorphism.
pub fn action_from_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    h_gens: &[usize],
    autos: &[GroupMap],
) -> Result<Vec<GroupMap>> {
    let nh = h.order();
    let mut action: Vec<Option<GroupMap>> = vec![None; nh];
    action[0] = Some(GroupMap::identity(g.order()));
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let y = queue[i];
        for (&s, phi) in h_gens.iter().zip(autos) {
            let z = h.mul(y, s);
            let img = action[y].as_ref().unwrap().compose(phi);
            match &action[z] {
                None => {
                    action[z] = Some(img);
                    queue.push(z);
                }
                Some(existing) if *existing != img => {
                    return Err(Error::InvalidAction(format!("inconsistent image for element {z}")));
                }
                Some(_) => {}
            }
        }
        i += 1;
    }
    action
        .into_iter()
        .map(|a| a.ok_or_else(|| Error::InvalidAction("generators do not generate the acting group".into())))
        .collect()
}

/// A map between groups given by the image of every source element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    images: Vec<u32>,
}

impl GroupMap {
    pub fn identity(n: usize) -> Self {
        GroupMap {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Self {
        GroupMap { images }
    }

    /// The homomorphism determined by sending `gens[i]` to `images[i]`, if
    /// one exists and is defined on all of `source`.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Self> {
        let map = iso::extend_homomorphism(source, target, gens, images, false)?;
        if map.contains(&u32::MAX) {
            return None;
        }
        Some(GroupMap { images: map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        GroupMap { images: inv }
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.images.len() == source.order()
            && self.images.iter().all(|&x| (x as usize) < target.order())
            && source.elements().all(|x| {
                source
                    .elements()
                    .all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
            })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&x| {
            let x = x as usize;
            x < seen.len() && !std::mem::replace(&mut seen[x], true)
        })
    }

    pub fn is_automorphism(&self, g: &FiniteGroup) -> bool {
        self.is_bijective() && self.is_homomorphism(g, g)
    }

    /// Image of a set of elements, sorted.
    pub fn image_of(&self, members: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}
