use std::fmt;

use crate::error::{Error, Result};

/// A bijection on the points `0..degree`, stored in image notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree || touched[a as usize] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation(inv)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points() == 0
    }

    pub fn order(&self) -> usize {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut order = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// A permutation group stored as its full, sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Closes `gens` under composition. Fails once more than `limit`
    /// elements have been produced.
    pub fn generate(degree: usize, gens: &[Permutation], limit: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} does not have degree {degree}"
                )));
            }
        }
        let elements = close(degree, gens, limit)?;
        Ok(Self::from_elements_unchecked(degree, elements))
    }

    /// Wraps an element list that is already known to be a group.
    pub fn from_elements_unchecked(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_transitive(&self) -> bool {
        let mut hit = vec![false; self.degree];
        for p in &self.elements {
            hit[p.apply(0)] = true;
        }
        hit.iter().all(|&h| h)
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.order() == self.degree
            && self.is_transitive()
            && self.elements.iter().all(|p| p.is_identity() || p.is_fixed_point_free())
    }

    /// True when conjugation by `p` maps the group onto itself.
    pub fn is_normalized_by(&self, p: &Permutation) -> bool {
        let inv = p.inverse();
        self.elements
            .iter()
            .all(|q| self.contains(&p.compose(q).compose(&inv)))
    }

    /// Abstract Cayley table of the group. The identity permutation sorts
    /// first, so it lands on index 0 as `FiniteGroup` requires.
    pub fn to_finite_group(&self) -> Result<crate::FiniteGroup> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                let c = a.compose(b);
                let idx = self
                    .index_of(&c)
                    .ok_or_else(|| Error::NotAGroup("element list not closed".into()))?;
                table.push(idx as u32);
            }
        }
        crate::FiniteGroup::from_table(n, table)
    }
}

pub(crate) fn close(degree: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    use std::collections::HashSet;
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let next = elements[i].compose(g);
            if !seen.contains(&next) {
                if elements.len() >= limit {
                    return Err(Error::ClosureBound { limit });
                }
                seen.insert(next.clone());
                elements.push(next);
            }
        }
        i += 1;
    }
    Ok(elements)
}
