//! Brute-force oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hgs_core::catalog::abelian_p_group;
use hgs_core::lattice::{all_subgroups, invariant_subgroups};
use hgs_core::partitions::Partition;
use hgs_core::{FiniteGroup, GroupMap, Limits, Subgroup};

/// The abelian p-group of type `lambda` with explicit coordinates.
pub struct AbelianModel {
    pub p: usize,
    pub lambda: Vec<usize>,
    pub radices: Vec<usize>,
    pub group: FiniteGroup,
}

impl AbelianModel {
    pub fn new(lambda: &Partition, p: usize) -> Self {
        let group = abelian_p_group(lambda, p).unwrap();
        let radices: Vec<usize> = lambda.parts().iter().map(|&e| p.pow(e as u32)).collect();
        let model = AbelianModel {
            p,
            lambda: lambda.parts().to_vec(),
            radices,
            group,
        };
        // Coordinates must add componentwise.
        for a in model.group.elements() {
            for b in model.group.elements() {
                let (ca, cb) = (model.coords(a), model.coords(b));
                let sum: Vec<usize> = ca.iter().zip(&cb).zip(&model.radices).map(|((x, y), r)| (x + y) % r).collect();
                assert_eq!(model.index(&sum), model.group.mul(a, b));
            }
        }
        model
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; self.radices.len()];
        for i in (0..self.radices.len()).rev() {
            c[i] = x % self.radices[i];
            x /= self.radices[i];
        }
        c
    }

    pub fn index(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.radices).fold(0, |acc, (x, r)| acc * r + x)
    }

    /// The homomorphism sending basis vector `j` to `images[j]`.
    pub fn map_from_basis(&self, images: &[usize]) -> GroupMap {
        let img: Vec<Vec<usize>> = images.iter().map(|&y| self.coords(y)).collect();
        let out = self
            .group
            .elements()
            .map(|x| {
                let c = self.coords(x);
                let mut v = vec![0usize; c.len()];
                for (j, &cj) in c.iter().enumerate() {
                    for k in 0..v.len() {
                        v[k] = (v[k] + cj * img[j][k]) % self.radices[k];
                    }
                }
                self.index(&v) as u32
            })
            .collect();
        GroupMap::from_images(out)
    }

    fn basis(&self) -> Vec<usize> {
        (0..self.radices.len())
            .map(|j| {
                let mut c = vec![0; self.radices.len()];
                c[j] = 1;
                self.index(&c)
            })
            .collect()
    }

    /// Images still generate the group iff they span `A/pA`, i.e. their
    /// closure is everything.
    fn generates(&self, images: &[usize]) -> bool {
        self.group.closure(images).len() == self.group.order()
    }

    /// Automorphisms moving exactly one basis vector. Together they
    /// generate `Aut(A)`, so invariance under them is characteristicity.
    pub fn single_basis_changes(&self) -> Vec<GroupMap> {
        let basis = self.basis();
        let mut out = Vec::new();
        for j in 0..basis.len() {
            for y in self.group.elements() {
                if y == basis[j] || !self.radices[j].is_multiple_of(self.group.element_order(y)) {
                    continue;
                }
                let mut images = basis.clone();
                images[j] = y;
                if self.generates(&images) {
                    out.push(self.map_from_basis(&images));
                }
            }
        }
        out
    }

    /// Type of a subgroup, read off from `|H ∩ Ω_k|`.
    pub fn subgroup_type(&self, h: &Subgroup) -> Partition {
        let top = self.lambda.iter().copied().max().unwrap_or(0);
        let mut omega = vec![1usize];
        for k in 1..=top {
            let bound = self.p.pow(k as u32);
            omega.push(h.members().iter().filter(|&&x| bound.is_multiple_of(self.group.element_order(x))).count());
        }
        let mut conj = Vec::new();
        for k in 1..=top {
            let ratio = omega[k] / omega[k - 1];
            let mut e = 0;
            let mut q = 1;
            while q < ratio {
                q *= self.p;
                e += 1;
            }
            assert_eq!(q, ratio);
            if e > 0 {
                conj.push(e);
            }
        }
        Partition::new(conj).unwrap().conjugate()
    }
}

pub fn log_p(mut n: usize, p: usize) -> usize {
    let mut e = 0;
    while n > 1 {
        assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}

/// Subgroup counts by type.
pub fn brute_type_counts(model: &AbelianModel) -> BTreeMap<Partition, u128> {
    let mut counts = BTreeMap::new();
    for h in all_subgroups(&model.group, &Limits::default()).unwrap() {
        *counts.entry(model.subgroup_type(&h)).or_insert(0) += 1;
    }
    counts
}

/// Characteristic subgroup counts per exponent `r = 0..=n`.
pub fn brute_char_counts(model: &AbelianModel) -> Vec<u64> {
    let subs = all_subgroups(&model.group, &Limits::default()).unwrap();
    let chars = invariant_subgroups(&subs, &model.single_basis_changes());
    let n: usize = model.lambda.iter().sum();
    let mut counts = vec![0u64; n + 1];
    for h in chars {
        counts[log_p(h.order(), model.p)] += 1;
    }
    counts
}

/// Every `(λ, p)` with `p ∈ {2, 3}`, `|λ| ≤ 6` and `p^{|λ|} ≤ 256`.
pub fn abelian_range() -> Vec<(Partition, usize)> {
    let mut out = Vec::new();
    for p in [2usize, 3] {
        for n in 0..=6u32 {
            if p.pow(n) > 256 {
                break;
            }
            for l in hgs_core::partitions::partitions(n as usize) {
                out.push((l, p));
            }
        }
    }
    out
}

/// Index-2 subgroups counted as kernels of the surjections onto `C₂`,
/// found by trying every assignment of a generating set into `C₂`.
pub fn index_two_by_homomorphisms(g: &FiniteGroup) -> usize {
    let c2 = hgs_core::group::cyclic(2).unwrap();
    let gens = hgs_core::group::generating_set(g);
    (1..1usize << gens.len())
        .filter(|mask| {
            let images: Vec<usize> = (0..gens.len()).map(|i| (mask >> i) & 1).collect();
            GroupMap::from_generator_images(g, &c2, &gens, &images).is_some()
        })
        .count()
}
