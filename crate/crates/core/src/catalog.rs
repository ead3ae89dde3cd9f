//! Registry of named groups.
//!
//! Every group of order at most 24 is listed (in the customary small-group
//! numbering, which is also the row order of the census tables), followed
//! by a handful of larger named groups and the abelian 2- and 3-groups of
//! order at most 256.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{
    self, action_from_generators, direct_product_all, semidirect_product, FiniteGroup, GroupMap, Invariants,
};
use crate::partitions::{partitions, Partition};
use crate::perm::Permutation;
use crate::Limits;

/// Orders `1..=COMPLETE_UP_TO` are covered completely.
pub const COMPLETE_UP_TO: usize = 24;

/// Number of isomorphism classes of groups of order `n`, `n = 1..=24`.
pub const GROUP_COUNTS: [usize; COMPLETE_UP_TO] =
    [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

/// How a semidirect product's acting group acts on the normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Cyclic normal and acting groups; the acting generator sends `x ↦ x^u`.
    Power(usize),
    /// Each listed acting-group element sends the listed normal-subgroup
    /// generators to the given images.
    Generators {
        acting: Vec<usize>,
        normal: Vec<usize>,
        images: Vec<Vec<usize>>,
    },
    /// Cyclic acting group on `C_p × C_p` through `v ↦ Av`.
    Matrix { p: usize, m: [[usize; 2]; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `SL₂(F₃)` acting on the eight nonzero vectors of `F₃²`.
    Sl2F3,
    Direct(Vec<Recipe>),
    Semidirect {
        normal: Box<Recipe>,
        acting: Box<Recipe>,
        action: Action,
    },
}

impl Recipe {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            Recipe::Cyclic(n) => group::cyclic(*n),
            Recipe::Dihedral(m) => group::dihedral(*m),
            Recipe::Dicyclic(m) => group::dicyclic(*m),
            Recipe::Symmetric(n) => group::symmetric(*n),
            Recipe::Alternating(n) => group::alternating(*n),
            Recipe::Sl2F3 => sl2_f3(),
            Recipe::Direct(parts) => {
                let groups = parts.iter().map(Recipe::build).collect::<Result<Vec<_>>>()?;
                direct_product_all(&groups)
            }
            Recipe::Semidirect { normal, acting, action } => {
                let n = normal.build()?;
                let h = acting.build()?;
                let (h_gens, autos) = match action {
                    Action::Power(u) => {
                        let r = n.order();
                        (vec![1], vec![GroupMap::from_images((0..r).map(|x| ((x * u) % r) as u32).collect())])
                    }
                    Action::Generators { acting, normal, images } => {
                        let autos = images
                            .iter()
                            .map(|img| {
                                GroupMap::from_generator_images(&n, &n, normal, img)
                                    .ok_or_else(|| Error::InvalidAction(format!("{img:?} does not extend")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        (acting.clone(), autos)
                    }
                    Action::Matrix { p, m } => {
                        let p = *p;
                        let map = (0..p * p)
                            .map(|v| {
                                let (x, y) = (v / p, v % p);
                                let nx = (m[0][0] * x + m[0][1] * y) % p;
                                let ny = (m[1][0] * x + m[1][1] * y) % p;
                                (nx * p + ny) as u32
                            })
                            .collect();
                        (vec![1], vec![GroupMap::from_images(map)])
                    }
                };
                let action = action_from_generators(&n, &h, &h_gens, &autos)?;
                semidirect_product(&n, &h, &action)
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Cyclic(n) => write!(f, "cyclic({n})"),
            Recipe::Dihedral(m) => write!(f, "dihedral({m})"),
            Recipe::Dicyclic(m) => write!(f, "dicyclic({m})"),
            Recipe::Symmetric(n) => write!(f, "symmetric({n})"),
            Recipe::Alternating(n) => write!(f, "alternating({n})"),
            Recipe::Sl2F3 => write!(f, "permutations(8; [[1,1],[0,1]], [[0,2],[1,0]] on F3^2)"),
            Recipe::Direct(parts) => {
                write!(f, "direct(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Recipe::Semidirect { normal, acting, action } => {
                write!(f, "semidirect({normal}, {acting}, ")?;
                match action {
                    Action::Power(u) => write!(f, "x->x^{u}")?,
                    Action::Generators { acting, normal, images } => {
                        write!(f, "gens {acting:?} send {normal:?} to {images:?}")?
                    }
                    Action::Matrix { p, m } => write!(f, "matrix {m:?} mod {p}")?,
                }
                write!(f, ")")
            }
        }
    }
}

fn sl2_f3() -> Result<FiniteGroup> {
    let vectors: Vec<(usize, usize)> = (0..9).map(|v| (v / 3, v % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[usize; 2]; 2]| -> Result<Permutation> {
        let images = vectors
            .iter()
            .map(|&(x, y)| {
                let w = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                vectors.iter().position(|&v| v == w).unwrap() as u32
            })
            .collect();
        Permutation::from_images(images)
    };
    let gens = [act([[1, 1], [0, 1]])?, act([[0, 2], [1, 0]])?];
    group::from_permutation_generators(8, &gens, &Limits::default())
}

/// `C_{p^λ₁} × ⋯ × C_{p^λ_t}`.
pub fn abelian_p_group(lambda: &Partition, p: usize) -> Result<FiniteGroup> {
    let factors = lambda
        .parts()
        .iter()
        .map(|&e| group::cyclic(p.pow(e as u32)))
        .collect::<Result<Vec<_>>>()?;
    direct_product_all(&factors)
}

/// Catalog name of an abelian `p`-group type, factors in nondecreasing
/// order: `(1, 3)` at `p = 2` is `C2xC8`.
pub fn abelian_name(lambda: &Partition, p: usize) -> String {
    lambda
        .parts()
        .iter()
        .map(|&e| format!("C{}", p.pow(e as u32)))
        .collect::<Vec<_>>()
        .join("x")
}

/// Converts an ASCII catalog name to table notation, e.g. `(C6xC2):C2` to
/// `(C₆ × C₂) ⋊ C₂`.
pub fn display_name(ascii: &str) -> String {
    if ascii == "SL(2,3)" {
        return "SL₂(𝔽₃)".to_string();
    }
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut out = String::new();
    for c in ascii.chars() {
        match c {
            '0'..='9' => out.push(SUB[c as usize - '0' as usize]),
            'x' => out.push_str(" × "),
            ':' => out.push_str(" ⋊ "),
            'o' => out.push_str(" ∘ "),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Debug)]
pub struct CatalogEntry {
    name: String,
    display: String,
    order: usize,
    recipe: Recipe,
    group: OnceLock<FiniteGroup>,
    invariants: OnceLock<Invariants>,
}

impl CatalogEntry {
    fn new(name: &str, order: usize, recipe: Recipe) -> Self {
        CatalogEntry {
            display: display_name(name),
            name: name.to_string(),
            order,
            recipe,
            group: OnceLock::new(),
            invariants: OnceLock::new(),
        }
    }

    /// ASCII name, as accepted on the command line.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Name in table notation.
    pub fn display(&self) -> &str {
        &self.display
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// The group, built on first use. Recipes are fixed, so a construction
    /// failure is a bug in the catalog itself.
    pub fn group(&self) -> &FiniteGroup {
        self.group.get_or_init(|| {
            let g = self
                .recipe
                .build()
                .unwrap_or_else(|e| panic!("catalog recipe for {} failed: {e}", self.name));
            assert_eq!(g.order(), self.order, "catalog entry {} has the wrong order", self.name);
            g.with_name(self.name.clone())
        })
    }

    pub fn invariants(&self) -> &Invariants {
        self.invariants.get_or_init(|| Invariants::of(self.group()))
    }
}

#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

fn c(n: usize) -> Recipe {
    Recipe::Cyclic(n)
}
fn d(m: usize) -> Recipe {
    Recipe::Dihedral(m)
}
fn q(m: usize) -> Recipe {
    Recipe::Dicyclic(m)
}
fn s(n: usize) -> Recipe {
    Recipe::Symmetric(n)
}
fn a(n: usize) -> Recipe {
    Recipe::Alternating(n)
}
fn x(parts: Vec<Recipe>) -> Recipe {
    Recipe::Direct(parts)
}
fn sd(normal: Recipe, acting: Recipe, action: Action) -> Recipe {
    Recipe::Semidirect {
        normal: Box::new(normal),
        acting: Box::new(acting),
        action,
    }
}

impl Catalog {
    /// The shared, lazily built catalog.
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(Catalog::build)
    }

    fn build() -> Catalog {
        use Action::*;
        let small: Vec<(&str, usize, Recipe)> = vec![
            ("C1", 1, c(1)),
            ("C2", 2, c(2)),
            ("C3", 3, c(3)),
            ("C4", 4, c(4)),
            ("C2xC2", 4, x(vec![c(2), c(2)])),
            ("C5", 5, c(5)),
            ("S3", 6, s(3)),
            ("C6", 6, c(6)),
            ("C7", 7, c(7)),
            ("C8", 8, c(8)),
            ("C4xC2", 8, x(vec![c(4), c(2)])),
            ("D4", 8, d(4)),
            ("Q2", 8, q(2)),
            ("C2xC2xC2", 8, x(vec![c(2), c(2), c(2)])),
            ("C9", 9, c(9)),
            ("C3xC3", 9, x(vec![c(3), c(3)])),
            ("D5", 10, d(5)),
            ("C10", 10, c(10)),
            ("C11", 11, c(11)),
            ("Q3", 12, q(3)),
            ("C12", 12, c(12)),
            ("A4", 12, a(4)),
            ("D6", 12, d(6)),
            ("C6xC2", 12, x(vec![c(6), c(2)])),
            ("C13", 13, c(13)),
            ("D7", 14, d(7)),
            ("C14", 14, c(14)),
            ("C15", 15, c(15)),
            ("C16", 16, c(16)),
            ("C4xC4", 16, x(vec![c(4), c(4)])),
            // C4×C2 = ⟨a⟩×⟨b⟩ with a = index 2, b = index 1.
            (
                "(C4xC2):C2",
                16,
                sd(
                    x(vec![c(4), c(2)]),
                    c(2),
                    Generators {
                        acting: vec![1],
                        normal: vec![2, 1],
                        images: vec![vec![3, 1]],
                    },
                ),
            ),
            ("C4:C4", 16, sd(c(4), c(4), Power(3))),
            ("C8xC2", 16, x(vec![c(8), c(2)])),
            ("C8:C2", 16, sd(c(8), c(2), Power(5))),
            ("D8", 16, d(8)),
            ("QD16", 16, sd(c(8), c(2), Power(3))),
            ("Q4", 16, q(4)),
            ("C4xC2xC2", 16, x(vec![c(4), c(2), c(2)])),
            ("C2xD4", 16, x(vec![c(2), d(4)])),
            ("C2xQ2", 16, x(vec![c(2), q(2)])),
            (
                "C4oD4",
                16,
                sd(
                    x(vec![c(4), c(2)]),
                    c(2),
                    Generators {
                        acting: vec![1],
                        normal: vec![2, 1],
                        images: vec![vec![2, 5]],
                    },
                ),
            ),
            ("C2xC2xC2xC2", 16, x(vec![c(2), c(2), c(2), c(2)])),
            ("C17", 17, c(17)),
            ("D9", 18, d(9)),
            ("C18", 18, c(18)),
            ("C3xS3", 18, x(vec![c(3), s(3)])),
            (
                "(C3xC3):C2",
                18,
                sd(x(vec![c(3), c(3)]), c(2), Matrix { p: 3, m: [[2, 0], [0, 2]] }),
            ),
            ("C6xC3", 18, x(vec![c(6), c(3)])),
            ("C19", 19, c(19)),
            ("Q5", 20, q(5)),
            ("C20", 20, c(20)),
            ("C5:C4", 20, sd(c(5), c(4), Power(2))),
            ("D10", 20, d(10)),
            ("C10xC2", 20, x(vec![c(10), c(2)])),
            ("C7:C3", 21, sd(c(7), c(3), Power(2))),
            ("C21", 21, c(21)),
            ("D11", 22, d(11)),
            ("C22", 22, c(22)),
            ("C23", 23, c(23)),
            ("C3:C8", 24, sd(c(3), c(8), Power(2))),
            ("C24", 24, c(24)),
            ("SL(2,3)", 24, Recipe::Sl2F3),
            // Q₂ = ⟨a, b⟩ with a = index 1, b = index 4; a centralizes C₃, b inverts it.
            (
                "C3:Q2",
                24,
                sd(
                    c(3),
                    q(2),
                    Generators {
                        acting: vec![1, 4],
                        normal: vec![1],
                        images: vec![vec![1], vec![2]],
                    },
                ),
            ),
            ("C4xS3", 24, x(vec![c(4), s(3)])),
            ("D12", 24, d(12)),
            ("C2x(C3:C4)", 24, x(vec![c(2), q(3)])),
            // D₄ = ⟨r, s⟩ with r = index 1, s = index 4; kernel {1, r², s, r²s}.
            (
                "(C6xC2):C2",
                24,
                sd(
                    c(3),
                    d(4),
                    Generators {
                        acting: vec![1, 4],
                        normal: vec![1],
                        images: vec![vec![2], vec![1]],
                    },
                ),
            ),
            ("C12xC2", 24, x(vec![c(12), c(2)])),
            ("C3xD4", 24, x(vec![c(3), d(4)])),
            ("C3xQ2", 24, x(vec![c(3), q(2)])),
            ("S4", 24, s(4)),
            ("C2xA4", 24, x(vec![c(2), a(4)])),
            ("C2xC2xS3", 24, x(vec![c(2), c(2), s(3)])),
            ("C6xC2xC2", 24, x(vec![c(6), c(2), c(2)])),
        ];
        let extras: Vec<(&str, usize, Recipe)> = vec![
            ("A5", 60, a(5)),
            ("C5xA4", 60, x(vec![c(5), a(4)])),
            ("(C5xC5):C3", 75, sd(x(vec![c(5), c(5)]), c(3), Matrix { p: 5, m: [[0, 4], [1, 4]] })),
            ("C75", 75, c(75)),
            ("S5", 120, s(5)),
            ("C120", 120, c(120)),
        ];
        let mut entries: Vec<CatalogEntry> = small
            .into_iter()
            .chain(extras)
            .map(|(name, order, recipe)| CatalogEntry::new(name, order, recipe))
            .collect();
        for p in [2usize, 3] {
            for total in 1.. {
                let order = p.pow(total as u32);
                if order > 256 {
                    break;
                }
                if order <= COMPLETE_UP_TO {
                    continue;
                }
                for lambda in partitions(total) {
                    let recipe = match lambda.parts() {
                        [e] => c(p.pow(*e as u32)),
                        parts => x(parts.iter().map(|&e| c(p.pow(e as u32))).collect()),
                    };
                    entries.push(CatalogEntry::new(&abelian_name(&lambda, p), order, recipe));
                }
            }
        }
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Looks up an entry by ASCII or table name.
    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        let name = name.trim();
        if let Some(e) = self.entries.iter().find(|e| e.name == name || e.display == name) {
            return Ok(e);
        }
        if let Some(e) = self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name)) {
            return Ok(e);
        }
        let suggestion = self
            .entries
            .iter()
            .map(|e| (strsim::levenshtein(&e.name.to_lowercase(), &name.to_lowercase()), &e.name))
            .min()
            .filter(|(dist, _)| *dist <= 3)
            .map(|(_, n)| n.clone());
        Err(Error::UnknownGroup {
            name: name.to_string(),
            suggestion,
        })
    }

    pub fn covers_order(&self, n: usize) -> bool {
        (1..=COMPLETE_UP_TO).contains(&n)
    }

    /// All groups of order `n`, in table order.
    pub fn groups_of_order(&self, n: usize) -> Result<Vec<&CatalogEntry>> {
        if !self.covers_order(n) {
            return Err(Error::UncoveredOrder(n));
        }
        Ok(self.entries.iter().filter(|e| e.order == n).collect())
    }

    /// Every entry of order `n`, complete or not.
    pub fn entries_of_order(&self, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.order == n)
    }

    /// The entry isomorphic to `g`, if any.
    ///
    /// For completely covered orders a unique invariant match settles it;
    /// otherwise candidates are confirmed by an explicit isomorphism.
    pub fn classify(&self, g: &FiniteGroup) -> Option<&CatalogEntry> {
        self.classify_with(g, &Invariants::of(g))
    }

    pub fn classify_with(&self, g: &FiniteGroup, inv: &Invariants) -> Option<&CatalogEntry> {
        let candidates: Vec<&CatalogEntry> =
            self.entries_of_order(g.order()).filter(|e| e.invariants() == inv).collect();
        if candidates.len() == 1 && self.covers_order(g.order()) {
            return Some(candidates[0]);
        }
        candidates
            .into_iter()
            .find(|e| group::is_isomorphic(g, e.group()).is_some())
    }
}
