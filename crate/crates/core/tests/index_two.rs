use hgs_core::group::{cyclic, direct_product, direct_product_all, semidirect_product};
use hgs_core::lattice::{index_two_count, squares_subgroup};
use hgs_core::{Catalog, GroupMap};

fn i2_of(name: &str) -> usize {
    index_two_count(Catalog::standard().lookup(name).unwrap().group())
}

fn product_formula(a: usize, b: usize) -> usize {
    a * b + a + b
}

fn allowed_value(i2: usize) -> bool {
    i2 == 0 || ((i2 + 1).is_power_of_two() && matches!(i2 % 6, 1 | 3))
}

#[test]
fn named_values() {
    assert_eq!(i2_of("C2xA4"), 1);
    assert_eq!(i2_of("C12xC2"), 3);
    assert_eq!(i2_of("C3xD4"), 3);
    assert_eq!(i2_of("C4xS3"), 3);
    assert_eq!(i2_of("A4"), 0);
    assert_eq!(i2_of("SL(2,3)"), 0);
    let c334 = direct_product_all(&[cyclic(3).unwrap(), cyclic(3).unwrap(), cyclic(4).unwrap()]).unwrap();
    assert_eq!(index_two_count(&c334), 1);
}

#[test]
fn product_formula_over_catalog_pairs() {
    let entries: Vec<_> = Catalog::standard().entries().iter().filter(|e| e.order() <= 64).collect();
    let mut pairs = 0;
    for a in &entries {
        for b in &entries {
            if a.order() * b.order() > 256 {
                continue;
            }
            let p = direct_product(a.group(), b.group()).unwrap();
            let got = index_two_count(&p);
            let (ia, ib) = (index_two_count(a.group()), index_two_count(b.group()));
            assert_eq!(got, product_formula(ia, ib), "{} x {}", a.name(), b.name());
            assert!(allowed_value(got), "{} x {}: {got}", a.name(), b.name());
            pairs += 1;
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn three_factor_expansion() {
    let cat = Catalog::standard();
    let names = ["C2", "C4xC2", "S3", "A4", "C3"];
    for x in names {
        for y in names {
            for z in names {
                let gs: Vec<_> = [x, y, z].iter().map(|n| cat.lookup(n).unwrap().group().clone()).collect();
                let (a, b, c) = (index_two_count(&gs[0]), index_two_count(&gs[1]), index_two_count(&gs[2]));
                let e1 = a + b + c;
                let e2 = a * b + a * c + b * c;
                let e3 = a * b * c;
                assert_eq!(index_two_count(&direct_product_all(&gs).unwrap()), e1 + e2 + e3);
            }
        }
    }
}

#[test]
fn catalog_values_are_allowed() {
    for e in Catalog::standard().entries() {
        let i2 = index_two_count(e.group());
        assert!(allowed_value(i2), "{}: {i2}", e.name());
        if e.order() % 2 == 1 {
            assert_eq!(i2, 0);
        }
    }
}

fn power_mod(u: usize, k: usize, r: usize) -> usize {
    (0..k).fold(1 % r, |acc, _| acc * u % r)
}

/// Squares of `C_r ⋊_u C_s` are exactly `C_r² ⋊ C_s²`.
#[test]
fn cyclic_semidirect_squares() {
    let mut checked = 0;
    for r in 1..=48 {
        for s in 1..=48 / r {
            let (cr, cs) = (cyclic(r).unwrap(), cyclic(s).unwrap());
            let units = (0..r).filter(|&u| num_integer::gcd(u, r) == 1 && power_mod(u, s, r) == 1 % r);
            for u in units {
                let action: Vec<GroupMap> = (0..s)
                    .map(|j| {
                        let uj = power_mod(u, j, r);
                        GroupMap::from_images((0..r).map(|i| (i * uj % r) as u32).collect())
                    })
                    .collect();
                let g = semidirect_product(&cr, &cs, &action).unwrap();
                let in_square = |i: usize, n: usize| n % 2 == 1 || i.is_multiple_of(2);
                let want: Vec<usize> = (0..r * s).filter(|&x| in_square(x / s, r) && in_square(x % s, s)).collect();
                assert_eq!(squares_subgroup(&g).members(), want.as_slice(), "r={r} s={s} u={u}");
                assert_eq!(
                    index_two_count(&g),
                    product_formula(index_two_count(&cr), index_two_count(&cs)),
                    "r={r} s={s} u={u}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 150, "{checked}");
}
