//! One line per acceptance criterion, then a single verdict.
//!
//! Run with `cargo test -p hgs-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use hgs_core::group::{cyclic, direct_product, direct_product_all, semidirect_product};
use hgs_core::holomorph::{count_r, direct_r, lambda_stable_subgroups, psi};
use hgs_core::lattice::{all_subgroups, index_two_count, squares_subgroup, z2_u2};
use hgs_core::obstruction::{census, char_obstruction, z_statistics, Verdict};
use hgs_core::partitions::{alpha, canonical_counts, nc_np_table, partitions};
use hgs_core::{Catalog, GroupMap, Limits};
use support::{abelian_range, brute_char_counts, brute_type_counts, index_two_by_homomorphisms, AbelianModel};

const CENSUS_12: &str = include_str!("../../core/tests/data/census_12.csv");
const CENSUS_24: &str = include_str!("../../core/tests/data/census_24.csv");

type Outcome = Result<String, String>;

fn hgs(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hgs"))
        .args(args)
        .env_remove("HGS_CACHE")
        .output()
        .expect("hgs runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn census_golden(order: usize, golden: &str) -> Outcome {
    let start = Instant::now();
    let (out, code) = hgs(&["census", "--order", &order.to_string(), "--format", "csv"]);
    check(code == 0, format!("exit {code}"))?;
    let out = String::from_utf8(out).map_err(|e| e.to_string())?;
    let cells = golden.lines().skip(1).map(|l| l.split(',').count() - 1).sum::<usize>();
    if out != golden {
        let diff = out.lines().zip(golden.lines()).filter(|(a, b)| a != b).count();
        return Err(format!("{diff} rows differ from the reference table"));
    }
    Ok(format!("{cells} cells exact in {:.1?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let cat = Catalog::standard();
    let limits = Limits::default();
    for n in 1..=24 {
        let want = match n {
            12 => (3, 25),
            16 => (5, 196),
            18 => (2, 25),
            24 => (20, 225),
            _ => (0, cat.groups_of_order(n).unwrap().len().pow(2)),
        };
        let got = z_statistics(cat, n, &limits).map_err(|e| e.to_string())?;
        check(got == want, format!("n={n}: got {got:?}, want {want:?}"))?;
    }
    Ok("|Z|, |R|² exact for n = 1..24".into())
}

fn criterion_4() -> Outcome {
    let cat = Catalog::standard();
    let limits = Limits::default();
    let mut notes = Vec::new();
    for n in [12, 24] {
        // Building the table fails if a certified cell enumerates nonzero.
        let t = census(cat, n, &limits).map_err(|e| e.to_string())?;
        notes.push(format!("n={n}: {} certified of {} zero", t.certified_cells(), t.zero_cells()));
        if n == 24 {
            check(t.zero_cells() == 76 && t.certified_cells() == 20, notes.join("; "))?;
        }
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Outcome {
    let cat = Catalog::standard();
    let i2 = |n: &str| index_two_count(cat.lookup(n).unwrap().group());
    let c334 = direct_product_all(&[cyclic(3).unwrap(), cyclic(3).unwrap(), cyclic(4).unwrap()]).unwrap();
    let named = [
        i2("C2xA4"),
        i2("C12xC2"),
        i2("C3xD4"),
        i2("C4xS3"),
        index_two_count(&c334),
        i2("A4"),
    ];
    check(named == [1, 3, 3, 3, 1, 0], format!("named values {named:?}"))?;
    let allowed = |v: usize| v == 0 || ((v + 1).is_power_of_two() && matches!(v % 6, 1 | 3));
    let small: Vec<_> = cat.entries().iter().filter(|e| e.order() <= 64).collect();
    let mut pairs = 0;
    for a in &small {
        for b in &small {
            if a.order() * b.order() > 256 {
                continue;
            }
            let (x, y) = (index_two_count(a.group()), index_two_count(b.group()));
            let p = index_two_count(&direct_product(a.group(), b.group()).unwrap());
            check(p == x * y + x + y && allowed(p), format!("{} x {}", a.name(), b.name()))?;
            pairs += 1;
        }
    }
    for e in cat.entries() {
        check(allowed(index_two_count(e.group())), e.name())?;
    }
    let pow = |u: usize, k: usize, r: usize| (0..k).fold(1 % r, |acc, _| acc * u % r);
    let mut semidirect = 0;
    for r in 1..=48usize {
        for s in 1..=48 / r {
            for u in (0..r).filter(|&u| num_gcd(u, r) == 1 && pow(u, s, r) == 1 % r) {
                let action: Vec<GroupMap> = (0..s)
                    .map(|j| GroupMap::from_images((0..r).map(|i| (i * pow(u, j, r) % r) as u32).collect()))
                    .collect();
                let g = semidirect_product(&cyclic(r).unwrap(), &cyclic(s).unwrap(), &action).unwrap();
                let sq = |i: usize, n: usize| n % 2 == 1 || i.is_multiple_of(2);
                let want: Vec<usize> = (0..r * s).filter(|&x| sq(x / s, r) && sq(x % s, s)).collect();
                check(squares_subgroup(&g).members() == want.as_slice(), format!("r={r} s={s} u={u}"))?;
                semidirect += 1;
            }
        }
    }
    Ok(format!("named values exact; {pairs} product pairs; {semidirect} cyclic semidirect products"))
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion_6() -> Outcome {
    let cat = Catalog::standard();
    for (n, want) in [(12, (1, 2)), (24, (1, 4))] {
        let groups: Vec<_> = cat.groups_of_order(n).unwrap().iter().map(|e| e.group()).collect();
        let got = z2_u2(&groups).map_err(|e| e.to_string())?;
        check(got == want, format!("n={n}: {got:?}"))?;
    }
    Ok("(1,2) at 12, (1,4) at 24".into())
}

fn criterion_7() -> Outcome {
    let cat = Catalog::standard();
    let limits = Limits::default();
    let start = Instant::now();
    for (g, m, w) in [("A5", "C5xA4", 20), ("S5", "C120", 15), ("(C5xC5):C3", "C75", 15)] {
        let r = char_obstruction(cat.lookup(g).unwrap().group(), cat.lookup(m).unwrap().group(), &limits)
            .map_err(|e| e.to_string())?;
        check(r.verdict == Verdict::EmptyCertified, format!("{g},{m}: {r}"))?;
        check(r.witness.map(|x| x.m) == Some(w), format!("{g},{m}: {r}"))?;
    }
    Ok(format!("witnesses m = 20, 15, 15 in {:.1?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let reference: [(u64, u64); 26] = [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 5),
        (1, 7),
        (4, 11),
        (4, 15),
        (10, 22),
        (13, 30),
        (23, 42),
        (27, 56),
        (52, 77),
        (60, 101),
        (94, 135),
        (118, 176),
        (175, 231),
        (213, 297),
        (310, 385),
        (373, 490),
        (528, 627),
        (643, 792),
        (862, 1002),
        (1044, 1255),
        (1403, 1575),
        (1699, 1958),
        (2199, 2436),
    ];
    let rows = nc_np_table(26).map_err(|e| e.to_string())?;
    for (row, want) in rows.iter().zip(reference) {
        check((row.nc, row.np) == want, format!("n={}: ({}, {})", row.n, row.nc, row.np))?;
    }
    Ok("nc, np exact for n = 1..26".into())
}

fn criterion_9a() -> Outcome {
    let cat = Catalog::standard();
    let limits = Limits::default();
    let mut cells = 0;
    for n in 1..=8 {
        let groups = cat.groups_of_order(n).unwrap();
        for g in &groups {
            let mut found: BTreeMap<String, u64> = BTreeMap::new();
            for rec in direct_r(g.group(), cat).map_err(|e| e.to_string())? {
                *found.entry(rec.iso_class).or_default() += 1;
            }
            for m in &groups {
                let byott = count_r(cat, g.name(), m.name(), &limits).map_err(|e| e.to_string())?;
                let direct = found.get(m.name()).copied().unwrap_or(0);
                check(byott == direct, format!("R({},[{}]): {byott} vs {direct}", g.name(), m.name()))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells agree for orders 1..8"))
}

fn criterion_9b() -> Outcome {
    let mut types = 0;
    for (lambda, p) in abelian_range() {
        let brute = brute_type_counts(&AbelianModel::new(&lambda, p));
        for r in 0..=lambda.n() {
            for mu in partitions(r) {
                let want = brute.get(&mu).copied().unwrap_or(0);
                let got = alpha(&lambda, &mu, p as u64).map_err(|e| e.to_string())?;
                check(got == want, format!("λ={lambda} μ={mu} p={p}: {got} vs {want}"))?;
                types += 1;
            }
        }
    }
    Ok(format!("{types} (λ, μ, p) triples agree"))
}

fn criterion_9c() -> Outcome {
    let mut bad: Vec<(String, usize, bool)> = Vec::new();
    let mut total = 0;
    for (lambda, p) in abelian_range() {
        let brute = brute_char_counts(&AbelianModel::new(&lambda, p));
        let canon = canonical_counts(&lambda);
        if brute != canon {
            let extra = brute.iter().zip(&canon).all(|(b, c)| b >= c);
            bad.push((lambda.to_string(), p, extra));
        }
        total += 1;
    }
    if bad.is_empty() {
        return Ok(format!("{total} types agree"));
    }
    let primes: std::collections::BTreeSet<usize> = bad.iter().map(|b| b.1).collect();
    let listed: Vec<String> = bad.iter().map(|(l, p, _)| format!("{l}@p={p}")).collect();
    let extra = if bad.iter().all(|b| b.2) {
        "brute force finds more characteristic subgroups in each"
    } else {
        "counts differ in both directions"
    };
    Err(format!(
        "{} of {total} types disagree, at p in {primes:?}; {extra}: {}",
        bad.len(),
        listed.join(" ")
    ))
}

fn criterion_9d() -> Outcome {
    let cat = Catalog::standard();
    let limits = Limits::default();
    let mut checked = 0;
    for e in cat.entries().iter().filter(|e| e.order() <= 8) {
        for rec in direct_r(e.group(), cat).map_err(|e| e.to_string())? {
            let mut images = Vec::new();
            for p in lambda_stable_subgroups(&rec.subgroup, e.group(), &limits).map_err(|e| e.to_string())? {
                let j = psi(&rec.subgroup, &p, e.group()).map_err(|e| e.to_string())?;
                check(j.order() == p.len(), format!("{}: |Ψ(P)| ≠ |P|", e.name()))?;
                images.push(j.members().to_vec());
                checked += 1;
            }
            let n = images.len();
            images.sort();
            images.dedup();
            check(images.len() == n, format!("{}: Ψ not injective", e.name()))?;
        }
    }
    Ok(format!("{checked} stable subgroups mapped injectively"))
}

fn criterion_9e() -> Outcome {
    let limits = Limits::default();
    let mut by_lattice = 0;
    let entries = Catalog::standard().entries();
    for e in entries {
        let g = e.group();
        let i2 = index_two_count(g);
        check(i2 == index_two_by_homomorphisms(g), format!("{}: kernels", e.name()))?;
        if g.order() % 2 == 0 && g.order() <= 128 {
            let half = all_subgroups(g, &limits).unwrap().iter().filter(|h| 2 * h.order() == g.order()).count();
            check(i2 == half, format!("{}: lattice", e.name()))?;
            by_lattice += 1;
        }
    }
    Ok(format!("{} groups by kernels, {by_lattice} also by full lattice", entries.len()))
}

fn criterion_10() -> Outcome {
    let cat = Catalog::standard();
    let mut runs: Vec<Vec<String>> = vec![
        vec!["census".into(), "--order".into(), "12".into()],
        vec!["census".into(), "--order".into(), "24".into(), "--format".into(), "json".into()],
        vec!["census".into(), "--order".into(), "16".into(), "--witnesses".into()],
        vec!["ncnp".into(), "--max".into(), "26".into()],
        vec!["catalog".into(), "list".into()],
        vec!["alpha".into(), "--lambda".into(), "1,2,3".into(), "--mu".into(), "1,2".into(), "--p".into(), "3".into()],
        vec!["canonical".into(), "--lambda".into(), "1,2,4".into()],
    ];
    for n in 1..=24 {
        runs.push(vec!["z2u2".into(), "--order".into(), n.to_string()]);
    }
    for e in cat.entries() {
        runs.push(vec!["i2".into(), "--g".into(), e.name().into()]);
        if e.order() <= 24 {
            runs.push(vec!["lattice".into(), "--g".into(), e.name().into()]);
        }
        if e.order() <= 8 {
            runs.push(vec!["direct-r".into(), "--g".into(), e.name().into()]);
        }
    }
    for g in cat.groups_of_order(12).unwrap() {
        for m in cat.groups_of_order(12).unwrap() {
            runs.push(vec!["obstruct".into(), "--g".into(), g.name().into(), "--m".into(), m.name().into()]);
            runs.push(vec!["hgs".into(), "--g".into(), g.name().into(), "--m".into(), m.name().into()]);
        }
    }
    for args in &runs {
        let mut one: Vec<&str> = vec!["--jobs", "1"];
        let mut four: Vec<&str> = vec!["--jobs", "4"];
        one.extend(args.iter().map(String::as_str));
        four.extend(args.iter().map(String::as_str));
        let (a, b) = (hgs(&one), hgs(&four));
        check(a.1 == 0 && a == b, format!("`{}` differs or fails", args.join(" ")))?;
    }
    Ok(format!("{} invocations byte-identical at 1 and 4 threads", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 order-12 census", || census_golden(12, CENSUS_12)),
        ("2 order-24 census", || census_golden(24, CENSUS_24)),
        ("3 obstruction counts", criterion_3),
        ("4 obstruction vs enumeration", criterion_4),
        ("5 index-two suite", criterion_5),
        ("6 z2/u2", criterion_6),
        ("7 named obstructions", criterion_7),
        ("8 nc/np table", criterion_8),
        ("9a Byott consistency", criterion_9a),
        ("9b subgroup-type counts", criterion_9b),
        ("9c canonical tuples", criterion_9c),
        ("9d orbit map", criterion_9d),
        ("9e index two by enumeration", criterion_9e),
        ("10 determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(note) => println!("criterion {name}: PASS ({note})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({why})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
