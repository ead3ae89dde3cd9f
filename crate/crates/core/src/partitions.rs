//! Partitions as types of finite abelian p-groups: conjugates, Gaussian
//! binomials, subgroup-type counts, canonical tuples and the nc/np table.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`partitions`] and [`nc_np_table`].
pub const MAX_PARTITION_N: usize = 60;

/// A partition stored with nondecreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Transpose of the Young diagram, again nondecreasing.
    pub fn conjugate(&self) -> Partition {
        let mut parts = conjugate_desc(&self.parts);
        parts.reverse();
        Partition { parts }
    }

    /// Parses `"1,3"` or `"1 3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `c_i = #{parts ≥ i}` for `i = 1, 2, ...`, nonincreasing.
fn conjugate_desc(parts: &[usize]) -> Vec<usize> {
    let top = parts.iter().copied().max().unwrap_or(0);
    (1..=top).map(|i| parts.iter().filter(|&&p| p >= i).count()).collect()
}

/// All partitions of `n`, nondecreasing parts, lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in min..=n {
            if n - k != 0 && n - k < k {
                continue;
            }
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `∏_{i=1}^{k} (p^i − 1)`, checked.
fn q_factorial(k: u64, p: u64) -> Result<u128> {
    let mut acc: u128 = 1;
    let mut pi: u128 = 1;
    for _ in 0..k {
        pi = pi.checked_mul(p as u128).ok_or(Error::Overflow("gaussian binomial"))?;
        acc = acc.checked_mul(pi - 1).ok_or(Error::Overflow("gaussian binomial"))?;
    }
    Ok(acc)
}

/// Number of `b`-dimensional subspaces of `F_p^a`.
pub fn gaussian_binomial(a: u64, b: u64, p: u64) -> Result<u128> {
    check_prime(p)?;
    if b > a {
        return Err(Error::InvalidArgument(format!("gaussian binomial needs b ≤ a, got a={a}, b={b}")));
    }
    let num = q_factorial(a, p)?;
    let den = q_factorial(b, p)?
        .checked_mul(q_factorial(a - b, p)?)
        .ok_or(Error::Overflow("gaussian binomial"))?;
    if num % den != 0 {
        return Err(Error::Consistency("gaussian binomial division is not exact".into()));
    }
    Ok(num / den)
}

/// Number of subgroups of type `mu` in the abelian p-group of type `lambda`.
pub fn alpha(lambda: &Partition, mu: &Partition, p: u64) -> Result<u128> {
    check_prime(p)?;
    let a = conjugate_desc(&lambda.parts);
    let b = conjugate_desc(&mu.parts);
    if b.len() > a.len() || b.iter().zip(&a).any(|(bi, ai)| bi > ai) {
        return Ok(0);
    }
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0) as u64;
    let mut total: u128 = 1;
    for i in 0..a.len() {
        let (ai, bi, bn) = (at(&a, i), at(&b, i), at(&b, i + 1));
        let exp = (ai - bi) * bn;
        let power = (p as u128)
            .checked_pow(u32::try_from(exp).map_err(|_| Error::Overflow("alpha"))?)
            .ok_or(Error::Overflow("alpha"))?;
        let g = gaussian_binomial(ai - bn, bi - bn, p)?;
        total = total
            .checked_mul(power)
            .and_then(|t| t.checked_mul(g))
            .ok_or(Error::Overflow("alpha"))?;
    }
    Ok(total)
}

/// A tuple `a` aligned with a partition `λ` (both nondecreasing) with
/// `0 ≤ a_i ≤ λ_i` and `0 ≤ a_{i+1} − a_i ≤ λ_{i+1} − λ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalTuple {
    entries: Vec<usize>,
}

impl CanonicalTuple {
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn r(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_canonical_for(&self, lambda: &Partition) -> bool {
        let l = &lambda.parts;
        let a = &self.entries;
        a.len() == l.len()
            && a.iter().zip(l).all(|(x, y)| x <= y)
            && (1..a.len()).all(|i| a[i] >= a[i - 1] && a[i] - a[i - 1] <= l[i] - l[i - 1])
    }
}

impl fmt::Display for CanonicalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All canonical tuples for `lambda` summing to `r`, lexicographic.
pub fn canonical_tuples(lambda: &Partition, r: usize) -> Vec<CanonicalTuple> {
    fn go(l: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<CanonicalTuple>) {
        if i == l.len() {
            if left == 0 {
                out.push(CanonicalTuple { entries: cur.clone() });
            }
            return;
        }
        let (lo, hi) = match i {
            0 => (0, l[0]),
            _ => (cur[i - 1], (cur[i - 1] + l[i] - l[i - 1]).min(l[i])),
        };
        // Later entries are at least the current one.
        let rest = l.len() - i;
        for a in lo..=hi {
            if a * rest > left {
                break;
            }
            cur.push(a);
            go(l, i + 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&lambda.parts, 0, r, &mut Vec::new(), &mut out);
    out
}

/// Number of canonical tuples for `lambda` at each `r = 0..=n`.
pub fn canonical_counts(lambda: &Partition) -> Vec<u64> {
    let l = &lambda.parts;
    let n = lambda.n();
    if l.is_empty() {
        return vec![1];
    }
    // ways[a][s]: tuples so far ending in entry a with sum s.
    let mut ways = vec![vec![0u64; n + 1]; l[l.len() - 1] + 1];
    for a in 0..=l[0] {
        ways[a][a] += 1;
    }
    for i in 1..l.len() {
        let mut next = vec![vec![0u64; n + 1]; ways.len()];
        for prev in 0..=l[i - 1] {
            for s in 0..=n {
                let w = ways[prev][s];
                if w == 0 {
                    continue;
                }
                for a in prev..=(prev + l[i] - l[i - 1]).min(l[i]) {
                    if s + a <= n {
                        next[a][s + a] += w;
                    }
                }
            }
        }
        ways = next;
    }
    (0..=n).map(|s| ways.iter().map(|row| row[s]).sum()).collect()
}

/// Smallest `r` with at least two canonical tuples, if any.
pub fn has_multiple_char_order(lambda: &Partition) -> Option<usize> {
    canonical_counts(lambda).iter().position(|&c| c >= 2)
}

/// One row of the nc/np table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcNpRow {
    pub n: usize,
    pub nc: u64,
    pub np: u64,
}

impl NcNpRow {
    /// `nc/np` in lowest terms.
    pub fn ratio(&self) -> (u64, u64) {
        let g = self.nc.gcd(&self.np);
        (self.nc / g, self.np / g)
    }

    pub fn ratio_decimal(&self) -> String {
        decimal_3(self.nc, self.np)
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.n, self.nc, self.np, self.ratio_decimal())
    }
}

/// `num/den` to three decimals: exact when the expansion stops by then,
/// otherwise truncated to exactly three digits.
pub fn decimal_3(num: u64, den: u64) -> String {
    let whole = num / den;
    let mut rem = num % den;
    if rem == 0 {
        return whole.to_string();
    }
    let mut digits = String::new();
    for _ in 0..3 {
        rem *= 10;
        digits.push(char::from(b'0' + (rem / den) as u8));
        rem %= den;
        if rem == 0 {
            break;
        }
    }
    format!("{whole}.{digits}")
}

/// Rows `n = 1..=max_n`.
pub fn nc_np_table(max_n: usize) -> Result<Vec<NcNpRow>> {
    if max_n > MAX_PARTITION_N {
        return Err(Error::OrderBound {
            what: "partition table",
            order: max_n,
            limit: MAX_PARTITION_N,
        });
    }
    Ok((1..=max_n)
        .map(|n| {
            let all = partitions(n);
            let nc = all.iter().filter(|l| has_multiple_char_order(l).is_some()).count();
            NcNpRow {
                n,
                nc: nc as u64,
                np: all.len() as u64,
            }
        })
        .collect())
}

pub const NC_NP_HEADER: &str = "n,nc,np,ratio";
