//! Exact probabilities for tiny instances by exhaustive enumeration.
//!
//! The law of the residual graph does not depend on which `gamma` labels are
//! deleted, so the deleted set is fixed to the highest labels. Picks made by
//! deleted nodes never touch the residual graph, so only the survivors'
//! selection sets are enumerated: `C(n-1, k)^(n-gamma)` equally likely profiles.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::Exact;

/// Largest `n` accepted by the enumerator.
pub const MAX_NODES: usize = 7;
/// Upper limit on `C(n-1, k)^n`.
pub const MAX_PROFILES: u64 = 10_000_000;

/// Event whose probability is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// The residual graph is connected.
    Connected,
    /// Fewer than `lambda` survivors lie outside the largest component.
    OutsideGiantLt(usize),
    /// The lowest-labelled survivor has no residual edge.
    FirstSurvivorIsolated,
}

/// `C(m, k)` as `u64`.
fn choose(m: usize, k: usize) -> u64 {
    if k > m {
        0
    } else {
        binomial(m as u64, k as u64)
    }
}

/// Lexicographic rank of a sorted `k`-subset of `0..m`.
pub fn rank_subset(subset: &[usize], m: usize) -> u64 {
    let k = subset.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &s) in subset.iter().enumerate() {
        for y in next..s {
            rank += choose(m - y - 1, k - i - 1);
        }
        next = s + 1;
    }
    rank
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(mut rank: u64, m: usize, k: usize) -> Vec<usize> {
    debug_assert!(rank < choose(m, k));
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for i in 0..k {
        loop {
            let block = choose(m - x - 1, k - i - 1);
            if rank < block {
                out.push(x);
                x += 1;
                break;
            }
            rank -= block;
            x += 1;
        }
    }
    out
}

fn check_instance(n: usize, k: usize) -> Result<u64> {
    if n < 2 || k < 1 || k >= n {
        return Err(invalid(format!(
            "need n >= 2 and 1 <= k <= n-1, got n = {n}, k = {k}"
        )));
    }
    if n > MAX_NODES {
        return Err(Error::InstanceTooLarge(format!(
            "n = {n} exceeds {MAX_NODES}"
        )));
    }
    let per_node = choose(n - 1, k);
    let total = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(per_node).filter(|&t| t <= MAX_PROFILES)
    });
    if total.is_none() {
        return Err(Error::InstanceTooLarge(format!(
            "C({}, {k})^{n} exceeds {MAX_PROFILES}",
            n - 1
        )));
    }
    Ok(per_node)
}

/// Exact probability of `predicate` on `H(n; k)` with `gamma` nodes deleted
/// uniformly at random.
pub fn exact_probability(n: usize, k: usize, gamma: usize, predicate: Predicate) -> Result<Exact> {
    if gamma > n {
        return Err(invalid(format!("cannot delete {gamma} of {n} nodes")));
    }
    exact_probability_with_deleted(
        n,
        k,
        &((n - gamma + 1) as u32..=n as u32).collect::<Vec<_>>(),
        predicate,
    )
}

/// As [`exact_probability`] with the deleted labels (1-based) given explicitly.
pub fn exact_probability_with_deleted(
    n: usize,
    k: usize,
    deleted: &[u32],
    predicate: Predicate,
) -> Result<Exact> {
    let per_node = check_instance(n, k)?;
    let mut gone = 0u32;
    for &d in deleted {
        if d == 0 || d as usize > n {
            return Err(invalid(format!("deleted label {d} outside 1..={n}")));
        }
        gone |= 1 << (d - 1);
    }
    let survivors: Vec<usize> = (0..n).filter(|i| gone >> i & 1 == 0).collect();
    let m = survivors.len();
    if let Predicate::OutsideGiantLt(0) = predicate {
        return Err(invalid("lambda must be at least 1"));
    }
    if predicate == Predicate::FirstSurvivorIsolated && m == 0 {
        return Err(invalid("no survivor to test for isolation"));
    }

    // options[s][rank]: residual-neighbor bitmask (over survivor positions)
    // of survivor s when its selection set has the given rank.
    let options: Vec<Vec<u32>> = survivors
        .iter()
        .map(|&own| {
            (0..per_node)
                .map(|rank| {
                    unrank_subset(rank, n - 1, k)
                        .into_iter()
                        .fold(0u32, |mask, x| {
                            let target = if x >= own { x + 1 } else { x };
                            match survivors.binary_search(&target) {
                                Ok(pos) => mask | 1 << pos,
                                Err(_) => mask,
                            }
                        })
                })
                .collect()
        })
        .collect();

    let total = per_node.pow(m as u32);
    let favorable: u64 = if m == 0 {
        u64::from(evaluate(&[], predicate))
    } else {
        (0..per_node)
            .into_par_iter()
            .map(|first| {
                let mut digits = vec![0u64; m];
                digits[0] = first;
                let mut hits = 0u64;
                let mut adj = vec![0u32; m];
                loop {
                    adj.iter_mut().for_each(|a| *a = 0);
                    for (s, &d) in digits.iter().enumerate() {
                        let picks = options[s][d as usize];
                        adj[s] |= picks;
                        let mut rest = picks;
                        while rest != 0 {
                            let t = rest.trailing_zeros() as usize;
                            adj[t] |= 1 << s;
                            rest &= rest - 1;
                        }
                    }
                    hits += u64::from(evaluate(&adj, predicate));
                    // odometer over digits[1..]
                    let mut i = 1;
                    while i < m {
                        digits[i] += 1;
                        if digits[i] < per_node {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                    if i == m {
                        break hits;
                    }
                }
            })
            .sum()
    };
    Ok(Exact::new(BigUint::from(favorable), BigUint::from(total)))
}

fn evaluate(adj: &[u32], predicate: Predicate) -> bool {
    match predicate {
        Predicate::FirstSurvivorIsolated => adj[0] == 0,
        Predicate::Connected => component_sizes(adj).len() <= 1,
        Predicate::OutsideGiantLt(lambda) => {
            let sizes = component_sizes(adj);
            let largest = sizes.iter().copied().max().unwrap_or(0);
            adj.len() - largest < lambda
        }
    }
}

fn component_sizes(adj: &[u32]) -> Vec<usize> {
    let all = if adj.is_empty() {
        0
    } else {
        (1u32 << adj.len()) - 1
    };
    let mut unseen = all;
    let mut sizes = Vec::new();
    while unseen != 0 {
        let start = unseen.trailing_zeros();
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        unseen &= !comp;
        sizes.push(comp.count_ones() as usize);
    }
    sizes
}

/// Decimal value of an exact probability.
pub fn to_f64(p: &Exact) -> f64 {
    match (p.numer().to_f64(), p.denom().to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}
