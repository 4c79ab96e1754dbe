use rayon::prelude::*;

use super::pass::{enumerate_pass, PairingEvent};
use super::queue::{BallSystem, MultilineQueue};
use super::Composition;

/// All `k`-subsets of `0..n` as indicator vectors, in lexicographic order of the vectors.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<bool>> {
    fn go(i: usize, n: usize, k: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let placed = cur.iter().filter(|&&b| b).count();
        if placed > k || placed + (n - i) < k {
            return;
        }
        if i == n {
            out.push(cur.clone());
            return;
        }
        cur.push(false);
        go(i + 1, n, k, cur, out);
        cur.pop();
        cur.push(true);
        go(i + 1, n, k, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Ball systems whose row 1 is the support of `mu` and whose row counts follow its sorted parts.
pub fn ball_systems(mu: &Composition) -> Vec<BallSystem> {
    let n = mu.len();
    let l = mu.max_part();
    if l == 0 {
        return vec![BallSystem::empty(n)];
    }
    let bottom: Vec<bool> = mu.parts().iter().map(|&p| p > 0).collect();
    let mut systems: Vec<Vec<Vec<bool>>> = vec![vec![bottom]];
    for r in 2..=l {
        let choices = subsets(n, mu.count_at_least(r));
        systems = systems
            .into_iter()
            .flat_map(|s| {
                choices.iter().map(move |c| {
                    let mut s = s.clone();
                    s.push(c.clone());
                    s
                })
            })
            .collect();
    }
    systems.into_iter().map(|rows| BallSystem::new(rows).expect("row counts are monotone")).collect()
}

fn queues_on(system: &BallSystem, mu: &Composition) -> Vec<MultilineQueue> {
    let l = system.height() as usize;
    let n = system.n();
    let mut labels = vec![vec![0u32; n]; l];
    for c in 0..n {
        if system.row(l as u32)[c] {
            labels[l - 1][c] = l as u32;
        }
    }
    let mut matching = vec![vec![None; n]; l];
    let mut out = Vec::new();
    descend(system, mu, l, &mut labels, &mut matching, &mut Vec::new(), &mut out);
    out
}

fn descend(
    system: &BallSystem,
    mu: &Composition,
    r: usize,
    labels: &mut Vec<Vec<u32>>,
    matching: &mut Vec<Vec<Option<usize>>>,
    events: &mut Vec<PairingEvent>,
    out: &mut Vec<MultilineQueue>,
) {
    if r == 1 {
        out.push(MultilineQueue::from_parts(system.clone(), matching.clone(), labels.clone(), events.clone()));
        return;
    }
    let target = (r == 2).then(|| mu.parts());
    let passes = enumerate_pass(&labels[r - 1], system.row(r as u32 - 1), r as u32, target);
    for p in passes {
        labels[r - 2] = p.lower_labels;
        matching[r - 1] = p.partner;
        let mark = events.len();
        events.extend(p.events);
        descend(system, mu, r - 1, labels, matching, events, out);
        events.truncate(mark);
    }
    labels[r - 2] = vec![0; system.n()];
    matching[r - 1] = vec![None; system.n()];
}

/// Every multiline queue of type `mu`, ordered by (occupancy, matching).
pub fn enumerate_mlq(mu: &Composition) -> Vec<MultilineQueue> {
    if mu.max_part() == 0 {
        return vec![MultilineQueue::empty(mu.len())];
    }
    let mut all: Vec<MultilineQueue> =
        ball_systems(mu).par_iter().flat_map_iter(|s| queues_on(s, mu)).collect();
    all.sort_by(|a, b| (a.system(), a.matching()).cmp(&(b.system(), b.matching())));
    all
}

/// Number of queues of type `mu`.
pub fn count_mlq(mu: &Composition) -> usize {
    if mu.max_part() == 0 {
        return 1;
    }
    ball_systems(mu).par_iter().map(|s| queues_on(s, mu).len()).sum()
}
