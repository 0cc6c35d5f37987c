use std::collections::HashMap;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cache::{CacheKey, SkeinCache};
use super::InvariantError;
use crate::diagram::{ArcId, Diagram, KeyMode, Smoothing, State};
use crate::poly::{a_pow, delta, Coeff, LaurentPoly, Ring};
use crate::unionfind::UnionFind;

/// Largest crossing count the explicit state sum accepts.
pub const STATESUM_MAX_CROSSINGS: usize = 40;

/// Default cap on crossings for [`state_table`].
pub const DEFAULT_STATE_CAP: usize = 16;

fn check_nonempty(d: &Diagram) -> Result<(), InvariantError> {
    if d.is_empty() {
        Err(InvariantError::EmptyDiagram)
    } else {
        Ok(())
    }
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::one(&Ring::a())];
    let dl = delta();
    for i in 1..=max {
        let next = &out[i - 1] * &dl;
        out.push(next);
    }
    out
}

/// `δ^k` for possibly negative `k`; only `k = -1` against a multiple of δ
/// ever arises, so negative powers are handled by exact division.
fn times_delta_pow(p: &LaurentPoly, k: i64, pows: &[LaurentPoly]) -> LaurentPoly {
    if k >= 0 {
        p * &pows[k as usize]
    } else {
        let mut q = p.clone();
        for _ in 0..-k {
            q = q.div_exact(&delta()).expect("univariate").expect("state sum is a multiple of δ");
        }
        q
    }
}

/// `Σ_S ⟨K|S⟩ δ^(||S||-1)` by enumerating all `2^N` states.
pub fn bracket_statesum(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    check_nonempty(d)?;
    let n = d.crossing_count();
    if n > STATESUM_MAX_CROSSINGS {
        return Err(InvariantError::TooManyCrossings { n, max: STATESUM_MAX_CROSSINGS });
    }
    let free = d.free_loops() as usize;
    if n == 0 {
        return Ok(delta_powers(free - 1).pop().unwrap());
    }
    // counts[b][loops]: number of states with b B-smoothings and the given
    // loop count (free loops excluded).
    let width = 2 * n + 1;
    let mut counts = vec![0u64; (n + 1) * width];
    let mut uf = UnionFind::new(d.n_arcs());
    for mask in 0u64..1 << n {
        let loops = d.loops_for_mask(mask, &mut uf) - free;
        counts[mask.count_ones() as usize * width + loops] += 1;
    }
    let pows = delta_powers(width + free);
    let mut out = LaurentPoly::zero(&Ring::a());
    for b in 0..=n {
        for loops in 0..width {
            let c = counts[b * width + loops];
            if c == 0 {
                continue;
            }
            let term = pows[loops + free - 1].mul_monomial(&[n as i32 - 2 * b as i32], &Coeff::from(c));
            out.add_assign_poly(&term);
        }
    }
    Ok(out)
}

pub struct StateRow {
    pub state: State,
    /// `⟨K|S⟩ = A^(#A - #B)`.
    pub weight: LaurentPoly,
    /// `||S||`, free loops included.
    pub loops: usize,
}

/// Every state with its weight and loop count, in mask order (bit `i` set
/// means crossing `i` takes the `B` smoothing).
pub fn state_table(d: &Diagram, cap: usize) -> Result<Vec<StateRow>, InvariantError> {
    check_nonempty(d)?;
    let n = d.crossing_count();
    if n > cap.min(STATESUM_MAX_CROSSINGS) {
        return Err(InvariantError::TooManyCrossings { n, max: cap.min(STATESUM_MAX_CROSSINGS) });
    }
    let mut uf = UnionFind::new(d.n_arcs());
    Ok((0u64..1 << n)
        .map(|mask| {
            let state = State::from_mask(n, mask);
            let b = mask.count_ones() as i32;
            StateRow { state, weight: a_pow(n as i32 - 2 * b), loops: d.loops_for_mask(mask, &mut uf) }
        })
        .collect())
}

/// `Σ ⟨K|S⟩ δ^(||S||-1)` over the given rows.
pub fn sum_state_rows(rows: &[StateRow]) -> LaurentPoly {
    let max = rows.iter().map(|r| r.loops).max().unwrap_or(1);
    let pows = delta_powers(max);
    let mut out = LaurentPoly::zero(&Ring::a());
    for r in rows {
        out.add_assign_poly(&times_delta_pow(&r.weight, r.loops as i64 - 1, &pows));
    }
    out
}

pub fn state_table_tsv(rows: &[StateRow]) -> String {
    let mut s = String::from("state\tweight\tloops\n");
    for r in rows {
        s.push_str(&format!("{}\t{}\t{}\n", r.state, r.weight, r.loops));
    }
    s
}

/// Skein evaluation with the process-wide cache.
pub fn bracket_skein(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    bracket_skein_with(d, SkeinCache::global())
}

/// Skein evaluation: crossings are smoothed one at a time in an order
/// that keeps the boundary of the processed region small, and partially
/// smoothed diagrams with the same remaining crossings and the same
/// boundary connections are merged. Whole-diagram results are memoized
/// in `cache` under the relabeling-invariant key.
pub fn bracket_skein_with(d: &Diagram, cache: &SkeinCache) -> Result<LaurentPoly, InvariantError> {
    check_nonempty(d)?;
    let free = d.free_loops() as usize;
    if d.crossing_count() == 0 {
        return Ok(delta_powers(free - 1).pop().unwrap());
    }
    let core = Diagram::from_parts(d.crossings().to_vec(), 0);
    let key = CacheKey::Bracket(core.canonical_key(KeyMode::Unoriented));
    let closed = match cache.get(&key) {
        Some(p) => p,
        None => {
            let n = core.crossing_count();
            // Each state contributes at most 2^(2n) in absolute value.
            let p = if 3 * n + 2 < 127 { frontier_dp::<i128>(&core) } else { frontier_dp::<BigInt>(&core) };
            cache.put(key, p.clone());
            p
        }
    };
    Ok(&closed * &delta_powers(free).pop().unwrap())
}

trait DpCoeff: Clone + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> + Into<Coeff> {}
impl DpCoeff for i128 {}
impl DpCoeff for BigInt {}

/// Dense polynomial in `A` on the fixed window `[-w, w]`.
struct Window {
    w: usize,
}

impl Window {
    fn len(&self) -> usize {
        2 * self.w + 1
    }

    /// `acc += A^shift * p`.
    fn add_shifted<T: DpCoeff>(&self, acc: &mut [T], p: &[T], shift: isize) {
        let len = self.len() as isize;
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = i as isize + shift;
            debug_assert!((0..len).contains(&j));
            acc[j as usize] += c;
        }
    }

    fn mul_delta<T: DpCoeff>(&self, p: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.len()];
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[i - 2] -= c;
            out[i + 2] -= c;
        }
        out
    }
}

/// Greedy processing order: next is the crossing sharing the most arcs
/// with those already taken.
fn processing_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut taken = vec![false; n];
    let mut touched = vec![0u8; d.n_arcs()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&c| !taken[c])
            .max_by_key(|&c| {
                let shared = d.crossings()[c].0.iter().filter(|&&a| touched[a as usize - 1] > 0).count();
                (shared, std::cmp::Reverse(c))
            })
            .unwrap();
        taken[best] = true;
        for &a in &d.crossings()[best].0 {
            touched[a as usize - 1] += 1;
        }
        order.push(best);
    }
    order
}

fn frontier_dp<T: DpCoeff>(d: &Diagram) -> LaurentPoly {
    let n = d.crossing_count();
    let win = Window { w: 5 * n + 4 };
    let order = processing_order(d);
    let mut seen = vec![0u8; d.n_arcs()];
    let mut frontier: Vec<ArcId> = Vec::new();
    let mut states: HashMap<Vec<u16>, Vec<T>> = HashMap::new();
    let mut unit = vec![T::zero(); win.len()];
    unit[win.w] = T::one();
    states.insert(vec![], unit);

    for &c in &order {
        let x = d.crossings()[c].0;
        let k = frontier.len();
        let pos_old = |a: ArcId| frontier.iter().position(|&f| f == a);
        // Endpoint ids: 0..k old frontier arcs, k+s this crossing's slot s,
        // k+4+s the far end of a fresh arc at slot s.
        let mut ep_slot = [0usize; 4];
        let mut fresh_pairs: Vec<(usize, usize)> = Vec::new();
        for s in 0..4 {
            let a = x[s];
            if let Some(i) = pos_old(a) {
                ep_slot[s] = i;
            } else if let Some(t) = (0..4).find(|&t| t != s && x[t] == a) {
                ep_slot[s] = k + s;
                if s < t {
                    fresh_pairs.push((k + s, k + t));
                }
            } else {
                ep_slot[s] = k + s;
                fresh_pairs.push((k + s, k + 4 + s));
            }
        }
        for &a in &x {
            seen[a as usize - 1] += 1;
        }
        let mut new_frontier: Vec<(ArcId, usize)> = Vec::new();
        for (i, &f) in frontier.iter().enumerate() {
            if !x.contains(&f) {
                new_frontier.push((f, i));
            }
        }
        for s in 0..4 {
            if seen[x[s] as usize - 1] == 1 && pos_old(x[s]).is_none() {
                new_frontier.push((x[s], k + 4 + s));
            }
        }
        new_frontier.sort_unstable();
        let mut ep_to_new = vec![u16::MAX; k + 8];
        for (j, &(_, ep)) in new_frontier.iter().enumerate() {
            ep_to_new[ep] = j as u16;
        }

        let mut next: HashMap<Vec<u16>, Vec<T>> = HashMap::with_capacity(states.len() * 2);
        let mut partner0 = vec![usize::MAX; k + 8];
        for (mate, poly) in states.drain() {
            for (i, &m) in mate.iter().enumerate() {
                partner0[i] = m as usize;
            }
            for &(u, v) in &fresh_pairs {
                partner0[u] = v;
                partner0[v] = u;
            }
            for (smoothing, shift) in [(Smoothing::A, 1isize), (Smoothing::B, -1isize)] {
                let mut partner = partner0.clone();
                let mut loops = 0;
                for (i, j) in smoothing.joins() {
                    let (e1, e2) = (ep_slot[i], ep_slot[j]);
                    if partner[e1] == e2 {
                        loops += 1;
                    } else {
                        let (p1, p2) = (partner[e1], partner[e2]);
                        partner[p1] = p2;
                        partner[p2] = p1;
                    }
                }
                let key: Vec<u16> = new_frontier.iter().map(|&(_, ep)| ep_to_new[partner[ep]]).collect();
                let mut p = poly.clone();
                for _ in 0..loops {
                    p = win.mul_delta(&p);
                }
                let acc = next.entry(key).or_insert_with(|| vec![T::zero(); win.len()]);
                win.add_shifted(acc, &p, shift);
            }
        }
        states = next;
        frontier = new_frontier.into_iter().map(|(a, _)| a).collect();
    }
    debug_assert!(frontier.is_empty());
    let p = states.remove(&Vec::new()).expect("all crossings processed");
    let total = LaurentPoly::from_terms(
        &Ring::a(),
        p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| ([i as i32 - win.w as i32], c.into())),
    );
    // Every state has at least one loop; drop one factor of δ.
    total.div_exact(&delta()).expect("univariate").expect("multiple of δ")
}
