use super::cache::{CacheKey, SkeinCache};
use super::simplify::reduce;
use super::{InvariantError, MAX_DEPTH};
use crate::diagram::{Dart, Diagram, Smoothing};
use crate::poly::{LaurentPoly, Ring};

/// Conway polynomial with the process-wide cache.
pub fn conway(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    conway_with(d, SkeinCache::global())
}

/// Conway polynomial from `∇(L+) - ∇(L-) = z ∇(L0)`, `∇(unknot) = 1`,
/// `∇(split) = 0`, switching the first crossing met from below until the
/// diagram is descending. Orientation comes from the tuples; after that
/// it is carried explicitly so that switching never re-derives it.
pub fn conway_with(d: &Diagram, cache: &SkeinCache) -> Result<LaurentPoly, InvariantError> {
    if d.is_empty() {
        return Err(InvariantError::EmptyDiagram);
    }
    let o = d.orientation()?;
    let pos: Vec<bool> = (0..d.crossing_count()).map(|c| o.over_enters_d(c)).collect();
    rec(d, &pos, cache, 0)
}

fn z_mono(k: i32) -> LaurentPoly {
    LaurentPoly::monomial(&Ring::z(), &[k], 1)
}

/// Entering dart of every arc given the over-strand directions.
fn heads(d: &Diagram, pos: &[bool]) -> Vec<Dart> {
    let mut h = vec![(0, 0); d.n_arcs()];
    for (c, x) in d.crossings().iter().enumerate() {
        let over_in = if pos[c] { 3 } else { 1 };
        for p in [0, over_in] {
            h[x.0[p] as usize - 1] = (c, p);
        }
    }
    h
}

fn rec(d: &Diagram, pos: &[bool], cache: &SkeinCache, depth: usize) -> Result<LaurentPoly, InvariantError> {
    if depth > MAX_DEPTH {
        return Err(InvariantError::DepthExceeded(MAX_DEPTH));
    }
    let r = reduce(d);
    let pos: Vec<bool> = r.kept.iter().map(|&i| pos[i]).collect();
    let d = r.diagram;
    let zero = LaurentPoly::zero(&Ring::z());
    let free = d.free_loops();
    if d.crossing_count() == 0 {
        return Ok(if free == 1 { LaurentPoly::one(&Ring::z()) } else { zero });
    }
    if free > 0 {
        return Ok(zero);
    }
    let hd = heads(&d, &pos);
    let key = CacheKey::Conway(d.canonical_tagged(Some(&hd), false, &pos));
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }

    let ends = d.arc_ends();
    let n = d.crossing_count();
    let mut arc_seen = vec![false; d.n_arcs()];
    let mut over_seen = vec![false; n];
    let mut first_bad = None;
    let mut components = 0;
    for arc in 1..=d.n_arcs() {
        if arc_seen[arc - 1] {
            continue;
        }
        components += 1;
        for (c, p) in d.walk(&ends, hd[arc - 1]) {
            arc_seen[d.arc_at((c, p)) as usize - 1] = true;
            if p % 2 == 1 {
                over_seen[c] = true;
            } else if !over_seen[c] && first_bad.is_none() {
                first_bad = Some(c);
            }
        }
    }
    let v = match first_bad {
        None if components == 1 => LaurentPoly::one(&Ring::z()),
        None => zero,
        Some(c) => {
            let x = d.crossings()[c];
            let mut pos_sw = pos.clone();
            pos_sw[c] = !pos[c];
            let v_sw = rec(&d.with_crossing(c, x.switched(pos[c])), &pos_sw, cache, depth + 1)?;
            // The oriented smoothing joins each incoming end to an outgoing one.
            let s = if pos[c] { Smoothing::A } else { Smoothing::B };
            let mut pos0 = pos.clone();
            pos0.remove(c);
            let v0 = &z_mono(1) * &rec(&d.smoothed(c, s), &pos0, cache, depth + 1)?;
            if pos[c] {
                v_sw + v0
            } else {
                v_sw - v0
            }
        }
    };
    cache.put(key, v.clone());
    Ok(v)
}
