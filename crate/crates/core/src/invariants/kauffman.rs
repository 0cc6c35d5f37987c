use super::cache::{CacheKey, SkeinCache};
use super::simplify::reduce;
use super::{InvariantError, MAX_DEPTH};
use crate::diagram::{Crossing, Diagram, KeyMode, Smoothing};
use crate::poly::{LaurentPoly, Ring};

fn za(z: i32, a: i32, c: i64) -> LaurentPoly {
    LaurentPoly::monomial(&Ring::za(), &[z, a], c)
}

/// Loop factor `μ = (a + a^-1) z^-1 - 1` of the L polynomial.
pub fn mu() -> LaurentPoly {
    za(-1, 1, 1) + za(-1, -1, 1) + za(0, 0, -1)
}

fn mu_pow(k: usize) -> LaurentPoly {
    mu().pow(k as u32)
}

/// Regular-isotopy invariant L with the process-wide cache.
pub fn kauffman_l(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    kauffman_l_with(d, SkeinCache::global())
}

/// L by the unoriented skein `L(X) = -L(switched X) + z (L(A) + L(B))`,
/// applied at the first crossing met from below while walking the
/// components from their lowest arcs, until the diagram is descending.
/// Curls and removable bigons are stripped first at every step.
pub fn kauffman_l_with(d: &Diagram, cache: &SkeinCache) -> Result<LaurentPoly, InvariantError> {
    if d.is_empty() {
        return Err(InvariantError::EmptyDiagram);
    }
    l_rec(d, cache, 0)
}

fn l_rec(d: &Diagram, cache: &SkeinCache, depth: usize) -> Result<LaurentPoly, InvariantError> {
    if depth > MAX_DEPTH {
        return Err(InvariantError::DepthExceeded(MAX_DEPTH));
    }
    let r = reduce(d);
    let outer = za(0, r.curl_writhe, 1);
    let free = r.diagram.free_loops() as usize;
    if r.diagram.crossing_count() == 0 {
        return Ok(&outer * &mu_pow(free - 1));
    }
    let core = Diagram::from_parts(r.diagram.crossings().to_vec(), 0);
    let outer = &outer * &mu_pow(free);
    let key = CacheKey::L(core.canonical_key(KeyMode::Unoriented));
    if let Some(v) = cache.get(&key) {
        return Ok(&outer * &v);
    }

    let ends = core.arc_ends();
    let walks = core.traversal(&ends);
    let n = core.crossing_count();
    let mut under_in = vec![usize::MAX; n];
    let mut over_in = vec![usize::MAX; n];
    let mut first_bad = None;
    for &(c, p) in walks.iter().flatten() {
        let slot = if p % 2 == 0 { &mut under_in[c] } else { &mut over_in[c] };
        *slot = p;
        if p % 2 == 0 && over_in[c] == usize::MAX && first_bad.is_none() {
            first_bad = Some(c);
        }
    }
    let v = match first_bad {
        None => {
            let w: i32 = (0..n).map(|c| if (under_in[c] == 0) == (over_in[c] == 3) { 1 } else { -1 }).sum();
            &za(0, w, 1) * &mu_pow(walks.len() - 1)
        }
        Some(c) => {
            let t = core.crossings()[c].0;
            let switched = core.with_crossing(c, Crossing([t[1], t[2], t[3], t[0]]));
            let l_sw = l_rec(&switched, cache, depth + 1)?;
            let l_a = l_rec(&core.smoothed(c, Smoothing::A), cache, depth + 1)?;
            let l_b = l_rec(&core.smoothed(c, Smoothing::B), cache, depth + 1)?;
            &za(1, 0, 1) * &(l_a + l_b) - l_sw
        }
    };
    cache.put(key, v.clone());
    Ok(&outer * &v)
}

/// `F = a^(-w) L`, with `w` the writhe of the derived orientation.
pub fn kauffman_f(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    let w = d.writhe()?;
    Ok(&za(0, -w, 1) * &kauffman_l(d)?)
}

/// Image of an L polynomial under `z -> A + A^-1`, `a -> -A^3`.
pub fn specialize_l(l: &LaurentPoly) -> LaurentPoly {
    let ra = Ring::a();
    let zi = Ring::za().index_of("z").unwrap();
    let shift = l.degree_range(zi).map_or(0, |(lo, _)| (-lo).max(0));
    let lifted = &za(shift, 0, 1) * l;
    let z_img = LaurentPoly::monomial(&ra, &[1], 1) + LaurentPoly::monomial(&ra, &[-1], 1);
    let a_img = LaurentPoly::monomial(&ra, &[3], -1);
    let p = lifted.evaluate(&ra, &[z_img.clone(), a_img]).expect("a image is a unit monomial");
    p.div_exact(&z_img.pow(shift as u32)).expect("univariate").expect("specialization divides exactly")
}
