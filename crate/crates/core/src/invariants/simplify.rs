use crate::diagram::{Crossing, Diagram};

/// Result of stripping curls and removable bigons from a diagram.
pub(crate) struct Reduced {
    pub diagram: Diagram,
    /// Original index of each surviving crossing, in order.
    pub kept: Vec<usize>,
    /// Sum of the signs of the removed curls.
    pub curl_writhe: i32,
}

/// Sign of the curl at `x`, if one of its arcs is a monogon. Monogons in
/// slots {0,1} or {2,3} are positive, {1,2} or {3,0} negative.
pub(crate) fn curl_sign(x: &Crossing) -> Option<i32> {
    let t = x.0;
    (0..4).find(|&p| t[p] == t[(p + 1) % 4]).map(|p| if p % 2 == 0 { 1 } else { -1 })
}

/// Crossing pair of the first removable bigon: a two-sided face whose
/// one edge is over at both ends and the other under at both ends.
pub(crate) fn r2_bigon(d: &Diagram) -> Option<(usize, usize)> {
    d.faces().into_iter().find_map(|f| {
        (f.len() == 2 && f[0].0 != f[1].0 && d.arc_at(f[0]) != d.arc_at(f[1]) && f[0].1 % 2 != f[1].1 % 2)
            .then_some((f[0].0, f[1].0))
    })
}

/// Greedy R1 and R2 removal until neither applies.
pub(crate) fn reduce(d: &Diagram) -> Reduced {
    let mut cur = d.clone();
    let mut kept: Vec<usize> = (0..d.crossing_count()).collect();
    let mut curl_writhe = 0;
    loop {
        if let Some((c, s)) = cur.crossings().iter().enumerate().find_map(|(c, x)| curl_sign(x).map(|s| (c, s))) {
            curl_writhe += s;
            cur = cur.without_crossings(&[c]);
            kept.remove(c);
            continue;
        }
        if let Some((c1, c2)) = r2_bigon(&cur) {
            cur = cur.without_crossings(&[c1, c2]);
            let (lo, hi) = (c1.min(c2), c1.max(c2));
            kept.remove(hi);
            kept.remove(lo);
            continue;
        }
        return Reduced { diagram: cur, kept, curl_writhe };
    }
}
