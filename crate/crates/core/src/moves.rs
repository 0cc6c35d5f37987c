//! Reidemeister moves on PD diagrams, found combinatorially from the faces
//! of the rotation system, plus seeded random scrambles.
//!
//! Site locations:
//!
//! | move | location | variant |
//! |---|---|---|
//! | R1 add | `[arc]`, or empty for a free loop | `positive` / `negative` |
//! | R1 remove | `[crossing]` | - |
//! | R2 add | `[c1, p1, c2, p2]`, two darts on one face | `first` / `second` (whose arc goes over) |
//! | R2 remove | `[over_arc, under_arc]` | - |
//! | R3 pass | `[c, p]`, smallest dart of the triangle face | - |
//! | FramedDoubleCurl pass | `[crossing]` | - |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{ArcId, Crossing, Dart, Diagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    FramedDoubleCurl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Add,
    Remove,
    Pass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    None,
    Positive,
    Negative,
    FirstOver,
    SecondOver,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    pub location: Vec<u32>,
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("stale move site: {0}")]
    StaleSite(String),
    #[error("bad move log line {line}: {msg}")]
    Log { line: usize, msg: String },
}

impl MoveSite {
    fn new(kind: MoveKind, direction: Direction, location: Vec<u32>, variant: Variant) -> Self {
        MoveSite { kind, direction, location, variant }
    }

    /// Change in crossing count when applied.
    pub fn crossing_delta(&self) -> i64 {
        let k = match self.kind {
            MoveKind::R1 => 1,
            MoveKind::R2 => 2,
            _ => 0,
        };
        match self.direction {
            Direction::Add => k,
            Direction::Remove => -k,
            Direction::Pass => 0,
        }
    }

    fn stale(&self, why: &str) -> MoveError {
        MoveError::StaleSite(format!("{self}: {why}"))
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MoveKind::R1 => "R1",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
            MoveKind::FramedDoubleCurl => "FramedDoubleCurl",
        };
        let dir = match self.direction {
            Direction::Add => "add",
            Direction::Remove => "remove",
            Direction::Pass => "pass",
        };
        let loc = if self.location.is_empty() {
            "-".to_string()
        } else {
            self.location.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        };
        let var = match self.variant {
            Variant::None => "-",
            Variant::Positive => "positive",
            Variant::Negative => "negative",
            Variant::FirstOver => "first",
            Variant::SecondOver => "second",
        };
        write!(f, "{kind} {dir} {loc} {var}")
    }
}

impl FromStr for MoveSite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [kind, dir, loc, var] = parts[..] else {
            return Err("expected 'kind direction location variant'".into());
        };
        let kind = match kind {
            "R1" => MoveKind::R1,
            "R2" => MoveKind::R2,
            "R3" => MoveKind::R3,
            "FramedDoubleCurl" => MoveKind::FramedDoubleCurl,
            k => return Err(format!("unknown move kind '{k}'")),
        };
        let direction = match dir {
            "add" => Direction::Add,
            "remove" => Direction::Remove,
            "pass" => Direction::Pass,
            d => return Err(format!("unknown direction '{d}'")),
        };
        let location = if loc == "-" {
            vec![]
        } else {
            loc.split(',').map(|x| x.parse::<u32>().map_err(|_| format!("bad location '{loc}'"))).collect::<Result<_, _>>()?
        };
        let variant = match var {
            "-" => Variant::None,
            "positive" => Variant::Positive,
            "negative" => Variant::Negative,
            "first" => Variant::FirstOver,
            "second" => Variant::SecondOver,
            v => return Err(format!("unknown variant '{v}'")),
        };
        Ok(MoveSite { kind, direction, location, variant })
    }
}

/// Slots of the first monogon at crossing `x`, if any.
fn monogon(x: &Crossing) -> Option<usize> {
    (0..4).find(|&p| x.0[p] == x.0[(p + 1) % 4])
}

fn face_from(d: &Diagram, ends: &[[Dart; 2]], start: Dart, limit: usize) -> Option<Vec<Dart>> {
    let mut face = vec![start];
    let mut h = start;
    loop {
        let o = Diagram::other_end(ends, d.arc_at(h), h);
        h = (o.0, (o.1 + 1) % 4);
        if h == start {
            return Some(face);
        }
        if face.len() >= limit {
            return None;
        }
        face.push(h);
    }
}

fn triangle_ok(d: &Diagram, face: &[Dart]) -> bool {
    if face.len() != 3 {
        return false;
    }
    let cs = [face[0].0, face[1].0, face[2].0];
    let arcs = [d.arc_at(face[0]), d.arc_at(face[1]), d.arc_at(face[2])];
    if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] || arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2] {
        return false;
    }
    // Edge k leaves c_k at slot p_k and reaches c_{k+1} at slot p_{k+1} - 1.
    let parity = |k: usize| {
        let p = face[k].1 % 2;
        let q = (face[(k + 1) % 3].1 + 3) % 4 % 2;
        (p, q)
    };
    let over = (0..3).any(|k| parity(k) == (1, 1));
    let under = (0..3).any(|k| parity(k) == (0, 0));
    over && under
}

/// All applicable sites of the given kinds, sorted.
pub fn find_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let oriented = d.orientation().is_ok();
    let faces = if kinds.iter().any(|k| matches!(k, MoveKind::R2 | MoveKind::R3)) { d.faces() } else { vec![] };
    for &kind in kinds {
        match kind {
            MoveKind::R1 => {
                if oriented {
                    let arcs = (1..=d.n_arcs() as u32).map(|a| vec![a]);
                    let free = (d.free_loops() > 0).then(Vec::new);
                    for loc in free.into_iter().chain(arcs) {
                        for v in [Variant::Positive, Variant::Negative] {
                            out.push(MoveSite::new(kind, Direction::Add, loc.clone(), v));
                        }
                    }
                }
                for (c, x) in d.crossings().iter().enumerate() {
                    if monogon(x).is_some() {
                        out.push(MoveSite::new(kind, Direction::Remove, vec![c as u32], Variant::None));
                    }
                }
            }
            MoveKind::R2 => {
                for f in &faces {
                    if f.len() == 2 && f[0].0 != f[1].0 && d.arc_at(f[0]) != d.arc_at(f[1]) && f[0].1 % 2 != f[1].1 % 2 {
                        let (over, under) = if f[0].1 % 2 == 1 { (f[0], f[1]) } else { (f[1], f[0]) };
                        out.push(MoveSite::new(kind, Direction::Remove, vec![d.arc_at(over), d.arc_at(under)], Variant::None));
                    }
                }
                if oriented {
                    for f in &faces {
                        let mut hs = f.clone();
                        hs.sort_unstable();
                        for i in 0..hs.len() {
                            for j in i + 1..hs.len() {
                                let (h1, h2) = (hs[i], hs[j]);
                                if d.arc_at(h1) == d.arc_at(h2) {
                                    continue;
                                }
                                let loc = vec![h1.0 as u32, h1.1 as u32, h2.0 as u32, h2.1 as u32];
                                for v in [Variant::FirstOver, Variant::SecondOver] {
                                    out.push(MoveSite::new(kind, Direction::Add, loc.clone(), v));
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::R3 => {
                for f in &faces {
                    if triangle_ok(d, f) {
                        let m = *f.iter().min().unwrap();
                        out.push(MoveSite::new(kind, Direction::Pass, vec![m.0 as u32, m.1 as u32], Variant::None));
                    }
                }
            }
            MoveKind::FramedDoubleCurl => {
                for (c, x) in d.crossings().iter().enumerate() {
                    if monogon(x).is_some() {
                        out.push(MoveSite::new(kind, Direction::Pass, vec![c as u32], Variant::None));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn dart_at(d: &Diagram, c: u32, p: u32) -> Option<Dart> {
    ((c as usize) < d.crossing_count() && p < 4).then_some((c as usize, p as usize))
}

/// Applies `m` to `d`. Fails with `StaleSite` if the site is not present.
pub fn apply_move(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    match (m.kind, m.direction) {
        (MoveKind::R1, Direction::Add) => r1_add(d, m),
        (MoveKind::R1, Direction::Remove) => {
            let [c] = m.location[..] else { return Err(m.stale("expected one crossing")) };
            let x = d.crossings().get(c as usize).ok_or_else(|| m.stale("no such crossing"))?;
            if monogon(x).is_none() {
                return Err(m.stale("crossing has no monogon"));
            }
            Ok(d.without_crossings(&[c as usize]))
        }
        (MoveKind::R2, Direction::Add) => r2_add(d, m),
        (MoveKind::R2, Direction::Remove) => {
            let [x, y] = m.location[..] else { return Err(m.stale("expected two arcs")) };
            let bigon = d.faces().into_iter().find(|f| {
                f.len() == 2
                    && f[0].0 != f[1].0
                    && f.iter().any(|&h| h.1 % 2 == 1 && d.arc_at(h) == x)
                    && f.iter().any(|&h| h.1 % 2 == 0 && d.arc_at(h) == y)
            });
            match bigon {
                Some(f) => Ok(d.without_crossings(&[f[0].0, f[1].0])),
                None => Err(m.stale("no such bigon")),
            }
        }
        (MoveKind::R3, Direction::Pass) => r3(d, m),
        (MoveKind::FramedDoubleCurl, Direction::Pass) => {
            let [c] = m.location[..] else { return Err(m.stale("expected one crossing")) };
            let x = *d.crossings().get(c as usize).ok_or_else(|| m.stale("no such crossing"))?;
            let p = monogon(&x).ok_or_else(|| m.stale("crossing has no monogon"))?;
            let t = x.0;
            let swapped = match p {
                // positive curl: (l,l,out,in) <-> (in,out,l,l)
                0 => [t[3], t[2], t[0], t[1]],
                2 => [t[2], t[3], t[1], t[0]],
                // negative curl: (l,in,out,l) <-> (in,l,l,out)
                _ => [t[1], t[0], t[3], t[2]],
            };
            Ok(d.with_crossing(c as usize, Crossing(swapped)))
        }
        _ => Err(m.stale("unsupported kind/direction pair")),
    }
}

fn r1_add(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    let positive = match m.variant {
        Variant::Positive => true,
        Variant::Negative => false,
        _ => return Err(m.stale("R1 add needs a sign")),
    };
    let mut xs = d.crossings().to_vec();
    match m.location[..] {
        [] => {
            if d.free_loops() == 0 {
                return Err(m.stale("no free loop"));
            }
            let n = d.n_arcs() as ArcId;
            let (l, r) = (n + 1, n + 2);
            xs.push(Crossing(if positive { [l, l, r, r] } else { [l, r, r, l] }));
            Ok(Diagram::from_parts(xs, d.free_loops() - 1))
        }
        [x] => {
            if x == 0 || x as usize > d.n_arcs() {
                return Err(m.stale("no such arc"));
            }
            let ori = d.orientation().map_err(|e| m.stale(&e.to_string()))?;
            let n = d.n_arcs() as ArcId;
            let (l, out) = (n + 1, n + 2);
            let (hc, hp) = ori.head(x);
            xs[hc].0[hp] = out;
            xs.push(Crossing(if positive { [l, l, out, x] } else { [l, x, out, l] }));
            Ok(Diagram::from_parts(xs, d.free_loops()))
        }
        _ => Err(m.stale("bad location")),
    }
}

fn r2_add(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    let [c1, p1, c2, p2] = m.location[..] else { return Err(m.stale("expected two darts")) };
    let (h1, h2) = match (dart_at(d, c1, p1), dart_at(d, c2, p2)) {
        (Some(a), Some(b)) if a < b => (a, b),
        _ => return Err(m.stale("bad darts")),
    };
    let ends = d.arc_ends();
    let face = face_from(d, &ends, h1, 4 * d.crossing_count()).unwrap_or_default();
    if !face.contains(&h2) {
        return Err(m.stale("darts do not share a face"));
    }
    let (x, y) = (d.arc_at(h1), d.arc_at(h2));
    if x == y {
        return Err(m.stale("same arc"));
    }
    let x_over = match m.variant {
        Variant::FirstOver => true,
        Variant::SecondOver => false,
        _ => return Err(m.stale("R2 add needs an over choice")),
    };
    let ori = d.orientation().map_err(|e| m.stale(&e.to_string()))?;
    let far1 = Diagram::other_end(&ends, x, h1);
    let far2 = Diagram::other_end(&ends, y, h2);
    let x_fwd = ori.head(x) == far1;
    let y_fwd = ori.head(y) == far2;
    // Picture: x runs east along the top of the face, y runs west along
    // the bottom; x dips south across y at P (west) then Q (east).
    let n = d.n_arcs() as ArcId;
    let (x1, x2, x3, y1, y2, y3) = (x, n + 1, n + 2, y, n + 3, n + 4);
    let mut xs = d.crossings().to_vec();
    xs[far1.0].0[far1.1] = x3;
    xs[far2.0].0[far2.1] = y3;
    // Counterclockwise from east: E, N, W, S.
    let p_ring = [y2, x1, y3, x2];
    let q_ring = [y1, x3, y2, x2];
    let (p_start, q_start) = if x_over {
        if y_fwd { (0, 0) } else { (2, 2) }
    } else if x_fwd {
        (1, 3)
    } else {
        (3, 1)
    };
    let rot = |r: [ArcId; 4], s: usize| Crossing([r[s], r[(s + 1) % 4], r[(s + 2) % 4], r[(s + 3) % 4]]);
    xs.push(rot(p_ring, p_start));
    xs.push(rot(q_ring, q_start));
    Ok(Diagram::from_parts(xs, d.free_loops()))
}

/// Moves the top strand of a triangle across the crossing of the other
/// two. Each line keeps its slope, so every crossing keeps its slot
/// layout; only the arcs in its slots change.
fn r3(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    let [c, p] = m.location[..] else { return Err(m.stale("expected a dart")) };
    let h0 = dart_at(d, c, p).ok_or_else(|| m.stale("bad dart"))?;
    let ends = d.arc_ends();
    let face = face_from(d, &ends, h0, 3).ok_or_else(|| m.stale("not a triangle"))?;
    if !triangle_ok(d, &face) || face.iter().min() != Some(&h0) {
        return Err(m.stale("not an R3 triangle"));
    }
    let at = |h: Dart, k: usize| d.arc_at((h.0, (h.1 + k) % 4));
    let mut xs = d.crossings().to_vec();
    let mut writes = Vec::with_capacity(12);
    for k in 0..3 {
        let (hk, hn, hnn) = (face[k], face[(k + 1) % 3], face[(k + 2) % 3]);
        let cn = hn.0;
        let q = (hn.1 + 3) % 4;
        let e_minus_k = at(hk, 2);
        let a_k = at(hk, 0);
        let a_n = at(hn, 0);
        // Far end of line k+1 sits at c_{k+2}, opposite the slot where it arrives.
        let e_plus_n = at(hnn, 1);
        writes.push((cn, q, e_minus_k));
        writes.push((cn, (q + 1) % 4, e_plus_n));
        writes.push((cn, (q + 2) % 4, a_k));
        writes.push((cn, (q + 3) % 4, a_n));
    }
    for (c, s, a) in writes {
        xs[c].0[s] = a;
    }
    Ok(Diagram::from_parts(xs, d.free_loops()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    Ambient,
    Regular,
    Framed,
}

impl Policy {
    pub fn kinds(self) -> &'static [MoveKind] {
        match self {
            Policy::Ambient => &[MoveKind::R1, MoveKind::R2, MoveKind::R3],
            Policy::Regular => &[MoveKind::R2, MoveKind::R3],
            Policy::Framed => &[MoveKind::R2, MoveKind::R3, MoveKind::FramedDoubleCurl],
        }
    }
}

impl FromStr for Policy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ambient" => Ok(Policy::Ambient),
            "regular" => Ok(Policy::Regular),
            "framed" => Ok(Policy::Framed),
            _ => Err(format!("unknown policy '{s}' (ambient, regular, framed)")),
        }
    }
}

/// One scramble step; `None` when no move was applicable.
pub type LogEntry = Option<MoveSite>;

#[derive(Clone, Debug)]
pub struct Scramble {
    pub diagram: Diagram,
    pub log: Vec<LogEntry>,
}

/// Crossing cap for a scramble starting at `initial` crossings.
pub fn crossing_cap(initial: usize) -> usize {
    (2 * initial).max(initial + 20)
}

pub fn scramble(d: &Diagram, seed: u64, steps: usize, policy: Policy) -> Scramble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = crossing_cap(d.crossing_count()) as i64;
    let mut cur = d.clone();
    let mut log = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = cur.crossing_count() as i64;
        let sites: Vec<MoveSite> =
            find_moves(&cur, policy.kinds()).into_iter().filter(|s| n + s.crossing_delta() <= cap).collect();
        if sites.is_empty() {
            log.push(None);
            continue;
        }
        let s = &sites[rng.gen_range(0..sites.len())];
        cur = apply_move(&cur, s).expect("enumerated site must apply");
        log.push(Some(s.clone()));
    }
    Scramble { diagram: cur, log }
}

pub fn format_log(log: &[LogEntry]) -> String {
    log.iter().map(|e| e.as_ref().map_or("noop".to_string(), |s| s.to_string()) + "\n").collect()
}

/// Parses a move log; blank lines and `#` comments are skipped.
pub fn parse_log(text: &str) -> Result<Vec<LogEntry>, MoveError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if l == "noop" {
            out.push(None);
        } else {
            out.push(Some(l.parse().map_err(|msg| MoveError::Log { line: i + 1, msg })?));
        }
    }
    Ok(out)
}

pub fn replay(d: &Diagram, log: &[LogEntry]) -> Result<Diagram, MoveError> {
    let mut cur = d.clone();
    for s in log.iter().flatten() {
        cur = apply_move(&cur, s)?;
    }
    Ok(cur)
}
