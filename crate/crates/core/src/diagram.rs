//! Planar-diagram (PD) representation of knot and link diagrams.
//!
//! A crossing is a 4-tuple `(a, b, c, d)` of arc ids listed
//! counterclockwise around the crossing, starting at the incoming
//! under-strand. The under-strand runs `a -> c`; the over-strand runs
//! either `d -> b` (a positive crossing) or `b -> d` (negative). The over
//! direction is not stored in the tuple; it is recovered by following the
//! strand to a crossing where it passes under.
//!
//! Arc ids run over `1..=2N` for an `N`-crossing diagram, each appearing
//! exactly twice. Crossing-free unknotted components are counted in
//! `free_loops`.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::unionfind::UnionFind;

/// Loose components (never passing under) whose direction is chosen by
/// search; 2^k canonical keys are compared.
const MAX_LOOSE_COMPONENTS: usize = 10;

pub type ArcId = u32;

/// A crossing position: `(crossing index, slot 0..4)`.
pub type Dart = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcDegree { arc: ArcId, count: usize },
    #[error("crossing {crossing} references arc {arc}, but the diagram has {n_arcs} arcs")]
    DanglingArc { crossing: usize, arc: ArcId, n_arcs: usize },
    #[error("crossing {crossing} has an empty (zero) entry")]
    EmptyTupleEntry { crossing: usize },
    #[error("diagram cannot be oriented: {0}")]
    Unoriented(String),
    #[error("orientation does not match the crossing tuples")]
    OrientationMismatch,
    #[error("operation needs a knot (one component), got {0} components")]
    NotAKnot(usize),
    #[error("arc {0} does not exist")]
    NoSuchArc(ArcId),
    #[error("state has {got} choices for {expected} crossings")]
    StateLength { expected: usize, got: usize },
    #[error("bad diagram JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing(pub [ArcId; 4]);

impl Crossing {
    pub fn arcs(&self) -> [ArcId; 4] {
        self.0
    }

    /// The same crossing with the over- and under-strands exchanged.
    /// `over_enters_d` tells which end of the over-strand is incoming.
    pub fn switched(&self, over_enters_d: bool) -> Crossing {
        let [a, b, c, d] = self.0;
        if over_enters_d {
            Crossing([d, a, b, c])
        } else {
            Crossing([b, c, d, a])
        }
    }
}

/// Smoothing choice at one crossing. `A` joins `a-b` and `c-d`; `B` joins
/// `a-d` and `b-c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    pub(crate) fn joins(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::A => [(0, 1), (2, 3)],
            Smoothing::B => [(0, 3), (1, 2)],
        }
    }
}

/// One smoothing per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State(pub Vec<Smoothing>);

impl State {
    /// Bit `i` of `mask` set means crossing `i` takes the `B` smoothing.
    pub fn from_mask(n: usize, mask: u64) -> State {
        State((0..n).map(|i| if mask >> i & 1 == 1 { Smoothing::B } else { Smoothing::A }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self) -> State {
        State(self.0.iter().map(|s| if *s == Smoothing::A { Smoothing::B } else { Smoothing::A }).collect())
    }

    pub fn count_a(&self) -> usize {
        self.0.iter().filter(|s| **s == Smoothing::A).count()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for s in &self.0 {
            f.write_str(if *s == Smoothing::A { "A" } else { "B" })?;
        }
        Ok(())
    }
}

/// Direction of every arc plus the over-strand direction at every crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// Per arc (index `arc - 1`): the dart where it enters a crossing.
    heads: Vec<Dart>,
    /// Per crossing: whether the over-strand enters at slot `d`.
    over_enters_d: Vec<bool>,
}

impl Orientation {
    pub fn head(&self, arc: ArcId) -> Dart {
        self.heads[arc as usize - 1]
    }

    pub fn over_enters_d(&self, crossing: usize) -> bool {
        self.over_enters_d[crossing]
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        if self.over_enters_d[crossing] {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.over_enters_d.len()).map(|i| self.sign(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: u32,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: u32) -> Result<Diagram, DiagramError> {
        let d = Diagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub fn from_tuples(tuples: &[[ArcId; 4]], free_loops: u32) -> Result<Diagram, DiagramError> {
        Diagram::new(tuples.iter().map(|t| Crossing(*t)).collect(), free_loops)
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_loops: u32) -> Diagram {
        let d = Diagram { crossings, free_loops };
        debug_assert_eq!(d.validate(), Ok(()));
        d
    }

    pub fn unknot() -> Diagram {
        Diagram { crossings: vec![], free_loops: 1 }
    }

    /// `k` disjoint crossing-free loops.
    pub fn unlink(k: u32) -> Diagram {
        Diagram { crossings: vec![], free_loops: k }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let n = self.n_arcs();
        let mut count = vec![0usize; n];
        for (i, c) in self.crossings.iter().enumerate() {
            for &a in &c.0 {
                if a == 0 {
                    return Err(DiagramError::EmptyTupleEntry { crossing: i });
                }
                if a as usize > n {
                    return Err(DiagramError::DanglingArc { crossing: i, arc: a, n_arcs: n });
                }
                count[a as usize - 1] += 1;
            }
        }
        match count.iter().position(|&k| k != 2) {
            Some(i) => Err(DiagramError::ArcDegree { arc: i as ArcId + 1, count: count[i] }),
            None => Ok(()),
        }
    }

    pub(crate) fn arc_at(&self, (c, p): Dart) -> ArcId {
        self.crossings[c].0[p]
    }

    /// Both ends of every arc, indexed by `arc - 1`.
    pub(crate) fn arc_ends(&self) -> Vec<[Dart; 2]> {
        let mut ends = vec![[(usize::MAX, 0); 2]; self.n_arcs()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &a) in x.0.iter().enumerate() {
                let e = &mut ends[a as usize - 1];
                if e[0].0 == usize::MAX {
                    e[0] = (c, p);
                } else {
                    e[1] = (c, p);
                }
            }
        }
        ends
    }

    pub(crate) fn other_end(ends: &[[Dart; 2]], arc: ArcId, dart: Dart) -> Dart {
        let e = ends[arc as usize - 1];
        if e[0] == dart {
            e[1]
        } else {
            e[0]
        }
    }

    /// Follows a strand from the entering dart `start` until it closes up;
    /// returns the entering darts in order.
    pub(crate) fn walk(&self, ends: &[[Dart; 2]], start: Dart) -> Vec<Dart> {
        let mut out = Vec::new();
        let mut d = start;
        loop {
            out.push(d);
            let exit = (d.0, (d.1 + 2) % 4);
            d = Self::other_end(ends, self.arc_at(exit), exit);
            if d == start {
                return out;
            }
        }
    }

    /// Components as walks (entering darts), ordered by lowest arc id; each
    /// starts at its lowest arc and heads to that arc's first end. Free
    /// loops are not included.
    pub(crate) fn traversal(&self, ends: &[[Dart; 2]]) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.n_arcs()];
        let mut comps = Vec::new();
        for arc in 1..=self.n_arcs() as ArcId {
            if seen[arc as usize - 1] {
                continue;
            }
            let e = ends[arc as usize - 1];
            let start = e[0].min(e[1]);
            let w = self.walk(ends, start);
            for &d in &w {
                seen[self.arc_at(d) as usize - 1] = true;
            }
            comps.push(w);
        }
        comps
    }

    /// Number of components, free loops included.
    pub fn component_count(&self) -> usize {
        self.traversal(&self.arc_ends()).len() + self.free_loops as usize
    }

    /// Derives arc directions from the tuples: every under-passage runs
    /// `a -> c`. The tuples say nothing about a component that never
    /// passes under; it gets whichever direction makes the oriented
    /// canonical key smallest, so the choice does not depend on labels.
    pub fn orientation(&self) -> Result<Orientation, DiagramError> {
        let ends = self.arc_ends();
        let walks = self.traversal(&ends);
        let mut reverse = vec![false; walks.len()];
        let mut loose = Vec::new();
        for (i, walk) in walks.iter().enumerate() {
            let fwd = walk.iter().filter(|d| d.1 == 0).count();
            let back = walk.iter().filter(|d| d.1 == 2).count();
            match (fwd, back) {
                (f, b) if f > 0 && b > 0 => {
                    return Err(DiagramError::Unoriented(format!(
                        "component through arc {} passes under in both directions",
                        self.arc_at(walk[0])
                    )))
                }
                (0, 0) => loose.push(i),
                (_, b) => reverse[i] = b > 0,
            }
        }
        let build = |reverse: &[bool]| {
            let mut heads = vec![(0, 0); self.n_arcs()];
            let mut over_enters_d = vec![false; self.crossings.len()];
            for (walk, &rev) in walks.iter().zip(reverse) {
                for &(c, p) in walk {
                    let entering = if rev { (c, (p + 2) % 4) } else { (c, p) };
                    heads[self.arc_at(entering) as usize - 1] = entering;
                    if entering.1 % 2 == 1 {
                        over_enters_d[c] = entering.1 == 3;
                    }
                }
            }
            Orientation { heads, over_enters_d }
        };
        if loose.is_empty() {
            return Ok(build(&reverse));
        }
        // Past this many loose components the remaining ones keep their
        // traversal direction.
        let k = loose.len().min(MAX_LOOSE_COMPONENTS);
        let tags = vec![(); self.crossings.len()];
        let mut best: Option<(Vec<([ArcId; 4], ())>, Orientation)> = None;
        for mask in 0u32..1 << k {
            for (j, &i) in loose.iter().take(k).enumerate() {
                reverse[i] = mask >> j & 1 == 1;
            }
            let o = build(&reverse);
            let key = self.canonical_tagged(Some(&o.heads), false, &tags);
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                best = Some((key, o));
            }
        }
        Ok(best.unwrap().1)
    }

    pub fn crossing_sign(&self, i: usize) -> Result<i8, DiagramError> {
        Ok(self.orientation()?.sign(i))
    }

    pub fn writhe(&self) -> Result<i32, DiagramError> {
        Ok(self.orientation()?.signs().iter().map(|&s| s as i32).sum())
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Diagram {
        let dirs = self.orientation().ok();
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, x)| x.switched(dirs.as_ref().map(|o| o.over_enters_d(i)).unwrap_or(false)))
            .collect();
        Diagram { crossings, free_loops: self.free_loops }
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let shift = self.n_arcs() as ArcId;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing(x.0.map(|a| a + shift))));
        Diagram { crossings, free_loops: self.free_loops + other.free_loops }
    }

    fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Cuts arc `a1` of `self` and arc `a2` of `other` and joins the loose
    /// ends so that the orientations agree. A crossing-free unknot is the
    /// identity (its arc argument is ignored).
    pub fn connected_sum(&self, a1: ArcId, other: &Diagram, a2: ArcId) -> Result<Diagram, DiagramError> {
        for d in [self, other] {
            if !d.is_knot() {
                return Err(DiagramError::NotAKnot(d.component_count()));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        for (d, a) in [(self, a1), (other, a2)] {
            if a == 0 || a as usize > d.n_arcs() {
                return Err(DiagramError::NoSuchArc(a));
            }
        }
        let o1 = self.orientation()?;
        let o2 = other.orientation()?;
        let shift = self.n_arcs() as ArcId;
        let a2s = a2 + shift;
        let mut crossings = self.crossings.clone();
        let (hc, hp) = o1.head(a1);
        crossings[hc].0[hp] = a2s;
        let base = crossings.len();
        crossings.extend(other.crossings.iter().map(|x| Crossing(x.0.map(|a| a + shift))));
        let (hc, hp) = o2.head(a2);
        crossings[base + hc].0[hp] = a1;
        Ok(Diagram::from_parts(crossings, 0))
    }

    /// Loop count `||S||` of a state, free loops included.
    pub fn resolve_state(&self, state: &State) -> Result<usize, DiagramError> {
        if state.len() != self.crossings.len() {
            return Err(DiagramError::StateLength { expected: self.crossings.len(), got: state.len() });
        }
        let mut uf = UnionFind::new(self.n_arcs());
        for (x, s) in self.crossings.iter().zip(&state.0) {
            for (i, j) in s.joins() {
                uf.union(x.0[i] - 1, x.0[j] - 1);
            }
        }
        Ok(self.count_roots(&mut uf) + self.free_loops as usize)
    }

    /// Loop count for the state encoded in `mask` (bit set = `B`), using a
    /// caller-provided scratch union-find.
    pub(crate) fn loops_for_mask(&self, mask: u64, uf: &mut UnionFind) -> usize {
        uf.reset();
        for (i, x) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = x.0;
            if mask >> i & 1 == 0 {
                uf.union(a - 1, b - 1);
                uf.union(c - 1, d - 1);
            } else {
                uf.union(a - 1, d - 1);
                uf.union(b - 1, c - 1);
            }
        }
        self.count_roots(uf) + self.free_loops as usize
    }

    fn count_roots(&self, uf: &mut UnionFind) -> usize {
        (0..self.n_arcs() as u32).filter(|&i| uf.find(i) == i).count()
    }

    /// Faces of the ribbon graph given by the counterclockwise tuples.
    /// Each face is a cycle of darts; dart `(c, p)` stands for the arc at
    /// that slot traversed away from `c`, with the face on its right.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let ends = self.arc_ends();
        let n = self.crossings.len();
        let mut seen = vec![false; 4 * n];
        let mut faces = Vec::new();
        for c in 0..n {
            for p in 0..4 {
                if seen[4 * c + p] {
                    continue;
                }
                let mut face = Vec::new();
                let mut h = (c, p);
                while !seen[4 * h.0 + h.1] {
                    seen[4 * h.0 + h.1] = true;
                    face.push(h);
                    let o = Self::other_end(&ends, self.arc_at(h), h);
                    h = (o.0, (o.1 + 1) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Euler-characteristic check `V - E + F = 2` on every connected piece.
    pub fn is_planar(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return true;
        }
        let ends = self.arc_ends();
        let mut uf = UnionFind::new(n);
        for e in &ends {
            uf.union(e[0].0 as u32, e[1].0 as u32);
        }
        let mut chi = vec![0i64; n];
        for c in 0..n as u32 {
            // V - E: each crossing contributes 1 vertex and 2 edges.
            chi[uf.find(c) as usize] -= 1;
        }
        for f in self.faces() {
            chi[uf.find(f[0].0 as u32) as usize] += 1;
        }
        (0..n as u32).filter(|&c| uf.find(c) == c).all(|c| chi[c as usize] == 2)
    }

    /// Removes the crossings in `removed`, joining slot pairs as given per
    /// removed crossing. Arcs that close up become free loops; surviving
    /// arcs are renumbered `1..` in order of their smallest old id.
    pub(crate) fn excise(&self, removed: &[(usize, [(usize, usize); 2])]) -> Diagram {
        let mut uf = UnionFind::new(self.n_arcs());
        let mut gone = vec![false; self.crossings.len()];
        for &(c, joins) in removed {
            gone[c] = true;
            let x = self.crossings[c].0;
            for (i, j) in joins {
                uf.union(x[i] - 1, x[j] - 1);
            }
        }
        let mut live = vec![false; self.n_arcs()];
        for (c, x) in self.crossings.iter().enumerate() {
            if !gone[c] {
                for &a in &x.0 {
                    let r = uf.find(a - 1);
                    live[r as usize] = true;
                }
            }
        }
        let mut closed = vec![false; self.n_arcs()];
        for &(c, _) in removed {
            for &a in &self.crossings[c].0 {
                let r = uf.find(a - 1) as usize;
                if !live[r] {
                    closed[r] = true;
                }
            }
        }
        let mut relabel = vec![0 as ArcId; self.n_arcs()];
        let mut next = 1;
        for (r, l) in live.iter().enumerate() {
            if *l {
                relabel[r] = next;
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(c, _)| !gone[*c])
            .map(|(_, x)| Crossing(x.0.map(|a| relabel[uf.find(a - 1) as usize])))
            .collect();
        let new_loops = closed.iter().filter(|&&b| b).count() as u32;
        Diagram::from_parts(crossings, self.free_loops + new_loops)
    }

    /// Diagram with crossing `c` replaced by the given smoothing.
    pub fn smoothed(&self, c: usize, s: Smoothing) -> Diagram {
        self.excise(&[(c, s.joins())])
    }

    /// Diagram with crossing `c` deleted and both strands passing straight
    /// through (used when a Reidemeister move removes crossings).
    pub(crate) fn without_crossings(&self, cs: &[usize]) -> Diagram {
        let v: Vec<_> = cs.iter().map(|&c| (c, [(0, 2), (1, 3)])).collect();
        self.excise(&v)
    }

    pub(crate) fn with_crossing(&self, c: usize, x: Crossing) -> Diagram {
        let mut d = self.clone();
        d.crossings[c] = x;
        d
    }

    /// Canonical relabeling: among all traversal starts, the one giving the
    /// lexicographically smallest sorted tuple list. Oriented diagrams are
    /// only walked along their orientation.
    pub fn normal_form(&self) -> Diagram {
        let key = self.canonical_key(KeyMode::Oriented);
        Diagram::from_parts(key.crossings.into_iter().map(Crossing).collect(), key.free_loops)
    }

    pub(crate) fn canonical_key(&self, mode: KeyMode) -> NormalKey {
        let heads = match mode {
            KeyMode::Oriented => self.orientation().ok().map(|o| o.heads),
            KeyMode::Unoriented => None,
        };
        let tags = vec![(); self.crossings.len()];
        let best = self.canonical_tagged(heads.as_deref(), mode == KeyMode::Unoriented, &tags);
        NormalKey { crossings: best.into_iter().map(|(t, _)| t).collect(), free_loops: self.free_loops }
    }

    /// Relabeling-invariant form of the crossing list. Each connected
    /// piece takes its smallest sorted relabeled tuple list over all
    /// traversal starts; pieces are then sorted and numbered in order.
    /// With `heads`, strands are only walked along the given directions;
    /// `rotate` identifies `(a,b,c,d)` with `(c,d,a,b)`. `tags` ride along
    /// with their crossings.
    pub(crate) fn canonical_tagged<T: Copy + Ord>(
        &self,
        heads: Option<&[Dart]>,
        rotate: bool,
        tags: &[T],
    ) -> Vec<([ArcId; 4], T)> {
        let n = self.crossings.len();
        if n == 0 {
            return vec![];
        }
        let ends = self.arc_ends();
        let mut uf = UnionFind::new(n);
        for e in &ends {
            uf.union(e[0].0 as u32, e[1].0 as u32);
        }
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        let mut piece_of = vec![usize::MAX; n];
        for c in 0..n {
            let r = uf.find(c as u32) as usize;
            if piece_of[r] == usize::MAX {
                piece_of[r] = pieces.len();
                pieces.push(Vec::new());
            }
            pieces[piece_of[r]].push(c);
        }
        let mut scratch = Relabeler::new(n);
        let mut keyed: Vec<Vec<([ArcId; 4], T)>> = pieces
            .iter()
            .map(|cs| {
                let mut best: Option<Vec<([ArcId; 4], T)>> = None;
                for &c in cs {
                    for p in 0..4 {
                        let start = (c, p);
                        if heads.is_some_and(|h| h[self.arc_at(start) as usize - 1] != start) {
                            continue;
                        }
                        let mut t: Vec<_> = scratch
                            .run(self, &ends, heads, start, rotate)
                            .into_iter()
                            .map(|(c, x)| (x, tags[c]))
                            .collect();
                        t.sort_unstable();
                        if best.as_ref().map_or(true, |b| t < *b) {
                            best = Some(t);
                        }
                    }
                }
                best.expect("every piece has a start")
            })
            .collect();
        keyed.sort_unstable();
        let mut out = Vec::with_capacity(n);
        let mut offset = 0;
        for piece in keyed {
            let m = piece.len() as ArcId;
            out.extend(piece.into_iter().map(|(x, t)| (x.map(|a| a + offset), t)));
            offset += 2 * m;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let orientation = self.orientation().ok().map(|o| o.signs());
        json!({
            "crossings": self.crossings.iter().map(|x| x.0.to_vec()).collect::<Vec<_>>(),
            "free_loops": self.free_loops,
            "orientation": orientation,
        })
    }

    pub fn from_json(v: &Value) -> Result<Diagram, DiagramError> {
        let bad = |m: &str| DiagramError::Json(m.to_string());
        let xs = v.get("crossings").and_then(Value::as_array).ok_or_else(|| bad("missing crossings"))?;
        let mut tuples = Vec::with_capacity(xs.len());
        for x in xs {
            let a = x.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("crossing must have 4 entries"))?;
            let mut t = [0; 4];
            for (k, e) in a.iter().enumerate() {
                t[k] = e.as_u64().and_then(|e| ArcId::try_from(e).ok()).ok_or_else(|| bad("bad arc id"))?;
            }
            tuples.push(t);
        }
        let free = match v.get("free_loops") {
            None | Some(Value::Null) => 0,
            Some(f) => f.as_u64().and_then(|f| u32::try_from(f).ok()).ok_or_else(|| bad("bad free_loops"))?,
        };
        let d = Diagram::from_tuples(&tuples, free)?;
        if let Some(o) = v.get("orientation").filter(|o| !o.is_null()) {
            let given: Vec<i64> = o
                .as_array()
                .ok_or_else(|| bad("orientation must be a list of signs"))?
                .iter()
                .map(|s| s.as_i64().ok_or_else(|| bad("bad sign")))
                .collect::<Result<_, _>>()?;
            let derived: Vec<i64> = d.orientation()?.signs().into_iter().map(i64::from).collect();
            if given != derived {
                return Err(DiagramError::OrientationMismatch);
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum KeyMode {
    Oriented,
    Unoriented,
}

/// Relabel-invariant key of a diagram (see [`Diagram::canonical_key`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct NormalKey {
    pub crossings: Vec<[ArcId; 4]>,
    pub free_loops: u32,
}

struct Relabeler {
    label: Vec<ArcId>,
    visited: Vec<bool>,
    order: Vec<usize>,
}

impl Relabeler {
    fn new(n: usize) -> Self {
        Relabeler { label: vec![0; 2 * n], visited: vec![false; n], order: Vec::with_capacity(n) }
    }

    fn run(
        &mut self,
        d: &Diagram,
        ends: &[[Dart; 2]],
        heads: Option<&[Dart]>,
        start: Dart,
        rotate: bool,
    ) -> Vec<(usize, [ArcId; 4])> {
        self.label.iter_mut().for_each(|l| *l = 0);
        self.visited.iter_mut().for_each(|v| *v = false);
        self.order.clear();
        let mut next: ArcId = 1;
        self.walk(d, ends, start, &mut next);
        let mut scan = 0;
        while scan < self.order.len() {
            let c = self.order[scan];
            for p in 0..4 {
                let a = d.crossings[c].0[p];
                if self.label[a as usize - 1] == 0 {
                    let s = match heads {
                        Some(h) => h[a as usize - 1],
                        None => Diagram::other_end(ends, a, (c, p)),
                    };
                    self.walk(d, ends, s, &mut next);
                }
            }
            scan += 1;
        }
        self.order
            .iter()
            .map(|&c| {
                let t = d.crossings[c].0.map(|a| self.label[a as usize - 1]);
                (c, if rotate { t.min([t[2], t[3], t[0], t[1]]) } else { t })
            })
            .collect()
    }

    fn walk(&mut self, d: &Diagram, ends: &[[Dart; 2]], start: Dart, next: &mut ArcId) {
        let mut cur = start;
        loop {
            let a = d.arc_at(cur);
            if self.label[a as usize - 1] == 0 {
                self.label[a as usize - 1] = *next;
                *next += 1;
            }
            if !self.visited[cur.0] {
                self.visited[cur.0] = true;
                self.order.push(cur.0);
            }
            let exit = (cur.0, (cur.1 + 2) % 4);
            cur = Diagram::other_end(ends, d.arc_at(exit), exit);
            if cur == start {
                return;
            }
        }
    }
}
