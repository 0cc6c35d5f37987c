//! Text notations for diagrams.
//!
//! * PD code: `PD[X(a,b,c,d), ..., O*k]`. Each `X` lists arcs
//!   counterclockwise from the incoming under-strand (the same convention
//!   as [`Crossing`]); the optional `O*k` adds `k` crossing-free loops.
//!   Whitespace is ignored.
//! * Braid word: `Bn: e1 e2 ... ek` where `e = i` is the generator
//!   `sigma_i` (a positive crossing when strands run downward) and
//!   `e = -i` its inverse, `1 <= i < n`.
//! * Knot table: one entry per line, `name | diagram | key=value; ...`.
//!   The expectation column is optional; `#` starts a comment line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::diagram::{ArcId, Crossing, Diagram, DiagramError};

#[derive(Debug, Error)]
pub enum NotationError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Validation(#[from] DiagramError),
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i64, strands: u32 },
    #[error("a braid needs at least 2 strands, got {0}")]
    InvalidStrandCount(u32),
    #[error("line {line}: {source}")]
    TableLine { line: usize, source: Box<NotationError> },
    #[error("line {line}: duplicate entry name '{name}'")]
    DuplicateName { name: String, line: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl NotationError {
    /// Validation failures (as opposed to syntax errors), looking through
    /// table line wrappers.
    pub fn is_validation(&self) -> bool {
        match self {
            NotationError::Validation(_) => true,
            NotationError::TableLine { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { s: text.as_bytes(), pos: 0 }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> NotationError {
        NotationError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, b: u8) -> Result<(), NotationError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64, NotationError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| NotationError::Syntax { pos: start, msg: "number too large".into() })
    }

    fn int(&mut self) -> Result<i64, NotationError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let v = i64::try_from(self.uint()?).map_err(|_| NotationError::Syntax { pos: start, msg: "number too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_pd(text: &str) -> Result<Diagram, NotationError> {
    let mut sc = Scanner::new(text);
    sc.expect(b'P')?;
    if sc.s.get(sc.pos) != Some(&b'D') {
        return Err(sc.err("expected 'PD['"));
    }
    sc.pos += 1;
    sc.expect(b'[')?;
    let mut tuples: Vec<[ArcId; 4]> = Vec::new();
    let mut free: Option<u32> = None;
    if !sc.eat(b']') {
        loop {
            if free.is_some() {
                return Err(sc.err("O*k must be the last item"));
            }
            match sc.peek() {
                Some(b'X') => {
                    sc.pos += 1;
                    sc.expect(b'(')?;
                    let mut t = [0; 4];
                    for (k, slot) in t.iter_mut().enumerate() {
                        if k > 0 {
                            sc.expect(b',')?;
                        }
                        let at = sc.pos;
                        *slot = ArcId::try_from(sc.uint()?)
                            .map_err(|_| NotationError::Syntax { pos: at, msg: "arc id too large".into() })?;
                    }
                    if sc.peek() == Some(b',') {
                        return Err(sc.err("a crossing has exactly 4 arcs"));
                    }
                    sc.expect(b')')?;
                    tuples.push(t);
                }
                Some(b'O') => {
                    sc.pos += 1;
                    let k = if sc.eat(b'*') {
                        let at = sc.pos;
                        u32::try_from(sc.uint()?).map_err(|_| NotationError::Syntax { pos: at, msg: "loop count too large".into() })?
                    } else {
                        1
                    };
                    free = Some(k);
                }
                _ => return Err(sc.err("expected X(...) or O*k")),
            }
            if sc.eat(b']') {
                break;
            }
            sc.expect(b',')?;
        }
    }
    if !sc.at_end() {
        return Err(sc.err("trailing input after ']'"));
    }
    Ok(Diagram::from_tuples(&tuples, free.unwrap_or(0))?)
}

/// Canonical PD text: the normal form, crossings sorted.
pub fn emit_pd(d: &Diagram) -> String {
    let nf = d.normal_form();
    let mut items: Vec<String> = nf.crossings().iter().map(|x| {
        let [a, b, c, e] = x.0;
        format!("X({a},{b},{c},{e})")
    }).collect();
    if nf.free_loops() > 0 {
        items.push(format!("O*{}", nf.free_loops()));
    }
    format!("PD[{}]", items.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<BraidWord, NotationError> {
        if strands < 2 {
            return Err(NotationError::InvalidStrandCount(strands));
        }
        for &e in &letters {
            if e == 0 || e.unsigned_abs() >= strands {
                return Err(NotationError::GeneratorOutOfRange { generator: e as i64, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for e in &self.letters {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord, NotationError> {
    let mut sc = Scanner::new(text);
    sc.expect(b'B')?;
    let at = sc.pos;
    let n = u32::try_from(sc.uint()?).map_err(|_| NotationError::Syntax { pos: at, msg: "strand count too large".into() })?;
    sc.expect(b':')?;
    let mut letters = Vec::new();
    while !sc.at_end() {
        sc.eat(b',');
        let at = sc.pos;
        let e = sc.int()?;
        if e == 0 {
            return Err(NotationError::Syntax { pos: at, msg: "generator 0 does not exist".into() });
        }
        let e = i32::try_from(e).map_err(|_| NotationError::GeneratorOutOfRange { generator: e, strands: n })?;
        letters.push(e);
    }
    BraidWord::new(n, letters)
}

/// Closes the braid by joining bottom position `i` to top position `i`.
/// Arc ids are assigned in order of first appearance while scanning the
/// crossings top to bottom; untouched strand positions become free loops.
pub fn braid_closure(w: &BraidWord) -> Diagram {
    let n = w.strands as usize;
    let mut current: Vec<ArcId> = (1..=n as ArcId).collect();
    let mut next = n as ArcId + 1;
    let mut tuples = Vec::with_capacity(w.letters.len());
    for &e in &w.letters {
        let i = e.unsigned_abs() as usize - 1;
        let (in_l, in_r) = (current[i], current[i + 1]);
        let (out_l, out_r) = (next, next + 1);
        next += 2;
        tuples.push(if e > 0 {
            [in_l, out_l, out_r, in_r]
        } else {
            [in_r, in_l, out_l, out_r]
        });
        current[i] = out_l;
        current[i + 1] = out_r;
    }
    // Identify the bottom arc at each position with the top arc there.
    let mut alias: Vec<ArcId> = (0..next).collect();
    let mut free = 0;
    for (p, &bottom) in current.iter().enumerate() {
        let top = p as ArcId + 1;
        if bottom == top {
            free += 1;
        } else {
            alias[bottom as usize] = top;
        }
    }
    let mut relabel = vec![0 as ArcId; next as usize];
    let mut fresh = 1;
    let crossings = tuples
        .into_iter()
        .map(|t| {
            Crossing(t.map(|a| {
                let a = alias[a as usize] as usize;
                if relabel[a] == 0 {
                    relabel[a] = fresh;
                    fresh += 1;
                }
                relabel[a]
            }))
        })
        .collect();
    Diagram::from_parts(crossings, free)
}

/// Parses either notation, chosen by the leading `PD[` or `B`.
pub fn parse_diagram(text: &str) -> Result<Diagram, NotationError> {
    let t = text.trim_start();
    if t.starts_with('B') {
        parse_braid(text).map(|w| braid_closure(&w))
    } else {
        parse_pd(text)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub name: String,
    pub diagram: Diagram,
    /// Invariant name -> expected polynomial text.
    pub expected: BTreeMap<String, String>,
}

fn table_err(line: usize, e: NotationError) -> NotationError {
    NotationError::TableLine { line, source: Box::new(e) }
}

pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, NotationError> {
    let mut out: Vec<TableEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = l.split('|').map(str::trim).collect();
        if cols.len() < 2 || cols.len() > 3 {
            return Err(table_err(line, NotationError::Syntax { pos: 0, msg: "expected 'name | diagram | expectations'".into() }));
        }
        let name = cols[0];
        if name.is_empty() {
            return Err(table_err(line, NotationError::Syntax { pos: 0, msg: "empty entry name".into() }));
        }
        if out.iter().any(|e| e.name == name) {
            return Err(NotationError::DuplicateName { name: name.to_string(), line });
        }
        let diagram = parse_diagram(cols[1]).map_err(|e| table_err(line, e))?;
        let mut expected = BTreeMap::new();
        if let Some(ex) = cols.get(2) {
            for kv in ex.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| table_err(line, NotationError::Syntax { pos: 0, msg: format!("expected key=value, got '{kv}'") }))?;
                expected.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        out.push(TableEntry { name: name.to_string(), diagram, expected });
    }
    Ok(out)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<TableEntry>, NotationError> {
    parse_table(&std::fs::read_to_string(path)?)
}
