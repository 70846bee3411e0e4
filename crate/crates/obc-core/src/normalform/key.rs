use serde::{Deserialize, Serialize};
use serde_json::json;

use super::NormalError;
use crate::diagrams::{Dir, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Side {
    Bottom,
    Top,
}

/// A boundary point; ordered bottom before top, then by position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Endpoint {
    pub side: Side,
    pub pos: usize,
}

impl Endpoint {
    pub fn bottom(pos: usize) -> Endpoint {
        Endpoint {
            side: Side::Bottom,
            pos,
        }
    }

    pub fn top(pos: usize) -> Endpoint {
        Endpoint {
            side: Side::Top,
            pos,
        }
    }

    pub fn is_top(self) -> bool {
        self.side == Side::Top
    }
}

/// One strand: it enters the picture at `start` and leaves at `end`. Closed dots sit next to
/// `start`, the open dot (when `cliff`) next to `end`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Strand {
    pub start: Endpoint,
    pub end: Endpoint,
    pub cliff: bool,
    pub dots: u32,
}

impl Strand {
    pub fn least(&self) -> Endpoint {
        self.start.min(self.end)
    }

    pub fn is_cap(&self) -> bool {
        !self.start.is_top() && !self.end.is_top()
    }

    pub fn is_cup(&self) -> bool {
        self.start.is_top() && self.end.is_top()
    }
}

/// A normally ordered dotted diagram without bubbles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalKey {
    pub src: Word,
    pub dst: Word,
    strands: Vec<Strand>,
}

fn is_start(side: Side, d: Dir) -> bool {
    matches!((side, d), (Side::Bottom, Dir::Up) | (Side::Top, Dir::Down))
}

impl NormalKey {
    /// Builds a key and checks orientation consistency.
    pub fn new(src: Word, dst: Word, mut strands: Vec<Strand>) -> Result<NormalKey, NormalError> {
        let mut seen_b = vec![false; src.len()];
        let mut seen_t = vec![false; dst.len()];
        for s in &strands {
            for (e, want_start) in [(s.start, true), (s.end, false)] {
                let (word, seen) = match e.side {
                    Side::Bottom => (&src, &mut seen_b),
                    Side::Top => (&dst, &mut seen_t),
                };
                let d = *word
                    .letters()
                    .get(e.pos)
                    .ok_or_else(|| NormalError::BadKey(format!("endpoint {e:?} out of range")))?;
                if is_start(e.side, d) != want_start {
                    return Err(NormalError::BadKey(format!(
                        "endpoint {e:?} has the wrong orientation"
                    )));
                }
                if std::mem::replace(&mut seen[e.pos], true) {
                    return Err(NormalError::BadKey(format!("endpoint {e:?} used twice")));
                }
            }
        }
        if seen_b.iter().chain(&seen_t).any(|x| !x) {
            return Err(NormalError::BadKey("matching is not perfect".into()));
        }
        strands.sort_by_key(|s| s.least());
        Ok(NormalKey { src, dst, strands })
    }

    pub(crate) fn from_parts(src: Word, dst: Word, mut strands: Vec<Strand>) -> NormalKey {
        strands.sort_by_key(|s| s.least());
        NormalKey { src, dst, strands }
    }

    pub fn identity(w: &Word) -> NormalKey {
        let strands = w
            .letters()
            .iter()
            .enumerate()
            .map(|(q, d)| match d {
                Dir::Up => Strand {
                    start: Endpoint::bottom(q),
                    end: Endpoint::top(q),
                    cliff: false,
                    dots: 0,
                },
                Dir::Down => Strand {
                    start: Endpoint::top(q),
                    end: Endpoint::bottom(q),
                    cliff: false,
                    dots: 0,
                },
            })
            .collect();
        NormalKey::from_parts(w.clone(), w.clone(), strands)
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub(crate) fn strands_mut(&mut self) -> &mut Vec<Strand> {
        &mut self.strands
    }

    pub(crate) fn resort(&mut self) {
        self.strands.sort_by_key(|s| s.least());
    }

    pub fn total_dots(&self) -> u32 {
        self.strands.iter().map(|s| s.dots).sum()
    }

    pub fn max_dots(&self) -> u32 {
        self.strands.iter().map(|s| s.dots).max().unwrap_or(0)
    }

    pub fn whites(&self) -> usize {
        self.strands.iter().filter(|s| s.cliff).count()
    }

    pub fn is_odd(&self) -> bool {
        self.whites() % 2 == 1
    }

    /// Index of the strand touching top position `p`.
    pub fn at_top(&self, p: usize) -> usize {
        let e = Endpoint::top(p);
        self.strands
            .iter()
            .position(|s| s.start == e || s.end == e)
            .expect("top endpoint is matched")
    }

    pub fn at_bottom(&self, p: usize) -> usize {
        let e = Endpoint::bottom(p);
        self.strands
            .iter()
            .position(|s| s.start == e || s.end == e)
            .expect("bottom endpoint is matched")
    }

    /// Open dots at top outward endpoints, i.e. the topmost band of the representative.
    pub fn top_whites(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .strands
            .iter()
            .filter(|s| s.cliff && s.end.is_top())
            .map(|s| s.end.pos)
            .collect();
        v.sort();
        v
    }

    pub fn bottom_whites(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .strands
            .iter()
            .filter(|s| s.cliff && !s.end.is_top())
            .map(|s| s.end.pos)
            .collect();
        v.sort();
        v
    }

    /// Same key with every strand's dot count replaced by zero.
    pub fn undotted(&self) -> NormalKey {
        let mut k = self.clone();
        for s in &mut k.strands {
            s.dots = 0;
        }
        k
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ep = |e: Endpoint| json!([if e.is_top() { "top" } else { "bottom" }, e.pos]);
        let matching: Vec<_> = self
            .strands
            .iter()
            .map(|s| {
                let (a, b) = if s.start <= s.end {
                    (s.start, s.end)
                } else {
                    (s.end, s.start)
                };
                json!([ep(a), ep(b)])
            })
            .collect();
        json!({
            "src": self.src.to_string(),
            "dst": self.dst.to_string(),
            "matching": matching,
            "cliff": self.strands.iter().map(|s| u8::from(s.cliff)).collect::<Vec<_>>(),
            "dots": self.strands.iter().map(|s| s.dots).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for NormalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ep = |e: Endpoint| format!("{}{}", if e.is_top() { "t" } else { "b" }, e.pos);
        let parts: Vec<String> = self
            .strands
            .iter()
            .map(|s| {
                let mut t = format!("{}>{}", ep(s.start), ep(s.end));
                if s.cliff {
                    t.push_str(" c");
                }
                if s.dots > 0 {
                    t.push_str(&format!(" x^{}", s.dots));
                }
                t
            })
            .collect();
        let w = |x: &Word| {
            if x.is_empty() {
                "1".to_string()
            } else {
                x.to_string()
            }
        };
        write!(
            f,
            "[{} -> {} | {}]",
            w(&self.src),
            w(&self.dst),
            parts.join(", ")
        )
    }
}

/// Starts (inward points) and ends (outward points) of the boundary of `src -> dst`.
fn boundary(src: &Word, dst: &Word) -> (Vec<Endpoint>, Vec<Endpoint>) {
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for (q, d) in src.letters().iter().enumerate() {
        match d {
            Dir::Up => starts.push(Endpoint::bottom(q)),
            Dir::Down => ends.push(Endpoint::bottom(q)),
        }
    }
    for (q, d) in dst.letters().iter().enumerate() {
        match d {
            Dir::Down => starts.push(Endpoint::top(q)),
            Dir::Up => ends.push(Endpoint::top(q)),
        }
    }
    (starts, ends)
}

/// Bounds for key enumeration: total closed dots `<= max_dots` and per-strand dots `< per_strand`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotBounds {
    pub max_dots: Option<u32>,
    pub per_strand: Option<u32>,
}

impl DotBounds {
    pub fn total(k: u32) -> DotBounds {
        DotBounds {
            max_dots: Some(k),
            per_strand: None,
        }
    }

    pub fn per_strand(l: u32) -> DotBounds {
        DotBounds {
            max_dots: None,
            per_strand: Some(l),
        }
    }

    fn strand_cap(&self) -> Option<u32> {
        match (self.max_dots, self.per_strand) {
            (Some(a), Some(b)) => Some(a.min(b.saturating_sub(1))),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b.saturating_sub(1)),
            (None, None) => None,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn dot_vectors(m: usize, cap: u32, total: Option<u32>) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for d in 0..=cap {
                if total.is_some_and(|t| used + d > t) {
                    break;
                }
                let mut w = v.clone();
                w.push(d);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// All normally ordered keys `src -> dst` within the bounds, in a fixed order.
pub fn enumerate_keys(
    src: &Word,
    dst: &Word,
    bounds: DotBounds,
) -> Result<Vec<NormalKey>, NormalError> {
    let (starts, ends) = boundary(src, dst);
    if starts.len() != ends.len() {
        return Ok(Vec::new());
    }
    let m = starts.len();
    let cap = match bounds.strand_cap() {
        Some(c) => c,
        None if m == 0 => 0,
        None => return Err(NormalError::Unbounded),
    };
    let dots = dot_vectors(m, cap, bounds.max_dots);
    let mut out = Vec::new();
    for perm in permutations(m) {
        for bits in 0u32..(1 << m) {
            for dv in &dots {
                let strands = (0..m)
                    .map(|k| Strand {
                        start: starts[k],
                        end: ends[perm[k]],
                        cliff: bits >> k & 1 == 1,
                        dots: dv[k],
                    })
                    .collect();
                out.push(NormalKey::from_parts(src.clone(), dst.clone(), strands));
            }
        }
    }
    Ok(out)
}

/// Number of bubble monomials of total dot weight at most `k` (bubbles carry odd dot counts).
pub fn bubble_monomial_count(k: u32) -> usize {
    // partitions of each w <= k into odd parts
    let k = k as usize;
    let mut ways = vec![0usize; k + 1];
    ways[0] = 1;
    let mut part = 1;
    while part <= k {
        for w in part..=k {
            ways[w] += ways[w - part];
        }
        part += 2;
    }
    ways.iter().sum()
}

/// Pairs (key, bubble monomial) with at most `k` closed dots in total.
pub fn dim_filtered(src: &Word, dst: &Word, k: u32) -> Result<usize, NormalError> {
    let keys = enumerate_keys(src, dst, DotBounds::total(k))?;
    Ok(keys
        .iter()
        .map(|key| bubble_monomial_count(k - key.total_dots()))
        .sum())
}
