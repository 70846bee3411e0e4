//! `Hom(a, b) <-> End(up^r)` by moving downward letters to the left edge with
//! crossings and bending them around with cups and caps.

use super::CycloError;
use crate::diagrams::{expr_compose, expr_tensor, Dir, Expr, Gen, Layer, Word};

#[derive(Clone, Debug)]
enum Step {
    /// The downward source letter at `pos` is bent up into the target.
    Src { src: Word, pos: usize },
    /// The downward target letter at `pos` is bent down into the source.
    Dst { dst: Word, pos: usize },
}

/// Mutually inverse maps between `Hom(a, b)` and `End(up^r)`.
#[derive(Clone, Debug)]
pub struct HomTransport {
    pub a: Word,
    pub b: Word,
    pub r: usize,
    steps: Vec<Step>,
}

fn layer(w: &Word, at: usize, g: Gen) -> Expr {
    Expr::from_layer(Layer::at(w, at, g))
}

fn compose(f: &Expr, g: &Expr) -> Expr {
    expr_compose(f, g).expect("transport maps are well typed")
}

/// `w -> w'` where `w'` has the letter at `p` moved to the front.
fn to_front(w: &Word, p: usize) -> Expr {
    let mut cur = w.clone();
    let mut out = Expr::identity(w.clone());
    for j in (0..p).rev() {
        let (x, y) = (cur.0[j], cur.0[j + 1]);
        out = compose(&layer(&cur, j, Gen::crossing_for(x, y)), &out);
        cur.0.swap(j, j + 1);
    }
    out
}

/// The inverse of `to_front(w, p)`.
fn from_front(w: &Word, p: usize) -> Expr {
    let mut cur = w.clone();
    let letter = cur.0.remove(p);
    cur.0.insert(0, letter);
    let mut out = Expr::identity(cur.clone());
    for j in 0..p {
        let (x, y) = (cur.0[j], cur.0[j + 1]);
        out = compose(&layer(&cur, j, Gen::crossing_for(x, y)), &out);
        cur.0.swap(j, j + 1);
    }
    out
}

fn id(w: &Word) -> Expr {
    Expr::identity(w.clone())
}

fn g(gen: Gen) -> Expr {
    Expr::gen(gen)
}

fn up() -> Word {
    Word::ups(1)
}

fn down() -> Word {
    Word::downs(1)
}

impl HomTransport {
    pub fn new(a: &Word, b: &Word) -> Result<HomTransport, CycloError> {
        if a.flow() != b.flow() {
            return Err(CycloError::FlowMismatch(a.to_string(), b.to_string()));
        }
        let (mut src, mut dst) = (a.clone(), b.clone());
        let mut steps = Vec::new();
        while let Some(pos) = src.0.iter().position(|&d| d == Dir::Down) {
            steps.push(Step::Src {
                src: src.clone(),
                pos,
            });
            src.0.remove(pos);
            dst.0.insert(0, Dir::Up);
        }
        while let Some(pos) = dst.0.iter().position(|&d| d == Dir::Down) {
            steps.push(Step::Dst {
                dst: dst.clone(),
                pos,
            });
            dst.0.remove(pos);
            src.0.insert(0, Dir::Up);
        }
        debug_assert_eq!(src, dst);
        Ok(HomTransport {
            a: a.clone(),
            b: b.clone(),
            r: src.len(),
            steps,
        })
    }

    /// `Hom(a, b) -> End(up^r)`.
    pub fn forward(&self, e: &Expr) -> Expr {
        let mut cur = e.clone();
        for step in &self.steps {
            cur = match step {
                Step::Src { src, pos } => {
                    // X -> up down X -> up dst
                    let g1 = compose(&cur, &from_front(src, *pos));
                    let x = src.slice(0, *pos).concat(&src.slice(pos + 1, src.len()));
                    compose(
                        &expr_tensor(&id(&up()), &g1),
                        &expr_tensor(&g(Gen::LCup), &id(&x)),
                    )
                }
                Step::Dst { dst, pos } => {
                    // up src -> up down Y -> Y
                    let g1 = compose(&to_front(dst, *pos), &cur);
                    let y = dst.slice(0, *pos).concat(&dst.slice(pos + 1, dst.len()));
                    compose(
                        &expr_tensor(&g(Gen::RCap), &id(&y)),
                        &expr_tensor(&id(&up()), &g1),
                    )
                }
            };
        }
        cur
    }

    /// `End(up^r) -> Hom(a, b)`.
    pub fn backward(&self, e: &Expr) -> Expr {
        let mut cur = e.clone();
        for step in self.steps.iter().rev() {
            cur = match step {
                Step::Src { src, pos } => {
                    // down X -> down up dst -> dst
                    let dst = cur.dst().slice(1, cur.dst().len());
                    let g1 = compose(
                        &expr_tensor(&g(Gen::LCap), &id(&dst)),
                        &expr_tensor(&id(&down()), &cur),
                    );
                    compose(&g1, &to_front(src, *pos))
                }
                Step::Dst { dst, pos } => {
                    // src -> down up src -> down Y
                    let src = cur.src().slice(1, cur.src().len());
                    let g1 = compose(
                        &expr_tensor(&id(&down()), &cur),
                        &expr_tensor(&g(Gen::RCup), &id(&src)),
                    );
                    compose(&from_front(dst, *pos), &g1)
                }
            };
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_expr;
    use crate::normalform::normalize;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn moves_are_inverse() {
        let word = w("uddu");
        for p in 0..4 {
            let there = compose(&from_front(&word, p), &to_front(&word, p));
            assert_eq!(normalize(&there).unwrap(), normalize(&id(&word)).unwrap());
        }
    }

    #[test]
    fn flow_mismatch() {
        assert!(HomTransport::new(&w("u"), &w("d")).is_err());
    }

    #[test]
    fn round_trips() {
        let cases = [
            ("du", "", "cap"),
            ("", "ud", "cup"),
            ("ud", "du", "ls"),
            ("u", "u", "x"),
            ("dudu", "", "cap * cap"),
            ("ddu", "d", "(id(d) * cap) . (id(d) * xd * id(u))"),
        ];
        for (a, b, text) in cases {
            let t = HomTransport::new(&w(a), &w(b)).unwrap();
            let e = parse_expr(text).unwrap();
            let f = t.forward(&e);
            assert_eq!(f.src(), &Word::ups(t.r));
            assert_eq!(f.dst(), &Word::ups(t.r));
            let back = t.backward(&normalize(&f).unwrap().to_expr());
            assert_eq!(normalize(&back).unwrap(), normalize(&e).unwrap(), "{text}");
        }
    }
}
