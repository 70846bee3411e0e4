use std::collections::BTreeMap;

use serde::Serialize;

use super::gen::{Gen, Layer};
use super::word::Word;
use super::DiagramError;
use crate::scalars::GRat;

/// A sequence of layers read bottom to top.
pub type Stack = Vec<Layer>;

/// Formal linear combination of layered diagrams sharing source and target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expr {
    src: Word,
    dst: Word,
    terms: BTreeMap<Stack, GRat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: bool) -> Parity {
        if b {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Expr {
    pub fn zero(src: Word, dst: Word) -> Expr {
        Expr {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(w: Word) -> Expr {
        Expr::scaled_identity(w, GRat::one())
    }

    pub fn scaled_identity(w: Word, c: GRat) -> Expr {
        let mut e = Expr::zero(w.clone(), w);
        e.add_stack(Vec::new(), c);
        e
    }

    /// A scalar, as an endomorphism of the unit object.
    pub fn scalar(c: GRat) -> Expr {
        Expr::scaled_identity(Word::empty(), c)
    }

    pub fn from_layer(l: Layer) -> Expr {
        let mut e = Expr::zero(l.src(), l.dst());
        e.add_stack(vec![l], GRat::one());
        e
    }

    /// Builds from a nonempty stack, checking adjacency.
    pub fn from_stack(stack: Stack) -> Result<Expr, DiagramError> {
        let first = stack.first().ok_or(DiagramError::EmptyStack)?;
        let src = first.src();
        check_stack(&src, &stack)?;
        let dst = stack.last().unwrap().dst();
        let mut e = Expr::zero(src, dst);
        e.add_stack(stack, GRat::one());
        Ok(e)
    }

    /// Builds from a stack on a known source word (the stack may be empty).
    pub fn from_stack_on(src: Word, stack: Stack, coeff: GRat) -> Result<Expr, DiagramError> {
        check_stack(&src, &stack)?;
        let dst = stack.last().map(|l| l.dst()).unwrap_or_else(|| src.clone());
        let mut e = Expr::zero(src, dst);
        e.add_stack(stack, coeff);
        Ok(e)
    }

    /// Counterclockwise bubble with `k` closed dots.
    pub fn bubble(k: u32) -> Expr {
        let e = Word::empty();
        let d: Word = "d".parse().unwrap();
        let mut stack = vec![Layer::new(e.clone(), Gen::RCup, e.clone())];
        for _ in 0..k {
            stack.push(Layer::new(d.clone(), Gen::BlackDot, e.clone()));
        }
        stack.push(Layer::new(e.clone(), Gen::LCap, e));
        Expr::from_stack(stack).expect("bubble is well typed")
    }

    pub fn src(&self) -> &Word {
        &self.src
    }

    pub fn dst(&self) -> &Word {
        &self.dst
    }

    pub fn terms(&self) -> &BTreeMap<Stack, GRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_stack(&mut self, s: Stack, c: GRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn scale(&self, c: &GRat) -> Expr {
        let mut out = Expr::zero(self.src.clone(), self.dst.clone());
        for (s, v) in &self.terms {
            out.add_stack(s.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Expr) -> Result<Expr, DiagramError> {
        if self.src != other.src || self.dst != other.dst {
            return Err(DiagramError::TypeMismatch {
                op: "sum",
                left: format!("{} -> {}", self.src, self.dst),
                right: format!("{} -> {}", other.src, other.dst),
            });
        }
        let mut out = self.clone();
        for (s, v) in &other.terms {
            out.add_stack(s.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Expr) -> Result<Expr, DiagramError> {
        self.add(&other.scale(&GRat::from_int(-1)))
    }

    pub fn black_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|s| s.iter().filter(|l| l.gen.is_black()).count())
            .max()
            .unwrap_or(0)
    }

    pub fn parity(&self) -> Result<Parity, DiagramError> {
        let mut seen: Option<bool> = None;
        for s in self.terms.keys() {
            let p = s.iter().filter(|l| l.gen.is_odd()).count() % 2 == 1;
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return Err(DiagramError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(Parity::from_bit(seen.unwrap_or(false)))
    }

    /// Replaces every layer whose generator has a defining expansion by that expansion,
    /// repeatedly, leaving only `LCup, LCap, UpCross, BlackDot, WhiteDot, LCross`.
    pub fn expand_derived(&self) -> Expr {
        let mut out = Expr::zero(self.src.clone(), self.dst.clone());
        for (s, c) in &self.terms {
            out.add_stack(expand_stack(s), c.clone());
        }
        out
    }

    /// Serializable view with explicit layers.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(s, c)| serde_json::json!({ "coeff": c.to_string(), "layers": s }))
            .collect();
        serde_json::json!({ "src": self.src, "dst": self.dst, "terms": terms })
    }
}

pub fn expand_stack(s: &Stack) -> Stack {
    let mut out = Vec::new();
    for l in s {
        match l.gen.expansion() {
            Some(inner) => {
                let padded: Stack = inner.iter().map(|x| x.pad(&l.left, &l.right)).collect();
                out.extend(expand_stack(&padded));
            }
            None => out.push(l.clone()),
        }
    }
    out
}

fn check_stack(src: &Word, stack: &Stack) -> Result<(), DiagramError> {
    let mut cur = src.clone();
    for l in stack {
        let s = l.src();
        if s != cur {
            return Err(DiagramError::TypeMismatch {
                op: "layer",
                left: s.to_string(),
                right: cur.to_string(),
            });
        }
        cur = l.dst();
    }
    Ok(())
}

/// `f` after `g`.
pub fn expr_compose(f: &Expr, g: &Expr) -> Result<Expr, DiagramError> {
    if f.src != g.dst {
        return Err(DiagramError::TypeMismatch {
            op: "compose",
            left: format!("source {}", display_word(&f.src)),
            right: format!("target {}", display_word(&g.dst)),
        });
    }
    let mut out = Expr::zero(g.src.clone(), f.dst.clone());
    for (sf, cf) in &f.terms {
        for (sg, cg) in &g.terms {
            let mut s = sg.clone();
            s.extend(sf.iter().cloned());
            out.add_stack(s, cf * cg);
        }
    }
    Ok(out)
}

/// `f (x) g`, realised as `(f (x) id) o (id (x) g)`: the left factor sits higher.
pub fn expr_tensor(f: &Expr, g: &Expr) -> Expr {
    let empty = Word::empty();
    let mut out = Expr::zero(f.src.concat(&g.src), f.dst.concat(&g.dst));
    for (sf, cf) in &f.terms {
        for (sg, cg) in &g.terms {
            let mut s: Stack = sg.iter().map(|l| l.pad(&f.src, &empty)).collect();
            s.extend(sf.iter().map(|l| l.pad(&empty, &g.dst)));
            out.add_stack(s, cf * cg);
        }
    }
    out
}

fn display_word(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}

pub fn black_degree(e: &Expr) -> usize {
    e.black_degree()
}

pub fn parity(e: &Expr) -> Result<Parity, DiagramError> {
    e.parity()
}
