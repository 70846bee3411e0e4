use std::collections::BTreeMap;

use serde_json::json;

use super::key::NormalKey;
use super::normalize::Normalizer;
use super::realize::realize_expr;
use super::NormalError;
use crate::diagrams::{expr_tensor, Expr, Word};
use crate::scalars::BubblePoly;

/// A linear combination of normal keys with bubble-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalMorphism {
    pub src: Word,
    pub dst: Word,
    terms: BTreeMap<NormalKey, BubblePoly>,
}

impl NormalMorphism {
    pub fn zero(src: Word, dst: Word) -> NormalMorphism {
        NormalMorphism {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: NormalKey, coeff: BubblePoly) -> NormalMorphism {
        let mut m = NormalMorphism::zero(key.src.clone(), key.dst.clone());
        m.add_term(key, coeff);
        m
    }

    pub fn identity(w: &Word) -> NormalMorphism {
        NormalMorphism::single(NormalKey::identity(w), BubblePoly::one())
    }

    pub fn terms(&self) -> &BTreeMap<NormalKey, BubblePoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &NormalKey) -> BubblePoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: NormalKey, coeff: BubblePoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &coeff;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    /// `self += other * s`.
    pub fn add_scaled(&mut self, other: &NormalMorphism, s: &BubblePoly) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &BubblePoly) -> NormalMorphism {
        let mut out = NormalMorphism::zero(self.src.clone(), self.dst.clone());
        out.add_scaled(self, s);
        out
    }

    pub fn sub(&self, other: &NormalMorphism) -> NormalMorphism {
        let mut out = self.clone();
        out.add_scaled(other, &BubblePoly::from_int(-1));
        out
    }

    /// Largest closed-dot count over terms, bubbles included.
    pub fn black_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(k, c)| k.total_dots() + c.black_degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// The sum of representatives, bubbles placed to the right.
    pub fn to_expr(&self) -> Expr {
        let mut out = Expr::zero(self.src.clone(), self.dst.clone());
        for (k, c) in &self.terms {
            let body = realize_expr(k);
            for (m, coef) in c.terms() {
                let mut bubbles = Expr::scalar(coef.clone());
                for (idx, e) in m.iter().enumerate() {
                    for _ in 0..*e {
                        bubbles = expr_tensor(&bubbles, &Expr::bubble(2 * idx as u32 + 1));
                    }
                }
                out = out.add(&expr_tensor(&body, &bubbles)).expect("same type");
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(k, c)| json!({ "key": k.to_json(), "coeff": c.to_string() }))
            .collect();
        json!({ "src": self.src.to_string(), "dst": self.dst.to_string(), "terms": terms })
    }
}

impl std::fmt::Display for NormalMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c}) {k}"))
            .collect();
        write!(f, "{}", parts.join("\n+ "))
    }
}

fn mismatch(op: &'static str, a: &Word, b: &Word) -> NormalError {
    NormalError::TypeMismatch {
        op,
        left: a.to_string(),
        right: b.to_string(),
    }
}

/// `f` after `g`, normalized.
pub fn nm_compose(
    nz: &Normalizer,
    f: &NormalMorphism,
    g: &NormalMorphism,
) -> Result<NormalMorphism, NormalError> {
    if f.src != g.dst {
        return Err(mismatch("compose", &f.src, &g.dst));
    }
    let mut out = NormalMorphism::zero(g.src.clone(), f.dst.clone());
    for (kf, cf) in &f.terms {
        let layers = super::realize::realize(kf);
        let moved = nz.fold_morphism(g, &layers)?;
        out.add_scaled(&moved, cf);
    }
    Ok(out)
}

/// `f (x) g`, normalized.
pub fn nm_tensor(
    nz: &Normalizer,
    f: &NormalMorphism,
    g: &NormalMorphism,
) -> Result<NormalMorphism, NormalError> {
    let mut out = NormalMorphism::zero(f.src.concat(&g.src), f.dst.concat(&g.dst));
    let empty = Word::empty();
    for (kf, cf) in &f.terms {
        let lf = super::realize::realize(kf);
        for (kg, cg) in &g.terms {
            let mut layers: Vec<_> = super::realize::realize(kg)
                .iter()
                .map(|l| l.pad(&kf.src, &empty))
                .collect();
            layers.extend(lf.iter().map(|l| l.pad(&empty, &kg.dst)));
            let start = NormalMorphism::identity(&out.src);
            let m = nz.fold_morphism(&start, &layers)?;
            out.add_scaled(&m, &(cf * cg));
        }
    }
    Ok(out)
}
