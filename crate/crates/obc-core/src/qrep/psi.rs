//! The functors Psi (all of AOBC, acting on `V^word (x) tail`) and Phi (OBC only).

use std::collections::BTreeMap;

use super::matrix::SuperMatrix;
use super::tensor::{
    act_factor, basis_of, encode, parities, parity_of, QGen, TailModule, TensorTail,
};
use super::{QnContext, QrepError};
use crate::diagrams::{Dir, Expr, Gen, Layer, Word};
use crate::exec::Exec;
use crate::scalars::GRat;

/// Sparse vector in `V^word (x) tail`.
pub type TVec<E> = BTreeMap<(Vec<u8>, E), GRat>;

fn push<E: Ord + Clone>(out: &mut TVec<E>, key: (Vec<u8>, E), c: GRat) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(GRat::zero);
    *e += &c;
    if e.is_zero() {
        out.remove(&key);
    }
}

pub struct Evaluator<'a, M: TailModule> {
    pub ctx: QnContext,
    pub tail: &'a M,
}

impl<'a, M: TailModule> Evaluator<'a, M> {
    pub fn new(ctx: QnContext, tail: &'a M) -> Self {
        Evaluator { ctx, tail }
    }

    fn par(&self, b: u8) -> bool {
        parity_of(&self.ctx, b)
    }

    /// Omega on the factor at `p` and everything to its right.
    fn omega(
        &self,
        dirs: &[Dir],
        p: usize,
        idx: &[u8],
        t: &M::Elem,
        c: &GRat,
        out: &mut TVec<M::Elem>,
    ) {
        let n = self.ctx.n;
        let w = idx[p];
        let pw = self.par(w);
        for odd in [false, true] {
            for i in 0..n {
                for j in 0..n {
                    let left = act_factor(&self.ctx, QGen::e_tilde(odd, i, j), Dir::Up, w);
                    if left.is_empty() {
                        continue;
                    }
                    let g = QGen::e(odd, j, i);
                    let base = if odd && pw { -c } else { c.clone() };
                    // coproduct of e_{j,i} over the remaining factors, then the tail
                    let mut rest: Vec<(Vec<u8>, M::Elem, GRat)> = Vec::new();
                    let mut passed = false;
                    for k in p + 1..idx.len() {
                        let s = if odd && passed { -1 } else { 1 };
                        for (b, sb) in act_factor(&self.ctx, g, dirs[k], idx[k]) {
                            let mut v = idx.to_vec();
                            v[k] = b;
                            rest.push((v, t.clone(), GRat::from_int(s * sb)));
                        }
                        passed ^= self.par(idx[k]);
                    }
                    let s = if odd && passed {
                        GRat::from_int(-1)
                    } else {
                        GRat::one()
                    };
                    for (t2, ct) in self.tail.act(g, t) {
                        rest.push((idx.to_vec(), t2, &ct * &s));
                    }
                    for (w2, sw) in &left {
                        let cw = base.scale_int(*sw);
                        for (v, t2, cr) in &rest {
                            let mut v = v.clone();
                            v[p] = *w2;
                            push(out, (v, t2.clone()), &cw * cr);
                        }
                    }
                }
            }
        }
    }

    pub fn apply_layer(&self, layer: &Layer, v: &TVec<M::Elem>) -> TVec<M::Elem> {
        if let Some(inner) = layer.gen.expansion() {
            let mut cur = v.clone();
            for l in inner {
                cur = self.apply_layer(&l.pad(&layer.left, &layer.right), &cur);
            }
            return cur;
        }
        let src = layer.src();
        let dirs = src.letters();
        let p = layer.offset();
        let d = self.ctx.dim_v() as u8;
        let mut out = TVec::new();
        for ((idx, t), c) in v {
            match layer.gen {
                Gen::LCup => {
                    for b in 0..d {
                        let mut w = idx[..p].to_vec();
                        w.push(b);
                        w.push(b);
                        w.extend_from_slice(&idx[p..]);
                        push(&mut out, (w, t.clone()), c.clone());
                    }
                }
                Gen::LCap => {
                    if idx[p] == idx[p + 1] {
                        let mut w = idx[..p].to_vec();
                        w.extend_from_slice(&idx[p + 2..]);
                        push(&mut out, (w, t.clone()), c.clone());
                    }
                }
                Gen::UpCross | Gen::LCross => {
                    let (a, b) = (idx[p], idx[p + 1]);
                    let mut w = idx.clone();
                    w.swap(p, p + 1);
                    let c = if self.par(a) && self.par(b) {
                        -c
                    } else {
                        c.clone()
                    };
                    push(&mut out, (w, t.clone()), c);
                }
                Gen::WhiteDot => {
                    let a = idx[p];
                    let left_odd = idx[..p].iter().fold(false, |s, b| s ^ self.par(*b));
                    let n = self.ctx.n as u8;
                    let (bar, mut coef) = if self.par(a) {
                        (a - n, -(c * &GRat::i()))
                    } else {
                        (a + n, c * &GRat::i())
                    };
                    if left_odd {
                        coef = -coef;
                    }
                    let mut w = idx.clone();
                    w[p] = bar;
                    push(&mut out, (w, t.clone()), coef);
                }
                Gen::BlackDot => self.omega(dirs, p, idx, t, c, &mut out),
                _ => unreachable!("derived generators are expanded above"),
            }
        }
        out
    }

    pub fn apply_stack(&self, stack: &[Layer], v: &TVec<M::Elem>) -> TVec<M::Elem> {
        let mut cur = v.clone();
        for l in stack {
            if cur.is_empty() {
                break;
            }
            cur = self.apply_layer(l, &cur);
        }
        cur
    }

    pub fn apply_expr(&self, e: &Expr, v: &TVec<M::Elem>) -> TVec<M::Elem> {
        let mut out = TVec::new();
        for (stack, c) in e.terms() {
            for (k, x) in self.apply_stack(stack, v) {
                push(&mut out, k, &x * c);
            }
        }
        out
    }
}

/// Psi(e) on `V^{src} (x) V^{module}` as an exact matrix.
pub fn psi_eval(ctx: &QnContext, e: &Expr, module: &Word) -> Result<SuperMatrix, QrepError> {
    psi_eval_with(ctx, e, module, Exec::default())
}

pub fn psi_eval_with(
    ctx: &QnContext,
    e: &Expr,
    module: &Word,
    exec: Exec,
) -> Result<SuperMatrix, QrepError> {
    let (src, dst) = (e.src().len(), e.dst().len());
    let m = module.len();
    let cap = ctx.dim_cap;
    let dim_in = ctx.dim_v().pow((src + m) as u32);
    let dim_out = ctx.dim_v().pow((dst + m) as u32);
    if dim_in.max(dim_out) > cap {
        return Err(QrepError::SizeCap {
            dim: dim_in.max(dim_out),
            cap,
        });
    }
    let tail = TensorTail::new(*ctx, module.clone());
    let ev = Evaluator::new(*ctx, &tail);
    let inputs = basis_of(ctx, src + m);
    let cols = exec.map(&inputs, |v| {
        let start: TVec<Vec<u8>> = [((v[..src].to_vec(), v[src..].to_vec()), GRat::one())]
            .into_iter()
            .collect();
        let mut col = BTreeMap::new();
        for ((w, t), c) in ev.apply_expr(e, &start) {
            let mut full = w;
            full.extend_from_slice(&t);
            col.insert(encode(ctx, &full), c);
        }
        col
    });
    Ok(SuperMatrix::from_columns(
        parities(ctx, dst + m),
        parities(ctx, src + m),
        cols,
    ))
}

/// Phi(e): Psi on the trivial module, refusing closed dots.
pub fn phi_eval(ctx: &QnContext, e: &Expr) -> Result<SuperMatrix, QrepError> {
    let affine = e.terms().keys().any(|s| s.iter().any(|l| l.gen.is_black()));
    if affine {
        return Err(QrepError::AffineInPhi);
    }
    psi_eval(ctx, e, &Word::empty())
}

/// Omega on `V (x) V^rest`, assembled from generator matrices by the tensor constructor.
pub fn casimir_matrix(ctx: &QnContext, rest: &Word) -> Result<SuperMatrix, QrepError> {
    let u: Word = "u".parse().expect("word");
    let par = parities(ctx, 1 + rest.len());
    let mut total = SuperMatrix::zero(par.clone(), par);
    for odd in [false, true] {
        for i in 0..ctx.n {
            for j in 0..ctx.n {
                let a = super::tensor::module_matrix(ctx, QGen::e_tilde(odd, i, j), &u)?;
                let b = super::tensor::module_matrix(ctx, QGen::e(odd, j, i), rest)?;
                total = total.add(&a.tensor(&b)?)?;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_expr;

    fn ctx(n: usize) -> QnContext {
        QnContext::new(n).unwrap()
    }

    fn psi(n: usize, s: &str, m: &str) -> SuperMatrix {
        let w: Word = m.parse().unwrap();
        psi_eval(&ctx(n), &parse_expr(s).unwrap(), &w).unwrap()
    }

    #[test]
    fn white_dot_squares_to_one() {
        for n in 1..=3 {
            assert_eq!(psi(n, "c . c", "1"), psi(n, "id(u)", "1"));
        }
    }

    #[test]
    fn undotted_bubble_vanishes() {
        assert!(phi_eval(&ctx(2), &parse_expr("cap . rcup").unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn dot_on_trivial_module_vanishes() {
        assert!(psi(2, "x", "1").is_zero());
    }

    #[test]
    fn closed_and_open_dots_anticommute() {
        let a = psi(2, "x . c", "u");
        let b = psi(2, "c . x", "u");
        assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn casimir_agrees_with_black_dot() {
        for n in 1..=2 {
            for rest in ["u", "d", "ud"] {
                let w: Word = rest.parse().unwrap();
                let direct = casimir_matrix(&ctx(n), &w).unwrap();
                let via = psi_eval(
                    &ctx(n),
                    &parse_expr(&format!("x * id({rest})")).unwrap(),
                    &Word::empty(),
                )
                .unwrap();
                assert_eq!(direct, via, "n={n} rest={rest}");
            }
        }
    }

    #[test]
    fn casimir_is_a_module_map() {
        let c = ctx(2);
        let w: Word = "uu".parse().unwrap();
        let om = casimir_matrix(&c, &"u".parse().unwrap()).unwrap();
        for g in QGen::all(2) {
            let a = super::super::tensor::module_matrix(&c, g, &w).unwrap();
            assert!(om.supercommutator(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn phi_rejects_closed_dots() {
        assert!(matches!(
            phi_eval(&ctx(1), &parse_expr("x").unwrap()),
            Err(QrepError::AffineInPhi)
        ));
    }
}
