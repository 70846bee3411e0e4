use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use super::key::{NormalKey, Side, Strand};
use super::morphism::{nm_compose, NormalMorphism};
use super::realize::realize_parts;
use super::NormalError;
use crate::diagrams::{Dir, Expr, Gen, Layer, Word};
use crate::scalars::{delta_prime, BubblePoly};

/// Per-strand limit on closed dots; exceeding it is reported rather than truncated.
pub const DOT_CAP: u32 = 64;

/// Order in which the layers of a stack are absorbed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// bottom to top, one layer at a time
    #[default]
    Fold,
    /// normalize the lower and upper halves separately, then compose the normal forms
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopOrientation {
    /// closed by a left cap: counterclockwise
    Ccw,
    /// closed by a right cap: clockwise
    Cw,
}

/// Value of a free loop carrying an open dot (`cliff`) and `dots` closed dots.
pub fn eval_loop(orient: LoopOrientation, cliff: bool, dots: u32) -> BubblePoly {
    if cliff || dots.is_multiple_of(2) {
        return BubblePoly::zero();
    }
    match orient {
        LoopOrientation::Ccw => BubblePoly::delta(dots),
        LoopOrientation::Cw => delta_prime(dots),
    }
}

fn sign(odd: bool) -> BubblePoly {
    BubblePoly::from_int(if odd { -1 } else { 1 })
}

type Rel = &'static [(i64, &'static [(Gen, usize)])];

use Gen::{DownWhiteDot as CD, LCap, LCup, RCap, RCup, WhiteDot as C};

/// `x_q . X = X . x_q' + sum`, for a closed dot just above crossing `X` at output slot `q`.
fn slide_down(g: Gen, slot: usize) -> Rel {
    match (g, slot) {
        (Gen::UpCross, 0) => &[(1, &[]), (-1, &[(C, 1), (C, 0)])],
        (Gen::UpCross, 1) => &[(-1, &[]), (-1, &[(C, 1), (C, 0)])],
        (Gen::RCross, 0) => &[
            (-1, &[(LCap, 0), (LCup, 0)]),
            (1, &[(C, 1), (LCap, 0), (LCup, 0), (C, 0)]),
        ],
        (Gen::LCross, 1) => &[
            (1, &[(RCap, 0), (RCup, 0)]),
            (-1, &[(C, 0), (RCap, 0), (RCup, 0), (C, 1)]),
        ],
        _ => unreachable!("no upward strand at slot {slot} of {g:?}"),
    }
}

/// `X . xd_q = xd_q' . X + sum`, for a closed dot just below crossing `X` at input slot `q`.
fn slide_up(g: Gen, slot: usize) -> Rel {
    match (g, slot) {
        (Gen::RCross, 0) => &[
            (1, &[(LCap, 0), (LCup, 0)]),
            (1, &[(C, 1), (LCap, 0), (LCup, 0), (C, 0)]),
        ],
        (Gen::LCross, 1) => &[
            (-1, &[(RCap, 0), (RCup, 0)]),
            (-1, &[(C, 0), (RCap, 0), (RCup, 0), (C, 1)]),
        ],
        (Gen::DownCross, 1) => &[(1, &[]), (1, &[(CD, 1), (CD, 0)])],
        (Gen::DownCross, 0) => &[(-1, &[]), (1, &[(CD, 1), (CD, 0)])],
        _ => unreachable!("no downward strand at slot {slot} of {g:?}"),
    }
}

/// Layers for `ops` applied at `base + offset`, starting on `word`.
fn build(word: &Word, base: usize, ops: &[(Gen, usize)]) -> Vec<Layer> {
    let mut cur = word.clone();
    let mut out = Vec::with_capacity(ops.len());
    for &(g, off) in ops {
        let l = Layer::at(&cur, base + off, g);
        cur = l.dst();
        out.push(l);
    }
    out
}

fn bump(k: &NormalKey, i: usize) -> Result<NormalKey, NormalError> {
    let mut n = k.clone();
    let s = &mut n.strands_mut()[i];
    s.dots += 1;
    if s.dots > DOT_CAP {
        return Err(NormalError::DotOverflow {
            dots: s.dots,
            cap: DOT_CAP,
        });
    }
    Ok(n)
}

fn shift_top(k: &mut NormalKey, f: impl Fn(usize) -> usize) {
    for s in k.strands_mut() {
        for e in [&mut s.start, &mut s.end] {
            if e.side == Side::Top {
                e.pos = f(e.pos);
            }
        }
    }
}

/// Rewriting engine with a memo table keyed by (key, layer). Not shareable across threads;
/// parallel callers keep one per worker.
#[derive(Default)]
pub struct Normalizer {
    cache: RefCell<HashMap<(NormalKey, Layer), NormalMorphism>>,
    no_cache: bool,
    steps: Cell<u64>,
}

impl Normalizer {
    pub fn new() -> Normalizer {
        Normalizer::default()
    }

    pub fn uncached() -> Normalizer {
        Normalizer {
            no_cache: true,
            ..Normalizer::default()
        }
    }

    /// Number of uncached absorption steps performed so far.
    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    pub fn normalize(&self, e: &Expr) -> Result<NormalMorphism, NormalError> {
        self.normalize_with(e, Strategy::Fold)
    }

    pub fn normalize_with(
        &self,
        e: &Expr,
        strategy: Strategy,
    ) -> Result<NormalMorphism, NormalError> {
        let mut out = NormalMorphism::zero(e.src().clone(), e.dst().clone());
        for (stack, c) in e.terms() {
            let m = match strategy {
                Strategy::Fold => self.normalize_stack(e.src(), stack)?,
                Strategy::Split if stack.len() >= 2 => {
                    let mid = stack.len() / 2;
                    let lower = self.normalize_stack(e.src(), &stack[..mid])?;
                    let upper = self.normalize_stack(&stack[mid].src(), &stack[mid..])?;
                    nm_compose(self, &upper, &lower)?
                }
                Strategy::Split => self.normalize_stack(e.src(), stack)?,
            };
            out.add_scaled(&m, &BubblePoly::constant(c.clone()));
        }
        Ok(out)
    }

    pub fn normalize_stack(
        &self,
        src: &Word,
        stack: &[Layer],
    ) -> Result<NormalMorphism, NormalError> {
        self.fold_morphism(&NormalMorphism::identity(src), stack)
    }

    /// Absorbs `layers`, bottom first, on top of `m`.
    pub fn fold_morphism(
        &self,
        m: &NormalMorphism,
        layers: &[Layer],
    ) -> Result<NormalMorphism, NormalError> {
        let mut cur = m.clone();
        for l in layers {
            let ls = l.src();
            if ls != cur.dst {
                return Err(NormalError::TypeMismatch {
                    op: "layer",
                    left: ls.to_string(),
                    right: cur.dst.to_string(),
                });
            }
            let mut next = NormalMorphism::zero(cur.src.clone(), l.dst());
            for (k, c) in cur.terms() {
                next.add_scaled(&self.absorb(k, l)?, c);
            }
            cur = next;
        }
        Ok(cur)
    }

    fn fold_key(&self, k: &NormalKey, layers: &[Layer]) -> Result<NormalMorphism, NormalError> {
        self.fold_morphism(
            &NormalMorphism::single(k.clone(), BubblePoly::one()),
            layers,
        )
    }

    /// Normal form of `l` composed on top of the representative of `k`.
    pub fn absorb(&self, k: &NormalKey, l: &Layer) -> Result<NormalMorphism, NormalError> {
        if !self.no_cache {
            if let Some(m) = self.cache.borrow().get(&(k.clone(), l.clone())) {
                return Ok(m.clone());
            }
        }
        let m = self.absorb_uncached(k, l)?;
        if !self.no_cache {
            self.cache
                .borrow_mut()
                .insert((k.clone(), l.clone()), m.clone());
        }
        Ok(m)
    }

    fn absorb_uncached(&self, k: &NormalKey, l: &Layer) -> Result<NormalMorphism, NormalError> {
        self.steps.set(self.steps.get() + 1);
        let p = l.offset();
        match l.gen {
            Gen::WhiteDot => {
                let i = k.at_top(p);
                let above = k.top_whites().iter().filter(|&&t| t > p).count();
                let mut n = k.clone();
                n.strands_mut()[i].cliff ^= true;
                Ok(NormalMorphism::single(n, sign(above % 2 == 1)))
            }
            Gen::DownWhiteDot => {
                let i = k.at_top(p);
                let s = k.strands()[i].clone();
                let mut flips = k.top_whites().len() + s.dots as usize;
                match s.end.side {
                    Side::Top => flips += k.top_whites().iter().filter(|&&t| t < s.end.pos).count(),
                    Side::Bottom => {
                        flips += k.bottom_whites().iter().filter(|&&t| t > s.end.pos).count();
                        // two open dots on a downward strand square to -1
                        flips += usize::from(s.cliff);
                    }
                }
                let mut n = k.clone();
                n.strands_mut()[i].cliff ^= true;
                Ok(NormalMorphism::single(n, sign(flips % 2 == 1)))
            }
            Gen::DownBlackDot => Ok(NormalMorphism::single(
                bump(k, k.at_top(p))?,
                BubblePoly::one(),
            )),
            Gen::BlackDot => {
                let i = k.at_top(p);
                self.walk(k, p, sign(k.strands()[i].cliff))
            }
            Gen::LCup | Gen::RCup => {
                let mut n = k.clone();
                shift_top(&mut n, |t| if t >= p { t + 2 } else { t });
                let (start, end) = if l.gen == Gen::LCup {
                    (p + 1, p)
                } else {
                    (p, p + 1)
                };
                n.strands_mut().push(Strand {
                    start: super::key::Endpoint::top(start),
                    end: super::key::Endpoint::top(end),
                    cliff: false,
                    dots: 0,
                });
                n.dst = l.dst();
                n.resort();
                Ok(NormalMorphism::single(n, BubblePoly::one()))
            }
            Gen::LCap | Gen::RCap => self.cap(k, l),
            _ => self.cross(k, l),
        }
    }

    fn cross(&self, k: &NormalKey, l: &Layer) -> Result<NormalMorphism, NormalError> {
        let p = l.offset();
        let g = l.gen;
        for slot in 0..2 {
            if g.src()[slot] != Dir::Down {
                continue;
            }
            let i = k.at_top(p + slot);
            if k.strands()[i].dots == 0 {
                continue;
            }
            let mut km = k.clone();
            km.strands_mut()[i].dots -= 1;
            let dst = l.dst();
            let mut out = self.fold_key(
                &km,
                &[l.clone(), Layer::at(&dst, p + 1 - slot, Gen::DownBlackDot)],
            )?;
            for (c, ops) in slide_up(g, slot) {
                let corr = self.fold_key(&km, &build(&k.dst, p, ops))?;
                out.add_scaled(&corr, &BubblePoly::from_int(*c));
            }
            return Ok(out);
        }
        let (i0, i1) = (k.at_top(p), k.at_top(p + 1));
        let odd = g == Gen::UpCross && k.strands()[i0].cliff && k.strands()[i1].cliff;
        let mut n = k.clone();
        shift_top(&mut n, |t| {
            if t == p {
                p + 1
            } else if t == p + 1 {
                p
            } else {
                t
            }
        });
        n.dst = l.dst();
        n.resort();
        Ok(NormalMorphism::single(n, sign(odd)))
    }

    fn cap(&self, k: &NormalKey, l: &Layer) -> Result<NormalMorphism, NormalError> {
        let p = l.offset();
        let (a_pos, b_pos) = if l.gen == Gen::LCap {
            (p + 1, p)
        } else {
            (p, p + 1)
        };
        let ia = k.at_top(a_pos);
        let ib = k.at_top(b_pos);
        let zero = NormalMorphism::zero(k.src.clone(), l.dst());
        if ia == ib {
            let s = &k.strands()[ia];
            if s.dots == 0 {
                return Ok(zero);
            }
            if k.dst.len() > p + 2 {
                // move the loop one strand to the right
                let w0 = &k.dst;
                let x1 = Layer::at(w0, p + 1, Gen::crossing_for(w0.0[p + 1], w0.0[p + 2]));
                let w1 = x1.dst();
                let x2 = Layer::at(&w1, p, Gen::crossing_for(w1.0[p], w1.0[p + 1]));
                let w2 = x2.dst();
                let c = Layer::at(&w2, p + 1, l.gen);
                return self.fold_key(k, &[x1, x2, c]);
            }
            let orient = if l.gen == Gen::LCap {
                LoopOrientation::Ccw
            } else {
                LoopOrientation::Cw
            };
            let val = eval_loop(orient, s.cliff, s.dots);
            if val.is_zero() {
                return Ok(zero);
            }
            let mut n = k.clone();
            n.strands_mut().remove(ia);
            n.dst = l.dst();
            return Ok(NormalMorphism::single(n, val));
        }
        let (sa, sb) = (k.strands()[ia].clone(), k.strands()[ib].clone());
        if sb.dots > 0 {
            let mut km = k.clone();
            km.strands_mut()[ib].dots = 0;
            let mut layers = vec![Layer::at(&k.dst, a_pos, Gen::BlackDot); sb.dots as usize];
            layers.push(l.clone());
            return self.fold_key(&km, &layers);
        }
        if sa.cliff {
            let above = k.top_whites().iter().filter(|&&t| t > a_pos).count();
            let mut km = k.clone();
            km.strands_mut()[ia].cliff = false;
            let m = self.fold_key(
                &km,
                &[Layer::at(&k.dst, b_pos, Gen::DownWhiteDot), l.clone()],
            )?;
            return Ok(m.scaled(&sign(above % 2 == 1)));
        }
        let mut n = k.clone();
        let merged = Strand {
            start: sa.start,
            end: sb.end,
            cliff: sb.cliff,
            dots: sa.dots,
        };
        n.strands_mut().retain(|s| *s != sa && *s != sb);
        n.strands_mut().push(merged);
        shift_top(&mut n, |t| if t > p + 1 { t - 2 } else { t });
        n.dst = l.dst();
        n.resort();
        Ok(NormalMorphism::single(n, BubblePoly::one()))
    }

    /// Slides a closed dot placed at top outward point `p` back along its strand to the
    /// strand's start, collecting the crossing corrections.
    fn walk(
        &self,
        k: &NormalKey,
        p: usize,
        sgn: BubblePoly,
    ) -> Result<NormalMorphism, NormalError> {
        let bands = realize_parts(k);
        let core = &bands.core;
        let mut prefix = bands.w1.clone();
        prefix.extend(bands.x2.iter().cloned());
        let mut suffix = bands.x4.clone();
        suffix.extend(bands.w5.iter().cloned());
        let mut out = NormalMorphism::zero(k.src.clone(), k.dst.clone());
        let correction = |t: usize,
                          ops: &[(Gen, usize)],
                          c: i64,
                          out: &mut NormalMorphism|
         -> Result<(), NormalError> {
            let layer = &core[t];
            let mut stack = prefix.clone();
            stack.extend(core[..t].iter().cloned());
            stack.extend(build(&layer.src(), layer.offset(), ops));
            stack.extend(core[t + 1..].iter().cloned());
            stack.extend(suffix.iter().cloned());
            let m = self.normalize_stack(&k.src, &stack)?;
            out.add_scaled(&m, &sgn.scale(&crate::scalars::GRat::from_int(c)));
            Ok(())
        };
        let mut q = p;
        let mut down = true;
        let mut t = core.len();
        let main = loop {
            if down {
                if t == 0 {
                    break bump(k, k.at_bottom(q))?;
                }
                let layer = &core[t - 1];
                let (o, a, b) = (layer.offset(), layer.gen.src().len(), layer.gen.dst().len());
                if q < o {
                    t -= 1;
                } else if q >= o + b {
                    q = q + a - b;
                    t -= 1;
                } else {
                    let slot = q - o;
                    match layer.gen {
                        Gen::LCup => {
                            q = o + 1;
                            down = false;
                        }
                        Gen::RCup => {
                            q = o;
                            down = false;
                        }
                        g => {
                            for (c, ops) in slide_down(g, slot) {
                                correction(t - 1, ops, *c, &mut out)?;
                            }
                            q = o + 1 - slot;
                            t -= 1;
                        }
                    }
                }
            } else {
                if t == core.len() {
                    break bump(k, k.at_top(q))?;
                }
                let layer = &core[t];
                let (o, a, b) = (layer.offset(), layer.gen.src().len(), layer.gen.dst().len());
                if q < o {
                    t += 1;
                } else if q >= o + a {
                    q = q + b - a;
                    t += 1;
                } else {
                    let slot = q - o;
                    match layer.gen {
                        Gen::LCap => {
                            q = o + 1;
                            down = true;
                        }
                        Gen::RCap => {
                            q = o;
                            down = true;
                        }
                        g => {
                            for (c, ops) in slide_up(g, slot) {
                                correction(t, ops, *c, &mut out)?;
                            }
                            q = o + 1 - slot;
                            t += 1;
                        }
                    }
                }
            }
        };
        out.add_term(main, sgn);
        Ok(out)
    }
}

/// Normal form of an expression with a fresh engine.
pub fn normalize(e: &Expr) -> Result<NormalMorphism, NormalError> {
    Normalizer::new().normalize(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_expr;

    fn nf(s: &str) -> NormalMorphism {
        normalize(&parse_expr(s).unwrap()).unwrap()
    }

    fn bubble_value(s: &str) -> BubblePoly {
        let m = nf(s);
        assert!(m.src.is_empty() && m.dst.is_empty());
        m.coeff(&NormalKey::identity(&Word::empty()))
    }

    #[test]
    fn bubbles() {
        assert_eq!(bubble_value("D(3)"), BubblePoly::delta(3));
        assert!(bubble_value("D(2)").is_zero());
        assert!(bubble_value("D(0)").is_zero());
        assert_eq!(
            bubble_value("rcap . x * id(d) . x * id(d) . x * id(d) . cup"),
            delta_prime(3)
        );
    }

    #[test]
    fn white_dots_square() {
        assert_eq!(nf("c . c"), nf("id(u)"));
        assert_eq!(nf("cd . cd"), nf("id(d)").scaled(&BubblePoly::from_int(-1)));
    }

    #[test]
    fn dot_through_crossing() {
        let lhs = nf("(x * id(u)) . s");
        let rhs = nf("s . (id(u) * x) + id(uu) - (c * id(u)) . (id(u) * c)");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn crossing_squares_to_one() {
        assert_eq!(nf("s . s"), nf("id(uu)"));
        assert_eq!(nf("rs . ls"), nf("id(ud)"));
    }

    #[test]
    fn strategies_agree() {
        let nz = Normalizer::new();
        for s in [
            "cap . (id(d) * x) . (id(d) * c) . rcup",
            "(x * id(u)) . s . (c * x) . s",
            "rcap . rs . (cd * x) . ls . cup",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(
                nz.normalize_with(&e, Strategy::Fold).unwrap(),
                nz.normalize_with(&e, Strategy::Split).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn dot_cap_is_enforced() {
        let mut s = String::from("x");
        for _ in 0..DOT_CAP {
            s.push_str(" . x");
        }
        assert!(matches!(
            normalize(&parse_expr(&s).unwrap()),
            Err(NormalError::DotOverflow { .. })
        ));
    }
}
