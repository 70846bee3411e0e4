use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{Dir, Expr, Layer, Word, ALL_GENS};
use crate::scalars::GRat;

/// Shape limits for random stacks.
#[derive(Clone, Copy, Debug)]
pub struct StackShape {
    pub depth: usize,
    pub max_width: usize,
    pub max_black: usize,
}

impl Default for StackShape {
    fn default() -> Self {
        StackShape {
            depth: 6,
            max_width: 4,
            max_black: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let n = rng.random_range(0..=max_len);
    Word(
        (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Dir::Up
                } else {
                    Dir::Down
                }
            })
            .collect(),
    )
}

/// Every layer that fits on `w` without exceeding the shape.
fn candidates(w: &Word, shape: &StackShape, blacks: usize) -> Vec<Layer> {
    let mut out = Vec::new();
    for g in ALL_GENS {
        if g.is_black() && blacks >= shape.max_black {
            continue;
        }
        if g.is_cup() && w.len() + 2 > shape.max_width {
            continue;
        }
        let need = g.src();
        if need.len() > w.len() && !need.is_empty() {
            continue;
        }
        for o in 0..=w.len() - need.len() {
            if &w.0[o..o + need.len()] == need {
                out.push(Layer::at(w, o, g));
            }
        }
    }
    out
}

/// A random well-typed stack on `src`, bottom first.
pub fn random_stack<R: Rng>(rng: &mut R, src: &Word, shape: &StackShape) -> Vec<Layer> {
    let mut cur = src.clone();
    let mut out = Vec::new();
    let mut blacks = 0;
    for _ in 0..shape.depth {
        let c = candidates(&cur, shape, blacks);
        let Some(l) = c.choose(rng) else { break };
        if l.gen.is_black() {
            blacks += 1;
        }
        cur = l.dst();
        out.push(l.clone());
    }
    out
}

/// A random expression: one stack with a small integer coefficient.
pub fn random_expr<R: Rng>(rng: &mut R, src: &Word, shape: &StackShape) -> Expr {
    let stack = random_stack(rng, src, shape);
    let c = GRat::from_int(rng.random_range(1..=3));
    Expr::from_stack_on(src.clone(), stack, c).expect("random stacks are well typed")
}

/// A random expression of the given type: a sum of `terms` random stacks `src -> dst`, found
/// by rejection. `None` if no stack of that type turned up within the attempt budget.
pub fn random_expr_between<R: Rng>(
    rng: &mut R,
    src: &Word,
    dst: &Word,
    shape: &StackShape,
    terms: usize,
) -> Option<Expr> {
    let mut out = Expr::zero(src.clone(), dst.clone());
    let mut found = 0;
    for _ in 0..2000 {
        if found == terms {
            break;
        }
        let stack = random_stack(rng, src, shape);
        let end = stack.last().map(|l| l.dst()).unwrap_or_else(|| src.clone());
        if &end == dst {
            out.add_stack(stack, GRat::from_int(rng.random_range(-2..=2_i64).max(1)));
            found += 1;
        }
    }
    (found == terms).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stacks_are_typed_and_seeded() {
        let shape = StackShape::default();
        for seed in 0..20 {
            let src = random_word(&mut rng(seed), 3);
            let a = random_stack(&mut rng(seed + 100), &src, &shape);
            let b = random_stack(&mut rng(seed + 100), &src, &shape);
            assert_eq!(a, b);
            assert!(Expr::from_stack_on(src, a, GRat::one()).is_ok());
        }
    }

    #[test]
    fn gen_list_is_complete() {
        assert!(ALL_GENS.contains(&crate::diagrams::Gen::DownWhiteDot));
    }
}
