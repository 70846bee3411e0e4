use super::key::{NormalKey, Side};
use crate::diagrams::{Dir, Expr, Gen, Layer, Word};
use crate::scalars::GRat;

/// The five bands of the fixed representative, each listed bottom layer first.
#[derive(Clone, Debug, Default)]
pub struct Bands {
    /// open dots at bottom outward endpoints
    pub w1: Vec<Layer>,
    /// closed dots at bottom inward endpoints
    pub x2: Vec<Layer>,
    pub core: Vec<Layer>,
    /// closed dots at top inward endpoints
    pub x4: Vec<Layer>,
    /// open dots at top outward endpoints
    pub w5: Vec<Layer>,
}

impl Bands {
    pub fn stack(&self) -> Vec<Layer> {
        let mut v = self.w1.clone();
        v.extend(self.x2.iter().cloned());
        v.extend(self.core.iter().cloned());
        v.extend(self.x4.iter().cloned());
        v.extend(self.w5.iter().cloned());
        v
    }
}

fn swap_pass(word: &mut [Dir], ranks: &mut [usize], layers: &mut Vec<Layer>) {
    let n = ranks.len();
    for i in 0..n {
        for j in 0..n.saturating_sub(i + 1) {
            if ranks[j] > ranks[j + 1] {
                let w = Word(word.to_vec());
                layers.push(Layer::at(&w, j, Gen::crossing_for(word[j], word[j + 1])));
                word.swap(j, j + 1);
                ranks.swap(j, j + 1);
            }
        }
    }
}

/// Dotless layers realizing the matching of `key`: sort the bottom points so that every cap
/// pair is adjacent and leftmost, close the caps, open the cups on the left, then sort into
/// the target order.
pub fn planarize(key: &NormalKey) -> Vec<Layer> {
    let src = &key.src;
    let dst = &key.dst;
    let mut caps: Vec<(usize, usize)> = Vec::new();
    let mut cups: Vec<(usize, usize)> = Vec::new();
    // bottom position -> top position for through strands
    let mut through: Vec<(usize, usize)> = Vec::new();
    for s in key.strands() {
        let (a, b) = (s.start, s.end);
        match (a.side, b.side) {
            (Side::Bottom, Side::Bottom) => caps.push((a.pos.min(b.pos), a.pos.max(b.pos))),
            (Side::Top, Side::Top) => cups.push((a.pos.min(b.pos), a.pos.max(b.pos))),
            (Side::Bottom, Side::Top) => through.push((a.pos, b.pos)),
            (Side::Top, Side::Bottom) => through.push((b.pos, a.pos)),
        }
    }
    caps.sort();
    cups.sort();
    through.sort_by_key(|&(_, t)| t);

    let mut target = vec![0usize; src.len()];
    let mut r = 0;
    for &(a, b) in &caps {
        target[a] = r;
        target[b] = r + 1;
        r += 2;
    }
    for &(q, _) in &through {
        target[q] = r;
        r += 1;
    }

    let mut layers = Vec::new();
    let mut word = src.0.clone();
    let mut ranks = target;
    swap_pass(&mut word, &mut ranks, &mut layers);
    for _ in &caps {
        let w = Word(word.clone());
        layers.push(Layer::at(&w, 0, Gen::cap_for(word[0])));
        word.drain(0..2);
    }
    let mut tops: Vec<usize> = through.iter().map(|&(_, t)| t).collect();
    for &(a, b) in cups.iter().rev() {
        let w = Word(word.clone());
        layers.push(Layer::at(&w, 0, Gen::cup_for(dst.0[a])));
        word.splice(0..0, [dst.0[a], dst.0[b]]);
        tops.splice(0..0, [a, b]);
    }
    swap_pass(&mut word, &mut tops, &mut layers);
    debug_assert_eq!(&word, &dst.0);
    layers
}

pub fn realize_parts(key: &NormalKey) -> Bands {
    let src = &key.src;
    let dst = &key.dst;
    let mut b = Bands::default();
    for q in 0..src.len() {
        let s = &key.strands()[key.at_bottom(q)];
        match src.0[q] {
            Dir::Down if s.cliff => b.w1.push(Layer::at(src, q, Gen::DownWhiteDot)),
            Dir::Up => {
                for _ in 0..s.dots {
                    b.x2.push(Layer::at(src, q, Gen::BlackDot));
                }
            }
            _ => {}
        }
    }
    b.core = planarize(key);
    for t in 0..dst.len() {
        let s = &key.strands()[key.at_top(t)];
        match dst.0[t] {
            Dir::Down => {
                for _ in 0..s.dots {
                    b.x4.push(Layer::at(dst, t, Gen::DownBlackDot));
                }
            }
            Dir::Up if s.cliff => b.w5.push(Layer::at(dst, t, Gen::WhiteDot)),
            _ => {}
        }
    }
    b
}

/// The fixed representative of a key, as a stack on its source.
pub fn realize(key: &NormalKey) -> Vec<Layer> {
    realize_parts(key).stack()
}

pub fn realize_expr(key: &NormalKey) -> Expr {
    Expr::from_stack_on(key.src.clone(), realize(key), GRat::one())
        .expect("representative is well typed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::{enumerate_keys, DotBounds, Endpoint, Strand};

    #[test]
    fn dotted_identity() {
        let u: Word = "u".parse().unwrap();
        let k = NormalKey::new(
            u.clone(),
            u.clone(),
            vec![Strand {
                start: Endpoint::bottom(0),
                end: Endpoint::top(0),
                cliff: true,
                dots: 2,
            }],
        )
        .unwrap();
        let gens: Vec<Gen> = realize(&k).iter().map(|l| l.gen).collect();
        assert_eq!(gens, vec![Gen::BlackDot, Gen::BlackDot, Gen::WhiteDot]);
    }

    #[test]
    fn all_small_keys_realize() {
        for (a, b) in [
            ("ud", ""),
            ("du", "ud"),
            ("uud", "u"),
            ("dduu", "uddu"),
            ("", "udud"),
        ] {
            let (a, b): (Word, Word) = (a.parse().unwrap(), b.parse().unwrap());
            for k in enumerate_keys(&a, &b, DotBounds::total(1)).unwrap() {
                let e = realize_expr(&k);
                assert_eq!(e.dst(), &b);
            }
        }
    }

    #[test]
    fn swap_is_one_crossing() {
        let uu: Word = "uu".parse().unwrap();
        let k = NormalKey::new(
            uu.clone(),
            uu.clone(),
            vec![
                Strand {
                    start: Endpoint::bottom(0),
                    end: Endpoint::top(1),
                    cliff: false,
                    dots: 0,
                },
                Strand {
                    start: Endpoint::bottom(1),
                    end: Endpoint::top(0),
                    cliff: false,
                    dots: 0,
                },
            ],
        )
        .unwrap();
        assert_eq!(planarize(&k), vec![Layer::at(&uu, 0, Gen::UpCross)]);
    }
}
