//! Reduction to the basis with fewer than `l` dots on every strand.
//!
//! A key with too many dots on a strand is cancelled against an element of the ideal
//! whose leading term is that key: the strand is moved to the right edge with crossings
//! (through a zigzag when its orientation does not match the generating polynomial), where
//! `f(x)` or `f'(xd)` may be tensored on from the left.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::{CycloData, CycloError, CycloMorphism, HomTransport};
use crate::algebras::{nu_image, permutations, word_expr, AElem, AMono, CycloSerg, Perturbation};
use crate::diagrams::{expr_compose, parse_expr, Dir, Expr, Gen, Layer, Word};
use crate::normalform::{
    enumerate_keys, realize_expr, DotBounds, NormalKey, NormalMorphism, Normalizer, Side,
};
use crate::qrep::linalg::{rank, SparseRow};
use crate::scalars::{BubblePoly, GRat, MPoly};
use crate::suites::Report;

/// Which generating set of the ideal drives the rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenSet {
    /// `f(x)` on upward strands; counterclockwise bubbles go to `delta_r`.
    Set1,
    /// `f'(xd)` on downward strands; clockwise bubbles go to `delta'_r`.
    Set2,
}

const MAX_STEPS: usize = 200_000;

pub struct CycloReducer {
    pub data: CycloData,
    pub set: GenSet,
    nz: Normalizer,
    ideal: Mutex<HashMap<NormalKey, CycloMorphism>>,
}

fn compose(f: &Expr, g: &Expr) -> Expr {
    expr_compose(f, g).expect("well typed")
}

fn layer_expr(l: Layer) -> Expr {
    Expr::from_layer(l)
}

/// Moves the letter at `p` to the right end.
fn to_end(w: &Word, p: usize) -> (Expr, Word) {
    let mut cur = w.clone();
    let mut out = Expr::identity(w.clone());
    for j in p..w.len() - 1 {
        let (x, y) = (cur.0[j], cur.0[j + 1]);
        out = compose(
            &layer_expr(Layer::at(&cur, j, Gen::crossing_for(x, y))),
            &out,
        );
        cur.0.swap(j, j + 1);
    }
    (out, cur)
}

/// Inverse of `to_end(w, p)`, from the moved word back to `w`.
fn from_end(w: &Word, p: usize) -> Expr {
    let (_, mut cur) = to_end(w, p);
    let mut out = Expr::identity(cur.clone());
    for j in (p..w.len() - 1).rev() {
        let (x, y) = (cur.0[j], cur.0[j + 1]);
        out = compose(
            &layer_expr(Layer::at(&cur, j, Gen::crossing_for(x, y))),
            &out,
        );
        cur.0.swap(j, j + 1);
    }
    out
}

/// `k` dots on the letter at `p`, applied at the right edge and conjugated back.
fn conjugated_dots(w: &Word, p: usize, k: u32) -> Expr {
    let (there, moved) = to_end(w, p);
    let n = w.len();
    let gen = if moved.0[n - 1] == Dir::Up {
        Gen::BlackDot
    } else {
        Gen::DownBlackDot
    };
    let mut dots = Expr::identity(moved.clone());
    for _ in 0..k {
        dots = compose(
            &layer_expr(Layer::new(moved.slice(0, n - 1), gen, Word::empty())),
            &dots,
        );
    }
    compose(&from_end(w, p), &compose(&dots, &there))
}

/// An element of `End(w)` whose leading term is `k` dots at `p`, built from `dot^k` of
/// the orientation `want` at the right edge.
fn dot_term(w: &Word, p: usize, k: u32, want: Dir) -> Expr {
    let letter = w.0[p];
    if letter == want {
        return conjugated_dots(w, p, k);
    }
    let (left, right) = (w.slice(0, p), w.slice(p + 1, w.len()));
    match letter {
        Dir::Up => {
            // zigzag up = (id(u) * cap) . (cup * id(u)), dots on the middle down segment
            let expanded = left
                .concat(&Word::ups(1))
                .concat(&Word::downs(1))
                .concat(&Word::ups(1))
                .concat(&right);
            let cup = layer_expr(Layer::new(left.clone(), Gen::LCup, w.slice(p, w.len())));
            let cap = layer_expr(Layer::at(&expanded, p + 1, Gen::LCap));
            compose(&cap, &compose(&conjugated_dots(&expanded, p + 1, k), &cup))
        }
        Dir::Down => {
            // zigzag down = (cap * id(d)) . (id(d) * cup), dots on the middle up segment
            let expanded = left
                .concat(&Word::downs(1))
                .concat(&Word::ups(1))
                .concat(&Word::downs(1))
                .concat(&right);
            let cup = layer_expr(Layer::new(w.slice(0, p + 1), Gen::LCup, right.clone()));
            let cap = layer_expr(Layer::at(&expanded, p, Gen::LCap));
            compose(&cap, &compose(&conjugated_dots(&expanded, p + 1, k), &cup))
        }
    }
}

fn unit_inverse(c: &MPoly) -> Result<GRat, CycloError> {
    c.as_constant()
        .filter(|x| !x.is_zero())
        .and_then(|x| x.inv().ok())
        .ok_or_else(|| CycloError::NotUnit(super::render_k(c)))
}

impl CycloReducer {
    pub fn new(data: CycloData, set: GenSet) -> CycloReducer {
        CycloReducer {
            data,
            set,
            nz: Normalizer::new(),
            ideal: Mutex::new(HashMap::new()),
        }
    }

    pub fn l(&self) -> u32 {
        self.data.l
    }

    /// Counterclockwise bubble values `Delta_1, Delta_3, ...` up to `count` of them.
    fn ccw_values(&self, count: usize) -> Vec<MPoly> {
        match self.set {
            GenSet::Set1 => self.data.delta_series(count)[1..].to_vec(),
            GenSet::Set2 => {
                // D(v) D'(v) = -1 solved for D from the clockwise values
                let dp = self.data.delta_prime_series(count);
                let mut d = vec![MPoly::one()];
                for n in 1..=count {
                    let mut acc = MPoly::zero();
                    for i in 0..n {
                        acc = &acc + &(&d[i] * &dp[n - i]);
                    }
                    d.push(acc);
                }
                d[1..].to_vec()
            }
        }
    }

    pub fn specialize(&self, p: &BubblePoly) -> MPoly {
        let top = p
            .as_mpoly()
            .terms()
            .keys()
            .map(|m| m.len())
            .max()
            .unwrap_or(0);
        p.as_mpoly().substitute(&self.ccw_values(top))
    }

    /// Normal form in the affine category with bubbles specialized; dots not yet reduced.
    pub fn lift(&self, e: &Expr) -> Result<CycloMorphism, CycloError> {
        Ok(self.lift_normal(e.src(), e.dst(), &self.nz.normalize(e)?))
    }

    pub fn lift_normal(&self, src: &Word, dst: &Word, m: &NormalMorphism) -> CycloMorphism {
        let mut out = CycloMorphism::zero(src.clone(), dst.clone());
        for (k, c) in m.terms() {
            out.add_term(k.clone(), self.specialize(c));
        }
        out
    }

    /// The image of `e` in the quotient, in the basis with fewer than `l` dots per strand.
    pub fn normalize(&self, e: &Expr) -> Result<CycloMorphism, CycloError> {
        self.reduce(self.lift(e)?)
    }

    /// Same for a combination with coefficients in the `z'` ring.
    pub fn normalize_combination(
        &self,
        src: &Word,
        dst: &Word,
        parts: &[(MPoly, Expr)],
    ) -> Result<CycloMorphism, CycloError> {
        let mut m = CycloMorphism::zero(src.clone(), dst.clone());
        for (c, e) in parts {
            m.add_scaled(&self.lift(e)?, c);
        }
        self.reduce(m)
    }

    fn poly(&self) -> (Vec<MPoly>, Dir) {
        match self.set {
            GenSet::Set1 => (
                self.data
                    .f_coeffs()
                    .into_iter()
                    .map(MPoly::constant)
                    .collect(),
                Dir::Up,
            ),
            GenSet::Set2 => (self.data.fprime_coeffs(), Dir::Down),
        }
    }

    /// An element of the ideal with leading term `key`, which must carry at least `l`
    /// dots on some strand.
    pub fn ideal_element(&self, key: &NormalKey) -> Result<CycloMorphism, CycloError> {
        if let Some(hit) = self.ideal.lock().expect("cache").get(key) {
            return Ok(hit.clone());
        }
        let l = self.l();
        let mut strands = key.strands().to_vec();
        let idx = strands
            .iter()
            .position(|s| s.dots >= l)
            .expect("a strand with too many dots");
        strands[idx].dots -= l;
        let start = strands[idx].start;
        let lower = NormalKey::new(key.src.clone(), key.dst.clone(), strands)?;
        let lower_expr = realize_expr(&lower);
        let (coeffs, want) = self.poly();
        let mut out = CycloMorphism::zero(key.src.clone(), key.dst.clone());
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = match start.side {
                Side::Bottom => {
                    compose(&lower_expr, &dot_term(&key.src, start.pos, k as u32, want))
                }
                Side::Top => compose(&dot_term(&key.dst, start.pos, k as u32, want), &lower_expr),
            };
            out.add_scaled(&self.lift(&prod)?, c);
        }
        self.ideal
            .lock()
            .expect("cache")
            .insert(key.clone(), out.clone());
        Ok(out)
    }

    pub fn reduce(&self, mut m: CycloMorphism) -> Result<CycloMorphism, CycloError> {
        let l = self.l();
        for _ in 0..MAX_STEPS {
            let Some(key) = m
                .terms()
                .keys()
                .filter(|k| k.max_dots() >= l)
                .max_by_key(|k| (k.total_dots(), (*k).clone()))
                .cloned()
            else {
                return Ok(m);
            };
            let e = self.ideal_element(&key)?;
            let c = m.coeff(&key).scale(&unit_inverse(&e.coeff(&key))?);
            m.add_scaled(&e, &-&c);
            if !m.coeff(&key).is_zero() {
                return Err(CycloError::NotUnit(format!(
                    "key {key} survived its own cancellation"
                )));
            }
        }
        Err(CycloError::Diverged(MAX_STEPS))
    }
}

/// Triangular inversion of the map from affine Sergeev monomials to keys of `End(up^r)`.
struct NuTable {
    r: usize,
    nz: Normalizer,
    perms: HashMap<Vec<(usize, usize)>, Vec<u8>>,
    images: HashMap<AMono, BTreeMap<NormalKey, GRat>>,
}

fn connectivity(k: &NormalKey) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = k
        .strands()
        .iter()
        .map(|s| (s.start.pos, s.end.pos))
        .collect();
    v.sort();
    v
}

impl NuTable {
    fn new(r: usize) -> Result<NuTable, CycloError> {
        let mut t = NuTable {
            r,
            nz: Normalizer::new(),
            perms: HashMap::new(),
            images: HashMap::new(),
        };
        for w in permutations(r) {
            let m = AMono { w, ..AMono::one(r) };
            let img = t.image(&m)?;
            let key = img.keys().next().expect("permutations are nonzero");
            t.perms.insert(connectivity(key), m.w.clone());
        }
        Ok(t)
    }

    fn image(&mut self, m: &AMono) -> Result<BTreeMap<NormalKey, GRat>, CycloError> {
        if let Some(hit) = self.images.get(m) {
            return Ok(hit.clone());
        }
        let r = self.r;
        let e = word_expr(&Word::ups(r), &[(GRat::one(), m.to_word())], &|g| {
            nu_image(r, g, Perturbation::None)
        });
        let nf = self.nz.normalize(&e)?;
        let mut out = BTreeMap::new();
        for (k, c) in nf.terms() {
            let c = c
                .as_constant()
                .ok_or_else(|| CycloError::NotUnit(format!("bubble in the image of {m}")))?;
            out.insert(k.clone(), c);
        }
        self.images.insert(m.clone(), out.clone());
        Ok(out)
    }

    fn decode(&self, k: &NormalKey) -> Option<AMono> {
        let w = self.perms.get(&connectivity(k))?.clone();
        let r = self.r;
        let mut m = AMono { w, ..AMono::one(r) };
        for s in k.strands() {
            let i = r - 1 - s.end.pos;
            m.a[i] = s.dots;
            if s.cliff {
                m.b |= 1 << i;
            }
        }
        Some(m)
    }

    fn invert(&mut self, target: &BTreeMap<NormalKey, GRat>) -> Result<AElem, CycloError> {
        let mut rem = target.clone();
        let mut out = AElem::zero();
        for _ in 0..MAX_STEPS {
            let Some(k) = rem
                .keys()
                .max_by_key(|k| (k.total_dots(), (*k).clone()))
                .cloned()
            else {
                return Ok(out);
            };
            let m = self
                .decode(&k)
                .ok_or_else(|| CycloError::NotUnit(format!("no monomial for {k}")))?;
            let img = self.image(&m)?;
            let lead = img.get(&k).cloned().unwrap_or_else(GRat::zero);
            let c = rem[&k]
                .div(&lead)
                .map_err(|_| CycloError::NotUnit(format!("{k} is not the leading term of {m}")))?;
            out.add_term(m, c.clone());
            for (kk, x) in img {
                let e = rem.entry(kk.clone()).or_insert_with(GRat::zero);
                *e -= &(&x * &c);
                if e.is_zero() {
                    rem.remove(&kk);
                }
            }
        }
        Err(CycloError::Diverged(MAX_STEPS))
    }
}

/// The second reduction route: transport to `End(up^r)`, read the result as an element of
/// the affine Sergeev superalgebra, reduce in its cyclotomic quotient and come back.
pub fn gamma_reduce(red: &CycloReducer, m: &CycloMorphism) -> Result<CycloMorphism, CycloError> {
    let t = HomTransport::new(&m.src, &m.dst)?;
    let r = t.r;
    let mut there = CycloMorphism::zero(Word::ups(r), Word::ups(r));
    for (k, c) in m.terms() {
        there.add_scaled(&red.lift(&t.forward(&realize_expr(k)))?, c);
    }
    let mut table = NuTable::new(r)?;
    let alg = CycloSerg::new(r, red.data.f_coeffs())?;
    let mut reduced = CycloMorphism::zero(Word::ups(r), Word::ups(r));
    for (zmono, part) in there.components() {
        let elem = alg.reduce(&table.invert(&part)?);
        let coeff = MPoly::monomial(zmono, GRat::one());
        for (mono, c) in elem.terms() {
            for (k, x) in table.image(mono)? {
                reduced.add_term(k, coeff.scale(&(&x * c)));
            }
        }
    }
    let mut out = CycloMorphism::zero(m.src.clone(), m.dst.clone());
    for (k, c) in reduced.terms() {
        out.add_scaled(&red.lift(&t.backward(&realize_expr(k)))?, c);
    }
    // the two key bases agree only modulo the ideal: a bent strand can come back with
    // f(x) on it, which is rewritten away here
    red.reduce(out)
}

/// Number of basis keys of `Hom(a, b)` in the quotient; with `bubble_weight`, times the
/// number of monomials in the free bubbles `Delta_1, ..., Delta_(2m-1)` of at most that weight.
pub fn cyclo_dim(
    a: &Word,
    b: &Word,
    data: &CycloData,
    bubble_weight: Option<u32>,
) -> Result<usize, CycloError> {
    if a.flow() != b.flow() {
        return Ok(0);
    }
    if a.len() + b.len() > 12 {
        return Err(CycloError::Unbounded(format!(
            "{} boundary points",
            a.len() + b.len()
        )));
    }
    let keys = enumerate_keys(a, b, DotBounds::per_strand(data.l))?.len();
    Ok(match bubble_weight {
        None => keys,
        Some(w) => keys * free_bubble_monomials(data, w).len(),
    })
}

fn free_bubble_monomials(data: &CycloData, weight: u32) -> Vec<Vec<u32>> {
    let m = data.m();
    BubblePoly::monomials_up_to(weight)
        .into_iter()
        .filter(|mono| mono.iter().skip(m).all(|&e| e == 0))
        .collect()
}

fn bubble_expr(clockwise: bool, k: usize) -> Expr {
    let text = if clockwise {
        format!("rcap . {}cup", "(x*id(d)) . ".repeat(k))
    } else {
        format!("cap . {}rcup", "(id(d)*x) . ".repeat(k))
    };
    parse_expr(&text).expect("bubble")
}

fn dots_poly(word: &str, coeffs: &[MPoly], down: bool) -> Vec<(MPoly, Expr)> {
    let w: Word = word.parse().expect("word");
    let n = w.len();
    let gen = if down {
        Gen::DownBlackDot
    } else {
        Gen::BlackDot
    };
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut e = Expr::identity(w.clone());
            for _ in 0..k {
                e = compose(
                    &layer_expr(Layer::new(w.slice(0, n - 1), gen, Word::empty())),
                    &e,
                );
            }
            (c.clone(), e)
        })
        .collect()
}

/// Each generating set reduces to zero under the rewriting driven by the other.
pub fn set_equivalence(data: &CycloData, max_r: usize) -> Result<Report, CycloError> {
    let mut rep = Report::new("generating-sets");
    let set1 = CycloReducer::new(data.clone(), GenSet::Set1);
    let set2 = CycloReducer::new(data.clone(), GenSet::Set2);
    let f: Vec<MPoly> = data.f_coeffs().into_iter().map(MPoly::constant).collect();
    let fp = data.fprime_coeffs();
    let empty = Word::empty();
    let one = Expr::identity(empty.clone());
    for word in ["u", "du", "uu"] {
        let w: Word = word.parse().expect("word");
        let m = set2.normalize_combination(&w, &w, &dots_poly(word, &f, false))?;
        rep.check(
            format!("f(x) on the right of {word} vanishes using f'"),
            m.is_zero(),
            m.to_string(),
        );
    }
    for word in ["d", "ud", "dd"] {
        let w: Word = word.parse().expect("word");
        let m = set1.normalize_combination(&w, &w, &dots_poly(word, &fp, true))?;
        rep.check(
            format!("f'(xd) on the right of {word} vanishes using f"),
            m.is_zero(),
            m.to_string(),
        );
    }
    for r in 1..=max_r {
        let ccw = [
            (MPoly::one(), bubble_expr(false, 2 * r - 1)),
            (-&data.delta(r), one.clone()),
        ];
        let m = set2.normalize_combination(&empty, &empty, &ccw)?;
        rep.check(
            format!(
                "counterclockwise bubble with {} dots minus delta_{r} vanishes using f'",
                2 * r - 1
            ),
            m.is_zero(),
            m.to_string(),
        );
        let cw = [
            (MPoly::one(), bubble_expr(true, 2 * r - 1)),
            (-&data.delta_prime(r), one.clone()),
        ];
        let m = set1.normalize_combination(&empty, &empty, &cw)?;
        rep.check(
            format!(
                "clockwise bubble with {} dots minus delta'_{r} vanishes using f",
                2 * r - 1
            ),
            m.is_zero(),
            m.to_string(),
        );
    }
    Ok(rep)
}

/// Formal `z'` over `f`, and the check that the free bubbles of `OBC^f` match the
/// free coefficients on sampled Hom-spaces.
pub fn obcf_bridge(f: &[GRat], max_weight: u32) -> Result<(CycloData, Report), CycloError> {
    let data = CycloData::from_f(f, None)?;
    let mut rep = data.check_e1_e2(8);
    rep.suite = "obcf-bridge".into();
    if data.m() >= 1 {
        let want = &MPoly::var(0) - &MPoly::constant(data.z[1].clone());
        rep.check(
            "delta_1 = z'_1 - z_1",
            data.delta(1) == want,
            super::render_k(&data.delta(1)),
        );
    } else {
        rep.check(
            "delta_r = 0 for r >= 1",
            (1..=4).all(|r| data.delta(r).is_zero()),
            "",
        );
    }
    let red = CycloReducer::new(data.clone(), GenSet::Set1);
    let monos = free_bubble_monomials(&data, max_weight);
    for (a, b) in [("u", "u"), ("du", ""), ("uu", "uu")] {
        let (a, b): (Word, Word) = (a.parse().expect("word"), b.parse().expect("word"));
        let keys = enumerate_keys(&a, &b, DotBounds::per_strand(data.l))?;
        let mut index: HashMap<(NormalKey, Vec<u32>), usize> = HashMap::new();
        let mut rows = Vec::new();
        for k in &keys {
            for mono in &monos {
                let bp = BubblePoly::from_mpoly(MPoly::monomial(mono.clone(), GRat::one()));
                let img = red.normalize(&NormalMorphism::single(k.clone(), bp).to_expr())?;
                let mut row = SparseRow::new();
                for (kk, c) in img.terms() {
                    for (zm, x) in c.terms() {
                        let next = index.len();
                        row.insert(
                            *index.entry((kk.clone(), zm.clone())).or_insert(next),
                            x.clone(),
                        );
                    }
                }
                rows.push(row);
            }
        }
        let count = rows.len();
        let rk = rank(rows);
        rep.check(
            format!("Hom({a}, {b}): free bubbles times basis keys stay independent"),
            rk == count,
            format!("rank {rk} of {count}"),
        );
    }
    Ok((data, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(c: i64) -> MPoly {
        MPoly::constant(GRat::from_int(c))
    }

    fn q(v: &[i64]) -> Vec<GRat> {
        v.iter().map(|&c| GRat::from_int(c)).collect()
    }

    fn reducer(l: u32, z: &[i64], set: GenSet) -> CycloReducer {
        CycloReducer::new(CycloData::new(l, q(z), None).unwrap(), set)
    }

    #[test]
    fn level_one_kills_dots() {
        let r = reducer(1, &[1], GenSet::Set1);
        assert!(r.normalize(&parse_expr("x").unwrap()).unwrap().is_zero());
        assert_eq!(
            cyclo_dim(&"u".parse().unwrap(), &"u".parse().unwrap(), &r.data, None).unwrap(),
            2
        );
    }

    #[test]
    fn square_dot_is_scalar() {
        // f = t^2 - 3
        let r = reducer(2, &[1, -3], GenSet::Set1);
        let m = r.normalize(&parse_expr("x . x").unwrap()).unwrap();
        let want = r.normalize(&parse_expr("id(u)").unwrap()).unwrap();
        let mut three = CycloMorphism::zero(want.src.clone(), want.dst.clone());
        three.add_scaled(&want, &scalar(3));
        assert_eq!(m, three);
    }

    #[test]
    fn dimensions() {
        let d = CycloData::new(2, q(&[1, -1]), None).unwrap();
        let w = |s: &str| -> Word { s.parse().unwrap() };
        assert_eq!(cyclo_dim(&w("uu"), &w("uu"), &d, None).unwrap(), 32);
        assert_eq!(cyclo_dim(&w("u"), &w("d"), &d, None).unwrap(), 0);
    }

    #[test]
    fn generating_sets_agree() {
        for (l, z) in [(1, vec![1]), (2, vec![1, -2]), (3, vec![1, 5])] {
            let d = CycloData::new(l, q(&z), None).unwrap();
            let rep = set_equivalence(&d, 2).unwrap();
            assert!(rep.passed(), "l = {l}: {rep}");
        }
    }

    #[test]
    fn routes_agree_on_a_curl() {
        let red = reducer(2, &[1, -2], GenSet::Set1);
        let e = parse_expr("(x * id(d)) . (x * id(d)) . (x * id(d)) . cup").unwrap();
        let direct = red.normalize(&e).unwrap();
        assert_eq!(gamma_reduce(&red, &red.lift(&e).unwrap()).unwrap(), direct);
    }

    #[test]
    fn bridge_small() {
        let (_, rep) = obcf_bridge(&q(&[-3, 0, 1]), 3).unwrap();
        assert!(rep.passed(), "{rep}");
        let (d, rep) = obcf_bridge(&q(&[0, 1]), 2).unwrap();
        assert!(rep.passed() && d.m() == 0, "{rep}");
    }
}
