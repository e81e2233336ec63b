//! Seeded generators. Every output passes its validator; equal configs give equal streams.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenConfig;
use crate::collars::{back_square_pullback, collared_degeneracy, half_open, BackSquareCube, PreCollared};
use crate::cubemodel::{from_faced_space, Cube, FacedSpace, Sign};
use crate::finspace::{FinSpace, SpaceMap};

pub struct Gen {
    rng: ChaCha8Rng,
    pub cfg: GenConfig,
}

/// A degree-1 cospan used as a product factor.
#[derive(Clone)]
struct Factor(Cube);

impl Gen {
    /// A stream for one suite; `salt` separates the streams of different laws.
    pub fn new(cfg: &GenConfig, salt: &str) -> Gen {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in salt.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        Gen { rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ h), cfg: cfg.clone() }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A degree in `1..=max`.
    pub fn degree_upto(&mut self, max: usize) -> usize {
        self.rng.gen_range(1..=max.max(1))
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A random finite preorder on `1..=max` points (ids `x0, x1, ...`).
    pub fn space_upto(&mut self, max: usize) -> FinSpace {
        let n = self.rng.gen_range(1..=max.max(1));
        self.space_of_size(n, "x")
    }

    pub fn space_of_size(&mut self, n: usize, prefix: &str) -> FinSpace {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let mut edges = vec![vec![false; n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                if self.rng.gen_bool(0.3) {
                    edges[perm[a]][perm[b]] = true;
                }
            }
        }
        if n >= 2 && self.rng.gen_bool(0.1) {
            let (a, b) = (perm[0], perm[1]);
            edges[a][b] = true;
            edges[b][a] = true;
        }
        let ids: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        FinSpace::from_generating(ids, |a, b| a == b || edges[a][b])
    }

    pub fn space(&mut self) -> FinSpace {
        let m = self.cfg.max_points;
        self.space_upto(m)
    }

    /// A random continuous map, by randomized search (a constant map always exists).
    pub fn map(&mut self, x: &FinSpace, y: &FinSpace) -> SpaceMap {
        assert!(!y.is_empty() || x.is_empty(), "no map into the empty space");
        let n = x.len();
        let orders: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut v: Vec<usize> = (0..y.len()).collect();
                v.shuffle(&mut self.rng);
                v
            })
            .collect();
        fn rec(k: usize, x: &FinSpace, y: &FinSpace, orders: &[Vec<usize>], cur: &mut Vec<usize>) -> bool {
            if k == x.len() {
                return true;
            }
            for &v in &orders[k] {
                let ok = (0..k).all(|p| (!x.leq(p, k) || y.leq(cur[p], v)) && (!x.leq(k, p) || y.leq(v, cur[p])));
                if ok {
                    cur.push(v);
                    if rec(k + 1, x, y, orders, cur) {
                        return true;
                    }
                    cur.pop();
                }
            }
            false
        }
        let mut cur = Vec::with_capacity(n);
        assert!(rec(0, x, y, &orders, &mut cur));
        SpaceMap::new(x.clone(), y.clone(), cur).expect("search yields monotone maps")
    }

    /// An embedding of `x` into a space with up to `extra` new points; closed if asked.
    pub fn embedding(&mut self, x: &FinSpace, extra: usize, closed: bool, prefix: &str) -> SpaceMap {
        loop {
            let m = self.rng.gen_range(0..=extra);
            let n = x.len() + m;
            let mut ids: Vec<String> = x.ids().to_vec();
            ids.extend((0..m).map(|i| format!("{prefix}{i}")));
            let mut edges = vec![vec![false; n]; n];
            for a in 0..n {
                for b in 0..n {
                    if a < x.len() && b < x.len() {
                        edges[a][b] = x.leq(a, b);
                    } else if a != b && !(closed && b < x.len()) && self.rng.gen_bool(0.25) {
                        // closed images: never put a new point below an old one
                        edges[a][b] = true;
                    }
                }
            }
            let y = FinSpace::from_generating(ids, |a, b| a == b || edges[a][b]);
            let f = SpaceMap::from_fn(x, &y, |e| y.index_of(x.id(e)).unwrap());
            if f.is_embedding() && (!closed || f.is_closed_embedding()) {
                return f;
            }
        }
    }

    /// A span of embeddings `A -> X`, `A -> Y` with every space of at most `max` points.
    pub fn embedding_span(&mut self, max: usize, closed: bool) -> (SpaceMap, SpaceMap) {
        let a = self.space_upto((max / 2).max(1));
        let room = max.saturating_sub(a.len());
        let f = self.embedding(&a, room, closed, "u");
        let g = self.embedding(&a, room, closed, "v");
        (f, g)
    }

    /// A cube from a space with random disjoint faces in each direction.
    pub fn faced_cube(&mut self, n: usize) -> Cube {
        let x = self.space();
        let mut faces = Vec::with_capacity(n);
        for _ in 0..n {
            let (mut m, mut p) = (Vec::new(), Vec::new());
            for id in x.ids() {
                match self.rng.gen_range(0..3) {
                    0 => m.push(id.clone()),
                    1 => p.push(id.clone()),
                    _ => {}
                }
            }
            faces.push((m, p));
        }
        from_faced_space(&FacedSpace { total: x, faces }).expect("disjoint faces of inclusions")
    }

    /// A degree-1 cospan of arbitrary maps with the given minus end.
    fn cospan_from(&mut self, minus: &FinSpace, max_mid: usize) -> Cube {
        let mid = if self.rng.gen_bool(0.3) {
            self.embedding(minus, 1, false, "m").dst().clone()
        } else {
            let n = self.rng.gen_range(1..=max_mid.max(1));
            self.space_of_size(n, "m")
        };
        let plus_n = if mid.is_empty() { 0 } else { self.rng.gen_range(0..=2) };
        let plus = self.space_of_size(plus_n, "p");
        let f = self.map(minus, &mid);
        let g = self.map(&plus, &mid);
        Cube::cospan(&f, &g).unwrap()
    }

    fn factor(&mut self) -> Factor {
        let n = self.rng.gen_range(0..=2);
        let minus = self.space_of_size(n, "q");
        Factor(self.cospan_from(&minus, 2))
    }

    fn factor_after(&mut self, f: &Factor) -> Factor {
        let end = f.0.face(1, Sign::Plus).unwrap();
        Factor(self.cospan_from(end.space(0), 2))
    }

    fn product(factors: &[Factor]) -> Cube {
        let mut it = factors.iter();
        let first = it.next().map(|f| f.0.clone()).unwrap_or_else(|| Cube::from_space(&FinSpace::point("*")));
        it.fold(first, |acc, f| acc.product(&f.0))
    }

    /// A random valid cube of degree `n`, mixing faced objects, products, degeneracies,
    /// transpositions, reversals and concatenations.
    pub fn cube(&mut self, n: usize) -> Cube {
        if n == 0 {
            return Cube::from_space(&self.space());
        }
        match self.rng.gen_range(0..6) {
            0 | 1 => self.faced_cube(n),
            2 => {
                let fs: Vec<Factor> = (0..n).map(|_| self.factor()).collect();
                Self::product(&fs)
            }
            3 => {
                let u = self.cube(n - 1);
                let i = self.rng.gen_range(1..=n);
                u.degeneracy(i).unwrap()
            }
            4 => {
                let u = self.cube(n);
                if n >= 2 {
                    let i = self.rng.gen_range(1..n);
                    u.transpose(i).unwrap()
                } else {
                    u.reverse(1).unwrap()
                }
            }
            _ => {
                let u = self.faced_cube(n);
                let i = self.rng.gen_range(1..=n);
                u.concat(&u.reverse(i).unwrap(), i).unwrap()
            }
        }
    }

    /// A cube of random degree `0..=max_degree`.
    pub fn any_cube(&mut self) -> Cube {
        let n = self.rng.gen_range(0..=self.cfg.max_degree);
        self.cube(n)
    }

    /// An `i`-consecutive chain of `len` cubes of degree `n`.
    pub fn chain(&mut self, n: usize, i: usize, len: usize) -> Vec<Cube> {
        if self.rng.gen_bool(0.5) {
            let mut fs: Vec<Factor> = (0..n).map(|_| self.factor()).collect();
            let mut out = vec![Self::product(&fs)];
            for _ in 1..len {
                fs[i - 1] = self.factor_after(&fs[i - 1]);
                out.push(Self::product(&fs));
            }
            out
        } else {
            let u = self.cube(n);
            let r = u.reverse(i).unwrap();
            (0..len).map(|k| if k % 2 == 0 { u.clone() } else { r.clone() }).collect()
        }
    }

    /// Four cubes `x, y, z, u` with `x, y` and `z, u` 1-consecutive, `x, z` and `y, u` 2-consecutive.
    pub fn block(&mut self, n: usize) -> [Cube; 4] {
        assert!(n >= 2);
        if self.rng.gen_bool(0.5) {
            let a = self.factor();
            let b = self.factor_after(&a);
            let c = self.factor();
            let d = self.factor_after(&c);
            let tail: Vec<Factor> = (2..n).map(|_| self.factor()).collect();
            let mk = |p: &Factor, q: &Factor| {
                let mut fs = vec![p.clone(), q.clone()];
                fs.extend(tail.iter().cloned());
                Self::product(&fs)
            };
            [mk(&a, &c), mk(&b, &c), mk(&a, &d), mk(&b, &d)]
        } else {
            let s = self.cube(n);
            let r1 = s.reverse(1).unwrap();
            let r2 = s.reverse(2).unwrap();
            let r12 = r1.reverse(2).unwrap();
            [s, r1, r2, r12]
        }
    }

    /// Three 1-consecutive pairs stacked in direction 2: rows `(x, y, z)` and `(x', y', z')`.
    pub fn hexagon_block(&mut self, n: usize) -> ([Cube; 3], [Cube; 3]) {
        assert!(n >= 2);
        if self.rng.gen_bool(0.5) {
            let a = self.factor();
            let b = self.factor_after(&a);
            let d = self.factor_after(&b);
            let c = self.factor();
            let c2 = self.factor_after(&c);
            let tail: Vec<Factor> = (2..n).map(|_| self.factor()).collect();
            let mk = |p: &Factor, q: &Factor| {
                let mut fs = vec![p.clone(), q.clone()];
                fs.extend(tail.iter().cloned());
                Self::product(&fs)
            };
            ([mk(&a, &c), mk(&b, &c), mk(&d, &c)], [mk(&a, &c2), mk(&b, &c2), mk(&d, &c2)])
        } else {
            let s = self.cube(n);
            let r1 = s.reverse(1).unwrap();
            let t = s.reverse(2).unwrap();
            let t1 = t.reverse(1).unwrap();
            ([s.clone(), r1, s], [t.clone(), t1, t])
        }
    }

    /// A degree-1 collared cospan with nonempty data.
    fn collared_factor(&mut self) -> PreCollared {
        let x = self.space_upto(2);
        match self.rng.gen_range(0..5) {
            0 => collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap(),
            1 => half_open(&x, Sign::Minus),
            2 => half_open(&x, Sign::Plus),
            3 => PreCollared::from_space(&x).degeneracy(1).unwrap(),
            _ => {
                let y = self.space_upto(1);
                let a = collared_degeneracy(&PreCollared::from_space(&x), 1).unwrap();
                a.sum(&PreCollared::from_space(&y).degeneracy(1).unwrap()).unwrap()
            }
        }
    }

    /// A collared cube of degree `n`: products of collared cospans, or a collared degeneracy.
    pub fn collared(&mut self, n: usize) -> PreCollared {
        if n == 0 {
            return PreCollared::from_space(&self.space_upto(3));
        }
        if n >= 2 && self.rng.gen_bool(0.25) {
            let u = self.collared(n - 1);
            let i = self.rng.gen_range(1..=n);
            return collared_degeneracy(&u, i).unwrap();
        }
        let mut acc = self.collared_factor();
        for _ in 1..n {
            let f = self.collared_factor();
            acc = acc.product(&f);
        }
        acc
    }

    /// An `i`-consecutive pair of collared cubes.
    pub fn collared_pair(&mut self, n: usize, i: usize) -> (PreCollared, PreCollared) {
        let u = self.collared(n);
        match self.rng.gen_range(0..3) {
            0 => {
                let r = u.reverse(i).unwrap();
                (u, r)
            }
            1 => {
                let r = u.reverse(i).unwrap();
                (r, u)
            }
            _ => {
                let face = u.face(i, Sign::Plus).unwrap();
                let e = collared_degeneracy(&face, i).unwrap();
                (u, e)
            }
        }
    }

    /// A cube satisfying the back-square hypotheses, over a random embedding pushout.
    pub fn back_square_cube(&mut self) -> BackSquareCube {
        loop {
            let (f, g) = self.embedding_span(5, false);
            let keep_a: Vec<bool> = (0..f.src().len()).map(|_| self.rng.gen_bool(0.6)).collect();
            let pick = |rng: &mut ChaCha8Rng, m: &SpaceMap| -> Vec<usize> {
                let img = m.image_mask();
                let mut keep = Vec::new();
                for e in 0..m.dst().len() {
                    let inside = if img[e] {
                        (0..m.src().len()).any(|a| m.apply(a) == e && keep_a[a])
                    } else {
                        rng.gen_bool(0.6)
                    };
                    if inside {
                        keep.push(e);
                    }
                }
                keep
            };
            let xk = pick(&mut self.rng, &f);
            let yk = pick(&mut self.rng, &g);
            if let Some(c) = BackSquareCube::over_pushout(&f, &g, &xk, &yk) {
                if back_square_pullback(&c).is_ok() {
                    return c;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collars::check_collared;

    #[test]
    fn streams_are_reproducible() {
        let cfg = GenConfig::new(1);
        let mut a = Gen::new(&cfg, "s");
        let mut b = Gen::new(&cfg, "s");
        assert_eq!(a.space(), b.space());
        assert_eq!(a.cube(2), b.cube(2));
        let mut c = Gen::new(&cfg, "t");
        let xs: Vec<FinSpace> = (0..5).map(|_| a.space()).collect();
        let ys: Vec<FinSpace> = (0..5).map(|_| c.space()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn generated_objects_validate() {
        let cfg = GenConfig::new(3);
        let mut g = Gen::new(&cfg, "v");
        for _ in 0..20 {
            let u = g.any_cube();
            assert!(u.validate().is_ok());
            let c = g.collared(1);
            assert!(c.validate().is_empty());
            assert!(check_collared(&c).is_ok());
            let ch = g.chain(2, 1, 3);
            assert!(ch[0].concat(&ch[1], 1).is_ok() && ch[1].concat(&ch[2], 1).is_ok());
            let [x, y, z, u] = g.block(2);
            assert!(x.concat(&y, 1).is_ok() && z.concat(&u, 1).is_ok());
            assert!(x.concat(&z, 2).is_ok() && y.concat(&u, 2).is_ok());
            let (f, h) = g.embedding_span(5, true);
            assert!(f.is_closed_embedding() && h.is_closed_embedding());
            g.back_square_cube();
        }
    }
}
