//! Finite topological spaces, stored as preorders (open sets are up-sets).

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("relation references unknown element `{0}`")]
    DanglingRef(String),
    #[error("malformed element id `{0}`: ids must be non-empty with balanced parentheses and no top-level comma")]
    MalformedId(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("map is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("map is not continuous: `{0}` <= `{1}` but images are unrelated")]
    NotMonotone(String, String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("interval degree must be at least 1")]
    BadIntervalDegree,
}

/// Row-major bit matrix for the order relation.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Rel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Rel {
    fn new(n: usize) -> Rel {
        let words = n.div_ceil(64).max(1);
        Rel { n, words, bits: vec![0; n * words] }
    }
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }
    fn close(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    let (a, b) = (i * self.words, k * self.words);
                    for w in 0..self.words {
                        let v = self.bits[b + w];
                        self.bits[a + w] |= v;
                    }
                }
            }
        }
    }
}

struct SpaceData {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    rel: Rel,
}

/// A finite space. Elements are kept sorted by id; `leq` is reflexive and transitive.
/// Cloning is cheap.
#[derive(Clone)]
pub struct FinSpace(Arc<SpaceData>);

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ids == other.0.ids && self.0.rel == other.0.rel)
    }
}
impl Eq for FinSpace {}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace{{{}}}", self.0.ids.join(" "))?;
        let covers = self.covers();
        if !covers.is_empty() {
            write!(f, " <")?;
            for (a, b) in covers {
                write!(f, " {}<{}", self.id(a), self.id(b))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn well_formed_id(id: &str) -> bool {
    if id.is_empty() {
        return false;
    }
    let mut depth: i64 = 0;
    for c in id.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            ',' if depth == 0 => return false,
            _ => {}
        }
    }
    depth == 0
}

impl FinSpace {
    /// Builds a space from ids and generating pairs `a <= b`, closing the relation.
    pub fn new<S: AsRef<str>>(elements: &[S], leq_pairs: &[(S, S)]) -> Result<FinSpace, SpaceError> {
        let mut seen = BTreeSet::new();
        for e in elements {
            let e = e.as_ref();
            if !well_formed_id(e) {
                return Err(SpaceError::MalformedId(e.to_string()));
            }
            if !seen.insert(e.to_string()) {
                return Err(SpaceError::DuplicateId(e.to_string()));
            }
        }
        let ids: Vec<String> = seen.into_iter().collect();
        let index: HashMap<String, usize> = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut pairs = Vec::with_capacity(leq_pairs.len());
        for (a, b) in leq_pairs {
            let ia = *index.get(a.as_ref()).ok_or_else(|| SpaceError::DanglingRef(a.as_ref().to_string()))?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| SpaceError::DanglingRef(b.as_ref().to_string()))?;
            pairs.push((ia, ib));
        }
        Ok(Self::build_sorted(ids, index, &pairs, true))
    }

    fn build_sorted(ids: Vec<String>, index: HashMap<String, usize>, pairs: &[(usize, usize)], close: bool) -> FinSpace {
        let mut rel = Rel::new(ids.len());
        for &(a, b) in pairs {
            rel.set(a, b);
        }
        if close {
            rel.close();
        }
        FinSpace(Arc::new(SpaceData { ids, index, rel }))
    }

    /// Builds from arbitrary-order ids and a predicate that is already reflexive and transitive.
    pub(crate) fn from_closed(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FinSpace {
        Self::from_fn(ids, leq, false)
    }

    /// Builds from arbitrary-order ids and a generating relation, closing it.
    pub(crate) fn from_generating(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FinSpace {
        Self::from_fn(ids, leq, true)
    }

    fn from_fn(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool, close: bool) -> FinSpace {
        let n = ids.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
        debug_assert!(order.windows(2).all(|w| ids[w[0]] != ids[w[1]]), "ids not distinct");
        let sorted: Vec<String> = order.iter().map(|&i| ids[i].clone()).collect();
        let index: HashMap<String, usize> = sorted.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut rel = Rel::new(n);
        for (a, &oa) in order.iter().enumerate() {
            for (b, &ob) in order.iter().enumerate() {
                if leq(oa, ob) {
                    rel.set(a, b);
                }
            }
        }
        if close {
            rel.close();
        }
        FinSpace(Arc::new(SpaceData { ids: sorted, index, rel }))
    }

    pub fn empty() -> FinSpace {
        Self::from_closed(Vec::new(), |_, _| false)
    }

    pub fn point(id: &str) -> FinSpace {
        Self::from_closed(vec![id.to_string()], |_, _| true)
    }

    pub fn discrete<S: AsRef<str>>(ids: &[S]) -> Result<FinSpace, SpaceError> {
        Self::new::<&str>(&ids.iter().map(|s| s.as_ref()).collect::<Vec<_>>(), &[])
    }

    pub fn len(&self) -> usize {
        self.0.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.0.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.0.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.0.index.get(id).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.0.rel.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    /// All pairs `(a, b)` with `a < b` or `a ~ b`, `a != b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs of the relation (a generating set of minimal size for posets).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                if self.leq(b, a) {
                    // equivalent points: keep one direction of the cycle via the id order.
                    out.push((a, b));
                    continue;
                }
                let skip = (0..n).any(|c| c != a && c != b && self.lt(a, c) && self.lt(c, b) );
                if !skip {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn is_up_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|i| !set[i] || (0..self.len()).all(|j| !self.leq(i, j) || set[j]))
    }

    pub fn is_down_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|i| !set[i] || (0..self.len()).all(|j| !self.leq(j, i) || set[j]))
    }

    pub fn classify_subset<S: AsRef<str>>(&self, subset: &[S]) -> Result<SubsetFlags, SpaceError> {
        let mut mask = vec![false; self.len()];
        for s in subset {
            let i = self.index_of(s.as_ref()).ok_or_else(|| SpaceError::UnknownElement(s.as_ref().to_string()))?;
            mask[i] = true;
        }
        Ok(self.classify_mask(&mask))
    }

    pub fn classify_mask(&self, mask: &[bool]) -> SubsetFlags {
        let open = self.is_up_closed(mask);
        let closed = self.is_down_closed(mask);
        SubsetFlags { open, closed, clopen: open && closed }
    }

    /// Subspace on the given indices (restricted order).
    pub fn subspace(&self, keep: &[usize]) -> FinSpace {
        let ids = keep.iter().map(|&i| self.id(i).to_string()).collect();
        FinSpace::from_closed(ids, |a, b| self.leq(keep[a], keep[b]))
    }

    /// Renames every id by `f` (which must be injective on this space).
    pub fn rename(&self, f: impl Fn(&str) -> String) -> FinSpace {
        let ids: Vec<String> = self.ids().iter().map(|s| f(s)).collect();
        FinSpace::from_closed(ids, |a, b| self.leq(a, b))
    }

    /// Connected components of the comparability graph, each sorted, in order of least element.
    pub fn clopen_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) {
                    uf.union(a, b);
                }
            }
        }
        uf.classes()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetFlags {
    pub open: bool,
    pub closed: bool,
    pub clopen: bool,
}

/// Union-find with path halving; `classes` lists classes by least member.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

/// A continuous (monotone) map between finite spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMap {
    src: FinSpace,
    dst: FinSpace,
    assign: Vec<usize>,
}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpaceMap{{")?;
        for (i, &j) in self.assign.iter().enumerate() {
            write!(f, " {}->{}", self.src.id(i), self.dst.id(j))?;
        }
        write!(f, " }}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapFlags {
    pub continuous: bool,
    pub injective: bool,
    pub embedding: bool,
    pub closed_embedding: bool,
    pub homeomorphism: bool,
}

impl SpaceMap {
    pub fn new(src: FinSpace, dst: FinSpace, assign: Vec<usize>) -> Result<SpaceMap, SpaceError> {
        if assign.len() != src.len() || assign.iter().any(|&j| j >= dst.len()) {
            return Err(SpaceError::DomainMismatch("assignment does not match spaces".into()));
        }
        let m = SpaceMap { src, dst, assign };
        m.check_monotone()?;
        Ok(m)
    }

    /// Trusted constructor for internally derived maps.
    pub(crate) fn raw(src: FinSpace, dst: FinSpace, assign: Vec<usize>) -> SpaceMap {
        SpaceMap { src, dst, assign }
    }

    pub fn from_ids(src: FinSpace, dst: FinSpace, assign: &BTreeMap<String, String>) -> Result<SpaceMap, SpaceError> {
        for k in assign.keys() {
            if src.index_of(k).is_none() {
                return Err(SpaceError::UnknownElement(k.clone()));
            }
        }
        let mut v = Vec::with_capacity(src.len());
        for id in src.ids() {
            let img = assign.get(id).ok_or_else(|| SpaceError::NotTotal(id.clone()))?;
            v.push(dst.index_of(img).ok_or_else(|| SpaceError::UnknownElement(img.clone()))?);
        }
        SpaceMap::new(src, dst, v)
    }

    pub fn from_fn(src: &FinSpace, dst: &FinSpace, f: impl Fn(usize) -> usize) -> SpaceMap {
        let assign = (0..src.len()).map(f).collect();
        SpaceMap::raw(src.clone(), dst.clone(), assign)
    }

    fn check_monotone(&self) -> Result<(), SpaceError> {
        for a in 0..self.src.len() {
            for b in 0..self.src.len() {
                if self.src.leq(a, b) && !self.dst.leq(self.assign[a], self.assign[b]) {
                    return Err(SpaceError::NotMonotone(self.src.id(a).into(), self.src.id(b).into()));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &FinSpace) -> SpaceMap {
        SpaceMap { src: x.clone(), dst: x.clone(), assign: (0..x.len()).collect() }
    }

    /// The unique map to a one-point space.
    pub fn to_point(x: &FinSpace, point: &FinSpace) -> SpaceMap {
        assert_eq!(point.len(), 1);
        SpaceMap::raw(x.clone(), point.clone(), vec![0; x.len()])
    }

    pub fn src(&self) -> &FinSpace {
        &self.src
    }
    pub fn dst(&self) -> &FinSpace {
        &self.dst
    }
    pub fn assign(&self) -> &[usize] {
        &self.assign
    }
    pub fn apply(&self, i: usize) -> usize {
        self.assign[i]
    }
    pub fn apply_id(&self, id: &str) -> Option<&str> {
        self.src.index_of(id).map(|i| self.dst.id(self.assign[i]))
    }

    pub fn assign_ids(&self) -> BTreeMap<String, String> {
        (0..self.src.len()).map(|i| (self.src.id(i).to_string(), self.dst.id(self.assign[i]).to_string())).collect()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SpaceMap) -> Result<SpaceMap, SpaceError> {
        if first.dst != self.src {
            return Err(SpaceError::DomainMismatch("composite of non-composable maps".into()));
        }
        Ok(SpaceMap { src: first.src.clone(), dst: self.dst.clone(), assign: first.assign.iter().map(|&i| self.assign[i]).collect() })
    }

    /// Composition that panics on mismatch; used where composability is structural.
    pub(crate) fn then(&self, second: &SpaceMap) -> SpaceMap {
        second.after(self).expect("internal composition mismatch")
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.assign.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.dst.len()];
        for &j in &self.assign {
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.dst.len()];
        for &j in &self.assign {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.dst.len()];
        for &j in &self.assign {
            m[j] = true;
        }
        m
    }

    pub fn image(&self) -> Vec<usize> {
        let m = self.image_mask();
        (0..m.len()).filter(|&i| m[i]).collect()
    }

    fn reflects_order(&self) -> bool {
        let n = self.src.len();
        (0..n).all(|a| (0..n).all(|b| self.src.leq(a, b) == self.dst.leq(self.assign[a], self.assign[b])))
    }

    pub fn is_embedding(&self) -> bool {
        self.is_injective() && self.reflects_order()
    }

    pub fn is_closed_embedding(&self) -> bool {
        self.is_embedding() && self.dst.is_down_closed(&self.image_mask())
    }

    pub fn is_open_embedding(&self) -> bool {
        self.is_embedding() && self.dst.is_up_closed(&self.image_mask())
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.src.len() == self.dst.len() && self.is_embedding()
    }

    pub fn classify(&self) -> MapFlags {
        let injective = self.is_injective();
        let embedding = injective && self.reflects_order();
        let closed_embedding = embedding && self.dst.is_down_closed(&self.image_mask());
        MapFlags {
            continuous: self.check_monotone().is_ok(),
            injective,
            embedding,
            closed_embedding,
            homeomorphism: embedding && self.src.len() == self.dst.len(),
        }
    }

    /// Inverse of a homeomorphism.
    pub fn inverse(&self) -> Option<SpaceMap> {
        if !self.is_homeomorphism() {
            return None;
        }
        let mut inv = vec![0; self.dst.len()];
        for (i, &j) in self.assign.iter().enumerate() {
            inv[j] = i;
        }
        Some(SpaceMap { src: self.dst.clone(), dst: self.src.clone(), assign: inv })
    }
}

/// A finite model of the unit interval: the fence p0 < p1 > p2 < ... with 2k+1 points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub k: usize,
    pub space: FinSpace,
}

pub fn interval_point_id(j: usize) -> String {
    format!("p{j}")
}

impl IntervalModel {
    pub fn new(k: usize) -> Result<IntervalModel, SpaceError> {
        if k < 1 {
            return Err(SpaceError::BadIntervalDegree);
        }
        let ids: Vec<String> = (0..=2 * k).map(interval_point_id).collect();
        let space = FinSpace::from_closed(ids, |a, b| a == b || (a % 2 == 0 && (a + 1 == b || b + 1 == a)));
        Ok(IntervalModel { k, space })
    }

    /// Index (in the space) of the fence point p_j.
    pub fn point(&self, j: usize) -> usize {
        self.space.index_of(&interval_point_id(j)).unwrap()
    }

    pub fn end(&self) -> usize {
        2 * self.k
    }
}

/// Tagged disjoint union; ids become `tag.id`.
pub(crate) fn tagged_sum(parts: &[(&str, &FinSpace)]) -> (FinSpace, Vec<SpaceMap>) {
    let mut ids = Vec::new();
    let mut offsets = Vec::new();
    for (tag, x) in parts {
        offsets.push(ids.len());
        ids.extend(x.ids().iter().map(|s| format!("{tag}.{s}")));
    }
    let part_of = |g: usize| -> (usize, usize) {
        let p = offsets.iter().rposition(|&o| o <= g).unwrap();
        (p, g - offsets[p])
    };
    let total = ids.len();
    let _ = total;
    let space = FinSpace::from_closed(ids.clone(), |a, b| {
        let (pa, ia) = part_of(a);
        let (pb, ib) = part_of(b);
        pa == pb && parts[pa].1.leq(ia, ib)
    });
    let injections = parts
        .iter()
        .enumerate()
        .map(|(p, (_, x))| {
            SpaceMap::raw((*x).clone(), space.clone(), (0..x.len()).map(|i| space.index_of(&ids[offsets[p] + i]).unwrap()).collect())
        })
        .collect();
    (space, injections)
}

/// Disjoint union with left/right tags, plus the two injections.
pub fn sum(x: &FinSpace, y: &FinSpace) -> (FinSpace, SpaceMap, SpaceMap) {
    let (s, mut inj) = tagged_sum(&[("L", x), ("R", y)]);
    let r = inj.pop().unwrap();
    let l = inj.pop().unwrap();
    (s, l, r)
}

/// `f + g` between tagged sums.
pub fn sum_map(f: &SpaceMap, g: &SpaceMap) -> SpaceMap {
    let (s, sl, sr) = sum(f.src(), g.src());
    let (d, dl, dr) = sum(f.dst(), g.dst());
    let mut assign = vec![0; s.len()];
    for a in 0..f.src().len() {
        assign[sl.apply(a)] = dl.apply(f.apply(a));
    }
    for b in 0..g.src().len() {
        assign[sr.apply(b)] = dr.apply(g.apply(b));
    }
    SpaceMap::raw(s, d, assign)
}

pub fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Product with the componentwise order, plus the two projections.
pub fn product(x: &FinSpace, y: &FinSpace) -> (FinSpace, SpaceMap, SpaceMap) {
    // cylinders and product maps rebuild the same few products many times over
    const MEMO: usize = 128;
    thread_local! {
        static PRODUCTS: RefCell<VecDeque<(FinSpace, FinSpace, (FinSpace, SpaceMap, SpaceMap))>> =
            const { RefCell::new(VecDeque::new()) };
    }
    let same = |a: &FinSpace, b: &FinSpace| a.len() == b.len() && a == b;
    let hit = PRODUCTS.with_borrow(|m| m.iter().find(|(a, b, _)| same(a, x) && same(b, y)).map(|e| e.2.clone()));
    if let Some(p) = hit {
        return p;
    }
    let p = build_product(x, y);
    PRODUCTS.with_borrow_mut(|m| {
        if m.len() == MEMO {
            m.pop_front();
        }
        m.push_back((x.clone(), y.clone(), p.clone()));
    });
    p
}

fn build_product(x: &FinSpace, y: &FinSpace) -> (FinSpace, SpaceMap, SpaceMap) {
    let (nx, ny) = (x.len(), y.len());
    let mut ids = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        for b in 0..ny {
            ids.push(pair_id(x.id(a), y.id(b)));
        }
    }
    let p = FinSpace::from_closed(ids.clone(), |s, t| x.leq(s / ny, t / ny) && y.leq(s % ny, t % ny));
    let mut pr1 = vec![0; p.len()];
    let mut pr2 = vec![0; p.len()];
    for (g, id) in ids.iter().enumerate() {
        let k = p.index_of(id).unwrap();
        pr1[k] = g / ny;
        pr2[k] = g % ny;
    }
    (p.clone(), SpaceMap::raw(p.clone(), x.clone(), pr1), SpaceMap::raw(p, y.clone(), pr2))
}

/// Index of the pair `(a, b)` in `product(x, y)`.
pub fn pair_index(prod: &FinSpace, x: &FinSpace, a: usize, y: &FinSpace, b: usize) -> usize {
    prod.index_of(&pair_id(x.id(a), y.id(b))).expect("pair not in product")
}

/// `f × g`.
pub fn product_map(f: &SpaceMap, g: &SpaceMap) -> SpaceMap {
    let (s, _, _) = product(f.src(), g.src());
    let (d, _, _) = product(f.dst(), g.dst());
    let ny = g.src().len();
    let mut assign = vec![0; s.len()];
    for a in 0..f.src().len() {
        for b in 0..ny {
            let k = pair_index(&s, f.src(), a, g.src(), b);
            assign[k] = pair_index(&d, f.dst(), f.apply(a), g.dst(), g.apply(b));
        }
    }
    SpaceMap::raw(s, d, assign)
}

/// Quotient by the equivalence generated by `pairs`; class id = least member id.
pub fn quotient(x: &FinSpace, pairs: &[(usize, usize)]) -> (FinSpace, SpaceMap) {
    let n = x.len();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    // x is sorted by id, so the least index in a class is its least id.
    let classes = uf.classes();
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    let ids: Vec<String> = classes.iter().map(|c| x.id(c[0]).to_string()).collect();
    let q = FinSpace::from_generating(ids.clone(), |c, d| {
        c == d || classes[c].iter().any(|&a| classes[d].iter().any(|&b| x.leq(a, b)))
    });
    let assign = (0..n).map(|i| q.index_of(&ids[class_of[i]]).unwrap()).collect();
    (q.clone(), SpaceMap::raw(x.clone(), q, assign))
}

pub fn quotient_by_ids<S: AsRef<str>>(x: &FinSpace, pairs: &[(S, S)]) -> Result<(FinSpace, SpaceMap), SpaceError> {
    let mut idx = Vec::new();
    for (a, b) in pairs {
        let ia = x.index_of(a.as_ref()).ok_or_else(|| SpaceError::UnknownElement(a.as_ref().into()))?;
        let ib = x.index_of(b.as_ref()).ok_or_else(|| SpaceError::UnknownElement(b.as_ref().into()))?;
        idx.push((ia, ib));
    }
    Ok(quotient(x, &idx))
}

/// A chosen pushout square: `left: X -> P`, `right: Y -> P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub apex: FinSpace,
    pub left: SpaceMap,
    pub right: SpaceMap,
}

impl Pushout {
    /// The map out of the apex determined by `kx: X -> W`, `ky: Y -> W`, if they agree on the span.
    pub fn induced(&self, kx: &SpaceMap, ky: &SpaceMap) -> Result<SpaceMap, SpaceError> {
        induced_from_legs(&self.apex, &[(&self.left, kx), (&self.right, ky)])
    }
}

/// Given jointly surjective legs `l_k: S_k -> P` and maps `m_k: S_k -> W`,
/// returns the unique `h: P -> W` with `h l_k = m_k`, or an error if no such map exists.
pub(crate) fn induced_from_legs(apex: &FinSpace, legs: &[(&SpaceMap, &SpaceMap)]) -> Result<SpaceMap, SpaceError> {
    let w = legs.first().map(|(_, m)| m.dst().clone()).ok_or_else(|| SpaceError::DomainMismatch("no legs".into()))?;
    let mut img: Vec<Option<usize>> = vec![None; apex.len()];
    for (leg, m) in legs {
        if leg.src() != m.src() || m.dst() != &w || leg.dst() != apex {
            return Err(SpaceError::DomainMismatch("leg/map mismatch".into()));
        }
        for s in 0..leg.src().len() {
            let p = leg.apply(s);
            let v = m.apply(s);
            match img[p] {
                None => img[p] = Some(v),
                Some(u) if u == v => {}
                Some(_) => return Err(SpaceError::DomainMismatch(format!("maps disagree on `{}`", apex.id(p)))),
            }
        }
    }
    let assign: Option<Vec<usize>> = img.into_iter().collect();
    let assign = assign.ok_or_else(|| SpaceError::DomainMismatch("legs not jointly surjective".into()))?;
    SpaceMap::new(apex.clone(), w, assign)
}

/// Distinguished pushout of `f: A -> X`, `g: A -> Y`. Identity legs are resolved exactly
/// (so squares of identities and spans `(1, g)` are their own pushouts).
pub fn chosen_pushout(f: &SpaceMap, g: &SpaceMap) -> Result<Pushout, SpaceError> {
    if f.src() != g.src() {
        return Err(SpaceError::DomainMismatch("span legs have different domains".into()));
    }
    if f.is_identity() {
        return Ok(Pushout { apex: g.dst().clone(), left: g.clone(), right: SpaceMap::identity(g.dst()) });
    }
    if g.is_identity() {
        return Ok(Pushout { apex: f.dst().clone(), left: SpaceMap::identity(f.dst()), right: f.clone() });
    }
    let (s, l, r) = sum(f.dst(), g.dst());
    let pairs: Vec<(usize, usize)> = (0..f.src().len()).map(|a| (l.apply(f.apply(a)), r.apply(g.apply(a)))).collect();
    let (apex, q) = quotient(&s, &pairs);
    Ok(Pushout { left: l.then(&q), right: r.then(&q), apex })
}

/// The pullback `{(x, y) : h(x) = k(y)}` of `h: X -> Z`, `k: Y -> Z`, as pairs of indices.
pub fn pullback_pairs(h: &SpaceMap, k: &SpaceMap) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..h.src().len() {
        for y in 0..k.src().len() {
            if h.apply(x) == k.apply(y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Whether the commutative square `h f = k g` (with `f: A -> X`, `g: A -> Y`) is a pullback.
pub fn is_pullback(f: &SpaceMap, g: &SpaceMap, h: &SpaceMap, k: &SpaceMap) -> bool {
    if f.src() != g.src() || f.dst() != h.src() || g.dst() != k.src() || h.dst() != k.dst() {
        return false;
    }
    let a = f.src();
    if (0..a.len()).any(|i| h.apply(f.apply(i)) != k.apply(g.apply(i))) {
        return false;
    }
    let pb = pullback_pairs(h, k);
    if pb.len() != a.len() {
        return false;
    }
    let mut hit = vec![false; pb.len()];
    for i in 0..a.len() {
        match pb.iter().position(|&p| p == (f.apply(i), g.apply(i))) {
            Some(j) if !hit[j] => hit[j] = true,
            _ => return false,
        }
    }
    // order on the pullback is the product order
    (0..a.len()).all(|i| {
        (0..a.len()).all(|j| a.leq(i, j) == (f.dst().leq(f.apply(i), f.apply(j)) && g.dst().leq(g.apply(i), g.apply(j))))
    })
}

/// Cylinder `X × I_k` with end sections and the collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub base: FinSpace,
    pub interval: IntervalModel,
    pub space: FinSpace,
    pub d_minus: SpaceMap,
    pub d_plus: SpaceMap,
    pub collapse: SpaceMap,
    /// Projection to the interval coordinate.
    pub coord: SpaceMap,
}

impl Cylinder {
    /// Index of `(x, p_j)`.
    pub fn at(&self, x: usize, j: usize) -> usize {
        pair_index(&self.space, &self.base, x, &self.interval.space, self.interval.point(j))
    }

    /// Fence position (0..=2k) of an element's interval coordinate.
    pub fn level(&self, e: usize) -> usize {
        let p = self.coord.apply(e);
        self.interval.space.id(p)[1..].parse().unwrap()
    }
}

pub fn cylinder(x: &FinSpace, k: usize) -> Result<Cylinder, SpaceError> {
    let interval = IntervalModel::new(k)?;
    let (space, collapse, coord) = product(x, &interval.space);
    let p0 = interval.point(0);
    let pe = interval.point(interval.end());
    let d_minus = SpaceMap::from_fn(x, &space, |a| pair_index(&space, x, a, &interval.space, p0));
    let d_plus = SpaceMap::from_fn(x, &space, |a| pair_index(&space, x, a, &interval.space, pe));
    Ok(Cylinder { base: x.clone(), interval, space, d_minus, d_plus, collapse, coord })
}

/// `I f = f × id`.
pub fn cylinder_map(f: &SpaceMap, k: usize) -> Result<SpaceMap, SpaceError> {
    let i = IntervalModel::new(k)?;
    Ok(product_map(f, &SpaceMap::identity(&i.space)))
}

/// Core of a finite space: its Kolmogorov quotient stripped of beat points.
#[derive(Debug, Clone)]
pub struct Core {
    pub space: FinSpace,
    pub inclusion: SpaceMap,
    pub retraction: SpaceMap,
}

pub fn core(x: &FinSpace) -> Core {
    let n = x.len();
    // r[i] = the point of the current subspace that i retracts to
    let mut r: Vec<usize> = (0..n).collect();
    let mut alive = vec![true; n];
    // collapse equivalent points onto their least index
    for i in 0..n {
        if let Some(j) = (0..i).find(|&j| alive[j] && x.leq(i, j) && x.leq(j, i)) {
            alive[i] = false;
            r[i] = j;
        }
    }
    loop {
        let mut removed = false;
        for b in 0..n {
            if !alive[b] {
                continue;
            }
            let ups: Vec<usize> = (0..n).filter(|&c| alive[c] && c != b && x.leq(b, c)).collect();
            let downs: Vec<usize> = (0..n).filter(|&c| alive[c] && c != b && x.leq(c, b)).collect();
            let min_up = ups.iter().copied().find(|&m| ups.iter().all(|&c| x.leq(m, c)));
            let max_down = downs.iter().copied().find(|&m| downs.iter().all(|&c| x.leq(c, m)));
            if let Some(t) = min_up.or(max_down) {
                alive[b] = false;
                for v in r.iter_mut() {
                    if *v == b {
                        *v = t;
                    }
                }
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let space = x.subspace(&keep);
    let inclusion = SpaceMap::from_fn(&space, x, |c| keep[c]);
    let retraction = SpaceMap::from_fn(x, &space, |i| space.index_of(x.id(r[i])).unwrap());
    Core { space, inclusion, retraction }
}

/// An order isomorphism `X -> Y`, if one exists.
pub fn poset_iso(x: &FinSpace, y: &FinSpace) -> Option<SpaceMap> {
    let n = x.len();
    if n != y.len() {
        return None;
    }
    let sig = |s: &FinSpace, i: usize| -> (usize, usize) { (s.up_set(i).len(), s.down_set(i).len()) };
    let sx: Vec<_> = (0..n).map(|i| sig(x, i)).collect();
    let sy: Vec<_> = (0..n).map(|i| sig(y, i)).collect();
    let mut a = sx.clone();
    let mut b = sy.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    // identity fast path
    if x == y {
        return Some(SpaceMap::identity(x));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (sx.iter().filter(|s| **s == sx[i]).count(), i));
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        x: &FinSpace,
        y: &FinSpace,
        sx: &[(usize, usize)],
        sy: &[(usize, usize)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        for j in 0..y.len() {
            if used[j] || sx[i] != sy[j] {
                continue;
            }
            let ok = order[..k].iter().all(|&p| {
                let q = assign[p];
                x.leq(i, p) == y.leq(j, q) && x.leq(p, i) == y.leq(q, j)
            });
            if !ok {
                continue;
            }
            assign[i] = j;
            used[j] = true;
            if go(k + 1, order, x, y, sx, sy, assign, used) {
                return true;
            }
            used[j] = false;
        }
        assign[i] = usize::MAX;
        false
    }
    if go(0, &order, x, y, &sx, &sy, &mut assign, &mut used) {
        Some(SpaceMap::raw(x.clone(), y.clone(), assign))
    } else {
        None
    }
}

/// Decides whether `f` is a homotopy equivalence by comparing cores.
pub fn is_homotopy_equivalence(f: &SpaceMap) -> bool {
    let cx = core(f.src());
    let cy = core(f.dst());
    let g = cx.inclusion.then(f).then(&cy.retraction);
    g.is_homeomorphism()
}

/// All continuous maps `X -> W` (exponential; for small spaces only).
pub fn all_maps(x: &FinSpace, w: &FinSpace) -> Vec<SpaceMap> {
    let n = x.len();
    let m = w.len();
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(SpaceMap::raw(x.clone(), w.clone(), vec![]));
        }
        return out;
    }
    let mut cur = vec![0usize; n];
    fn rec(k: usize, x: &FinSpace, w: &FinSpace, cur: &mut Vec<usize>, out: &mut Vec<SpaceMap>) {
        if k == x.len() {
            out.push(SpaceMap::raw(x.clone(), w.clone(), cur.clone()));
            return;
        }
        for v in 0..w.len() {
            let ok = (0..k).all(|p| (!x.leq(p, k) || w.leq(cur[p], v)) && (!x.leq(k, p) || w.leq(v, cur[p])));
            if ok {
                cur[k] = v;
                rec(k + 1, x, w, cur, out);
            }
        }
    }
    rec(0, x, w, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinSpace {
        FinSpace::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn make_space_closes_relation() {
        let x = chain3();
        assert!(x.leq(x.index_of("a").unwrap(), x.index_of("c").unwrap()));
        assert!(!x.leq(x.index_of("c").unwrap(), x.index_of("a").unwrap()));
        assert_eq!(FinSpace::new(&["a"], &[]).unwrap().len(), 1);
    }

    #[test]
    fn make_space_errors() {
        assert_eq!(FinSpace::new(&["a", "a"], &[]).unwrap_err(), SpaceError::DuplicateId("a".into()));
        assert_eq!(FinSpace::new(&["a"], &[("a", "z")]).unwrap_err(), SpaceError::DanglingRef("z".into()));
        assert!(matches!(FinSpace::new(&["a,b"], &[]), Err(SpaceError::MalformedId(_))));
    }

    #[test]
    fn fence_from_pairs_is_interval() {
        let x = FinSpace::new(&["p0", "p1", "p2"], &[("p0", "p1"), ("p2", "p1")]).unwrap();
        assert_eq!(x, IntervalModel::new(1).unwrap().space);
    }

    #[test]
    fn interval_subsets() {
        let i1 = IntervalModel::new(1).unwrap().space;
        let f = i1.classify_subset(&["p0"]).unwrap();
        assert!(f.closed && !f.open);
        let f = i1.classify_subset(&["p0", "p1"]).unwrap();
        assert!(f.open && !f.closed);
        let f = i1.classify_subset::<&str>(&[]).unwrap();
        assert!(f.clopen);
        assert!(i1.classify_subset(&["q"]).is_err());
    }

    #[test]
    fn interval_invariants() {
        for k in 1..5 {
            let i = IntervalModel::new(k).unwrap();
            let s = &i.space;
            assert_eq!(s.len(), 2 * k + 1);
            let mut m = vec![false; s.len()];
            m[i.point(0)] = true;
            assert!(s.classify_mask(&m).closed);
            let mut m = vec![false; s.len()];
            m[i.point(2 * k)] = true;
            assert!(s.classify_mask(&m).closed);
            assert_eq!(core(s).space.len(), 1);
        }
        assert!(IntervalModel::new(0).is_err());
    }

    #[test]
    fn map_flags() {
        let i1 = IntervalModel::new(1).unwrap().space;
        let id = SpaceMap::identity(&i1);
        let f = id.classify();
        assert!(f.continuous && f.injective && f.embedding && f.closed_embedding && f.homeomorphism);
        let c = cylinder(&chain3(), 1).unwrap();
        assert!(c.d_minus.is_closed_embedding());
        assert!(c.d_plus.is_closed_embedding());
        let pt = FinSpace::point("*");
        let e = SpaceMap::to_point(&i1, &pt).classify();
        assert!(e.continuous && !e.injective);
    }

    #[test]
    fn sums_and_products() {
        let pt = FinSpace::point("*");
        let (s, _, _) = sum(&pt, &pt);
        assert_eq!(s.len(), 2);
        assert_eq!(s.clopen_components().len(), 2);
        let x = chain3();
        let (p, _, _) = product(&pt, &x);
        assert!(poset_iso(&p, &x).is_some());
        let i1 = IntervalModel::new(1).unwrap().space;
        let (sq, _, _) = product(&i1, &i1);
        assert_eq!(sq.len(), 9);
        let swap = SpaceMap::from_fn(&sq, &sq, |e| {
            let id = sq.id(e);
            let inner = &id[1..id.len() - 1];
            let (a, b) = inner.split_once(',').unwrap();
            sq.index_of(&pair_id(b, a)).unwrap()
        });
        assert!(SpaceMap::new(sq.clone(), sq.clone(), swap.assign().to_vec()).is_ok());
        assert!(swap.is_homeomorphism());
    }

    #[test]
    fn quotient_examples() {
        let x = chain3();
        let (q, p) = quotient(&x, &[]);
        assert_eq!(q, x);
        assert!(p.is_identity());
        let d = FinSpace::discrete(&["a", "b"]).unwrap();
        let (q, _) = quotient(&d, &[(0, 1)]);
        assert_eq!(q.len(), 1);
        let (q, p) = quotient_by_ids(&x, &[("a", "c")]).unwrap();
        assert_eq!(q.len(), 2);
        let a = p.apply(0);
        let b = p.apply(1);
        assert!(q.leq(a, b) && q.leq(b, a));
    }

    #[test]
    fn pushout_unitarity() {
        let x = chain3();
        let pt = FinSpace::point("c");
        let g = SpaceMap::from_fn(&pt, &x, |_| 2);
        let po = chosen_pushout(&SpaceMap::identity(&pt), &g).unwrap();
        assert_eq!(po.left, g);
        assert!(po.right.is_identity());
        let po = chosen_pushout(&g, &SpaceMap::identity(&pt)).unwrap();
        assert!(po.left.is_identity());
        assert_eq!(po.right, g);
    }

    #[test]
    fn pushout_of_points() {
        let a = FinSpace::point("a");
        let x = FinSpace::point("x");
        let y = FinSpace::point("y");
        let po = chosen_pushout(&SpaceMap::to_point(&a, &x), &SpaceMap::to_point(&a, &y)).unwrap();
        assert_eq!(po.apex.len(), 1);
    }

    #[test]
    fn cylinder_sections() {
        let x = chain3();
        let c = cylinder(&x, 2).unwrap();
        assert!(c.d_minus.then(&c.collapse).is_identity());
        assert!(c.d_plus.then(&c.collapse).is_identity());
        let a = c.d_minus.image_mask();
        let b = c.d_plus.image_mask();
        assert!(a.iter().zip(&b).all(|(p, q)| !(p & q)));
        assert!(cylinder(&x, 0).is_err());
    }

    #[test]
    fn cores_and_equivalences() {
        let d = FinSpace::discrete(&["a", "b"]).unwrap();
        assert_eq!(core(&d).space, d);
        let x = chain3();
        let c = cylinder(&x, 1).unwrap();
        assert!(is_homotopy_equivalence(&c.collapse));
        let pt = FinSpace::point("*");
        let i1 = IntervalModel::new(1).unwrap().space;
        assert!(is_homotopy_equivalence(&SpaceMap::to_point(&i1, &pt)));
        let inc = SpaceMap::from_fn(&FinSpace::point("a"), &d, |_| 0);
        assert!(!is_homotopy_equivalence(&inc));
    }

    #[test]
    fn iso_search() {
        let i1 = IntervalModel::new(1).unwrap().space;
        assert!(poset_iso(&i1, &i1).unwrap().is_identity());
        assert!(poset_iso(&i1, &chain3()).is_none());
        let r = i1.rename(|s| format!("q{s}"));
        assert!(poset_iso(&r, &i1).is_some());
    }

    #[test]
    fn pullback_detection() {
        let x = chain3();
        let id = SpaceMap::identity(&x);
        assert!(is_pullback(&id, &id, &id, &id));
        let pt = FinSpace::point("*");
        let e = SpaceMap::to_point(&x, &pt);
        // X <- X -> X over a point is not a pullback (that would be X × X).
        assert!(!is_pullback(&id, &id, &e, &e));
    }
}
