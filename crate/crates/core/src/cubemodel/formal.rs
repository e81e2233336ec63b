//! The formal cospan and its binary-composition model, as finite posets.

use crate::finspace::{product, product_map, FinSpace, SpaceMap};

/// The formal cospan `-1 -> 0 <- 1`.
pub fn formal_cospan() -> FinSpace {
    FinSpace::new(&["-1", "0", "1"], &[("-1", "0"), ("1", "0")]).unwrap()
}

/// Binary composition model: `-1 -> a <- b -> c <- 1`, with `a, c -> 0`.
pub fn composition_model() -> FinSpace {
    FinSpace::new(
        &["-1", "a", "b", "c", "1", "0"],
        &[("-1", "a"), ("b", "a"), ("b", "c"), ("1", "c"), ("a", "0"), ("c", "0")],
    )
    .unwrap()
}

fn power(x: &FinSpace, n: usize) -> FinSpace {
    let mut acc = FinSpace::point("()");
    for _ in 0..n {
        acc = product(&acc, x).0;
    }
    acc
}

fn by_ids(src: &FinSpace, dst: &FinSpace, pairs: &[(&str, &str)]) -> SpaceMap {
    let assign = (0..src.len())
        .map(|i| {
            let to = pairs.iter().find(|(a, _)| *a == src.id(i)).unwrap().1;
            dst.index_of(to).unwrap()
        })
        .collect();
    SpaceMap::new(src.clone(), dst.clone(), assign).expect("formal maps are monotone")
}

/// The i-concatenation model in degree n with its concatenation map and two embeddings.
#[derive(Debug, Clone)]
pub struct FormalModel {
    pub n: usize,
    pub i: usize,
    pub lambda_n: FinSpace,
    pub lambda2: FinSpace,
    pub lambda_ni: FinSpace,
    /// `Λⁿ -> Λ^{ni}_2`.
    pub concat: SpaceMap,
    pub minus: SpaceMap,
    pub plus: SpaceMap,
}

impl FormalModel {
    pub fn new(n: usize, i: usize) -> FormalModel {
        assert!(1 <= i && i <= n, "direction out of range");
        let l = formal_cospan();
        let l2 = composition_model();
        let k = by_ids(&l, &l2, &[("-1", "-1"), ("0", "0"), ("1", "1")]);
        let km = by_ids(&l, &l2, &[("-1", "-1"), ("0", "a"), ("1", "b")]);
        let kp = by_ids(&l, &l2, &[("-1", "b"), ("0", "c"), ("1", "1")]);
        let before = power(&l, i - 1);
        let after = power(&l, n - i);
        let wrap = |m: &SpaceMap| {
            let left = product_map(&SpaceMap::identity(&before), m);
            product_map(&left, &SpaceMap::identity(&after))
        };
        let concat = wrap(&k);
        let minus = wrap(&km);
        let plus = wrap(&kp);
        FormalModel {
            n,
            i,
            lambda_n: power(&l, n),
            lambda2: l2,
            lambda_ni: concat.dst().clone(),
            concat,
            minus,
            plus,
        }
    }
}

/// The distinguished square `b -> a, b -> c, a -> 0, c -> 0` of the composition model.
pub fn distinguished_square() -> [(&'static str, &'static str); 4] {
    [("b", "a"), ("b", "c"), ("a", "0"), ("c", "0")]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::chosen_pushout;

    #[test]
    fn models_are_posets_of_expected_size() {
        let m = FormalModel::new(2, 1);
        assert_eq!(m.lambda_n.len(), 9);
        assert_eq!(m.lambda2.len(), 6);
        assert_eq!(m.lambda_ni.len(), 18);
        assert!(m.concat.is_embedding() && m.minus.is_embedding() && m.plus.is_embedding());
    }

    #[test]
    fn embeddings_meet_in_shared_end() {
        let m = FormalModel::new(1, 1);
        let shared: Vec<usize> = m.minus.image().into_iter().filter(|p| m.plus.image().contains(p)).collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(m.lambda_ni.id(shared[0]), "(((),b),())");
    }

    #[test]
    fn distinguished_square_is_not_a_poset_pushout() {
        let l2 = composition_model();
        for (a, b) in distinguished_square() {
            assert!(l2.leq(l2.index_of(a).unwrap(), l2.index_of(b).unwrap()));
        }
        // gluing two copies of the formal cospan at an end gives 5 points, not 6
        let l = formal_cospan();
        let pt = FinSpace::point("*");
        let f = SpaceMap::from_fn(&pt, &l, |_| l.index_of("1").unwrap());
        let g = SpaceMap::from_fn(&pt, &l, |_| l.index_of("-1").unwrap());
        assert_eq!(chosen_pushout(&f, &g).unwrap().apex.len(), 5);
    }
}
