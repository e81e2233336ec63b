use cospan::collars::collared_degeneracy;
use cospan::cubemodel::{Cube, Sign, TMap};
use cospan::finspace::{chosen_pushout, is_pullback, FinSpace, SpaceMap};
use cospan::harness::{run_suite, Gen, GenConfig};
use cospan::io;
use proptest::prelude::*;

/// A preorder on up to 5 points built from arbitrary generating pairs, cycles included.
fn space() -> impl Strategy<Value = FinSpace> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..6)))
        .prop_map(|(n, pairs)| {
            let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let pairs: Vec<(String, String)> = pairs.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
            FinSpace::new(&ids, &pairs).unwrap()
        })
}

fn gen(seed: u64) -> Gen {
    let cfg = GenConfig { seed, max_points: 3, max_degree: 2, instance_count: 1 };
    Gen::new(&cfg, "properties")
}

fn cube(seed: u64, n: usize) -> Cube {
    gen(seed).cube(n)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clopen_is_open_and_closed(x in space(), mask in proptest::collection::vec(any::<bool>(), 5)) {
        let flags = x.classify_mask(&mask[..x.len()]);
        prop_assert_eq!(flags.clopen, flags.open && flags.closed);
    }

    #[test]
    fn space_round_trip(x in space()) {
        let back = io::space_from_doc(&serde_json::from_str(&json(&io::space_doc(&x))).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn map_round_trip(seed in any::<u64>(), x in space(), y in space()) {
        let f = gen(seed).map(&x, &y);
        let back = io::map_from_doc(&serde_json::from_str(&json(&io::map_doc(&f))).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn cube_round_trip(seed in any::<u64>(), n in 0usize..=2) {
        let u = cube(seed, n);
        let back = io::cube_from_doc(&serde_json::from_str(&json(&io::cube_doc(&u))).unwrap()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn tmap_round_trip(seed in any::<u64>(), n in 0usize..=2) {
        let f = TMap::identity(&cube(seed, n));
        let back = io::tmap_from_doc(&serde_json::from_str(&json(&io::tmap_doc(&f))).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn collared_round_trip(x in space(), i in 1usize..=2) {
        let u = collared_degeneracy(&collared_degeneracy(&cospan::collars::PreCollared::from_space(&x), 1).unwrap(), i).unwrap();
        let back = io::precollared_from_doc(&serde_json::from_str(&json(&io::precollared_doc(&u))).unwrap()).unwrap();
        prop_assert!(back == u);
    }

    #[test]
    fn faces_of_a_degeneracy(seed in any::<u64>(), n in 0usize..=2, pick in 0usize..3) {
        let u = cube(seed, n);
        let i = 1 + pick % (n + 1);
        let e = u.degeneracy(i).unwrap();
        for s in Sign::both() {
            prop_assert_eq!(&e.face(i, s).unwrap(), &u);
        }
    }

    #[test]
    fn faces_commute(seed in any::<u64>(), si in any::<bool>(), sj in any::<bool>()) {
        let u = cube(seed, 2);
        let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        let a = u.face(2, sign(sj)).unwrap().face(1, sign(si)).unwrap();
        let b = u.face(1, sign(si)).unwrap().face(1, sign(sj)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transpose_and_reverse_are_involutions(seed in any::<u64>(), pick in 0usize..2) {
        let u = cube(seed, 2);
        prop_assert_eq!(&u.transpose(1).unwrap().transpose(1).unwrap(), &u);
        let i = 1 + pick;
        prop_assert_eq!(&u.reverse(i).unwrap().reverse(i).unwrap(), &u);
    }

    #[test]
    fn degenerate_units_are_strict(seed in any::<u64>(), n in 1usize..=2, pick in 0usize..2) {
        let u = cube(seed, n);
        let i = 1 + pick % n;
        let left = u.face(i, Sign::Minus).unwrap().degeneracy(i).unwrap();
        let right = u.face(i, Sign::Plus).unwrap().degeneracy(i).unwrap();
        prop_assert_eq!(&left.concat(&u, i).unwrap(), &u);
        prop_assert_eq!(&u.concat(&right, i).unwrap(), &u);
    }

    #[test]
    fn concat_faces(seed in any::<u64>(), n in 1usize..=2, pick in 0usize..2) {
        let i = 1 + pick % n;
        let c = gen(seed).chain(n, i, 2);
        let w = c[0].concat(&c[1], i).unwrap();
        prop_assert_eq!(&w.face(i, Sign::Minus).unwrap(), &c[0].face(i, Sign::Minus).unwrap());
        prop_assert_eq!(&w.face(i, Sign::Plus).unwrap(), &c[1].face(i, Sign::Plus).unwrap());
    }

    #[test]
    fn pushouts_of_embeddings_are_pullbacks(seed in any::<u64>(), closed in any::<bool>()) {
        let (f, g) = gen(seed).embedding_span(4, closed);
        let p = chosen_pushout(&f, &g).unwrap();
        prop_assert!(p.left.is_embedding() && p.right.is_embedding());
        if closed {
            prop_assert!(p.left.is_closed_embedding() && p.right.is_closed_embedding());
        }
        prop_assert!(is_pullback(&f, &g, &p.left, &p.right));
    }

    #[test]
    fn generators_are_reproducible(seed in any::<u64>()) {
        prop_assert_eq!(cube(seed, 2), cube(seed, 2));
        let x = FinSpace::point("q");
        prop_assert_eq!(gen(seed).map(&x, &x), SpaceMap::identity(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), pick in 0usize..4) {
        let name = ["cubical-relations", "pushout-embeddings", "unitarity", "lax-units"][pick];
        let cfg = GenConfig::new(seed).with_count(3);
        prop_assert_eq!(run_suite(name, &cfg).unwrap(), run_suite(name, &cfg).unwrap());
    }
}
