use num_bigint::BigInt;
use preoperad::free::Assignment;
use preoperad::{CoefficientRing, FreeElement, MultilinearMap, PlanarTree};
use proptest::prelude::*;
use rand::SeedableRng;

fn ring() -> CoefficientRing {
    CoefficientRing::prime_field(101).unwrap()
}

fn gen(name: &str, deg: usize) -> FreeElement {
    FreeElement::from_tree(ring(), PlanarTree::corolla(name, deg))
}

fn sign(e: i64) -> BigInt {
    BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn signed(x: &FreeElement, e: i64) -> FreeElement {
    let mut out = FreeElement::zero(ring(), x.degree());
    out.add_scaled(&sign(e), x).unwrap();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_relations_hold_on_the_whole_scope(dh in 1usize..5, df in 1usize..5, dg in 1usize..5) {
        let (h, f, g) = (gen("h", dh), gen("f", df), gen("g", dg));
        let (fs, gs) = (df as i64 - 1, dg as i64 - 1);
        for i in 0..dh {
            for j in 0..(dh + df - 1) {
                let lhs = h.partial_compose(&f, i).unwrap().partial_compose(&g, j).unwrap();
                let (ii, jj) = (i as i64, j as i64);
                let rhs = if jj < ii {
                    let r = h.partial_compose(&g, j).unwrap()
                        .partial_compose(&f, (ii + gs) as usize).unwrap();
                    signed(&r, fs * gs)
                } else if jj <= ii + fs {
                    h.partial_compose(&f.partial_compose(&g, j - i).unwrap(), i).unwrap()
                } else {
                    let r = h.partial_compose(&g, (jj - fs) as usize).unwrap()
                        .partial_compose(&f, i).unwrap();
                    signed(&r, fs * gs)
                };
                prop_assert_eq!(&lhs, &rhs, "i={} j={}", i, j);
            }
        }
    }

    #[test]
    fn evaluation_is_a_morphism(
        da in 1usize..4, db in 1usize..4, dc in 1usize..3,
        i in 0usize..3, j in 0usize..5, c in 0i64..101, seed in any::<u64>(), dim in 1usize..3,
    ) {
        let i = i % da;
        let ab = gen("a", da).partial_compose(&gen("b", db), i).unwrap();
        let j = j % ab.degree();
        let mut x = ab.partial_compose(&gen("c", dc), j).unwrap();
        let other = gen("a", da).partial_compose(
            &gen("c", dc).partial_compose(&gen("b", db), 0).unwrap(), i).unwrap();
        if other.degree() == x.degree() {
            x.add_scaled(&BigInt::from(c), &other).unwrap();
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let maps: Vec<MultilinearMap> = [da, db, dc]
            .iter()
            .map(|&d| MultilinearMap::random(ring(), dim, d, &mut rng).unwrap())
            .collect();
        let mut asg = Assignment::new(ring(), dim);
        for (name, m) in ["a", "b", "c"].iter().zip(&maps) {
            asg.bind(name, m.clone()).unwrap();
        }
        let (a, b, cc) = (&maps[0], &maps[1], &maps[2]);
        let mut want = a.partial_compose(b, i).unwrap().partial_compose(cc, j).unwrap();
        if other.degree() == x.degree() {
            let o = a.partial_compose(&cc.partial_compose(b, 0).unwrap(), i).unwrap();
            want.add_scaled(&ring().element(c), &o).unwrap();
        }
        prop_assert_eq!(x.evaluate_hom(&asg).unwrap(), want);
        prop_assert_eq!(FreeElement::unit(ring()).evaluate_hom(&asg).unwrap(),
                        MultilinearMap::unit(ring(), dim));
    }
}

#[test]
fn trees_print_and_parse() {
    let x = gen("h", 2)
        .partial_compose(&gen("f", 3), 0)
        .unwrap()
        .partial_compose(&gen("g", 1), 3)
        .unwrap();
    let (tree, coeff) = x.terms().next().unwrap();
    assert_eq!(tree.to_string(), "(h (f _ _ _) (g _))");
    assert_eq!(coeff.to_string(), "1");
    assert_eq!(&PlanarTree::parse("(h (f _ _ _) (g _))").unwrap(), tree);
}
