mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tree_ecc::oracle::{brute_odot, brute_odot_rows, system_rows, Budget, OdotOp};
use tree_ecc::{MaxIndex, MinIndex, NodeId, PlusIndex, TreeSystem};

fn system(rng: &mut ChaCha8Rng, k: usize, max_n: usize) -> TreeSystem {
    let trees = (0..k)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let spread = [0, 2, 1][rng.gen_range(0..3)];
            common::random_tree(rng, n, spread)
        })
        .collect();
    TreeSystem::new(trees).unwrap()
}

fn point(rng: &mut ChaCha8Rng, sys: &TreeSystem) -> Vec<NodeId> {
    sys.trees().iter().map(|t| rng.gen_range(0..t.node_count() as NodeId)).collect()
}

fn check(sys: &TreeSystem, s: &[Vec<NodeId>], v: &[NodeId], plus: &PlusIndex, min: &MinIndex, max: &MaxIndex) {
    let b = Budget::DEFAULT;
    let want = |op| brute_odot(sys, s, v, op, b).unwrap().map(|x| x.0);
    assert_eq!(plus.query(v).unwrap().map(|x| x.0), want(OdotOp::Plus), "plus at {v:?}");
    assert_eq!(min.query(v).unwrap().map(|x| x.0), want(OdotOp::Min), "min at {v:?}");
    assert_eq!(Some(max.query(v).unwrap()), want(OdotOp::Max), "max at {v:?}");
}

#[test]
fn random_systems_match_brute() {
    let mut rng = common::rng(11);
    for _ in 0..150 {
        let k = rng.gen_range(1..=4);
        let sys = system(&mut rng, k, 40);
        let m = rng.gen_range(1..=60);
        let s: Vec<Vec<NodeId>> = (0..m).map(|_| point(&mut rng, &sys)).collect();
        let plus = PlusIndex::build(&sys, &s).unwrap();
        let min = MinIndex::build(&sys, &s).unwrap();
        let max = MaxIndex::build(&sys, &s).unwrap();
        for _ in 0..20 {
            let v = point(&mut rng, &sys);
            check(&sys, &s, &v, &plus, &min, &max);
        }
    }
}

#[test]
fn exhaustive_small() {
    let mut rng = common::rng(12);
    for _ in 0..40 {
        let k = rng.gen_range(1..=3);
        let sys = system(&mut rng, k, 6);
        let rows = system_rows(&sys, Budget::DEFAULT).unwrap();
        let m = rng.gen_range(1..=12);
        let s: Vec<Vec<NodeId>> = (0..m).map(|_| point(&mut rng, &sys)).collect();
        let plus = PlusIndex::build(&sys, &s).unwrap();
        let min = MinIndex::build(&sys, &s).unwrap();
        // Every query point of the product.
        let sizes: Vec<usize> = sys.trees().iter().map(|t| t.node_count()).collect();
        let total: usize = sizes.iter().product();
        for code in 0..total {
            let mut c = code;
            let v: Vec<NodeId> = sizes.iter().map(|&z| { let x = c % z; c /= z; x as NodeId }).collect();
            let r: Vec<Vec<u32>> = v.iter().enumerate().map(|(i, &x)| rows[i].row(x).to_vec()).collect();
            assert_eq!(plus.query(&v).unwrap().map(|x| x.0), brute_odot_rows(&r, &s, OdotOp::Plus).map(|x| x.0));
            assert_eq!(min.query(&v).unwrap().map(|x| x.0), brute_odot_rows(&r, &s, OdotOp::Min).map(|x| x.0));
        }
    }
}

#[test]
fn witness_attains_value() {
    let mut rng = common::rng(13);
    for _ in 0..50 {
        let sys = system(&mut rng, 3, 30);
        let s: Vec<Vec<NodeId>> = (0..30).map(|_| point(&mut rng, &sys)).collect();
        let plus = PlusIndex::build(&sys, &s).unwrap();
        let rows = system_rows(&sys, Budget::DEFAULT).unwrap();
        let v = point(&mut rng, &sys);
        let (val, w) = plus.query(&v).unwrap().unwrap();
        let d: i64 = (0..3).map(|i| rows[i].get(v[i], s[w][i]) as i64).sum();
        assert_eq!(d, val);
    }
}

#[test]
fn bad_points_rejected() {
    let sys = TreeSystem::new(vec![tree_ecc::Tree::path(3)]).unwrap();
    assert!(PlusIndex::build(&sys, &[vec![3]]).is_err());
    assert!(MinIndex::build(&sys, &[vec![0, 0]]).is_err());
    let idx = MaxIndex::build(&sys, &[vec![1]]).unwrap();
    assert!(idx.query(&[5]).is_err());
}
