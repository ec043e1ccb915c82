use glq_stab::branching::concrete::{ConcretePool, ConcreteZigzag};
use glq_stab::branching::{count_zigzag, decompose_perm_module, restrict_step, Decomposition};
use glq_stab::label::{pad, stabilize, tilde, LabelFunction, LabelShape};
use glq_stab::partition::{partitions_of, Partition};
use glq_stab::qpoly::QPolynomial;
use num_bigint::BigUint;
use proptest::prelude::*;

fn small_partition() -> impl Strategy<Value = Partition> {
    (0u32..=4).prop_flat_map(|n| {
        let all = partitions_of(n).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn small_shape() -> impl Strategy<Value = LabelShape> {
    (small_partition(), proptest::collection::vec((1u32..=3, small_partition()), 0..3)).prop_map(|(iota, others)| {
        let others = others.into_iter().filter(|(_, p)| !p.is_empty()).collect();
        LabelShape::new(iota, others).unwrap()
    })
}

proptest! {
    #[test]
    fn shape_json_round_trip(s in small_shape()) {
        prop_assert_eq!(LabelShape::from_json(&s.to_json()).unwrap(), s.clone());
        prop_assert_eq!(LabelShape::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn label_display_round_trip(s in small_shape()) {
        let l = s.representative();
        prop_assert_eq!(LabelFunction::parse(&l.to_string()).unwrap().shape(), s);
    }

    #[test]
    fn pad_then_stabilize(s in small_shape(), extra in 0u64..4) {
        let lambda = s.representative();
        let n = lambda.norm() + lambda.iota().first() as u64 + extra;
        let mu = pad(&lambda, n).unwrap();
        prop_assert_eq!(mu.norm(), n);
        let (back, m) = stabilize(&mu).unwrap();
        prop_assert_eq!(m, n);
        prop_assert_eq!(back, lambda);
        prop_assert_eq!(tilde(&mu), pad(&stabilize(&mu).unwrap().0, n + 1).unwrap());
    }

    #[test]
    fn polynomial_json_round_trip(c in proptest::collection::vec(-50i64..50, 0..6)) {
        let mut p = QPolynomial::zero();
        for (i, &x) in c.iter().enumerate() {
            p = &p + &(&QPolynomial::constant(x) * &QPolynomial::var().pow(i as u32));
        }
        prop_assert_eq!(QPolynomial::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn decomposition_json_round_trip_and_tamper() {
    for (n, m, q) in [(3, 1, 2), (4, 2, 3), (6, 2, 2), (5, 5, 2)] {
        let d = decompose_perm_module(n, m, q).unwrap();
        let v = d.to_json();
        assert_eq!(Decomposition::from_json(&v).unwrap(), d);
        let mut bad = v.clone();
        bad["checks"]["sum_sq"] = serde_json::json!(1);
        assert!(Decomposition::from_json(&bad).is_err());
    }
}

#[test]
fn restriction_totals_match_concrete_paths() {
    // Σ over classes of mult·class equals Σ over concrete ν of |Z(ν, µ)|
    for (s, q) in [("ι:(2,1)", 3u64), ("ι:(1); 2:(1)", 2), ("1.a:(1,1)", 4), ("ι:(1,1); 1.a:(1)", 3)] {
        let mu = LabelFunction::parse(s).unwrap();
        let mut total = BigUint::from(0u32);
        for e in restrict_step(&mu, q).unwrap() {
            total += &e.multiplicity * &e.class_size;
        }
        let n = mu.norm() as u32;
        let pool = ConcretePool::new(q, n).unwrap();
        let mut by_hand = BigUint::from(0u32);
        for lower in pool.labels_of_norm(n - 1) {
            let mut z = ConcreteZigzag::new(&pool, lower);
            by_hand += z.count(&pool.realize(&mu.shape()).unwrap());
        }
        assert_eq!(total, by_hand, "{s} q={q}");
    }
}

#[test]
fn steinberg_multiplicity_is_q_for_every_q() {
    let st = LabelFunction::parse("ι:(1,1)").unwrap();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 1 << 20, 1_000_003] {
        assert_eq!(count_zigzag(&LabelFunction::new(), &st, 2, q).unwrap(), BigUint::from(q));
    }
}

#[test]
fn large_q_decomposition_is_exact() {
    let q = (1u64 << 61) - 1;
    let d = decompose_perm_module(4, 2, q).unwrap();
    assert_eq!(d.dim(), glq_stab::degrees::gl_order(4, q) / glq_stab::degrees::gl_order(2, q));
}
