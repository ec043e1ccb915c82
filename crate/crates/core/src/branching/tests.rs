use num_bigint::BigUint;
use num_traits::Zero;

use super::concrete::{concrete_decomposition, concrete_shape, ConcretePool, ConcreteZigzag};
use super::*;
use crate::degrees::gl_order;
use crate::label::LabelShape;
use crate::partition::Partition;

fn p(rows: &[u32]) -> Partition {
    Partition::new(rows.to_vec()).unwrap()
}

fn label(s: &str) -> LabelFunction {
    LabelFunction::parse(s).unwrap()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn decompose_n3_m1_q2() {
    let dec = decompose_perm_module(3, 1, 2).unwrap();
    let got: Vec<(String, u64, u64)> = dec
        .entries
        .iter()
        .map(|e| {
            (
                e.shape.to_string(),
                e.multiplicity.clone().try_into().unwrap(),
                e.class_size.clone().try_into().unwrap(),
            )
        })
        .collect();
    let want = [
        LabelShape::iota_only(p(&[])),
        LabelShape::iota_only(p(&[1])),
        LabelShape::iota_only(p(&[1, 1])),
        LabelShape::new(p(&[]), vec![(2, p(&[1]))]).unwrap(),
    ];
    assert_eq!(got.len(), want.len(), "{got:?}");
    for (w, c) in want.iter().zip([1, 2, 1, 1]) {
        assert_eq!(dec.multiplicity_of(w), big(c), "{w}");
    }
    assert_eq!(dec.sum_sq(), big(7));
    assert_eq!(dec.dim(), big(28));
}

#[test]
fn decompose_small_sum_squares() {
    let d = decompose_perm_module(2, 1, 2).unwrap();
    assert_eq!(d.sum_sq(), big(6));
    assert_eq!(d.dim(), big(6));
    let d = decompose_perm_module(3, 1, 3).unwrap();
    assert_eq!(d.entries.len(), 7);
    // 1 + 4 + 1 + 3 + 4 + 1 + 1; brute-force orbit count agrees
    assert_eq!(d.sum_sq(), big(15));
    assert_eq!(d.dim(), big(234));
}

#[test]
fn dim_is_index() {
    // |G_n| / |G_{n−m}|
    for (n, m, q) in [(3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 3), (3, 2, 3), (5, 2, 2)] {
        let d = decompose_perm_module(n, m, q).unwrap();
        assert_eq!(d.dim(), gl_order(n, q) / gl_order(n - m, q), "({n},{m},{q})");
    }
}

#[test]
fn regular_representation() {
    // m = n: every irreducible appears with multiplicity equal to its degree
    for (n, q) in [(1, 2), (2, 2), (2, 3), (3, 2), (2, 4)] {
        let d = decompose_perm_module(n, n, q).unwrap();
        for e in &d.entries {
            assert_eq!(e.multiplicity, e.degree, "n={n} q={q} {}", e.shape);
        }
        let classes: BigUint = d.entries.iter().map(|e| e.class_size.clone()).sum();
        let census: BigUint = crate::label::enumerate_labels(n, q)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .sum();
        assert_eq!(classes, census);
    }
}

#[test]
fn zigzag_examples() {
    for q in [2u64, 3, 4, 5, 7] {
        let steinberg = label("ι:(1,1)");
        assert_eq!(
            count_zigzag(&LabelFunction::new(), &steinberg, 2, q).unwrap(),
            big(q)
        );
        assert_eq!(count_zigzag(&label("ι:(1)"), &steinberg, 1, q).unwrap(), big(2));
        assert_eq!(
            count_zigzag(&label("ι:(1)"), &label("ι:(2)"), 1, q).unwrap(),
            big(1)
        );
    }
    assert!(matches!(
        count_zigzag(&label("ι:(1)"), &label("ι:(2)"), 2, 2),
        Err(Error::SizeMismatch(_))
    ));
    assert!(count_zigzag(&label("ι:(1)"), &label("ι:(2)"), 1, 6).is_err());
}

#[test]
fn restrict_trivial_is_trivial() {
    let r = restrict_step(&label("ι:(2)"), 3).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].label, label("ι:(1)"));
    assert_eq!(r[0].multiplicity, big(1));
    assert_eq!(r[0].class_size, big(1));
}

#[test]
fn restrict_steinberg_q3() {
    let r = restrict_step(&label("ι:(1,1)"), 3).unwrap();
    let got: Vec<(String, u64, u64)> = r
        .iter()
        .map(|e| {
            (
                e.shape.to_string(),
                e.multiplicity.clone().try_into().unwrap(),
                e.class_size.clone().try_into().unwrap(),
            )
        })
        .collect();
    let iota = LabelShape::iota_only(p(&[1])).to_string();
    let rho = LabelShape::new(p(&[]), vec![(1, p(&[1]))]).unwrap().to_string();
    assert!(got.contains(&(iota, 2, 1)), "{got:?}");
    assert!(got.contains(&(rho, 1, 1)), "{got:?}");
    assert_eq!(got.len(), 2);
}

#[test]
fn restrict_dimensions_add_up() {
    for (s, q) in [("ι:(2,1)", 2), ("ι:(1); 1:(1)", 3), ("2:(1)", 2), ("ι:(1,1,1)", 3)] {
        let mu = label(s);
        let deg = crate::degrees::degree_at(&mu.shape(), q).unwrap();
        let total: BigUint = restrict_step(&mu, q)
            .unwrap()
            .iter()
            .map(|e| {
                &e.multiplicity
                    * &e.class_size
                    * crate::degrees::degree_at(&e.shape, q).unwrap()
            })
            .sum();
        assert_eq!(total, deg, "{s} q={q}");
    }
}

#[test]
fn recursion_consistency() {
    // Z(ν, µ) over m steps equals Σ_ν' Z(ν, ν')·Z(ν', µ) through one step
    let q = 2;
    let nu = label("ι:(1)");
    for s in ["ι:(2,1)", "ι:(1,1,1)", "ι:(3)", "ι:(1); 2:(1)"] {
        let mu = label(s);
        let direct = count_zigzag(&nu, &mu, 2, q).unwrap();
        let mut via = BigUint::zero();
        for e in restrict_step(&mu, q).unwrap() {
            let mut reps = vec![e.label.clone()];
            // anonymous classes with several members contribute identically
            let z = count_zigzag(&nu, &reps.remove(0), 1, q).unwrap();
            via += z * &e.multiplicity * &e.class_size;
        }
        assert_eq!(direct, via, "{s}");
    }
}

#[test]
fn forward_matches_candidates() {
    for (n, m, q) in [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (3, 1, 3), (4, 1, 3), (5, 2, 2)] {
        let a = decompose_perm_module(n, m, q).unwrap();
        let b = decompose_by_candidates(n, m, q).unwrap();
        assert_eq!(a, b, "({n},{m},{q})");
    }
}

#[test]
fn matches_concrete_enumeration() {
    for (n, m, q) in [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (2, 2, 3), (3, 1, 3), (3, 2, 3), (2, 1, 4)] {
        let dec = decompose_perm_module(n, m, q).unwrap();
        let conc = concrete_decomposition(n, m, q).unwrap();
        assert_eq!(dec.entries.len(), conc.len(), "({n},{m},{q})");
        for e in &dec.entries {
            let full = LabelShape::new(
                e.shape.iota.with_first_row(n - e.shape.norm() as u32).unwrap(),
                e.shape.others.clone(),
            )
            .unwrap();
            let (mult, count) = conc.get(&full).unwrap_or_else(|| panic!("{full} missing"));
            assert_eq!(mult, &e.multiplicity, "({n},{m},{q}) {full}");
            assert_eq!(count, &e.class_size, "({n},{m},{q}) {full}");
        }
    }
}

#[test]
fn zigzag_matches_concrete_with_fresh_cuspidals() {
    // endpoints sharing a non-ι cuspidal, plus fresh activations in between
    let q = 3;
    let pool = ConcretePool::new(q, 3).unwrap();
    let cases = [("1.a:(1)", "ι:(1); 1.a:(1,1)", 2), ("", "1.a:(1); 2.b:(1); ι:(1)", 4), ("ι:(1)", "2.a:(1); ι:(1)", 2)];
    for (nu_s, mu_s, m) in cases {
        let nu = if nu_s.is_empty() { LabelFunction::new() } else { label(nu_s) };
        let mu = label(mu_s);
        let fast = count_zigzag(&nu, &mu, m, q).unwrap();
        // same key, same concrete index
        let mut index = std::collections::BTreeMap::new();
        let mut next = std::collections::BTreeMap::new();
        let mut conc = |l: &LabelFunction| {
            let mut out = super::concrete::ConcreteLabel::new();
            for (k, part) in l.entries() {
                let id = if k.is_iota() {
                    (1, 0)
                } else {
                    *index.entry(k.clone()).or_insert_with(|| {
                        let j = next.entry(k.degree).or_insert(u32::from(k.degree == 1));
                        *j += 1;
                        (k.degree, *j - 1)
                    })
                };
                out.insert(id, part.clone());
            }
            out
        };
        let cnu = conc(&nu);
        let cmu = conc(&mu);
        assert_eq!(concrete_shape(&cmu), mu.shape());
        let slow = ConcreteZigzag::new(&pool, cnu).count(&cmu);
        assert_eq!(fast, slow, "{nu_s} -> {mu_s}");
    }
}

#[test]
fn margin_holds_above_three_m() {
    for m in 1..=3 {
        assert_eq!(first_row_margin_violations(m, 3 * m + 1, 2).unwrap(), 0, "m={m}");
        assert_eq!(first_row_margin_violations(m, 3 * m + 2, 3).unwrap(), 0, "m={m}");
    }
    assert!(first_row_margin_violations(1, 3, 2).unwrap() > 0);
}

#[test]
fn pool_exhaustion_is_reported() {
    // only one non-ι degree-1 cuspidal over F_3
    let mu = label("1.a:(1); 1.b:(1)");
    assert!(matches!(restrict_step(&mu, 3), Err(Error::PoolExhausted { .. })));
}

