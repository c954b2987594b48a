use std::collections::{BTreeSet, VecDeque};

use holo24::rational::{q, qi, Q};
use holo24::rootsys::{datum, parse_label, RootDatum, SimpleType, WeightVec, MAX_RANK};
use num_bigint::BigInt;

fn st(s: &str) -> SimpleType {
    s.parse().unwrap()
}

/// Positive roots in root coordinates, grown one simple root at a time with
/// the string rule `q = p - <β, α_i^∨>`.
fn positive_roots_oracle(gram: &[Vec<Q>]) -> BTreeSet<Vec<i64>> {
    let n = gram.len();
    let pair = |b: &[i64], i: usize| -> i64 {
        let v: Q = (0..n).map(|j| qi(b[j]) * qi(2) * &gram[j][i] / &gram[i][i]).sum();
        assert!(v.is_integer());
        v.to_integer().try_into().unwrap()
    };
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for b in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut c = b.clone();
                loop {
                    c[i] -= 1;
                    if all.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair(b, i) > 0 {
                    let mut up = b.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    all
}

fn to_labels(gram: &[Vec<Q>], c: &[i64]) -> Vec<i64> {
    let n = gram.len();
    (0..n)
        .map(|i| {
            let v: Q = (0..n).map(|j| qi(c[j]) * qi(2) * &gram[j][i] / &gram[i][i]).sum();
            v.to_integer().try_into().unwrap()
        })
        .collect()
}

/// Saturated closure of `{λ}` under root strings.
fn support_oracle(d: &RootDatum, lambda: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        if !seen.insert(mu.clone()) {
            continue;
        }
        for a in d.positive_roots() {
            let k = qi(2) * d.form_ints(&mu, a) / d.norm(a);
            let k: i64 = k.to_integer().try_into().unwrap();
            let (lo, hi) = if k >= 0 { (0, k) } else { (k, 0) };
            for t in lo..=hi {
                let w: Vec<i64> = mu.iter().zip(a).map(|(m, x)| m - t * x).collect();
                if !seen.contains(&w) {
                    queue.push_back(w);
                }
            }
        }
    }
    seen
}

#[test]
fn roots_match_string_construction() {
    for t in SimpleType::catalog(8) {
        let d = datum(t);
        let g = t.simple_gram();
        let pos: BTreeSet<Vec<i64>> = positive_roots_oracle(&g).iter().map(|c| to_labels(&g, c)).collect();
        let got: BTreeSet<Vec<i64>> = d.positive_roots().iter().cloned().collect();
        assert_eq!(got, pos, "{t}");
        assert_eq!(d.roots().len(), 2 * pos.len(), "{t}");
        assert_eq!(d.roots().len(), t.dim() - t.rank(), "{t}");
    }
}

#[test]
fn datum_invariants() {
    for t in SimpleType::catalog(MAX_RANK) {
        let d = datum(t);
        assert_eq!(d.norm(d.theta()), qi(2), "{t}");
        let allowed = [qi(2), qi(1), q(2, 3)];
        let all: BTreeSet<&Vec<i64>> = d.roots().iter().collect();
        for a in d.roots() {
            assert!(allowed.contains(&d.norm(a)), "{t} {a:?}");
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            assert!(all.contains(&neg));
            for i in 0..t.rank() {
                assert!(all.contains(&d.reflect(i, a)));
            }
        }
        for i in 0..t.rank() {
            let ai = d.simple_root(i);
            for j in 0..t.rank() {
                let v = qi(2) * d.form_ints(&d.fundamental_weight(j), &ai) / d.norm(&ai);
                assert_eq!(v, qi(i64::from(i == j)), "{t}");
            }
        }
    }
}

#[test]
fn small_type_examples() {
    let a1 = datum(st("A1"));
    assert_eq!(a1.roots().len(), 2);
    assert_eq!(a1.dual_coxeter(), 2);
    // Λ_1 = α_1/2 in Dynkin coordinates means the simple root has label 2.
    assert_eq!(a1.simple_root(0), vec![2]);

    let g2 = datum(st("G2"));
    let (a, b) = (g2.simple_root(0), g2.simple_root(1));
    assert_eq!(g2.norm(&a), q(2, 3));
    assert_eq!(g2.norm(&b), qi(2));
    assert_eq!(g2.form_ints(&a, &b), qi(-1));

    let d7 = datum(st("D7"));
    assert_eq!(d7.roots().len(), 84);
    assert_eq!(d7.dual_coxeter(), 12);
}

#[test]
fn dual_coxeter_numbers() {
    for (t, h) in [("A4", 5), ("A5", 6), ("C5", 6), ("D6", 10), ("E6", 12), ("E7", 18), ("E8", 30), ("F4", 9), ("G2", 4), ("B3", 5)] {
        assert_eq!(datum(st(t)).dual_coxeter(), h, "{t}");
    }
}

#[test]
fn support_matches_closure() {
    let cases = [
        ("A1", "Λ1"),
        ("G2", "Λ1"),
        ("G2", "2Λ1"),
        ("G2", "Λ1+Λ2"),
        ("A3", "Λ1+Λ3"),
        ("B3", "Λ3"),
        ("C3", "Λ2"),
        ("A4", "Λ2+Λ4"),
        ("D5", "Λ4"),
        ("C5", "2Λ4"),
    ];
    for (t, l) in cases {
        let t = st(t);
        let d = datum(t);
        let lam = parse_label(l, t.rank()).unwrap();
        let got: BTreeSet<Vec<i64>> = d.weight_support(&lam).unwrap().into_iter().collect();
        assert_eq!(got, support_oracle(&d, &lam), "{t} {l}");
    }
}

#[test]
fn support_examples() {
    let e6 = datum(st("E6"));
    let theta = e6.theta().to_vec();
    let s = e6.weight_support(&theta).unwrap();
    assert_eq!(s.len(), 73);
    let roots: BTreeSet<&Vec<i64>> = e6.roots().iter().collect();
    assert_eq!(s.iter().filter(|w| roots.contains(w)).count(), 72);
    assert!(s.contains(&vec![0; 6]));

    let g2 = datum(st("G2"));
    let s = g2.weight_support(&[1, 0]).unwrap();
    assert_eq!(s.len(), 7);
    for w in s.iter().filter(|w| w.iter().any(|&x| x != 0)) {
        assert_eq!(g2.norm(w), q(2, 3));
    }

    let a1 = datum(st("A1"));
    assert_eq!(a1.weight_support(&[1]).unwrap(), vec![vec![-1], vec![1]]);
}

#[test]
fn minuscule_dimension_equals_support() {
    // Every weight of a minuscule module has multiplicity one.
    for (t, l, dim) in [
        ("E6", "Λ1", 27),
        ("E6", "Λ6", 27),
        ("E7", "Λ7", 56),
        ("D7", "Λ1", 14),
        ("D7", "Λ6", 64),
        ("D7", "Λ7", 64),
        ("C5", "Λ1", 10),
        ("A5", "Λ3", 20),
        ("B4", "Λ4", 16),
    ] {
        let t = st(t);
        let d = datum(t);
        let lam = parse_label(l, t.rank()).unwrap();
        assert_eq!(d.weyl_dimension(&lam).unwrap(), BigInt::from(dim), "{t} {l}");
        assert_eq!(support_oracle(&d, &lam).len(), dim as usize, "{t} {l}");
    }
}

#[test]
fn weyl_dimension_examples() {
    for t in ["A1", "G2", "E6", "C5"] {
        let t = st(t);
        assert_eq!(datum(t).weyl_dimension(&vec![0; t.rank()]).unwrap(), BigInt::from(1));
    }
    for (t, dim) in [("E7", 133), ("A4", 24), ("G2", 14), ("C5", 55), ("D7", 91)] {
        let d = datum(st(t));
        let theta = d.theta().to_vec();
        assert_eq!(d.weyl_dimension(&theta).unwrap(), BigInt::from(dim), "{t}");
    }
    assert!(datum(st("A2")).weyl_dimension(&[-1, 0]).is_err());
}

#[test]
fn min_pairing_examples() {
    let e6 = datum(st("E6"));
    let h = WeightVec::scaled(&[1, 0, 0, 0, 0, -1], &q(1, 2));
    let theta = e6.theta().to_vec();
    assert_eq!(e6.min_pairing(&h, &theta).unwrap(), q(-1, 2));

    let d7 = datum(st("D7"));
    let h = WeightVec::scaled(&[0, 0, 0, 0, 0, 1, -1], &q(1, 2));
    let m = d7.min_pairing(&h, &[3, 0, 0, 0, 0, 0, 0]).unwrap();
    assert!(m >= q(-3, 2));

    let g2 = datum(st("G2"));
    assert_eq!(g2.min_pairing(&WeightVec::zero(2), &[2, 1]).unwrap(), qi(0));
}

#[test]
fn min_pairing_against_closure() {
    let cases = [
        ("E6", vec![1, 0, 0, 0, 0, -1], vec![0, 0, 0, 1, 0, 0]),
        ("G2", vec![0, 1], vec![1, 1]),
        ("C5", vec![0, 0, 0, 0, 1], vec![0, 0, 0, 2, 0]),
        ("A5", vec![0, 0, 1, 0, 0], vec![0, 1, 0, 1, 0]),
        ("D7", vec![0, 0, 0, 0, 0, 1, -1], vec![1, 0, 0, 0, 0, 1, 0]),
    ];
    for (t, h2, lam) in cases {
        let d = datum(st(t));
        let h = WeightVec::scaled(&h2, &q(1, 2));
        let want = support_oracle(&d, &lam)
            .iter()
            .map(|w| d.form(&h, &WeightVec::from_ints(w)))
            .min()
            .unwrap();
        assert_eq!(d.min_pairing(&h, &lam).unwrap(), want, "{t}");
    }
}

#[test]
fn type_parsing_rejects_bad_input() {
    for s in ["X3", "B1", "D2", "E9", "G3", "F5", "A0", "A13", ""] {
        assert!(s.parse::<SimpleType>().is_err(), "{s}");
    }
    assert_eq!(st("E6").to_string(), "E6");
    // D3 and B2 parse but the catalog lists them once, as A3 and C2.
    let cat = SimpleType::catalog(4);
    assert!(!cat.contains(&st("D3")) && !cat.contains(&st("B2")));
    assert!(cat.contains(&st("A3")) && cat.contains(&st("C2")));
}
