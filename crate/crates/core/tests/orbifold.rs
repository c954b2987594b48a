mod common;

use common::CASES;
use holo24::affine::{HVector, ProductAlgebra};
use holo24::orbifold::{
    assemble_root_subsystem, candidate_ideals, classify_roots, embeds, fixed_subalgebra, identify,
    level_transfer, s_matrix, twisted_sector_roots, verlinde_simple_current, SeedSubalgebra,
    SemisimpleShape,
};
use holo24::rational::{q, qi, Q};
use holo24::rootsys::{datum, SimpleType, WeightVec};
use num_traits::One;

fn st(s: &str) -> SimpleType {
    s.parse().unwrap()
}

fn e(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn lin(a: &[i64], sa: i64, b: &[i64], sb: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| sa * x + sb * y).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_d_root(v: &[i64]) -> bool {
    let nz: Vec<i64> = v.iter().copied().filter(|&x| x != 0).collect();
    nz.len() == 2 && nz.iter().all(|x| x.abs() == 1)
}

fn gram_int(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
}

fn gram_of(t: SimpleType) -> Vec<Vec<i64>> {
    t.simple_gram().iter().map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect()).collect()
}

fn block(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len() + b.len();
    let mut g = vec![vec![0; n]; n];
    for (i, r) in a.iter().enumerate() {
        g[i][..a.len()].copy_from_slice(r);
    }
    for (i, r) in b.iter().enumerate() {
        g[a.len() + i][a.len()..].copy_from_slice(r);
    }
    g
}

#[test]
fn a3_in_d7_witness() {
    let n = 7;
    let w = vec![lin(&e(n, 0), 1, &e(n, 1), -1), lin(&e(n, 1), 1, &e(n, 2), -1), lin(&e(n, 2), 1, &e(n, 3), -1)];
    assert!(w.iter().all(|v| is_d_root(v)));
    assert_eq!(gram_int(&w), gram_of(st("A3")));
    assert!(embeds(&[st("A3")], st("D7"), true));
}

#[test]
fn a3_a3_in_d6_witness() {
    let n = 6;
    let mut w = Vec::new();
    for o in [0, 3] {
        w.push(lin(&e(n, o), 1, &e(n, o + 1), -1));
        w.push(lin(&e(n, o + 1), 1, &e(n, o + 2), -1));
        w.push(lin(&e(n, o + 1), 1, &e(n, o + 2), 1));
    }
    assert!(w.iter().all(|v| is_d_root(v)));
    // Each triple is a D3 chain, which is the A3 diagram with node 2 central.
    let d3 = vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]];
    assert_eq!(gram_int(&w), block(&d3, &d3));
    let a3 = gram_of(st("A3"));
    assert_eq!((a3[0][1], a3[1][2], a3[0][2]), (-1, -1, 0));
    assert!(embeds(&[st("A3"), st("A3")], st("D6"), true));
}

#[test]
fn d6_in_e7_subdiagram() {
    let e7 = st("E7").simple_gram();
    let d6 = st("D6").simple_gram();
    // D6 nodes 1..6 sit on E7 nodes 7, 6, 5, 4, 3, 2.
    let map = [6, 5, 4, 3, 2, 1];
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(d6[i][j], e7[map[i]][map[j]]);
        }
    }
    assert!(embeds(&[st("D6")], st("E7"), true));
}

#[test]
fn embedding_negatives() {
    assert!(!embeds(&[st("A4")], st("D4"), false));
    assert!(!embeds(&[st("A1"), st("A1")], st("A2"), false));
    assert!(!embeds(&[st("E7")], st("E6"), false));
    // Long roots of C5 are ±2e_i, pairwise orthogonal.
    assert!(!embeds(&[st("A3")], st("C5"), true));
    assert!(embeds(&[st("A3")], st("C5"), false));
    assert!(embeds(&[st("A1"); 5], st("C5"), true));
    assert!(embeds(&[st("A1"), st("A1")], st("C2"), true));
    assert!(embeds(&[st("E6")], st("E8"), true));
}

fn single(a: &ProductAlgebra, v: Vec<i64>) -> HVector {
    let mut h = a.zero_h();
    h.0[0] = WeightVec::from_ints(&v);
    h
}

fn seed(a: &ProductAlgebra, ty: &str, simple: Vec<Vec<i64>>) -> SeedSubalgebra {
    let mut roots = Vec::new();
    for s in &simple {
        roots.push(single(a, s.clone()));
        roots.push(single(a, s.iter().map(|x| -x).collect()));
    }
    SeedSubalgebra {
        ty: st(ty),
        level: 0,
        simple_roots: simple.into_iter().map(|s| single(a, s)).collect(),
        roots,
        long_in_ambient: false,
        factor: Some(0),
    }
}

#[test]
fn level_transfer_examples() {
    let g2a: ProductAlgebra = "G2:1".parse().unwrap();
    let g2 = datum(st("G2"));
    let short = seed(&g2a, "A1", vec![g2.simple_root(0)]);
    let long = seed(&g2a, "A1", vec![g2.simple_root(1)]);
    assert_eq!(level_transfer(&short, (st("G2"), 1)).unwrap(), 3);
    assert_eq!(level_transfer(&long, (st("G2"), 1)).unwrap(), 1);

    let c5a: ProductAlgebra = "C5:3".parse().unwrap();
    let c5 = datum(st("C5"));
    let a4 = seed(&c5a, "A4", (0..4).map(|i| c5.simple_root(i)).collect());
    assert_eq!(level_transfer(&a4, (st("C5"), 3)).unwrap(), 6);
    assert!(level_transfer(&a4, (st("E6"), 3)).is_err());
}

#[test]
fn fixed_subalgebra_shapes() {
    for c in CASES {
        let (shape, seeds) = fixed_subalgebra(&c.algebra(), &c.h()).unwrap();
        assert_eq!(shape, c.fixed.parse::<SemisimpleShape>().unwrap(), "{}", c.name);
        assert_eq!(shape.dim(), c.fixed_dim, "{}", c.name);
        assert_eq!(seeds.len(), shape.ideals().len());
    }
    let a: ProductAlgebra = "E6:3 G2:1 G2:1 G2:1".parse().unwrap();
    let (shape, _) = fixed_subalgebra(&a, &a.zero_h()).unwrap();
    assert_eq!(shape.to_string(), "E_{6,3}G_{2,1}^3");
    assert_eq!(shape.center_dim(), 0);
    // A quarter shift is rejected.
    let bad = HVector::from_scaled(&q(1, 4), &[vec![1, 0, 0, 0, 0, 0], vec![0, 0], vec![0, 0], vec![0, 0]]);
    assert!(fixed_subalgebra(&a, &bad).is_err());
}

fn m1() -> (ProductAlgebra, HVector) {
    (CASES[0].algebra(), CASES[0].h())
}

fn g2(x: i64, y: i64) -> HVector {
    HVector::from_scaled(&Q::one(), &[vec![0; 6], vec![0, x], vec![0, y], vec![0, 0]])
}

#[test]
fn twisted_sector_examples() {
    let (a, h) = m1();
    let r = twisted_sector_roots(&a, &h, &[g2(0, 0), g2(-1, 0)]);
    let want0 = HVector::from_scaled(&q(1, 2), &[vec![3, 0, 0, 0, 0, -3], vec![0, 1], vec![0, 1], vec![0, 0]]);
    let want1 = HVector::from_scaled(&q(1, 2), &[vec![3, 0, 0, 0, 0, -3], vec![0, -1], vec![0, 1], vec![0, 0]]);
    assert_eq!(r, vec![want0, want1]);
    let mu = g2(1, -1);
    assert_eq!(twisted_sector_roots(&a, &a.zero_h(), std::slice::from_ref(&mu)), vec![mu]);
}

#[test]
fn assembled_subsystems() {
    let (a, h) = m1();
    let s = assemble_root_subsystem(&a, &[g2(1, 0), g2(-1, 0)], &[]).unwrap();
    assert_eq!(s.ty, st("A1"));
    assert_eq!(s.level, 1);

    let base = [g2(0, 0), g2(-1, 0), g2(0, -1), g2(-1, -1)];
    let mut tw = twisted_sector_roots(&a, &h, &base);
    let neg: Vec<HVector> = tw.iter().map(|t| HVector(t.0.iter().map(|w| w.neg()).collect())).collect();
    tw.extend(neg);
    let s = assemble_root_subsystem(&a, &[g2(1, 0), g2(-1, 0), g2(0, 1), g2(0, -1)], &tw).unwrap();
    assert_eq!((s.ty, s.level, s.roots.len()), (st("A3"), 1, 12));
    // Two orthogonal pairs do not form one simple system.
    assert!(assemble_root_subsystem(&a, &[g2(1, 0), g2(-1, 0), g2(0, 1), g2(0, -1)], &[]).is_err());
}

#[test]
fn classification_rejects_open_sets() {
    let d = datum(st("A2"));
    let gram = d.fundamental_gram().to_vec();
    let v = |x: &[i64]| -> Vec<Q> { x.iter().map(|&a| qi(a)).collect() };
    let a1 = d.simple_root(0);
    let a2 = d.simple_root(1);
    let neg = |x: &[i64]| -> Vec<i64> { x.iter().map(|a| -a).collect() };
    let open = vec![v(&a1), v(&neg(&a1)), v(&a2), v(&neg(&a2))];
    assert!(classify_roots(&open, &gram).is_err());
    let all: Vec<Vec<Q>> = d.roots().iter().map(|r| v(r)).collect();
    let c = classify_roots(&all, &gram).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].ty, st("A2"));
    assert_eq!(c[0].long_norm, qi(2));
}

#[test]
fn identification_examples() {
    for (rank, dim, seeds, want) in [
        (12, 120, vec![("D5", 3), ("A3", 1), ("G2", 1)], "D_{7,3}A_{3,1}G_{2,1}"),
        (8, 48, vec![("A4", 6), ("A1", 2)], "A_{5,6}C_{2,3}A_{1,2}"),
        (8, 48, vec![("A4", 6), ("A1", 2), ("A1", 6)], "A_{5,6}C_{2,3}A_{1,2}"),
        (8, 72, vec![("A3", 5), ("A3", 5)], "D_{6,5}A_{1,1}^2"),
    ] {
        let seeds: Vec<(SimpleType, u32)> = seeds.into_iter().map(|(t, k)| (st(t), k)).collect();
        let got = identify(rank, dim, &seeds).unwrap();
        assert_eq!(got, vec![want.parse::<SemisimpleShape>().unwrap()]);
    }
    assert!(identify(8, 72, &[(st("E8"), 1)]).is_err());
    assert!(identify(8, 20, &[]).is_err());
    // Without seeds the dimension constraint alone leaves several shapes.
    assert!(identify(12, 120, &[]).unwrap().len() > 1);
}

#[test]
fn candidates_for_ratio_four() {
    let c = candidate_ideals(12, 120, &qi(4));
    for want in [("D7", 3), ("A3", 1), ("G2", 1), ("E6", 3), ("C7", 2)] {
        assert!(c.contains(&(st(want.0), want.1)), "{want:?}");
    }
    for (t, k) in &c {
        assert_eq!(qi(t.dual_coxeter() as i64), qi(4) * qi(*k as i64));
    }
}

#[test]
fn shape_text() {
    let s: SemisimpleShape = "A3:5^2 U(1)^2".parse().unwrap();
    assert_eq!(s.to_string(), "A_{3,5}^2U(1)^2");
    assert_eq!((s.dim(), s.rank(), s.center_dim()), (32, 8, 2));
    let t: SemisimpleShape = s.to_string().parse().unwrap();
    assert_eq!(s, t);
    assert!("A_{3,5}^".parse::<SemisimpleShape>().is_err());
    assert!("Q_{3,1}".parse::<SemisimpleShape>().is_err());
}

#[test]
fn verlinde() {
    for a in [1, -1] {
        let s = s_matrix(a).unwrap();
        assert_eq!(s[0][0], q(1, 2));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s[i][j], s[j][i]);
            }
        }
        let n = verlinde_simple_current(a).unwrap();
        for p in 0..4 {
            for r in 0..4 {
                assert_eq!(n[0][p][r], i64::from(p == r));
                assert_eq!(n[p][p][r], i64::from(r == 0));
            }
            for qq in 0..4 {
                assert_eq!(n[p][qq].iter().sum::<i64>(), 1);
                assert!(n[p][qq].iter().all(|x| *x >= 0));
            }
        }
    }
    assert!(s_matrix(0).is_err());
    assert!(verlinde_simple_current(2).is_err());
}
