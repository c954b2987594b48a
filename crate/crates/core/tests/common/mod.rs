#![allow(dead_code)]

use std::collections::BTreeMap;

use holo24::affine::{HVector, ProductAlgebra, ProductLabel, WeightFilter};
use holo24::orbifold::{OrbifoldScenario, SemisimpleShape};
use holo24::rational::{parse_q, q, qi, Q};
use holo24::rootsys::{parse_label, SimpleType};

pub struct Case {
    pub name: &'static str,
    pub ambient: &'static str,
    /// `h` is half of these fundamental-weight coefficients.
    pub h2: &'static [&'static [i64]],
    pub hh: (i64, i64),
    pub fixed: &'static str,
    pub fixed_dim: usize,
    pub v1_dim: u64,
    pub result: &'static str,
    pub result_dim: u64,
    pub seeds: &'static [(&'static str, u32)],
}

pub const CASES: &[Case] = &[
    Case {
        name: "M1",
        ambient: "E6:3 G2:1 G2:1 G2:1",
        h2: &[&[1, 0, 0, 0, 0, -1], &[0, 1], &[0, 1], &[0, 0]],
        hh: (2, 1),
        fixed: "D_{5,3}A_{1,1}^2A_{1,3}^2G_{2,1}U(1)",
        fixed_dim: 72,
        v1_dim: 120,
        result: "D_{7,3}A_{3,1}G_{2,1}",
        result_dim: 120,
        seeds: &[("D5", 3), ("A3", 1), ("G2", 1)],
    },
    Case {
        name: "M2",
        ambient: "D7:3 A3:1 G2:1",
        h2: &[&[0, 0, 0, 0, 0, 1, -1], &[2, 0, 0], &[0, 1]],
        hh: (2, 1),
        fixed: "D_{6,3}A_{3,1}A_{1,1}A_{1,3}U(1)",
        fixed_dim: 88,
        v1_dim: 120,
        result: "E_{7,3}A_{5,1}",
        result_dim: 168,
        seeds: &[("D6", 3), ("A3", 1)],
    },
    Case {
        name: "M3",
        ambient: "E7:3 A5:1",
        h2: &[&[0, 1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0]],
        hh: (3, 1),
        fixed: "A_{7,3}A_{2,1}^2U(1)",
        fixed_dim: 80,
        v1_dim: 168,
        result: "A_{8,3}A_{2,1}^2",
        result_dim: 96,
        seeds: &[("A7", 3), ("A2", 1), ("A2", 1)],
    },
    Case {
        name: "M4",
        ambient: "C5:3 G2:2 A1:1",
        h2: &[&[0, 0, 0, 0, 1], &[0, 1], &[1]],
        hh: (3, 1),
        fixed: "A_{4,6}A_{1,6}A_{1,2}U(1)^2",
        fixed_dim: 32,
        v1_dim: 72,
        result: "A_{5,6}C_{2,3}A_{1,2}",
        result_dim: 48,
        seeds: &[("A4", 6), ("A1", 2)],
    },
    Case {
        name: "M5",
        ambient: "A4:5 A4:5",
        h2: &[&[0, 0, 0, 1], &[0, 0, 0, 1]],
        hh: (2, 1),
        fixed: "A_{3,5}^2U(1)^2",
        fixed_dim: 32,
        v1_dim: 48,
        result: "D_{6,5}A_{1,1}^2",
        result_dim: 72,
        seeds: &[("A3", 5), ("A3", 5)],
    },
];

impl Case {
    pub fn algebra(&self) -> ProductAlgebra {
        self.ambient.parse().unwrap()
    }

    pub fn h(&self) -> HVector {
        let v: Vec<Vec<i64>> = self.h2.iter().map(|x| x.to_vec()).collect();
        HVector::from_scaled(&q(1, 2), &v)
    }

    pub fn scenario(&self) -> OrbifoldScenario {
        OrbifoldScenario::new(
            self.name,
            self.algebra(),
            self.h(),
            self.fixed.parse().unwrap(),
            self.result.parse().unwrap(),
        )
        .unwrap()
    }

    pub fn seed_list(&self) -> Vec<(SimpleType, u32)> {
        self.seeds.iter().map(|&(t, k)| (t.parse().unwrap(), k)).collect()
    }

    pub fn result_shape(&self) -> SemisimpleShape {
        self.result.parse().unwrap()
    }
}

pub fn data(name: &str) -> String {
    let p = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(p).unwrap()
}

/// `(type, level) -> {labels -> weight}` from the transcribed tables.
pub fn module_weights() -> BTreeMap<(SimpleType, u32), BTreeMap<Vec<i64>, Q>> {
    let mut out: BTreeMap<(SimpleType, u32), BTreeMap<Vec<i64>, Q>> = BTreeMap::new();
    for line in data("module_weights.txt").lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let (t, k) = f[0].split_once(':').unwrap();
        let t: SimpleType = t.parse().unwrap();
        let k: u32 = k.parse().unwrap();
        let w = parse_q(f[2]).unwrap();
        for l in f[1].split(',') {
            let prev = out
                .entry((t, k))
                .or_default()
                .insert(parse_label(l, t.rank()).unwrap(), w.clone());
            assert!(prev.is_none(), "duplicate {line}");
        }
    }
    out
}

pub struct IntegralTable {
    pub algebra: ProductAlgebra,
    pub filter: WeightFilter,
    pub rows: BTreeMap<ProductLabel, Q>,
}

fn expand_jk(s: &str) -> Vec<String> {
    let mut out = vec![s.to_string()];
    for (var, vals) in [("Λj", ["Λ6", "Λ7"]), ("Λk", ["Λ1", "Λ3"])] {
        out = out
            .into_iter()
            .flat_map(|x| {
                if x.contains(var) {
                    vals.iter().map(|v| x.replace(var, v)).collect()
                } else {
                    vec![x]
                }
            })
            .collect();
    }
    out
}

pub fn integral_tables() -> Vec<IntegralTable> {
    let mut out: Vec<IntegralTable> = Vec::new();
    for line in data("integral_tables.txt").lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('[') {
            let (a, f) = h.trim_end_matches(']').split_once('|').unwrap();
            let filter = match f.trim() {
                "all" => WeightFilter::AtMost(qi(100)),
                ws => WeightFilter::OneOf(ws.split(',').map(|w| parse_q(w.trim()).unwrap()).collect()),
            };
            out.push(IntegralTable {
                algebra: a.trim().parse().unwrap(),
                filter,
                rows: BTreeMap::new(),
            });
            continue;
        }
        let t = out.last_mut().unwrap();
        let (l, w) = line.split_once('\t').unwrap();
        for l in expand_jk(l) {
            let lab = ProductLabel::parse(&t.algebra, &l).unwrap();
            assert!(t.rows.insert(lab, parse_q(w).unwrap()).is_none(), "duplicate {l}");
        }
    }
    out
}

/// Integer power series in `x`, truncated to `n` terms.
pub fn poly_mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut c = vec![0i128; n];
    for (i, x) in a.iter().enumerate().take(n) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// `Π_{m ∈ exps} (1 + sign x^m)^power` to `n` terms, by multiplication only.
pub fn product(exps: impl Iterator<Item = usize>, sign: i128, power: usize, n: usize) -> Vec<i128> {
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    for m in exps {
        if m >= n {
            continue;
        }
        let mut f = vec![0i128; n];
        f[0] = 1;
        f[m] = sign;
        for _ in 0..power {
            acc = poly_mul(&acc, &f, n);
        }
    }
    acc
}

/// Coefficients of `q f = Π_{n odd} (1 - q^n)^24`, in powers of `q`.
pub fn hauptmodul_oracle(n: usize) -> Vec<i128> {
    product((1..n).step_by(2), -1, 24, n)
}

/// `f(Sτ) / (2^12 x) = Π (1 + x^n)^24` with `x = q^{1/2}`.
pub fn s_oracle(n: usize) -> Vec<i128> {
    product(1..n, 1, 24, n)
}

/// `f(Sτ)^{-k} 2^{12k} x^k = Π_{n odd} (1 - x^n)^{24k}`.
pub fn s_inverse_oracle(k: usize, n: usize) -> Vec<i128> {
    product((1..n).step_by(2), -1, 24 * k, n)
}
