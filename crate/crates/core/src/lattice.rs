//! The Niemeier lattice with root system `A_4^6`, its order-5 isometry
//! `τ_0` permuting blocks 2 to 6, the shifts `f^r`, and the inner
//! automorphism used for the `D_{6,5}A_{1,1}^2` case.
//!
//! Vectors are 30-tuples: six blocks in the model
//! `A_4 = {a ∈ ℤ^5 | Σ a_i = 0}` with the Euclidean form.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::orbifold::{classify_roots, SemisimpleShape};
use crate::rational::{determinant, dot, q, qi, to_i64, Q};

pub const BLOCKS: usize = 6;
pub const BLOCK: usize = 5;
pub const DIM: usize = BLOCKS * BLOCK;

const GENERATORS: [[u8; 6]; 4] = [
    [1, 0, 1, 4, 4, 1],
    [1, 1, 0, 1, 4, 4],
    [1, 4, 1, 0, 1, 4],
    [1, 4, 4, 1, 0, 1],
];

fn v5(x: [i64; 5], den: i64) -> Vec<Q> {
    x.iter().map(|&a| q(a, den)).collect()
}

/// `Λ = (1,1,1,1,-4)/5`, the fourth fundamental weight of `A_4`.
pub fn lambda() -> Vec<Q> {
    v5([1, 1, 1, 1, -4], 5)
}

/// `Λ' = β_1 + 2β_2 + 3β_3 + 4β_4 = (1,-1,0,-1,1)`.
pub fn lambda_prime() -> Vec<Q> {
    v5([1, -1, 0, -1, 1], 1)
}

/// Simple root `α_i = e_i - e_{i+1}` of `A_4`, `1 ≤ i ≤ 4`.
pub fn alpha(i: usize) -> Vec<Q> {
    assert!((1..=4).contains(&i));
    let mut v = vec![Q::zero(); BLOCK];
    v[i - 1] = Q::one();
    v[i] = -Q::one();
    v
}

/// `β_0, …, β_4`, the weights of the first twisted sector.
pub fn beta(i: usize) -> Vec<Q> {
    let rows = [
        [-2, 2, 1, 0, -1],
        [0, -1, -2, 2, 1],
        [2, 1, 0, -1, -2],
        [-1, -2, 2, 1, 0],
        [1, 0, -1, -2, 2],
    ];
    v5(rows[i % 5], 5)
}

/// `δ^1 = (2,1,0,-1,-2)/5` and `δ^2 = (-1,2,0,-2,1)/5`.
pub fn delta(r: u8) -> Result<Vec<Q>> {
    match r {
        1 => Ok(v5([2, 1, 0, -1, -2], 5)),
        2 => Ok(v5([-1, 2, 0, -2, 1], 5)),
        _ => Err(Error::Precondition(format!("r must be 1 or 2, got {r}"))),
    }
}

/// The shift `ε f^r = (ε δ^r, 0, 0, 0, 0, 0)`.
pub fn shift_f(epsilon: i8, r: u8) -> Result<Vec<Q>> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Precondition(format!("epsilon must be ±1, got {epsilon}")));
    }
    let d = delta(r)?;
    let mut f = vec![Q::zero(); DIM];
    for (i, x) in d.iter().enumerate() {
        f[i] = x * qi(epsilon as i64);
    }
    Ok(f)
}

/// `h = (Λ', Λ, Λ, Λ, Λ, Λ)/2`.
pub fn h_vector() -> Vec<Q> {
    let half = q(1, 2);
    let mut v: Vec<Q> = lambda_prime().iter().map(|x| x * &half).collect();
    for _ in 1..BLOCKS {
        v.extend(lambda().iter().map(|x| x * &half));
    }
    v
}

pub fn all_shifts() -> [(i8, u8); 4] {
    [(1, 1), (1, 2), (-1, 2), (-1, 1)]
}

pub fn norm(v: &[Q]) -> Q {
    dot(v, v)
}

fn block(v: &[Q], b: usize) -> &[Q] {
    &v[b * BLOCK..(b + 1) * BLOCK]
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

/// Class in `A_4^*/A_4 ≅ ℤ/5` of a vector of `A_4^*`, with `Λ` in class 1;
/// `None` outside `A_4^*`.
pub fn dual_class(x: &[Q]) -> Option<u8> {
    if x.len() != BLOCK || !x.iter().sum::<Q>().is_zero() {
        return None;
    }
    let y: Vec<i64> = x.iter().map(|a| to_i64(&(a * qi(5)))).collect::<Option<_>>()?;
    let c = y[0].rem_euclid(5);
    y.iter().all(|a| a.rem_euclid(5) == c).then_some(c as u8)
}

/// Vectors `x` in class `c` of `A_4^*/A_4` with `|x + s|² ≤ bound`,
/// returned as `(x, |x + s|²)`.
pub fn coset_vectors(c: u8, s: &[Q], bound: &Q) -> Vec<(Vec<Q>, Q)> {
    let c = c as i64 % 5;
    // y = 5x; each |y_i + 5 s_i| ≤ 5 sqrt(bound).
    let r = (bound * qi(25)).to_f64().unwrap_or(0.0).max(0.0).sqrt().ceil() as i64 + 1;
    let centers: Vec<i64> = s
        .iter()
        .map(|a| to_i64(&(-(a * qi(5))).round()).unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    let mut y = vec![0i64; BLOCK];
    fn rec(
        i: usize,
        c: i64,
        r: i64,
        centers: &[i64],
        s: &[Q],
        bound: &Q,
        y: &mut Vec<i64>,
        out: &mut Vec<(Vec<Q>, Q)>,
    ) {
        if i == BLOCK - 1 {
            let last = -y[..BLOCK - 1].iter().sum::<i64>();
            if last.rem_euclid(5) != c {
                return;
            }
            y[i] = last;
            let x: Vec<Q> = y.iter().map(|&a| q(a, 5)).collect();
            let n = norm(&add(&x, s));
            if n <= *bound {
                out.push((x, n));
            }
            return;
        }
        for v in centers[i] - r..=centers[i] + r {
            if v.rem_euclid(5) == c {
                y[i] = v;
                rec(i + 1, c, r, centers, s, bound, y, out);
            }
        }
    }
    rec(0, c, r, &centers, s, bound, &mut y, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Minimal-norm representative of each class of `A_4^*/A_4`.
pub fn coset_minima() -> Vec<(Vec<Q>, Q)> {
    let zero = vec![Q::zero(); BLOCK];
    (0..5).map(|c| coset_vectors(c, &zero, &qi(2))[0].clone()).collect()
}

/// A code over `ℤ/5` of length 6.
#[derive(Clone, Debug)]
pub struct GlueCode {
    pub words: BTreeSet<[u8; 6]>,
    /// Rank over `ℤ/5` of the generator rows.
    pub row_rank: usize,
}

impl GlueCode {
    pub fn contains(&self, w: &[u8; 6]) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn rank_mod5(rows: &[[u8; 6]]) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let mut rank = 0;
    for col in 0..6 {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] % 5 != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = (1..5).find(|&t| (m[rank][col] * t).rem_euclid(5) == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(5);
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..6 {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(5);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Additive closure of the generator rows; must have 125 words.
pub fn build_glue_code() -> Result<GlueCode> {
    let mut words = BTreeSet::from([[0u8; 6]]);
    loop {
        let mut next = words.clone();
        for w in &words {
            for g in &GENERATORS {
                let mut s = [0u8; 6];
                for i in 0..6 {
                    s[i] = (w[i] + g[i]) % 5;
                }
                next.insert(s);
            }
        }
        if next.len() == words.len() {
            break;
        }
        words = next;
    }
    if words.len() != 125 {
        return Err(Error::Inconsistent(format!("glue code has {} words, expected 125", words.len())));
    }
    Ok(GlueCode {
        words,
        row_rank: rank_mod5(&GENERATORS),
    })
}

/// Echelon basis of the integer row span.
pub fn hermite_rows(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncol = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..ncol {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let f = rows[i][col] / rows[p][col];
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= f * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.swap_remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    // Reduce entries above each pivot.
    for k in 0..out.len() {
        let col = out[k].iter().position(|&x| x != 0).unwrap();
        for i in 0..k {
            let f = out[i][col].div_euclid(out[k][col]);
            if f != 0 {
                let pr = out[k].clone();
                for (x, y) in out[i].iter_mut().zip(&pr) {
                    *x -= f * y;
                }
            }
        }
    }
    out
}

fn to_scaled_ints(v: &[Q], s: i64) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| to_i64(&(x * qi(s))).ok_or_else(|| Error::Inconsistent(format!("{x} not in (1/{s})ℤ"))))
        .collect()
}

fn lattice_basis(gens: &[Vec<Q>], s: i64) -> Result<Vec<Vec<Q>>> {
    let rows = gens.iter().map(|g| to_scaled_ints(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(hermite_rows(rows)
        .into_iter()
        .map(|r| r.iter().map(|&x| q(x, s)).collect())
        .collect())
}

fn gram(basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect()
}

/// The lattice `N = ⋃_{c ∈ C} (A_4^6 + (c_1 Λ, …, c_6 Λ))`.
#[derive(Clone, Debug)]
pub struct NiemeierLattice {
    pub glue: GlueCode,
    pub basis: Vec<Vec<Q>>,
    pub gram: Vec<Vec<Q>>,
    pub root_count: usize,
}

fn glue_vector(w: &[u8; 6]) -> Vec<Q> {
    let l = lambda();
    w.iter().flat_map(|&g| scale(&l, &qi(g as i64))).collect()
}

/// Builds `N` and checks that it is even, unimodular and has 120 roots.
pub fn build_niemeier() -> Result<NiemeierLattice> {
    let glue = build_glue_code()?;
    let mut gens = Vec::new();
    for b in 0..BLOCKS {
        for i in 1..=4 {
            let mut v = vec![Q::zero(); DIM];
            v[b * BLOCK..(b + 1) * BLOCK].clone_from_slice(&alpha(i));
            gens.push(v);
        }
    }
    gens.extend(GENERATORS.iter().map(glue_vector));
    let basis = lattice_basis(&gens, 5)?;
    if basis.len() != 24 {
        return Err(Error::Inconsistent(format!("lattice rank {}", basis.len())));
    }
    let g = gram(&basis);
    for (i, row) in g.iter().enumerate() {
        if row.iter().any(|x| !x.is_integer()) {
            return Err(Error::Inconsistent("Gram matrix is not integral".into()));
        }
        if !(to_i64(&row[i]).unwrap() % 2 == 0) {
            return Err(Error::Inconsistent("lattice is not even".into()));
        }
    }
    let det = determinant(&g);
    if det != Q::one() {
        return Err(Error::Inconsistent(format!("Gram determinant {det}")));
    }
    let mut n = NiemeierLattice {
        glue,
        basis,
        gram: g,
        root_count: 0,
    };
    let roots = n.short_vectors(&qi(2));
    if roots.iter().any(|(_, m)| *m != qi(2)) {
        return Err(Error::Inconsistent("nonzero vector of norm below 2".into()));
    }
    n.root_count = roots.len();
    if n.root_count != 120 {
        return Err(Error::Inconsistent(format!("{} roots, expected 120", n.root_count)));
    }
    Ok(n)
}

impl NiemeierLattice {
    pub fn codeword(&self, v: &[Q]) -> Option<[u8; 6]> {
        if v.len() != DIM {
            return None;
        }
        let mut w = [0u8; 6];
        for (b, x) in w.iter_mut().enumerate() {
            *x = dual_class(block(v, b))?;
        }
        Some(w)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.codeword(v).is_some_and(|w| self.glue.contains(&w))
    }

    /// Nonzero vectors `α + s` with `α ∈ N` and norm at most `bound`, by
    /// per-block budgeting over the codewords.
    pub fn shifted_vectors(&self, s: &[Q], bound: &Q) -> Vec<(Vec<Q>, Q)> {
        let per: Vec<Vec<Vec<(Vec<Q>, Q)>>> = (0..BLOCKS)
            .map(|b| (0..5).map(|c| coset_vectors(c, block(s, b), bound)).collect())
            .collect();
        let mut out = Vec::new();
        for w in &self.glue.words {
            let lists: Vec<&Vec<(Vec<Q>, Q)>> = (0..BLOCKS).map(|b| &per[b][w[b] as usize]).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            let mins: Vec<Q> = lists.iter().map(|l| l[0].1.clone()).collect();
            let mut suffix = vec![Q::zero(); BLOCKS + 1];
            for b in (0..BLOCKS).rev() {
                suffix[b] = &suffix[b + 1] + &mins[b];
            }
            let mut cur: Vec<Q> = Vec::with_capacity(DIM);
            fn rec(
                b: usize,
                used: Q,
                lists: &[&Vec<(Vec<Q>, Q)>],
                suffix: &[Q],
                bound: &Q,
                cur: &mut Vec<Q>,
                out: &mut Vec<(Vec<Q>, Q)>,
            ) {
                if b == BLOCKS {
                    out.push((cur.clone(), used));
                    return;
                }
                for (x, n) in lists[b] {
                    let u = &used + n;
                    if &u + &suffix[b + 1] > *bound {
                        break;
                    }
                    let len = cur.len();
                    cur.extend(x.iter().cloned());
                    rec(b + 1, u, lists, suffix, bound, cur, out);
                    cur.truncate(len);
                }
            }
            rec(0, Q::zero(), &lists, &suffix, bound, &mut cur, &mut out);
        }
        out.into_iter()
            .map(|(x, n)| (add(&x, s), n))
            .filter(|(v, _)| v.iter().any(|a| !a.is_zero()))
            .collect()
    }

    pub fn short_vectors(&self, bound: &Q) -> Vec<(Vec<Q>, Q)> {
        self.shifted_vectors(&vec![Q::zero(); DIM], bound)
    }

    pub fn dump(&self) -> String {
        let mut s = String::from("# basis\n");
        for r in &self.basis {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s.push_str("# gram\n");
        for r in &self.gram {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

/// Least `|x + s|²` over class `c`, if at most `bound`.
pub fn coset_min(c: u8, s: &[Q], bound: &Q) -> Option<Q> {
    let mut b = Q::one().min(bound.clone());
    loop {
        if let Some((_, m)) = coset_vectors(c, s, &b).into_iter().next() {
            return Some(m);
        }
        if b >= *bound {
            return None;
        }
        b = (b * qi(2)).min(bound.clone());
    }
}

/// Minimum of `|α + s|²` over `α ∈ N`, if some value is at most `bound`.
pub fn min_norm_shifted(n: &NiemeierLattice, s: &[Q], bound: &Q) -> Result<Option<Q>> {
    if s.len() != DIM {
        return Err(Error::Length { expected: DIM, got: s.len() });
    }
    let mut memo: HashMap<(u8, Vec<Q>), Option<Q>> = HashMap::new();
    let mut best: Option<Q> = None;
    'words: for w in &n.glue.words {
        let mut total = Q::zero();
        for b in 0..BLOCKS {
            let key = (w[b], block(s, b).to_vec());
            let m = memo
                .entry(key)
                .or_insert_with(|| coset_min(w[b], block(s, b), bound));
            match m {
                Some(m) => total += &*m,
                None => continue 'words,
            }
        }
        if total <= *bound && best.as_ref().is_none_or(|b| total < *b) {
            best = Some(total);
        }
    }
    Ok(best)
}

/// `τ_0`: fixes block 1 and sends block `i` to block `i+1` for
/// `i = 2, …, 6` cyclically.
pub fn tau0(v: &[Q]) -> Vec<Q> {
    let mut out = v.to_vec();
    for b in 1..BLOCKS {
        let to = if b == BLOCKS - 1 { 1 } else { b + 1 };
        out[to * BLOCK..(to + 1) * BLOCK].clone_from_slice(block(v, b));
    }
    out
}

/// Orthogonal projection onto the `τ_0`-fixed subspace.
pub fn project_fixed_raw(v: &[Q]) -> Vec<Q> {
    let mut out = v.to_vec();
    for i in 0..BLOCK {
        let avg: Q = (1..BLOCKS).map(|b| v[b * BLOCK + i].clone()).sum::<Q>() / qi(5);
        for b in 1..BLOCKS {
            out[b * BLOCK + i] = avg.clone();
        }
    }
    out
}

/// Whether `x = (a, b/5, b/5, b/5, b/5, b/5)` with `a ∈ A_4^*`, `b ∈ A_4`.
pub fn in_p0_form(x: &[Q]) -> bool {
    if x.len() != DIM || dual_class(block(x, 0)).is_none() {
        return false;
    }
    let b1 = block(x, 1);
    (2..BLOCKS).all(|b| block(x, b) == b1) && dual_class(&scale(b1, &qi(5))) == Some(0)
}

/// Projection of a lattice vector, checked to land in the expected set.
pub fn project_fixed(n: &NiemeierLattice, v: &[Q]) -> Result<Vec<Q>> {
    if !n.contains(v) {
        return Err(Error::Precondition("vector is not in N".into()));
    }
    let p = project_fixed_raw(v);
    if !in_p0_form(&p) {
        return Err(Error::Inconsistent("projection is outside A_4^* ⊕ diag(A_4/5)".into()));
    }
    Ok(p)
}

/// Checks that `P_0(N)` equals `A_4^* ⊕ {(0, b/5, …, b/5) | b ∈ A_4}` by
/// comparing echelon bases.
pub fn check_p0_image(n: &NiemeierLattice) -> Result<()> {
    let img: Vec<Vec<Q>> = n.basis.iter().map(|v| project_fixed(n, v)).collect::<Result<_>>()?;
    let mut target = Vec::new();
    for j in 1..=4 {
        let mut w = vec![Q::zero(); DIM];
        // ω_j = (5-j, …, 5-j, -j, …, -j)/5.
        for i in 0..BLOCK {
            w[i] = if i < j { q(5 - j as i64, 5) } else { q(-(j as i64), 5) };
        }
        target.push(w);
        let mut b = vec![Q::zero(); DIM];
        for blk in 1..BLOCKS {
            b[blk * BLOCK..(blk + 1) * BLOCK].clone_from_slice(&scale(&alpha(j), &q(1, 5)));
        }
        target.push(b);
    }
    if lattice_basis(&img, 25)? != lattice_basis(&target, 25)? {
        return Err(Error::Inconsistent("P_0(N) differs from the expected lattice".into()));
    }
    Ok(())
}

/// `{a + ε δ^r | a ∈ A_4^*, |a + ε δ^r|² = 2/5}`, one vector per class of
/// `A_4^*/A_4`, listed by class.
pub fn enumerate_s(epsilon: i8, r: u8) -> Result<Vec<Vec<Q>>> {
    let f = shift_f(epsilon, r)?;
    let s = &f[..BLOCK];
    let target = q(2, 5);
    let mut out = Vec::new();
    for c in 0..5 {
        let hits: Vec<Vec<Q>> = coset_vectors(c, s, &target)
            .into_iter()
            .filter(|(_, m)| *m == target)
            .map(|(x, _)| add(&x, s))
            .collect();
        if hits.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "class {c} has {} solutions for (ε, r) = ({epsilon}, {r})",
                hits.len()
            )));
        }
        out.extend(hits);
    }
    Ok(out)
}

/// `(1/4) Σ_j m_j (j/n)(1 - j/n)`, the ground-state weight of a twisted
/// Heisenberg module where `ζ_n^j` has multiplicity `m_j`.
pub fn twist_anomaly(n: u32, m: &[u32]) -> Q {
    let n = n as i64;
    m.iter()
        .enumerate()
        .map(|(i, &mj)| {
            let j = i as i64 + 1;
            qi(mj as i64) * q(j, n) * (Q::one() - q(j, n))
        })
        .sum::<Q>()
        / qi(4)
}

/// Eigenvalue multiplicities of `τ_0^k` on `ℂ ⊗ N`, for `ζ_5^j`, `j = 1..4`.
pub fn tau0_multiplicities() -> Vec<u32> {
    vec![4; 4]
}

/// Weight-one data of one twisted sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedWeightOne {
    pub dimension: usize,
    /// The vectors `x + ε f^r`.
    pub weights: Vec<Vec<Q>>,
}

/// Grid step used for the weights of the twisted Heisenberg space.
pub fn ell_step() -> Q {
    q(1, 15)
}

/// Solves `ℓ + |x + ε f^r|²/2 + 4/5 = 1` with `x ∈ P_0(N)`.
pub fn twisted_weight_one(epsilon: i8, r: u8) -> Result<TwistedWeightOne> {
    let f = shift_f(epsilon, r)?;
    let s = f[..BLOCK].to_vec();
    let anomaly = twist_anomaly(5, &tau0_multiplicities());
    let budget = Q::one() - &anomaly;
    let zero = vec![Q::zero(); BLOCK];
    let mut weights = Vec::new();
    let mut ell = Q::zero();
    while ell <= budget {
        // |a + εδ|² + |b|²/5 = 2(budget - ℓ).
        let t = qi(2) * (&budget - &ell);
        for (b, nb) in coset_vectors(0, &zero, &(&t * qi(5))) {
            let rest = &t - &nb / qi(5);
            for c in 0..5 {
                for (a, na) in coset_vectors(c, &s, &rest) {
                    if na != rest {
                        continue;
                    }
                    if !ell.is_zero() || b.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Unsupported(format!(
                            "solution with ℓ = {ell}, b ≠ 0 needs twisted Heisenberg multiplicities"
                        )));
                    }
                    let mut w = add(&a, &s);
                    w.resize(DIM, Q::zero());
                    weights.push(w);
                }
            }
        }
        ell += ell_step();
    }
    weights.sort();
    Ok(TwistedWeightOne {
        dimension: weights.len(),
        weights,
    })
}

/// Lowest weights of the `σ_h`-twisted sectors.
#[derive(Clone, Debug)]
pub struct LowestWeights {
    /// `min |α + h|²/2` over `α ∈ N`.
    pub untwisted: Q,
    /// `4/5 + min |x + ε f^r + h|²/2` over `x ∈ P_0(N)`, per `(ε, r)`.
    pub twisted: Vec<((i8, u8), Q)>,
    /// Least element of `(1/2)ℤ` bounding every sector from below.
    pub half_integral_min: Q,
}

fn ceil_half(x: &Q) -> Q {
    let t = (x * qi(2)).ceil();
    t / qi(2)
}

/// Minimum of `|x + s|²` over `x ∈ A_4^*` (any class).
fn min_dual(s: &[Q], bound: &Q) -> Option<Q> {
    (0..5).filter_map(|c| coset_min(c, s, bound)).min()
}

pub fn lowest_weights(n: &NiemeierLattice, h: &[Q]) -> Result<LowestWeights> {
    if tau0(h) != h {
        return Err(Error::Precondition("h is not fixed by τ_0".into()));
    }
    let bound = qi(4);
    let m = min_norm_shifted(n, h, &bound)?
        .ok_or_else(|| Error::Inconsistent("no vector of N + h within the search bound".into()))?;
    let untwisted = m / qi(2);
    let anomaly = twist_anomaly(5, &tau0_multiplicities());
    let mut twisted = Vec::new();
    // P_0(N) = A_4^* ⊕ diag(A_4/5), so the two parts are minimized apart.
    let tail = scale(block(h, 1), &qi(5));
    let m_tail = coset_min(0, &tail, &qi(25))
        .map(|m| m / qi(5))
        .ok_or_else(|| Error::Inconsistent("empty search".into()))?;
    for (e, r) in all_shifts() {
        let f = shift_f(e, r)?;
        let s = add(&f[..BLOCK], block(h, 0));
        let m1 = min_dual(&s, &bound).ok_or_else(|| Error::Inconsistent("empty search".into()))?;
        twisted.push(((e, r), &anomaly + (m1 + &m_tail) / qi(2)));
    }
    let raw = twisted.iter().map(|x| &x.1).chain([&untwisted]).min().unwrap().clone();
    Ok(LowestWeights {
        untwisted,
        twisted,
        half_integral_min: ceil_half(&raw),
    })
}

/// Roots of the weight-one Lie algebra of the orbifold by `g`, in the
/// fixed subspace: the twisted-sector weights in block 1 and
/// `(0, α/5, …, α/5)` for roots `α` of `A_4`.
pub fn weight_one_roots() -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for (e, r) in all_shifts() {
        for s in enumerate_s(e, r)? {
            let mut v = s;
            v.resize(DIM, Q::zero());
            out.push(v);
        }
    }
    let zero = vec![Q::zero(); BLOCK];
    for (a, _) in coset_vectors(0, &zero, &qi(2)).into_iter().filter(|x| x.1 == qi(2)) {
        let mut v = vec![Q::zero(); BLOCK];
        for _ in 1..BLOCKS {
            v.extend(scale(&a, &q(1, 5)));
        }
        out.push(v);
    }
    Ok(out)
}

fn shape_of(roots: &[Vec<Q>], rank: usize) -> Result<SemisimpleShape> {
    let id: Vec<Vec<Q>> = (0..DIM)
        .map(|i| (0..DIM).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut ideals = Vec::new();
    let mut used = 0;
    for c in classify_roots(roots, &id)? {
        let k = qi(2) / &c.long_norm;
        let k = to_i64(&k)
            .filter(|k| *k > 0)
            .ok_or_else(|| Error::Inconsistent(format!("long norm {} gives no level", c.long_norm)))?;
        ideals.push((c.ty, k as u32));
        used += c.ty.rank();
    }
    Ok(SemisimpleShape::new(ideals, rank - used))
}

/// Shape of the weight-one Lie algebra of the orbifold by `g`, of rank 8.
pub fn orbifold_shape() -> Result<SemisimpleShape> {
    shape_of(&weight_one_roots()?, 8)
}

/// `(α_i|Λ)` and `(β_i|Λ')` for `i = 1..4`.
pub fn pairing_pattern() -> (Vec<Q>, Vec<Q>) {
    (
        (1..=4).map(|i| dot(&alpha(i), &lambda())).collect(),
        (1..=4).map(|i| dot(&beta(i), &lambda_prime())).collect(),
    )
}

/// Fixed subalgebra of `σ_h` on the weight-one space, after checking the
/// pairing pattern `δ_{i,4}`.
pub fn fixed_shape_a45(h: &[Q]) -> Result<SemisimpleShape> {
    let (pa, pb) = pairing_pattern();
    let delta4: Vec<Q> = (1..=4).map(|i| if i == 4 { Q::one() } else { Q::zero() }).collect();
    if pa != delta4 || pb != delta4 {
        return Err(Error::Inconsistent(format!("pairing pattern {pa:?} / {pb:?}")));
    }
    let fixed: Vec<Vec<Q>> = weight_one_roots()?
        .into_iter()
        .filter(|v| dot(v, h).is_integer())
        .collect();
    shape_of(&fixed, 8)
}

/// With the form divided by 5 on block 1, the vectors `5β_i` have norm 2
/// and Cartan matrix of type `A_4`.
pub fn level_normalization() -> Vec<Vec<Q>> {
    (1..=4)
        .map(|i| {
            (1..=4)
                .map(|j| dot(&scale(&beta(i), &qi(5)), &scale(&beta(j), &qi(5))) / qi(5))
                .collect()
        })
        .collect()
}
