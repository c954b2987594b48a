//! Fixed-point subalgebras of inner automorphisms, twisted-sector roots and
//! the identification of the orbifold weight-one Lie algebra.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::affine::{HVector, ProductAlgebra};
use crate::error::{Error, Result};
use crate::rational::{dot, is_half_integral, q, qi, to_i64, Q};
use crate::rootsys::{datum, label_string, SimpleType, WeightVec};

/// A reductive Lie algebra given by its simple ideals with levels and the
/// dimension of its center.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleShape {
    ideals: Vec<(SimpleType, u32)>,
    center_dim: usize,
}

fn ideal_key(x: &(SimpleType, u32)) -> (Reverse<usize>, SimpleType, u32) {
    (Reverse(x.0.dim()), x.0, x.1)
}

impl SemisimpleShape {
    pub fn new(mut ideals: Vec<(SimpleType, u32)>, center_dim: usize) -> SemisimpleShape {
        ideals.sort_by_key(ideal_key);
        SemisimpleShape { ideals, center_dim }
    }

    pub fn ideals(&self) -> &[(SimpleType, u32)] {
        &self.ideals
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    pub fn dim(&self) -> usize {
        self.ideals.iter().map(|x| x.0.dim()).sum::<usize>() + self.center_dim
    }

    pub fn rank(&self) -> usize {
        self.ideals.iter().map(|x| x.0.rank()).sum::<usize>() + self.center_dim
    }
}

impl fmt::Display for SemisimpleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.ideals.len() {
            let mut j = i;
            while j < self.ideals.len() && self.ideals[j] == self.ideals[i] {
                j += 1;
            }
            let (t, k) = self.ideals[i];
            write!(f, "{}_{{{},{}}}", t.letter().as_char(), t.rank(), k)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        match self.center_dim {
            0 if self.ideals.is_empty() => write!(f, "0"),
            0 => Ok(()),
            1 => write!(f, "U(1)"),
            c => write!(f, "U(1)^{c}"),
        }
    }
}

impl FromStr for SemisimpleShape {
    type Err = Error;

    /// Parses `D_{5,3}A_{1,1}^2A_{1,3}^2G_{2,1}U(1)` or `D5:3 A1:1^2 U(1)`.
    fn from_str(s: &str) -> Result<SemisimpleShape> {
        let bad = || Error::Parse(format!("bad shape {s:?}"));
        let c: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<u64> {
            while *i < c.len() && matches!(c[*i], '_' | '{' | '}' | '^' | ':' | ',') {
                *i += 1;
            }
            let st = *i;
            while *i < c.len() && c[*i].is_ascii_digit() {
                *i += 1;
            }
            c[st..*i].iter().collect::<String>().parse().ok()
        };
        let exponent = |i: &mut usize| -> Option<u64> {
            let mut j = *i;
            while j < c.len() && c[j] == '}' {
                j += 1;
            }
            if j < c.len() && c[j] == '^' {
                *i = j;
                number(i)
            } else {
                Some(1)
            }
        };
        let mut ideals = Vec::new();
        let mut center = 0usize;
        if c == ['0'] {
            return Ok(SemisimpleShape::new(ideals, 0));
        }
        while i < c.len() {
            if c[i] == 'U' {
                let rest: String = c[i..].iter().take(4).collect();
                if !rest.starts_with("U(1)") {
                    return Err(bad());
                }
                i += 4;
                center += exponent(&mut i).ok_or_else(bad)? as usize;
                continue;
            }
            let letter = crate::rootsys::Letter::from_char(c[i]).ok_or_else(bad)?;
            i += 1;
            let rank = number(&mut i).ok_or_else(bad)? as usize;
            let level = number(&mut i).ok_or_else(bad)? as u32;
            let m = exponent(&mut i).ok_or_else(bad)?;
            while i < c.len() && c[i] == '}' {
                i += 1;
            }
            let t = SimpleType::new(letter, rank)?;
            for _ in 0..m {
                ideals.push((t, level));
            }
        }
        Ok(SemisimpleShape::new(ideals, center))
    }
}

/// An indecomposable piece of a root set.
#[derive(Clone, Debug)]
pub struct Component {
    pub ty: SimpleType,
    /// Indices into the classified vector list.
    pub roots: Vec<usize>,
    /// Simple roots, ordered to match the standard node numbering of `ty`.
    pub simple: Vec<usize>,
    pub long_norm: Q,
}

struct Cat {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
}

fn catalog_cartans() -> &'static [Cat] {
    static C: OnceLock<Vec<Cat>> = OnceLock::new();
    C.get_or_init(|| {
        SimpleType::catalog(crate::rootsys::MAX_RANK)
            .into_iter()
            .map(|ty| {
                let g = ty.simple_gram();
                let cartan = (0..ty.rank())
                    .map(|i| {
                        (0..ty.rank())
                            .map(|j| to_i64(&(qi(2) * &g[i][j] / &g[i][i])).unwrap())
                            .collect()
                    })
                    .collect();
                Cat { ty, cartan }
            })
            .collect()
    })
}

/// Matches a Cartan matrix against the catalog up to relabelling of nodes.
/// Returns the type and, for each catalog node, the matching input node.
pub fn match_cartan(c: &[Vec<i64>]) -> Option<(SimpleType, Vec<usize>)> {
    let n = c.len();
    for cat in catalog_cartans().iter().filter(|x| x.ty.rank() == n) {
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(k: usize, c: &[Vec<i64>], t: &[Vec<i64>], perm: &mut [usize], used: &mut [bool]) -> bool {
            let n = c.len();
            if k == n {
                return true;
            }
            for v in 0..n {
                if used[v] || c[v][v] != t[k][k] {
                    continue;
                }
                if (0..k).all(|j| c[v][perm[j]] == t[k][j] && c[perm[j]][v] == t[j][k]) {
                    perm[k] = v;
                    used[v] = true;
                    if rec(k + 1, c, t, perm, used) {
                        return true;
                    }
                    used[v] = false;
                }
            }
            false
        }
        if rec(0, c, &cat.cartan, &mut perm, &mut used) {
            return Some((cat.ty, perm));
        }
    }
    None
}

fn mat_vec(g: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    g.iter().map(|row| dot(row, v)).collect()
}

fn lex_positive(v: &[Q]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

fn show(v: &[Q]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", s.join(","))
}

/// Splits a finite set of vectors into indecomposable root systems under the
/// form with Gram matrix `gram`, classifying each. Fails with the violating
/// pair when the set is not a root system.
pub fn classify_roots(vecs: &[Vec<Q>], gram: &[Vec<Q>]) -> Result<Vec<Component>> {
    let n = vecs.len();
    let index: HashMap<&[Q], usize> = vecs.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    if index.len() != n {
        return Err(Error::NotRootSystem("repeated vector".into()));
    }
    let neg: Vec<Vec<Q>> = vecs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    for (i, m) in neg.iter().enumerate() {
        if !index.contains_key(m.as_slice()) {
            return Err(Error::NotRootSystem(format!(
                "negative of {} missing",
                show(&vecs[i])
            )));
        }
    }
    let cov: Vec<Vec<Q>> = vecs.iter().map(|v| mat_vec(gram, v)).collect();
    let p: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&cov[i], &vecs[j])).collect())
        .collect();
    for i in 0..n {
        if !p[i][i].is_positive() {
            return Err(Error::NotRootSystem(format!("{} has norm {}", show(&vecs[i]), p[i][i])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = qi(2) * &p[i][j] / &p[j][j];
            if !c.is_integer() {
                return Err(Error::NotRootSystem(format!(
                    "2(a|b)/(b|b) = {c} for a = {}, b = {}",
                    show(&vecs[i]),
                    show(&vecs[j])
                )));
            }
            let r: Vec<Q> = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a - &c * b).collect();
            if !index.contains_key(r.as_slice()) {
                return Err(Error::NotRootSystem(format!(
                    "reflection of {} in {} is missing",
                    show(&vecs[i]),
                    show(&vecs[j])
                )));
            }
        }
    }
    // Components of the non-orthogonality graph.
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        comp[s] = ncomp;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if comp[j] == usize::MAX && !p[i][j].is_zero() {
                    comp[j] = ncomp;
                    queue.push_back(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut out = Vec::new();
    for c in 0..ncomp {
        let roots: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
        let pos: Vec<usize> = roots.iter().copied().filter(|&i| lex_positive(&vecs[i])).collect();
        let mut decomposable = HashSet::new();
        for (a, &i) in pos.iter().enumerate() {
            for &j in &pos[a..] {
                let s: Vec<Q> = vecs[i].iter().zip(&vecs[j]).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(s.as_slice()) {
                    decomposable.insert(k);
                }
            }
        }
        let simple: Vec<usize> = pos.iter().copied().filter(|i| !decomposable.contains(i)).collect();
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| {
                simple
                    .iter()
                    .map(|&j| to_i64(&(qi(2) * &p[i][j] / &p[i][i])).unwrap())
                    .collect()
            })
            .collect();
        let (ty, perm) = match_cartan(&cartan).ok_or_else(|| {
            Error::Classification(format!("no simple type has Cartan matrix {cartan:?}"))
        })?;
        if ty.root_count() != roots.len() {
            return Err(Error::Classification(format!(
                "component of type {ty} has {} roots, expected {}",
                roots.len(),
                ty.root_count()
            )));
        }
        let long_norm = roots.iter().map(|&i| p[i][i].clone()).max().unwrap();
        out.push(Component {
            ty,
            simple: perm.iter().map(|&v| simple[v]).collect(),
            roots,
            long_norm,
        });
    }
    Ok(out)
}

/// Level of a simple subalgebra whose long roots have norm `long_norm` in
/// the normalized form of an ambient ideal of type `Y` at level `k`. Returns
/// the level and whether its long roots are long in the ambient.
pub fn level_for_norm(long_norm: &Q, ambient: (SimpleType, u32)) -> Result<(u32, bool)> {
    let (y, k) = ambient;
    let r = y.length_ratio();
    if *long_norm == qi(2) {
        Ok((k, true))
    } else if r > 1 && *long_norm == q(2, r as i64) {
        Ok((k * r, false))
    } else {
        Err(Error::Inconsistent(format!(
            "root norm {long_norm} does not occur in {y}"
        )))
    }
}

/// A simple subalgebra spanned by root vectors of an ambient product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSubalgebra {
    pub ty: SimpleType,
    pub level: u32,
    pub roots: Vec<HVector>,
    pub simple_roots: Vec<HVector>,
    pub long_in_ambient: bool,
    /// The ambient factor containing the roots, when there is one.
    pub factor: Option<usize>,
}

impl fmt::Display for SeedSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{{{},{}}}",
            self.ty.letter().as_char(),
            self.ty.rank(),
            self.level
        )
    }
}

fn embed_factor(a: &ProductAlgebra, i: usize, v: &[i64]) -> HVector {
    let mut h = a.zero_h();
    h.0[i] = WeightVec::from_ints(v);
    h
}

/// Level of `seed` inside the ambient ideal `(Y, k)` that contains its
/// roots: unchanged when its long roots are long in `Y`, multiplied by the
/// squared-length ratio when they are short.
pub fn level_transfer(seed: &SeedSubalgebra, ambient: (SimpleType, u32)) -> Result<u32> {
    let d = datum(ambient.0);
    let mut long = Q::zero();
    for r in &seed.roots {
        let inside: Vec<&WeightVec> = match seed.factor {
            Some(i) => r.0.iter().enumerate().filter(|(j, w)| *j != i && !w.is_zero()).map(|x| x.1).collect(),
            None => Vec::new(),
        };
        let w = match seed.factor {
            Some(i) if inside.is_empty() => r.0.get(i),
            None if r.0.len() == 1 => r.0.first(),
            _ => None,
        }
        .filter(|w| w.len() == ambient.0.rank())
        .ok_or_else(|| Error::Precondition(format!("seed root {r} is not in the ambient ideal")))?;
        long = long.max(d.form(w, w));
    }
    Ok(level_for_norm(&long, ambient)?.0)
}

/// Roots `α` of the ambient with `(h|α) ∈ ℤ`, decomposed and classified,
/// with levels assigned through [`level_for_norm`].
pub fn fixed_subalgebra(
    a: &ProductAlgebra,
    h: &HVector,
) -> Result<(SemisimpleShape, Vec<SeedSubalgebra>)> {
    let mut seeds = Vec::new();
    for (i, &(t, k)) in a.factors().iter().enumerate() {
        let d = a.datum(i);
        let pairings = d.root_pairings(&h.0[i]);
        if let Some(j) = pairings.iter().position(|p| !is_half_integral(p)) {
            return Err(Error::Precondition(format!(
                "(h|α) = {} is not half-integral for α = {} in factor {}",
                pairings[j],
                label_string(&d.roots()[j]),
                i + 1
            )));
        }
        let fixed: Vec<Vec<i64>> = d
            .roots()
            .iter()
            .zip(&pairings)
            .filter(|(_, p)| p.is_integer())
            .map(|(r, _)| r.clone())
            .collect();
        let vecs: Vec<Vec<Q>> = fixed.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        for c in classify_roots(&vecs, d.fundamental_gram())? {
            let (level, long) = level_for_norm(&c.long_norm, (t, k))?;
            seeds.push(SeedSubalgebra {
                ty: c.ty,
                level,
                roots: c.roots.iter().map(|&j| embed_factor(a, i, &fixed[j])).collect(),
                simple_roots: c.simple.iter().map(|&j| embed_factor(a, i, &fixed[j])).collect(),
                long_in_ambient: long,
                factor: Some(i),
            });
        }
    }
    let ideals: Vec<(SimpleType, u32)> = seeds.iter().map(|s| (s.ty, s.level)).collect();
    let used: usize = ideals.iter().map(|x| x.0.rank()).sum();
    Ok((SemisimpleShape::new(ideals, a.rank() - used), seeds))
}

/// `μ + Σ k_i h_i` for each base weight `μ`.
pub fn twisted_sector_roots(a: &ProductAlgebra, h: &HVector, base: &[HVector]) -> Vec<HVector> {
    let shift = a.level_shift(h);
    base.iter()
        .map(|m| HVector(m.0.iter().zip(&shift.0).map(|(x, y)| x.add(y)).collect()))
        .collect()
}

fn flatten(h: &HVector) -> Vec<Q> {
    h.0.iter().flat_map(|w| w.0.iter().cloned()).collect()
}

fn unflatten(a: &ProductAlgebra, v: &[Q]) -> HVector {
    let mut out = Vec::new();
    let mut o = 0;
    for &(t, _) in a.factors() {
        out.push(WeightVec(v[o..o + t.rank()].to_vec()));
        o += t.rank();
    }
    HVector(out)
}

/// Gram matrix of `Σ_i (x_i|y_i)_i / k_i` on flattened coordinates. A long
/// root of an ideal at level `k` has norm `2/k` in this form.
pub fn level_weighted_gram(a: &ProductAlgebra) -> Vec<Vec<Q>> {
    let n = a.rank();
    let mut g = vec![vec![Q::zero(); n]; n];
    let mut o = 0;
    for (i, &(t, k)) in a.factors().iter().enumerate() {
        let f = a.datum(i).fundamental_gram();
        for x in 0..t.rank() {
            for y in 0..t.rank() {
                g[o + x][o + y] = &f[x][y] / qi(k as i64);
            }
        }
        o += t.rank();
    }
    g
}

pub fn level_weighted_form(a: &ProductAlgebra, x: &HVector, y: &HVector) -> Q {
    (0..a.len())
        .map(|i| a.datum(i).form(&x.0[i], &y.0[i]) / qi(a.factors()[i].1 as i64))
        .sum()
}

/// Combines fixed-sector and twisted-sector roots into one simple root
/// system. Its level is `2 / (long norm)` in the level-weighted form and
/// must agree with the level of a long fixed-sector root it contains.
pub fn assemble_root_subsystem(
    a: &ProductAlgebra,
    fixed_roots: &[HVector],
    twisted_roots: &[HVector],
) -> Result<SeedSubalgebra> {
    let mut all: Vec<HVector> = Vec::new();
    for r in fixed_roots.iter().chain(twisted_roots) {
        if !all.contains(r) {
            all.push(r.clone());
        }
    }
    let vecs: Vec<Vec<Q>> = all.iter().map(flatten).collect();
    let gram = level_weighted_gram(a);
    let comps = classify_roots(&vecs, &gram)?;
    if comps.len() != 1 {
        return Err(Error::Classification(format!(
            "expected one indecomposable component, found {}",
            comps.len()
        )));
    }
    let c = &comps[0];
    let level_q = qi(2) / &c.long_norm;
    let level = to_i64(&level_q)
        .filter(|&l| l > 0)
        .ok_or_else(|| Error::Inconsistent(format!("long norm {} gives level {level_q}", c.long_norm)))?
        as u32;
    let mut witnessed = false;
    for fr in fixed_roots {
        let v = flatten(fr);
        let cv = mat_vec(&gram, &v);
        if dot(&cv, &v) != c.long_norm {
            continue;
        }
        let Some(i) = fr.0.iter().position(|w| !w.is_zero()) else {
            continue;
        };
        let n = a.datum(i).form(&fr.0[i], &fr.0[i]);
        let (k_fixed, _) = level_for_norm(&n, a.factors()[i])?;
        if k_fixed != level {
            return Err(Error::Inconsistent(format!(
                "fixed root {fr} has level {k_fixed}, assembled system has level {level}"
            )));
        }
        witnessed = true;
    }
    if !witnessed && !fixed_roots.is_empty() {
        return Err(Error::Inconsistent("no long fixed root fixes the level".into()));
    }
    Ok(SeedSubalgebra {
        ty: c.ty,
        level,
        roots: c.roots.iter().map(|&i| all[i].clone()).collect(),
        simple_roots: c.simple.iter().map(|&i| unflatten(a, &vecs[i])).collect(),
        long_in_ambient: true,
        factor: None,
    })
}

struct PairTable {
    norms: Vec<i64>,
    p: Vec<Vec<i64>>,
    den: i64,
}

fn pair_table(y: SimpleType) -> Arc<PairTable> {
    static CACHE: OnceLock<Mutex<HashMap<SimpleType, Arc<PairTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&y) {
        return t.clone();
    }
    let d = datum(y);
    let roots = d.roots();
    let p: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| roots.iter().map(|b| d.form_int(a, b)).collect())
        .collect();
    let t = Arc::new(PairTable {
        norms: (0..roots.len()).map(|i| p[i][i]).collect(),
        p,
        den: d.form_denominator(),
    });
    cache.lock().unwrap().entry(y).or_insert(t).clone()
}

/// Gram matrix of the simple roots of `x` scaled so long roots have norm
/// `long_norm`.
fn scaled_gram(x: SimpleType, long_norm: &Q) -> Vec<Vec<Q>> {
    let s = long_norm / qi(2);
    x.simple_gram()
        .iter()
        .map(|r| r.iter().map(|v| v * &s).collect())
        .collect()
}

fn block_diagonal(blocks: &[Vec<Vec<Q>>]) -> Vec<Vec<Q>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut g = vec![vec![Q::zero(); n]; n];
    let mut o = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                g[o + i][o + j] = v.clone();
            }
        }
        o += b.len();
    }
    g
}

type EmbedKey = (Vec<Vec<i64>>, SimpleType, bool);

/// True iff roots of `y` (long roots only when `long_only`) realize the
/// Gram matrix `target`.
pub fn embeds_gram(target: &[Vec<Q>], y: SimpleType, long_only: bool) -> bool {
    let t = pair_table(y);
    let n = target.len();
    if n == 0 {
        return true;
    }
    let mut ti = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            match to_i64(&(&target[i][j] * qi(t.den))) {
                Some(v) => ti[i][j] = v,
                None => return false,
            }
        }
    }
    static CACHE: OnceLock<Mutex<HashMap<EmbedKey, bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (ti.clone(), y, long_only);
    if let Some(&b) = cache.lock().unwrap().get(&key) {
        return b;
    }
    // Place nodes so that each one after the first in its component is
    // adjacent to an earlier node.
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for j in 0..n {
                if !seen[j] && ti[i][j] != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let long = *t.norms.iter().max().unwrap();
    let allowed: Vec<usize> = (0..t.norms.len())
        .filter(|&r| !long_only || t.norms[r] == long)
        .collect();
    let mut chosen = vec![usize::MAX; n];
    fn rec(
        k: usize,
        order: &[usize],
        ti: &[Vec<i64>],
        t: &PairTable,
        allowed: &[usize],
        chosen: &mut [usize],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let node = order[k];
        for &r in allowed {
            if t.norms[r] != ti[node][node] {
                continue;
            }
            if order[..k].iter().all(|&m| t.p[r][chosen[m]] == ti[node][m]) {
                chosen[node] = r;
                if rec(k + 1, order, ti, t, allowed, chosen) {
                    return true;
                }
                // All roots of one length are Weyl conjugate, so the first
                // root may be fixed.
                if k == 0 {
                    return false;
                }
            }
        }
        false
    }
    let found = rec(0, &order, &ti, &t, &allowed, &mut chosen);
    cache.lock().unwrap().insert(key, found);
    found
}

/// Whether the orthogonal sum of the types in `x` occurs as a root
/// subsystem of `y`, either with long roots of `x` long in `y` or, when
/// `long_only` is false, also inside the short roots of `y`.
pub fn embeds(x: &[SimpleType], y: SimpleType, long_only: bool) -> bool {
    let rank: usize = x.iter().map(|t| t.rank()).sum();
    if rank > y.rank() {
        return false;
    }
    // Norms are matched node by node, so long roots of `x` land on long
    // roots of `y` and short on short.
    let long = block_diagonal(&x.iter().map(|&t| scaled_gram(t, &qi(2))).collect::<Vec<_>>());
    if embeds_gram(&long, y, false) {
        return true;
    }
    if long_only || y.is_simply_laced() {
        return false;
    }
    let short_norm = q(2, y.length_ratio() as i64);
    let short = block_diagonal(&x.iter().map(|&t| scaled_gram(t, &short_norm)).collect::<Vec<_>>());
    embeds_gram(&short, y, false)
}

/// Candidate simple ideals `(Y, k)` with `h∨(Y) = ratio · k`.
pub fn candidate_ideals(rank_budget: usize, dim_target: usize, ratio: &Q) -> Vec<(SimpleType, u32)> {
    SimpleType::catalog(rank_budget)
        .into_iter()
        .filter(|t| t.dim() <= dim_target)
        .filter_map(|t| {
            let k = qi(t.dual_coxeter() as i64) / ratio;
            to_i64(&k).filter(|&k| k > 0).map(|k| (t, k as u32))
        })
        .collect()
}

/// Long-root norm a seed at level `ks` would have inside an ideal `(Y, k)`,
/// if it can sit there at all.
fn seed_norm(seed: (SimpleType, u32), ideal: (SimpleType, u32)) -> Option<Q> {
    let (x, ks) = seed;
    let (y, k) = ideal;
    let r = y.length_ratio();
    if ks == k {
        Some(qi(2))
    } else if r > 1 && ks == r * k && x.is_simply_laced() {
        Some(q(2, r as i64))
    } else {
        None
    }
}

fn seeds_fit(ideal: (SimpleType, u32), seeds: &[(SimpleType, u32)]) -> bool {
    let mut blocks = Vec::new();
    for &s in seeds {
        match seed_norm(s, ideal) {
            Some(n) => blocks.push(scaled_gram(s.0, &n)),
            None => return false,
        }
    }
    let rank: usize = seeds.iter().map(|s| s.0.rank()).sum();
    rank <= ideal.0.rank() && embeds_gram(&block_diagonal(&blocks), ideal.0, false)
}

fn assignment_exists(ideals: &[(SimpleType, u32)], seeds: &[(SimpleType, u32)]) -> bool {
    let mut groups: Vec<Vec<(SimpleType, u32)>> = vec![Vec::new(); ideals.len()];
    fn rec(
        s: usize,
        ideals: &[(SimpleType, u32)],
        seeds: &[(SimpleType, u32)],
        groups: &mut Vec<Vec<(SimpleType, u32)>>,
    ) -> bool {
        if s == seeds.len() {
            return true;
        }
        let mut tried = BTreeSet::new();
        for j in 0..ideals.len() {
            // Identical ideals holding identical seed groups are interchangeable.
            if !tried.insert((ideals[j], groups[j].clone())) {
                continue;
            }
            groups[j].push(seeds[s]);
            if seeds_fit(ideals[j], &groups[j]) && rec(s + 1, ideals, seeds, groups) {
                return true;
            }
            groups[j].pop();
        }
        false
    }
    rec(0, ideals, seeds, &mut groups)
}

/// All semisimple shapes of total rank `rank_budget` and dimension
/// `dim_target` whose ideals satisfy `h∨ = ratio · k` with
/// `ratio = (dim - 24)/24`, and into which every seed `(type, level)`
/// embeds according to the level rules.
pub fn identify(
    rank_budget: usize,
    dim_target: usize,
    seeds: &[(SimpleType, u32)],
) -> Result<Vec<SemisimpleShape>> {
    if dim_target <= 24 {
        return Err(Error::Precondition("dimension must exceed 24".into()));
    }
    let ratio = q(dim_target as i64 - 24, 24);
    let cands = candidate_ideals(rank_budget, dim_target, &ratio);
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn rec(
        i: usize,
        rank: usize,
        dim: usize,
        cands: &[(SimpleType, u32)],
        cur: &mut Vec<(SimpleType, u32)>,
        seeds: &[(SimpleType, u32)],
        out: &mut BTreeSet<SemisimpleShape>,
    ) {
        if rank == 0 && dim == 0 {
            if assignment_exists(cur, seeds) {
                out.insert(SemisimpleShape::new(cur.clone(), 0));
            }
            return;
        }
        for j in i..cands.len() {
            let (t, _) = cands[j];
            if t.rank() <= rank && t.dim() <= dim {
                cur.push(cands[j]);
                rec(j, rank - t.rank(), dim - t.dim(), cands, cur, seeds, out);
                cur.pop();
            }
        }
    }
    rec(0, rank_budget, dim_target, &cands, &mut cur, seeds, &mut out);
    if out.is_empty() {
        return Err(Error::Classification(format!(
            "no shape of rank {rank_budget} and dimension {dim_target} accommodates the seeds"
        )));
    }
    Ok(out.into_iter().collect())
}

/// An ambient affine algebra with an inner automorphism `σ_h` and the
/// shapes expected for the fixed subalgebra and the orbifold.
#[derive(Clone, Debug)]
pub struct OrbifoldScenario {
    pub name: String,
    pub ambient: ProductAlgebra,
    pub h: HVector,
    pub expected_fixed: SemisimpleShape,
    pub expected_result: SemisimpleShape,
    pub rank: usize,
}

impl OrbifoldScenario {
    pub fn new(
        name: &str,
        ambient: ProductAlgebra,
        h: HVector,
        expected_fixed: SemisimpleShape,
        expected_result: SemisimpleShape,
    ) -> Result<OrbifoldScenario> {
        ambient.hh(&h)?;
        let rank = ambient.rank();
        for (what, s) in [("fixed", &expected_fixed), ("result", &expected_result)] {
            if s.rank() != rank {
                return Err(Error::Precondition(format!(
                    "{what} shape {s} has rank {}, ambient has rank {rank}",
                    s.rank()
                )));
            }
        }
        Ok(OrbifoldScenario {
            name: name.to_string(),
            ambient,
            h,
            expected_fixed,
            expected_result,
            rank,
        })
    }
}

/// The 4×4 S-matrix on `U^{(0,0)}, U^{(0,s)}, U^{(h,0)}, U^{(h,s)}`.
pub fn s_matrix(a: i64) -> Result<Vec<Vec<Q>>> {
    if a != 1 && a != -1 {
        return Err(Error::Precondition(format!("a must be ±1, got {a}")));
    }
    let rows = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, a, -a], [1, -1, -a, a]];
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|&x| q(x, 2)).collect())
        .collect())
}

/// Fusion rules `N[P][Q][R]` from the Verlinde formula, with the checks
/// `S² = 1`, integrality, nonnegativity and the self-dual simple-current
/// property.
pub fn verlinde_simple_current(a: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    let s = s_matrix(a)?;
    for i in 0..4 {
        for j in 0..4 {
            let v: Q = (0..4).map(|k| &s[i][k] * &s[k][j]).sum();
            let want = if i == j { Q::one() } else { Q::zero() };
            if v != want {
                return Err(Error::Inconsistent(format!("S² has entry {v} at ({i},{j})")));
            }
        }
    }
    let mut n = vec![vec![vec![0i64; 4]; 4]; 4];
    for p in 0..4 {
        for qq in 0..4 {
            for r in 0..4 {
                let v: Q = (0..4)
                    .map(|x| &s[p][x] * &s[qq][x] * &s[r][x] / &s[0][x])
                    .sum();
                let iv = to_i64(&v).filter(|&x| x >= 0).ok_or_else(|| {
                    Error::Inconsistent(format!("fusion number N[{p}][{qq}][{r}] = {v}"))
                })?;
                n[p][qq][r] = iv;
            }
        }
    }
    for p in 0..4 {
        for r in 0..4 {
            if n[p][p][r] != i64::from(r == 0) {
                return Err(Error::Inconsistent(format!("module {p} is not a self-dual simple current")));
            }
        }
        for qq in 0..4 {
            if n[p][qq].iter().sum::<i64>() != 1 {
                return Err(Error::Inconsistent(format!("fusion of {p} and {qq} is not irreducible")));
            }
        }
    }
    Ok(n)
}
