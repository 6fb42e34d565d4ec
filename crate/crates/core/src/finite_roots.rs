//! Exact realizations of the finite root systems `A`–`G` and `BC_n`.
//!
//! Coordinates are stored doubled in the ε-basis so that half-integer
//! entries (the `F4` and `E` series) stay integral. Each standard type has a
//! fixed ordered simple system; arbitrary subsystems get a deterministic one
//! from the lexicographic positive system.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::labels::{Family, FiniteTypeLabel, TypeSum};

/// Largest ambient dimension used by any realization (`A8` lives in 9).
pub const MAX_DIM: usize = 9;

/// A nonzero vector in doubled ε-coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRoot {
    dim: u8,
    c: [i16; MAX_DIM],
}

impl FiniteRoot {
    /// Builds a root from doubled coordinates, rejecting the zero vector.
    pub fn new(coords2: &[i64]) -> Result<Self> {
        if coords2.is_empty() || coords2.len() > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "ambient dimension {} outside 1..={}",
                coords2.len(),
                MAX_DIM
            )));
        }
        let mut c = [0i16; MAX_DIM];
        for (slot, &x) in c.iter_mut().zip(coords2) {
            *slot = i16::try_from(x).map_err(|_| Error::InvalidParameter(format!("coordinate {} out of range", x)))?;
        }
        let r = FiniteRoot { dim: coords2.len() as u8, c };
        if r.is_zero() {
            return Err(Error::ZeroRoot);
        }
        Ok(r)
    }

    /// The vector `ε_i` (0-based `i`) in a `dim`-dimensional space.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0i64; dim];
        v[i] = 2;
        FiniteRoot::new(&v).expect("unit vector")
    }

    /// Builds from undoubled integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        let v: Vec<i64> = coords.iter().map(|x| 2 * x).collect();
        FiniteRoot::new(&v)
    }

    fn raw(dim: usize, c: [i16; MAX_DIM]) -> Option<Self> {
        let r = FiniteRoot { dim: dim as u8, c };
        (!r.is_zero()).then_some(r)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Doubled coordinates.
    pub fn coords2(&self) -> &[i16] {
        &self.c[..self.dim()]
    }

    /// Doubled coordinates widened to `i64`.
    pub fn coords2_vec(&self) -> Vec<i64> {
        self.coords2().iter().map(|&x| x as i64).collect()
    }

    /// Sum, or `None` when it vanishes.
    pub fn add(&self, o: &FiniteRoot) -> Option<FiniteRoot> {
        self.lincomb(1, o, 1)
    }

    /// Difference, or `None` when it vanishes.
    pub fn sub(&self, o: &FiniteRoot) -> Option<FiniteRoot> {
        self.lincomb(1, o, -1)
    }

    /// `a·self + b·o`, or `None` when it vanishes.
    pub fn lincomb(&self, a: i64, o: &FiniteRoot, b: i64) -> Option<FiniteRoot> {
        debug_assert_eq!(self.dim, o.dim);
        let mut c = [0i16; MAX_DIM];
        for (i, slot) in c.iter_mut().enumerate().take(self.dim()) {
            *slot = (a * self.c[i] as i64 + b * o.c[i] as i64) as i16;
        }
        FiniteRoot::raw(self.dim(), c)
    }

    /// Integer multiple, or `None` for `k = 0`.
    pub fn scale(&self, k: i64) -> Option<FiniteRoot> {
        let mut c = [0i16; MAX_DIM];
        for (i, slot) in c.iter_mut().enumerate().take(self.dim()) {
            *slot = (k * self.c[i] as i64) as i16;
        }
        FiniteRoot::raw(self.dim(), c)
    }

    /// Negation.
    pub fn neg(&self) -> FiniteRoot {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = -*x;
        }
        FiniteRoot { dim: self.dim, c }
    }

    /// Four times the Euclidean inner product (both sides are doubled).
    pub fn dot4(&self, o: &FiniteRoot) -> i64 {
        self.coords2().iter().zip(o.coords2()).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    /// Four times the squared length.
    pub fn norm4(&self) -> i64 {
        self.dot4(self)
    }

    /// Lexicographic positivity: the first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.coords2().iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// Sum of `coeffs[i]·basis[i]`, or `None` when it vanishes.
    pub fn combine(dim: usize, coeffs: &[i64], basis: &[FiniteRoot]) -> Option<FiniteRoot> {
        let mut acc = [0i64; MAX_DIM];
        for (k, b) in coeffs.iter().zip(basis) {
            for (i, slot) in acc.iter_mut().enumerate().take(dim) {
                *slot += k * b.c[i] as i64;
            }
        }
        let mut c = [0i16; MAX_DIM];
        for i in 0..dim {
            c[i] = acc[i] as i16;
        }
        FiniteRoot::raw(dim, c)
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &x) in self.coords2().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if x % 2 == 0 {
                write!(f, "{}", x / 2)?;
            } else {
                write!(f, "{}/2", x)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FiniteRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords2_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteRoot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        FiniteRoot::new(&v).map_err(serde::de::Error::custom)
    }
}

/// `⟨β, α∨⟩ = 2(β,α)/(α,α)`.
pub fn pairing(beta: &FiniteRoot, alpha: &FiniteRoot) -> Result<i64> {
    if beta.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch(beta.dim(), alpha.dim()));
    }
    let den = alpha.norm4();
    if den == 0 {
        return Err(Error::ZeroRoot);
    }
    let num = 2 * beta.dot4(alpha);
    if num % den != 0 {
        return Err(Error::NonIntegralPairing);
    }
    Ok(num / den)
}

/// `s_α(β) = β − ⟨β, α∨⟩α`.
pub fn reflect(alpha: &FiniteRoot, beta: &FiniteRoot) -> Result<FiniteRoot> {
    let k = pairing(beta, alpha)?;
    Ok(beta.lincomb(1, alpha, -k).expect("reflection of a nonzero vector is nonzero"))
}

/// A finite root system: a set of roots closed under negation and
/// reflections, with an ordered simple system and its type.
#[derive(Clone)]
pub struct FiniteRootSystem {
    dim: usize,
    label: TypeSum,
    roots: Vec<FiniteRoot>,
    index: HashMap<FiniteRoot, usize>,
    simple: Vec<FiniteRoot>,
    coeffs: Vec<Vec<i64>>,
}

impl PartialEq for FiniteRootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.roots == o.roots
    }
}

impl Eq for FiniteRootSystem {}

impl fmt::Debug for FiniteRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRootSystem({}, {} roots)", self.label, self.roots.len())
    }
}

impl Serialize for FiniteRootSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiniteRootSystem", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("simple_system", &self.simple)?;
        st.serialize_field("roots", &self.roots)?;
        st.end()
    }
}

impl FiniteRootSystem {
    /// Generates the roots as the Weyl orbit of `simple ∪ extra`, keeping the
    /// given simple order. `extra` carries the long roots `2ε_i` of `BC_n`.
    fn from_simple(dim: usize, simple: Vec<FiniteRoot>, extra: &[(FiniteRoot, Vec<i64>)]) -> Self {
        let r = simple.len();
        let mut coeff: HashMap<FiniteRoot, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        let push = |v: FiniteRoot, c: Vec<i64>, coeff: &mut HashMap<_, _>, q: &mut VecDeque<_>| {
            if let std::collections::hash_map::Entry::Vacant(e) = coeff.entry(v) {
                e.insert(c);
                q.push_back(v);
            }
        };
        for (i, s) in simple.iter().enumerate() {
            let mut c = vec![0; r];
            c[i] = 1;
            push(*s, c, &mut coeff, &mut queue);
        }
        for (v, c) in extra {
            push(*v, c.clone(), &mut coeff, &mut queue);
        }
        while let Some(v) = queue.pop_front() {
            let cv = coeff[&v].clone();
            for (j, s) in simple.iter().enumerate() {
                let k = pairing(&v, s).expect("integral pairing in a root system");
                if k == 0 {
                    continue;
                }
                let w = v.lincomb(1, s, -k).expect("nonzero");
                let mut cw = cv.clone();
                cw[j] -= k;
                push(w, cw, &mut coeff, &mut queue);
            }
        }
        let mut roots: Vec<FiniteRoot> = coeff.keys().copied().collect();
        roots.sort();
        let coeffs = roots.iter().map(|v| coeff[v].clone()).collect();
        let mut sys = FiniteRootSystem {
            dim,
            label: TypeSum::default(),
            index: roots.iter().enumerate().map(|(i, v)| (*v, i)).collect(),
            roots,
            simple,
            coeffs,
        };
        sys.label = sys.recognize().expect("standard realization is recognizable");
        sys
    }

    /// Builds a subsystem from an explicit root set. The set must be closed
    /// under negation and reflections; the simple system is the set of
    /// indecomposable lexicographically positive roots.
    pub fn from_roots(dim: usize, roots: impl IntoIterator<Item = FiniteRoot>) -> Result<Self> {
        let set: BTreeSet<FiniteRoot> = roots.into_iter().collect();
        for v in &set {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(v.dim(), dim));
            }
            if !set.contains(&v.neg()) {
                return Err(Error::InvalidModel(format!("{} present without its negative", v)));
            }
        }
        for a in &set {
            for b in &set {
                let s = reflect(a, b)?;
                if !set.contains(&s) {
                    return Err(Error::InvalidModel(format!("reflection of {} in {} is missing", b, a)));
                }
            }
        }
        let positive: Vec<FiniteRoot> = set.iter().filter(|v| v.is_positive()).copied().collect();
        let pos_set: BTreeSet<FiniteRoot> = positive.iter().copied().collect();
        let mut simple: Vec<FiniteRoot> = positive
            .iter()
            .filter(|x| !positive.iter().any(|y| x.sub(y).is_some_and(|z| pos_set.contains(&z))))
            .copied()
            .collect();
        simple.sort_by(|a, b| b.cmp(a));
        let r = simple.len();
        let mut coeff: HashMap<FiniteRoot, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for (i, s) in simple.iter().enumerate() {
            let mut c = vec![0; r];
            c[i] = 1;
            coeff.insert(*s, c);
            queue.push_back(*s);
        }
        while let Some(v) = queue.pop_front() {
            for (j, s) in simple.iter().enumerate() {
                if let Some(w) = v.add(s) {
                    if pos_set.contains(&w) && !coeff.contains_key(&w) {
                        let mut c = coeff[&v].clone();
                        c[j] += 1;
                        coeff.insert(w, c);
                        queue.push_back(w);
                    }
                }
            }
        }
        if coeff.len() != positive.len() {
            return Err(Error::InvalidModel("positive roots not generated by simple roots".into()));
        }
        let roots: Vec<FiniteRoot> = set.into_iter().collect();
        let coeffs = roots
            .iter()
            .map(|v| match coeff.get(v) {
                Some(c) => c.clone(),
                None => coeff[&v.neg()].iter().map(|x| -x).collect(),
            })
            .collect();
        let mut sys = FiniteRootSystem {
            dim,
            label: TypeSum::default(),
            index: roots.iter().enumerate().map(|(i, v)| (*v, i)).collect(),
            roots,
            simple,
            coeffs,
        };
        sys.label = sys.recognize()?;
        Ok(sys)
    }

    /// The empty system in a given dimension.
    pub fn empty(dim: usize) -> Self {
        FiniteRootSystem {
            dim,
            label: TypeSum::default(),
            roots: vec![],
            index: HashMap::new(),
            simple: vec![],
            coeffs: vec![],
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical type of the system.
    pub fn label(&self) -> &TypeSum {
        &self.label
    }

    /// Roots in ascending lexicographic order.
    pub fn roots(&self) -> &[FiniteRoot] {
        &self.roots
    }

    /// Ordered simple system.
    pub fn simple_system(&self) -> &[FiniteRoot] {
        &self.simple
    }

    /// Number of roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// True for the empty system.
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Rank (size of the simple system).
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Membership test.
    pub fn contains(&self, v: &FiniteRoot) -> bool {
        self.index.contains_key(v)
    }

    /// Position of a root in [`FiniteRootSystem::roots`].
    pub fn index_of(&self, v: &FiniteRoot) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Coefficients of a root over the simple system.
    pub fn coefficients(&self, v: &FiniteRoot) -> Result<&[i64]> {
        self.index_of(v).map(|i| self.coeffs[i].as_slice()).ok_or_else(|| Error::RootNotInSystem(v.to_string()))
    }

    /// True when some root has its double in the system.
    pub fn is_reduced(&self) -> bool {
        !self.roots.iter().any(|v| v.scale(2).is_some_and(|w| self.contains(&w)))
    }

    /// Distinct squared lengths (times four) in ascending order.
    pub fn lengths(&self) -> Vec<i64> {
        let s: BTreeSet<i64> = self.roots.iter().map(|v| v.norm4()).collect();
        s.into_iter().collect()
    }

    /// Highest root of an irreducible reduced system (maximal height).
    pub fn highest_root(&self) -> Result<FiniteRoot> {
        let best = (0..self.roots.len())
            .max_by_key(|&i| (self.coeffs[i].iter().sum::<i64>(), self.roots[i]))
            .ok_or_else(|| Error::InvalidModel("empty system has no highest root".into()))?;
        Ok(self.roots[best])
    }

    /// Component index of every simple root under the non-orthogonality graph.
    fn simple_components(&self) -> Vec<usize> {
        let r = self.simple.len();
        let mut comp: Vec<usize> = (0..r).collect();
        fn find(c: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while c[i] != i {
                c[i] = c[c[i]];
                i = c[i];
            }
            i
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if self.simple[i].dot4(&self.simple[j]) != 0 {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a.max(b)] = a.min(b);
                }
            }
        }
        (0..r).map(|i| find(&mut comp, i)).collect()
    }

    /// Irreducible components, ordered by their first simple root.
    pub fn components(&self) -> Vec<FiniteRootSystem> {
        let owner = self.simple_components();
        let mut reps: Vec<usize> = owner.clone();
        reps.sort();
        reps.dedup();
        reps.iter()
            .map(|&rep| {
                let idx: Vec<usize> = (0..self.simple.len()).filter(|&i| owner[i] == rep).collect();
                let mut roots = Vec::new();
                let mut coeffs = Vec::new();
                for (k, v) in self.roots.iter().enumerate() {
                    let c = &self.coeffs[k];
                    let first = c.iter().position(|&x| x != 0).expect("nonzero root");
                    if owner[first] == rep {
                        roots.push(*v);
                        coeffs.push(idx.iter().map(|&i| c[i]).collect());
                    }
                }
                let mut sys = FiniteRootSystem {
                    dim: self.dim,
                    label: TypeSum::default(),
                    index: roots.iter().enumerate().map(|(i, v)| (*v, i)).collect(),
                    roots,
                    simple: idx.iter().map(|&i| self.simple[i]).collect(),
                    coeffs,
                };
                sys.label = sys.recognize().expect("component of a recognized system");
                sys
            })
            .collect()
    }

    /// Identifies the type of each component from rank, root count and
    /// length data.
    fn recognize(&self) -> Result<TypeSum> {
        let owner = self.simple_components();
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let first = c.iter().position(|&x| x != 0).expect("nonzero root");
            by_comp.entry(owner[first]).or_default().push(k);
        }
        let mut parts = Vec::new();
        for (rep, members) in by_comp {
            let rank = owner.iter().filter(|&&o| o == rep).count() as u32;
            let roots: Vec<FiniteRoot> = members.iter().map(|&k| self.roots[k]).collect();
            parts.push(recognize_irreducible(rank, &roots)?);
        }
        Ok(TypeSum::finite(parts))
    }

    /// Subsystem of the roots satisfying a predicate (must itself be a
    /// subroot system).
    pub fn filter(&self, keep: impl Fn(&FiniteRoot) -> bool) -> Result<FiniteRootSystem> {
        FiniteRootSystem::from_roots(self.dim, self.roots.iter().filter(|v| keep(v)).copied())
    }
}

fn recognize_irreducible(rank: u32, roots: &[FiniteRoot]) -> Result<FiniteTypeLabel> {
    let set: BTreeSet<FiniteRoot> = roots.iter().copied().collect();
    let n = roots.len() as u32;
    let bad = || Error::Unrecognized(format!("rank {} component with {} roots", rank, n));
    let non_reduced = roots.iter().any(|v| v.scale(2).is_some_and(|w| set.contains(&w)));
    if non_reduced {
        return FiniteTypeLabel::new(Family::BC, rank);
    }
    let lens: BTreeSet<i64> = roots.iter().map(|v| v.norm4()).collect();
    let lens: Vec<i64> = lens.into_iter().collect();
    match lens.len() {
        1 => {
            if n == rank * (rank + 1) {
                FiniteTypeLabel::new(Family::A, rank)
            } else if rank >= 4 && n == 2 * rank * (rank - 1) {
                FiniteTypeLabel::new(Family::D, rank)
            } else {
                match (rank, n) {
                    (6, 72) | (7, 126) | (8, 240) => FiniteTypeLabel::new(Family::E, rank),
                    _ => Err(bad()),
                }
            }
        }
        2 => {
            let short = roots.iter().filter(|v| v.norm4() == lens[0]).count() as u32;
            let long = n - short;
            if rank == 2 && n == 12 && lens[1] == 3 * lens[0] {
                FiniteTypeLabel::new(Family::G, 2)
            } else if rank == 4 && n == 48 {
                FiniteTypeLabel::new(Family::F, 4)
            } else if n == 2 * rank * rank && short == 2 * rank {
                FiniteTypeLabel::new(Family::B, rank)
            } else if n == 2 * rank * rank && long == 2 * rank {
                FiniteTypeLabel::new(Family::C, rank)
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}

fn e8_simple() -> Vec<FiniteRoot> {
    let mut s = vec![FiniteRoot::new(&[1, -1, -1, -1, -1, -1, -1, 1]).unwrap()];
    s.push(FiniteRoot::new(&[0, 0, 0, 0, 0, 0, 2, 2]).unwrap());
    s.push(FiniteRoot::new(&[0, 0, 0, 0, 0, 0, 2, -2]).unwrap());
    for i in (1..=5).rev() {
        // ε_{i+1} − ε_{i+2} in 1-based terms, walking towards ε₂ − ε₃.
        let mut v = vec![0i64; 8];
        v[i] = 2;
        v[i + 1] = -2;
        s.push(FiniteRoot::new(&v).unwrap());
    }
    s
}

fn build_uncached(label: FiniteTypeLabel) -> FiniteRootSystem {
    use Family::*;
    let n = label.rank as usize;
    let diff = |dim: usize, i: usize, j: usize, sj: i64| {
        let mut v = vec![0i64; dim];
        v[i] = 2;
        v[j] = 2 * sj;
        FiniteRoot::new(&v).unwrap()
    };
    let chain = |dim: usize, len: usize| -> Vec<FiniteRoot> { (0..len).map(|i| diff(dim, i, i + 1, -1)).collect() };
    match (label.family, n) {
        (A, _) | (B | C | D, 1) => FiniteRootSystem::from_simple(n + 1, chain(n + 1, n), &[]),
        (B, _) => {
            let mut s = chain(n, n - 1);
            s.push(FiniteRoot::unit(n, n - 1));
            FiniteRootSystem::from_simple(n, s, &[])
        }
        (C, _) => {
            let mut s = chain(n, n - 1);
            s.push(FiniteRoot::unit(n, n - 1).scale(2).unwrap());
            FiniteRootSystem::from_simple(n, s, &[])
        }
        (D, _) => {
            let mut s = chain(n, n - 1);
            s.push(diff(n, n - 2, n - 1, 1));
            FiniteRootSystem::from_simple(n, s, &[])
        }
        (BC, _) => {
            let mut s = if n > 1 { chain(n, n - 1) } else { vec![] };
            s.push(FiniteRoot::unit(n, n - 1));
            let mut c = vec![0; n];
            c[n - 1] = 2;
            let long = FiniteRoot::unit(n, n - 1).scale(2).unwrap();
            FiniteRootSystem::from_simple(n, s, &[(long, c)])
        }
        (E, _) => {
            let s: Vec<FiniteRoot> = e8_simple().into_iter().take(n).collect();
            FiniteRootSystem::from_simple(8, s, &[])
        }
        (F, _) => {
            let s = vec![
                diff(4, 1, 2, -1),
                diff(4, 2, 3, -1),
                FiniteRoot::unit(4, 3),
                FiniteRoot::new(&[1, -1, -1, -1]).unwrap(),
            ];
            FiniteRootSystem::from_simple(4, s, &[])
        }
        (G, _) => {
            let s = vec![FiniteRoot::from_ints(&[1, -2, 1]).unwrap(), FiniteRoot::from_ints(&[0, 1, -1]).unwrap()];
            FiniteRootSystem::from_simple(3, s, &[])
        }
    }
}

/// Shared, cached standard realization of a finite type.
pub fn finite_system(label: FiniteTypeLabel) -> Arc<FiniteRootSystem> {
    static CACHE: OnceLock<Mutex<HashMap<FiniteTypeLabel, Arc<FiniteRootSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&label) {
        return s.clone();
    }
    let s = Arc::new(build_uncached(label));
    cache.lock().unwrap().insert(label, s.clone());
    s
}

/// The standard realization of a finite type.
///
/// `A_n` lives in `n+1` dimensions, `G2` in 3, the `E` series in 8 and the
/// rest in `n`. Simple systems: `ε_i − ε_{i+1}` chains closed by `ε_n`
/// (`B`, `BC`), `2ε_n` (`C`) or `ε_{n−1} + ε_n` (`D`); `F4` uses
/// `ε₂−ε₃, ε₃−ε₄, ε₄, ½(ε₁−ε₂−ε₃−ε₄)`; `G2` uses `ε₁−2ε₂+ε₃, ε₂−ε₃`.
pub fn build_finite(label: FiniteTypeLabel) -> Result<FiniteRootSystem> {
    let label = FiniteTypeLabel::new(label.family, label.rank)?;
    Ok((*finite_system(label)).clone())
}

/// Coefficients of `root` over the simple system of `system`.
pub fn express_in_simple(root: &FiniteRoot, system: &FiniteRootSystem) -> Result<Vec<i64>> {
    system.coefficients(root).map(|c| c.to_vec())
}

/// Orbit of a root under the Weyl group of `system`.
pub fn weyl_orbit(root: &FiniteRoot, system: &FiniteRootSystem) -> Result<BTreeSet<FiniteRoot>> {
    if !system.contains(root) {
        return Err(Error::RootNotInSystem(root.to_string()));
    }
    let mut seen = BTreeSet::from([*root]);
    let mut queue = vec![*root];
    while let Some(v) = queue.pop() {
        for s in system.simple_system() {
            let w = reflect(s, &v)?;
            if seen.insert(w) {
                queue.push(w);
            }
        }
    }
    Ok(seen)
}

/// Smallest subset of `within` containing `seed` that is closed under
/// negation, reflections and sums landing in `within`.
pub fn finite_closure(seed: impl IntoIterator<Item = FiniteRoot>, within: &FiniteRootSystem) -> BTreeSet<FiniteRoot> {
    let mut set: BTreeSet<FiniteRoot> = BTreeSet::new();
    let mut members: Vec<FiniteRoot> = Vec::new();
    let mut queue: Vec<FiniteRoot> = Vec::new();
    let add = |v: FiniteRoot, set: &mut BTreeSet<_>, members: &mut Vec<_>, q: &mut Vec<_>| {
        if within.contains(&v) && set.insert(v) {
            members.push(v);
            q.push(v);
        }
    };
    for v in seed {
        add(v, &mut set, &mut members, &mut queue);
        add(v.neg(), &mut set, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop() {
        let snapshot = members.clone();
        for y in snapshot {
            let mut new = Vec::with_capacity(3);
            if let Some(s) = x.add(&y) {
                new.push(s);
            }
            new.push(reflect(&x, &y).expect("roots pair integrally"));
            new.push(reflect(&y, &x).expect("roots pair integrally"));
            for v in new {
                add(v, &mut set, &mut members, &mut queue);
            }
        }
    }
    set
}

/// True when `sub` is closed under sums that are roots of `within`.
pub fn is_closed_in(sub: &BTreeSet<FiniteRoot>, within: &FiniteRootSystem) -> bool {
    sub.iter().all(|a| sub.iter().all(|b| a.add(b).is_none_or(|s| !within.contains(&s) || sub.contains(&s))))
}

/// True when `sub` is a proper closed subroot system of `within` that is
/// contained in no larger proper closed subroot system, checked by closing
/// `sub ∪ {±γ}` for every missing `γ`.
pub fn is_maximal_closed_finite(sub: &FiniteRootSystem, within: &FiniteRootSystem) -> bool {
    let set: BTreeSet<FiniteRoot> = sub.roots().iter().copied().collect();
    if set.len() >= within.len() || !set.iter().all(|v| within.contains(v)) {
        return false;
    }
    if !is_closed_in(&set, within) {
        return false;
    }
    within.roots().iter().filter(|g| !set.contains(g)).all(|g| {
        let seed = set.iter().copied().chain(std::iter::once(*g));
        finite_closure(seed, within).len() == within.len()
    })
}

/// Maximal closed subroot systems of an irreducible reduced system obtained
/// from its extended Dynkin diagram. A node with highest-root mark 1 gives
/// the roots with coefficient 0 there; a node with prime mark `a` gives the
/// roots whose coefficient there is divisible by `a`. Empty results are
/// dropped.
pub fn finite_maximal_subsystems(system: &FiniteRootSystem) -> Result<Vec<FiniteRootSystem>> {
    if system.label().parts().len() != 1 || !system.is_reduced() {
        return Err(Error::InvalidParameter(format!("{} is not irreducible and reduced", system.label())));
    }
    let theta = system.highest_root()?;
    let marks = system.coefficients(&theta)?.to_vec();
    let mut out = Vec::new();
    for (i, &a) in marks.iter().enumerate() {
        if a != 1 && !is_prime(a as u64) {
            continue;
        }
        let keep: Vec<FiniteRoot> = system
            .roots()
            .iter()
            .filter(|v| {
                let c = system.coefficients(v).unwrap()[i];
                if a == 1 {
                    c == 0
                } else {
                    c % a == 0
                }
            })
            .copied()
            .collect();
        if keep.is_empty() {
            continue;
        }
        out.push(FiniteRootSystem::from_roots(system.dim(), keep)?);
    }
    Ok(out)
}

/// Types of the maximal closed subroot systems of an irreducible finite
/// type, deduplicated and sorted.
pub fn finite_maximal_closed(label: FiniteTypeLabel) -> Result<Vec<TypeSum>> {
    let sys = build_finite(label)?;
    let set: BTreeSet<TypeSum> = finite_maximal_subsystems(&sys)?.iter().map(|s| s.label().clone()).collect();
    Ok(set.into_iter().collect())
}

/// Trial-division primality test for small moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
