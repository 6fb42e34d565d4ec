//! Brute-force verification on δ-grade windows.
//!
//! Everything here works on explicit finite sets of affine roots with
//! `|t2| <= radius2`, independent of the coset arithmetic of
//! [`crate::subroot_model`]. Closure is a worklist fixpoint over a dense
//! bitmap indexed by (gradient root, grade), with precomputed tables of
//! gradient-root sums and reflections so orthogonal pairs are never visited.
//!
//! Windowed maximality is a certificate relative to the window: a candidate
//! root `γ` near grade zero is accepted as blowing up the system when the
//! closure of `Ψ ∪ {±γ}` covers the whole check window.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine_roots::{affine_system, AffineRoot, AffineRootSystem, Window};
use crate::error::{Error, Result};
use crate::finite_roots::{pairing, FiniteRoot};
use crate::labels::AffineTypeLabel;
use crate::subroot_model::{fit_coset_model, lift, Coset, SubrootSystem};

/// Window radii (doubled δ units) for oracle computations: candidates are
/// drawn from the inner window, coverage is demanded on the check window,
/// and closures run on the work window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub inner_radius2: i64,
    pub check_radius2: i64,
    pub work_radius2: i64,
}

impl OracleConfig {
    /// Validated constructor: `0 <= inner <= check <= work`.
    pub fn new(inner_radius2: i64, check_radius2: i64, work_radius2: i64) -> Result<Self> {
        if inner_radius2 < 0 || inner_radius2 > check_radius2 || check_radius2 > work_radius2 {
            return Err(Error::InvalidConfig(format!(
                "radii must satisfy 0 <= inner <= check <= work, got {}, {}, {}",
                inner_radius2, check_radius2, work_radius2
            )));
        }
        Ok(OracleConfig { inner_radius2, check_radius2, work_radius2 })
    }

    /// Radii `(P, 2P, 4P)` where `P` is the common period of the system
    /// and its ambient.
    pub fn scaled_for(sub: &SubrootSystem) -> Self {
        let p = common_period2(sub).max(2);
        OracleConfig { inner_radius2: p, check_radius2: 2 * p, work_radius2: 4 * p }
    }

    /// Checks `work >= check + 2·P` for the largest period `P` in play.
    pub fn validate_for(&self, sub: &SubrootSystem) -> Result<()> {
        let p = largest_period2(sub);
        if self.work_radius2 < self.check_radius2 + 2 * p {
            return Err(Error::InvalidConfig(format!(
                "work radius {} is below check radius {} plus twice the period {}",
                self.work_radius2, self.check_radius2, p
            )));
        }
        Ok(())
    }
}

fn ambient_periods(amb: &AffineRootSystem) -> impl Iterator<Item = i64> + '_ {
    amb.gradient().roots().iter().filter_map(|v| amb.full_period2(v))
}

/// Least common multiple of every nonzero modulus of the system and of
/// every period of its ambient.
pub fn common_period2(sub: &SubrootSystem) -> i64 {
    sub.cosets()
        .values()
        .map(|c| c.n2)
        .chain(ambient_periods(sub.ambient()))
        .filter(|&n| n > 0)
        .fold(1, |a, n| a.lcm(&n))
}

/// Largest nonzero modulus of the system or period of its ambient.
pub fn largest_period2(sub: &SubrootSystem) -> i64 {
    sub.cosets().values().map(|c| c.n2).chain(ambient_periods(sub.ambient())).max().unwrap_or(0)
}

/// Partner tables over the gradient of an arena.
/// `(j, k, idx(s_i v_j), k', idx(s_j v_i))` for one reflecting pair.
type ReflPartner = (usize, i64, usize, i64, usize);

struct Partners {
    /// For root `i`: pairs `(j, idx(v_i + v_j))` with the sum a gradient root.
    sums: Vec<Vec<(usize, usize)>>,
    /// For root `i`: partners with `k = ⟨v_j, v_i∨⟩ ≠ 0` and
    /// `k' = ⟨v_i, v_j∨⟩`.
    refl: Vec<Vec<ReflPartner>>,
    neg: Vec<usize>,
}

/// Dense arena of the real roots of an ambient (optionally restricted to a
/// closed subsystem) within a work window.
pub struct Arena {
    roots: Vec<FiniteRoot>,
    index: HashMap<FiniteRoot, usize>,
    allowed: Vec<Option<Coset>>,
    partners: Partners,
    radius2: i64,
    width: usize,
}

impl Arena {
    /// All real roots of the ambient with `|t2| <= radius2`.
    pub fn ambient(amb: &AffineRootSystem, radius2: i64) -> Self {
        let allowed = amb
            .gradient()
            .roots()
            .iter()
            .map(|v| amb.congruence(v).map(|c| Coset::new(c.offset2, c.period2)))
            .collect();
        Self::build(amb, allowed, radius2)
    }

    /// The roots of a subroot system with `|t2| <= radius2`.
    pub fn within(sub: &SubrootSystem, radius2: i64) -> Self {
        let amb = sub.ambient();
        let allowed = amb.gradient().roots().iter().map(|v| sub.coset(v)).collect();
        Self::build(amb, allowed, radius2)
    }

    fn build(amb: &AffineRootSystem, allowed: Vec<Option<Coset>>, radius2: i64) -> Self {
        let roots: Vec<FiniteRoot> = amb.gradient().roots().to_vec();
        let index: HashMap<FiniteRoot, usize> = roots.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = roots.len();
        let mut sums = vec![Vec::new(); n];
        let mut refl = vec![Vec::new(); n];
        let neg = roots.iter().map(|v| index[&v.neg()]).collect();
        for i in 0..n {
            for j in 0..n {
                if let Some(s) = roots[i].add(&roots[j]) {
                    if let Some(&k) = index.get(&s) {
                        sums[i].push((j, k));
                    }
                }
                let k = pairing(&roots[j], &roots[i]).expect("gradient pairings are integral");
                if k != 0 {
                    let k2 = pairing(&roots[i], &roots[j]).expect("gradient pairings are integral");
                    let a = roots[j].lincomb(1, &roots[i], -k).expect("reflection is nonzero");
                    let b = roots[i].lincomb(1, &roots[j], -k2).expect("reflection is nonzero");
                    refl[i].push((j, k, index[&a], k2, index[&b]));
                }
            }
        }
        Arena {
            roots,
            index,
            allowed,
            partners: Partners { sums, refl, neg },
            radius2,
            width: (2 * radius2 + 1) as usize,
        }
    }

    /// The work radius of the arena.
    pub fn radius2(&self) -> i64 {
        self.radius2
    }

    fn slot(&self, i: usize, t2: i64) -> Option<usize> {
        if t2.abs() > self.radius2 || !self.allowed[i].is_some_and(|c| c.contains(t2)) {
            return None;
        }
        Some(i * self.width + (t2 + self.radius2) as usize)
    }

    fn locate(&self, x: &AffineRoot) -> Option<(usize, i64)> {
        let &i = self.index.get(&x.v)?;
        self.slot(i, x.t2).map(|_| (i, x.t2))
    }

    /// Every root of the arena, sorted.
    pub fn roots(&self) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for (i, v) in self.roots.iter().enumerate() {
            for t2 in -self.radius2..=self.radius2 {
                if self.slot(i, t2).is_some() {
                    out.push(AffineRoot::new(*v, t2));
                }
            }
        }
        out.sort();
        out
    }

    fn empty_state(&self) -> State {
        State {
            present: vec![false; self.roots.len() * self.width],
            by_root: vec![Vec::new(); self.roots.len()],
            queue: Vec::new(),
            covered: 0,
            check_radius2: None,
        }
    }

    /// A state holding `set` with nothing queued: `set` must already be
    /// closed inside the arena.
    fn closed_state(&self, set: &[AffineRoot]) -> Result<State> {
        let mut st = self.empty_state();
        for x in set {
            let (i, t) = self.locate(x).ok_or_else(|| outside(x))?;
            st.insert(self, i, t);
        }
        st.queue.clear();
        Ok(st)
    }

    /// Runs the worklist until empty, or until `stop` reports completion.
    fn saturate(&self, st: &mut State, target: Option<usize>) {
        let mut buf: Vec<(usize, i64)> = Vec::new();
        while let Some((i, t)) = st.queue.pop() {
            if target.is_some_and(|n| st.covered >= n) {
                return;
            }
            buf.clear();
            for &(j, s) in &self.partners.sums[i] {
                for &u in &st.by_root[j] {
                    buf.push((s, t + u));
                }
            }
            for &(j, k, a, k2, b) in &self.partners.refl[i] {
                for &u in &st.by_root[j] {
                    buf.push((a, u - k * t));
                    buf.push((b, t - k2 * u));
                }
            }
            for &(s, u) in &buf {
                st.insert(self, s, u);
            }
        }
    }

    fn collect(&self, st: &State) -> Vec<AffineRoot> {
        let mut out: Vec<AffineRoot> = st
            .by_root
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |&t| AffineRoot::new(self.roots[i], t)))
            .collect();
        out.sort();
        out
    }

    /// Smallest superset of `seed ∪ −seed` inside the arena closed under
    /// sums and reflections that stay in the arena.
    pub fn closure(&self, seed: &[AffineRoot]) -> Result<Vec<AffineRoot>> {
        let mut st = self.empty_state();
        for x in seed {
            let (i, t) = self.locate(x).ok_or_else(|| outside(x))?;
            st.insert(self, i, t);
        }
        self.saturate(&mut st, None);
        Ok(self.collect(&st))
    }
}

fn outside(x: &AffineRoot) -> Error {
    Error::Precondition(format!("{} is not a root of the arena", x))
}

struct State {
    present: Vec<bool>,
    by_root: Vec<Vec<i64>>,
    queue: Vec<(usize, i64)>,
    covered: usize,
    check_radius2: Option<i64>,
}

impl State {
    fn insert(&mut self, arena: &Arena, i: usize, t: i64) {
        for (i, t) in [(i, t), (arena.partners.neg[i], -t)] {
            let Some(slot) = arena.slot(i, t) else { continue };
            if self.present[slot] {
                continue;
            }
            self.present[slot] = true;
            self.by_root[i].push(t);
            self.queue.push((i, t));
            if self.check_radius2.is_some_and(|r| t.abs() <= r) {
                self.covered += 1;
            }
        }
    }
}

/// Closure of a seed inside the work window of an ambient.
pub fn closure(seed: &[AffineRoot], ambient: AffineTypeLabel, config: &OracleConfig) -> Result<Vec<AffineRoot>> {
    let amb = affine_system(ambient)?;
    Arena::ambient(&amb, config.work_radius2).closure(seed)
}

/// Outcome of [`verify_maximal`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: bool,
    /// First candidate whose closure with the system stays below the
    /// check window.
    pub witness: Option<AffineRoot>,
    pub candidates: usize,
    pub config: OracleConfig,
}

/// Windowed maximality: every root `γ` of the inner window outside the
/// system generates, together with it, a closed set covering the check
/// window.
pub fn verify_maximal(sub: &SubrootSystem, config: &OracleConfig) -> Result<MaximalityReport> {
    let full = lift(sub.ambient().gradient(), sub.ambient_label())?;
    verify_maximal_within(sub, &full, config)
}

/// Windowed maximality of `sub` inside a closed system `outer`: every root
/// of `outer` in the inner window outside `sub` generates, together with
/// `sub`, all of `outer` on the check window.
pub fn verify_maximal_within(
    sub: &SubrootSystem,
    outer: &SubrootSystem,
    config: &OracleConfig,
) -> Result<MaximalityReport> {
    for s in [sub, outer] {
        if let Some((x, y)) = s.closure_violation() {
            return Err(Error::Precondition(format!("not closed: {} + {}", x, y)));
        }
        if let Some((a, b)) = s.reflection_violation() {
            return Err(Error::Precondition(format!("not a subroot system: s_{}({})", a, b)));
        }
    }
    if !sub.is_subset_of(outer) {
        return Err(Error::Precondition("system is not contained in the outer one".into()));
    }
    let arena = Arena::within(outer, config.work_radius2);
    let mut base = arena.closed_state(&sub.window(config.work_radius2))?;
    base.check_radius2 = Some(config.check_radius2);
    base.covered = sub.window(config.check_radius2).len();
    let target = outer.window(config.check_radius2).len();
    let candidates: Vec<AffineRoot> =
        outer.window(config.inner_radius2).into_iter().filter(|g| !sub.contains(g) && *g < g.neg()).collect();
    let witness = candidates.par_iter().find_map_first(|g| {
        let mut st = State {
            present: base.present.clone(),
            by_root: base.by_root.clone(),
            queue: Vec::new(),
            covered: base.covered,
            check_radius2: base.check_radius2,
        };
        let (i, t) = arena.locate(g).expect("candidate inside the work window");
        st.insert(&arena, i, t);
        arena.saturate(&mut st, Some(target));
        (st.covered < target).then_some(*g)
    });
    Ok(MaximalityReport { maximal: witness.is_none(), witness, candidates: candidates.len(), config: *config })
}

/// True when the window expansion of the model equals the explicit set
/// restricted to `|t2| <= radius2`.
pub fn model_equals_window(sub: &SubrootSystem, explicit: &[AffineRoot], radius2: i64) -> bool {
    let a: BTreeSet<AffineRoot> = sub.window(radius2).into_iter().collect();
    let b: BTreeSet<AffineRoot> = explicit.iter().filter(|x| x.t2.abs() <= radius2).copied().collect();
    a == b
}

/// Closed subroot systems strictly between `inner` and `outer` obtained by
/// closing `inner ∪ {±γ}` inside `outer` for every `γ` of the inner window,
/// fitted to coset models on the check window and deduplicated.
pub fn intermediate_scan(
    inner: &SubrootSystem,
    outer: &SubrootSystem,
    config: &OracleConfig,
) -> Result<Vec<SubrootSystem>> {
    if !inner.is_subset_of(outer) {
        return Err(Error::Precondition("inner system is not contained in the outer one".into()));
    }
    let arena = Arena::within(outer, config.work_radius2);
    let base = arena.closed_state(&inner.window(config.work_radius2))?;
    let window = Window::new(config.check_radius2)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in outer.window(config.inner_radius2) {
        if inner.contains(&g) || g > g.neg() {
            continue;
        }
        let mut st = State {
            present: base.present.clone(),
            by_root: base.by_root.clone(),
            queue: Vec::new(),
            covered: 0,
            check_radius2: None,
        };
        let (i, t) = arena.locate(&g).expect("candidate inside the arena");
        st.insert(&arena, i, t);
        arena.saturate(&mut st, None);
        let set: Vec<AffineRoot> = arena.collect(&st).into_iter().filter(|x| window.contains(x.t2)).collect();
        let model = fit_coset_model(&set, outer.ambient_label(), window)?;
        if model != *outer && model != *inner && seen.insert(model.clone()) {
            out.push(model);
        }
    }
    out.sort_by_key(|s| s.positive_cosets());
    Ok(out)
}
