//! The coset model of subroot systems.
//!
//! A subroot system `Ψ` of an affine root system is determined by its
//! gradient and, for each gradient root `α`, the set `Z_α` of grades with
//! `α + rδ ∈ Ψ`. For the systems studied here `Z_α = p_α + n_α Z`, so a
//! model stores one [`Coset`] `(p2, n2)` per gradient root in doubled units.
//! Besides the window-based checks this module decides reflection-stability
//! and closedness exactly from the cosets, since sums and reflections of
//! arithmetic progressions are again arithmetic progressions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::affine_roots::{affine_reflect, affine_system, AffineRoot, AffineRootSystem, LengthClass, Window};
use crate::error::{Error, Result};
use crate::finite_roots::{pairing, FiniteRoot, FiniteRootSystem};
use crate::labels::AffineTypeLabel;

/// The grade set `p2 + n2·Z` (a single grade when `n2 = 0`), doubled units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coset {
    pub p2: i64,
    pub n2: i64,
}

impl Coset {
    /// Normalized constructor: `p2` is reduced into `[0, n2)` when `n2 > 0`.
    pub fn new(p2: i64, n2: i64) -> Self {
        let n2 = n2.abs();
        if n2 == 0 {
            Coset { p2, n2 }
        } else {
            Coset { p2: p2.rem_euclid(n2), n2 }
        }
    }

    pub fn contains(&self, t2: i64) -> bool {
        if self.n2 == 0 {
            t2 == self.p2
        } else {
            (t2 - self.p2).rem_euclid(self.n2) == 0
        }
    }

    /// The coset of `−α` given this coset of `α`.
    pub fn neg(&self) -> Coset {
        Coset::new(-self.p2, self.n2)
    }

    /// Members with `|t2| <= r`, ascending.
    pub fn grades_in(&self, r: i64) -> Vec<i64> {
        if self.n2 == 0 {
            return if self.p2.abs() <= r { vec![self.p2] } else { vec![] };
        }
        let start = -r + (self.p2 + r).rem_euclid(self.n2);
        (start..=r).step_by(self.n2 as usize).collect()
    }

    /// Set inclusion of grade sets.
    pub fn is_subset_of(&self, other: &Coset) -> bool {
        if other.n2 == 0 {
            self.n2 == 0 && self.p2 == other.p2
        } else {
            self.n2 % other.n2 == 0 && other.contains(self.p2)
        }
    }
}

/// Intersection of `a + g·Z` and `b + h·Z` (period 0 means a single value).
pub fn ap_intersect(a: i64, g: i64, b: i64, h: i64) -> Option<Coset> {
    match (g, h) {
        (0, 0) => (a == b).then(|| Coset::new(a, 0)),
        (0, _) => ((a - b).rem_euclid(h) == 0).then(|| Coset::new(a, 0)),
        (_, 0) => ((b - a).rem_euclid(g) == 0).then(|| Coset::new(b, 0)),
        _ => {
            let e = g.extended_gcd(&h);
            let d = e.gcd;
            if (b - a) % d != 0 {
                return None;
            }
            let l = g.lcm(&h);
            let k = ((b - a) / d) * e.x;
            Some(Coset::new(a + g * k, l))
        }
    }
}

/// A Z-linear function on a reduced root system, stored by its doubled
/// values on the simple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeFunction {
    system: FiniteRootSystem,
    values_on_simple: Vec<i64>,
}

impl GradeFunction {
    /// Builds from doubled values on the ordered simple system.
    pub fn new(system: FiniteRootSystem, values_on_simple: Vec<i64>) -> Result<Self> {
        if values_on_simple.len() != system.rank() {
            return Err(Error::InvalidParameter(format!(
                "{} values for a rank {} system",
                values_on_simple.len(),
                system.rank()
            )));
        }
        if !system.is_reduced() {
            return Err(Error::InvalidParameter("grade functions need a reduced system".into()));
        }
        Ok(GradeFunction { system, values_on_simple })
    }

    /// Builds from values in δ-units (each doubled on storage).
    pub fn from_delta_units(system: FiniteRootSystem, values: &[i64]) -> Result<Self> {
        Self::new(system, values.iter().map(|v| 2 * v).collect())
    }

    /// Builds `p(v) = Σ a_i v_i` from the doubled coordinate weights `a2`
    /// (so half-integer weights are allowed). The values on the simple
    /// roots must come out in `½Z`.
    pub fn from_coordinate_form(system: FiniteRootSystem, a2: &[i64]) -> Result<Self> {
        if a2.len() != system.dim() {
            return Err(Error::DimensionMismatch(a2.len(), system.dim()));
        }
        let mut values = Vec::with_capacity(system.rank());
        for s in system.simple_system() {
            let num: i64 = s.coords2().iter().zip(a2).map(|(c, a)| *c as i64 * a).sum();
            if num % 2 != 0 {
                return Err(Error::InvalidParameter(format!("weights give a quarter-integer on {}", s)));
            }
            values.push(num / 2);
        }
        Self::new(system, values)
    }

    /// The zero function.
    pub fn zero(system: FiniteRootSystem) -> Self {
        let r = system.rank();
        GradeFunction { system, values_on_simple: vec![0; r] }
    }

    pub fn system(&self) -> &FiniteRootSystem {
        &self.system
    }

    pub fn values_on_simple(&self) -> &[i64] {
        &self.values_on_simple
    }

    /// Value on any root, by linearity.
    pub fn value(&self, root: &FiniteRoot) -> Result<i64> {
        let c = self.system.coefficients(root)?;
        Ok(c.iter().zip(&self.values_on_simple).map(|(a, b)| a * b).sum())
    }
}

/// Doubled value of the Z-linear extension of `p` at `root`.
pub fn extend_p(p: &GradeFunction, root: &FiniteRoot) -> Result<i64> {
    p.value(root)
}

/// A subroot system of an affine root system in coset form.
#[derive(Clone)]
pub struct SubrootSystem {
    ambient: Arc<AffineRootSystem>,
    gradient: FiniteRootSystem,
    cosets: BTreeMap<FiniteRoot, Coset>,
}

impl PartialEq for SubrootSystem {
    fn eq(&self, o: &Self) -> bool {
        self.ambient.label() == o.ambient.label() && self.cosets == o.cosets
    }
}

impl Eq for SubrootSystem {}

impl std::hash::Hash for SubrootSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.label().hash(state);
        self.cosets.hash(state);
    }
}

impl fmt::Debug for SubrootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubrootSystem({} in {}: ", self.gradient.label(), self.ambient.label())?;
        for (v, c) in self.cosets.iter().filter(|(v, _)| v.is_positive()) {
            write!(f, "{}:{}+{}Z ", v, c.p2, c.n2)?;
        }
        write!(f, ")")
    }
}

impl SubrootSystem {
    /// Builds a model from cosets. Missing negatives are filled in; given
    /// negatives must agree. Every coset must consist of real grades of the
    /// ambient, and the gradient must be a subroot system of `Gr(Φ)`.
    pub fn from_cosets(
        ambient: AffineTypeLabel,
        cosets: impl IntoIterator<Item = (FiniteRoot, Coset)>,
    ) -> Result<Self> {
        let amb = affine_system(ambient)?;
        Self::with_ambient(amb, cosets)
    }

    pub(crate) fn with_ambient(
        amb: Arc<AffineRootSystem>,
        cosets: impl IntoIterator<Item = (FiniteRoot, Coset)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<FiniteRoot, Coset> = BTreeMap::new();
        let mut given: Vec<(FiniteRoot, Coset)> = Vec::new();
        for (v, c) in cosets {
            let c = Coset::new(c.p2, c.n2);
            if let Some(old) = map.get(&v) {
                if *old != c {
                    return Err(Error::InvalidModel(format!("two cosets given for {}", v)));
                }
            }
            map.insert(v, c);
            given.push((v, c));
        }
        for (v, c) in given {
            let neg = v.neg();
            match map.get(&neg) {
                Some(d) if *d != c.neg() => {
                    return Err(Error::InvalidModel(format!("coset of {} is not the negation", neg)))
                }
                Some(_) => {}
                None => {
                    map.insert(neg, c.neg());
                }
            }
        }
        for (v, c) in &map {
            let cong =
                amb.congruence(v).ok_or_else(|| Error::InvalidModel(format!("{} is not in Gr({})", v, amb.label())))?;
            let ok = cong.allows(c.p2) && (c.n2 == 0 || c.n2 % cong.period2 == 0);
            if !ok {
                return Err(Error::InvalidModel(format!(
                    "grades {}+{}Z of {} are not all real in {}",
                    c.p2,
                    c.n2,
                    v,
                    amb.label()
                )));
            }
        }
        let gradient = FiniteRootSystem::from_roots(amb.dim(), map.keys().copied())?;
        Ok(SubrootSystem { ambient: amb, gradient, cosets: map })
    }

    /// Ambient label.
    pub fn ambient_label(&self) -> AffineTypeLabel {
        self.ambient.label()
    }

    /// Ambient root system.
    pub fn ambient(&self) -> &Arc<AffineRootSystem> {
        &self.ambient
    }

    /// Gradient root system.
    pub fn gradient(&self) -> &FiniteRootSystem {
        &self.gradient
    }

    /// All cosets, including those of negative roots.
    pub fn cosets(&self) -> &BTreeMap<FiniteRoot, Coset> {
        &self.cosets
    }

    /// Coset of a gradient root.
    pub fn coset(&self, v: &FiniteRoot) -> Option<Coset> {
        self.cosets.get(v).copied()
    }

    /// Membership of an affine root.
    pub fn contains(&self, x: &AffineRoot) -> bool {
        self.cosets.get(&x.v).is_some_and(|c| c.contains(x.t2))
    }

    /// Roots with `|t2| <= radius2`, sorted.
    pub fn window(&self, radius2: i64) -> Vec<AffineRoot> {
        let mut out: Vec<AffineRoot> = self
            .cosets
            .iter()
            .flat_map(|(v, c)| c.grades_in(radius2).into_iter().map(move |t| AffineRoot::new(*v, t)))
            .collect();
        out.sort();
        out
    }

    /// Largest modulus in doubled units.
    pub fn max_n2(&self) -> i64 {
        self.cosets.values().map(|c| c.n2).max().unwrap_or(0)
    }

    /// Sub-model on the roots of one gradient component.
    pub fn restrict(&self, part: &FiniteRootSystem) -> SubrootSystem {
        let cosets = part.roots().iter().map(|v| (*v, self.cosets[v])).collect();
        SubrootSystem { ambient: self.ambient.clone(), gradient: part.clone(), cosets }
    }

    /// Irreducible components as sub-models.
    pub fn components(&self) -> Vec<SubrootSystem> {
        self.gradient.components().iter().map(|c| self.restrict(c)).collect()
    }

    /// Union of models with disjoint gradients in one ambient.
    pub fn union(parts: &[SubrootSystem]) -> Result<SubrootSystem> {
        let amb = parts.first().map(|p| p.ambient.clone()).ok_or_else(|| Error::InvalidModel("empty union".into()))?;
        let all = parts.iter().flat_map(|p| p.cosets.iter().map(|(v, c)| (*v, *c)));
        SubrootSystem::with_ambient(amb, all)
    }

    /// Exact check that `s_x(y) ∈ Ψ` for all `x, y ∈ Ψ`; returns a violating
    /// pair of gradient roots.
    pub fn reflection_violation(&self) -> Option<(FiniteRoot, FiniteRoot)> {
        for (a, ca) in &self.cosets {
            for (b, cb) in &self.cosets {
                let k = pairing(b, a).expect("roots pair integrally");
                let s = b.lincomb(1, a, -k).expect("nonzero");
                let Some(cs) = self.cosets.get(&s) else {
                    return Some((*a, *b));
                };
                // Z_b − k·Z_a = (p_b − k p_a) + gcd(n_b, k n_a)·Z.
                let img = Coset::new(cb.p2 - k * ca.p2, cb.n2.gcd(&(k * ca.n2)));
                if !img.is_subset_of(cs) {
                    return Some((*a, *b));
                }
            }
        }
        None
    }

    /// Exact closedness check; returns a pair whose sum is a real root of
    /// the ambient missing from `Ψ`.
    pub fn closure_violation(&self) -> Option<(AffineRoot, AffineRoot)> {
        for (a, ca) in &self.cosets {
            for (b, cb) in &self.cosets {
                let Some(s) = a.add(b) else { continue };
                let Some(cong) = self.ambient.congruence(&s) else { continue };
                let sum = Coset::new(ca.p2 + cb.p2, ca.n2.gcd(&cb.n2));
                let Some(real) = ap_intersect(sum.p2, sum.n2, cong.offset2, cong.period2) else {
                    continue;
                };
                let ok = self.cosets.get(&s).is_some_and(|cs| real.is_subset_of(cs));
                if !ok {
                    // Recover explicit grades t_a + t_b = t with t real.
                    let t = real.p2;
                    for ta in ca.grades_in(4 * (t.abs() + ca.n2 + cb.n2 + ca.p2.abs() + cb.p2.abs())) {
                        if cb.contains(t - ta) {
                            return Some((AffineRoot::new(*a, ta), AffineRoot::new(*b, t - ta)));
                        }
                    }
                    unreachable!("sum coset has a witness");
                }
            }
        }
        None
    }

    /// Exact test for being a closed subroot system.
    pub fn is_closed_subroot_system(&self) -> bool {
        self.reflection_violation().is_none() && self.closure_violation().is_none()
    }

    /// Inclusion of models, root by root.
    pub fn is_subset_of(&self, other: &SubrootSystem) -> bool {
        self.cosets.iter().all(|(v, c)| other.cosets.get(v).is_some_and(|d| c.is_subset_of(d)))
    }

    /// Cosets of the lexicographically positive roots, the canonical key.
    pub fn positive_cosets(&self) -> Vec<(FiniteRoot, Coset)> {
        self.cosets.iter().filter(|(v, _)| v.is_positive()).map(|(v, c)| (*v, *c)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct CosetEntry {
    root: FiniteRoot,
    p2: i64,
    n2: i64,
}

#[derive(Serialize, Deserialize)]
struct SubrootJson {
    ambient: AffineTypeLabel,
    cosets: Vec<CosetEntry>,
}

impl Serialize for SubrootSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = SubrootJson {
            ambient: self.ambient_label(),
            cosets: self
                .positive_cosets()
                .into_iter()
                .map(|(root, c)| CosetEntry { root, p2: c.p2, n2: c.n2 })
                .collect(),
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubrootSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SubrootJson::deserialize(d)?;
        SubrootSystem::from_cosets(j.ambient, j.cosets.into_iter().map(|e| (e.root, Coset::new(e.p2, e.n2))))
            .map_err(serde::de::Error::custom)
    }
}

/// Finite parts of a set of affine roots.
pub fn gradient_of<'a>(window_set: impl IntoIterator<Item = &'a AffineRoot>) -> BTreeSet<FiniteRoot> {
    window_set.into_iter().map(|x| x.v).collect()
}

/// The lift of a finite subroot system of `Gr(Φ)`: every real root over it.
pub fn lift(finite_sub: &FiniteRootSystem, ambient: AffineTypeLabel) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    let mut cosets = Vec::with_capacity(finite_sub.len());
    for v in finite_sub.roots() {
        let c = amb.congruence(v).ok_or_else(|| Error::InvalidModel(format!("{} is not in Gr({})", v, amb.label())))?;
        cosets.push((*v, Coset::new(c.offset2, c.period2)));
    }
    SubrootSystem::with_ambient(amb, cosets)
}

/// Window-relative reflection check, returning a violating triple
/// `(x, y, s_x(y))` when `s_x(y)` lies in the window but not in the set.
pub fn subroot_witness(window_set: &[AffineRoot], window: Window) -> Option<(AffineRoot, AffineRoot, AffineRoot)> {
    let set: HashSet<AffineRoot> = window_set.iter().copied().collect();
    for x in window_set {
        for y in window_set {
            let Ok(s) = affine_reflect(x, y) else { continue };
            if window.contains(s.t2) && !set.contains(&s) {
                return Some((*x, *y, s));
            }
        }
    }
    None
}

/// True when the set is stable under reflections landing in the window.
pub fn is_subroot_system(window_set: &[AffineRoot], _ambient: AffineTypeLabel, window: Window) -> bool {
    subroot_witness(window_set, window).is_none()
}

/// Window-relative closedness check, returning `(x, y, x+y)` when `x+y`
/// is a real root in the window missing from the set.
pub fn closed_witness(
    window_set: &[AffineRoot],
    ambient: AffineTypeLabel,
    window: Window,
) -> Result<Option<(AffineRoot, AffineRoot, AffineRoot)>> {
    let amb = affine_system(ambient)?;
    let set: HashSet<AffineRoot> = window_set.iter().copied().collect();
    for x in window_set {
        for y in window_set {
            let Some(s) = x.add(y) else { continue };
            if window.contains(s.t2) && amb.contains(&s) && !set.contains(&s) {
                return Ok(Some((*x, *y, s)));
            }
        }
    }
    Ok(None)
}

/// True when every sum of two members that is a real root in the window is
/// a member.
pub fn is_closed(window_set: &[AffineRoot], ambient: AffineTypeLabel, window: Window) -> bool {
    matches!(closed_witness(window_set, ambient, window), Ok(None))
}

/// Fits a coset model to a window set. A root seen at one grade gets
/// `n2 = 0`; otherwise the grades must be every member of one arithmetic
/// progression that falls inside the window.
pub fn fit_coset_model(window_set: &[AffineRoot], ambient: AffineTypeLabel, window: Window) -> Result<SubrootSystem> {
    let mut grades: HashMap<FiniteRoot, Vec<i64>> = HashMap::new();
    for x in window_set {
        grades.entry(x.v).or_default().push(x.t2);
    }
    let r = window.radius2;
    let mut cosets = Vec::with_capacity(grades.len());
    for (v, mut g) in grades {
        g.sort();
        g.dedup();
        let coset = if g.len() == 1 {
            Coset::new(g[0], 0)
        } else {
            let d = g[1] - g[0];
            let arithmetic = g.windows(2).all(|w| w[1] - w[0] == d);
            let complete = g[0] - d < -r && g[g.len() - 1] + d > r;
            if !arithmetic || !complete {
                return Err(Error::NotArithmetic { root: v.to_string(), grades: g });
            }
            Coset::new(g[0], d)
        };
        cosets.push((v, coset));
    }
    SubrootSystem::from_cosets(ambient, cosets)
}

/// Position of a gradient relative to the ambient gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GradientClass {
    Full,
    ProperClosed,
    ProperSemiClosed,
}

/// Every pair of gradient roots whose sum is in `Gr(Φ)` but not in the gradient.
pub fn closure_failures(sub: &SubrootSystem) -> Vec<(FiniteRoot, FiniteRoot)> {
    let amb = sub.ambient().gradient();
    let g = sub.gradient();
    let mut out = Vec::new();
    for a in g.roots() {
        for b in g.roots() {
            if let Some(s) = a.add(b) {
                if amb.contains(&s) && !g.contains(&s) {
                    out.push((*a, *b));
                }
            }
        }
    }
    out
}

/// Classifies the gradient as full, proper closed or proper semi-closed
/// (every closure failure is short + short = long). For `A_{2n}^(2)` the
/// summands may be short or intermediate.
pub fn classify_gradient(sub: &SubrootSystem) -> Result<GradientClass> {
    let amb = sub.ambient();
    if sub.gradient().len() == amb.gradient().len() {
        return Ok(GradientClass::Full);
    }
    let failures = closure_failures(sub);
    if failures.is_empty() {
        return Ok(GradientClass::ProperClosed);
    }
    for (a, b) in &failures {
        let s = a.add(b).expect("failure sums are roots");
        let (la, lb) = (amb.length_class(a), amb.length_class(b));
        let summands_ok = if amb.label().is_a2n() {
            la != Some(LengthClass::Long) && lb != Some(LengthClass::Long)
        } else {
            la == Some(LengthClass::Short) && lb == Some(LengthClass::Short)
        };
        let semi = amb.label().twist > 1 && summands_ok && amb.length_class(&s) == Some(LengthClass::Long);
        if !semi {
            return Err(Error::Trichotomy(a.to_string(), b.to_string()));
        }
    }
    Ok(GradientClass::ProperSemiClosed)
}

/// One failed modulus law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: String,
    pub root: FiniteRoot,
    pub detail: String,
}

/// Outcome of [`check_modulus_laws`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulusReport {
    pub passed: bool,
    pub violations: Vec<LawViolation>,
}

/// Checks the relations between the moduli `n_α` on every irreducible
/// gradient component: constancy on length classes, the divisibility
/// `n_β | ⟨β,α∨⟩ n_α`, vanishing on all or none of the component, and the
/// ambient-specific relation between short, intermediate and long moduli.
pub fn check_modulus_laws(sub: &SubrootSystem) -> ModulusReport {
    let amb = sub.ambient().clone();
    let label = amb.label();
    let m = amb.m();
    let mut violations = Vec::new();
    let mut fail = |law: &str, root: FiniteRoot, detail: String| {
        violations.push(LawViolation { law: law.to_string(), root, detail });
    };
    for comp in sub.gradient().components() {
        let n2 = |v: &FiniteRoot| sub.coset(v).expect("gradient root").n2;
        let mut per_class: BTreeMap<LengthClass, (FiniteRoot, i64)> = BTreeMap::new();
        let mut constant = true;
        for v in comp.roots() {
            let cls = amb.length_class(v).expect("gradient root of the ambient");
            match per_class.get(&cls) {
                Some(&(w, n)) if n != n2(v) => {
                    constant = false;
                    fail("orbit", *v, format!("n2 {} differs from {} on {}", n2(v), n, w));
                }
                Some(_) => {}
                None => {
                    per_class.insert(cls, (*v, n2(v)));
                }
            }
        }
        for a in comp.roots() {
            for b in comp.roots() {
                let k = pairing(b, a).expect("roots pair integrally");
                let (na, nb) = (n2(a), n2(b));
                let ok = if nb == 0 { k * na == 0 } else { (k * na) % nb == 0 };
                if !ok {
                    fail("divisibility", *b, format!("n2 {} does not divide {}·{} ({})", nb, k, na, a));
                }
            }
        }
        let zeros = comp.roots().iter().filter(|v| n2(v) == 0).count();
        if zeros != 0 && zeros != comp.len() {
            fail("zero", comp.roots()[0], "modulus vanishes on part of the component".into());
            continue;
        }
        if zeros == comp.len() || !constant {
            continue;
        }
        let get = |c: LengthClass| per_class.get(&c).map(|&(_, n)| n);
        let (s, i, l) = (get(LengthClass::Short), get(LengthClass::Intermediate), get(LengthClass::Long));
        let anchor = comp.roots()[0];
        if label.twist == 1 {
            let vals: BTreeSet<i64> = per_class.values().map(|&(_, n)| n).collect();
            if vals.len() > 1 {
                fail("untwisted", anchor, format!("moduli {:?} are not all equal", vals));
            }
        } else if label.is_a2n() {
            let odd = |n: i64| (n / 2) % 2 == 1;
            match (s, i, l) {
                (Some(s), Some(i), Some(l)) => {
                    if !(s == i && l == 2 * s && odd(s)) {
                        fail("bc", anchor, format!("short {} intermediate {} long {}", s, i, l));
                    }
                }
                (Some(s), None, Some(l)) => {
                    if !(l == 2 * s && odd(s)) {
                        fail("bc", anchor, format!("short {} long {}", s, l));
                    }
                }
                (Some(s), Some(i), None) => {
                    if s != i {
                        fail("bc", anchor, format!("short {} intermediate {}", s, i));
                    }
                }
                (None, Some(i), Some(l)) => {
                    let want = if (i / 2) % 2 == 0 { i } else { 2 * i };
                    if l != want {
                        fail("bc", anchor, format!("intermediate {} long {}", i, l));
                    }
                }
                _ => {}
            }
        } else if let (Some(s), Some(l)) = (s, l) {
            let want = if s % (2 * m) == 0 { s } else { m * s };
            if l != want {
                fail("twisted", anchor, format!("short {} long {} with m = {}", s, l, m));
            }
        }
    }
    ModulusReport { passed: violations.is_empty(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_roots::window_roots;
    use crate::finite_roots::build_finite;

    fn lbl(s: &str) -> AffineTypeLabel {
        s.parse().unwrap()
    }

    fn root(ints: &[i64], t2: i64) -> AffineRoot {
        AffineRoot::new(FiniteRoot::from_ints(ints).unwrap(), t2)
    }

    #[test]
    fn coset_arithmetic() {
        let c = Coset::new(7, 4);
        assert_eq!(c, Coset { p2: 3, n2: 4 });
        assert!(c.contains(-1));
        assert_eq!(c.neg(), Coset::new(1, 4));
        assert_eq!(c.grades_in(6), vec![-5, -1, 3]);
        assert!(Coset::new(3, 8).is_subset_of(&c));
        assert!(!Coset::new(1, 8).is_subset_of(&c));
        assert_eq!(ap_intersect(1, 4, 0, 6), None);
        assert_eq!(ap_intersect(1, 4, 3, 6), Some(Coset::new(9, 12)));
        assert_eq!(ap_intersect(5, 0, 1, 2), Some(Coset::new(5, 0)));
    }

    #[test]
    fn extend_p_on_d3() {
        let d3 = build_finite("D3".parse().unwrap()).unwrap();
        let p = GradeFunction::from_delta_units(d3, &[0, 0, 1]).unwrap();
        let v = FiniteRoot::from_ints(&[1, 0, 1]).unwrap();
        assert_eq!(extend_p(&p, &v).unwrap(), 2);
        assert_eq!(extend_p(&p, &v.neg()).unwrap(), -2);
        let a = p.system().simple_system()[2];
        assert_eq!(extend_p(&p, &a).unwrap(), 2);
    }

    #[test]
    fn lift_of_full_gradient_is_the_ambient() {
        for l in ["G2^1", "D3^2", "A4^2", "D4^3", "E6^2"] {
            let amb = affine_system(lbl(l)).unwrap();
            let full = lift(amb.gradient(), lbl(l)).unwrap();
            assert_eq!(full.window(8), amb.window(8));
            assert!(full.is_closed_subroot_system());
        }
    }

    #[test]
    fn lift_of_long_roots_in_a4_2() {
        let amb = affine_system(lbl("A4^2")).unwrap();
        let e1 = FiniteRoot::unit(2, 0).scale(2).unwrap();
        let sub = FiniteRootSystem::from_roots(2, [e1, e1.neg()]).unwrap();
        let l = lift(&sub, amb.label()).unwrap();
        assert_eq!(l.coset(&e1), Some(Coset::new(0, 4)));
    }

    #[test]
    fn window_checks_on_examples() {
        let w = Window::new(2).unwrap();
        let a = [root(&[1, 0], 2), root(&[-1, 0], -2)];
        assert!(is_subroot_system(&a, lbl("D3^2"), w));
        let b = [root(&[1, 0], 2), root(&[0, 1], 2), root(&[-1, 0], -2), root(&[0, -1], -2)];
        assert!(is_subroot_system(&b, lbl("D3^2"), w));
        assert!(!is_closed(&b, lbl("D3^2"), Window::new(4).unwrap()));
        let c = [root(&[1, 0], 2), root(&[0, 1], -2), root(&[-1, 0], -2), root(&[0, -1], 2)];
        let wit = closed_witness(&c, lbl("D3^2"), w).unwrap().unwrap();
        assert_eq!(wit.2, root(&[1, 1], 0));
    }

    #[test]
    fn fit_examples() {
        let amb = lbl("A2^2");
        let e = FiniteRoot::unit(1, 0);
        let set: Vec<AffineRoot> =
            [-5, -3, -1, 1, 3, 5].iter().flat_map(|&t| [AffineRoot::new(e, t), AffineRoot::new(e.neg(), -t)]).collect();
        let m = fit_coset_model(&set, amb, Window::new(5).unwrap()).unwrap();
        assert_eq!(m.coset(&e), Some(Coset::new(1, 2)));
        let gap: Vec<AffineRoot> =
            [-1, 1, 3, 5].iter().flat_map(|&t| [AffineRoot::new(e, t), AffineRoot::new(e.neg(), -t)]).collect();
        assert!(matches!(fit_coset_model(&gap, amb, Window::new(5).unwrap()), Err(Error::NotArithmetic { .. })));
        let single = [AffineRoot::new(e, 1), AffineRoot::new(e.neg(), -1)];
        let m = fit_coset_model(&single, amb, Window::new(5).unwrap()).unwrap();
        assert_eq!(m.coset(&e), Some(Coset::new(1, 0)));
        let full = window_roots(lbl("D3^2"), Window::new(8).unwrap()).unwrap();
        let m = fit_coset_model(&full, lbl("D3^2"), Window::new(8).unwrap()).unwrap();
        let amb = affine_system(lbl("D3^2")).unwrap();
        assert_eq!(m, lift(amb.gradient(), lbl("D3^2")).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let amb = affine_system(lbl("D4^3")).unwrap();
        let full = lift(amb.gradient(), lbl("D4^3")).unwrap();
        let s = serde_json::to_string(&full).unwrap();
        let back: SubrootSystem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, full);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn modulus_laws_on_lifts() {
        for l in ["B3^1", "D4^2", "A4^2", "E6^2", "D4^3", "A5^2"] {
            let amb = affine_system(lbl(l)).unwrap();
            let full = lift(amb.gradient(), lbl(l)).unwrap();
            let r = check_modulus_laws(&full);
            assert!(r.passed, "{}: {:?}", l, r.violations);
        }
    }

    #[test]
    fn modulus_laws_flag_bad_ratio() {
        let e1 = FiniteRoot::from_ints(&[1, 0]).unwrap();
        let e2 = FiniteRoot::from_ints(&[0, 1]).unwrap();
        let mut cosets = vec![(e1, Coset::new(0, 2)), (e2, Coset::new(0, 2))];
        for s in [1, -1] {
            cosets.push((e1.lincomb(1, &e2, s).unwrap(), Coset::new(0, 8)));
        }
        let sub = SubrootSystem::from_cosets(lbl("B2^1"), cosets).unwrap();
        assert!(!check_modulus_laws(&sub).passed);
    }

    #[test]
    fn gradient_classes() {
        let amb = affine_system(lbl("E6^2")).unwrap();
        assert_eq!(classify_gradient(&lift(amb.gradient(), amb.label()).unwrap()).unwrap(), GradientClass::Full);
        let e1 = FiniteRoot::from_ints(&[1, 0]).unwrap();
        let e2 = FiniteRoot::from_ints(&[0, 1]).unwrap();
        let semi = SubrootSystem::from_cosets(lbl("D3^2"), [(e1, Coset::new(0, 4)), (e2, Coset::new(2, 4))]).unwrap();
        assert_eq!(classify_gradient(&semi).unwrap(), GradientClass::ProperSemiClosed);
        assert!(semi.is_closed_subroot_system());
        let untw = SubrootSystem::from_cosets(lbl("B2^1"), [(e1, Coset::new(0, 2)), (e2, Coset::new(0, 2))]).unwrap();
        assert!(classify_gradient(&untw).is_err());
    }

    #[test]
    fn exact_checks_agree_with_window_checks() {
        let e1 = FiniteRoot::from_ints(&[1, 0]).unwrap();
        let e2 = FiniteRoot::from_ints(&[0, 1]).unwrap();
        let s = SubrootSystem::from_cosets(lbl("D3^2"), [(e1, Coset::new(2, 0)), (e2, Coset::new(2, 0))]).unwrap();
        assert!(s.reflection_violation().is_none());
        let (x, y) = s.closure_violation().unwrap();
        assert!(affine_system(lbl("D3^2")).unwrap().contains(&x.add(&y).unwrap()));
        let w = s.window(8);
        assert!(!is_closed(&w, lbl("D3^2"), Window::new(8).unwrap()));
    }
}
