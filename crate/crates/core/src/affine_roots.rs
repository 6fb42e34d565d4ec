//! Real affine root systems: membership, δ-grade windows and reflections.
//!
//! An affine root `α + (t/2)δ` is stored as a finite part and the doubled
//! grade `t2 = t`. Each gradient root carries the congruence its grades
//! must satisfy: every even grade in untwisted types, grades in `2mZ` on the
//! long roots of twisted types, and for `A_{2n}^(2)` odd grades on short
//! roots, even grades on intermediate roots and grades in `4Z` on long roots.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_roots::{finite_system, pairing, FiniteRoot, FiniteRootSystem};
use crate::labels::AffineTypeLabel;

/// A real affine root candidate `v + (t2/2)δ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub v: FiniteRoot,
    pub t2: i64,
}

impl AffineRoot {
    pub fn new(v: FiniteRoot, t2: i64) -> Self {
        AffineRoot { v, t2 }
    }

    /// Negation of both the finite part and the grade.
    pub fn neg(&self) -> Self {
        AffineRoot { v: self.v.neg(), t2: -self.t2 }
    }

    /// Sum, or `None` when the finite parts cancel.
    pub fn add(&self, o: &AffineRoot) -> Option<AffineRoot> {
        self.v.add(&o.v).map(|v| AffineRoot { v, t2: self.t2 + o.t2 })
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t2 % 2 == 0 {
            write!(f, "{}+{}δ", self.v, self.t2 / 2)
        } else {
            write!(f, "{}+{}/2δ", self.v, self.t2)
        }
    }
}

impl fmt::Debug for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Symmetric truncation `|t2| <= radius2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub radius2: i64,
}

impl Window {
    pub fn new(radius2: i64) -> Result<Self> {
        if radius2 < 0 {
            return Err(Error::InvalidConfig(format!("negative radius {}", radius2)));
        }
        Ok(Window { radius2 })
    }

    pub fn contains(&self, t2: i64) -> bool {
        t2.abs() <= self.radius2
    }
}

/// Length class of a gradient root relative to the ambient gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LengthClass {
    Short,
    Intermediate,
    Long,
}

/// Allowed doubled grades `offset2 + k·period2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub offset2: i64,
    pub period2: i64,
}

impl Congruence {
    pub fn allows(&self, t2: i64) -> bool {
        (t2 - self.offset2).rem_euclid(self.period2) == 0
    }

    /// Allowed grades in `[-r, r]`, ascending.
    pub fn grades_in(&self, r: i64) -> impl Iterator<Item = i64> + '_ {
        let start = -r + (self.offset2 + r).rem_euclid(self.period2);
        (start..=r).step_by(self.period2 as usize)
    }
}

/// An irreducible real affine root system, realized through its gradient
/// and per-root grade congruences.
pub struct AffineRootSystem {
    label: AffineTypeLabel,
    gradient: Arc<FiniteRootSystem>,
    congruence: Vec<Congruence>,
    class: Vec<LengthClass>,
}

impl fmt::Debug for AffineRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineRootSystem({})", self.label)
    }
}

impl AffineRootSystem {
    fn build(label: AffineTypeLabel) -> Self {
        let gradient = finite_system(label.gradient_label());
        let lens = gradient.lengths();
        let m = label.m() as i64;
        let mut congruence = Vec::with_capacity(gradient.len());
        let mut class = Vec::with_capacity(gradient.len());
        for v in gradient.roots() {
            let n = v.norm4();
            let c = if label.is_a2n() {
                match n {
                    4 => LengthClass::Short,
                    8 => LengthClass::Intermediate,
                    _ => LengthClass::Long,
                }
            } else if lens.len() == 1 || n == lens[0] {
                LengthClass::Short
            } else {
                LengthClass::Long
            };
            let cong = match (label.is_a2n(), c) {
                (true, LengthClass::Short) => Congruence { offset2: 1, period2: 2 },
                (true, LengthClass::Intermediate) => Congruence { offset2: 0, period2: 2 },
                (true, LengthClass::Long) => Congruence { offset2: 0, period2: 4 },
                (false, LengthClass::Long) => Congruence { offset2: 0, period2: 2 * m },
                _ => Congruence { offset2: 0, period2: 2 },
            };
            congruence.push(cong);
            class.push(c);
        }
        AffineRootSystem { label, gradient, congruence, class }
    }

    /// Canonical label.
    pub fn label(&self) -> AffineTypeLabel {
        self.label
    }

    /// The constant `m`.
    pub fn m(&self) -> i64 {
        self.label.m() as i64
    }

    /// Gradient root system.
    pub fn gradient(&self) -> &FiniteRootSystem {
        &self.gradient
    }

    /// Shared handle to the gradient root system.
    pub fn gradient_arc(&self) -> Arc<FiniteRootSystem> {
        self.gradient.clone()
    }

    /// Ambient dimension of the finite parts.
    pub fn dim(&self) -> usize {
        self.gradient.dim()
    }

    /// Grade congruence of a gradient root.
    pub fn congruence(&self, v: &FiniteRoot) -> Option<Congruence> {
        self.gradient.index_of(v).map(|i| self.congruence[i])
    }

    /// Length class of a gradient root.
    pub fn length_class(&self, v: &FiniteRoot) -> Option<LengthClass> {
        self.gradient.index_of(v).map(|i| self.class[i])
    }

    /// Membership of a candidate affine root.
    pub fn contains(&self, x: &AffineRoot) -> bool {
        self.congruence(&x.v).is_some_and(|c| c.allows(x.t2))
    }

    /// All real roots with `|t2| <= radius2`, sorted.
    pub fn window(&self, radius2: i64) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for (i, v) in self.gradient.roots().iter().enumerate() {
            for t2 in self.congruence[i].grades_in(radius2) {
                out.push(AffineRoot::new(*v, t2));
            }
        }
        out.sort();
        out
    }

    /// The period of the full system on a gradient root (doubled units).
    pub fn full_period2(&self, v: &FiniteRoot) -> Option<i64> {
        self.congruence(v).map(|c| c.period2)
    }
}

/// Shared, cached realization of an affine type (label canonicalized).
pub fn affine_system(label: AffineTypeLabel) -> Result<Arc<AffineRootSystem>> {
    static CACHE: OnceLock<Mutex<HashMap<AffineTypeLabel, Arc<AffineRootSystem>>>> = OnceLock::new();
    let label = label.canonical()?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&label) {
        return Ok(s.clone());
    }
    let s = Arc::new(AffineRootSystem::build(label));
    cache.lock().unwrap().insert(label, s.clone());
    Ok(s)
}

/// The constant `m` of an affine type.
pub fn m_of(label: AffineTypeLabel) -> u8 {
    label.m()
}

/// The gradient root system: the finite root system for all types except
/// `A_{2n}^(2)`, whose gradient is `BC_n`.
pub fn gradient_system(label: AffineTypeLabel) -> Result<FiniteRootSystem> {
    Ok(affine_system(label)?.gradient().clone())
}

/// Membership test for a real affine root.
pub fn is_real_root(label: AffineTypeLabel, candidate: &AffineRoot) -> Result<bool> {
    let sys = affine_system(label)?;
    if candidate.v.dim() != sys.dim() {
        return Err(Error::DimensionMismatch(candidate.v.dim(), sys.dim()));
    }
    Ok(sys.contains(candidate))
}

/// Real roots inside a window, sorted.
pub fn window_roots(label: AffineTypeLabel, window: Window) -> Result<Vec<AffineRoot>> {
    Ok(affine_system(label)?.window(window.radius2))
}

/// True for the zero finite part with a nonzero even doubled grade, i.e. a
/// nonzero integer multiple of `δ`.
pub fn is_imaginary(v: &[i64], grade2: i64) -> bool {
    v.iter().all(|&x| x == 0) && grade2 != 0 && grade2 % 2 == 0
}

/// Reflection of affine roots: the finite part reflects as usual and the
/// grade becomes `t2_y − ⟨y, x∨⟩·t2_x`.
pub fn affine_reflect(x: &AffineRoot, y: &AffineRoot) -> Result<AffineRoot> {
    let k = pairing(&y.v, &x.v)?;
    let v = y.v.lincomb(1, &x.v, -k).expect("reflection of a nonzero vector is nonzero");
    Ok(AffineRoot::new(v, y.t2 - k * x.t2))
}
