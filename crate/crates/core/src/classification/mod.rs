//! Maximal closed subroot systems of the irreducible affine types.
//!
//! Every family is exposed three ways: a constructor taking concrete
//! parameters (see [`constructors`]), a symbolic [`MaximalFamily`]
//! descriptor listing the parameter domain and the resulting type, and a
//! [`Params`] value that [`instantiate`] turns into a [`SubrootSystem`].
//! Prime families are infinite, so descriptors are listed symbolically and
//! only instantiated over an explicit [`InstanceGrid`].

pub mod constructors;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::affine_roots::{affine_system, LengthClass};
use crate::error::{Error, Result};
use crate::finite_roots::{finite_maximal_closed, finite_maximal_subsystems, is_prime, FiniteRoot};
use crate::labels::{AffineTypeLabel, ComponentLabel, Family, FiniteTypeLabel, TypeSum};
use crate::subroot_model::{classify_gradient, GradeFunction, GradientClass, SubrootSystem};

pub use constructors::*;

/// The families of maximal closed subroot systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "UNTWISTED_PRIME")]
    UntwistedPrime,
    #[serde(rename = "UNTWISTED_FINITE_LIFT")]
    UntwistedFiniteLift,
    #[serde(rename = "TWISTED_PRIME")]
    TwistedPrime,
    #[serde(rename = "TWISTED_FINITE_LIFT")]
    TwistedFiniteLift,
    #[serde(rename = "PSI_I_D2")]
    PsiID2,
    #[serde(rename = "PSI_P_A2ODD")]
    PsiPA2Odd,
    #[serde(rename = "PSI_D4_3")]
    PsiD43,
    #[serde(rename = "PSI_P_E6")]
    PsiPE6,
    #[serde(rename = "A2N_AJ")]
    A2nAj,
    #[serde(rename = "A2N_PSI_I")]
    A2nPsiI,
    #[serde(rename = "A2N_PRIME")]
    A2nPrime,
    #[serde(rename = "A2_PRIME")]
    A2Prime,
    #[serde(rename = "A2_SHORT_EVEN")]
    A2ShortEven,
    #[serde(rename = "A2_SHORT_ODD")]
    A2ShortOdd,
    #[serde(rename = "A2_LONG")]
    A2Long,
}

/// Concrete parameters of one family member.
///
/// Grade functions of the prime families are given by δ-unit values on the
/// simple system of the ambient gradient; the `eps2` vectors are doubled
/// values on `ε_1..ε_n`; `gamma` lists δ-unit values on
/// `ε_2, ε_3, ε_4, ½(ε_1 − ε_2 − ε_3 − ε_4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Params {
    #[serde(rename = "UNTWISTED_PRIME")]
    UntwistedPrime { p: Vec<i64>, q: i64 },
    #[serde(rename = "UNTWISTED_FINITE_LIFT")]
    UntwistedFiniteLift { simple_system: Vec<FiniteRoot> },
    #[serde(rename = "TWISTED_PRIME")]
    TwistedPrime { p: Vec<i64>, q: i64 },
    #[serde(rename = "TWISTED_FINITE_LIFT")]
    TwistedFiniteLift { simple_system: Vec<FiniteRoot> },
    #[serde(rename = "PSI_I_D2")]
    PsiID2 { i: Vec<usize> },
    #[serde(rename = "PSI_P_A2ODD")]
    PsiPA2Odd { eps2: Vec<i64> },
    #[serde(rename = "PSI_D4_3")]
    PsiD43 { perm: [usize; 3], ell: i64 },
    #[serde(rename = "PSI_P_E6")]
    PsiPE6 { gamma: [i64; 4] },
    #[serde(rename = "A2N_AJ")]
    A2nAj { j: Vec<usize> },
    #[serde(rename = "A2N_PSI_I")]
    A2nPsiI { i: Vec<usize> },
    #[serde(rename = "A2N_PRIME")]
    A2nPrime { eps2: Vec<i64>, q: i64 },
    #[serde(rename = "A2_PRIME")]
    A2Prime { k: i64, q: i64 },
    #[serde(rename = "A2_SHORT_EVEN")]
    A2ShortEven,
    #[serde(rename = "A2_SHORT_ODD")]
    A2ShortOdd,
    #[serde(rename = "A2_LONG")]
    A2Long,
}

impl Params {
    /// The family this parameter set belongs to.
    pub fn kind(&self) -> FamilyKind {
        match self {
            Params::UntwistedPrime { .. } => FamilyKind::UntwistedPrime,
            Params::UntwistedFiniteLift { .. } => FamilyKind::UntwistedFiniteLift,
            Params::TwistedPrime { .. } => FamilyKind::TwistedPrime,
            Params::TwistedFiniteLift { .. } => FamilyKind::TwistedFiniteLift,
            Params::PsiID2 { .. } => FamilyKind::PsiID2,
            Params::PsiPA2Odd { .. } => FamilyKind::PsiPA2Odd,
            Params::PsiD43 { .. } => FamilyKind::PsiD43,
            Params::PsiPE6 { .. } => FamilyKind::PsiPE6,
            Params::A2nAj { .. } => FamilyKind::A2nAj,
            Params::A2nPsiI { .. } => FamilyKind::A2nPsiI,
            Params::A2nPrime { .. } => FamilyKind::A2nPrime,
            Params::A2Prime { .. } => FamilyKind::A2Prime,
            Params::A2ShortEven => FamilyKind::A2ShortEven,
            Params::A2ShortOdd => FamilyKind::A2ShortOdd,
            Params::A2Long => FamilyKind::A2Long,
        }
    }
}

/// Admissible moduli of a prime family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSet {
    Any,
    Equal(i64),
    Except(i64),
    Odd,
}

impl PrimeSet {
    pub fn allows(&self, q: i64) -> bool {
        q >= 2
            && is_prime(q as u64)
            && match *self {
                PrimeSet::Any => true,
                PrimeSet::Equal(m) => q == m,
                PrimeSet::Except(m) => q != m,
                PrimeSet::Odd => q != 2,
            }
    }

    fn smallest(&self) -> i64 {
        (2..).find(|&q| self.allows(q)).expect("some prime is allowed")
    }
}

/// Constraint on the grade function of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradeRule {
    /// Any Z-linear function on the gradient.
    Integral,
    /// Values on long roots divisible by the given integer.
    LongDivisibleBy(i64),
    /// Z-linear on `D_n` with `p_{ε_s−ε_t}` and `p_{ε_s+ε_t}` of different parity.
    OppositeParity,
    /// Z-linear on the short `D_4` with exactly two of `p_{ε_i}` even.
    TwoEvenOnEps,
    /// Values on every `ε_i` in `½ + Z`.
    HalfOddOnEps,
}

/// Symbolic description of a family's parameter domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "domain", rename_all = "snake_case")]
pub enum ParamDomain {
    /// A prime modulus and a grade function taken modulo it.
    PrimeAndGrade { primes: PrimeSet, grade: GradeRule },
    /// One fixed maximal closed subsystem of the gradient.
    Subsystem { label: TypeSum, simple_system: Vec<FiniteRoot> },
    /// Subsets of `{1..n}` of one size.
    Subsets { n: usize, size: usize },
    /// All subsets of `{1..n}`.
    AllSubsets { n: usize },
    /// A grade function modulo 2.
    Grade { grade: GradeRule },
    /// A permutation of `(1, 2, 3)` and `ℓ ≢ 0 (mod 3)`.
    PermutationAndShift,
    /// `k ∈ Z` modulo an odd prime `q`.
    ShiftAndOddPrime,
    /// No parameters.
    Fixed,
}

/// A family of maximal closed subroot systems of one ambient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalFamily {
    pub ambient: AffineTypeLabel,
    pub kind: FamilyKind,
    #[serde(rename = "params")]
    pub domain: ParamDomain,
    #[serde(rename = "type")]
    pub result_type: TypeSum,
    pub gradient: GradientClass,
}

/// Which parameters to instantiate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceGrid {
    /// Candidate prime moduli.
    pub primes: Vec<i64>,
    /// All grade shifts, subsets and permutations when true; one canonical
    /// representative per family and prime otherwise.
    pub exhaustive: bool,
    /// Cap on instances per family.
    pub limit: usize,
}

impl InstanceGrid {
    /// Canonical representatives for every prime up to `max_prime`.
    pub fn sample(max_prime: i64) -> Self {
        InstanceGrid { primes: primes_up_to(max_prime), exhaustive: false, limit: usize::MAX }
    }

    /// Every parameter choice (modulo periods) for primes up to `max_prime`.
    pub fn full(max_prime: i64, limit: usize) -> Self {
        InstanceGrid { primes: primes_up_to(max_prime), exhaustive: true, limit }
    }
}

/// Primes `2 <= q <= max`.
pub fn primes_up_to(max: i64) -> Vec<i64> {
    (2..=max).filter(|&q| is_prime(q as u64)).collect()
}

fn affine_part(family: Family, rank: u32, twist: u8) -> ComponentLabel {
    ComponentLabel::Affine(AffineTypeLabel::of(family, rank, twist))
}

/// Sum of `X^1` over the parts of a finite label (ambient untwisted), or
/// with non-simply-laced parts turned twisted (ambient twisted).
fn lifted_type(sub: &TypeSum, twisted: bool) -> Result<TypeSum> {
    let mut parts = Vec::new();
    for p in sub.parts() {
        let ComponentLabel::Finite(l) = p else {
            return Err(Error::Unrecognized(format!("{} is not finite", p)));
        };
        let a = if twisted && !l.is_simply_laced() {
            AffineTypeLabel::twisted_with_gradient(*l)?
        } else {
            AffineTypeLabel::new(*l, 1)?
        };
        parts.push(ComponentLabel::Affine(a));
    }
    Ok(TypeSum::new(parts))
}

/// Lists the families of maximal closed subroot systems of an ambient.
pub fn enumerate_families(ambient: AffineTypeLabel) -> Result<Vec<MaximalFamily>> {
    let amb = affine_system(ambient)?;
    let label = amb.label();
    let grad = amb.gradient();
    let mut out = Vec::new();
    let mut push = |kind, domain, result_type, gradient| {
        out.push(MaximalFamily { ambient: label, kind, domain, result_type, gradient });
    };
    if label.twist == 1 {
        push(
            FamilyKind::UntwistedPrime,
            ParamDomain::PrimeAndGrade { primes: PrimeSet::Any, grade: GradeRule::Integral },
            TypeSum::affine([label]),
            GradientClass::Full,
        );
        for sub in finite_maximal_subsystems(grad)? {
            push(
                FamilyKind::UntwistedFiniteLift,
                ParamDomain::Subsystem { label: sub.label().clone(), simple_system: sub.simple_system().to_vec() },
                lifted_type(sub.label(), false)?,
                GradientClass::ProperClosed,
            );
        }
    } else if label.is_a2n() {
        let n = label.base.rank / 2;
        if n == 1 {
            push(FamilyKind::A2Prime, ParamDomain::ShiftAndOddPrime, TypeSum::affine([label]), GradientClass::Full);
            let a1 = TypeSum::new([affine_part(Family::A, 1, 1)]);
            push(FamilyKind::A2ShortEven, ParamDomain::Fixed, a1.clone(), GradientClass::ProperSemiClosed);
            push(FamilyKind::A2ShortOdd, ParamDomain::Fixed, a1.clone(), GradientClass::ProperSemiClosed);
            push(FamilyKind::A2Long, ParamDomain::Fixed, a1, GradientClass::ProperClosed);
        } else {
            for r in 0..n {
                let ty = if r == 0 {
                    TypeSum::new([affine_part(Family::A, 2 * n - 1, 2)])
                } else {
                    TypeSum::new([affine_part(Family::A, 2 * r, 2), affine_part(Family::A, 2 * (n - r) - 1, 2)])
                };
                push(
                    FamilyKind::A2nAj,
                    ParamDomain::Subsets { n: n as usize, size: r as usize },
                    ty,
                    GradientClass::ProperClosed,
                );
            }
            push(
                FamilyKind::A2nPrime,
                ParamDomain::PrimeAndGrade { primes: PrimeSet::Odd, grade: GradeRule::HalfOddOnEps },
                TypeSum::affine([label]),
                GradientClass::Full,
            );
            push(
                FamilyKind::A2nPsiI,
                ParamDomain::AllSubsets { n: n as usize },
                TypeSum::new([affine_part(Family::B, n, 1)]),
                GradientClass::ProperSemiClosed,
            );
        }
    } else {
        let m = amb.m();
        let gl = label.gradient_label();
        push(
            FamilyKind::TwistedPrime,
            ParamDomain::PrimeAndGrade { primes: PrimeSet::Equal(m), grade: GradeRule::LongDivisibleBy(m) },
            TypeSum::affine([AffineTypeLabel::new(gl, 1)?]),
            GradientClass::Full,
        );
        push(
            FamilyKind::TwistedPrime,
            ParamDomain::PrimeAndGrade { primes: PrimeSet::Except(m), grade: GradeRule::LongDivisibleBy(m) },
            TypeSum::affine([label]),
            GradientClass::Full,
        );
        for sub in finite_maximal_subsystems(grad)? {
            if !sub.roots().iter().any(|v| amb.length_class(v) == Some(LengthClass::Short)) {
                continue;
            }
            push(
                FamilyKind::TwistedFiniteLift,
                ParamDomain::Subsystem { label: sub.label().clone(), simple_system: sub.simple_system().to_vec() },
                lifted_type(sub.label(), true)?,
                GradientClass::ProperClosed,
            );
        }
        let n = gl.rank;
        match gl.family {
            Family::B => {
                for r in 1..n {
                    push(
                        FamilyKind::PsiID2,
                        ParamDomain::Subsets { n: n as usize, size: r as usize },
                        TypeSum::new([affine_part(Family::B, r, 1), affine_part(Family::B, n - r, 1)]),
                        GradientClass::ProperSemiClosed,
                    );
                }
            }
            Family::C => push(
                FamilyKind::PsiPA2Odd,
                ParamDomain::Grade { grade: GradeRule::OppositeParity },
                TypeSum::new([affine_part(Family::D, n, 1)]),
                GradientClass::ProperSemiClosed,
            ),
            Family::G => push(
                FamilyKind::PsiD43,
                ParamDomain::PermutationAndShift,
                TypeSum::new([affine_part(Family::A, 2, 1)]),
                GradientClass::ProperSemiClosed,
            ),
            Family::F => push(
                FamilyKind::PsiPE6,
                ParamDomain::Grade { grade: GradeRule::TwoEvenOnEps },
                TypeSum::new([affine_part(Family::C, 4, 1)]),
                GradientClass::ProperSemiClosed,
            ),
            _ => {
                return Err(Error::UnsupportedAmbient(format!("no semi-closed family for {}", label)));
            }
        }
    }
    Ok(out)
}

/// All vectors in `[0, bound)^len`, lexicographically.
fn grid_vectors(len: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..len).map(|_| 0..bound).multi_cartesian_product().chain((len == 0).then(Vec::new))
}

fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=n).combinations(size)
}

impl MaximalFamily {
    /// Parameter sets of this family on a grid.
    pub fn instances(&self, grid: &InstanceGrid) -> Result<Vec<Params>> {
        let amb = affine_system(self.ambient)?;
        let rank = amb.gradient().rank();
        let mut out: Vec<Params> = Vec::new();
        let cap = grid.limit;
        let primes = |set: &PrimeSet| -> Vec<i64> { grid.primes.iter().copied().filter(|&q| set.allows(q)).collect() };
        match (&self.kind, &self.domain) {
            (FamilyKind::UntwistedPrime, ParamDomain::PrimeAndGrade { primes: set, .. }) => {
                for q in primes(set) {
                    let ps: Vec<Vec<i64>> =
                        if grid.exhaustive { grid_vectors(rank, q).take(cap).collect() } else { vec![vec![0; rank]] };
                    out.extend(ps.into_iter().map(|p| Params::UntwistedPrime { p, q }));
                }
            }
            (FamilyKind::TwistedPrime, ParamDomain::PrimeAndGrade { primes: set, .. }) => {
                let m = amb.m();
                for q in primes(set) {
                    if !grid.exhaustive {
                        out.push(Params::TwistedPrime { p: vec![0; rank], q });
                        continue;
                    }
                    let bound = if q == m { q } else { q * m };
                    let mut seen = HashSet::new();
                    for p in grid_vectors(rank, bound) {
                        let params = Params::TwistedPrime { p, q };
                        if let Ok(s) = instantiate(self.ambient, &params) {
                            if seen.insert(s) {
                                out.push(params);
                                if seen.len() >= cap {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
            (FamilyKind::UntwistedFiniteLift, ParamDomain::Subsystem { simple_system, .. }) => {
                out.push(Params::UntwistedFiniteLift { simple_system: simple_system.clone() });
            }
            (FamilyKind::TwistedFiniteLift, ParamDomain::Subsystem { simple_system, .. }) => {
                out.push(Params::TwistedFiniteLift { simple_system: simple_system.clone() });
            }
            (FamilyKind::PsiID2 | FamilyKind::A2nAj, ParamDomain::Subsets { n, size }) => {
                let sets: Vec<Vec<usize>> =
                    if grid.exhaustive { subsets(*n, *size).take(cap).collect() } else { vec![(1..=*size).collect()] };
                for s in sets {
                    out.push(match self.kind {
                        FamilyKind::PsiID2 => Params::PsiID2 { i: s },
                        _ => Params::A2nAj { j: s },
                    });
                }
            }
            (FamilyKind::A2nPsiI, ParamDomain::AllSubsets { n }) => {
                if grid.exhaustive {
                    for size in 0..=*n {
                        out.extend(subsets(*n, size).map(|i| Params::A2nPsiI { i }));
                    }
                    out.truncate(cap);
                } else {
                    out.push(Params::A2nPsiI { i: (1..=*n).collect() });
                }
            }
            (FamilyKind::PsiPA2Odd, _) => {
                let n = rank;
                if grid.exhaustive {
                    for bits in grid_vectors(n, 2).take(cap) {
                        out.push(Params::PsiPA2Odd { eps2: bits.iter().map(|b| 1 + 2 * b).collect() });
                    }
                } else {
                    out.push(Params::PsiPA2Odd { eps2: vec![1; n] });
                }
            }
            (FamilyKind::PsiD43, _) => {
                if grid.exhaustive {
                    for perm in (1..=3usize).permutations(3) {
                        for ell in [1, 2] {
                            out.push(Params::PsiD43 { perm: [perm[0], perm[1], perm[2]], ell });
                        }
                    }
                    out.truncate(cap);
                } else {
                    out.push(Params::PsiD43 { perm: [1, 2, 3], ell: 1 });
                }
            }
            (FamilyKind::PsiPE6, _) => {
                if grid.exhaustive {
                    let mut seen = HashSet::new();
                    for g in grid_vectors(4, 2) {
                        let params = Params::PsiPE6 { gamma: [g[0], g[1], g[2], g[3]] };
                        if let Ok(s) = instantiate(self.ambient, &params) {
                            if seen.insert(s) {
                                out.push(params);
                            }
                        }
                    }
                    out.truncate(cap);
                } else {
                    out.push(Params::PsiPE6 { gamma: [0, 1, 1, 0] });
                }
            }
            (FamilyKind::A2nPrime, ParamDomain::PrimeAndGrade { primes: set, .. }) => {
                let n = rank;
                for q in primes(set) {
                    if grid.exhaustive {
                        for v in grid_vectors(n, q).take(cap) {
                            out.push(Params::A2nPrime { eps2: v.iter().map(|x| 2 * x + 1).collect(), q });
                        }
                    } else {
                        out.push(Params::A2nPrime { eps2: vec![1; n], q });
                    }
                }
            }
            (FamilyKind::A2Prime, _) => {
                for q in primes(&PrimeSet::Odd) {
                    let ks: Vec<i64> = if grid.exhaustive { (0..q).take(cap).collect() } else { vec![0] };
                    out.extend(ks.into_iter().map(|k| Params::A2Prime { k, q }));
                }
            }
            (FamilyKind::A2ShortEven, _) => out.push(Params::A2ShortEven),
            (FamilyKind::A2ShortOdd, _) => out.push(Params::A2ShortOdd),
            (FamilyKind::A2Long, _) => out.push(Params::A2Long),
            (kind, domain) => {
                return Err(Error::InvalidParameter(format!("{:?} does not take {:?}", kind, domain)));
            }
        }
        Ok(out)
    }

    /// One canonical member of the family, using the smallest admissible prime.
    pub fn representative(&self) -> Result<Params> {
        let q = match &self.domain {
            ParamDomain::PrimeAndGrade { primes, .. } => primes.smallest(),
            ParamDomain::ShiftAndOddPrime => 3,
            _ => 2,
        };
        let grid = InstanceGrid { primes: vec![q], exhaustive: false, limit: 1 };
        self.instances(&grid)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvalidParameter(format!("{:?} has no representative", self.kind)))
    }
}

/// Builds the subroot system for a parameter set in an ambient.
pub fn instantiate(ambient: AffineTypeLabel, params: &Params) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    let label = amb.label();
    let n = amb.gradient().rank();
    let expect = |ok: bool| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedAmbient(format!("{:?} does not apply to {}", params.kind(), label)))
        }
    };
    match params {
        Params::UntwistedPrime { p, q } => {
            untwisted_prime(label, &GradeFunction::from_delta_units(amb.gradient().clone(), p)?, *q)
        }
        Params::TwistedPrime { p, q } => {
            twisted_prime(label, &GradeFunction::from_delta_units(amb.gradient().clone(), p)?, *q)
        }
        Params::UntwistedFiniteLift { simple_system } => {
            untwisted_finite_lift(label, &generated_subsystem(simple_system, amb.gradient())?)
        }
        Params::TwistedFiniteLift { simple_system } => {
            twisted_finite_lift(label, &generated_subsystem(simple_system, amb.gradient())?)
        }
        Params::PsiID2 { i } => {
            expect(label.twist == 2 && label.base.family == Family::D)?;
            psi_i_d2(n, i)
        }
        Params::PsiPA2Odd { eps2 } => {
            expect(label.twist == 2 && label.base.family == Family::A && !label.is_a2n())?;
            psi_p_a2odd(n, &a2odd_grade_function(n, eps2)?)
        }
        Params::PsiD43 { perm, ell } => {
            expect(label.twist == 3)?;
            psi_d4_3(*perm, *ell)
        }
        Params::PsiPE6 { gamma } => {
            expect(label.twist == 2 && label.base.family == Family::E)?;
            psi_p_e6(&e6_grade_function(*gamma)?)
        }
        Params::A2nAj { j } => {
            expect(label.is_a2n())?;
            a2n_aj(n, j)
        }
        Params::A2nPsiI { i } => {
            expect(label.is_a2n())?;
            a2n_psi_i(n, i)
        }
        Params::A2nPrime { eps2, q } => {
            expect(label.is_a2n())?;
            a2n_prime(n, &a2n_grade_function(n, eps2)?, *q)
        }
        Params::A2Prime { k, q } => {
            expect(label.is_a2n() && n == 1)?;
            a2_family(A2Kind::Prime { k: *k, q: *q })
        }
        Params::A2ShortEven => {
            expect(label.is_a2n() && n == 1)?;
            a2_family(A2Kind::ShortEven)
        }
        Params::A2ShortOdd => {
            expect(label.is_a2n() && n == 1)?;
            a2_family(A2Kind::ShortOdd)
        }
        Params::A2Long => {
            expect(label.is_a2n() && n == 1)?;
            a2_family(A2Kind::Long)
        }
    }
}

/// Every instance of every family of an ambient on a grid, deduplicated by
/// coset model and paired with its family.
pub fn instantiate_all(
    ambient: AffineTypeLabel,
    grid: &InstanceGrid,
) -> Result<Vec<(MaximalFamily, Params, SubrootSystem)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for fam in enumerate_families(ambient)? {
        for params in fam.instances(grid)? {
            let sub = instantiate(ambient, &params)?;
            if seen.insert(sub.clone()) {
                out.push((fam.clone(), params, sub));
            }
        }
    }
    Ok(out)
}

/// The affine type of a subroot system, read off per gradient component
/// from the moduli on each root length: all zero gives a finite label, a
/// single length or equal moduli give `X^(1)`, a long modulus equal to the
/// squared-length ratio times the short one gives the twisted type with
/// gradient `X`, and a `BC_r` component with `n_s = n_im`, `n_ℓ = 2n_s`
/// gives `A_{2r}^(2)`.
pub fn type_of(sub: &SubrootSystem) -> Result<TypeSum> {
    let mut parts = Vec::new();
    for comp in sub.components() {
        let label = match comp.gradient().label().parts() {
            [ComponentLabel::Finite(l)] => *l,
            _ => return Err(Error::Unrecognized(format!("component {}", comp.gradient().label()))),
        };
        let mut by_norm: BTreeMap<i64, BTreeSet<i64>> = BTreeMap::new();
        for (v, c) in comp.cosets() {
            by_norm.entry(v.norm4()).or_default().insert(c.n2);
        }
        if by_norm.values().any(|s| s.len() > 1) {
            return Err(Error::Unrecognized(format!("moduli of {} vary on a root length", label)));
        }
        let mods: Vec<(i64, i64)> = by_norm.iter().map(|(k, s)| (*k, *s.first().expect("nonempty"))).collect();
        if mods.iter().all(|&(_, n)| n == 0) {
            parts.push(ComponentLabel::Finite(label));
            continue;
        }
        if mods.iter().any(|&(_, n)| n == 0) {
            return Err(Error::Unrecognized(format!("moduli of {} vanish on part of it", label)));
        }
        let bad = || Error::Unrecognized(format!("moduli {:?} on {}", mods, label));
        let affine = match (label.family, mods.as_slice()) {
            (_, [_]) => AffineTypeLabel::new(label, 1)?,
            (Family::BC, [(_, s), (_, l)]) if *l == 2 * s => AffineTypeLabel::twisted_with_gradient(label)?,
            (Family::BC, [(_, s), (_, i), (_, l)]) if s == i && *l == 2 * s => {
                AffineTypeLabel::twisted_with_gradient(label)?
            }
            (Family::BC, _) => return Err(bad()),
            (_, [(ns4, s), (nl4, l)]) => {
                if s == l {
                    AffineTypeLabel::new(label, 1)?
                } else if *l == (nl4 / ns4) * s {
                    AffineTypeLabel::twisted_with_gradient(label)?
                } else {
                    return Err(bad());
                }
            }
            _ => return Err(bad()),
        };
        parts.push(ComponentLabel::Affine(affine));
    }
    Ok(TypeSum::new(parts))
}

/// Maximal closed types of a finite irreducible type.
pub fn finite_table(label: FiniteTypeLabel) -> Result<Vec<TypeSum>> {
    finite_maximal_closed(label)
}

/// One line of an affine classification table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableEntry {
    #[serde(rename = "type")]
    pub result_type: TypeSum,
    pub gradient: GradientClassKey,
    pub kind: FamilyKind,
}

/// Orderable mirror of [`GradientClass`] for table rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GradientClassKey {
    Full,
    ProperClosed,
    ProperSemiClosed,
}

impl From<GradientClass> for GradientClassKey {
    fn from(g: GradientClass) -> Self {
        match g {
            GradientClass::Full => GradientClassKey::Full,
            GradientClass::ProperClosed => GradientClassKey::ProperClosed,
            GradientClass::ProperSemiClosed => GradientClassKey::ProperSemiClosed,
        }
    }
}

/// The classification table row of an ambient, computed by instantiating a
/// representative of every family and reading off its type and gradient.
pub fn affine_table(ambient: AffineTypeLabel) -> Result<Vec<TableEntry>> {
    let mut rows = BTreeSet::new();
    for fam in enumerate_families(ambient)? {
        let sub = instantiate(ambient, &fam.representative()?)?;
        rows.insert(TableEntry {
            result_type: type_of(&sub)?,
            gradient: classify_gradient(&sub)?.into(),
            kind: fam.kind,
        });
    }
    Ok(rows.into_iter().collect())
}

/// Distinct types in a table row.
pub fn table_types(rows: &[TableEntry]) -> BTreeSet<TypeSum> {
    rows.iter().map(|r| r.result_type.clone()).collect()
}
