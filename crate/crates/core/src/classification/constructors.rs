//! Constructors for every family of maximal closed subroot systems.
//!
//! Grades are doubled throughout: a coset `(p2, n2)` stands for the
//! δ-grades `p2/2 + (n2/2)·Z`. Index sets such as `I` and `J` are 1-based
//! subsets of `{1, …, n}`, matching the usual `ε_1, …, ε_n` numbering.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::affine_roots::{affine_system, LengthClass};
use crate::error::{Error, Result};
use crate::finite_roots::{finite_closure, is_maximal_closed_finite, is_prime, FiniteRoot, FiniteRootSystem};
use crate::labels::{AffineTypeLabel, Family};
use crate::subroot_model::{lift, Coset, GradeFunction, SubrootSystem};

fn eps(n: usize, i: usize) -> FiniteRoot {
    FiniteRoot::unit(n, i)
}

/// `ε_i + s·ε_j` with 0-based indices.
fn eps_pair(n: usize, i: usize, j: usize, s: i64) -> FiniteRoot {
    eps(n, i).lincomb(1, &eps(n, j), s).expect("distinct indices")
}

fn check_prime(q: i64) -> Result<()> {
    if q < 2 || !is_prime(q as u64) {
        return Err(Error::InvalidParameter(format!("{} is not prime", q)));
    }
    Ok(())
}

/// Validates a 1-based index set inside `{1..n}` and returns it 0-based.
fn index_set(n: usize, set: &[usize], what: &str) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for &i in set {
        if i == 0 || i > n {
            return Err(Error::InvalidParameter(format!("{} contains {} outside 1..={}", what, i, n)));
        }
        out.insert(i - 1);
    }
    Ok(out)
}

fn same_system(p: &GradeFunction, expected: &FiniteRootSystem, what: &str) -> Result<()> {
    if p.system().roots() != expected.roots() {
        return Err(Error::InvalidParameter(format!("grade function must live on {}", what)));
    }
    Ok(())
}

/// Full-gradient family of an untwisted ambient: `α + (p_α + rq)δ`.
pub fn untwisted_prime(ambient: AffineTypeLabel, p: &GradeFunction, q: i64) -> Result<SubrootSystem> {
    check_prime(q)?;
    untwisted_periodic(ambient, p, q)
}

/// `α + (p_α + rn)δ` for any period `n >= 1`; maximal only for prime `n`.
pub fn untwisted_periodic(ambient: AffineTypeLabel, p: &GradeFunction, q: i64) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    if amb.label().twist != 1 {
        return Err(Error::UnsupportedAmbient(format!("{} is twisted", amb.label())));
    }
    if q < 1 {
        return Err(Error::InvalidParameter(format!("period {} is not positive", q)));
    }
    same_system(p, amb.gradient(), "the gradient")?;
    let mut cosets = Vec::with_capacity(amb.gradient().len());
    for v in amb.gradient().roots().iter().filter(|v| v.is_positive()) {
        let p2 = p.value(v)?;
        if p2 % 2 != 0 {
            return Err(Error::InvalidParameter("untwisted grade functions are integral".into()));
        }
        cosets.push((*v, Coset::new(p2, 2 * q)));
    }
    SubrootSystem::with_ambient(amb, cosets)
}

/// Lift of a maximal closed subsystem of the gradient of an untwisted ambient.
pub fn untwisted_finite_lift(ambient: AffineTypeLabel, finite_max: &FiniteRootSystem) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    if amb.label().twist != 1 {
        return Err(Error::UnsupportedAmbient(format!("{} is twisted", amb.label())));
    }
    if !is_maximal_closed_finite(finite_max, amb.gradient()) {
        return Err(Error::InvalidParameter(format!(
            "{} is not maximal closed in {}",
            finite_max.label(),
            amb.gradient().label()
        )));
    }
    lift(finite_max, amb.label())
}

/// Full-gradient family of a twisted ambient other than `A_{2n}^(2)`:
/// short roots get period `q`, long roots period `mq` (or `q` when `q = m`).
pub fn twisted_prime(ambient: AffineTypeLabel, p: &GradeFunction, q: i64) -> Result<SubrootSystem> {
    check_prime(q)?;
    twisted_periodic(ambient, p, q)
}

/// Short roots with period `n`, long roots with period `lcm(n, m)`, for any
/// `n >= 1`; maximal only for prime `n`.
pub fn twisted_periodic(ambient: AffineTypeLabel, p: &GradeFunction, q: i64) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    let label = amb.label();
    if label.twist == 1 || label.is_a2n() {
        return Err(Error::UnsupportedAmbient(format!("{} is not twisted of reduced gradient", label)));
    }
    if q < 1 {
        return Err(Error::InvalidParameter(format!("period {} is not positive", q)));
    }
    same_system(p, amb.gradient(), "the gradient")?;
    let m = amb.m();
    let mut cosets = Vec::with_capacity(amb.gradient().len());
    for v in amb.gradient().roots().iter().filter(|v| v.is_positive()) {
        let p2 = p.value(v)?;
        if p2 % 2 != 0 {
            return Err(Error::InvalidParameter("grade functions are integral".into()));
        }
        let long = amb.length_class(v) == Some(LengthClass::Long);
        if long && p2 % (2 * m) != 0 {
            return Err(Error::InvalidParameter(format!("p on long root {} is not in {}Z", v, m)));
        }
        let n2 = if long { 2 * q.lcm(&m) } else { 2 * q };
        cosets.push((*v, Coset::new(p2, n2)));
    }
    SubrootSystem::with_ambient(amb, cosets)
}

/// Lift of a maximal closed subsystem containing a short root of the
/// gradient of a twisted ambient other than `A_{2n}^(2)`.
pub fn twisted_finite_lift(ambient: AffineTypeLabel, finite_max: &FiniteRootSystem) -> Result<SubrootSystem> {
    let amb = affine_system(ambient)?;
    let label = amb.label();
    if label.twist == 1 || label.is_a2n() {
        return Err(Error::UnsupportedAmbient(format!("{} is not twisted of reduced gradient", label)));
    }
    if !is_maximal_closed_finite(finite_max, amb.gradient()) {
        return Err(Error::InvalidParameter(format!(
            "{} is not maximal closed in {}",
            finite_max.label(),
            amb.gradient().label()
        )));
    }
    if !finite_max.roots().iter().any(|v| amb.length_class(v) == Some(LengthClass::Short)) {
        return Err(Error::InvalidParameter(format!(
            "{} has only long roots, so its lift is not maximal",
            finite_max.label()
        )));
    }
    lift(finite_max, label)
}

/// The system `Ψ_I` of `D_{n+1}^(2)`: `ε_s` at even grades for `s ∈ I`, at
/// odd grades otherwise, and `±ε_s ± ε_t` at even grades when `s, t` lie on
/// the same side of `I`.
pub fn psi_i_d2(n: usize, i_set: &[usize]) -> Result<SubrootSystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("D_{n+1}^(2) needs n >= 2".into()));
    }
    let i_set = index_set(n, i_set, "I")?;
    if i_set.len() == n {
        return Err(Error::InvalidParameter("I must be a proper subset".into()));
    }
    let ambient = AffineTypeLabel::of(Family::D, n as u32 + 1, 2);
    let mut cosets = Vec::new();
    for s in 0..n {
        let p2 = if i_set.contains(&s) { 0 } else { 2 };
        cosets.push((eps(n, s), Coset::new(p2, 4)));
        for t in (s + 1)..n {
            if i_set.contains(&s) == i_set.contains(&t) {
                for sign in [1, -1] {
                    cosets.push((eps_pair(n, s, t, sign), Coset::new(0, 4)));
                }
            }
        }
    }
    SubrootSystem::from_cosets(ambient, cosets)
}

/// The `D_n` formed by the short roots of the `C_n` gradient of `A_{2n−1}^(2)`.
pub fn a2odd_short_system(n: usize) -> Result<FiniteRootSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter("A_{2n-1}^(2) needs n >= 3".into()));
    }
    let amb = affine_system(AffineTypeLabel::of(Family::A, 2 * n as u32 - 1, 2))?;
    amb.gradient().filter(|v| amb.length_class(v) == Some(LengthClass::Short))
}

/// The grade function on `D_n` with the given doubled values on `ε_1..ε_n`.
pub fn a2odd_grade_function(n: usize, eps2: &[i64]) -> Result<GradeFunction> {
    GradeFunction::from_coordinate_form(a2odd_short_system(n)?, eps2)
}

/// The system `Ψ_p` of `A_{2n−1}^(2)`: `α + (p_α + 2r)δ` for the short roots
/// `α = ±ε_s ± ε_t`, where `p_{ε_s − ε_t}` and `p_{ε_s + ε_t}` differ in parity.
pub fn psi_p_a2odd(n: usize, p: &GradeFunction) -> Result<SubrootSystem> {
    let d = a2odd_short_system(n)?;
    same_system(p, &d, "the short roots of C_n")?;
    let minus = p.value(&eps_pair(n, n - 2, n - 1, -1))?;
    let plus = p.value(&eps_pair(n, n - 2, n - 1, 1))?;
    if (plus - minus) % 4 == 0 {
        return Err(Error::InvalidParameter("p on the last two simple roots must have different parity".into()));
    }
    let mut cosets = Vec::new();
    for v in d.roots().iter().filter(|v| v.is_positive()) {
        let p2 = p.value(v)?;
        if p2 % 2 != 0 {
            return Err(Error::InvalidParameter("grade functions are integral".into()));
        }
        cosets.push((*v, Coset::new(p2, 4)));
    }
    SubrootSystem::from_cosets(AffineTypeLabel::of(Family::A, 2 * n as u32 - 1, 2), cosets)
}

/// The system `Ψ(i,j,k;ℓ)` of `D_4^(3)`: `ε_i − ε_j` at grades `3Z` and
/// `ε_j − ε_k`, `ε_i − ε_k` at grades `ℓ + 3Z`.
pub fn psi_d4_3(perm: [usize; 3], ell: i64) -> Result<SubrootSystem> {
    let mut sorted = perm;
    sorted.sort();
    if sorted != [1, 2, 3] {
        return Err(Error::InvalidParameter(format!("{:?} is not a permutation of 1,2,3", perm)));
    }
    if ell.rem_euclid(3) == 0 {
        return Err(Error::InvalidParameter(format!("ell = {} is divisible by 3", ell)));
    }
    let [i, j, k] = perm.map(|x| x - 1);
    let cosets = [
        (eps_pair(3, i, j, -1), Coset::new(0, 6)),
        (eps_pair(3, j, k, -1), Coset::new(2 * ell, 6)),
        (eps_pair(3, i, k, -1), Coset::new(2 * ell, 6)),
    ];
    SubrootSystem::from_cosets(AffineTypeLabel::of(Family::D, 4, 3), cosets)
}

/// The `D_4` of short roots of the `F_4` gradient of `E_6^(2)`.
pub fn e6_short_system() -> Result<FiniteRootSystem> {
    let amb = affine_system(AffineTypeLabel::of(Family::E, 6, 2))?;
    amb.gradient().filter(|v| amb.length_class(v) == Some(LengthClass::Short))
}

/// The grade function on the short `D_4` with the given δ-unit values on
/// `ε_2, ε_3, ε_4, ½(ε_1 − ε_2 − ε_3 − ε_4)`.
pub fn e6_grade_function(gamma: [i64; 4]) -> Result<GradeFunction> {
    let [a2, a3, a4, g] = gamma;
    let a1 = 2 * g + a2 + a3 + a4;
    GradeFunction::from_coordinate_form(e6_short_system()?, &[2 * a1, 2 * a2, 2 * a3, 2 * a4])
}

/// The system `Ψ_p` of `E_6^(2)`: short roots at `p_α + 2Z` and the long
/// roots `±ε_i ± ε_j` at `2Z` when `p_{ε_i} ≡ p_{ε_j} (mod 2)`. Exactly two
/// of the `p_{ε_i}` must be even.
pub fn psi_p_e6(p: &GradeFunction) -> Result<SubrootSystem> {
    let d = e6_short_system()?;
    same_system(p, &d, "the short roots of F_4")?;
    let mut pe = [0i64; 4];
    for (i, slot) in pe.iter_mut().enumerate() {
        let v = p.value(&eps(4, i))?;
        if v % 2 != 0 {
            return Err(Error::InvalidParameter("grade functions are integral".into()));
        }
        *slot = v / 2;
    }
    if pe.iter().filter(|v| v.rem_euclid(2) == 0).count() != 2 {
        return Err(Error::InvalidParameter(format!("exactly two of p on ε_1..ε_4 must be even, got {:?}", pe)));
    }
    let mut cosets = Vec::new();
    for v in d.roots().iter().filter(|v| v.is_positive()) {
        cosets.push((*v, Coset::new(p.value(v)?, 4)));
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if (pe[i] + pe[j]).rem_euclid(2) == 0 {
                for s in [1, -1] {
                    cosets.push((eps_pair(4, i, j, s), Coset::new(0, 4)));
                }
            }
        }
    }
    SubrootSystem::from_cosets(AffineTypeLabel::of(Family::E, 6, 2), cosets)
}

fn a2n_label(n: usize) -> Result<AffineTypeLabel> {
    if n < 1 {
        return Err(Error::InvalidParameter("A_{2n}^(2) needs n >= 1".into()));
    }
    Ok(AffineTypeLabel::of(Family::A, 2 * n as u32, 2))
}

/// Lift of `A_J ⊂ BC_n`: all `±2ε_i`, the `±ε_j` for `j ∈ J`, and `±ε_s ± ε_t`
/// for `s, t` on the same side of `J`.
pub fn a2n_aj(n: usize, j_set: &[usize]) -> Result<SubrootSystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("the A_J family needs n >= 2".into()));
    }
    let j_set = index_set(n, j_set, "J")?;
    if j_set.len() == n {
        return Err(Error::InvalidParameter("J must be a proper subset".into()));
    }
    let amb = affine_system(a2n_label(n)?)?;
    let mut roots = Vec::new();
    for s in 0..n {
        let long = eps(n, s).scale(2).expect("nonzero");
        roots.extend([long, long.neg()]);
        if j_set.contains(&s) {
            roots.extend([eps(n, s), eps(n, s).neg()]);
        }
        for t in (s + 1)..n {
            if j_set.contains(&s) == j_set.contains(&t) {
                for sign in [1, -1] {
                    let v = eps_pair(n, s, t, sign);
                    roots.extend([v, v.neg()]);
                }
            }
        }
    }
    let sub = FiniteRootSystem::from_roots(n, roots)?;
    lift(&sub, amb.label())
}

/// The system `Ψ_I` of `A_{2n}^(2)`: for `i ∈ I` the short root `ε_i` sits at
/// grades `½ + 2Z`, otherwise at `3/2 + 2Z`; `ε_k ± ε_ℓ` on the same side
/// of `I` sit at `1 + 2Z` (plus) and `2Z` (minus), and across `I` at `2Z`
/// (plus) and `1 + 2Z` (minus, with `k ∈ I`).
pub fn a2n_psi_i(n: usize, i_set: &[usize]) -> Result<SubrootSystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("the Ψ_I family of A_{2n}^(2) needs n >= 2".into()));
    }
    let i_set = index_set(n, i_set, "I")?;
    let mut cosets = Vec::new();
    for s in 0..n {
        let p2 = if i_set.contains(&s) { 1 } else { 3 };
        cosets.push((eps(n, s), Coset::new(p2, 4)));
        for t in (s + 1)..n {
            // Across I the difference sits at odd grades whichever index lies in I.
            let (plus, minus) = if i_set.contains(&s) == i_set.contains(&t) { (2, 0) } else { (0, 2) };
            cosets.push((eps_pair(n, s, t, 1), Coset::new(plus, 4)));
            cosets.push((eps_pair(n, s, t, -1), Coset::new(minus, 4)));
        }
    }
    SubrootSystem::from_cosets(a2n_label(n)?, cosets)
}

/// The `B_n` of short and intermediate roots of `BC_n`.
pub fn a2n_reduced_system(n: usize) -> Result<FiniteRootSystem> {
    let amb = affine_system(a2n_label(n)?)?;
    amb.gradient().filter(|v| amb.length_class(v) != Some(LengthClass::Long))
}

/// The grade function on `B_n ⊂ BC_n` with doubled values on `ε_1..ε_n`.
pub fn a2n_grade_function(n: usize, eps2: &[i64]) -> Result<GradeFunction> {
    GradeFunction::from_coordinate_form(a2n_reduced_system(n)?, eps2)
}

/// The full-gradient family `Ψ(p, q)` of `A_{2n}^(2)` for an odd prime `q`:
/// short roots at `p_{ε_i} + qZ`, intermediate at `p_α + qZ` and long
/// `2ε_i` at `2p_{ε_i} + q + 2qZ`, where the `p_{ε_i}` lie in `½ + Z`.
pub fn a2n_prime(n: usize, p: &GradeFunction, q: i64) -> Result<SubrootSystem> {
    check_prime(q)?;
    if q == 2 {
        return Err(Error::InvalidParameter("q must be odd".into()));
    }
    let b = a2n_reduced_system(n)?;
    same_system(p, &b, "the short and intermediate roots of BC_n")?;
    let mut cosets = Vec::new();
    for s in 0..n {
        let p2 = p.value(&eps(n, s))?;
        if p2 % 2 == 0 {
            return Err(Error::InvalidParameter(format!("p on ε_{} is not in ½ + Z", s + 1)));
        }
        cosets.push((eps(n, s), Coset::new(p2, 2 * q)));
        cosets.push((eps(n, s).scale(2).expect("nonzero"), Coset::new(2 * p2 + 2 * q, 4 * q)));
    }
    for v in b.roots().iter().filter(|v| v.is_positive() && v.norm4() == 8) {
        cosets.push((*v, Coset::new(p.value(v)?, 2 * q)));
    }
    SubrootSystem::from_cosets(a2n_label(n)?, cosets)
}

/// The four kinds of maximal closed subroot systems of `A_2^(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A2Kind {
    /// `Ψ(k, q) = {±ε_1 ± (k + ½ + rq)δ, ±2ε_1 ± (2k + 1 + (2r+1)q)δ}`.
    Prime { k: i64, q: i64 },
    /// `{±(ε_1 + (2r + ½)δ)}`.
    ShortEven,
    /// `{±(ε_1 + (2r + 3/2)δ)}`.
    ShortOdd,
    /// `{±(2ε_1 + 2rδ)}`.
    Long,
}

/// Constructor for the `A_2^(2)` families.
pub fn a2_family(kind: A2Kind) -> Result<SubrootSystem> {
    let label = a2n_label(1)?;
    let e = eps(1, 0);
    match kind {
        A2Kind::Prime { k, q } => a2n_prime(1, &a2n_grade_function(1, &[2 * k + 1])?, q),
        A2Kind::ShortEven => SubrootSystem::from_cosets(label, [(e, Coset::new(1, 4))]),
        A2Kind::ShortOdd => SubrootSystem::from_cosets(label, [(e, Coset::new(3, 4))]),
        A2Kind::Long => SubrootSystem::from_cosets(label, [(e.scale(2).expect("nonzero"), Coset::new(0, 4))]),
    }
}

/// The closed subsystem generated by a set of roots of `within`.
pub fn generated_subsystem(simple: &[FiniteRoot], within: &FiniteRootSystem) -> Result<FiniteRootSystem> {
    for v in simple {
        if !within.contains(v) {
            return Err(Error::RootNotInSystem(v.to_string()));
        }
    }
    FiniteRootSystem::from_roots(within.dim(), finite_closure(simple.iter().copied(), within))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_roots::AffineRoot;

    fn lbl(s: &str) -> AffineTypeLabel {
        s.parse().unwrap()
    }

    fn ar(ints2: &[i64], t2: i64) -> AffineRoot {
        AffineRoot::new(FiniteRoot::new(ints2).unwrap(), t2)
    }

    #[test]
    fn untwisted_prime_on_a1() {
        let amb = affine_system(lbl("A1^1")).unwrap();
        let p = GradeFunction::from_delta_units(amb.gradient().clone(), &[1]).unwrap();
        let s = untwisted_prime(lbl("A1^1"), &p, 3).unwrap();
        let a = amb.gradient().simple_system()[0];
        assert_eq!(s.coset(&a), Some(Coset::new(2, 6)));
        assert!(untwisted_prime(lbl("A1^1"), &p, 1).is_err());
        assert!(untwisted_prime(lbl("A1^1"), &p, 4).is_err());
    }

    #[test]
    fn twisted_prime_branches() {
        let amb = affine_system(lbl("D3^2")).unwrap();
        let p = GradeFunction::zero(amb.gradient().clone());
        let s = twisted_prime(lbl("D3^2"), &p, 3).unwrap();
        let short = FiniteRoot::from_ints(&[1, 0]).unwrap();
        let long = FiniteRoot::from_ints(&[1, 1]).unwrap();
        assert_eq!(s.coset(&short), Some(Coset::new(0, 6)));
        assert_eq!(s.coset(&long), Some(Coset::new(0, 12)));
        let s = twisted_prime(lbl("D3^2"), &p, 2).unwrap();
        assert_eq!(s.coset(&long), Some(Coset::new(0, 4)));
        let bad = GradeFunction::from_delta_units(amb.gradient().clone(), &[1, 0]).unwrap();
        assert!(twisted_prime(lbl("D3^2"), &bad, 3).is_err());
    }

    #[test]
    fn psi_i_d2_membership() {
        let s = psi_i_d2(3, &[1]).unwrap();
        assert!(s.contains(&ar(&[2, 0, 0], 4)));
        assert!(!s.contains(&ar(&[2, 0, 0], 2)));
        assert!(s.contains(&ar(&[0, 2, 0], 2)));
        assert!(s.contains(&ar(&[0, 2, 2], 4)));
        assert!(!s.contains(&ar(&[2, 2, 0], 4)));
        assert!(psi_i_d2(3, &[1, 2, 3]).is_err());
        assert!(psi_i_d2(3, &[4]).is_err());
        assert!(psi_i_d2(2, &[]).is_ok());
    }

    #[test]
    fn psi_p_a2odd_examples() {
        let p = a2odd_grade_function(3, &[1, 1, 1]).unwrap();
        let s = psi_p_a2odd(3, &p).unwrap();
        assert!(s.contains(&ar(&[2, 0, 2], 2)));
        assert!(!s.contains(&ar(&[2, 0, 2], 0)));
        assert!(s.contains(&ar(&[2, 0, -2], 0)));
        assert!(!s.contains(&ar(&[4, 0, 0], 0)));
        assert!(!s.contains(&ar(&[4, 0, 0], 4)));
        let even = a2odd_grade_function(3, &[0, 0, 0]).unwrap();
        assert!(psi_p_a2odd(3, &even).is_err());
    }

    #[test]
    fn psi_d4_3_examples() {
        let s = psi_d4_3([1, 2, 3], 1).unwrap();
        assert!(s.contains(&ar(&[2, 0, -2], 2)));
        assert!(!s.contains(&ar(&[2, 2, -4], 4)));
        assert!(psi_d4_3([1, 2, 3], 3).is_err());
        assert!(psi_d4_3([1, 1, 3], 1).is_err());
    }

    #[test]
    fn psi_p_e6_examples() {
        let p = e6_grade_function([0, 1, 1, 0]).unwrap();
        let e1 = FiniteRoot::unit(4, 0);
        assert_eq!(p.value(&e1).unwrap(), 4);
        let s = psi_p_e6(&p).unwrap();
        assert!(s.contains(&ar(&[2, 2, 0, 0], 4)));
        assert!(!s.contains(&ar(&[2, 0, 2, 0], 4)));
        assert!(!s.contains(&ar(&[2, 0, 2, 0], 0)));
        assert!(psi_p_e6(&e6_grade_function([0, 0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn a2n_examples() {
        let s = a2n_aj(2, &[]).unwrap();
        assert!(s.contains(&ar(&[4, 0], 4)));
        assert!(s.contains(&ar(&[2, 2], 2)));
        assert!(!s.contains(&ar(&[2, 0], 1)));
        assert!(a2n_aj(2, &[1, 2]).is_err());
        let s = a2n_psi_i(2, &[1, 2]).unwrap();
        assert!(s.contains(&ar(&[2, 0], 1)));
        assert!(!s.contains(&ar(&[2, 0], 3)));
        assert!(!s.contains(&ar(&[4, 0], 0)));
        let s = a2n_psi_i(2, &[1]).unwrap();
        assert!(s.contains(&ar(&[2, -2], 2)));
        let p = a2n_grade_function(2, &[1, 1]).unwrap();
        let s = a2n_prime(2, &p, 3).unwrap();
        assert!(s.contains(&ar(&[4, 0], 8)));
        assert!(s.contains(&ar(&[2, 0], 1)));
        assert!(!s.contains(&ar(&[2, 0], 3)));
        assert!(a2n_prime(2, &p, 2).is_err());
    }

    #[test]
    fn a2_examples() {
        let s = a2_family(A2Kind::Prime { k: 0, q: 3 }).unwrap();
        assert!(s.contains(&ar(&[2], 1)));
        assert!(s.contains(&ar(&[4], 8)));
        assert!(!s.contains(&ar(&[4], 4)));
        let s = a2_family(A2Kind::Long).unwrap();
        assert!(!s.contains(&ar(&[2], 1)));
        let s = a2_family(A2Kind::ShortEven).unwrap();
        assert!(s.contains(&ar(&[2], 1)));
        assert!(!s.contains(&ar(&[2], 3)));
    }

    #[test]
    fn finite_lift_preconditions() {
        let amb = affine_system(lbl("D4^3")).unwrap();
        let long: Vec<FiniteRoot> = amb.gradient().roots().iter().filter(|v| v.norm4() == 24).copied().collect();
        let a2 = FiniteRootSystem::from_roots(3, long).unwrap();
        assert!(twisted_finite_lift(lbl("D4^3"), &a2).is_err());
        let e1 = FiniteRoot::unit(3, 0);
        let a1s = FiniteRootSystem::from_roots(3, [e1, e1.neg()]).unwrap();
        assert!(untwisted_finite_lift(lbl("B3^1"), &a1s).is_err());
    }
}
