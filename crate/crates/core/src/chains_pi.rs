//! Chains of maximal closed subroot systems, π-systems and the regular
//! subalgebra correspondence.
//!
//! [`enumerate_closed`] walks down from the ambient: each affine component
//! of a node is transported onto the standard realization of its type, the
//! maximal families of that type are instantiated there, and the results
//! are carried back. Finite components are kept as they are; their closed
//! subsystems are the finite classification.
//!
//! A π-system is a finite set of roots with no pairwise difference a root.
//! [`extract_pi_system`] takes, per irreducible component, the indecomposable
//! roots of the positive system "grade positive, or grade zero and finite
//! part lexicographically positive".

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;

use crate::affine_roots::{affine_system, AffineRoot, AffineRootSystem};
use crate::classification::{enumerate_families, instantiate, type_of, FamilyKind, InstanceGrid, Params};
use crate::error::{Error, Result};
use crate::finite_roots::{pairing, FiniteRoot};
use crate::labels::{AffineTypeLabel, TypeSum};
use crate::oracle::{common_period2, Arena, OracleConfig};
use crate::subroot_model::{lift, Coset, SubrootSystem};

/// One summand `{α + (p_α + rn)δ : α ∈ Ψ_i}` of a closed subroot system of
/// an untwisted ambient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UntwistedComponent {
    pub system: SubrootSystem,
    pub gradient: TypeSum,
    /// Simple system of the component gradient.
    pub simple_system: Vec<FiniteRoot>,
    /// δ-unit values of `p` on the simple system.
    pub p: Vec<i64>,
    /// The modulus in δ units; zero exactly for finite-type components.
    pub n: i64,
}

/// Splits a closed subroot system of an untwisted ambient into lifted
/// components with a modulus and a linear grade function each.
pub fn decompose_untwisted(sub: &SubrootSystem) -> Result<Vec<UntwistedComponent>> {
    if sub.ambient_label().twist != 1 {
        return Err(Error::UnsupportedAmbient(format!("{} is twisted", sub.ambient_label())));
    }
    if let Some((x, y)) = sub.closure_violation() {
        return Err(Error::Precondition(format!("not closed: {} + {}", x, y)));
    }
    let mut out = Vec::new();
    for comp in sub.components() {
        let g = comp.gradient().clone();
        let n2s: Vec<i64> = comp.cosets().values().map(|c| c.n2).unique().collect();
        let [n2] = n2s[..] else {
            return Err(Error::InvalidModel(format!("moduli {:?} on one component", n2s)));
        };
        let simple = g.simple_system().to_vec();
        let p2: Vec<i64> = simple.iter().map(|v| comp.coset(v).expect("simple root present").p2).collect();
        for (v, c) in comp.cosets() {
            let val: i64 = g.coefficients(v)?.iter().zip(&p2).map(|(a, b)| a * b).sum();
            if !c.contains(val) {
                return Err(Error::InvalidModel(format!("grades on {} are not linear", v)));
            }
        }
        out.push(UntwistedComponent {
            gradient: g.label().clone(),
            simple_system: simple,
            p: p2.iter().map(|x| x / 2).collect(),
            n: n2 / 2,
            system: comp,
        });
    }
    Ok(out)
}

/// A finite set of affine roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiSystem {
    pub roots: Vec<AffineRoot>,
}

/// True when no difference of two members is a real root of the ambient
/// or has zero finite part and nonzero grade.
pub fn verify_pi_system(sigma: &PiSystem, ambient: AffineTypeLabel) -> Result<bool> {
    let amb = affine_system(ambient)?;
    for (a, b) in sigma.roots.iter().tuple_combinations() {
        if a == b {
            continue;
        }
        match a.add(&b.neg()) {
            None => {
                if a.t2 != b.t2 {
                    return Ok(false);
                }
            }
            Some(d) => {
                if amb.contains(&d) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn is_positive(x: &AffineRoot) -> bool {
    x.t2 > 0 || (x.t2 == 0 && x.v.is_positive())
}

/// Indecomposable positive roots of one irreducible component, where a
/// difference with zero finite part and positive grade counts as a
/// positive imaginary root.
fn component_base(comp: &SubrootSystem) -> Result<Vec<AffineRoot>> {
    let affine = comp.cosets().values().any(|c| c.n2 > 0);
    let reach = comp.cosets().values().map(|c| c.p2.abs() + c.n2).max().unwrap_or(0);
    let radius2 = 2 * reach + 2;
    let positive: Vec<AffineRoot> = comp.window(radius2).into_iter().filter(is_positive).collect();
    let base: Vec<AffineRoot> = positive
        .iter()
        .filter(|x| {
            !positive.iter().any(|y| {
                y != *x
                    && y.t2 <= x.t2
                    && match x.add(&y.neg()) {
                        None => x.t2 > y.t2,
                        Some(d) => is_positive(&d) && comp.contains(&d),
                    }
            })
        })
        .copied()
        .collect();
    let expected = comp.gradient().rank() + usize::from(affine);
    if base.len() != expected {
        return Err(Error::WindowTooSmall(format!(
            "found {} indecomposable roots on {}, expected {}",
            base.len(),
            comp.gradient().label(),
            expected
        )));
    }
    Ok(base)
}

/// Union of per-component bases of a closed subroot system.
pub fn extract_pi_system(sub: &SubrootSystem) -> Result<PiSystem> {
    if let Some((x, y)) = sub.closure_violation() {
        return Err(Error::Precondition(format!("not closed: {} + {}", x, y)));
    }
    let mut roots = Vec::new();
    for comp in sub.components() {
        roots.extend(component_base(&comp)?);
    }
    roots.sort();
    Ok(PiSystem { roots })
}

/// A closed subroot system together with the π-system generating it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSubalgebra {
    pub closed_system: SubrootSystem,
    pub pi_system: PiSystem,
}

/// The regular subalgebra attached to a closed subroot system.
pub fn regular_subalgebra_of(sub: &SubrootSystem) -> Result<RegularSubalgebra> {
    Ok(RegularSubalgebra { closed_system: sub.clone(), pi_system: extract_pi_system(sub)? })
}

/// Closure of a π-system and its negatives inside the ambient, restricted
/// to `|t2| <= radius2`.
pub fn pi_closure(
    sigma: &PiSystem,
    ambient: AffineTypeLabel,
    radius2: i64,
    work_radius2: i64,
) -> Result<Vec<AffineRoot>> {
    let amb = affine_system(ambient)?;
    let arena = Arena::ambient(&amb, work_radius2);
    let seed: Vec<AffineRoot> = sigma.roots.iter().filter(|x| x.t2.abs() <= work_radius2).copied().collect();
    Ok(arena.closure(&seed)?.into_iter().filter(|x| x.t2.abs() <= radius2).collect())
}

/// True when the closure of the π-system of `sub` equals `sub` on the
/// window `|t2| <= radius2`.
pub fn pi_round_trip(sub: &SubrootSystem, radius2: i64) -> Result<bool> {
    let sigma = extract_pi_system(sub)?;
    let work = radius2 + 4 * common_period2(sub);
    let got = pi_closure(&sigma, sub.ambient_label(), radius2, work)?;
    Ok(got == sub.window(radius2))
}

/// Height of a model: per gradient component, the sum of the moduli on its
/// distinct root lengths (doubled units).
pub fn height(sub: &SubrootSystem) -> i64 {
    sub.components()
        .iter()
        .map(|c| {
            let by_len: BTreeMap<i64, i64> = c.cosets().iter().map(|(v, k)| (v.norm4(), k.n2)).collect();
            by_len.values().sum::<i64>()
        })
        .sum()
}

/// Descent between a closed system and a closed subsystem of it: the
/// gradient shrinks strictly, or it is unchanged and the height grows.
pub fn satisfies_descent(parent: &SubrootSystem, child: &SubrootSystem) -> bool {
    let pg = parent.gradient().roots();
    let cg = child.gradient().roots();
    if cg.len() < pg.len() {
        cg.iter().all(|v| parent.gradient().contains(v))
    } else {
        cg == pg && height(child) > height(parent)
    }
}

/// Map from the standard realization of an affine type onto one component
/// of a subroot system: `(v, t2) ↦ (φ(v), c(φ(v)) + s·t2)`.
struct Transport {
    standard: std::sync::Arc<AffineRootSystem>,
    phi: BTreeMap<FiniteRoot, FiniteRoot>,
    shift: BTreeMap<FiniteRoot, i64>,
    scale: i64,
}

fn cartan(simple: &[FiniteRoot]) -> Result<Vec<Vec<i64>>> {
    simple.iter().map(|a| simple.iter().map(|b| pairing(a, b)).collect()).collect()
}

/// Orderings of `target` whose Cartan matrix equals that of `source`.
fn matching_orders(source: &[FiniteRoot], target: &[FiniteRoot]) -> Result<Vec<Vec<usize>>> {
    let cs = cartan(source)?;
    let ct = cartan(target)?;
    let n = source.len();
    if target.len() != n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    fn go(cs: &[Vec<i64>], ct: &[Vec<i64>], perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = perm.len();
        if i == cs.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..cs.len() {
            if perm.contains(&j) {
                continue;
            }
            let ok = (0..i).all(|k| cs[i][k] == ct[j][perm[k]] && cs[k][i] == ct[perm[k]][j]) && cs[i][i] == ct[j][j];
            if ok {
                perm.push(j);
                go(cs, ct, perm, out);
                perm.pop();
                if !out.is_empty() {
                    return;
                }
            }
        }
    }
    go(&cs, &ct, &mut perm, &mut out);
    Ok(out)
}

fn transport(comp: &SubrootSystem, label: AffineTypeLabel) -> Result<Transport> {
    let standard = affine_system(label)?;
    let sg = standard.gradient();
    let cg = comp.gradient();
    let bug = |what: &str| Error::Unrecognized(format!("cannot transport {} onto {}: {}", cg.label(), label, what));
    let orders = matching_orders(sg.simple_system(), cg.simple_system())?;
    let order = orders.first().ok_or_else(|| bug("gradients differ"))?;
    let images: Vec<FiniteRoot> = order.iter().map(|&j| cg.simple_system()[j]).collect();
    let map_root = |v: &FiniteRoot| -> Result<FiniteRoot> {
        let coeffs = sg.coefficients(v)?;
        let coords: Vec<i64> =
            (0..cg.dim()).map(|d| coeffs.iter().zip(&images).map(|(c, w)| c * w.coords2()[d] as i64).sum()).collect();
        FiniteRoot::new(&coords)
    };
    let mut phi = BTreeMap::new();
    for v in sg.roots() {
        let w = map_root(v)?;
        if !cg.contains(&w) {
            return Err(bug("image outside the component"));
        }
        phi.insert(*v, w);
    }
    let period = |v: &FiniteRoot| standard.congruence(v).expect("standard root");
    let mut scale = None;
    for v in sg.roots() {
        let n2 = comp.coset(&phi[v]).expect("image in component").n2;
        let per = period(v).period2;
        if n2 % per != 0 {
            return Err(bug("moduli are not a multiple of the standard periods"));
        }
        match scale {
            None => scale = Some(n2 / per),
            Some(s) if s != n2 / per => return Err(bug("moduli are not proportional")),
            _ => {}
        }
    }
    let scale = scale.ok_or_else(|| bug("empty gradient"))?;
    let simple = sg.simple_system();
    let lcm = comp.cosets().values().fold(1i64, |a, c| a.lcm(&c.n2.max(1)));
    let choices: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| {
            let c = comp.coset(&phi[a]).expect("image in component");
            let base = (c.p2 - scale * period(a).offset2).rem_euclid(c.n2.max(1));
            (0..lcm / c.n2.max(1)).map(|k| base + k * c.n2).collect()
        })
        .collect();
    for shifts in choices.iter().multi_cartesian_product() {
        let mut shift = BTreeMap::new();
        let mut ok = true;
        for v in sg.roots() {
            let c: i64 = sg.coefficients(v)?.iter().zip(&shifts).map(|(a, b)| a * *b).sum();
            let target = comp.coset(&phi[v]).expect("image in component");
            if !target.contains(c + scale * period(v).offset2) {
                ok = false;
                break;
            }
            shift.insert(*v, c);
        }
        if ok {
            return Ok(Transport { standard, phi, shift, scale });
        }
    }
    Err(bug("no linear grade shift"))
}

impl Transport {
    fn push_forward(&self, model: &SubrootSystem) -> Vec<(FiniteRoot, Coset)> {
        model
            .cosets()
            .iter()
            .map(|(v, c)| (self.phi[v], Coset::new(self.shift[v] + self.scale * c.p2, self.scale * c.n2)))
            .collect()
    }
}

/// One step of a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainNode {
    pub depth: usize,
    #[serde(rename = "type")]
    pub result_type: TypeSum,
    /// Family of the step, in the coordinates of the transported component.
    pub kind: Option<FamilyKind>,
    pub params: Option<Params>,
    /// Type of the component the step was taken in.
    pub component: Option<AffineTypeLabel>,
    pub parent_index: Option<usize>,
    pub system: SubrootSystem,
}

/// Bounds for [`enumerate_closed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    pub max_depth: usize,
    pub prime_bound: i64,
    /// Instantiate every parameter modulo its period rather than one
    /// representative per family and prime.
    pub exhaustive: bool,
    /// Certify every step with the windowed oracle at radii scaled to the
    /// child's periods.
    pub certify: bool,
}

/// Breadth-first enumeration of chains of maximal closed subroot systems
/// from the full ambient, deduplicated by coset model.
pub fn enumerate_closed(ambient: AffineTypeLabel, config: &ChainConfig) -> Result<Vec<ChainNode>> {
    let amb = affine_system(ambient)?;
    let root = lift(amb.gradient(), amb.label())?;
    let grid = InstanceGrid {
        primes: crate::classification::primes_up_to(config.prime_bound),
        exhaustive: config.exhaustive,
        limit: usize::MAX,
    };
    let mut seen: HashSet<SubrootSystem> = HashSet::from([root.clone()]);
    let mut nodes = vec![ChainNode {
        depth: 0,
        result_type: type_of(&root)?,
        kind: None,
        params: None,
        component: None,
        parent_index: None,
        system: root,
    }];
    let mut frontier = vec![0usize];
    for depth in 1..=config.max_depth {
        let mut next = Vec::new();
        for &pi in &frontier {
            let parent = nodes[pi].system.clone();
            let comps = parent.components();
            for (ci, comp) in comps.iter().enumerate() {
                let ty = type_of(comp)?;
                let Some(label) = ty.as_single_affine() else { continue };
                let tr = transport(comp, label)?;
                for fam in enumerate_families(tr.standard.label())? {
                    for params in fam.instances(&grid)? {
                        let model = instantiate(tr.standard.label(), &params)?;
                        let mut cosets = tr.push_forward(&model);
                        for (cj, other) in comps.iter().enumerate() {
                            if cj != ci {
                                cosets.extend(other.cosets().iter().map(|(v, c)| (*v, *c)));
                            }
                        }
                        let child = SubrootSystem::from_cosets(ambient, cosets)?;
                        if !seen.insert(child.clone()) {
                            continue;
                        }
                        if config.certify {
                            let cfg = OracleConfig::scaled_for(&child);
                            let rep = crate::oracle::verify_maximal_within(&child, &parent, &cfg)?;
                            if !rep.maximal {
                                return Err(Error::Unrecognized(format!(
                                    "step {:?} in {} is not maximal, witness {:?}",
                                    fam.kind, label, rep.witness
                                )));
                            }
                        }
                        next.push(nodes.len());
                        nodes.push(ChainNode {
                            depth,
                            result_type: type_of(&child)?,
                            kind: Some(fam.kind),
                            params: Some(params),
                            component: Some(label),
                            parent_index: Some(pi),
                            system: child,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(nodes)
}
