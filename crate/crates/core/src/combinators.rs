//! Family-building constructions on (point set, family) systems.
//!
//! Each combinator builds a new point set together with an explicit family
//! whose order profile follows from the inputs' profiles:
//!
//! | combinator              | order law                                          |
//! |-------------------------|----------------------------------------------------|
//! | [`product_system`]      | `ord((x,y)) = ord(x) + ord(y)`                     |
//! | [`sum_with_point`]      | summand orders unchanged, `ord(∞) = 0`             |
//! | [`alexandrov_duplication`] | `ord((x,0)) = ord(x)`, `ord((x,1)) = ord(x) + 1` |
//! | [`porcupine`]           | per-point split into `V⁰`, `V⁻`, `V*`, `V**` parts  |
//!
//! Member labels record where each member came from.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::{Member, PointSet, SeparatingFamily};
use crate::limits::Limits;

/// A point set, a family over it and an optional distinguished point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointedSystem {
    pub family: SeparatingFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_point: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl PointedSystem {
    pub fn new(family: SeparatingFamily, base_point: Option<usize>) -> Result<Self> {
        if let Some(b) = base_point {
            family.points().check(b)?;
        }
        Ok(PointedSystem {
            family,
            base_point,
            warnings: Vec::new(),
        })
    }

    /// Singleton family over `n` points.
    pub fn singletons(n: usize) -> Result<Self> {
        PointedSystem::new(SeparatingFamily::singletons(PointSet::new(n)?), None)
    }

    pub fn size(&self) -> usize {
        self.family.size()
    }

    fn point_label(&self, i: usize) -> String {
        self.family.points().label(i)
    }
}

fn separation_warning(which: &str, s: &PointedSystem) -> Option<String> {
    match s.family.is_t0_separating() {
        crate::family::Separation::Separating => None,
        crate::family::Separation::Unseparated { x, y } => Some(format!(
            "{which} family is not T0-separating (points {x} and {y})"
        )),
    }
}

/// Cartesian product; point `(x, y)` has index `x * |S2| + y`.
pub fn product_system(
    left: &PointedSystem,
    right: &PointedSystem,
    limits: &Limits,
) -> Result<PointedSystem> {
    let (n1, n2) = (left.size(), right.size());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= limits.points)
        .ok_or(Error::cap(
            "product points",
            n1.saturating_mul(n2),
            limits.points,
        ))?;
    let labels = (0..n1)
        .flat_map(|x| (0..n2).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", left.point_label(x), right.point_label(y)))
        .collect();
    let mut members = Vec::with_capacity(left.family.len() + right.family.len());
    for m in left.family.members() {
        let set = BitSet::from_indices(
            n,
            m.set.ones().flat_map(|x| (0..n2).map(move |y| x * n2 + y)),
        );
        members.push(Member {
            label: format!("lift:left:{}", m.label),
            set,
        });
    }
    for m in right.family.members() {
        let set = BitSet::from_indices(
            n,
            (0..n1).flat_map(|x| m.set.ones().map(move |y| x * n2 + y)),
        );
        members.push(Member {
            label: format!("lift:right:{}", m.label),
            set,
        });
    }
    let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
    let base = match (left.base_point, right.base_point) {
        (Some(a), Some(b)) => Some(a * n2 + b),
        _ => None,
    };
    let mut out = PointedSystem::new(family, base)?;
    out.warnings.extend(separation_warning("left", left));
    out.warnings.extend(separation_warning("right", right));
    Ok(out)
}

/// Disjoint union of the summands plus one new point `∞` (the last index and
/// the base point of the result), which lies in no member.
pub fn sum_with_point(systems: &[PointedSystem], limits: &Limits) -> Result<PointedSystem> {
    let total: usize = systems.iter().map(|s| s.size()).sum::<usize>() + 1;
    if total > limits.points {
        return Err(Error::cap("sum points", total, limits.points));
    }
    let mut labels = Vec::with_capacity(total);
    let mut members = Vec::new();
    let mut offset = 0;
    for (k, s) in systems.iter().enumerate() {
        labels.extend((0..s.size()).map(|x| format!("{k}:{}", s.point_label(x))));
        for m in s.family.members() {
            members.push(Member {
                label: format!("sum:{k}:{}", m.label),
                set: BitSet::from_indices(total, m.set.ones().map(|x| x + offset)),
            });
        }
        offset += s.size();
    }
    labels.push("∞".to_string());
    let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
    PointedSystem::new(family, Some(total - 1))
}

/// Alexandrov duplication along `duplicated`: points `(x,0)` for every `x`
/// (indices `0..n`) followed by `(x,1)` for `x ∈ D` in increasing order.
///
/// The family is `{{(x,1)} : x ∈ D} ∪ {(V × 2) ∩ alex(K,D) : V ∈ 𝒰}`.
pub fn alexandrov_duplication(
    system: &PointedSystem,
    duplicated: &[usize],
    limits: &Limits,
) -> Result<PointedSystem> {
    let n = system.size();
    let mut d = BitSet::new(n);
    for &x in duplicated {
        system.family.points().check(x)?;
        d.insert(x);
    }
    let dup: Vec<usize> = d.ones().collect();
    let total = n + dup.len();
    if total > limits.points {
        return Err(Error::cap("duplication points", total, limits.points));
    }
    let mut copy_index = vec![None; n];
    for (k, &x) in dup.iter().enumerate() {
        copy_index[x] = Some(n + k);
    }
    let mut labels: Vec<String> = (0..n)
        .map(|x| format!("({},0)", system.point_label(x)))
        .collect();
    labels.extend(
        dup.iter()
            .map(|&x| format!("({},1)", system.point_label(x))),
    );

    let mut members = Vec::with_capacity(dup.len() + system.family.len());
    for (k, &x) in dup.iter().enumerate() {
        members.push(Member {
            label: format!("dup:singleton:x={x}"),
            set: BitSet::from_indices(total, [n + k]),
        });
    }
    for m in system.family.members() {
        let set = BitSet::from_indices(
            total,
            m.set
                .ones()
                .flat_map(|x| std::iter::once(x).chain(copy_index[x])),
        );
        members.push(Member {
            label: format!("dup:lift:{}", m.label),
            set,
        });
    }
    let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
    let mut out = PointedSystem::new(family, system.base_point)?;
    out.warnings.extend(separation_warning("input", system));
    Ok(out)
}

/// Index system `X`, one fiber `Y_x` per point of `X`, and a section
/// `s(x) ∈ Y_x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PorcupineSpec {
    pub index: PointedSystem,
    pub fibers: Vec<PointedSystem>,
    pub section: Vec<usize>,
}

/// Where a porcupine member came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum PorcupineOrigin {
    /// `U ∈ 𝒰_x` with `s(x) ∉ U`.
    Fiber { x: usize, u: usize },
    /// `π⁻¹[W ∖ {z}] ∪ U` with `z ∈ W ∈ 𝒰_X` and `s(z) ∈ U`; `u = None`
    /// stands for the whole fiber `Y_z`.
    Glued {
        z: usize,
        w: usize,
        u: Option<usize>,
    },
}

/// Split of one point's order along the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointDecomposition {
    pub point: usize,
    pub fiber: usize,
    pub is_section: bool,
    /// Members of `V⁰` containing the point.
    pub v0: usize,
    /// Glued members built over the point's own index (`z = x`).
    pub v_minus: usize,
    /// Remaining glued members whose indices all lie outside `Σ`.
    pub v_star: usize,
    /// Remaining glued members built over some index in `Σ`.
    pub v_double_star: usize,
    pub order: usize,
}

impl PointDecomposition {
    pub fn v1(&self) -> usize {
        self.v_minus + self.v_star + self.v_double_star
    }

    pub fn is_consistent(&self) -> bool {
        self.order == self.v0 + self.v1()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PorcupineReport {
    pub system: PointedSystem,
    /// Offset of each fiber in the output point set.
    pub offsets: Vec<usize>,
    /// Index points `x` with some `U ∈ 𝒰_x`, `U ≠ Y_x`, `s(x) ∈ U`.
    pub sigma: Vec<usize>,
    /// All constructions producing each output member (the family is a set,
    /// so coinciding sets are merged).
    pub origins: Vec<Vec<PorcupineOrigin>>,
    pub decomposition: Vec<PointDecomposition>,
}

impl PorcupineReport {
    /// Point of the output for `(fiber, local point)`.
    pub fn point(&self, fiber: usize, local: usize) -> usize {
        self.offsets[fiber] + local
    }
}

/// Porcupine family `𝒱 = 𝒱⁰ ∪ 𝒱¹` over the tagged union of the fibers.
///
/// Glued members use `U` from the members of `𝒰_z` containing `s(z)` together
/// with the whole fiber `Y_z`. Beyond T₀-separation of every input family,
/// each index point with a fiber of two or more points must lie in some
/// member of the index family.
pub fn porcupine(spec: &PorcupineSpec, limits: &Limits) -> Result<PorcupineReport> {
    let nx = spec.index.size();
    if spec.fibers.len() != nx || spec.section.len() != nx {
        return Err(Error::validation(format!(
            "fiber/section mismatch: index has {nx} points, {} fibers, {} section values",
            spec.fibers.len(),
            spec.section.len()
        )));
    }
    for (x, (fiber, &s)) in spec.fibers.iter().zip(&spec.section).enumerate() {
        if s >= fiber.size() {
            return Err(Error::validation(format!(
                "fiber/section mismatch: s({x}) = {s} outside fiber of size {}",
                fiber.size()
            )));
        }
    }
    if let Some(w) = separation_warning("index", &spec.index) {
        return Err(Error::validation(w));
    }
    for (x, fiber) in spec.fibers.iter().enumerate() {
        if let Some(w) = separation_warning(&format!("fiber {x}"), fiber) {
            return Err(Error::validation(w));
        }
    }
    let index_members = spec.index.family.members();
    for (x, fiber) in spec.fibers.iter().enumerate() {
        if fiber.size() > 1 && !index_members.iter().any(|w| w.set.contains(x)) {
            return Err(Error::validation(format!(
                "index point {x} has a fiber of size {} but lies in no index member",
                fiber.size()
            )));
        }
    }

    let mut offsets = Vec::with_capacity(nx);
    let mut total = 0usize;
    for f in &spec.fibers {
        offsets.push(total);
        total += f.size();
    }
    if total > limits.points {
        return Err(Error::cap("porcupine points", total, limits.points));
    }
    let fiber_of: Vec<usize> = (0..nx)
        .flat_map(|x| std::iter::repeat_n(x, spec.fibers[x].size()))
        .collect();

    let lift =
        |x: usize, set: &BitSet| BitSet::from_indices(total, set.ones().map(|y| offsets[x] + y));
    let mut sigma = Vec::new();
    for (x, fiber) in spec.fibers.iter().enumerate() {
        let s = spec.section[x];
        if fiber
            .family
            .members()
            .iter()
            .any(|u| u.set.contains(s) && !u.set.is_full())
        {
            sigma.push(x);
        }
    }

    let mut members: Vec<Member> = Vec::new();
    let mut origins: Vec<Vec<PorcupineOrigin>> = Vec::new();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut add =
        |set: BitSet, label: String, origin: PorcupineOrigin, members: &mut Vec<Member>| {
            if let Some(&i) = seen.get(&set) {
                origins[i].push(origin);
            } else {
                seen.insert(set.clone(), members.len());
                origins.push(vec![origin]);
                members.push(Member { label, set });
            }
        };

    for (x, fiber) in spec.fibers.iter().enumerate() {
        let s = spec.section[x];
        for (j, u) in fiber.family.members().iter().enumerate() {
            if !u.set.contains(s) {
                add(
                    lift(x, &u.set),
                    format!("porc:V0:x={x}:{}", u.label),
                    PorcupineOrigin::Fiber { x, u: j },
                    &mut members,
                );
            }
        }
    }
    for (z, fiber) in spec.fibers.iter().enumerate() {
        let s = spec.section[z];
        let whole = BitSet::full(fiber.size());
        let mut us: Vec<(Option<usize>, &BitSet, String)> = fiber
            .family
            .members()
            .iter()
            .enumerate()
            .filter(|(_, u)| u.set.contains(s))
            .map(|(j, u)| (Some(j), &u.set, u.label.clone()))
            .collect();
        if !us.iter().any(|(_, u, _)| **u == whole) {
            us.push((None, &whole, "Y".to_string()));
        }
        for (w, wm) in index_members.iter().enumerate() {
            if !wm.set.contains(z) {
                continue;
            }
            let mut base = BitSet::new(total);
            for t in wm.set.ones().filter(|&t| t != z) {
                for y in 0..spec.fibers[t].size() {
                    base.insert(offsets[t] + y);
                }
            }
            for (u, uset, ulabel) in &us {
                add(
                    base.or(&lift(z, uset)),
                    format!("porc:V1:z={z}:{},{}", wm.label, ulabel),
                    PorcupineOrigin::Glued { z, w, u: *u },
                    &mut members,
                );
            }
        }
    }

    let labels = (0..total)
        .map(|p| {
            let x = fiber_of[p];
            format!(
                "{}:{}",
                spec.index.point_label(x),
                spec.fibers[x].point_label(p - offsets[x])
            )
        })
        .collect();
    let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
    let base = spec.index.base_point.map(|b| offsets[b] + spec.section[b]);
    let system = PointedSystem::new(family, base)?;

    let in_sigma: Vec<bool> = (0..nx).map(|x| sigma.contains(&x)).collect();
    let decomposition = (0..total)
        .map(|y| {
            let x = fiber_of[y];
            let mut d = PointDecomposition {
                point: y,
                fiber: x,
                is_section: y == offsets[x] + spec.section[x],
                v0: 0,
                v_minus: 0,
                v_star: 0,
                v_double_star: 0,
                order: 0,
            };
            for (m, org) in system.family.members().iter().zip(&origins) {
                if !m.set.contains(y) {
                    continue;
                }
                d.order += 1;
                let glued_over = |pred: &dyn Fn(usize) -> bool| {
                    org.iter()
                        .any(|o| matches!(o, PorcupineOrigin::Glued { z, .. } if pred(*z)))
                };
                if matches!(org[0], PorcupineOrigin::Fiber { .. }) {
                    d.v0 += 1;
                } else if glued_over(&|z| z == x) {
                    d.v_minus += 1;
                } else if glued_over(&|z| in_sigma[z]) {
                    d.v_double_star += 1;
                } else {
                    d.v_star += 1;
                }
            }
            d
        })
        .collect();

    Ok(PorcupineReport {
        system,
        offsets,
        sigma,
        origins,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn empty_point() -> PointedSystem {
        PointedSystem::new(SeparatingFamily::new(PointSet::new(1).unwrap()), None).unwrap()
    }

    #[test]
    fn product_of_singleton_systems() {
        let a = PointedSystem::singletons(2).unwrap();
        let b = PointedSystem::singletons(3).unwrap();
        let p = product_system(&a, &b, &lim()).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.family.order_profile().max_order, 2);
        assert!(p.family.is_t0_separating().is_separating());
        assert!(p.warnings.is_empty());
        assert_eq!(p.family.members()[0].label, "lift:left:{0}");
    }

    #[test]
    fn product_with_trivial_factor_is_a_copy() {
        let a = PointedSystem::singletons(3).unwrap();
        let p = product_system(&a, &empty_point(), &lim()).unwrap();
        assert_eq!(p.family.order_profile(), a.family.order_profile());
    }

    #[test]
    fn product_cap() {
        let a = PointedSystem::singletons(300).unwrap();
        let err = product_system(&a, &a, &lim()).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn product_warns_on_non_separating_factor() {
        let bad =
            PointedSystem::new(SeparatingFamily::new(PointSet::new(2).unwrap()), None).unwrap();
        let p = product_system(&bad, &empty_point(), &lim()).unwrap();
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn sum_examples() {
        let parts = vec![PointedSystem::singletons(2).unwrap(); 3];
        let s = sum_with_point(&parts, &lim()).unwrap();
        assert_eq!(s.size(), 7);
        let prof = s.family.order_profile();
        assert_eq!(prof.max_order, 1);
        assert_eq!(prof.per_point[6], 0);
        assert_eq!(s.base_point, Some(6));

        let e = sum_with_point(&[], &lim()).unwrap();
        assert_eq!(e.size(), 1);
        assert!(e.family.is_empty());

        let one = sum_with_point(&parts[..1], &lim()).unwrap();
        assert_eq!(one.family.order_profile().per_point, vec![1, 1, 0]);
        assert!(one.family.is_t0_separating().is_separating());
    }

    #[test]
    fn duplication_examples() {
        let s = PointedSystem::singletons(3).unwrap();
        let d = alexandrov_duplication(&s, &[0, 1, 2], &lim()).unwrap();
        assert_eq!(d.size(), 6);
        assert_eq!(d.family.order_profile().max_order, 2);
        assert!(d.family.is_t0_separating().is_separating());
        assert_eq!(d.family.members()[0].label, "dup:singleton:x=0");

        let same = alexandrov_duplication(&s, &[], &lim()).unwrap();
        assert_eq!(same.family.order_profile(), s.family.order_profile());

        assert!(alexandrov_duplication(&s, &[3], &lim()).is_err());
    }

    #[test]
    fn porcupine_single_index_point() {
        let spec = PorcupineSpec {
            index: PointedSystem::singletons(1).unwrap(),
            fibers: vec![PointedSystem::singletons(3).unwrap()],
            section: vec![0],
        };
        let r = porcupine(&spec, &lim()).unwrap();
        let f = &r.system.family;
        assert!(f.is_t0_separating().is_separating());
        // {1}, {2} avoid s; {0} and the whole fiber are glued over W = X.
        let sets: Vec<Vec<usize>> = f.members().iter().map(|m| m.set.to_vec()).collect();
        assert_eq!(sets, vec![vec![1], vec![2], vec![0], vec![0, 1, 2]]);
        assert!(r.decomposition.iter().all(|d| d.is_consistent()));
        assert_eq!(r.sigma, vec![0]);
    }

    #[test]
    fn porcupine_two_by_two() {
        let spec = PorcupineSpec {
            index: PointedSystem::singletons(2).unwrap(),
            fibers: vec![PointedSystem::singletons(2).unwrap(); 2],
            section: vec![0, 0],
        };
        let r = porcupine(&spec, &lim()).unwrap();
        assert!(r.system.family.is_t0_separating().is_separating());
        assert!(r.system.family.order_profile().max_order <= 4);
        assert!(r.decomposition.iter().all(|d| d.is_consistent()));
    }

    #[test]
    fn porcupine_with_point_fibers_lifts_index_profile() {
        let index = PointedSystem::new(
            SeparatingFamily::from_index_sets(3, &[vec![0, 1], vec![1], vec![2]]).unwrap(),
            None,
        )
        .unwrap();
        let spec = PorcupineSpec {
            index: index.clone(),
            fibers: vec![PointedSystem::singletons(1).unwrap(); 3],
            section: vec![0, 0, 0],
        };
        let r = porcupine(&spec, &lim()).unwrap();
        assert_eq!(
            r.system.family.order_profile(),
            index.family.order_profile()
        );
        assert!(r.sigma.is_empty());
    }

    #[test]
    fn porcupine_rejects_mismatch_and_uncovered_index() {
        let spec = PorcupineSpec {
            index: PointedSystem::singletons(2).unwrap(),
            fibers: vec![PointedSystem::singletons(2).unwrap()],
            section: vec![0, 0],
        };
        assert!(matches!(
            porcupine(&spec, &lim()),
            Err(Error::Validation(_))
        ));

        let spec = PorcupineSpec {
            index: PointedSystem::singletons(1).unwrap(),
            fibers: vec![PointedSystem::singletons(2).unwrap()],
            section: vec![5],
        };
        assert!(porcupine(&spec, &lim()).is_err());

        // Index family {{0}} over two points leaves point 1 uncovered.
        let spec = PorcupineSpec {
            index: PointedSystem::new(
                SeparatingFamily::from_index_sets(2, &[vec![0]]).unwrap(),
                None,
            )
            .unwrap(),
            fibers: vec![
                PointedSystem::singletons(1).unwrap(),
                PointedSystem::singletons(2).unwrap(),
            ],
            section: vec![0, 0],
        };
        assert!(porcupine(&spec, &lim()).is_err());
    }
}
