//! Brute-force reference implementations and the self-test driver.
//!
//! Each oracle recomputes a quantity straight from its definition, sharing
//! as little code as possible with the fast paths it is compared against.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, FiniteBooleanAlgebra};
use crate::bitset::BitSet;
use crate::combinators::{
    alexandrov_duplication, porcupine, product_system, PointedSystem, PorcupineOrigin,
    PorcupineSpec,
};
use crate::error::{Error, Result};
use crate::family::SeparatingFamily;
use crate::free_algebra::{FreeAlgebra, FreeElement};
use crate::free_sequence::{is_free_sequence, is_free_sequence_naive, longest_free_sequence};
use crate::limits::Limits;
use crate::order::{FinalSegmentLattice, FinitePoset};
use crate::solver::{min_max_order, GeneratorPool, Mode};
use crate::tree::FiniteForest;

/// Whether `gens` generate `P(n)`, by closing `{0, 1} ∪ gens` under meet
/// and complement until nothing new appears (`n <= 16`).
pub fn generates_by_closure(n: usize, gens: &[u64]) -> bool {
    assert!(n <= 16, "closure oracle supports at most 16 atoms");
    let full = (1u64 << n) - 1;
    let mut seen = vec![false; 1 << n];
    let mut elems: Vec<u64> = Vec::new();
    let mut singletons = 0;
    let add = |e: u64, elems: &mut Vec<u64>, seen: &mut Vec<bool>, singletons: &mut usize| {
        if !seen[e as usize] {
            seen[e as usize] = true;
            elems.push(e);
            if e.count_ones() == 1 {
                *singletons += 1;
            }
        }
    };
    for e in [0, full].iter().chain(gens) {
        add(*e & full, &mut elems, &mut seen, &mut singletons);
    }
    let mut i = 0;
    while i < elems.len() {
        if singletons == n {
            return true;
        }
        let e = elems[i];
        add(!e & full, &mut elems, &mut seen, &mut singletons);
        for j in 0..=i {
            let f = elems[j];
            add(e & f, &mut elems, &mut seen, &mut singletons);
        }
        i += 1;
    }
    singletons == n || elems.len() == 1 << n
}

/// Least support of a satisfying assignment, by scanning every assignment.
pub fn min_support_exhaustive(w: &FreeElement) -> Option<usize> {
    (0..1usize << w.generator_count())
        .filter(|&m| w.satisfied_by(m))
        .map(|m| m.count_ones() as usize)
        .min()
}

/// All prime filters of `(FS(P), ∪, ∩)` among all subsets of the lattice
/// (`|FS(P)| <= 20`), as sets of segment indices.
pub fn prime_filters_exhaustive(fs: &FinalSegmentLattice) -> Vec<BitSet> {
    let segs = fs.segments();
    let m = segs.len();
    assert!(m <= 20, "filter enumeration supports at most 20 elements");
    let idx = |s: &BitSet| segs.iter().position(|t| t == s).expect("lattice is closed");
    let meet: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| idx(&segs[i].and(&segs[j]))).collect())
        .collect();
    let join: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| idx(&segs[i].or(&segs[j]))).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) - 1 {
        let inf = |i: usize| mask >> i & 1 == 1;
        let mut ok = true;
        'check: for i in 0..m {
            for j in 0..m {
                let up = inf(i) && segs[i].is_subset(&segs[j]) && !inf(j);
                let meet_closed = !(inf(i) && inf(j)) || inf(meet[i][j]);
                let prime = !inf(join[i][j]) || inf(i) || inf(j);
                if up || !meet_closed || !prime {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            out.push(BitSet::from_mask(m, mask));
        }
    }
    out
}

/// Exact min-max order by trying every subfamily (pool `<= 20`).
pub fn min_max_order_exhaustive(pool: &GeneratorPool) -> Option<usize> {
    let m = pool.len();
    assert!(m <= 20, "exhaustive solver supports at most 20 candidates");
    let n = pool.size();
    let mut best: Option<usize> = None;
    for mask in 0u64..1 << m {
        let chosen: Vec<&BitSet> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &pool.candidates[i].set)
            .collect();
        let separated = (0..n)
            .all(|x| (x + 1..n).all(|y| chosen.iter().any(|s| s.contains(x) != s.contains(y))));
        if !separated {
            continue;
        }
        let max = (0..n)
            .map(|x| chosen.iter().filter(|s| s.contains(x)).count())
            .max()
            .unwrap_or(0);
        best = Some(best.map_or(max, |b| b.min(max)));
    }
    best
}

/// Longest free sequence over all nonconstant elements, trying every
/// sequence with the literal definition (`n <= 4`).
pub fn longest_free_sequence_naive(algebra: &FiniteBooleanAlgebra) -> Result<usize> {
    fn go(
        alg: &FiniteBooleanAlgebra,
        pool: &[Element],
        cur: &mut Vec<Element>,
        best: &mut usize,
    ) -> Result<()> {
        *best = (*best).max(cur.len());
        for e in pool {
            cur.push(e.clone());
            if is_free_sequence_naive(alg, cur)? {
                go(alg, pool, cur, best)?;
            }
            cur.pop();
        }
        Ok(())
    }
    if algebra.atom_count() > 4 {
        return Err(Error::cap(
            "naive longest free sequence (atoms)",
            algebra.atom_count(),
            4,
        ));
    }
    let pool = algebra.nonconstant_elements()?;
    let mut best = 0;
    go(algebra, &pool, &mut Vec::new(), &mut best)?;
    Ok(best)
}

/// Tree height by recursion over children.
pub fn height_by_recursion(f: &FiniteForest) -> usize {
    fn depth(f: &FiniteForest, t: usize) -> usize {
        1 + f
            .children(t)
            .into_iter()
            .map(|c| depth(f, c))
            .max()
            .unwrap_or(0)
    }
    f.roots()
        .into_iter()
        .map(|r| depth(f, r))
        .max()
        .unwrap_or(0)
}

/// Pairwise separation check that never builds patterns.
pub fn separates_pairwise(f: &SeparatingFamily) -> bool {
    let n = f.size();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            f.members()
                .iter()
                .any(|m| m.set.contains(x) != m.set.contains(y))
        })
    })
}

fn recount(f: &SeparatingFamily, x: usize) -> usize {
    f.members().iter().filter(|m| m.set.contains(x)).count()
}

/// Random family over `n` points with `k` members.
pub fn random_system<R: Rng>(rng: &mut R, n: usize, k: usize) -> PointedSystem {
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    PointedSystem::new(
        SeparatingFamily::from_index_sets(n, &sets).expect("indices in range"),
        None,
    )
    .expect("no base")
}

/// Random separating family: singletons plus random extra sets, shuffled.
pub fn random_separating_system<R: Rng>(rng: &mut R, n: usize) -> PointedSystem {
    let mut sets: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for _ in 0..rng.gen_range(0..3) {
        sets.push((0..n).filter(|_| rng.gen_bool(0.5)).collect());
    }
    sets.shuffle(rng);
    // Drop members while separation survives, to vary the shapes.
    let mut i = 0;
    while i < sets.len() {
        let mut trial = sets.clone();
        trial.remove(i);
        let f = SeparatingFamily::from_index_sets(n, &trial).expect("indices in range");
        if rng.gen_bool(0.5) && f.is_t0_separating().is_separating() {
            sets = trial;
        } else {
            i += 1;
        }
    }
    PointedSystem::new(
        SeparatingFamily::from_index_sets(n, &sets).expect("indices in range"),
        None,
    )
    .expect("no base")
}

/// One randomized check of the product, duplication and porcupine laws.
/// Returns a description of the first mismatch.
pub fn combinator_laws_once<R: Rng>(rng: &mut R, limits: &Limits) -> Result<Option<String>> {
    let (n1, n2) = (rng.gen_range(1..5), rng.gen_range(1..5));
    let (k1, k2) = (rng.gen_range(0..5), rng.gen_range(0..5));
    let (a, b) = (random_system(rng, n1, k1), random_system(rng, n2, k2));
    let p = product_system(&a, &b, limits)?;
    for x in 0..n1 {
        for y in 0..n2 {
            if recount(&p.family, x * n2 + y) != recount(&a.family, x) + recount(&b.family, y) {
                return Ok(Some(format!("product order at ({x},{y})")));
            }
        }
    }

    let d: Vec<usize> = (0..n1).filter(|_| rng.gen_bool(0.5)).collect();
    let dup = alexandrov_duplication(&a, &d, limits)?;
    for x in 0..n1 {
        if recount(&dup.family, x) != recount(&a.family, x) {
            return Ok(Some(format!("duplication order at ({x},0)")));
        }
    }
    for (k, &x) in d.iter().enumerate() {
        if recount(&dup.family, n1 + k) != recount(&a.family, x) + 1 {
            return Ok(Some(format!("duplication order at ({x},1)")));
        }
    }

    let nx = rng.gen_range(1..4);
    let mut index = random_separating_system(rng, nx);
    // Every index point must be covered; add the whole index set if needed.
    if (0..nx).any(|x| recount(&index.family, x) == 0) {
        index.family.push("X", BitSet::full(nx))?;
    }
    let fibers: Vec<PointedSystem> = (0..nx)
        .map(|_| {
            let m = rng.gen_range(1..4);
            random_separating_system(rng, m)
        })
        .collect();
    let section = fibers.iter().map(|f| rng.gen_range(0..f.size())).collect();
    let spec = PorcupineSpec {
        index,
        fibers,
        section,
    };
    let r = porcupine(&spec, limits)?;
    let fam = &r.system.family;
    if !separates_pairwise(fam) {
        return Ok(Some("porcupine family is not separating".into()));
    }
    for d in &r.decomposition {
        let order = recount(fam, d.point);
        let v0 = fam
            .members()
            .iter()
            .zip(&r.origins)
            .filter(|(m, o)| {
                m.set.contains(d.point) && matches!(o[0], PorcupineOrigin::Fiber { .. })
            })
            .count();
        if order != d.order || v0 != d.v0 || order != d.v0 + d.v_minus + d.v_star + d.v_double_star
        {
            return Ok(Some(format!(
                "porcupine decomposition at point {}",
                d.point
            )));
        }
    }
    Ok(None)
}

/// Random pool over `n` points with `m` candidates.
pub fn random_pool<R: Rng>(rng: &mut R, n: usize, m: usize) -> GeneratorPool {
    GeneratorPool::custom(&random_system(rng, n, m).family)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            cases: 0,
            mismatches: 0,
            first_mismatch: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            self.first_mismatch.get_or_insert_with(detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Runs every oracle pair at a scale that finishes in a few seconds.
pub fn selftest(seed: u64, limits: &Limits) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut c = Check::new("generation vs closure fixpoint");
    for n in 1..=3 {
        let b = FiniteBooleanAlgebra::new(n)?;
        let elems = b.elements()?;
        for fam in 0u64..1 << elems.len() {
            let gens: Vec<Element> = (0..elems.len())
                .filter(|i| fam >> i & 1 == 1)
                .map(|i| elems[i].clone())
                .collect();
            let masks: Vec<u64> = gens.iter().map(|g| g.bits().to_mask()).collect();
            c.record(
                b.generates_whole(&gens)? == generates_by_closure(n, &masks),
                || format!("n={n} family {fam}"),
            );
        }
    }
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(0..=5);
        let masks: Vec<u64> = (0..k).map(|_| rng.gen_range(0..1u64 << n)).collect();
        let b = FiniteBooleanAlgebra::new(n)?;
        let gens: Vec<Element> = masks
            .iter()
            .map(|&m| b.element_from_bits(BitSet::from_mask(n, m)))
            .collect::<Result<_>>()?;
        c.record(
            b.generates_whole(&gens)? == generates_by_closure(n, &masks),
            || format!("n={n} {masks:?}"),
        );
    }
    checks.push(c);

    let mut c = Check::new("free sequence reduced vs naive");
    for _ in 0..2000 {
        let n = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=4);
        let b = FiniteBooleanAlgebra::new(n)?;
        let seq: Vec<Element> = (0..len)
            .map(|_| b.element_from_bits(BitSet::from_mask(n, rng.gen_range(0..1u64 << n))))
            .collect::<Result<_>>()?;
        c.record(
            is_free_sequence(&b, &seq)? == is_free_sequence_naive(&b, &seq)?,
            || format!("n={n} {seq:?}"),
        );
    }
    for n in 1..=3 {
        let b = FiniteBooleanAlgebra::new(n)?;
        let pool = b.nonconstant_elements()?;
        let fast = longest_free_sequence(&b, &pool, false)?.length;
        c.record(fast == longest_free_sequence_naive(&b)?, || {
            format!("longest over n={n}")
        });
    }
    checks.push(c);

    let mut c = Check::new("solver exact vs exhaustive");
    for _ in 0..150 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=8);
        let pool = random_pool(&mut rng, n, m);
        let fast = match min_max_order(&pool, Mode::Exact, limits) {
            Ok(r) => Some(r.value),
            Err(Error::PoolInsufficient(..)) => None,
            Err(e) => return Err(e),
        };
        c.record(fast == min_max_order_exhaustive(&pool), || {
            format!("{:?}", pool.candidates)
        });
    }
    checks.push(c);

    let mut c = Check::new("prime filters vs a_p bijection");
    for n in 1..=3 {
        for p in FinitePoset::all_up_to_isomorphism(n) {
            let fs = p.final_segments(limits)?;
            let mut fast: Vec<BitSet> = fs
                .prime_clopen_filters()?
                .into_iter()
                .map(|f| f.members)
                .collect();
            let mut slow = prime_filters_exhaustive(&fs);
            fast.sort();
            slow.sort();
            c.record(fast == slow, || format!("poset covers {:?}", p.covers()));
        }
    }
    checks.push(c);

    let mut c = Check::new("min support vs exhaustive");
    for s in 1..=3 {
        let fr = FreeAlgebra::with_limits(s, limits)?;
        for table in 1u64..1 << (1 << s) {
            let w = fr.parse(&table_formula(s, table))?;
            let fast = fr.min_support_ultrafilter(&w)?.weight();
            c.record(Some(fast) == min_support_exhaustive(&w), || {
                format!("s={s} table {table:b}")
            });
        }
    }
    checks.push(c);

    let mut c = Check::new("tree height vs sigma max order");
    for n in 0..=5 {
        for f in FiniteForest::all_shapes(n) {
            let max = f.paths().sigma_system()?.family.order_profile().max_order;
            c.record(max == height_by_recursion(&f), || {
                format!("parents {:?}", f.parents())
            });
        }
    }
    checks.push(c);

    let mut c = Check::new("combinator order laws");
    for _ in 0..200 {
        let r = combinator_laws_once(&mut rng, limits)?;
        c.record(r.is_none(), || r.clone().unwrap_or_default());
    }
    checks.push(c);

    Ok(SelftestReport { seed, checks })
}

/// Disjunctive normal form of a truth table, e.g. `g0&!g1 | !g0&g1`.
pub fn table_formula(s: usize, table: u64) -> String {
    let terms: Vec<String> = (0..1usize << s)
        .filter(|&m| table >> m & 1 == 1)
        .map(|m| {
            (0..s)
                .map(|i| {
                    if m >> i & 1 == 1 {
                        format!("g{i}")
                    } else {
                        format!("!g{i}")
                    }
                })
                .collect::<Vec<_>>()
                .join("&")
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" | ")
    }
}
