//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stonelab::algebra::{Element, FiniteBooleanAlgebra};
use stonelab::bitset::BitSet;
use stonelab::family::{selection_value, SeparatingFamily};
use stonelab::free_algebra::FreeAlgebra;
use stonelab::free_sequence::{
    is_free_sequence, is_free_sequence_naive, longest_free_point_sequence, longest_free_sequence,
};
use stonelab::limits::Limits;
use stonelab::oracle::{
    combinator_laws_once, generates_by_closure, height_by_recursion, min_max_order_exhaustive,
    min_support_exhaustive, prime_filters_exhaustive, random_pool,
};
use stonelab::order::FinitePoset;
use stonelab::solver::{min_max_order, GeneratorPool, Mode};
use stonelab::tree::FiniteForest;
use stonelab::Error;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn finite_cofinite() -> Outcome {
    for n in 2..=10 {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let f = SeparatingFamily::from_elements(&b, &b.singletons()).unwrap();
        ensure(f.is_t0_separating().is_separating(), || {
            format!("n={n} not separating")
        })?;
        let s = selection_value(&b, &b.singletons()).unwrap();
        ensure(s.value == 1, || {
            format!("n={n} selection value {}", s.value)
        })?;
    }
    Ok("n = 2..10, value 1".into())
}

fn generation_vs_separation() -> Outcome {
    let mut cases = 0u64;
    let check = |b: &FiniteBooleanAlgebra, gens: &[Element]| -> Result<(), String> {
        let n = b.atom_count();
        let masks: Vec<u64> = gens.iter().map(|g| g.bits().to_mask()).collect();
        let fast = b.generates_whole(gens).unwrap();
        let sep = SeparatingFamily::from_elements(b, gens)
            .unwrap()
            .is_t0_separating()
            .is_separating();
        ensure(
            fast == generates_by_closure(n, &masks) && fast == sep,
            || format!("n={n} {masks:?}"),
        )
    };
    for n in 1..=4 {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let elems = b.elements().unwrap();
        for fam in 0u64..1 << elems.len() {
            let gens: Vec<Element> = (0..elems.len())
                .filter(|i| fam >> i & 1 == 1)
                .map(|i| elems[i].clone())
                .collect();
            check(&b, &gens)?;
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b4 = FiniteBooleanAlgebra::new(4).unwrap();
    for _ in 0..100_000 {
        let k = rng.gen_range(0..=6);
        let gens: Vec<Element> = (0..k)
            .map(|_| {
                b4.element_from_bits(BitSet::from_mask(4, rng.gen_range(0..16)))
                    .unwrap()
            })
            .collect();
        check(&b4, &gens)?;
        cases += 1;
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let k = rng.gen_range(0..=2 * n);
        let gens: Vec<Element> = (0..k)
            .map(|_| {
                b.element_from_bits(BitSet::from_mask(n, rng.gen_range(0..1u64 << n)))
                    .unwrap()
            })
            .collect();
        check(&b, &gens)?;
        cases += 1;
    }
    Ok(format!("{cases} families, 0 mismatches"))
}

fn closure_formula() -> Outcome {
    let mut cases = 0;
    for n in 1..=5 {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        for mask in 0u64..1 << n {
            let a: Vec<_> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| b.ultrafilter(i).unwrap())
                .collect();
            ensure(b.closure_of_ultrafilter_set(&a).unwrap() == a, || {
                format!("n={n} A={mask:b}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} sets, 0 mismatches"))
}

fn all_posets() -> Vec<FinitePoset> {
    (1..=4)
        .flat_map(FinitePoset::all_up_to_isomorphism)
        .collect()
}

fn poset_duality() -> Outcome {
    let lim = Limits::default();
    let posets = all_posets();
    for p in &posets {
        let fs = p.final_segments(&lim).unwrap();
        ensure(fs.is_sublattice(), || {
            format!("FS not a lattice for {:?}", p.covers())
        })?;
        let sys = fs.system().unwrap();
        ensure(sys.family.is_t0_separating().is_separating(), || {
            format!("not separating {:?}", p.covers())
        })?;
        let primes = fs.prime_clopen_filters().map_err(|e| e.to_string())?;
        let mut fast: Vec<BitSet> = primes.iter().map(|f| f.members.clone()).collect();
        let mut slow = prime_filters_exhaustive(&fs);
        fast.sort();
        slow.sort();
        ensure(fast == slow && slow.len() == p.size(), || {
            format!("prime filters differ for {:?}", p.covers())
        })?;
        let gens = fs.generators();
        for f in &primes {
            ensure(
                gens[f.generator] == f.members && fs.segments()[f.minimum] == *p.up(f.generator),
                || format!("prime filter not principal at ↑{}", f.generator),
            )?;
        }
        if p.covers().is_empty() {
            continue;
        }
        let o = fs.orientation();
        ensure(o == stonelab::order::Orientation::Preserving, || {
            format!("orientation {o:?}")
        })?;
    }
    for n in 1..=10 {
        let c = FinitePoset::chain(n).final_segments(&lim).unwrap().len();
        ensure(c == n + 1, || format!("|FS(chain {n})| = {c}"))?;
    }
    Ok(format!(
        "{} posets up to isomorphism, order-preserving",
        posets.len()
    ))
}

fn discrete_witnesses() -> Outcome {
    let lim = Limits::default();
    let mut cases = 0;
    for p in all_posets() {
        let fs = p.final_segments(&lim).unwrap();
        let segs = fs.segments();
        for q in 0..p.size() {
            let w = fs.discrete_witness(q).unwrap();
            // Recount from the segments: a_r contains ↑q and misses ↑τ_q.
            let up_q = fs.index_of(p.up(q)).unwrap();
            let captured: Vec<usize> = (0..p.size())
                .filter(|&r| {
                    segs[up_q].contains(r)
                        && w.neighborhood.minus.iter().all(|&m| !segs[m].contains(r))
                })
                .collect();
            ensure(w.unique && captured == [q], || {
                format!("p={q} captured {captured:?} in {:?}", p.covers())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (poset, point) pairs isolated"))
}

fn combinator_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let lim = Limits::default();
    for i in 0..1000 {
        if let Some(m) = combinator_laws_once(&mut rng, &lim).map_err(|e| e.to_string())? {
            return Err(format!("instance {i}: {m}"));
        }
    }
    Ok("1000 instances, 0 mismatches".into())
}

fn tree_law() -> Outcome {
    let mut shapes = 0;
    for n in 0..=6 {
        for f in FiniteForest::all_shapes(n) {
            let ps = f.paths();
            ensure(ps.len() == n + 1, || {
                format!("|σT| = {} for {:?}", ps.len(), f.parents())
            })?;
            let max = ps.sigma_system().unwrap().family.order_profile().max_order;
            ensure(max == height_by_recursion(&f) && max == f.height(), || {
                format!("{:?}: {max}", f.parents())
            })?;
            shapes += 1;
        }
    }
    Ok(format!("{shapes} forest shapes on ≤ 6 nodes"))
}

fn free_density() -> Outcome {
    let mut cases = 0;
    for s in 1..=4 {
        let fr = FreeAlgebra::new(s).unwrap();
        for mut code in 0..3usize.pow(s as u32) {
            let (mut sigma, mut tau) = (Vec::new(), Vec::new());
            for i in 0..s {
                match code % 3 {
                    1 => sigma.push(i),
                    2 => tau.push(i),
                    _ => {}
                }
                code /= 3;
            }
            let w = fr.basic_clopen(&sigma, &tau).unwrap();
            let a = fr.min_support_ultrafilter(&w).unwrap();
            ensure(
                a.support == sigma && min_support_exhaustive(&w) == Some(sigma.len()),
                || format!("s={s} σ={sigma:?} τ={tau:?} got {:?}", a.support),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{cases} disjoint (σ,τ) pairs, support exactly σ"))
}

fn free_sequence_asymmetry() -> Outcome {
    let mut lengths = Vec::new();
    for n in 1..=6 {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let pool = b.nonconstant_elements().unwrap();
        let alg = longest_free_sequence(&b, &pool, false).unwrap();
        ensure(alg.length == n - 1, || {
            format!("n={n}: algebra length {}", alg.length)
        })?;
        let pts = longest_free_point_sequence(&b).unwrap().len();
        ensure(pts == n, || format!("n={n}: point length {pts}"))?;
        lengths.push(format!("{n}:{}/{}", alg.length, pts));
    }
    let mut seqs = 0u64;
    for n in 1..=4 {
        let b = FiniteBooleanAlgebra::new(n).unwrap();
        let elems = b.elements().unwrap();
        let m = elems.len();
        for len in 0..=4u32 {
            for code in 0..m.pow(len) {
                let seq: Vec<Element> = (0..len)
                    .map(|i| elems[code / m.pow(i) % m].clone())
                    .collect();
                let fast = is_free_sequence(&b, &seq).unwrap();
                ensure(fast == is_free_sequence_naive(&b, &seq).unwrap(), || {
                    format!("n={n} code {code}")
                })?;
                seqs += 1;
            }
        }
    }
    Ok(format!(
        "n:algebra/points {}; {seqs} sequences agree",
        lengths.join(" ")
    ))
}

fn solver_exactness() -> Outcome {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let exact = |pool: &GeneratorPool| match min_max_order(pool, Mode::Exact, &lim) {
        Ok(r) => {
            assert!(r.family.is_t0_separating().is_separating());
            Ok(Some(r.value))
        }
        Err(Error::PoolInsufficient(..)) => Ok(None),
        Err(e) => Err(e.to_string()),
    };
    let mut instances = 0;
    for _ in 0..600 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=12);
        let pool = random_pool(&mut rng, n, m);
        let (fast, slow) = (exact(&pool)?, min_max_order_exhaustive(&pool));
        ensure(fast == slow, || {
            format!("{fast:?} vs {slow:?} on {:?}", pool.candidates)
        })?;
        instances += 1;
    }
    let presets = vec![
        GeneratorPool::intervals(5).unwrap(),
        GeneratorPool::all(3).unwrap(),
        GeneratorPool::upsets(&FinitePoset::antichain(2), &lim).unwrap(),
        GeneratorPool::tree(&FiniteForest::complete_binary(3)).unwrap(),
        GeneratorPool::free(&FreeAlgebra::new(3).unwrap()).unwrap(),
    ];
    for pool in &presets {
        let (fast, slow) = (exact(pool)?, min_max_order_exhaustive(pool));
        ensure(fast == slow, || {
            format!("preset {:?}: {fast:?} vs {slow:?}", pool.preset)
        })?;
        instances += 1;
    }
    for n in 2..=6 {
        let pool = GeneratorPool::upsets(&FinitePoset::chain(n), &lim).unwrap();
        let v = exact(&pool)?;
        ensure(v == Some(n), || {
            format!("up-set pool over chain {n}: {v:?}")
        })?;
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=10);
        let mut pool = random_pool(&mut rng, n, m);
        for x in 0..n {
            pool.candidates.push(stonelab::family::Member {
                label: format!("{{{x}}}"),
                set: BitSet::from_indices(n, [x]),
            });
        }
        let v = exact(&pool)?;
        let want = if n == 1 { 0 } else { 1 };
        ensure(v == Some(want), || {
            format!("pool with singletons over {n} points: {v:?}")
        })?;
    }
    Ok(format!(
        "{instances} instances match exhaustive search; chain up-sets give n"
    ))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_stonelab");
    let dir = fixtures();
    let mut runs: Vec<Vec<String>> = Vec::new();
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for f in &files {
        let f = f.to_str().unwrap().to_string();
        runs.push(vec!["analyze".into(), f.clone()]);
        runs.push(vec!["export-dot".into(), f.clone()]);
    }
    let sys = |n: &str| dir.join(n).to_str().unwrap().to_string();
    runs.push(vec![
        "solve".into(),
        sys("chain3.json"),
        "--pool".into(),
        "upsets".into(),
    ]);
    runs.push(vec!["solve".into(), sys("binary7.json")]);
    runs.push(vec![
        "combine".into(),
        "--op".into(),
        "product".into(),
        sys("sys3.json"),
        sys("sys2.json"),
    ]);
    runs.push(vec![
        "combine".into(),
        "--op".into(),
        "porcupine".into(),
        sys("porcupine.json"),
    ]);
    runs.push(vec!["selftest".into(), "--seed".into(), "5".into()]);
    for args in &runs {
        let once = || {
            Command::new(bin)
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (once()?, once()?);
        ensure(a.status.success(), || {
            format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr))
        })?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{args:?} differs between runs")
        })?;
    }
    Ok(format!("{} invocations byte-identical", runs.len()))
}

fn main() {
    let criteria = [
        Criterion {
            name: "finite-cofinite shadow",
            budget: Some(Duration::from_secs(1)),
            run: finite_cofinite,
        },
        Criterion {
            name: "generation iff separation",
            budget: None,
            run: generation_vs_separation,
        },
        Criterion {
            name: "closure formula",
            budget: None,
            run: closure_formula,
        },
        Criterion {
            name: "poset duality",
            budget: Some(Duration::from_secs(30)),
            run: poset_duality,
        },
        Criterion {
            name: "discrete-generator witnesses",
            budget: None,
            run: discrete_witnesses,
        },
        Criterion {
            name: "combinator order laws",
            budget: None,
            run: combinator_laws,
        },
        Criterion {
            name: "tree law",
            budget: None,
            run: tree_law,
        },
        Criterion {
            name: "free-algebra density",
            budget: None,
            run: free_density,
        },
        Criterion {
            name: "free-sequence asymmetry",
            budget: None,
            run: free_sequence_asymmetry,
        },
        Criterion {
            name: "solver exactness",
            budget: None,
            run: solver_exactness,
        },
        Criterion {
            name: "determinism",
            budget: None,
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.budget.filter(|b| elapsed > *b);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(b)) => ("FAIL", format!("{d}; took longer than {b:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {:<30} {:>9.3}s  {detail}",
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
