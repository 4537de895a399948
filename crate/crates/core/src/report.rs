//! Analyses behind the command-line front end, returning JSON reports.
//!
//! Reports are `serde_json::Value` trees. Object keys are kept sorted and no
//! timing data is included, so identical inputs give identical bytes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::FiniteBooleanAlgebra;
use crate::combinators::{
    alexandrov_duplication, porcupine, product_system, sum_with_point, PointedSystem,
};
use crate::error::{Error, Result};
use crate::family::{selection_value, SeparatingFamily};
use crate::free_sequence::{
    default_pool, longest_free_point_sequence, longest_free_sequence, sigma_squared, SigmaTree,
};
use crate::input::{self, StructureSpec, SystemSpec};
use crate::limits::{Limits, MAX_ATOM_CAP};
use crate::order::FinitePoset;
use crate::solver::{decision_max_order_at_most, min_max_order, GeneratorPool, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    /// The main analysis for the structure's kind.
    Auto,
    Profile,
    Selection,
    Generation,
    Closure,
    Duality,
    Modest,
    Paths,
    FreeSeq,
    Minsupport,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoolPreset {
    /// The natural pool for the structure's kind.
    Auto,
    All,
    Intervals,
    Upsets,
    Tree,
    Filters,
    Free,
    Custom,
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub pool: Option<PoolPreset>,
    pub clopen: Option<String>,
    pub samples: Option<usize>,
    pub seed: u64,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

pub fn envelope(
    command: &str,
    input: Value,
    analysis: &str,
    results: Value,
    notes: Vec<String>,
) -> Value {
    json!({
        "command": command,
        "input": input,
        "analysis": analysis,
        "results": results,
        "notes": notes,
    })
}

fn family_summary(f: &SeparatingFamily) -> Value {
    json!({
        "points": f.size(),
        "members": f.len(),
        "separation": to_value(&f.is_t0_separating()),
        "order_profile": to_value(&f.order_profile()),
        "lints": f.lints(),
    })
}

fn default_analysis(spec: &StructureSpec) -> Analysis {
    match spec {
        StructureSpec::Algebra { .. } => Analysis::Generation,
        StructureSpec::Chain { .. } => Analysis::Selection,
        StructureSpec::Poset { .. } => Analysis::Duality,
        StructureSpec::Semilattice { .. } => Analysis::Modest,
        StructureSpec::Tree { .. } => Analysis::Paths,
        StructureSpec::Free { .. } => Analysis::Density,
        StructureSpec::System(_) | StructureSpec::Porcupine { .. } => Analysis::Profile,
    }
}

fn analysis_name(a: Analysis) -> String {
    to_value(&a).as_str().expect("unit variant").to_string()
}

fn unsupported(a: Analysis, spec: &StructureSpec) -> Error {
    Error::validation(format!(
        "analysis '{}' does not apply to kind '{}'",
        analysis_name(a),
        spec.kind()
    ))
}

/// The candidate pool for a structure.
pub fn build_pool(
    spec: &StructureSpec,
    preset: PoolPreset,
    limits: &Limits,
) -> Result<GeneratorPool> {
    use PoolPreset as P;
    use StructureSpec as S;
    match (spec, preset) {
        (S::Algebra { n, .. }, P::Auto | P::All) => GeneratorPool::all(*n),
        (S::Algebra { n, .. } | S::Chain { n }, P::Intervals) => GeneratorPool::intervals(*n),
        (S::Algebra { n, generators }, P::Custom) => {
            let (b, gens) = input::algebra_with_generators(*n, generators.as_deref(), limits)?;
            Ok(GeneratorPool::custom(&SeparatingFamily::from_elements(
                &b, &gens,
            )?))
        }
        (S::Chain { n }, P::Auto) => GeneratorPool::intervals(*n),
        (S::Chain { n }, P::Upsets) => GeneratorPool::upsets(&FinitePoset::chain(*n), limits),
        (S::Chain { n }, P::All) => GeneratorPool::all(*n),
        (S::Poset { n, le }, P::Auto | P::Upsets) => {
            GeneratorPool::upsets(&input::poset(*n, le)?, limits)
        }
        (S::Semilattice { meet }, P::Auto | P::Filters) => {
            GeneratorPool::filters(&input::semilattice(meet)?.filters(limits)?)
        }
        (S::Tree { parent }, P::Auto | P::Tree) => {
            GeneratorPool::tree(&input::forest(parent, limits)?)
        }
        (S::Free { s }, P::Auto | P::Free) => GeneratorPool::free(&input::free(*s, limits)?),
        (S::System(sys), P::Auto | P::Custom) => Ok(GeneratorPool::custom(&sys.build()?.family)),
        _ => Err(Error::validation(format!(
            "pool preset '{}' does not apply to kind '{}'",
            to_value(&preset).as_str().unwrap_or("?"),
            spec.kind()
        ))),
    }
}

/// Runs one analysis and wraps it in a report envelope.
pub fn analyze(
    spec: &StructureSpec,
    analysis: Analysis,
    opts: &AnalyzeOptions,
    limits: &Limits,
) -> Result<Value> {
    let analysis = if analysis == Analysis::Auto {
        default_analysis(spec)
    } else {
        analysis
    };
    let mut notes = Vec::new();
    let results = match analysis {
        Analysis::Auto => unreachable!("resolved above"),
        Analysis::Profile => {
            let fam = structure_family(spec, opts, limits)?;
            notes.push("order_profile: members containing each point".into());
            family_summary(&fam)
        }
        Analysis::Selection => selection(spec, opts, limits, &mut notes)?,
        Analysis::Generation => match spec {
            StructureSpec::Algebra { n, generators } => {
                let (b, gens) = input::algebra_with_generators(*n, generators.as_deref(), limits)?;
                let part = b.generated_subalgebra(&gens)?;
                notes.push(
                    "blocks: atoms grouped by membership pattern across the generators".into(),
                );
                json!({
                    "atoms": n,
                    "blocks": part.blocks(),
                    "block_count": part.block_count(),
                    "generates_whole": part.is_discrete(),
                })
            }
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::Closure => match spec {
            StructureSpec::Algebra { n, .. } | StructureSpec::Chain { n } => {
                let b = FiniteBooleanAlgebra::with_cap(*n, limits.atoms)?;
                if *n > 8 {
                    return Err(Error::cap("exhaustive closure check (atoms)", *n, 8));
                }
                let mut fixed = 0;
                let mut non_fixed = Vec::new();
                for mask in 0u64..1 << n {
                    let set: Vec<_> = (0..*n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| b.ultrafilter(i))
                        .collect::<Result<_>>()?;
                    if b.closure_of_ultrafilter_set(&set)? == set {
                        fixed += 1;
                    } else {
                        non_fixed.push(mask);
                    }
                }
                notes.push(
                    "closure evaluated as {p : p ⊆ ⋃A} over every element containing p".into(),
                );
                json!({"subsets": 1u64 << n, "closed": fixed, "not_closed": non_fixed})
            }
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::Duality => match spec {
            StructureSpec::Poset { n, le } => duality(&input::poset(*n, le)?, limits, &mut notes)?,
            StructureSpec::Chain { n } => duality(&FinitePoset::chain(*n), limits, &mut notes)?,
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::Modest => match spec {
            StructureSpec::Semilattice { meet } => {
                let l = input::semilattice(meet)?.filters(limits)?;
                let r = l.modest_analysis()?;
                notes.push(
                    "compact elements: [a,→) coincides with a finite-coordinate cylinder".into(),
                );
                notes.push(
                    "closed_discrete_size: clopen filters containing the witness point".into(),
                );
                json!({
                    "filters": to_value(&l.filters()),
                    "filter_count": l.len(),
                    "separation": to_value(&l.system()?.family.is_t0_separating()),
                    "report": to_value(&r),
                })
            }
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::Paths => match spec {
            StructureSpec::Tree { parent } => {
                let f = input::forest(parent, limits)?;
                let ps = f.paths();
                let sys = ps.sigma_system()?;
                let prof = sys.family.order_profile();
                let order_is_size = ps
                    .paths()
                    .iter()
                    .enumerate()
                    .all(|(i, a)| prof.per_point[i] == a.count());
                let ica = if f.size() > 0 {
                    let ica = f.initial_chain_algebra()?;
                    json!({"blocks": ica.partition.blocks(), "is_whole": ica.is_whole})
                } else {
                    Value::Null
                };
                notes.push("points: the empty path and the ancestor-closure of each node".into());
                json!({
                    "nodes": f.size(),
                    "height": f.height(),
                    "path_count": ps.len(),
                    "paths": to_value(&ps.paths()),
                    "max_order": prof.max_order,
                    "order_equals_path_size": order_is_size,
                    "separation": to_value(&sys.family.is_t0_separating()),
                    "initial_chain_algebra": ica,
                })
            }
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::FreeSeq => free_seq(spec, opts, limits, &mut notes)?,
        Analysis::Minsupport => match spec {
            StructureSpec::Free { s } => {
                let fr = input::free(*s, limits)?;
                let formula = opts
                    .clopen
                    .as_deref()
                    .ok_or_else(|| Error::validation("minsupport needs a clopen formula"))?;
                let w = fr.parse(formula)?;
                let a = fr.min_support_ultrafilter(&w)?;
                notes.push(
                    "support: generators sent to 1 by a least-weight satisfying assignment".into(),
                );
                json!({
                    "clopen": formula,
                    "satisfying_assignments": w.table().count(),
                    "assignment": to_value(&a),
                    "support_size": a.weight(),
                })
            }
            _ => return Err(unsupported(analysis, spec)),
        },
        Analysis::Density => match spec {
            StructureSpec::Free { s } => {
                let fr = input::free(*s, limits)?;
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let r = fr.dense_small_support_check(opts.samples.unwrap_or(1000), &mut rng)?;
                notes.push("each basic clopen ∏σ·∏−τ checked for least support exactly σ".into());
                json!({"report": to_value(&r), "passed": r.passed()})
            }
            _ => return Err(unsupported(analysis, spec)),
        },
    };
    Ok(envelope(
        "analyze",
        spec.to_value(),
        &analysis_name(analysis),
        results,
        notes,
    ))
}

/// The canonical family of a structure.
fn structure_family(
    spec: &StructureSpec,
    opts: &AnalyzeOptions,
    limits: &Limits,
) -> Result<SeparatingFamily> {
    Ok(match spec {
        StructureSpec::Algebra { n, generators } => {
            let (b, gens) = input::algebra_with_generators(*n, generators.as_deref(), limits)?;
            SeparatingFamily::from_elements(&b, &gens)?
        }
        StructureSpec::Poset { n, le } => {
            input::poset(*n, le)?
                .final_segments(limits)?
                .system()?
                .family
        }
        StructureSpec::Semilattice { meet } => {
            input::semilattice(meet)?.filters(limits)?.system()?.family
        }
        StructureSpec::Tree { parent } => {
            input::forest(parent, limits)?
                .paths()
                .sigma_system()?
                .family
        }
        StructureSpec::System(s) => s.build()?.family,
        StructureSpec::Porcupine {
            index,
            fibers,
            section,
        } => {
            porcupine(&input::porcupine_spec(index, fibers, section)?, limits)?
                .system
                .family
        }
        StructureSpec::Chain { .. } | StructureSpec::Free { .. } => {
            let pool = build_pool(spec, opts.pool.unwrap_or(PoolPreset::Auto), limits)?;
            pool.family(&(0..pool.len()).collect::<Vec<_>>())
        }
    })
}

fn selection(
    spec: &StructureSpec,
    opts: &AnalyzeOptions,
    limits: &Limits,
    notes: &mut Vec<String>,
) -> Result<Value> {
    notes.push(
        "value: max over points (ultrafilters) of the number of generators containing it".into(),
    );
    if let StructureSpec::Algebra { n, generators } = spec {
        if opts.pool.is_none() {
            let (b, gens) = input::algebra_with_generators(*n, generators.as_deref(), limits)?;
            let s = selection_value(&b, &gens)?;
            return Ok(json!({
                "value": s.value,
                "witness_point": s.witness.atom(),
                "generates": s.generates,
                "generators": gens.len(),
            }));
        }
    }
    let fam = structure_family(spec, opts, limits)?;
    let prof = fam.order_profile();
    Ok(json!({
        "value": prof.max_order,
        "witness_point": prof.argmax_points.first(),
        "generates": fam.is_t0_separating().is_separating(),
        "generators": fam.len(),
    }))
}

fn duality(p: &FinitePoset, limits: &Limits, notes: &mut Vec<String>) -> Result<Value> {
    let fs = p.final_segments(limits)?;
    let sys = fs.system()?;
    // Atoms of the subalgebra of P(FS(P)) generated by the a_p.
    let blocks = if fs.len() <= MAX_ATOM_CAP {
        let b = FiniteBooleanAlgebra::with_cap(fs.len(), MAX_ATOM_CAP)?;
        let gens = fs
            .generators()
            .into_iter()
            .map(|g| b.element_from_bits(g))
            .collect::<Result<Vec<_>>>()?;
        json!(b.generated_subalgebra(&gens)?.block_count())
    } else {
        Value::Null
    };
    let primes = fs.prime_clopen_filters()?;
    let witnesses = (0..p.size())
        .map(|q| fs.discrete_witness(q))
        .collect::<Result<Vec<_>>>()?;
    notes.push("points: final segments; generators a_p = {u : p ∈ u}".into());
    notes.push("prime filters: principal filters of (FS(P),∪,∩) passing the primality test".into());
    notes.push("witness: a_p is the only generator containing ↑p and missing ↑τ_p".into());
    Ok(json!({
        "poset_size": p.size(),
        "final_segments": to_value(&fs.segments()),
        "final_segment_count": fs.len(),
        "is_sublattice": fs.is_sublattice(),
        "separation": to_value(&sys.family.is_t0_separating()),
        "generated_atoms": blocks,
        "orientation": to_value(&fs.orientation()),
        "prime_filters": to_value(&primes),
        "witnesses": to_value(&witnesses),
    }))
}

fn free_seq(
    spec: &StructureSpec,
    opts: &AnalyzeOptions,
    limits: &Limits,
    notes: &mut Vec<String>,
) -> Result<Value> {
    let (b, pool, pool_name) = match spec {
        StructureSpec::Algebra { n, generators } => {
            let b = FiniteBooleanAlgebra::with_cap(*n, limits.atoms)?;
            match (generators, opts.pool) {
                (Some(g), _) => {
                    let (_, gens) = input::algebra_with_generators(*n, Some(g), limits)?;
                    (b, gens, "generators")
                }
                (None, Some(PoolPreset::Intervals)) => {
                    let tails = (1..*n).map(|i| b.element(i..*n)).collect::<Result<_>>()?;
                    (b, tails, "intervals")
                }
                _ => (b, default_pool(&b)?, "nonconstant"),
            }
        }
        StructureSpec::Chain { n } => {
            let b = FiniteBooleanAlgebra::with_cap(*n, limits.atoms)?;
            let tails = (1..*n).map(|i| b.element(i..*n)).collect::<Result<_>>()?;
            (b, tails, "intervals")
        }
        _ => return Err(unsupported(Analysis::FreeSeq, spec)),
    };
    let n = b.atom_count();
    let alg = longest_free_sequence(&b, &pool, true)?;
    let points = if n <= 8 {
        json!(longest_free_point_sequence(&b)?.len())
    } else {
        Value::Null
    };
    let tree = SigmaTree::build(&b, &pool, None, limits)?;
    let sq = sigma_squared(&tree)?;
    notes.push("algebra length: α + 1 disjoint nonzero split cells force α ≤ n − 1".into());
    notes.push("point length: closures computed by the ultrafilter closure formula".into());
    notes.push("sigma_squared: paths of the free-sequence tree, the root counted as a node".into());
    Ok(json!({
        "atoms": n,
        "pool": pool_name,
        "pool_size": pool.len(),
        "longest_algebra_sequence": alg.length,
        "witness": to_value(&alg.terms),
        "longest_point_sequence": points,
        "sigma_tree_nodes": tree.len(),
        "sigma_tree_depth": tree.depth(),
        "sigma_squared_max_order": sq.family.order_profile().max_order,
    }))
}

pub fn solve(
    spec: &StructureSpec,
    preset: PoolPreset,
    mode: Mode,
    k: Option<usize>,
    limits: &Limits,
) -> Result<Value> {
    let pool = build_pool(spec, preset, limits)?;
    let pool_info = json!({
        "preset": to_value(&pool.preset),
        "points": pool.size(),
        "candidates": pool.len(),
    });
    let mut notes = vec![
        "value: least possible max order of a T0-separating subfamily of the pool".to_string(),
    ];
    let results = match k {
        Some(k) => {
            let d = decision_max_order_at_most(&pool, k, limits)?;
            notes.push(format!(
                "decision: is there a separating subfamily with every order ≤ {k}"
            ));
            json!({
                "pool": pool_info,
                "k": k,
                "feasible": d.feasible,
                "witness": d.witness.map(|w| w.iter().map(|&i| pool.candidates[i].label.clone()).collect::<Vec<_>>()),
                "nodes_explored": d.nodes_explored,
            })
        }
        None => {
            let r = min_max_order(&pool, mode, limits)?;
            if !r.exact {
                notes.push("greedy: value is an upper bound".into());
            }
            json!({
                "pool": pool_info,
                "mode": to_value(&mode),
                "value": r.value,
                "exact": r.exact,
                "nodes_explored": r.nodes_explored,
                "family": r.family.members().iter().map(|m| m.label.clone()).collect::<Vec<_>>(),
                "order_profile": to_value(&r.family.order_profile()),
            })
        }
    };
    Ok(envelope(
        "solve",
        spec.to_value(),
        "min-max-order",
        results,
        notes,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombineOp {
    Product,
    Sum,
    Duplicate,
    Porcupine,
}

fn system_of(spec: &StructureSpec) -> Result<&SystemSpec> {
    match spec {
        StructureSpec::System(s) => Ok(s),
        other => Err(Error::validation(format!(
            "expected a system, got kind '{}'",
            other.kind()
        ))),
    }
}

pub fn combine(
    op: CombineOp,
    specs: &[StructureSpec],
    duplicate: &[usize],
    limits: &Limits,
) -> Result<Value> {
    let count_err = |want: &str| {
        Error::validation(format!(
            "{} expects {want}",
            to_value(&op).as_str().unwrap_or("?")
        ))
    };
    let mut extra = json!({});
    let out: PointedSystem = match op {
        CombineOp::Product => {
            let [a, b] = specs else {
                return Err(count_err("two systems"));
            };
            product_system(&system_of(a)?.build()?, &system_of(b)?.build()?, limits)?
        }
        CombineOp::Sum => {
            if specs.is_empty() {
                return Err(count_err("at least one system"));
            }
            let systems = specs
                .iter()
                .map(|s| system_of(s)?.build())
                .collect::<Result<Vec<_>>>()?;
            sum_with_point(&systems, limits)?
        }
        CombineOp::Duplicate => {
            let [a] = specs else {
                return Err(count_err("one system"));
            };
            alexandrov_duplication(&system_of(a)?.build()?, duplicate, limits)?
        }
        CombineOp::Porcupine => {
            let [StructureSpec::Porcupine {
                index,
                fibers,
                section,
            }] = specs
            else {
                return Err(count_err("one porcupine description"));
            };
            let r = porcupine(&input::porcupine_spec(index, fibers, section)?, limits)?;
            extra = json!({
                "sigma": r.sigma,
                "offsets": r.offsets,
                "decomposition": to_value(&r.decomposition),
            });
            r.system
        }
    };
    let mut results = json!({
        "system": SystemSpec::from_system(&out).to_value(),
        "summary": family_summary(&out.family),
        "warnings": out.warnings,
    });
    if let (Some(r), Some(e)) = (results.as_object_mut(), extra.as_object()) {
        r.extend(e.clone());
    }
    let input = Value::Array(specs.iter().map(StructureSpec::to_value).collect());
    Ok(envelope(
        "combine",
        input,
        to_value(&op).as_str().unwrap_or("?"),
        results,
        vec!["system: the combined family, in the input format".into()],
    ))
}

/// Flattens a report into `path<TAB>value` rows.
pub fn table(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", report, &mut rows);
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:width$}  {v}\n"))
        .collect()
}
