//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or overruns its time budget.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use amalgam::corpus;
use amalgam::diagram::{
    build_cocone_forest, colimit_set, has_cocone, witness_no_cocone, zigzag_action, WitnessError, WitnessKind,
};
use amalgam::fincat::{monic_reflection, Congruence};
use amalgam::gen;
use amalgam::invcat::{check_inverse_laws, validate_inverse, wagner_preston};
use amalgam::poset::{
    brute_force_tree_like, is_forest_like, posets_up_to_iso, simply_connected_bounded, Connectivity, FinPoset,
    ForestDecision, SearchLimits, DEFAULT_BRUTE_FORCE_BOUND,
};
use amalgam::{decide, Evidence};
use rand::Rng;

const ONE_SECOND: Duration = Duration::from_secs(1);
const ONE_MINUTE: Duration = Duration::from_secs(60);
const TEN_MINUTES: Duration = Duration::from_secs(600);

/// Diagrams per forest-like poset in criterion 3.
const DIAGRAMS_PER_FOREST: usize = 50;
/// Largest carrier in those diagrams.
const MAX_CARRIER: usize = 3;
/// Endo-words in criterion 8.
const ENDO_WORDS: usize = 1000;
/// Largest morphism count in criterion 6.
const MAX_MORPHISMS: usize = 8;
/// Isomorphism classes of posets on 0..=7 elements.
const POSET_COUNTS: [usize; 8] = [1, 1, 2, 5, 16, 63, 318, 2045];

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "bowtie is refuted",
            budget: ONE_SECOND,
            run: bowtie,
        },
        Criterion {
            id: 2,
            title: "boat is simply connected yet refuted",
            budget: ONE_SECOND,
            run: boat,
        },
        Criterion {
            id: 3,
            title: "forest-like iff every diagram has a cocone",
            budget: TEN_MINUTES,
            run: forest_iff_cocones,
        },
        Criterion {
            id: 4,
            title: "fixed minimal choice matches existential search",
            budget: TEN_MINUTES,
            run: any_minimal,
        },
        Criterion {
            id: 5,
            title: "certified posets have simply connected cosieves",
            budget: TEN_MINUTES,
            run: cosieves,
        },
        Criterion {
            id: 6,
            title: "monic reflection is the least monic congruence",
            budget: ONE_MINUTE,
            run: reflection,
        },
        Criterion {
            id: 7,
            title: "partial-injection representation",
            budget: ONE_MINUTE,
            run: representation,
        },
        Criterion {
            id: 8,
            title: "endo-words act as partial identities",
            budget: ONE_MINUTE,
            run: endo_words,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.budget => Err(format!("over budget of {:?}", c.budget)),
            other => other,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {} {status}: {} ({detail}; {:.2?} of {:?})",
            c.id, c.title, elapsed, c.budget
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bowtie() -> Result<String, String> {
    let v = decide(&corpus::bowtie()).map_err(|e| e.to_string())?;
    ensure(!v.amalgamable_ap_jep && !v.amalgamable_ap_only, || {
        "bowtie reported amalgamable".into()
    })?;
    let Evidence::Refuted(w) = &v.evidence else {
        return Err("no witness".into());
    };
    ensure(!has_cocone(&w.diagram).exists(), || "witness has a cocone".into())?;
    let concrete = corpus::concrete_bowtie_diagram();
    ensure(!has_cocone(&concrete).exists(), || {
        "concrete diagram has a cocone".into()
    })?;
    let classes = colimit_set(&concrete).class_count;
    ensure(classes == 1, || format!("concrete colimit has {classes} classes"))?;
    Ok("witness and concrete diagram cocone-free, 1-class colimit".into())
}

fn boat() -> Result<String, String> {
    let sc = simply_connected_bounded(&corpus::boat_poset(), SearchLimits::default());
    ensure(sc == Connectivity::Yes, || format!("boat order complex: {sc:?}"))?;
    let bow = simply_connected_bounded(&corpus::bowtie_poset(), SearchLimits::default());
    ensure(bow == Connectivity::No, || format!("bowtie order complex: {bow:?}"))?;
    let shape = corpus::boat();
    let v = decide(&shape).map_err(|e| e.to_string())?;
    ensure(!v.amalgamable_ap_jep, || "boat reported amalgamable".into())?;
    let Evidence::Refuted(w) = &v.evidence else {
        return Err("no witness".into());
    };
    ensure(matches!(w.kind, WitnessKind::NonForest { .. }), || {
        "expected a two-valued witness".into()
    })?;
    let e = shape.object_index("E").ok_or("no object E")?;
    ensure(w.diagram.carrier(e).is_empty(), || "witness is not empty at E".into())?;
    ensure(!has_cocone(&w.diagram).exists(), || "witness has a cocone".into())?;
    ensure(!has_cocone(&corpus::boat_diagram()).exists(), || {
        "concrete boat diagram has a cocone".into()
    })?;
    Ok("order complex simply connected, witness empty at E and cocone-free".into())
}

fn all_posets(max: usize) -> Result<Vec<FinPoset>, String> {
    let mut out = Vec::new();
    for (n, &count) in POSET_COUNTS.iter().enumerate().take(max + 1) {
        let level = posets_up_to_iso(n);
        ensure(level.len() == count, || {
            format!("{} posets on {n} elements, expected {count}", level.len())
        })?;
        out.extend(level);
    }
    Ok(out)
}

fn forest_iff_cocones() -> Result<String, String> {
    let mut rng = gen::rng(3);
    let (mut forests, mut others) = (0, 0);
    for p in all_posets(6)? {
        let cat = p.to_category();
        match is_forest_like(&p) {
            ForestDecision::Forest(cert) => {
                forests += 1;
                for _ in 0..DIAGRAMS_PER_FOREST {
                    let d = gen::random_poset_diagram(&p, MAX_CARRIER, &mut rng);
                    let cocone = build_cocone_forest(&d, &cert).map_err(|e| format!("{:?}: {e}", p.names()))?;
                    cocone.validate(&d).map_err(|e| e.to_string())?;
                }
                ensure(witness_no_cocone(&cat) == Err(WitnessError::NotApplicable), || {
                    "witness offered for a forest".into()
                })?;
            }
            ForestDecision::NotForest(_) => {
                others += 1;
                let w = witness_no_cocone(&cat).map_err(|e| e.to_string())?;
                ensure(!has_cocone(&w.diagram).exists(), || "witness has a cocone".into())?;
            }
        }
    }
    Ok(format!(
        "{forests} forest-like posets x {DIAGRAMS_PER_FOREST} cocones, {others} refuted"
    ))
}

fn any_minimal() -> Result<String, String> {
    let posets = all_posets(7)?;
    for p in &posets {
        let brute = p
            .components(&p.elements())
            .iter()
            .map(|c| brute_force_tree_like(&p.restrict(c).0, DEFAULT_BRUTE_FORCE_BOUND))
            .collect::<Result<Vec<bool>, _>>()
            .map_err(|e| e.to_string())?
            .into_iter()
            .all(|b| b);
        let fixed = is_forest_like(p).is_forest();
        ensure(fixed == brute, || {
            format!("disagree on {:?}: fixed {fixed}, brute {brute}", p.hasse_edges())
        })?;
    }
    Ok(format!("{} posets agree", posets.len()))
}

fn cosieves() -> Result<String, String> {
    let mut checked = 0;
    for p in all_posets(6)? {
        if !is_forest_like(&p).is_forest() {
            continue;
        }
        for u in p.upward_closed_subsets() {
            let (sub, _) = p.restrict(&u);
            let sc = simply_connected_bounded(&sub, SearchLimits::default());
            ensure(sc != Connectivity::No, || {
                format!("cosieve {u:?} of {:?} is not simply connected", p.hasse_edges())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cosieves"))
}

fn reflection() -> Result<String, String> {
    let cats = common::small_categories(MAX_MORPHISMS, 40, 6);
    for (name, cat) in &cats {
        let r = monic_reflection(cat);
        let want =
            common::least_congruence_where(cat, |l| common::quotient_is_monic(cat, l)).ok_or("no monic quotient")?;
        ensure(
            r.congruence == Congruence::from_labels(&common::labels_of(cat.morphism_count(), &want)),
            || format!("{name}: reflection is not the least monic congruence"),
        )?;
        let again = monic_reflection(&r.category);
        ensure(
            again.congruence == Congruence::discrete(r.category.morphism_count()),
            || format!("{name}: reflection is not idempotent"),
        )?;
    }
    Ok(format!("{} categories", cats.len()))
}

fn representation() -> Result<String, String> {
    let cats = corpus::inverse_categories();
    for (name, cat) in &cats {
        ensure(cat.morphism_count() <= 12, || format!("{name} is too large"))?;
        let ic = validate_inverse(cat).map_err(|e| format!("{name}: {e}"))?;
        ensure(check_inverse_laws(&ic).is_clean(), || format!("{name}: inverse laws"))?;
        wagner_preston(&ic).verify(cat).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} inverse categories", cats.len()))
}

fn endo_words() -> Result<String, String> {
    let mut rng = gen::rng(8);
    let mut shapes: Vec<FinPoset> = corpus::posets()
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| is_forest_like(p).is_forest() && !p.is_empty())
        .collect();
    for n in 1..=7 {
        shapes.push(gen::random_forest(n, &mut rng));
    }
    for k in 0..ENDO_WORDS {
        let p = &shapes[k % shapes.len()];
        let shape = p.to_category();
        let d = if k % 2 == 0 {
            gen::random_poset_diagram(p, MAX_CARRIER, &mut rng)
        } else {
            gen::random_diagram(&shape, &mut rng)
        };
        let start = rng.gen_range(0..shape.object_count());
        let len = rng.gen_range(0..=10);
        let w = gen::random_closed_word(&shape, start, len, &mut rng);
        let act = zigzag_action(&d, &w).map_err(|e| e.to_string())?;
        ensure(act.is_partial_identity(), || {
            format!("word {w:?} on {:?} is not a partial identity", p.hasse_edges())
        })?;
    }
    Ok(format!("{ENDO_WORDS} words over {} shapes", shapes.len()))
}
