//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use agc::abstraction::{atom_collapse, check_hom_commutes, lift_monotone, AbstractionError};
use agc::actions::run_action_suite;
use agc::boolalg::{AlgebraHom, MonotoneMap, Tabulation};
use agc::laws::distinguished_suite;
use agc::oracle::{enumerate, Oracle, OrderMode, Residual};
use agc::quantify::{refines, Domain};
use agc::report::{Status, SuiteReport};
use agc::structures::distributivity::distributivity_suite;
use agc::structures::{isomorphism_suite, semiring_census, semiring_hom_suite};
use agc::{Algebra, Backend};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alg(n: usize) -> Algebra {
    Algebra::numbered(n, Backend::Bitset).unwrap()
}

fn domain(n: usize) -> Domain {
    Domain::exhaustive(&alg(n))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(report: &SuiteReport) -> Result<(), String> {
    match report.laws.iter().find(|l| l.status != Status::Pass) {
        None => Ok(()),
        Some(l) => Err(format!("{}: `{}` fails with {:?}", report.suite, l.law, l.witness)),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:.2?}, limit {limit:?}"))
}

fn distinguished() -> Outcome {
    let start = Instant::now();
    let mut identities = 0;
    let mut instances = 0;
    for n in 1..=3 {
        let d = domain(n);
        let report = distinguished_suite(&d);
        all_pass(&report)?;
        let contracts = 3u64.pow(n as u32);
        for law in &report.laws {
            ensure(law.instances >= contracts, || {
                format!("`{}` saw {} of {contracts} contracts at {n} atoms", law.law, law.instances)
            })?;
            instances += law.instances;
        }
        identities = report.laws.len();
    }
    ensure(identities >= 30, || format!("only {identities} identities"))?;
    within(start, Duration::from_secs(5), "distinguished-element battery")?;
    Ok(format!("{identities} identities, {instances} instances over 1-3 atoms"))
}

fn adjoints() -> Outcome {
    let mut pairs = 0;
    let mut at_three = Duration::ZERO;
    for n in [2, 3] {
        let start = Instant::now();
        let a = alg(n);
        let oracle = Oracle::new(&a).map_err(|e| e.to_string())?;
        ensure(oracle.mode() == OrderMode::Semantic, || format!("oracle at {n} atoms is not semantic"))?;
        let cs = oracle.contracts();
        for c in cs {
            for c2 in cs {
                for kind in Residual::ALL {
                    let (op, swapped) = kind.closed_form();
                    let closed = if swapped { op.apply(c2, c) } else { op.apply(c, c2) }.unwrap();
                    // `residual` fails unless exactly one extremum exists
                    let extremum = oracle.residual(kind, c, c2).map_err(|e| format!("{}: {e}", kind.name()))?;
                    ensure(extremum == closed, || {
                        format!("{} of {c:?}, {c2:?}: oracle {extremum:?}, closed form {closed:?}", kind.name())
                    })?;
                }
                pairs += 1;
            }
        }
        if n == 3 {
            at_three = start.elapsed();
            within(start, Duration::from_secs(60), "3-atom adjoint certification")?;
        }
    }
    ensure(pairs == 81 + 729, || format!("{pairs} pairs"))?;
    Ok(format!("{pairs} ordered pairs x 4 residuals, unique extrema; 3 atoms in {at_three:.2?}"))
}

fn distributivity() -> Outcome {
    let report = distributivity_suite(&domain(2));
    ensure(report.ok(), || report.to_text())?;
    let witnesses = [
        "e ∧ (1 • 0) ≠ (e ∧ 1) • (e ∧ 0)",
        "e ∨ (1 ∥ 0) ≠ (e ∨ 1) ∥ (e ∨ 0)",
        "1 ∥ (0 • e) ≠ (1 ∥ 0) • (1 ∥ e)",
        "0 • (1 ∥ e) ≠ (0 • 1) ∥ (0 • e)",
    ];
    for w in witnesses {
        let law = report.law(w).ok_or_else(|| format!("missing witness law `{w}`"))?;
        ensure(law.status == Status::Pass, || format!("witness `{w}` does not separate"))?;
    }
    let cells: Vec<_> = report.laws.iter().filter(|l| !witnesses.contains(&l.law.as_str())).collect();
    let positive: Vec<_> = cells.iter().filter(|l| l.status == Status::Pass).collect();
    let negative: Vec<_> = cells.iter().filter(|l| l.status == Status::Fail).collect();
    ensure(cells.len() == 16, || format!("{} cells", cells.len()))?;
    for l in &positive {
        ensure(l.instances == 729, || format!("`{}` saw {} triples", l.law, l.instances))?;
    }
    let negative_ops: Vec<String> = negative.iter().map(|l| l.law.split(':').next().unwrap().to_owned()).collect();
    ensure(
        negative_ops == ["∧ over •", "∨ over ∥", "∥ over •", "• over ∥"],
        || format!("negative cells {negative_ops:?}"),
    )?;

    let mut flipped = report.clone();
    flipped.laws[0].expected = match flipped.laws[0].expected {
        Status::Pass => Status::Fail,
        Status::Fail => Status::Pass,
    };
    ensure(!flipped.ok(), || "suite accepts a different pattern".into())?;
    Ok(format!(
        "{} positive cells over 729 triples, {} negative cells {:?}, all 4 listed witnesses separate",
        positive.len(),
        negative.len(),
        negative_ops
    ))
}

fn census() -> Outcome {
    let expected = ["semiring (∧, ∨, 1, 0)", "semiring (∨, ∧, 0, 1)", "semiring (∥, ∨, e, 0)", "semiring (•, ∧, e, 1)"];
    for n in [1, 2] {
        let report = semiring_census(&domain(n));
        ensure(report.laws.len() == 12, || format!("{} candidates", report.laws.len()))?;
        let passing: Vec<&str> = report.passed().map(|l| l.law.as_str()).collect();
        ensure(passing == expected, || format!("at {n} atoms: {passing:?}"))?;
    }
    Ok("exactly 4 of 12 candidates at 1 and 2 atoms".into())
}

fn isomorphisms() -> Outcome {
    let d = domain(3);
    ensure(d.contracts().len() == 27, || "expected 27 contracts".into())?;
    let report = isomorphism_suite(&d);
    all_pass(&report)?;
    for name in ["θ_g ∘ θ_g = id", "θ_a ∘ θ_a = id", "θ_a ∘ (·)⁻¹ = (·)⁻¹ ∘ θ_g", "π ∘ ι = id"] {
        let law = report.law(name).ok_or_else(|| format!("missing `{name}`"))?;
        ensure(law.instances == 27, || format!("`{name}` saw {}", law.instances))?;
    }
    for map in ["θ_g", "θ_a"] {
        let homs = report.laws.iter().filter(|l| l.law.starts_with(&format!("{map}: "))).count();
        ensure(homs == 4, || format!("{map}: {homs} hom laws"))?;
    }
    Ok(format!("{} laws over 27 contracts", report.laws.len()))
}

fn semiring_homs() -> Outcome {
    let report = semiring_hom_suite(&domain(2));
    all_pass(&report)?;
    for map in ["Δ_g", "Δ_a", "ι_g", "ι_a", "ι_g′", "π_g", "π_a′"] {
        let laws = report.laws.iter().filter(|l| l.law.starts_with(&format!("{map}: "))).count();
        ensure(laws >= 4, || format!("{map} has {laws} hom laws"))?;
    }
    Ok(format!("{} laws, each of Δ_g Δ_a ι_g ι_a ι_g′ π_g π_a′ covered", report.laws.len()))
}

fn actions() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for n in [2, 3] {
        let report = run_action_suite(&domain(n));
        all_pass(&report)?;
        rows = report.laws.len();
    }
    ensure(rows >= 24, || format!("{rows} rows"))?;
    within(start, Duration::from_secs(120), "action battery")?;
    Ok(format!("{rows} rows at 2 and 3 atoms in {:.2?}", start.elapsed()))
}

fn abstraction() -> Outcome {
    let (two, one) = (alg(2), Algebra::bitset(&["z"]).unwrap());
    let full = two.full_mask();
    let bad = [
        ("join_preserving", Tabulation::from_fn(&two, &one, |x| if x == full { 1 } else { 0 }).unwrap()),
        ("top_preserving", Tabulation::from_fn(&two, &one, |_| 0).unwrap()),
        ("monotone", Tabulation::from_fn(&two, &one, |x| if x == 0 { 1 } else { 0 }).unwrap()),
    ];
    for (flag, table) in bad {
        match lift_monotone(&MonotoneMap::new(table)) {
            Err(AbstractionError::InvalidAbstraction { flag: got, .. }) if got == flag => {}
            other => return Err(format!("map violating {flag}: {:?}", other.map(|_| ()))),
        }
    }

    let collapse = lift_monotone(&atom_collapse(&two, &one).unwrap()).map_err(|e| e.to_string())?;
    let cs = Domain::exhaustive(&two).contracts().to_vec();
    let mut pairs = 0;
    for x in &cs {
        for y in &cs {
            pairs += 1;
            if refines(x, y) {
                ensure(refines(&collapse.apply(x).unwrap(), &collapse.apply(y).unwrap()), || {
                    format!("ᾱ not monotone on {x:?} ≤ {y:?}")
                })?;
            }
        }
    }
    ensure(pairs == 81, || format!("{pairs} pairs"))?;

    let swap = AlgebraHom::from_atom_assignment(&two, &two, &[1, 0]).map_err(|e| e.to_string())?;
    let embed = AlgebraHom::from_atom_assignment(&two, &alg(3), &[0, 1, 1]).map_err(|e| e.to_string())?;
    let mut laws = 0;
    for (name, f) in [("swap", &swap), ("split", &embed)] {
        let report = check_hom_commutes(name, f);
        ensure(report.laws.len() == 9, || format!("{name}: {} laws", report.laws.len()))?;
        all_pass(&report)?;
        laws += report.laws.len();
    }
    Ok(format!("3 invalid maps rejected, ᾱ monotone on 81 pairs, {laws} commutation laws"))
}

fn oracle_counts() -> Outcome {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate(&alg(n)).map(|e| e.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(counts == [3, 9, 27, 81], || format!("{counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn cli() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_agc")).args(args).env_remove("AGC_ATOM_CAP").output().unwrap();
    let read = |name: &str| std::fs::read(golden.join(name)).unwrap();
    let spec = golden.join("pipeline.agc");
    let spec = spec.to_str().unwrap();

    let text = run(&["eval", spec]);
    ensure(text.status.success() && text.stdout == read("pipeline.txt"), || "eval text differs from golden".into())?;
    let json = run(&["eval", spec, "--format", "json"]);
    ensure(json.status.success() && json.stdout == read("pipeline.json"), || "eval json differs from golden".into())?;
    let laws = run(&["laws", "--atoms", "2", "--suites", "all", "--format", "json"]);
    ensure(laws.status.code() == Some(0), || format!("laws exit {:?}", laws.status.code()))?;
    ensure(laws.stdout == read("laws_atoms2.json"), || "laws json differs from golden".into())?;

    let bad = std::env::temp_dir().join(format!("agc-acceptance-{}.agc", std::process::id()));
    std::fs::write(&bad, "universe x;\ncontract A { assume: x; guarantee: x; }\nlet B = conj(A, C);\n").unwrap();
    let err = run(&["eval", bad.to_str().unwrap()]);
    let stderr = String::from_utf8_lossy(&err.stderr).into_owned();
    let want = format!("error: {}:3:17: unknown name `C`\n", bad.display());
    ensure(err.status.code() == Some(2) && stderr == want, || format!("parse error was {stderr:?}"))?;
    let _ = std::fs::remove_file(&bad);
    Ok("eval text/json and laws --atoms 2 byte-identical to golden; error at 3:17".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("distinguished-element identities, 1-3 atoms", distinguished),
        ("residuals equal unique oracle extrema, 2-3 atoms", adjoints),
        ("distributivity table pattern, 2 atoms", distributivity),
        ("semiring census", census),
        ("isomorphism diagram, 3 atoms", isomorphisms),
        ("semiring homomorphisms, 2 atoms", semiring_homs),
        ("action identities, 2-3 atoms", actions),
        ("abstraction maps", abstraction),
        ("oracle contract counts", oracle_counts),
        ("CLI golden files and error positions", cli),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {title}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {title}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
