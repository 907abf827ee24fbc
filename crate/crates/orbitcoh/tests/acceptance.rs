//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime. Run with `cargo test -p orbitcoh --test acceptance --
//! --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use orbitcoh::bbw::{bbw_line_bundle, minimal_coset_lengths, FlagDescriptor};
use orbitcoh::cli::{parse_input, render_report, run_pipeline, OutputFormat};
use orbitcoh::cohomology::{
    bundle_rank, minimal_orbit_table, open_orbit_table, BundleSpec, TableMode,
    DENSITY_ANNOTATION, GRADED_MODE_ANNOTATION, TENSOR_IDENTITY_ANNOTATION,
};
use orbitcoh::parabolic::{
    classify_orbit, conjugate_root_set, fundamental_reduction, root_set_of, CrossedDiagram,
    OrbitKind,
};
use orbitcoh::realform::{
    named_form, sigma_from_satake, validate_involution, NamedForm, RootInvolution,
};
use orbitcoh::rootsys::{build_root_system, DynkinDiagram, RootSystem, Weight};

fn pass(criterion: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "{criterion} exceeded its time budget: {elapsed:?} >= {limit:?}"
        );
    }
    println!("ACCEPTANCE {criterion}: PASS ({elapsed:?})");
}

fn setup(spec: &str, form: &NamedForm) -> (Arc<RootSystem>, RootInvolution) {
    let d = DynkinDiagram::of_type(spec).unwrap();
    let s = build_root_system(&d).unwrap();
    let sat = named_form(&d, form).unwrap();
    let sigma = sigma_from_satake(&sat, &s).unwrap();
    (s, sigma)
}

fn crossing(system: &Arc<RootSystem>, idx: &[usize]) -> CrossedDiagram {
    CrossedDiagram::new(Arc::clone(system), idx.iter().copied().collect()).unwrap()
}

#[test]
fn criterion_1_golden_example() {
    let started = Instant::now();

    let (system, sigma) = setup("A3", &NamedForm::SuPQ { p: 1, q: 3 });
    let q = crossing(&system, &[0, 1, 2]);
    let classification = classify_orbit(&q, &sigma).unwrap();
    assert_eq!(classification.kind, OrbitKind::LeviFlat);

    let fib = fundamental_reduction(&q, &sigma).unwrap();
    assert_eq!(fib.q_prime().crossed_names(), vec!["a1", "a3"]);
    assert_eq!(fib.base_dim(), 5);
    assert_eq!(fib.fiber_dim(), 1);
    assert_eq!(fib.fiber().diagram().type_name(), "A1");
    assert_eq!(
        fib.fiber().crossed().len(),
        fib.fiber().diagram().rank(),
        "fiber must be fully crossed"
    );

    let minimal = minimal_orbit_table(&fib, &BundleSpec::Trivial, 3, 3, TableMode::Fiber).unwrap();
    let open = open_orbit_table(&fib, &BundleSpec::Trivial, 3, 3, TableMode::Fiber).unwrap();
    for p in 0..=3 {
        for q in 0..=3 {
            let expected = u64::from(p == q && p <= 1);
            assert_eq!(minimal.rank_at(p, q), expected, "M at ({p},{q})");
            assert_eq!(open.rank_at(p, q), expected, "X at ({p},{q})");
        }
    }
    assert!(minimal
        .annotations
        .iter()
        .any(|a| a == TENSOR_IDENTITY_ANNOTATION));

    // The end-to-end pipeline renders the identity annotation too.
    let spec = parse_input(orbitcoh::cli::example_document("su13-flag").unwrap()).unwrap();
    let report = run_pipeline(&spec).unwrap();
    let rendered = render_report(&report, OutputFormat::Table).unwrap();
    assert!(rendered.contains("Theorem 4.4"));

    pass(
        "1 (golden end-to-end example)",
        started,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_2_totally_real_detection() {
    let started = Instant::now();

    let (system, sigma) = setup("A3", &NamedForm::Split);
    for mask in 1u8..8 {
        let idx: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
        let q = crossing(&system, &idx);
        let classification = classify_orbit(&q, &sigma).unwrap();
        assert_eq!(
            classification.kind,
            OrbitKind::TotallyReal,
            "crossing {idx:?}"
        );
        let fib = fundamental_reduction(&q, &sigma).unwrap();
        assert_eq!(fib.fiber_dim(), 0, "crossing {idx:?}");
        assert_eq!(fib.fiber().diagram().rank(), 0, "fiber must be a point");
        let table =
            minimal_orbit_table(&fib, &BundleSpec::Trivial, 3, 3, TableMode::Fiber).unwrap();
        for e in &table.entries {
            let expected = u64::from(e.p == 0 && e.q == 0);
            assert_eq!(e.rank, expected, "crossing {idx:?} at ({},{})", e.p, e.q);
        }
        assert!(
            table.annotations.iter().any(|a| a == DENSITY_ANNOTATION),
            "crossing {idx:?} must carry the density annotation"
        );
    }

    pass(
        "2 (totally real detection, all 7 crossings)",
        started,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_3_generic_detection() {
    let started = Instant::now();

    let (system, sigma) = setup("A3", &NamedForm::SuPQ { p: 2, q: 2 });
    let q = crossing(&system, &[0]);
    let classification = classify_orbit(&q, &sigma).unwrap();
    assert_eq!(classification.kind, OrbitKind::Generic);
    let (a, b) = classification.witness.clone().unwrap();
    // Concrete closure-violating pair: -(a1+a2) and -a3.
    assert_eq!(a.coords(), [-1, -1, 0]);
    assert_eq!(b.coords(), [0, 0, -1]);
    assert!(!system.is_root(&a.plus(&b)) || a.plus(&b).coords() == [-1, -1, -1]);

    // The pipeline reports the classification but refuses tables, and the
    // process exit status is the unsupported-feature code.
    let doc = r#"{
        "schema_version": 1,
        "diagram": "A3",
        "real_form": {"family": "su", "p": 2, "q": 2},
        "crossed": ["a1"],
        "p_max": 3, "q_max": 3
    }"#;
    let spec = parse_input(doc).unwrap();
    let report = run_pipeline(&spec).unwrap();
    assert!(report.is_generic());
    assert!(report.tables.is_none());
    assert!(report.fibration.is_none());

    let dir = std::env::temp_dir().join(format!("orbitcoh-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("generic.json");
    std::fs::write(&path, doc).unwrap();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_orbitcoh"))
        .args(["cohomology", "--input"])
        .arg(&path)
        .arg("--format")
        .arg("machine")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "expected exit status 3");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("\"generic\""));
    assert!(!stdout.contains("\"tables\""));
    std::fs::remove_dir_all(&dir).ok();

    pass("3 (generic detection and exit status)", started, None);
}

#[test]
fn criterion_4_bbw_suite() {
    let started = Instant::now();

    // Projective line bundles for k in [-3, 3].
    let p1 = FlagDescriptor::new(
        DynkinDiagram::of_type("A1").unwrap(),
        [0].into_iter().collect(),
    )
    .unwrap();
    for k in -3i64..=3 {
        let result = bbw_line_bundle(&p1, &Weight::new(vec![k])).unwrap();
        match k {
            k if k >= 0 => {
                assert_eq!(result.nonzero_degree(), Some(0), "k={k}");
                assert_eq!(result.dimension_at(0), (k + 1) as u64, "k={k}");
            }
            -1 => assert_eq!(result.nonzero_degree(), None),
            _ => {
                assert_eq!(result.nonzero_degree(), Some(1), "k={k}");
                assert_eq!(result.dimension_at(1), (-k - 1) as u64, "k={k}");
            }
        }
    }

    // Full flag of A2: Hodge vector (1, 2, 2, 1).
    let a2 = FlagDescriptor::new(
        DynkinDiagram::of_type("A2").unwrap(),
        [0, 1].into_iter().collect(),
    )
    .unwrap();
    assert_eq!(minimal_coset_lengths(&a2), vec![1, 2, 2, 1]);

    // Ten random parabolics in rank <= 4: coset counts recover the Weyl
    // group order.
    let pool = [
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xA1",
        "A2xA1", "A2xA2", "B2xB2",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b17c0);
    for trial in 0..10 {
        let spec = pool[rng.gen_range(0..pool.len())];
        let diagram = DynkinDiagram::of_type(spec).unwrap();
        let crossed: BTreeSet<usize> = (0..diagram.rank()).filter(|_| rng.gen_bool(0.5)).collect();
        let flag = FlagDescriptor::new(diagram.clone(), crossed.clone()).unwrap();
        let total: u64 = minimal_coset_lengths(&flag).iter().sum();
        let (levi, _) = diagram.induced(&flag.uncrossed()).unwrap();
        let levi_order = build_root_system(&levi).unwrap().weyl_group_order();
        let full_order = flag.system().weyl_group_order();
        assert_eq!(
            total * levi_order,
            full_order,
            "trial {trial}: {spec} crossed {crossed:?}"
        );
    }

    pass("4 (BBW suite)", started, Some(Duration::from_secs(5)));
}

#[test]
fn criterion_5_property_suite() {
    let started = Instant::now();

    // Every catalog real form in rank <= 6 passes the involution checks.
    let simple_types = [
        "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C3", "C4", "C5",
        "C6", "D4", "D5", "D6", "E6", "F4", "G2", "A1xA1", "A2xB2",
    ];
    for spec in simple_types {
        let d = DynkinDiagram::of_type(spec).unwrap();
        let s = build_root_system(&d).unwrap();
        for form in [NamedForm::Split, NamedForm::Compact] {
            let sat = named_form(&d, &form).unwrap();
            let sigma = sigma_from_satake(&sat, &s).unwrap();
            assert!(
                validate_involution(&sigma, &s).passed(),
                "{form} on {spec}"
            );
            match form {
                NamedForm::Split => assert!(sigma.is_identity(), "{spec}"),
                NamedForm::Compact => assert_eq!(
                    sigma,
                    RootInvolution::negative_identity(s.rank()),
                    "{spec}"
                ),
                _ => unreachable!(),
            }
        }
    }
    for rank in 1..=6usize {
        let d = DynkinDiagram::of_type(&format!("A{rank}")).unwrap();
        let s = build_root_system(&d).unwrap();
        for p in 1..=(rank + 1).div_euclid(2) {
            let q = rank + 1 - p;
            let sat = named_form(&d, &NamedForm::SuPQ { p, q }).unwrap();
            let sigma = sigma_from_satake(&sat, &s).unwrap();
            assert!(
                validate_involution(&sigma, &s).passed(),
                "su({p},{q}) on A{rank}"
            );
        }
        let sat = named_form(&d, &NamedForm::SlReal { n: rank + 1 }).unwrap();
        let sigma = sigma_from_satake(&sat, &s).unwrap();
        assert!(validate_involution(&sigma, &s).passed(), "sl_real A{rank}");
    }

    // Random non-generic instances in rank <= 4: totally real implies the
    // closure holds; graded diagonal equals fiber diagonal; graded support
    // stays in the window q <= p <= q + base_dim.
    let pool: Vec<(&str, Vec<NamedForm>)> = vec![
        (
            "A3",
            vec![
                NamedForm::Split,
                NamedForm::Compact,
                NamedForm::SuPQ { p: 1, q: 3 },
                NamedForm::SuPQ { p: 2, q: 2 },
            ],
        ),
        (
            "A4",
            vec![
                NamedForm::Split,
                NamedForm::Compact,
                NamedForm::SuPQ { p: 1, q: 4 },
                NamedForm::SuPQ { p: 2, q: 3 },
            ],
        ),
        ("B3", vec![NamedForm::Split, NamedForm::Compact]),
        ("C4", vec![NamedForm::Split, NamedForm::Compact]),
        ("D4", vec![NamedForm::Split, NamedForm::Compact]),
        ("G2", vec![NamedForm::Split, NamedForm::Compact]),
        ("A2xA1", vec![NamedForm::Split, NamedForm::Compact]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut collected = 0usize;
    let mut strictly_levi_flat = 0usize;
    let mut attempts = 0usize;
    while collected < 20 {
        attempts += 1;
        assert!(attempts < 3000, "could not sample enough Levi-flat instances");
        let (spec, forms) = &pool[rng.gen_range(0..pool.len())];
        let form = &forms[rng.gen_range(0..forms.len())];
        let (s, sigma) = setup(spec, form);
        let idx: Vec<usize> = (0..s.rank()).filter(|_| rng.gen_bool(0.5)).collect();
        if idx.is_empty() {
            continue;
        }
        let q = crossing(&s, &idx);
        let classification = classify_orbit(&q, &sigma).unwrap();
        match classification.kind {
            OrbitKind::Generic => continue,
            OrbitKind::TotallyReal => {
                let set = root_set_of(&q);
                let union = set.union(&conjugate_root_set(&set, &sigma, &s).unwrap());
                assert!(
                    union.closure_witness(&s).is_none(),
                    "totally real must satisfy the Levi-flat closure ({spec}, {form}, {idx:?})"
                );
            }
            OrbitKind::LeviFlat => strictly_levi_flat += 1,
        }
        let fib = fundamental_reduction(&q, &sigma).unwrap();
        let bound = fib.fiber_dim() + 2;
        for p in 0..=bound {
            for deg in 0..=bound {
                let fiber =
                    bundle_rank(&fib, p, deg, &BundleSpec::Trivial, TableMode::Fiber).unwrap();
                let graded =
                    bundle_rank(&fib, p, deg, &BundleSpec::Trivial, TableMode::Graded).unwrap();
                if p == deg {
                    assert_eq!(
                        graded, fiber,
                        "diagonal mismatch at p={p} ({spec}, {form}, {idx:?})"
                    );
                }
                if graded > 0 {
                    assert!(
                        deg <= p && p <= deg + fib.base_dim(),
                        "graded support violation at ({p},{deg}) ({spec}, {form}, {idx:?})"
                    );
                }
            }
        }
        collected += 1;
    }
    assert!(
        strictly_levi_flat >= 3,
        "sample should contain strictly Levi-flat instances, got {strictly_levi_flat}"
    );

    pass(
        "5 (property suite)",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_6_graded_mode_documented_value() {
    let started = Instant::now();

    let (system, sigma) = setup("A3", &NamedForm::SuPQ { p: 1, q: 3 });
    let q = crossing(&system, &[0, 1, 2]);
    let fib = fundamental_reduction(&q, &sigma).unwrap();
    assert_eq!(
        bundle_rank(&fib, 1, 0, &BundleSpec::Trivial, TableMode::Graded).unwrap(),
        5,
        "graded rank at (1,0) must be C(5,1)"
    );

    // The report must flag the divergence and cite fiber mode as the reading
    // matching the printed tables.
    let spec_doc = r#"{
        "schema_version": 1,
        "diagram": "A3",
        "real_form": {"family": "su", "p": 1, "q": 3},
        "crossed": ["a1", "a2", "a3"],
        "p_max": 3, "q_max": 3,
        "mode": "graded"
    }"#;
    let spec = parse_input(spec_doc).unwrap();
    let report = run_pipeline(&spec).unwrap();
    let tables = report.tables.as_ref().unwrap();
    assert_eq!(tables.minimal_orbit.rank_at(1, 0), 5);
    assert_eq!(tables.open_orbit.rank_at(1, 0), 5);
    assert!(tables
        .minimal_orbit
        .annotations
        .iter()
        .any(|a| a == GRADED_MODE_ANNOTATION));
    assert!(
        GRADED_MODE_ANNOTATION.contains("off the diagonal")
            && GRADED_MODE_ANNOTATION.contains("fiber-mode")
            && GRADED_MODE_ANNOTATION.contains("(1,0)"),
        "annotation must flag the off-diagonal divergence and cite fiber mode"
    );
    let rendered = render_report(&report, OutputFormat::Table).unwrap();
    assert!(rendered.contains("graded mode"));

    pass("6 (graded-mode documented value)", started, None);
}
