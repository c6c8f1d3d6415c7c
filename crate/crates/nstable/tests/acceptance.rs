//! Acceptance battery: one test per criterion, each printing a PASS line
//! with its elapsed time (visible under `cargo test -- --nocapture`).
//! All tolerances are exact (field arithmetic); the stated wall-clock
//! budgets are asserted.

use std::sync::Arc;
use std::time::Instant;

use nstable::algebra::Algebra;
use nstable::buchweitz::{cycles_functor_windowed, expand_to_acyclic};
use nstable::field::FieldSpec;
use nstable::mmor::{
    self, is_proj_inj, kernel_chain, mimo, mimo_map, mor_iso, omega, omega_inv,
    proj_cover_mmor, proj_inj_envelope, stable_hom_mmor, stable_iso, MMorObj,
};
use nstable::module::{is_projective, Module};
use nstable::ncomplex::{
    homology, homology_map, is_homotopy_equiv, mu, random_null_homotopic,
    random_proj_inj_complex, suspend, trunc_homological_le, NComplex,
};
use nstable::serre::{
    example_algebra, example_indecomposables, expected_omega, expected_serre, find_cy,
    stable_permutations, Family,
};
use nstable::triangular::{diagram_iso, m_l, m_r, m_r_inv, triangular};
use nstable::Rng;

fn alg() -> Arc<Algebra> {
    example_algebra(FieldSpec::new(7).unwrap())
}

fn report(criterion: &str, start: Instant, budget_secs: u64) {
    let elapsed = start.elapsed();
    println!("acceptance {criterion}: PASS ({:.2}s)", elapsed.as_secs_f64());
    assert!(
        elapsed.as_secs() < budget_secs,
        "{criterion} exceeded its {budget_secs}s budget ({elapsed:?})"
    );
}

#[test]
fn criterion_1_example_classification() {
    let start = Instant::now();
    let a = alg();
    let n3 = example_indecomposables(&a, 3).unwrap();
    assert_eq!(n3.len(), 10, "N=3 must have 10 classes");
    let pi: Vec<String> =
        n3.iter().filter(|c| c.is_proj_inj()).map(|c| c.label()).collect();
    assert_eq!(pi, vec!["X(0,1)", "X(0,2)", "Y(0,1)", "Y(0,2)"]);
    // every listed diagram validates and really is (non-)projective-injective
    for c in &n3 {
        assert_eq!(is_proj_inj(&c.diagram), c.is_proj_inj(), "{}", c.label());
    }
    // the ten classes are pairwise non-isomorphic
    let mut rng = Rng::new(101);
    for i in 0..n3.len() {
        for j in 0..i {
            assert!(
                !mor_iso(n3[i].diagram.as_mor(), n3[j].diagram.as_mor(), &mut rng)
                    .unwrap()
                    .is_iso(),
                "{} and {} must differ",
                n3[i].label(),
                n3[j].label()
            );
        }
    }
    let n4 = example_indecomposables(&a, 4).unwrap();
    assert_eq!(n4.len(), 18, "N=4 must have 18 classes");
    // solid-edge adjacency among the stable vertices matches the quivers:
    // a hexagon for N=3 and the 16-edge pattern for N=4
    let figure3 = [
        ("X(1,1)", "Y(1,0)"),
        ("Y(1,0)", "Y(2,0)"),
        ("Y(2,0)", "Y(1,1)"),
        ("Y(1,1)", "X(1,0)"),
        ("X(1,0)", "X(2,0)"),
        ("X(2,0)", "X(1,1)"),
    ];
    let figure4 = [
        ("X(1,0)", "X(2,0)"),
        ("X(2,0)", "X(3,0)"),
        ("X(2,0)", "X(1,1)"),
        ("X(1,1)", "X(2,1)"),
        ("X(3,0)", "X(2,1)"),
        ("X(2,1)", "Y(1,0)"),
        ("X(2,1)", "X(1,2)"),
        ("Y(1,0)", "Y(2,0)"),
        ("X(1,2)", "Y(2,0)"),
        ("Y(2,0)", "Y(1,1)"),
        ("Y(2,0)", "Y(3,0)"),
        ("Y(1,1)", "Y(2,1)"),
        ("Y(3,0)", "Y(2,1)"),
        ("Y(2,1)", "Y(1,2)"),
        ("Y(2,1)", "X(1,0)"),
        ("Y(1,2)", "X(2,0)"),
    ];
    for (n, expected) in [(3usize, &figure3[..]), (4, &figure4[..])] {
        let q = nstable::serre::ar_quiver(&a, n, &mut rng).unwrap();
        let idx = |label: &str| {
            q.vertices.iter().position(|(l, _)| l == label).unwrap_or_else(|| {
                panic!("vertex {label} missing from the N={n} quiver")
            })
        };
        let mut got: Vec<(usize, usize)> = q
            .solid
            .iter()
            .filter(|&&(x, y, _)| !q.vertices[x].1 && !q.vertices[y].1)
            .map(|&(x, y, _)| (x, y))
            .collect();
        got.sort_unstable();
        let mut want: Vec<(usize, usize)> =
            expected.iter().map(|&(f, t)| (idx(f), idx(t))).collect();
        want.sort_unstable();
        assert_eq!(got, want, "N={n} stable solid adjacency must match the quiver");
    }
    report("1 (example classification)", start, 30);
}

#[test]
fn criterion_2_serre_table() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(202);
    for n in [3usize, 4, 5] {
        let perms = stable_permutations(&a, n, &mut rng).unwrap();
        for &k in &perms.stable_idx {
            let c = &perms.classes[k];
            let s = &perms.classes[perms.serre_of[&k]];
            let (ef, ei, ej) = expected_serre(c.family, c.i, c.j, n);
            assert_eq!(
                (s.family, s.i, s.j),
                (ef, ei, ej),
                "N={n}: S({}) computed {} expected {}({ei},{ej})",
                c.label(),
                s.label(),
                ef
            );
            let o = &perms.classes[perms.omega_of[&k]];
            let (of, oi, oj) = expected_omega(c.family, c.i, c.j);
            assert_eq!(
                (o.family, o.i, o.j),
                (of, oi, oj),
                "N={n}: Ω({}) computed {}",
                c.label(),
                o.label()
            );
        }
    }
    report("2 (Serre and Ω tables, N = 3,4,5)", start, 120);
}

#[test]
fn criterion_3_serre_duality_dimensions() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(303);
    for n in [3usize, 4] {
        let classes = example_indecomposables(&a, n).unwrap();
        // cache S(X) per class
        let serre_of: Vec<MMorObj> = classes
            .iter()
            .map(|c| nstable::serre::serre(&c.diagram, &mut rng).unwrap())
            .collect();
        for (xi, x) in classes.iter().enumerate() {
            for y in classes.iter() {
                let (lhs, _) = stable_hom_mmor(&x.diagram, &y.diagram).unwrap();
                let rhs = if serre_of[xi].is_zero_diagram() {
                    0
                } else {
                    let sx = MMorObj::new(serre_of[xi].as_mor().clone()).unwrap();
                    stable_hom_mmor(&y.diagram, &sx).unwrap().0
                };
                assert_eq!(
                    lhs,
                    rhs,
                    "N={n}: dim Hom({}, {}) = {lhs} but dim Hom({}, S{}) = {rhs}",
                    x.label(),
                    y.label(),
                    y.label(),
                    x.label()
                );
            }
        }
    }
    report("3 (Serre duality dimension matrices, N = 3,4)", start, 120);
}

#[test]
fn criterion_4_calabi_yau() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(404);
    // N = 3: S³ ≅ Ω⁻¹, minimal witness (m, l) = (1, 3)
    let p3 = stable_permutations(&a, 3, &mut rng).unwrap();
    let w3 = find_cy(&p3, 12, 12).expect("N=3 CY witness");
    assert_eq!((w3.m, w3.l), (1, 3), "N=3 expects S³ ≅ Σ¹");
    // N = 4: S⁴ ≅ id
    let p4 = stable_permutations(&a, 4, &mut rng).unwrap();
    let w4 = find_cy(&p4, 12, 12).expect("N=4 CY witness");
    assert_eq!((w4.m, w4.l), (0, 4), "N=4 expects S⁴ ≅ id");
    // N = 5: S^N ≅ Ω^{-N+2} = Σ^{N-2}
    let p5 = stable_permutations(&a, 5, &mut rng).unwrap();
    assert_eq!(p5.serre_power(5), p5.sigma_power(3), "N=5 expects S⁵ ≅ Σ³");
    // Ω² is the identity on the example's stable classes
    for perms in [&p3, &p4, &p5] {
        let omega2 = perms.sigma_power(-2);
        assert!(omega2.iter().all(|(k, v)| k == v), "Ω² must fix every class");
    }
    // no 0 < n < N gives S^n ≅ Σ^power within |power| ≤ 2N
    for (n, perms) in [(3usize, &p3), (4, &p4), (5, &p5)] {
        for l in 1..n {
            let sl = perms.serre_power(l);
            for m in -(2 * n as i64)..=(2 * n as i64) {
                assert_ne!(
                    sl,
                    perms.sigma_power(m),
                    "N={n}: S^{l} must not equal Σ^{m}"
                );
            }
        }
        // generic bound: (-2t, s) with s = lcm(N, 2), t = s / N
        // (the Nakayama automorphism of the example has order 2)
        let s = nlcm(n, 2);
        let t = (s / n) as i64;
        assert_eq!(
            perms.serre_power(s),
            perms.sigma_power(-2 * t),
            "N={n}: generic pair S^{s} ≅ Σ^{}",
            -2 * t
        );
    }
    report("4 (Calabi-Yau orbit identities)", start, 180);
}

fn nlcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[test]
fn criterion_5_buchweitz_roundtrip() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(505);
    for n in [3usize, 4, 5] {
        let classes = example_indecomposables(&a, n).unwrap();
        for c in classes.iter().filter(|c| !c.is_proj_inj()) {
            let exp = expand_to_acyclic(&c.diagram, 2 * n as i64).unwrap();
            assert!(exp.bicartesian_dims_ok(), "N={n} {}: bicartesian dims", c.label());
            assert!(exp.squares_commute(), "N={n} {}: commuting squares", c.label());
            // every term projective-injective and acyclicity at interior
            // slots are enforced by the AcyclicWindow constructor; re-check
            // the interior homology explicitly
            let cx = exp.window.complex();
            let (lo, hi) = cx.support().unwrap();
            for deg in lo..=hi {
                assert!(is_projective(&cx.term(deg)));
                for r in 1..n {
                    if deg - n as i64 + r as i64 >= lo && deg + r as i64 <= hi {
                        assert_eq!(
                            homology(cx, deg, r).unwrap().h_dim,
                            0,
                            "N={n} {}: H^{deg}_{r} ≠ 0",
                            c.label()
                        );
                    }
                }
            }
            let back = cycles_functor_windowed(&exp.window).unwrap();
            assert!(
                stable_iso(&back, &c.diagram, &mut rng).unwrap().is_iso(),
                "N={n}: F(expand({})) must be stably isomorphic to it",
                c.label()
            );
        }
    }
    report("5 (Buchweitz roundtrip, N = 3,4,5)", start, 180);
}

#[test]
fn criterion_6_ncomplex_core() {
    let start = Instant::now();
    let a = alg();
    let (p1, _) = Module::projective(&a, 0);
    let (s1, _) = nstable::module::top(&p1);
    let (p2, _) = Module::projective(&a, 1);
    let (s2, _) = nstable::module::top(&p2);
    let i1 = nstable::module::injective_hull(&s1).target().clone();
    let i2 = nstable::module::injective_hull(&s2).target().clone();

    // (a) full-window mu complexes are acyclic, rank oracle agrees
    let rank_oracle = |x: &NComplex, deg: i64, r: usize| -> usize {
        let big_n = x.order();
        let z = x.term(deg).dim() - x.compose_diff(deg, r).mat().rank();
        let b = x.compose_diff(deg - big_n as i64 + r as i64, big_n - r).mat().rank();
        z - b
    };
    for big_n in 2..=6usize {
        for x in [&s1, &s2, &i1, &i2] {
            let c = mu(big_n, 0, big_n, x).unwrap();
            for deg in c.lo() - big_n as i64..=c.hi() + big_n as i64 {
                for r in 1..big_n {
                    let slot = homology(&c, deg, r).unwrap();
                    assert_eq!(slot.h_dim, rank_oracle(&c, deg, r));
                    assert_eq!(slot.h_dim, 0, "μ full window acyclic");
                }
            }
        }
    }

    // (b) Σ² ≅ [N] by homotopy-equivalence witness search
    let mut rng = Rng::new(606);
    for big_n in [3usize, 4, 5] {
        for trial in 0..20 {
            let x = random_proj_inj_complex(&a, big_n, &mut rng);
            let ss = suspend(&suspend(&x).unwrap()).unwrap();
            let shifted = x.shift(big_n as i64);
            let eq = is_homotopy_equiv(&ss, &shifted, &mut rng).unwrap();
            assert!(eq.is_equiv(), "N={big_n} trial {trial}: Σ² ≇ [N]");
        }
    }

    // (c) null-homotopic maps act as zero on homology
    let mut found = 0;
    let mut gen = Rng::new(707);
    while found < 100 {
        let x = random_proj_inj_complex(&a, 3, &mut gen);
        let y = random_proj_inj_complex(&a, 3, &mut gen);
        let Some(f) = random_null_homotopic(&x, &y, &mut gen).unwrap() else {
            continue;
        };
        assert!(f.validate().is_ok());
        for deg in x.lo() - 3..=x.hi() + 3 {
            for r in 1..3 {
                assert!(homology_map(&f, deg, r).unwrap().is_zero());
            }
        }
        found += 1;
    }

    // (d) σ_{≤n} preserves homology below the cut: unconditionally on the
    // slots whose window stays under the cut (i + r ≤ n + 1), and at every
    // slot i ≤ n when the complex has no homology above n (then the
    // inclusion is a quasi-isomorphism)
    let mut gen2 = Rng::new(808);
    for trial in 0..50 {
        let x = random_proj_inj_complex(&a, 3, &mut gen2);
        let cut = x.lo() + (gen2.below((x.hi() - x.lo() + 1) as u64) as i64);
        let (tr, inc) = trunc_homological_le(&x, cut).unwrap();
        for deg in x.lo() - 3..=cut {
            for r in 1..3usize {
                if deg + r as i64 > cut + 1 {
                    continue;
                }
                let hm = homology_map(&inc, deg, r).unwrap();
                assert_eq!(hm.rows(), hm.cols(), "trial {trial} slot ({deg},{r})");
                assert!(hm.rows() == 0 || hm.is_invertible(), "trial {trial} slot ({deg},{r})");
            }
        }
        // homology above the cut dies on the truncation
        for deg in cut + 1..=x.hi() + 3 {
            for r in 1..3 {
                assert_eq!(homology(&tr, deg, r).unwrap().h_dim, 0, "trial {trial}");
            }
        }
        // conditional full statement: no homology above the cut means the
        // inclusion is a quasi-isomorphism
        let vanishing_above = (cut + 1..=x.hi() + 3)
            .all(|deg| (1..3).all(|r| homology(&x, deg, r).unwrap().h_dim == 0));
        if vanishing_above {
            assert!(
                nstable::ncomplex::is_quasi_iso(&inc).unwrap(),
                "trial {trial}: inclusion must be a quasi-iso"
            );
        }
    }
    report("6 (N-complex core)", start, 180);
}

#[test]
fn criterion_7_triangular_transport() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(909);
    // m_r(B) ≅ ⊕ χ_i(A)
    for n in [2usize, 3] {
        let t = triangular(&a, n).unwrap();
        let reg = Module::regular(&t.algebra);
        let d = m_r(&t, &reg).unwrap();
        let reg_a = Module::regular(&a);
        let chis: Vec<_> =
            (1..=n).map(|i| mmor::chi(n, i, &reg_a).unwrap().into_mor()).collect();
        let sum = mmor::direct_sum_mor(&chis, &a);
        assert!(
            diagram_iso(&t, &d, &sum, &mut rng).unwrap().is_iso(),
            "M_r(T_{n}(A)) ≅ ⊕ χ_i(A)"
        );
    }
    // roundtrip isos on 50 random diagrams
    let t3 = triangular(&a, 3).unwrap();
    for trial in 0..50u64 {
        let mut gen = Rng::new(10_000 + trial);
        let x = mmor::random_diagram(&a, 3, &mut gen, 3);
        let m = m_r_inv(&t3, &x).unwrap();
        let back = m_r(&t3, &m).unwrap();
        assert!(
            diagram_iso(&t3, &x, &back, &mut rng).unwrap().is_iso(),
            "roundtrip trial {trial}"
        );
    }
    // Nakayama compatibility on all example indecomposables, N ∈ {3,4}
    for big_n in [3usize, 4] {
        let n = big_n - 1;
        let t = triangular(&a, n).unwrap();
        let classes = example_indecomposables(&a, big_n).unwrap();
        for c in &classes {
            let m = m_r_inv(&t, c.diagram.as_mor()).unwrap();
            let nu_b = nstable::module::nakayama(&m).unwrap();
            let lhs = m_r(&t, &nu_b).unwrap();
            let nu_star = nstable::serre::nakayama_star(&c.diagram).unwrap();
            let rhs = mmor::cok(&nu_star).unwrap();
            assert!(
                diagram_iso(&t, &lhs, &rhs, &mut rng).unwrap().is_iso(),
                "N={big_n}: M_r(ν_B(...)) ≇ Cok(ν_*({}))",
                c.label()
            );
        }
    }
    // duality compatibility on 20 random left B-modules
    let t2 = triangular(&a, 2).unwrap();
    for trial in 0..20u64 {
        let mut gen = Rng::new(20_000 + trial);
        let x = mmor::random_diagram(&a, 2, &mut gen, 3);
        let y = m_r_inv(&t2, &x).unwrap();
        let left = nstable::module::dual(&y);
        let ml = m_l(&t2, &left).unwrap();
        let lhs = nstable::triangular::dual_diagram(&ml).unwrap();
        let rhs = m_r(&t2, &nstable::module::dual(&left)).unwrap();
        assert!(
            diagram_iso(&t2, &lhs, &rhs, &mut rng).unwrap().is_iso(),
            "duality trial {trial}"
        );
    }
    report("7 (triangular transport)", start, 120);
}

#[test]
fn criterion_8_frobenius_structure() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(111);
    for n in [3usize, 4, 5] {
        let classes = example_indecomposables(&a, n).unwrap();
        for c in &classes {
            let (env, env_target) = proj_inj_envelope(&c.diagram).unwrap();
            assert!(is_proj_inj(&env_target), "envelope target for {}", c.label());
            assert!(mmor::is_admissible_mono(&env));
            let (q, _) = mmor::cokernel_chain(&env).unwrap();
            assert!(
                MMorObj::new(q).is_ok(),
                "envelope cokernel of {} must be a monomorphism diagram",
                c.label()
            );
            let (cover, cover_src) = proj_cover_mmor(&c.diagram).unwrap();
            assert!(is_proj_inj(&cover_src));
            assert!(mmor::is_admissible_epi(&cover));
            let (k, _) = kernel_chain(&cover).unwrap();
            assert!(
                MMorObj::new(k).is_ok(),
                "cover kernel of {} must be a monomorphism diagram",
                c.label()
            );
        }
        // ΩΩ⁻¹ ≅ id ≅ Ω⁻¹Ω on stable classes
        for c in classes.iter().filter(|c| !c.is_proj_inj()) {
            let oi = omega_inv(&c.diagram).unwrap();
            let back = omega(&oi).unwrap();
            assert!(
                stable_iso(&back, &c.diagram, &mut rng).unwrap().is_iso(),
                "N={n}: ΩΩ⁻¹({}) ≇ it",
                c.label()
            );
            let o = omega(&c.diagram).unwrap();
            let fwd = omega_inv(&o).unwrap();
            assert!(
                stable_iso(&fwd, &c.diagram, &mut rng).unwrap().is_iso(),
                "N={n}: Ω⁻¹Ω({}) ≇ it",
                c.label()
            );
        }
    }
    report("8 (Frobenius structure of MMor)", start, 60);
}

#[test]
fn criterion_9_mimo_properties() {
    let start = Instant::now();
    let a = alg();
    let mut rng = Rng::new(222);
    // Mimo is the identity on monomorphism diagrams
    for c in example_indecomposables(&a, 4).unwrap() {
        let (m, proj) = mimo(c.diagram.as_mor()).unwrap();
        assert_eq!(m.total_dim(), c.diagram.total_dim(), "{}", c.label());
        assert!(proj.is_componentwise_iso());
    }
    // Mimo(X) ↠ X has a projective-injective kernel chain
    let mut made = 0;
    let mut gen = Rng::new(333);
    while made < 30 {
        let x = mmor::random_diagram(&a, 3, &mut gen, 3);
        let (_, proj) = mimo(&x).unwrap();
        for comp in proj.components() {
            assert!(comp.is_surjective());
        }
        let (k, _) = kernel_chain(&proj).unwrap();
        let kc = MMorObj::new(k).unwrap();
        assert!(is_proj_inj(&kc), "Mimo kernel chain must be projective-injective");
        made += 1;
    }
    // two different lift choices in the map part agree stably
    let mut checked = 0;
    let mut gen2 = Rng::new(444);
    while checked < 30 {
        let x = mmor::random_diagram(&a, 3, &mut gen2, 3);
        let y = mmor::random_diagram(&a, 3, &mut gen2, 3);
        let homs = mmor::hom_mor(&x, &y).unwrap();
        if homs.is_empty() {
            continue;
        }
        let f = &homs[(gen2.below(homs.len() as u64)) as usize];
        let first = mimo_map(f, None).unwrap();
        let mut pert = Rng::new(50_000 + checked);
        let second = mimo_map(f, Some(&mut pert)).unwrap();
        let diff = first.sub(&second);
        if !diff.is_zero() {
            assert!(
                mmor::is_stably_zero(&diff).unwrap(),
                "lift choices must agree stably (trial {checked})"
            );
        }
        checked += 1;
    }
    let _ = Family::X;
    let _ = rng.below(2);
    report("9 (Mimo properties)", start, 60);
}
