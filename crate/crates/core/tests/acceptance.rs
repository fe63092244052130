//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

use pointedq::braiding::{classify, detect_cartan, dj_normal_form, CartanType, InfiniteReason, Verdict};
use pointedq::freealg::{
    ad_power, braided_commutator, in_radical, multidegree, nichols_dims, nichols_rank, serre_element,
    serre_in_radical, serre_vanishing, skew_primitivity_check, FreeElement, NicholsConfig,
};
use pointedq::uqd::{
    build_rewrite_system, check_isomorphism, coproduct, counit_legs, datum_isomorphisms, filtration_degree,
    gr_comparison, iterated_coproducts, skew_primitive_space, DatumComponent, Expr, IsomConfig, IsomorphismSearch,
    PBWElement, PBWTensor, RewriteConfig, RewriteSystem, Strategy as Descent, WINDOW_RADIUS,
};
use pointedq::{BraidingMatrix, CartanMatrix, GenericDatum, Limits, MonomialScalar, ParamNames, ScalarFraction};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{:?}", e))
}

fn t(k: usize) -> MonomialScalar {
    MonomialScalar::param(k)
}

fn bm(rows: Vec<Vec<MonomialScalar>>) -> BraidingMatrix {
    BraidingMatrix::new(rows).unwrap()
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Minimal symmetrizer by propagating ratios `d_j / d_i = a_ij / a_ji` along edges.
fn minimal_symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let n = a.len();
    let mut num = vec![0i64; n];
    let mut den = vec![1i64; n];
    num[0] = 1;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if a[i][j] != 0 && i != j && num[j] == 0 {
                num[j] = num[i] * a[i][j].abs();
                den[j] = den[i] * a[j][i].abs();
                let g = gcd(num[j], den[j]);
                num[j] /= g;
                den[j] /= g;
                stack.push(j);
            }
        }
    }
    let l = den.iter().fold(1, |acc, &d| acc / gcd(acc, d) * d);
    let d: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = d.iter().fold(0, |acc, &x| gcd(acc, x));
    d.iter().map(|x| x / g).collect()
}

/// Coefficients of `Π_β (1 - t^{ht β})^{-1}` up to `t^n`.
fn hilbert_series(heights: &[usize], n: usize) -> Vec<usize> {
    let mut c = vec![0usize; n + 1];
    c[0] = 1;
    for &h in heights {
        for k in h..=n {
            c[k] += c[k - h];
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Generic data

fn datum(
    cartan: Vec<Vec<i64>>,
    comps: &[(&[usize], &str)],
    g: Vec<Vec<i64>>,
    chi: &[&[&str]],
    lambda: &[((usize, usize), i64)],
) -> GenericDatum {
    let names = ParamNames::new(["q"]);
    let m = |s: &str| pointedq::scalars::parse_monomial(s, &names).unwrap();
    let components = comps
        .iter()
        .map(|(vs, q)| DatumComponent {
            vertices: vs.to_vec(),
            q: m(q),
        })
        .collect();
    let chi = chi.iter().map(|row| row.iter().map(|s| m(s)).collect()).collect();
    GenericDatum::new(
        g[0].len(),
        CartanMatrix::new(cartan).unwrap(),
        components,
        g,
        chi,
        lambda.iter().map(|&(p, v)| (p, ScalarFraction::from_integer(v))),
    )
    .unwrap()
    .with_names(names.clone())
}

fn uqsl2() -> GenericDatum {
    datum(
        vec![vec![2, 0], vec![0, 2]],
        &[(&[0], "q"), (&[1], "q^-1")],
        vec![vec![1], vec![1]],
        &[&["q"], &["q^-1"]],
        &[((0, 1), 1)],
    )
}

fn a2_datum(q: &str, q2: &str, qinv: &str) -> GenericDatum {
    datum(
        vec![vec![2, -1], vec![-1, 2]],
        &[(&[0, 1], q)],
        vec![vec![1, 0], vec![0, 1]],
        &[&[q, "1"], &[qinv, q2]],
        &[],
    )
}

fn a2() -> GenericDatum {
    a2_datum("q", "q", "q^-1")
}

fn a1xa1() -> GenericDatum {
    datum(
        vec![vec![2, 0], vec![0, 2]],
        &[(&[0], "q"), (&[1], "q")],
        vec![vec![1, 0], vec![0, 1]],
        &[&["q", "1"], &["1", "q"]],
        &[],
    )
}

fn system(d: &GenericDatum) -> Result<RewriteSystem, String> {
    ok(build_rewrite_system(d, &RewriteConfig::default()))
}

fn word_expr(word: &[(usize, i64)], theta: usize) -> Expr {
    word.iter().fold(Expr::scalar(ScalarFraction::one()), |acc, &(g, e)| {
        if g < theta {
            acc * Expr::A(g)
        } else {
            acc * Expr::Y(0).pow(e)
        }
    })
}

fn runner(cases: u32) -> TestRunner {
    let cfg = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(cfg.rng_algorithm);
    TestRunner::new_with_rng(cfg, rng)
}

// ---------------------------------------------------------------------------
// Criteria

fn cartan_round_trip() -> Check {
    let wanted = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"];
    let types: Vec<CartanType> = CartanType::all_up_to_rank(4)
        .into_iter()
        .filter(|ty| wanted.contains(&ty.name().as_str()))
        .collect();
    ensure(types.len() == wanted.len(), || format!("only {} of the types are available", types.len()))?;
    for ty in types {
        let a = ok(ty.cartan_matrix())?;
        let d = minimal_symmetrizer(a.rows());
        let n = a.rank();
        let q = bm((0..n).map(|i| (0..n).map(|j| t(0).pow(d[i] * a.get(i, j))).collect()).collect());
        let found = ok(detect_cartan(&q))?;
        ensure(found == a, || format!("{}: Cartan matrix not recovered", ty.name()))?;
        let ft = ok(found.finite_type())?;
        ensure(ft.name() == ty.name(), || format!("{}: finite type reported as {}", ty.name(), ft.name()))?;
        let dj = ok(dj_normal_form(&q))?;
        ensure(dj.d == d, || format!("{}: symmetrizer {:?} != {:?}", ty.name(), dj.d, d))?;
    }
    Ok(())
}

fn rosso_dichotomy() -> Check {
    let a2 = bm(vec![vec![t(0), t(0).inv()], vec![MonomialScalar::one(), t(0)]]);
    let c = ok(classify(&a2))?;
    let roots = 3; // α1, α2, α1 + α2
    ensure(c.positive && c.verdict == Verdict::FiniteGK { gk: roots }, || format!("A2: {:?}", c.verdict))?;

    let not_cartan = bm(vec![vec![t(0), t(1)], vec![MonomialScalar::one(), t(0)]]);
    let c = ok(classify(&not_cartan))?;
    ensure(c.positive, || "non-Cartan example should be positive".into())?;
    ensure(matches!(c.verdict, Verdict::InfiniteGK(InfiniteReason::NotCartan(_))), || format!("non-Cartan: {:?}", c.verdict))?;

    let remark = bm(vec![vec![t(0), t(0).inv()], vec![t(0).inv(), t(0).neg()]]);
    let c = ok(classify(&remark))?;
    ensure(c.cartan.is_ok() && !c.positive, || "remark matrix should be Cartan and not positive".into())?;
    ensure(matches!(c.dj, Some(Err(_))), || "remark matrix should not be of DJ type".into())
}

fn nichols_graded_dims() -> Check {
    let h = MonomialScalar::param_pow_halves(0, -1);
    let a2 = bm(vec![vec![t(0), h.clone()], vec![h, t(0)]]);
    let cfg = NicholsConfig {
        max_degree: 4,
        parallel: true,
        ..Default::default()
    };
    let dims = ok(nichols_dims(&a2, &cfg))?.dims;
    let want = hilbert_series(&[1, 1, 2], 4);
    ensure(dims == want && want == [1, 2, 4, 6, 9], || format!("A2: {:?} vs {:?}", dims, want))?;
    let split = bm(vec![vec![t(0), MonomialScalar::one()], vec![MonomialScalar::one(), t(1)]]);
    let dims = ok(nichols_dims(&split, &cfg))?.dims;
    let want = hilbert_series(&[1, 1], 4);
    ensure(dims == want && want == [1, 2, 3, 4, 5], || format!("A1xA1: {:?} vs {:?}", dims, want))
}

fn b2_sym() -> BraidingMatrix {
    let p = |e: i64| t(0).pow(e);
    bm(vec![vec![p(2), p(-2)], vec![p(-2), p(4)]])
}

fn a2_sym() -> BraidingMatrix {
    let h = MonomialScalar::param_pow_halves(0, -1);
    bm(vec![vec![t(0), h.clone()], vec![h, t(0)]])
}

fn serre_in_the_radical() -> Check {
    for (name, q) in [("A2", a2_sym()), ("B2", b2_sym())] {
        let a = ok(detect_cartan(&q))?;
        for (i, j) in [(0, 1), (1, 0)] {
            ensure(ok(serre_in_radical(&q, &a, i, j))?, || format!("{}: Serre element ({}, {}) not in the radical", name, i + 1, j + 1))?;
        }
    }
    let q = a2_sym();
    let sub = ad_power(&q, 0, 1, 1);
    ensure(sub == braided_commutator(&q, &FreeElement::generator(0), &FreeElement::generator(1)), || "ad power mismatch".into())?;
    ensure(!in_radical(&q, &sub), || "ad_c(x1)(x2) lies in the radical".into())
}

fn vanishing_criterion() -> Check {
    for (name, q) in [("A2", a2_sym()), ("B2", b2_sym())] {
        for (i, j) in [(0, 1), (1, 0)] {
            for r in 1..=3 {
                let v = ok(serre_vanishing(&q, i, j, r))?;
                let rad = in_radical(&q, &ad_power(&q, i, j, r));
                ensure(v == rad, || format!("{}: ({}, {}, {}) vanishing {} radical {}", name, i + 1, j + 1, r, v, rad))?;
            }
        }
    }
    Ok(())
}

fn pbw_independence() -> Check {
    let q = a2_sym();
    let x = FreeElement::generator;
    let roots = [x(0), braided_commutator(&q, &x(0), &x(1)), x(1)];
    let heights = [1usize, 2, 1];
    let limits = Limits::default();
    let mut counts = vec![0usize; 5];
    let mut by_degree: std::collections::BTreeMap<Vec<usize>, Vec<FreeElement>> = Default::default();
    for c0 in 0..=4usize {
        for c1 in 0..=2usize {
            for c2 in 0..=4usize {
                let n = c0 * heights[0] + c1 * heights[1] + c2 * heights[2];
                if n > 4 {
                    continue;
                }
                let m = roots[0].pow(c0).mul(&roots[1].pow(c1)).mul(&roots[2].pow(c2));
                counts[n] += 1;
                let deg = vec![c0 + c1, c1 + c2];
                by_degree.entry(deg).or_default().push(m);
            }
        }
    }
    for (deg, elems) in &by_degree {
        let r = ok(nichols_rank(&q, elems, &limits))?;
        ensure(r == elems.len(), || format!("degree {:?}: rank {} of {} monomials", deg, r, elems.len()))?;
        for e in elems {
            ensure(e.terms().all(|(w, _)| &multidegree(w, 2) == deg), || "monomial is not homogeneous".into())?;
        }
    }
    ensure(counts == hilbert_series(&heights, 4), || format!("monomial counts {:?}", counts))
}

fn uqd_normal_form() -> Check {
    let d = uqsl2();
    let sys = system(&d)?;
    let nf = ok(sys.normal_form("a2*a1"))?;
    let rendered = sys.render(&nf);
    ensure(rendered == "q*a1*a2 - q + q*y1^2", || format!("nf(a2*a1) = {}", rendered))?;
    // a1 a2 - χ2(g1) a2 a1 - λ (1 - g1 g2) with a2 a1 replaced by its normal form
    let a1a2 = ok(sys.normal_form("a1*a2"))?;
    let rel = a1a2
        .sub(&nf.scale(&ScalarFraction::from_monomial(&d.chi_at(1, d.g(0)))))
        .sub(&ok(sys.normal_form("1 - y1^2"))?);
    ensure(rel.is_zero(), || format!("relation leaves {}", sys.render(&rel)))?;

    let words = prop::collection::vec((0usize..=2, -1i64..=1), 0..=6);
    let systems = [system(&uqsl2())?, system(&a2())?];
    let mut r = runner(100);
    ok(r.run(&words, |w| {
        for sys in &systems {
            let e = word_expr(&w, 2);
            let l = sys.eval_with(&e, Descent::Leftmost).unwrap();
            let r = sys.eval_with(&e, Descent::Rightmost).unwrap();
            prop_assert_eq!(l, r);
        }
        Ok(())
    }))?;
    let triple = (words.clone(), words.clone(), words);
    let mut r = runner(100);
    ok(r.run(&triple, |(u, v, w)| {
        for sys in &systems {
            let [u, v, w] = [&u, &v, &w].map(|x| sys.eval(&word_expr(x, 2)).unwrap());
            let l = sys.multiply(&sys.multiply(&u, &v).unwrap(), &w).unwrap();
            let r = sys.multiply(&u, &sys.multiply(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
        Ok(())
    }))
}

fn with_group(sys: &RewriteSystem, m: &PBWElement, gamma: &[i64]) -> Result<PBWElement, String> {
    ok(sys.multiply(m, &sys.group_element(gamma.to_vec())))
}

fn hopf_structure() -> Check {
    for (name, d) in [("A2", a2()), ("Uq(sl2)", uqsl2())] {
        let sys = system(&d)?;
        let s = d.s();
        for n in 0..=3 {
            for m in sys.monomials_of_filtration(n) {
                let mut gamma = vec![0; s];
                gamma[0] = 1 - n; // vary the group part with the degree
                let x = with_group(&sys, &PBWElement::monomial(m), &gamma)?;
                let (l, r) = ok(iterated_coproducts(&sys, &x))?;
                ensure(l == r, || format!("{}: coassociativity fails on {}", name, sys.render(&x)))?;
                let (e1, e2) = counit_legs(&ok(coproduct(&sys, &x))?);
                ensure(e1 == x && e2 == x, || format!("{}: counit fails on {}", name, sys.render(&x)))?;
            }
        }
        let q = ok(d.braiding())?;
        let a = d.cartan();
        for i in 0..d.theta() {
            for j in 0..d.theta() {
                if i != j && a.components().connected(i, j) {
                    let u = ok(serre_element(&q, a, i, j))?;
                    ensure(skew_primitivity_check(&q, &u), || format!("{}: Serre element ({}, {}) is not primitive", name, i + 1, j + 1))?;
                    ensure(ok(sys.eval_free(&u))?.is_zero(), || format!("{}: Serre element does not vanish", name))?;
                }
            }
        }
    }
    // The linking element u = a1 a2 - χ2(g1) a2 a1 satisfies Δu = u⊗1 + g1g2⊗u.
    let d = uqsl2();
    let sys = system(&d)?;
    let q = ok(d.braiding())?;
    let x = FreeElement::generator;
    let u = braided_commutator(&q, &x(0), &x(1));
    ensure(skew_primitivity_check(&q, &u), || "linking element is not primitive in T(V)".into())?;
    let ue = ok(sys.eval_free(&u))?;
    let want = PBWTensor::from_pair(&ue, &sys.one()).add(&PBWTensor::from_pair(&sys.group_element(vec![2]), &ue));
    ensure(ok(coproduct(&sys, &ue))? == want, || "linking element is not skew-primitive in U(D)".into())
}

fn coradical_filtration() -> Check {
    let sys = system(&a2())?;
    let b2 = sys.root_vector_element(1);
    ensure(filtration_degree(&sys, &b2) == 2, || "b2 should have filtration degree 2".into())?;
    ensure(filtration_degree(&sys, &sys.group_element(vec![1, -1])) == 0, || "group-likes have degree 0".into())?;
    ensure(filtration_degree(&sys, &ok(sys.normal_form("a1*y2"))?) == 1, || "a1*y2 has degree 1".into())?;
    for (name, d, heights) in [("A2", a2(), vec![1, 1, 2]), ("Uq(sl2)", uqsl2(), vec![1, 1]), ("A1xA1", a1xa1(), vec![1, 1])] {
        let sys = system(&d)?;
        let oracle = hilbert_series(&heights, 3);
        let window = (2 * WINDOW_RADIUS as usize + 1).pow(d.s() as u32);
        let (mut alg, mut smash) = (0, 0);
        for slice in ok(gr_comparison(&sys, 3, WINDOW_RADIUS))? {
            ensure(slice.window == window, || format!("{}: window {}", name, slice.window))?;
            ensure(slice.matches(), || format!("{}: {:?}", name, slice))?;
            ensure(slice.nichols_dim == oracle[slice.degree], || format!("{}: degree {} Nichols count", name, slice.degree))?;
            alg += slice.algebra_window_dim();
            smash += slice.smash_window_dim();
            ensure(alg == smash, || format!("{}: cumulative counts differ at degree {}", name, slice.degree))?;
        }
    }
    Ok(())
}

fn skew_primitives() -> Check {
    for (name, d) in [("A2", a2()), ("Uq(sl2)", uqsl2())] {
        let sys = system(&d)?;
        let one = vec![0; d.s()];
        for i in 0..d.theta() {
            let rep = ok(skew_primitive_space(&sys, &one, d.g(i), d.chi(i), WINDOW_RADIUS))?;
            ensure(rep.dimension == 1 && rep.nontrivial == 1, || format!("{}: vertex {} gives {:?}", name, i + 1, rep))?;
        }
    }
    Ok(())
}

fn found(r: IsomorphismSearch) -> Result<Vec<pointedq::uqd::DatumIsomorphism>, String> {
    match r {
        IsomorphismSearch::Found(v) => Ok(v),
        IsomorphismSearch::Undecided { reason } => Err(format!("undecided: {}", reason)),
    }
}

fn isomorphisms() -> Check {
    let cfg = IsomConfig::default();
    let d = a2();
    let sys = system(&d)?;
    let isos = found(datum_isomorphisms(&d, &d, &cfg))?;
    let identity = isos
        .iter()
        .any(|i| i.phi == vec![vec![1, 0], vec![0, 1]] && i.sigma == vec![0, 1] && i.alpha.iter().all(|a| a.is_one()));
    ensure(identity, || "identity isomorphism not found".into())?;
    for iso in &isos {
        let bad = ok(check_isomorphism(&d, &sys, iso))?;
        ensure(bad.is_empty(), || format!("self-isomorphism breaks {:?}", bad))?;
    }

    // the copy with the two vertices exchanged
    let swapped = ok(d.permuted(&[1, 0]))?;
    let target = system(&swapped)?;
    let isos = found(datum_isomorphisms(&d, &swapped, &cfg))?;
    let expected = isos
        .iter()
        .any(|i| i.phi == vec![vec![1, 0], vec![0, 1]] && i.sigma == vec![1, 0] && i.alpha.iter().all(|a| a.is_one()));
    ensure(expected, || format!("permuted copy: {:?}", isos))?;
    for iso in &isos {
        let bad = ok(check_isomorphism(&d, &target, iso))?;
        ensure(bad.is_empty(), || format!("permuted isomorphism breaks {:?}", bad))?;
    }

    // the copy with the group generators exchanged
    let relabelled = datum(
        vec![vec![2, -1], vec![-1, 2]],
        &[(&[0, 1], "q")],
        vec![vec![0, 1], vec![1, 0]],
        &[&["1", "q"], &["q", "q^-1"]],
        &[],
    );
    let target = system(&relabelled)?;
    let isos = found(datum_isomorphisms(&d, &relabelled, &cfg))?;
    let expected = isos.iter().any(|i| i.phi == vec![vec![0, 1], vec![1, 0]] && i.sigma == vec![0, 1]);
    ensure(expected, || format!("relabelled copy: {:?}", isos))?;
    for iso in &isos {
        let bad = ok(check_isomorphism(&d, &target, iso))?;
        ensure(bad.is_empty(), || format!("relabelled isomorphism breaks {:?}", bad))?;
    }

    let squared = a2_datum("q^2", "q^2", "q^-2");
    let isos = found(datum_isomorphisms(&d, &squared, &cfg))?;
    ensure(isos.is_empty(), || "q_I mismatch should give no isomorphism".into())?;

    // linked data: the scaling α absorbs λ
    let d = uqsl2();
    let scaled = datum(
        vec![vec![2, 0], vec![0, 2]],
        &[(&[0], "q"), (&[1], "q^-1")],
        vec![vec![1], vec![1]],
        &[&["q"], &["q^-1"]],
        &[((0, 1), 3)],
    );
    let target = system(&scaled)?;
    let isos = found(datum_isomorphisms(&d, &scaled, &cfg))?;
    ensure(!isos.is_empty(), || "rescaled linking constant not matched".into())?;
    for iso in &isos {
        let bad = ok(check_isomorphism(&d, &target, iso))?;
        ensure(bad.is_empty(), || format!("linked isomorphism breaks {:?}", bad))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("Cartan round-trip", cartan_round_trip, Some(Duration::from_secs(5))),
        ("Rosso dichotomy", rosso_dichotomy, Some(Duration::from_secs(1))),
        ("Nichols graded dimensions", nichols_graded_dims, Some(Duration::from_secs(60))),
        ("Serre elements in the radical", serre_in_the_radical, Some(Duration::from_secs(30))),
        ("Vanishing criterion", vanishing_criterion, None),
        ("PBW linear independence", pbw_independence, Some(Duration::from_secs(60))),
        ("U(D) normal form", uqd_normal_form, Some(Duration::from_secs(30))),
        ("Hopf structure", hopf_structure, None),
        ("Coradical filtration", coradical_filtration, None),
        ("Skew-primitive spaces", skew_primitives, None),
        ("Isomorphism", isomorphisms, Some(Duration::from_secs(30))),
    ];
    let mut failures = Vec::new();
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        if let (Ok(()), Some(b)) = (&result, budget) {
            if elapsed > *b {
                result = Err(format!("took {:.2?}, budget {:.0?}", elapsed, b));
            }
        }
        match &result {
            Ok(()) => println!("PASS {:>2} {} ({:.2?})", k + 1, name, elapsed),
            Err(e) => {
                println!("FAIL {:>2} {} ({:.2?}): {}", k + 1, name, elapsed, e);
                failures.push(k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures.len(), criteria.len());
    if !failures.is_empty() {
        eprintln!("failed criteria: {:?}", failures);
        std::process::exit(1);
    }
}
