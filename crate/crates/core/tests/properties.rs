use proptest::prelude::*;

use uprime_core::algebra::{
    check_td_relations, check_uprime_relations, coproduct_tensor, phi_s_image,
};
use uprime_core::intertwiner::{
    build_intertwiner, cg_decompose, cg_lowest_weight, cg_lowest_weight_primed, check_ladder,
    check_lemma5, check_lemma6, find_isomorphism, intertwiner_space, side_module,
};
use uprime_core::linalg::{algebra_span_dim, subspace_closure};
use uprime_core::modules::{build, evaluation_module, normalize_type, weight_decomposition};
use uprime_core::structure::{
    drinfeld_polynomial, exceptional_polynomials, irreducible_as_td_module,
    irreducible_by_criterion, irreducible_by_oracle, td_irreducible_by_oracle, DEFAULT_ORACLE_CAP,
};
use uprime_core::{
    Generator, Matrix, ModuleSpec, QContext, Representation, Scalar, Side, Subspace,
};

fn q2() -> QContext {
    QContext::new(Scalar::from_int(2)).unwrap()
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Evaluation parameters used for random specs: q-powers plus a few strays.
fn param(k: i64, c: &QContext) -> Scalar {
    match k {
        5 => Scalar::new(1, 3),
        6 => int(-1),
        7 => int(3),
        k => c.q_pow(k),
    }
}

fn factor() -> impl Strategy<Value = (usize, i64)> {
    (1usize..=2, -3i64..=7)
}

fn spec_from(ell0: usize, raw: &[(usize, i64)], c: &QContext) -> ModuleSpec {
    ModuleSpec::new(ell0, raw.iter().map(|&(l, k)| (l, param(k, c))).collect()).unwrap()
}

/// Rank by plain Gaussian elimination, kept separate from the library.
fn naive_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                let sub: Vec<Scalar> = rows[rank].iter().map(|x| x * &f).collect();
                for (x, y) in rows[r].iter_mut().zip(sub) {
                    *x -= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Span of all words in `ops`, grown length by length until the rank stops.
fn naive_word_span(n: usize, ops: &[&Matrix]) -> usize {
    let mut words = vec![Matrix::identity(n)];
    let mut rank = 1;
    loop {
        let mut next = words.clone();
        for w in &words {
            for g in ops {
                next.push(*g * w);
            }
        }
        let r = naive_rank(next.iter().map(|m| m.as_flat().to_vec()).collect());
        if r == rank {
            return r;
        }
        // keep an independent subset to bound the growth
        let mut kept: Vec<Matrix> = Vec::new();
        for m in next {
            let mut trial: Vec<Vec<Scalar>> = kept.iter().map(|k| k.as_flat().to_vec()).collect();
            trial.push(m.as_flat().to_vec());
            if naive_rank(trial) > kept.len() {
                kept.push(m);
            }
        }
        words = kept;
        rank = r;
    }
}

fn commutes(p: &Matrix, a: &Representation, b: &Representation) -> bool {
    Generator::ALL
        .iter()
        .all(|&g| p * a.action(g) == b.action(g) * p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_products_are_modules(f1 in factor(), f2 in factor(), ell0 in 0usize..=1) {
        let c = q2();
        let rep = build(&spec_from(ell0, &[f1, f2], &c), &c).unwrap();
        let report = check_uprime_relations(&rep, &c);
        prop_assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        prop_assert!(report.get("e0p_e1m").unwrap().pass);
    }

    #[test]
    fn coassociativity(fs in prop::collection::vec(factor(), 3)) {
        let c = q2();
        let m: Vec<Representation> =
            fs.iter().map(|&(l, k)| evaluation_module(l as i64, &param(k, &c), &c).unwrap()).collect();
        let left = coproduct_tensor(&coproduct_tensor(&m[0], &m[1]), &m[2]);
        let right = coproduct_tensor(&m[0], &coproduct_tensor(&m[1], &m[2]));
        for g in Generator::ALL {
            prop_assert_eq!(left.action(g), right.action(g));
        }
    }

    #[test]
    fn td_relations_on_certified_reps(f1 in factor(), f2 in factor(), ell0 in 0usize..=1) {
        let c = q2();
        let rep = build(&spec_from(ell0, &[f1, f2], &c), &c).unwrap();
        prop_assume!(rep.dim() <= 12);
        for s in [int(1), int(2), Scalar::new(1, 3)] {
            for eps in [1u8, 0] {
                let t = phi_s_image(&rep, &s, eps, 0, &c).unwrap();
                prop_assert!(check_td_relations(&t, &c).all_pass());
            }
        }
    }

    #[test]
    fn builds_are_type_one_one(fs in prop::collection::vec(factor(), 1..=3), ell0 in 0usize..=2) {
        let c = q2();
        let rep = build(&spec_from(ell0, &fs, &c), &c).unwrap();
        let (norm, twist) = normalize_type(&rep, &c).unwrap();
        prop_assert!(twist.s.is_one());
        prop_assert_eq!(twist.sign, 1);
        prop_assert_eq!(norm, rep);
    }

    #[test]
    fn reordering_preserves_layers_and_drinfeld(fs in prop::collection::vec(factor(), 2..=3), ell0 in 0usize..=1) {
        let c = q2();
        let spec = spec_from(ell0, &fs, &c);
        let mut rev = fs.clone();
        rev.reverse();
        let spec_rev = spec_from(ell0, &rev, &c);
        let a = weight_decomposition(&build(&spec, &c).unwrap(), &c).unwrap();
        let b = weight_decomposition(&build(&spec_rev, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(a.layer_dims(), b.layer_dims());
        let p = drinfeld_polynomial(&spec, &c);
        prop_assert_eq!(p.degree(), Some(a.d));
        prop_assert_eq!(p.degree(), Some(spec.diameter()));
        prop_assert_eq!(p, drinfeld_polynomial(&spec_rev, &c));
    }

    #[test]
    fn conjugation_preserves_relations_and_verdict(f1 in factor(), f2 in factor(), shear in -3i64..=3) {
        let c = q2();
        let spec = spec_from(0, &[f1, f2], &c);
        let rep = build(&spec, &c).unwrap();
        let n = rep.dim();
        let p = Matrix::from_fn(n, n, |i, j| {
            if i == j { int(1) } else if j == i + 1 { int(shear) } else { int(0) }
        });
        let conj = rep.conjugate(&p).unwrap();
        prop_assert!(check_uprime_relations(&conj, &c).all_pass());
        prop_assert_eq!(
            irreducible_by_oracle(&conj, DEFAULT_ORACLE_CAP).unwrap(),
            irreducible_by_criterion(&spec, &c)
        );
    }
}

#[test]
fn span_dim_matches_naive_word_span() {
    let c = q2();
    let specs = [
        spec_from(0, &[(1, 0)], &c),
        spec_from(1, &[], &c),
        spec_from(0, &[(1, 0), (1, 2)], &c),
        spec_from(0, &[(1, 0), (1, 4)], &c),
        spec_from(0, &[(1, 0), (1, 1)], &c),
        spec_from(1, &[(1, 3)], &c),
    ];
    for spec in specs {
        let rep = build(&spec, &c).unwrap();
        let ops = rep.actions();
        assert_eq!(
            algebra_span_dim(rep.dim(), &ops).unwrap(),
            naive_word_span(rep.dim(), &ops),
            "{spec:?}"
        );
    }
    // the split along k-eigenspaces also matches on the TD generators
    let rep = build(&spec_from(0, &[(1, 6)], &c), &c).unwrap();
    for s in [int(1), int(2)] {
        let t = phi_s_image(&rep, &s, 1, 0, &c).unwrap();
        let ops = t.generators();
        assert_eq!(algebra_span_dim(2, &ops).unwrap(), naive_word_span(2, &ops));
    }
}

#[test]
fn layer_symmetry_and_raising_bijection() {
    let c = q2();
    let raws: Vec<(usize, Vec<(usize, i64)>)> = vec![
        (0, vec![(1, 0), (1, 4)]),
        (1, vec![(2, 0), (1, -4)]),
        (0, vec![(2, 1), (2, -4)]),
        (2, vec![(1, 0), (1, 4), (1, -4)]),
        (0, vec![(1, 0), (1, 4), (1, -4), (2, 2)]),
        (1, vec![(2, 0), (2, 5)]),
    ];
    for (ell0, raw) in raws {
        let spec = spec_from(ell0, &raw, &c);
        assert!(irreducible_by_criterion(&spec, &c), "{spec:?}");
        let rep = build(&spec, &c).unwrap();
        assert!(rep.dim() <= 36);
        let wd = weight_decomposition(&rep, &c).unwrap();
        let dims = wd.layer_dims();
        let mut rev = dims.clone();
        rev.reverse();
        assert_eq!(dims, rev, "{spec:?}");
        if rep.dim() <= 16 {
            let e1p = rep.action(Generator::E1p);
            for i in 0..=wd.d / 2 {
                let low = wd.layer_indices(i);
                let high = wd.layer_indices(wd.d - i);
                let pw = e1p.pow((wd.d - 2 * i) as u32);
                let block = Matrix::from_fn(low.len(), high.len(), |r, col| {
                    pw.get(low[r], high[col]).clone()
                });
                assert_eq!(
                    naive_rank((0..block.rows()).map(|r| block.row(r).to_vec()).collect()),
                    low.len()
                );
            }
        }
    }
}

#[test]
fn isomorphism_classes_follow_factor_multisets() {
    let c = q2();
    let pool: Vec<(usize, i64)> = vec![(1, 0), (1, 4), (2, -3), (1, 5), (2, 0)];
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i + 1..] {
            let spec = spec_from(0, &[a, b], &c);
            let swapped = spec_from(0, &[b, a], &c);
            if spec.dim() > 12 || !irreducible_by_criterion(&spec, &c) {
                continue;
            }
            let x = build(&spec, &c).unwrap();
            let y = build(&swapped, &c).unwrap();
            let p = find_isomorphism(&x, &y).unwrap_or_else(|| panic!("{spec:?}"));
            assert!(commutes(&p, &x, &y));
            assert_eq!(
                naive_rank((0..p.rows()).map(|r| p.row(r).to_vec()).collect()),
                x.dim()
            );
            assert_eq!(intertwiner_space(&x, &y).dim(), 1);
        }
    }
    // same dimension, different multisets: no intertwiner at all
    let pairs = [
        (
            spec_from(0, &[(1, 0), (1, 4)], &c),
            spec_from(0, &[(1, 0), (1, -4)], &c),
        ),
        (
            spec_from(1, &[(1, 5)], &c),
            spec_from(0, &[(1, 5), (1, 0)], &c),
        ),
        (spec_from(0, &[(2, 0)], &c), spec_from(0, &[(2, 4)], &c)),
        (
            spec_from(0, &[(2, 0), (1, 5)], &c),
            spec_from(0, &[(2, 0), (1, 4)], &c),
        ),
    ];
    for (s1, s2) in pairs {
        assert!(irreducible_by_criterion(&s1, &c) && irreducible_by_criterion(&s2, &c));
        let (x, y) = (build(&s1, &c).unwrap(), build(&s2, &c).unwrap());
        assert!(find_isomorphism(&x, &y).is_none(), "{s1:?} vs {s2:?}");
        assert_eq!(intertwiner_space(&x, &y).dim(), 0);
    }
}

#[test]
fn every_basis_vector_generates_the_top_lowest_weight_vector() {
    let c = q2();
    for (l, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        for a in [int(1), Scalar::new(1, 3), int(16)] {
            let spec = ModuleSpec::new(m, vec![(l, a.clone())]).unwrap();
            assert!(irreducible_by_criterion(&spec, &c));
            let rep = side_module(l, m, &a, Side::Source, &c).unwrap();
            let top = cg_lowest_weight(l, m, &a, 0, &c).unwrap();
            for j in 0..rep.dim() {
                let mut e = vec![int(0); rep.dim()];
                e[j] = int(1);
                let w =
                    subspace_closure(&Subspace::from_vectors(rep.dim(), vec![e]), &rep.actions())
                        .unwrap();
                assert!(w.contains(&top), "l={l} m={m} a={a} j={j}");
            }
        }
    }
}

/// Coefficients of the lowest weight vector along its support, `j = 0..=ν`.
fn support_coefficients(v: &[Scalar], first: usize, second: usize, nu: usize) -> Vec<Scalar> {
    (0..=nu)
        .map(|j| v[(first - nu + j) * (second + 1) + (second - j)].clone())
        .collect()
}

#[test]
fn cg_coefficient_ratio() {
    let c = q2();
    let a = int(1);
    for l in 1..=3usize {
        for m in 1..=3usize {
            for nu in 1..=l.min(m) {
                let coeffs =
                    support_coefficients(&cg_lowest_weight(l, m, &a, nu, &c).unwrap(), l, m, nu);
                for j in 1..=nu {
                    let (jj, li, mi, ni) = (j as i64, l as i64, m as i64, nu as i64);
                    let expected =
                        -(c.q_pow(mi - 2 * jj + 2) * c.q_int(li - ni + jj)) / c.q_int(mi - jj + 1);
                    assert_eq!(
                        &coeffs[j] / &coeffs[j - 1],
                        expected,
                        "l={l} m={m} nu={nu} j={j}"
                    );
                }
                let primed = support_coefficients(
                    &cg_lowest_weight_primed(l, m, &a, nu, &c).unwrap(),
                    m,
                    l,
                    nu,
                );
                for j in 1..=nu {
                    let (jj, li, mi, ni) = (j as i64, l as i64, m as i64, nu as i64);
                    let expected =
                        -(c.q_pow(li - 2 * jj + 2) * c.q_int(mi - ni + jj)) / c.q_int(li - jj + 1);
                    assert_eq!(&primed[j] / &primed[j - 1], expected);
                }
            }
        }
    }
}

#[test]
fn cg_components_span_and_e0p_identities_hold() {
    let c = q2();
    for l in 1..=3usize {
        for m in 1..=3usize {
            for a in [int(1), Scalar::new(1, 3)] {
                for side in [Side::Source, Side::Target] {
                    let d = cg_decompose(l, m, &a, side, &c).unwrap();
                    let b = d.basis_matrix();
                    assert_eq!(
                        naive_rank((0..b.rows()).map(|r| b.row(r).to_vec()).collect()),
                        (l + 1) * (m + 1)
                    );
                    assert!(check_ladder(l, m, &a, side, &c).unwrap().all_pass());
                }
                assert!(
                    check_lemma5(l, m, &a, &c).unwrap().all_pass(),
                    "l={l} m={m} a={a}"
                );
                assert!(
                    check_lemma6(l, m, &a, &c).unwrap().all_pass(),
                    "l={l} m={m} a={a}"
                );
            }
        }
    }
}

#[test]
fn intertwiner_is_an_invertible_unique_module_map() {
    let c = q2();
    for l in 1..=3usize {
        for m in 1..=3usize {
            let a = Scalar::new(1, 3);
            let it = build_intertwiner(l, m, &a, &c).unwrap();
            let (src, tgt) = (it.source(&c).unwrap(), it.target(&c).unwrap());
            assert!(commutes(&it.r, &src, &tgt), "l={l} m={m}");
            assert_eq!(
                naive_rank((0..it.r.rows()).map(|r| it.r.row(r).to_vec()).collect()),
                src.dim()
            );
            let spec = ModuleSpec::new(m, vec![(l, a.clone())]).unwrap();
            if irreducible_by_criterion(&spec, &c) {
                let space = intertwiner_space(&src, &tgt);
                assert_eq!(space.dim(), 1);
                assert!(space.contains(it.r.as_flat()));
            }
        }
    }
}

#[test]
fn exceptional_polynomial_of_a_single_factor() {
    let c = q2();
    for a in [int(1), int(-3), Scalar::new(1, 3), int(16)] {
        let rep = evaluation_module(1, &a, &c).unwrap();
        let p = exceptional_polynomials(&rep, &c).unwrap();
        // e1+ (e0+ + t e1- k1) v0 = q (a + t) v0
        assert_eq!(p[0].coeffs(), &[&a * c.q(), c.q().clone()]);
        assert_eq!(p.len(), 1);
    }
}

#[test]
fn td_oracle_agrees_away_from_exceptional_roots() {
    let c = q2();
    let raws: Vec<(usize, Vec<(usize, i64)>)> = vec![
        (0, vec![(1, 0), (1, 4)]),
        (0, vec![(2, 0)]),
        (0, vec![(2, 5)]),
        (1, vec![(1, -3)]),
        (0, vec![(1, 6), (1, 4)]),
        (2, vec![(2, 1)]),
    ];
    for (ell0, raw) in raws {
        let spec = spec_from(ell0, &raw, &c);
        let rep = build(&spec, &c).unwrap();
        assert!(rep.dim() <= 9);
        let wd = weight_decomposition(&rep, &c).unwrap();
        let polys = exceptional_polynomials(&rep, &c).unwrap();
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(p.degree(), Some((wd.d - 2 * i) * wd.layer_dims()[i]));
        }
        let mut tested = 0;
        for s in [
            int(1),
            int(2),
            int(3),
            Scalar::new(1, 2),
            Scalar::new(1, 3),
            int(5),
        ] {
            let t = (&s * &s).recip();
            if polys.iter().any(|p| p.eval(&t).is_zero()) {
                continue;
            }
            let oracle = td_irreducible_by_oracle(&rep, &s, &c, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(
                oracle,
                irreducible_as_td_module(&spec, &s, &c).unwrap(),
                "{spec:?} s={s}"
            );
            tested += 1;
        }
        assert!(tested >= 3, "{spec:?}");
    }
}
