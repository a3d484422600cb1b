use proptest::prelude::*;

use pel_core::exactlin::{rat, RatMatrix};
use pel_core::fixtures;
use pel_core::hodge::{hodge_type, HodgeCochar};
use pel_core::pelcheck::{factorize, validate, PelDatum};
use pel_core::repcalc::{decompose, irr_char, recompose, Constituent, RootDatum, TorusMap, WeightChar};

fn invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((-3i64..=3, 1i64..=3), n * n).prop_filter_map("singular", move |entries| {
        let data = entries.into_iter().map(|(p, q)| rat(p, q)).collect();
        let m = RatMatrix::from_vec(n, n, data).ok()?;
        m.inverse().ok().map(|_| m)
    })
}

fn worked(i: usize) -> PelDatum {
    match i {
        0 => fixtures::modular_curve_datum(),
        1 => fixtures::morita_datum(),
        2 => fixtures::gu11_datum(),
        _ => fixtures::quaternion_datum(),
    }
}

fn dim_of(i: usize) -> usize {
    worked(i).dim_v()
}

fn datum_and_basis() -> impl Strategy<Value = (usize, RatMatrix)> {
    (0usize..4).prop_flat_map(|i| (Just(i), invertible(dim_of(i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn validation_and_classification_ignore_the_basis((i, p) in datum_and_basis()) {
        let d = worked(i);
        let moved = d.change_basis(&p).unwrap();
        let (r0, r1) = (validate(&d), validate(&moved));
        prop_assert_eq!(r0.valid, r1.valid);
        prop_assert_eq!(r0.polarization_signature, r1.polarization_signature);
        prop_assert_eq!(factorize(&d).unwrap().labels(), factorize(&moved).unwrap().labels());
    }

    #[test]
    fn mutations_are_caught_in_any_basis(k in 0usize..6, seed in 0u64..1000) {
        let m = &fixtures::mutations()[k];
        let n = m.datum.dim_v();
        let p = RatMatrix::identity(n).add(&RatMatrix::from_vec(n, n, (0..n * n)
            .map(|t| if t == 1 && n > 1 { rat((seed % 5) as i64, 1) } else { rat(0, 1) }).collect()).unwrap()).unwrap();
        let got = validate(&m.datum.change_basis(&p).unwrap()).diagnostic.map(|d| d.code());
        prop_assert_eq!(got, Some(m.expected));
    }

    #[test]
    fn unitary_signature_is_recovered(a in 0usize..3, b in 0usize..3) {
        prop_assume!(a + b > 0);
        let f = factorize(&fixtures::unitary_datum(-1, a, b)).unwrap();
        prop_assert_eq!(f.unitary, vec![(a, b)]);
    }

    #[test]
    fn reversing_the_lines_keeps_the_signature(a in 1usize..3, b in 1usize..3) {
        let d = fixtures::unitary_datum(-1, a, b);
        let m = a + b;
        let mut p = RatMatrix::zeros(2 * m, 2 * m);
        for k in 0..m {
            for s in 0..2 {
                p[(2 * k + s, 2 * (m - 1 - k) + s)] = rat(1, 1);
            }
        }
        let f = factorize(&d.change_basis(&p).unwrap()).unwrap();
        prop_assert_eq!(f.unitary, vec![(a, b)]);
    }
}

fn c2_constituents() -> impl Strategy<Value = Vec<Constituent>> {
    prop::collection::btree_map((0i64..3, 0i64..3), -3i64..=3, 0..4).prop_map(|m| {
        m.into_iter()
            .filter(|((x, y), c)| x >= y && *c != 0)
            .map(|((x, y), c)| Constituent { highest: vec![x, y, 1], mult: c })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompose_inverts_recompose(mut parts in c2_constituents()) {
        let rd = RootDatum::parse("C2", 1).unwrap();
        let x = recompose(&rd, &parts).unwrap();
        let mut back = decompose(&rd, &x, false).unwrap();
        parts.sort_by(|a, b| b.highest.cmp(&a.highest));
        back.sort_by(|a, b| b.highest.cmp(&a.highest));
        prop_assert_eq!(back, parts);
    }

    #[test]
    fn restriction_is_a_ring_map(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3),
        l in (0i64..3, 0i64..3),
        k in (0i64..2, 0i64..2),
    ) {
        let rd = RootDatum::parse("C2", 1).unwrap();
        let lam = vec![l.0.max(l.1), l.0.min(l.1), 1];
        let kap = vec![k.0.max(k.1), k.0.min(k.1), 0];
        let x = irr_char(&rd, &lam).unwrap();
        let y = irr_char(&rd, &kap).unwrap();
        let f = TorusMap::new(rows).unwrap();
        let r = |c: &WeightChar| c.restrict(&f).unwrap();
        prop_assert_eq!(r(&x.tensor(&y).unwrap()), r(&x).tensor(&r(&y)).unwrap());
        prop_assert_eq!(r(&x.add(&y).unwrap()), r(&x).add(&r(&y)).unwrap());
        prop_assert_eq!(r(&x.dual()), r(&x).dual());
        prop_assert_eq!(r(&x).dim(), x.dim());
    }

    #[test]
    fn hodge_type_of_a_tensor_is_a_sumset(a in 0i64..3, b in 0i64..3) {
        let rd = RootDatum::parse("C2", 1).unwrap();
        let hc = HodgeCochar::standard(&rd).unwrap();
        let lam = vec![a.max(b), a.min(b), (a + b) % 2];
        let x = irr_char(&rd, &lam).unwrap();
        let s = rd.standard_char();
        let tx = hodge_type(&x, &hc).unwrap();
        let ts = hodge_type(&s, &hc).unwrap();
        let sum: std::collections::BTreeSet<(i64, i64)> =
            tx.iter().flat_map(|p| ts.iter().map(move |q| (p.0 + q.0, p.1 + q.1))).collect();
        prop_assert_eq!(hodge_type(&x.tensor(&s).unwrap(), &hc).unwrap(), sum);
    }
}
