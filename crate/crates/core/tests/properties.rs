use packinglab::coxeter::{enumerate_clusters, validate_cluster, ClusterOptions};
use packinglab::exactnum::Sign;
use packinglab::geometry::{form_matrix, gram, inner, reflect, reflection_matrix, sphere};
use packinglab::groupwords::{eval_word_rows, parse_word, Word};
use packinglab::integrality::find_integral_rescaling;
use packinglab::lobachevsky::{lobachevsky, reduce};
use packinglab::orbit::{generate_packing, generate_superpacking, split, Limits};
use packinglab::{catalog, InversiveVector, QMatrix, QNum};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = QNum> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| QNum::from_ratio(n, d))
}

fn qnum() -> impl Strategy<Value = QNum> {
    prop::collection::vec((rat(), prop::sample::select(vec![1u64, 2, 3, 5, 6, 10])), 0..4).prop_map(|ts| {
        ts.into_iter().fold(QNum::zero(), |acc, (c, k)| &acc + &(&c * &QNum::sqrt(k)))
    })
}

fn circle(n: usize) -> impl Strategy<Value = InversiveVector> {
    (prop::collection::vec(rat(), n), 1i64..=9, 1i64..=5, any::<bool>(), any::<bool>()).prop_map(
        |(c, rn, rd, irr, flip)| {
            let mut r = QNum::from_ratio(rn, rd);
            if irr {
                r = &r * &QNum::sqrt(2);
            }
            let v = sphere(&c, &r).unwrap();
            if flip {
                -&v
            } else {
                v
            }
        },
    )
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn field_axioms(x in qnum(), y in qnum(), z in qnum()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_roundtrip(x in qnum()) {
        prop_assert_eq!(QNum::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn sign_agrees_with_float(x in qnum()) {
        let f = x.to_f64();
        match x.sign() {
            Sign::Zero => prop_assert!(x.is_zero()),
            Sign::Positive => prop_assert!(f > -1e-9),
            Sign::Negative => prop_assert!(f < 1e-9),
        }
        let opposite = match x.sign() {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        };
        prop_assert_eq!((-&x).sign(), opposite);
    }

    #[test]
    fn reflection_involution(m in circle(2), v in circle(2)) {
        let r = reflection_matrix(&m).unwrap();
        prop_assert_eq!(r.checked_mul(&r).unwrap(), QMatrix::identity(4));
        let q = form_matrix(2);
        prop_assert_eq!(r.checked_mul(&q).unwrap().checked_mul(&r.transpose()).unwrap(), q);
        let w = reflect(&v, &m).unwrap();
        prop_assert_eq!(w.norm(), v.norm());
        prop_assert_eq!(reflect(&w, &m).unwrap(), v.clone());
        prop_assert_eq!(inner(&w, &m).unwrap(), -&inner(&v, &m).unwrap());
    }

    #[test]
    fn reflection_3d(m in circle(3), v in circle(3)) {
        let w = reflect(&v, &m).unwrap();
        prop_assert!(w.is_normalized());
        prop_assert_eq!(reflect(&w, &m).unwrap(), v);
    }

    #[test]
    fn word_identities(a in circle(2), b in circle(2), c in circle(2)) {
        let base = [a, b, c];
        let ev = |s: &str| eval_word_rows(&parse_word(s).unwrap(), &base).unwrap();
        prop_assert_eq!(ev("1.1.2"), base[1].clone());
        prop_assert_eq!(ev("(1.2).3"), ev("1.2.1.3"));
        prop_assert_eq!(ev("~2"), -&base[1]);
    }

    #[test]
    fn word_text_roundtrip(ix in prop::collection::vec(1usize..20, 1..8)) {
        let text = ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
        let w: Word = text.parse().unwrap();
        prop_assert_eq!(w.to_string(), text);
    }

    #[test]
    fn gram_symmetric(vs in prop::collection::vec(circle(2), 2..6)) {
        let g = gram(&vs).unwrap();
        prop_assert_eq!(g.transpose(), g.clone());
        for i in 0..vs.len() {
            prop_assert_eq!(g.get(i, i), &QNum::from_int(-1));
        }
    }

    #[test]
    fn rescaling_clears_denominators(ns in prop::collection::vec((-30i64..30, 1i64..12), 1..6), k in prop::sample::select(vec![1u64, 2, 3])) {
        let s = QNum::sqrt(k);
        let bends: Vec<QNum> = ns.iter().map(|&(n, d)| &QNum::from_ratio(n, d) * &s).collect();
        let l = find_integral_rescaling(&bends).unwrap();
        for b in &bends {
            prop_assert!(b.checked_div(&l).unwrap().is_integer(), "{} / {}", b, l);
        }
    }

    #[test]
    fn lobachevsky_symmetries(t in 0.01f64..3.13) {
        let a = lobachevsky(t, 1e-10);
        prop_assert!((a + lobachevsky(-t, 1e-10)).abs() < 1e-8);
        prop_assert!((a - lobachevsky(t + std::f64::consts::PI, 1e-10)).abs() < 1e-8);
        prop_assert!(reduce(t) >= 0.0 && reduce(t) < std::f64::consts::PI);
    }
}

#[test]
fn enumerated_clusters_validate() {
    for id in catalog::list_builtin() {
        let e = catalog::get_builtin(id).unwrap();
        if e.config.len() > 14 {
            continue;
        }
        let g = e.config.gram();
        for c in enumerate_clusters(&g, ClusterOptions::default()).unwrap() {
            assert!(validate_cluster(&g, &c).unwrap().verdict, "{} {:?}", id, c);
        }
    }
}

#[test]
fn orbit_is_closed_and_unique() {
    let e = catalog::get_builtin("bi1").unwrap();
    let (c, co) = split(&e.config, &[e.config.index_of("3").unwrap()]).unwrap();
    let o = generate_packing(&c, &co, &Limits::generations(7)).unwrap();
    let keys: std::collections::BTreeSet<_> = o.circles.iter().map(|c| c.vector.key()).collect();
    assert_eq!(keys.len(), o.len());
    for w in o.circles.iter().filter(|c| c.generation < 7) {
        for m in &co {
            let r = reflect(&w.vector, m).unwrap();
            assert!(o.contains(&r), "{} through {}", w.word, m);
        }
    }
    let s = generate_superpacking(&c, &co, &Limits::generations(4)).unwrap();
    for v in o.circles.iter().filter(|c| c.generation <= 4) {
        assert!(s.contains(&v.vector));
    }
}

#[test]
fn packing_circles_do_not_overlap() {
    use rand::{Rng, SeedableRng};
    for (id, label, gens) in [("bi1", "3", 10), ("d3n3", "6", 5), ("d3n11", "23", 3)] {
        let e = catalog::get_builtin(id).unwrap();
        let (c, co) = split(&e.config, &[e.config.index_of(label).unwrap()]).unwrap();
        let o = generate_packing(&c, &co, &Limits::generations(gens)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let i = rng.gen_range(0..o.len());
            let j = rng.gen_range(0..o.len());
            if i == j {
                continue;
            }
            let g = inner(&o.circles[i].vector, &o.circles[j].vector).unwrap();
            let d = &g - &QNum::one();
            assert!(d.is_zero() || d.sign() == Sign::Positive, "{}: {} and {} give {}", id, o.circles[i].word, o.circles[j].word, g);
        }
    }
}

#[test]
fn bounded_rational_words() {
    use packinglab::integrality::check_bounded_rational;
    let e = catalog::get_builtin("bi1").unwrap();
    let (_, co) = split(&e.config, &[e.config.index_of("3").unwrap()]).unwrap();
    let basis = packinglab::SquareConfigBasis::new(catalog::get_builtin("bi1-orbit-basis").unwrap().config.rows().to_vec()).unwrap();
    let rep = check_bounded_rational(&basis, &co, 200, 5, 11).unwrap();
    assert!(rep.ok, "{:?}", rep.denominators);
    assert_eq!(rep.words.len(), 200);
}
