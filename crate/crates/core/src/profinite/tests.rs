use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::definability::DEFAULT_BUDGET;
use crate::syntax::{church_term, parse_type, Alphabet, NormalForms, Word};

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn term(s: &str) -> Term {
    parse_closed(s).unwrap().0
}

fn endo_table(t: &[u32]) -> Value {
    Value::from_base_table(t)
}

fn sample_terms(rng: &mut ChaCha8Rng, n: usize) -> Vec<Term> {
    let mut forms = NormalForms::new();
    let mut pool = Vec::new();
    for s in [
        "o -> o -> o",
        "(o -> o) -> o -> o",
        "(o -> o) -> (o -> o) -> o -> o",
        "o -> (o -> o) -> o",
    ] {
        pool.extend(forms.closed_up_to(&ty(s), 9));
    }
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
}

#[test]
fn iota_of_identity() {
    let levels = Levels::new(3, DEFAULT_CAP);
    let id = iota(&term(r"\x:o. x"), &levels).unwrap();
    for q in 1..=3 {
        let table: Vec<u32> = (0..q).collect();
        assert_eq!(id.component(q), &endo_table(&table));
    }
    assert!(id.evidence().iter().all(|e| matches!(e, Evidence::Witness(_))));
}

#[test]
fn iota_of_a_church_word() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let ab = church_term(&Word(vec![0, 1]), 2).unwrap();
    let theta = iota(&ab, &levels).unwrap();
    let m = levels.at(2);
    let pts = m.points(&Type::endo()).unwrap();
    for fa in pts.iter() {
        for fb in pts.iter() {
            for c in 0..2 {
                let got = m.apply(&m.apply(&m.apply(theta.component(2), fa), fb), &Value::Base(c));
                let expected = m.apply(fb, &m.apply(fa, &Value::Base(c)));
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn iota_is_natural() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let levels = Levels::new(3, DEFAULT_CAP);
    for t in sample_terms(&mut rng, 50) {
        let mut theta = iota(&t, &levels).unwrap();
        let c = theta.certify_natural().unwrap();
        assert!(c.holds(), "{}", print(&t));
        assert!(theta.is_checked_natural());
    }
}

#[test]
fn naturality_of_projection_families() {
    let a = ty("o -> o -> o");
    let levels = Levels::new(3, DEFAULT_CAP);
    let p1 = |q| levels.at(q).eval(&term(r"\x:o. \y:o. x"), &mut Vec::new()).unwrap();
    let p2 = |q| levels.at(q).eval(&term(r"\x:o. \y:o. y"), &mut Vec::new()).unwrap();
    let two = Levels::new(2, DEFAULT_CAP);
    for top in [p1(2), p2(2)] {
        let theta = Approximant::new(&a, &two, vec![p1(1), top], DEFAULT_BUDGET).unwrap();
        assert!(check_natural(&theta).unwrap().holds());
    }
    let mixed = Approximant::new(&a, &levels, vec![p1(1), p1(2), p2(3)], DEFAULT_BUDGET).unwrap();
    let c = check_natural(&mixed).unwrap();
    let fail = c.counterexample.unwrap();
    assert_eq!((fail.q, fail.q_prime), (3, 2));
    assert_eq!((fail.f.left(), fail.f.right()), (3, 2));
    assert!(!check_parametric(&mixed, Sampling::default()).unwrap().holds());
}

#[test]
fn non_definable_components_are_rejected() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let id1 = endo_table(&[0]);
    let swap = endo_table(&[1, 0]);
    let err = Approximant::new(&Type::endo(), &levels, vec![id1.clone(), swap.clone()], DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, Error::NotDefinable { q: 2, .. }));
    let bad = Approximant::with_evidence(
        &Type::endo(),
        &levels,
        vec![id1, swap],
        vec![Evidence::Deferred, Evidence::Witness(term(r"\x:o. x"))],
    );
    assert!(matches!(bad, Err(Error::NotDefinable { q: 2, .. })));
}

#[test]
fn parametricity_of_iota() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let levels = Levels::new(2, DEFAULT_CAP);
    for t in sample_terms(&mut rng, 20) {
        let c = check_parametric(&iota(&t, &levels).unwrap(), Sampling::default()).unwrap();
        assert!(c.holds());
        assert!(c.exhaustive);
    }
    let three = Levels::new(3, DEFAULT_CAP);
    let c = check_parametric(
        &iota(&term(r"\x:o. \y:o. y"), &three).unwrap(),
        Sampling { samples: 64, seed: 1 },
    )
    .unwrap();
    assert!(c.holds());
    assert!(!c.exhaustive);
}

#[test]
fn natural_and_parametric_families_coincide() {
    let levels = Levels::new(2, DEFAULT_CAP);
    for s in [
        "o -> o -> o",
        "(o -> o) -> o -> o",
        "o -> o -> o -> o",
        "o -> (o -> o) -> o",
    ] {
        let families = definable_families(&ty(s), &levels, DEFAULT_BUDGET).unwrap();
        assert!(!families.is_empty());
        for theta in &families {
            let n = check_natural(theta).unwrap().holds();
            let p = check_parametric(theta, Sampling::default()).unwrap().holds();
            assert_eq!(n, p, "{s}");
        }
    }
}

#[test]
fn composition_matches_syntax() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let a = Type::church(1);
    let f = term(r"\u:(o -> o) -> o -> o. \f:o -> o. \c:o. u f (f c)");
    let g = term(r"\u:(o -> o) -> o -> o. \f:o -> o. \c:o. u (\x:o. u f x) c");
    let composite = compose(&iota(&f, &levels).unwrap(), &iota(&g, &levels).unwrap()).unwrap();
    let syntactic = iota(&Term::compose(&f, &g, a.clone()), &levels).unwrap();
    assert_eq!(composite, syntactic);
    match &composite.evidence()[1] {
        Evidence::Witness(w) => assert_eq!(levels.at(2).eval(w, &mut Vec::new()).unwrap(), *composite.component(2)),
        Evidence::Deferred => panic!("composite of witnessed families has a witness"),
    }
    let id = iota(&Term::identity(a.clone()), &levels).unwrap();
    let theta = iota(&f, &levels).unwrap();
    assert_eq!(compose(&id, &theta).unwrap(), theta);
    assert_eq!(compose(&theta, &id).unwrap(), theta);
    assert!(compose(&theta, &iota(&term(r"\x:o. x"), &levels).unwrap()).is_err());
}

#[test]
fn composition_is_associative() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let a = Type::church(1);
    let endo = Type::arrow(a.clone(), a.clone());
    let pool = NormalForms::new().closed_up_to(&endo, 13);
    assert!(pool.len() > 5);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let pick = |rng: &mut ChaCha8Rng| iota(&pool[rng.gen_range(0..pool.len())], &levels).unwrap();
        let (f, g, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(check_natural(&left).unwrap().holds());
    }
}

#[test]
fn applying_terms() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let succ = term(r"\u:(o -> o) -> o -> o. \f:o -> o. \c:o. u f (f c)");
    for k in 0..4 {
        let theta = iota(&church_term(&Word(vec![0; k]), 1).unwrap(), &levels).unwrap();
        let next = apply_term_to_approximant(&succ, &theta).unwrap();
        let expected = iota(&church_term(&Word(vec![0; k + 1]), 1).unwrap(), &levels).unwrap();
        assert_eq!(next, expected);
        assert!(check_natural(&next).unwrap().holds());
        let same = apply_term_to_approximant(&Term::identity(Type::church(1)), &theta).unwrap();
        assert_eq!(same, theta);
    }
    let theta = iota(&term(r"\x:o. x"), &levels).unwrap();
    assert!(apply_term_to_approximant(&succ, &theta).is_err());
}

#[test]
fn omega_of_endofunctions() {
    let m = Model::new(3);
    assert_eq!(
        omega_element(&m, &Type::Base, &endo_table(&[0, 0, 2])).unwrap(),
        endo_table(&[0, 0, 2])
    );
    assert_eq!(
        omega_element(&Model::new(2), &Type::Base, &endo_table(&[1, 0])).unwrap(),
        endo_table(&[0, 1])
    );
    assert_eq!(
        omega_element(&m, &Type::Base, &endo_table(&[1, 2, 0])).unwrap(),
        endo_table(&[0, 1, 2])
    );
    // 0 -> 1 -> 2 -> 2: index 2, period 1
    let (e, index, period) = idempotent_power(&endo_table(&[1, 2, 2]), |a, b| m.compose(a, b));
    assert_eq!((index, period), (2, 1));
    assert_eq!(e, endo_table(&[2, 2, 2]));
}

#[test]
fn omega_is_an_idempotent_power() {
    for q in 1..=3u32 {
        let m = Model::new(q);
        for f in m.points(&Type::endo()).unwrap().iter() {
            let e = omega_element(&m, &Type::Base, f).unwrap();
            assert_eq!(m.compose(&e, &e), e);
            let mut p = f.clone();
            let mut found = p == e;
            for _ in 0..12 {
                p = m.compose(&p, f);
                found |= p == e;
            }
            assert!(found);
        }
    }
}

#[test]
fn omega_family_is_natural() {
    let levels = Levels::new(3, DEFAULT_CAP);
    let omega = omega_approximant(&Type::Base, &levels).unwrap();
    assert_eq!(omega.component(1), &Value::fun(vec![endo_table(&[0])]));
    assert!(omega.evidence().iter().all(|e| *e == Evidence::Deferred));
    let c = check_natural(&omega).unwrap();
    assert!(c.holds());
    // 1 + 2 + 2 + 3 + 12 + 12 pairs (q, q') with their surjections
    assert!(c.checked > 20);
    let id = iota(&term(r"\x:o. x"), &levels).unwrap();
    assert_eq!(apply_omega(&id).unwrap(), id);
}

#[test]
fn omega_idempotency_on_numerals() {
    let levels = Levels::new(3, DEFAULT_CAP);
    let a = Type::endo();
    let endo_a = Type::arrow(a.clone(), a.clone());
    for k in 0..6 {
        let m = iota(&church_term(&Word(vec![0; k]), 1).unwrap(), &levels).unwrap();
        assert_eq!(m.ty(), &endo_a);
        let om = apply_omega(&m).unwrap();
        assert_eq!(compose(&om, &om).unwrap(), om);
        assert!(check_natural(&om).unwrap().holds());
    }
}

#[test]
fn word_omega_examples() {
    let levels = Levels::new(3, DEFAULT_CAP);
    let a = iota(&church_term(&Word(vec![0]), 1).unwrap(), &levels).unwrap();
    let aw = word_omega(&a).unwrap();
    let m = levels.at(3);
    let cycle = endo_table(&[1, 2, 0]);
    assert_eq!(m.apply(aw.component(3), &cycle), endo_table(&[0, 1, 2]));
    assert!(check_natural(&aw).unwrap().holds());

    let eps = iota(&church_term(&Word::empty(), 2).unwrap(), &levels).unwrap();
    assert_eq!(word_omega(&eps).unwrap(), eps);

    // ω-powers are idempotent under concatenation
    let alpha = Alphabet::from_chars("ab").unwrap();
    let concat = church_concat_term(2);
    for w in ["ab", "b", "aab"] {
        let theta = iota(
            &church_term(&alpha.parse_word(w).unwrap(), 2).unwrap(),
            &Levels::new(2, DEFAULT_CAP),
        )
        .unwrap();
        let om = word_omega(&theta).unwrap();
        let twice = apply_term(&concat, &[&om, &om], om.levels()).unwrap();
        assert_eq!(twice, om, "{w}");
        assert!(check_natural(&om).unwrap().holds());
    }
}

#[test]
fn concatenation_term() {
    let levels = Levels::new(2, DEFAULT_CAP);
    let alpha = Alphabet::from_chars("ab").unwrap();
    let concat = church_concat_term(2);
    assert_eq!(
        typecheck(&[], &concat).unwrap(),
        Type::arrows([Type::church(2), Type::church(2)], Type::church(2))
    );
    let u = iota(&church_term(&alpha.parse_word("ab").unwrap(), 2).unwrap(), &levels).unwrap();
    let v = iota(&church_term(&alpha.parse_word("bba").unwrap(), 2).unwrap(), &levels).unwrap();
    let uv = apply_term(&concat, &[&u, &v], &levels).unwrap();
    let expected = iota(&church_term(&alpha.parse_word("abbba").unwrap(), 2).unwrap(), &levels).unwrap();
    assert_eq!(uv, expected);
    match &uv.evidence()[1] {
        Evidence::Witness(w) => assert_eq!(w, &church_term(&alpha.parse_word("abbba").unwrap(), 2).unwrap()),
        Evidence::Deferred => panic!(),
    }
}

#[test]
fn congruence_and_separation() {
    let p1 = term(r"\x:o. \y:o. x");
    let p2 = term(r"\x:o. \y:o. y");
    assert!(congruent(&Model::new(1), &p1, &p2).unwrap());
    assert!(!congruent(&Model::new(2), &p1, &p2).unwrap());
    assert_eq!(
        separate(&p1, &p2, 3, DEFAULT_CAP).unwrap(),
        Separation::Separated { q: 2 }
    );
    let one = term(r"\f:o -> o. \x:o. f x");
    let two = term(r"\f:o -> o. \x:o. f (f x)");
    assert_eq!(
        separate(&one, &two, 4, DEFAULT_CAP).unwrap(),
        Separation::Separated { q: 2 }
    );
    let redex = term(r"(\g:(o -> o) -> o -> o. g) (\f:o -> o. \x:o. f (f x))");
    assert_eq!(
        separate(&redex, &two, 3, DEFAULT_CAP).unwrap(),
        Separation::NotSeparated { max_q: 3 }
    );
    assert!(congruent(&Model::new(2), &p1, &one).is_err());
}

#[test]
fn congruence_is_respected_by_composition() {
    let a = Type::church(1);
    let endo = Type::arrow(a.clone(), a.clone());
    let pool = NormalForms::new().closed_up_to(&endo, 13);
    let m = Model::new(2);
    let mut classes: std::collections::HashMap<Value, Vec<Term>> = std::collections::HashMap::new();
    for t in pool {
        classes.entry(m.eval(&t, &mut Vec::new()).unwrap()).or_default().push(t);
    }
    let classes: Vec<Vec<Term>> = classes.into_values().filter(|c| c.len() > 1).collect();
    assert!(!classes.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let c1 = &classes[rng.gen_range(0..classes.len())];
        let c2 = &classes[rng.gen_range(0..classes.len())];
        let (f, f2) = (&c1[rng.gen_range(0..c1.len())], &c1[rng.gen_range(0..c1.len())]);
        let (g, g2) = (&c2[rng.gen_range(0..c2.len())], &c2[rng.gen_range(0..c2.len())]);
        assert!(congruent(&m, f, f2).unwrap());
        let lhs = Term::compose(f, g, a.clone());
        let rhs = Term::compose(f2, g2, a.clone());
        assert!(congruent(&m, &lhs, &rhs).unwrap());
    }
}

#[test]
fn json_round_trip() {
    let levels = Levels::new(3, DEFAULT_CAP);
    let theta = iota(&term(r"\f:o -> o. \x:o. f (f x)"), &levels).unwrap();
    let j = theta.to_json();
    assert_eq!(j.k, 3);
    let back = j.decode(&levels, DEFAULT_BUDGET).unwrap();
    assert_eq!(back, theta);
    let text = serde_json::to_string(&j).unwrap();
    let parsed: ApproximantJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, j);
    // without witnesses the components are looked up in Def
    let mut bare = j.clone();
    bare.witnesses.clear();
    assert_eq!(bare.decode(&levels, DEFAULT_BUDGET).unwrap(), theta);
    let om = omega_approximant(&Type::Base, &levels).unwrap();
    assert_eq!(om.to_json().decode(&levels, DEFAULT_BUDGET).unwrap(), om);
}
