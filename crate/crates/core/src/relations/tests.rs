use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::model::{Model, Value, DEFAULT_CAP};
use crate::syntax::Type;

/// All functions `[dom] -> [cod]` as explicit tables, in the same
/// little-endian order as element indices.
fn tables(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dom {
        let mut next = Vec::new();
        for v in 0..cod {
            for t in &out {
                let mut t = t.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    // reorder so that the first digit varies fastest
    out.sort_by_key(|t| t.iter().rev().fold(0, |acc, &d| acc * cod + d));
    out
}

/// Independent oracle for `S ⇒ R` quantifying over explicit tables.
fn exponential_oracle(s: &Relation, r: &Relation) -> Relation {
    let gs = tables(s.left(), r.left());
    let hs = tables(s.right(), r.right());
    let mut out = Relation::empty(gs.len(), hs.len());
    for (gi, g) in gs.iter().enumerate() {
        for (hi, h) in hs.iter().enumerate() {
            let ok = (0..s.left()).all(|x| (0..s.right()).all(|y| !s.contains(x, y) || r.contains(g[x], h[y])));
            if ok {
                out.insert(gi, hi);
            }
        }
    }
    out
}

fn collapse() -> PartialSurjection {
    PartialSurjection::new(1, vec![Some(0), Some(0)]).unwrap()
}

#[test]
fn relation_basics() {
    let r = Relation::from_pairs(2, 3, [(0, 2), (1, 0)]).unwrap();
    assert!(r.contains(0, 2) && r.contains(1, 0) && !r.contains(0, 0));
    assert_eq!(r.len(), 2);
    assert!(Relation::from_pairs(2, 2, [(2, 0)]).is_err());
    assert_eq!(Relation::all(2, 2).count(), 16);
    let j = r.to_json();
    assert_eq!(j.decode().unwrap(), r);
    assert_eq!(
        serde_json::to_string(&j).unwrap(),
        r#"{"q":2,"q_prime":3,"pairs":[[0,2],[1,0]]}"#
    );
}

#[test]
fn partial_surjection_validation_and_views() {
    assert!(PartialSurjection::new(2, vec![Some(0), Some(0)]).is_err());
    assert!(PartialSurjection::new(1, vec![Some(1)]).is_err());
    let f = PartialSurjection::new(2, vec![Some(1), None, Some(0)]).unwrap();
    let (pi1, pi2) = f.span();
    assert_eq!(pi1, vec![0, 2]);
    assert_eq!(pi2, vec![1, 0]);
    assert_eq!(PartialSurjection::from_relation(&f.to_relation()).unwrap(), f);
    let not_functional = Relation::from_pairs(1, 2, [(0, 0), (0, 1)]).unwrap();
    assert!(PartialSurjection::from_relation(&not_functional).is_err());
    assert_eq!(f.to_string(), "[3]->[2] (1 _ 0)");
    let j = f.to_json();
    assert_eq!(j.decode().unwrap(), f);
}

#[test]
fn enumeration_counts() {
    // [2] -> [1]: (_,0) (0,_) (0,0); [2] -> [2]: the two bijections
    assert_eq!(PartialSurjection::all(2, 1).len(), 3);
    assert_eq!(PartialSurjection::all(2, 2).len(), 2);
    assert_eq!(PartialSurjection::all(2, 0).len(), 1);
    assert_eq!(PartialSurjection::all(1, 2).len(), 0);
    // [3] -> [2]: surjections from subsets: 2 (size 2) * 3 + 6 (size 3)
    assert_eq!(PartialSurjection::all(3, 2).len(), 12);
    let all = PartialSurjection::all(2, 1);
    assert_eq!(all[0].map(), &[None, Some(0)]);
    assert_eq!(all[2].map(), &[Some(0), Some(0)]);
}

#[test]
fn canonical_maps() {
    let c = PartialSurjection::canonical(3, 2).unwrap();
    assert_eq!(c.map(), &[Some(0), Some(1), None]);
    assert!(PartialSurjection::canonical(1, 2).is_err());
    let p = PartialSurjection::coproduct_projection(2, 3, true);
    assert_eq!(p.map(), &[None, None, Some(0), Some(1), Some(2)]);
    let p = PartialSurjection::coproduct_projection(2, 3, false);
    assert_eq!(p.map(), &[Some(0), Some(1), None, None, None]);
}

#[test]
fn exponential_of_equality_is_equality() {
    let d = Relation::diagonal(2);
    let e = rel_exponential(&d, &d, DEFAULT_CAP).unwrap();
    assert_eq!(e, Relation::diagonal(4));
}

#[test]
fn exponential_over_empty_relation_is_full() {
    let e = rel_exponential(&Relation::empty(2, 2), &Relation::diagonal(2), DEFAULT_CAP).unwrap();
    assert_eq!(e, Relation::full(4, 4));
}

#[test]
fn exponential_of_collapse_matches_oracle() {
    let g = collapse().to_relation();
    let e = rel_exponential(&g, &g, DEFAULT_CAP).unwrap();
    assert_eq!(e, exponential_oracle(&g, &g));
    assert_eq!(e, Relation::full(4, 1));
}

#[test]
fn exponential_matches_oracle_on_random_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let s = Relation::random(2, 3, &mut rng);
        let r = Relation::random(3, 2, &mut rng);
        assert_eq!(
            rel_exponential(&s, &r, DEFAULT_CAP).unwrap(),
            exponential_oracle(&s, &r)
        );
    }
}

#[test]
fn exponential_respects_the_cap() {
    let d = Relation::diagonal(3);
    assert!(matches!(rel_exponential(&d, &d, 26), Err(Error::TooLarge { .. })));
    let id = PartialSurjection::identity(3);
    assert!(matches!(psurj_exponential(&id, &id, 26), Err(Error::TooLarge { .. })));
}

#[test]
fn psurj_exponential_examples() {
    let id = PartialSurjection::identity(2);
    assert_eq!(
        psurj_exponential(&id, &id, DEFAULT_CAP).unwrap(),
        PartialSurjection::identity(4)
    );
    let c = collapse();
    let e = psurj_exponential(&c, &c, DEFAULT_CAP).unwrap();
    assert_eq!((e.left(), e.right()), (4, 1));
    assert_eq!(e.map(), &[Some(0); 4]);
}

#[test]
fn exponentials_of_partial_surjections_exhaustively() {
    let mut checked = 0;
    for p in 0..=3 {
        for p2 in 0..=2.min(p) {
            for e in PartialSurjection::all(p, p2) {
                for q in 0..=3 {
                    for q2 in 0..=2.min(q) {
                        for f in PartialSurjection::all(q, q2) {
                            if q == 0 && p > 0 && p2 == 0 {
                                // empty source space, one-point target
                                assert!(matches!(
                                    psurj_exponential(&e, &f, DEFAULT_CAP),
                                    Err(Error::Precondition(_))
                                ));
                                let r = rel_exponential(&e.to_relation(), &f.to_relation(), DEFAULT_CAP).unwrap();
                                assert_eq!((r.left(), r.right(), r.len()), (0, 1, 0));
                                continue;
                            }
                            let fast = psurj_exponential(&e, &f, DEFAULT_CAP).unwrap();
                            let slow = rel_exponential(&e.to_relation(), &f.to_relation(), DEFAULT_CAP).unwrap();
                            assert_eq!(fast.to_relation(), slow, "{e} => {f}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn logical_relation_membership_examples() {
    let m2 = Model::new(2);
    let m1 = Model::new(1);
    let d = Relation::diagonal(2);
    assert!(logical_relation_member(&Type::Base, &d, &m2, &m2, &Value::Base(1), &Value::Base(1)).unwrap());
    assert!(!logical_relation_member(&Type::Base, &d, &m2, &m2, &Value::Base(0), &Value::Base(1)).unwrap());

    let swap = Value::from_base_table(&[1, 0]);
    let id1 = Value::from_base_table(&[0]);
    let g = collapse().to_relation();
    assert!(logical_relation_member(&Type::endo(), &g, &m2, &m1, &swap, &id1).unwrap());
    // with a partial graph only the defined point constrains
    let half = PartialSurjection::new(1, vec![Some(0), None]).unwrap().to_relation();
    assert!(logical_relation_member(&Type::endo(), &half, &m2, &m1, &swap, &id1).is_ok_and(|b| !b));
    assert!(LogicalRelation::new(d, &m2, &m1).is_err());
}

#[test]
fn logical_relation_of_psurj_examples() {
    let m2 = Model::new(2);
    let m1 = Model::new(1);
    let c = collapse();
    assert_eq!(logical_relation_of_psurj(&Type::Base, &c, &m2, &m1).unwrap(), c);
    assert_eq!(
        logical_relation_of_psurj(&Type::endo(), &c, &m2, &m1).unwrap(),
        psurj_exponential(&c, &c, DEFAULT_CAP).unwrap()
    );
}

fn small_types() -> Vec<Type> {
    let o = Type::Base;
    vec![
        o.clone(),
        Type::endo(),
        Type::arrows([o.clone(), o.clone()], o.clone()),
        Type::arrow(Type::endo(), o.clone()),
        Type::church(1),
        Type::arrow(Type::endo(), Type::endo()),
        Type::product(o.clone(), Type::endo()),
    ]
}

#[test]
fn lifted_partial_surjections_are_partial_surjections() {
    for q in 1..=2u32 {
        for q2 in 1..=q {
            let (m, m2) = (Model::new(q), Model::new(q2));
            for f in PartialSurjection::all(q as usize, q2 as usize) {
                for ty in small_types() {
                    let lifted = logical_relation_of_psurj(&ty, &f, &m, &m2).unwrap();
                    // agrees with the logical relation of the graph
                    let mut lr = LogicalRelation::new(f.to_relation(), &m, &m2).unwrap();
                    assert_eq!(lifted.to_relation(), lr.materialize(&ty).unwrap(), "{ty} {f}");
                }
            }
        }
    }
}

#[test]
fn logical_relation_of_the_diagonal_is_the_diagonal() {
    for q in 1..=2u32 {
        let m = Model::new(q);
        for ty in small_types() {
            let mut lr = LogicalRelation::new(Relation::diagonal(q as usize), &m, &m).unwrap();
            let n = m.checked_size(&ty).unwrap();
            assert_eq!(lr.materialize(&ty).unwrap(), Relation::diagonal(n), "{ty}");
        }
    }
    // an order-3 type, whose denotation at q=2 has 2^16 points: check the
    // diagonal pointwise on a sample
    let ty = Type::arrow(Type::arrow(Type::endo(), Type::Base), Type::Base);
    let m = Model::new(2);
    let pts = m.points(&ty).unwrap();
    let mut lr = LogicalRelation::new(Relation::diagonal(2), &m, &m).unwrap();
    for i in (0..pts.len()).step_by(997) {
        assert!(lr.member(&ty, &pts[i], &pts[i]).unwrap());
        let j = (i * 31 + 17) % pts.len();
        if j != i {
            assert!(!lr.member(&ty, &pts[i], &pts[j]).unwrap());
        }
    }
}
