use sigma_core::builders::builtin;
use sigma_core::report::{cat_upper_bound, promote, sphere_scan, Claim, PromotionFlags};
use sigma_core::{Character, CoeffRing};

fn xi(v: i64) -> Character {
    Character::from_ints(&[v]).unwrap()
}

#[test]
fn circle_scan_and_category() {
    let c = builtin("circle", CoeffRing::Integers).unwrap();
    let r = sphere_scan("circle", &c, 1, None, None).unwrap();
    assert!(r.verdicts.iter().all(|v| v.is_yes()));
    assert!(r.conclusions.iter().any(|c| matches!(c.claim, Claim::CoverFiniteType { k: 1, homotopical: true, .. })));
    let b = cat_upper_bound(&promote(&r, &PromotionFlags::default()), &xi(1)).unwrap();
    assert_eq!(b.bound, 0);
}

#[test]
fn bs12_scan_promotion_and_bounds() {
    let c = builtin("bs12", CoeffRing::Integers).unwrap();
    let r = sphere_scan("bs12", &c, 1, None, None).unwrap();
    assert!(r.verdicts_for(&xi(-1)).all(|(_, v)| v.is_yes()));
    assert!(r.verdicts_for(&xi(1)).all(|(_, v)| v.is_no()));
    assert!(r.conclusions.iter().any(|c| matches!(c.claim, Claim::CoverNotFiniteType { .. })));
    let p = promote(&r, &PromotionFlags::default());
    let homotopical: Vec<_> = p
        .conclusions
        .iter()
        .filter_map(|c| match &c.claim {
            Claim::InSigmaHomotopical { xi, k } => Some((xi.clone(), *k)),
            _ => None,
        })
        .collect();
    assert_eq!(homotopical, vec![(xi(-1), 1)]);
    assert_eq!(cat_upper_bound(&p, &xi(1)).unwrap().bound, 1);
    let trivial = cat_upper_bound(&p, &xi(-1)).unwrap();
    assert_eq!(trivial.bound, 2);
    assert!(trivial.note.is_some());
    for c in &p.conclusions {
        assert!(!c.verdicts.is_empty() && !c.rules.is_empty());
    }
}

#[test]
fn trefoil_promotion_needs_the_assertion() {
    let c = builtin("trefoil", CoeffRing::Integers).unwrap();
    let r = sphere_scan("trefoil", &c, 2, None, None).unwrap();
    assert!(r.verdicts.iter().all(|v| v.is_yes()));
    let count = |rep: &sigma_core::report::SigmaReport| {
        rep.conclusions.iter().filter(|c| matches!(c.claim, Claim::InSigmaHomotopical { k: 2, .. })).count()
    };
    assert_eq!(count(&promote(&r, &PromotionFlags::default())), 0);
    let flags = PromotionFlags { sigma2_pi1_asserted: true, connectivity: None };
    let p = promote(&r, &flags);
    assert_eq!(count(&p), 2);
    assert_eq!(cat_upper_bound(&p, &xi(1)).unwrap().bound, 0);
}

#[test]
fn only_no_verdicts_leave_report_unchanged() {
    let c = builtin("wedge-s1-s2", CoeffRing::Rationals).unwrap();
    let r = sphere_scan("wedge", &c, 2, None, None).unwrap();
    assert!(r.verdicts.iter().all(|v| v.is_no()));
    assert_eq!(promote(&r, &PromotionFlags::default()), r);
}

#[test]
fn missing_direction_is_an_error() {
    let c = builtin("circle", CoeffRing::Integers).unwrap();
    let r = sphere_scan("circle", &c, 1, Some(vec![xi(1)]), None).unwrap();
    assert!(cat_upper_bound(&r, &xi(1)).is_err());
}
