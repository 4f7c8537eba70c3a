use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigma_core::builders::mapping_torus::{circle_with_degree, mapping_torus};
use sigma_core::builders::presentation::{presentation_complex, PresentationInput};
use sigma_core::builders::{builtin, random_complex, RandomShape, BUILTIN_NAMES};
use sigma_core::certificate::verify_certificate;
use sigma_core::decide::sigma_membership;
use sigma_core::matrix::Matrix;
use sigma_core::ring::int;
use sigma_core::valuation::Valuation;
use sigma_core::{novikov_invert, Character, CoeffRing, Error, GroupRingElem, InnerProduct, LatticePoint};

fn elem(rank: usize) -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, rank), -4i64..=4), 0..5).prop_map(move |terms| {
        GroupRingElem::from_terms(
            CoeffRing::Integers,
            rank,
            terms.into_iter().map(|(g, c)| (LatticePoint::new(g), int(c))),
        )
        .unwrap()
    })
}

fn character(rank: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(-3i64..=3, rank)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| Character::from_ints(&v).unwrap())
}

fn source(seed: u64) -> impl FnMut(u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |n| rng.gen_range(0..n)
}

proptest! {
    #[test]
    fn ring_axioms(a in elem(2), b in elem(2), c in elem(2)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(a in elem(2), b in elem(2), xi in character(2)) {
        if let (Some(va), Some(vb)) = (a.valuation(&xi), b.valuation(&xi)) {
            prop_assert_eq!((&a * &b).valuation(&xi), Some(va + vb));
            if let Some(vs) = (&a + &b).valuation(&xi) {
                prop_assert!(vs >= va.min(vb));
            }
        }
    }

    #[test]
    fn novikov_inverse_is_exact_up_to_the_window(
        low in -2i64..=2,
        tail in prop::collection::vec(-3i64..=3, 0..4),
        unit in prop_oneof![Just(1i64), Just(-1i64)],
        w in 1i64..12,
    ) {
        let mut coeffs = vec![unit];
        coeffs.extend(tail);
        let x = GroupRingElem::laurent(CoeffRing::Integers, low, &coeffs);
        let xi = Character::from_ints(&[1]).unwrap();
        let inv = novikov_invert(&x, &xi, w).unwrap();
        let prod = (&x * &inv.terms).truncate_above(&xi, w);
        prop_assert_eq!(prod, GroupRingElem::one(CoeffRing::Integers, 1));
    }

    #[test]
    fn diam_matches_pairwise_brute_force(a in elem(2), b in elem(2)) {
        let metric = InnerProduct::identity(2);
        let mut best = int(0);
        for g in a.support() {
            for h in b.support() {
                let e: Vec<i64> = g.exponents().iter().zip(h.exponents()).map(|(x, y)| x - y).collect();
                best = best.max(int(e.iter().map(|x| x * x).sum()));
            }
        }
        prop_assert_eq!(GroupRingElem::diam_sq(&a, &b, &metric), best);
    }

    #[test]
    fn fox_boundaries_compose_to_zero(
        words in prop::collection::vec((prop::collection::vec((0usize..3, any::<bool>()), 1..4),
                                        prop::collection::vec((0usize..3, any::<bool>()), 1..4)), 1..3),
        rank in 1usize..=2,
    ) {
        let gens = ["a", "b", "c"];
        let letter = |&(g, inv): &(usize, bool)| if inv { format!("{}^-1", gens[g]) } else { gens[g].to_string() };
        let inverse = |w: &[(usize, bool)]| w.iter().rev().map(|&(g, i)| letter(&(g, !i))).collect::<String>();
        // commutators always vanish in the abelian quotient
        let relators: Vec<String> = words
            .iter()
            .map(|(u, v)| {
                let us: String = u.iter().map(letter).collect();
                let vs: String = v.iter().map(letter).collect();
                format!("{us}{vs}{}{}", inverse(u), inverse(v))
            })
            .collect();
        let rels: Vec<&str> = relators.iter().map(String::as_str).collect();
        let assignment = if rank == 1 {
            vec![LatticePoint::t(1), LatticePoint::t(2), LatticePoint::t(-1)]
        } else {
            vec![LatticePoint::new(vec![1, 0]), LatticePoint::new(vec![0, 1]), LatticePoint::new(vec![1, -1])]
        };
        let p = PresentationInput::new(&gens, &rels, assignment).unwrap();
        let c = presentation_complex(&p, CoeffRing::Integers).unwrap();
        let dd = c.boundary(1).mul(&c.boundary(2)).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn standard_valuation_satisfies_the_boundary_axiom(seed in any::<u64>(), deck in 1usize..=2, xi in character(2)) {
        let c = random_complex(&mut source(seed), CoeffRing::Integers, &RandomShape::small(deck));
        let xi = Character::from_ints(&xi.coeffs()[..deck]).unwrap_or(Character::from_ints(&vec![1; deck]).unwrap());
        prop_assert_eq!(Valuation::standard(&c, &xi).boundary_axiom_violation(&c), None);
    }

    #[test]
    fn integral_yes_implies_rational_yes(seed in any::<u64>(), sign in prop_oneof![Just(1i64), Just(-1i64)], k in 0usize..=2) {
        let c = random_complex(&mut source(seed), CoeffRing::Integers, &RandomShape::small(1));
        let xi = Character::from_ints(&[sign]).unwrap();
        let vz = sigma_membership(&c, &xi, k, None).unwrap();
        if vz.is_yes() {
            let cq = c.tensor_coefficients(CoeffRing::Rationals).unwrap();
            prop_assert!(sigma_membership(&cq, &xi, k, None).unwrap().is_yes());
        }
    }

    #[test]
    fn rational_verdicts_are_symmetric(seed in any::<u64>(), k in 0usize..=2) {
        let c = random_complex(&mut source(seed), CoeffRing::Rationals, &RandomShape::small(1));
        let plus = sigma_membership(&c, &Character::from_ints(&[1]).unwrap(), k, None).unwrap();
        let minus = sigma_membership(&c, &Character::from_ints(&[-1]).unwrap(), k, None).unwrap();
        prop_assert_eq!(plus.status_name(), minus.status_name());
    }

    #[test]
    fn mapping_torus_of_a_degree_map(d in 2i64..=6, k in 1usize..=2) {
        let (c, f) = circle_with_degree(CoeffRing::Integers, d).unwrap();
        let m = mapping_torus(&c, &f).unwrap();
        let minus = sigma_membership(&m, &Character::from_ints(&[-1]).unwrap(), k, None).unwrap();
        prop_assert!(minus.is_yes());
        let plus = sigma_membership(&m, &Character::from_ints(&[1]).unwrap(), 1, None).unwrap();
        prop_assert!(plus.is_no());
    }
}

#[test]
fn builtins_and_fuzzed_complexes_satisfy_dd_zero() {
    for name in BUILTIN_NAMES {
        for ring in [CoeffRing::Integers, CoeffRing::Rationals] {
            builtin(name, ring).unwrap().validate().unwrap();
        }
    }
    for seed in 0..200 {
        let deck = 1 + (seed % 2) as usize;
        let shape = RandomShape { max_rank: 4, ..RandomShape::small(deck) };
        random_complex(&mut source(seed), CoeffRing::Integers, &shape).validate().unwrap();
    }
}

#[test]
fn iterated_certificates_still_verify() {
    for name in BUILTIN_NAMES {
        let c = builtin(name, CoeffRing::Integers).unwrap();
        for xi in sigma_core::report::auto_directions(c.deck_rank()) {
            let v = sigma_membership(&c, &xi, 1, None).unwrap();
            if let Some(cert) = v.certificate() {
                for m in 2..=3 {
                    verify_certificate(&c, &cert.iterate(m).unwrap()).unwrap();
                }
            }
        }
    }
}

#[test]
fn t_minus_two_has_no_integral_inverse_upwards() {
    let x = GroupRingElem::laurent(CoeffRing::Integers, 0, &[-2, 1]);
    assert_eq!(novikov_invert(&x, &Character::from_ints(&[1]).unwrap(), 8), Err(Error::NotAUnit));
    assert!(novikov_invert(&x, &Character::from_ints(&[-1]).unwrap(), 8).is_ok());
    let xq = x.map_coefficients(CoeffRing::Rationals).unwrap();
    assert!(novikov_invert(&xq, &Character::from_ints(&[1]).unwrap(), 8).is_ok());
}

#[test]
fn tampered_boundary_fails_validation() {
    let mut c = builtin("trefoil", CoeffRing::Integers).unwrap();
    let mut d1: Matrix = c.boundary(1);
    d1.set(0, 0, GroupRingElem::one(CoeffRing::Integers, 1));
    c = sigma_core::complex::BasedFreeComplex::new_unchecked(
        CoeffRing::Integers,
        1,
        c.ranks().to_vec(),
        vec![d1, c.boundary(2)],
    );
    assert!(c.validate().is_err());
}
