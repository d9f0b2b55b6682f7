//! Skew-symmetry, Jacobi, agreement with the Fock oracle, cocycle locality and
//! convention pins.

use proptest::prelude::*;
use susyva::lattice::{build_cocycle, locality_sign};
use susyva::opecalc::checks::{chi_pin, gamma_g_pin, jacobi_defect, low_depth, n2_pin, pins_hold};
use susyva::opecalc::{Calculus, Conventions, FieldExpr};
use susyva::{Error, Lattice};

fn lattices() -> Vec<Vec<Vec<i64>>> {
    vec![vec![vec![1]], vec![vec![2]], vec![vec![2, -1], vec![-1, 2]], vec![vec![0, 1], vec![1, 0]]]
}

fn build(rank: usize, (kind, i, j): (u8, usize, usize)) -> FieldExpr {
    low_depth(rank, kind, i, j)
}

fn item() -> impl Strategy<Value = (u8, usize, usize)> {
    (0u8..3, 0usize..16, 0usize..16)
}

fn generator() -> impl Strategy<Value = (u8, usize, usize)> {
    (0u8..2, 0usize..16, Just(0usize))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 50, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn skew_symmetry(li in 0usize..4, x in item(), y in item()) {
        let l = Lattice::new(lattices()[li].clone()).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let (a, b) = (build(l.rank(), x), build(l.rank(), y));
        let ab = match calc.susy_bracket_states(&a, &b) {
            Err(Error::Delegate(_)) => return Ok(()),
            r => r.unwrap(),
        };
        let ba = calc.susy_bracket_states(&b, &a).unwrap();
        let derived = calc.skew_transform(&ab, calc.parity(&a).unwrap(), calc.parity(&b).unwrap());
        prop_assert_eq!(ba, derived);
    }

    #[test]
    fn rules_agree_with_oracle(li in 0usize..4, x in item(), y in item()) {
        let l = Lattice::new(lattices()[li].clone()).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let (a, b) = (build(l.rank(), x), build(l.rank(), y));
        let rules = match calc.susy_bracket(&a, &b) {
            Err(Error::Delegate(_)) => return Ok(()),
            r => r.unwrap(),
        };
        let oracle = calc.oracle_bracket(&a, &b).unwrap();
        prop_assert!(calc.bracket_equal(&rules, &oracle).unwrap(), "[{} Λ {}]\n{}\nvs\n{}", a, b, rules, oracle);
    }

    #[test]
    fn jacobi(li in 0usize..4, x in generator(), y in generator(), z in generator()) {
        let l = Lattice::new(lattices()[li].clone()).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let r = l.rank();
        let (a, b, cc) = (build(r, x), build(r, y), build(r, z));
        match jacobi_defect(&calc, &a, &b, &cc) {
            Err(Error::Delegate(_)) => {}
            r => prop_assert!(r.unwrap().is_empty(), "Jacobi fails on {}, {}, {}", a, b, cc),
        }
    }

    #[test]
    fn cocycle_locality_random_pairs(li in 0usize..4, a in prop::collection::vec(-5i64..=5, 2), b in prop::collection::vec(-5i64..=5, 2)) {
        let l = Lattice::new(lattices()[li].clone()).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let r = l.rank();
        let (a, b) = (&a[..r], &b[..r]);
        prop_assert_eq!(c.epsilon(a, b), locality_sign(&l, a, b) * c.epsilon(b, a));
        let k = l.pairing_int(a, b).unwrap() + l.pairing_int(a, a).unwrap() * l.pairing_int(b, b).unwrap();
        prop_assert_eq!(locality_sign(&l, a, b), if k.rem_euclid(2) == 0 { 1 } else { -1 });
    }
}

#[test]
fn cocycle_locality_on_basis_pairs() {
    for gram in lattices() {
        let l = Lattice::new(gram).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let r = l.rank();
        for i in 0..r {
            for j in 0..r {
                let (a, b) = (susyva::lattice::unit(r, i), susyva::lattice::unit(r, j));
                assert_eq!(c.epsilon(&a, &b), locality_sign(&l, &a, &b) * c.epsilon(&b, &a));
            }
        }
    }
}

#[test]
fn nonlocal_override_is_rejected() {
    let l = Lattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    assert!(build_cocycle(&l, Some(vec![vec![1, 1], vec![1, 1]])).is_err());
}

#[test]
fn convention_pins_hold_under_standard() {
    assert!(n2_pin(Conventions::STANDARD).unwrap());
    assert!(gamma_g_pin(Conventions::STANDARD).unwrap());
    assert!(chi_pin(Conventions::STANDARD).unwrap());
}

#[test]
fn flipping_chi_squared_breaks_pins() {
    let conv = Conventions { chi_squared: -Conventions::STANDARD.chi_squared, ..Conventions::STANDARD };
    assert!(!pins_hold(conv).unwrap_or(false));
    assert!(!chi_pin(conv).unwrap());
}

#[test]
fn flipping_berezin_breaks_pins() {
    let conv = Conventions { berezin: -Conventions::STANDARD.berezin, ..Conventions::STANDARD };
    assert!(!gamma_g_pin(conv).unwrap());
}
