//! Closed-form characters against Fock-basis counting.

use std::collections::BTreeSet;

use susyva::charmod::{character_suite, QSeries};
use susyva::fock::{character_from_basis, enumerate_basis, FockSector};
use susyva::lattice::{build_cocycle, discriminant_group};
use susyva::{Lattice, Rat};

const DEPTH: i64 = 8;

fn agree_below(closed: &QSeries, counted: &QSeries, lead: Rat, name: &str) {
    let top = lead + Rat::from(DEPTH);
    let exps: BTreeSet<Rat> = closed.terms().chain(counted.terms()).map(|(e, _)| *e).filter(|e| *e <= top).collect();
    assert!(!exps.is_empty());
    for e in exps {
        assert_eq!(closed.coeff(e), counted.coeff(e), "{name}: coefficient of q^{e}");
    }
}

#[test]
fn rank_one_norm_two_all_cosets() {
    let l = Lattice::new(vec![vec![2]]).unwrap();
    let c = build_cocycle(&l, None).unwrap();
    let shift = Rat::new(1, 16);
    let disc = discriminant_group(&l);
    assert_eq!(disc.coset_reps.len(), 2);
    for mu in &disc.coset_reps {
        let (ns, sup, tw) = character_suite(&l, mu, (DEPTH + 3) as u32).unwrap();
        let lead = ns.min_exponent().unwrap();
        let e_max = lead + Rat::from(DEPTH) + shift;
        let sec = FockSector::ns(l.clone(), c.clone(), mu.clone(), e_max);
        let basis = enumerate_basis(&sec).unwrap();
        agree_below(&ns, &character_from_basis(&sec, &basis, false), lead, &format!("chi mu={mu:?}"));
        agree_below(&sup, &character_from_basis(&sec, &basis, true), lead, &format!("chi^s mu={mu:?}"));
        let tw_lead = tw.min_exponent().unwrap();
        let sec = FockSector::twisted(l.clone(), c.clone(), mu.clone(), tw_lead + Rat::from(DEPTH) + shift);
        let basis = enumerate_basis(&sec).unwrap();
        agree_below(&tw, &character_from_basis(&sec, &basis, false), tw_lead, &format!("chi^tw mu={mu:?}"));
    }
}

#[test]
fn leading_terms_rank_one() {
    let l = Lattice::new(vec![vec![2]]).unwrap();
    let (ns, sup, tw) = character_suite(&l, &[Rat::from(0)], 4).unwrap();
    assert_eq!(ns.min_exponent(), Some(Rat::new(-1, 16)));
    assert_eq!(sup.min_exponent(), Some(Rat::new(-1, 16)));
    assert_eq!(tw.min_exponent(), Some(Rat::from(0)));
    assert_eq!(tw.coeff(Rat::from(0)), susyva::Scalar::int(2));
}
