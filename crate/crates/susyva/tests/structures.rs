use susyva::lattice::build_cocycle;
use susyva::opecalc::structures::*;
use susyva::opecalc::Calculus;
use susyva::{Error, Lattice, Rat, Scalar};

fn setup(gram: Vec<Vec<i64>>) -> (Lattice, susyva::Cocycle) {
    let l = Lattice::new(gram).unwrap();
    let c = build_cocycle(&l, None).unwrap();
    (l, c)
}

fn assert_report(r: &susyva::opecalc::Report) {
    assert!(r.passed(), "{r}");
}

#[test]
fn neveu_schwarz_rank_one_and_two() {
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![2, -1], vec![-1, 2]]] {
        let (l, c) = setup(gram);
        let calc = Calculus::new(&l, &c);
        let g = build_g(&l);
        let c3 = Scalar::ratio(3 * l.rank() as i64, 2);
        let gammas: Vec<Vec<i64>> = if l.rank() == 1 { vec![vec![1], vec![-1]] } else { vec![vec![1, 0], vec![-1, 1]] };
        assert_report(&verify_conformal(&calc, &g, &c3, &gammas).unwrap());
    }
}

#[test]
fn wrong_central_charge_fails() {
    let (l, c) = setup(vec![vec![2]]);
    let calc = Calculus::new(&l, &c);
    let r = verify_conformal(&calc, &build_g(&l), &Scalar::int(1), &[]).unwrap();
    assert!(!r.passed());
}

#[test]
fn n2_on_hyperbolic_plane() {
    let (l, c) = setup(vec![vec![0, 1], vec![1, 0]]);
    let calc = Calculus::new(&l, &c);
    let a = vec![vec![Scalar::int(1), Scalar::int(0)], vec![Scalar::int(0), Scalar::int(-1)]];
    let j = build_j(&l, &a).unwrap();
    let g = build_g(&l);
    assert_report(&verify_n2(&calc, &g, &j, &Scalar::int(3)).unwrap());
    assert!(verify_n2_fock(&calc, &j, Rat::new(5, 2)).unwrap());
}

#[test]
fn n2_on_diag_two_two() {
    let (l, c) = setup(vec![vec![2, 0], vec![0, 2]]);
    let calc = Calculus::new(&l, &c);
    let [s1, s2, _] = pauli();
    assert!(matches!(build_j(&l, &s1), Err(Error::Inadmissible(_))));
    let j = build_j(&l, &s2).unwrap();
    assert_report(&verify_n2(&calc, &build_g(&l), &j, &Scalar::int(3)).unwrap());
    assert!(verify_n2_fock(&calc, &j, Rat::new(2, 1)).unwrap());
}

#[test]
fn little_n4_on_d4_diagonal() {
    let (l, c) = setup((0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect()).collect());
    let calc = Calculus::new(&l, &c);
    assert_report(&verify_little_n4(&calc, &standard_quaternionic_triple()).unwrap());
}

#[test]
fn little_n4_rejects_degenerate_triples() {
    let (l, c) = setup((0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect()).collect());
    let calc = Calculus::new(&l, &c);
    let mut t = standard_quaternionic_triple();
    t[1] = t[0].clone();
    assert!(matches!(verify_little_n4(&calc, &t), Err(Error::Inadmissible(_))));
}

#[test]
fn iso_with_boson_fermion_tensor() {
    let (l, c) = setup(vec![vec![2, -1], vec![-1, 2]]);
    let calc = Calculus::new(&l, &c);
    assert_report(&verify_iso_vq(&calc, &[vec![1, 0], vec![1, 1], vec![0, -1]]).unwrap());
}
