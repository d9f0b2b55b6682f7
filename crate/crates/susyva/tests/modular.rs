use num_complex::Complex64;
use susyva::charmod::{modular_check, modular_check_with, ModularIdentity};
use susyva::Lattice;

fn taus() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 1.0),
        Complex64::new(0.25, 0.75),
        Complex64::new(0.1, 0.5),
        Complex64::new(-1.0 / 3.0, 2.0),
        Complex64::new(0.6, 0.2),
    ]
}

#[test]
fn all_identities_hold() {
    for gram in [vec![vec![2]], vec![vec![2, 0], vec![0, 2]]] {
        let l = Lattice::new(gram).unwrap();
        for id in ModularIdentity::ALL {
            for tau in taus() {
                let rep = modular_check(&l, id, tau, 1e-6).unwrap();
                assert!(rep.passed(), "{}", rep.to_json());
            }
        }
    }
}

#[test]
fn twelfth_phase_is_wrong() {
    let l = Lattice::new(vec![vec![2]]).unwrap();
    let rep = modular_check_with(&l, ModularIdentity::TSuper, Complex64::new(0.25, 0.75), 1e-6, 1.0 / 12.0).unwrap();
    assert!(!rep.passed());
}
