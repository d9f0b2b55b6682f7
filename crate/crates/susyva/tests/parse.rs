//! Printing then parsing an expression gives back the same field.

use proptest::prelude::*;
use susyva::lattice::build_cocycle;
use susyva::opecalc::checks::{atoms, low_depth};
use susyva::opecalc::structures::{build_g, build_j, standard_quaternionic_triple};
use susyva::opecalc::{parse_expr, Calculus, FieldExpr};
use susyva::{Error, Lattice, Scalar};

fn lattices() -> Vec<Vec<Vec<i64>>> {
    vec![vec![vec![1]], vec![vec![2]], vec![vec![2, -1], vec![-1, 2]], vec![vec![0, 1], vec![1, 0]]]
}

fn round_trip(calc: &Calculus<'_>, e: &FieldExpr) {
    let printed = e.to_string();
    let back = parse_expr(&printed, calc.lattice()).unwrap_or_else(|err| panic!("`{printed}`: {err}"));
    assert!(calc.equal(e, &back).unwrap(), "`{printed}` parsed as `{back}`");
}

#[test]
fn bracket_outputs_round_trip() {
    for gram in lattices() {
        let l = Lattice::new(gram).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let at = atoms(l.rank());
        for a in &at {
            round_trip(&calc, a);
            for b in &at {
                let br = match calc.susy_bracket(a, b) {
                    Err(Error::Delegate(_)) => calc.oracle_bracket(a, b).unwrap(),
                    r => r.unwrap(),
                };
                for e in br.terms.values() {
                    round_trip(&calc, e);
                }
            }
        }
        round_trip(&calc, &build_g(&l));
    }
}

#[test]
fn structure_fields_round_trip() {
    let l = Lattice::new(vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]]).unwrap();
    let c = build_cocycle(&l, None).unwrap();
    let calc = Calculus::new(&l, &c);
    for a in standard_quaternionic_triple() {
        round_trip(&calc, &build_j(&l, &a).unwrap());
    }
}

fn nested() -> impl Strategy<Value = Vec<(u8, u8, usize, usize, i64)>> {
    prop::collection::vec((0u8..5, 0u8..3, 0usize..16, 0usize..16, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn random_expressions_round_trip(li in 0usize..4, ops in nested()) {
        let l = Lattice::new(lattices()[li].clone()).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let r = l.rank();
        let mut e = FieldExpr::Vacuum;
        for (op, kind, i, j, k) in ops {
            let x = low_depth(r, kind, i, j);
            e = match op {
                0 => FieldExpr::norm(x, e),
                1 => FieldExpr::sum(vec![e, x.scale(Scalar::ratio(k, 2))]),
                2 => e.t(),
                3 => FieldExpr::norm(e, x),
                _ => e.s(),
            };
        }
        round_trip(&calc, &e);
    }
}
