//! Bracket tables re-verified as commutators of mode matrices at `e_max = 7/2`.

use susyva::fock::sector::{charge_separation_check, susy_pair_check};
use susyva::fock::l0_and_susy_operators;
use susyva::lattice::build_cocycle;
use susyva::opecalc::component::CompExpr;
use susyva::opecalc::n3::{build_n3_fields, lam, rank_one_even_algebra, three_fermion_algebra};
use susyva::opecalc::oracle::{component_pair, superfield_table, vacuum_sector};
use susyva::opecalc::{Calculus, FieldExpr, Report};
use susyva::{Lattice, Rat, Scalar};

fn e_max() -> Rat {
    Rat::new(7, 2)
}

fn assert_report(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn superfields(rank_one_norm: i64) {
    let l = Lattice::new(vec![vec![rank_one_norm]]).unwrap();
    let c = build_cocycle(&l, None).unwrap();
    let calc = Calculus::new(&l, &c);
    let fields = [FieldExpr::h(1, 0), FieldExpr::gamma(&[1]), FieldExpr::gamma(&[-1])];
    assert_report(&superfield_table(&calc, e_max(), &fields).unwrap());
}

#[test]
fn unit_norm_superfield_brackets_as_commutators() {
    superfields(1);
}

#[test]
fn norm_two_superfield_brackets_as_commutators() {
    superfields(2);
}

#[test]
fn susy_operator_and_charge_separation() {
    for norm in [1, 2] {
        let l = Lattice::new(vec![vec![norm]]).unwrap();
        let c = build_cocycle(&l, None).unwrap();
        let calc = Calculus::new(&l, &c);
        let (sec, basis) = vacuum_sector(&calc, e_max()).unwrap();
        let (_, s1, _) = l0_and_susy_operators(&sec, &basis, None).unwrap();
        assert!(susy_pair_check(&sec, &basis, &[&s1.unwrap()]));
        assert!(charge_separation_check(&sec, &basis).unwrap());
    }
}

#[test]
fn n3_relations_as_commutators() {
    let alg = rank_one_even_algebra().unwrap();
    let calc_lat = alg.realization().unwrap().lattice.clone();
    let calc_coc = alg.realization().unwrap().cocycle.clone();
    let calc = Calculus::new(&calc_lat, &calc_coc);
    let (sec, basis) = vacuum_sector(&calc, e_max()).unwrap();
    let f = build_n3_fields();
    let fields = [&f.j0, &f.jp, &f.jm, &f.phi, &f.g0, &f.gp, &f.gm, &f.l];
    for x in fields {
        for y in fields {
            let br = alg.ordinary_bracket(&x.expr, &y.expr).unwrap();
            let (ok, cols) = component_pair(&alg, &sec, &basis, &x.expr, &y.expr, &br).unwrap();
            assert!(ok, "[{} , {}] on {cols} columns", alg.render(&x.expr), alg.render(&y.expr));
        }
    }
}

#[test]
fn three_fermion_composites_as_commutators() {
    let alg = three_fermion_algebra().unwrap();
    let re = alg.realization().unwrap();
    let (l, c) = (re.lattice.clone(), re.cocycle.clone());
    let calc = Calculus::new(&l, &c);
    let (sec, basis) = vacuum_sector(&calc, e_max()).unwrap();
    let (p0, pp, pm) = (CompExpr::Gen(0), CompExpr::Gen(1), CompExpr::Gen(2));
    let alpha = CompExpr::norm(pp.clone(), pm.clone());
    let g = CompExpr::norm(alpha.clone(), p0.clone());
    let fields = [p0, pp, pm, alpha, g];
    for x in &fields {
        for y in &fields {
            let br = alg.ordinary_bracket(x, y).unwrap();
            let (ok, cols) = component_pair(&alg, &sec, &basis, x, y, &br).unwrap();
            assert!(ok, "[{} , {}] on {cols} columns", alg.render(x), alg.render(y));
        }
    }
}

#[test]
fn wrong_bracket_is_rejected_by_commutators() {
    let alg = three_fermion_algebra().unwrap();
    let re = alg.realization().unwrap();
    let (l, c) = (re.lattice.clone(), re.cocycle.clone());
    let calc = Calculus::new(&l, &c);
    let (sec, basis) = vacuum_sector(&calc, e_max()).unwrap();
    let (pp, pm) = (CompExpr::Gen(1), CompExpr::Gen(2));
    let wrong = lam(&[(0, CompExpr::Vac.scale(Scalar::int(2)))]);
    let (ok, _) = component_pair(&alg, &sec, &basis, &pp, &pm, &wrong).unwrap();
    assert!(!ok);
}
