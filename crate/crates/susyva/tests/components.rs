use susyva::opecalc::n3::*;
use susyva::opecalc::Report;

fn assert_report(r: &Report) {
    assert!(r.passed(), "{r}");
}

#[test]
fn three_fermion_table_matches_lattice() {
    let alg = three_fermion_algebra().unwrap();
    assert_report(&alg.check_table().unwrap());
}

#[test]
fn three_fermions_give_sl2_super_and_ns() {
    let alg = three_fermion_algebra().unwrap();
    assert_report(&verify_three_fermions(&alg).unwrap());
}

#[test]
fn sl2_super_table_matches_lattice() {
    let alg = sl2_super_algebra().unwrap();
    assert_report(&alg.check_table().unwrap());
}

#[test]
fn rank_one_even_table_matches_lattice() {
    let alg = rank_one_even_algebra().unwrap();
    assert_report(&alg.check_table().unwrap());
    assert_report(&alg.check_skew_consistency().unwrap());
}

#[test]
fn n3_relations_hold() {
    let alg = rank_one_even_algebra().unwrap();
    assert_report(&verify_n3(&alg, &build_n3_fields()).unwrap());
}

#[test]
fn n3_detects_wrong_normalization() {
    let alg = rank_one_even_algebra().unwrap();
    let mut f = build_n3_fields();
    f.gm.pow = 3;
    let r = verify_n3(&alg, &f).unwrap();
    assert!(!r.passed());
    assert!(r.checks.iter().any(|c| c.name == "[G~+ G~-]" && !c.passed));
}

#[test]
fn wrong_declared_entry_is_caught() {
    use susyva::opecalc::component::CompExpr;
    let mut alg = rank_one_even_algebra().unwrap();
    alg.declare("psi0", "psi0", lam(&[(0, CompExpr::Vac)])).unwrap();
    assert!(!alg.check_table().unwrap().passed());
}

#[test]
fn undeclared_pairs_error_without_default() {
    use susyva::opecalc::component::{CompExpr, ComponentAlgebra};
    let alg = ComponentAlgebra::new(&[("a", false), ("b", false)]);
    let e = alg.ordinary_bracket(&CompExpr::Gen(0), &CompExpr::Gen(1));
    assert!(matches!(e, Err(susyva::Error::UndeclaredPair(..))));
}
