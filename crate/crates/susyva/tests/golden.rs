//! Bracket tables reproduced by the superfield engine and compared by canonical form.

use susyva::lattice::build_cocycle;
use susyva::opecalc::{Calculus, FieldExpr, LambdaSeries};
use susyva::{Cocycle, Lattice, Scalar};

fn setup(gram: Vec<Vec<i64>>, signs: Option<Vec<Vec<i8>>>) -> (Lattice, Cocycle) {
    let l = Lattice::new(gram).unwrap();
    let c = build_cocycle(&l, signs).unwrap();
    (l, c)
}

fn n(k: i64) -> Scalar {
    Scalar::int(k)
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

fn vac() -> FieldExpr {
    FieldExpr::Vacuum
}

fn g(v: &[i64]) -> FieldExpr {
    FieldExpr::gamma(v)
}

fn norm(a: FieldExpr, b: FieldExpr) -> FieldExpr {
    FieldExpr::norm(a, b)
}

fn sum(v: Vec<FieldExpr>) -> FieldExpr {
    FieldExpr::sum(v)
}

fn check(calc: &Calculus<'_>, a: &FieldExpr, b: &FieldExpr, want: &[(u32, u8, FieldExpr)]) {
    let got = calc.susy_bracket(a, b).unwrap();
    let want = calc.bracket_from(want).unwrap();
    assert!(calc.bracket_equal(&got, &want).unwrap(), "[{a} Λ {b}]\n got:\n{got}\n want:\n{want}");
}

fn series(terms: &[(u32, FieldExpr)]) -> LambdaSeries {
    terms.iter().cloned().collect()
}

/// Which component of a superfield pair: `(S on a, S on b)`.
#[derive(Clone, Copy)]
enum Comp {
    AB,
    SaB,
    ASb,
    SaSb,
}

fn check_comp(calc: &Calculus<'_>, name: &str, a: &FieldExpr, b: &FieldExpr, c: Comp, want: &[(u32, FieldExpr)]) {
    let br = calc.susy_bracket(a, b).unwrap();
    let ex = calc.expand_components(&br, a, b).unwrap();
    let got = match c {
        Comp::AB => ex.a_b,
        Comp::SaB => ex.sa_b,
        Comp::ASb => ex.a_sb,
        Comp::SaSb => ex.sa_sb,
    };
    let want = series(want);
    assert!(calc.series_equal(&got, &want).unwrap(), "{name}: got {got:?}, want {want:?}");
}

#[test]
fn sl2_super_from_superfields() {
    let (l, c) = setup(vec![vec![1]], None);
    let calc = Calculus::new(&l, &c);
    let h = FieldExpr::h(1, 0);
    let (gp, gm) = (g(&[1]), g(&[-1]));
    check_comp(&calc, "[psi0 psi0]", &h, &h, Comp::AB, &[(0, vac())]);
    check_comp(&calc, "[alpha alpha]", &h, &h, Comp::SaSb, &[(1, vac())]);
    for (gam, s) in [(&gp, 1), (&gm, -1)] {
        check_comp(&calc, "[alpha psi]", &h, gam, Comp::SaB, &[(0, gam.clone().scale(n(s)))]);
        check_comp(&calc, "[psi0 psi]", &h, gam, Comp::AB, &[]);
        check_comp(&calc, "[psi0 phi]", &h, gam, Comp::ASb, &[(0, gam.clone().scale(n(s)))]);
        check_comp(&calc, "[alpha phi]", &h, gam, Comp::SaSb, &[(0, gam.clone().s().scale(n(s)))]);
    }
    check_comp(&calc, "[psi+ psi-]", &gp, &gm, Comp::AB, &[(0, vac())]);
    check_comp(&calc, "[psi+ phi-]", &gp, &gm, Comp::ASb, &[(0, h.clone())]);
    check_comp(&calc, "[psi- phi+]", &gm, &gp, Comp::ASb, &[(0, h.clone().scale(n(-1)))]);
    check_comp(&calc, "[phi+ phi-]", &gp, &gm, Comp::SaSb, &[(0, h.clone().s()), (1, vac())]);
}

#[test]
fn basic_gamma_bracket_unit_norm() {
    let (l, c) = setup(vec![vec![1]], None);
    let calc = Calculus::new(&l, &c);
    check(&calc, &g(&[1]), &g(&[-1]), &[(0, 0, FieldExpr::h(1, 0)), (0, 1, vac())]);
}

#[test]
fn rank_one_norm_two_from_superfields() {
    let (l, c) = setup(vec![vec![2]], None);
    let calc = Calculus::new(&l, &c);
    let a = FieldExpr::h(1, 0);
    let h = a.clone().s();
    let (ep, em) = (g(&[1]), g(&[-1]));
    let a_h = norm(a.clone(), h.clone());
    check_comp(&calc, "[e+ e-]", &ep, &em, Comp::AB, &[(0, h.clone()), (1, vac())]);
    check_comp(&calc, "[e+ psi-]", &ep, &em, Comp::ASb, &[(0, a_h.clone().scale(n(-1))), (1, a.clone().scale(n(-1)))]);
    check_comp(&calc, "[e- psi+]", &em, &ep, Comp::ASb, &[(0, a_h.scale(n(-1))), (1, a.clone())]);
    check_comp(
        &calc,
        "[psi+ psi-]",
        &ep,
        &em,
        Comp::SaSb,
        &[
            (0, sum(vec![h.clone().t().scale(n(-1)), norm(h.clone(), h.clone()).scale(n(-1)), norm(a.clone(), a.clone().t())])),
            (1, h.clone().scale(n(-2))),
            (2, vac().scale(n(-1))),
        ],
    );
    for (gam, s) in [(&ep, 2), (&em, -2)] {
        check_comp(&calc, "[h e]", &a, gam, Comp::SaB, &[(0, gam.clone().scale(n(s)))]);
        check_comp(&calc, "[h psi]", &a, gam, Comp::SaSb, &[(0, gam.clone().s().scale(n(s)))]);
        check_comp(&calc, "[psi0 psi]", &a, gam, Comp::ASb, &[(0, gam.clone().scale(n(s)))]);
        check_comp(&calc, "[psi0 e]", &a, gam, Comp::AB, &[]);
    }
    check_comp(&calc, "[h h]", &a, &a, Comp::SaSb, &[(1, vac().scale(n(2)))]);
    check_comp(&calc, "[psi0 psi0]", &a, &a, Comp::AB, &[(0, vac().scale(n(2)))]);
    check_comp(&calc, "[h psi0]", &a, &a, Comp::SaB, &[]);
}

#[test]
fn norm_two_gamma_bracket() {
    let (l, c) = setup(vec![vec![2]], None);
    let calc = Calculus::new(&l, &c);
    let a = FieldExpr::h(1, 0);
    check(
        &calc,
        &g(&[1]),
        &g(&[-1]),
        &[
            (0, 0, sum(vec![a.clone().t(), norm(a.clone(), a.clone().s())])),
            (0, 1, a.clone().s()),
            (1, 0, a.clone()),
            (1, 1, vac()),
        ],
    );
}

#[test]
fn pairing_minus_one_on_a2() {
    let (l, c) = setup(vec![vec![2, -1], vec![-1, 2]], None);
    let calc = Calculus::new(&l, &c);
    for (x, y) in [([1, 0], [0, 1]), ([0, 1], [1, 0]), ([-1, 0], [0, -1]), ([1, 1], [-1, 0])] {
        assert_eq!(l.pairing_int(&x, &y).unwrap(), -1);
        let e = Scalar::int(c.epsilon(&x, &y) as i64);
        let s = [x[0] + y[0], x[1] + y[1]];
        let want = [
            (0, 0, norm(FieldExpr::cartan(&x), g(&s)).scale(e.clone())),
            (0, 1, g(&s).scale(e)),
        ];
        check(&calc, &g(&x), &g(&y), &want);
    }
}

#[test]
fn indefinite_rank_two_with_mixed_signs() {
    let (l, c) = setup(vec![vec![1, 0], vec![0, -1]], Some(vec![vec![1, 1], vec![-1, -1]]));
    let calc = Calculus::new(&l, &c);
    let (ap, am) = ([1, 0], [0, 1]);
    let neg = |v: [i64; 2]| [-v[0], -v[1]];
    check(&calc, &g(&ap), &g(&ap), &[]);
    check(&calc, &g(&neg(ap)), &g(&neg(ap)), &[]);
    check(&calc, &g(&ap), &g(&neg(ap)), &[(0, 0, FieldExpr::cartan(&ap)), (0, 1, vac())]);
    check(&calc, &g(&am), &g(&neg(am)), &[]);
    check(&calc, &g(&neg(am)), &g(&am), &[]);
    let two = g(&[0, 2]);
    check(&calc, &g(&am), &g(&am), &[(0, 0, two.clone().s().scale(q(-1, 2))), (0, 1, two.scale(n(-1)))]);
}

#[test]
fn isotropic_rank_two() {
    let (l, c) = setup(vec![vec![0, -1], vec![-1, 0]], Some(vec![vec![1, 1], vec![-1, 1]]));
    let calc = Calculus::new(&l, &c);
    let ab = g(&[1, 1]);
    check(&calc, &g(&[1, 0]), &g(&[0, 1]), &[(0, 0, norm(FieldExpr::cartan(&[1, 0]), ab.clone())), (0, 1, ab.clone())]);
    let g2 = g(&[2, 2]);
    let s = FieldExpr::cartan(&[1, 1]);
    let half = q(-1, 2);
    check(
        &calc,
        &ab,
        &ab,
        &[
            (0, 0, sum(vec![g2.clone().s().t().scale(half.clone()), norm(s, g2.clone().t()).scale(q(1, 2))])),
            (0, 1, g2.clone().t().scale(half.clone())),
            (1, 0, g2.clone().s().scale(half)),
            (1, 1, g2.scale(n(-1))),
        ],
    );
}

#[test]
fn derivation_identities() {
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![3]]] {
        let (l, c) = setup(gram, None);
        let calc = Calculus::new(&l, &c);
        let a = FieldExpr::h(1, 0);
        for v in [1, -1, 2] {
            let ga = g(&[v]);
            let alpha = FieldExpr::cartan(&[v]);
            assert!(calc.equal(&ga.clone().s(), &norm(alpha.clone(), ga.clone())).unwrap());
            assert!(calc.equal(&ga.clone().s().s(), &ga.clone().t()).unwrap());
            let k = l.pairing_int(&[v], &[v]).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let lhs = norm(ga.clone().s(), alpha.clone());
            assert!(calc.equal(&lhs, &ga.clone().t().scale(n(sign * k))).unwrap());
        }
        assert!(calc.equal(&norm(a.clone(), a.clone()), &FieldExpr::zero()).unwrap());
        assert!(calc.equal(&norm(a.clone(), vac()), &a).unwrap());
        assert!(calc.equal(&norm(vac(), a.clone()), &a).unwrap());
    }
}

#[test]
fn gamma_with_neveu_schwarz_vector() {
    use susyva::opecalc::structures::build_g;
    for gram in [vec![vec![1]], vec![vec![2]], vec![vec![3]]] {
        let (l, c) = setup(gram, None);
        let calc = Calculus::new(&l, &c);
        let gg = build_g(&l);
        for v in [1, -1] {
            let ga = g(&[v]);
            let alpha = FieldExpr::cartan(&[v]);
            let k = l.pairing_int(&[v], &[v]).unwrap();
            let sign = n(if k % 2 == 0 { 1 } else { -1 });
            let want = [
                (0, 0, sum(vec![norm(alpha.clone().s(), ga.clone()), ga.clone().t().scale(n(-k))]).scale(sign.clone())),
                (0, 1, ga.clone().s().scale(-sign.clone())),
                (1, 0, ga.clone().scale(sign * n(-k))),
            ];
            check(&calc, &ga, &gg, &want);
            let back = [(0, 0, ga.clone().t().scale(n(2))), (1, 0, ga.clone().scale(n(k))), (0, 1, ga.clone().s())];
            check(&calc, &gg, &ga, &back);
        }
    }
}

#[test]
fn cartan_with_n2_current() {
    use susyva::opecalc::structures::build_j;
    let (l, c) = setup(vec![vec![0, 1], vec![1, 0]], None);
    let calc = Calculus::new(&l, &c);
    let a = vec![vec![n(1), n(0)], vec![n(0), n(-1)]];
    let j = build_j(&l, &a).unwrap();
    // [α_k Λ J] = −(α_i, Aα^k) χ α_i
    let inv = l.gram_inverse();
    for k in 0..2 {
        let mut terms = Vec::new();
        for i in 0..2 {
            let mut coeff = Scalar::int(0);
            for m in 0..2 {
                for p in 0..2 {
                    coeff = coeff + Scalar::int(l.g(i, m)) * a[m][p].clone() * Scalar::from_ratio64(inv[p][k]);
                }
            }
            terms.push(FieldExpr::h(2, i).scale(-coeff));
        }
        check(&calc, &FieldExpr::h(2, k), &j, &[(0, 1, sum(terms))]);
    }
}

#[test]
fn quasi_commutativity() {
    let (l, c) = setup(vec![vec![2]], None);
    let calc = Calculus::new(&l, &c);
    let a = FieldExpr::h(1, 0);
    let pairs = [(a.clone().s(), a.clone()), (g(&[1]), a.clone()), (a.clone(), g(&[-1])), (g(&[1]), g(&[-1]))];
    for (x, y) in pairs {
        let direct = calc.canonicalize(&norm(x.clone(), y.clone())).unwrap();
        let via = calc.quasi_commute(&x, &y).unwrap();
        assert!(calc.equal(&direct, &via).unwrap(), ":{x} {y}: = {direct} but rule gives {via}");
    }
}

#[test]
fn sesquilinearity() {
    let (l, c) = setup(vec![vec![2, -1], vec![-1, 2]], None);
    let calc = Calculus::new(&l, &c);
    let (x, y) = (g(&[1, 0]), g(&[0, 1]));
    let base = calc.susy_bracket(&x, &y).unwrap();
    let tx = calc.susy_bracket(&x.clone().t(), &y).unwrap();
    let want: Vec<(u32, u8, FieldExpr)> =
        base.terms.iter().map(|(m, e)| (m.j + 1, m.chi, e.clone().scale(n(-1)))).collect();
    assert!(calc.bracket_equal(&tx, &calc.bracket_from(&want).unwrap()).unwrap());
    let ty = calc.susy_bracket(&x, &y.clone().t()).unwrap();
    let mut want: Vec<(u32, u8, FieldExpr)> = base.terms.iter().map(|(m, e)| (m.j + 1, m.chi, e.clone())).collect();
    want.extend(base.terms.iter().map(|(m, e)| (m.j, m.chi, e.clone().t())));
    assert!(calc.bracket_equal(&ty, &calc.bracket_from(&want).unwrap()).unwrap());
}
