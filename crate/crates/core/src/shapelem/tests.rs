use super::*;

fn pbw(s: &str) -> Arc<Pbw> {
    Pbw::for_algebra(s.parse().unwrap())
}

fn idx(rs: &RootSystem, c: &[i32]) -> usize {
    rs.index_of(c).unwrap()
}

fn extremal_on_hyperplane(t: &ShapovalovElement) -> bool {
    let rs = t.root_system();
    let ctx = hyperplane(rs, t.beta, t.m).unwrap();
    let s = t.element.specialize(&ctx).unwrap();
    (0..rs.rank()).all(|a| s.act_e(a).is_zero())
}

#[test]
fn choices() {
    let rs = RootSystem::parse("A2").unwrap();
    let cs = admissible_choices(&rs, 2);
    assert_eq!(cs.len(), 2);
    assert_eq!(cs[0].phi, rs.fundamental_weights()[0]);
    assert_eq!(cs[0].nu_a, rs.fundamental_weights()[0].sub(&Weight::from_ints(&[1, 1])));
    let g2 = RootSystem::parse("G2").unwrap();
    let b = idx(&g2, &[2, 3]);
    let c = admissible_choices(&g2, b).into_iter().find(|c| c.alpha == 1).unwrap();
    assert_eq!(c.ell, 3);
    assert_eq!(c.phi, g2.fundamental_weights()[1]);
    for s in ["A3", "B3", "C3", "D4", "G2"] {
        let rs = RootSystem::parse(s).unwrap();
        for beta in 0..rs.num_positive() {
            for c in admissible_choices(&rs, beta) {
                assert_eq!(rs.coroot_pairing(&c.phi, rs.root(beta)).unwrap(), int(1), "{s}");
            }
        }
        for i in 0..rs.rank() {
            let a = rs.simple_index(i);
            let cs = admissible_choices(&rs, a);
            assert_eq!(cs.len(), 1);
            assert_eq!(cs[0].phi, rs.fundamental_weights()[i]);
        }
    }
    assert!(choice_for(&rs, 0, Some(1)).is_err());
}

#[test]
fn eta_values() {
    let rs = RootSystem::parse("A2").unwrap();
    assert_eq!(eta(&rs, &[0, 1]), MultiPoly::var(2, 1));
    assert_eq!(eta(&rs, &[1, 1]).eval(&[int(1), int(1)]), int(3));
    assert!(eta(&rs, &[0, 0]).is_zero());
    // η_{mβ} = m((β, λ+ρ) - m(β,β)/2)
    for s in ["B3", "G2"] {
        let rs = RootSystem::parse(s).unwrap();
        let b = rs.root(rs.highest_root()).to_vec();
        for m in 1..4 {
            let mb: Vec<i32> = b.iter().map(|c| m * c).collect();
            let lhs = eta(&rs, &mb);
            let rhs = (&eta(&rs, &b) - &MultiPoly::constant(rs.rank(), int((m - 1) as i64) * rs.inner_ints(&b, &b) / int(2)))
                .scale(&int(m as i64));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hyperplane_examples() {
    let rs = RootSystem::parse("A2").unwrap();
    let h = hyperplane(&rs, 2, 1).unwrap();
    // α* = α1 here; the relation l1 + l2 = -1 holds either way.
    let sum = &h.images()[0] + &h.images()[1];
    assert_eq!(sum, MultiPoly::constant(1, int(-1)));
    let h2 = hyperplane_solving(&rs, 2, 1, 1).unwrap();
    assert_eq!(h2.images()[1], MultiPoly::parse("-1 - t1", "t", 1).unwrap());
    for s in ["A3", "B2", "G2"] {
        let rs = RootSystem::parse(s).unwrap();
        for i in 0..rs.rank() {
            for m in 1..4u32 {
                let h = hyperplane(&rs, rs.simple_index(i), m).unwrap();
                assert_eq!(h.images()[i], MultiPoly::constant(rs.rank() - 1, int(m as i64 - 1)));
            }
        }
    }
    // Substituting back satisfies (λ+ρ, β) = m(β,β)/2.
    let g2 = RootSystem::parse("G2").unwrap();
    let b = idx(&g2, &[2, 3]);
    for m in 1..3 {
        let h = hyperplane(&g2, b, m).unwrap();
        let lhs = eta(&g2, &[2, 3]).compose(h.images());
        let want = int((m as i64) - 1) * g2.inner_ints(&[2, 3], &[2, 3]) / int(2);
        assert_eq!(lhs, MultiPoly::constant(1, want));
    }
    assert_eq!(g2.inner(g2.rho(), &Weight::from_ints(&[2, 3])).unwrap(), int(3));
}

#[test]
fn simple_roots_give_powers() {
    let p = pbw("B2");
    let rs = p.root_system();
    for i in 0..2 {
        let a = rs.simple_index(i);
        let c = default_choice(rs, a);
        let t = theta_m(&p, &c, 3).unwrap();
        assert_eq!(t.element.len(), 1);
        assert!(t.element.coeff(&Monomial::power(rs, a, 3)).constant_value().unwrap().is_one());
        assert!(routes(&p, &c).unwrap().len() == 1);
    }
    assert!(theta_m(&p, &default_choice(rs, 0), 0).is_err());
}

#[test]
fn a2_single_route() {
    let p = pbw("A2");
    let rs = p.root_system();
    let c = choice_for(rs, 2, Some(0)).unwrap();
    let rts = routes(&p, &c).unwrap();
    assert_eq!(rts.len(), 2);
    assert_eq!(rts[0].nus, vec![2]);
    assert_eq!(rts[0].coeff, int(1));
    assert_eq!(rts[1].nus, vec![1, 0]);
    assert_eq!(rts[1].mus, vec![vec![0, 1]]);
    assert_eq!(num_traits::Signed::abs(&rts[1].coeff), int(1));
    let raw = theta_one_raw(&p, &c).unwrap();
    assert_eq!(raw.len(), 2);
    let ordered = Monomial::from_exponents(rs, &[1, 1, 0]);
    let lin = raw.coeff(&ordered);
    assert_eq!(lin.linear_factors().len(), 1);
    assert_eq!(lin.linear_factors()[0].0, MultiPoly::var(2, 1));
    let t = theta_one(&p, &c).unwrap();
    assert!(t.element.coeff(&t.leading_monomial()).constant_value().unwrap().is_one());
    assert!(extremal_on_hyperplane(&t));
}

#[test]
fn a3_route_count() {
    let p = pbw("A3");
    let rs = p.root_system();
    let c = choice_for(rs, idx(rs, &[1, 1, 1]), Some(1)).unwrap();
    assert_eq!(routes(&p, &c).unwrap().len(), 5);
    let t = theta_one(&p, &c).unwrap();
    assert!(t.element.len() <= 4);
    assert!(extremal_on_hyperplane(&t));
}

#[test]
fn extremal_small_cases() {
    for s in ["A2", "B2", "G2"] {
        let p = pbw(s);
        let rs = p.root_system();
        for beta in 0..rs.num_positive() {
            for c in admissible_choices(rs, beta) {
                for m in 1..=2 {
                    let t = theta_m(&p, &c, m).unwrap();
                    assert_eq!(t.element.weight().unwrap(), rs.root(beta).iter().map(|x| x * m as i32).collect::<Vec<_>>());
                    assert!(t.element.coeff(&t.leading_monomial()).constant_value().unwrap().is_one());
                    assert!(extremal_on_hyperplane(&t), "{s} β={:?} α={} m={m}", rs.root(beta), c.alpha + 1);
                    let expected = match (rs.is_simple(beta) || m == 1, c.has_finite_module(rs)) {
                        (true, _) => Construction::Routes,
                        (false, true) => Construction::Factorized,
                        (false, false) => Construction::Kernel,
                    };
                    assert_eq!(t.construction, expected);
                }
            }
        }
    }
}

#[test]
fn shift_examples() {
    let p = pbw("A2");
    let ctx = Context::lambda(2);
    let x = UEAElement::from_terms(p.clone(), ctx, [(Monomial::power(p.root_system(), 2, 1), RatFun::from_poly(MultiPoly::var(2, 1)))]);
    assert_eq!(shift_tau(&x, &Weight::zero(2)).unwrap(), x);
    let y = shift_tau(&x, &Weight::from_ints(&[0, 1])).unwrap();
    assert_eq!(y.terms().values().next().unwrap().to_string_with("l"), "l2 + 2");
    let back = shift_tau(&y, &Weight::from_ints(&[0, -1])).unwrap();
    assert_eq!(back, x);
}

#[test]
fn finite_module_classification() {
    let b2 = RootSystem::parse("B2").unwrap();
    let b = idx(&b2, &[1, 1]);
    let cs = admissible_choices(&b2, b);
    assert!(!cs[0].has_finite_module(&b2));
    assert!(cs[1].has_finite_module(&b2));
    assert_eq!(default_choice(&b2, b).alpha, 1);
    let g2 = RootSystem::parse("G2").unwrap();
    assert!(admissible_choices(&g2, idx(&g2, &[1, 2])).iter().all(|c| !c.has_finite_module(&g2)));
    assert_eq!(default_choice(&g2, idx(&g2, &[2, 3])).alpha, 1);
    for s in ["A3", "D4"] {
        let rs = RootSystem::parse(s).unwrap();
        for beta in 0..rs.num_positive() {
            for c in admissible_choices(&rs, beta) {
                assert_eq!(c.has_finite_module(&rs), c.ell == 1, "{s}");
            }
        }
    }
}

#[test]
fn literal_product_needs_finite_module() {
    let p = pbw("B2");
    let rs = p.root_system();
    let b = idx(rs, &[1, 1]);
    let ctx = hyperplane(rs, b, 2).unwrap();
    let c1 = choice_for(rs, b, Some(0)).unwrap();
    let literal = factorized_product(&p, &c1, 2).unwrap().specialize(&ctx).unwrap();
    assert!((0..2).any(|a| !literal.act_e(a).is_zero()));
    let c2 = choice_for(rs, b, Some(1)).unwrap();
    let good = factorized_product(&p, &c2, 2).unwrap().specialize(&ctx).unwrap();
    assert!((0..2).all(|a| good.act_e(a).is_zero()));
}

#[test]
fn kernel_matches_factorization_on_hyperplane() {
    for (s, b, m) in [("B2", vec![1, 1], 2), ("B2", vec![1, 1], 3), ("G2", vec![2, 3], 2), ("C3", vec![0, 1, 1], 2)] {
        let p = pbw(s);
        let rs = p.root_system();
        let beta = idx(rs, &b);
        let ctx = hyperplane(rs, beta, m).unwrap();
        let cs = admissible_choices(rs, beta);
        let fin = cs.iter().find(|c| c.has_finite_module(rs)).unwrap();
        let inf = cs.iter().find(|c| !c.has_finite_module(rs)).unwrap();
        let x = theta_m(&p, fin, m).unwrap();
        let y = theta_m(&p, inf, m).unwrap();
        assert_eq!(y.construction, Construction::Kernel);
        assert_eq!(x.element.specialize(&ctx).unwrap(), y.element.specialize(&ctx).unwrap(), "{s} {b:?} m={m}");
    }
}

#[test]
fn g2_without_finite_choice() {
    let p = pbw("G2");
    let rs = p.root_system();
    let beta = idx(rs, &[1, 2]);
    for m in 2..=3 {
        let t = theta_m(&p, &default_choice(rs, beta), m).unwrap();
        assert_eq!(t.construction, Construction::Kernel);
        assert!(extremal_on_hyperplane(&t));
    }
}
