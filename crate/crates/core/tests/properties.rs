use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kn_core::algebra::{AlgebraElement, KnAlgebra};
use kn_core::coeffs::CoefficientTables;
use kn_core::exact::coeff::Coeff;
use kn_core::exact::scalar::int;
use kn_core::lie::FiniteLieAlgebra;
use kn_core::realization::{Label, Realization};
use kn_core::rep::wedge::{WedgeModule, WedgeVector};

fn big(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn edge_i64() -> impl Strategy<Value = i64> {
    prop_oneof![-1000i64..1000, Just(i64::MAX), Just(i64::MIN + 1), Just(i64::MAX / 3), (i64::MIN / 2)..(i64::MAX / 2)]
}

fn denom() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..50, Just(i64::MAX), Just(1 << 40)]
}

fn tables() -> Arc<CoefficientTables> {
    Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())))
}

proptest! {
    #[test]
    fn small_rationals_agree_with_bigrational(a in edge_i64(), b in denom(), c in edge_i64(), d in denom()) {
        let (x, y) = (big(a, b), big(c, d));
        let (cx, cy) = (Coeff::from_scalar(&x), Coeff::from_scalar(&y));
        prop_assert_eq!((&cx + &cy).to_scalar(), &x + &y);
        prop_assert_eq!((&cx - &cy).to_scalar(), &x - &y);
        prop_assert_eq!((&cx * &cy).to_scalar(), &x * &y);
        prop_assert_eq!((-&cx).to_scalar(), -x.clone());
        // representation is canonical, so equality is value equality
        prop_assert_eq!(&cx + &cy, Coeff::from_scalar(&(&x + &y)));
    }

    #[test]
    fn bracket_is_antisymmetric(a in 0usize..3, b in 0usize..3, n in -6i64..=6, m in -6i64..=6, k in -6i64..=6) {
        let g = KnAlgebra::new(tables(), Arc::new(FiniteLieAlgebra::parse("sl:2").unwrap()));
        let l = Label::two_point;
        let elems = [
            AlgebraElement::current(a, l(n)),
            AlgebraElement::current(b, l(m)),
            AlgebraElement::vector_field(l(k)),
        ];
        for x in &elems {
            for y in &elems {
                let xy = g.bracket(x, y).unwrap();
                let yx = g.bracket(y, x).unwrap();
                prop_assert_eq!(xy, yx.scaled(&-int(1)));
            }
        }
    }

    #[test]
    fn wedge_commutator_is_central(
        parts in proptest::collection::vec(1i64..4, 0..4),
        r in -4i64..=4,
        k in -4i64..=4,
    ) {
        let mut mu = parts;
        mu.sort_unstable_by(|x, y| y.cmp(x));
        let t = tables();
        let m = WedgeModule::new(Arc::clone(&t)).unwrap();
        let w = WedgeVector::from_partition(&mu);
        let gamma = t.gamma(Label::two_point(r), Label::two_point(k)).unwrap();
        prop_assert_eq!(m.commutator(r, k, &w).unwrap(), w.scaled(&-gamma));
    }
}
