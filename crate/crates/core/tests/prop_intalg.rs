use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use slaglab::intalg::{smith_normal_form, FgAbelianGroup, GroupHom, IntegerMatrix};

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r),
        )
    })
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.determinant().abs().is_one()
}

proptest! {
    #[test]
    fn smith_form_is_a_valid_factorization((r, c, rows) in matrix()) {
        let m = IntegerMatrix::from_rows(&rows, c).unwrap();
        let s = smith_normal_form(&m);
        prop_assert!(s.d.is_diagonal());
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        for i in f.len()..r.min(c) {
            prop_assert!(s.d[(i, i)].is_zero());
        }
    }

    #[test]
    fn square_determinant_is_product_of_factors(rows in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let n = rows.len();
        let m = IntegerMatrix::from_rows(&rows, n).unwrap();
        let f = smith_normal_form(&m).invariant_factors();
        let expected = if f.len() < n { BigInt::zero() } else { f.iter().product() };
        prop_assert_eq!(m.determinant().abs(), expected);
    }

    #[test]
    fn images_are_in_the_image(
        rank in 0usize..=2,
        torsion in prop::sample::select(vec![vec![], vec![2], vec![3], vec![2, 6]]),
        crank in 0usize..=2,
        ctorsion in prop::sample::select(vec![vec![], vec![4], vec![2, 2]]),
        seed in prop::collection::vec(-4i64..=4, 32),
    ) {
        let dom = FgAbelianGroup::new(rank, torsion).unwrap();
        let cod = FgAbelianGroup::new(crank, ctorsion).unwrap();
        let (k, l) = (dom.num_generators(), cod.num_generators());
        let rows: Vec<Vec<i64>> = (0..l).map(|i| seed[i * k..(i + 1) * k].to_vec()).collect();
        let Ok(h) = GroupHom::from_i64(dom, cod.clone(), &rows) else { return Ok(()) };
        let x: Vec<i64> = seed[16..16 + k].to_vec();
        let y: Vec<i64> = h.apply(&x).unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect();
        prop_assert!(h.in_image(&y).unwrap());
        let pre = h.preimage(&y).unwrap().expect("preimage exists");
        let pre: Vec<i64> = pre.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let back = h.apply(&pre).unwrap();
        let diff: Vec<BigInt> = back.iter().zip(&y).map(|(a, b)| a - BigInt::from(*b)).collect();
        prop_assert!(cod.is_zero_element(&diff));
    }

    #[test]
    fn cokernel_of_identity_is_trivial(rank in 0usize..=3, torsion in prop::sample::select(vec![vec![], vec![5], vec![2, 4]])) {
        let g = FgAbelianGroup::new(rank, torsion).unwrap();
        prop_assert!(GroupHom::identity(&g).cokernel().unwrap().is_trivial());
    }
}
