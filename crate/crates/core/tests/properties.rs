use proptest::prelude::*;

use tschirn_core::arith::{bareiss_det, LaurentPoly, Rat, UniPoly};
use tschirn_core::birkhoff::{splitting_type, SplittingType, TransitionMatrix};
use tschirn_core::instances::{random_instance, random_plane_curve, PlaneCase, PlaneError};
use tschirn_core::pipeline::{structure_splitting, twisted_splitting, verify_plane, PipelineError, VerifyOptions};
use tschirn_core::polymat::{LaurentMatrix, Matrix};

/// Cofactor expansion along the first row.
fn cofactor_det(a: &[Vec<UniPoly>]) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut acc = UniPoly::zero();
    for j in 0..n {
        let minor: Vec<Vec<UniPoly>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &a[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 0..4)
        .prop_map(|c| UniPoly::new(c.into_iter().map(|(p, q)| Rat::new(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..5, entries in prop::collection::vec(poly(), 16)) {
        let rows: Vec<Vec<UniPoly>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert_eq!(bareiss_det(rows.clone()), cofactor_det(&rows));
    }

    #[test]
    fn diagonal_and_shift(degs in prop::collection::vec(-6i64..=6, 1..5), k in -3i64..=3) {
        let d: LaurentMatrix = Matrix::diagonal(degs.iter().map(|&a| LaurentPoly::x_pow(a)).collect());
        let t = TransitionMatrix::new(d.clone()).unwrap();
        prop_assert_eq!(splitting_type(&t).unwrap(), SplittingType::new(degs.clone()));
        let shifted = TransitionMatrix::new(d.shift(k)).unwrap();
        let want: Vec<i64> = degs.iter().map(|a| a + k).collect();
        prop_assert_eq!(splitting_type(&shifted).unwrap(), SplittingType::new(want));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `Σ(dᵢ + 1) = χ(O_X) = 1 − g` with `g` the arithmetic genus of the class.
    #[test]
    fn degree_sum_is_euler_characteristic(m in 2usize..5, e in 1i64..3, delta in 0i64..2, seed in any::<u64>()) {
        let c = random_instance(m, e, delta, seed, 4).unwrap().curve;
        let t = structure_splitting(&c).unwrap();
        let mi = m as i64;
        let genus = mi * (mi - 1) / 2 * e + if delta == 0 { 1 - mi } else { 0 };
        prop_assert_eq!(t.total_degree() + mi, 1 - genus);
        prop_assert_eq!(t.degrees()[0], 0);
        if delta == 1 {
            // twisting by an effective divisor of degree 1 raises χ by one
            let tw = twisted_splitting(&c).unwrap();
            prop_assert_eq!(tw.total_degree(), t.total_degree() + 1);
        }
    }

    #[test]
    fn plane_projection_degrees(m in 3u32..5, through in any::<bool>(), seed in any::<u64>()) {
        let case = if through { PlaneCase::B } else { PlaneCase::A };
        let c = random_plane_curve(m, case, seed, 3);
        match verify_plane(&c, &VerifyOptions::default()) {
            Ok(r) => {
                let info = r.plane.unwrap();
                prop_assert_eq!(info.cover_degree as u32 + through as u32, m);
                prop_assert_eq!(r.e, 1);
                // plane genus (m−1)(m−2)/2
                let g = (m as i64 - 1) * (m as i64 - 2) / 2;
                prop_assert_eq!(r.genus.splitting, Some(g));
            }
            Err(e) => prop_assert!(
                matches!(e, PipelineError::Singular(_) | PipelineError::Plane(PlaneError::Inflection(_))),
                "{e}"
            ),
        }
    }
}
