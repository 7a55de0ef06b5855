use std::sync::Arc;

use proptest::prelude::*;

use equimirror_core::algebra::{rat, BiLaurent, UniPoly};
use equimirror_core::combinatorics::{stilde, stilde_induced, verify_identities, GammaCtx};
use equimirror_core::groups::{IntMatrix, MatrixGroup, DEFAULT_CAP};
use equimirror_core::hypersurface::{e_stringy_reflexive, verify_hypersurface_identities, ReflexivePair};
use equimirror_core::polytope::{ConeComplex, LatticePolytope};

fn full_dim(points: &[Vec<i64>]) -> Option<LatticePolytope> {
    LatticePolytope::from_points(points).ok()
}

fn assert_all_pass(k: &ConeComplex, pair: Option<&ReflexivePair>) {
    let mut checks = verify_identities(k, None).unwrap();
    checks.extend(verify_hypersurface_identities(k, pair).unwrap());
    for c in checks {
        assert!(c.passed(), "{}: {:?}", c.name, c.failures);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_on_random_polytopes(pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4..9)) {
        if let Some(p) = full_dim(&pts) {
            let k = ConeComplex::build(p, MatrixGroup::trivial(4)).unwrap();
            assert_all_pass(&k, None);
        }
    }

    #[test]
    fn identities_on_centrally_symmetric_polytopes(pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2..5)) {
        let mut all = pts.clone();
        all.extend(pts.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        if let Some(p) = full_dim(&all) {
            let eps = IntMatrix::identity(3).scaled(-1).extend_affine();
            let g = Arc::new(MatrixGroup::generate(4, &[eps], DEFAULT_CAP).unwrap());
            let k = ConeComplex::build(p, g).unwrap();
            let pair = if k.polytope().is_reflexive() { Some(ReflexivePair::new(k.clone()).unwrap()) } else { None };
            assert_all_pass(&k, pair.as_ref());
        }
    }

    /// Polygons whose only interior lattice point is the origin are reflexive,
    /// and the anticanonical curve is elliptic.
    #[test]
    fn reflexive_polygons_give_elliptic_curves(mask in 1u32..256) {
        let ring: Vec<Vec<i64>> = vec![vec![-1, -1], vec![0, -1], vec![1, -1], vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 1], vec![-1, 0]];
        let pts: Vec<Vec<i64>> = ring.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        if let Some(p) = full_dim(&pts) {
            if p.is_reflexive() && p.reflexive_center() == Some(vec![0, 0]) {
                let k = ConeComplex::build(p, MatrixGroup::trivial(3)).unwrap();
                let pair = ReflexivePair::new(k).unwrap();
                let want = BiLaurent::from_terms([((0, 0), rat(1)), ((1, 0), rat(-1)), ((0, 1), rat(-1)), ((1, 1), rat(1))]);
                let e = e_stringy_reflexive(pair.x()).unwrap();
                prop_assert_eq!(&e.values()[0], &want);
                assert_all_pass(pair.primal(), Some(&pair));
            }
        }
    }

    /// φ at the identity agrees with the usual Ehrhart numerator computed
    /// from a direct count of lattice points in dilates.
    #[test]
    fn phi_matches_direct_counts(pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3..7)) {
        if let Some(p) = full_dim(&pts) {
            let k = ConeComplex::build(p.clone(), MatrixGroup::trivial(3)).unwrap();
            let mut c = GammaCtx::new(&k, 0);
            let phi = c.phi(k.top()).unwrap();
            let count = |m: i64| -> i64 {
                let mut n = 0;
                for x in -2 * m..=2 * m {
                    for y in -2 * m..=2 * m {
                        if p.facets().iter().all(|f| f.normal[0] * x + f.normal[1] * y <= m * f.offset) {
                            n += 1;
                        }
                    }
                }
                n
            };
            // Ehrhart series times (1-t)^3, truncated to degree 2
            let series = UniPoly::from_coeffs((0..3).map(|m| rat(count(m))).collect());
            let want = (&series * &UniPoly::from_ints(&[1, -1]).pow(3)).truncate(2);
            prop_assert_eq!(phi, want);
        }
    }
}

#[test]
fn stilde_orbit_sum_agrees_with_per_element_form() {
    let pts: Vec<Vec<i64>> = (0..16u32).map(|m| (0..4).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
    let p = LatticePolytope::from_points(&pts).unwrap();
    let eps = IntMatrix::identity(4).scaled(-1).extend_affine();
    let g = Arc::new(MatrixGroup::generate(5, &[eps], DEFAULT_CAP).unwrap());
    let k = ConeComplex::build(p, g).unwrap();
    let direct = stilde(&k, k.top()).unwrap();
    let induced = stilde_induced(&k).unwrap();
    assert_eq!(direct.values(), induced.values());
}
