use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use digitnet::constructions::*;
use digitnet::discrepancy::*;
use digitnet::field::*;
use digitnet::metrics::*;
use digitnet::net::*;
use digitnet::pointfile;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix_strategy(b: u32, rows: usize, cols: usize) -> impl Strategy<Value = FieldMatrix> {
    prop::collection::vec(prop::collection::vec(0..b, cols), rows)
        .prop_map(move |r| FieldMatrix::from_rows(PrimeField::new(b).unwrap(), &r).unwrap())
}

/// Random net with `b^m <= 81`, `s <= 3`.
fn net_strategy() -> impl Strategy<Value = GeneratingMatrixSet> {
    (prop::sample::select(vec![(2u32, 1usize), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (3, 4)]), 1usize..=3)
        .prop_flat_map(|((b, m), s)| prop::collection::vec(matrix_strategy(b, m, m), s))
        .prop_map(|ms| GeneratingMatrixSet::new(ms).unwrap())
}

fn rational_set(s: usize, max_n: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec((1u128..=16).prop_flat_map(|d| (0..d, Just(d))), s), 1..=max_n).prop_map(
        move |pts| {
            let coords = pts
                .into_iter()
                .map(|p| p.into_iter().map(|(n, d)| Coord::rational(n, d).unwrap()).collect())
                .collect();
            PointSet::new(2, s, coords).unwrap()
        },
    )
}

fn rationals(p: &PointSet) -> Vec<Vec<BigRational>> {
    p.points().iter().map(|x| x.iter().map(Coord::to_rational).collect()).collect()
}

/// `int (A(t)/N - vol(t))^2 dt` summed cell by cell over the grid cut by every coordinate.
fn l2_squared_by_cells(pts: &[Vec<BigRational>]) -> BigRational {
    let s = pts[0].len();
    let n = BigRational::from_integer(BigInt::from(pts.len()));
    let cuts: Vec<Vec<BigRational>> = (0..s)
        .map(|j| {
            let mut c: Vec<BigRational> = pts.iter().map(|p| p[j].clone()).collect();
            c.push(BigRational::zero());
            c.push(BigRational::one());
            c.sort();
            c.dedup();
            c
        })
        .collect();
    let mut total = BigRational::zero();
    let mut idx = vec![0usize; s];
    'cells: loop {
        let lo: Vec<&BigRational> = (0..s).map(|j| &cuts[j][idx[j]]).collect();
        let hi: Vec<&BigRational> = (0..s).map(|j| &cuts[j][idx[j] + 1]).collect();
        let count = pts.iter().filter(|p| (0..s).all(|j| p[j] <= *lo[j])).count();
        let c = BigRational::from_integer(BigInt::from(count)) / &n;
        let mut vol = BigRational::one();
        let mut m1 = BigRational::one();
        let mut m2 = BigRational::one();
        for j in 0..s {
            vol *= hi[j] - lo[j];
            m1 *= (hi[j] * hi[j] - lo[j] * lo[j]) / BigRational::from_integer(2.into());
            m2 *= (hi[j] * hi[j] * hi[j] - lo[j] * lo[j] * lo[j]) / BigRational::from_integer(3.into());
        }
        total += &c * &c * vol - BigRational::from_integer(2.into()) * &c * m1 + m2;
        for j in 0..s {
            idx[j] += 1;
            if idx[j] + 1 < cuts[j].len() {
                continue 'cells;
            }
            idx[j] = 0;
        }
        break;
    }
    total
}

fn digit(k: u64, b: u32, i: usize) -> u64 {
    (k / u64::from(b).pow(i as u32)) % u64::from(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(b in prop::sample::select(PRIMES.to_vec()), rows in 1usize..6, cols in 1usize..7, seed in any::<u64>()) {
        let mut st = seed;
        let data: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| {
            st = st.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((st >> 33) % u64::from(b)) as u32
        }).collect()).collect();
        let a = FieldMatrix::from_rows(PrimeField::new(b).unwrap(), &data).unwrap();
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), cols);
        prop_assert!(a.rank() <= rows.min(cols));
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn t_value_matches_geometry(c in net_strategy()) {
        let t = compute_t_value(&c);
        let p = generate_net_points(&c).unwrap();
        prop_assert!(geometric_net_check(&p, t).unwrap());
        if t > 0 {
            prop_assert!(!geometric_net_check(&p, t - 1).unwrap());
        }
        prop_assert!(is_tms_net(&c, t));
    }

    #[test]
    fn dual_elements_annihilate(c in net_strategy()) {
        let (b, m, s) = (c.base(), c.m(), c.dim());
        let rank = c.stacked_transpose().rank();
        let d = dual_space(&c, 1 << 20).unwrap();
        prop_assert_eq!(d.len() as u64, u64::from(b).pow((s * m - rank) as u32));
        for k in d.elements() {
            for col in 0..m {
                let mut acc = 0u64;
                for j in 0..s {
                    for i in 0..m {
                        acc += digit(k[j], b, i) * u64::from(c.matrix(j).get(i, col));
                    }
                }
                prop_assert_eq!(acc % u64::from(b), 0);
            }
        }
    }

    #[test]
    fn character_property(c in net_strategy(), raw in prop::collection::vec(any::<u64>(), 3)) {
        let p = generate_net_points(&c).unwrap();
        let nb = u64::from(c.base()).pow(c.m() as u32);
        let k: Vec<u64> = raw[..c.dim()].iter().map(|x| x % nb).collect();
        let sum = char_property_sum(&p, &k).unwrap();
        let want = if c.is_dual(&k) { 1.0 } else { 0.0 };
        prop_assert!((sum.re - want).abs() < 1e-9 && sum.im.abs() < 1e-9, "{:?} {}", sum, want);
    }

    #[test]
    fn nrt_identity_for_full_rank(c in net_strategy()) {
        let full = c.matrices().iter().all(|a| a.rank() == a.cols());
        prop_assume!(full);
        let (holds, _, _) = nrt_identity_holds(&c, 1 << 20).unwrap();
        prop_assert!(holds);
    }

    #[test]
    fn l2_permutation_invariant(p in rational_set(3, 12), shift in 0usize..12, rot in 0usize..3) {
        let base = l2_exact(&p).unwrap().value;
        let order: Vec<usize> = (0..p.len()).map(|i| (i + shift) % p.len()).rev().collect();
        prop_assert!((l2_exact(&p.permuted(&order)).unwrap().value - base).abs() < 1e-12);
        let swapped: Vec<Vec<Coord>> = p.points().iter().map(|x| (0..3).map(|j| x[(j + rot) % 3].clone()).collect()).collect();
        let q = PointSet::new(2, 3, swapped).unwrap();
        prop_assert!((l2_exact(&q).unwrap().value - base).abs() < 1e-12);
    }

    #[test]
    fn l2_matches_rational(p in rational_set(2, 20)) {
        let exact = l2_exact_rational(&p).unwrap().to_f64().unwrap().sqrt();
        prop_assert!((l2_exact(&p).unwrap().value - exact).abs() < 1e-12);
    }

    #[test]
    fn l2_matches_cell_integration(s in 1usize..=3, seed in any::<u64>()) {
        let mut st = seed | 1;
        let mut next = |d: u64| { st ^= st << 13; st ^= st >> 7; st ^= st << 17; st % d };
        let n = 1 + next(8) as usize;
        let pts: Vec<Vec<Coord>> = (0..n).map(|_| (0..s).map(|_| {
            let d = 1 + next(9) as u128;
            Coord::rational(next(d as u64) as u128, d).unwrap()
        }).collect()).collect();
        let p = PointSet::new(2, s, pts).unwrap();
        prop_assert_eq!(l2_exact_rational(&p).unwrap(), l2_squared_by_cells(&rationals(&p)));
    }

    #[test]
    fn roth_bound_holds(p in rational_set(2, 40)) {
        let l2 = l2_exact(&p).unwrap().value;
        prop_assert!(l2 >= roth_lower_bound(2, p.len(), 2.0).value);
        let r = roth_ratio(p.len(), 2, 2.0, l2);
        prop_assert!(r.is_none_or(|r| r >= 1.0));
    }

    #[test]
    fn local_discrepancy_bounded(p in rational_set(2, 16), t in prop::collection::vec(0.0f64..=1.0, 2)) {
        let d = local_discrepancy(&p, &t).unwrap();
        prop_assert!((-1.0..=1.0).contains(&d));
    }

    #[test]
    fn pointfile_round_trip(p in rational_set(3, 10)) {
        let back = pointfile::from_str(&pointfile::to_string(&p)).unwrap();
        prop_assert_eq!(rationals(&back), rationals(&p));
    }

    #[test]
    fn pointfile_round_trip_digital(c in net_strategy()) {
        let p = generate_net_points(&c).unwrap();
        let back = pointfile::from_str(&pointfile::to_string(&p)).unwrap();
        prop_assert_eq!(back.points(), p.points());
    }

    #[test]
    fn interlacing_paths_agree(c in net_strategy(), alpha in 1usize..=3) {
        prop_assume!(c.base() == 2 && c.dim() % alpha == 0);
        let by_points = interlace_points(&generate_net_points(&c).unwrap(), alpha).unwrap();
        let by_matrices = generate_net_points(&interlace_matrices(&c, alpha).unwrap()).unwrap();
        prop_assert_eq!(by_points.points(), by_matrices.points());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lq_deterministic(p in rational_set(2, 10), seed in any::<u64>(), q in 1.0f64..4.0) {
        let a = lq_estimate(&p, q, 512, seed).unwrap();
        let b = lq_estimate(&p, q, 512, seed).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert!(a.value >= 0.0 && a.stderr.unwrap() >= 0.0);
    }

    #[test]
    fn trim_keeps_order_and_count(m in 1usize..5, frac in 0.0f64..1.0) {
        let full = dp_untrimmed_pointset(m, 2).unwrap();
        let half = full.len() / 2;
        let n = half + 1 + ((half - 1) as f64 * frac) as usize;
        let trimmed = arbitrary_n_trim(&full, n).unwrap();
        prop_assert_eq!(trimmed.len(), n);
        prop_assert!(trimmed.points().iter().all(|x| x.iter().all(|c| (0.0..1.0).contains(&c.to_f64()))));
    }
}
