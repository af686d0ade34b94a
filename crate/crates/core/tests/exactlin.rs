use degenlab_core::exactlin::{FpMatrix, Matrix, PrimeField, Rationals, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Leibniz determinant mod p.
fn det_mod(m: &[Vec<i64>], p: i64) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    fn go(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], p: i64, total: &mut i64) {
        let n = perm.len();
        if k == n {
            let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut prod = if inversions % 2 == 0 { 1 } else { p - 1 };
            for (row, &col) in perm.iter().enumerate() {
                prod = prod * m[row][col].rem_euclid(p) % p;
            }
            *total = (*total + prod) % p;
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            go(k + 1, perm, m, p, total);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, m, p, &mut total);
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|b| s >> b & 1 == 1).collect()).collect()
}

/// Largest order of a nonvanishing minor.
fn rank_by_minors(m: &[Vec<i64>], p: i64) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k).iter().any(|rs| {
                subsets(cols, k).iter().any(|cs| {
                    let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                    det_mod(&minor, p) != 0
                })
            })
        })
        .unwrap_or(0)
}

#[test]
fn rank_matches_minor_oracle_on_all_3x3_over_f2() {
    let f = PrimeField::new(2).unwrap();
    for code in 0u32..1 << 9 {
        let rows: Vec<Vec<i64>> = (0..3).map(|r| (0..3).map(|c| (code >> (3 * r + c) & 1) as i64).collect()).collect();
        let m = FpMatrix::from_i64_rows(&f, &rows).unwrap();
        assert_eq!(m.rank(), rank_by_minors(&rows, 2), "{rows:?}");
    }
}

fn fp_matrix(p: u64, max_dim: usize) -> impl Strategy<Value = FpMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |data| {
            let f = PrimeField::new(p).unwrap();
            FpMatrix::from_vec(&f, r, c, data).unwrap()
        })
    })
}

fn q_matrix(max_dim: usize) -> impl Strategy<Value = Matrix<Rationals>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-9i64..10, 1i64..5), r * c).prop_map(move |data| {
            let elems = data.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect();
            Matrix::from_vec(&Rationals, r, c, elems).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn random_3x3_over_f5_matches_minors(data in proptest::collection::vec(0u64..5, 9)) {
        let f = PrimeField::new(5).unwrap();
        let m = FpMatrix::from_vec(&f, 3, 3, data).unwrap();
        prop_assert_eq!(m.rank(), rank_by_minors(&m.to_i64_rows(), 5));
    }

    #[test]
    fn rank_of_transpose(m in fp_matrix(7, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in fp_matrix(3, 6)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        prop_assert!(m.dot(kernel.basis()).is_zero());
    }

    #[test]
    fn rank_factorization_recomposes(m in fp_matrix(11, 5)) {
        let (a, b) = m.rank_factorization();
        prop_assert_eq!(a.cols(), m.rank());
        prop_assert_eq!(a.dot(&b), m);
    }

    #[test]
    fn rationals_rank_nullity(m in q_matrix(4)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.dot(kernel.basis()).is_zero());
    }

    /// `dim(U + V) + dim(U ∩ V) = dim U + dim V`, and the modular law
    /// `U ∩ (V + W) = V + (U ∩ W)` when `V ⊆ U`.
    #[test]
    fn subspace_lattice_laws(a in fp_matrix(3, 4), b in fp_matrix(3, 4), c in fp_matrix(3, 4)) {
        let f = PrimeField::new(3).unwrap();
        let pad = |m: &FpMatrix| {
            if m.rows() == 4 { m.clone() } else { FpMatrix::zeros(&f, 4, 1) }
        };
        let (u0, v0, w) = (Subspace::span(&pad(&a)), Subspace::span(&pad(&b)), Subspace::span(&pad(&c)));
        let sum = u0.sum(&v0).unwrap();
        let meet = u0.intersect(&v0).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u0.dim() + v0.dim());
        let u = sum.clone();
        let v = v0.clone();
        let lhs = u.intersect(&v.sum(&w).unwrap()).unwrap();
        let rhs = v.sum(&u.intersect(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn preimage_is_characterized(
        (m, u) in (1usize..=3, 1usize..=3, 0usize..=3).prop_flat_map(|(rows, cols, k)| {
            let f = PrimeField::new(5).unwrap();
            let g = f.clone();
            (
                proptest::collection::vec(0u64..5, rows * cols)
                    .prop_map(move |d| FpMatrix::from_vec(&f, rows, cols, d).unwrap()),
                proptest::collection::vec(0u64..5, rows * k)
                    .prop_map(move |d| FpMatrix::from_vec(&g, rows, k, d).unwrap()),
            )
        })
    ) {
        let target = Subspace::span(&u);
        let pre = Subspace::preimage(&m, &target).unwrap();
        let image = Subspace::image_under(&m, &pre).unwrap();
        prop_assert!(image.is_subspace_of(&target));
        // v lies in the preimage exactly when m v lies in U, for every v in F_5^cols
        let cols = m.cols() as u32;
        for code in 0..5u64.pow(cols) {
            let v: Vec<u64> = (0..cols).map(|i| code / 5u64.pow(i) % 5).collect();
            prop_assert_eq!(target.contains(&m.apply(&v)), pre.contains(&v));
        }
    }
}
