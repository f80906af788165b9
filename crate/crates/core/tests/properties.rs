use proptest::prelude::*;

use cdga_config::algebra::{check_cdga, koszul, DgAlgebra};
use cdga_config::cohomology::cohomology;
use cdga_config::expr::parse_element;
use cdga_config::io::AlgebraFile;
use cdga_config::linalg::{int, kernel_basis, rank, ratio, sign, solve, Scalar, SparseMatrix, SparseVec};
use cdga_config::poincare::PdAlgebra;
use cdga_config::presets;
use cdga_config::sullivan::{iso_obstruction, s2xs3_table};
use cdga_config::twisted::build_cxi;

const PD_PRESETS: [&str; 8] = ["s2", "s3", "s4", "s5", "cp2", "s2xs3", "s3xs4", "point"];

fn pd(name: &str) -> PdAlgebra {
    presets::pd(name).unwrap()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(scalar(), dim).prop_map(|v| SparseVec::from_dense(&v))
}

fn matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(scalar(), c), r).prop_map(|rows| SparseMatrix::from_dense(&rows))
    })
}

/// Element of one homogeneous degree: a random combination of the basis in
/// that degree.
fn homogeneous(a: &DgAlgebra, k: usize, coeffs: &[Scalar]) -> SparseVec {
    let mut v = SparseVec::new();
    for (&i, c) in a.basis().in_degree(k).iter().zip(coeffs.iter().cycle()) {
        v.add_at(i, c);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_solve(m in matrix(), x in element(4)) {
        let x = SparseVec::from_pairs(x.iter().filter(|(i, _)| *i < m.cols()).map(|(i, c)| (i, c.clone())));
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for k in &kernel {
            prop_assert!(m.mul_vec(k).is_zero());
        }
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    // Δ computed from an arbitrary degree-preserving basis agrees with Δ.
    #[test]
    fn diagonal_is_basis_independent(name in prop::sample::select(&PD_PRESETS[..6]), seed in element(16)) {
        let p = pd(name);
        let a = &p.algebra;
        let aa = p.square();
        let coeffs: Vec<Scalar> = seed.to_dense(16);
        // b_i = a_i + Σ_{j>i, same degree} c·a_j, unitriangular so invertible
        let mut t = 0;
        let basis: Vec<SparseVec> = (0..a.dim())
            .map(|i| {
                let mut v = SparseVec::unit(i);
                for j in i + 1..a.dim() {
                    if a.degree(j) == a.degree(i) {
                        v.add_at(j, &coeffs[t % 16]);
                        t += 1;
                    }
                }
                v
            })
            .collect();
        let pair = |x: &SparseVec, y: &SparseVec| p.epsilon(&a.mul(x, y));
        let mut delta = SparseVec::new();
        for (i, b) in basis.iter().enumerate() {
            let k = p.n - a.degree(i);
            // b* solves ⟨b_j, b*⟩ = δ_ij over A^{n-|b|}
            let slots = a.basis().in_degree(k);
            let peers: Vec<usize> = (0..a.dim()).filter(|&j| a.degree(j) == a.degree(i)).collect();
            let rows: Vec<Vec<Scalar>> = peers
                .iter()
                .map(|&j| slots.iter().map(|&s| pair(&basis[j], &SparseVec::unit(s))).collect())
                .collect();
            let rhs = SparseVec::from_pairs(peers.iter().position(|&j| j == i).map(|p| (p, int(1))));
            let sol = solve(&SparseMatrix::from_dense(&rows), &rhs).unwrap();
            let dual = SparseVec::from_pairs(sol.iter().map(|(q, c)| (slots[q], c.clone())));
            delta.add_scaled(&aa.tensor(b, &dual), &sign(a.degree(i) % 2 == 1));
        }
        prop_assert_eq!(delta, p.diagonal());
    }

    #[test]
    fn diagonal_symmetries(name in prop::sample::select(&PD_PRESETS[..]), x in element(8)) {
        let p = pd(name);
        let a = &p.algebra;
        let aa = p.square();
        let delta = p.diagonal();
        // τ(Δ) = (-1)^n Δ
        prop_assert_eq!(p.twist(&delta), delta.scaled(&sign(p.n % 2 == 1)));
        // μ(Δ) = χ(A)·ω
        let mut mu = SparseVec::new();
        for (k, c) in delta.iter() {
            let (i, j) = aa.pair(k);
            mu.add_scaled(&a.basis_product(i, j), c);
        }
        let chi: i64 = (0..a.dim()).map(|i| if a.degree(i) % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(mu, p.omega.scaled(&int(chi)));
        // (x⊗1)Δ = (1⊗x)Δ, and x ↦ (x⊗1)Δ is injective
        let x = SparseVec::from_pairs(x.iter().filter(|(i, _)| *i < a.dim()).map(|(i, c)| (i, c.clone())));
        let left = aa.algebra.mul(&aa.left_inclusion(&x), &delta);
        let right = aa.algebra.mul(&aa.right_inclusion(&x), &delta);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.is_zero(), x.is_zero());
    }

    #[test]
    fn tensor_square_is_associative(name in prop::sample::select(&PD_PRESETS[..6]), xs in prop::collection::vec(element(16), 3)) {
        let p = pd(name);
        let aa = &p.square().algebra;
        let cut = |v: &SparseVec| SparseVec::from_pairs(v.iter().filter(|(i, _)| *i < aa.dim()).map(|(i, c)| (i, c.clone())));
        let (x, y, z) = (cut(&xs[0]), cut(&xs[1]), cut(&xs[2]));
        prop_assert_eq!(aa.mul(&aa.mul(&x, &y), &z), aa.mul(&x, &aa.mul(&y, &z)));
        // Leibniz on homogeneous pieces
        for k in 0..aa.dim() {
            for l in 0..aa.dim() {
                let (ek, el) = (SparseVec::unit(k), SparseVec::unit(l));
                let mut rhs = aa.mul(&aa.d(&ek), &el);
                rhs.add_scaled(&aa.mul(&ek, &aa.d(&el)), &sign(aa.degree(k) % 2 == 1));
                prop_assert_eq!(aa.d(&aa.mul(&ek, &el)), rhs);
            }
        }
    }

    // Permuting the basis list of a file changes nothing observable.
    #[test]
    fn betti_invariant_under_reordering(name in prop::sample::select(&PD_PRESETS[..]), perm in any::<u64>()) {
        let mut f = presets::file(name).unwrap();
        let b0 = cohomology(&f.algebra().unwrap().complex()).unwrap().betti();
        let mut order: Vec<usize> = (0..f.basis.len()).collect();
        let mut s = perm;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        f.basis = order.iter().map(|&i| f.basis[i].clone()).collect();
        let again = AlgebraFile::parse(&f.to_json()).unwrap();
        let a = again.algebra().unwrap();
        prop_assert!(check_cdga(&a).first_failure().is_none());
        prop_assert_eq!(cohomology(&a.complex()).unwrap().betti(), b0);
        prop_assert!(again.pd_algebra().is_ok());
    }

    #[test]
    fn formatted_elements_parse_back(name in prop::sample::select(&PD_PRESETS[..6]), v in element(16)) {
        let p = pd(name);
        let aa = &p.square().algebra;
        let v = SparseVec::from_pairs(v.iter().filter(|(i, _)| *i < aa.dim()).map(|(i, c)| (i, c.clone())));
        let text = aa.format(&v);
        prop_assert_eq!(parse_element(aa, &text).unwrap(), v, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_xi_gives_a_cdga(name in prop::sample::select(vec!["s3", "s5", "s2xs3", "s3xs4"]), c in prop::collection::vec(scalar(), 4)) {
        let p = pd(name);
        let aa = &p.square().algebra;
        let xi = homogeneous(aa, 2 * p.n - 2, &c);
        let m = build_cxi(&p, &xi).unwrap();
        prop_assert!(check_cdga(&m.algebra).first_failure().is_none());
        let square = m.algebra.basis_product(m.s1, m.s1);
        prop_assert_eq!(square, m.truncation.quotient.project(&m.truncation.cone.include_target(&xi)));
    }

    #[test]
    fn solver_verdict_is_symmetric(q in -2i64..=2, r in -2i64..=2) {
        let (tq, tr) = (s2xs3_table(&int(q), &int(r)), s2xs3_table(&int(r), &int(q)));
        let forward = iso_obstruction(&tq, &tr).unwrap().verdict();
        let back = iso_obstruction(&tr, &tq).unwrap().verdict();
        prop_assert_eq!(forward, back);
        // the verdict depends only on q - r
        let shifted = iso_obstruction(&s2xs3_table(&int(q + 1), &int(r + 1)), &s2xs3_table(&int(r + 1), &int(q + 1)));
        prop_assert_eq!(shifted.unwrap().verdict(), forward);
    }
}

#[test]
fn koszul_sign_matches_parity() {
    for p in 0..6 {
        for q in 0..6 {
            assert_eq!(koszul(p, q), p % 2 == 1 && q % 2 == 1);
        }
    }
}
