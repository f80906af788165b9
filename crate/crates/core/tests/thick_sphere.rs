// A non-minimal model of S⁷ with acyclic pieces u→v and c→e. It is the
// smallest preset-style input where the equivalence ideal has S ≠ 0.

use cdga_config::algebra::check_cdga;
use cdga_config::cohomology::{cohomology, padded};
use cdga_config::cone::cone_model;
use cdga_config::io::AlgebraFile;
use cdga_config::poincare::PdAlgebra;
use cdga_config::twisted::{equivalence_ideal, phi, quotient_by_diagonal};

fn thick() -> PdAlgebra {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/s7_thick.json");
    AlgebraFile::read(path).unwrap().pd_algebra().unwrap()
}

#[test]
fn is_a_model_of_s7() {
    let p = thick();
    assert!(check_cdga(&p.algebra).first_failure().is_none());
    assert_eq!(cohomology(&p.algebra.complex()).unwrap().betti(), vec![1, 0, 0, 0, 0, 0, 0, 1]);
}

#[test]
fn configuration_formula_holds() {
    let p = thick();
    let q = cohomology(&quotient_by_diagonal(&p).unwrap().algebra.complex()).unwrap().betti();
    let c = cohomology(&cone_model(&p).unwrap().algebra.complex()).unwrap().betti();
    let len = q.len().max(c.len());
    assert_eq!(padded(&q, len), padded(&c, len));
    assert_eq!(padded(&q, 8), vec![1, 0, 0, 0, 0, 0, 0, 1]);
}

#[test]
fn equivalence_ideal_with_nonzero_s() {
    let p = thick();
    let i = equivalence_ideal(&p).unwrap();
    // c⊗w and w⊗c are not cocycles
    assert_eq!(i.s.len(), 2);
    for v in &i.s {
        assert!(!p.square().algebra.d(v).is_zero());
        assert!(i.subspace.contains(&i.cone.include_target(v)));
    }
    let phi = phi(&p).unwrap();
    assert_eq!((phi.matrix.rows(), phi.matrix.cols()), (0, 0));
}
