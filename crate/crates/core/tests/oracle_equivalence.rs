use std::time::Instant;

use persistor_core::algebra::mu_from_beta;
use persistor_core::hodge::{beta_table, RANK_TOL};
use persistor_core::reduction::mu_gf2;
use persistor_testkit::{exact_beta_gf2, exact_beta_rational, exact_mu_gf2, rips_corpus};

#[test]
fn gf2_pipeline_matches_exact_oracle() {
    let t = Instant::now();
    for (k, case) in rips_corpus(11, 200, 10, 3).iter().enumerate() {
        let f = &case.filtration;
        assert_eq!(mu_gf2(f).unwrap(), exact_mu_gf2(f), "case {k}");
    }
    eprintln!("gf2 corpus: {:?}", t.elapsed());
}

#[test]
fn hodge_matches_exact_rational() {
    let t = Instant::now();
    for (k, case) in rips_corpus(11, 200, 10, 3).iter().enumerate() {
        let f = &case.filtration;
        let exact = exact_beta_rational(f);
        assert_eq!(beta_table(f, RANK_TOL).unwrap(), exact, "case {k}");
        assert_eq!(exact, exact_beta_gf2(f), "torsion in case {k}");
        assert_eq!(mu_from_beta(&exact).unwrap(), mu_gf2(f).unwrap(), "case {k}");
    }
    eprintln!("real corpus: {:?}", t.elapsed());
}
