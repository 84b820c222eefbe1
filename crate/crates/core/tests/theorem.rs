mod common;

use common::SpecGen;
use hodgebound_core::lfunction::{verify_newton_over_hodge, VerifyOptions};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn newton_lies_over_hodge(seed in any::<u64>()) {
        let spec = SpecGen::new(seed).spec();
        let opts = VerifyOptions { budget: 300_000, ..VerifyOptions::default() };
        match verify_newton_over_hodge(&spec, &opts) {
            Ok(r) => {
                prop_assert!(r.theorem.holds, "{:?}", spec);
                prop_assert!(r.degree_match && r.endpoints_match && r.slopes_in_unit_interval);
                let d = r.duality.unwrap();
                prop_assert!(d.np_dual && d.hp_dual);
            }
            Err(hodgebound_core::Error::Budget { .. }) => {}
            Err(e) => prop_assert!(false, "{e} for {:?}", spec),
        }
    }
}
