use std::collections::BTreeSet;

use proptest::prelude::*;

use ooc::code::{normalize, support, Cell, Code, CodeParams, Codeword};
use ooc::construct::{equi_2mod4, g_regular_4g, ooc_2xm};
use ooc::document::{CodeDocument, Metadata};
use ooc::verify::{composition_census, structural_facts, verify_by_matrix, verify_code};

fn arb_code(max_n: u32, max_m: u32, max_words: usize) -> impl Strategy<Value = Code> {
    (1..=max_n, 1..=max_m, 1..=3u32)
        .prop_filter("room for three cells", |(n, m, _)| n * m >= 3)
        .prop_flat_map(move |(n, m, la)| {
            let cell = (0..n, 0..m).prop_map(|(r, s)| Cell::new(r, s));
            let word = proptest::collection::btree_set(cell, 3)
                .prop_map(|cells| Codeword::new(cells).unwrap());
            proptest::collection::vec(word, 0..=max_words).prop_map(move |words| {
                Code::new(CodeParams::weight3(n, m, la).unwrap(), words).unwrap()
            })
        })
}

fn verdict(code: &Code) -> (bool, bool) {
    let r = verify_code(code);
    (r.auto_ok, r.cross_ok)
}

proptest! {
    #[test]
    fn difference_and_matrix_verdicts_agree(code in arb_code(3, 12, 5)) {
        prop_assert_eq!(verdict(&code), verify_by_matrix(&code).unwrap());
    }

    #[test]
    fn translation_does_not_change_verdict(code in arb_code(3, 16, 6), shifts in proptest::collection::vec(0..64u32, 6)) {
        let m = code.params().m;
        let moved: Vec<Codeword> = code
            .codewords()
            .iter()
            .zip(shifts.iter().cycle())
            .map(|(cw, &s)| cw.translate(s, m))
            .collect();
        let moved = Code::new(*code.params(), moved).unwrap();
        prop_assert_eq!(verdict(&code), verdict(&moved));
        prop_assert_eq!(code.normalized(), moved.normalized());
    }

    #[test]
    fn row_permutation_does_not_change_verdict(code in arb_code(3, 12, 5), rot in 0..3u32) {
        let n = code.params().n;
        let permuted: Vec<Codeword> = code.codewords().iter().map(|cw| cw.map_rows(|r| (r + rot) % n)).collect();
        let permuted = Code::new(*code.params(), permuted).unwrap();
        prop_assert_eq!(verdict(&code), verdict(&permuted));
    }

    #[test]
    fn normalize_is_idempotent(code in arb_code(3, 16, 4)) {
        let m = code.params().m;
        for cw in code.codewords() {
            let once = normalize(cw, m);
            prop_assert_eq!(normalize(&once, m), once.clone());
            prop_assert_eq!(once.cells()[0].slot, 0);
        }
    }

    #[test]
    fn document_round_trip(code in arb_code(3, 20, 6)) {
        let doc = CodeDocument::from_code(&code, Metadata::default());
        let parsed = CodeDocument::parse(&doc.render()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_code().unwrap(), code.normalized());
    }

    #[test]
    fn census_counts_every_codeword(code in arb_code(3, 16, 6)) {
        let c = composition_census(&code).unwrap();
        prop_assert_eq!(c.alpha + c.beta + c.gamma, code.len());
        prop_assert_eq!(c.alpha2 + c.alpha3 + c.alpha4 + c.alpha5 + c.alpha6, c.alpha);
        prop_assert_eq!(c.beta1 + c.beta2, c.beta);
    }

    #[test]
    fn support_and_leave_partition_the_nonzero_residues(code in arb_code(1, 30, 5)) {
        let m = code.params().m;
        let f = structural_facts(&code).unwrap();
        let mut all: BTreeSet<u32> = f.support.clone();
        prop_assert!(f.support.is_disjoint(&f.difference_leave));
        all.extend(&f.difference_leave);
        prop_assert_eq!(all, (1..m).collect::<BTreeSet<_>>());
        for cw in code.codewords() {
            prop_assert!(support(cw, m).is_subset(&f.support));
        }
    }

    #[test]
    fn equi_2mod4_size_and_leave(k in 0u32..60) {
        let m = 4 * k + 2;
        let r = equi_2mod4(m).unwrap();
        prop_assert_eq!(r.code.len() as u32, k);
        prop_assert_eq!(structural_facts(&r.code).unwrap().difference_leave, BTreeSet::from([m / 2]));
    }

    #[test]
    fn g_regular_codes_avoid_their_subgroup(g in 1u32..60) {
        let r = g_regular_4g(g).unwrap();
        let f = structural_facts(&r.code).unwrap();
        prop_assert!(f.regular_subgroups.contains(&g));
        prop_assert!(f.is_equi_difference);
    }

    #[test]
    fn two_row_codes_meet_the_two_row_bound(k in 1u32..60) {
        let m = 4 * k;
        let r = ooc_2xm(m).unwrap();
        let bound = ooc::bounds::phi_upper_bound(2, u64::from(m)).unwrap().value;
        prop_assert_eq!(r.code.len() as u64, bound);
        prop_assert!(verify_code(&r.code).ok());
    }
}
