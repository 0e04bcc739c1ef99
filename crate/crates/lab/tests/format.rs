use std::collections::BTreeSet;

use proptest::prelude::*;
use sunflower_lab::format::{parse_family, write_family};

fn family_text() -> impl Strategy<Value = (usize, Vec<BTreeSet<usize>>)> {
    (1usize..=40).prop_flat_map(|n| {
        let member = prop::collection::btree_set(1..=n, 1..=n.min(6));
        (Just(n), prop::collection::btree_set(member, 0..10).prop_map(|s| s.into_iter().collect()))
    })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity((n, sets) in family_text()) {
        let mut text = format!("# generated\nn={n}\n");
        for s in &sets {
            let line: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            text.push_str(&line.join(" "));
            text.push_str("\n\n");
        }
        let fam = parse_family(&text).unwrap();
        prop_assert_eq!(fam.ground().size(), n);
        prop_assert_eq!(fam.len(), sets.len());
        let written = write_family(&fam);
        let again = parse_family(&written).unwrap();
        prop_assert_eq!(&again, &fam);
        prop_assert_eq!(write_family(&again), written);
        let got: BTreeSet<Vec<usize>> = fam.members().iter().map(|m| m.to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn bad_tokens_are_located(line in 1usize..5, col_pad in 0usize..3) {
        let mut text = String::new();
        for _ in 1..line {
            text.push_str("1 2\n");
        }
        let prefix = "1 ".repeat(col_pad);
        text.push_str(&format!("{prefix}z\n"));
        let err = parse_family(&text).unwrap_err();
        prop_assert_eq!(err.line, line);
        // Repeated elements are reported before the bad token when present.
        if col_pad < 2 {
            prop_assert_eq!(err.column, 2 * col_pad + 1);
        }
    }
}

#[test]
fn header_is_optional_and_checked() {
    let fam = parse_family("1 5\n2 3\n").unwrap();
    assert_eq!(fam.ground().size(), 5);
    let err = parse_family("n=3\n1 4\n").unwrap_err();
    assert_eq!(err.line, 2);
    assert!(parse_family("1  2\n").is_err());
    assert!(parse_family("0 1\n").is_err());
    assert!(parse_family("1 2\nn=4\n").is_err());
}
