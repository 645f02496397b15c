mod common;

use common::small;
use listchroma::cli::{parse_instance, parse_instance_file, write_instance};
use proptest::prelude::*;

proptest! {
    #[test]
    fn write_then_parse_is_identity(s in small(12)) {
        let inst = s.instance();
        let text = write_instance(&inst, &["roundtrip".to_string()]);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.graph(), inst.graph());
        prop_assert_eq!(back.weights(), inst.weights());
        prop_assert_eq!(back.lists(), inst.lists());
        prop_assert_eq!(back.colors(), inst.colors());
        prop_assert_eq!(write_instance(&back, &["roundtrip".to_string()]), text);
    }
}

#[test]
fn errors_carry_line_numbers() {
    let cases = [
        ("e 1 2\n", 1),
        ("p mwlcp 2 1 1\ne 1 3\nw 1 1\nl 1 1 1\nl 2 1 1\n", 2),
        ("p mwlcp 2 1 1\ne 1 2\ne 2 1\nw 1 1\nl 1 1 1\nl 2 1 1\n", 3),
        ("c x\np mwlcp 2 0 1\nw 1 1\nl 1 2 1\nl 2 1 1\n", 4),
        ("p mwlcp 2 0 1\nw 1 1\nl 1 1 1\n", 3),
    ];
    for (text, line) in cases {
        let err = parse_instance_file(text).unwrap_err();
        assert_eq!(err.line, line, "{text:?}: {err}");
    }
}
