#![no_main]

use libfuzzer_sys::fuzz_target;
use threefree::FamilySpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<FamilySpec>() else { return };
    let printed = spec.to_string();
    let again: FamilySpec = printed.parse().expect("canonical text parses");
    assert_eq!(again, spec);
    assert_eq!(again.to_string(), printed);
});
