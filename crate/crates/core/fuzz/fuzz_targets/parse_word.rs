#![no_main]
use libfuzzer_sys::fuzz_target;
use starfact::{EnclosureChoice, Instance, Permutation, Word};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(word) = Word::parse(text) else { return };
    assert_eq!(Word::parse(&word.to_string()).unwrap(), word);

    let inst = Instance::new(Permutation::parse_cycles("(1 4 2)(3 5)(6)", 6).unwrap(), 3).unwrap();
    let ok = inst.validate_word(&word).is_ok();
    assert_eq!(ok, inst.is_valid_word(&word));
    if ok {
        let fac = inst.rho(&word, &EnclosureChoice(vec![1, 1])).unwrap();
        inst.check_member(&fac).unwrap();
    }
});
