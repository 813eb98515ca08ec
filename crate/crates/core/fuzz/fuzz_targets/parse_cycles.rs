#![no_main]
use libfuzzer_sys::fuzz_target;
use starfact::Permutation;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let n = usize::from(n % 32) + 1;
    if let Ok(p) = Permutation::parse_cycles(text, n) {
        let again = Permutation::parse_cycles(&p.to_string(), n).unwrap();
        assert_eq!(again, p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }
});
