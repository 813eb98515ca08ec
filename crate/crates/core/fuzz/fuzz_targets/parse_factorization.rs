#![no_main]
use libfuzzer_sys::fuzz_target;
use starfact::{Instance, StarFactorization};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(fac) = StarFactorization::parse(text, 6, 3) else {
        return;
    };
    assert_eq!(
        StarFactorization::parse(&fac.to_string(), 6, 3).unwrap(),
        fac
    );

    // decode against the product, when it is a member
    let pi = fac.evaluate();
    let inst = Instance::new(pi, 3).unwrap();
    if inst.check_member(&fac).is_ok() {
        let (w, c) = inst.rho_inv(&fac).unwrap();
        assert_eq!(inst.rho(&w, &c).unwrap(), fac);
        if let Ok(x) = inst.phi_inv(&fac) {
            assert_eq!(inst.phi(&x).unwrap(), fac);
        }
    }
});
