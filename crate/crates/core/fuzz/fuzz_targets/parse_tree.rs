#![no_main]
use libfuzzer_sys::fuzz_target;
use starfact::{Instance, OrderedTree, Permutation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(tree) = OrderedTree::parse(text) else {
        return;
    };
    assert_eq!(OrderedTree::parse(&tree.to_string()).unwrap(), tree);
    let _ = tree.to_dot();

    let pi = Permutation::parse_cycles("(1 4 2)(3 5)(6)", 6).unwrap();
    for k in [1, 3, 6] {
        let inst = Instance::new(pi.clone(), k).unwrap();
        if let Ok(h) = inst.tree_inverse(&tree) {
            assert_eq!(inst.tree_forward(&h).unwrap(), tree);
        }
    }
});
