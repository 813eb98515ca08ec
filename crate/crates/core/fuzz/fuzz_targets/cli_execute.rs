#![no_main]
use libfuzzer_sys::fuzz_target;

// NUL-separated argv; budget is capped so one input stays cheap
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut argv: Vec<&str> = vec!["starfact"];
    argv.extend(text.split('\0'));
    if argv.iter().any(|a| a.len() > 64) || argv.len() > 16 {
        return;
    }
    // keep ground sets tiny: exhaustive subcommands are exponential in n
    let big = text
        .split(|c: char| !c.is_ascii_digit())
        .any(|t| t.len() > 1 || t.parse::<u32>().is_ok_and(|v| v > 6));
    if big || argv.iter().any(|a| *a == "audit" || *a == "enumerate") {
        return;
    }
    let out = starfact::cli::execute(argv);
    assert!(matches!(out.code, 0..=2));
    if out.code == 1 {
        assert_eq!(out.stderr.lines().count(), 1);
    }
});
