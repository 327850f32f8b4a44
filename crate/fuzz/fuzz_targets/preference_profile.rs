#![no_main]

use libfuzzer_sys::fuzz_target;
use sdm_core::worked_example as wx;
use sdm_core::{evaluate, PreferenceProfile};

fuzz_target!(|data: &[u8]| {
    let Ok(profile) = serde_json::from_slice::<PreferenceProfile>(data) else {
        return;
    };
    let criteria = wx::criteria();
    let alternatives = wx::alternatives();
    let valid = profile.validate(&criteria, &alternatives).is_ok();
    match evaluate(&profile, &criteria, &alternatives) {
        Ok(f) => {
            assert!(valid);
            let bound = profile.weight_sum();
            for v in f.values.values() {
                assert!(*v >= 0.0 && *v <= bound + 1e-9);
            }
        }
        Err(_) => assert!(!valid),
    }
});
