#![no_main]

use libfuzzer_sys::fuzz_target;
use sdm_session::{load_session, save_session};

// Anything that loads must survive a save/load cycle unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(session) = load_session(text) {
        let saved = save_session(&session);
        let reloaded = load_session(&saved).expect("saved session reloads");
        assert_eq!(reloaded, session);
    }
});
