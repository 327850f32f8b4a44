#![no_main]

use libfuzzer_sys::fuzz_target;
use sdm_service::dto::parse_create_request;
use sdm_session::Session;

fuzz_target!(|data: &[u8]| {
    let Ok(req) = parse_create_request(data) else {
        return;
    };
    if let Ok(session) =
        Session::create(req.config, req.criteria, req.alternatives, req.participants)
    {
        let sdm = session.sdm_id();
        assert_eq!(
            session
                .participants()
                .iter()
                .filter(|p| p.role == sdm_core::Role::Sdm)
                .count(),
            1
        );
        assert!(session.participant(sdm).is_some());
    }
});
