use proptest::prelude::*;
use sha2::{Digest, Sha256};
use weibull_gof::distributions::CensoredSample;
use weibull_gof::harness::data::{emit, ingest, parse_dataset, write_dataset, Bundled};

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[test]
fn bundled_files_are_pinned() {
    assert_eq!(
        sha256_hex(Bundled::LeukemiaSurvival.contents()),
        "29e878aa5f0cf6f4e976918c8bf33d0168ac2b944e35a490334c7d0b0d0efbf6"
    );
    assert_eq!(
        sha256_hex(Bundled::RemissionTimes.contents()),
        "d5cad51d9ffd63ad7e77b01075554511d8fc7984dffe0174c319dd9df8615b4d"
    );
}

#[test]
fn remission_times_have_fourteen_censored() {
    let s = Bundled::RemissionTimes.sample();
    assert_eq!(s.len(), 66);
    assert_eq!(s.len() - s.events(), 14);
    let censored: Vec<f64> = s
        .times()
        .iter()
        .zip(s.deltas())
        .filter(|(_, &d)| !d)
        .map(|(&t, _)| t)
        .collect();
    assert_eq!(
        censored,
        [
            12.0, 20.0, 159.0, 161.0, 190.0, 196.0, 197.0, 199.0, 205.0, 217.0, 219.0, 245.0,
            258.0, 269.0
        ]
    );
}

#[test]
fn leukemia_survival_is_complete() {
    let s = Bundled::LeukemiaSurvival.sample();
    assert_eq!((s.len(), s.events()), (43, 43));
}

#[test]
fn files_on_disk_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rem.csv");
    std::fs::write(&path, Bundled::RemissionTimes.contents()).unwrap();
    assert_eq!(ingest(&path).unwrap(), Bundled::RemissionTimes.sample());
}

proptest! {
    #[test]
    fn emit_then_ingest_is_identity(
        rows in prop::collection::vec((1e-300f64..1e300, any::<bool>()), 1..60)
    ) {
        let (t, d): (Vec<f64>, Vec<bool>) = rows.into_iter().unzip();
        let sample = CensoredSample::new(t, d).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        write_dataset(&path, &sample).unwrap();
        prop_assert_eq!(ingest(&path).unwrap(), sample.clone());
        prop_assert_eq!(parse_dataset(&emit(&sample)).unwrap(), sample);
    }
}
