use toda_core::cert::Certificate;
use toda_core::cli::{replay, verdict};

fn main() {
    let path = std::env::temp_dir().join("toda_a2_cubic.json");
    let code = toda_core::cli::run([
        "toda",
        "solve",
        "--type",
        "A2",
        "--degree",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    println!("solve exit code {code}, certificate at {}", path.display());

    let text = std::fs::read_to_string(&path).unwrap();
    let cert = Certificate::from_json(&text).unwrap();
    println!("claim: {}", cert.claim);
    println!("kernel_dim: {:?}", cert.kernel_dim);

    let again = replay(&cert).unwrap();
    println!("replayed residuals zero and matching: {}", verdict(&again) == 0);
    assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
}
