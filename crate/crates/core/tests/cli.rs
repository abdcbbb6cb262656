use johnsonlab::cache::{BasisCache, CacheStatus};
use johnsonlab::cli::run;
use johnsonlab::derivation::DerKind;
use johnsonlab::Alphabet;

fn jl(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("johnsonlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const A1: &str = r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1","word":["a1"]}]}"#;
const B1: &str = r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1","word":["b1"]}]}"#;

#[test]
fn bracket_of_dual_letters() {
    let (code, out, _) = jl(&["bracket", "--x", A1, "--y", B1]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"][0]["word"], serde_json::json!([]));
    assert_eq!(v["ok"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(jl(&["pollack", "--which", "1"]).0, 0);
    assert_eq!(jl(&["appendix-a", "--m", "1"]).0, 0);
    assert_eq!(jl(&["framing", "--rot-a", "0", "--rot-b", "0", "--scc", "3"]).0, 1);
    assert_eq!(jl(&["no-such-command"]).0, 2);
    let (code, _, err) = jl(&["cobracket", "--x", r#"{"model":"symplectic","genus":1,"terms":[{"coef":"−1","word":["a1"]}]}"#]);
    assert_eq!(code, 2);
    assert!(err.contains("$.terms[0].coef"), "{err}");
    assert_eq!(jl(&["--genus", "1", "--punctures", "3", "derbasis"]).0, 2);
    assert_eq!(jl(&["--help"]).0, 0);
}

#[test]
fn table_format() {
    let (code, out, _) = jl(&["--format", "table", "pollack", "--which", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("relation 1: [ε4,ε10] - 3[ε6,ε8] = 0"), "{out}");
    let (_, out, _) = jl(&["--genus", "3", "--format", "table", "repring-decompose", "--expr", "L3(H)"]);
    assert!(out.contains("1\t[1, 1, 1]"), "{out}");
}

#[test]
fn outputs_are_deterministic() {
    let args = ["--genus", "2", "--weight", "2", "derbasis"];
    assert_eq!(jl(&args), jl(&args));
    let args = ["--punctures", "4", "div0", "--ejk", "1,2"];
    assert_eq!(jl(&args), jl(&args));
}

#[test]
fn mobius_dimension_mode() {
    let (code, out, _) = jl(&["--weight", "6", "mobius", "--phi", "1,-2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"], serde_json::json!(["0", "2", "1", "2", "3", "6", "9"]));
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = jl(&["--genus", "2", "--weight", "2", "derbasis"]);
    let first = jl(&["--genus", "2", "--weight", "2", "--cache-dir", d, "derbasis"]);
    let second = jl(&["--genus", "2", "--weight", "2", "--cache-dir", d, "derbasis"]);
    assert_eq!(plain, first);
    assert_eq!(first, second);

    let cache = BasisCache::new(dir.path()).unwrap();
    let al = Alphabet::symplectic(2).unwrap();
    let (s, status) = cache.theta_der_basis(al, 2, DerKind::Lie).unwrap();
    assert_eq!(status, CacheStatus::Hit);
    let (s1, status) = cache.theta_der_basis(al, 1, DerKind::Lie).unwrap();
    assert_eq!(status, CacheStatus::Miss);
    assert_eq!((s.dim(), s1.dim()), (cache.theta_der_basis(al, 2, DerKind::Lie).unwrap().0.dim(), 4));

    // A stale format version is recomputed, not trusted.
    let path = dir.path().join("derbasis-g2-m1-lie.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"format_version\":1", "\"format_version\":0");
    std::fs::write(&path, text).unwrap();
    let (again, status) = cache.theta_der_basis(al, 1, DerKind::Lie).unwrap();
    assert_eq!(status, CacheStatus::Miss);
    assert_eq!(again.dim(), 4);
}
