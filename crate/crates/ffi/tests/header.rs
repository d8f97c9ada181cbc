use std::path::Path;
use std::process::Command;

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/motivic_steenrod.h");
    assert!(header.exists(), "build script did not write {}", header.display());
    let tmp = tempfile::tempdir().unwrap();
    let source = tmp.path().join("use.c");
    std::fs::write(
        &source,
        r#"#include "motivic_steenrod.h"
int main(void) {
    MsAlgebra *a = 0;
    char *out = 0;
    MsStatus s = ms_algebra_new("A", 20, &a);
    if (s == MsStatus_Ok) {
        s = ms_algebra_multiply(a, "t0", "t0", &out);
        ms_string_free(out);
        ms_algebra_free(a);
    }
    return s == MsStatus_Ok ? 0 : 1;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&source)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
}
